"""Run the refuter over many seeded random candidates and the Cayley automata
of finite monogenic inverse semigroups; print one line per candidate."""
import argparse
import random
import time
from collections import Counter

from ratwp.algebra import make_type
from ratwp.refuter import random_afsa, refute_fi_recognizer, universal_afsa, verify_witness
from ratwp.wordproblem import cayley_afsa, closure_model, free_monoid_afsa


def candidates(seed, count, max_states, max_type):
    yield "diagonal", free_monoid_afsa("xX")
    yield "universal", universal_afsa()
    for r in range(0, max_type):
        for s in range(1, max_type + 1 - r):
            yield f"cayley({r},{s})", cayley_afsa(closure_model(make_type((r, s))))
    rng = random.Random(seed)
    for k in range(count):
        yield f"random-{k}", random_afsa(rng, max_states=max_states)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--count", type=int, default=200)
    parser.add_argument("--max-states", type=int, default=6)
    parser.add_argument("--max-type", type=int, default=6, help="Cayley candidates for r + s <= this")
    args = parser.parse_args()

    kinds = Counter()
    t0 = time.perf_counter()
    for name, afsa in candidates(args.seed, args.count, args.max_states, args.max_type):
        w = refute_fi_recognizer(afsa)
        ok = verify_witness(afsa, w)
        kinds[w.kind] += 1
        extra = f"i={w.i} j={w.j}" if w.i is not None else ""
        print(f"{name:<16} states={len(afsa.states):<5} n={w.n:<5} {w.kind:<20} {extra:<10} verified={ok}")
        assert ok
    print(f"\n{sum(kinds.values())} candidates refuted in {time.perf_counter() - t0:.2f}s: {dict(kinds)}")


if __name__ == "__main__":
    main()
