"""Tabulate the finite Preston types (r, s): closure size, index/period and the
shortest word pairs separating neighbouring types and the free model."""
import argparse

from ratwp.algebra import index_period, inverse_closure, make_type
from ratwp.wordproblem import closure_model, free_inverse, kernel_equal_up_to


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-r", type=int, default=4)
    parser.add_argument("--max-s", type=int, default=4)
    parser.add_argument("--depth", type=int, default=8, help="word length bound for separating pairs")
    args = parser.parse_args()

    fi = free_inverse()
    print(f"{'type':<8}{'|[u]|':>7}{'index,period':>14}   separating pair vs FI")
    models = {}
    for r in range(0, args.max_r + 1):
        for s in range(1, args.max_s + 1):
            u = make_type((r, s))
            models[r, s] = closure_model(u)
            w = kernel_equal_up_to(models[r, s], fi, args.depth)
            print(f"({r},{s}){'':<3}{len(inverse_closure(u)):>7}{str(index_period(u)):>14}   {w}")

    print("\npairs of distinct types with no separating pair up to the bound:")
    keys = sorted(models)
    clashes = 0
    for a in keys:
        for b in keys:
            if a < b and kernel_equal_up_to(models[a], models[b], args.depth) is None:
                clashes += 1
                print(f"  {a} ~ {b}")
    if not clashes:
        print("  none")


if __name__ == "__main__":
    main()
