"""Exhaustive period / anti-period / complexity sweep with a histogram dump.

    python scripts/run_theorem_sweep.py --max-states 3 --max-v 4 --json sweep.json
"""
import argparse
import json

from mealywords.sweeps import SweepConfig, run_sweep


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-states", type=int, default=3)
    p.add_argument("--max-u", type=int, default=2)
    p.add_argument("--max-v", type=int, default=4)
    p.add_argument("--alphabet-size", type=int, default=2)
    p.add_argument("--nmax", type=int, default=10)
    p.add_argument("--json", help="write the full report here")
    args = p.parse_args()

    cfg = SweepConfig(args.max_states, args.max_u, args.max_v, args.alphabet_size, nmax=args.nmax)
    rep = run_sweep(cfg)
    print(f"{rep.cases} cases in {rep.seconds:.1f}s, {rep.violations} violations")
    print(f"{'p':>4} {'|v|':>4} {'tau':>4} {'count':>10}")
    for (per, lv, tau), n in sorted(rep.histogram.items()):
        print(f"{per:>4} {lv:>4} {tau!s:>4} {n:>10}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rep.to_dict(), fh, indent=2)


if __name__ == "__main__":
    main()
