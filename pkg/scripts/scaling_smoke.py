"""Wall-clock of maximize_lazy on ER graphs of growing size (average degree ~20).

    python3 scripts/scaling_smoke.py --exponents 14 15 16 17 --k 10
"""

import argparse
import time

from gedwalk import gen_erdos_renyi, maximize_lazy


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--exponents", type=int, nargs="+", default=[14, 15, 16, 17])
    ap.add_argument("--avg-degree", type=float, default=20.0)
    ap.add_argument("--k", type=int, default=10)
    ap.add_argument("--epsilon", type=float, default=0.5)
    ap.add_argument("--delta", type=float, default=0.5)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    warm = gen_erdos_renyi(2000, 0.01, 0)
    maximize_lazy(warm, 2, args.delta / warm.deg_max, 1.0)

    print(f"{'n':>8} {'m':>9} {'seconds':>8} {'ratio':>6} {'ell':>4} {'evals':>6}")
    prev = None
    for e in args.exponents:
        n = 1 << e
        g = gen_erdos_renyi(n, args.avg_degree / (n - 1), seed=e)
        t0 = time.perf_counter()
        res = maximize_lazy(g, args.k, args.delta / g.deg_max, args.epsilon, threads=args.threads)
        dt = time.perf_counter() - t0
        ratio = f"{dt / prev:6.2f}" if prev else "     -"
        print(f"{n:>8} {g.m:>9} {dt:>8.2f} {ratio} {res.ell:>4} {res.evaluations:>6}")
        prev = dt


if __name__ == "__main__":
    main()
