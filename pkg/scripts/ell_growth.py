"""Final walk length and work counters of lazy greedy as k grows, on one graph.

    python3 scripts/ell_growth.py --n 32768 --k 5 10 20 50 100
"""

import argparse
import time

from gedwalk import gen_barabasi_albert, gen_erdos_renyi, maximize_lazy


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--model", choices=("er", "ba"), default="er")
    ap.add_argument("--n", type=int, default=1 << 15)
    ap.add_argument("--avg-degree", type=int, default=20)
    ap.add_argument("--k", type=int, nargs="+", default=[5, 10, 20, 50, 100])
    ap.add_argument("--epsilon", type=float, default=0.5)
    ap.add_argument("--delta", type=float, default=0.5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    if args.model == "er":
        g = gen_erdos_renyi(args.n, args.avg_degree / (args.n - 1), args.seed)
    else:
        g = gen_barabasi_albert(args.n, args.avg_degree // 2, args.seed)
    alpha = args.delta / g.deg_max
    print(f"{g!r}, alpha={alpha:.4g}")
    print(f"{'k':>5} {'ell':>4} {'doublings':>9} {'evals':>6} {'evals/k':>7} {'seconds':>8} {'score':>10}")
    for k in args.k:
        t0 = time.perf_counter()
        res = maximize_lazy(g, k, alpha, args.epsilon)
        dt = time.perf_counter() - t0
        print(f"{k:>5} {res.ell:>4} {res.doublings:>9} {res.evaluations:>6} "
              f"{res.evaluations / k:>7.1f} {dt:>8.2f} {res.score:>10.4f}")


if __name__ == "__main__":
    main()
