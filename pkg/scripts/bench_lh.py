"""Time the pivoting solver on growing random instances.

An s x s problem turns into a game with s*s rows and 2s columns, so the
tableau grows quickly; this prints wall time and pivot input size per s.
"""
import argparse
import time
from random import Random

from ltumatch import FuzzConfig, random_problem, solve_stable, to_game, verify_stable


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-size", type=int, default=10)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    rng = Random(args.seed)
    print(f"{'size':>6} {'game':>9} {'best of ' + str(args.repeats):>12}")
    for size in range(2, args.max_size + 1):
        cfg = FuzzConfig(max_workers=size, max_jobs=size)
        problem = random_problem(rng, cfg, min_workers=size, min_jobs=size)
        game = to_game(problem)
        best = None
        for _ in range(args.repeats):
            start = time.perf_counter()
            outcome, _ = solve_stable(problem)
            elapsed = time.perf_counter() - start
            best = elapsed if best is None else min(best, elapsed)
        if not verify_stable(problem, outcome).ok:
            print(f"{size:>6}  unstable result, stopping")
            return 1
        rows, cols = game.shape
        print(f"{size:>6} {f'{rows}x{cols}':>9} {best:>11.3f}s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
