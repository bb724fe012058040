"""Run the randomized pipeline audit from the command line.

Thin wrapper over ltumatch.fuzz.run_campaign; exits nonzero when any
instance breaks one of the audited facts.
"""
import argparse

from ltumatch import FuzzConfig, run_campaign


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=300)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-workers", type=int, default=3)
    parser.add_argument("--max-jobs", type=int, default=3)
    args = parser.parse_args()

    report = run_campaign(
        FuzzConfig(
            seed=args.seed,
            count=args.count,
            max_workers=args.max_workers,
            max_jobs=args.max_jobs,
        )
    )
    if report.ok:
        print(f"ran {report.total} instances: every check passed")
        return 0
    for index, kind, message in report.failures:
        print(f"instance {index} ({kind}): {message}")
    return 1


if __name__ == "__main__":
    raise SystemExit(main())
