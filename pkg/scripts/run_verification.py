"""Full-scale run of every property check; writes a JSON report.

Trial counts default to the acceptance sizes. Extra settings can come
from a key = value config file, and flags override it.
"""

import argparse
import json
import sys
import time

from qubit_monotones.harness import CHECK_FUNCTIONS, HarnessConfig

FULL_SCALE = {"oracle": 500, "lu": 200, "subspace": 50, "povm": 10_000, "forefactor": 500}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--scale", type=float, default=1.0, help="multiply every trial count")
    ap.add_argument("--output", default="verification.json")
    args = ap.parse_args()

    base = HarnessConfig.from_file(args.config) if args.config else HarnessConfig()
    results = []
    for name in base.checks:
        trials = max(1, int(FULL_SCALE[name] * args.scale))
        cfg = HarnessConfig(**{**base.to_dict(), "trials": trials, "seed": args.seed, "checks": (name,)})
        t0 = time.perf_counter()
        res = CHECK_FUNCTIONS[name](cfg)
        elapsed = time.perf_counter() - t0
        status = "PASS" if res.ok else "FAIL"
        print(f"{status} {name:10} trials={res.trials:6d} max_err={res.max_error:.3e} {elapsed:6.1f}s")
        results.append({**res.to_dict(), "seconds": round(elapsed, 3)})
    with open(args.output, "w") as fh:
        json.dump({"seed": args.seed, "checks": results}, fh, indent=2)
    print(f"wrote {args.output}")
    return 0 if all(r["failures"] == 0 for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
