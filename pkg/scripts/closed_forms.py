"""Print D_n and S_n for GHZ and W states next to their closed forms."""

import argparse

from qubit_monotones import all_loci, d_monotone, make_state, s_entropy
from qubit_monotones.states import StateLabel


def expected(kind: str, N: int, n: int) -> tuple[float, float]:
    eta = 2**n / (2**n - 1)
    if kind == "ghz":
        return (1.0 if n == 1 else 0.0), eta / 2
    return (4 * (N - 1) / N**2 if n == 1 else 0.0), 2 * eta * (N - n) * n / N**2


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-qubits", type=int, default=8)
    args = ap.parse_args()
    print(f"{'state':5} {'N':>2} {'n':>2} {'D':>10} {'D closed':>10} {'S':>10} {'S closed':>10} {'worst err':>10}")
    for kind in ("ghz", "w"):
        for N in range(2, args.max_qubits + 1):
            state = make_state(StateLabel.parse(kind, N))
            for n in range(1, N // 2 + 1):
                loci = [loc for loc in all_loci(N) if loc.n == n]
                d_exp, s_exp = expected(kind, N, n)
                ds = [d_monotone(state, loc) for loc in loci]
                ss = [s_entropy(state, loc) for loc in loci]
                err = max(max(abs(d - d_exp) for d in ds), max(abs(s - s_exp) for s in ss))
                print(f"{kind:5} {N:2d} {n:2d} {ds[0]:10.6f} {d_exp:10.6f} {ss[0]:10.6f} {s_exp:10.6f} {err:10.2e}")


if __name__ == "__main__":
    main()
