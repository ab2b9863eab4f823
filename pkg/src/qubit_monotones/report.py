"""Per-locus monotone reports and their text/JSON serializations."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable

from .bipartition import Locus, all_loci, reduce
from .monotones import (
    d_monotone_minors,
    d_monotone_schmidt,
    linear_entropy,
    minor_count,
    q1_measure,
    schmidt_spectrum,
    SchmidtSpectrum,
)
from .states import PureState

# Enumerated minors per spot check; above this the spot check is skipped.
SPOT_CHECK_CAP = 20_000
SPOT_CHECK_TOL = 1e-10
TABLE_DECIMALS = 6


class ConsistencyError(ArithmeticError):
    """The Schmidt and minor-enumeration routes disagree."""


@dataclass(frozen=True)
class LocusEntry:
    locus: Locus
    d_value: float
    s_value: float
    schmidt: SchmidtSpectrum
    # D from explicit minor enumeration, when it was run
    d_minors: float | None = None

    @property
    def n(self) -> int:
        return self.locus.n


@dataclass(frozen=True)
class MonotoneReport:
    state: str
    num_qubits: int
    entries: tuple[LocusEntry, ...]
    q1: float
    n_values: tuple[int, ...] = field(default=())

    def __getitem__(self, locus: Locus | tuple[int, ...]) -> LocusEntry:
        key = locus.indices if isinstance(locus, Locus) else tuple(locus)
        for entry in self.entries:
            if entry.locus.indices == key:
                return entry
        raise KeyError(key)

    def d_values(self, n: int | None = None) -> dict[tuple[int, ...], float]:
        return {e.locus.indices: e.d_value for e in self.entries if n is None or e.n == n}

    def s_values(self, n: int | None = None) -> dict[tuple[int, ...], float]:
        return {e.locus.indices: e.s_value for e in self.entries if n is None or e.n == n}

    def to_dict(self) -> dict[str, Any]:
        return {
            "state": self.state,
            "n_qubits": self.num_qubits,
            "measures": [
                {
                    "locus": list(e.locus.indices),
                    "n": e.n,
                    "D": e.d_value,
                    "S": e.s_value,
                    "schmidt_weights": list(e.schmidt.weights),
                }
                for e in self.entries
            ],
            "q1": self.q1,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def to_table(self, decimals: int = TABLE_DECIMALS) -> str:
        fmt = f"{{:.{decimals}f}}"
        lines = [
            f"state: {self.state}",
            f"n_qubits: {self.num_qubits}",
            f"q1: {fmt.format(self.q1)}",
            "",
        ]
        header = ("locus", "n", "D", "S", "schmidt_weights")
        rows = [
            (
                e.locus.label(),
                str(e.n),
                fmt.format(e.d_value),
                fmt.format(e.s_value),
                " ".join(fmt.format(w) for w in e.schmidt.weights),
            )
            for e in self.entries
        ]
        widths = [max(len(r[i]) for r in [header, *rows]) for i in range(4)]
        for r in [header, *rows]:
            lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)) + "  " + r[4])
        return "\n".join(line.rstrip() for line in lines) + "\n"


def locus_entry(state: PureState, locus: Locus, spot_check_cap: int = 0) -> LocusEntry:
    rv = reduce(state, locus)
    spec = schmidt_spectrum(rv)
    d = d_monotone_schmidt(spec)
    d_min = None
    if spot_check_cap and rv.l <= rv.length and minor_count(rv) <= spot_check_cap:
        d_min = d_monotone_minors(rv, strategy="enumerate", cap=spot_check_cap)
        if abs(d_min - d) > SPOT_CHECK_TOL * max(1.0, d):
            raise ConsistencyError(
                f"locus {locus}: Schmidt route D={d!r}, minor enumeration D={d_min!r}"
            )
    return LocusEntry(locus, d, linear_entropy(spec), spec, d_min)


def full_report(
    state: PureState,
    name: str = "",
    loci: Iterable[Locus] | None = None,
    spot_check_cap: int = SPOT_CHECK_CAP,
) -> MonotoneReport:
    """D_n and S_n at every canonical locus (or the given ones) plus Q_1.

    The first locus of each size is cross-checked by minor enumeration when
    it has at most ``spot_check_cap`` minors; pass 0 to skip the checks.
    """
    loci = all_loci(state.num_qubits) if loci is None else list(loci)
    entries = []
    checked: set[int] = set()
    for locus in loci:
        cap = spot_check_cap if locus.n not in checked else 0
        entry = locus_entry(state, locus, cap)
        if entry.d_minors is not None:
            checked.add(locus.n)
        entries.append(entry)
    return MonotoneReport(
        state=name,
        num_qubits=state.num_qubits,
        entries=tuple(entries),
        q1=q1_measure(state),
        n_values=tuple(sorted({loc.n for loc in loci})),
    )
