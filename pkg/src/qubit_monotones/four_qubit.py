"""Four-qubit determinant invariants and the D_2 zero-pattern fingerprint."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .states import PureState

ZERO_THRESHOLD = 1e-9

# Amplitude index at each entry of the 4x4 matrix whose determinant gives D_2.
DET_LAYOUTS: dict[tuple[int, int], np.ndarray] = {
    (1, 2): np.array(
        [
            [0, 4, 8, 12],
            [1, 5, 9, 13],
            [2, 6, 10, 14],
            [3, 7, 11, 15],
        ]
    ),
    (1, 3): np.array(
        [
            [0, 2, 8, 10],
            [1, 3, 9, 11],
            [4, 6, 12, 14],
            [5, 7, 13, 15],
        ]
    ),
    (1, 4): np.array(
        [
            [0, 1, 8, 9],
            [2, 3, 10, 11],
            [4, 5, 12, 13],
            [6, 7, 14, 15],
        ]
    ),
}
FOUR_QUBIT_LOCI = tuple(DET_LAYOUTS)

GENERIC_DISCLAIMER = (
    "membership of the generic family G_abcd (nonzero hyperdeterminant) is not tested; "
    "the grouping applies to the eight non-generic families and may fail on zero-measure special cases"
)


class Group(enum.Enum):
    NO_ZEROS = "NoZeros"
    ONE_ZERO = "OneZero"
    ALL_ZEROS = "AllZeros"
    ANOMALOUS = "Anomalous"


GROUP_FAMILIES: dict[Group, tuple[str, ...]] = {
    Group.NO_ZEROS: ("L_abc2", "L_ab3"),
    Group.ONE_ZERO: ("L_a2b2", "L_a4"),
    Group.ALL_ZEROS: ("L_a2_0(3+1)", "L_0(5+3)", "L_0(7+1)", "L_0(3+1)_0(3+1)"),
    Group.ANOMALOUS: (),
}


def _require_four(state: PureState) -> None:
    if state.num_qubits != 4:
        raise ValueError(f"four-qubit invariants need N = 4, got N = {state.num_qubits}")


def det_matrix(state: PureState, locus: tuple[int, int]) -> np.ndarray:
    _require_four(state)
    try:
        layout = DET_LAYOUTS[tuple(locus)]
    except KeyError:
        raise ValueError(f"locus must be one of {FOUR_QUBIT_LOCI}, got {locus}") from None
    return state.amplitudes[layout]


def det_invariant(state: PureState, locus: tuple[int, int]) -> float:
    """``16 |det M|`` with ``M`` the amplitude matrix of the locus."""
    return 16.0 * float(abs(np.linalg.det(det_matrix(state, locus))))


@dataclass(frozen=True)
class Fingerprint:
    d2_values: tuple[float, float, float]
    zero_pattern: tuple[bool, bool, bool]
    group: Group
    threshold: float = ZERO_THRESHOLD

    @property
    def families(self) -> tuple[str, ...]:
        return GROUP_FAMILIES[self.group]

    def to_dict(self) -> dict:
        return {
            "loci": [list(loc) for loc in FOUR_QUBIT_LOCI],
            "d2_values": list(self.d2_values),
            "zero_pattern": list(self.zero_pattern),
            "group": self.group.value,
            "families": list(self.families),
            "threshold": self.threshold,
            "note": GENERIC_DISCLAIMER,
        }


def classify(zero_pattern: tuple[bool, ...]) -> Group:
    zeros = sum(zero_pattern)
    return {0: Group.NO_ZEROS, 1: Group.ONE_ZERO, 3: Group.ALL_ZEROS}.get(zeros, Group.ANOMALOUS)


def fingerprint(state: PureState, threshold: float = ZERO_THRESHOLD) -> Fingerprint:
    _require_four(state)
    values = tuple(det_invariant(state, loc) for loc in FOUR_QUBIT_LOCI)
    pattern = tuple(v < threshold for v in values)
    return Fingerprint(values, pattern, classify(pattern), threshold)
