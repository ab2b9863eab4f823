"""Loci and the reduction of a state into the vector family of a bipartition."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .states import PureState


@dataclass(frozen=True)
class Locus:
    """The ``n`` reduced qubits of a bipartition, as sorted 1-based indices."""

    indices: tuple[int, ...]
    num_qubits: int

    def __post_init__(self) -> None:
        idx = tuple(int(k) for k in self.indices)
        object.__setattr__(self, "indices", idx)
        N = self.num_qubits
        if not idx:
            raise ValueError("a locus needs at least one qubit")
        if list(idx) != sorted(set(idx)):
            raise ValueError(f"locus indices must be strictly increasing, got {idx}")
        if idx[0] < 1 or idx[-1] > N:
            raise ValueError(f"locus {idx} out of range for {N} qubits")
        if len(idx) > N // 2:
            raise ValueError(f"locus size {len(idx)} exceeds {N // 2} for {N} qubits")

    @classmethod
    def parse(cls, text: str, num_qubits: int) -> "Locus":
        """Parse the CLI syntax ``1,3`` (indices may come in any order)."""
        try:
            idx = sorted(int(tok) for tok in text.split(",") if tok.strip())
        except ValueError:
            raise ValueError(f"bad locus {text!r}; expected comma-separated qubit indices") from None
        return cls(tuple(idx), num_qubits)

    @property
    def n(self) -> int:
        return len(self.indices)

    @property
    def l(self) -> int:
        return 2**self.n

    @property
    def complement(self) -> tuple[int, ...]:
        return tuple(k for k in range(1, self.num_qubits + 1) if k not in self.indices)

    def label(self) -> str:
        return ",".join(map(str, self.indices))

    def __str__(self) -> str:
        return f"({self.label()})"


@dataclass(frozen=True, eq=False)
class ReducedVectors:
    """``l = 2**n`` vectors of length ``2**(N-n)``, stored as the rows of ``matrix``.

    Row ``X`` is the vector for the locus bit pattern whose decimal is ``X``;
    column ``Y`` runs over the remaining qubits in their original order.
    """

    locus: Locus
    matrix: np.ndarray = field(repr=False)

    @property
    def l(self) -> int:
        return self.matrix.shape[0]

    @property
    def length(self) -> int:
        return self.matrix.shape[1]

    @property
    def vectors(self) -> list[np.ndarray]:
        return list(self.matrix)

    def gram(self) -> np.ndarray:
        """``G[X, Y] = <V_X|V_Y>``."""
        return self.matrix.conj() @ self.matrix.T

    def total_norm(self) -> float:
        return float(np.sum(np.abs(self.matrix) ** 2))


def enumerate_loci(num_qubits: int, n: int) -> list[Locus]:
    """All loci of size ``n``; for ``n = N/2`` only those containing qubit 1."""
    if not 1 <= n <= num_qubits // 2:
        raise ValueError(f"n={n} out of range [1, {num_qubits // 2}] for {num_qubits} qubits")
    loci = [Locus(c, num_qubits) for c in combinations(range(1, num_qubits + 1), n)]
    if 2 * n == num_qubits:
        loci = [loc for loc in loci if loc.indices[0] == 1]
    return loci


def all_loci(num_qubits: int) -> list[Locus]:
    """Every canonical locus for ``n = 1 .. N//2``, ordered by size then index."""
    return [loc for n in range(1, num_qubits // 2 + 1) for loc in enumerate_loci(num_qubits, n)]


def _axis_order(locus: Locus) -> list[int]:
    return [k - 1 for k in locus.indices] + [k - 1 for k in locus.complement]


def reduce(state: PureState, locus: Locus) -> ReducedVectors:
    if locus.num_qubits != state.num_qubits:
        raise ValueError(f"locus is for {locus.num_qubits} qubits, state has {state.num_qubits}")
    t = np.transpose(state.tensor(), _axis_order(locus))
    matrix = np.ascontiguousarray(t.reshape(locus.l, -1))
    matrix.flags.writeable = False
    return ReducedVectors(locus, matrix)


def reconstruct(rv: ReducedVectors | np.ndarray, locus: Locus | None = None) -> np.ndarray:
    """Inverse of :func:`reduce`: interleave the rows back into a full amplitude vector.

    ``rv`` may be a raw ``l x L̄`` matrix, in which case ``locus`` is required.
    The result is not renormalized.
    """
    if isinstance(rv, ReducedVectors):
        locus, matrix = rv.locus, rv.matrix
    else:
        if locus is None:
            raise ValueError("a raw matrix needs its locus")
        matrix = np.asarray(rv)
    N = locus.num_qubits
    order = _axis_order(locus)
    t = np.asarray(matrix).reshape((2,) * N)
    return np.transpose(t, np.argsort(order)).reshape(-1)


def as_locus(spec: Locus | Sequence[int] | str, num_qubits: int) -> Locus:
    """Coerce a locus, a sequence of 1-based indices, or ``"1,3"`` text."""
    if isinstance(spec, Locus):
        if spec.num_qubits != num_qubits:
            raise ValueError(f"locus is for {spec.num_qubits} qubits, expected {num_qubits}")
        return spec
    if isinstance(spec, str):
        return Locus.parse(spec, num_qubits)
    return Locus(tuple(sorted(int(k) for k in spec)), num_qubits)


def loci_of(num_qubits: int, sizes: Iterable[int] | None = None) -> list[Locus]:
    if sizes is None:
        return all_loci(num_qubits)
    return [loc for n in sorted(set(sizes)) for loc in enumerate_loci(num_qubits, n)]
