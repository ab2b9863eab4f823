"""The monotones D_n and S_n of a bipartition.

``D_n`` is computed two ways. The Schmidt route takes the squared singular
values ``w_i`` of the reduced-vector matrix and returns
``l**2 * (prod w_i) ** (2/l)``. The minor route sums ``|det|**2`` over every
``l x l`` column minor of the same matrix, either by explicit enumeration or
through ``det(G)`` of the Gram matrix (Cauchy-Binet), and raises the sum to
``2/l``. The two must agree; the Schmidt route is the one used for reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Literal, Sequence

import numpy as np

from .bipartition import Locus, ReducedVectors, reduce
from .states import PureState

ENUMERATION_CAP = 10**6
# w_i products below this are reported as D = 0.
PRODUCT_FLOOR = 1e-300
_LOG_PRODUCT_FLOOR = math.log(PRODUCT_FLOOR)
_MINOR_BATCH = 1 << 15


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Schmidt weights of a bipartition, sorted descending, clamped at zero."""

    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        w = tuple(float(x) for x in self.weights)
        if not w:
            raise ValueError("empty spectrum")
        if any(x < 0 for x in w):
            raise ValueError(f"negative Schmidt weight in {w}")
        object.__setattr__(self, "weights", tuple(sorted(w, reverse=True)))

    @property
    def l(self) -> int:
        return len(self.weights)

    @property
    def rank(self) -> int:
        return sum(1 for w in self.weights if w > 0)

    def as_array(self) -> np.ndarray:
        return np.array(self.weights)


def schmidt_spectrum(rv: ReducedVectors) -> SchmidtSpectrum:
    """Squared singular values of the ``l x L̄`` row matrix.

    These equal the eigenvalues of the Gram matrix ``<V_X|V_Y>`` but keep
    relative accuracy for small weights. Singular values below the usual
    numerical-rank cutoff ``s_max * max(l, L̄) * eps`` are set to exactly zero,
    so rank-deficient reductions give ``D = 0`` rather than roundoff.
    """
    s = np.linalg.svd(rv.matrix, compute_uv=False)
    if s.size and s[0] > 0:
        cutoff = s[0] * max(rv.matrix.shape) * np.finfo(float).eps
        s = np.where(s > cutoff, s, 0.0)
    w = np.zeros(rv.l)
    w[: s.size] = s**2
    return SchmidtSpectrum(tuple(w))


def gram_spectrum(rv: ReducedVectors) -> np.ndarray:
    """Eigenvalues of the Gram matrix, descending, tiny negatives clamped to zero."""
    w = np.linalg.eigvalsh(rv.gram())[::-1]
    return np.clip(w, 0.0, None)


def _power_of_product(weights: np.ndarray, l: int) -> float:
    # (prod w) ** (2/l) through logs; any zero weight gives exactly 0
    if np.any(weights <= 0):
        return 0.0
    log_prod = float(np.sum(np.log(weights)))
    if log_prod < _LOG_PRODUCT_FLOOR:
        return 0.0
    return math.exp(2.0 * log_prod / l)


def d_monotone_schmidt(spec: SchmidtSpectrum | Sequence[float]) -> float:
    """``l**2 * (prod w_i) ** (2/l)``; 1 for the uniform spectrum, 0 if any weight is 0."""
    w = spec.as_array() if isinstance(spec, SchmidtSpectrum) else np.asarray(spec, dtype=float)
    l = w.size
    return l * l * _power_of_product(w, l)


def minor_determinants(matrix: np.ndarray, batch: int = _MINOR_BATCH):
    """Yield arrays of ``det M[:, cols]`` over all increasing column tuples.

    Columns are taken in lexicographic order of ``itertools.combinations``.
    """
    l, length = matrix.shape
    combos = combinations(range(length), l)
    while True:
        chunk = np.fromiter(
            (j for c in _take(combos, batch) for j in c), dtype=np.intp
        ).reshape(-1, l)
        if chunk.size == 0:
            return
        # sub[b] = matrix[:, chunk[b]]
        sub = np.moveaxis(matrix[:, chunk], 1, 0)
        yield np.linalg.det(sub)


def _take(it, k):
    for _ in range(k):
        try:
            yield next(it)
        except StopIteration:
            return


def minor_count(rv: ReducedVectors) -> int:
    return math.comb(rv.length, rv.l)


def minor_sum(
    rv: ReducedVectors,
    strategy: Literal["auto", "enumerate", "gram"] = "auto",
    cap: int = ENUMERATION_CAP,
) -> float:
    """``sum |det M(cols)|**2`` over all ``l``-column minors.

    ``enumerate`` visits every minor and is refused above ``cap`` minors;
    ``gram`` uses ``det <V_X|V_Y>``; ``auto`` enumerates when within the cap.
    """
    if rv.l > rv.length:
        raise ValueError(f"{rv.l} vectors of length {rv.length} have no {rv.l}-column minors")
    count = minor_count(rv)
    if strategy == "auto":
        strategy = "enumerate" if count <= cap else "gram"
    if strategy == "enumerate":
        if count > cap:
            raise ValueError(f"{count} minors exceeds the enumeration cap {cap}")
        return float(sum(np.sum(np.abs(d) ** 2) for d in minor_determinants(rv.matrix)))
    if strategy == "gram":
        return max(float(np.linalg.det(rv.gram()).real), 0.0)
    raise ValueError(f"unknown strategy {strategy!r}")


def d_monotone_minors(
    rv: ReducedVectors,
    strategy: Literal["auto", "enumerate", "gram"] = "auto",
    cap: int = ENUMERATION_CAP,
) -> float:
    """``l**2 * (sum over minors |det|**2) ** (2/l)``."""
    total = minor_sum(rv, strategy=strategy, cap=cap)
    return rv.l**2 * total ** (2.0 / rv.l)


def linear_entropy(spec: SchmidtSpectrum | Sequence[float]) -> float:
    """``eta * (1 - sum w_i**2)`` with ``eta = l / (l - 1)``."""
    w = spec.as_array() if isinstance(spec, SchmidtSpectrum) else np.asarray(spec, dtype=float)
    l = w.size
    if l < 2:
        raise ValueError("linear entropy needs at least two Schmidt weights")
    eta = l / (l - 1)
    return eta * (1.0 - float(np.sum(w**2)))


def d1_direct(rv: ReducedVectors) -> float:
    """Single-qubit form ``4 * sum_{X<Y} |V0(X) V1(Y) - V0(Y) V1(X)|**2``."""
    if rv.l != 2:
        raise ValueError(f"d1_direct needs a single-qubit locus, got l={rv.l}")
    v0, v1 = rv.matrix
    wedge = np.outer(v0, v1) - np.outer(v1, v0)
    iu = np.triu_indices(rv.length, k=1)
    return 4.0 * float(np.sum(np.abs(wedge[iu]) ** 2))


def d_monotone(state: PureState, locus: Locus) -> float:
    """``D_n`` of ``state`` at ``locus`` by the Schmidt route."""
    return d_monotone_schmidt(schmidt_spectrum(reduce(state, locus)))


def s_entropy(state: PureState, locus: Locus) -> float:
    return linear_entropy(schmidt_spectrum(reduce(state, locus)))


def q1_measure(state: PureState) -> float:
    """Average of the single-qubit ``D_1`` over all qubits (0 for one qubit)."""
    N = state.num_qubits
    if N < 2:
        return 0.0
    # every qubit counts, including the mirror images dropped by enumerate_loci at N = 2
    return sum(d_monotone(state, Locus((k,), N)) for k in range(1, N + 1)) / N
