"""Local unitaries, subspace unitaries, Haar sampling and two-outcome POVMs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from .bipartition import Locus, reconstruct, reduce
from .monotones import d_monotone
from .states import PureState

UNITARY_TOL = 1e-12
DEGENERATE_PROB = 1e-14
MONOTONE_TOL = 1e-9


def is_unitary(matrix: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return bool(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))) <= tol)


def _check_target(target: int, num_qubits: int) -> None:
    if not 1 <= target <= num_qubits:
        raise ValueError(f"target qubit {target} out of range for {num_qubits} qubits")


def apply_single_qubit(amplitudes: np.ndarray, num_qubits: int, target: int, op: np.ndarray) -> np.ndarray:
    """Apply a 2x2 operator to qubit ``target`` (1-based) of a raw amplitude vector."""
    t = np.asarray(amplitudes).reshape((2,) * num_qubits)
    t = np.tensordot(op, t, axes=([1], [target - 1]))
    return np.moveaxis(t, 0, target - 1).reshape(-1)


@dataclass(frozen=True, eq=False)
class LocalUnitary:
    target: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=np.complex128)
        if m.shape != (2, 2):
            raise ValueError(f"a qubit unitary is 2x2, got shape {m.shape}")
        if not is_unitary(m):
            raise ValueError("matrix is not unitary within 1e-12")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)


def apply_local_unitary(state: PureState, lu: LocalUnitary) -> PureState:
    _check_target(lu.target, state.num_qubits)
    out = apply_single_qubit(state.amplitudes, state.num_qubits, lu.target, lu.matrix)
    return PureState(state.num_qubits, out)


def apply_subspace_unitary(state: PureState, locus: Locus, matrix: np.ndarray) -> PureState:
    """Act with an ``l x l`` unitary on the locus qubits: ``V'_X = sum_Y U[X, Y] V_Y``."""
    u = np.asarray(matrix, dtype=np.complex128)
    if u.shape != (locus.l, locus.l):
        raise ValueError(f"locus of size {locus.n} needs a {locus.l}x{locus.l} matrix, got {u.shape}")
    if not is_unitary(u):
        raise ValueError("matrix is not unitary within 1e-12")
    rv = reduce(state, locus)
    return PureState(state.num_qubits, reconstruct(u @ rv.matrix, locus))


def haar_unitary(dim: int, seed: int | np.random.Generator | None = None) -> np.ndarray:
    """Haar-distributed ``dim x dim`` unitary (QR of a Ginibre matrix with phase fix)."""
    if dim < 1:
        raise ValueError("dimension must be >= 1")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


@dataclass(frozen=True, eq=False)
class TwoOutcomePovm:
    """``A1 = u1 diag(a, b) v`` and ``A2 = u2 diag(sqrt(1-a^2), sqrt(1-b^2)) v`` on ``target``."""

    a: float
    b: float
    v: np.ndarray = field(repr=False)
    u1: np.ndarray = field(repr=False)
    u2: np.ndarray = field(repr=False)
    target: int = 1

    def __post_init__(self) -> None:
        for name in ("a", "b"):
            x = float(getattr(self, name))
            if not 0.0 <= x <= 1.0:
                raise ValueError(f"{name}={x} must lie in [0, 1]")
            object.__setattr__(self, name, x)
        for name in ("v", "u1", "u2"):
            m = np.array(getattr(self, name), dtype=np.complex128)
            if m.shape != (2, 2) or not is_unitary(m):
                raise ValueError(f"{name} must be a 2x2 unitary")
            m.flags.writeable = False
            object.__setattr__(self, name, m)
        if self.target < 1:
            raise ValueError("target is a 1-based qubit index")

    @classmethod
    def random(cls, target: int, seed: int | np.random.Generator | None = None) -> "TwoOutcomePovm":
        """``a, b`` uniform on [0, 1]; ``u1, u2, v`` Haar on U(2)."""
        rng = np.random.default_rng(seed)
        a, b = rng.uniform(0.0, 1.0, size=2)
        v, u1, u2 = (haar_unitary(2, rng) for _ in range(3))
        return cls(a, b, v, u1, u2, target)

    @property
    def elements(self) -> tuple[np.ndarray, np.ndarray]:
        a, b = self.a, self.b
        x2 = np.diag([math.sqrt(max(0.0, 1 - a * a)), math.sqrt(max(0.0, 1 - b * b))])
        return self.u1 @ np.diag([a, b]) @ self.v, self.u2 @ x2 @ self.v

    def completeness_error(self) -> float:
        a1, a2 = self.elements
        return float(np.max(np.abs(a1.conj().T @ a1 + a2.conj().T @ a2 - np.eye(2))))

    def params(self) -> dict:
        def mat(m):
            return [[[float(z.real), float(z.imag)] for z in row] for row in m]

        return {"target": self.target, "a": self.a, "b": self.b,
                "v": mat(self.v), "u1": mat(self.u1), "u2": mat(self.u2)}


@dataclass(frozen=True)
class PovmBranch:
    probability: float
    # None when the branch is degenerate (probability below DEGENERATE_PROB)
    state: PureState | None

    @property
    def degenerate(self) -> bool:
        return self.state is None


def apply_povm(state: PureState, povm: TwoOutcomePovm) -> tuple[PovmBranch, PovmBranch]:
    _check_target(povm.target, state.num_qubits)
    branches = []
    for op in povm.elements:
        phi = apply_single_qubit(state.amplitudes, state.num_qubits, povm.target, op)
        p = float(np.vdot(phi, phi).real)
        post = PureState(state.num_qubits, phi) if p >= DEGENERATE_PROB else None
        branches.append(PovmBranch(p, post))
    if all(br.degenerate for br in branches):
        raise RuntimeError("both POVM outcomes have zero probability; POVM is not complete")
    return branches[0], branches[1]


@dataclass(frozen=True)
class TrialResult:
    lhs: float
    rhs: float
    ok: bool
    probabilities: tuple[float, float] = (0.0, 0.0)
    # D of each post-measurement state (None for degenerate branches)
    outcome_d: tuple[float | None, float | None] = (None, None)


def averaged_power(branches: Sequence[PovmBranch], d_values: Sequence[float | None], nu: float) -> float:
    return sum(br.probability * d**nu for br, d in zip(branches, d_values) if d is not None)


def monotonicity_trial(
    state: PureState, locus: Locus, povm: TwoOutcomePovm, nu: float, tol: float = MONOTONE_TOL
) -> TrialResult:
    """Compare ``sum_i p_i D(phi_i)**nu`` with ``D(psi)**nu``."""
    if not 0.0 < nu <= 1.0:
        raise ValueError(f"nu={nu} must lie in (0, 1]")
    branches = apply_povm(state, povm)
    d_out = tuple(None if br.degenerate else d_monotone(br.state, locus) for br in branches)
    lhs = averaged_power(branches, d_out, nu)
    rhs = d_monotone(state, locus) ** nu
    return TrialResult(lhs, rhs, lhs <= rhs + tol, (branches[0].probability, branches[1].probability), d_out)


def povm_forefactor(
    povm: TwoOutcomePovm,
    probabilities: tuple[float, float],
    nu: float,
    reading: Literal["squared", "printed"] = "squared",
) -> float:
    """Predicted ratio ``<D**nu> / D**nu`` for a POVM on a qubit inside the locus.

    ``squared`` divides both terms by ``p_i**2``, the form fixed by D being
    homogeneous of degree 4 in the amplitudes. ``printed`` is the asymmetric
    variant with ``p_2`` unsquared in the second term; it is kept only so the
    two can be compared.
    Degenerate branches contribute nothing.
    """
    a2, b2 = povm.a**2, povm.b**2
    p1, p2 = probabilities
    total = 0.0
    if p1 >= DEGENERATE_PROB:
        total += p1 * (a2 * b2 / p1**2) ** nu
    if p2 >= DEGENERATE_PROB:
        denom = p2**2 if reading == "squared" else p2
        total += p2 * ((1 - a2) * (1 - b2) / denom) ** nu
    return total
