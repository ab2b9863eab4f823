"""N-qubit pure states: construction, named examples, random draws and file I/O.

Amplitudes are indexed by the decimal value ``X`` of the bit string
``b_1 b_2 ... b_N`` with qubit 1 as the most significant bit.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass, field
from typing import Iterable, TextIO

import numpy as np

NORM_TOL = 1e-12


class StateFormatError(ValueError):
    """Raised when an amplitude file cannot be parsed."""


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized amplitude vector of an N-qubit pure state.

    Any nonzero vector is accepted and rescaled to unit norm on construction.
    The stored array is read-only.
    """

    num_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if not isinstance(self.num_qubits, (int, np.integer)) or self.num_qubits < 1:
            raise ValueError(f"num_qubits must be a positive integer, got {self.num_qubits!r}")
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != 2**self.num_qubits:
            raise ValueError(
                f"expected {2**self.num_qubits} amplitudes for {self.num_qubits} qubits, got {amps.size}"
            )
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        norm = np.linalg.norm(amps)
        if norm == 0.0:
            raise ValueError("cannot build a state from the zero vector")
        if norm != 1.0:
            amps = amps / norm
        amps.flags.writeable = False
        object.__setattr__(self, "num_qubits", int(self.num_qubits))
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes: Iterable[complex]) -> "PureState":
        """Build a state, inferring N from the vector length."""
        amps = np.asarray(list(amplitudes) if not isinstance(amplitudes, np.ndarray) else amplitudes)
        amps = amps.reshape(-1)
        n = amps.size.bit_length() - 1
        if amps.size < 2 or 2**n != amps.size:
            raise ValueError(f"amplitude vector length {amps.size} is not a power of two >= 2")
        return cls(n, amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to ``(2,) * N``, axis ``k-1`` belonging to qubit ``k``."""
        return self.amplitudes.reshape((2,) * self.num_qubits)

    def support(self, tol: float = 0.0) -> np.ndarray:
        return np.flatnonzero(np.abs(self.amplitudes) > tol)

    def allclose(self, other: "PureState", atol: float = 1e-12) -> bool:
        return self.num_qubits == other.num_qubits and np.allclose(
            self.amplitudes, other.amplitudes, rtol=0.0, atol=atol
        )


class StateKind(enum.Enum):
    GHZ = "ghz"
    W = "w"
    PSI_PLUS = "psi-plus"
    PSI_MINUS = "psi-minus"
    CLUSTER4 = "cluster4"
    BASIS = "basis"
    RANDOM = "random"


_FOUR_QUBIT_ONLY = {StateKind.PSI_PLUS, StateKind.PSI_MINUS, StateKind.CLUSTER4}


@dataclass(frozen=True)
class StateLabel:
    """Names one of the built-in states.

    ``index`` is used by ``BASIS`` and ``seed`` by ``RANDOM``.
    """

    kind: StateKind
    num_qubits: int
    index: int | None = None
    seed: int | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.kind, StateKind):
            object.__setattr__(self, "kind", StateKind(self.kind))
        if self.num_qubits < 1:
            raise ValueError("a state needs at least one qubit")
        if self.kind in _FOUR_QUBIT_ONLY and self.num_qubits != 4:
            raise ValueError(f"{self.kind.value} is defined for 4 qubits only, got {self.num_qubits}")
        if self.kind is StateKind.BASIS:
            if self.index is None or not 0 <= self.index < 2**self.num_qubits:
                raise ValueError(f"basis index {self.index!r} out of range for {self.num_qubits} qubits")
        if self.kind is StateKind.RANDOM and self.seed is None:
            raise ValueError("random states need a seed")

    @classmethod
    def parse(cls, text: str, num_qubits: int | None = None) -> "StateLabel":
        """Parse ``ghz``, ``w``, ``psi-plus``, ``psi-minus``, ``cluster4``,
        ``basis:X`` or ``random:SEED``.

        The four-qubit states default to ``num_qubits = 4``.
        """
        name, _, arg = text.strip().lower().partition(":")
        try:
            kind = StateKind(name)
        except ValueError:
            choices = ", ".join(k.value for k in StateKind)
            raise ValueError(f"unknown state {text!r}; choose from {choices}") from None
        if num_qubits is None:
            if kind in _FOUR_QUBIT_ONLY:
                num_qubits = 4
            else:
                raise ValueError(f"state {kind.value!r} needs an explicit qubit count")
        index = seed = None
        if kind in (StateKind.BASIS, StateKind.RANDOM):
            if not arg:
                raise ValueError(f"state {kind.value!r} needs an argument, e.g. {kind.value}:3")
            value = int(arg)
            if kind is StateKind.BASIS:
                index = value
            else:
                seed = value
        elif arg:
            raise ValueError(f"state {kind.value!r} takes no argument")
        return cls(kind, num_qubits, index=index, seed=seed)

    def __str__(self) -> str:
        if self.kind is StateKind.BASIS:
            return f"basis:{self.index}"
        if self.kind is StateKind.RANDOM:
            return f"random:{self.seed}"
        return self.kind.value


def _from_terms(num_qubits: int, terms: dict[str, complex]) -> PureState:
    amps = np.zeros(2**num_qubits, dtype=np.complex128)
    for bits, c in terms.items():
        amps[int(bits, 2)] = c
    return PureState(num_qubits, amps)


def ghz_state(num_qubits: int) -> PureState:
    amps = np.zeros(2**num_qubits, dtype=np.complex128)
    amps[0] = amps[-1] = 1 / math.sqrt(2)
    return PureState(num_qubits, amps)


def w_state(num_qubits: int) -> PureState:
    amps = np.zeros(2**num_qubits, dtype=np.complex128)
    for j in range(num_qubits):
        amps[1 << (num_qubits - 1 - j)] = 1 / math.sqrt(num_qubits)
    return PureState(num_qubits, amps)


def psi_state(sign: int) -> PureState:
    """Four-qubit states with equal entropies but different D_2 values.

    ``sign`` multiplies the |0110>, |0111> and |1001> terms.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    c = 1 / math.sqrt(8)
    return _from_terms(
        4,
        {
            "0000": c,
            "0001": c,
            "0110": sign * c,
            "0111": sign * c,
            "1001": sign * c,
            "1010": c,
            "1100": c,
            "1111": c,
        },
    )


def cluster4_state() -> PureState:
    return _from_terms(4, {"0000": 0.5, "0101": 0.5, "1010": 0.5, "1111": 0.5})


def basis_state(num_qubits: int, index: int) -> PureState:
    amps = np.zeros(2**num_qubits, dtype=np.complex128)
    amps[index] = 1.0
    return PureState(num_qubits, amps)


def random_state(num_qubits: int, seed: int | np.random.Generator | None = None) -> PureState:
    """Haar-random state: i.i.d. complex Gaussian amplitudes, normalized."""
    rng = np.random.default_rng(seed)
    dim = 2**num_qubits
    amps = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return PureState(num_qubits, amps)


def make_state(label: StateLabel) -> PureState:
    n = label.num_qubits
    kind = label.kind
    if kind is StateKind.GHZ:
        return ghz_state(n)
    if kind is StateKind.W:
        return w_state(n)
    if kind is StateKind.PSI_PLUS:
        return psi_state(+1)
    if kind is StateKind.PSI_MINUS:
        return psi_state(-1)
    if kind is StateKind.CLUSTER4:
        return cluster4_state()
    if kind is StateKind.BASIS:
        return basis_state(n, label.index)
    if kind is StateKind.RANDOM:
        return random_state(n, label.seed)
    raise ValueError(f"unhandled state kind {kind}")


def normalize(state: PureState | Iterable[complex]) -> PureState:
    """Return the unit-norm state along ``state``; the zero vector is rejected."""
    if isinstance(state, PureState):
        return PureState(state.num_qubits, state.amplitudes)
    return PureState.from_amplitudes(state)


def tensor_product(a: PureState, b: PureState) -> PureState:
    """``a ⊗ b`` with the qubits of ``a`` in the high-significance positions."""
    return PureState(a.num_qubits + b.num_qubits, np.kron(a.amplitudes, b.amplitudes))


def permute_qubits(state: PureState, order: Iterable[int]) -> PureState:
    """Relabel qubits: new qubit ``i+1`` is old qubit ``order[i]`` (1-based)."""
    order = [int(k) - 1 for k in order]
    if sorted(order) != list(range(state.num_qubits)):
        raise ValueError(f"{order} is not a permutation of the qubits")
    return PureState(state.num_qubits, np.transpose(state.tensor(), order).reshape(-1))


# amplitude files


def write_amplitudes(state: PureState, fh: TextIO) -> None:
    """Write ``N`` then ``X re im`` for every nonzero amplitude (``repr`` floats)."""
    fh.write(f"{state.num_qubits}\n")
    for x in state.support():
        a = state.amplitudes[x]
        fh.write(f"{x} {float(a.real)!r} {float(a.imag)!r}\n")


def read_amplitudes(fh: TextIO) -> tuple[PureState, float]:
    """Parse an amplitude file.

    Returns the normalized state and the norm of the vector as written.
    Blank lines and ``#`` comments are ignored. Repeated indices are an error.
    """
    lines = []
    for lineno, raw in enumerate(fh, start=1):
        text = raw.split("#", 1)[0].strip()
        if text:
            lines.append((lineno, text))
    if not lines:
        raise StateFormatError("empty amplitude file")
    lineno, head = lines[0]
    try:
        num_qubits = int(head)
    except ValueError:
        raise StateFormatError(f"line {lineno}: expected qubit count, got {head!r}") from None
    if num_qubits < 1:
        raise StateFormatError(f"line {lineno}: qubit count must be >= 1")
    if num_qubits > 30:
        raise StateFormatError(f"line {lineno}: {num_qubits} qubits is beyond what can be stored")
    dim = 2**num_qubits
    amps = np.zeros(dim, dtype=np.complex128)
    seen: set[int] = set()
    for lineno, text in lines[1:]:
        parts = text.split()
        if len(parts) != 3:
            raise StateFormatError(f"line {lineno}: expected 'X re im', got {text!r}")
        try:
            x = int(parts[0])
            re, im = float(parts[1]), float(parts[2])
        except ValueError:
            raise StateFormatError(f"line {lineno}: cannot parse {text!r}") from None
        if not 0 <= x < dim:
            raise StateFormatError(f"line {lineno}: index {x} out of range [0, {dim})")
        if x in seen:
            raise StateFormatError(f"line {lineno}: index {x} given twice")
        if not (math.isfinite(re) and math.isfinite(im)):
            raise StateFormatError(f"line {lineno}: non-finite amplitude")
        seen.add(x)
        amps[x] = complex(re, im)
    norm = float(np.linalg.norm(amps))
    if norm == 0.0:
        raise StateFormatError("all amplitudes are zero")
    return PureState(num_qubits, amps), norm


def save_state(state: PureState, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        write_amplitudes(state, fh)


def load_state(path: str | os.PathLike) -> tuple[PureState, float]:
    with open(path, encoding="utf-8") as fh:
        return read_amplitudes(fh)
