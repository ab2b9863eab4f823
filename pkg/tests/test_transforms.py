import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qubit_monotones.bipartition import Locus, all_loci, reduce
from qubit_monotones.monotones import d_monotone, minor_determinants
from qubit_monotones.states import PureState, StateLabel, make_state, random_state, tensor_product
from qubit_monotones.transforms import (
    LocalUnitary,
    TwoOutcomePovm,
    apply_local_unitary,
    apply_povm,
    apply_subspace_unitary,
    haar_unitary,
    is_unitary,
    monotonicity_trial,
    povm_forefactor,
)

I2 = np.eye(2)
X = np.array([[0, 1], [1, 0]])
r2 = 1 / math.sqrt(2)


def all_minors(state: PureState, locus: Locus) -> np.ndarray:
    return np.concatenate(list(minor_determinants(reduce(state, locus).matrix)))


# local unitaries


def test_identity_is_exact():
    s = random_state(4, 0)
    out = apply_local_unitary(s, LocalUnitary(3, I2))
    assert out.amplitudes.tobytes() == s.amplitudes.tobytes()


def test_bit_flip_on_first_qubit():
    s = make_state(StateLabel.parse("basis:0", 3))
    out = apply_local_unitary(s, LocalUnitary(1, X))
    np.testing.assert_array_equal(out.support(), [0b100])
    out = apply_local_unitary(s, LocalUnitary(3, X))
    np.testing.assert_array_equal(out.support(), [0b001])


def test_local_unitary_validation():
    with pytest.raises(ValueError):
        LocalUnitary(1, [[1, 1], [0, 1]])
    with pytest.raises(ValueError):
        LocalUnitary(1, np.eye(3))
    with pytest.raises(ValueError):
        apply_local_unitary(random_state(2, 0), LocalUnitary(3, I2))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.integers(0, 2**32 - 1))
def test_lu_invariance_every_locus(N, seed):
    rng = np.random.default_rng(seed)
    s = random_state(N, rng)
    qubit = int(rng.integers(1, N + 1))
    out = apply_local_unitary(s, LocalUnitary(qubit, haar_unitary(2, rng)))
    assert abs(np.linalg.norm(out.amplitudes) - 1) < 1e-12
    for locus in all_loci(N):
        assert abs(d_monotone(out, locus) - d_monotone(s, locus)) <= 1e-10


@pytest.mark.parametrize("N,locus", [(2, (1,)), (4, (2,)), (4, (1, 3)), (6, (2, 4, 5))])
def test_wedge_covariance(N, locus):
    # every minor picks up det(U)**(l/2) when U acts on one locus qubit
    rng = np.random.default_rng(N)
    loc = Locus(locus, N)
    s = random_state(N, rng)
    for target in loc.indices:
        u = haar_unitary(2, rng)
        before = all_minors(s, loc)
        after = all_minors(apply_local_unitary(s, LocalUnitary(target, u)), loc)
        np.testing.assert_allclose(after, np.linalg.det(u) ** (loc.l // 2) * before, rtol=0, atol=1e-10)


# subspace unitaries


def test_subspace_identity_and_single_qubit_consistency():
    rng = np.random.default_rng(1)
    s = random_state(4, rng)
    loc = Locus((1, 3), 4)
    np.testing.assert_allclose(apply_subspace_unitary(s, loc, np.eye(4)).amplitudes, s.amplitudes, atol=1e-15)
    u = haar_unitary(2, rng)
    a = apply_subspace_unitary(s, Locus((3,), 4), u)
    b = apply_local_unitary(s, LocalUnitary(3, u))
    np.testing.assert_allclose(a.amplitudes, b.amplitudes, atol=1e-15)
    # a product of locus-qubit unitaries is the Kronecker product on the locus index
    v = haar_unitary(2, rng)
    c = apply_subspace_unitary(s, loc, np.kron(u, v))
    d = apply_local_unitary(apply_local_unitary(s, LocalUnitary(1, u)), LocalUnitary(3, v))
    np.testing.assert_allclose(c.amplitudes, d.amplitudes, atol=1e-14)


def test_subspace_unitary_invariance():
    s = make_state(StateLabel.parse("random:5", 4))
    loc = Locus((1, 2), 4)
    d0 = d_monotone(s, loc)
    for seed in range(20):
        out = apply_subspace_unitary(s, loc, haar_unitary(4, seed))
        assert abs(d_monotone(out, loc) - d0) <= 1e-10


def test_subspace_unitary_validation():
    s = random_state(4, 0)
    with pytest.raises(ValueError):
        apply_subspace_unitary(s, Locus((1, 2), 4), np.eye(2))
    with pytest.raises(ValueError):
        apply_subspace_unitary(s, Locus((1,), 4), 2 * np.eye(2))


# Haar unitaries


def test_haar_unitary_basic():
    z = haar_unitary(1, 0)
    assert z.shape == (1, 1) and abs(abs(z[0, 0]) - 1) < 1e-15
    for dim in (2, 3, 8, 16):
        u = haar_unitary(dim, dim)
        assert np.max(np.abs(u.conj().T @ u - np.eye(dim))) <= 1e-12
    np.testing.assert_array_equal(haar_unitary(4, 9), haar_unitary(4, 9))
    with pytest.raises(ValueError):
        haar_unitary(0)


def test_haar_unitary_moment():
    rng = np.random.default_rng(77)
    x = np.array([abs(haar_unitary(2, rng)[0, 0]) ** 2 for _ in range(10_000)])
    se = x.std(ddof=1) / math.sqrt(x.size)
    assert abs(x.mean() - 0.5) < 3 * se


def test_haar_unitary_phases_are_uniform():
    # arg(U00) is uniform on the circle, so its circular mean vanishes
    rng = np.random.default_rng(12)
    phases = np.array([haar_unitary(2, rng)[0, 0] for _ in range(10_000)])
    phases = phases / np.abs(phases)
    assert abs(phases.mean()) < 3 / math.sqrt(phases.size)


# POVMs


def povm(a, b, target=1, v=I2, u1=I2, u2=I2):
    return TwoOutcomePovm(a, b, v, u1, u2, target)


def test_povm_proportional_to_identity():
    s = random_state(3, 2)
    b1, b2 = apply_povm(s, povm(r2, r2, 2))
    assert b1.probability == pytest.approx(0.5) and b2.probability == pytest.approx(0.5)
    np.testing.assert_allclose(b1.state.amplitudes, s.amplitudes, atol=1e-15)
    np.testing.assert_allclose(b2.state.amplitudes, s.amplitudes, atol=1e-15)


def test_povm_projective_limit():
    plus = PureState(1, [1, 1])
    rest = random_state(2, 3)
    s = tensor_product(plus, rest)
    b1, b2 = apply_povm(s, povm(1.0, 0.0, 1))
    assert b1.probability == pytest.approx(0.5)
    expected = tensor_product(PureState(1, [1, 0]), rest)
    np.testing.assert_allclose(b1.state.amplitudes, expected.amplitudes, atol=1e-15)


def test_povm_degenerate_branch():
    s = make_state(StateLabel.parse("basis:0", 2))
    b1, b2 = apply_povm(s, povm(1.0, 0.0, 1))
    assert b1.probability == pytest.approx(1.0)
    assert b2.degenerate and b2.probability == 0.0


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_povm_completeness_and_probability(seed):
    rng = np.random.default_rng(seed)
    N = int(rng.integers(1, 6))
    p = TwoOutcomePovm.random(int(rng.integers(1, N + 1)), rng)
    assert p.completeness_error() <= 1e-12
    b1, b2 = apply_povm(random_state(N, rng), p)
    assert abs(b1.probability + b2.probability - 1) <= 1e-12
    for br in (b1, b2):
        if not br.degenerate:
            assert abs(np.linalg.norm(br.state.amplitudes) - 1) < 1e-12


def test_povm_validation():
    with pytest.raises(ValueError):
        povm(1.2, 0.5)
    with pytest.raises(ValueError):
        povm(0.5, 0.5, v=2 * I2)
    with pytest.raises(ValueError):
        povm(0.5, 0.5, target=0)
    with pytest.raises(ValueError):
        apply_povm(random_state(2, 0), povm(0.5, 0.5, target=3))


def test_incomplete_povm_is_an_internal_error(monkeypatch):
    zero = np.zeros((2, 2))
    monkeypatch.setattr(TwoOutcomePovm, "elements", property(lambda self: (zero, zero)))
    with pytest.raises(RuntimeError):
        apply_povm(random_state(2, 0), povm(0.5, 0.5))


# monotonicity and forefactor


def test_unitary_povm_leaves_average_unchanged():
    rng = np.random.default_rng(4)
    s = random_state(4, rng)
    loc = Locus((1, 2), 4)
    p = TwoOutcomePovm(r2, r2, haar_unitary(2, rng), haar_unitary(2, rng), haar_unitary(2, rng), 3)
    for nu in (0.25, 0.5, 1.0):
        r = monotonicity_trial(s, loc, p, nu)
        assert abs(r.lhs - r.rhs) <= 1e-12 and r.ok


def test_zero_d_stays_zero():
    s = tensor_product(random_state(1, 1), random_state(3, 2))
    loc = Locus((1, 2), 4)
    r = monotonicity_trial(s, loc, TwoOutcomePovm.random(2, 5), 0.5)
    assert r.lhs == 0.0 and r.rhs == 0.0 and r.ok


def test_monotonicity_trial_rejects_nu():
    with pytest.raises(ValueError):
        monotonicity_trial(random_state(2, 0), Locus((1,), 2), povm(0.5, 0.5), 0.0)
    with pytest.raises(ValueError):
        monotonicity_trial(random_state(2, 0), Locus((1,), 2), povm(0.5, 0.5), 1.5)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_forefactor_inside_locus(seed):
    rng = np.random.default_rng(seed)
    N = int(rng.integers(2, 6))
    loci = all_loci(N)
    loc = loci[int(rng.integers(len(loci)))]
    s = random_state(N, rng)
    p = TwoOutcomePovm.random(int(rng.choice(loc.indices)), rng)
    d0 = d_monotone(s, loc)
    if d0 <= 1e-6:
        return
    for nu in (0.25, 0.5, 1.0):
        r = monotonicity_trial(s, loc, p, nu)
        predicted = povm_forefactor(p, r.probabilities, nu)
        assert abs(r.lhs / r.rhs - predicted) <= 1e-9
        assert predicted <= 1 + 1e-12


def test_forefactor_readings_differ():
    p = povm(0.3, 0.8)
    probs = (0.4, 0.6)
    sq = povm_forefactor(p, probs, 1.0, "squared")
    pr = povm_forefactor(p, probs, 1.0, "printed")
    a2b2 = 0.09 * 0.64
    rest = (1 - 0.09) * (1 - 0.64)
    assert sq == pytest.approx(a2b2 / 0.4 + rest / 0.6)
    assert pr == pytest.approx(a2b2 / 0.4 + rest)


def test_is_unitary():
    assert is_unitary(haar_unitary(3, 0))
    assert not is_unitary(np.ones((2, 3)))
    assert not is_unitary(np.array([[1, 0], [0, 1 + 1e-9]]))
