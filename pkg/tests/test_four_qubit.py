import numpy as np
import pytest

from qubit_monotones.bipartition import Locus, reduce
from qubit_monotones.four_qubit import (
    DET_LAYOUTS,
    FOUR_QUBIT_LOCI,
    GROUP_FAMILIES,
    Group,
    classify,
    det_invariant,
    det_matrix,
    fingerprint,
)
from qubit_monotones.monotones import d_monotone, d_monotone_minors
from qubit_monotones.states import PureState, StateLabel, make_state, random_state, tensor_product
from qubit_monotones.transforms import LocalUnitary, apply_local_unitary, haar_unitary


def state(text, n=None):
    return make_state(StateLabel.parse(text, n))


# Entry (row, column) of each determinant matrix, written out as amplitude indices.
PINNED = {
    (1, 2): "0 4 8 12 / 1 5 9 13 / 2 6 10 14 / 3 7 11 15",
    (1, 3): "0 2 8 10 / 1 3 9 11 / 4 6 12 14 / 5 7 13 15",
    (1, 4): "0 1 8 9 / 2 3 10 11 / 4 5 12 13 / 6 7 14 15",
}


@pytest.mark.parametrize("locus", FOUR_QUBIT_LOCI)
def test_layouts_pinned(locus):
    rows = [[int(x) for x in row.split()] for row in PINNED[locus].split("/")]
    np.testing.assert_array_equal(DET_LAYOUTS[locus], rows)
    # using the basis-index state a_x = x + 1 reads the layout back
    s = PureState(4, np.arange(1, 17))
    scale = np.linalg.norm(np.arange(1, 17))
    np.testing.assert_allclose(det_matrix(s, locus) * scale - 1, rows, atol=1e-12)


@pytest.mark.parametrize("locus", FOUR_QUBIT_LOCI)
def test_layout_columns_are_reduced_vectors(locus):
    # column X of the matrix is V_X, the rows running over the remaining qubits in order
    s = PureState(4, np.arange(16))
    rv = reduce(s, Locus(locus, 4))
    np.testing.assert_array_equal(det_matrix(s, locus).T, rv.matrix)


def test_cluster_and_psi_minus():
    assert [det_invariant(state("cluster4"), loc) for loc in FOUR_QUBIT_LOCI] == pytest.approx(
        [1, 0, 1], abs=1e-12
    )
    assert [det_invariant(state("psi-minus"), loc) for loc in FOUR_QUBIT_LOCI] == pytest.approx(
        [0.5, 0.5, 0], abs=1e-12
    )


def test_det_invariant_matches_general_pipeline():
    rng = np.random.default_rng(21)
    for _ in range(100):
        s = random_state(4, rng)
        for loc in FOUR_QUBIT_LOCI:
            v = det_invariant(s, loc)
            rv = reduce(s, Locus(loc, 4))
            assert abs(v - d_monotone_minors(rv)) <= 1e-10 * max(1, v)
            assert abs(v - d_monotone(s, Locus(loc, 4))) <= 1e-10 * max(1, v)


def test_rejects_other_sizes_and_loci():
    with pytest.raises(ValueError):
        det_invariant(random_state(3, 0), (1, 2))
    with pytest.raises(ValueError):
        det_invariant(random_state(4, 0), (2, 3))
    with pytest.raises(ValueError):
        fingerprint(random_state(5, 0))


def test_fingerprint_examples():
    fp = fingerprint(state("psi-minus"))
    assert fp.group is Group.ONE_ZERO
    assert fp.zero_pattern == (False, False, True)
    assert fingerprint(state("ghz", 4)).group is Group.ALL_ZEROS
    assert fingerprint(state("w", 4)).group is Group.ALL_ZEROS
    assert fingerprint(state("cluster4")).group is Group.ONE_ZERO
    assert fingerprint(state("psi-plus")).group is Group.ALL_ZEROS
    assert fingerprint(random_state(4, 0)).group is Group.NO_ZEROS


def test_classify_and_anomalous_two_zeros():
    assert classify((False, False, False)) is Group.NO_ZEROS
    assert classify((True, False, False)) is Group.ONE_ZERO
    assert classify((True, True, True)) is Group.ALL_ZEROS
    assert classify((True, True, False)) is Group.ANOMALOUS
    assert GROUP_FAMILIES[Group.ANOMALOUS] == ()
    assert len(GROUP_FAMILIES[Group.ALL_ZEROS]) == 4
    assert sum(len(f) for f in GROUP_FAMILIES.values()) == 8


def test_two_zero_pattern_is_reported_anomalous():
    s = random_state(4, 8)
    values = sorted(fingerprint(s).d2_values)
    fp = fingerprint(s, threshold=(values[1] + values[2]) / 2)
    assert sum(fp.zero_pattern) == 2
    assert fp.group is Group.ANOMALOUS
    assert fp.families == ()
    assert fp.to_dict()["group"] == "Anomalous"


def test_bell_pair_times_product_has_all_zeros():
    bell = state("ghz", 2)
    s = tensor_product(tensor_product(bell, random_state(1, 1)), random_state(1, 2))
    assert fingerprint(s).group is Group.ALL_ZEROS


def test_threshold_is_configurable():
    s = state("psi-minus")
    assert fingerprint(s, threshold=1e-9).group is Group.ONE_ZERO
    assert fingerprint(s, threshold=0.6).group is Group.ALL_ZEROS
    assert fingerprint(s).to_dict()["threshold"] == 1e-9


def test_lu_never_changes_zero_pattern():
    rng = np.random.default_rng(33)
    bases = [state("psi-minus"), state("cluster4"), state("ghz", 4), state("psi-plus"), random_state(4, rng)]
    for trial in range(200):
        s = bases[trial % len(bases)]
        before = fingerprint(s)
        for q in range(1, 5):
            s = apply_local_unitary(s, LocalUnitary(q, haar_unitary(2, rng)))
        after = fingerprint(s)
        assert after.zero_pattern == before.zero_pattern
        assert after.group is before.group


def test_fingerprint_serialization():
    doc = fingerprint(state("psi-minus")).to_dict()
    assert doc["group"] == "OneZero"
    assert doc["loci"] == [[1, 2], [1, 3], [1, 4]]
    assert "not tested" in doc["note"]
