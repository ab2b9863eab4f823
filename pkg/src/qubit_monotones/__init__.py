"""Bipartite entanglement monotones D_n, linear entropies S_n and four-qubit invariants
for N-qubit pure states."""

from .bipartition import Locus, ReducedVectors, all_loci, enumerate_loci, reconstruct, reduce
from .four_qubit import Fingerprint, Group, det_invariant, fingerprint
from .monotones import (
    SchmidtSpectrum,
    d1_direct,
    d_monotone,
    d_monotone_minors,
    d_monotone_schmidt,
    linear_entropy,
    q1_measure,
    s_entropy,
    schmidt_spectrum,
)
from .report import MonotoneReport, full_report
from .states import (
    PureState,
    StateKind,
    StateLabel,
    load_state,
    make_state,
    normalize,
    random_state,
    save_state,
    tensor_product,
)
from .transforms import (
    LocalUnitary,
    TwoOutcomePovm,
    apply_local_unitary,
    apply_povm,
    apply_subspace_unitary,
    haar_unitary,
    monotonicity_trial,
    povm_forefactor,
)

__version__ = "0.1.0"
