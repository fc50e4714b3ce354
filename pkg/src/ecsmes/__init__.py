"""Entanglement of two-branch nonorthogonal states.

Closed-form concurrence of mu|A>|B> + nu|C>|D>, a coherent-state branch
engine for linear optics and Kerr gates, a truncated Fock-space oracle, and
simulations of the generation schemes built from them.
"""

from .branch import BranchState, coherent_overlap, coherent_state, cat_state, schmidt_across_cut
from .errors import (
    CapacityError,
    DegenerateBasisError,
    DomainError,
    NullStateError,
    PostSelectionError,
    UnsupportedMeasureError,
)
from .fock import FockStateVector, choose_cutoff, reduced_density, synthesize, un_network
from .gates import BS50, BSTheta, CrossKerr, CurlyB, Displace, Kerr, Phase
from .measures import (
    DensityMatrix,
    SchmidtSpectrum,
    ckw_residual,
    concurrence_from_spectrum,
    concurrence_pure_two_qubit,
    entanglement_entropy,
    wootters_concurrence,
)
from .schemes import (
    SchemeReport,
    run_beamsplitter_scheme,
    run_cascade,
    run_cswap,
    run_kerr_un,
    run_w_generation,
)
from .two_branch import (
    FourTermDescriptor,
    TwoBranchDescriptor,
    TwoQubitAmplitudes,
    build_family,
    concurrence_closed_form,
    cross_kerr_concurrence,
    four_term_analysis,
    mes_condition,
    multipartite_cut_reduce,
    normalization_constant,
    qubit_embedding,
)

__version__ = "0.1.0"
