"""Truncated Weyl-Heisenberg oscillators, their coherent states, and the
entanglement they pick up in beam-splitter networks."""

from truncosc.algebra import (
    LadderMatrices,
    Truncation,
    commutator_defect,
    holstein_primakoff_defect,
    kerr_identity_defect,
    ladder_matrices,
    stokes_defects,
    stokes_operators,
    structure_function,
)
from truncosc.coherent import (
    CoherentParams,
    bargmann_measure,
    coefficient,
    coherent_state,
    displaced_vacuum,
    fidelity,
    glauber_state,
    moment_defect,
    normalization,
    resolution_of_identity_defect,
)
from truncosc.entanglement import (
    EntanglementReport,
    closed_form_single_bs_entropy,
    entanglement_report,
    entropies_123,
    linear_entropy,
    partial_trace,
    tripartite_concurrence,
)
from truncosc.errors import DomainError, NumericalError, PreconditionError
from truncosc.multimode import (
    BeamSplitter,
    MultimodeState,
    NetworkSpec,
    apply_beamsplitter,
    apply_network,
    embed_single_mode,
    single_bs_coherent_output,
    su_k1_closed_form,
    two_bs_coherent_output,
    xi_from_angles,
)

__version__ = "0.1.0"
