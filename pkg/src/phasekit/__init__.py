"""phasekit: phase-space quantum mechanics toolkit.

Characteristic functions, Wigner quasiprobabilities, classical and quantum
phase-space dynamics, symplectic tomography, spin master distributions with
the triangle-bound violation search, decoherence-functional consistency
checks, and metastable-state decay with resolvent continuation.
"""

from .core import (
    DEFAULT_HBAR,
    GridSpec,
    MixedState,
    WaveFunction,
    expectation,
    gaussian_packet,
    grid_from_dict,
    momentum_amplitudes,
    momentum_wavefunction,
    oscillator_eigenstate,
    position_density,
    state_from_dict,
    superpose,
)
from .decay import (
    FriedrichsModel,
    SurvivalRecord,
    fit_decay_rate,
    flat_model,
    lorentzian_model,
    resolvent,
    second_sheet_pole,
    semigroup_approximation_error,
    survival_amplitude,
)
from .dynamics import (
    EvolutionConfig,
    PolynomialHamiltonian,
    evolve_wavefunction,
    evolve_wigner,
    liouville_step,
    moyal_step,
    packet_width_trace,
)
from .histories import (
    BranchSet,
    ProjectorChain,
    chain_amplitude,
    decoherence_matrix,
    is_consistent,
)
from .phasespace import (
    CharacteristicFunction,
    WignerFunction,
    characteristic_from_wavefunction,
    characteristic_mixture,
    marginals,
    negativity_volume,
    overlap,
    purity,
    wigner_from_characteristic,
    wigner_from_state,
    wigner_momentum_grid,
)
from .spin_bell import (
    MasterDistribution,
    marginal,
    master_distribution,
    pair_distribution,
    projector,
    symmetrized_triple,
    triangle_inequality_check,
    triple_distribution,
    violation_search,
)
from .tomography import (
    Tomogram,
    scaling_check,
    tomogram_from_wigner,
    uniform_rays,
    wigner_from_tomogram,
)

__version__ = "0.1.0"
