"""Purification of density operators, Wigner and tomogram superposition laws,
and entanglement recovery from products of subsystem densities."""

from .density import (
    DensityMatrix,
    Spectrum,
    StateVector,
    from_state,
    make_density,
    make_state,
    mix,
    normalized_state,
    purity,
    spectral,
    state_from_pure,
)
from .entangle import (
    BipartiteDensity,
    SchmidtDecomposition,
    bipartite,
    entanglement_defect,
    partial_trace,
    phi_multiply,
    schmidt,
    tensor_product,
)
from .errors import NumericalError, QPurifyError, ValidationError
from .phasespace import (
    Grid1D,
    GridDensity,
    WaveFunction,
    WignerGrid,
    coherent_wavefunction,
    cross_wigner,
    fock_wavefunction,
    make_wavefunction,
    marginals,
    purity_integral,
    wigner,
    wigner_density,
    wigner_superposition,
)
from .superpose import (
    SuperposeParams,
    interference_operator,
    normalization_factor,
    phi_add,
    purify_mixture,
    superpose_states,
)
from .tomography import (
    TomogramSlice,
    tomogram_density,
    tomogram_direct,
    tomogram_radon,
    tomogram_superposition,
)

__version__ = "0.1.0"

__all__ = [
    "NumericalError",
    "QPurifyError",
    "ValidationError",
    "BipartiteDensity",
    "DensityMatrix",
    "Grid1D",
    "GridDensity",
    "SchmidtDecomposition",
    "Spectrum",
    "StateVector",
    "SuperposeParams",
    "TomogramSlice",
    "WaveFunction",
    "WignerGrid",
    "bipartite",
    "coherent_wavefunction",
    "cross_wigner",
    "entanglement_defect",
    "fock_wavefunction",
    "from_state",
    "interference_operator",
    "make_density",
    "make_state",
    "make_wavefunction",
    "marginals",
    "mix",
    "normalization_factor",
    "normalized_state",
    "partial_trace",
    "phi_add",
    "phi_multiply",
    "purify_mixture",
    "purity",
    "purity_integral",
    "schmidt",
    "spectral",
    "state_from_pure",
    "superpose_states",
    "tensor_product",
    "tomogram_density",
    "tomogram_direct",
    "tomogram_radon",
    "tomogram_superposition",
    "wigner",
    "wigner_density",
    "wigner_superposition",
]
