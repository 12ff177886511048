"""Spectral toolkit for discrete periodic Schrodinger operators on Z^d.

Bloch/Floquet matrices, band structure and spectral gaps, an entire-graph
factorization test for the Bloch variety, Floquet isospectrality checks,
and construction of exotic complex potentials through a diagonal inverse
eigenvalue problem.
"""

from .bands import (
    BandStructure,
    BorgVerdict,
    Gap,
    borg_check_1d,
    compute_bands,
    find_gaps,
    spectrum_union,
)
from .eigensolve import (
    AsymptoticsReport,
    GershgorinReport,
    OmegaDomain,
    Spectrum,
    asymptotics_check,
    asymptotics_residual_bound,
    eigenvalues,
    gershgorin_check,
    separation_lower_bound,
    sort_complex,
)
from .errors import (
    BlochLabError,
    ConfigMismatchError,
    EigenvalueMatchingError,
    NonRealPotentialError,
    OutsideOmegaError,
    PotentialFileError,
    SolveBudgetError,
)
from .floquet import (
    FloquetMatrix,
    assemble_direct,
    assemble_fourier,
    constant_factor_eigenvalues,
    entire_graph_value,
    multiplier_to_quasimomentum,
    product_form_eval,
    substituted_charpoly_eval,
)
from .inverse import (
    ExoticFamily,
    InverseProblem,
    XeEnumeration,
    construct_exotic_1d,
    enumerate_Xe,
    exotic_targets,
    lift_separable,
    multiset_distance,
    solve_diagonal_inverse,
)
from .lattice import (
    LatticeConfig,
    fundamental_domain,
    min_root_gap,
    reduce_to_cell,
    root_of_unity,
)
from .potential import (
    FourierCoefficients,
    Potential,
    constant,
    dft,
    idft,
    mean,
    separable,
    translate,
    zero,
)
from .variety import (
    EntireGraphCertificate,
    entire_graph_function,
    entire_graph_test,
    factorization_residual,
    floquet_isospectral,
)

__version__ = "0.1.0"

__all__ = [
    "BlochLabError",
    "ConfigMismatchError",
    "EigenvalueMatchingError",
    "NonRealPotentialError",
    "OutsideOmegaError",
    "PotentialFileError",
    "SolveBudgetError",
    "LatticeConfig",
    "fundamental_domain",
    "min_root_gap",
    "reduce_to_cell",
    "root_of_unity",
    "FourierCoefficients",
    "Potential",
    "constant",
    "dft",
    "idft",
    "mean",
    "separable",
    "translate",
    "zero",
    "FloquetMatrix",
    "assemble_direct",
    "assemble_fourier",
    "constant_factor_eigenvalues",
    "entire_graph_value",
    "multiplier_to_quasimomentum",
    "product_form_eval",
    "substituted_charpoly_eval",
    "Spectrum",
    "sort_complex",
    "eigenvalues",
    "GershgorinReport",
    "gershgorin_check",
    "OmegaDomain",
    "separation_lower_bound",
    "AsymptoticsReport",
    "asymptotics_check",
    "asymptotics_residual_bound",
    "BandStructure",
    "Gap",
    "BorgVerdict",
    "compute_bands",
    "spectrum_union",
    "find_gaps",
    "borg_check_1d",
    "EntireGraphCertificate",
    "entire_graph_test",
    "entire_graph_function",
    "factorization_residual",
    "floquet_isospectral",
    "InverseProblem",
    "multiset_distance",
    "solve_diagonal_inverse",
    "ExoticFamily",
    "exotic_targets",
    "construct_exotic_1d",
    "lift_separable",
    "XeEnumeration",
    "enumerate_Xe",
    "__version__",
]
