"""Discord measures for bipartite density matrices.

Computes the asymmetric discord (optimized over projective measurements on
one subsystem) and a symmetric discord evaluated at the eigenbases of the
reduced states, together with an independent brute-force oracle, named state
families, and seeded verification suites.
"""

from .discord import (
    AlphaResult,
    DeltaOptResult,
    DiscordReport,
    OracleResult,
    SearchConfig,
    ZeroDiscordVerdict,
    alpha_closed_form,
    alpha_given,
    alpha_oracle,
    alpha_swapped,
    build_report,
    conditional_entropy_one_sided,
    conditional_entropy_two_sided,
    delta_given,
    delta_opt,
    mutual_information,
    separability_flag,
    zero_discord_check,
)
from .errors import (
    ConsistencyError,
    DimensionError,
    QDiscordError,
    StateFileError,
    ValidationError,
)
from .families import (
    FamilyPoint,
    alpha_werner_reference,
    alpha_zurek_reference,
    werner,
    zurek,
)
from .linalg import (
    SpectralDecomposition,
    commutator,
    hermitian_eigendecomposition,
    partial_trace_A,
    partial_trace_S,
    tensor_product,
)
from .measurement import (
    EigenbasisResult,
    MeasurementBasis,
    QubitBasisAngles,
    basis_from_angles,
    basis_from_eigendecomposition,
    computational_basis,
    measure_channel,
    outcome_distribution,
    product_basis,
    projected_entropy,
    qubit_basis,
    random_basis,
)
from .states import (
    DensityMatrix,
    SeparableSpec,
    assemble_separable,
    classical_classical,
    random_density,
    random_separable,
    separable_spec,
    shannon_entropy,
    validate,
    von_neumann_entropy,
)

__version__ = "0.1.0"
