"""Product-state (Holevo) capacities of qubit channels and simple memory channels."""

from .qstate import (
    BlochVector,
    DensityMatrix,
    Ensemble,
    PureQubit,
    binary_entropy,
    bloch_from_density,
    density_from_bloch,
    eigenvalues,
    von_neumann_entropy,
)
from .channels import (
    AmplitudeDamping,
    ChannelFamily,
    Depolarizing,
    GeneralizedAmplitudeDamping,
    GenericKraus,
    KrausSet,
    ad_x,
    apply,
    bloch_image,
    kraus_of,
    output_eigs_ad,
    output_eigs_dep,
    output_eigs_gad,
    validate_cpt,
)
from .holevo import (
    antipodal_pair,
    antipodalize,
    chi_ad,
    chi_ad_prime,
    chi_curve,
    chi_dep,
    chi_gad,
    holevo_quantity,
    output_entropy_ad,
    output_entropy_ad_second,
)
from .optimize import (
    CapacityResult,
    OracleConfig,
    OracleResult,
    capacity,
    maximize_concave_1d,
    oracle_capacity,
    solve_amax_ad,
)
from .memory import (
    InterchangeReport,
    MemorySpec,
    MinMaxDiagnostic,
    convex_combination_capacity,
    interchange_report,
    minmax_diagnostic,
    periodic_capacity,
    periodic_capacity_upper,
)

__version__ = "0.1.0"
