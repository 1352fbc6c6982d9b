"""magrobin: spectral toolkit for the magnetic Robin Laplacian on planar domains.

Computes the lowest eigenvalue of -(grad - i b A)^2 with a negative Robin
boundary parameter (homogeneous field b, vector potential A = (-y, x)/2) and
verifies numerically that, at fixed perimeter and moderate field, the disk
maximizes the ground-state energy within the class of domains whose
distance-level curves have disk-dominated moments of inertia.

Modules
-------
radial       one-dimensional fiber solver on the disk (mode scan, beta_c)
geometry     planar domains, distance fields, level curves, subordinacy
coarea       transplantation upper bound and the verification pipeline
fem          independent 2-D P1 finite-element cross-check solver
asymptotics  large negative-beta expansions and the dilation identity
cli          command line entry point (``magrobin``)
"""

from .errors import (
    ConfigError,
    InvalidCurveError,
    InvalidDomainError,
    InvalidGridError,
    InvalidInputError,
    MagrobinError,
    MeshQualityError,
    NotAdmissibleError,
    NotRadialError,
    NumericFailureError,
    UnsupportedKindError,
)
from .radial import (
    AdmissibilityCertificate,
    DiskGroundState,
    FiberParams,
    FiberResult,
    RadialGrid,
    RadialProfile,
    assemble_fiber,
    critical_beta_disk,
    disk_ground,
    fiber_ground,
    is_admissible,
    radial_profile,
)

__version__ = "0.1.0"
