"""Exchange and state-permutation operators for N spin-S particles."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    AmbiguityError,
    CapacityError,
    ConstructionError,
    ContractError,
    ConventionError,
    RecognitionError,
    SpinrepError,
)
from .exchange import (  # noqa: E402
    class_operator,
    exchange_op,
    pol_operator,
    schroedinger_hamiltonian,
    schroedinger_poly,
    swap_oracle,
    vrep,
)
from .linalg import RationalMatrix, snap_spectrum, span_residual, spectrum  # noqa: E402
from .multiplets import h0_spectrum_multiplet, multiplicities  # noqa: E402
from .permutations import Permutation, conjugacy_classes  # noqa: E402
from .spins import SiteSystem, SpinQuantum, heisenberg  # noqa: E402

__all__ = [
    "AmbiguityError",
    "CapacityError",
    "ConstructionError",
    "ContractError",
    "ConventionError",
    "Permutation",
    "RationalMatrix",
    "RecognitionError",
    "SiteSystem",
    "SpinQuantum",
    "SpinrepError",
    "class_operator",
    "conjugacy_classes",
    "exchange_op",
    "h0_spectrum_multiplet",
    "heisenberg",
    "multiplicities",
    "pol_operator",
    "schroedinger_hamiltonian",
    "schroedinger_poly",
    "snap_spectrum",
    "span_residual",
    "spectrum",
    "swap_oracle",
    "vrep",
]
