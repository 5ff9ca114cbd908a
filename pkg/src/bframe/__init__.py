"""Binary Parseval group frames over GF(2).

Frames and Gramians (``frames``), coefficient functions and symmetric
doubling orbits (``gramchar``), classification up to automorphic switching
(``classify``), code behaviour (``codes``) and the cyclic-to-product bridge
(``bridge``), all on top of packed GF(2) linear algebra (``gf2``).
"""

from .bridge import compare_groups, phi, phi_inv, reindex_cyclic_to_product, sdo_refinement
from .classify import ClassCatalog, canonical_subset, classify_closure, classify_group, classify_polya
from .codes import code_weight, robustness, simulate_bitflips, simulate_erasures
from .errors import (
    BframeError,
    CapacityError,
    DegenerateCodeError,
    DimensionError,
    DomainError,
    FixtureError,
    GroupAxiomError,
    NotAGroupFrameError,
    UnsupportedError,
)
from .frames import (
    Representation,
    VectorFamily,
    frame_from_gramian,
    gramian,
    is_parseval,
    orbit_frame,
    representation_from_frame,
)
from .gf2 import BitMatrix, BitVector
from .gramchar import EtaFunction, NuFunction, SdoPartition, check_eta, enumerate_valid_etas, gram_from_eta
from .groups import group_from_descriptor, make_cayley, make_cyclic, make_zpq
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BframeError",
    "BitMatrix",
    "BitVector",
    "CapacityError",
    "ClassCatalog",
    "DegenerateCodeError",
    "DimensionError",
    "DomainError",
    "EtaFunction",
    "FixtureError",
    "GroupAxiomError",
    "NotAGroupFrameError",
    "NuFunction",
    "Representation",
    "SdoPartition",
    "UnsupportedError",
    "VectorFamily",
    "canonical_subset",
    "check_eta",
    "classify_closure",
    "classify_group",
    "classify_polya",
    "code_weight",
    "compare_groups",
    "enumerate_valid_etas",
    "frame_from_gramian",
    "gram_from_eta",
    "gramian",
    "group_from_descriptor",
    "is_parseval",
    "make_cayley",
    "make_cyclic",
    "make_zpq",
    "orbit_frame",
    "phi",
    "phi_inv",
    "reindex_cyclic_to_product",
    "representation_from_frame",
    "robustness",
    "sdo_refinement",
    "simulate_bitflips",
    "simulate_erasures",
]
