"""Exact construction and verification of prime spectra, Zariski topologies,
localizations, structure sheaves, stalks and scheme axioms over finite
commutative rings.
"""

from .rings import (
    FiniteRing,
    RingHom,
    RingValidationError,
    SizeGuardError,
    enumerate_ideals,
    enumerate_prime_ideals,
    is_ideal,
    is_local_ring,
    is_prime_ideal,
    product_ring,
    ring_iso_search,
    validate_ring,
    zmod,
)
from .localization import LocalizedRing, local_ring_at, localize
from .topology import Topology, generated_topology, induced_topology
from .sheaves import PresheafOfRings, check_presheaf_axioms, check_sheaf_axioms
from .spectrum import SpectrumSpace, structure_sheaf, zariski_topology
from .limits import direct_limit, directed_family, stalk_at
from .geometry import (
    RingedSpace,
    affine_to_scheme,
    check_affine_scheme,
    check_locally_ringed_space,
    check_scheme,
    spec_affine_witness,
    spec_locally_ringed,
    stalk_to_localization,
)

__all__ = [
    "FiniteRing",
    "RingHom",
    "RingValidationError",
    "SizeGuardError",
    "enumerate_ideals",
    "enumerate_prime_ideals",
    "is_ideal",
    "is_local_ring",
    "is_prime_ideal",
    "product_ring",
    "ring_iso_search",
    "validate_ring",
    "zmod",
    "LocalizedRing",
    "local_ring_at",
    "localize",
    "Topology",
    "generated_topology",
    "induced_topology",
    "PresheafOfRings",
    "check_presheaf_axioms",
    "check_sheaf_axioms",
    "SpectrumSpace",
    "structure_sheaf",
    "zariski_topology",
    "direct_limit",
    "directed_family",
    "stalk_at",
    "RingedSpace",
    "affine_to_scheme",
    "check_affine_scheme",
    "check_locally_ringed_space",
    "check_scheme",
    "spec_affine_witness",
    "spec_locally_ringed",
    "stalk_to_localization",
]

__version__ = "0.1.0"
