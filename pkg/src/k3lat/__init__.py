"""Exact arithmetic for 2-elementary K3 lattices: main invariants, the
triplet geography, discriminant forms, short vectors, q-series, the Weil
representation, and the Kodaira-dimension audit.
"""

from .errors import K3LatError
from .lattice import (
    Lattice,
    MainInvariant,
    parse_lattice,
    serialize_lattice,
    direct_sum,
    rescale,
    overlattice,
    discriminant_group,
    discriminant_form,
    main_invariant,
    is_two_elementary,
    hyperbolic_plane,
    e8_lattice,
    k3_lattice,
)
from .finiteform import (
    FiniteQuadraticForm,
    milgram_signature,
    form_invariants,
    forms_isometric,
)
from .geography import (
    geography_table,
    k3_triplet_realizable,
    lattice_exists,
    NAMED_TRIPLETS,
    fixture_catalog,
)
from .vectors import short_vectors, witness_vector
from .qseries import FracSeries, eta_quotient, theta_series, psi_m
from .weil import weil_word, lift_B, principal_part
from .audit import gritsenko_verdict, case1_report, case2_report, theorem1_coverage

__version__ = "0.1.0"

__all__ = [
    "K3LatError",
    "Lattice",
    "MainInvariant",
    "parse_lattice",
    "serialize_lattice",
    "direct_sum",
    "rescale",
    "overlattice",
    "discriminant_group",
    "discriminant_form",
    "main_invariant",
    "is_two_elementary",
    "hyperbolic_plane",
    "e8_lattice",
    "k3_lattice",
    "FiniteQuadraticForm",
    "milgram_signature",
    "form_invariants",
    "forms_isometric",
    "geography_table",
    "k3_triplet_realizable",
    "lattice_exists",
    "NAMED_TRIPLETS",
    "fixture_catalog",
    "short_vectors",
    "witness_vector",
    "FracSeries",
    "eta_quotient",
    "theta_series",
    "psi_m",
    "weil_word",
    "lift_B",
    "principal_part",
    "gritsenko_verdict",
    "case1_report",
    "case2_report",
    "theorem1_coverage",
]
