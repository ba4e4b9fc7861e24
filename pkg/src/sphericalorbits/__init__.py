"""Exact combinatorics of orbit closures of wonderful varieties."""
from __future__ import annotations

from .rootsys import DynkinComponent, RootKind, RootSystem, classify_spherical_root
from .spherical import Color, Divisor, SphericalSystem, localize, loose_roots, make_system, validate
from .lattice import (
    is_distinguished,
    enumerate_distinguished,
    kernel_monoid_generators,
    max_distinguished_avoiding,
    quotient_system,
)
from .orbits import all_orbits, check_faithful, orbit_image, stabilizer_doubling
from .criteria import cross_check, nonstrict_sufficient, shape_classify, strict_bijectivity
from .io import InputError, emit_orbit_table, normalize, parse_input, serialize
from .corpus import load_corpus, load_entry, run_all

__all__ = [
    "Color", "Divisor", "DynkinComponent", "InputError", "RootKind", "RootSystem", "SphericalSystem",
    "all_orbits", "check_faithful", "classify_spherical_root", "cross_check", "emit_orbit_table",
    "enumerate_distinguished", "is_distinguished", "kernel_monoid_generators", "load_corpus", "load_entry",
    "localize", "loose_roots", "make_system", "max_distinguished_avoiding", "nonstrict_sufficient",
    "normalize", "orbit_image", "parse_input", "quotient_system", "run_all", "serialize", "shape_classify",
    "stabilizer_doubling", "strict_bijectivity", "validate",
]
__version__ = "0.1.0"
