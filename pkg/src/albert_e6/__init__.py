"""Exact arithmetic for the 27-dimensional representation of SE6(q) built from split octonions."""

from .albert import AlbertVector, Color, classify, delta, mixed_form, radical_17, whiteness_conditions
from .gf import GF, FieldElement, field, parse_field_spec
from .octonion import Octonion
from .orbits import (
    CanonicalForm,
    count_white_formula,
    count_white_points,
    count_white_stratified,
    order_e6,
    order_se6,
    reduce_to_canonical,
    white_point_orbit_bfs,
)
from .se6 import AlbertMap, GeneratorSpec, GeneratorWord, apply_generator, generator_matrix, word_to_map

__all__ = [
    "GF", "FieldElement", "field", "parse_field_spec",
    "Octonion",
    "AlbertVector", "Color", "classify", "delta", "mixed_form", "radical_17", "whiteness_conditions",
    "AlbertMap", "GeneratorSpec", "GeneratorWord", "apply_generator", "generator_matrix", "word_to_map",
    "CanonicalForm", "count_white_formula", "count_white_points", "count_white_stratified",
    "order_e6", "order_se6", "reduce_to_canonical", "white_point_orbit_bfs",
]
