from .multi import ZZ, IntegerRing, MultiPoly, reduce_coefficients_mod_p, specialize
from .parse import coefficient_ring, parse_entry, parse_poly
from .rational import RationalEntry
from .uni import (
    UniPoly,
    count_irreducibles,
    enumerate_monic_irreducibles,
    enumerate_monic_polys,
    is_irreducible,
)


def decompose_last_variable(P: MultiPoly) -> list[MultiPoly]:
    return P.decompose_last_variable()


__all__ = [
    "ZZ",
    "IntegerRing",
    "MultiPoly",
    "RationalEntry",
    "UniPoly",
    "coefficient_ring",
    "count_irreducibles",
    "decompose_last_variable",
    "enumerate_monic_irreducibles",
    "enumerate_monic_polys",
    "is_irreducible",
    "parse_entry",
    "parse_poly",
    "reduce_coefficients_mod_p",
    "specialize",
]
