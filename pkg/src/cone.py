# src/cone.py — the symmetric F-nef cone in c-coordinates: facets, extremal rays, samples
"""Each F-curve index {a,b,c,d} of n gives an integer linear form in (c_2..c_floor(n/2))
by expanding f(i) = f(n-i) = -c_i. The F-nef cone is where all forms are >= 0.

Extremal rays come from cddlib (pycddlib, exact fraction arithmetic). Each ray is
scaled to a primitive integer vector and the list is sorted, so the output does
not depend on the order cddlib reports generators in.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm
from typing import Dict, List, Optional, Sequence, Tuple

import cdd

from . import certify_config
from .combinatorics import four_quads
from .divisor_model import SymmetricDivisor, basis_indices

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class ConeDescription:
    n: int
    dim: int
    facets: Tuple[Vector, ...]
    # how many F-curve indices produced each facet form
    multiplicities: Tuple[int, ...]
    rays: Optional[Tuple[Vector, ...]] = None

    def __post_init__(self) -> None:
        if any(len(form) != self.dim for form in self.facets):
            raise ValueError(f"facet forms must have {self.dim} coordinates")
        for ray in self.rays or ():
            if len(ray) != self.dim:
                raise ValueError(f"ray {ray} must have {self.dim} coordinates")
            if _content(ray) != 1:
                raise ValueError(f"ray {ray} is not primitive")
            bad = next((form for form in self.facets if _dot(form, ray) < 0), None)
            if bad is not None:
                raise ValueError(f"ray {ray} violates facet form {bad}")


def _dot(a: Sequence[int], b: Sequence[object]) -> int:
    return sum(x * y for x, y in zip(a, b))  # type: ignore[operator,misc]


def _content(v: Sequence[int]) -> int:
    return reduce(gcd, (abs(x) for x in v), 0)


def _primitive(v: Sequence[int]) -> Vector:
    g = _content(v)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(x // g for x in v)


def facet_form(n: int, quad: Sequence[int]) -> Vector:
    """Coefficients of L . F(a,b,c,d) in the c_i."""
    dim = len(basis_indices(n))
    form = [0] * dim
    a, b, c, d = quad
    terms = [(a, 1), (b, 1), (c, 1), (d, 1), (a + b, -1), (b + c, -1), (a + c, -1)]
    for x, sign in terms:
        x %= n
        idx = min(x, n - x)
        if 2 <= idx <= n // 2:
            # f(idx) = -c_idx
            form[idx - 2] -= sign
    return tuple(form)


def facet_system(n: int) -> ConeDescription:
    """One form per F-curve index, duplicates merged with their multiplicity."""
    if n < 4:
        raise ValueError(f"the F-nef cone needs n >= 4, got {n}")
    counts: Dict[Vector, int] = {}
    for quad in four_quads(n):
        form = facet_form(n, quad.quad)
        counts[form] = counts.get(form, 0) + 1
    return ConeDescription(
        n=n,
        dim=len(basis_indices(n)),
        facets=tuple(counts),
        multiplicities=tuple(counts.values()),
    )


def _integer_direction(row: Sequence[object]) -> Vector:
    values = [Fraction(x) for x in row]  # type: ignore[arg-type]
    scale = lcm(*(v.denominator for v in values))
    return _primitive(tuple(int(v * scale) for v in values))


def _cdd_rays(forms: Sequence[Vector]) -> List[Vector]:
    # H-representation rows are [b, a_1..a_d] meaning b + a.x >= 0; every form is homogeneous
    matrix = cdd.Matrix([[0, *form] for form in forms], number_type="fraction")
    matrix.rep_type = cdd.RepType.INEQUALITY
    generators = cdd.Polyhedron(matrix).get_generators()
    if generators.lin_set:
        raise ValueError(f"the facet system leaves a {len(generators.lin_set)}-dimensional lineality space")
    rays = set()
    for i in range(generators.row_size):
        row = generators[i]
        # the apex comes back as a vertex row (leading 1)
        if row[0] != 0 or not any(row[1:]):
            continue
        rays.add(_integer_direction(row[1:]))
    logger.debug("cdd returned %d generators, %d distinct rays", generators.row_size, len(rays))
    return sorted(rays)


@lru_cache(maxsize=64)
def _rays_for(n: int) -> Tuple[Vector, ...]:
    system = facet_system(n)
    forms = sorted(form for form in system.facets if any(form))
    return tuple(_cdd_rays(forms))


def extremal_rays(n: int) -> ConeDescription:
    system = facet_system(n)
    limit = certify_config.max_ray_dim()
    if system.dim > limit:
        raise ValueError(f"ray enumeration is guarded at dimension {limit}; n={n} has dimension {system.dim}")
    rays = _rays_for(n)
    logger.info("n=%d: %d facet forms, %d extremal rays", n, len(system.facets), len(rays))
    return ConeDescription(
        n=n, dim=system.dim, facets=system.facets, multiplicities=system.multiplicities, rays=rays
    )


def in_cone(system: ConeDescription, divisor: SymmetricDivisor) -> bool:
    """Membership through the facet forms (the same test is_fnef does through f)."""
    if divisor.n != system.n:
        raise ValueError(f"divisor on n={divisor.n} tested against the cone for n={system.n}")
    return all(_dot(form, divisor.coeffs) >= 0 for form in system.facets)


def divisor_from_vector(n: int, vector: Sequence[object]) -> SymmetricDivisor:
    return SymmetricDivisor(n=n, coeffs=tuple(Fraction(x) for x in vector))  # type: ignore[arg-type]


def sample_fnef(
    n: int,
    seed: Optional[int] = None,
    coefficients: Optional[Sequence[int]] = None,
) -> SymmetricDivisor:
    """A nonnegative integer combination of the extremal rays.

    With explicit coefficients the combination is taken as given (rays in their
    sorted order); otherwise multipliers are drawn from 0..SYMFNEF_SAMPLE_MAX_COEFF,
    never all zero.
    """
    rays = extremal_rays(n).rays or ()
    if coefficients is None:
        rng = random.Random(seed)
        top = certify_config.sample_max_coeff()
        coefficients = [rng.randint(0, top) for _ in rays]
        if rays and not any(coefficients):
            coefficients[rng.randrange(len(rays))] = 1
    if len(coefficients) != len(rays):
        raise ValueError(f"{len(coefficients)} coefficients for {len(rays)} rays")
    if any(c < 0 for c in coefficients):
        raise ValueError("ray multipliers must be nonnegative")
    dim = len(basis_indices(n))
    total = [0] * dim
    for c, ray in zip(coefficients, rays):
        for t in range(dim):
            total[t] += c * ray[t]
    return divisor_from_vector(n, total)
