import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cdga import Element, Morphism, Presentation
from .errors import NotClosed, NotHomogeneous, PreconditionFailure, TwistNotClosed, TwistNotOdd
from .exactlin import Matrix, Quotient, Subspace, image, is_zero_vector, kernel

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClassCoordinates:
    degree: int
    coordinates: tuple

    @property
    def is_zero(self) -> bool:
        return is_zero_vector(self.coordinates)


class DegreeCohomology:

    def __init__(self, presentation: Presentation, degree: int):
        self.degree = degree
        self.cocycles = kernel(presentation.d_matrix(degree))
        if degree > 0:
            self.boundaries = image(presentation.d_matrix(degree - 1))
        else:
            self.boundaries = Subspace.zero(presentation.dimension(degree))
        self.quotient = Quotient(self.cocycles, self.boundaries)
        self.representatives = [presentation.from_vector(v, degree) for v in self.quotient.basis()]

    @property
    def betti(self) -> int:
        return self.quotient.dim


class CohomologyRing:

    def __init__(self, presentation: Presentation):
        if not presentation.validated:
            presentation.validate()
        self.presentation = presentation
        self.degrees = {k: DegreeCohomology(presentation, k) for k in range(presentation.top_degree + 1)}
        log.debug('cohomology of %r: betti %s', presentation, self.betti)

    @property
    def betti(self) -> list:
        return [self.degrees[k].betti for k in sorted(self.degrees)]

    @property
    def total_dim(self) -> int:
        return sum(self.betti)

    def representatives(self, degree: int) -> list:
        if degree not in self.degrees:
            return []
        return list(self.degrees[degree].representatives)

    def dimension(self, degree: int) -> int:
        return self.degrees[degree].betti if degree in self.degrees else 0

    def element(self, degree: int, coordinates) -> Element:
        result = Element.zero()
        for c, rep in zip(coordinates, self.representatives(degree)):
            result = result + c * rep
        return result

    def class_of(self, a: Element, degree: Optional[int] = None) -> ClassCoordinates:
        return class_of(self, a, degree)


def compute_cohomology(p: Presentation) -> CohomologyRing:
    return CohomologyRing(p)


def class_of(ring: CohomologyRing, a: Element, degree: Optional[int] = None) -> ClassCoordinates:
    p = ring.presentation
    if degree is None:
        if a.is_zero():
            raise NotHomogeneous('the degree of the zero element must be given')
        degree = p.degree_of(a)
    elif a and p.degrees_of(a) != {degree}:
        raise NotHomogeneous(f'{p.format(a)} is not of degree {degree}')
    if degree not in ring.degrees:
        return ClassCoordinates(degree, ())
    da = p.differential(a)
    if not da.is_zero():
        raise NotClosed(f'{p.format(a)} is not closed: d = {p.format(da)}', boundary=da)
    coords = ring.degrees[degree].quotient.coordinates(p.to_vector(a, degree))
    return ClassCoordinates(degree, coords)


def cup(ring: CohomologyRing, a: Element, b: Element) -> ClassCoordinates:
    p = ring.presentation
    degree = p.degree_of(a) + p.degree_of(b)
    class_of(ring, a)
    class_of(ring, b)
    return class_of(ring, p.multiply(a, b), degree)


def class_subspace(ring: CohomologyRing, elements, degree: int) -> Subspace:
    """Span, inside H^degree, of the classes of the given cocycles."""
    vectors = [class_of(ring, e, degree).coordinates for e in elements]
    return Subspace.span(vectors, ring.dimension(degree))


### Gauge transformation ###

def exponential(p: Presentation, zeta: Element) -> Element:
    result = p.unit()
    power = p.unit()
    k = 0
    while True:
        k += 1
        power = p.multiply(power, zeta) * Fraction(1, k)
        if power.is_zero():
            return result
        result = result + power


def twist_matrix(p: Presentation, eta: Element) -> Matrix:
    """Matrix of D = d - eta on the full basis."""
    return p.full_d_matrix() - p.multiplication_matrix(eta)


def check_twist(p: Presentation, eta: Element):
    if eta.is_zero():
        return
    if not p.is_odd(eta):
        raise TwistNotOdd(f'twist {p.format(eta)} has even components')
    deta = p.differential(eta)
    if not deta.is_zero():
        raise TwistNotClosed(f'twist {p.format(eta)} is not closed: d = {p.format(deta)}')


@dataclass(frozen=True)
class GaugeTransform:
    matrix: Matrix
    eta: Element
    shifted_eta: Element
    intertwines: bool


def gauge_transform(p: Presentation, eta: Element, zeta: Element) -> GaugeTransform:
    check_twist(p, eta)
    if zeta and any(deg % 2 or deg == 0 for deg in p.degrees_of(zeta)):
        raise PreconditionFailure(f'{p.format(zeta)} must have positive even degree')
    shifted = eta + p.differential(zeta)
    e_zeta = p.multiplication_matrix(exponential(p, zeta))
    lhs = twist_matrix(p, shifted) @ e_zeta
    rhs = e_zeta @ twist_matrix(p, eta)
    log.debug('gauge transform by %s: twist %s -> %s', p.format(zeta), p.format(eta), p.format(shifted))
    return GaugeTransform(e_zeta, eta, shifted, lhs == rhs)


### Induced maps ###

def induced_map(phi: Morphism, degree: int, source: Optional[CohomologyRing] = None,
                target: Optional[CohomologyRing] = None) -> Matrix:
    source = source or compute_cohomology(phi.source)
    target = target or compute_cohomology(phi.target)
    columns = [class_of(target, phi.apply(rep), degree).coordinates
               for rep in source.representatives(degree)]
    return Matrix.from_columns(columns, target.dimension(degree))


def is_quasi_isomorphism(phi: Morphism) -> bool:
    source = compute_cohomology(phi.source)
    target = compute_cohomology(phi.target)
    top = max(phi.source.top_degree, phi.target.top_degree)
    for k in range(top + 1):
        m = induced_map(phi, k, source, target)
        if m.rows != m.cols:
            return False
        if m.rows and len(kernel(m).basis) != 0:
            return False
    return True
