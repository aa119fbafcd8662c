"""Twisted differential D = d - eta, its mod-2 graded cohomology, the spectral
sequence of the degree filtration, and Massey products.

Sign conventions: eta acts by left multiplication, d_3 = -eta and
d_r = -{eta, ..., eta, x} with (r - 1)/(deg eta - 1) copies of eta.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .cdga import Element, Morphism, Presentation
from .cohomology import (CohomologyRing, check_twist, class_of, class_subspace, compute_cohomology, gauge_transform,
                         is_quasi_isomorphism, twist_matrix)
from .errors import ClassDead, PreconditionFailure, ProductsNotZero
from .exactlin import Matrix, Quotient, Subspace, image, is_zero_vector, kernel, solve, unit_vector, zero_vector

log = logging.getLogger(__name__)


### Twisted complex ###

class TwistedComplex:

    def __init__(self, presentation: Presentation, eta: Element):
        if not presentation.validated:
            presentation.validate()
        check_twist(presentation, eta)
        self.presentation = presentation
        self.eta = eta
        self.matrix = twist_matrix(presentation, eta)
        slices = presentation.degree_slices()
        self.even = [i for deg, rng in slices.items() if deg % 2 == 0 for i in rng]
        self.odd = [i for deg, rng in slices.items() if deg % 2 == 1 for i in rng]
        self.even_block = self._block(self.even, self.odd)
        self.odd_block = self._block(self.odd, self.even)

    def _block(self, cols: list, rows: list) -> Matrix:
        return Matrix(len(rows), len(cols), [[self.matrix[i, j] for j in cols] for i in rows])

    def apply(self, a: Element) -> Element:
        p = self.presentation
        return p.differential(a) - p.multiply(self.eta, a)

    def squares_to_zero(self) -> bool:
        return (self.matrix @ self.matrix).is_zero()

    def embed(self, v, positions: list) -> Element:
        full = [Fraction(0)] * self.matrix.cols
        for i, e in zip(positions, v):
            full[i] = e
        return self.presentation.full_element(full)


@dataclass(frozen=True)
class TwistedCohomology:
    even_dim: int
    odd_dim: int
    even_representatives: tuple
    odd_representatives: tuple

    @property
    def total(self) -> int:
        return self.even_dim + self.odd_dim

    @property
    def dims(self) -> tuple:
        return self.even_dim, self.odd_dim


def twisted_cohomology(p: Presentation, eta: Element) -> TwistedCohomology:
    complex_ = TwistedComplex(p, eta)
    h0 = Quotient(kernel(complex_.even_block), image(complex_.odd_block))
    h1 = Quotient(kernel(complex_.odd_block), image(complex_.even_block))
    result = TwistedCohomology(
        h0.dim, h1.dim,
        tuple(complex_.embed(v, complex_.even) for v in h0.basis()),
        tuple(complex_.embed(v, complex_.odd) for v in h1.basis()),
    )
    log.info('twisted cohomology of %r with twist %s: %s', p, p.format(eta), result.dims)
    return result


### Filtration spectral sequence ###

@dataclass
class SSPage:
    r: int
    dims: dict
    representatives: dict
    differentials: dict

    @property
    def total(self) -> int:
        return sum(self.dims.values())

    def differential_is_zero(self) -> bool:
        return all(m.is_zero() for m in self.differentials.values())


class SpectralSequence:
    """Pages E_r^p = Z_r^p / (Z_{r-1}^{p+1} + D Z_{r-1}^{p-r+1}) of the filtration by form degree."""

    def __init__(self, presentation: Presentation, eta: Element):
        self.complex = TwistedComplex(presentation, eta)
        self.presentation = presentation
        self.n = self.complex.matrix.cols
        self.top = presentation.top_degree
        self.index_degree = [0] * self.n
        for deg, rng in presentation.degree_slices().items():
            for i in rng:
                self.index_degree[i] = deg
        self._z = {}
        self._quotients = {}
        self._differentials = {}

    def _indices(self, low: int, high: Optional[int] = None) -> list:
        return [i for i, deg in enumerate(self.index_degree)
                if deg >= low and (high is None or deg < high)]

    def filtration(self, p: int) -> Subspace:
        return Subspace.coordinate(self.n, self._indices(p))

    def cycles(self, r: int, p: int) -> Subspace:
        """Z_r^p = {a in F^p : D a in F^(p+r)}."""
        key = (r, p)
        if key in self._z:
            return self._z[key]
        low = max(p, 0)
        constrained = self._indices(low, p + r - 1)
        free = self._indices(max(low, p + r - 1))
        rows = self._indices(0, p + r)
        basis = [unit_vector(self.n, i) for i in free]
        if constrained:
            m = Matrix(len(rows), len(constrained),
                       [[self.complex.matrix[i, j] for j in constrained] for i in rows])
            for v in kernel(m).basis:
                full = [Fraction(0)] * self.n
                for j, e in zip(constrained, v):
                    full[j] = e
                basis.append(full)
        z = Subspace.span(basis, self.n)
        self._z[key] = z
        return z

    def boundaries(self, r: int, p: int) -> Subspace:
        shifted = self.cycles(r - 1, p + 1)
        source = self.cycles(r - 1, p - r + 1)
        images = [self.complex.matrix.apply(v) for v in source.basis]
        return Subspace.span(list(shifted.basis) + images, self.n)

    def quotient(self, r: int, p: int) -> Quotient:
        key = (r, p)
        if key not in self._quotients:
            if p > self.top or p < 0:
                zero = Subspace.zero(self.n)
                self._quotients[key] = Quotient(zero, zero)
            else:
                self._quotients[key] = Quotient(self.cycles(r, p), self.boundaries(r, p))
        return self._quotients[key]

    def differential(self, r: int, p: int) -> Matrix:
        """d_r : E_r^p -> E_r^(p+r) in the canonical representative bases."""
        key = (r, p)
        if key not in self._differentials:
            source = self.quotient(r, p)
            target = self.quotient(r, p + r)
            columns = [target.coordinates(self.complex.matrix.apply(v)) if target.dim else ()
                       for v in source.basis()]
            self._differentials[key] = Matrix.from_columns(columns, target.dim)
        return self._differentials[key]

    def page(self, r: int) -> SSPage:
        if r < 1:
            raise PreconditionFailure('pages start at r = 1')
        dims, reps, diffs = {}, {}, {}
        for p in range(self.top + 1):
            q = self.quotient(r, p)
            dims[p] = q.dim
            reps[p] = [self.presentation.full_element(v) for v in q.basis()]
            diffs[p] = self.differential(r, p)
        page = SSPage(r, dims, reps, diffs)
        log.debug('page E_%d: total %d', r, page.total)
        return page

    def pages(self, r_max: int) -> list:
        return [self.page(r) for r in range(1, r_max + 1)]


@dataclass
class SpectralSequenceResult:
    pages: list
    limit_total: int
    stable_from: Optional[int]

    @property
    def totals(self) -> dict:
        return {page.r: page.total for page in self.pages}


def spectral_sequence(p: Presentation, eta: Element, r_max: Optional[int] = None) -> SpectralSequenceResult:
    ss = SpectralSequence(p, eta)
    r_max = r_max if r_max is not None else p.top_degree + 1
    pages = ss.pages(r_max)
    limit = twisted_cohomology(p, eta).total
    stable_from = next((page.r for page in pages if page.total == limit), None)
    log.info('spectral sequence of %r: totals %s, stable from %s',
             p, [page.total for page in pages], stable_from)
    return SpectralSequenceResult(pages, limit, stable_from)


### Massey products ###

@dataclass
class MasseyCoset:
    degree: int
    representative: tuple
    element: Element
    indeterminacy: Subspace

    @property
    def indeterminacy_dim(self) -> int:
        return self.indeterminacy.dim

    @property
    def nonzero(self) -> bool:
        return not self.indeterminacy.contains(self.representative)

    def contains(self, coordinates) -> bool:
        """Whether another representative lies in the same coset."""
        diff = tuple(a - b for a, b in zip(coordinates, self.representative))
        return self.indeterminacy.contains(diff)


@dataclass(frozen=True)
class Obstructed:
    stage: int
    detail: str


def bounding_element(p: Presentation, b: Element, degree: int) -> Optional[Element]:
    """Canonical u with d u = b, or None when b is not exact."""
    if b.is_zero():
        return Element.zero()
    if degree == 0:
        return None
    u = solve(p.d_matrix(degree - 1), p.to_vector(b, degree))
    if u is None:
        return None
    return p.from_vector(u, degree - 1)


def massey_triple(ring: CohomologyRing, x: Element, y: Element, z: Element,
                  defining: Optional[tuple] = None) -> MasseyCoset:
    p = ring.presentation
    px, qy, rz = (class_of(ring, e).degree for e in (x, y, z))
    xy = p.multiply(x, y)
    yz = p.multiply(y, z)
    if defining is None:
        u = bounding_element(p, xy, px + qy)
        if u is None:
            raise ProductsNotZero(f'[{p.format(x)}][{p.format(y)}] is not zero', product='xy')
        v = bounding_element(p, yz, qy + rz)
        if v is None:
            raise ProductsNotZero(f'[{p.format(y)}][{p.format(z)}] is not zero', product='yz')
    else:
        u, v = defining
        if p.differential(u) != xy or p.differential(v) != yz:
            raise PreconditionFailure('defining system does not satisfy du = xy and dv = yz')
    sign = -1 if px % 2 == 0 else 1
    w = p.multiply(u, z) + sign * p.multiply(x, v)
    degree = px + qy + rz - 1
    coords = class_of(ring, w, degree).coordinates
    indeterminacy = Subspace.span(
        list(class_subspace(ring, [p.multiply(x, h) for h in ring.representatives(qy + rz - 1)], degree).basis)
        + list(class_subspace(ring, [p.multiply(h, z) for h in ring.representatives(px + qy - 1)], degree).basis),
        ring.dimension(degree))
    log.debug('massey {%s, %s, %s} = %s', p.format(x), p.format(y), p.format(z), p.format(w))
    return MasseyCoset(degree, coords, w, indeterminacy)


def _defining_system(p: Presentation, a: Element, x: Element, k: int, deg_x: int, deg_a: int):
    """Block system for v_1..v_{k-1}: d v_1 = a x, d v_i = a v_{i-1}."""
    unknown_degrees = [deg_x + i * (deg_a - 1) for i in range(1, k)]
    offsets = []
    total = 0
    for deg in unknown_degrees:
        offsets.append(total)
        total += p.dimension(deg)
    rows = []
    rhs = []
    for i, deg in enumerate(unknown_degrees):
        target = deg + 1
        dim_t = p.dimension(target)
        block = [[Fraction(0)] * total for _ in range(dim_t)]
        dm = p.d_matrix(deg)
        for r in range(dim_t):
            for c in range(dm.cols):
                block[r][offsets[i] + c] = dm[r, c]
        if i > 0:
            prev = unknown_degrees[i - 1]
            for c, mono in enumerate(p.basis(prev)):
                col = p.to_vector(p.multiply(a, Element({mono: 1})), target)
                for r in range(dim_t):
                    block[r][offsets[i - 1] + c] -= col[r]
            rhs.extend([Fraction(0)] * dim_t)
        else:
            ax = p.multiply(a, x)
            rhs.extend(p.to_vector(ax, target))
        rows.append(block)
    return unknown_degrees, offsets, rows, rhs, total


def iterated_massey(p: Presentation, a: Element, x: Element, k: int,
                    ring: Optional[CohomologyRing] = None) -> Union[MasseyCoset, Obstructed]:
    """{a, ..., a, x} with k copies of a, solved jointly for the whole defining system."""
    if k < 1:
        raise PreconditionFailure('the number of copies must be at least 1')
    ring = ring or compute_cohomology(p)
    deg_x = class_of(ring, x).degree
    deg_a = p.degree_of(a)
    if deg_a % 2 == 0:
        raise PreconditionFailure(f'{p.format(a)} must have odd degree')
    class_of(ring, a)
    degree = deg_x + k * (deg_a - 1) + 1
    if k == 1:
        m = p.multiply(a, x)
        return MasseyCoset(degree, class_of(ring, m, degree).coordinates, m,
                           Subspace.zero(ring.dimension(degree)))
    unknown_degrees, offsets, blocks, rhs, total = _defining_system(p, a, x, k, deg_x, deg_a)
    flat = []
    for block in blocks:
        flat.extend(block)
    solution = None
    row_count = 0
    for stage, block in enumerate(blocks, start=1):
        row_count += len(block)
        width = offsets[stage] if stage < len(offsets) else total
        sub = Matrix(row_count, width, [row[:width] for row in flat[:row_count]])
        solution = solve(sub, rhs[:row_count])
        if solution is None:
            detail = f'stage {stage} of the defining system has no solution'
            log.info('{%s^%d, %s} obstructed at stage %d', p.format(a), k, p.format(x), stage)
            return Obstructed(stage, detail)
    last_deg = unknown_degrees[-1]
    last = solution[offsets[-1]:]
    v_last = p.from_vector(last, last_deg)
    m = p.multiply(a, v_last)
    coords = class_of(ring, m, degree).coordinates
    homogeneous = kernel(Matrix(len(flat), total, flat))
    ambiguity = [p.multiply(a, p.from_vector(v[offsets[-1]:], last_deg)) for v in homogeneous.basis]
    indeterminacy = class_subspace(ring, ambiguity, degree)
    log.debug('{%s^%d, %s} = %s', p.format(a), k, p.format(x), p.format(m))
    return MasseyCoset(degree, coords, m, indeterminacy)


def massey_eta_iterated(p: Presentation, eta: Element, x: Element, k: int,
                        ring: Optional[CohomologyRing] = None) -> Union[MasseyCoset, Obstructed]:
    check_twist(p, eta)
    if eta.is_zero():
        raise PreconditionFailure('the twist must be non-zero')
    return iterated_massey(p, eta, x, k, ring)


@dataclass
class DifferentialCheck:
    r: int
    degree: int
    copies: int
    differential: tuple
    massey: tuple
    obstructed: Optional[Obstructed] = None

    @property
    def agree(self) -> bool:
        return self.obstructed is None and self.differential == self.massey

    @property
    def nonzero(self) -> bool:
        return not is_zero_vector(self.differential)


def lift_to_page(ss: SpectralSequence, x: Element, degree: int, r: int) -> Optional[tuple]:
    """a in Z_r^degree with leading term x, or None when the class dies before page r."""
    p = ss.presentation
    xv = p.full_vector(x)
    dx = ss.complex.matrix.apply(xv)
    unknowns = ss._indices(degree + 1, degree + r - 1)
    rows = ss._indices(degree + 1, degree + r)
    if not rows:
        return xv
    m = Matrix(len(rows), len(unknowns), [[ss.complex.matrix[i, j] for j in unknowns] for i in rows])
    b = solve(m, [-dx[i] for i in rows])
    if b is None:
        return None
    full = list(xv)
    for j, e in zip(unknowns, b):
        full[j] += e
    return tuple(full)


def dr_vs_massey_check(p: Presentation, eta: Element, x: Element, r: int,
                       ss: Optional[SpectralSequence] = None) -> DifferentialCheck:
    ss = ss or SpectralSequence(p, eta)
    ring = compute_cohomology(p)
    degree = class_of(ring, x).degree
    deg_eta = p.degree_of(eta)
    if deg_eta == 1:
        raise PreconditionFailure('a degree-one twist has no Massey description of d_r')
    a = lift_to_page(ss, x, degree, r)
    if a is None:
        raise ClassDead(f'{p.format(x)} does not survive to page {r}')
    source = ss.quotient(r, degree)
    target = ss.quotient(r, degree + r)
    dr = ss.differential(r, degree).apply(source.coordinates(a))
    copies, rem = divmod(r - 1, deg_eta - 1)
    if rem:
        return DifferentialCheck(r, degree, 0, dr, zero_vector(target.dim))
    product = iterated_massey(p, eta, x, copies, ring)
    if isinstance(product, Obstructed):
        return DifferentialCheck(r, degree, copies, dr, zero_vector(target.dim), product)
    if target.dim == 0:
        massey = ()
    else:
        massey = target.coordinates(p.full_vector(-product.element))
    check = DifferentialCheck(r, degree, copies, dr, massey)
    log.info('d_%d(%s) vs -Massey: agree=%s nonzero=%s', r, p.format(x), check.agree, check.nonzero)
    return check


### Cross-checks ###

@dataclass
class CollapseReport:
    totals: dict
    nonzero_differentials: list
    higher_vanish: bool
    stable_at_e4: bool
    limit_total: int

    @property
    def consistent(self) -> bool:
        return self.stable_at_e4 or not self.higher_vanish


def collapse_report(p: Presentation, eta: Element, r_max: Optional[int] = None) -> CollapseReport:
    result = spectral_sequence(p, eta, r_max or max(p.top_degree + 1, 5))
    nonzero = [page.r for page in result.pages if not page.differential_is_zero()]
    higher_vanish = all(r < 5 for r in nonzero)
    totals = result.totals
    stable_at_e4 = totals.get(4) == result.limit_total
    return CollapseReport(totals, nonzero, higher_vanish, stable_at_e4, result.limit_total)


@dataclass
class QuasiIsoReport:
    quasi_isomorphism: bool
    source_dims: tuple
    target_dims: tuple

    @property
    def agree(self) -> bool:
        return self.source_dims == self.target_dims


def quasi_iso_invariance(phi: Morphism, eta: Element) -> QuasiIsoReport:
    qi = is_quasi_isomorphism(phi)
    source = twisted_cohomology(phi.source, eta).dims
    target = twisted_cohomology(phi.target, phi.apply(eta)).dims
    return QuasiIsoReport(qi, source, target)


@dataclass
class GaugeReport:
    intertwines: bool
    shifted_eta: Element
    before: tuple
    after: tuple

    @property
    def agree(self) -> bool:
        return self.before == self.after


def gauge_invariance(p: Presentation, eta: Element, zeta: Element) -> GaugeReport:
    """Twisted cohomology before and after eta -> eta + d(zeta), with e^zeta checked as the intertwiner."""
    gauge = gauge_transform(p, eta, zeta)
    before = twisted_cohomology(p, eta).dims
    after = twisted_cohomology(p, gauge.shifted_eta).dims
    log.info('gauge by %s: intertwines=%s, dims %s -> %s', p.format(zeta), gauge.intertwines, before, after)
    return GaugeReport(gauge.intertwines, gauge.shifted_eta, before, after)
