import random

from ..cdga import Element, embed_left, heisenberg, morphism, s3_model, sphere, tensor_product, tower, trivial
from ..cdgafile import CdgaFile, emit, parse_file
from ..cohomology import compute_cohomology, cup
from ..exactlin import (Matrix, Subspace, contains, image, intersect, is_zero_vector, kernel, rank, rref, solve,
                        subspace_sum)
from ..twisted import (SpectralSequence, TwistedComplex, gauge_invariance, massey_triple, quasi_iso_invariance,
                       spectral_sequence, twisted_cohomology)
from .utils import *


def _random_cocycle(rng, ring, degree):
    p = ring.presentation
    result = Element.zero()
    for v in ring.degrees[degree].cocycles.basis:
        result = result + rng.randint(-2, 2) * p.from_vector(v, degree)
    return result


def _random_even(rng, p):
    odd = [g.name for g in p.generators if g.is_odd]
    products = [f'{a}*{b}' for k, a in enumerate(odd) for b in odd[k + 1:]]
    if 't' in p.names:
        products.append('t')
    zeta = Element.zero()
    for text in products:
        zeta = zeta + rng.randint(-1, 1) * p.parse_element(text)
    return zeta


def test_differentials_square_to_zero():
    rng = random.Random(1)
    for _ in range(100):
        p = random_presentation(rng)
        d = p.full_d_matrix()
        assert (d @ d).is_zero()
        assert TwistedComplex(p, random_twist(rng, p)).squares_to_zero()


def test_spectral_sequence_converges():
    rng = random.Random(2)
    for _ in range(50):
        p = random_presentation(rng, max_closed=2, max_open=1)
        eta = random_twist(rng, p)
        result = spectral_sequence(p, eta)
        totals = [page.total for page in result.pages]
        assert totals == sorted(totals, reverse=True)
        assert totals[-1] == result.limit_total == twisted_cohomology(p, eta).total


def test_gauge_invariance():
    rng = random.Random(3)
    for _ in range(30):
        p = random_presentation(rng, max_closed=3, max_open=1)
        eta = random_twist(rng, p)
        zeta = _random_even(rng, p)
        report = gauge_invariance(p, eta, zeta)
        assert report.intertwines
        assert report.after == report.before == twisted_cohomology(p, eta).dims


def test_quasi_isomorphism_invariance():
    rng = random.Random(4)
    for _ in range(10):
        p = random_presentation(rng, max_closed=2, max_open=1)
        source = tensor_product(p, sphere(3))
        target = tensor_product(p, s3_model())
        images = {name: name for name in p.names}
        images['e'] = 'a*b'
        phi = morphism(source, target, images)
        eta = embed_left(random_twist(rng, p), sphere(3)) + rng.randint(0, 2) * source.generator('e')
        report = quasi_iso_invariance(phi, eta)
        assert report.quasi_isomorphism
        assert report.agree


def test_massey_coset_is_independent_of_defining_system(m_file):
    rng = random.Random(5)
    p = m_file.presentation
    ring = compute_cohomology(p)
    x = m_file.twist
    y = p.parse_element('y')
    coset = massey_triple(ring, x, x, y)
    u = p.parse_element('0*x')
    v = p.parse_element('z*t')
    for _ in range(20):
        defining = (u + _random_cocycle(rng, ring, 5), v + _random_cocycle(rng, ring, 3))
        other = massey_triple(ring, x, x, y, defining=defining)
        assert coset.contains(other.representative)


def test_heisenberg_massey_coset_is_a_point(heis):
    rng = random.Random(6)
    ring = compute_cohomology(heis)
    x, y = heis.parse_element('x'), heis.parse_element('y')
    coset = massey_triple(ring, x, x, y)
    for _ in range(10):
        defining = (_random_cocycle(rng, ring, 1), heis.parse_element('z') + _random_cocycle(rng, ring, 1))
        assert massey_triple(ring, x, x, y, defining=defining).representative == coset.representative


def test_emit_parse_round_trip():
    rng = random.Random(7)
    for _ in range(30):
        p = random_presentation(rng)
        eta = random_twist(rng, p)
        text = emit(CdgaFile(p, eta, 'random'))
        parsed = parse_file(text)
        assert emit(parsed) == text
        for name in p.names:
            assert parsed.presentation.d_generator(name) == p.d_generator(name)
        assert (parsed.twist or Element.zero()) == eta


### Exact linear algebra ###

def _random_matrix(rng):
    rows, cols = rng.randint(1, 5), rng.randint(1, 5)
    return Matrix(rows, cols, [[rng.randint(-2, 2) for _ in range(cols)] for _ in range(rows)])


def _random_subspace(rng, n):
    return Subspace.span([[rng.randint(-1, 1) for _ in range(n)] for _ in range(rng.randint(0, n))], n)


def test_rank_nullity():
    rng = random.Random(8)
    for _ in range(100):
        m = _random_matrix(rng)
        assert rank(m) + kernel(m).dim == m.cols
        assert all(is_zero_vector(m.apply(v)) for v in kernel(m).basis)


def test_rref_is_idempotent():
    rng = random.Random(9)
    for _ in range(100):
        reduced, pivots = rref(_random_matrix(rng))
        assert rref(reduced) == (reduced, pivots)


def test_grassmann_identity():
    rng = random.Random(10)
    for _ in range(100):
        n = rng.randint(1, 5)
        u, v = _random_subspace(rng, n), _random_subspace(rng, n)
        assert subspace_sum(u, v).dim + intersect(u, v).dim == u.dim + v.dim


def test_solve_exactly_when_in_image():
    rng = random.Random(11)
    for _ in range(100):
        m = _random_matrix(rng)
        b = tuple(rng.randint(-2, 2) for _ in range(m.rows))
        x = solve(m, b)
        assert (x is not None) == contains(image(m), b)
        if x is not None:
            assert m.apply(x) == b


### Algebra structure ###

def _random_homogeneous(rng, p, degree):
    result = Element.zero()
    for mono in p.basis(degree):
        result = result + rng.randint(-2, 2) * Element({mono: 1})
    return result


def _random_element(rng, p):
    result = Element.zero()
    for degree in range(p.top_degree + 1):
        if rng.random() < 0.5:
            result = result + _random_homogeneous(rng, p, degree)
    return result


def test_multiplication_is_associative_and_unital():
    rng = random.Random(12)
    for _ in range(30):
        p = random_presentation(rng)
        a, b, c = (_random_element(rng, p) for _ in range(3))
        assert p.multiply(p.multiply(a, b), c) == p.multiply(a, p.multiply(b, c))
        assert p.multiply(p.unit(), a) == a == p.multiply(a, p.unit())


def test_multiplication_is_graded_commutative():
    rng = random.Random(13)
    for _ in range(30):
        p = random_presentation(rng)
        i, j = rng.randint(0, p.top_degree), rng.randint(0, p.top_degree)
        a, b = _random_homogeneous(rng, p, i), _random_homogeneous(rng, p, j)
        assert p.multiply(a, b) == (-1) ** (i * j) * p.multiply(b, a)


def test_tensor_product_dimensions():
    rng = random.Random(14)
    for _ in range(20):
        p1 = random_presentation(rng, max_closed=2, max_open=1)
        p2 = random_presentation(rng, max_closed=2, max_open=1)
        assert tensor_product(p1, p2).total_dim == p1.total_dim * p2.total_dim


def test_tensor_with_trivial_algebra():
    rng = random.Random(15)
    for _ in range(10):
        p = random_presentation(rng)
        q = tensor_product(p, trivial())
        assert q.total_dim == p.total_dim
        assert compute_cohomology(q).betti == compute_cohomology(p).betti


def test_two_step_tower_is_heisenberg():
    assert compute_cohomology(tower(2)).betti == compute_cohomology(heisenberg()).betti == [1, 2, 2, 1]


### Cup products ###

def test_cup_ignores_added_boundaries():
    rng = random.Random(16)
    for _ in range(20):
        p = random_presentation(rng)
        ring = compute_cohomology(p)
        for i, j in ((1, 1), (1, 2), (2, 1)):
            for a in ring.representatives(i):
                for b in ring.representatives(j):
                    a2 = a + p.differential(_random_homogeneous(rng, p, i - 1))
                    b2 = b + p.differential(_random_homogeneous(rng, p, j - 1))
                    assert cup(ring, a2, b2) == cup(ring, a, b)


def test_cup_is_graded_commutative():
    rng = random.Random(17)
    for _ in range(20):
        p = random_presentation(rng)
        ring = compute_cohomology(p)
        for i, j in ((1, 1), (1, 2), (2, 2)):
            for a in ring.representatives(i):
                for b in ring.representatives(j):
                    sign = (-1) ** (i * j)
                    assert cup(ring, a, b).coordinates == tuple(sign * c for c in cup(ring, b, a).coordinates)


### Spectral sequence ###

def test_page_differentials_square_to_zero(m_file, tower_file):
    for loaded in (m_file, tower_file):
        p = loaded.presentation
        ss = SpectralSequence(p, loaded.twist)
        for r in range(1, 9):
            for degree in range(p.top_degree + 1):
                assert (ss.differential(r, degree + r) @ ss.differential(r, degree)).is_zero()
