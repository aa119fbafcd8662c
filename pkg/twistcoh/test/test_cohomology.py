import pytest

from ..cdga import Morphism, cp, morphism, s3_model, sphere, tensor_product, torus
from ..cohomology import (check_twist, class_of, compute_cohomology, cup, exponential, gauge_transform,
                          induced_map, is_quasi_isomorphism)
from ..errors import NotClosed, PreconditionFailure, TwistNotClosed, TwistNotOdd
from ..twisted import gauge_invariance, twisted_cohomology
from .utils import *


def test_heisenberg_betti_and_representatives(heis):
    ring = compute_cohomology(heis)
    assert ring.betti == [1, 2, 2, 1]
    reps = {k: [heis.format(e) for e in ring.representatives(k)] for k in range(4)}
    assert reps == {0: ['1'], 1: ['x', 'y'], 2: ['x*z', 'y*z'], 3: ['x*y*z']}


def test_projective_plane():
    assert compute_cohomology(cp(2)).betti == [1, 0, 1, 0, 1]


def test_product_betti_numbers(m_file):
    ring = compute_cohomology(m_file.presentation)
    assert ring.total_dim == 18


def test_exact_class_is_zero(heis):
    ring = compute_cohomology(heis)
    assert class_of(ring, heis.parse_element('x*y')).is_zero
    assert class_of(ring, heis.parse_element('x*z')).coordinates == (1, 0)


def test_class_of_requires_cocycle(heis):
    ring = compute_cohomology(heis)
    with pytest.raises(NotClosed) as excinfo:
        class_of(ring, heis.generator('z'))
    assert excinfo.value.boundary == heis.parse_element('x*y')
    assert excinfo.value.exit_code == 3


def test_cup_product():
    p = cp(2)
    ring = compute_cohomology(p)
    t = p.generator('t')
    assert cup(ring, t, t).coordinates == (1,)


def test_cup_product_of_exact_pair(heis):
    ring = compute_cohomology(heis)
    assert cup(ring, heis.generator('x'), heis.generator('y')).is_zero


def test_twist_must_be_odd():
    p = cp(2)
    with pytest.raises(TwistNotOdd):
        check_twist(p, p.generator('t'))


def test_twist_must_be_closed(heis):
    with pytest.raises(TwistNotClosed):
        check_twist(heis, heis.generator('z'))
    check_twist(heis, heis.generator('x'))


def test_exponential_of_nilpotent():
    p = cp(2)
    e = exponential(p, p.generator('t'))
    assert p.format(e) == '1 + t + 1/2*t^2'


def test_gauge_transform_intertwines():
    p = tensor_product(s3_model(), sphere(1))
    eta = p.parse_element('b*e')
    zeta = p.parse_element('a*e')
    gauge = gauge_transform(p, eta, zeta)
    assert gauge.intertwines
    assert p.format(gauge.shifted_eta) == '2*b*e'
    report = gauge_invariance(p, eta, zeta)
    assert report.intertwines
    assert report.agree
    assert report.after == twisted_cohomology(p, gauge.shifted_eta).dims


def test_gauge_by_a_closed_element(m_file):
    p = m_file.presentation
    report = gauge_invariance(p, m_file.twist, p.parse_element('x*y'))
    assert report.intertwines
    assert p.format(report.shifted_eta) == 'x*t'
    assert report.before == report.after
    assert sum(report.after) == 10


def test_gauge_needs_even_degree(heis):
    with pytest.raises(PreconditionFailure):
        gauge_transform(heis, heis.generator('x'), heis.generator('y'))


def test_sphere_maps_quasi_isomorphically_to_s3_model():
    phi = morphism(sphere(3), s3_model(), {'e': 'a*b'})
    assert induced_map(phi, 3).entries == ((1,),)
    assert is_quasi_isomorphism(phi)


def test_zero_map_is_not_quasi_isomorphism():
    phi = Morphism(sphere(3), s3_model(), {}).validate()
    assert not is_quasi_isomorphism(phi)


def test_torus_cohomology_is_exterior():
    assert compute_cohomology(torus(3)).betti == [1, 3, 3, 1]
