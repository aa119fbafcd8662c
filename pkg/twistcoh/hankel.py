"""Hankel determinants of the series quotient c(t) = a(t)/b(t).

a(t) = 1 + a1 t + ... + ap t^p and b(t) = 1 + b1 t + ... + bq t^q. The
resultant is the product of (x_i - y_j) over the roots, rewritten in the
coefficients through a_i = e_i(x), b_j = e_j(y). Weights: c_n, a_n and b_n
have weight n, a root has weight 1.
"""
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

import sympy as sp
from sympy.utilities.iterables import partitions

from .charclass import CharPoly, monomial_basis
from .config import get_settings
from .errors import DimensionCapError, PreconditionFailure
from .exactlin import Matrix, Subspace, kernel, rank, solve

log = logging.getLogger(__name__)

PRECHECK_TRIALS = 5


def _symbols(prefix: str, n: int) -> list:
    return list(sp.symbols(f'{prefix}1:{n + 1}')) if n >= 1 else []


def c_symbols(n: int) -> list:
    return _symbols('c', n)


def a_symbols(p: int) -> list:
    return _symbols('a', p)


def b_symbols(q: int) -> list:
    return _symbols('b', q)


def root_symbols(p: int, q: int) -> tuple:
    return _symbols('x', p), _symbols('y', q)


def _fraction(value) -> Fraction:
    value = sp.Rational(value)
    return Fraction(int(value.p), int(value.q))


def format_symbolic(expr) -> str:
    return sp.sstr(sp.expand(expr), order='lex').replace('**', '^')


def _check_params(p: int, q: int, bound: Optional[int] = None):
    if p < 1 or q < 1:
        raise PreconditionFailure('p and q must be at least 1')
    bound = get_settings().hankel_bound if bound is None else bound
    if p * q > bound:
        raise DimensionCapError(f'p*q = {p * q} exceeds the bound {bound} (TWISTCOH_HANKEL_BOUND)')


def _exponent_vectors(n: int, largest: int) -> list:
    """Exponents of monomials of weight n in variables of weight 1..largest."""
    if n == 0:
        return [(0,) * largest]
    if largest == 0:
        return []
    out = []
    for part in partitions(n, k=largest):
        exps = [0] * largest
        for size, mult in part.items():
            exps[size - 1] = mult
        out.append(tuple(exps))
    return sorted(out, reverse=True)


def coefficient_basis(p: int, q: int, weight: int) -> list:
    """Monomials a^alpha b^beta of the given weight, as exponent tuples (alpha + beta)."""
    basis = []
    for wa in range(weight, -1, -1):
        for ea in _exponent_vectors(wa, p):
            for eb in _exponent_vectors(weight - wa, q):
                basis.append(ea + eb)
    return basis


def _monomial(symbols: Sequence, exps: Sequence[int]):
    term = sp.Integer(1)
    for s, e in zip(symbols, exps):
        if e:
            term *= s ** e
    return term


def _coefficient_vector(expr, symbols: Sequence, basis: Sequence[tuple]) -> tuple:
    pos = {m: i for i, m in enumerate(basis)}
    v = [Fraction(0)] * len(basis)
    expr = sp.expand(expr)
    if expr == 0:
        return tuple(v)
    for exps, coeff in sp.Poly(expr, *symbols).as_dict().items():
        if exps not in pos:
            raise PreconditionFailure(f'{format_symbolic(expr)} leaves the expected weight')
        v[pos[exps]] = _fraction(coeff)
    return tuple(v)


def to_charpoly(expr, symbols: Sequence) -> CharPoly:
    """A polynomial in c1..cn as a CharPoly on the same exponent convention."""
    expr = sp.expand(expr)
    if expr == 0:
        return CharPoly()
    if not symbols:
        return CharPoly.constant(_fraction(expr))
    return CharPoly({exps: _fraction(coeff) for exps, coeff in sp.Poly(expr, *symbols).as_dict().items()})


### Series quotient and determinants ###

def series_quotient(p: int, q: int, n: int) -> list:
    """c1..cn of a(t)/b(t) as polynomials in a1..ap, b1..bq."""
    if n < 1:
        raise PreconditionFailure('the number of coefficients must be at least 1')
    a = a_symbols(p)
    b = b_symbols(q)
    c = [sp.Integer(1)]
    for m in range(1, n + 1):
        value = a[m - 1] if m <= p else sp.Integer(0)
        value -= sum((b[j - 1] * c[m - j] for j in range(1, min(m, q) + 1)), sp.Integer(0))
        c.append(sp.expand(value))
    return c[1:]


def _series_coefficient(c: Sequence, k: int):
    if k == 0:
        return sp.Integer(1)
    if k < 0:
        return sp.Integer(0)
    return c[k - 1]


def hankel_matrix(p: int, q: int, c: Optional[Sequence] = None) -> sp.Matrix:
    """q x q matrix with (i, j) entry c_(i-j+p), c_0 = 1 and c_k = 0 for k < 0."""
    if p < 1 or q < 1:
        raise PreconditionFailure('p and q must be at least 1')
    needed = p + q - 1
    if c is None:
        c = c_symbols(needed)
    if len(c) < needed:
        raise PreconditionFailure(f'h_({p},{q}) needs c1..c{needed}, got {len(c)} coefficients')
    return sp.Matrix([[_series_coefficient(c, i - j + p) for j in range(q)] for i in range(q)])


def hankel_det(p: int, q: int, c: Optional[Sequence] = None):
    return sp.expand(hankel_matrix(p, q, c).det(method='berkowitz'))


def hankel_in_coefficients(p: int, q: int, cp: int, cq: int):
    """h_(p,q) evaluated on the series quotient of degrees (cp, cq)."""
    needed = p + q - 1
    subs = dict(zip(c_symbols(needed), series_quotient(cp, cq, needed)))
    return sp.expand(hankel_det(p, q).subs(subs, simultaneous=True))


### Resultant ###

def elementary_symmetric(variables: Sequence) -> list:
    """e_0..e_n of the variables."""
    t = sp.Symbol('t')
    poly = sp.Poly(sp.Mul(*[1 + v * t for v in variables]), t)
    return [poly.coeff_monomial(t ** k) for k in range(len(variables) + 1)]


def resultant_roots(p: int, q: int):
    xs, ys = root_symbols(p, q)
    return sp.expand(sp.Mul(*[x - y for x in xs for y in ys]))


def resultant(p: int, q: int, bound: Optional[int] = None):
    """The resultant as a polynomial in a1..ap, b1..bq.

    Solved exactly on the monomial basis of weight pq; the coefficients are
    unique because elementary symmetric polynomials are algebraically independent.
    """
    _check_params(p, q, bound)
    xs, ys = root_symbols(p, q)
    ex = elementary_symmetric(xs)[1:]
    ey = elementary_symmetric(ys)[1:]
    basis = coefficient_basis(p, q, p * q)
    images = [sp.expand(_monomial(ex + ey, m)) for m in basis]
    target = resultant_roots(p, q)
    roots = xs + ys
    monos = set()
    for expr in images + [target]:
        if expr != 0:
            monos.update(sp.Poly(expr, *roots).as_dict())
    rows = sorted(monos, reverse=True)
    m = Matrix.from_columns([_coefficient_vector(e, roots, rows) for e in images], len(rows))
    coeffs = solve(m, _coefficient_vector(target, roots, rows))
    if coeffs is None:
        raise PreconditionFailure(f'resultant for ({p},{q}) is not a polynomial in the coefficients')
    symbols = a_symbols(p) + b_symbols(q)
    return sp.expand(sum((sp.Rational(c.numerator, c.denominator) * _monomial(symbols, mono)
                          for c, mono in zip(coeffs, basis) if c != 0), sp.Integer(0)))


def resultant_root_shift_invariance(p: int, q: int, bound: Optional[int] = None) -> bool:
    _check_params(p, q, bound)
    xs, ys = root_symbols(p, q)
    u = sp.Symbol('u')
    shift = {v: v + u for v in xs + ys}
    r = resultant_roots(p, q)
    return sp.expand(r.subs(shift, simultaneous=True) - r) == 0


@dataclass(frozen=True)
class SpecializationReport:
    p: int
    q: int
    hankel: object
    resultant: object
    expected: object

    @property
    def holds(self) -> bool:
        return sp.expand(self.hankel - self.expected) == 0 and sp.expand(self.resultant - self.expected) == 0


def specialization_check(p: int, q: int, bound: Optional[int] = None) -> SpecializationReport:
    """a_i = 0 for i < p and b = 1: both sides collapse to a_p^q."""
    _check_params(p, q, bound)
    a = a_symbols(p)
    subs = {s: 0 for s in a[:-1] + b_symbols(q)}
    hankel = sp.expand(hankel_in_coefficients(p, q, p, q).subs(subs, simultaneous=True))
    res = sp.expand(resultant(p, q, bound).subs(subs, simultaneous=True))
    return SpecializationReport(p, q, hankel, res, a[-1] ** q)


### Identities between Hankel determinants and the resultant ###

def _random_precheck(expr, symbols: Sequence, seed: int) -> bool:
    """False if a random rational point already shows expr is non-zero."""
    rng = random.Random(seed)
    for _ in range(PRECHECK_TRIALS):
        point = {s: sp.Rational(rng.randint(-9, 9), rng.randint(1, 5)) for s in symbols}
        if expr.subs(point, simultaneous=True) != 0:
            return False
    return True


@dataclass(frozen=True)
class HankelIdentityReport:
    p: int
    q: int
    hankel: object
    resultant: object
    resultant_holds: bool
    vanishing: dict

    @property
    def holds(self) -> bool:
        return self.resultant_holds and all(self.vanishing.values())


def verify_hankel_identities(p: int, q: int, larger: Optional[Sequence[tuple]] = None,
                             bound: Optional[int] = None) -> HankelIdentityReport:
    """h_(p,q)(a/b) equals the resultant; h_(p',q')(a/b) vanishes when p' > p and q' > q."""
    _check_params(p, q, bound)
    if larger is None:
        larger = [(p + 1, q + 1)]
    else:
        for pp, qq in larger:
            if pp <= p or qq <= q:
                raise PreconditionFailure(f'({pp},{qq}) must exceed ({p},{q}) in both entries')
            _check_params(pp, qq, bound)
    symbols = a_symbols(p) + b_symbols(q)
    h = hankel_in_coefficients(p, q, p, q)
    r = resultant(p, q, bound)
    diff = h - r
    holds = _random_precheck(diff, symbols, seed=p * 31 + q) and sp.expand(diff) == 0
    vanishing = {}
    for pp, qq in larger:
        vanishing[(pp, qq)] = hankel_in_coefficients(pp, qq, p, q) == 0
    log.info('hankel identities for (%d,%d): resultant %s, vanishing %s', p, q, holds, vanishing)
    return HankelIdentityReport(p, q, h, r, holds, vanishing)


@dataclass(frozen=True)
class InjectivityReport:
    p: int
    q: int
    weight: int
    source_dim: int
    rank: int
    kernel_space: Subspace

    @property
    def injective(self) -> bool:
        return self.rank == self.source_dim

    @property
    def expected_injective(self) -> bool:
        return self.weight < (self.p + 1) * (self.q + 1)

    @property
    def kernel(self) -> list:
        return [CharPoly.from_vector(v, self.weight) for v in self.kernel_space.basis]

    def kernel_contains(self, f: CharPoly) -> bool:
        return self.kernel_space.contains(f.to_vector(self.weight))


def injectivity_rank(p: int, q: int, weight: int, bound: Optional[int] = None) -> InjectivityReport:
    """Rank of Q[c1, c2, ...] -> Q[a, b] on the c-monomials of one weight."""
    _check_params(p, q, bound)
    if weight < 1:
        raise PreconditionFailure('weight must be at least 1')
    cap = get_settings().max_weight
    if weight > cap:
        raise DimensionCapError(f'weight {weight} exceeds the cap {cap} (TWISTCOH_MAX_WEIGHT)')
    cs = series_quotient(p, q, weight)
    source = monomial_basis(weight)
    target = coefficient_basis(p, q, weight)
    symbols = a_symbols(p) + b_symbols(q)
    columns = [_coefficient_vector(_monomial(cs, m), symbols, target) for m in source]
    m = Matrix.from_columns(columns, len(target))
    report = InjectivityReport(p, q, weight, len(source), rank(m), kernel(m))
    log.debug('injectivity (%d,%d) weight %d: rank %d of %d', p, q, weight, report.rank, report.source_dim)
    return report


def injectivity_table(p: int, q: int, max_weight: Optional[int] = None,
                      bound: Optional[int] = None) -> list:
    """Weights 1 through the first one where the map can fail, (p+1)(q+1), capped at TWISTCOH_MAX_WEIGHT."""
    if max_weight is None:
        max_weight = min((p + 1) * (q + 1), get_settings().max_weight)
    return [injectivity_rank(p, q, n, bound) for n in range(1, max_weight + 1)]


### Moebius reparametrization c(t) -> c(t/(1 - ut)) ###

def moebius_substitution(c: Sequence, u) -> list:
    """New c_m = sum over n <= m of C(m-1, m-n) u^(m-n) c_n."""
    out = []
    for m in range(1, len(c) + 1):
        out.append(sp.expand(sum(comb(m - 1, m - n) * u ** (m - n) * c[n - 1] for n in range(1, m + 1))))
    return out


@dataclass(frozen=True)
class ReparamReport:
    p: int
    q: int
    original: object
    transformed: object
    witness: object

    @property
    def invariant(self) -> bool:
        return sp.expand(self.transformed - self.original) == 0


def reparam_invariance(p: int, q: Optional[int] = None, n: Optional[int] = None,
                       bound: Optional[int] = None) -> ReparamReport:
    """Compare h_(p,q)(c) with h_(p,q) of the reparametrized series, identically in u.

    Index zero (p = q) is the invariant case. The witness is c2 moved by the
    substitution, showing the action on the c-variables is not trivial.
    """
    q = p if q is None else q
    _check_params(p, q, bound)
    needed = p + q - 1
    n = needed if n is None else n
    if n < needed:
        raise PreconditionFailure(f'h_({p},{q}) needs c1..c{needed}')
    u = sp.Symbol('u')
    c = c_symbols(max(n, 2))
    moved = moebius_substitution(c, u)
    original = hankel_det(p, q, c)
    transformed = hankel_det(p, q, moved)
    witness = sp.expand(moved[1] - c[1])
    report = ReparamReport(p, q, original, transformed, witness)
    log.info('reparametrization of h_(%d,%d): invariant=%s', p, q, report.invariant)
    return report
