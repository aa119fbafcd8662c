"""Characteristic classes of twisted K-theory.

The polynomial algebra Q[x1, x2, ...] carries two gradings: weight(x_n) = n
and word-length(x_n) = 1. The derivation d x_n = x_(n-1), d x_1 = 0 has kernel
J, the invariant ring.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Mapping, Optional, Sequence

import sympy as sp
from sympy.utilities.iterables import partitions

from .errors import NotHomogeneous, NotInvariant, ParseError, PreconditionFailure, ZeroWordLength
from .exactlin import Matrix, kernel, rank, solve, to_fraction

log = logging.getLogger(__name__)


def _trim(exps: Sequence[int]) -> tuple:
    exps = list(exps)
    while exps and exps[-1] == 0:
        exps.pop()
    return tuple(exps)


class CharPoly:
    """Sparse polynomial in x1, x2, ...; a monomial is its exponent tuple without trailing zeros."""

    __slots__ = ('terms',)

    def __init__(self, terms: Optional[Mapping] = None):
        clean = {}
        for exps, coeff in (terms or {}).items():
            coeff = to_fraction(coeff)
            if coeff != 0:
                key = _trim(exps)
                clean[key] = clean.get(key, Fraction(0)) + coeff
        self.terms = {k: c for k, c in clean.items() if c != 0}

    @classmethod
    def variable(cls, n: int) -> 'CharPoly':
        if n < 1:
            return cls()
        exps = [0] * n
        exps[n - 1] = 1
        return cls({tuple(exps): 1})

    @classmethod
    def constant(cls, c) -> 'CharPoly':
        return cls({(): c})

    def __eq__(self, other):
        if not isinstance(other, CharPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f'CharPoly({format_charpoly(self)})'

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: 'CharPoly') -> 'CharPoly':
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, Fraction(0)) + c
        return CharPoly(terms)

    def __neg__(self) -> 'CharPoly':
        return CharPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: 'CharPoly') -> 'CharPoly':
        return self + (-other)

    def __mul__(self, other) -> 'CharPoly':
        if not isinstance(other, CharPoly):
            other = to_fraction(other)
            return CharPoly({k: other * c for k, c in self.terms.items()})
        terms = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                n = max(len(k1), len(k2))
                key = _trim([(k1[i] if i < len(k1) else 0) + (k2[i] if i < len(k2) else 0) for i in range(n)])
                terms[key] = terms.get(key, Fraction(0)) + c1 * c2
        return CharPoly(terms)

    def __rmul__(self, scalar) -> 'CharPoly':
        return self * scalar

    def weights(self) -> set:
        return {monomial_weight(k) for k in self.terms}

    def word_lengths(self) -> set:
        return {sum(k) for k in self.terms}

    def component(self, weight: int) -> 'CharPoly':
        return CharPoly({k: c for k, c in self.terms.items() if monomial_weight(k) == weight})

    def truncate(self, max_weight: int) -> 'CharPoly':
        return CharPoly({k: c for k, c in self.terms.items() if monomial_weight(k) <= max_weight})

    def to_vector(self, weight: int) -> tuple:
        basis = monomial_basis(weight)
        pos = {m: i for i, m in enumerate(basis)}
        v = [Fraction(0)] * len(basis)
        for k, c in self.terms.items():
            if k not in pos:
                raise NotHomogeneous(f'{format_charpoly(self)} is not of weight {weight}')
            v[pos[k]] = c
        return tuple(v)

    @classmethod
    def from_vector(cls, v: Sequence, weight: int) -> 'CharPoly':
        return cls(dict(zip(monomial_basis(weight), v)))

    def to_sympy(self, xs: Sequence[sp.Symbol]):
        expr = sp.Integer(0)
        for k, c in self.terms.items():
            term = sp.Rational(c.numerator, c.denominator)
            for i, e in enumerate(k):
                if e:
                    term *= xs[i] ** e
            expr += term
        return expr


def monomial_weight(exps: Sequence[int]) -> int:
    return sum((i + 1) * e for i, e in enumerate(exps))


def word_length(exps: Sequence[int]) -> int:
    return sum(exps)


def monomial_basis(weight: int) -> list:
    """Monomials of the given weight, ordered by their parts listed in decreasing order."""
    if weight < 0:
        return []
    if weight == 0:
        return [()]
    monos = []
    for part in partitions(weight):
        exps = [0] * weight
        for size, mult in part.items():
            exps[size - 1] = mult
        monos.append(_trim(exps))
    return sorted(monos, key=_parts_key)


def _parts_key(exps: Sequence[int]) -> tuple:
    parts = []
    for i in range(len(exps) - 1, -1, -1):
        parts.extend([i + 1] * exps[i])
    return tuple(parts)


def format_monomial(exps: Sequence[int], var: str = 'x') -> str:
    factors = []
    for i, e in enumerate(exps):
        if e == 1:
            factors.append(f'{var}{i + 1}')
        elif e > 1:
            factors.append(f'{var}{i + 1}^{e}')
    return '*'.join(factors) if factors else '1'


def format_charpoly(f: CharPoly, var: str = 'x') -> str:
    if f.is_zero():
        return '0'
    ordered = sorted(f.terms.items(), key=lambda item: (monomial_weight(item[0]), _parts_key(item[0])))
    out = ''
    for k, (exps, coeff) in enumerate(ordered):
        body = format_monomial(exps, var)
        mag = abs(coeff)
        if mag != 1:
            body = str(mag) if body == '1' else f'{mag}*{body}'
        if k == 0:
            out = ('-' if coeff < 0 else '') + body
        else:
            out += f" {'-' if coeff < 0 else '+'} {body}"
    return out


def parse_charpoly(text: str) -> CharPoly:
    xs = {}
    try:
        expr = sp.sympify(text.replace('^', '**'))
    except (sp.SympifyError, SyntaxError, TypeError):
        raise ParseError(f"cannot read characteristic class '{text}'")
    for sym in expr.free_symbols:
        name = sym.name
        if not (name.startswith('x') and name[1:].isdigit() and int(name[1:]) >= 1):
            raise ParseError(f"unknown variable '{name}' (expected x1, x2, ...)")
        xs[int(name[1:])] = sym
    if not xs:
        value = sp.Rational(expr)
        return CharPoly.constant(Fraction(int(value.p), int(value.q)))
    n = max(xs)
    symbols = [xs.get(i, sp.Symbol(f'x{i}')) for i in range(1, n + 1)]
    poly = sp.Poly(sp.expand(expr), *symbols)
    terms = {}
    for exps, coeff in poly.as_dict().items():
        coeff = sp.Rational(coeff)
        terms[exps] = Fraction(int(coeff.p), int(coeff.q))
    return CharPoly(terms)


def x_symbols(n: int) -> list:
    return list(sp.symbols(f'x1:{n + 1}')) if n >= 1 else []


### Derivations ###

def derivation_d(f: CharPoly) -> CharPoly:
    """d x_n = x_(n-1) with d x_1 = 0."""
    terms = {}
    for exps, coeff in f.terms.items():
        for i, e in enumerate(exps):
            if e == 0 or i == 0:
                continue
            new = list(exps)
            new[i] -= 1
            new[i - 1] += 1
            key = _trim(new)
            terms[key] = terms.get(key, Fraction(0)) + coeff * e
    return CharPoly(terms)


def delta(f: CharPoly) -> CharPoly:
    """delta x_k = k x_(k+1)."""
    terms = {}
    for exps, coeff in f.terms.items():
        for i, e in enumerate(exps):
            if e == 0:
                continue
            new = list(exps) + [0]
            new[i] -= 1
            new[i + 1] += 1
            key = _trim(new)
            terms[key] = terms.get(key, Fraction(0)) + coeff * e * (i + 1)
    return CharPoly(terms)


def d_matrix(weight: int) -> Matrix:
    """Matrix of d : A_weight -> A_(weight-1)."""
    source = monomial_basis(weight)
    rows = len(monomial_basis(weight - 1))
    columns = [derivation_d(CharPoly({m: 1})).to_vector(weight - 1) if rows else () for m in source]
    return Matrix.from_columns(columns, rows)


### Invariant ring ###

@dataclass(frozen=True)
class InvariantWeight:
    weight: int
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)


def invariant_ring(max_weight: int) -> list:
    if max_weight < 0:
        raise PreconditionFailure('max weight must be non-negative')
    result = []
    for n in range(max_weight + 1):
        basis = tuple(CharPoly.from_vector(v, n) for v in kernel(d_matrix(n)).basis)
        result.append(InvariantWeight(n, basis))
    log.info('invariant ring dims through weight %d: %s', max_weight, [w.dim for w in result])
    return result


def partition_count(n: int) -> int:
    return int(sp.npartitions(n))


@dataclass(frozen=True)
class SurjectivityRow:
    weight: int
    rank: int
    target_dim: int

    @property
    def surjective(self) -> bool:
        return self.rank == self.target_dim


def check_d_surjective(max_weight: int) -> list:
    if max_weight < 1:
        raise PreconditionFailure('max weight must be at least 1')
    return [SurjectivityRow(n, rank(d_matrix(n)), len(monomial_basis(n - 1)))
            for n in range(2, max_weight + 1)]


def poincare_series(max_weight: int) -> list:
    """Coefficients of 1/((1-t^2)(1-t^3)...) + t through t^max_weight."""
    t = sp.Symbol('t')
    product = sp.Integer(1)
    for k in range(2, max_weight + 1):
        product *= 1 / (1 - t ** k)
    expansion = sp.series(product, t, 0, max_weight + 1).removeO() if max_weight >= 2 else sp.Integer(1)
    coeffs = [int(sp.expand(expansion).coeff(t, n)) for n in range(max_weight + 1)]
    if max_weight >= 1:
        coeffs[1] += 1
    return coeffs


### Group action y = x e^u ###

@dataclass(frozen=True)
class ActionSeries:
    coefficients: dict

    def component(self, u_power: int) -> CharPoly:
        return CharPoly({m: c for (m, k), c in self.coefficients.items() if k == u_power})


def _y_substitution(xs: list, u: sp.Symbol) -> dict:
    subs = {}
    for n in range(1, len(xs) + 1):
        subs[xs[n - 1]] = sum(xs[n - k - 1] * u ** k / sp.factorial(k) for k in range(n))
    return subs


def group_action(f: CharPoly) -> ActionSeries:
    n = max((len(k) for k in f.terms), default=0)
    xs = x_symbols(n)
    u = sp.Symbol('u')
    if not xs:
        return ActionSeries({((), 0): c for c in f.terms.values()})
    expr = sp.expand(f.to_sympy(xs).subs(_y_substitution(xs, u), simultaneous=True))
    coefficients = {}
    if expr != 0:
        for exps, coeff in sp.Poly(expr, *xs, u).as_dict().items():
            coeff = sp.Rational(coeff)
            coefficients[(_trim(exps[:-1]), exps[-1])] = Fraction(int(coeff.p), int(coeff.q))
    return ActionSeries(coefficients)


def is_invariant(f: CharPoly) -> bool:
    n = max((len(k) for k in f.terms), default=0)
    xs = x_symbols(n)
    if not xs:
        return True
    u = sp.Symbol('u')
    expr = f.to_sympy(xs)
    return sp.expand(expr.subs(_y_substitution(xs, u), simultaneous=True) - expr) == 0


### delta and the exp(lambda delta) lift ###

@dataclass(frozen=True)
class LiftResult:
    source: CharPoly
    scale: Fraction
    max_weight: int
    series: CharPoly
    closed: bool
    commutator_is_word_length: bool


def commutator_check(max_weight: int) -> bool:
    """[d, delta] multiplies every monomial of weight <= max_weight by its word-length."""
    for n in range(1, max_weight + 1):
        for m in monomial_basis(n):
            mono = CharPoly({m: 1})
            if derivation_d(delta(mono)) - delta(derivation_d(mono)) != mono * word_length(m):
                return False
    return True


def delta_and_lift(f: CharPoly, max_weight: int) -> LiftResult:
    if f.is_zero():
        raise ZeroWordLength('the zero class has no lift')
    lengths = f.word_lengths()
    if len(lengths) != 1 or len(f.weights()) != 1:
        raise NotHomogeneous(f'{format_charpoly(f)} must be homogeneous in weight and word-length')
    m = lengths.pop()
    if m == 0:
        raise ZeroWordLength('constants have word-length zero')
    df = derivation_d(f)
    if not df.is_zero():
        raise NotInvariant(f'd({format_charpoly(f)}) = {format_charpoly(df)} is not zero')
    scale = Fraction(1, m)
    start = f.weights().pop()
    if max_weight < start:
        raise PreconditionFailure(f'max weight {max_weight} is below the weight {start} of {format_charpoly(f)}')
    series = CharPoly()
    term = f
    for k in range(0, max_weight - start + 1):
        series = series + term * (scale ** k / factorial(k))
        term = delta(term)
    residual = (derivation_d(series) - series).truncate(max_weight - 1)
    result = LiftResult(f, scale, max_weight, series, residual.is_zero(), commutator_check(max_weight))
    log.info('lift of %s to weight %d: closed=%s', format_charpoly(f), max_weight, result.closed)
    return result


### psi operations ###

def psi_character(k: int, max_weight: int) -> CharPoly:
    return CharPoly({(0,) * (n - 1) + (1,): Fraction(k) ** n for n in range(1, max_weight + 1)})


def dual_character(max_weight: int) -> CharPoly:
    return psi_character(-1, max_weight)


@dataclass(frozen=True)
class PsiMonomial:
    exponents: tuple
    max_weight: int
    character: CharPoly
    lowest: CharPoly

    @property
    def length(self) -> int:
        return len(self.exponents)

    @property
    def sum_is_one(self) -> bool:
        return sum(self.exponents) == 1

    @property
    def restricted(self) -> bool:
        return sum(1 for k in self.exponents if k < 0) <= 1

    @property
    def lowest_matches(self) -> bool:
        prod = Fraction(1)
        for k in self.exponents:
            prod *= k
        return self.lowest == CharPoly({(self.length,): prod})

    @property
    def lowest_in_invariant_ring(self) -> bool:
        return derivation_d(self.lowest).is_zero()

    def components(self) -> dict:
        return {n: self.character.component(n) for n in range(self.length, self.max_weight + 1)}


def psi_monomial_character(exponents: Sequence[int], max_weight: int) -> PsiMonomial:
    exponents = tuple(int(k) for k in exponents)
    if not exponents or any(k == 0 for k in exponents):
        raise PreconditionFailure('psi exponents must be non-zero integers')
    character = CharPoly.constant(1)
    for k in exponents:
        character = (character * psi_character(k, max_weight)).truncate(max_weight)
    lowest = character.component(len(exponents))
    return PsiMonomial(exponents, max_weight, character, lowest)


### Power sums and Newton identities ###

def power_sum_symbols(n: int) -> list:
    return list(sp.symbols(f's0:{n + 1}'))


def tensor_action_power_sums(n: int):
    """s_n(u) = sum_k C(n, k) s_(n-k) u^k; s_0 stays symbolic (it is the index k)."""
    if n < 0:
        raise PreconditionFailure('n must be non-negative')
    s = power_sum_symbols(n)
    u = sp.Symbol('u')
    return sp.expand(sum(comb(n, k) * s[n - k] * u ** k for k in range(n + 1)))


def check_tensor_action(n: int) -> bool:
    """Agrees with ch(L (x) E) = e^u ch(E) and, at u^1, with d after s_m = m! x_m."""
    s = power_sum_symbols(n)
    u = sp.Symbol('u')
    lhs = tensor_action_power_sums(n) / sp.factorial(n)
    rhs = sum(u ** k / sp.factorial(k) * s[n - k] / sp.factorial(n - k) for k in range(n + 1))
    if sp.expand(lhs - rhs) != 0:
        return False
    linear = sp.expand(tensor_action_power_sums(n)).coeff(u, 1)
    xs = x_symbols(max(n, 1))
    substituted = linear.subs({s[m]: sp.factorial(m) * xs[m - 1] for m in range(1, n + 1)}).subs(s[0], 0)
    if n == 0:
        return sp.expand(substituted) == 0
    expected = sp.factorial(n) * derivation_d(CharPoly.variable(n)).to_sympy(xs)
    return sp.expand(substituted - expected) == 0


def newton_convert(direction: str, n: int):
    """'power' gives s_n in terms of c_1..c_n; 'elementary' gives c_n in terms of s_1..s_n."""
    if n < 1:
        raise PreconditionFailure('n must be at least 1')
    c = [sp.Integer(1)] + list(sp.symbols(f'c1:{n + 1}'))
    s = [sp.Integer(0)] + list(sp.symbols(f's1:{n + 1}'))
    if direction == 'power':
        sums = [sp.Integer(0)]
        for m in range(1, n + 1):
            value = sum((-1) ** (i - 1) * c[i] * sums[m - i] for i in range(1, m))
            value += (-1) ** (m - 1) * m * c[m]
            sums.append(sp.expand(value))
        return sums[n]
    if direction == 'elementary':
        elems = [sp.Integer(1)]
        for m in range(1, n + 1):
            value = sum((-1) ** (i - 1) * elems[m - i] * s[i] for i in range(1, m + 1)) / m
            elems.append(sp.expand(value))
        return elems[n]
    raise PreconditionFailure(f"unknown direction '{direction}' (use 'power' or 'elementary')")


### Wang model ###

@dataclass(frozen=True)
class WangModelReport:
    max_weight: int
    even_dims: dict
    odd_dims: dict
    annihilation: dict

    @property
    def annihilated(self) -> bool:
        return all(g is not None for g in self.annihilation.values())


def wang_model_report(max_weight: int) -> WangModelReport:
    """Blocks A_n -> A_(n-1) w; H^(2n) = ker, H^(2n+3) = coker of A_(n+1) -> A_n."""
    if max_weight < 1:
        raise PreconditionFailure('max weight must be at least 1')
    ring = invariant_ring(max_weight)
    even = {2 * w.weight: w.dim for w in ring}
    odd = {1: 0}
    for n in range(max_weight):
        coker = len(monomial_basis(n)) - rank(d_matrix(n + 1))
        odd[2 * n + 3] = coker
    witnesses = {}
    for w in ring:
        if w.weight == 0 or w.weight >= max_weight:
            continue
        for f in w.basis:
            g = solve(d_matrix(w.weight + 1), f.to_vector(w.weight))
            witnesses[format_charpoly(f)] = None if g is None else CharPoly.from_vector(g, w.weight + 1)
    log.info('wang model through weight %d: odd %s', max_weight, odd)
    return WangModelReport(max_weight, even, odd, witnesses)
