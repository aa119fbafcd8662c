"""Finite graded-commutative differential algebras.

An algebra is presented by generators (exterior on odd ones, truncated
polynomial on even ones) and a differential on generators, extended by the
signed Leibniz rule. Monomials are exponent tuples in generator order.
"""
import itertools
import logging
import re
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from pydantic import BaseModel, Field

from .config import get_settings
from .errors import (DegreeError, DimensionCapError, LeibnizError, NotAMorphism, NotHomogeneous,
                     ParseError, TruncationError, UnknownBuiltinError, UnknownGeneratorError)
from .exactlin import Matrix, to_fraction

log = logging.getLogger(__name__)

NAME_PATTERN = r'^[A-Za-z_][A-Za-z0-9_]*$'


class GeneratorSpec(BaseModel):
    name: str = Field(pattern=NAME_PATTERN)
    degree: int = Field(gt=0)
    truncation: Optional[int] = Field(default=None, ge=2)

    model_config = {
        'frozen': True,
        'json_schema_extra': {
            'example': {
                'name': 't',
                'degree': 2,
                'truncation': 3,
            }
        }
    }

    @property
    def is_odd(self) -> bool:
        return self.degree % 2 == 1

    @property
    def max_exponent(self) -> int:
        if self.is_odd:
            return 1
        return self.truncation - 1


class Element:
    """Sparse rational combination of monomials. Zero coefficients are never stored."""

    __slots__ = ('terms',)

    def __init__(self, terms: Optional[Mapping] = None):
        clean = {}
        for mono, coeff in (terms or {}).items():
            coeff = to_fraction(coeff)
            if coeff != 0:
                clean[tuple(mono)] = coeff
        self.terms = clean

    @classmethod
    def zero(cls) -> 'Element':
        return cls()

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f'Element({dict(sorted(self.terms.items(), reverse=True))})'

    def __add__(self, other: 'Element') -> 'Element':
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            terms[mono] = terms.get(mono, Fraction(0)) + coeff
        return Element(terms)

    def __neg__(self) -> 'Element':
        return Element({mono: -coeff for mono, coeff in self.terms.items()})

    def __sub__(self, other: 'Element') -> 'Element':
        return self + (-other)

    def __mul__(self, scalar) -> 'Element':
        if isinstance(scalar, Element):
            return NotImplemented
        scalar = to_fraction(scalar)
        return Element({mono: scalar * coeff for mono, coeff in self.terms.items()})

    __rmul__ = __mul__


class Presentation:

    def __init__(self, generators: Sequence[GeneratorSpec],
                 differentials: Optional[Mapping[str, Element]] = None, name: str = ''):
        self.generators = tuple(generators)
        self.names = tuple(g.name for g in self.generators)
        self.degrees = tuple(g.degree for g in self.generators)
        self.index = {g.name: i for i, g in enumerate(self.generators)}
        self.name = name
        self.differentials = {}
        for gen, value in (differentials or {}).items():
            if gen not in self.index:
                raise UnknownGeneratorError(f"differential assigned to unknown generator '{gen}'")
            self.differentials[gen] = self.normalize(value)
        self._bases = None
        self._positions = None
        self._d_cache = {}
        self._full_index = None
        self.validated = False

    def __repr__(self):
        return f'Presentation({self.name or ",".join(self.names)})'

    ### Monomials and elements ###

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def unit_monomial(self) -> tuple:
        return (0,) * self.ngens

    def unit(self) -> Element:
        return Element({self.unit_monomial(): 1})

    def generator(self, name: str) -> Element:
        if name not in self.index:
            raise UnknownGeneratorError(f"unknown generator '{name}'")
        mono = [0] * self.ngens
        mono[self.index[name]] = 1
        return Element({tuple(mono): 1})

    def monomial_element(self, mono: Sequence[int], coeff=1) -> Element:
        return self.normalize(Element({tuple(mono): coeff}))

    def monomial_degree(self, mono: Sequence[int]) -> int:
        return sum(e * d for e, d in zip(mono, self.degrees))

    def is_valid_monomial(self, mono: Sequence[int]) -> bool:
        if len(mono) != self.ngens:
            return False
        for e, g in zip(mono, self.generators):
            if e < 0:
                return False
            if g.is_odd and e > 1:
                return False
            if not g.is_odd and g.truncation is not None and e >= g.truncation:
                return False
        return True

    def normalize(self, a: Element) -> Element:
        """Drop monomials killed by odd squares or truncations."""
        for mono in a.terms:
            if len(mono) != self.ngens:
                raise DegreeError(f'monomial {mono} does not match {self.ngens} generators')
        return Element({m: c for m, c in a.terms.items() if self.is_valid_monomial(m)})

    def degrees_of(self, a: Element) -> set:
        return {self.monomial_degree(m) for m in a.terms}

    def degree_of(self, a: Element) -> int:
        degrees = self.degrees_of(a)
        if len(degrees) != 1:
            raise NotHomogeneous(f'{self.format(a)} is not homogeneous')
        return degrees.pop()

    def is_odd(self, a: Element) -> bool:
        return bool(a.terms) and all(deg % 2 == 1 for deg in self.degrees_of(a))

    ### Products ###

    def multiply_monomials(self, m1: tuple, m2: tuple):
        """Return (sign, monomial) for m1*m2 in normal form, or None when it vanishes."""
        out = []
        for e1, e2, g in zip(m1, m2, self.generators):
            e = e1 + e2
            if g.is_odd and e > 1:
                return None
            if not g.is_odd and g.truncation is not None and e >= g.truncation:
                return None
            out.append(e)
        swaps = 0
        for i, (e2, gi) in enumerate(zip(m2, self.generators)):
            if e2 and gi.is_odd:
                for j in range(i + 1, self.ngens):
                    if m1[j] and self.generators[j].is_odd:
                        swaps += 1
        return (-1 if swaps % 2 else 1), tuple(out)

    def multiply(self, a: Element, b: Element) -> Element:
        terms = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                prod = self.multiply_monomials(m1, m2)
                if prod is None:
                    continue
                sign, mono = prod
                terms[mono] = terms.get(mono, Fraction(0)) + sign * c1 * c2
        return Element(terms)

    def product(self, *factors: Element) -> Element:
        result = self.unit()
        for f in factors:
            result = self.multiply(result, f)
        return result

    def power(self, a: Element, k: int) -> Element:
        result = self.unit()
        for _ in range(k):
            result = self.multiply(result, a)
        return result

    ### Differential ###

    def d_generator(self, name: str) -> Element:
        return self.differentials.get(name, Element.zero())

    def d_monomial(self, mono: tuple) -> Element:
        if mono in self._d_cache:
            return self._d_cache[mono]
        result = Element.zero()
        for i, e in enumerate(mono):
            if e == 0:
                continue
            g = self.generators[i]
            dg = self.d_generator(g.name)
            if dg.is_zero():
                continue
            prefix = tuple(mono[:i]) + (0,) * (self.ngens - i)
            suffix = (0,) * (i + 1) + tuple(mono[i + 1:])
            lower = [0] * self.ngens
            lower[i] = e - 1
            factor = self.multiply(Element({tuple(lower): e}), dg)
            sign = -1 if self.monomial_degree(prefix) % 2 else 1
            term = self.product(Element({prefix: sign}), factor, Element({suffix: 1}))
            result = result + term
        self._d_cache[mono] = result
        return result

    def differential(self, a: Element) -> Element:
        result = Element.zero()
        for mono, coeff in a.terms.items():
            result = result + coeff * self.d_monomial(mono)
        return result

    ### Validation ###

    def validate(self, max_dim: Optional[int] = None, generator_lines: Optional[Mapping[str, int]] = None,
                 differential_lines: Optional[Mapping[str, int]] = None) -> 'Presentation':
        """Check the presentation; errors carry the file line of the offending statement when known."""
        gl = generator_lines or {}
        dl = differential_lines or {}
        for g in self.generators:
            if g.is_odd and g.truncation is not None:
                raise TruncationError(f"odd generator '{g.name}' cannot carry a truncation", gl.get(g.name))
            if not g.is_odd and g.truncation is None:
                raise TruncationError(f"even generator '{g.name}' needs a truncation", gl.get(g.name))
        if len(set(self.names)) != len(self.names):
            raise DegreeError('generator names must be distinct')
        for g in self.generators:
            dg = self.d_generator(g.name)
            if dg.is_zero():
                continue
            degrees = self.degrees_of(dg)
            if degrees != {g.degree + 1}:
                raise DegreeError(f"d {g.name} = {self.format(dg)} is not homogeneous of degree {g.degree + 1}",
                                  dl.get(g.name))
        for g in self.generators:
            ddg = self.differential(self.d_generator(g.name))
            if not ddg.is_zero():
                raise LeibnizError(f"d(d {g.name}) = {self.format(ddg)} is not zero", dl.get(g.name))
        for g in self.generators:
            dg = self.d_generator(g.name)
            if g.is_odd or dg.is_zero():
                continue
            top = self.multiply(self.power(self.generator(g.name), g.truncation - 1), dg)
            if not top.is_zero():
                raise TruncationError(f"d does not preserve the relation {g.name}^{g.truncation} = 0",
                                      dl.get(g.name))
        cap = get_settings().max_dim if max_dim is None else max_dim
        if self.total_dim > cap:
            raise DimensionCapError(f'algebra of dimension {self.total_dim} exceeds the cap {cap}')
        self.validated = True
        log.debug('validated %r: %d generators, dimension %d', self, self.ngens, self.total_dim)
        return self

    ### Bases ###

    @property
    def total_dim(self) -> int:
        dim = 1
        for g in self.generators:
            dim *= g.max_exponent + 1
        return dim

    @property
    def top_degree(self) -> int:
        return sum(g.degree * g.max_exponent for g in self.generators)

    def _build_bases(self):
        if self._bases is not None:
            return
        bases = {}
        ranges = [range(g.max_exponent + 1) for g in self.generators]
        for mono in itertools.product(*ranges):
            bases.setdefault(self.monomial_degree(mono), []).append(tuple(mono))
        self._bases = {deg: sorted(monos, reverse=True) for deg, monos in bases.items()}
        positions = {}
        for deg in sorted(self._bases):
            for i, mono in enumerate(self._bases[deg]):
                positions[mono] = (deg, i)
        self._positions = positions

    def basis(self, degree: int) -> list:
        self._build_bases()
        return list(self._bases.get(degree, []))

    def dimension(self, degree: int) -> int:
        return len(self.basis(degree))

    def full_basis(self) -> list:
        """All monomials, by degree and then in the within-degree order."""
        self._build_bases()
        out = []
        for deg in range(self.top_degree + 1):
            out.extend(self._bases.get(deg, []))
        return out

    def to_vector(self, a: Element, degree: int) -> tuple:
        basis = self.basis(degree)
        pos = {m: i for i, m in enumerate(basis)}
        v = [Fraction(0)] * len(basis)
        for mono, coeff in a.terms.items():
            if mono not in pos:
                raise NotHomogeneous(f'{self.format(a)} has terms outside degree {degree}')
            v[pos[mono]] = coeff
        return tuple(v)

    def from_vector(self, v: Sequence, degree: int) -> Element:
        return Element(dict(zip(self.basis(degree), v)))

    def d_matrix(self, degree: int) -> Matrix:
        """Matrix of d from degree `degree` to degree `degree + 1`, columns indexed by the source basis."""
        source = self.basis(degree)
        target_dim = self.dimension(degree + 1)
        columns = [self.to_vector(self.d_monomial(m), degree + 1) if target_dim else ()
                   for m in source]
        return Matrix.from_columns(columns, target_dim)

    ### Whole-algebra coordinates ###

    def full_index(self) -> dict:
        if self._full_index is None:
            self._full_index = {m: i for i, m in enumerate(self.full_basis())}
        return self._full_index

    def degree_slices(self) -> dict:
        """Degree -> range of positions in the full basis."""
        slices = {}
        start = 0
        for deg in range(self.top_degree + 1):
            n = self.dimension(deg)
            slices[deg] = range(start, start + n)
            start += n
        return slices

    def full_vector(self, a: Element) -> tuple:
        index = self.full_index()
        v = [Fraction(0)] * len(index)
        for mono, coeff in a.terms.items():
            v[index[mono]] = coeff
        return tuple(v)

    def full_element(self, v: Sequence) -> Element:
        return Element(dict(zip(self.full_basis(), v)))

    def operator_matrix(self, op) -> Matrix:
        """Matrix of a linear map Element -> Element on the full basis."""
        basis = self.full_basis()
        columns = [self.full_vector(op(Element({m: 1}))) for m in basis]
        return Matrix.from_columns(columns, len(basis))

    def multiplication_matrix(self, a: Element) -> Matrix:
        return self.operator_matrix(lambda b: self.multiply(a, b))

    def full_d_matrix(self) -> Matrix:
        return self.operator_matrix(self.differential)

    ### Text ###

    def parse_element(self, text: str, line: Optional[int] = None) -> Element:
        return self.normalize(parse_polynomial(text, self.index, line, self.degrees))

    def format_monomial(self, mono: Sequence[int]) -> str:
        factors = []
        for e, name in zip(mono, self.names):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f'{name}^{e}')
        return '*'.join(factors) if factors else '1'

    def format(self, a: Element) -> str:
        if a.is_zero():
            return '0'
        ordered = sorted(a.terms.items(), key=lambda item: (self.monomial_degree(item[0]), tuple(-e for e in item[0])))
        out = ''
        for k, (mono, coeff) in enumerate(ordered):
            sign = '-' if coeff < 0 else '+'
            mag = abs(coeff)
            body = self.format_monomial(mono)
            if mag != 1:
                body = str(mag) if body == '1' else f'{mag}*{body}'
            if k == 0:
                out = ('-' if sign == '-' else '') + body
            else:
                out += f' {sign} {body}'
        return out


### Polynomial grammar ###

_TERM_SPLIT = re.compile(r'([+-])')
_RATIONAL = re.compile(r'^\d+(/\d+)?$')
_FACTOR = re.compile(r'^([A-Za-z_][A-Za-z0-9_]*)(\^(\d+))?$')


def parse_polynomial(text: str, index: Mapping[str, int], line: Optional[int] = None,
                     degrees: Optional[Sequence[int]] = None) -> Element:
    """Factors may come in any order; with degrees given, reordering odd factors carries the Koszul sign."""
    ngens = len(index)
    pieces = [p.strip() for p in _TERM_SPLIT.split(text)]
    if not text.strip():
        raise ParseError('empty polynomial', line)
    terms = {}
    sign = 1
    expect_term = True
    for piece in pieces:
        if piece in ('+', '-'):
            sign = sign * (-1 if piece == '-' else 1)
            expect_term = True
            continue
        if piece == '':
            continue
        if not expect_term:
            raise ParseError(f"missing operator before '{piece}'", line)
        coeff, mono = _parse_term(piece, index, ngens, line, degrees)
        terms[mono] = terms.get(mono, Fraction(0)) + sign * coeff
        sign = 1
        expect_term = False
    if expect_term:
        raise ParseError(f"dangling operator in '{text.strip()}'", line)
    return Element(terms)


def _parse_term(piece: str, index: Mapping[str, int], ngens: int, line: Optional[int],
               degrees: Optional[Sequence[int]] = None):
    factors = [f.strip() for f in piece.split('*')]
    coeff = Fraction(1)
    if factors and _RATIONAL.match(factors[0]):
        try:
            coeff = Fraction(factors.pop(0))
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in '{piece}'", line)
    mono = [0] * ngens
    odd_seen = []
    for factor in factors:
        match = _FACTOR.match(factor)
        if match is None:
            raise ParseError(f"cannot read factor '{factor}'", line)
        name = match.group(1)
        if name not in index:
            raise UnknownGeneratorError(f"unknown generator '{name}'", line)
        i = index[name]
        power = int(match.group(3) or 1)
        mono[i] += power
        if degrees is not None and degrees[i] % 2:
            if sum(1 for j in odd_seen if j > i) * power % 2:
                coeff = -coeff
            odd_seen.extend([i] * power)
    return coeff, tuple(mono)


### Constructions ###

def tensor_product(p1: Presentation, p2: Presentation) -> Presentation:
    taken = set(p1.names)
    renamed = []
    for g in p2.generators:
        name = g.name
        while name in taken:
            name = f'{name}_2'
        taken.add(name)
        renamed.append(GeneratorSpec(name=name, degree=g.degree, truncation=g.truncation))
    pad1 = (0,) * p2.ngens
    pad2 = (0,) * p1.ngens
    differentials = {}
    for name, dg in p1.differentials.items():
        differentials[name] = Element({m + pad1: c for m, c in dg.terms.items()})
    for g, new in zip(p2.generators, renamed):
        dg = p2.differentials.get(g.name)
        if dg is not None:
            differentials[new.name] = Element({pad2 + m: c for m, c in dg.terms.items()})
    name = '*'.join(n for n in (p1.name, p2.name) if n)
    return Presentation(p1.generators + tuple(renamed), differentials, name=name).validate()


def embed_left(a: Element, right: Presentation) -> Element:
    pad = (0,) * right.ngens
    return Element({m + pad: c for m, c in a.terms.items()})


def _gens(*specs) -> list:
    return [GeneratorSpec(name=n, degree=d, truncation=t) for n, d, t in specs]


def heisenberg() -> Presentation:
    p = Presentation(_gens(('x', 1, None), ('y', 1, None), ('z', 1, None)), name='heisenberg')
    p.differentials['z'] = p.parse_element('x*y')
    return p.validate()


def tower(n: int) -> Presentation:
    if n < 1:
        raise UnknownBuiltinError('tower needs n >= 1')
    specs = [('x', 1, None)] + [(f'e{i}', 1, None) for i in range(1, n + 1)]
    p = Presentation(_gens(*specs), name=f'tower{n}')
    for i in range(1, n):
        p.differentials[f'e{i}'] = p.parse_element(f'x*e{i + 1}')
    return p.validate()


def cp(n: int) -> Presentation:
    if n < 1:
        raise UnknownBuiltinError('cp needs n >= 1')
    return Presentation(_gens(('t', 2, n + 1)), name=f'cp{n}').validate()


def torus(n: int) -> Presentation:
    if n < 1:
        raise UnknownBuiltinError('torus needs n >= 1')
    return Presentation(_gens(*[(f'x{i}', 1, None) for i in range(1, n + 1)]), name=f'torus{n}').validate()


def sphere(n: int) -> Presentation:
    if n < 1:
        raise UnknownBuiltinError('sphere needs n >= 1')
    if n % 2:
        return Presentation(_gens(('e', n, None)), name=f'sphere{n}').validate()
    return Presentation(_gens(('e', n, 2)), name=f'sphere{n}').validate()


def s3_model() -> Presentation:
    p = Presentation(_gens(('a', 1, None), ('b', 2, 2)), name='s3-model')
    p.differentials['a'] = p.parse_element('b')
    return p.validate()


def trivial() -> Presentation:
    return Presentation([], name='').validate()


BUILTINS = {
    'heisenberg': heisenberg,
    'tower': tower,
    'cp': cp,
    'torus': torus,
    'sphere': sphere,
    's3-model': s3_model,
    'trivial': trivial,
}

_PARAMETERIZED = ('tower', 'cp', 'torus', 'sphere')
_SUFFIXED = re.compile(rf"^({'|'.join(_PARAMETERIZED)})(\d+)$")


def builtin(name: str, *parameters: int) -> Presentation:
    if name in BUILTINS:
        if name in _PARAMETERIZED and len(parameters) != 1:
            raise UnknownBuiltinError(f"'{name}' needs a parameter, e.g. {name}3")
        if name not in _PARAMETERIZED and parameters:
            raise UnknownBuiltinError(f"'{name}' takes no parameter")
        return BUILTINS[name](*parameters)
    match = _SUFFIXED.match(name)
    if match and not parameters:
        return BUILTINS[match.group(1)](int(match.group(2)))
    if '*' in name:
        return builtin_product(*name.split('*'))
    if '-' in name:
        factors = name[2:] if name.startswith('m-') else name
        return builtin_product(*factors.split('-'))
    raise UnknownBuiltinError(f"unknown built-in algebra '{name}'")


def builtin_product(*names: str) -> Presentation:
    if not names:
        return trivial()
    result = builtin(names[0])
    for name in names[1:]:
        result = tensor_product(result, builtin(name))
    return result


### Morphisms ###

class Morphism:
    """Algebra map determined by the images of the source generators."""

    def __init__(self, source: Presentation, target: Presentation, images: Mapping[str, Element]):
        self.source = source
        self.target = target
        self.images = {}
        for name in source.names:
            self.images[name] = target.normalize(images.get(name, Element.zero()))
        unknown = set(images) - set(source.names)
        if unknown:
            raise UnknownGeneratorError(f"images given for unknown generators {sorted(unknown)}")
        self._cache = {}

    def validate(self) -> 'Morphism':
        for g in self.source.generators:
            img = self.images[g.name]
            if not img.is_zero() and self.target.degrees_of(img) != {g.degree}:
                raise NotAMorphism(f"image of '{g.name}' is not of degree {g.degree}")
            if not g.is_odd and not self.target.power(img, g.truncation).is_zero():
                raise NotAMorphism(f"image of '{g.name}' does not satisfy {g.name}^{g.truncation} = 0")
            lhs = self.apply(self.source.d_generator(g.name))
            rhs = self.target.differential(img)
            if lhs != rhs:
                raise NotAMorphism(f"map does not commute with d on '{g.name}'")
        return self

    def apply_monomial(self, mono: tuple) -> Element:
        if mono not in self._cache:
            factors = []
            for e, name in zip(mono, self.source.names):
                factors.extend([self.images[name]] * e)
            self._cache[mono] = self.target.product(*factors)
        return self._cache[mono]

    def apply(self, a: Element) -> Element:
        result = Element.zero()
        for mono, coeff in a.terms.items():
            result = result + coeff * self.apply_monomial(mono)
        return result

    def matrix(self, degree: int) -> Matrix:
        columns = [self.target.to_vector(self.apply_monomial(m), degree) for m in self.source.basis(degree)]
        return Matrix.from_columns(columns, self.target.dimension(degree))


def morphism(source: Presentation, target: Presentation, images: Mapping[str, str]) -> Morphism:
    parsed = {name: target.parse_element(text) for name, text in images.items()}
    return Morphism(source, target, parsed).validate()


def describe(p: Presentation) -> dict:
    return {
        'generators': [g.model_dump() for g in p.generators],
        'differentials': {name: p.format(p.d_generator(name)) for name in p.names
                          if not p.d_generator(name).is_zero()},
        'dimension': p.total_dim,
    }


def dims_by_degree(p: Presentation) -> list:
    return [p.dimension(k) for k in range(p.top_degree + 1)]
