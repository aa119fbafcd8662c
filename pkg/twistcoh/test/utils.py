import random

import pytest
from click.testing import CliRunner

from ..cdga import GeneratorSpec, Presentation, heisenberg, parse_polynomial
from ..cdgafile import load
from ..main import cli

runner = CliRunner()

SETTINGS_ENV = ('TWISTCOH_MAX_DIM', 'TWISTCOH_MAX_WEIGHT', 'TWISTCOH_HANKEL_BOUND')


@pytest.fixture(autouse=True)
def default_settings(monkeypatch):
    for name in SETTINGS_ENV:
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def heis():
    return heisenberg()


@pytest.fixture
def m_file():
    return load('m-heisenberg-cp2')


@pytest.fixture
def tower_file():
    return load('tower3-cp3')


def invoke(*args, **kwargs):
    return runner.invoke(cli, [str(a) for a in args], **kwargs)


def random_presentation(rng: random.Random, max_closed: int = 3, max_open: int = 2) -> Presentation:
    """Closed generators, plus odd generators whose d is a combination of products of closed ones."""
    specs = []
    closed = []
    for i in range(rng.randint(2, max_closed)):
        specs.append(GeneratorSpec(name=f'c{i + 1}', degree=1))
        closed.append(f'c{i + 1}')
    if rng.random() < 0.5:
        specs.append(GeneratorSpec(name='t', degree=2, truncation=rng.randint(2, 3)))
    quadratic = [f'{a}*{b}' for k, a in enumerate(closed) for b in closed[k + 1:]]
    if any(s.name == 't' for s in specs):
        quadratic.append('t')
    differentials = {}
    for j in range(rng.randint(1, max_open)):
        name = f'g{j + 1}'
        specs.append(GeneratorSpec(name=name, degree=1))
        terms = [f'{rng.randint(-3, 3)}*{mono}' for mono in quadratic]
        differentials[name] = ' + '.join(terms).replace('+ -', '- ')
    index = {s.name: i for i, s in enumerate(specs)}
    degrees = [s.degree for s in specs]
    values = {name: parse_polynomial(text, index, degrees=degrees) for name, text in differentials.items()}
    return Presentation(specs, values, name='random').validate()


def random_twist(rng: random.Random, p: Presentation):
    """Odd combination of products of closed generators, hence a closed odd element."""
    closed = [g for g in p.names if p.d_generator(g).is_zero()]
    candidates = []
    odd = [g for g in closed if g.startswith('c')]
    for k, a in enumerate(odd):
        for b in odd[k + 1:]:
            for c in odd[odd.index(b) + 1:]:
                candidates.append(f'{a}*{b}*{c}')
        if 't' in closed:
            candidates.append(f'{a}*t')
    candidates.extend(odd)
    eta = p.parse_element('0*c1')
    for text in candidates:
        eta = eta + rng.randint(-2, 2) * p.parse_element(text)
    return eta
