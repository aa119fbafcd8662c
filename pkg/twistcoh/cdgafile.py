"""Line-oriented description files for algebras.

    # comment
    generator x degree=1
    generator t degree=2 truncation=3
    d z = x*y
    twist = x*t
"""
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from .cdga import BUILTINS, Element, GeneratorSpec, Presentation, builtin, parse_polynomial
from .errors import ParseError, TruncationError, UnknownBuiltinError, UnknownGeneratorError

log = logging.getLogger(__name__)

DATA_DIR = Path(__file__).parent / 'data'
SUFFIX = '.cdga'

_GENERATOR = re.compile(r'^generator\s+(\S+)((?:\s+\S+)*)$')
_DIFFERENTIAL = re.compile(r'^d\s+(\S+)\s*=\s*(.*)$')
_TWIST = re.compile(r'^twist\s*=\s*(.*)$')
_OPTION = re.compile(r'^(degree|truncation)=(-?\d+)$')


@dataclass
class CdgaFile:
    presentation: Presentation
    twist: Optional[Element] = None
    name: str = ''
    text: Optional[str] = None
    path: Optional[Path] = None


def _strip(raw: str) -> str:
    return raw.split('#', 1)[0].strip()


def _generator(match, line: int) -> GeneratorSpec:
    name = match.group(1)
    options = {}
    for token in match.group(2).split():
        option = _OPTION.match(token)
        if option is None:
            raise ParseError(f"cannot read '{token}' (expected degree=<int> or truncation=<int>)", line)
        if option.group(1) in options:
            raise ParseError(f"'{option.group(1)}' given twice", line)
        options[option.group(1)] = int(option.group(2))
    if 'degree' not in options:
        raise ParseError(f"generator '{name}' needs degree=<int>", line)
    try:
        spec = GeneratorSpec(name=name, **options)
    except ValidationError as e:
        fields = ', '.join(str(err['loc'][0]) for err in e.errors())
        raise ParseError(f"invalid generator '{name}': {fields}", line)
    if spec.is_odd and spec.truncation is not None:
        raise TruncationError(f"odd generator '{name}' cannot carry a truncation", line)
    if not spec.is_odd and spec.truncation is None:
        raise TruncationError(f"even generator '{name}' needs truncation=<int>", line)
    return spec


def parse_file(text: str, name: str = '') -> CdgaFile:
    generators = []
    generator_lines = {}
    differentials = []
    twist = None
    for line, raw in enumerate(text.splitlines(), start=1):
        body = _strip(raw)
        if not body:
            continue
        match = _GENERATOR.match(body)
        if match:
            spec = _generator(match, line)
            if spec.name in generator_lines:
                raise ParseError(f"generator '{spec.name}' declared twice", line)
            generators.append(spec)
            generator_lines[spec.name] = line
            continue
        match = _DIFFERENTIAL.match(body)
        if match:
            differentials.append((match.group(1), match.group(2), line))
            continue
        match = _TWIST.match(body)
        if match:
            if twist is not None:
                raise ParseError('twist given twice', line)
            twist = (match.group(1), line)
            continue
        raise ParseError(f"cannot read '{body}'", line)

    index = {g.name: i for i, g in enumerate(generators)}
    degrees = [g.degree for g in generators]
    values = {}
    differential_lines = {}
    for gen, poly, line in differentials:
        if gen not in index:
            raise UnknownGeneratorError(f"d assigned to unknown generator '{gen}'", line)
        if gen in values:
            raise ParseError(f"d {gen} given twice", line)
        values[gen] = parse_polynomial(poly, index, line, degrees)
        differential_lines[gen] = line
    presentation = Presentation(generators, values, name=name)
    presentation.validate(generator_lines=generator_lines, differential_lines=differential_lines)
    eta = None
    if twist is not None:
        eta = presentation.parse_element(twist[0], twist[1])
    log.debug('parsed %r with twist %s', presentation, None if eta is None else presentation.format(eta))
    return CdgaFile(presentation, eta, name, text)


def emit(cdga: CdgaFile) -> str:
    """Normal form: generators in declaration order, then differentials, then the twist."""
    p = cdga.presentation
    lines = []
    for g in p.generators:
        entry = f'generator {g.name} degree={g.degree}'
        if g.truncation is not None:
            entry += f' truncation={g.truncation}'
        lines.append(entry)
    for name in p.names:
        dg = p.d_generator(name)
        if not dg.is_zero():
            lines.append(f'd {name} = {p.format(dg)}')
    if cdga.twist is not None and not cdga.twist.is_zero():
        lines.append(f'twist = {p.format(cdga.twist)}')
    return '\n'.join(lines) + '\n'


### Built-in example files ###

def example_names() -> list:
    return sorted(path.stem for path in DATA_DIR.glob('*' + SUFFIX))


def example_text(name: str) -> str:
    path = DATA_DIR / f'{name}{SUFFIX}'
    if not path.is_file():
        raise UnknownBuiltinError(f"unknown example '{name}' (choose from {', '.join(example_names())})")
    return path.read_text(encoding='utf-8')


def load(source: str) -> CdgaFile:
    """A path if one exists, else a shipped example file, else a built-in algebra name."""
    path = Path(source)
    if path.is_file():
        data = path.read_bytes()
        try:
            text = data.decode('utf-8')
        except UnicodeDecodeError as e:
            raise ParseError(f'{path} is not valid UTF-8', data[:e.start].count(b'\n') + 1)
        loaded = parse_file(text, name=path.stem)
        loaded.path = path
        return loaded
    if source in example_names():
        return parse_file(example_text(source), name=source)
    try:
        presentation = builtin(source)
    except UnknownBuiltinError:
        if source in BUILTINS:
            raise
        raise UnknownBuiltinError(f"'{source}' is neither a file, an example nor a built-in algebra")
    return CdgaFile(presentation, None, source)
