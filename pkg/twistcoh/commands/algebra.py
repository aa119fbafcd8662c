import logging

import click

from ..cdgafile import CdgaFile, example_names, example_text, load
from ..cdga import Element
from ..cohomology import compute_cohomology
from ..errors import PreconditionFailure
from ..export import echo_report
from ..models import Report, digest
from ..twisted import (Obstructed, dr_vs_massey_check, massey_eta_iterated, massey_triple, spectral_sequence,
                       twisted_cohomology)

log = logging.getLogger(__name__)

source_argument = click.argument('source')
twist_option = click.option('--twist', 'twist_text', default=None,
                            help='Twist polynomial; overrides the twist line of the file.')


def _inputs(loaded: CdgaFile, *extra):
    return digest(loaded.text if loaded.text is not None else loaded.name, *extra)


def _twist(loaded: CdgaFile, twist_text, notes: list) -> Element:
    p = loaded.presentation
    eta = p.parse_element(twist_text) if twist_text else loaded.twist
    if eta is None or eta.is_zero():
        log.info('no twist for %s, using 0', loaded.name)
        notes.append('no twist given, using 0 (D = d)')
        return Element.zero()
    degrees = sorted(p.degrees_of(eta))
    if degrees != [3]:
        log.warning('twist %s has degree %s', p.format(eta), degrees)
        click.echo(f"warning: twist {p.format(eta)} has degree {', '.join(map(str, degrees))}, "
                   'not 3', err=True)
    return eta


def _join(p, elements) -> str:
    return ', '.join(p.format(e) for e in elements) or '-'


### Untwisted ###

@click.command()
@source_argument
def cohomology(source):
    """Betti numbers and representative cocycles."""
    loaded = load(source)
    p = loaded.presentation
    ring = compute_cohomology(p)
    report = Report(command='cohomology', inputs_digest=_inputs(loaded))
    report.add_table('betti', ['degree', 'dim', 'representatives'],
                     [[k, ring.dimension(k), _join(p, ring.representatives(k))] for k in range(p.top_degree + 1)])
    report.notes.append(f'total dimension {ring.total_dim}')
    report.data = {
        'betti': ring.betti,
        'representatives': {str(k): [p.format(e) for e in ring.representatives(k)]
                            for k in range(p.top_degree + 1)},
    }
    echo_report(report)


@click.command()
@source_argument
@click.argument('elements', nargs=-1, required=True)
def massey(source, elements):
    """Triple Massey product {x, y, z} of three cocycles."""
    if len(elements) != 3:
        raise click.UsageError(f'massey takes three cocycles, got {len(elements)}')
    loaded = load(source)
    p = loaded.presentation
    ring = compute_cohomology(p)
    x, y, z = (p.parse_element(e) for e in elements)
    coset = massey_triple(ring, x, y, z)
    representative = p.format(ring.element(coset.degree, coset.representative))
    report = Report(command='massey', inputs_digest=_inputs(loaded, *elements))
    report.add_table('massey', ['product', 'degree', 'representative', 'indeterminacy_dim', 'nonzero'],
                     [['{' + ', '.join(elements) + '}', coset.degree, representative, coset.indeterminacy_dim,
                       'yes' if coset.nonzero else 'no']])
    report.notes.append(f'defining-system cocycle {p.format(coset.element)}')
    report.data = {
        'degree': coset.degree,
        'representative': representative,
        'cocycle': p.format(coset.element),
        'indeterminacy_dim': coset.indeterminacy_dim,
        'nonzero': coset.nonzero,
    }
    echo_report(report)


### Twisted ###

@click.command()
@source_argument
@twist_option
def twisted(source, twist_text):
    """Mod-2 graded cohomology of D = d - eta."""
    loaded = load(source)
    p = loaded.presentation
    notes = []
    eta = _twist(loaded, twist_text, notes)
    result = twisted_cohomology(p, eta)
    report = Report(command='twisted', inputs_digest=_inputs(loaded, p.format(eta)), notes=notes)
    report.add_table('twisted cohomology', ['parity', 'dim', 'representatives'], [
        ['even', result.even_dim, _join(p, result.even_representatives)],
        ['odd', result.odd_dim, _join(p, result.odd_representatives)],
    ])
    report.notes.append(f'twist {p.format(eta)}; total dimension {result.total}')
    report.data = {'twist': p.format(eta), 'even': result.even_dim, 'odd': result.odd_dim, 'total': result.total}
    echo_report(report)


@click.command()
@source_argument
@twist_option
@click.option('--max-page', type=click.IntRange(min=1), default=None,
              help='Last page to compute (default: top degree + 1).')
def ss(source, twist_text, max_page):
    """Page totals of the spectral sequence of the degree filtration."""
    loaded = load(source)
    p = loaded.presentation
    notes = []
    eta = _twist(loaded, twist_text, notes)
    result = spectral_sequence(p, eta, max_page)
    report = Report(command='ss', inputs_digest=_inputs(loaded, p.format(eta), max_page), notes=notes)
    report.add_table('pages', ['page', 'total', 'stable'],
                     [[page.r, page.total, 'yes' if page.total == result.limit_total else 'no']
                      for page in result.pages])
    report.notes.append(f'twisted cohomology total dimension {result.limit_total}')
    if result.stable_from is None:
        report.notes.append('not yet stable by the last computed page')
    else:
        report.notes.append(f'stable from page {result.stable_from}')
    report.data = {
        'twist': p.format(eta),
        'totals': {str(r): total for r, total in result.totals.items()},
        'dims': {str(page.r): {str(k): dim for k, dim in page.dims.items()} for page in result.pages},
        'limit_total': result.limit_total,
        'stable_from': result.stable_from,
    }
    echo_report(report)


@click.command('massey-eta')
@source_argument
@click.argument('element')
@twist_option
@click.option('--order', type=click.IntRange(min=1), required=True, help='Number of copies of the twist.')
@click.option('--differential', is_flag=True, help='Also compare with d_r on the matching page.')
def massey_eta(source, element, twist_text, order, differential):
    """Iterated Massey product {eta, ..., eta, x}."""
    loaded = load(source)
    p = loaded.presentation
    notes = []
    eta = _twist(loaded, twist_text, notes)
    x = p.parse_element(element)
    ring = compute_cohomology(p)
    coset = massey_eta_iterated(p, eta, x, order, ring)
    if isinstance(coset, Obstructed):
        raise PreconditionFailure(f'{{eta^{order}, {element}}} is not defined: {coset.detail}')
    representative = p.format(ring.element(coset.degree, coset.representative))
    report = Report(command='massey-eta', inputs_digest=_inputs(loaded, p.format(eta), element, order),
                    notes=notes)
    report.add_table('massey', ['copies', 'degree', 'representative', 'indeterminacy_dim', 'nonzero'],
                     [[order, coset.degree, representative, coset.indeterminacy_dim,
                       'yes' if coset.nonzero else 'no']])
    report.data = {
        'twist': p.format(eta),
        'degree': coset.degree,
        'representative': representative,
        'cocycle': p.format(coset.element),
        'indeterminacy_dim': coset.indeterminacy_dim,
        'nonzero': coset.nonzero,
    }
    if differential:
        r = order * (p.degree_of(eta) - 1) + 1
        check = dr_vs_massey_check(p, eta, x, r)
        report.add_table('differential', ['page', 'degree', 'nonzero', 'equals minus massey'],
                         [[r, check.degree, 'yes' if check.nonzero else 'no', 'yes' if check.agree else 'no']])
        report.data['differential'] = {'page': r, 'nonzero': check.nonzero, 'agree': check.agree}
    echo_report(report)


### Examples ###

@click.command()
@click.argument('name', required=False)
def example(name):
    """Print a shipped example file, or list them."""
    if name is None:
        click.echo('\n'.join(example_names()))
        return
    click.echo(example_text(name), nl=False)
