import click
import sympy as sp

from ..charclass import (check_d_surjective, check_tensor_action, delta_and_lift, format_charpoly, invariant_ring,
                         newton_convert, parse_charpoly, partition_count, poincare_series, psi_monomial_character,
                         tensor_action_power_sums, wang_model_report)
from ..config import get_settings
from ..errors import ParseError
from ..export import echo_report
from ..models import Report, digest

max_weight_option = click.option('--max-weight', type=click.IntRange(min=1), default=None,
                                 help='Weight cutoff (default: TWISTCOH_MAX_WEIGHT).')


def _max_weight(value) -> int:
    return get_settings().max_weight if value is None else value


def _sstr(expr) -> str:
    return sp.sstr(expr, order='lex').replace('**', '^')


@click.command()
@max_weight_option
def jring(max_weight):
    """Dimensions j_n of the invariant ring J = ker d, with a Poincare-series cross-check."""
    n = _max_weight(max_weight)
    ring = invariant_ring(n)
    series = poincare_series(n)
    surjectivity = check_d_surjective(n) if n >= 2 else []
    report = Report(command='jring', inputs_digest=digest('jring', n))
    report.add_table('invariant ring', ['weight', 'dim', 'series', 'partitions', 'basis'],
                     [[w.weight, w.dim, series[w.weight], partition_count(w.weight),
                       '; '.join(format_charpoly(f) for f in w.basis) or '-'] for w in ring])
    agree = [w.dim for w in ring] == series
    surjective = all(row.surjective for row in surjectivity)
    report.notes.append('dims agree with 1/((1-t^2)(1-t^3)...) + t' if agree
                        else 'dims DISAGREE with 1/((1-t^2)(1-t^3)...) + t')
    report.notes.append(f'd : A_n -> A_(n-1) surjective for 2 <= n <= {n}: {"yes" if surjective else "no"}')
    report.data = {
        'dims': [w.dim for w in ring],
        'series': series,
        'series_agree': agree,
        'surjective': surjective,
    }
    echo_report(report)


@click.command()
@click.option('--max-weight', type=click.IntRange(min=1), default=8, show_default=True)
def wang(max_weight):
    """Cohomology of the Wang model: J in even degrees, one class in degree 3."""
    result = wang_model_report(max_weight)
    report = Report(command='wang', inputs_digest=digest('wang', max_weight))
    degrees = sorted(set(result.even_dims) | set(result.odd_dims))
    dims = {**result.even_dims, **result.odd_dims}
    report.add_table('cohomology', ['degree', 'dim'], [[k, dims[k]] for k in degrees])
    report.add_table('annihilation', ['class', 'witness'],
                     [[f, '-' if g is None else format_charpoly(g)] for f, g in result.annihilation.items()])
    report.notes.append('w f is exact for every listed class' if result.annihilated
                        else 'some class is not annihilated by w')
    report.data = {
        'even': {str(k): v for k, v in result.even_dims.items()},
        'odd': {str(k): v for k, v in result.odd_dims.items()},
        'annihilated': result.annihilated,
    }
    echo_report(report)


@click.command()
@click.argument('expression')
@click.option('--max-weight', type=click.IntRange(min=1), default=12, show_default=True)
def lift(expression, max_weight):
    """exp(lambda delta) lift of an invariant class, lambda = 1/word-length."""
    f = parse_charpoly(expression)
    result = delta_and_lift(f, max_weight)
    report = Report(command='lift', inputs_digest=digest('lift', expression, max_weight))
    weights = sorted(result.series.weights())
    report.add_table('lift', ['weight', 'component'],
                     [[w, format_charpoly(result.series.component(w))] for w in weights])
    report.notes.append(f'lambda = {result.scale}')
    report.notes.append(f'(d - 1) of the lift vanishes through weight {max_weight - 1}: '
                        f'{"yes" if result.closed else "no"}')
    report.notes.append(f'[d, delta] is the word-length operator: {"yes" if result.commutator_is_word_length else "no"}')
    report.data = {
        'source': format_charpoly(result.source),
        'scale': str(result.scale),
        'series': format_charpoly(result.series),
        'closed': result.closed,
        'commutator_is_word_length': result.commutator_is_word_length,
    }
    echo_report(report)


@click.command()
@click.argument('exponents')
@max_weight_option
def psi(exponents, max_weight):
    """Character of psi^k1 ... psi^kr, exponents given as a comma list like 2,-1."""
    try:
        ks = [int(k) for k in exponents.split(',') if k.strip()]
    except ValueError:
        raise ParseError(f"cannot read exponents '{exponents}' (expected integers like 2,-1)")
    n = _max_weight(max_weight)
    result = psi_monomial_character(ks, n)
    report = Report(command='psi', inputs_digest=digest('psi', exponents, n))
    report.add_table('character', ['weight', 'component'],
                     [[w, format_charpoly(c)] for w, c in result.components().items() if not c.is_zero()])
    report.notes.append(f'exponents sum to 1: {"yes" if result.sum_is_one else "no"}')
    report.notes.append(f'at most one negative exponent: {"yes" if result.restricted else "no"}')
    report.notes.append(f'lowest component {format_charpoly(result.lowest)} '
                        f'{"lies" if result.lowest_in_invariant_ring else "does not lie"} in J')
    report.data = {
        'exponents': list(result.exponents),
        'lowest': format_charpoly(result.lowest),
        'lowest_matches': result.lowest_matches,
        'sum_is_one': result.sum_is_one,
        'restricted': result.restricted,
    }
    echo_report(report)


@click.command('tensor-action')
@click.option('--n', 'n', type=click.IntRange(min=1), default=6, show_default=True)
def tensor_action(n):
    """Power sums s_m under tensoring with a line bundle of first class u, m <= n."""
    report = Report(command='tensor-action', inputs_digest=digest('tensor-action', n))
    rows = []
    ok = True
    for m in range(1, n + 1):
        holds = check_tensor_action(m)
        ok = ok and holds
        rows.append([m, _sstr(tensor_action_power_sums(m)), _sstr(newton_convert('power', m)),
                     'yes' if holds else 'no'])
    report.add_table('tensor action', ['n', 's_n(u)', 's_n in c', 'identity'], rows)
    report.notes.append('all identities hold' if ok else 'some identity FAILS')
    report.data = {'n': n, 'holds': ok}
    echo_report(report)
