import click

from ..charclass import format_charpoly
from ..config import get_settings
from ..export import echo_report
from ..hankel import (c_symbols, format_symbolic, hankel_det, injectivity_table, reparam_invariance, resultant,
                      resultant_root_shift_invariance, specialization_check, to_charpoly, verify_hankel_identities)
from ..models import Report, digest


def _yes(flag: bool) -> str:
    return 'yes' if flag else 'no'


@click.command()
@click.option('--p', 'p', type=click.IntRange(min=1), required=True)
@click.option('--q', 'q', type=click.IntRange(min=1), required=True)
@click.option('--verify', is_flag=True, help='Check the resultant identity, vanishing and injectivity.')
@click.option('--reparam', is_flag=True, help='Check invariance under c(t) -> c(t/(1 - ut)).')
@click.option('--bound', type=click.IntRange(min=1), default=None,
              help='Largest allowed p*q (default: TWISTCOH_HANKEL_BOUND).')
def hankel(p, q, verify, reparam, bound):
    """Hankel determinant h_(p,q) of the c-series and the resultant of a(t), b(t)."""
    bound = get_settings().hankel_bound if bound is None else bound
    h = hankel_det(p, q)
    r = resultant(p, q, bound)
    report = Report(command='hankel', inputs_digest=digest('hankel', p, q, verify, reparam, bound))
    report.add_table('hankel', ['p', 'q', 'weight', 'h_(p,q)', 'resultant'],
                     [[p, q, p * q, format_charpoly(to_charpoly(h, c_symbols(p + q - 1)), 'c'),
                       format_symbolic(r)]])
    report.data = {'hankel': format_symbolic(h), 'resultant': format_symbolic(r)}
    if verify:
        identities = verify_hankel_identities(p, q, bound=bound)
        special = specialization_check(p, q, bound)
        rows = [['h_(p,q)(a/b) = resultant', _yes(identities.resultant_holds)]]
        rows += [[f'h_({pp},{qq})(a/b) = 0', _yes(ok)] for (pp, qq), ok in identities.vanishing.items()]
        rows.append(['resultant fixed by root shift', _yes(resultant_root_shift_invariance(p, q, bound))])
        rows.append([f'a_i = 0 (i < p), b = 1 gives a{p}^{q}', _yes(special.holds)])
        report.add_table('identities', ['identity', 'holds'], rows)
        table = injectivity_table(p, q, bound=bound)
        report.add_table('injectivity', ['weight', 'source_dim', 'rank', 'injective', 'kernel'],
                         [[row.weight, row.source_dim, row.rank, _yes(row.injective),
                           '; '.join(format_charpoly(f, 'c') for f in row.kernel) or '-'] for row in table])
        first = (p + 1) * (q + 1)
        report.notes.append(f'injective below weight {first}: '
                            f'{_yes(all(row.injective for row in table if row.expected_injective))}')
        if len(table) < first:
            report.notes.append(f'injectivity checked through weight {len(table)} only (TWISTCOH_MAX_WEIGHT)')
        report.data['identities'] = identities.holds and special.holds
        report.data['injective_ranks'] = {str(row.weight): row.rank for row in table}
    if reparam:
        moved = reparam_invariance(p, q, bound=bound)
        report.add_table('reparametrization', ['determinant', 'invariant', 'c2 moves by'],
                         [[f'h_({p},{q})', _yes(moved.invariant), format_symbolic(moved.witness)]])
        report.data['invariant'] = moved.invariant
    echo_report(report)
