import csv
import io
from pathlib import Path

import click
from jinja2 import Environment, FileSystemLoader

from .errors import UnknownFormatError
from .models import Report

FORMATS = ('table', 'csv', 'json')

TEMPLATE_DIR = Path(__file__).parent / 'templates'


def _aligned(cells, widths) -> str:
    return '  '.join(str(c).ljust(w) for c, w in zip(cells, widths)).rstrip()


def _rule(widths) -> str:
    return '  '.join('-' * w for w in widths)


templates = Environment(loader=FileSystemLoader(TEMPLATE_DIR), trim_blocks=True, lstrip_blocks=True,
                        keep_trailing_newline=True, autoescape=False)
templates.filters['aligned'] = _aligned
templates.filters['rule'] = _rule


def render_table(report: Report) -> str:
    tables = []
    for table in report.tables:
        widths = [len(c) for c in table.columns]
        for row in table.rows:
            widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
        tables.append({'name': table.name, 'columns': table.columns, 'rows': table.rows, 'widths': widths})
    return templates.get_template('report.txt.j2').render(tables=tables, notes=report.notes)


def render_csv(report: Report) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator='\n')
    for k, table in enumerate(report.tables):
        if k:
            out.write('\n')
        writer.writerow(table.columns)
        writer.writerows(table.rows)
    return out.getvalue()


def render_json(report: Report) -> str:
    return report.model_dump_json(indent=2) + '\n'


def export(report: Report, fmt: str) -> str:
    if fmt == 'table':
        return render_table(report)
    if fmt == 'csv':
        return render_csv(report)
    if fmt == 'json':
        return render_json(report)
    raise UnknownFormatError(f"unknown format '{fmt}' (choose from {', '.join(FORMATS)})")


def echo_report(report: Report):
    ctx = click.get_current_context()
    root = ctx.find_root().obj or {}
    click.echo(export(report, root.get('format', 'table')), nl=False)
