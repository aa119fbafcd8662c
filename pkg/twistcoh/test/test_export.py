import json

import pytest
from pydantic import ValidationError

from ..errors import UnknownFormatError
from ..export import export, render_csv, render_json, render_table
from ..models import SCHEMA_VERSION, Report, digest
from .utils import *


def _report():
    report = Report(command='demo', inputs_digest=digest('demo'))
    report.add_table('first', ['degree', 'dim'], [[0, 1], [1, 2]])
    report.add_table('second', ['name', 'value'], [['long name', 'x, y']])
    report.notes.append('two tables')
    return report


def test_add_table_stringifies_cells():
    report = _report()
    assert report.tables[0].rows == [['0', '1'], ['1', '2']]


def test_table_rejects_empty_columns():
    with pytest.raises(ValidationError):
        Report(command='demo', inputs_digest='').add_table('empty', [], [])


def test_digest_is_stable():
    assert digest('a', 1) == digest('a', '1')
    assert digest('a', 'b') != digest('ab')
    assert len(digest('a')) == 64


def test_render_table():
    assert render_table(_report()) == (
        'first\n'
        'degree  dim\n'
        '------  ---\n'
        '0       1\n'
        '1       2\n'
        '\n'
        'second\n'
        'name       value\n'
        '---------  -----\n'
        'long name  x, y\n'
        '\n'
        'note: two tables\n'
    )


def test_render_csv_skips_notes():
    assert render_csv(_report()) == 'degree,dim\n0,1\n1,2\n\nname,value\nlong name,"x, y"\n'


def test_render_json():
    data = json.loads(render_json(_report()))
    assert data['schema_version'] == SCHEMA_VERSION
    assert data['command'] == 'demo'
    assert [t['name'] for t in data['tables']] == ['first', 'second']
    assert data['notes'] == ['two tables']


def test_export_dispatch():
    report = _report()
    assert export(report, 'csv') == render_csv(report)
    assert export(report, 'table') == render_table(report)


def test_unknown_format():
    with pytest.raises(UnknownFormatError) as excinfo:
        export(_report(), 'xml')
    assert excinfo.value.detail == "unknown format 'xml' (choose from table, csv, json)"
