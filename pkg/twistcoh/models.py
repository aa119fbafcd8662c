import hashlib
from typing import Any

from pydantic import BaseModel, Field

SCHEMA_VERSION = 1


class Table(BaseModel):
    name: str = Field(min_length=1)
    columns: list[str] = Field(min_length=1)
    rows: list[list[str]] = Field(default_factory=list)

    model_config = {
        'json_schema_extra': {
            'example': {
                'name': 'betti',
                'columns': ['degree', 'dim', 'representatives'],
                'rows': [['0', '1', '1'], ['1', '2', 'x, y']],
            }
        }
    }


class Report(BaseModel):
    schema_version: int = SCHEMA_VERSION
    command: str = Field(min_length=1)
    inputs_digest: str
    tables: list[Table] = Field(default_factory=list)
    notes: list[str] = Field(default_factory=list)
    data: dict[str, Any] = Field(default_factory=dict)

    model_config = {
        'json_schema_extra': {
            'example': {
                'schema_version': 1,
                'command': 'massey',
                'inputs_digest': '3f1c...',
                'tables': [],
                'notes': ['reproduces the Heisenberg triple product {x, x, y} = [x z]'],
                'data': {'representative': 'x*z', 'indeterminacy_dim': 0, 'nonzero': True},
            }
        }
    }

    def add_table(self, name: str, columns: list, rows: list) -> 'Report':
        self.tables.append(Table(name=name, columns=[str(c) for c in columns],
                                 rows=[[str(cell) for cell in row] for row in rows]))
        return self


def digest(*parts) -> str:
    """sha256 over the command inputs; files contribute their text."""
    h = hashlib.sha256()
    for part in parts:
        h.update(str(part).encode('utf-8'))
        h.update(b'\0')
    return h.hexdigest()
