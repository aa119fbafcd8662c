import os

from pydantic import BaseModel, Field, ValidationError

from .errors import ConfigError

ENV_PREFIX = 'TWISTCOH_'


class Settings(BaseModel):
    max_dim: int = Field(default=10000, gt=0)
    max_weight: int = Field(default=12, ge=1, le=40)
    hankel_bound: int = Field(default=6, ge=1, le=12)

    model_config = {
        'json_schema_extra': {
            'example': {
                'max_dim': 10000,
                'max_weight': 12,
                'hankel_bound': 6,
            }
        }
    }


def load_settings(environ=None) -> Settings:
    environ = os.environ if environ is None else environ
    values = {}
    for name in Settings.model_fields:
        raw = environ.get(ENV_PREFIX + name.upper())
        if raw is not None and raw.strip() != '':
            values[name] = raw.strip()
    try:
        return Settings(**values)
    except ValidationError as e:
        bad = ', '.join(ENV_PREFIX + str(err['loc'][0]).upper() for err in e.errors())
        raise ConfigError(f'invalid environment setting: {bad}')


def get_settings() -> Settings:
    return load_settings()
