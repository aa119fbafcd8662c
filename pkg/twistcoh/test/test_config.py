import pytest

from ..config import Settings, get_settings, load_settings
from ..errors import ConfigError
from .utils import *


def test_defaults():
    settings = load_settings({})
    assert settings == Settings(max_dim=10000, max_weight=12, hankel_bound=6)


def test_environment_override():
    settings = load_settings({'TWISTCOH_MAX_DIM': '64', 'TWISTCOH_HANKEL_BOUND': ' 4 '})
    assert settings.max_dim == 64
    assert settings.hankel_bound == 4
    assert settings.max_weight == 12


def test_invalid_setting():
    with pytest.raises(ConfigError) as excinfo:
        load_settings({'TWISTCOH_MAX_DIM': '0'})
    assert excinfo.value.detail == 'invalid environment setting: TWISTCOH_MAX_DIM'
    assert excinfo.value.exit_code == 2


def test_get_settings_reads_process_environment(monkeypatch):
    monkeypatch.setenv('TWISTCOH_MAX_WEIGHT', '9')
    assert get_settings().max_weight == 9
