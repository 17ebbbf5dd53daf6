import logging
from unittest.mock import patch

import pytest

from core.errors import (
    AxiomViolation,
    ConfigError,
    DescriptionError,
    HomomorphismError,
    InvalidArgumentError,
    PreconditionError,
    ResourceLimitError,
    TheoremViolation,
    UndefinedPartialSum,
)
from core.utils import (
    ENV_OVERRIDES,
    PerformanceTimer,
    Settings,
    apply_overrides,
    canonical_json,
    get_settings,
    hash_data,
    load_settings,
    logger,
)

SETTINGS_INI = """\
[LIMITS]
MAX_CARRIER = {carrier}
MAX_IDEALS = 100

[REPORT]
DEFAULT_OUTPUT = {output}
TOOL_VERSION = 9.9.9

[LOGGING]
LEVEL = {level}
"""


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ENV_OVERRIDES:
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def settings_file(tmp_path):
    def write(carrier='50', output='json', level='info', text=None):
        path = tmp_path / 'settings.ini'
        path.write_text(text if text is not None else SETTINGS_INI.format(
            carrier=carrier, output=output, level=level))
        return path
    return write


# ----- Settings Tests -----
class TestSettings:
    def test_defaults_from_repository_file(self):
        assert load_settings() == Settings()

    def test_custom_file(self, settings_file):
        settings = load_settings(settings_file())
        assert settings.max_carrier == 50
        assert settings.default_output == 'json'
        assert settings.tool_version == '9.9.9'
        assert settings.log_level == 'INFO'
        assert settings.log_file == ''

    def test_environment_override(self, settings_file, monkeypatch):
        monkeypatch.setenv('MVLAB_MAX_CARRIER', '12')
        assert load_settings(settings_file()).max_carrier == 12

    @pytest.mark.parametrize('kwargs', [
        {'carrier': 'many'},
        {'carrier': '0'},
        {'output': 'xml'},
        {'level': 'LOUD'},
        {'text': '[LIMITS]\nMAX_CARRIER = 5\n'},
    ])
    def test_invalid_file(self, settings_file, kwargs):
        with pytest.raises(ConfigError):
            load_settings(settings_file(**kwargs))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_settings(tmp_path / 'absent.ini')

    def test_apply_overrides(self, restore_settings):
        apply_overrides(max_carrier=7, max_ideals=None)
        assert get_settings().max_carrier == 7
        assert get_settings().max_ideals == restore_settings.max_ideals


# ----- Utility Tests -----
class TestUtils:
    def test_canonical_json(self):
        assert canonical_json({'b': 1, 'a': [1, 2]}, indent=None) == '{"a":[1,2],"b":1}'
        assert canonical_json({'x': 'Ł'}, indent=None) == '{"x":"Ł"}'
        assert canonical_json({'a': 1}) == '{\n  "a": 1\n}'

    def test_hash_data(self):
        digest = hash_data('abc')
        assert digest == 'ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad'
        assert hash_data('abc', 'md5') != digest

    @patch('core.utils.time')
    def test_performance_timer(self, mock_time):
        mock_time.perf_counter.side_effect = [1.0, 3.5]
        with PerformanceTimer('spectrum') as timer:
            pass
        assert timer.elapsed() == 2.5
        assert mock_time.perf_counter.call_count == 2

    def test_logger_prefixes_caller(self, caplog):
        with caplog.at_level(logging.WARNING):
            logger('carrier too large', 'warning')
        record = caplog.records[-1]
        assert record.levelname == 'WARNING'
        assert record.getMessage() == '[test_logger_prefixes_caller] carrier too large'


# ----- Error Hierarchy Tests -----
class TestErrors:
    @pytest.mark.parametrize('error, code', [
        (DescriptionError('x'), 2),
        (InvalidArgumentError('x'), 2),
        (PreconditionError('x'), 2),
        (UndefinedPartialSum('x'), 2),
        (ResourceLimitError('x'), 3),
        (AxiomViolation('x'), 1),
        (HomomorphismError('x'), 1),
        (TheoremViolation('x'), 1),
    ])
    def test_exit_codes(self, error, code):
        assert error.exit_code == code

    def test_builtin_bases(self):
        assert isinstance(InvalidArgumentError('x'), ValueError)
        assert isinstance(UndefinedPartialSum('x'), ArithmeticError)
        assert isinstance(TheoremViolation('x'), AssertionError)

    def test_payload_defaults_to_empty(self):
        assert PreconditionError('x').payload == {}
        assert PreconditionError('x', {'witness': 'a'}).payload == {'witness': 'a'}
