import pytest

from bfokit.config import load_config
from bfokit.fixtures import bundled_config_path


@pytest.fixture(scope="session")
def analysis_config():
    return load_config(bundled_config_path())


@pytest.fixture(scope="session")
def ephemeris(analysis_config):
    return analysis_config.load_ephemeris()


@pytest.fixture(scope="session")
def corrections(analysis_config):
    return analysis_config.load_corrections()


@pytest.fixture(scope="session")
def log_records(analysis_config):
    return analysis_config.load_log()


@pytest.fixture(scope="session")
def logon_sequences(analysis_config):
    return analysis_config.load_logon_sequences()
