import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from config import DEFAULT_RANK_BUDGET, CorpusProfile, ReportFormat  # noqa: E402
from simplicial.corpus import standard_space  # noqa: E402


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture(scope="session")
def circle():
    return standard_space("circle")


@pytest.fixture(scope="session")
def torus():
    return standard_space("torus")


@pytest.fixture(scope="session")
def klein():
    return standard_space("klein")


@pytest.fixture(scope="session")
def sphere2():
    return standard_space("sphere(2)")


@pytest.fixture(scope="session")
def sphere3():
    return standard_space("sphere(3)")


@pytest.fixture
def settings():
    return {
        'RANK_BUDGET': DEFAULT_RANK_BUDGET,
        'DEFAULT_SEED': 7,
        'REPORT_FORMAT': ReportFormat.JSON,
        'CORPUS_PROFILE': CorpusProfile.QUICK,
        'LOG_LEVEL': 'WARNING',
        'LOG_FILE': None,
        'CORPUS_DIR': None,
        'REPORT_TIMING': False,
    }


@pytest.fixture
def quiet_env(monkeypatch):
    """Environment for main(): no log file, quick corpus"""
    monkeypatch.setenv("DBT_LOG_FILE", "")
    monkeypatch.setenv("DBT_LOG_LEVEL", "WARNING")
    monkeypatch.setenv("DBT_CORPUS_PROFILE", "quick")
    monkeypatch.delenv("DBT_CORPUS_DIR", raising=False)
    monkeypatch.delenv("DBT_REPORT_TIMING", raising=False)
