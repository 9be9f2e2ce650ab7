import sys
import pytest
from pathlib import Path

# Add src directory to Python path for imports
PROJECT_ROOT = Path(__file__).parent.parent
SRC_DIR = PROJECT_ROOT / 'src'
if str(SRC_DIR) not in sys.path:
    sys.path.insert(0, str(SRC_DIR))

from core.discord import GridSpec
from core.fock_ledger import TruncationPolicy
from utils.crash_logger import CrashLogger
from utils.settings import Settings


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    """Point the settings file at a per-test directory and drop the shared cache."""
    config_dir = tmp_path / "config"
    monkeypatch.setenv("RINDLERBOX_CONFIG_DIR", str(config_dir))
    Settings._cached_settings = None
    Settings._cache_file_mtime = None
    Settings._cache_file = None
    yield config_dir
    Settings._cached_settings = None


@pytest.fixture(autouse=True)
def isolated_crash_log(tmp_path, monkeypatch):
    """Keep crash entries written during tests out of the user's data directory."""
    log_dir = tmp_path / "crash_logs"
    monkeypatch.setattr(CrashLogger, "LOG_DIR", log_dir)
    monkeypatch.setattr(CrashLogger, "LOG_FILE", log_dir / "crash.log")
    CrashLogger.clear_context()
    yield log_dir
    CrashLogger.clear_context()


@pytest.fixture
def coarse_grid():
    """Smaller measurement grid for tests whose minimum is isotropic or at an axis"""
    return GridSpec(theta_steps=21, phi_steps=21, refinement_rounds=2, shrink_factor=0.25)


@pytest.fixture
def small_policy():
    """Loose truncation that keeps Fock cutoffs short"""
    return TruncationPolicy(epsilon=1e-10, hard_cap=512)
