"""
Unit tests for command-line logging setup
"""
import logging

import pytest

from utils.log_setup import LOG_FORMAT, configure_logging, level_for


@pytest.fixture
def root_logger():
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield root
    root.handlers[:] = handlers
    root.setLevel(level)


class TestLevelFor:
    """Tests for verbosity to level mapping"""

    @pytest.mark.parametrize("verbosity,expected", [(1, logging.INFO), (2, logging.DEBUG), (3, logging.DEBUG)])
    def test_verbose_flags(self, verbosity, expected):
        """Test -v and -vv override the configured level"""
        assert level_for(verbosity, "ERROR") == expected

    def test_configured_level(self):
        """Test the settings value applies without -v, case-insensitively"""
        assert level_for(0, "error") == logging.ERROR

    def test_unknown_level_falls_back(self):
        """Test an unknown name falls back to WARNING"""
        assert level_for(0, "chatty") == logging.WARNING


class TestConfigureLogging:
    """Tests for configure_logging"""

    def test_single_stderr_handler(self, root_logger):
        """Test repeated calls leave exactly one handler"""
        configure_logging(logging.INFO)
        configure_logging(logging.DEBUG)
        assert len(root_logger.handlers) == 1
        assert root_logger.level == logging.DEBUG
        assert root_logger.handlers[0].formatter._fmt == LOG_FORMAT
