"""
Unit tests for crash logger functionality
"""
import sys
from datetime import datetime

from utils.crash_logger import CrashLogger


def _raise_and_log(exc):
    try:
        raise exc
    except Exception:
        CrashLogger.log_exception(*sys.exc_info())


class TestCrashLogger:
    """Test crash logger functionality (log directory redirected by conftest)"""

    def test_log_directory_creation(self):
        """Test that log directory is created"""
        CrashLogger.setup()
        assert CrashLogger.LOG_DIR.exists()
        assert CrashLogger.LOG_DIR.is_dir()

    def test_log_exception(self):
        """Test logging an exception"""
        _raise_and_log(ValueError("omega must be positive"))

        assert CrashLogger.LOG_FILE.exists()
        content = CrashLogger.LOG_FILE.read_text(encoding='utf-8')

        assert "FATAL ERROR" in content
        assert "ValueError" in content
        assert "omega must be positive" in content
        assert "Stack Trace:" in content
        assert datetime.now().strftime("%Y-%m-%d") in content

    def test_multiple_log_entries(self):
        """Test logging multiple exceptions"""
        _raise_and_log(ValueError("First error"))
        _raise_and_log(TypeError("Second error"))

        content = CrashLogger.LOG_FILE.read_text(encoding='utf-8')
        assert content.count("FATAL ERROR") == 2
        assert "First error" in content
        assert "TypeError" in content
        assert "Second error" in content

    def test_context_is_recorded(self):
        """Test that the active command and grid point appear in the entry"""
        CrashLogger.set_context(command="sweep", omega=0.5, p=0.25)
        _raise_and_log(FloatingPointError("overflow"))

        content = CrashLogger.LOG_FILE.read_text(encoding='utf-8')
        assert "Context: command=sweep, omega=0.5, p=0.25" in content

    def test_clear_context(self):
        """Test that cleared context is not written"""
        CrashLogger.set_context(command="verify")
        CrashLogger.clear_context()
        _raise_and_log(RuntimeError("boom"))

        content = CrashLogger.LOG_FILE.read_text(encoding='utf-8')
        assert "Context:" not in content

    def test_get_log_path(self):
        """Test getting log path"""
        path = CrashLogger.get_log_path()
        assert isinstance(path, str)
        assert path.endswith("crash.log")

    def test_log_rotation(self, monkeypatch):
        """Test log rotation when file exceeds max size"""
        monkeypatch.setattr(CrashLogger, "MAX_LOG_SIZE", 100)
        CrashLogger.setup()
        CrashLogger.LOG_FILE.write_text("X" * 150, encoding='utf-8')

        _raise_and_log(ValueError("New error after rotation"))

        backup_file = CrashLogger.LOG_FILE.with_suffix('.log.old')
        assert backup_file.exists()
        assert backup_file.read_text(encoding='utf-8') == "X" * 150
        assert "New error after rotation" in CrashLogger.LOG_FILE.read_text(encoding='utf-8')

    def test_exception_handler_installation(self):
        """Test installing the exception handler"""
        original_excepthook = sys.excepthook
        try:
            CrashLogger.install_exception_handler()
            assert sys.excepthook == CrashLogger.log_exception
        finally:
            sys.excepthook = original_excepthook

    def test_nested_exception_stack_trace(self):
        """Test that nested calls appear in the stack trace"""
        def inner():
            raise KeyError("missing block")

        def outer():
            inner()

        try:
            outer()
        except Exception:
            CrashLogger.log_exception(*sys.exc_info())

        content = CrashLogger.LOG_FILE.read_text(encoding='utf-8')
        assert "inner" in content
        assert "outer" in content

    def test_unwritable_log_falls_back_to_stderr(self, monkeypatch, capsys):
        """Test that a failing write still reports the exception"""
        def fail(*args, **kwargs):
            raise OSError("read-only")

        monkeypatch.setattr("builtins.open", fail)
        _raise_and_log(ValueError("still visible"))

        captured = capsys.readouterr()
        assert "Failed to write crash log" in captured.err
