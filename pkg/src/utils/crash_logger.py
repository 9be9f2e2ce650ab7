"""
Crash logging for RindlerBox
Unhandled exceptions are appended with a timestamp, the active command and
parameter point, and the stack trace to a log file.
"""
import sys
import traceback
from datetime import datetime
from pathlib import Path


class CrashLogger:
    """Logger for fatal crashes and exceptions"""

    LOG_DIR = Path.home() / ".local" / "share" / "rindlerbox"
    LOG_FILE = LOG_DIR / "crash.log"
    MAX_LOG_SIZE = 5 * 1024 * 1024  # 5 MB

    # command name and parameter point being computed, e.g. omega/p/qr2
    _context = {}

    @classmethod
    def setup(cls):
        """Create the log directory, falling back to the working directory"""
        try:
            cls.LOG_DIR.mkdir(parents=True, exist_ok=True)
        except Exception:
            cls.LOG_DIR = Path.cwd()
            cls.LOG_FILE = cls.LOG_DIR / "crash.log"

    @classmethod
    def set_context(cls, **params):
        """Record what is being computed so a crash entry names it"""
        cls._context.update(params)

    @classmethod
    def clear_context(cls):
        cls._context = {}

    @classmethod
    def format_entry(cls, exc_type, exc_value, exc_traceback) -> str:
        timestamp = datetime.now().strftime("%Y-%m-%d %H:%M:%S")
        separator = "=" * 80

        lines = [
            "",
            separator,
            f"FATAL ERROR - {timestamp}",
            separator,
            f"Exception Type: {exc_type.__name__}",
            f"Exception Message: {exc_value}",
        ]
        if cls._context:
            context = ", ".join(f"{key}={value}" for key, value in sorted(cls._context.items()))
            lines.append(f"Context: {context}")
        lines += ["", "Stack Trace:"]
        entry = "\n".join(lines) + "\n"
        entry += "".join(traceback.format_exception(exc_type, exc_value, exc_traceback))
        return entry + f"{separator}\n"

    @classmethod
    def log_exception(cls, exc_type, exc_value, exc_traceback):
        """
        Append an exception with stack trace and context to the crash log.

        Args:
            exc_type: Exception type
            exc_value: Exception instance
            exc_traceback: Exception traceback
        """
        try:
            cls.setup()
            cls._rotate_log_if_needed()
            entry = cls.format_entry(exc_type, exc_value, exc_traceback)

            with open(cls.LOG_FILE, 'a', encoding='utf-8') as f:
                f.write(entry)

            print(f"\nFATAL ERROR logged to: {cls.LOG_FILE}", file=sys.stderr)
            print(entry, file=sys.stderr)

        except Exception as e:
            print(f"Failed to write crash log: {e}", file=sys.stderr)
            traceback.print_exception(exc_type, exc_value, exc_traceback)

    @classmethod
    def _rotate_log_if_needed(cls):
        """Move the log aside to crash.log.old once it exceeds MAX_LOG_SIZE"""
        try:
            if cls.LOG_FILE.exists() and cls.LOG_FILE.stat().st_size > cls.MAX_LOG_SIZE:
                backup_file = cls.LOG_FILE.with_suffix('.log.old')
                if backup_file.exists():
                    backup_file.unlink()
                cls.LOG_FILE.rename(backup_file)
        except Exception:
            pass

    @classmethod
    def install_exception_handler(cls):
        sys.excepthook = cls.log_exception

    @classmethod
    def get_log_path(cls) -> str:
        cls.setup()
        return str(cls.LOG_FILE)
