# Utils package
from .crash_logger import CrashLogger
from .log_setup import configure_logging

__all__ = ['CrashLogger', 'configure_logging']
