#!/usr/bin/env python3
"""
RindlerBox - Main Entry Point
"""
import sys
import os

# Add src directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from cli.app import main as run_cli
from utils.crash_logger import CrashLogger


def main():
    # Install crash logger to catch unhandled exceptions
    CrashLogger.install_exception_handler()
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
