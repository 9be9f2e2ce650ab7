"""
Unit tests for start:stop:step ranges
"""
import argparse

import pytest

from cli.ranges import RangeSpec, parse_range, range_arg
from core.errors import DomainError


class TestRangeSpec:
    """Tests for RangeSpec"""

    def test_inclusive_stop(self):
        """Test 0.1:2.0:0.1 has 20 values ending at 2.0"""
        values = parse_range("0.1:2.0:0.1").values()
        assert len(values) == 20
        assert values[0] == 0.1
        assert values[2] == 0.3
        assert values[-1] == 2.0

    def test_single_value(self):
        """Test a bare number is a one-point range"""
        assert parse_range("0.5").values() == (0.5,)

    def test_stop_between_steps(self):
        """Test the last value never passes stop"""
        assert parse_range("0:1:0.3").values() == (0.0, 0.3, 0.6, 0.9)

    @pytest.mark.parametrize("text", ["1:0:0.1", "0:1:0", "0:1:-0.1", "a", "0:1", "nan"])
    def test_invalid(self, text):
        """Test empty, non-positive step and malformed ranges"""
        with pytest.raises(DomainError):
            parse_range(text)

    def test_range_arg_usage_error(self):
        """Test the argparse wrapper converts to ArgumentTypeError"""
        with pytest.raises(argparse.ArgumentTypeError):
            range_arg("2:1:0.5")
        assert range_arg("1:2:0.5") == RangeSpec(1.0, 2.0, 0.5)
