"""
Integration tests for the verification ledger
"""
import json
import math

import pytest

from core.acceptance import CheckResult, check_ids, random_x_states, representation_gaps, run_checks
from core.discord import GridSpec, xstate_discord
from core.fock_ledger import TruncationPolicy
from core.state_factory import bipartite_werner, tripartite_werner

EXPECTED_IDS = {
    "negativity_flatness", "pi_tangle_flatness", "pairwise_negativity_zero",
    "werner_negativity_curve", "ppt_threshold",
    "discord_curve", "discord_omega_independence", "discord_endpoint_0", "discord_endpoint_1",
    "xstate_closed_form_vs_oracle",
    "global_discord_curve", "global_discord_minimizer", "global_discord_half",
    "geometric_2norm_curve", "geometric_2norm_maximum", "geometric_1norm_curve",
    "unruh_pt_spectrum", "unruh_negativity", "qr_independence_discord",
    "representation_oracle_bipartite", "representation_oracle_tripartite",
}


class TestLedger:
    """Tests for the ledger structure"""

    def test_every_check_registered(self):
        """Test the registry names every published claim once"""
        ids = check_ids()
        assert set(ids) == EXPECTED_IDS
        assert len(ids) == len(set(ids))

    def test_json_shape(self):
        """Test ledger records and NaN handling"""
        record = CheckResult("x", 1.0, math.nan, 1e-6, False).to_json()
        assert record == {"id": "x", "expected": 1.0, "observed": None, "tolerance": 1e-6, "pass": False}
        json.dumps(record)

    def test_random_x_states_are_seeded(self):
        """Test the random X-state family is reproducible and not Bell-diagonal"""
        assert random_x_states(5, seed=3) == random_x_states(5, seed=3)
        states = random_x_states(20)
        for x in states:
            assert x.rho11 + x.rho22 + x.rho33 + x.rho44 == pytest.approx(1.0, abs=1e-12)
            assert x.rho14 <= math.sqrt(x.rho11 * x.rho44)
            assert x.rho23 <= math.sqrt(x.rho22 * x.rho33)
        assert any(abs(x.rho11 - x.rho44) > 0.05 for x in states)

    def test_random_x_states_match_closed_form(self):
        """Test the closed form agrees with brute force on general X-states"""
        for x in random_x_states(5, seed=11):
            report = xstate_discord(x, crosscheck=GridSpec())
            assert abs(report.closed_form_gap) < 1e-4


class TestRepresentationOracle:
    """Tests comparing blocked and dense representations"""

    @pytest.mark.parametrize("omega,p", [(0.2, 0.3), (1.0, 0.8)])
    def test_bipartite(self, omega, p):
        """Test spectra, negativities and entropies agree"""
        policy = TruncationPolicy(epsilon=1e-12, hard_cap=15, strict=False)
        gaps = representation_gaps(bipartite_werner(omega, p, policy))
        assert max(gaps.values()) < 1e-9

    def test_tripartite(self):
        """Test the two-mode tripartite expansion"""
        policy = TruncationPolicy(epsilon=1e-12, hard_cap=6, strict=False)
        gaps = representation_gaps(tripartite_werner(0.4, 0.7, 0.8, policy))
        assert max(gaps.values()) < 1e-9


@pytest.mark.slow
class TestRunChecks:
    """Tests running the full ledger"""

    def test_all_checks_pass(self):
        """Test every acceptance check passes with the default numerics"""
        results = run_checks(GridSpec(), TruncationPolicy())
        failed = [r.to_json() for r in results if not r.passed]
        assert failed == []
        assert {r.id for r in results} == EXPECTED_IDS
