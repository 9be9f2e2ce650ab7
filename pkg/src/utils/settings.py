"""
Settings management for RindlerBox
"""
import json
import os
from pathlib import Path

from core.discord import GridSpec
from core.fock_ledger import TruncationPolicy

CONFIG_DIR_ENV = "RINDLERBOX_CONFIG_DIR"

DEFAULT_SETTINGS = {
    "truncation_epsilon": 1e-12,
    "truncation_hard_cap": 512,
    "grid_theta_steps": 61,
    "grid_phi_steps": 61,
    "grid_refinement_rounds": 3,
    "grid_shrink_factor": 0.25,
    "dense_dim_cap": 4096,  # largest dense expansion allowed
    "sweep_workers": 4,
    "log_level": "WARNING",
}


class Settings:
    # Class-level cache shared between instances
    _cached_settings = None
    _cache_file_mtime = None
    _cache_file = None

    def __init__(self):
        override = os.environ.get(CONFIG_DIR_ENV)
        self.config_dir = Path(override) if override else Path.home() / ".config" / "rindlerbox"
        self.config_file = self.config_dir / "settings.json"
        self.settings = self.load_settings()

    def load_settings(self):
        """Load settings from the config file, merged over the defaults"""
        settings = dict(DEFAULT_SETTINGS)

        if not self.config_file.exists():
            return settings

        try:
            current_mtime = self.config_file.stat().st_mtime

            if (Settings._cached_settings is not None and
                    Settings._cache_file == self.config_file and
                    Settings._cache_file_mtime == current_mtime):
                return Settings._cached_settings.copy()

            with open(self.config_file, 'r') as f:
                loaded = json.load(f)
            if not isinstance(loaded, dict):
                return settings
            settings.update(loaded)

            Settings._cached_settings = settings.copy()
            Settings._cache_file_mtime = current_mtime
            Settings._cache_file = self.config_file
            return settings
        except (json.JSONDecodeError, IOError, OSError):
            return settings

    def save_settings(self):
        """Save current settings to the config file"""
        try:
            self.config_dir.mkdir(parents=True, exist_ok=True)
            with open(self.config_file, 'w') as f:
                json.dump(self.settings, f, indent=2)

            Settings._cached_settings = None
            Settings._cache_file_mtime = None
        except (IOError, OSError):
            pass  # unwritable config is not fatal

    def get(self, key, default=None):
        return self.settings.get(key, default)

    def set(self, key, value):
        # Reload first so concurrent edits to other keys survive
        self.settings = self.load_settings()
        self.settings[key] = value
        self.save_settings()

    def truncation_policy(self, epsilon=None) -> TruncationPolicy:
        """Fock truncation policy; epsilon overrides the stored value"""
        return TruncationPolicy(
            epsilon=float(self.get("truncation_epsilon") if epsilon is None else epsilon),
            hard_cap=int(self.get("truncation_hard_cap")),
        )

    def grid_spec(self, theta_steps=None, phi_steps=None, refinement_rounds=None) -> GridSpec:
        """Measurement grid; explicit arguments override stored values"""
        def pick(override, key):
            return self.get(key) if override is None else override

        return GridSpec(
            theta_steps=int(pick(theta_steps, "grid_theta_steps")),
            phi_steps=int(pick(phi_steps, "grid_phi_steps")),
            refinement_rounds=int(pick(refinement_rounds, "grid_refinement_rounds")),
            shrink_factor=float(self.get("grid_shrink_factor")),
        )
