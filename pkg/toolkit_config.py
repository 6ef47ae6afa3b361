#!/usr/bin/env python3
"""
Toolkit Configuration System
Enumeration caps, geometry tolerances and worker counts, configurable from the environment
"""

from typing import Dict, Any, Optional
import logging
import os

import psutil

logger = logging.getLogger(__name__)

DEFAULT_ENUM_CAP = 24


def _resolve_workers(raw: str) -> int:
    """Turn a TW_WORKERS value into a positive worker count ('auto' = physical cores)."""
    if raw.strip().lower() == "auto":
        cores = psutil.cpu_count(logical=False) or psutil.cpu_count() or 1
        return max(1, cores)
    try:
        return max(1, int(raw))
    except ValueError:
        logger.warning(f"Ignoring invalid TW_WORKERS value {raw!r}, using 1")
        return 1


class ToolkitConfig:
    """Configuration management for the tangent-words toolkit"""

    @staticmethod
    def get_config_from_env() -> Dict[str, Any]:
        """Get toolkit configuration from environment variables"""
        return {
            "enum_cap": int(os.getenv("TW_ENUM_CAP", str(DEFAULT_ENUM_CAP))),
            "workers": _resolve_workers(os.getenv("TW_WORKERS", "1")),
            "log_level": os.getenv("TW_LOG_LEVEL", "WARNING").upper(),
            "geometry": {
                "bisection_tol": float(os.getenv("TW_BISECTION_TOL", "1e-12")),
                "corner_tol": float(os.getenv("TW_CORNER_TOL", "1e-9")),
                "corner_retries": int(os.getenv("TW_CORNER_RETRIES", "100")),
                "scan_seed": float(os.getenv("TW_SCAN_SEED", "0.5")),
            },
        }

    @staticmethod
    def create_config(**kwargs) -> Dict[str, Any]:
        """Create toolkit configuration programmatically"""
        geometry = kwargs.get("geometry", {})
        return {
            "enum_cap": kwargs.get("enum_cap", DEFAULT_ENUM_CAP),
            "workers": kwargs.get("workers", 1),
            "log_level": kwargs.get("log_level", "WARNING"),
            "geometry": {
                "bisection_tol": geometry.get("bisection_tol", 1e-12),
                "corner_tol": geometry.get("corner_tol", 1e-9),
                "corner_retries": geometry.get("corner_retries", 100),
                "scan_seed": geometry.get("scan_seed", 0.5),
            },
        }


# Pre-defined profiles for common runs
TOOLKIT_PROFILES = {
    "default": ToolkitConfig.create_config(),

    # smoke runs in CI
    "quick": ToolkitConfig.create_config(enum_cap=14),

    "deep": ToolkitConfig.create_config(
        enum_cap=30,
        workers=_resolve_workers("auto"),
    ),
}


def get_toolkit_config(config_name: Optional[str] = None) -> Dict[str, Any]:
    """Get toolkit configuration by profile name or from environment"""

    if config_name and config_name in TOOLKIT_PROFILES:
        return TOOLKIT_PROFILES[config_name]

    if config_name:
        logger.warning(f"Unknown profile {config_name!r}, falling back to environment")

    return ToolkitConfig.get_config_from_env()


def enumeration_cap(cap: Optional[int] = None) -> int:
    """The effective enumeration cap: explicit value first, then TW_ENUM_CAP"""
    return cap if cap is not None else get_toolkit_config()["enum_cap"]


def geometry_setting(key: str, value: Optional[float] = None):
    """Look up a geometry tolerance unless the caller supplied one"""
    return value if value is not None else get_toolkit_config()["geometry"][key]


if __name__ == "__main__":
    print("🔧 Toolkit Configuration")
    print("=" * 40)

    for name, config in TOOLKIT_PROFILES.items():
        print(f"  • {name}: cap={config['enum_cap']} workers={config['workers']}")

    print("\nEnvironment configuration:")
    print(f"  {get_toolkit_config()}")
