"""Pytest configuration and fixtures."""

from pathlib import Path
import sys

import pytest

# Add src directory to Python path if not already there
# This ensures fbgravity can be imported even when pytest is called directly
project_root = Path(__file__).parent.parent.resolve()
src_path = project_root / "src"
if str(src_path) not in sys.path:
    sys.path.insert(0, str(src_path))

# Try to import pytest-timeout, if available
try:
    import pytest_timeout  # noqa: F401
except ImportError:
    # pytest-timeout not installed, timeout markers will be ignored
    # Tests will rely on subprocess timeouts instead
    pass

# Suites that sweep chart points or spawn the CLI
SLOW_AREAS = ("integration", "verification", "cli")


# Auto-mark tests based on directory structure
def pytest_collection_modifyitems(config, items):
    """Automatically mark tests based on their location."""
    for item in items:
        path = str(item.fspath)
        if "integration" in path:
            item.add_marker(pytest.mark.integration)
        elif "unit" in path:
            item.add_marker(pytest.mark.unit)

        if any(area in path for area in SLOW_AREAS) or item.get_closest_marker("slow"):
            item.add_marker(pytest.mark.slow)
        else:
            item.add_marker(pytest.mark.fast)

