"""Shared fixtures for the graded Stillman toolkit tests."""

import pytest
from hypothesis import HealthCheck, settings as hypothesis_settings

from app.config import DATA_DIR, Settings
from app.models.monoid import FgMonoid
from app.models.ring import CoefficientField, MGPolyRing
from app.services.resolution_service import ResolutionService
from app.services.stillman_service import KnownBoundsTable, StillmanService


# Property suites are deterministic so the example counts are reproducible.
hypothesis_settings.register_profile(
    "stillman",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
hypothesis_settings.load_profile("stillman")


SAMPLES_DIR = DATA_DIR / "samples"


@pytest.fixture
def settings():
    """Settings with the shipped defaults, independent of the environment."""
    return Settings(_env_file=None, log_level="WARNING", debug=False)


@pytest.fixture
def qq():
    return CoefficientField.rationals()


@pytest.fixture
def gf():
    return CoefficientField(32003)


@pytest.fixture
def resolution_service(settings):
    return ResolutionService(settings)


@pytest.fixture
def stillman_service(settings, resolution_service):
    return StillmanService(
        settings,
        resolution=resolution_service,
        known_bounds=KnownBoundsTable.load(settings.known_bounds_path),
    )


@pytest.fixture
def samples_dir():
    return SAMPLES_DIR


@pytest.fixture
def hirzebruch_monoid():
    """Support of the Hirzebruch Cox ring: (1,0), (-2,1), (0,1)."""
    return FgMonoid.from_generators([(1, 0), (-2, 1), (0, 1)])


@pytest.fixture
def xyz_ring(qq):
    return MGPolyRing.standard(["x", "y", "z"], qq)


@pytest.fixture
def xy_ring(qq):
    return MGPolyRing.standard(["x", "y"], qq)
