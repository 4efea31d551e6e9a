import hypothesis
import pytest

from churate import SystemConfig

hypothesis.settings.register_profile(
    "default", max_examples=30, deadline=None)
hypothesis.settings.load_profile("default")


@pytest.fixture
def fig7a_cfg():
    """Low-frequency reference link: 600 MHz, BW=0.2fc, P=4 W, d=1 km."""
    return SystemConfig.from_total_power(
        fc=600e6, bw=0.2 * 600e6, power=4.0, d=1000.0, a=0.025)
