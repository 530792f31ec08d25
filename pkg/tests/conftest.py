import numpy as np
import pytest

from fbga import AnalyticEnvelope, BoxEnvelope, SplineGridEnvelope, load_envelope, sample_file

# motorcycle-like: non-convex (exponent < 1), drag, capped traction and braking
MOTO = AnalyticEnvelope(v_max=90, ay_max=11, ax_max=7, ax_min=-11, exponent=0.8, ay_gain=0.0015,
                        ax_max_gain=-0.0006, ax_max_cap=6.0, ax_min_cap=-10.0)
# car-like: elliptic, downforce grows lateral grip with speed
CAR = AnalyticEnvelope(v_max=90, ay_max=10, ax_max=8, ax_min=-12, exponent=2.0, ay_gain=0.004,
                       ax_min_gain=-0.002, ax_max_gain=-0.0006)
BOX = BoxEnvelope(ax_min=-8, ax_max=5, ay_min=-10, ay_max=10, v_max=90)
GRID = SplineGridEnvelope.from_envelope(CAR, np.linspace(0, 90, 10), np.linspace(-1, 1, 21))

ENVELOPES = {"box": BOX, "moto": MOTO, "car": CAR, "grid": GRID}


@pytest.fixture(params=list(ENVELOPES))
def env(request):
    return ENVELOPES[request.param]


@pytest.fixture
def shipped():
    return {name: load_envelope(sample_file(f"{name}.json")) for name in ("box", "moto", "car_grid")}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import REPORT
    except ImportError:
        return
    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in REPORT:
            terminalreporter.write_line(line)
