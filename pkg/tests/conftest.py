import numpy as np
import pytest

from tmdg.model import to_conserved


def random_primitive(rng, shape=(), lo=0.5, hi=2.0):
    """Admissible primitive states with a diagonally dominant pressure tensor."""
    shape = tuple(np.atleast_1d(shape)) if shape != () else ()
    rho = rng.uniform(lo, hi, size=shape)
    vx, vy = rng.uniform(-1.0, 1.0, size=(2,) + shape)
    pxx, pyy = rng.uniform(lo, hi, size=(2,) + shape)
    pxy = rng.uniform(-0.5, 0.5, size=shape) * np.sqrt(pxx * pyy)
    return np.stack([rho, vx, vy, pxx, pxy, pyy], axis=-1)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def random_state(rng):
    def make(shape=(), **kw):
        return to_conserved(random_primitive(rng, shape, **kw))

    return make


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(lines):
        terminalreporter.write_line(line)
