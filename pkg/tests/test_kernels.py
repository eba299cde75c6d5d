import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gtbend import _kernels as K
from gtbend.convexity import family_from_truncation, torus_control
from gtbend.gtmodel import build_model, generate_truncation

from .conftest import seeds

pytestmark = pytest.mark.skipif(not K.HAS_NUMBA, reason="numba backend unavailable")


@pytest.fixture(scope="module")
def families():
    return [family_from_truncation(generate_truncation(build_model(8), 4, close_stars=True)), torus_control(2)]


def arrays(fam):
    return fam.Linv, fam.off, fam.hp, fam.nhp, fam.disk


def random_segments(fam, seed, n=64):
    rng = np.random.default_rng(seed)
    P0 = fam.sample_points(rng.integers(0, fam.n_cells, n), rng)
    P1 = fam.sample_points(rng.integers(0, fam.n_cells, n), rng)
    # some segments leave the union entirely
    P1[: n // 4] *= rng.uniform(1.0, 5.0, (n // 4, 1))
    return P0, P1


@given(seeds, st.sampled_from([0.0, 1e-9, -1e-9]), st.integers(0, 1))
def test_segment_intervals_parity(families, seed, slack, which):
    fam = families[which]
    P0, P1 = random_segments(fam, seed)
    a = K.segment_intervals(*arrays(fam), P0, P1, slack, backend="numba")
    b = K.segment_intervals(*arrays(fam), P0, P1, slack, backend="numpy")
    for x, y in zip(a, b):
        # empty intersections may differ in the sentinel, not in emptiness
        assert np.allclose(np.where(a[0] <= a[1], x, 0), np.where(b[0] <= b[1], y, 0), atol=1e-12)
    assert np.array_equal(a[0] <= a[1], b[0] <= b[1])


@given(seeds, st.integers(0, 1))
def test_coverage_gaps_parity(families, seed, which):
    fam = families[which]
    P0, P1 = random_segments(fam, seed)
    lo, hi = K.segment_intervals(*arrays(fam), P0, P1, 0.0, backend="numpy")
    mask = np.random.default_rng(seed).random(lo.shape) < 0.8
    a = K.coverage_gaps(lo, hi, mask, backend="numba")
    b = K.coverage_gaps(lo, hi, mask, backend="numpy")
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


@given(seeds, st.integers(0, 1))
def test_points_in_cells_parity(families, seed, which):
    fam = families[which]
    rng = np.random.default_rng(seed)
    X = np.vstack([fam.sample_points(rng.integers(0, fam.n_cells, 50), rng), rng.normal(scale=3.0, size=(50, 2))])
    a = K.points_in_cells(*arrays(fam), X, 0.0, backend="numba")
    b = K.points_in_cells(*arrays(fam), X, 0.0, backend="numpy")
    assert np.array_equal(a, b)


def test_coverage_gap_semantics():
    lo = np.array([[0.0, 0.5], [0.0, 0.3]])
    hi = np.array([[0.4, 1.0], [0.5, 1.0]])
    mask = np.ones((2, 2), dtype=bool)
    for backend in ("numba", "numpy"):
        start, end = K.coverage_gaps(lo, hi, mask, backend=backend)
        assert start.tolist() == [0.4, -1.0]
        assert end[0] == 0.5


def test_env_switch_selects_numpy():
    import os
    import subprocess
    import sys

    env = {**os.environ, "GTBEND_DISABLE_NUMBA": "1"}
    out = subprocess.run([sys.executable, "-c", "from gtbend._kernels import BACKEND; print(BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
