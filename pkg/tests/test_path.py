import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fbga import Path, PathError, load_path, resample, synth_track, write_path
from fbga.path import random_track


def write(tmp_path, text):
    f = tmp_path / "p.csv"
    f.write_text(text)
    return f


def test_load_three_rows(tmp_path):
    p = load_path(write(tmp_path, "0,0\n10,0.01\n20,0"))
    assert p.n == 3
    np.testing.assert_array_equal(p.kappa, [0, 0.01, 0])


def test_header_and_comments_skipped(tmp_path):
    p = load_path(write(tmp_path, "# lap\ns,kappa\n\n0,0\n# mid\n5,0.1\n"))
    assert p.n == 2 and p.length == 5.0


def test_non_monotone_reports_row(tmp_path):
    with pytest.raises(PathError, match="s not strictly increasing at row 3"):
        load_path(write(tmp_path, "0,0\n10,0\n5,0\n"))


def test_nan_rejected(tmp_path):
    with pytest.raises(PathError, match="kappa not finite at row 2"):
        load_path(write(tmp_path, "0,0\n1,nan\n2,0\n"))


def test_too_short_and_bad_values(tmp_path):
    with pytest.raises(PathError):
        load_path(write(tmp_path, "0,0\n"))
    with pytest.raises(PathError, match="non-numeric"):
        load_path(write(tmp_path, "0,0\n1,abc\n"))
    with pytest.raises(PathError):
        Path(np.array([0.0, 1e-12]), np.zeros(2))


def test_track_scale_file(tmp_path):
    # 4.66 km sampled at 4660 points, the size of a full circuit at 1 m spacing
    p = synth_track([("straight", 1000), ("clothoid", 80), ("arc", 300, 60), ("clothoid", 80),
                     ("straight", 3200)], n=4660)
    f = tmp_path / "lap.csv"
    write_path(p, f)
    q = load_path(f)
    assert q.n == 4660
    assert q.seg_lengths.mean() == pytest.approx(1.0, abs=1e-3)
    assert q.length == pytest.approx(4660.0)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-0.2, 0.2, allow_nan=False), min_size=2, max_size=40),
       st.floats(0.01, 50, allow_nan=False))
def test_write_load_round_trip(kappa, step):
    import tempfile, os
    s = np.cumsum(np.full(len(kappa), step)) - step
    p = Path(s, np.array(kappa))
    with tempfile.TemporaryDirectory() as d:
        f = os.path.join(d, "p.csv")
        write_path(p, f)
        q = load_path(f)
    np.testing.assert_allclose(q.s, p.s, rtol=1e-12, atol=0)
    np.testing.assert_allclose(q.kappa, p.kappa, rtol=1e-12, atol=0)


def test_resample_identity_on_uniform_grid():
    p = synth_track([("straight", 20), ("clothoid", 30), ("arc", 40, 25)], n=91)
    q = resample(p, p.n)
    np.testing.assert_allclose(q.kappa, p.kappa, rtol=0, atol=1e-15)


def test_resample_linear_midpoint():
    p = Path(np.array([0.0, 100.0]), np.array([0.0, 0.02]))
    np.testing.assert_allclose(resample(p, 3).kappa, [0.0, 0.01, 0.02], atol=1e-15)


@given(st.integers(2, 3000), st.floats(0.1, 1e4, allow_nan=False), st.floats(-1e3, 1e3, allow_nan=False))
def test_resample_preserves_span(n, length, start):
    p = Path(np.array([start, start + length / 3, start + length]), np.zeros(3))
    q = resample(p, n)
    assert q.s[0] == p.s[0] and q.s[-1] == p.s[-1]
    assert q.n == n


def test_synth_straight():
    p = synth_track([("straight", 100.0)], step=1.0)
    assert p.n == 101 and np.all(p.kappa == 0)


def test_synth_arc():
    p = synth_track([("arc", 78.54, 50.0)], step=1.0)
    np.testing.assert_allclose(p.kappa, 0.02)


def test_synth_corner_continuous():
    p = synth_track([("straight", 200), ("clothoid", 50), ("arc", 60, 30), ("clothoid", 50),
                     ("straight", 200)], step=0.5)
    assert p.kappa.max() == pytest.approx(1 / 30)
    # clothoids ramp linearly, so jumps are bounded by slope * step
    assert np.max(np.abs(np.diff(p.kappa))) <= (1 / 30) / 50 * 0.5 + 1e-12


def test_synth_errors():
    with pytest.raises(PathError):
        synth_track([("straight", 0.0)])
    with pytest.raises(PathError):
        synth_track([])
    with pytest.raises(PathError):
        synth_track([("spiral", 3.0)])


def test_random_track_length_and_corners():
    rng = np.random.default_rng(2)
    pieces = random_track(rng, 5, 2500.0)
    assert sum(p[1] for p in pieces) == pytest.approx(2500.0)
    assert sum(p[0] == "arc" for p in pieces) == 5
