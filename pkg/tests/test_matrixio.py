"""Text matrix round-trips."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from landscape_init import matrixio


def test_roundtrip_exact(tmp_path):
    rng = np.random.default_rng(0)
    m = rng.standard_normal((7, 3)) * 10.0 ** rng.integers(-8, 8, size=(7, 3))
    path = str(tmp_path / "m.txt")
    matrixio.write_matrix(path, m)
    np.testing.assert_array_equal(matrixio.read_matrix(path), m)


@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 2 ** 31 - 1))
@settings(max_examples=25, deadline=None)
def test_roundtrip_random_shapes(rows, cols, seed):
    m = np.random.default_rng(seed).standard_normal((rows, cols))
    import tempfile, os
    fd, path = tempfile.mkstemp()
    os.close(fd)
    try:
        matrixio.write_matrix(path, m)
        back = matrixio.read_matrix(path)
    finally:
        os.unlink(path)
    assert back.shape == (rows, cols)
    np.testing.assert_array_equal(back, m)


def test_header_mismatch_rejected(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("2 3\n1 2 3\n4 5\n")
    with pytest.raises(ValueError):
        matrixio.read_matrix(str(path))


def test_non_2d_rejected(tmp_path):
    with pytest.raises(ValueError):
        matrixio.write_matrix(str(tmp_path / "v.txt"), np.arange(4.0))
