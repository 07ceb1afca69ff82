"""The compiled kernels and the pure-Python fallback agree."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ncpart import _kernels_py, kernels
from ncpart.generate import noncrossing_partitions
from ncpart.partitions import is_noncrossing_labels

compiled = pytest.importorskip("ncpart._kernels")


def test_selected_implementation():
    assert kernels.IMPLEMENTATION in ("cython", "python")


@given(st.lists(st.integers(0, 4), min_size=1, max_size=12))
@settings(max_examples=300, deadline=None)
def test_noncrossing_agrees(labels):
    arr = np.array(labels, dtype=np.int_)
    want = is_noncrossing_labels(labels)
    assert bool(compiled.noncrossing(arr)) == want
    assert bool(_kernels_py.noncrossing(arr)) == want


@pytest.mark.parametrize("m", [3, 5, 6])
def test_refinement_matrix_agrees(m):
    rows = np.array([p.labels() for p in noncrossing_partitions(m)], dtype=np.int_)
    a = compiled.refinement_matrix(rows)
    b = _kernels_py.refinement_matrix(rows)
    assert np.array_equal(a, b)
    assert all(a[i, i] for i in range(len(rows)))


@given(st.integers(0, 2**32 - 1), st.integers(1, 4))
@settings(max_examples=50, deadline=None)
def test_chain_count_agrees(seed, ell):
    rng = np.random.default_rng(seed)
    rows = np.array([p.labels() for p in noncrossing_partitions(5)], dtype=np.int_)
    leq = compiled.refinement_matrix(rows)
    masks = (rng.random((ell, len(rows))) < 0.6).astype(np.uint8)
    assert int(compiled.chain_count(leq, masks)) == _kernels_py.chain_count(leq, masks)


def test_chain_count_small_poset():
    # two-element chain 0 < 1: 2-multichains are 00, 01, 11
    leq = np.array([[1, 1], [0, 1]], dtype=np.uint8)
    assert kernels.chain_count(leq, np.ones((2, 2), dtype=np.uint8)) == 3
    assert kernels.chain_count(leq, np.zeros((0, 2), dtype=np.uint8)) == 1


def test_env_forces_fallback():
    import os
    import subprocess
    import sys

    env = dict(os.environ, NCPART_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from ncpart import kernels; print(kernels.IMPLEMENTATION)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
