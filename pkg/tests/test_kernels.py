import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from bframe import kernels
from bframe.gf2 import BitMatrix

BACKENDS = kernels.available_backends()


def random_rows(seed, rows, cols):
    return np.random.default_rng(seed).integers(0, 2, size=(rows, cols), dtype=np.uint8)


@pytest.mark.parametrize("name", BACKENDS)
@given(st.integers(0, 2**32 - 1), st.integers(1, 30), st.integers(1, 150))
def test_rank_backends(name, seed, rows, cols):
    arr = random_rows(seed, rows, cols)
    m = BitMatrix.from_array(arr)
    assert kernels.get_backend(name).rank(np.array(m.words), cols) == oracles.xor_rank(oracles.rows_to_ints(arr))


@pytest.mark.parametrize("name", BACKENDS)
@given(st.integers(0, 2**32 - 1), st.integers(1, 10), st.integers(1, 70))
def test_min_weight_backends(name, seed, rows, cols):
    arr = random_rows(seed, rows, cols)
    basis = BitMatrix.from_array(arr).row_basis()
    if basis.rows == 0:
        with pytest.raises(ValueError):
            kernels.get_backend(name).min_weight_span(np.array(basis.words))
        return
    w, combo = kernels.get_backend(name).min_weight_span(np.array(basis.words))
    assert w == oracles.span_min_weight(oracles.rows_to_ints(basis.to_array()))
    vec = 0
    ints = oracles.rows_to_ints(basis.to_array())
    for i in range(basis.rows):
        if combo >> i & 1:
            vec ^= ints[i]
    assert vec and bin(vec).count("1") == w


def test_backends_agree_on_larger_case():
    arr = random_rows(7, 18, 200)
    basis = BitMatrix.from_array(arr).row_basis()
    results = {kernels.get_backend(n).min_weight_span(np.array(basis.words))[0] for n in BACKENDS}
    assert len(results) == 1


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")


def test_pure_python_selected_by_env():
    env = dict(os.environ, BFRAME_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import bframe; print(bframe.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def test_benchmark_runs(tmp_path):
    from pathlib import Path

    script = Path(__file__).parents[1] / "benchmarks" / "bench_kernels.py"
    out = tmp_path / "b.json"
    subprocess.run([sys.executable, str(script), "--repeat", "1", "--json", str(out)], check=True,
                   capture_output=True)
    assert out.exists()
