import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from bframe.classify import classify_group, nu_from_mask
from bframe.codes import (
    CodeReport,
    code_weight,
    find_ambiguous_error,
    robustness,
    robustness_from_weight,
    simulate_bitflips,
    simulate_erasures,
)
from bframe.errors import CapacityError, DegenerateCodeError, UnsupportedError
from bframe.frames import analysis, frame_from_gramian
from bframe.gf2 import BitMatrix
from bframe.gramchar import EtaFunction, gram_from_eta, gram_from_nu
from bframe.groups import make_cyclic, make_zpq

seeds = st.integers(0, 2**32 - 1)


def random_matrix(seed, rows, cols, density=0.5):
    rng = np.random.default_rng(seed)
    return BitMatrix.from_array((rng.random((rows, cols)) < density).astype(np.uint8))


@given(seeds, st.integers(1, 9), st.integers(2, 22), st.floats(0.1, 0.9))
def test_strategies_match_brute_force(seed, rows, cols, density):
    m = random_matrix(seed, rows, cols, density)
    if m.rank() == 0:
        with pytest.raises(DegenerateCodeError):
            code_weight(m)
        return
    want = oracles.brute_code_weight(m.to_array())
    a = code_weight(m, strategy="enumerate")
    assert a.weight == want and a.witness.weight == want
    try:
        b = code_weight(m, strategy="dual", max_weight=cols)
    except UnsupportedError:
        assert m.rank() == cols
    else:
        assert b.weight == want and b.witness.weight == want
    assert code_weight(m).weight == want


@given(seeds, st.integers(1, 8), st.integers(2, 20))
def test_witness_is_codeword(seed, rows, cols):
    m = random_matrix(seed, rows, cols)
    if m.rank() == 0:
        return
    for strategy in ("enumerate", "dual"):
        try:
            res = code_weight(m, strategy=strategy, max_weight=cols)
        except UnsupportedError:
            continue
        assert m.vstack(BitMatrix.from_rows([res.witness])).rank() == m.rank()


@given(seeds, st.integers(2, 8), st.integers(3, 18))
def test_weight_is_permutation_invariant(seed, rows, cols):
    m = random_matrix(seed, rows, cols)
    if m.rank() == 0:
        return
    perm = np.random.default_rng(seed).permutation(cols)
    pm = BitMatrix.from_array(m.to_array()[:, perm])
    assert code_weight(pm).weight == code_weight(m).weight


def test_strategies_agree_on_z3cube_catalog():
    cat = classify_group(make_zpq(3, 3))
    for c in cat.classes:
        g = gram_from_nu(nu_from_mask(cat.partition, c.canonical_mask))
        if c.rank == 27:
            assert code_weight(g).weight == 1
            continue
        a = code_weight(g, strategy="enumerate")
        try:
            b = code_weight(g, strategy="dual")
        except UnsupportedError:
            assert a.weight > 8
            continue
        assert a.weight == b.weight


@pytest.mark.parametrize("group", [make_zpq(3, 2), make_cyclic(9), make_cyclic(15)], ids=str)
def test_gramian_and_analysis_codes_match(group):
    cat = classify_group(group)
    for c in cat.classes:
        g = gram_from_nu(nu_from_mask(cat.partition, c.canonical_mask))
        theta = analysis(frame_from_gramian(g, group))
        # the code of a frame is the column space of Theta
        assert code_weight(theta.T).weight == code_weight(g).weight


def test_full_space_and_errors():
    assert code_weight(BitMatrix.identity(5)).weight == 1
    with pytest.raises(DegenerateCodeError):
        code_weight(BitMatrix.zeros(3, 4))
    with pytest.raises(ValueError):
        code_weight(BitMatrix.identity(2), strategy="guess")
    rep = BitMatrix.from_array(np.ones((1, 30), dtype=np.uint8))
    with pytest.raises(UnsupportedError):
        code_weight(rep, strategy="dual", max_corank=10)
    with pytest.raises(UnsupportedError):
        code_weight(rep, max_rank=0, max_weight=4)
    big = random_matrix(1, 30, 40)
    with pytest.raises(UnsupportedError):
        code_weight(big, strategy="enumerate")


def test_robustness_report():
    g = gram_from_eta(EtaFunction.from_support(make_cyclic(9), (0, 3, 6)))
    rep = robustness(g)
    assert isinstance(rep, CodeReport)
    assert (rep.length, rep.dim, rep.weight, rep.erasure_max, rep.bitflip_max) == (9, 3, 3, 2, 1)
    assert rep.to_json()["weight"] == 3
    assert robustness_from_weight(5) == (4, 2)


Z9 = make_cyclic(9)
Z9_FRAME = frame_from_gramian(gram_from_eta(EtaFunction.from_support(Z9, (0, 3, 6))), Z9)


@pytest.mark.parametrize("m", [0, 1, 2, 3, 4])
def test_erasures_match_oracle(m):
    rows = analysis(Z9_FRAME).to_array().tolist()
    report = simulate_erasures(Z9_FRAME, m)
    fails = [set(p) for p in oracles.subsets(9, m) if not oracles.erasure_ok(rows, set(p))]
    assert report.failed == len(fails) and report.passed + report.failed == report.patterns
    assert (report.witness is None) == (not fails)
    if fails:
        assert set(report.witness) == fails[0]


def test_sampled_erasures():
    a = simulate_erasures(Z9_FRAME, 3, mode="sampled", trials=300, seed=4)
    b = simulate_erasures(Z9_FRAME, 3, mode="sampled", trials=300, seed=4)
    assert a == b and 0 < a.failed < 300
    with pytest.raises(ValueError):
        simulate_erasures(Z9_FRAME, 10)
    with pytest.raises(ValueError):
        simulate_erasures(Z9_FRAME, 1, mode="other")


def test_erasure_cap():
    fam = frame_from_gramian(BitMatrix.identity(60))
    with pytest.raises(CapacityError):
        simulate_erasures(fam, 20)


def test_bitflips():
    one = simulate_bitflips(Z9_FRAME, 1, trials=2000, seed=1)
    assert one.recovered == one.trials == 2000 and one.rate == 1.0
    two = simulate_bitflips(Z9_FRAME, 2, trials=2000, seed=1)
    assert two.recovered < two.trials
    assert simulate_bitflips(Z9_FRAME, 2, trials=500, seed=9) == simulate_bitflips(Z9_FRAME, 2, trials=500, seed=9)


def test_ambiguous_errors():
    assert find_ambiguous_error(Z9_FRAME, 1) is None
    amb = find_ambiguous_error(Z9_FRAME, 2)
    assert amb is not None and len(amb.error) == 2
    # the returned codeword is within distance 2 of the error pattern
    err = np.zeros(9, dtype=np.uint8)
    err[amb.error] = 1
    assert int((amb.codeword.bits() ^ err).sum()) <= 2 and amb.codeword.weight > 0


def test_decoding_cap():
    fam = frame_from_gramian(BitMatrix.identity(30))
    with pytest.raises(CapacityError):
        simulate_bitflips(fam, 1, trials=1)
