import csv
import io
import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from bframe.bridge import (
    compare_groups,
    doubling_coset_test,
    doubling_orbit,
    mult_subgroup,
    phi,
    phi_inv,
    phi_map,
    reindex_cyclic_to_product,
    rows_to_csv,
    rows_to_json,
    sdo_refinement,
)
from bframe.errors import DomainError
from bframe.gramchar import EtaFunction, SdoPartition, check_eta, enumerate_nu_etas
from bframe.groups import make_cyclic, make_zpq

PRIME_POWERS = [(3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2), (11, 2)]


@given(st.sampled_from(PRIME_POWERS), st.data())
def test_phi_round_trip(pq, data):
    p, q = pq
    g = data.draw(st.tuples(*[st.integers(0, p - 1)] * q))
    x = phi(g, p)
    assert 0 <= x < p**q
    assert phi_inv(x, p, q) == g
    assert phi_map(p, q)(g) == x
    assert phi_map(p, q).inv(x) == g


def test_phi_digits():
    assert phi((1, 0, 0), 3) == 1
    assert phi((0, 0, 1), 3) == 9
    assert phi((2, 1, 2), 3) == 2 + 3 + 18
    with pytest.raises(DomainError):
        phi((3, 0), 3)
    with pytest.raises(DomainError):
        phi_inv(9, 3, 2)


@pytest.mark.parametrize("p,q", [(3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2), (7, 3), (11, 2)])
def test_coset_test_matches_orbit_membership(p, q):
    n = p**q
    orbits = {y: oracles.doubling_orbit(y, n) for y in range(n)}
    for y in range(n):
        assert doubling_orbit(y, n) == frozenset(orbits[y])
        for x in range(n):
            assert doubling_coset_test(x, y, p, q) == (x in orbits[y])


def test_coset_examples():
    assert doubling_coset_test(9, 18, 3, 3)
    assert doubling_coset_test(1, 3, 5, 3)
    assert not doubling_coset_test(1, 3, 3, 3)


def test_wieferich_rejected():
    with pytest.raises(DomainError):
        doubling_coset_test(1, 2, 1093, 2)
    assert doubling_coset_test(1, 2, 1093, 1)


@pytest.mark.parametrize("p,q", PRIME_POWERS)
def test_phi_refines_orbits(p, q):
    pm = phi_map(p, q)
    zp, zc = pm.product, pm.cyclic
    prod = oracles.sdo_orbits(zp.order, zp.mul, zp.inv)
    cyc = oracles.sdo_orbits(zc.order, zc.mul, zc.inv)
    owner = {x: i for i, o in enumerate(cyc) for x in o}
    for o in prod:
        assert len({owner[int(pm.forward[g])] for g in o}) == 1
    ref = sdo_refinement(p, q)
    assert sorted(j for ids in ref.images.values() for j in ids) == list(range(len(ref.product)))


def test_refinement_shapes():
    # cyclic orbit with representative p^j gets orbits of
    # the valuation-j layer
    ref = sdo_refinement(3, 2)
    sizes = {ref.cyclic.orbits[i][0]: len(ids) for i, ids in ref.images.items()}
    assert sizes == {0: 1, 1: 3, 3: 1}
    ref = sdo_refinement(5, 3)
    sizes = {ref.cyclic.orbits[i][0]: len(ids) for i, ids in ref.images.items()}
    assert sizes == {0: 1, 1: 25, 5: 5, 25: 1}


@pytest.mark.parametrize("p,q,count", [(3, 2, 4), (3, 3, 8), (5, 3, 8), (7, 2, None), (3, 4, None), (5, 2, None)])
def test_reindexed_eta_are_valid(p, q, count):
    etas = enumerate_nu_etas(SdoPartition(make_cyclic(p**q)))
    if count is not None:
        assert len(etas) == count
    for eta in etas:
        moved = reindex_cyclic_to_product(eta)
        assert moved.group == make_zpq(p, q)
        assert check_eta(moved).valid and moved.weight == eta.weight


def test_reindex_rejects():
    with pytest.raises(DomainError):
        reindex_cyclic_to_product(EtaFunction.delta(make_zpq(3, 2)))
    with pytest.raises(DomainError):
        reindex_cyclic_to_product(EtaFunction.from_support(make_cyclic(9), (0, 1)))
    with pytest.raises(DomainError):
        reindex_cyclic_to_product(EtaFunction.delta(make_cyclic(15)))


def test_mult_subgroup():
    h = mult_subgroup(2, 9)
    assert h.order == 6 and h.coset_index == 1 and 5 in h
    assert mult_subgroup(2, 17).order == 8 and mult_subgroup(2, 17).coset_index == 2
    with pytest.raises(DomainError):
        mult_subgroup(3, 9)


@pytest.mark.parametrize("p,q", [(3, 2), (3, 3)])
def test_product_dominates_cyclic(p, q):
    rows = compare_groups(p, q)
    cyc = make_cyclic(p**q)
    cyc_classes = 4 if q == 2 else 8
    matched = [r for r in rows if r.J_cyclic is not None]
    assert len(matched) == cyc_classes
    for r in matched:
        assert r.cyclic_weight <= r.code_weight
        assert all(0 <= x < cyc.order for x in r.J_cyclic)


def test_comparison_serialization():
    rows = compare_groups(3, 2)
    assert len(rows) == 5
    data = json.loads(rows_to_json(rows))
    assert [d["gram_rank"] for d in data] == [r.gram_rank for r in rows]
    table = list(csv.DictReader(io.StringIO(rows_to_csv(rows))))
    assert list(table[0]) == ["gram_rank", "code_weight", "J_product", "J_cyclic", "cyclic_weight"]
    assert len(table) == 5


def test_large_comparison_needs_rows():
    with pytest.raises(DomainError):
        compare_groups(5, 3)
