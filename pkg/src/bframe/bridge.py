"""From cyclic groups ``Z_{p^q}`` to elementary abelian groups ``Z_p^q``.

``phi(g) = sum_i p^(i-1) g_i`` (``g_1`` is the units digit) is a bijection
``Z_p^q -> Z_{p^q}`` that carries symmetric doubling orbits of the product
group into those of the cyclic group. Pulling a cyclic coefficient function
back along ``phi`` therefore gives a product coefficient function with a
permutation-equivalent Gramian.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .classify import (
    ClassCatalog,
    action_for,
    canonical_subset,
    classify_closure,
    nu_from_mask,
)
from .codes import code_weight
from .errors import DomainError
from .gramchar import EtaFunction, NuFunction, SdoPartition, check_eta, gram_from_nu
from .groups import CyclicGroup, ZpqGroup, make_cyclic, make_zpq


def _check_prime_power(p: int, q: int) -> None:
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise DomainError(f"{p} is not prime")
    if q < 1:
        raise DomainError(f"exponent must be positive, got {q}")


class PhiMap:
    """``phi`` realized on element indices of ``ZpqGroup(p, q)`` and ``CyclicGroup(p^q)``."""

    def __init__(self, p: int, q: int):
        _check_prime_power(p, q)
        self.p, self.q = p, q
        self.product = make_zpq(p, q)
        self.cyclic = make_cyclic(p**q)
        powers = p ** np.arange(q, dtype=np.int64)
        self.forward = (self.product.digits.astype(np.int64) * powers).sum(axis=1)
        self.inverse = np.empty_like(self.forward)
        self.inverse[self.forward] = np.arange(self.forward.size)

    def __call__(self, g: Sequence[int]) -> int:
        return int(self.forward[self.product.index(g)])

    def inv(self, x: int) -> tuple[int, ...]:
        if not 0 <= x < self.p**self.q:
            raise DomainError(f"{x} is not a residue mod {self.p ** self.q}")
        return self.product.to_tuple(int(self.inverse[x]))


@lru_cache(maxsize=None)
def phi_map(p: int, q: int) -> PhiMap:
    return PhiMap(p, q)


def phi(g: Sequence[int], p: int) -> int:
    """``sum p^(i-1) g_i`` for digits ``g_i`` in ``[0, p)``."""
    if any(not 0 <= x < p for x in g):
        raise DomainError(f"digits of {tuple(g)} must lie in [0, {p})")
    return sum(x * p**i for i, x in enumerate(g))


def phi_inv(x: int, p: int, q: int) -> tuple[int, ...]:
    if not 0 <= x < p**q:
        raise DomainError(f"{x} is not a residue mod {p ** q}")
    out = []
    for _ in range(q):
        x, d = divmod(x, p)
        out.append(d)
    return tuple(out)


# multiplicative subgroups ------------------------------------------------------


@dataclass(frozen=True)
class MultSubgroup:
    modulus: int
    generator: int
    elements: tuple[int, ...]  # in order of powers, starting at 1

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def coset_index(self) -> int:
        """``[Z_n^x : <k>]``."""
        return _totient(self.modulus) // self.order

    def __contains__(self, x: int) -> bool:
        return x % self.modulus in self.elements

    def coset(self, y: int) -> frozenset[int]:
        return frozenset(y * e % self.modulus for e in self.elements)


def _totient(n: int) -> int:
    result, m, d = n, n, 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


def mult_subgroup(k: int, n: int) -> MultSubgroup:
    if n < 1:
        raise DomainError("modulus must be positive")
    if np.gcd(k, n) != 1:
        raise DomainError(f"{k} is not a unit mod {n}")
    elems = [1 % n]
    x = k % n
    while x != elems[0]:
        elems.append(x)
        x = x * k % n
    return MultSubgroup(n, k % n, tuple(elems))


def _valuation(x: int, p: int, q: int) -> int:
    """``j`` with ``x = p^j x'`` and ``p`` not dividing ``x'``; ``q`` for ``x = 0``."""
    x %= p**q
    if x == 0:
        return q
    j = 0
    while x % p == 0:
        x //= p
        j += 1
    return j


def doubling_coset_test(x: int, y: int, p: int, q: int) -> bool:
    """Decide ``x in y<2>`` in ``Z_{p^q}`` from valuations and a residue mod ``p``.

    Writing ``x = p^j x'`` and ``y = p^i y'`` with ``x', y'`` units, the answer
    is yes iff ``i = j`` and ``x' mod p`` lies in ``y' <2>_p``. This leans on
    ``|<2>_{p^r}| = p^(r-1) |<2>_p|``, which fails only for base-2 Wieferich
    primes; those are rejected.
    """
    _check_prime_power(p, q)
    if p == 2:
        raise DomainError("2 is not a unit mod 2^q")
    if q > 1 and mult_subgroup(2, p * p).order != p * mult_subgroup(2, p).order:
        raise DomainError(f"{p} is a base-2 Wieferich prime; the residue criterion does not apply")
    n = p**q
    x, y = x % n, y % n
    jx, jy = _valuation(x, p, q), _valuation(y, p, q)
    if jx != jy:
        return False
    if jx == q:
        return True
    xr, yr = (x // p**jx) % p, (y // p**jy) % p
    return xr in mult_subgroup(2, p).coset(yr)


def doubling_orbit(y: int, n: int) -> frozenset[int]:
    """``y<2>`` in ``Z_n`` by direct powering, for odd ``n``."""
    return frozenset(y * e % n for e in mult_subgroup(2, n).elements)


# transfer along phi ------------------------------------------------------------


def _split_prime_power(n: int) -> tuple[int, int]:
    p = next(d for d in range(2, n + 1) if n % d == 0)
    q, m = 0, n
    while m % p == 0:
        m //= p
        q += 1
    if m != 1:
        raise DomainError(f"{n} is not a prime power")
    return p, q


def reindex_cyclic_to_product(eta: EtaFunction) -> EtaFunction:
    """``eta'(g) = eta(phi(g))``, a valid coefficient function over ``Z_p^q``."""
    if not isinstance(eta.group, CyclicGroup):
        raise DomainError("reindexing needs a coefficient function over a cyclic group")
    if not check_eta(eta).valid:
        raise DomainError("input coefficient function is not valid")
    p, q = _split_prime_power(eta.group.order)
    pm = phi_map(p, q)
    bits = eta.bits[pm.forward]
    return EtaFunction.from_bits(pm.product, bits)


def reindex_permutation(p: int, q: int) -> np.ndarray:
    """Permutation ``P`` with ``G' = P G P*`` between reindexed Gramians."""
    return phi_map(p, q).forward


@dataclass(frozen=True)
class Refinement:
    cyclic: SdoPartition
    product: SdoPartition
    images: dict[int, tuple[int, ...]]  # cyclic orbit id -> product orbit ids


def sdo_refinement(p: int, q: int) -> Refinement:
    """Which product SDOs ``phi`` sends into each cyclic SDO.

    Raises ``ArithmeticError`` if some product orbit straddles two cyclic
    orbits or the images fail to tile a cyclic orbit.
    """
    pm = phi_map(p, q)
    cyc = SdoPartition(pm.cyclic)
    prod = SdoPartition(pm.product)
    images: dict[int, list[int]] = {i: [] for i in range(len(cyc))}
    for j, orbit in enumerate(prod.orbits):
        targets = {cyc.orbit_id(int(pm.forward[g])) for g in orbit}
        if len(targets) != 1:
            raise ArithmeticError(f"product orbit {j} maps into several cyclic orbits")
        images[targets.pop()].append(j)
    for i, ids in images.items():
        covered = sorted(int(pm.forward[g]) for j in ids for g in prod.orbits[j])
        if covered != sorted(cyc.orbits[i]):
            raise ArithmeticError(f"images do not tile cyclic orbit {i}")
    return Refinement(cyc, prod, {i: tuple(v) for i, v in images.items()})


# comparison tables --------------------------------------------------------------


@dataclass
class ComparisonRow:
    gram_rank: int
    code_weight: int
    J_product: list[str]
    J_cyclic: list[int] | None
    cyclic_weight: int | None = None


def _digits(group: ZpqGroup, g: int) -> str:
    return "".join(map(str, group.to_tuple(g)))


def _product_nu(part: SdoPartition, elements: Sequence[str]) -> NuFunction:
    idx = [part.group.index(tuple(int(c) for c in e)) for e in elements]
    return NuFunction.from_elements(part, idx)


def compare_groups(p: int, q: int, reference_rows=None) -> list[ComparisonRow]:
    """Product classes alongside the cyclic classes matched to them.

    With few enough product orbits every product class is listed and each
    cyclic class is matched through ``reindex`` followed by
    ``canonical_subset``. Otherwise ``reference_rows`` of
    ``(rank, weight, J_product, cyclic_weight, J_cyclic)`` are re-derived:
    every column is recomputed and a ``DomainError`` is raised on mismatch.
    """
    pm = phi_map(p, q)
    ppart, paction = action_for(pm.product)
    cpart, caction = action_for(pm.cyclic)
    if reference_rows is not None or ppart.nontrivial > 26:
        if reference_rows is None:
            raise DomainError(f"Z_{p}^{q} has too many classes to list; pass reference rows")
        return [_rederive_row(pm, ppart, cpart, row) for row in reference_rows]
    pcat = classify_closure(ppart, paction)
    pcat.fill_weights()
    ccat = classify_closure(cpart, caction)
    ccat.fill_weights()
    matched: dict[int, list[tuple[list[int], int]]] = {}
    for c in ccat.classes:
        eta = nu_from_mask(cpart, c.canonical_mask).to_eta()
        nu_mask = ppart.nu_mask_from_eta(reindex_cyclic_to_product(eta))
        canon = canonical_subset(nu_mask >> 1, paction)
        matched.setdefault(canon, []).append((ccat.representative_elements(c), c.code_weight))
    rows = []
    for c in pcat.sorted_classes():
        j_prod = [_digits(pm.product, g) for g in pcat.representative_elements(c)]
        hits = matched.get(c.canonical_mask, [])
        if not hits:
            rows.append(ComparisonRow(c.rank, c.code_weight, j_prod, None))
        for j_cyc, w in hits:
            rows.append(ComparisonRow(c.rank, c.code_weight, j_prod, sorted(j_cyc), w))
    return rows


def _rederive_row(pm: PhiMap, ppart: SdoPartition, cpart: SdoPartition, row) -> ComparisonRow:
    rank, weight, j_prod, cyc_weight, j_cyc = row
    g = gram_from_nu(_product_nu(ppart, j_prod))
    got = code_weight(g)
    if (got.rank, got.weight) != (rank, weight):
        raise DomainError(f"product J {j_prod} gives ({got.rank}, {got.weight}), expected ({rank}, {weight})")
    if j_cyc is None:
        return ComparisonRow(rank, weight, list(j_prod), None)
    gc = gram_from_nu(NuFunction.from_elements(cpart, j_cyc))
    cw = code_weight(gc)
    if (cw.rank, cw.weight) != (rank, cyc_weight):
        raise DomainError(f"cyclic J {j_cyc} gives ({cw.rank}, {cw.weight}), expected ({rank}, {cyc_weight})")
    return ComparisonRow(rank, weight, list(j_prod), list(j_cyc), cyc_weight)


def rows_to_json(rows: Sequence[ComparisonRow]) -> str:
    return json.dumps([asdict(r) for r in rows], indent=1)


def rows_to_csv(rows: Sequence[ComparisonRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["gram_rank", "code_weight", "J_product", "J_cyclic", "cyclic_weight"])
    for r in rows:
        w.writerow([
            r.gram_rank,
            r.code_weight,
            " ".join(r.J_product),
            "" if r.J_cyclic is None else " ".join(map(str, r.J_cyclic)),
            "" if r.cyclic_weight is None else r.cyclic_weight,
        ])
    return buf.getvalue()


def product_class_of(catalog: ClassCatalog, elements: Sequence[str]) -> int:
    """Canonical mask of the class containing the product ``J`` given as digit strings."""
    nu = _product_nu(catalog.partition, elements)
    _, action = action_for(catalog.group)
    return canonical_subset(nu.mask >> 1, action)


__all__ = [
    "PhiMap",
    "phi_map",
    "phi",
    "phi_inv",
    "MultSubgroup",
    "mult_subgroup",
    "doubling_coset_test",
    "doubling_orbit",
    "reindex_cyclic_to_product",
    "reindex_permutation",
    "Refinement",
    "sdo_refinement",
    "ComparisonRow",
    "compare_groups",
    "rows_to_json",
    "rows_to_csv",
    "product_class_of",
]
