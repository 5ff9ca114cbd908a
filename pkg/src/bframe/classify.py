"""Automorphic switching classes of SDO Gramians.

Gramians of binary Parseval frames over an odd-order abelian group are the
sums ``R_[e] + sum_{i in J} R_[i]`` over subsets ``J`` of nontrivial orbits.
Here such a ``J`` is an int mask with bit ``i - 1`` standing for orbit id
``i`` (orbit ``0`` is ``[e]`` and is always present). Automorphisms permute
orbits, and two masks are in the same class iff some automorphism carries
one onto the other.

Representatives are the lexicographically least subset of their class,
comparing sorted tuples of orbit ids.
"""

from __future__ import annotations

import json
import math
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, DomainError
from .gramchar import NuFunction, SdoPartition, count_unitary_classes, gram_from_nu
from .groups import Automorphism, FiniteGroup, close_permutations, group_from_descriptor

MAX_CLOSURE_ORBITS = 26
MAX_MASK_ORBITS = 32
EXPLICIT_GROUP_CAP = 10**5
POLYA_GROUP_CAP = 10**7


def popcount(x: int) -> int:
    return bin(x).count("1")


def mask_to_ids(mask: int) -> list[int]:
    """Orbit ids selected by a nontrivial-orbit mask."""
    out, i = [], 0
    while mask:
        if mask & 1:
            out.append(i + 1)
        mask >>= 1
        i += 1
    return out


def ids_to_mask(ids: Iterable[int]) -> int:
    mask = 0
    for i in ids:
        if i <= 0:
            raise DomainError("orbit id 0 is the identity orbit and is always included")
        mask |= 1 << (i - 1)
    return mask


def nu_from_mask(partition: SdoPartition, mask: int) -> NuFunction:
    return NuFunction(partition, 1 | (mask << 1))


def lex_key(mask: int, n: int) -> int:
    """Key whose minimum over same-size masks is the lexicographically least subset."""
    rev = int(format(mask, f"0{n}b")[::-1], 2) if n else 0
    return -rev


class InducedAction:
    """Generator actions on orbit ids; ``perms[t][i]`` is the image of orbit ``i``."""

    def __init__(self, partition: SdoPartition, perms: Sequence[Sequence[int]], labels: Sequence[str] | None = None):
        self.partition = partition
        k = len(partition)
        self.perms = [np.asarray(p, dtype=np.int64) for p in perms]
        for p in self.perms:
            if p.shape != (k,) or not np.array_equal(np.sort(p), np.arange(k)):
                raise DomainError("induced map is not a permutation of orbit ids")
            if p[0] != 0:
                raise DomainError("induced map must fix the identity orbit")
        self.labels = list(labels) if labels else [f"g{t}" for t in range(len(self.perms))]
        n = k - 1
        self.n = n
        # permutations of the nontrivial ids, shifted to 0..n-1
        self.nontrivial_perms = [p[1:] - 1 for p in self.perms]
        self._tables = [self._byte_tables(p) for p in self.nontrivial_perms]

    @staticmethod
    def _byte_tables(perm: np.ndarray) -> list[list[int]]:
        n = len(perm)
        tables = []
        for c in range(0, n, 8):
            tab = []
            for byte in range(256):
                img = 0
                for b in range(8):
                    if byte >> b & 1 and c + b < n:
                        img |= 1 << int(perm[c + b])
                tab.append(img)
            tables.append(tab)
        return tables

    def image(self, t: int, mask: int) -> int:
        out = 0
        for tab in self._tables[t]:
            out |= tab[mask & 255]
            mask >>= 8
        return out

    def images(self, mask: int) -> list[int]:
        return [self.image(t, mask) for t in range(len(self.perms))]

    def orbit_of_mask(self, mask: int) -> set[int]:
        """All images of ``mask`` under the generated group (BFS on generators)."""
        seen = {mask}
        frontier = [mask]
        while frontier:
            nxt = []
            for x in frontier:
                for t in range(len(self._tables)):
                    y = self.image(t, x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def closed_group(self, cap: int = POLYA_GROUP_CAP) -> np.ndarray:
        """Every permutation of nontrivial ids in the generated group."""
        key = cap
        cache = self.__dict__.setdefault("_closed", {})
        if key not in cache:
            if not self.nontrivial_perms:
                cache[key] = np.zeros((1, self.n), dtype=np.uint8)
            else:
                cache[key] = close_permutations(self.nontrivial_perms, cap=cap)
        return cache[key]


def induce_action(partition: SdoPartition, gens: Sequence[Automorphism], validate: bool = True) -> InducedAction:
    """Induced permutations ``[g] -> [sigma(g)]`` of orbit ids."""
    perms = []
    for sigma in gens:
        if sigma.group is not partition.group and sigma.group != partition.group:
            raise DomainError("automorphism acts on a different group")
        if validate and not sigma.is_homomorphism():
            raise DomainError(f"{sigma!r} is not an automorphism")
        perm = np.empty(len(partition), dtype=np.int64)
        for i, orbit in enumerate(partition.orbits):
            targets = {partition.orbit_id(int(sigma.perm[g])) for g in orbit}
            if len(targets) != 1:
                raise DomainError(f"{sigma!r} splits orbit {i} across several orbits")
            j = targets.pop()
            if len(partition.orbits[j]) != len(orbit):
                raise DomainError(f"{sigma!r} maps orbit {i} onto an orbit of another size")
            perm[i] = j
        if len(set(perm.tolist())) != len(perm):
            raise DomainError(f"{sigma!r} does not induce a bijection on orbits")
        perms.append(perm)
    return InducedAction(partition, perms, [g.label for g in gens])


# catalog ------------------------------------------------------------------


@dataclass
class ClassEntry:
    canonical_mask: int
    size: int
    rank: int | None = None
    code_weight: int | None = None
    members: frozenset[int] | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        """Number of nontrivial orbits in the representative."""
        return popcount(self.canonical_mask)

    def orbit_ids(self) -> list[int]:
        return [0] + mask_to_ids(self.canonical_mask)


@dataclass
class ClassCatalog:
    group: FiniteGroup
    partition: SdoPartition
    classes: list[ClassEntry]

    def __len__(self) -> int:
        return len(self.classes)

    def per_size_counts(self) -> list[int]:
        counts = [0] * (self.partition.nontrivial + 1)
        for c in self.classes:
            counts[c.order] += 1
        return counts

    def total_members(self) -> int:
        return sum(c.size for c in self.classes)

    def find(self, mask: int) -> ClassEntry:
        for c in self.classes:
            if c.members is not None and mask in c.members:
                return c
        raise KeyError(mask)

    def representative_elements(self, entry: ClassEntry) -> list[int]:
        """The set ``J`` of orbit representatives (including ``e``)."""
        return [self.partition.orbits[i][0] for i in entry.orbit_ids()]

    def sorted_classes(self) -> list[ClassEntry]:
        return sorted(self.classes, key=lambda c: (c.rank if c.rank is not None else -1, c.canonical_mask))

    def fill_ranks(self) -> None:
        for c in self.classes:
            if c.rank is None:
                c.rank = gram_from_nu(nu_from_mask(self.partition, c.canonical_mask)).rank()

    def fill_weights(self, **kwargs) -> None:
        from .codes import code_weight

        for c in self.classes:
            if c.code_weight is None:
                g = gram_from_nu(nu_from_mask(self.partition, c.canonical_mask))
                c.code_weight = code_weight(g, **kwargs).weight

    def to_json(self) -> dict:
        return {
            "group": self.group.descriptor,
            "orbit_table": self.partition.to_json(),
            # distinct Gramians, i.e. classes up to a unitary alone
            "unitary_classes": count_unitary_classes(self.partition),
            "automorphic_classes": len(self.classes),
            "classes": [
                {
                    "canonical_mask_hex": format(c.canonical_mask, "x"),
                    "size": c.size,
                    "rank": c.rank,
                    "code_weight": c.code_weight,
                }
                for c in self.sorted_classes()
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, record: dict, group: FiniteGroup | None = None) -> ClassCatalog:
        group = group or group_from_descriptor(record["group"])
        part = SdoPartition(group)
        if part.to_json() != record["orbit_table"]:
            raise DomainError("orbit table does not match the group's partition")
        classes = [
            ClassEntry(int(c["canonical_mask_hex"], 16), c["size"], c.get("rank"), c.get("code_weight"))
            for c in record["classes"]
        ]
        return cls(group, part, classes)

    def to_csv_rows(self) -> list[dict]:
        rows = []
        for c in self.sorted_classes():
            rows.append(
                {
                    "gram_rank": c.rank,
                    "code_weight": c.code_weight,
                    "size": c.size,
                    "J": "{" + ",".join(self.group.label(g) for g in self.representative_elements(c)) + "}",
                    "canonical_mask_hex": format(c.canonical_mask, "x"),
                }
            )
        return rows


def _least(masks: Iterable[int], n: int) -> int:
    return min(masks, key=lambda m: lex_key(m, n))


def classify_closure(
    partition: SdoPartition,
    action: InducedAction,
    with_ranks: bool = True,
    keep_members: bool = True,
) -> ClassCatalog:
    """Classes by breadth-first closure of subset images under the generators.

    Sizes ``m <= n/2`` are closed explicitly, larger sizes by complementing.
    """
    n = partition.nontrivial
    if n > MAX_CLOSURE_ORBITS:
        raise CapacityError(
            f"{n} nontrivial orbits exceed the explicit closure cap {MAX_CLOSURE_ORBITS}; use classify_polya"
        )
    full = (1 << n) - 1
    classes: list[ClassEntry] = []
    half = n // 2
    for m in range(0, half + 1):
        seen: set[int] = set()
        size_classes = []
        for combo in combinations(range(n), m):
            mask = sum(1 << i for i in combo)
            if mask in seen:
                continue
            orbit = action.orbit_of_mask(mask)
            seen |= orbit
            # combinations come out in lex order, so the first hit is least
            size_classes.append(ClassEntry(mask, len(orbit), members=frozenset(orbit)))
        classes.extend(size_classes)
        if n - m != m:
            for c in size_classes:
                comp = frozenset(full & ~x for x in c.members)
                classes.append(ClassEntry(_least(comp, n), len(comp), members=comp))
    classes.sort(key=lambda c: (c.order, lex_key(c.canonical_mask, n)))
    if not keep_members:
        for c in classes:
            c.members = None
    catalog = ClassCatalog(partition.group, partition, classes)
    if with_ranks:
        catalog.fill_ranks()
    return catalog


SIZE_ENUMERATION_CAP = 5 * 10**6


def classes_of_size(partition: SdoPartition, action: InducedAction, m: int, cap: int = POLYA_GROUP_CAP) -> list[ClassEntry]:
    """Classes of ``m``-subsets only, from the closed induced group.

    Unlike :func:`classify_closure` this needs no cap on the number of orbits,
    only on ``C(n, min(m, n - m))``, so the sparse and dense ends of large
    cases stay reachable.
    """
    n = partition.nontrivial
    if not 0 <= m <= n:
        raise DomainError(f"subset size {m} outside 0..{n}")
    if n > 62:
        raise CapacityError(f"{n} orbits do not fit the 62-bit mask layout")
    small = min(m, n - m)
    if math.comb(n, small) > SIZE_ENUMERATION_CAP:
        raise CapacityError(f"C({n},{small}) subsets exceed {SIZE_ENUMERATION_CAP}")
    group = action.closed_group(cap=cap).astype(np.int64)
    full = (1 << n) - 1
    seen: set[int] = set()
    out = []
    for combo in combinations(range(n), small):
        mask = sum(1 << i for i in combo)
        if mask in seen:
            continue
        images = (np.int64(1) << group[:, list(combo)]).sum(axis=1) if small else np.zeros(1, dtype=np.int64)
        orbit = {int(x) for x in np.unique(images)}
        seen |= orbit
        if small == m:
            out.append(ClassEntry(mask, len(orbit)))
        else:
            comp = [full & ~x for x in orbit]
            out.append(ClassEntry(_least(comp, n), len(comp)))
    out.sort(key=lambda c: lex_key(c.canonical_mask, n))
    return out


def rank_class_etas(group: FiniteGroup, rank: int, action: InducedAction | None = None) -> list:
    """One valid coefficient function per class of Gramians of rank ``rank`` on ``Z_p^q``.

    Needs the doubling orbits to be punctured lines (``2`` and ``-1`` generate
    the units mod ``p``). Then the primitive idempotents are the all-ones
    function ``E_0`` and ``E_0 + 1_K`` for the ``p``-index subgroups ``K``, so
    a valid function of rank ``1 + (p - 1) m`` is ``(1 + m) E_0 + sum 1_K``
    over ``m`` such ``K``. ``K = a^perp`` pairs subgroups with lines through
    ``a``, equivariantly for ``M -> M^-T``, so line classes give the classes.
    """
    from .gramchar import EtaFunction
    from .groups import ZpqGroup

    if not isinstance(group, ZpqGroup):
        raise DomainError("rank classes are implemented for Z_p^q")
    p, q = group.p, group.q
    part, action = (SdoPartition(group), action) if action is not None else action_for(group)
    if any(len(o) != p - 1 for o in part.orbits[1:]):
        raise DomainError(f"doubling orbits of {group.descriptor} are not punctured lines")
    if (rank - 1) % (p - 1) or not 1 <= rank <= p**q:
        return []
    m = (rank - 1) // (p - 1)
    digits = group.digits.astype(np.int64)
    out = []
    for c in classes_of_size(part, action, m):
        bits = np.full(group.order, (1 + m) % 2, dtype=np.uint8)
        for i in mask_to_ids(c.canonical_mask):
            a = np.array(group.to_tuple(part.orbits[i][0]), dtype=np.int64)
            bits ^= ((digits @ a) % p == 0).astype(np.uint8)
        out.append(EtaFunction.from_bits(group, bits))
    return out


def _cycle_type_counts(perms: np.ndarray) -> Counter:
    n = perms.shape[1]
    if n == 0:
        return Counter({(): len(perms)})
    p = perms.astype(np.intp)
    ident = np.arange(n)
    cur = p.copy()
    length = np.zeros_like(p)
    for t in range(1, n + 1):
        hit = (cur == ident) & (length == 0)
        length[hit] = t
        if t < n:
            cur = np.take_along_axis(p, cur, axis=1)
    # count of cycles with length L is (#points with length L) / L
    out: Counter = Counter()
    hist = np.stack([(length == L).sum(axis=1) // L for L in range(1, n + 1)], axis=1)
    rows, counts = np.unique(hist, axis=0, return_counts=True)
    for row, cnt in zip(rows, counts):
        ctype = tuple(L for L in range(1, n + 1) for _ in range(int(row[L - 1])))
        out[ctype] += int(cnt)
    return out


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("BFRAME_THREADS", "1")))
    except ValueError:
        return 1


def classify_polya(partition: SdoPartition, action: InducedAction, cap: int = POLYA_GROUP_CAP) -> list[int]:
    """Per-size class counts from the cycle index of the closed induced group.

    Entry ``m`` is the number of classes of ``m``-subsets of nontrivial orbits.
    """
    n = partition.nontrivial
    perms = action.closed_group(cap=cap)
    chunks = np.array_split(perms, max(1, min(_threads(), len(perms))))
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        parts = list(pool.map(_cycle_type_counts, chunks))
    types: Counter = Counter()
    for c in parts:
        types.update(c)
    poly = [0] * (n + 1)
    for ctype, cnt in types.items():
        term = [1] + [0] * n
        for L in ctype:
            nxt = term[:]
            for d in range(n + 1 - L):
                nxt[d + L] += term[d]
            term = nxt
        for d in range(n + 1):
            poly[d] += cnt * term[d]
    order = len(perms)
    if any(c % order for c in poly):  # pragma: no cover
        raise ArithmeticError("cycle index coefficients are not divisible by the group order")
    return [c // order for c in poly]


def canonical_subset(mask: int, action: InducedAction) -> int:
    """Lexicographically least image of ``mask`` under the generated group."""
    n = action.n
    if mask >> n:
        raise DomainError("mask selects orbits beyond the partition")
    if mask == 0 or not action.perms:
        return mask
    try:
        group = action.closed_group(cap=EXPLICIT_GROUP_CAP)
    except CapacityError:
        return _least(action.orbit_of_mask(mask), n)
    ids = np.array([i for i in range(n) if mask >> i & 1], dtype=np.intp)
    cols = group[:, ids].astype(np.int64)
    # reversed-bit value: orbit i contributes 2^(n-1-i); maximize it
    rev = (np.int64(1) << (n - 1 - cols)).sum(axis=1) if n <= 62 else None
    if rev is None:  # pragma: no cover
        return _least(action.orbit_of_mask(mask), n)
    best = group[int(np.argmax(rev))]
    return sum(1 << int(best[i]) for i in ids)


def equivalent(a: int, b: int, action: InducedAction) -> bool:
    return canonical_subset(a, action) == canonical_subset(b, action)


def classify_group(group: FiniteGroup, gens: Sequence[Automorphism] | None = None, **kwargs) -> ClassCatalog:
    """Convenience wrapper: partition, induced action from ``aut_generators``, closure."""
    from .groups import aut_generators

    part = SdoPartition(group)
    action = induce_action(part, gens if gens is not None else aut_generators(group))
    return classify_closure(part, action, **kwargs)


def action_for(group: FiniteGroup, gens: Sequence[Automorphism] | None = None) -> tuple[SdoPartition, InducedAction]:
    from .groups import aut_generators

    part = SdoPartition(group)
    return part, induce_action(part, gens if gens is not None else aut_generators(group))
