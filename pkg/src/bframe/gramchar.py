"""Coefficient functions in the group algebra and symmetric doubling orbits.

A Gramian in the algebra spanned by the right regular representation is
``G = sum_g eta(g) R_g`` with ``G[a, b] = eta(a^-1 b)``, so ``eta`` is row
``e`` of ``G``. It is the Gramian of a binary Parseval group frame iff
``eta(e) = 1``, ``eta(g) = eta(g^-1)`` and ``eta * eta = eta``.

Masks are Python ints with bit ``g`` holding ``eta(g)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

import numpy as np

from .errors import CapacityError, DomainError
from .gf2 import BitMatrix
from .groups import FiniteGroup, group_from_descriptor

# Brute-force enumeration searches 2**(inversion classes) candidates.
MAX_BRUTE_FORCE_CLASSES = 23
_BATCH = 1 << 13


def _mask_to_bits(mask: int, k: int) -> np.ndarray:
    return np.array([(mask >> i) & 1 for i in range(k)], dtype=np.uint8)


def _bits_to_mask(bits: Iterable[int]) -> int:
    return sum(1 << i for i, b in enumerate(bits) if b)


@dataclass(frozen=True)
class EtaFunction:
    group: FiniteGroup
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.group.order:
            raise DomainError("mask has bits outside the group")

    @classmethod
    def from_support(cls, group: FiniteGroup, support: Iterable[int]) -> EtaFunction:
        mask = 0
        for g in support:
            if not 0 <= g < group.order:
                raise DomainError(f"element {g} is not in the group")
            mask |= 1 << int(g)
        return cls(group, mask)

    @classmethod
    def from_bits(cls, group: FiniteGroup, bits: Iterable[int]) -> EtaFunction:
        return cls(group, _bits_to_mask(bits))

    @classmethod
    def delta(cls, group: FiniteGroup) -> EtaFunction:
        return cls(group, 1 << group.identity)

    @classmethod
    def from_hex(cls, group: FiniteGroup, text: str) -> EtaFunction:
        return cls(group, int(text, 16))

    def __call__(self, g: int) -> int:
        return (self.mask >> g) & 1

    @cached_property
    def bits(self) -> np.ndarray:
        return _mask_to_bits(self.mask, self.group.order)

    @property
    def support(self) -> list[int]:
        return [g for g in range(self.group.order) if (self.mask >> g) & 1]

    @property
    def weight(self) -> int:
        return bin(self.mask).count("1")

    def to_hex(self) -> str:
        return format(self.mask, "x")

    def to_json(self) -> dict:
        return {"group": self.group.descriptor, "mask": self.to_hex()}

    @classmethod
    def from_json(cls, record: dict, group: FiniteGroup | None = None) -> EtaFunction:
        group = group or group_from_descriptor(record["group"])
        return cls.from_hex(group, record["mask"])

    def __repr__(self) -> str:
        return f"EtaFunction({self.group.descriptor}, support={self.support})"


def gram_from_eta(eta: EtaFunction) -> BitMatrix:
    """``sum_g eta(g) R_g``; entry ``(a, b)`` is ``eta(a^-1 b)``."""
    g = eta.group
    bits = eta.bits
    rows = np.empty((g.order, g.order), dtype=np.uint8)
    for a in range(g.order):
        rows[a] = bits[g.left_translate(g.inv(a))]
    return BitMatrix.from_array(rows)


def eta_from_gram(m: BitMatrix, group: FiniteGroup) -> EtaFunction | None:
    """Row ``e`` of ``m`` as a coefficient function, or ``None`` if ``m`` is
    not in the group algebra."""
    if m.shape != (group.order, group.order):
        raise DomainError(f"expected a {group.order}x{group.order} matrix, got {m.shape}")
    eta = EtaFunction.from_bits(group, m.to_array()[group.identity])
    return eta if gram_from_eta(eta) == m else None


def _require_same_group(a: EtaFunction, b: EtaFunction) -> None:
    if a.group != b.group:
        raise DomainError("coefficient functions live on different groups")


def convolve(a: EtaFunction, b: EtaFunction) -> EtaFunction:
    """``(a * b)(h) = sum_g a(g) b(g^-1 h)`` mod 2."""
    _require_same_group(a, b)
    g = a.group
    out = np.zeros(g.order, dtype=np.uint8)
    bb = b.bits
    for x in a.support:
        out ^= bb[g.left_translate(g.inv(x))]
    return EtaFunction.from_bits(g, out)


class EtaCheck(NamedTuple):
    identity_ok: bool
    symmetric: bool
    conv_idempotent: bool

    @property
    def valid(self) -> bool:
        return self.identity_ok and self.symmetric and self.conv_idempotent


def is_symmetric_eta(eta: EtaFunction) -> bool:
    bits = eta.bits
    return bool(np.array_equal(bits, bits[eta.group.inverses]))


def check_eta(eta: EtaFunction) -> EtaCheck:
    return EtaCheck(
        identity_ok=bool(eta(eta.group.identity)),
        symmetric=is_symmetric_eta(eta),
        conv_idempotent=convolve(eta, eta) == eta,
    )


def square_root_check(eta: EtaFunction) -> bool:
    """``eta(g) = sum_{h^2 = g} eta(h)`` for all ``g`` (abelian groups)."""
    g = eta.group
    if not g.is_abelian:
        raise DomainError("the square-root condition is stated for abelian groups")
    counts = np.bincount(g.squares[eta.bits.astype(bool)], minlength=g.order)
    return bool(np.array_equal(counts & 1, eta.bits))


def inversion_classes(group: FiniteGroup) -> list[tuple[int, ...]]:
    """The sets ``{g, g^-1}`` other than ``{e}``, ordered by least element."""
    seen = {group.identity}
    out = []
    for g in range(group.order):
        if g in seen:
            continue
        cls = tuple(sorted({g, group.inv(g)}))
        seen.update(cls)
        out.append(cls)
    return out


def enumerate_valid_etas(group: FiniteGroup) -> list[EtaFunction]:
    """Every valid coefficient function by exhaustive search, ascending mask."""
    classes = inversion_classes(group)
    c = len(classes)
    if c > MAX_BRUTE_FORCE_CLASSES:
        raise CapacityError(
            f"{group.descriptor} has {c} inversion classes (2^{c} candidates); "
            "use sdo_partition for odd-order abelian groups"
        )
    k = group.order
    e = group.identity
    # class_of[t] = one-hot layout of class t over elements
    layout = np.zeros((c, k), dtype=np.uint8)
    for t, cls in enumerate(classes):
        layout[t, list(cls)] = 1
    base = np.zeros(k, dtype=np.uint8)
    base[e] = 1
    shifts = np.stack([group.left_translate(group.inv(x)) for x in range(k)])

    found: list[int] = []
    total = 1 << c
    for start in range(0, total, _BATCH):
        idx = np.arange(start, min(total, start + _BATCH), dtype=np.int64)
        sel = ((idx[:, None] >> np.arange(c)[None, :]) & 1).astype(np.uint8)
        etas = (sel @ layout) | base  # (B, k)
        conv = np.zeros_like(etas)
        for x in range(k):
            conv ^= etas[:, x : x + 1] & etas[:, shifts[x]]
        ok = np.all(conv == etas, axis=1)
        for row in etas[ok]:
            found.append(_bits_to_mask(row))
    return [EtaFunction(group, m) for m in sorted(found)]


# symmetric doubling orbits ------------------------------------------------


class SdoPartition:
    """Orbits of ``g -> g^2`` and ``g -> g^-1`` on an odd-order abelian group.

    Orbit ``0`` is ``{e}``; the others are sorted by their least element,
    which also serves as the orbit representative.
    """

    def __init__(self, group: FiniteGroup):
        if group.order % 2 == 0:
            raise DomainError("symmetric doubling orbits need a group of odd order")
        if not group.is_abelian:
            raise DomainError("symmetric doubling orbits need an abelian group")
        self.group = group
        sq, inv = group.squares, group.inverses
        orbit_of = np.full(group.order, -1, dtype=np.int64)
        orbits: list[tuple[int, ...]] = []
        for g in range(group.order):
            if orbit_of[g] >= 0:
                continue
            members = {g}
            frontier = [g]
            while frontier:
                nxt = []
                for x in frontier:
                    for y in (int(sq[x]), int(inv[x])):
                        if y not in members:
                            members.add(y)
                            nxt.append(y)
                frontier = nxt
            orbit = tuple(sorted(members))
            orbit_of[list(orbit)] = len(orbits)
            orbits.append(orbit)
        # g = 0 is scanned first, but the identity need not be index 0
        e_id = int(orbit_of[group.identity])
        order = [e_id] + sorted((i for i in range(len(orbits)) if i != e_id), key=lambda i: orbits[i][0])
        self.orbits: tuple[tuple[int, ...], ...] = tuple(orbits[i] for i in order)
        remap = np.empty(len(orbits), dtype=np.int64)
        remap[order] = np.arange(len(orbits))
        self.orbit_of = remap[orbit_of]
        self.orbit_of.flags.writeable = False

    def __len__(self) -> int:
        return len(self.orbits)

    @property
    def nontrivial(self) -> int:
        return len(self.orbits) - 1

    @property
    def representatives(self) -> list[int]:
        return [o[0] for o in self.orbits]

    def orbit(self, g: int) -> tuple[int, ...]:
        return self.orbits[int(self.orbit_of[g])]

    def orbit_id(self, g: int) -> int:
        return int(self.orbit_of[g])

    def sizes(self) -> list[int]:
        return [len(o) for o in self.orbits]

    @cached_property
    def orbit_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << g for g in o) for o in self.orbits)

    def eta_from_nu_mask(self, nu_mask: int) -> EtaFunction:
        mask = 0
        for i, om in enumerate(self.orbit_masks):
            if (nu_mask >> i) & 1:
                mask |= om
        return EtaFunction(self.group, mask)

    def nu_mask_from_eta(self, eta: EtaFunction) -> int | None:
        """The orbit mask of ``eta``, or ``None`` if ``eta`` is not a union of orbits."""
        nu = 0
        for i, om in enumerate(self.orbit_masks):
            hit = eta.mask & om
            if hit == om:
                nu |= 1 << i
            elif hit:
                return None
        return nu

    def ids_of(self, elements: Iterable[int]) -> list[int]:
        return sorted({self.orbit_id(g) for g in elements})

    def to_json(self) -> list[list[int]]:
        return [list(o) for o in self.orbits]


def sdo_partition(group: FiniteGroup) -> SdoPartition:
    return SdoPartition(group)


@dataclass(frozen=True)
class NuFunction:
    """A function on orbits; bit ``i`` of ``mask`` is the value on orbit ``i``."""

    partition: SdoPartition
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> len(self.partition):
            raise DomainError("mask has bits beyond the number of orbits")

    @classmethod
    def from_orbit_ids(cls, partition: SdoPartition, ids: Iterable[int]) -> NuFunction:
        return cls(partition, sum(1 << i for i in set(ids)))

    @classmethod
    def from_elements(cls, partition: SdoPartition, elements: Iterable[int]) -> NuFunction:
        """Select the orbits of the given elements."""
        return cls.from_orbit_ids(partition, partition.ids_of(elements))

    @classmethod
    def from_hex(cls, partition: SdoPartition, text: str) -> NuFunction:
        return cls(partition, int(text, 16))

    @property
    def includes_identity(self) -> bool:
        return bool(self.mask & 1)

    @property
    def orbit_ids(self) -> list[int]:
        return [i for i in range(len(self.partition)) if (self.mask >> i) & 1]

    def to_eta(self) -> EtaFunction:
        return self.partition.eta_from_nu_mask(self.mask)

    def to_hex(self) -> str:
        return format(self.mask, "x")


def gram_from_nu(nu: NuFunction) -> BitMatrix:
    """``sum_{[g]} nu([g]) R_[g]``; requires ``nu([e]) = 1``."""
    if not nu.includes_identity:
        raise DomainError("nu must select the identity orbit")
    return gram_from_eta(nu.to_eta())


def count_unitary_classes(partition: SdoPartition) -> int:
    return 2 ** (len(partition) - 1)


def enumerate_nu_etas(partition: SdoPartition) -> list[EtaFunction]:
    """Every valid ``eta`` as a union of orbits including ``[e]``, ascending mask."""
    n = partition.nontrivial
    if n > MAX_BRUTE_FORCE_CLASSES:
        raise CapacityError(f"2^{n} orbit subsets are too many to list")
    masks = sorted(partition.eta_from_nu_mask(1 | (j << 1)).mask for j in range(1 << n))
    return [EtaFunction(partition.group, m) for m in masks]
