"""Finite groups with a fixed element order, regular representations, and
generating sets of automorphisms.

Every group indexes its elements by ``0..order-1``; all matrices and bitmasks
in the package are laid out against that order.

* ``ZpqGroup(p, q)``: tuples ``(g_1, ..., g_q)`` mod ``p``, ordered
  lexicographically with ``g_1`` most significant, so
  ``index = sum(g_i * p**(q - i))``.
* ``CyclicGroup(n)``: residues ``0..n-1`` in natural order.
* ``CayleyGroup(table)``: the order of the rows of the table.
* ``DirectProduct(a, b)``: pair ``(x, y)`` at index ``x * b.order + y``.
"""

from __future__ import annotations

import math
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, DomainError, GroupAxiomError, UnsupportedError
from .gf2 import BitMatrix

MAX_ORDER = 1 << 16
# Exhaustive associativity check below this order, random triples above it.
_ASSOC_EXHAUSTIVE = 64
_ASSOC_SAMPLES = 20000
# Largest GL(q, p) we close explicitly to certify a generating set.
GL_CERTIFY_CAP = 2_000_000


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


class FiniteGroup:
    """Base class; subclasses set ``order``, ``identity`` and implement ``mul``."""

    order: int
    identity: int
    name: str = "group"

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def label(self, a: int) -> str:
        return str(a)

    @property
    def descriptor(self) -> str:
        return self.name

    def elements(self) -> range:
        return range(self.order)

    def power(self, a: int, n: int) -> int:
        result, base = self.identity, a
        if n < 0:
            base, n = self.inv(a), -n
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def element_order(self, a: int) -> int:
        n, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            n += 1
        return n

    @cached_property
    def table(self) -> np.ndarray:
        """``table[a, b] = a*b`` as an ``order x order`` index array."""
        k = self.order
        if k > 4096:
            raise CapacityError(f"multiplication table of order {k} is too large")
        t = np.empty((k, k), dtype=np.int64)
        for a in range(k):
            t[a] = self.left_translate(a)
        return t

    def left_translate(self, a: int) -> np.ndarray:
        """Array ``[a*b for b in G]``."""
        return np.array([self.mul(a, b) for b in range(self.order)], dtype=np.int64)

    def right_translate(self, a: int) -> np.ndarray:
        """Array ``[b*a for b in G]``."""
        return np.array([self.mul(b, a) for b in range(self.order)], dtype=np.int64)

    @cached_property
    def inverses(self) -> np.ndarray:
        inv = np.empty(self.order, dtype=np.int64)
        for a in range(self.order):
            row = self.left_translate(a)
            inv[a] = int(np.flatnonzero(row == self.identity)[0])
        return inv

    @cached_property
    def squares(self) -> np.ndarray:
        return np.array([self.mul(a, a) for a in range(self.order)], dtype=np.int64)

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        return bool(np.array_equal(t, t.T))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return type(self) is type(other) and self.descriptor == other.descriptor

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.descriptor))

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.descriptor} order={self.order}>"


class ZpqGroup(FiniteGroup):
    """The elementary abelian group ``Z_p^q`` for an odd prime ``p``."""

    def __init__(self, p: int, q: int):
        if not (is_prime(p) and p % 2 == 1):
            raise DomainError(f"p = {p} is not an odd prime")
        if q < 1:
            raise DomainError("q must be at least 1")
        if p**q > MAX_ORDER:
            raise CapacityError(f"{p}^{q} exceeds the group order cap {MAX_ORDER}")
        self.p, self.q = p, q
        self.order = p**q
        self.identity = 0
        self.name = f"zpq:{p},{q}"
        self._weights = np.array([p ** (q - 1 - i) for i in range(q)], dtype=np.int64)
        self.digits = (np.arange(self.order)[:, None] // self._weights[None, :]) % p
        self.digits.flags.writeable = False

    def to_tuple(self, a: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.digits[a])

    def index(self, g: Sequence[int]) -> int:
        if len(g) != self.q or any(not 0 <= x < self.p for x in g):
            raise DomainError(f"{tuple(g)} is not an element of Z_{self.p}^{self.q}")
        return int(np.dot(np.asarray(g, dtype=np.int64), self._weights))

    def indices(self, digits: np.ndarray) -> np.ndarray:
        return (np.asarray(digits) % self.p) @ self._weights

    def label(self, a: int) -> str:
        return "(" + ",".join(map(str, self.to_tuple(a))) + ")"

    def mul(self, a: int, b: int) -> int:
        return int(self.indices(self.digits[a] + self.digits[b]))

    def left_translate(self, a: int) -> np.ndarray:
        return self.indices(self.digits + self.digits[a])

    right_translate = left_translate

    @cached_property
    def inverses(self) -> np.ndarray:
        return self.indices(-self.digits)

    @cached_property
    def squares(self) -> np.ndarray:
        return self.indices(2 * self.digits)

    @property
    def is_abelian(self) -> bool:
        return True

    def apply_matrix(self, m: np.ndarray) -> np.ndarray:
        """Index permutation ``g -> M g`` (``g`` as a column of digits)."""
        m = np.asarray(m, dtype=np.int64) % self.p
        return self.indices(self.digits @ m.T)


class CyclicGroup(FiniteGroup):
    """Integers mod ``n`` under addition."""

    def __init__(self, n: int):
        if n < 1:
            raise DomainError("cyclic group order must be positive")
        if n > MAX_ORDER:
            raise CapacityError(f"order {n} exceeds the cap {MAX_ORDER}")
        self.n = self.order = n
        self.identity = 0
        self.name = f"cyclic:{n}"

    def mul(self, a: int, b: int) -> int:
        return (a + b) % self.n

    def left_translate(self, a: int) -> np.ndarray:
        return (np.arange(self.n) + a) % self.n

    right_translate = left_translate

    @cached_property
    def inverses(self) -> np.ndarray:
        return (-np.arange(self.n)) % self.n

    @cached_property
    def squares(self) -> np.ndarray:
        return (2 * np.arange(self.n)) % self.n

    @property
    def is_abelian(self) -> bool:
        return True


class CayleyGroup(FiniteGroup):
    """A group given by its multiplication table; axioms are checked eagerly."""

    def __init__(self, table, name: str = "cayley", labels: Sequence[str] | None = None, seed: int = 0):
        t = np.asarray(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise GroupAxiomError("closure", "table must be a nonempty square grid")
        k = t.shape[0]
        if k > MAX_ORDER:
            raise CapacityError(f"order {k} exceeds the cap {MAX_ORDER}")
        if t.min() < 0 or t.max() >= k:
            raise GroupAxiomError("closure", "entries must be indices 0..k-1")
        full = np.arange(k)
        for axis_name, rows in (("row", t), ("column", t.T)):
            bad = [i for i in range(k) if not np.array_equal(np.sort(rows[i]), full)]
            if bad:
                raise GroupAxiomError("latin square", f"{axis_name} {bad[0]} repeats an entry")
        ids = [e for e in range(k) if np.array_equal(t[e], full) and np.array_equal(t[:, e], full)]
        if not ids:
            raise GroupAxiomError("identity", "no two-sided identity element")
        e = ids[0]
        inv = np.array([int(np.flatnonzero(t[a] == e)[0]) for a in range(k)], dtype=np.int64)
        if not np.all(t[inv, full] == e):
            raise GroupAxiomError("inverse", "left and right inverses differ")
        if k <= _ASSOC_EXHAUSTIVE:
            lhs = t[t[:, :, None], full[None, None, :]]
            rhs = t[full[:, None, None], t[None, :, :]]
            ok = np.array_equal(lhs, rhs)
        else:
            rng = np.random.default_rng(seed)
            a, b, c = rng.integers(0, k, size=(3, _ASSOC_SAMPLES))
            ok = np.array_equal(t[t[a, b], c], t[a, t[b, c]])
        if not ok:
            raise GroupAxiomError("associativity", "(ab)c != a(bc) for some triple")
        t.flags.writeable = False
        self.__dict__["table"] = t
        self.__dict__["inverses"] = inv
        self.order = k
        self.identity = e
        self.name = name
        self.labels = list(labels) if labels is not None else None

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def left_translate(self, a: int) -> np.ndarray:
        return self.table[a]

    def right_translate(self, a: int) -> np.ndarray:
        return self.table[:, a]

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)


class DirectProduct(FiniteGroup):
    """``A x B`` with ``(x, y)`` stored at index ``x * |B| + y``."""

    def __init__(self, a: FiniteGroup, b: FiniteGroup):
        if a.order * b.order > MAX_ORDER:
            raise CapacityError("direct product exceeds the group order cap")
        self.a, self.b = a, b
        self.order = a.order * b.order
        self.identity = a.identity * b.order + b.identity
        self.name = f"({a.descriptor})x({b.descriptor})"

    def split(self, g: int) -> tuple[int, int]:
        return divmod(g, self.b.order)

    def mul(self, g: int, h: int) -> int:
        (x1, y1), (x2, y2) = self.split(g), self.split(h)
        return self.a.mul(x1, x2) * self.b.order + self.b.mul(y1, y2)

    def left_translate(self, g: int) -> np.ndarray:
        x, y = self.split(g)
        return (self.a.left_translate(x)[:, None] * self.b.order + self.b.left_translate(y)[None, :]).reshape(-1)

    def right_translate(self, g: int) -> np.ndarray:
        x, y = self.split(g)
        return (self.a.right_translate(x)[:, None] * self.b.order + self.b.right_translate(y)[None, :]).reshape(-1)

    @cached_property
    def is_abelian(self) -> bool:
        return self.a.is_abelian and self.b.is_abelian

    def label(self, g: int) -> str:
        x, y = self.split(g)
        return f"({self.a.label(x)},{self.b.label(y)})"


def make_zpq(p: int, q: int) -> ZpqGroup:
    return ZpqGroup(p, q)


def make_cyclic(n: int) -> CyclicGroup:
    return CyclicGroup(n)


def make_cayley(table, name: str = "cayley", labels: Sequence[str] | None = None) -> CayleyGroup:
    return CayleyGroup(table, name=name, labels=labels)


def direct_product(a: FiniteGroup, b: FiniteGroup) -> DirectProduct:
    return DirectProduct(a, b)


def parse_cayley(text: str, name: str = "cayley") -> CayleyGroup:
    """Parse the fixture format: ``k`` on the first line, then ``k`` rows."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GroupAxiomError("closure", "empty Cayley table file")
    k = int(lines[0])
    rows = [[int(x) for x in ln.split()] for ln in lines[1:]]
    if len(rows) != k or any(len(r) != k for r in rows):
        raise GroupAxiomError("closure", f"expected {k} rows of {k} entries")
    return CayleyGroup(rows, name=name)


def load_cayley(path: str | Path) -> CayleyGroup:
    path = Path(path)
    return parse_cayley(path.read_text(), name=f"cayley:{path.name}")


def format_cayley(group: FiniteGroup) -> str:
    t = group.table
    return "\n".join([str(group.order)] + [" ".join(map(str, r)) for r in t]) + "\n"


# regular representations -----------------------------------------------


def _perm_matrix_from_rows(cols_of_rows: np.ndarray) -> BitMatrix:
    """Matrix with a one at ``(alpha, cols_of_rows[alpha])``."""
    k = len(cols_of_rows)
    arr = np.zeros((k, k), dtype=np.uint8)
    arr[np.arange(k), cols_of_rows] = 1
    return BitMatrix.from_array(arr)


def right_regular(group: FiniteGroup, g: int) -> BitMatrix:
    """``R_g`` with ``(R_g)[alpha, beta] = 1`` iff ``alpha^-1 beta = g``."""
    return _perm_matrix_from_rows(group.right_translate(g))


def left_regular(group: FiniteGroup, g: int) -> BitMatrix:
    """``Lambda_g`` with ``(Lambda_g)[alpha, beta] = 1`` iff ``alpha beta^-1 = g``."""
    return _perm_matrix_from_rows(group.left_translate(group.inv(g)))


# automorphisms ------------------------------------------------------------


class Automorphism:
    """A permutation of element indices, ``perm[g] = sigma(g)``."""

    __slots__ = ("group", "perm", "label")

    def __init__(self, group: FiniteGroup, perm: Iterable[int], label: str = ""):
        perm = np.asarray(list(perm) if not isinstance(perm, np.ndarray) else perm, dtype=np.int64)
        if perm.shape != (group.order,) or not np.array_equal(np.sort(perm), np.arange(group.order)):
            raise DomainError("automorphism must be a permutation of the group elements")
        perm.flags.writeable = False
        self.group = group
        self.perm = perm
        self.label = label

    def __call__(self, g: int) -> int:
        return int(self.perm[g])

    def compose(self, other: Automorphism) -> Automorphism:
        """``self o other``."""
        return Automorphism(self.group, self.perm[other.perm])

    def inverse(self) -> Automorphism:
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(len(self.perm))
        return Automorphism(self.group, inv)

    def is_homomorphism(self) -> bool:
        g = self.group
        if self.perm[g.identity] != g.identity:
            return False
        for a in range(g.order):
            lhs = self.perm[g.left_translate(a)]
            rhs = g.left_translate(int(self.perm[a]))[self.perm]
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self.group == other.group and np.array_equal(self.perm, other.perm)

    def __hash__(self) -> int:
        return hash(self.perm.tobytes())

    def __repr__(self) -> str:
        return f"Automorphism({self.label or 'perm'})"


def primitive_root(p: int) -> int:
    """Least generator of the multiplicative group mod the odd prime ``p``."""
    phi = p - 1
    factors = {d for d in range(2, phi + 1) if phi % d == 0 and is_prime(d)}
    for w in range(2, p):
        if all(pow(w, phi // f, p) != 1 for f in factors):
            return w
    return 1


def _euler_phi(n: int) -> int:
    return sum(1 for u in range(1, n + 1) if math.gcd(u, n) == 1)


def unit_generators(n: int) -> list[int]:
    """A small generating set of ``Z_n^x``: one element when the group is cyclic."""
    if n <= 2:
        return [1]
    units = [u for u in range(1, n) if math.gcd(u, n) == 1]
    phi = len(units)
    for u in units[1:]:
        if _mult_order(u, n) == phi:
            return [u]
    gens: list[int] = []
    span = {1}
    for u in units:
        if u in span:
            continue
        gens.append(u)
        frontier = list(span)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = x * g % n
                    if y not in span:
                        span.add(y)
                        nxt.append(y)
            frontier = nxt
        if len(span) == phi:
            break
    return gens


def _mult_order(u: int, n: int) -> int:
    k, x = 1, u % n
    while x != 1:
        x = x * u % n
        k += 1
    return k


def gl_order(q: int, p: int) -> int:
    return math.prod(p**q - p**i for i in range(q))


def _mat_order(m: np.ndarray, p: int, limit: int) -> int:
    ident = np.eye(m.shape[0], dtype=np.int64)
    x = m.copy()
    for k in range(1, limit + 1):
        if np.array_equal(x, ident):
            return k
        x = (x @ m) % p
    return -1


def singer_matrix(q: int, p: int) -> np.ndarray:
    """Companion matrix of the first primitive degree-``q`` polynomial over ``F_p``."""
    target = p**q - 1
    for code in range(p**q):
        coeffs = [(code // p**i) % p for i in range(q)]  # c_0 .. c_{q-1}
        if coeffs[0] == 0:
            continue
        c = np.zeros((q, q), dtype=np.int64)
        c[1:, :-1] = np.eye(q - 1, dtype=np.int64)
        c[:, -1] = [(-x) % p for x in coeffs]
        if _mat_order(c, p, target) == target:
            return c
    raise DomainError(f"no primitive polynomial of degree {q} over F_{p}")  # pragma: no cover


def transvection(q: int) -> np.ndarray:
    t = np.eye(q, dtype=np.int64)
    t[0, 1] = 1
    return t


def close_matrix_group(gens: Sequence[np.ndarray], p: int, cap: int = GL_CERTIFY_CAP) -> int:
    """Order of the matrix group generated by ``gens`` over ``F_p``."""
    q = gens[0].shape[0]
    n_codes = p ** (q * q)
    weights = p ** np.arange(q * q, dtype=np.int64)[::-1]
    seen = np.zeros(n_codes, dtype=bool) if n_codes <= 200_000_000 else None
    seen_set: set[int] = set()

    def encode(ms: np.ndarray) -> np.ndarray:
        return ms.reshape(len(ms), -1) @ weights

    frontier = np.eye(q, dtype=np.int64)[None]
    start = encode(frontier)
    if seen is not None:
        seen[start] = True
    else:
        seen_set.update(start.tolist())
    count = 1
    gens = [np.asarray(g, dtype=np.int64) % p for g in gens]
    while len(frontier):
        imgs = np.concatenate([np.einsum("nij,jk->nik", frontier, g) % p for g in gens])
        codes = encode(imgs)
        codes, first = np.unique(codes, return_index=True)
        if seen is not None:
            fresh = ~seen[codes]
            seen[codes[fresh]] = True
        else:
            fresh = np.array([c not in seen_set for c in codes.tolist()], dtype=bool)
            seen_set.update(codes[fresh].tolist())
        frontier = imgs[first[fresh]]
        count += len(frontier)
        if count > cap:
            raise CapacityError(f"matrix group closure exceeds {cap} elements")
    return count


def gl_generators(q: int, p: int) -> list[np.ndarray]:
    return [m.copy() for m in _gl_generators(q, p)]


@lru_cache(maxsize=None)
def _gl_generators(q: int, p: int) -> tuple[np.ndarray, ...]:
    """Generators of ``GL(q, p)``: a Singer cycle and a transvection.

    For ``q == 1`` this is the primitive root. When the target order is small
    enough the pair is certified by explicit closure; the diagonal and
    cyclic-permutation matrices are appended if the pair falls short.
    """
    if q == 1:
        return (np.array([[primitive_root(p)]], dtype=np.int64),)
    gens = [singer_matrix(q, p), transvection(q)]
    target = gl_order(q, p)
    if target > GL_CERTIFY_CAP or close_matrix_group(gens, p) == target:
        return tuple(gens)
    diag = np.eye(q, dtype=np.int64)
    diag[0, 0] = primitive_root(p)
    cyc = np.roll(np.eye(q, dtype=np.int64), 1, axis=0)
    gens = gens + [diag, cyc]
    if close_matrix_group(gens, p) != target:  # pragma: no cover
        raise DomainError(f"failed to generate GL({q},{p})")
    return tuple(gens)


def matrix_automorphism(group: ZpqGroup, m: np.ndarray) -> Automorphism:
    m = np.asarray(m, dtype=np.int64) % group.p
    label = "[" + ";".join(" ".join(map(str, r)) for r in m.tolist()) + "]"
    return Automorphism(group, group.apply_matrix(m), label=label)


def multiplication_automorphism(group: CyclicGroup, u: int) -> Automorphism:
    if math.gcd(u, group.n) != 1:
        raise DomainError(f"{u} is not a unit mod {group.n}")
    return Automorphism(group, (np.arange(group.n) * u) % group.n, label=f"x->{u}x")


def aut_generators(group: FiniteGroup) -> list[Automorphism]:
    """A generating set of ``Aut(group)`` for ``Z_p^q`` and ``Z_n``."""
    if isinstance(group, ZpqGroup):
        return [matrix_automorphism(group, m) for m in gl_generators(group.q, group.p)]
    if isinstance(group, CyclicGroup):
        return [multiplication_automorphism(group, u) for u in unit_generators(group.n)]
    raise UnsupportedError(f"automorphism generators are not available for {group.descriptor}")


def aut_order(group: FiniteGroup) -> int:
    if isinstance(group, ZpqGroup):
        return gl_order(group.q, group.p)
    if isinstance(group, CyclicGroup):
        return _euler_phi(group.n)
    raise UnsupportedError(f"automorphism group order unknown for {group.descriptor}")


def close_permutations(gens: Sequence[np.ndarray], cap: int = 10**7) -> np.ndarray:
    """All elements of the permutation group generated by ``gens`` (rows)."""
    gens = [np.asarray(g, dtype=np.int64) for g in gens]
    n = len(gens[0]) if gens else 0
    dtype = np.uint8 if n <= 256 else np.uint16
    ident = np.arange(n, dtype=dtype)
    seen = {ident.tobytes()}
    elems = [ident[None]]
    frontier = ident[None]
    gens_d = [g.astype(np.intp) for g in gens]
    while len(frontier):
        # composing as g o x keeps the action a left action
        imgs = np.concatenate([g[frontier].astype(dtype) for g in gens_d])
        imgs = np.unique(imgs, axis=0)
        keep = []
        for i, row in enumerate(imgs):
            key = row.tobytes()
            if key not in seen:
                seen.add(key)
                keep.append(i)
        frontier = imgs[keep]
        if len(frontier):
            elems.append(frontier)
        if len(seen) > cap:
            raise CapacityError(f"permutation group closure exceeds {cap} elements")
    return np.concatenate(elems)


def automorphism_closure(gens: Sequence[Automorphism], cap: int = 10**6) -> np.ndarray:
    """All automorphisms generated by ``gens`` as rows of element permutations."""
    if not gens:
        raise DomainError("need at least one generator")
    return close_permutations([a.perm for a in gens], cap=cap)


def group_from_descriptor(text: str) -> FiniteGroup:
    """Parse ``zpq:p,q``, ``cyclic:n`` or ``cayley:<path>``."""
    kind, _, arg = text.partition(":")
    try:
        if kind == "zpq":
            p, q = (int(x) for x in arg.split(","))
            return make_zpq(p, q)
        if kind == "cyclic":
            return make_cyclic(int(arg))
    except ValueError as exc:
        raise DomainError(f"bad group descriptor {text!r}: {exc}") from exc
    if kind == "cayley" and arg:
        return load_cayley(arg)
    raise DomainError(f"bad group descriptor {text!r}; use zpq:p,q, cyclic:n or cayley:<path>")
