"""Vector families, frame operators and group representations over GF(2).

For a family ``F = {f_j}`` in ``Z_2^n`` the analysis operator ``Theta`` is the
``k x n`` matrix whose row ``j`` is ``f_j``. Then ``S = Theta* Theta`` and
``G = Theta Theta*``, and ``F`` is Parseval exactly when ``S = I_n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import DimensionError, NotAGroupFrameError
from .gf2 import BitMatrix, BitVector, dot, load_matrix
from .groups import FiniteGroup, left_regular

# Parseval checks switch from the pointwise identity to S = I above this n.
POINTWISE_MAX_DIM = 12


@dataclass(frozen=True)
class VectorFamily:
    """An ordered family of vectors, optionally indexed by a group."""

    vectors: tuple[BitVector, ...]
    group: FiniteGroup | None = None

    def __post_init__(self):
        if not self.vectors:
            raise DimensionError("a vector family must be nonempty")
        n = self.vectors[0].length
        if any(v.length != n for v in self.vectors):
            raise DimensionError("family vectors have different lengths")
        if self.group is not None and self.group.order != len(self.vectors):
            raise DimensionError(
                f"group of order {self.group.order} cannot index {len(self.vectors)} vectors"
            )

    @property
    def dim(self) -> int:
        return self.vectors[0].length

    @property
    def size(self) -> int:
        return len(self.vectors)

    @property
    def group_indexed(self) -> bool:
        return self.group is not None

    def __len__(self) -> int:
        return len(self.vectors)

    def __getitem__(self, j: int) -> BitVector:
        return self.vectors[j]

    @classmethod
    def from_analysis(cls, theta: BitMatrix, group: FiniteGroup | None = None) -> VectorFamily:
        return cls(tuple(theta.row_list()), group)

    @classmethod
    def from_synthesis(cls, theta_star: BitMatrix, group: FiniteGroup | None = None) -> VectorFamily:
        return cls.from_analysis(theta_star.T, group)

    @classmethod
    def standard_basis(cls, n: int, group: FiniteGroup | None = None) -> VectorFamily:
        return cls.from_analysis(BitMatrix.identity(n), group)

    def with_group(self, group: FiniteGroup | None) -> VectorFamily:
        return VectorFamily(self.vectors, group)

    def transformed(self, u: BitMatrix) -> VectorFamily:
        """The family ``{U f_j}``."""
        return VectorFamily(tuple(u.apply(v) for v in self.vectors), self.group)

    def reindexed(self, perm: Sequence[int], group: FiniteGroup | None = None) -> VectorFamily:
        """Family whose ``j``-th vector is ``f_{perm[j]}``."""
        return VectorFamily(tuple(self.vectors[i] for i in perm), group)


def load_family(path: str | Path, orientation: str = "synthesis", group: FiniteGroup | None = None) -> VectorFamily:
    """Read a bit grid whose columns (``synthesis``) or rows (``analysis``) are the vectors."""
    m = load_matrix(path)
    if orientation == "synthesis":
        return VectorFamily.from_synthesis(m, group)
    if orientation == "analysis":
        return VectorFamily.from_analysis(m, group)
    raise ValueError(f"unknown orientation {orientation!r}")


def analysis(family: VectorFamily) -> BitMatrix:
    return BitMatrix.from_rows(list(family.vectors))


def synthesis(family: VectorFamily) -> BitMatrix:
    return analysis(family).T


def frame_operator(family: VectorFamily) -> BitMatrix:
    theta = analysis(family)
    return theta.T @ theta


def gramian(family: VectorFamily) -> BitMatrix:
    theta = analysis(family)
    return theta @ theta.T


def is_frame(family: VectorFamily) -> bool:
    """True when the family spans ``Z_2^n``."""
    return analysis(family).rank() == family.dim


def is_parseval(family: VectorFamily) -> bool:
    return frame_operator(family) == BitMatrix.identity(family.dim)


def is_parseval_pointwise(family: VectorFamily) -> bool:
    """Check ``x = sum <x, f_j> f_j`` for every ``x`` (small ``n`` only)."""
    n = family.dim
    if n > POINTWISE_MAX_DIM:
        raise DimensionError(f"pointwise check is limited to n <= {POINTWISE_MAX_DIM}")
    theta = analysis(family).to_array().astype(np.int64)
    xs = ((np.arange(1 << n)[:, None] >> np.arange(n)[None, :]) & 1).astype(np.int64)
    coeffs = (xs @ theta.T) & 1
    recon = (coeffs @ theta) & 1
    return bool(np.array_equal(recon, xs))


# representations -----------------------------------------------------------


@dataclass(frozen=True)
class Representation:
    """A map ``g -> rho_g`` from group indices to ``n x n`` bit matrices."""

    group: FiniteGroup
    matrices: tuple[BitMatrix, ...]

    def __post_init__(self):
        if len(self.matrices) != self.group.order:
            raise DimensionError("need one matrix per group element")
        n = self.matrices[0].rows
        if any(m.shape != (n, n) for m in self.matrices):
            raise DimensionError("representation matrices must all be n x n")

    @property
    def dim(self) -> int:
        return self.matrices[0].rows

    def __call__(self, g: int) -> BitMatrix:
        return self.matrices[g]

    @classmethod
    def from_function(cls, group: FiniteGroup, fn: Callable[[int], BitMatrix]) -> Representation:
        return cls(group, tuple(fn(g) for g in range(group.order)))

    @classmethod
    def from_generators(cls, group: FiniteGroup, images: Mapping[int, BitMatrix]) -> Representation:
        """Extend generator images to the whole group by ``rho_{gs} = rho_g rho_s``.

        The result is only a homomorphism if the images satisfy the group's
        relations; call :meth:`is_homomorphism` to confirm.
        """
        if not images:
            raise ValueError("need at least one generator image")
        n = next(iter(images.values())).rows
        mats: dict[int, BitMatrix] = {group.identity: BitMatrix.identity(n)}
        frontier = [group.identity]
        while frontier:
            nxt = []
            for g in frontier:
                for s, m in images.items():
                    h = group.mul(g, s)
                    if h not in mats:
                        mats[h] = mats[g] @ m
                        nxt.append(h)
            frontier = nxt
        if len(mats) != group.order:
            raise ValueError("generator images do not reach every group element")
        return cls(group, tuple(mats[g] for g in range(group.order)))

    def is_homomorphism(self) -> bool:
        g = self.group
        if self.matrices[g.identity] != BitMatrix.identity(self.dim):
            return False
        arrays = np.stack([m.to_array() for m in self.matrices]).astype(np.int64)
        for a in range(g.order):
            prods = np.einsum("ij,bjk->bik", arrays[a], arrays) & 1
            if not np.array_equal(prods, arrays[g.left_translate(a)]):
                return False
        return True

    def is_unitary(self) -> bool:
        ident = BitMatrix.identity(self.dim)
        return all(m @ m.T == ident for m in self.matrices)


def left_regular_representation(group: FiniteGroup) -> Representation:
    return Representation.from_function(group, lambda g: left_regular(group, g))


def orbit_frame(rep: Representation, seed: BitVector) -> VectorFamily:
    """The family ``{rho_g f}`` in the group's element order, ``f_e = seed``."""
    if seed.length != rep.dim:
        raise DimensionError(f"seed length {seed.length} does not match dimension {rep.dim}")
    return VectorFamily(tuple(m.apply(seed) for m in rep.matrices), rep.group)


def representation_from_frame(family: VectorFamily, group: FiniteGroup | None = None) -> Representation:
    """Recover ``rho_g = Theta* Lambda_g Theta`` from a Parseval group frame.

    Raises ``NotAGroupFrameError`` if the family is not Parseval, its Gramian
    is outside the group algebra, or a recovered matrix fails to be unitary or
    to carry ``f_e`` to ``f_g``.
    """
    from .gramchar import eta_from_gram

    group = group or family.group
    if group is None:
        raise NotAGroupFrameError("family is not indexed by a group")
    if group.order != family.size:
        raise DimensionError("group order does not match family size")
    if not is_parseval(family):
        raise NotAGroupFrameError("family is not Parseval")
    if eta_from_gram(gramian(family), group) is None:
        raise NotAGroupFrameError("Gramian is not in the group algebra of the right regular representation")
    theta = analysis(family)
    theta_star = theta.T
    ident = BitMatrix.identity(family.dim)
    fe = family[group.identity]
    mats = []
    for g in range(group.order):
        rho = theta_star @ left_regular(group, g) @ theta
        if rho @ rho.T != ident:
            raise NotAGroupFrameError(f"recovered matrix for element {group.label(g)} is not unitary")
        if rho.apply(fe) != family[g]:
            raise NotAGroupFrameError(f"recovered matrix does not map f_e to f_{group.label(g)}")
        mats.append(rho)
    return Representation(group, tuple(mats))


def random_unitary(n: int, rng: np.random.Generator, rounds: int = 4) -> BitMatrix:
    """A random ``U`` with ``U U* = I``.

    Products of permutation matrices and embedded ``J_4 + I_4`` blocks (the
    4x4 all-ones matrix plus the identity, which is orthogonal over GF(2)).
    """
    u = BitMatrix.permutation(rng.permutation(n))
    for _ in range(rounds):
        if n >= 4:
            idx = rng.choice(n, size=4, replace=False)
            arr = np.eye(n, dtype=np.uint8)
            arr[np.ix_(idx, idx)] = 1 - np.eye(4, dtype=np.uint8)
            u = u @ BitMatrix.from_array(arr)
        u = u @ BitMatrix.permutation(rng.permutation(n))
    return u


# frames from Gramians --------------------------------------------------------


def _orth_split(vecs: list[BitVector], against: BitVector) -> list[BitVector]:
    """Basis of ``span(vecs) & against^perp`` (``vecs`` independent)."""
    odd = [v for v in vecs if dot(v, against)]
    even = [v for v in vecs if not dot(v, against)]
    if not odd:
        return even
    pivot = odd[0]
    return even + [v + pivot for v in odd[1:]]


def orthonormal_basis(vecs: Sequence[BitVector]) -> list[BitVector]:
    """An orthonormal basis of ``span(vecs)`` under the standard dot product.

    The span must be nondegenerate and contain an odd vector. Splits off one
    odd vector at a time; when the remainder turns alternating, an odd ``v``
    together with a hyperbolic pair ``a, b`` is rewritten as the orthonormal
    triple ``v+a, v+b, v+a+b`` and the last of these is carried forward.
    """
    basis = BitMatrix.from_rows(list(vecs)).row_basis().row_list() if vecs else []
    out: list[BitVector] = []
    while basis:
        odd = [v for v in basis if v.is_odd]
        if not odd:
            raise DimensionError("subspace has no odd vector, so no orthonormal basis exists")
        v = odd[0]
        rest = _orth_split([v] + [w for w in basis if w is not v], v)
        if not rest or any(w.is_odd for w in rest):
            out.append(v)
            basis = rest
            continue
        a = rest[0]
        partners = [w for w in rest[1:] if dot(w, a)]
        if not partners:
            raise DimensionError("subspace is degenerate")
        b = partners[0]
        out.extend([v + a, v + b])
        others = _orth_split(_orth_split(rest, a), b)
        basis = [v + a + b] + others
    return out


def frame_from_gramian(g: BitMatrix, group: FiniteGroup | None = None) -> VectorFamily:
    """A Parseval family with Gramian ``g``; ``g`` must be a symmetric idempotent.

    The columns of ``Theta`` are an orthonormal basis of ``range(g)``, so
    ``Theta* Theta = I`` and ``Theta Theta*`` is the orthogonal projection
    onto the range, which is ``g``.
    """
    if not (g.is_symmetric() and g.is_idempotent()):
        raise DimensionError("a Gramian must be symmetric and idempotent")
    cols = orthonormal_basis(g.column_list())
    theta = BitMatrix.from_columns(cols) if cols else None
    if theta is None:
        raise DimensionError("the zero matrix is not the Gramian of a frame")
    if theta @ theta.T != g:
        raise DimensionError("matrix is not a Gramian")
    return VectorFamily.from_analysis(theta, group)
