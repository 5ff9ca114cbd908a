"""Gramians and frames as binary codes.

The code of a Gramian ``G`` is its range (equivalently row space, since ``G``
is symmetric). Its weight ``w`` is the least Hamming weight of a nonzero
codeword; a frame with that code survives ``w - 1`` erasures and corrects
``(w - 1) // 2`` bit-flips.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from itertools import combinations

import numpy as np

from . import kernels
from .errors import CapacityError, DegenerateCodeError, UnsupportedError
from .frames import VectorFamily, analysis
from .gf2 import BitMatrix, BitVector

ENUMERATION_MAX_RANK = 26
DUAL_MAX_CORANK = 26
DUAL_MAX_WEIGHT = 8
ERASURE_EXHAUSTIVE_CAP = 10**7
DECODE_MAX_DIM = 26


@dataclass(frozen=True)
class WeightResult:
    weight: int
    strategy: str
    witness: BitVector
    rank: int
    length: int


def _enumeration(basis: BitMatrix) -> tuple[int, BitVector]:
    w, combo = kernels.min_weight_span(basis.words)
    vec = np.zeros(basis.words.shape[1], dtype=np.uint64)
    for i in range(basis.rows):
        if combo >> i & 1:
            vec ^= basis.words[i]
    return int(w), BitVector(vec, basis.cols)


def _column_ints(h: BitMatrix) -> np.ndarray:
    """Columns of ``h`` (at most 63 rows) as integers."""
    arr = h.to_array().astype(np.int64)
    weights = np.int64(1) << np.arange(h.rows, dtype=np.int64)
    return (arr * weights[:, None]).sum(axis=0)


def _subsets(k: int, a: int, cols: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """All ``a``-subsets of ``range(k)`` (lex order) with the XOR of their columns."""
    dtype = np.uint8 if k <= 256 else np.uint16
    if a == 0:
        return np.zeros((1, 0), dtype=dtype), np.zeros(1, dtype=np.int64)
    combos = np.arange(k, dtype=dtype)[:, None]
    sums = cols.copy()
    for _ in range(a - 1):
        last = combos[:, -1].astype(np.int64)
        counts = k - 1 - last
        total = int(counts.sum())
        if total == 0:
            return np.zeros((0, combos.shape[1] + 1), dtype=dtype), np.zeros(0, dtype=np.int64)
        starts = np.repeat(np.cumsum(counts) - counts, counts)
        nxt = np.arange(total) - starts + np.repeat(last + 1, counts)
        combos = np.hstack([np.repeat(combos, counts, axis=0), nxt[:, None].astype(dtype)])
        sums = np.repeat(sums, counts) ^ cols[nxt]
    return combos, sums


def _dual_search(basis: BitMatrix, max_weight: int) -> tuple[int, BitVector] | None:
    """Smallest set of dependent columns of a kernel basis, by meet in the middle.

    A vector ``x`` lies in the code iff ``H x = 0`` where the rows of ``H``
    span the dual; so the code weight is the size of the smallest set of
    columns of ``H`` summing to zero. For target ``d`` we split ``d = a + b``
    with ``a = d // 2`` and look for an ``a``-subset and a ``b``-subset with
    equal sums. Since no set of fewer than ``d`` columns sums to zero, such a
    pair is disjoint (for ``a == b``, any two distinct ``a``-subsets with
    equal sums are).
    """
    k = basis.cols
    h = basis.nullspace()
    if h.rows == 0:
        return None
    cols = _column_ints(h)
    for d in range(1, min(max_weight, k) + 1):
        a, b = d // 2, d - d // 2
        ca, sa = _subsets(k, a, cols)
        if a == b:
            order = np.argsort(sa, kind="stable")
            s = sa[order]
            dup = np.flatnonzero(s[1:] == s[:-1])
            if dup.size == 0:
                continue
            i, j = order[dup[0]], order[dup[0] + 1]
            support = set(ca[i].tolist()) ^ set(ca[j].tolist())
        else:
            cb, sb = _subsets(k, b, cols)
            if a == 0:
                hits = np.flatnonzero(sb == 0)
                if hits.size == 0:
                    continue
                support = set(cb[hits[0]].tolist())
            else:
                common, ia, ib = np.intersect1d(sa, sb, assume_unique=False, return_indices=True)
                if common.size == 0:
                    continue
                support = set(ca[ia[0]].tolist()) ^ set(cb[ib[0]].tolist())
        bits = np.zeros(k, dtype=np.uint8)
        bits[sorted(support)] = 1
        return len(support), BitVector.from_bits(bits)
    return None


def code_weight(
    g: BitMatrix,
    strategy: str = "auto",
    max_rank: int = ENUMERATION_MAX_RANK,
    max_corank: int = DUAL_MAX_CORANK,
    max_weight: int = DUAL_MAX_WEIGHT,
) -> WeightResult:
    """Least weight of a nonzero vector in the row space of ``g``.

    ``strategy`` is ``"enumerate"`` (all codewords), ``"dual"`` (dependent
    columns of a kernel basis) or ``"auto"``.
    """
    if strategy not in ("auto", "enumerate", "dual"):
        raise ValueError(f"unknown strategy {strategy!r}")
    basis = g.row_basis()
    r, k = basis.rows, g.cols
    if r == 0:
        raise DegenerateCodeError("the zero matrix has no code weight")
    corank = k - r
    can_a = r <= max_rank
    can_b = corank <= max_corank

    def run_a() -> WeightResult:
        w, v = _enumeration(basis)
        return WeightResult(w, "enumerate", v, r, k)

    def run_b() -> WeightResult | None:
        found = _dual_search(basis, max_weight)
        if found is None:
            return None
        return WeightResult(found[0], "dual", found[1], r, k)

    if strategy == "enumerate":
        if not can_a:
            raise UnsupportedError(f"rank {r} exceeds the enumeration cap {max_rank}")
        return run_a()
    if corank == 0:
        # the full space contains every unit vector
        return WeightResult(1, "dual", BitVector.basis(k, 0), r, k)
    if strategy == "dual":
        if not can_b:
            raise UnsupportedError(f"co-rank {corank} exceeds the dual-search cap {max_corank}")
        res = run_b()
        if res is None:
            raise UnsupportedError(f"no codeword of weight <= {max_weight} (rank {r}, co-rank {corank})")
        return res
    if can_b and (corank < r or not can_a):
        res = run_b()
        if res is not None:
            return res
    if can_a:
        return run_a()
    raise UnsupportedError(
        f"no strategy applies: rank {r} > {max_rank} and dual search found nothing up to "
        f"weight {max_weight} (co-rank {corank})"
    )


@dataclass
class CodeReport:
    length: int
    dim: int
    weight: int
    erasure_max: int
    bitflip_max: int
    strategy: str
    witnesses: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)


def robustness_from_weight(w: int) -> tuple[int, int]:
    return w - 1, (w - 1) // 2


def robustness(g: BitMatrix, **kwargs) -> CodeReport:
    res = code_weight(g, **kwargs)
    e, b = robustness_from_weight(res.weight)
    witness = "".join(map(str, res.witness.bits()))
    return CodeReport(res.length, res.rank, res.weight, e, b, res.strategy, [witness])


# channel simulation -------------------------------------------------------


@dataclass
class ErasureReport:
    m: int
    mode: str
    patterns: int
    passed: int
    failed: int
    witness: list[int] | None

    @property
    def all_pass(self) -> bool:
        return self.failed == 0


def simulate_erasures(
    family: VectorFamily,
    m: int,
    mode: str = "exhaustive",
    trials: int = 10_000,
    seed: int = 0,
) -> ErasureReport:
    """Check that ``E Theta`` keeps full column rank for erasure patterns of size ``m``.

    ``witness`` is the first failing pattern (erased row indices), if any.
    """
    theta = analysis(family)
    k, n = theta.rows, theta.cols
    if not 0 <= m <= k:
        raise ValueError(f"cannot erase {m} of {k} coordinates")
    if mode == "exhaustive":
        total = math.comb(k, m)
        if total > ERASURE_EXHAUSTIVE_CAP:
            raise CapacityError(f"C({k},{m}) = {total} patterns exceed {ERASURE_EXHAUSTIVE_CAP}")
        patterns = combinations(range(k), m)
    elif mode == "sampled":
        rng = np.random.default_rng(seed)
        total = trials
        patterns = (tuple(sorted(rng.choice(k, size=m, replace=False).tolist())) for _ in range(trials))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    passed = failed = 0
    witness = None
    for pat in patterns:
        keep = np.setdiff1d(np.arange(k), np.asarray(pat, dtype=np.intp))
        if kernels.rank(theta.words[keep], n) == n:
            passed += 1
        else:
            failed += 1
            if witness is None:
                witness = list(pat)
    return ErasureReport(m, mode, total, passed, failed, witness)


def codeword_table(theta: BitMatrix) -> np.ndarray:
    """Packed words of ``Theta x`` for every ``x``; row ``i`` is ``x = i``."""
    n = theta.cols
    if n > DECODE_MAX_DIM:
        raise CapacityError(f"2^{n} codewords exceed the decoding cap 2^{DECODE_MAX_DIM}")
    cols = theta.T.words  # column j of Theta as packed k-bit rows
    table = np.zeros((1 << n, cols.shape[1]), dtype=np.uint64)
    for j in range(n):
        table[1 << j : 2 << j] = table[: 1 << j] ^ cols[j]
    return table


@dataclass
class BitflipReport:
    m: int
    trials: int
    recovered: int
    seed: int

    @property
    def rate(self) -> float:
        return self.recovered / self.trials if self.trials else 1.0


def _decode(table: np.ndarray, received: np.ndarray) -> int | None:
    dist = kernels.popcount_rows(table ^ received)
    best = int(dist.min())
    hits = np.flatnonzero(dist == best)
    return int(hits[0]) if hits.size == 1 else None


def simulate_bitflips(family: VectorFamily, m: int, trials: int = 10_000, seed: int = 0) -> BitflipReport:
    """Random messages through up to ``m`` flips, decoded to the nearest codeword.

    Each trial draws ``x`` uniformly, a flip count uniformly from ``0..m`` and
    the flipped positions uniformly. Distance ties count as failures.
    """
    theta = analysis(family)
    k, n = theta.rows, theta.cols
    table = codeword_table(theta)
    rng = np.random.default_rng(seed)
    nwords = table.shape[1]
    recovered = 0
    for _ in range(trials):
        x = int(rng.integers(0, 1 << n))
        flips = int(rng.integers(0, m + 1))
        err = np.zeros(nwords * 64, dtype=np.uint8)
        if flips:
            err[rng.choice(k, size=flips, replace=False)] = 1
        err_words = np.packbits(err, bitorder="little").view("<u8").astype(np.uint64)
        if _decode(table, table[x] ^ err_words) == x:
            recovered += 1
    return BitflipReport(m, trials, recovered, seed)


@dataclass
class AmbiguousError:
    error: list[int]
    codeword: BitVector


def find_ambiguous_error(family: VectorFamily, m: int) -> AmbiguousError | None:
    """A weight-``m`` error that nearest-codeword decoding cannot undo.

    By linearity it suffices to corrupt the zero codeword: the error ``eps``
    defeats decoding iff some nonzero codeword is at distance ``<= m`` from it.
    """
    theta = analysis(family)
    k = theta.rows
    table = codeword_table(theta)[1:]
    for pat in combinations(range(k), m):
        bits = np.zeros(table.shape[1] * 64, dtype=np.uint8)
        bits[list(pat)] = 1
        eps = np.packbits(bits, bitorder="little").view("<u8").astype(np.uint64)
        dist = kernels.popcount_rows(table ^ eps)
        hit = np.flatnonzero(dist <= m)
        if hit.size:
            return AmbiguousError(list(pat), BitVector(table[hit[0]], k))
    return None
