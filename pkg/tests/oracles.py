"""Slow, independent reference implementations used only by the tests.

Everything here works on plain Python ints and lists, with no use of the
packed kernels under test.
"""

from __future__ import annotations

from itertools import combinations, product


def rows_to_ints(rows) -> list[int]:
    return [sum(int(b) << j for j, b in enumerate(r)) for r in rows]


def xor_rank(vecs: list[int]) -> int:
    basis: dict[int, int] = {}
    for v in vecs:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def span_min_weight(vecs: list[int]) -> int:
    best = None
    for coeffs in product((0, 1), repeat=len(vecs)):
        w = 0
        for c, v in zip(coeffs, vecs):
            if c:
                w ^= v
        if w:
            pc = bin(w).count("1")
            best = pc if best is None else min(best, pc)
    return best


def matmul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [[sum(a[i][t] & b[t][j] for t in range(m)) & 1 for j in range(p)] for i in range(n)]


def transpose(a):
    return [list(r) for r in zip(*a)]


def convolve(mul, inv, k: int, a: list[int], b: list[int]) -> list[int]:
    out = [0] * k
    for g in range(k):
        if a[g]:
            for h in range(k):
                out[h] ^= b[mul(inv(g), h)]
    return out


def sdo_orbits(k: int, add, neg) -> list[frozenset[int]]:
    """Orbits of doubling and negation by breadth-first closure."""
    seen, out = set(), []
    for g in range(k):
        if g in seen:
            continue
        orb, todo = {g}, [g]
        while todo:
            x = todo.pop()
            for y in (add(x, x), neg(x)):
                if y not in orb:
                    orb.add(y)
                    todo.append(y)
        seen |= orb
        out.append(frozenset(orb))
    return out


def det_mod(m: list[list[int]], p: int) -> int:
    m = [r[:] for r in m]
    n, d = len(m), 1
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d = d * m[c][c] % p
        inv = pow(m[c][c], -1, p)
        for r in range(c + 1, n):
            f = m[r][c] * inv % p
            m[r] = [(x - f * y) % p for x, y in zip(m[r], m[c])]
    return d % p


def all_gl(q: int, p: int):
    """Every invertible q x q matrix over Z_p, by brute force."""
    for flat in product(range(p), repeat=q * q):
        m = [list(flat[i * q : (i + 1) * q]) for i in range(q)]
        if det_mod(m, p):
            yield m


def doubling_orbit(y: int, n: int) -> set[int]:
    out, x = set(), y % n
    while x not in out:
        out.add(x)
        x = 2 * x % n
    return out


def brute_code_weight(rows) -> int:
    """Least weight of a nonzero codeword, by spanning all combinations."""
    vecs = rows_to_ints(rows)
    basis = []
    for v in vecs:
        if xor_rank(basis + [v]) > len(basis):
            basis.append(v)
    return span_min_weight(basis)


def erasure_ok(theta_rows, erased) -> bool:
    kept = [r for i, r in enumerate(theta_rows) if i not in erased]
    return xor_rank(rows_to_ints(kept)) == len(theta_rows[0])


def subsets(k: int, m: int):
    return combinations(range(k), m)
