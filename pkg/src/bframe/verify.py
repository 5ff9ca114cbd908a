"""Named reference checks run by ``bframe verify-paper``."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable

from . import reference as ref
from .bridge import compare_groups, phi_map, product_class_of, reindex_cyclic_to_product
from .classify import action_for, canonical_subset, classify_group, classify_polya, rank_class_etas
from .codes import code_weight, find_ambiguous_error, simulate_bitflips, simulate_erasures
from .errors import BframeError, DomainError, FixtureError
from .frames import (
    Representation,
    VectorFamily,
    frame_from_gramian,
    gramian,
    is_frame,
    is_parseval,
    orbit_frame,
    representation_from_frame,
    synthesis,
)
from .gf2 import BitMatrix, BitVector, parse_matrices, parse_matrix
from .gramchar import (
    EtaFunction,
    NuFunction,
    SdoPartition,
    check_eta,
    count_unitary_classes,
    enumerate_nu_etas,
    enumerate_valid_etas,
    eta_from_gram,
    gram_from_eta,
    gram_from_nu,
)
from .groups import FiniteGroup, make_cyclic, make_zpq, parse_cayley

PASS, FAIL, DISCREPANCY = "pass", "fail", "discrepancy"


@dataclass(frozen=True)
class CheckResult:
    check: str
    name: str
    status: str
    detail: str = ""


class Fixtures:
    """Reads reference data from a directory (the packaged copy by default)."""

    FILES = (
        "gabor_theta1.mat",
        "gabor_theta2.mat",
        "z3sq_frame.mat",
        "z3sq_gram.mat",
        "z3sq_rho.mat",
        "d3.cayley",
        "hw3.cayley",
    )

    def __init__(self, directory: str | Path | None = None):
        self.directory = Path(directory) if directory is not None else None

    def text(self, name: str) -> str:
        try:
            if self.directory is None:
                return resources.files("bframe").joinpath("data").joinpath(name).read_text()
            return (self.directory / name).read_text()
        except (FileNotFoundError, IsADirectoryError) as exc:
            raise FixtureError(f"fixture {name!r} not found") from exc

    def matrix(self, name: str) -> BitMatrix:
        return parse_matrix(self.text(name))

    def matrices(self, name: str) -> list[BitMatrix]:
        return parse_matrices(self.text(name))

    def cayley(self, name: str) -> FiniteGroup:
        return parse_cayley(self.text(name), name=f"cayley:{name}")


Check = Callable[[Fixtures], list[tuple[str, bool, str]]]


def _shift_z27(fx: Fixtures):
    z27 = make_cyclic(27)
    shift = BitMatrix.permutation([(i + 1) % 9 for i in range(9)])
    rep = Representation.from_generators(z27, {1: shift})
    fam = orbit_frame(rep, BitVector.basis(9, 0))
    ident = BitMatrix.identity(9)
    three = ident.hstack(ident, ident)
    seeded = orbit_frame(rep, BitVector.from_bits(ref.SHIFT_NON_PARSEVAL_SEED))
    return [
        ("e_1 orbit has synthesis [I I I] and is Parseval", synthesis(fam) == three and is_parseval(fam), ""),
        ("printed seed spans but is not Parseval", is_frame(seeded) and not is_parseval(seeded), ""),
    ]


def _gabor_hw3(fx: Fixtures):
    hw3 = fx.cayley("hw3.cayley")
    f1 = VectorFamily.from_synthesis(fx.matrix("gabor_theta1.mat"), hw3)
    f2 = VectorFamily.from_synthesis(fx.matrix("gabor_theta2.mat"), hw3)
    out = [
        ("Theta_1 family is not Parseval", not is_parseval(f1), ""),
        ("Theta_2 family is Parseval", is_parseval(f2), ""),
    ]
    in_algebra = is_parseval(f2) and eta_from_gram(gramian(f2), hw3) is not None
    out.append(("Theta_2 Gramian lies in the right regular algebra", in_algebra, ""))
    ok, detail = False, ""
    if in_algebra:
        try:
            rho = representation_from_frame(f2)
            ok = rho.is_unitary() and rho.is_homomorphism() and all(
                rho(g).apply(f2[hw3.identity]) == f2[g] for g in range(hw3.order)
            )
        except BframeError as exc:
            detail = str(exc)
    out.append(("recovered representation is unitary with rho_g f_e = f_g", ok, detail))
    return out


def _z3sq_frame(fx: Fixtures):
    group = make_zpq(3, 2)
    fam = VectorFamily.from_analysis(fx.matrix("z3sq_frame.mat"), group)
    printed_gram = fx.matrix("z3sq_gram.mat")
    printed_rho = fx.matrices("z3sq_rho.mat")
    g = gramian(fam)
    out = [
        ("printed vectors form a Parseval frame", is_parseval(fam), ""),
        ("Gramian equals the printed matrix", g == printed_gram, ""),
        ("Gramian has rank 5", g.rank() == ref.Z3SQ_GRAM_RANK, f"rank {g.rank()}"),
    ]
    try:
        rho = representation_from_frame(fam)
        ok = rho.is_unitary() and rho.is_homomorphism()
        same = list(rho.matrices) == printed_rho
    except BframeError as exc:
        ok, same = False, False
        out.append(("representation recovered", False, str(exc)))
    out.append(("recovered rho is unitary and homomorphic", ok, ""))
    out.append(("recovered rho equals the printed matrices", same, ""))
    return out


def _d3(fx: Fixtures):
    d3 = fx.cayley("d3.cayley")
    etas = {tuple(e.support) for e in enumerate_valid_etas(d3)}
    return [("valid eta are exactly delta_e and {1, a, a^2}", etas == {(0,), (0, 1, 2)}, str(sorted(etas)))]


def _z7(fx: Fixtures):
    eta = EtaFunction.from_support(make_cyclic(7), ref.Z7_IDEMPOTENT_ASYMMETRIC)
    c = check_eta(eta)
    return [("{0,1,2,4} is idempotent but not symmetric", c.conv_idempotent and not c.symmetric, str(c))]


def _z6(fx: Fixtures):
    z6 = make_cyclic(6)
    etas = {tuple(e.support) for e in enumerate_valid_etas(z6)}
    g = gram_from_eta(EtaFunction.from_support(z6, (0, 2, 4)))
    printed = BitMatrix.from_string("\n".join(ref.Z6_GRAM))
    return [
        ("valid eta are exactly delta_0 and {0,2,4}", etas == {(0,), (0, 2, 4)}, str(sorted(etas))),
        ("R_0 + R_2 + R_4 equals the printed Gramian", g == printed, ""),
    ]


def _z17(fx: Fixtures):
    z17 = make_cyclic(17)
    part = SdoPartition(z17)
    orbits = {frozenset(o) for o in part.orbits[1:]}
    want = {frozenset(ref.Z17_DELTA_1), frozenset(ref.Z17_DELTA_3)}
    n = len(enumerate_nu_etas(part))
    return [
        ("SDOs are Delta_1 and Delta_3", orbits == want, ""),
        ("exactly four Gramians", n == 4 and count_unitary_classes(part) == 4, f"{n}"),
    ]


def _table_rows(fx: Fixtures, desc: str, group, rows):
    cat = classify_group(group)
    cat.fill_weights()
    by_mask = {c.canonical_mask: c for c in cat.classes}
    out, used = [], set()
    for rank, weight, j_prod, _ in rows:
        mask = product_class_of(cat, j_prod)
        c = by_mask[mask]
        got = (c.rank, c.code_weight)
        name = f"({rank},{weight}) J={{{','.join(j_prod)}}}"
        if got == (rank, weight):
            out.append((name, True, ""))
        elif ref.KNOWN_DISCREPANCIES.get((desc, rank, weight)) == c.code_weight and c.rank == rank:
            out.append((name, DISCREPANCY, f"computed ({c.rank},{c.code_weight})"))
        else:
            out.append((name, False, f"computed {got}"))
        used.add(mask)
    out.append(("printed rows are pairwise inequivalent", len(used) == len(rows), f"{len(used)} classes"))
    return out, cat


def _z3sq_table(fx: Fixtures):
    out, cat = _table_rows(fx, "zpq:3,2", make_zpq(3, 2), ref.ZPQ_3_2_ROWS)
    out.append(("five classes", len(cat) == 5, f"{len(cat)}"))
    out += _cyclic_pairs(3, 2, ref.ZPQ_3_2_ROWS)
    return out


def _z3cube_table(fx: Fixtures):
    out, cat = _table_rows(fx, "zpq:3,3", make_zpq(3, 3), ref.ZPQ_3_3_ROWS)
    pairs = sorted((c.rank, c.code_weight) for c in cat.classes)
    want = sorted([(r, w) for r, w, _, _ in ref.ZPQ_3_3_ROWS] + [(1, 27), (27, 1)])
    out.append(("thirty classes with the printed (rank, weight) pairs", pairs == want, f"{len(cat)}"))
    n27 = len(classify_group(make_cyclic(27)))
    out.append(("eight Z_27 classes", n27 == 8, f"{n27}"))
    out += _cyclic_pairs(3, 3, ref.ZPQ_3_3_ROWS)
    return out


def _cyclic_pairs(p: int, q: int, rows):
    """Each printed cyclic J has the row's rank and weight and lands in the row's product class."""
    rows_by_cyc = {tuple(r[3]): r for r in rows if r[3] is not None}
    compared = {tuple(r.J_cyclic): r for r in compare_groups(p, q) if r.J_cyclic is not None}
    pm = phi_map(p, q)
    cpart = SdoPartition(pm.cyclic)
    ppart, paction = action_for(pm.product)
    out = []
    for j_cyc, (rank, weight, j_prod, _) in rows_by_cyc.items():
        eta = NuFunction.from_elements(cpart, j_cyc).to_eta()
        res = code_weight(gram_from_eta(eta))
        moved = reindex_cyclic_to_product(eta)
        target = canonical_subset(ppart.nu_mask_from_eta(moved) >> 1, paction)
        idx = [pm.product.index(ref.parse_element(e)) for e in j_prod]
        own = canonical_subset(NuFunction.from_elements(ppart, idx).mask >> 1, paction)
        status: bool | str = target == own and j_cyc in compared
        if status and (res.rank, res.weight) != (rank, weight):
            known = ref.KNOWN_DISCREPANCIES.get((f"zpq:{p},{q}", rank, weight))
            status = DISCREPANCY if known == res.weight and res.rank == rank else False
        name = f"cyclic J={{{','.join(map(str, j_cyc))}}} pairs with ({rank},{weight})"
        out.append((name, status, f"computed ({res.rank},{res.weight})"))
    return out


def _z5cube_counts(fx: Fixtures):
    part, action = action_for(make_zpq(5, 3))
    counts = classify_polya(part, action)  # index m is |J| = m + 1
    return [("class counts by number of summands", tuple(counts) == ref.Z5CUBE_CLASS_COUNTS, f"total {sum(counts)}")]


def _z5cube_table(fx: Fixtures):
    out = []
    try:
        rows = compare_groups(5, 3, ref.ZPQ_5_3_ROWS)
        out.append(("six best-performer rows re-derived", len(rows) == 6, ""))
    except DomainError as exc:
        out.append(("six best-performer rows re-derived", False, str(exc)))
    return out


def _z5cube_maximal(fx: Fixtures):
    group = make_zpq(5, 3)
    _, action = action_for(group)
    out = []
    for rank, weight, *_ in ref.ZPQ_5_3_ROWS:
        etas = rank_class_etas(group, rank, action)
        best = max(code_weight(gram_from_eta(e)).weight for e in etas)
        out.append((f"weight {weight} is maximal at rank {rank}", best == weight, f"{len(etas)} classes, best {best}"))
    return out


def _reindex(fx: Fixtures):
    out = []
    for p, q in ((3, 2), (3, 3), (5, 3)):
        etas = enumerate_nu_etas(SdoPartition(make_cyclic(p**q)))
        ok = all(check_eta(reindex_cyclic_to_product(e)).valid for e in etas)
        out.append((f"all {len(etas)} cyclic eta of Z_{p ** q} reindex to valid eta", ok, ""))
    return out


def _robustness_z9(fx: Fixtures):
    z9 = make_cyclic(9)
    g = gram_from_eta(EtaFunction.from_support(z9, (0, 3, 6)))
    fam = frame_from_gramian(g, z9)
    e2, e3 = simulate_erasures(fam, 2), simulate_erasures(fam, 3)
    flips = simulate_bitflips(fam, 1, trials=10_000, seed=0)
    amb = find_ambiguous_error(fam, 2)
    return [
        ("weight 3", code_weight(g).weight == 3, ""),
        ("every 2-erasure pattern is recoverable", e2.all_pass, f"{e2.passed}/{e2.patterns}"),
        ("some 3-erasure pattern is not", e3.witness is not None, f"witness {e3.witness}"),
        ("single flips always decode", flips.recovered == flips.trials, f"{flips.recovered}/{flips.trials}"),
        ("an ambiguous double flip exists", amb is not None, f"{amb.error if amb else None}"),
    ]


CHECKS: dict[str, tuple[str, Check]] = {
    "shift-z27": ("cyclic shift frames of Z_27 on Z_2^9", _shift_z27),
    "gabor-hw3": ("Heisenberg group frames from the Gabor fixtures", _gabor_hw3),
    "z3sq-frame": ("printed Z_3^2 frame, Gramian and representation", _z3sq_frame),
    "d3": ("coefficient functions of D_3", _d3),
    "z7": ("idempotent but asymmetric eta on Z_7", _z7),
    "z6": ("Gramians of Z_6", _z6),
    "z17": ("Z_17 orbits and Gramians", _z17),
    "z3sq-table": ("Z_3^2 against Z_9", _z3sq_table),
    "z3cube-table": ("Z_3^3 against Z_27", _z3cube_table),
    "z5cube-counts": ("Z_5^3 class counts", _z5cube_counts),
    "z5cube-table": ("Z_5^3 against Z_125 best performers", _z5cube_table),
    "z5cube-maximal": ("Z_5^3 best performers are maximal at their rank", _z5cube_maximal),
    "reindex": ("cyclic eta pulled back along phi stay valid", _reindex),
    "robustness-z9": ("erasure and bit-flip behaviour of the Z_9 weight-3 frame", _robustness_z9),
}


def run_checks(only: list[str] | None = None, fixtures: str | Path | None = None) -> list[CheckResult]:
    names = list(CHECKS) if not only else only
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise DomainError(f"unknown check(s): {', '.join(unknown)}; known: {', '.join(CHECKS)}")
    fx = Fixtures(fixtures)
    if fixtures is not None:
        missing = [f for f in Fixtures.FILES if not (Path(fixtures) / f).is_file()]
        if missing:
            raise FixtureError(f"missing fixture(s) in {fixtures}: {', '.join(missing)}")
    results = []
    for name in names:
        for label, ok, detail in CHECKS[name][1](fx):
            status = DISCREPANCY if ok == DISCREPANCY else (PASS if ok else FAIL)
            results.append(CheckResult(name, label, status, detail))
    return results
