"""Acceptance checks shared by the test suite and ``qgrade selftest``.

Each check returns a :class:`CriterionResult`; none of them raise on a
mathematical failure, so a full run always reports every criterion.
"""

from __future__ import annotations

import itertools
import random
import time
from collections import Counter
from dataclasses import dataclass
from typing import Callable

from .abelgroup import (
    INFINITE,
    AbelianGroup,
    GroupElement,
    GroupHom,
    adjoin_square_root,
    direct_product,
    quotient_by,
    square_roots,
)
from .exactfield import QQ, Matrix
from .grading import (
    grading_from_commuting_automorphisms,
    operator_matrix,
    verify_map_homogeneous,
)
from .matgrad import (
    catalog_field,
    classify_type,
    elementary_grading,
    extended_associative,
    fine_catalog,
    grading_on_basis,
    pauli_grading,
    product_map,
    restrict_to_even_part,
)
from .qgrad import (
    ExtensionError,
    QAutomorphism,
    decide_iso_extensions,
    extend_assoc,
    extend_automorphism,
    extend_to_Q,
    extension_shifts,
    fine_on_Q,
    kernel_scalings,
    parity_automorphism,
    push_even,
)
from .superalg import (
    build_matrix_model_Q,
    build_Q,
    build_sl,
    super_anticommutativity_violations,
    super_jacobi_violations,
    supercommutativity_violations,
)

__all__ = ["CriterionResult", "CRITERIA", "run_all", "invariant_chains", "brute_group_signature"]

DEFAULT_SEED = 20240607


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d}. {self.title} ({self.seconds:.2f}s): {self.detail}"


# ------------------------------------------------------------ shared helpers


def invariant_chains(max_order: int):
    """All invariant-factor lists d1 | d2 | ... with product <= max_order."""
    def extend(chain, prod):
        yield list(chain)
        last = chain[-1] if chain else 1
        # next factor must be a multiple of the previous one
        k = last if chain else 2
        while prod * k <= max_order:
            if k >= 2 and k % last == 0:
                yield from extend(chain + [k], prod * k)
            k += 1

    seen = set()
    for c in extend([], 1):
        t = tuple(c)
        if t not in seen:
            seen.add(t)
            yield t


def brute_group_signature(elements, add, zero) -> tuple:
    """Sorted multiset of element orders; determines a finite abelian group."""
    orders = []
    for x in elements:
        k, y = 1, x
        while y != zero:
            y = add(y, x)
            k += 1
        orders.append(k)
    return tuple(sorted(Counter(orders).items()))


def _signature(G: AbelianGroup) -> tuple:
    """Order statistics of a canonical finite group, via tuple arithmetic."""
    inv = G.invariants
    tuples = list(itertools.product(*(range(d) for d in inv)))
    return brute_group_signature(
        tuples, lambda a, b: tuple((x + y) % d for x, y, d in zip(a, b, inv)), tuple(0 for _ in inv)
    )


def _sl3_transpose():
    F = QQ
    sl3 = build_sl(3, F)
    op = operator_matrix(sl3, lambda x: -x.T)
    return grading_from_commuting_automorphisms(sl3, [op], [2])


def _mplus2_z_z2(F):
    G = AbelianGroup.parse("Z x Z2")
    E12 = Matrix.unit(F, 2, 0, 1)
    E21 = Matrix.unit(F, 2, 1, 0)
    H = Matrix.diag(F, [1, -1])
    I = Matrix.identity(F, 2)
    degs = [G.element(c) for c in ((1, 0), (-1, 0), (0, 1), (0, 0))]
    return grading_on_basis("jordan", F, [E12, E21, H, I], G, degs, ["E12", "E21", "H", "I"])


def _box(G: AbelianGroup, radius: int = 2):
    free = itertools.product(range(-radius, radius + 1), repeat=G.free_rank)
    for f in free:
        for t in itertools.product(*(range(d) for d in G.invariants)):
            yield G.element(list(f) + list(t))


def _timed(number: int, title: str, fn: Callable[[], tuple[bool, str]]) -> CriterionResult:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure of the criterion, not of the runner
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CriterionResult(number, title, ok, detail, time.perf_counter() - t0)


# ------------------------------------------------------------------ criteria


def c1_model_oracle() -> tuple[bool, str]:
    t0 = time.perf_counter()
    bad = []
    for flavor in ("lie", "jordan"):
        for n in (2, 3):
            pair = build_Q(n, QQ, flavor)
            model = build_matrix_model_Q(n, QQ, flavor).algebra
            for i in range(pair.dimension):
                for j in range(pair.dimension):
                    if sorted(pair.mul(i, j)) != sorted(model.mul(i, j)):
                        bad.append((flavor, n, i, j))
    dt = time.perf_counter() - t0
    return not bad and dt < 5, f"{len(bad)} mismatching pairs in {dt:.2f}s (limit 5s)"


def c2_super_identities() -> tuple[bool, str]:
    t0 = time.perf_counter()
    lie = build_Q(2, QQ, "lie")
    jor = build_Q(2, QQ, "jordan")
    a = len(super_anticommutativity_violations(lie))
    j = len(super_jacobi_violations(lie))
    s = len(supercommutativity_violations(jor))
    dt = time.perf_counter() - t0
    return a == j == s == 0 and dt < 10, (
        f"anticommutativity {a}, Jacobi {j}, supercommutativity {s} violations in {dt:.2f}s"
    )


def c3_product_maps() -> tuple[bool, str]:
    sl = classify_type(_sl3_transpose(), "lie")
    rep_j = verify_map_homogeneous(product_map(extended_associative(sl.grading, "lie", sl.h), 1), sl.h)
    F = catalog_field(2, "jordan")
    jor = classify_type(_mplus2_z_z2(F), "jordan")
    rep_l = verify_map_homogeneous(product_map(extended_associative(jor.grading, "jordan"), -1), jor.h)
    ok = (sl.type_tag == jor.type_tag == "II" and rep_j.ok and rep_l.ok
          and jor.h == jor.group.element((0, 1)))
    return ok, f"J on sl(3), h={sl.h}: {rep_j}; L on M2(+), h={jor.h}: {rep_l}"


def c4_theorem_extension() -> tuple[bool, str]:
    positives = negatives = 0
    failures = []
    for flavor in ("lie", "jordan"):
        for n in (2, 3):
            for ep in fine_catalog(n, flavor):
                H, emb, _ = adjoin_square_root(ep.group, ep.h)
                for e in (ep, push_even(ep, emb)):
                    for d in extension_shifts(e):
                        rep = extend_to_Q(e, d, diagnostic=True)
                        positives += 1
                        if not rep.ok:
                            failures.append(f"{flavor}{n} {ep.name} d={d}: {rep}")
                    if n != 2:
                        continue
                    for d in _box(e.group, 1):
                        if 2 * d == e.h:
                            continue
                        rep = extend_to_Q(e, d, diagnostic=True)
                        negatives += 1
                        if rep.by_sector().get("odd-odd", 0) < 1:
                            failures.append(f"{flavor}{n} {ep.name} d={d}: no odd-odd violation")
    return not failures and positives and negatives, (
        f"{positives} valid shifts verified, {negatives} invalid shifts rejected"
        + (f"; failures: {failures[:3]}" if failures else "")
    )


def c5_no_shifts() -> tuple[bool, str]:
    ep = classify_type(_sl3_transpose(), "lie")
    Z2 = ep.group
    V = AbelianGroup.parse("Z2^2")
    to_v = GroupHom(Z2, V, (V.element((1, 0)),))
    Z4 = AbelianGroup.cyclic(4)
    to_4 = GroupHom(Z2, Z4, (Z4.element((2,)),))
    e_v, e_4 = push_even(ep, to_v), push_even(ep, to_4)
    s_v = extension_shifts(e_v)
    s_4 = extension_shifts(e_4)
    ok = (e_v.h == V.element((1, 0)) and s_v == []
          and [x.coords for x in s_4] == [(1,), (3,)]
          and all(extend_to_Q(e_4, d).verified for d in s_4))
    return ok, f"shifts over Z2^2 (h={e_v.h}): {s_v}; over Z4 (h={e_4.h}): {[str(x) for x in s_4]}"


def c6_iso_rule() -> tuple[bool, str]:
    F = catalog_field(2, "lie")
    T = AbelianGroup.free(2)
    P, (inj, _) = direct_product(T, AbelianGroup.cyclic(2))
    g = [T.identity] + T.generators()
    ep = push_even(restrict_to_even_part(elementary_grading(T, g, F), "lie"), inj)
    c, d = extension_shifts(ep)[:2]
    a, b = extend_to_Q(ep, c), extend_to_Q(ep, d)
    r1 = decide_iso_extensions(a, b)
    r2 = decide_iso_extensions(a, a, witness=("inner", Matrix.identity(F, 3)))
    swapped = push_even(restrict_to_even_part(elementary_grading(T, [g[1], g[0], g[2]], F), "lie"), inj)
    b2 = extend_to_Q(swapped, c)
    perm = Matrix(F, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    r3 = decide_iso_extensions(a, b2, witness=("inner", perm))
    degree_ok = True
    for res, target in ((r2, a), (r3, b2)):
        for j, col in enumerate(res.automorphism.columns()):
            for i, x in enumerate(col):
                if x and target.grading.degrees[i] != a.grading.degrees[j]:
                    degree_ok = False
    ok = r1.verdict == "not" and r2.verdict == r3.verdict == "isomorphic" and degree_ok
    return ok, f"c!=d: {r1.verdict}; identity: {r2.verdict}; permutation: {r3.verdict}"


def c7_assoc_extension() -> tuple[bool, str]:
    F = QQ
    pa = pauli_grading(2, F)
    P, (inj, _) = direct_product(pa.group, AbelianGroup.cyclic(2))
    from .grading import coarsen

    gr = coarsen(pa, inj)
    cs = [c for c in P.elements() if (2 * c).is_identity()]
    verified = sum(1 for c in cs if extend_assoc(gr, c).verified)
    P4, (inj4, _) = direct_product(pa.group, AbelianGroup.cyclic(4))
    c4 = P4.element((0, 0, 1))
    try:
        extend_assoc(coarsen(pa, inj4), c4)
        rejected = False
    except ExtensionError:
        rejected = True
    return verified == len(cs) == 8 and rejected, (
        f"{verified}/{len(cs)} order<=2 shifts verified; order-4 shift rejected: {rejected}"
    )


def c8_universal_groups() -> tuple[bool, str]:
    jordan = sorted(str(fine_on_Q(ep)[1]) for ep in fine_catalog(2, "jordan"))
    want_j = sorted(str(AbelianGroup.parse(s)) for s in ("Z2^2 x Z4", "Z x Z4"))
    lie = {ep.name: fine_on_Q(ep)[1] for ep in fine_catalog(2, "lie")}
    ok = (jordan == want_j
          and lie["cartan"] == AbelianGroup.parse("Z^2 x Z2")
          and lie["pauli3"] == AbelianGroup.parse("Z3^2 x Z2"))
    return ok, f"Jordan: {jordan}; Lie Cartan: {lie['cartan']}, Pauli: {lie['pauli3']}"


def _brute_adjoin(G: AbelianGroup, h: GroupElement) -> tuple:
    """Order statistics of T[h^(1/2)] realized on T x {0, 1}, T the torsion part."""
    inv = G.invariants
    ht = h.torsion

    def tadd(a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, inv))

    def add(x, y):
        s, g = x[1] + y[1], tadd(x[0], y[0])
        return (tadd(g, ht), 0) if s == 2 else (g, s)

    elems = [(t, e) for t in itertools.product(*(range(d) for d in inv)) for e in (0, 1)]
    return G.free_rank, brute_group_signature(elems, add, (tuple(0 for _ in inv), 0))


def c9_adjoin_law(seed: int = DEFAULT_SEED) -> tuple[bool, str]:
    rng = random.Random(seed)
    bad = []
    squares = 0
    for _ in range(50):
        G = AbelianGroup.from_factors(rng.randint(0, 2), [rng.choice((2, 4)) for _ in range(rng.randint(0, 3))])
        h = rng.choice(G.elements_of_order_dividing(2))
        H, emb, d = adjoin_square_root(G, h)
        if square_roots(h):
            want, _ = direct_product(G, AbelianGroup.cyclic(2))
        else:
            Gbar, _ = quotient_by(h)
            want, _ = direct_product(Gbar, AbelianGroup.cyclic(4))
        free, sig = _brute_adjoin(G, h)
        brute_ok = H.free_rank == free and _signature(AbelianGroup(0, H.invariants)) == sig
        squares += bool(square_roots(h))
        if H != want or not brute_ok or 2 * d != emb(h):
            bad.append(f"{G}, h={h}: got {H}, expected {want}")
    return not bad, (f"50 random cases ({squares} with h a square), {len(bad)} mismatches"
                     + (f": {bad[:2]}" if bad else ""))


def c10_automorphisms() -> tuple[bool, str]:
    parts = []
    ok = True
    for flavor in ("lie", "jordan"):
        F = catalog_field(2, flavor)
        Q = build_Q(2, F, flavor)
        phi = extend_automorphism(Q, "outer")
        ups = parity_automorphism(Q)
        lams = sorted(int(x) for x in kernel_scalings(Q))
        want = sorted(int(F(x)) for x in (1, -1))
        # direct check of the scalings, independent of the exponent analysis
        direct = sorted(
            int(x) for x in F.elements() if x and QAutomorphism(
                Q, Matrix.diag(F, [x if p else 1 for p in Q.parity]), "inner", x).is_automorphism()
        )
        this = (phi**2 == ups and (phi**4).is_identity() and phi.lam * phi.lam == -1
                and lams == want == direct)
        ok &= this
        parts.append(f"{flavor}: phi^2=upsilon {phi**2 == ups}, phi^4=id {(phi**4).is_identity()}, "
                     f"lambda in {[F.format(F(x)) for x in lams]}")
    return ok, "; ".join(parts)


def c11_group_oracle() -> tuple[bool, str]:
    """Compare against plain tuple arithmetic modulo the invariants."""
    groups = checked = 0
    bad = []
    for inv in invariant_chains(64):
        G = AbelianGroup(0, inv)
        groups += 1
        tuples = list(itertools.product(*(range(d) for d in inv)))
        zero = tuple(0 for _ in inv)

        def add(a, b, inv=inv):
            return tuple((x + y) % d for x, y, d in zip(a, b, inv))

        doubles: dict = {}
        for t in tuples:
            doubles.setdefault(add(t, t), []).append(t)
        for t in tuples:
            checked += 1
            h = G.element(t)
            multiples, y = [zero], t
            while y != zero:
                multiples.append(y)
                y = add(y, t)
            if h.order() != len(multiples):
                bad.append(f"order of {t} in {G}")
            if [r.coords for r in square_roots(h)] != sorted(doubles.get(t, [])):
                bad.append(f"square roots of {t} in {G}")
            Qg, proj = quotient_by(h)
            cosets: dict = {}
            consistent = True
            for x in tuples:
                key = frozenset(add(x, m) for m in multiples)
                img = proj(G.element(x)).coords
                if cosets.setdefault(key, img) != img:
                    consistent = False
            if not consistent or len(set(cosets.values())) != len(cosets) or Qg.order() != len(cosets):
                bad.append(f"quotient of {G} by {t}")
                continue
            sig = brute_group_signature(
                list(cosets), lambda a, b: frozenset(add(x, next(iter(b))) for x in a),
                frozenset(multiples),
            )
            if sig != _signature(Qg):
                bad.append(f"quotient type of {G} by {t}")
    if AbelianGroup.parse("Z x Z2").element((1, 1)).order() != INFINITE:
        bad.append("infinite order")
    return not bad, (f"{groups} groups, {checked} elements: orders, square roots and quotients; "
                     f"{len(bad)} mismatches" + (f": {bad[:3]}" if bad else ""))


CRITERIA: list[tuple[int, str, Callable]] = [
    (1, "pair model equals block-matrix model", c1_model_oracle),
    (2, "super identities on Q(2)", c2_super_identities),
    (3, "J and L are homogeneous of degree h", c3_product_maps),
    (4, "extensions exist exactly for d^2 = h", c4_theorem_extension),
    (5, "extension shifts over Z2^2 and Z4", c5_no_shifts),
    (6, "isomorphism rule for extensions", c6_iso_rule),
    (7, "gradings on M2 + uM2", c7_assoc_extension),
    (8, "universal groups of fine lifts", c8_universal_groups),
    (9, "structure of G[h^(1/2)]", c9_adjoin_law),
    (10, "automorphism extensions and kernel", c10_automorphisms),
    (11, "group operations against enumeration", c11_group_oracle),
]


def run_criterion(number: int, seed: int = DEFAULT_SEED) -> CriterionResult:
    for num, title, fn in CRITERIA:
        if num == number:
            if fn is c9_adjoin_law:
                return _timed(num, title, lambda: fn(seed))
            return _timed(num, title, fn)
    raise KeyError(number)


def run_all(seed: int = DEFAULT_SEED) -> list[CriterionResult]:
    return [run_criterion(num, seed) for num, _, _ in CRITERIA]
