"""Gradings on M_n, sl(n) and M_n^(+): constructions, Type I/II, universal groups.

Conventions: ``deg E_ij = gamma_i - gamma_j``; the Pauli matrices are
``X = diag(1, eps, ..., eps^(l-1))`` and ``Y e_i = e_{i+1 mod l}``, with
``deg X^a Y^b = (a, b)`` in ``Z_l^2``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .abelgroup import (
    AbelianGroup,
    GroupElement,
    GroupHom,
    Presentation,
    direct_product,
    from_presentation,
    quotient_by,
)
from .exactfield import Field, Matrix, provision_field
from .grading import (
    GradedMap,
    Grading,
    GradingError,
    coarsen,
    ensure_verified,
    graded_space,
    operator_matrix,
    refine_by_automorphisms,
    tensor_grading,
    verify_algebra_grading,
    verify_map_homogeneous,
)
from .superalg import (
    build_jordan_matrix,
    build_matrix_algebra,
    build_sl,
)

__all__ = [
    "TARGETS",
    "ClassificationError",
    "EvenPartGrading",
    "elementary_grading",
    "pauli_matrices",
    "pauli_grading",
    "combined_fine_grading",
    "grading_on_basis",
    "restrict_to_even_part",
    "extended_associative",
    "product_map",
    "type_candidates",
    "classify_type",
    "universal_group_of",
    "regrade_universal",
    "catalog_field",
    "fine_catalog",
    "outer_map",
]

TARGETS = ("lie", "jordan")


class ClassificationError(GradingError):
    """No unique distinguished element; carries both criterion candidate sets."""

    def __init__(self, message: str, closure: Sequence[GroupElement] = (), product: Sequence[GroupElement] = ()):
        super().__init__(message)
        self.closure_candidates = list(closure)
        self.product_candidates = list(product)


@dataclass(frozen=True, eq=False)
class EvenPartGrading:
    """A grading on sl(n+1) (Lie) or M_n^(+) (Jordan) with its type and h."""

    grading: Grading
    target: str
    type_tag: str
    h: GroupElement
    name: str = ""
    imported: bool = False

    def __post_init__(self):
        if self.target not in TARGETS:
            raise ValueError(f"target must be one of {TARGETS}")
        if self.type_tag == "I" and not self.h.is_identity():
            raise GradingError("a Type I grading has h = e")
        if self.type_tag == "II" and self.h.order() != 2:
            raise GradingError("a Type II grading has h of order 2")

    @property
    def group(self) -> AbelianGroup:
        return self.grading.group

    @property
    def matrix_size(self) -> int:
        return self.grading.carrier.matrices[0].nrows

    @property
    def n(self) -> int:
        """Index of the Q(n) whose even part this grading lives on."""
        m = self.matrix_size
        return m - 1 if self.target == "lie" else m

    def to_json(self) -> dict:
        return {
            "grading": self.grading.to_json(),
            "target": self.target,
            "type": self.type_tag,
            "h": self.h.to_json(),
            "name": self.name,
            "imported": self.imported,
        }

    @classmethod
    def from_json(cls, data: dict) -> "EvenPartGrading":
        gr = Grading.from_json(data["grading"])
        return cls(gr, data["target"], data["type"], GroupElement.from_json(gr.group, data["h"]),
                   data.get("name", ""), bool(data.get("imported", False)))


# ------------------------------------------------------------ constructions


def elementary_grading(G: AbelianGroup, gammas: Sequence[GroupElement], F: Field) -> Grading:
    """Elementary grading on M_n with ``deg E_ij = gamma_i - gamma_j``."""
    n = len(gammas)
    for g in gammas:
        if g.group != G:
            raise GradingError(f"{g} is not an element of {G}")
    alg = build_matrix_algebra(n, F)
    degs = tuple(gammas[i] - gammas[j] for i in range(n) for j in range(n))
    return ensure_verified(Grading(G, alg, degs))


def pauli_matrices(l: int, F: Field) -> tuple[Matrix, Matrix]:
    eps = F.root(l)
    X = Matrix.diag(F, [eps**i for i in range(l)])
    Y = Matrix(F, [[F.one if i == (j + 1) % l else F.zero for j in range(l)] for i in range(l)])
    return X, Y


def pauli_grading(l: int, F: Field) -> Grading:
    """Division grading on M_l by Z_l^2 on the basis ``X^a Y^b``."""
    if not F.has_root(l):
        raise GradingError(f"{F} has no primitive root of unity of order {l}")
    X, Y = pauli_matrices(l, F)
    G = from_presentation(Presentation(2, ((l, 0), (0, l))))
    mats, labels, degs = [], [], []
    for a in range(l):
        for b in range(l):
            mats.append(X**a @ Y**b)
            labels.append(f"X{a}Y{b}")
            degs.append(G.from_presentation_coords((a, b)))
    alg = build_matrix_algebra(l, F, mats, labels)
    return ensure_verified(Grading(G, alg, tuple(degs)))


def _push(gr: Grading, hom: GroupHom) -> Grading:
    return coarsen(gr, hom)


def combined_fine_grading(
    G: AbelianGroup, gammas: Sequence[GroupElement], ells: int | Sequence[int], F: Field
) -> Grading:
    """Elementary grading of M_k tensored with Pauli gradings, on M_{k l1 l2 ...}.

    The grading group is ``G x Z_{l1}^2 x Z_{l2}^2 x ...``; the carrier uses
    the Kronecker basis ``E_ij (x) X^a Y^b (x) ...``.
    """
    ells = [ells] if isinstance(ells, int) else list(ells)
    ells = [l for l in ells if l > 1]
    gr = elementary_grading(G, gammas, F)
    if not ells:
        return gr
    paulis = [pauli_grading(l, F) for l in ells]
    P, injs = direct_product(G, *(p.group for p in paulis))
    acc = _push(gr, injs[0])
    for p, inj in zip(paulis, injs[1:]):
        acc = tensor_grading(acc, _push(p, inj))
    m = acc.carrier.matrices[0].nrows
    labels = [s.replace("(x)", ".") for s in acc.carrier.labels]
    alg = build_matrix_algebra(m, F, acc.carrier.matrices, labels)
    return ensure_verified(Grading(P, alg, acc.degrees))


def grading_on_basis(
    target: str,
    F: Field,
    mats: Sequence[Matrix],
    G: AbelianGroup,
    degrees: Sequence[GroupElement],
    labels: Sequence[str] | None = None,
) -> Grading:
    """Grading on sl(m) (``lie``), M_m^(+) (``jordan``) or M_m (``associative``)
    with an explicit homogeneous basis of matrices."""
    m = mats[0].nrows
    if target == "lie":
        alg = build_sl(m, F, mats, labels)
    elif target == "jordan":
        alg = build_jordan_matrix(m, F, mats, labels)
    elif target == "associative":
        alg = build_matrix_algebra(m, F, mats, labels)
    else:
        raise ValueError(f"unknown target {target!r}")
    return ensure_verified(Grading(G, alg, tuple(degrees)))


def restrict_to_even_part(gr: Grading, target: str) -> EvenPartGrading:
    """Type I grading on sl(m) or M_m^(+) induced by a grading on M_m."""
    alg = gr.carrier
    if alg.flavor != "associative" or alg.matrices is None:
        raise GradingError("restriction needs a matrix-realized associative grading")
    F, G = alg.field, gr.group
    if target == "jordan":
        out = Grading(G, build_jordan_matrix(alg.matrices[0].nrows, F, alg.matrices, alg.labels),
                      gr.degrees)
        return EvenPartGrading(ensure_verified(out), "jordan", "I", G.identity)
    if target != "lie":
        raise ValueError(f"unknown target {target!r}")
    mats, labels, degs = [], [], []
    pivot = None
    for M, lab, g in zip(alg.matrices, alg.labels, gr.degrees):
        if not M.trace():
            mats.append(M)
            labels.append(lab)
            degs.append(g)
            continue
        if not g.is_identity():
            raise GradingError(f"basis vector {lab} of degree {g} has nonzero trace")
        if pivot is None:
            pivot = M
            continue
        mats.append(M - pivot.scale(M.trace() / pivot.trace()))
        labels.append(f"{lab}'")
        degs.append(g)
    out = Grading(G, build_sl(alg.matrices[0].nrows, F, mats, labels), tuple(degs))
    return EvenPartGrading(ensure_verified(out), "lie", "I", G.identity)


# ----------------------------------------------------------- classification


def _check_target(gr: Grading, target: str):
    want = {"lie": "lie", "jordan": "jordan"}.get(target)
    if want is None:
        raise ValueError(f"unknown target {target!r}")
    if gr.carrier.flavor != want or gr.carrier.matrices is None:
        raise GradingError(f"expected a matrix-realized {want} grading")


def extended_associative(gr: Grading, target: str, identity_degree: GroupElement | None = None) -> Grading:
    """The decomposition of M_m obtained from ``gr`` (with 1 in ``identity_degree``
    for sl), viewed on the associative algebra; not verified."""
    _check_target(gr, target)
    alg = gr.carrier
    F = alg.field
    m = alg.matrices[0].nrows
    if target == "lie":
        g = identity_degree if identity_degree is not None else gr.group.identity
        mats = list(alg.matrices) + [Matrix.identity(F, m)]
        M = build_matrix_algebra(m, F, mats, list(alg.labels) + ["I"])
        return Grading(gr.group, M, gr.degrees + (g,))
    M = build_matrix_algebra(m, F, alg.matrices, alg.labels)
    return Grading(gr.group, M, gr.degrees)


def product_map(assoc: Grading, sign: int) -> GradedMap:
    """``x (x) y -> xy + sign * yx`` on the graded space underlying ``assoc``."""
    alg = assoc.carrier
    F = alg.field
    G = assoc.group
    d = alg.dimension
    space = graded_space(G, assoc.degrees, F, alg.labels)
    source = graded_space(G, [a + b for a in assoc.degrees for b in assoc.degrees], F)
    images = []
    for i in range(d):
        for j in range(d):
            acc: dict[int, object] = {}
            for k, c in alg.mul(i, j):
                acc[k] = acc.get(k, F.zero) + c
            for k, c in alg.mul(j, i):
                acc[k] = acc.get(k, F.zero) + sign * c
            images.append(tuple((k, c) for k, c in sorted(acc.items()) if c))
    return GradedMap(source, space, tuple(images))


def type_candidates(gr: Grading, target: str) -> tuple[bool, list[GroupElement], list[GroupElement]]:
    """(is Type I, order-2 h passing associative closure mod h, order-2 h passing J/L)."""
    _check_target(gr, target)
    G = gr.group
    if verify_algebra_grading(extended_associative(gr, target)).ok:
        return True, [], []
    closure, product = [], []
    sign = 1 if target == "lie" else -1
    for h in G.elements_of_order_dividing(2):
        if h.is_identity():
            continue
        ext = extended_associative(gr, target, h)
        _Q, proj = quotient_by(h)
        if verify_algebra_grading(coarsen(ext, proj)).ok:
            closure.append(h)
        if verify_map_homogeneous(product_map(ext, sign), h).ok:
            product.append(h)
    return False, closure, product


def classify_type(gr: Grading, target: str, name: str = "", imported: bool = False) -> EvenPartGrading:
    """Decide Type I/II and the distinguished element h."""
    gr = ensure_verified(gr)
    type_one, closure, product = type_candidates(gr, target)
    if type_one:
        return EvenPartGrading(gr, target, "I", gr.group.identity, name, imported)
    if closure != product:
        raise ClassificationError(
            "closure and product criteria disagree: "
            f"closure {[str(h) for h in closure]}, product {[str(h) for h in product]}",
            closure, product,
        )
    if len(closure) != 1:
        raise ClassificationError(
            f"expected exactly one distinguished element, found {len(closure)}", closure, product
        )
    return EvenPartGrading(gr, target, "II", closure[0], name, imported)


# --------------------------------------------------------- universal group


def universal_group_of(gr: Grading) -> tuple[AbelianGroup, GroupHom]:
    """Group presented by the support with relations ``s_i + s_j = s_k`` from
    nonzero structure constants, and its map into ``gr.group``."""
    support = sorted(gr.support())
    index = {g: t for t, g in enumerate(support)}
    r = len(support)
    rels = set()
    deg = gr.degrees
    for i, j, k, c in gr.carrier.nonzero_triples():
        if not c:
            continue
        row = [0] * r
        row[index[deg[i]]] += 1
        row[index[deg[j]]] += 1
        row[index[deg[k]]] -= 1
        if any(row):
            rels.add(tuple(row))
    U = from_presentation(Presentation(r, tuple(sorted(rels))))
    hom = GroupHom.from_presentation_images(U, gr.group, support)
    return U, hom


def regrade_universal(gr: Grading) -> tuple[Grading, GroupHom]:
    """The same decomposition graded by its universal group."""
    support = sorted(gr.support())
    index = {g: t for t, g in enumerate(support)}
    U, hom = universal_group_of(gr)
    degs = tuple(U.presentation_generator(index[g]) for g in gr.degrees)
    return ensure_verified(Grading(U, gr.carrier, degs)), hom


# ------------------------------------------------------------------ catalog


def catalog_field(n: int, target: str) -> Field:
    """Prime field with the roots of unity needed by the catalog and sqrt(-1)."""
    m = n + 1 if target == "lie" else n
    orders = [l for l in range(2, m + 1) if m % l == 0]
    avoid = (m,) if target == "lie" else ()
    return provision_field(orders + [4], need_sqrt_minus_one=True, avoid_divisors=avoid)


def _prime_power_splits(l: int) -> list[list[int]]:
    """Factor lists describing all division gradings of M_l up to isomorphism."""
    def partitions(a, largest=None):
        largest = a if largest is None else largest
        if a == 0:
            yield []
            return
        for k in range(min(a, largest), 0, -1):
            for rest in partitions(a - k, k):
                yield [k] + rest

    primes = []
    x, p = l, 2
    while x > 1:
        if x % p == 0:
            e = 0
            while x % p == 0:
                x //= p
                e += 1
            primes.append((p, e))
        p += 1
    options = [[[p**k for k in part] for part in partitions(e)] for p, e in primes]
    return [sum(choice, []) for choice in itertools.product(*options)] if options else [[]]


def _cartan_gammas(k: int) -> tuple[AbelianGroup, list[GroupElement]]:
    G = AbelianGroup.free(k - 1)
    gammas = [G.identity] + list(G.generators())
    return G, gammas


def _type_one_entries(m: int, F: Field) -> list[tuple[str, Grading]]:
    out = []
    for l in range(1, m + 1):
        if m % l:
            continue
        k = m // l
        for ells in _prime_power_splits(l):
            G, gammas = _cartan_gammas(k)
            name = "cartan" if l == 1 else f"M{k}(x)pauli" + "x".join(map(str, ells))
            if k == 1 and l > 1:
                name = "pauli" + "x".join(map(str, ells))
            out.append((name, combined_fine_grading(G, gammas, ells, F)))
    return out


def outer_map(target: str):
    """``x -> -x^t`` for sl, ``x -> x^t`` for M^(+)."""
    if target == "lie":
        return lambda x: -x.T
    return lambda x: x.T


def _antidiagonal(F: Field, m: int) -> Matrix:
    return Matrix(F, [[F.one if i + j == m - 1 else F.zero for j in range(m)] for i in range(m)])


def _torus_outer(m: int, target: str, F: Field) -> Grading:
    """Torus of rank floor(m/2) normalized by ``x -> -+J x^t J`` (J antidiagonal)."""
    r = m // 2
    T = AbelianGroup.free(r)
    gens = T.generators()
    gammas = [T.identity] * m
    for i in range(r):
        gammas[i] = gens[i]
        gammas[m - 1 - i] = -gens[i]
    M = elementary_grading(T, gammas, F)
    base = restrict_to_even_part(M, target).grading
    J = _antidiagonal(F, m)
    theta = outer_map(target)
    op = operator_matrix(base.carrier, lambda x: J @ theta(x) @ J)
    return refine_by_automorphisms(base, [op], [2])


def _signs_outer(m: int, target: str, F: Field) -> Grading:
    """Diagonal sign conjugations together with the transpose-type map."""
    base = restrict_to_even_part(elementary_grading(AbelianGroup.free(0), [AbelianGroup.free(0).identity] * m, F), target).grading
    theta = outer_map(target)
    ops = [operator_matrix(base.carrier, theta)]
    for i in range(m - 1):
        D = Matrix.diag(F, [-1 if t == i else 1 for t in range(m)])
        ops.append(operator_matrix(base.carrier, lambda x, D=D: D @ x @ D))
    return refine_by_automorphisms(base, ops, [2] * len(ops))


def _pauli_outer(F: Field) -> Grading:
    """M_2^(+) graded by conjugations by X, Y and the transpose."""
    base = restrict_to_even_part(pauli_grading(2, F), "jordan").grading
    op = operator_matrix(base.carrier, lambda x: x.T)
    return refine_by_automorphisms(base, [op], [2])


def fine_catalog(n: int, target: str, F: Field | None = None) -> list[EvenPartGrading]:
    """Fine gradings on the even part of Q(n), n in {2, 3, 4}, over their universal groups.

    Type I entries are all fine gradings of M_m restricted (none for Jordan
    n = 2, where they refine further).  Type II entries for n >= 3 are a
    constructed subset and are flagged ``imported``.
    """
    if n not in (2, 3, 4):
        raise ValueError("catalog is available for n in {2, 3, 4}")
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}")
    F = F or catalog_field(n, target)
    m = n + 1 if target == "lie" else n
    built: list[tuple[str, Grading, bool]] = []
    if not (target == "jordan" and m == 2):
        for name, M in _type_one_entries(m, F):
            built.append((name, restrict_to_even_part(M, target).grading, False))
    if target == "jordan" and m == 2:
        built.append(("pauli-transpose", _pauli_outer(F), False))
    if m == 3:
        built.append(("signs-transpose", _signs_outer(m, target, F), False))
    built.append(("torus-transpose", _torus_outer(m, target, F), m > 3))
    # the type is read off the universal group: a restricted Pauli grading
    # with l = 2 factors can pick up an outer character there
    return [classify_type(regrade_universal(gr)[0], target, name, imported)
            for name, gr, imported in built]
