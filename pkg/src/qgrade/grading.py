"""Gradings as degree assignments on homogeneous bases, and their verification.

A :class:`Grading` attaches a group element to every basis vector of an
:class:`~qgrade.superalg.AlgebraStructure`; the component of degree g is the
span of the basis vectors of degree g.  Verification is exhaustive over
basis pairs and reports every violation instead of stopping at the first.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, replace
from typing import Callable, Sequence

from .abelgroup import (
    AbelianGroup,
    GroupElement,
    GroupHom,
    Presentation,
    direct_product,
    from_presentation,
)
from .exactfield import CoordinateSystem, Field, Matrix, simultaneous_eigenspaces
from .superalg import AlgebraStructure, rebase, tensor_algebra

__all__ = [
    "GradingError",
    "Violation",
    "VerificationReport",
    "Grading",
    "Module",
    "ModuleGrading",
    "GradedMap",
    "graded_space",
    "verify_algebra_grading",
    "ensure_verified",
    "verify_module_grading",
    "verify_map_homogeneous",
    "shift",
    "tensor_grading",
    "coarsen",
    "operator_matrix",
    "is_automorphism",
    "grading_from_commuting_automorphisms",
    "refine_by_automorphisms",
    "even_part",
    "odd_module",
]

SECTORS = {(0, 0): "even-even", (0, 1): "even-odd", (1, 0): "odd-even", (1, 1): "odd-odd"}


class GradingError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    """``e_i * e_j`` has a nonzero coordinate on ``e_k`` of the wrong degree."""

    i: int
    j: int
    k: int
    expected: GroupElement
    found: GroupElement
    sector: str = ""

    def to_json(self) -> dict:
        return {
            "pair": [self.i, self.j],
            "index": self.k,
            "expected": self.expected.to_json(),
            "found": self.found.to_json(),
            "sector": self.sector,
        }


@dataclass(frozen=True)
class VerificationReport:
    kind: str
    checked: int
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def by_sector(self) -> dict[str, int]:
        out: dict[str, int] = defaultdict(int)
        for v in self.violations:
            out[v.sector] += 1
        return dict(out)

    def pairs(self) -> set[tuple[int, int]]:
        return {(v.i, v.j) for v in self.violations}

    def __str__(self):
        n = len(self.violations)
        return f"{'ok' if self.ok else 'FAILED'}, {n} violation{'s' if n != 1 else ''}"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "ok": self.ok,
            "checked": self.checked,
            "violations": [v.to_json() for v in self.violations],
            "by_sector": self.by_sector(),
        }


@dataclass(frozen=True, eq=False)
class Grading:
    group: AbelianGroup
    carrier: AlgebraStructure
    degrees: tuple[GroupElement, ...]
    verified: bool = False

    def __post_init__(self):
        if len(self.degrees) != self.carrier.dimension:
            raise GradingError(
                f"{len(self.degrees)} degrees given for a carrier of dimension {self.carrier.dimension}"
            )
        for g in self.degrees:
            if g.group != self.group:
                raise GradingError(f"degree {g} does not belong to {self.group}")

    def support(self) -> set[GroupElement]:
        return set(self.degrees)

    def support_of_parity(self, p: int) -> set[GroupElement]:
        return {g for g, q in zip(self.degrees, self.carrier.parity) if q == p}

    def components(self) -> dict[GroupElement, list[int]]:
        out: dict[GroupElement, list[int]] = defaultdict(list)
        for i, g in enumerate(self.degrees):
            out[g].append(i)
        return dict(out)

    def component_dimensions(self) -> dict[GroupElement, int]:
        return {g: len(ix) for g, ix in self.components().items()}

    def dimension_profile(self) -> list[tuple[tuple[int, ...], int, int]]:
        """Sorted (degree coords, parity, dimension) triples; an isomorphism invariant."""
        counts: dict = defaultdict(int)
        for g, p in zip(self.degrees, self.carrier.parity):
            counts[(g.coords, p)] += 1
        return sorted((c, p, k) for (c, p), k in counts.items())

    def with_group(self, degrees: Sequence[GroupElement], group: AbelianGroup | None = None) -> "Grading":
        return Grading(group or self.group, self.carrier, tuple(degrees), False)

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "degrees": [g.to_json() for g in self.degrees],
            "carrier": self.carrier.to_json(),
            "verified": self.verified,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Grading":
        G = AbelianGroup.from_json(data["group"])
        alg = AlgebraStructure.from_json(data["carrier"])
        return cls(G, alg, tuple(GroupElement.from_json(G, d) for d in data["degrees"]), False)


def graded_space(group: AbelianGroup, degrees: Sequence[GroupElement], F: Field,
                 labels: Sequence[str] | None = None, matrices=None) -> Grading:
    """Grading on a bare vector space (no product)."""
    labels = tuple(labels) if labels is not None else tuple(f"v{k}" for k in range(len(degrees)))
    alg = AlgebraStructure(F, labels, (0,) * len(labels), {}, "space",
                           tuple(matrices) if matrices is not None else None, {"name": "space"})
    return Grading(group, alg, tuple(degrees), True)


def verify_algebra_grading(gr: Grading) -> VerificationReport:
    """Check ``A_g A_h within A_{g+h}`` on every pair of basis vectors."""
    alg, deg = gr.carrier, gr.degrees
    if any(g.group != gr.group for g in deg):
        raise GradingError("degrees do not belong to the grading group")
    if any(p not in (0, 1) for p in alg.parity):
        raise GradingError("basis vectors must have pure parity")
    bad = []
    for (i, j), terms in alg.table.items():
        expected = deg[i] + deg[j]
        for k, c in terms:
            if c and deg[k] != expected:
                bad.append(
                    Violation(i, j, k, expected, deg[k], SECTORS[(alg.parity[i], alg.parity[j])])
                )
    bad.sort(key=lambda v: (v.i, v.j, v.k))
    d = alg.dimension
    return VerificationReport("algebra", d * d, tuple(bad))


def ensure_verified(gr: Grading) -> Grading:
    """Return ``gr`` flagged as verified, or raise with the violation report."""
    rep = verify_algebra_grading(gr)
    if not rep.ok:
        raise GradingError(f"not a grading: {rep}")
    return gr if gr.verified else replace(gr, verified=True)


@dataclass(frozen=True, eq=False)
class Module:
    """Module over an algebra: ``action[(i, j)]`` lists ``(k, c)`` with ``a_i . v_j = sum c v_k``."""

    acting: AlgebraStructure
    labels: tuple[str, ...]
    action: dict

    @property
    def dimension(self) -> int:
        return len(self.labels)


@dataclass(frozen=True, eq=False)
class ModuleGrading:
    algebra_grading: Grading
    module: Module
    degrees: tuple[GroupElement, ...]

    def __post_init__(self):
        if len(self.degrees) != self.module.dimension:
            raise GradingError("one degree per module basis vector required")
        if self.module.acting is not self.algebra_grading.carrier:
            raise GradingError("module is not over the graded algebra")

    @property
    def group(self) -> AbelianGroup:
        return self.algebra_grading.group

    def support(self) -> set[GroupElement]:
        return set(self.degrees)


def even_part(alg: AlgebraStructure) -> AlgebraStructure:
    """The even subalgebra of a superalgebra whose even basis vectors come first."""
    ev = alg.indices_of_parity(0)
    if ev != list(range(len(ev))):
        raise GradingError("even basis vectors must precede odd ones")
    N = len(ev)
    table = {
        (i, j): tuple((k, c) for k, c in alg.mul(i, j))
        for i in range(N)
        for j in range(N)
        if alg.mul(i, j)
    }
    flavor = {"lie-super": "lie", "jordan-super": "jordan", "associative-super": "associative"}[alg.flavor]
    mats = alg.matrices[:N] if alg.matrices is not None else None
    return AlgebraStructure(alg.field, alg.labels[:N], (0,) * N, table, flavor, mats,
                            {**alg.model, "part": "even"})


def odd_module(alg: AlgebraStructure, acting: AlgebraStructure | None = None) -> Module:
    """Odd part of a superalgebra as a module over its even part (left action)."""
    N = len(alg.indices_of_parity(0))
    if acting is None:
        acting = even_part(alg)
    if acting.dimension != N:
        raise GradingError("acting algebra does not match the even part")
    action = {}
    for i in range(N):
        for j in range(alg.dimension - N):
            terms = alg.mul(i, N + j)
            if terms:
                action[(i, j)] = tuple((k - N, c) for k, c in terms)
    return Module(acting, alg.labels[N:], action)


def verify_module_grading(m: ModuleGrading) -> VerificationReport:
    """Check ``A_g . V_h within V_{g+h}`` on all basis pairs."""
    ag = m.algebra_grading
    if any(g.group != ag.group for g in m.degrees):
        raise GradingError("module degrees and algebra grading use different groups")
    bad = []
    for (i, j), terms in m.module.action.items():
        expected = ag.degrees[i] + m.degrees[j]
        for k, c in terms:
            if c and m.degrees[k] != expected:
                bad.append(Violation(i, j, k, expected, m.degrees[k], "action"))
    return VerificationReport("module", ag.carrier.dimension * m.module.dimension, tuple(bad))


def shift(m: ModuleGrading, d: GroupElement) -> ModuleGrading:
    """Relabel every module component ``V_g`` as ``V_{g+d}``."""
    if d.group != m.group:
        raise GradingError(f"shift element {d} is not in {m.group}")
    return ModuleGrading(m.algebra_grading, m.module, tuple(g + d for g in m.degrees))


def tensor_grading(a: Grading, b: Grading) -> Grading:
    """Grading on ``V (x) W`` with ``deg(v_i (x) w_j) = deg v_i + deg w_j``."""
    if a.group != b.group:
        raise GradingError("tensor factors are graded by different groups")
    alg = tensor_algebra(a.carrier, b.carrier)
    degs = tuple(x + y for x in a.degrees for y in b.degrees)
    return Grading(a.group, alg, degs, False)


def coarsen(gr: Grading, alpha: GroupHom) -> Grading:
    """The grading induced by a homomorphism out of the grading group."""
    if alpha.domain != gr.group:
        raise GradingError("homomorphism domain differs from the grading group")
    return Grading(alpha.codomain, gr.carrier, tuple(alpha(g) for g in gr.degrees), gr.verified)


@dataclass(frozen=True, eq=False)
class GradedMap:
    """Linear map between graded spaces; ``images[i]`` lists ``(k, c)`` for source basis i."""

    source: Grading
    target: Grading
    images: tuple


def verify_map_homogeneous(f: GradedMap, expected_degree: GroupElement) -> VerificationReport:
    """Check ``f(V_g) within W_{g + expected_degree}`` on every source basis vector."""
    if f.source.group != f.target.group or expected_degree.group != f.source.group:
        raise GradingError("graded map and degree use different groups")
    bad = []
    for i, terms in enumerate(f.images):
        want = f.source.degrees[i] + expected_degree
        for k, c in terms:
            if c and f.target.degrees[k] != want:
                bad.append(Violation(i, -1, k, want, f.target.degrees[k], "map"))
    return VerificationReport("map", len(f.images), tuple(bad))


def operator_matrix(alg: AlgebraStructure, fn: Callable[[Matrix], Matrix]) -> Matrix:
    """Matrix (on coordinates) of the linear map induced by ``fn`` on the realization."""
    if alg.matrices is None:
        raise GradingError("carrier has no matrix realization")
    cs = CoordinateSystem(alg.field, [m.flatten() for m in alg.matrices])
    cols = [cs.coords(fn(m).flatten()) for m in alg.matrices]
    return Matrix.from_columns(alg.field, cols)


def is_automorphism(alg: AlgebraStructure, op: Matrix) -> bool:
    d = alg.dimension
    imgs = op.columns()
    for i in range(d):
        for j in range(d):
            lhs = op.apply(alg.product(alg.basis_vector(i), alg.basis_vector(j)))
            if lhs != alg.product(imgs[i], imgs[j]):
                return False
    return True


def grading_from_commuting_automorphisms(
    carrier: AlgebraStructure, ops: Sequence[Matrix], orders: Sequence[int]
) -> Grading:
    """Joint eigenspace grading by ``Z_{o1} x Z_{o2} x ...`` (canonicalized).

    The carrier is rebased onto an eigenbasis; the degree of an eigenvector is
    its tuple of root-of-unity exponents.
    """
    F = carrier.field
    for k, op in enumerate(ops):
        if op.shape != (carrier.dimension, carrier.dimension):
            raise GradingError(f"operator {k} has the wrong size")
        if not is_automorphism(carrier, op):
            raise GradingError(f"operator {k} is not an automorphism of the carrier")
    spaces = simultaneous_eigenspaces(list(ops), list(orders), F)
    rels = []
    for k, o in enumerate(orders):
        r = [0] * len(orders)
        r[k] = o
        rels.append(tuple(r))
    G = from_presentation(Presentation(len(orders), tuple(rels)))
    vecs, degs, labels = [], [], []
    for exps, basis in spaces:
        g = G.from_presentation_coords(exps)
        for t, v in enumerate(basis):
            vecs.append(v)
            degs.append(g)
            labels.append("v[" + ",".join(map(str, exps)) + f"]{t}")
    alg = rebase(carrier, vecs, labels)
    return ensure_verified(Grading(G, alg, tuple(degs)))


def refine_by_automorphisms(
    gr: Grading, ops: Sequence[Matrix], orders: Sequence[int], labels: Sequence[str] | None = None
) -> Grading:
    """Split every component of ``gr`` into joint eigenspaces of ``ops``.

    The operators must be commuting automorphisms of finite order that leave
    each component invariant.  The result is graded by
    ``gr.group x Z_{o1} x Z_{o2} x ...`` on a rebased carrier.
    """
    carrier = gr.carrier
    F = carrier.field
    for k, op in enumerate(ops):
        if not is_automorphism(carrier, op):
            raise GradingError(f"operator {k} is not an automorphism of the carrier")
    C = from_presentation(Presentation(len(orders), tuple(
        tuple(o if a == b else 0 for b in range(len(orders))) for a, o in enumerate(orders)
    )))
    P, (inj_g, inj_c) = direct_product(gr.group, C)
    vecs, degs, names = [], [], []
    for g, idx in sorted(gr.components().items(), key=lambda kv: kv[1][0]):
        pos = {i: t for t, i in enumerate(idx)}
        blocks = []
        for k, op in enumerate(ops):
            for j in idx:
                for i in range(carrier.dimension):
                    if i not in pos and op.rows[i][j]:
                        raise GradingError(f"operator {k} does not preserve the component of degree {g}")
            blocks.append(Matrix(F, [[op.rows[i][j] for j in idx] for i in idx]))
        for exps, basis in simultaneous_eigenspaces(blocks, list(orders), F):
            d = inj_g(g) + inj_c(C.from_presentation_coords(exps))
            for t, v in enumerate(basis):
                full = [F.zero] * carrier.dimension
                for i, x in zip(idx, v):
                    full[i] = x
                vecs.append(full)
                degs.append(d)
                names.append(f"v{len(names)}")
    alg = rebase(carrier, vecs, labels or names)
    return ensure_verified(Grading(P, alg, tuple(degs)))
