"""Gradings on Q(n) and on A = M_n + uM_n built from gradings of the even part.

An extension of an even-part grading places the underlined copy of each
homogeneous basis vector ``x`` in degree ``deg x + d``.  Automorphisms of Q
are handled as coordinate matrices on the pair-model basis.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .abelgroup import (
    AbelianGroup,
    Character,
    GroupElement,
    GroupHom,
    adjoin_square_root,
    is_isomorphic,
    square_roots,
)
from .exactfield import CoordinateSystem, Field, FieldError, Matrix, nullspace
from .grading import (
    Grading,
    GradingError,
    ModuleGrading,
    coarsen,
    ensure_verified,
    even_part,
    odd_module,
    verify_algebra_grading,
)
from .matgrad import EvenPartGrading, outer_map, pauli_matrices, universal_group_of
from .superalg import (
    AlgebraStructure,
    build_A_superalgebra,
    build_Q,
    build_semidirect_adjoint,
    sl_basis,
    matrix_units,
)

__all__ = [
    "ExtensionError",
    "SuperGrading",
    "QAutomorphism",
    "IsoResult",
    "q_carrier",
    "extension_shifts",
    "push_even",
    "assemble",
    "extend_to_Q",
    "extend_assoc",
    "extend_pae",
    "lift_map",
    "extend_automorphism",
    "parity_automorphism",
    "kernel_scalings",
    "inner_witness",
    "decide_iso_extensions",
    "fine_on_Q",
    "character_action",
]


class ExtensionError(GradingError):
    pass


def q_carrier(ep: EvenPartGrading) -> AlgebraStructure:
    """Q(n) in the pair model over the homogeneous basis of ``ep``."""
    alg = ep.grading.carrier
    return build_Q(ep.n, alg.field, ep.target, alg.matrices, alg.labels)


def extension_shifts(ep: EvenPartGrading) -> list[GroupElement]:
    """All d with d^2 = h (additively 2d = h)."""
    return square_roots(ep.h)


def push_even(ep: EvenPartGrading, hom: GroupHom) -> EvenPartGrading:
    """Transport an even-part grading along an injective group homomorphism."""
    h = hom(ep.h)
    if ep.type_tag == "II" and h.order() != 2:
        raise GradingError("homomorphism does not keep h of order 2")
    return EvenPartGrading(coarsen(ep.grading, hom), ep.target, ep.type_tag, h, ep.name, ep.imported)


def assemble(ep: EvenPartGrading, d: GroupElement) -> Grading:
    """Unverified decomposition ``Gamma + underline(Gamma)^[d]`` of Q."""
    if d.group != ep.group:
        raise ExtensionError(f"shift {d} is not in {ep.group}")
    Q = q_carrier(ep)
    degs = ep.grading.degrees
    return Grading(ep.group, Q, degs + tuple(g + d for g in degs))


@dataclass(frozen=True, eq=False)
class SuperGrading:
    even: EvenPartGrading
    d: GroupElement
    grading: Grading
    verified: bool = False

    @property
    def group(self) -> AbelianGroup:
        return self.grading.group

    @property
    def flavor(self) -> str:
        return self.even.target

    @property
    def n(self) -> int:
        return self.even.n

    @property
    def algebra(self) -> AlgebraStructure:
        return self.grading.carrier

    def odd_grading(self) -> ModuleGrading:
        Q = self.algebra
        N = Q.dimension // 2
        ev = Grading(self.group, even_part(Q), self.grading.degrees[:N], self.verified)
        return ModuleGrading(ev, odd_module(Q, ev.carrier), self.grading.degrees[N:])

    def to_json(self) -> dict:
        N = self.algebra.dimension // 2
        return {
            "flavor": self.flavor,
            "n": self.n,
            "group": self.group.to_json(),
            "even_degrees": [g.to_json() for g in self.grading.degrees[:N]],
            "d": self.d.to_json(),
            "verified": self.verified,
            "even": self.even.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "SuperGrading":
        """Rebuild and re-verify; the even-part basis defaults to the standard one."""
        if "even" in data:
            ep = EvenPartGrading.from_json(data["even"])
        else:
            from .exactfield import provision_field
            from .matgrad import classify_type, grading_on_basis

            G = AbelianGroup.from_json(data["group"])
            n, flavor = int(data["n"]), data["flavor"]
            F = provision_field([4], need_sqrt_minus_one=True,
                                avoid_divisors=(n + 1,) if flavor == "lie" else ())
            mats, labels = sl_basis(n + 1, F) if flavor == "lie" else matrix_units(n, F)
            degs = [GroupElement.from_json(G, x) for x in data["even_degrees"]]
            ep = classify_type(grading_on_basis(flavor, F, mats, G, degs, labels), flavor)
        d = GroupElement.from_json(ep.group, data["d"])
        return extend_to_Q(ep, d)


def extend_to_Q(ep: EvenPartGrading, d: GroupElement, diagnostic: bool = False):
    """The grading ``Gamma + underline(Gamma)^[d]`` on Q(n).

    With ``diagnostic=True`` the decomposition is assembled for any d and the
    verification report is returned instead.
    """
    if diagnostic:
        return verify_algebra_grading(assemble(ep, d))
    if d.group != ep.group:
        raise ExtensionError(f"shift {d} is not in {ep.group}")
    if 2 * d != ep.h:
        raise ExtensionError("d^2 != h")
    gr = assemble(ep, d)
    rep = verify_algebra_grading(gr)
    if not rep.ok:
        raise AssertionError(f"extension with d^2 = h failed verification: {rep}")
    return SuperGrading(ep, d, Grading(gr.group, gr.carrier, gr.degrees, True), True)


def extend_assoc(gr: Grading, c: GroupElement) -> Grading:
    """``Gamma + u Gamma^[c]`` on A = M_n + uM_n; requires c^2 = e."""
    alg = gr.carrier
    if alg.flavor != "associative" or alg.matrices is None:
        raise GradingError("extend_assoc needs a matrix-realized grading on M_n")
    if c.group != gr.group:
        raise ExtensionError(f"shift {c} is not in {gr.group}")
    if not (2 * c).is_identity():
        raise ExtensionError("c^2 != e")
    gr = ensure_verified(gr)
    A = build_A_superalgebra(alg.matrices[0].nrows, alg.field, alg.matrices, alg.labels)
    return ensure_verified(Grading(gr.group, A, gr.degrees + tuple(g + c for g in gr.degrees)))


def extend_pae(gr: Grading, c: GroupElement) -> Grading:
    """``Gamma + Gamma^[c]`` on psl(n) + its adjoint module; any c works."""
    alg = gr.carrier
    if alg.flavor != "lie" or alg.matrices is None:
        raise GradingError("extend_pae needs a matrix-realized grading on sl(n)")
    if c.group != gr.group:
        raise ExtensionError(f"shift {c} is not in {gr.group}")
    gr = ensure_verified(gr)
    S = build_semidirect_adjoint(alg.matrices[0].nrows, alg.field, alg.matrices, alg.labels)
    return ensure_verified(Grading(gr.group, S, gr.degrees + tuple(g + c for g in gr.degrees)))


# ------------------------------------------------------------- automorphisms


@dataclass(frozen=True, eq=False)
class QAutomorphism:
    """Automorphism of a superalgebra as a coordinate matrix.

    ``kind`` is ``inner`` (lambda = 1), ``inner-parity`` (lambda = -1) or
    ``outer`` (lambda^2 = -1); ``lam`` is the scalar applied to the odd part
    by an extended even-part automorphism, ``r`` the conjugating matrix when known.
    """

    algebra: AlgebraStructure
    matrix: Matrix
    kind: str
    lam: object
    r: Matrix | None = None

    def __call__(self, coords: Sequence) -> tuple:
        return self.matrix.apply(coords)

    def __matmul__(self, other: "QAutomorphism") -> "QAutomorphism":
        lam = self.lam * other.lam
        return QAutomorphism(self.algebra, self.matrix @ other.matrix, _kind(lam), lam)

    def __pow__(self, k: int) -> "QAutomorphism":
        lam = self.lam**k
        return QAutomorphism(self.algebra, self.matrix**k, _kind(lam), lam)

    def __eq__(self, other):
        if not isinstance(other, QAutomorphism):
            return NotImplemented
        return self.matrix == other.matrix

    __hash__ = None

    def is_identity(self) -> bool:
        return self.matrix == Matrix.identity(self.algebra.field, self.algebra.dimension)

    def is_automorphism(self) -> bool:
        return _is_homomorphism(self.algebra, self.algebra, self.matrix)


def _kind(lam) -> str:
    if lam == 1:
        return "inner"
    if lam == -1:
        return "inner-parity"
    if lam * lam == -1:
        return "outer"
    return "unknown"


def _is_homomorphism(A: AlgebraStructure, B: AlgebraStructure, op: Matrix) -> bool:
    imgs = op.columns()
    for i in range(A.dimension):
        for j in range(A.dimension):
            lhs = op.apply(A.product(A.basis_vector(i), A.basis_vector(j)))
            if lhs != B.product(imgs[i], imgs[j]):
                return False
    return True


def parity_automorphism(Q: AlgebraStructure) -> QAutomorphism:
    F = Q.field
    M = Matrix.diag(F, [-1 if p else 1 for p in Q.parity])
    return QAutomorphism(Q, M, "inner-parity", F(-1), None)


def lift_map(QA: AlgebraStructure, QB: AlgebraStructure, kind: str, r: Matrix | None = None,
             lam=None) -> Matrix:
    """Coordinate matrix (QA basis -> QB basis) of the extension of ``psi_r`` or ``theta o psi_r``.

    The odd part is multiplied by ``lam`` (default 1 for inner, sqrt(-1) for outer).
    """
    F = QA.field
    flavor = QA.model.get("flavor")
    N = QA.dimension // 2
    BA, BB = QA.matrices[:N], QB.matrices[:N]
    m = BA[0].nrows
    r = r if r is not None else Matrix.identity(F, m)
    if not r.is_invertible():
        raise ExtensionError("conjugating matrix is singular")
    ri = r.inverse()
    theta = outer_map(flavor)
    if kind == "inner":
        psi = lambda x: r @ x @ ri  # noqa: E731
        lam = F.one if lam is None else F(lam)
    elif kind == "outer":
        psi = lambda x: theta(r @ x @ ri)  # noqa: E731
        if lam is None:
            if not F.has_root(4):
                raise FieldError(f"{F} has no square root of -1")
            lam = F.sqrt_minus_one()
        lam = F(lam)
    else:
        raise ValueError(f"kind must be 'inner' or 'outer', got {kind!r}")
    cs = CoordinateSystem(F, [b.flatten() for b in BB])
    cols = []
    imgs = [cs.coords(psi(b).flatten()) for b in BA]
    for c in imgs:
        cols.append(tuple(c) + (F.zero,) * N)
    for c in imgs:
        cols.append((F.zero,) * N + tuple(lam * x for x in c))
    return Matrix.from_columns(F, cols)


def extend_automorphism(Q: AlgebraStructure, kind: str, r: Matrix | None = None) -> QAutomorphism:
    """Extend ``psi_r`` (inner) or ``theta o psi_r`` (outer) from the even part to Q."""
    M = lift_map(Q, Q, kind, r)
    F = Q.field
    lam = F.one if kind == "inner" else F.sqrt_minus_one()
    phi = QAutomorphism(Q, M, kind, lam, r)
    if not phi.is_automorphism():
        raise AssertionError("extended map is not multiplicative")
    return phi


def kernel_scalings(Q: AlgebraStructure) -> list:
    """Scalars lam for which ``id on Q0, lam * id on Q1`` preserves every product.

    Each nonzero structure constant c_ijk forces lam^(p_i + p_j - p_k) = 1 with
    p the parity; the admissible lam are the roots of unity of the gcd order.
    """
    F = Q.field
    g = 0
    for i, j, k, c in Q.nonzero_triples():
        if c:
            g = math.gcd(g, abs(Q.parity[i] + Q.parity[j] - Q.parity[k]))
    if g == 0:
        raise ValueError("no constraint: every nonzero scalar works")
    if F.is_rational:
        return [F(1), F(-1)] if g % 2 == 0 else [F(1)]
    return sorted((x for x in F.elements() if x and x**g == 1), key=int)


def inner_witness(alg: AlgebraStructure, op: Matrix) -> Matrix | None:
    """An invertible r with ``r B_i r^-1 = op(B_i)`` on the matrix basis, or None.

    ``alg`` must be a matrix-realized (non-super) algebra whose basis
    generates an irreducible set; a nonzero intertwiner is then invertible.
    """
    F = alg.field
    mats = alg.matrices
    m = mats[0].nrows
    images = [alg.realize(c) for c in op.columns()]
    rows = []
    # r B - B' r = 0, unknown r flattened row-major
    for B, Bp in zip(mats, images):
        for i in range(m):
            for j in range(m):
                row = [F.zero] * (m * m)
                for k in range(m):
                    if B.rows[k][j]:
                        row[i * m + k] = row[i * m + k] + B.rows[k][j]
                    if Bp.rows[i][k]:
                        row[k * m + j] = row[k * m + j] - Bp.rows[i][k]
                rows.append(row)
    ns = nullspace(Matrix(F, rows, m * m))
    for v in ns:
        r = Matrix(F, [v[i * m:(i + 1) * m] for i in range(m)])
        if r.is_invertible():
            return r
    return None


# --------------------------------------------------------------- isomorphism


@dataclass(frozen=True)
class IsoResult:
    verdict: str
    reason: str
    automorphism: Matrix | None = None
    witness: tuple | None = None

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "reason": self.reason}
        if self.witness is not None:
            kind, r = self.witness
            out["witness"] = {"kind": kind, "r": r.to_json()}
        return out


def _maps_degrees(M: Matrix, src: Sequence[GroupElement], dst: Sequence[GroupElement]) -> bool:
    for j, col in enumerate(M.columns()):
        for i, x in enumerate(col):
            if x and dst[i] != src[j]:
                return False
    return True


def _signed_permutations(F: Field, m: int):
    for perm in itertools.permutations(range(m)):
        for signs in itertools.product((1, -1), repeat=m - 1):
            s = (1,) + signs
            yield Matrix(F, [[F(s[i]) if perm[i] == j else F.zero for j in range(m)] for i in range(m)])


def _normalizer_candidates(F: Field, m: int):
    yield from _signed_permutations(F, m)
    for l in range(2, m + 1):
        if m % l or not F.has_root(l) or l != m:
            continue
        X, Y = pauli_matrices(l, F)
        for a in range(l):
            for b in range(l):
                if a or b:
                    yield X**a @ Y**b


def _try_witness(A: "SuperGrading", B: "SuperGrading", kind: str, r: Matrix) -> Matrix | None:
    try:
        M = lift_map(A.algebra, B.algebra, kind, r)
    except (ValueError, FieldError):
        return None
    if not _maps_degrees(M, A.grading.degrees, B.grading.degrees):
        return None
    if not _is_homomorphism(A.algebra, B.algebra, M):
        return None
    return M


def decide_iso_extensions(A: SuperGrading, B: SuperGrading, witness: tuple | None = None,
                          search: bool = True) -> IsoResult:
    """Three-valued isomorphism test for two extensions by the same group.

    ``witness`` is ``(kind, r)`` describing an even-part automorphism that
    should carry A's even grading to B's.
    """
    if A.flavor != B.flavor or A.n != B.n:
        raise ExtensionError("extensions live on different superalgebras")
    if A.group != B.group:
        raise ExtensionError("extensions use different grading groups")
    if A.d != B.d:
        return IsoResult("not", "shift elements differ")
    if witness is not None:
        kind, r = witness
        M = _try_witness(A, B, kind, r)
        if M is None:
            raise ExtensionError("witness does not map the gradings degree-by-degree")
        return IsoResult("isomorphic", "witness verified", M, (kind, r))
    if search:
        F = A.algebra.field
        m = A.algebra.matrices[0].nrows
        if m <= 4:
            kinds = ["inner"] + (["outer"] if F.has_root(4) else [])
            for r in _normalizer_candidates(F, m):
                for kind in kinds:
                    M = _try_witness(A, B, kind, r)
                    if M is not None:
                        return IsoResult("isomorphic", "witness found by search", M, (kind, r))
    if A.even.h != B.even.h or A.even.type_tag != B.even.type_tag:
        return IsoResult("not", "distinguished elements differ")
    if A.grading.dimension_profile() != B.grading.dimension_profile():
        return IsoResult("not", "component dimensions differ")
    return IsoResult("unknown", "invariants agree and no witness was found")


# ------------------------------------------------------------ fine gradings


def fine_on_Q(ep: EvenPartGrading) -> tuple[SuperGrading, AbelianGroup]:
    """Lift a fine grading (over its universal group G) to Q over G[h^(1/2)]."""
    H, emb, d = adjoin_square_root(ep.group, ep.h)
    sg = extend_to_Q(push_even(ep, emb), d)
    U, _ = universal_group_of(sg.grading)
    if not is_isomorphic(U, H):
        raise AssertionError(f"universal group {U} differs from {H}")
    return sg, H.canonical()


def character_action(sg: SuperGrading, chi: Character) -> QAutomorphism:
    """Diagonal action ``x -> chi(deg x) x``; lambda = chi(d)."""
    if chi.group != sg.group:
        raise GradingError("character is defined on a different group")
    Q = sg.algebra
    F = Q.field
    if chi.field != F:
        raise FieldError("character takes values in a different field")
    M = Matrix.diag(F, [chi(g) for g in sg.grading.degrees])
    lam = chi(sg.d)
    phi = QAutomorphism(Q, M, _kind(lam), lam)
    if not phi.is_automorphism():
        raise AssertionError("character action is not an automorphism")
    return phi
