"""Structure-constant tables for M_n, A = M_n + uM_n, Q(n) and friends.

Every algebra here is a finite-dimensional (super)algebra with a labeled
basis of pure-parity vectors.  Most carry a matrix realization
(``AlgebraStructure.matrices``): for Q(n) in the pair model the i-th even
basis vector is the matrix ``B_i`` and the i-th odd vector is its
underlined copy, so both halves share the same list of matrices.

Any basis of sl(m) (resp. M_n) may be supplied to the builders; gradings are
always read off a homogeneous basis, so the Q(n) built over the basis of a
graded even part is exactly the carrier of its extensions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, NamedTuple, Sequence

from .exactfield import CoordinateSystem, Field, FieldError, Matrix

__all__ = [
    "FLAVORS",
    "AlgebraStructure",
    "AlgebraElement",
    "matrix_units",
    "sl_basis",
    "sharp",
    "build_matrix_algebra",
    "build_A_superalgebra",
    "build_sl",
    "build_jordan_matrix",
    "build_Q_lie",
    "build_Q_jordan",
    "build_Q",
    "build_matrix_model_Q",
    "build_semidirect_adjoint",
    "algebra_from_matrices",
    "tensor_algebra",
    "rebase",
    "super_anticommutativity_violations",
    "super_jacobi_violations",
    "supercommutativity_violations",
    "parity_violations",
]

FLAVORS = (
    "associative",
    "associative-super",
    "lie",
    "lie-super",
    "jordan",
    "jordan-super",
    "space",
)


@dataclass(frozen=True, eq=False)
class AlgebraStructure:
    """Finite-dimensional (super)algebra given by sparse structure constants.

    ``table[(i, j)]`` is a tuple of ``(k, c)`` with ``e_i e_j = sum c e_k``;
    missing pairs multiply to zero.
    """

    field: Field
    labels: tuple[str, ...]
    parity: tuple[int, ...]
    table: dict
    flavor: str
    matrices: tuple[Matrix, ...] | None = None
    model: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {self.flavor!r}")
        if len(self.labels) != len(self.parity):
            raise ValueError("labels and parity differ in length")
        if any(p not in (0, 1) for p in self.parity):
            raise ValueError("parity must be 0 or 1")
        if self.matrices is not None and len(self.matrices) != len(self.labels):
            raise ValueError("one matrix per basis vector required")

    @property
    def dimension(self) -> int:
        return len(self.labels)

    @property
    def is_super(self) -> bool:
        return self.flavor.endswith("-super")

    def mul(self, i: int, j: int) -> tuple:
        return self.table.get((i, j), ())

    def product(self, x: Sequence, y: Sequence) -> tuple:
        F = self.field
        out = [F.zero] * self.dimension
        xs = [(i, a) for i, a in enumerate(x) if a]
        ys = [(j, b) for j, b in enumerate(y) if b]
        for i, a in xs:
            for j, b in ys:
                for k, c in self.table.get((i, j), ()):
                    out[k] = out[k] + a * b * c
        return tuple(out)

    def basis_vector(self, i: int) -> tuple:
        F = self.field
        return tuple(F.one if k == i else F.zero for k in range(self.dimension))

    def element(self, coords: Sequence) -> "AlgebraElement":
        return AlgebraElement(self, tuple(self.field(c) for c in coords))

    def basis(self) -> list["AlgebraElement"]:
        return [AlgebraElement(self, self.basis_vector(i)) for i in range(self.dimension)]

    def indices_of_parity(self, p: int) -> list[int]:
        return [i for i, q in enumerate(self.parity) if q == p]

    def realize(self, coords: Sequence) -> Matrix:
        """Matrix of a combination of basis vectors (requires a realization)."""
        if self.matrices is None:
            raise ValueError("algebra has no matrix realization")
        F = self.field
        acc = None
        for c, M in zip(coords, self.matrices):
            if c:
                acc = M.scale(c) if acc is None else acc + M.scale(c)
        if acc is None:
            n = self.matrices[0].nrows
            return Matrix.zeros(F, n, self.matrices[0].ncols)
        return acc

    def nonzero_triples(self):
        for (i, j), terms in self.table.items():
            for k, c in terms:
                yield i, j, k, c

    def to_json(self) -> dict:
        F = self.field
        data = {
            "flavor": self.flavor,
            "field": F.to_json(),
            "basis_labels": list(self.labels),
            "parity": list(self.parity),
            "structure_constants": [
                [i, j, k, F.format(c)] for (i, j), terms in sorted(self.table.items()) for k, c in terms
            ],
            "model": dict(self.model),
        }
        if self.matrices is not None:
            data["matrices"] = [m.to_json() for m in self.matrices]
        return data

    @classmethod
    def from_json(cls, data: dict) -> "AlgebraStructure":
        F = Field.from_json(data["field"])
        table: dict = {}
        for i, j, k, c in data["structure_constants"]:
            table.setdefault((int(i), int(j)), []).append((int(k), F.parse(c)))
        mats = None
        if data.get("matrices") is not None:
            mats = tuple(Matrix.from_json(F, m) for m in data["matrices"])
        return cls(
            F,
            tuple(data["basis_labels"]),
            tuple(int(p) for p in data["parity"]),
            {key: tuple(v) for key, v in table.items()},
            data["flavor"],
            mats,
            dict(data.get("model", {})),
        )

    def __repr__(self):
        name = self.model.get("name", "algebra")
        return f"<{name} {self.flavor} dim={self.dimension} over {self.field}>"


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    owner: AlgebraStructure
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.owner.dimension:
            raise ValueError("coordinate vector has wrong length")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.owner, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.owner, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return AlgebraElement(self.owner, tuple(-a for a in self.coords))

    def __rmul__(self, c):
        c = self.owner.field(c)
        return AlgebraElement(self.owner, tuple(c * a for a in self.coords))

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if other.owner is not self.owner:
            raise ValueError("elements of different algebras")
        return AlgebraElement(self.owner, self.owner.product(self.coords, other.coords))

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.owner is other.owner and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self):
        F = self.owner.field
        terms = [f"{F.format(c)}*{self.owner.labels[i]}" for i, c in enumerate(self.coords) if c]
        return " + ".join(terms) if terms else "0"


def _label(prefix: str, i: int, j: int | None, n: int) -> str:
    sep = "" if n < 10 else ","
    if j is None:
        return f"{prefix}{i + 1}"
    return f"{prefix}{i + 1}{sep}{j + 1}"


def matrix_units(n: int, F: Field) -> tuple[list[Matrix], list[str]]:
    """E_ij in row-major order."""
    mats, labels = [], []
    for i in range(n):
        for j in range(n):
            mats.append(Matrix.unit(F, n, i, j))
            labels.append(_label("E", i, j, n))
    return mats, labels


def sl_basis(m: int, F: Field) -> tuple[list[Matrix], list[str]]:
    """E_ij (i != j, row-major) followed by H_i = E_ii - E_{i+1,i+1}."""
    mats, labels = [], []
    for i in range(m):
        for j in range(m):
            if i != j:
                mats.append(Matrix.unit(F, m, i, j))
                labels.append(_label("E", i, j, m))
    for i in range(m - 1):
        mats.append(Matrix.unit(F, m, i, i) - Matrix.unit(F, m, i + 1, i + 1))
        labels.append(_label("H", i, None, m))
    return mats, labels


def sharp(x: Matrix) -> Matrix:
    """Traceless projection ``x - tr(x)/m * 1``."""
    m = x.nrows
    F = x.field
    t = x.trace()
    if not t:
        return x
    if F.p and m % F.p == 0:
        raise FieldError(f"characteristic {F.p} divides {m}")
    return x - Matrix.identity(F, m).scale(t / F(m))


class _Decomposer:
    """Coordinates of matrices with respect to a fixed list of basis matrices."""

    def __init__(self, F: Field, mats: Sequence[Matrix]):
        self.cs = CoordinateSystem(F, [m.flatten() for m in mats])

    def __call__(self, M: Matrix, offset: int = 0) -> list[tuple[int, object]]:
        c = self.cs.coords(M.flatten())
        return [(offset + k, x) for k, x in enumerate(c) if x]

    def coords(self, M: Matrix) -> tuple:
        return self.cs.coords(M.flatten())


def _freeze(table: dict) -> dict:
    return {k: tuple(v) for k, v in table.items() if v}


def _check_basis(mats: Sequence[Matrix], size: int, dim: int, what: str, traceless: bool):
    if len(mats) != dim:
        raise ValueError(f"{what} basis must have {dim} elements, got {len(mats)}")
    for M in mats:
        if M.shape != (size, size):
            raise ValueError(f"{what} basis matrices must be {size}x{size}")
        if traceless and M.trace():
            raise ValueError(f"{what} basis matrices must be traceless")


def _labels_for(mats, labels, prefix="B"):
    if labels is not None:
        return tuple(labels)
    return tuple(f"{prefix}{k}" for k in range(len(mats)))


def algebra_from_matrices(
    F: Field,
    mats: Sequence[Matrix],
    labels: Sequence[str],
    product: Callable[[Matrix, Matrix], Matrix],
    flavor: str,
    model: dict | None = None,
) -> AlgebraStructure:
    """Non-super algebra spanned by ``mats`` and closed under ``product``."""
    dec = _Decomposer(F, mats)
    table = {}
    for i, A in enumerate(mats):
        for j, B in enumerate(mats):
            try:
                table[(i, j)] = dec(product(A, B))
            except ValueError:
                raise ValueError(f"product of {labels[i]} and {labels[j]} leaves the span") from None
    return AlgebraStructure(
        F, tuple(labels), (0,) * len(mats), _freeze(table), flavor, tuple(mats), dict(model or {})
    )


@lru_cache(maxsize=256)
def _cached_build(kind: str, n: int, F: Field, basis: tuple | None, labels: tuple | None):
    return _BUILDERS[kind](n, F, basis, labels)


def _basis_args(basis, labels):
    return (tuple(basis) if basis is not None else None, tuple(labels) if labels is not None else None)


def build_matrix_algebra(n: int, F: Field, basis=None, labels=None) -> AlgebraStructure:
    """Associative M_n, all even; default basis E_ij."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _cached_build("M", n, F, *_basis_args(basis, labels))


def _M(n, F, basis, labels):
    if basis is None:
        basis, labels = matrix_units(n, F)
    else:
        _check_basis(basis, n, n * n, "M_n", traceless=False)
    return algebra_from_matrices(
        F, basis, _labels_for(basis, labels), lambda a, b: a @ b, "associative", {"name": "M", "n": n}
    )


def build_jordan_matrix(n: int, F: Field, basis=None, labels=None) -> AlgebraStructure:
    """Jordan algebra M_n^(+) with ``a o b = ab + ba``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _cached_build("Mplus", n, F, *_basis_args(basis, labels))


def _Mplus(n, F, basis, labels):
    if basis is None:
        basis, labels = matrix_units(n, F)
    else:
        _check_basis(basis, n, n * n, "M_n", traceless=False)
    return algebra_from_matrices(
        F, basis, _labels_for(basis, labels), lambda a, b: a @ b + b @ a, "jordan",
        {"name": "Mplus", "n": n},
    )


def build_sl(m: int, F: Field, basis=None, labels=None) -> AlgebraStructure:
    """Lie algebra sl(m) with the commutator bracket."""
    if m < 2:
        raise ValueError("m must be >= 2")
    return _cached_build("sl", m, F, *_basis_args(basis, labels))


def _sl(m, F, basis, labels):
    if basis is None:
        basis, labels = sl_basis(m, F)
    else:
        _check_basis(basis, m, m * m - 1, "sl", traceless=True)
    return algebra_from_matrices(
        F, basis, _labels_for(basis, labels), lambda a, b: a @ b - b @ a, "lie", {"name": "sl", "n": m}
    )


def build_A_superalgebra(n: int, F: Field, basis=None, labels=None) -> AlgebraStructure:
    """Associative superalgebra A = M_n + uM_n with u odd, central, u^2 = 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _cached_build("A", n, F, *_basis_args(basis, labels))


def _A(n, F, basis, labels):
    if basis is None:
        basis, labels = matrix_units(n, F)
    else:
        _check_basis(basis, n, n * n, "M_n", traceless=False)
    labels = _labels_for(basis, labels)
    N = len(basis)
    dec = _Decomposer(F, basis)
    table = {}
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            ab = dec(a @ b)
            table[(i, j)] = ab
            table[(i, N + j)] = [(N + k, c) for k, c in ab]
            table[(N + i, j)] = [(N + k, c) for k, c in ab]
            table[(N + i, N + j)] = ab
    return AlgebraStructure(
        F,
        labels + tuple("u" + s for s in labels),
        (0,) * N + (1,) * N,
        _freeze(table),
        "associative-super",
        tuple(basis) * 2,
        {"name": "A", "n": n},
    )


def _check_char(F: Field, m: int):
    if F.p and m % F.p == 0:
        raise FieldError(f"characteristic {F.p} divides {m}")


def build_Q_lie(n: int, F: Field, basis=None, labels=None) -> AlgebraStructure:
    """Lie superalgebra Q(n) on sl(n+1) + underlined sl(n+1).

    ``[a,b] = ab - ba``, ``[a, _b] = _(ab - ba)``, ``[_a, _b] = (ab + ba)^#``.
    """
    if n < 2:
        raise ValueError("Q(n) requires n >= 2")
    _check_char(F, n + 1)
    return _cached_build("Qlie", n, F, *_basis_args(basis, labels))


def _Qlie(n, F, basis, labels):
    m = n + 1
    if basis is None:
        basis, labels = sl_basis(m, F)
    else:
        _check_basis(basis, m, m * m - 1, "sl", traceless=True)
    labels = _labels_for(basis, labels)
    N = len(basis)
    dec = _Decomposer(F, basis)
    table = {}
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            ab, ba = a @ b, b @ a
            comm = dec(ab - ba)
            table[(i, j)] = comm
            table[(i, N + j)] = [(N + k, c) for k, c in comm]
            table[(N + i, j)] = [(N + k, c) for k, c in comm]
            table[(N + i, N + j)] = dec(sharp(ab + ba))
    return AlgebraStructure(
        F,
        labels + tuple("_" + s for s in labels),
        (0,) * N + (1,) * N,
        _freeze(table),
        "lie-super",
        tuple(basis) * 2,
        {"name": "Q", "flavor": "lie", "n": n},
    )


def build_Q_jordan(n: int, F: Field, basis=None, labels=None) -> AlgebraStructure:
    """Jordan superalgebra Q(n) on M_n + underlined M_n.

    ``a o b = ab + ba``, ``a o _b = _(ab + ba)``, ``_a o _b = ab - ba``.
    """
    if n < 2:
        raise ValueError("Q(n) requires n >= 2")
    return _cached_build("Qjordan", n, F, *_basis_args(basis, labels))


def _Qjordan(n, F, basis, labels):
    if basis is None:
        basis, labels = matrix_units(n, F)
    else:
        _check_basis(basis, n, n * n, "M_n", traceless=False)
    labels = _labels_for(basis, labels)
    N = len(basis)
    dec = _Decomposer(F, basis)
    table = {}
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            ab, ba = a @ b, b @ a
            sym = dec(ab + ba)
            table[(i, j)] = sym
            table[(i, N + j)] = [(N + k, c) for k, c in sym]
            table[(N + i, j)] = [(N + k, c) for k, c in sym]
            table[(N + i, N + j)] = dec(ab - ba)
    return AlgebraStructure(
        F,
        labels + tuple("_" + s for s in labels),
        (0,) * N + (1,) * N,
        _freeze(table),
        "jordan-super",
        tuple(basis) * 2,
        {"name": "Q", "flavor": "jordan", "n": n},
    )


def build_Q(n: int, F: Field, flavor: str, basis=None, labels=None) -> AlgebraStructure:
    if flavor == "lie":
        return build_Q_lie(n, F, basis, labels)
    if flavor == "jordan":
        return build_Q_jordan(n, F, basis, labels)
    raise ValueError(f"flavor must be 'lie' or 'jordan', got {flavor!r}")


def build_semidirect_adjoint(n: int, F: Field, basis=None, labels=None) -> AlgebraStructure:
    """psl(n) + its adjoint module: ``[(x,m),(y,m')] = ([x,y], [x,m'] + [m,y])``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    _check_char(F, n)
    return _cached_build("pae", n, F, *_basis_args(basis, labels))


def _pae(n, F, basis, labels):
    if basis is None:
        basis, labels = sl_basis(n, F)
    else:
        _check_basis(basis, n, n * n - 1, "sl", traceless=True)
    labels = _labels_for(basis, labels)
    N = len(basis)
    dec = _Decomposer(F, basis)
    table = {}
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            comm = dec(a @ b - b @ a)
            table[(i, j)] = comm
            table[(i, N + j)] = [(N + k, c) for k, c in comm]
            table[(N + i, j)] = [(N + k, c) for k, c in comm]
    return AlgebraStructure(
        F,
        tuple("x" + s for s in labels) + tuple("m" + s for s in labels),
        (0,) * (2 * N),
        _freeze(table),
        "lie",
        tuple(basis) * 2,
        {"name": "pae", "n": n},
    )


_BUILDERS = {
    "M": _M,
    "Mplus": _Mplus,
    "sl": _sl,
    "A": _A,
    "Qlie": _Qlie,
    "Qjordan": _Qjordan,
    "pae": _pae,
}


class MatrixModel(NamedTuple):
    """Q(n) inside M(m,m) together with the mutually inverse maps to the pair model."""

    algebra: AlgebraStructure
    to_pair: Callable[[Matrix], tuple]
    from_pair: Callable[[Sequence], Matrix]


def build_matrix_model_Q(n: int, F: Field, flavor: str, basis=None, labels=None) -> MatrixModel:
    """Block-matrix realization of Q(n).

    Lie: elements ``[[a, b], [b, a]] + F1`` of M(n+1, n+1) with tr(b) = 0, mapped
    to ``(a^#, b)``.  Jordan: ``[[a, b], [b, a]]`` in M(n, n), mapped to ``(a, b)``.
    Products are the supercommutator (Lie) or supersymmetrized product (Jordan)
    of the block matrices.
    """
    pair = build_Q(n, F, flavor, basis, labels)
    N = pair.dimension // 2
    B = pair.matrices[:N]
    m = B[0].nrows
    dec = _Decomposer(F, B)
    zero = Matrix.zeros(F, m)

    def from_pair(coords: Sequence) -> Matrix:
        if len(coords) != 2 * N:
            raise ValueError("pair-model coordinate vector has wrong length")
        a = pair.realize(list(coords[:N]) + [0] * N)
        b = pair.realize([0] * N + list(coords[N:]))
        return Matrix.blocks([[a, b], [b, a]])

    def to_pair(X: Matrix) -> tuple:
        if X.shape != (2 * m, 2 * m):
            raise ValueError("block matrix has wrong size")
        a, b = X.submatrix(0, m, 0, m), X.submatrix(0, m, m, 2 * m)
        if X.submatrix(m, 2 * m, m, 2 * m) != a or X.submatrix(m, 2 * m, 0, m) != b:
            raise ValueError("matrix is not of the form [[a, b], [b, a]]")
        if flavor == "lie":
            if b.trace():
                raise ValueError("odd block must be traceless")
            a = sharp(a)
        return tuple(dec.coords(a)) + tuple(dec.coords(b))

    bigs = []
    for i in range(N):
        bigs.append(Matrix.blocks([[B[i], zero], [zero, B[i]]]))
    for i in range(N):
        bigs.append(Matrix.blocks([[zero, B[i]], [B[i], zero]]))
    parity = pair.parity
    sign = -1 if flavor == "lie" else 1
    table = {}
    for i, X in enumerate(bigs):
        for j, Y in enumerate(bigs):
            s = sign * (-1 if parity[i] and parity[j] else 1)
            P = X @ Y + (Y @ X).scale(s)
            table[(i, j)] = [(k, c) for k, c in enumerate(to_pair(P)) if c]
    alg = AlgebraStructure(
        F,
        pair.labels,
        parity,
        _freeze(table),
        pair.flavor,
        tuple(bigs),
        {"name": "Q-matrix-model", "flavor": flavor, "n": n},
    )
    return MatrixModel(alg, to_pair, from_pair)


def tensor_algebra(A: AlgebraStructure, B: AlgebraStructure) -> AlgebraStructure:
    """A (x) B on the product basis ``(i, a) -> i * dim B + a``.

    Products are defined for two associative (non-super) factors; any other
    combination yields a bare graded space (flavor ``"space"``).
    """
    F = A.field
    if B.field != F:
        raise ValueError("tensor factors over different fields")
    dB = B.dimension
    labels = tuple(f"{x}(x){y}" for x in A.labels for y in B.labels)
    parity = tuple((p + q) % 2 for p in A.parity for q in B.parity)
    mats = None
    if A.matrices is not None and B.matrices is not None:
        mats = tuple(x.kron(y) for x in A.matrices for y in B.matrices)
    if A.flavor == B.flavor == "associative":
        table = {}
        for (i, j), ta in A.table.items():
            for (a, b), tb in B.table.items():
                table[(i * dB + a, j * dB + b)] = [
                    (k * dB + c, x * y) for k, x in ta for c, y in tb
                ]
        return AlgebraStructure(F, labels, parity, _freeze(table), "associative", mats,
                                {"name": "tensor"})
    return AlgebraStructure(F, labels, parity, {}, "space", mats, {"name": "tensor"})


def rebase(alg: AlgebraStructure, vectors: Sequence[Sequence], labels: Sequence[str] | None = None,
           parity: Sequence[int] | None = None) -> AlgebraStructure:
    """The same algebra written in a new basis given by coordinate vectors."""
    F = alg.field
    vecs = [tuple(F(x) for x in v) for v in vectors]
    if len(vecs) != alg.dimension:
        raise ValueError("a basis must have exactly dim vectors")
    cs = CoordinateSystem(F, vecs)
    table = {}
    for a, u in enumerate(vecs):
        for b, v in enumerate(vecs):
            c = cs.coords(alg.product(u, v))
            table[(a, b)] = [(k, x) for k, x in enumerate(c) if x]
    if parity is None:
        parity = []
        for v in vecs:
            ps = {alg.parity[i] for i, x in enumerate(v) if x}
            if len(ps) != 1:
                raise ValueError("new basis vectors must have pure parity")
            parity.append(ps.pop())
    mats = None
    if alg.matrices is not None and not alg.is_super:
        mats = tuple(alg.realize(v) for v in vecs)
    if labels is None:
        labels = [f"v{k}" for k in range(len(vecs))]
    model = dict(alg.model)
    model["rebased"] = True
    return AlgebraStructure(F, tuple(labels), tuple(parity), _freeze(table), alg.flavor, mats, model)


# ---------------------------------------------------------------- identities


def super_anticommutativity_violations(alg: AlgebraStructure) -> list[tuple[int, int]]:
    """Pairs violating ``[x,y] = -(-1)^{|x||y|} [y,x]``."""
    bad = []
    d = alg.dimension
    for i in range(d):
        for j in range(i, d):
            s = 1 if alg.parity[i] and alg.parity[j] else -1
            xy = alg.product(alg.basis_vector(i), alg.basis_vector(j))
            yx = alg.product(alg.basis_vector(j), alg.basis_vector(i))
            if any(a != s * b for a, b in zip(xy, yx)):
                bad.append((i, j))
    return bad


def supercommutativity_violations(alg: AlgebraStructure) -> list[tuple[int, int]]:
    """Pairs violating ``x o y = (-1)^{|x||y|} y o x``."""
    bad = []
    d = alg.dimension
    for i in range(d):
        for j in range(i, d):
            s = -1 if alg.parity[i] and alg.parity[j] else 1
            xy = alg.product(alg.basis_vector(i), alg.basis_vector(j))
            yx = alg.product(alg.basis_vector(j), alg.basis_vector(i))
            if any(a != s * b for a, b in zip(xy, yx)):
                bad.append((i, j))
    return bad


def super_jacobi_violations(alg: AlgebraStructure) -> list[tuple[int, int, int]]:
    """Triples violating ``[x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]``."""
    d = alg.dimension
    e = [alg.basis_vector(i) for i in range(d)]
    prod = {}
    for i in range(d):
        for j in range(d):
            prod[(i, j)] = alg.product(e[i], e[j])
    bad = []
    for i in range(d):
        for j in range(d):
            sign = -1 if alg.parity[i] and alg.parity[j] else 1
            for k in range(d):
                lhs = alg.product(e[i], prod[(j, k)])
                r1 = alg.product(prod[(i, j)], e[k])
                r2 = alg.product(e[j], prod[(i, k)])
                if any(a != b + sign * c for a, b, c in zip(lhs, r1, r2)):
                    bad.append((i, j, k))
    return bad


def parity_violations(alg: AlgebraStructure) -> list[tuple[int, int, int]]:
    """Nonzero structure constants c_ijk with parity(k) != parity(i) + parity(j)."""
    return [
        (i, j, k)
        for i, j, k, c in alg.nonzero_triples()
        if alg.parity[k] != (alg.parity[i] + alg.parity[j]) % 2
    ]

