"""Exact scalars and dense linear algebra over Q and GF(p).

Rationals are :class:`fractions.Fraction`; prime-field elements are
:class:`ModInt`.  Both support the usual operators and compare equal to
plain integers, so algorithms below are written once for either field.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Sequence

__all__ = [
    "FieldError",
    "ModInt",
    "Field",
    "QQ",
    "provision_field",
    "Matrix",
    "Solution",
    "rref",
    "rref_solve",
    "nullspace",
    "CoordinateSystem",
    "simultaneous_eigenspaces",
]

DEFAULT_PRIME_CAP = 10**6


class FieldError(ValueError):
    """Raised when a field lacks a requested root of unity or is unsuitable."""


class ModInt:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModInt):
            if other.p != self.p:
                raise FieldError(f"mixing GF({self.p}) and GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModInt(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModInt(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModInt(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ModInt(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return ModInt(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.v == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return ModInt(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return ModInt(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            if self.v == 0:
                raise ZeroDivisionError("0 has no inverse")
            return ModInt(pow(pow(self.v, -1, self.p), -k, self.p), self.p)
        return ModInt(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.v == o

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v} (mod {self.p})"

    def __str__(self):
        return str(self.v)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class Field:
    """Q when ``p == 0``, otherwise GF(p).

    In the prime case every order ``m`` dividing ``p - 1`` is provisioned:
    the primitive ``m``-th root of unity is ``g ** ((p-1)/m)`` for the least
    primitive root ``g``.  Over Q only orders 1 and 2 are available.
    """

    p: int = 0

    def __post_init__(self):
        if self.p and (self.p == 2 or not _is_prime(self.p)):
            raise FieldError(f"unsupported characteristic {self.p}")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, x):
        if self.p == 0:
            if isinstance(x, ModInt):
                raise FieldError("cannot coerce a residue into Q")
            return Fraction(x)
        if isinstance(x, ModInt):
            if x.p != self.p:
                raise FieldError(f"mixing GF({x.p}) and GF({self.p})")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"{x} is undefined in GF({self.p})")
            return ModInt(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return ModInt(int(x), self.p)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @cached_property
    def _generator(self) -> int:
        factors = _prime_factors(self.p - 1)
        for g in range(2, self.p):
            if all(pow(g, (self.p - 1) // q, self.p) != 1 for q in factors):
                return g
        return 1  # p == 3

    def has_root(self, m: int) -> bool:
        if m < 1:
            return False
        if self.p == 0:
            return m in (1, 2)
        return (self.p - 1) % m == 0

    @property
    def provisioned_orders(self) -> frozenset[int]:
        if self.p == 0:
            return frozenset({1, 2})
        return frozenset(m for m in range(1, self.p) if (self.p - 1) % m == 0)

    def root(self, m: int):
        """Stored primitive ``m``-th root of unity."""
        if not self.has_root(m):
            raise FieldError(f"{self} has no primitive root of unity of order {m}")
        if self.p == 0:
            return Fraction(1 if m == 1 else -1)
        return ModInt(pow(self._generator, (self.p - 1) // m, self.p), self.p)

    def sqrt_minus_one(self):
        """A square root of -1, or None."""
        return self.root(4) if self.has_root(4) else None

    def elements(self):
        if self.p == 0:
            raise FieldError("Q is infinite")
        return [ModInt(v, self.p) for v in range(self.p)]

    def format(self, x) -> str:
        x = self(x)
        if self.p:
            return str(x.v)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def parse(self, s) -> object:
        if isinstance(s, int):
            return self(s)
        return self(Fraction(s))

    def to_json(self) -> dict:
        if self.p == 0:
            return {"kind": "rational"}
        return {"kind": "prime", "p": self.p}

    @classmethod
    def from_json(cls, data: dict) -> "Field":
        if data.get("kind") == "rational":
            return cls(0)
        return cls(int(data["p"]))

    def __str__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"


QQ = Field(0)


def provision_field(
    required_orders: Iterable[int] = (),
    need_sqrt_minus_one: bool = False,
    avoid_divisors: Iterable[int] = (),
    cap: int | None = None,
) -> Field:
    """Smallest field providing the requested roots of unity.

    Returns Q when only orders 1 and 2 are needed; otherwise the least prime
    ``p = 1 (mod L)`` with ``L`` the lcm of the orders (and 4 when a square
    root of -1 is needed) such that ``p`` divides none of ``avoid_divisors``.
    """
    orders = {int(m) for m in required_orders}
    if any(m < 1 for m in orders):
        raise FieldError("root-of-unity orders must be positive")
    if orders <= {1, 2} and not need_sqrt_minus_one:
        return QQ
    if need_sqrt_minus_one:
        orders.add(4)
    L = reduce(math.lcm, orders, 1)
    if cap is None:
        cap = int(os.environ.get("QGRADE_PRIME_CAP", DEFAULT_PRIME_CAP))
    avoid = [abs(int(a)) for a in avoid_divisors if a]
    p = L + 1
    while p <= cap:
        if p > 2 and _is_prime(p) and not any(a % p == 0 for a in avoid):
            F = Field(p)
            for m in orders:
                eps = F.root(m)
                assert eps**m == 1
                assert all(eps**k != 1 for k in range(1, m))
            return F
        p += L
    raise FieldError(f"no suitable prime below {cap} for orders {sorted(orders)}")


class Matrix:
    """Immutable dense matrix over a :class:`Field`."""

    __slots__ = ("field", "rows", "nrows", "ncols", "_hash")

    def __init__(self, field: Field, rows: Sequence[Sequence], ncols: int | None = None):
        self.field = field
        self.rows = tuple(tuple(field(x) for x in r) for r in rows)
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        if any(len(r) != ncols for r in self.rows):
            raise ValueError("ragged matrix")
        self._hash = None

    @classmethod
    def _raw(cls, field, rows, ncols):
        m = cls.__new__(cls)
        m.field = field
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        m._hash = None
        return m

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int | None = None) -> "Matrix":
        ncols = nrows if ncols is None else ncols
        z = field.zero
        return cls._raw(field, tuple((z,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls._raw(field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), n)

    @classmethod
    def unit(cls, field: Field, n: int, i: int, j: int) -> "Matrix":
        """Matrix unit E_ij (0-based)."""
        z, o = field.zero, field.one
        return cls._raw(
            field, tuple(tuple(o if (r, c) == (i, j) else z for c in range(n)) for r in range(n)), n
        )

    @classmethod
    def diag(cls, field: Field, entries: Sequence) -> "Matrix":
        n = len(entries)
        return cls(field, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence]) -> "Matrix":
        if not cols:
            raise ValueError("no columns")
        return cls(field, list(zip(*cols)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(
            self.field,
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.ncols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(
            self.field,
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.ncols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.field, tuple(tuple(-a for a in r) for r in self.rows), self.ncols)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix._raw(self.field, tuple(tuple(c * a for a in r) for r in self.rows), self.ncols)

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        zero = self.field.zero
        brows = other.rows
        bnz = [[(j, b) for j, b in enumerate(r) if b] for r in brows]
        out = []
        for r in self.rows:
            acc = [zero] * other.ncols
            for k, a in enumerate(r):
                if a:
                    for j, b in bnz[k]:
                        acc[j] = acc[j] + a * b
            out.append(tuple(acc))
        return Matrix._raw(self.field, tuple(out), other.ncols)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        zero = self.field.zero
        nz = [(j, x) for j, x in enumerate(v) if x]
        return tuple(sum((r[j] * x for j, x in nz), zero) for r in self.rows)

    def __pow__(self, k: int) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Matrix.identity(self.field, self.nrows), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.field, tuple(zip(*self.rows)) if self.rows else (), self.nrows)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def trace(self):
        if self.nrows != self.ncols:
            raise ValueError("trace of a non-square matrix")
        return sum((self.rows[i][i] for i in range(self.nrows)), self.field.zero)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def columns(self) -> list[tuple]:
        return [tuple(r[j] for r in self.rows) for j in range(self.ncols)]

    def flatten(self) -> tuple:
        return tuple(x for r in self.rows for x in r)

    def kron(self, other: "Matrix") -> "Matrix":
        rows = []
        for r in self.rows:
            for s in other.rows:
                rows.append(tuple(a * b for a in r for b in s))
        return Matrix._raw(self.field, tuple(rows), self.ncols * other.ncols)

    @classmethod
    def blocks(cls, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        """Assemble a block matrix from a grid of equally shaped blocks."""
        field = grid[0][0].field
        rows = []
        for brow in grid:
            for i in range(brow[0].nrows):
                rows.append(tuple(x for b in brow for x in b.rows[i]))
        return cls._raw(field, tuple(rows), sum(b.ncols for b in grid[0]))

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        return Matrix._raw(self.field, tuple(r[c0:c1] for r in self.rows[r0:r1]), c1 - c0)

    def rank(self) -> int:
        return len(rref(self)[1])

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        aug = Matrix._raw(
            self.field,
            tuple(r + Matrix.identity(self.field, n).rows[i] for i, r in enumerate(self.rows)),
            2 * n,
        )
        R, piv = rref(aug)
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return R.submatrix(0, n, n, 2 * n)

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def to_json(self) -> list[list[str]]:
        return [[self.field.format(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, field: Field, data) -> "Matrix":
        return cls(field, [[field.parse(x) for x in r] for r in data])

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self.rows)
        return f"Matrix[{self.field}]({body})"


def rref(A: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    rows = [list(r) for r in A.rows]
    m, n = A.nrows, A.ncols
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        pr = next((i for i in range(r, m) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        nz = [(j, x) for j, x in enumerate(prow) if x]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                ri = rows[i]
                for j, x in nz:
                    ri[j] = ri[j] - f * x
        pivots.append(c)
        r += 1
    return Matrix._raw(A.field, tuple(tuple(x) for x in rows), n), pivots


@dataclass(frozen=True)
class Solution:
    """Solution set of ``A x = b``: ``particular + span(nullspace)``, or empty."""

    rank: int
    particular: tuple | None
    nullspace: tuple[tuple, ...]

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    @property
    def unique(self) -> bool:
        return self.consistent and not self.nullspace


def _nullspace_from_rref(R: Matrix, pivots: list[int]) -> list[tuple]:
    n = R.ncols
    free = [j for j in range(n) if j not in set(pivots)]
    zero, one = R.field.zero, R.field.one
    basis = []
    for f in free:
        v = [zero] * n
        v[f] = one
        for i, pc in enumerate(pivots):
            v[pc] = -R.rows[i][f]
        basis.append(tuple(v))
    return basis


def nullspace(A: Matrix) -> list[tuple]:
    """Basis of ``{x : A x = 0}``."""
    R, piv = rref(A)
    return _nullspace_from_rref(R, piv)


def rref_solve(A: Matrix, b: Sequence) -> Solution:
    if len(b) != A.nrows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {A.nrows}")
    F = A.field
    aug = Matrix._raw(
        F, tuple(r + (F(x),) for r, x in zip(A.rows, b)), A.ncols + 1
    )
    R, piv = rref(aug)
    n = A.ncols
    if n in piv:
        rank = len(piv) - 1
        return Solution(rank, None, tuple(nullspace(A)))
    x = [F.zero] * n
    for i, pc in enumerate(piv):
        x[pc] = R.rows[i][n]
    coef = R.submatrix(0, R.nrows, 0, n)
    return Solution(len(piv), tuple(x), tuple(_nullspace_from_rref(coef, piv)))


class CoordinateSystem:
    """Coordinates with respect to a linearly independent family of vectors."""

    def __init__(self, field: Field, vectors: Sequence[Sequence]):
        self.field = field
        self.vectors = [tuple(field(x) for x in v) for v in vectors]
        k = len(self.vectors)
        if k == 0:
            self.length = 0
            self._rows, self._inv = [], None
            return
        self.length = len(self.vectors[0])
        M = Matrix.from_columns(field, self.vectors)
        # choose k independent coordinates
        _, piv = rref(M.transpose())
        if len(piv) != k:
            raise ValueError("vectors are linearly dependent")
        self._rows = piv
        sub = Matrix(field, [M.rows[i] for i in piv])
        self._inv = sub.inverse()

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def coords(self, v: Sequence, check: bool = True) -> tuple:
        """Coefficients ``c`` with ``sum c_i vectors_i == v``; ValueError if outside the span."""
        if not self.vectors:
            if check and any(v):
                raise ValueError("vector not in span")
            return ()
        c = self._inv.apply([v[i] for i in self._rows])
        if check:
            zero = self.field.zero
            recon = [zero] * self.length
            for ci, vec in zip(c, self.vectors):
                if ci:
                    for j, x in enumerate(vec):
                        if x:
                            recon[j] = recon[j] + ci * x
            if any(a != b for a, b in zip(recon, v)):
                raise ValueError("vector not in span")
        return c

    def contains(self, v: Sequence) -> bool:
        try:
            self.coords(v)
        except ValueError:
            return False
        return True


def simultaneous_eigenspaces(
    operators: Sequence[Matrix], orders: Sequence[int], field: Field
) -> list[tuple[tuple[int, ...], list[tuple]]]:
    """Joint eigenspaces of commuting operators of finite order.

    Returns ``(exponents, basis)`` pairs where every basis vector ``v`` satisfies
    ``operators[i] v == eps_i ** exponents[i] * v`` with ``eps_i`` the field's
    primitive ``orders[i]``-th root of unity.  Empty spaces are omitted.
    """
    if len(operators) != len(orders):
        raise ValueError("one order per operator required")
    if not operators:
        raise ValueError("at least one operator required")
    n = operators[0].nrows
    ident = Matrix.identity(field, n)
    for op, m in zip(operators, orders):
        if op.shape != (n, n):
            raise ValueError("operators must be square and of equal size")
        if not field.has_root(m):
            raise FieldError(f"{field} lacks a primitive root of unity of order {m}")
        if op**m != ident:
            raise ValueError(f"operator does not satisfy op^{m} = 1")
    for a in range(len(operators)):
        for b in range(a + 1, len(operators)):
            if operators[a] @ operators[b] != operators[b] @ operators[a]:
                raise ValueError(f"operators {a} and {b} do not commute")

    spaces: list[tuple[tuple[int, ...], list[tuple]]] = [((), [tuple(r) for r in ident.rows])]
    for op, m in zip(operators, orders):
        eps = field.root(m)
        refined = []
        for exps, basis in spaces:
            B = Matrix.from_columns(field, basis)
            found = 0
            for a in range(m):
                shifted = op - ident.scale(eps**a)
                coeffs = nullspace(shifted @ B)
                if coeffs:
                    vecs = [B.apply(c) for c in coeffs]
                    refined.append((exps + (a,), vecs))
                    found += len(vecs)
            if found != len(basis):
                raise ValueError("operator is not diagonalizable on a joint eigenspace")
        spaces = refined
    return spaces
