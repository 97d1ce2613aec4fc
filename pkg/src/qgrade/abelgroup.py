"""Finitely generated abelian groups in Smith canonical form.

A group is stored as ``Z^r x Z_{d1} x ... x Z_{dk}`` with ``d1 | d2 | ...``.
Elements carry canonical coordinates, free part first.  Groups built from a
presentation remember the change of basis so presentation generators can be
mapped to canonical coordinates; this is how quotients, square-root
adjunction and universal groups produce their homomorphisms.

The group law is written additively (``x + y``, ``-x``, ``k * x``).
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Iterator, Sequence

from .exactfield import Field, FieldError

__all__ = [
    "GroupError",
    "Presentation",
    "AbelianGroup",
    "GroupElement",
    "GroupHom",
    "Character",
    "smith_normal_form",
    "from_presentation",
    "square_roots",
    "quotient_by",
    "quotient",
    "adjoin_square_root",
    "is_isomorphic",
    "direct_product",
    "finite_characters",
    "INFINITE",
]

INFINITE = math.inf


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    """``generator_count`` generators subject to ``sum_j r_j g_j = 0`` per relation row."""

    generator_count: int
    relations: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.generator_count < 0:
            raise GroupError("generator_count must be nonnegative")
        rels = tuple(tuple(int(x) for x in r) for r in self.relations)
        for r in rels:
            if len(r) != self.generator_count:
                raise GroupError(
                    f"relation {list(r)} has length {len(r)}, expected {self.generator_count}"
                )
        object.__setattr__(self, "relations", rels)

    def to_json(self) -> dict:
        return {"generators": self.generator_count, "relations": [list(r) for r in self.relations]}

    @classmethod
    def from_json(cls, data: dict) -> "Presentation":
        return cls(int(data["generators"]), tuple(tuple(r) for r in data.get("relations", [])))


def smith_normal_form(rows: Sequence[Sequence[int]], ncols: int):
    """Return ``(diag, U, V, V_inv)`` with ``U A V = D``.

    ``diag`` lists the nonzero diagonal entries (positive, divisibility
    chain).  ``U`` and ``V`` are unimodular integer matrices given as lists of
    rows.  An already canonical diagonal input is left untouched.
    """
    M = [list(map(int, r)) for r in rows]
    m, n = len(M), ncols
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(a, b):
        M[a], M[b] = M[b], M[a]
        U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        for r in M:
            r[a], r[b] = r[b], r[a]
        for r in V:
            r[a], r[b] = r[b], r[a]
        Vi[a], Vi[b] = Vi[b], Vi[a]

    def add_row(dst, src, q):  # row dst += q * row src
        M[dst] = [x + q * y for x, y in zip(M[dst], M[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col dst += q * col src
        for r in M:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]
        Vi[src] = [x - q * y for x, y in zip(Vi[src], Vi[dst])]

    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if M[i][j] and (best is None or abs(M[i][j]) < abs(M[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = M[t][t]
            clean = True
            for i in range(t + 1, m):
                if M[i][t]:
                    add_row(i, t, -(M[i][t] // p))
                    clean = clean and M[i][t] == 0
            for j in range(t + 1, n):
                if M[t][j]:
                    add_col(j, t, -(M[t][j] // p))
                    clean = clean and M[t][j] == 0
            if not clean:
                best = (t, t)
                for i in range(t + 1, m):
                    if M[i][t] and abs(M[i][t]) < abs(M[best[0]][best[1]]):
                        best = (i, t)
                for j in range(t + 1, n):
                    if M[t][j] and abs(M[t][j]) < abs(M[best[0]][best[1]]):
                        best = (t, j)
                swap_rows(t, best[0])
                swap_cols(t, best[1])
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % p), None
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            U[t] = [-x for x in U[t]]
        diag.append(M[t][t])
        t += 1
    return diag, U, V, Vi


@dataclass(frozen=True, eq=False)
class AbelianGroup:
    """Canonical ``Z^free_rank x Z_{invariants[0]} x ...``.

    Equality and hashing use only ``(free_rank, invariants)``, i.e. two groups
    compare equal exactly when they are isomorphic.
    """

    free_rank: int
    invariants: tuple[int, ...] = ()
    presentation: Presentation | None = field(default=None, repr=False)
    # presentation coordinates -> canonical coordinates (n x ngens)
    to_canonical: tuple[tuple[int, ...], ...] | None = field(default=None, repr=False)
    # canonical generators in presentation coordinates (ngens x n)
    from_canonical: tuple[tuple[int, ...], ...] | None = field(default=None, repr=False)

    def __post_init__(self):
        inv = tuple(int(d) for d in self.invariants)
        object.__setattr__(self, "invariants", inv)
        if self.free_rank < 0:
            raise GroupError("free rank must be nonnegative")
        for a, b in zip(inv, inv[1:]):
            if b % a:
                raise GroupError(f"invariants {list(inv)} do not form a divisibility chain")
        if any(d < 2 for d in inv):
            raise GroupError("invariant factors must be >= 2")

    @classmethod
    def cyclic(cls, n: int) -> "AbelianGroup":
        return from_presentation(Presentation(1, ((n,),)))

    @classmethod
    def free(cls, rank: int) -> "AbelianGroup":
        return cls(rank, ())

    @classmethod
    def from_factors(cls, free_rank: int = 0, orders: Iterable[int] = ()) -> "AbelianGroup":
        """``Z^free_rank x Z_{o1} x Z_{o2} ...`` with presentation generators in that order."""
        orders = [int(o) for o in orders]
        if any(o < 1 for o in orders):
            raise GroupError("cyclic orders must be positive")
        n = free_rank + len(orders)
        rels = []
        for k, o in enumerate(orders):
            r = [0] * n
            r[free_rank + k] = o
            rels.append(tuple(r))
        return from_presentation(Presentation(n, tuple(rels)))

    @classmethod
    def parse(cls, text: str) -> "AbelianGroup":
        """Parse ``"Z"``, ``"Z2^3"``, ``"Z x Z4"``, ``"Z^2 x Z3^2"``, ``"1"``."""
        text = text.strip()
        if text in ("1", "0", "trivial", "{e}", ""):
            return cls(0, ())
        free, orders = 0, []
        for part in re.split(r"\s*[x×*]\s*", text):
            mt = re.fullmatch(r"(?:Z|ℤ)_?(\d*)(?:\^(\d+))?", part.strip())
            if not mt:
                raise GroupError(f"cannot parse group factor {part!r}")
            order = int(mt.group(1)) if mt.group(1) else 0
            power = int(mt.group(2)) if mt.group(2) else 1
            if order == 0:
                free += power
            else:
                orders.extend([order] * power)
        return cls.from_factors(free, orders)

    def __eq__(self, other):
        if not isinstance(other, AbelianGroup):
            return NotImplemented
        return self.free_rank == other.free_rank and self.invariants == other.invariants

    def __hash__(self):
        return hash((self.free_rank, self.invariants))

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.invariants)

    @property
    def moduli(self) -> tuple[int, ...]:
        """Per canonical coordinate: 0 for free coordinates, d_i for torsion."""
        return (0,) * self.free_rank + self.invariants

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self):
        if not self.is_finite:
            return INFINITE
        return math.prod(self.invariants)

    def exponent(self):
        if not self.is_finite:
            return INFINITE
        return self.invariants[-1] if self.invariants else 1

    def torsion_exponent(self) -> int:
        return self.invariants[-1] if self.invariants else 1

    @property
    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.free_rank, (0,) * len(self.invariants))

    zero = identity

    def element(self, coords: Sequence[int]) -> "GroupElement":
        """Element from canonical coordinates (free part first)."""
        coords = [int(c) for c in coords]
        if len(coords) != self.ngens:
            raise GroupError(f"expected {self.ngens} coordinates, got {len(coords)}")
        return GroupElement(
            self,
            tuple(coords[: self.free_rank]),
            tuple(c % d for c, d in zip(coords[self.free_rank :], self.invariants)),
        )

    def generators(self) -> list["GroupElement"]:
        return [self.element([int(i == j) for j in range(self.ngens)]) for i in range(self.ngens)]

    def from_presentation_coords(self, vec: Sequence[int]) -> "GroupElement":
        """Map a vector in presentation-generator coordinates to an element."""
        if self.to_canonical is None:
            return self.element(vec)
        if len(vec) != len(self.to_canonical):
            raise GroupError("presentation vector has wrong length")
        y = [0] * self.ngens
        for x, row in zip(vec, self.to_canonical):
            if x:
                for k, c in enumerate(row):
                    y[k] += x * c
        return self.element(y)

    def presentation_generator(self, j: int) -> "GroupElement":
        n = len(self.to_canonical) if self.to_canonical is not None else self.ngens
        return self.from_presentation_coords([int(i == j) for i in range(n)])

    def elements(self) -> Iterator["GroupElement"]:
        if not self.is_finite:
            raise GroupError("cannot enumerate an infinite group")
        for t in itertools.product(*(range(d) for d in self.invariants)):
            yield GroupElement(self, (), tuple(t))

    def elements_of_order_dividing(self, k: int) -> list["GroupElement"]:
        """All x with k x = 0 (finite even when the group is infinite)."""
        choices = []
        for d in self.invariants:
            g = math.gcd(d, k)
            step = d // g
            choices.append(range(0, d, step))
        return [
            GroupElement(self, (0,) * self.free_rank, tuple(t)) for t in itertools.product(*choices)
        ]

    def canonical(self) -> "AbelianGroup":
        """The same group without presentation data."""
        return AbelianGroup(self.free_rank, self.invariants)

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        for d, grp in itertools.groupby(self.invariants):
            k = len(list(grp))
            parts.append(f"Z{d}" if k == 1 else f"Z{d}^{k}")
        return " x ".join(parts) if parts else "1"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "invariants": list(self.invariants)}

    @classmethod
    def from_json(cls, data: dict) -> "AbelianGroup":
        return cls(int(data["free_rank"]), tuple(int(d) for d in data.get("invariants", [])))


@dataclass(frozen=True, eq=False)
class GroupElement:
    group: AbelianGroup
    free: tuple[int, ...]
    torsion: tuple[int, ...]

    def __post_init__(self):
        if len(self.free) != self.group.free_rank or len(self.torsion) != len(self.group.invariants):
            raise GroupError("coordinate vector does not match the group")
        if any(not 0 <= t < d for t, d in zip(self.torsion, self.group.invariants)):
            raise GroupError("torsion coordinates must be reduced")

    @property
    def coords(self) -> tuple[int, ...]:
        return self.free + self.torsion

    def _check(self, other: "GroupElement"):
        if not isinstance(other, GroupElement):
            raise TypeError("expected a GroupElement")
        if other.group != self.group:
            raise GroupError(f"elements of different groups: {self.group} and {other.group}")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        g = self.group
        return GroupElement(
            g,
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple((a + b) % d for a, b, d in zip(self.torsion, other.torsion, g.invariants)),
        )

    def __neg__(self) -> "GroupElement":
        g = self.group
        return GroupElement(
            g, tuple(-a for a in self.free), tuple((-a) % d for a, d in zip(self.torsion, g.invariants))
        )

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __mul__(self, k: int) -> "GroupElement":
        if not isinstance(k, int):
            return NotImplemented
        g = self.group
        return GroupElement(
            g, tuple(k * a for a in self.free), tuple((k * a) % d for a, d in zip(self.torsion, g.invariants))
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.group == other.group and self.free == other.free and self.torsion == other.torsion

    def __hash__(self):
        return hash((self.group, self.free, self.torsion))

    def __lt__(self, other: "GroupElement") -> bool:
        return self.coords < other.coords

    def is_identity(self) -> bool:
        return not any(self.free) and not any(self.torsion)

    def order(self):
        """Least n >= 1 with n x = 0, or INFINITE."""
        if any(self.free):
            return INFINITE
        return reduce(
            math.lcm, (d // math.gcd(t, d) for t, d in zip(self.torsion, self.group.invariants)), 1
        )

    def to_json(self) -> dict:
        return {"free": list(self.free), "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, group: AbelianGroup, data) -> "GroupElement":
        if isinstance(data, dict):
            return group.element(list(data.get("free", [])) + list(data.get("torsion", [])))
        return group.element(data)

    def __str__(self):
        return "(" + ",".join(map(str, self.coords)) + ")"

    __repr__ = __str__


@dataclass(frozen=True, eq=False)
class GroupHom:
    """Homomorphism given by the images of the canonical generators of ``domain``."""

    domain: AbelianGroup
    codomain: AbelianGroup
    images: tuple[GroupElement, ...]

    def __post_init__(self):
        if len(self.images) != self.domain.ngens:
            raise GroupError("one image per canonical generator required")
        for img, d in zip(self.images, self.domain.moduli):
            if img.group != self.codomain:
                raise GroupError("image outside the codomain")
            if d and not (d * img).is_identity():
                raise GroupError(f"image {img} of a generator of order {d} violates its relation")

    @classmethod
    def from_presentation_images(
        cls, domain: AbelianGroup, codomain: AbelianGroup, images: Sequence[GroupElement]
    ) -> "GroupHom":
        """Hom sending presentation generator ``j`` of ``domain`` to ``images[j]``."""
        rows = domain.from_canonical
        if rows is None:
            return cls(domain, codomain, tuple(images))
        out = []
        for row in rows:
            acc = codomain.identity
            for c, img in zip(row, images):
                if c:
                    acc = acc + c * img
            out.append(acc)
        return cls(domain, codomain, tuple(out))

    @classmethod
    def identity(cls, group: AbelianGroup) -> "GroupHom":
        return cls(group, group, tuple(group.generators()))

    def __call__(self, x: GroupElement) -> GroupElement:
        if x.group != self.domain:
            raise GroupError("element outside the domain")
        acc = self.codomain.identity
        for c, img in zip(x.coords, self.images):
            if c:
                acc = acc + c * img
        return acc

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """``self o inner``."""
        if inner.codomain != self.domain:
            raise GroupError("cannot compose: codomain/domain mismatch")
        return GroupHom(inner.domain, self.codomain, tuple(self(x) for x in inner.images))

    def __eq__(self, other):
        if not isinstance(other, GroupHom):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and self.images == other.images
        )

    def __hash__(self):
        return hash((self.domain, self.codomain, self.images))

    def kernel_elements(self) -> list[GroupElement]:
        return [x for x in self.domain.elements() if self(x).is_identity()]

    def is_injective(self) -> bool:
        """Exhaustive kernel check; finite domains only."""
        return len(self.kernel_elements()) == 1

    def to_json(self) -> dict:
        return {
            "domain": self.domain.to_json(),
            "codomain": self.codomain.to_json(),
            "images": [x.to_json() for x in self.images],
        }


def from_presentation(p: Presentation) -> AbelianGroup:
    n = p.generator_count
    diag, _U, V, Vi = smith_normal_form(p.relations, n)
    r = len(diag)
    torsion_idx = [i for i in range(r) if diag[i] != 1]
    free_idx = list(range(r, n))
    order = free_idx + torsion_idx
    to_canon = tuple(tuple(V[j][k] for k in order) for j in range(n))
    from_canon = tuple(tuple(Vi[k]) for k in order)
    return AbelianGroup(
        len(free_idx),
        tuple(diag[i] for i in torsion_idx),
        presentation=p,
        to_canonical=to_canon,
        from_canonical=from_canon,
    )


def _relation_rows(G: AbelianGroup) -> list[list[int]]:
    rows = []
    for k, d in enumerate(G.moduli):
        if d:
            r = [0] * G.ngens
            r[k] = d
            rows.append(r)
    return rows


def square_roots(h: GroupElement) -> list[GroupElement]:
    """All d with 2 d = h, sorted by coordinates (possibly empty)."""
    G = h.group
    free = []
    for a in h.free:
        if a % 2:
            return []
        free.append(a // 2)
    per_coord = []
    for a, m in zip(h.torsion, G.invariants):
        if m % 2:
            per_coord.append([a * pow(2, -1, m) % m])
        elif a % 2:
            return []
        else:
            per_coord.append([a // 2, a // 2 + m // 2])
    return sorted(GroupElement(G, tuple(free), t) for t in itertools.product(*per_coord))


def quotient(G: AbelianGroup, elements: Sequence[GroupElement]) -> tuple[AbelianGroup, GroupHom]:
    """``G / <elements>`` in canonical form with the projection."""
    rows = _relation_rows(G)
    for x in elements:
        if x.group != G:
            raise GroupError("element outside the group")
        rows.append(list(x.coords))
    Q = from_presentation(Presentation(G.ngens, tuple(map(tuple, rows))))
    proj = GroupHom(G, Q, tuple(Q.presentation_generator(j) for j in range(G.ngens)))
    return Q, proj


def quotient_by(h: GroupElement) -> tuple[AbelianGroup, GroupHom]:
    if h.order() == INFINITE:
        raise GroupError(f"{h} has infinite order")
    return quotient(h.group, [h])


def adjoin_square_root(
    G: AbelianGroup, h: GroupElement
) -> tuple[AbelianGroup, GroupHom, GroupElement]:
    """``G[h^(1/2)]``: G with a new generator d subject only to ``2 d = h``.

    Returns the canonical group, the embedding of G, and the image of d.
    """
    if h.group != G:
        raise GroupError("h must belong to G")
    n = G.ngens + 1
    rows = [r + [0] for r in _relation_rows(G)]
    rows.append([-c for c in h.coords] + [2])
    H = from_presentation(Presentation(n, tuple(map(tuple, rows))))
    emb = GroupHom(G, H, tuple(H.presentation_generator(j) for j in range(G.ngens)))
    d = H.presentation_generator(G.ngens)
    assert 2 * d == emb(h)
    return H, emb, d


def is_isomorphic(G: AbelianGroup, H: AbelianGroup) -> bool:
    return G.free_rank == H.free_rank and G.invariants == H.invariants


def direct_product(*groups: AbelianGroup) -> tuple[AbelianGroup, list[GroupHom]]:
    """Product group with the canonical injections of each factor."""
    n = sum(g.ngens for g in groups)
    rows, off = [], 0
    for g in groups:
        for r in _relation_rows(g):
            rows.append([0] * off + r + [0] * (n - off - g.ngens))
        off += g.ngens
    P = from_presentation(Presentation(n, tuple(map(tuple, rows))))
    injections, off = [], 0
    for g in groups:
        injections.append(
            GroupHom(g, P, tuple(P.presentation_generator(off + j) for j in range(g.ngens)))
        )
        off += g.ngens
    return P, injections


class Character:
    """Homomorphism ``G -> F^x`` fixed by its values on the canonical generators."""

    def __init__(self, group: AbelianGroup, field: Field, values: Sequence):
        if len(values) != group.ngens:
            raise GroupError("one value per canonical generator required")
        self.group = group
        self.field = field
        self.values = tuple(field(v) for v in values)
        for v, d in zip(self.values, group.moduli):
            if v == 0:
                raise GroupError("character values must be nonzero")
            if d and v**d != 1:
                raise GroupError(f"value {field.format(v)} is not a {d}-th root of unity")

    def __call__(self, x: GroupElement):
        if x.group != self.group:
            raise GroupError("element outside the character's group")
        acc = self.field.one
        for v, c in zip(self.values, x.coords):
            if c:
                acc = acc * v**c
        return acc

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values)

    def __repr__(self):
        vals = ",".join(self.field.format(v) for v in self.values)
        return f"Character[{self.group}]({vals})"


def finite_characters(G: AbelianGroup, F: Field) -> list[Character]:
    """All |G| characters of a finite group; F must contain exponent(G)-th roots of unity."""
    if not G.is_finite:
        raise GroupError("characters are enumerated only for finite groups")
    E = G.exponent()
    if not F.has_root(E):
        raise FieldError(f"{F} lacks a primitive root of unity of order {E}")
    eps = F.root(E)
    gens = [eps ** (E // d) for d in G.invariants]
    return [
        Character(G, F, [g**a for g, a in zip(gens, t)])
        for t in itertools.product(*(range(d) for d in G.invariants))
    ]
