import itertools

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import invariant_factors

from qgrade.abelgroup import (
    INFINITE,
    AbelianGroup,
    Character,
    GroupError,
    GroupHom,
    Presentation,
    adjoin_square_root,
    direct_product,
    finite_characters,
    from_presentation,
    is_isomorphic,
    quotient,
    quotient_by,
    smith_normal_form,
    square_roots,
)
from qgrade.exactfield import Field


def P(s):
    return AbelianGroup.parse(s)


def sympy_canonical(rows, ncols):
    """(free_rank, invariants) from sympy's Smith form."""
    if not rows:
        return ncols, ()
    M = sympy.Matrix(rows)
    rank = M.rank()
    facs = [abs(int(x)) for x in invariant_factors(M, domain=sympy.ZZ)]
    return ncols - rank, tuple(x for x in facs if x > 1)


presentations = st.integers(1, 3).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=0, max_size=4),
    )
)


class TestCanonicalForm:
    def test_example_presentation(self):
        G = from_presentation(Presentation(2, ((2, 0), (-1, 2))))
        assert (G.free_rank, G.invariants) == (0, (4,))

    def test_parse_and_str(self):
        assert str(P("Z2 x Z4 x Z2")) == "Z2^2 x Z4"
        assert str(P("Z^2 x Z3 x Z2")) == "Z^2 x Z6"
        assert str(P("1")) == "1"
        assert P("Z x Z") == P("Z^2")
        with pytest.raises(GroupError):
            P("Q8")

    def test_json_round_trip(self):
        G = P("Z x Z2 x Z4")
        assert AbelianGroup.from_json(G.to_json()) == G
        x = G.element((3, 1, 2))
        assert type(x).from_json(G, x.to_json()) == x

    @given(presentations)
    def test_matches_sympy(self, pres):
        n, rows = pres
        G = from_presentation(Presentation(n, tuple(map(tuple, rows))))
        assert (G.free_rank, G.invariants) == sympy_canonical(rows, n)

    @given(presentations)
    def test_relations_vanish_and_generators_span(self, pres):
        n, rows = pres
        G = from_presentation(Presentation(n, tuple(map(tuple, rows))))
        for r in rows:
            assert G.from_presentation_coords(r).is_identity()
        # canonical generators come from presentation vectors
        for k, g in enumerate(G.generators()):
            assert G.from_presentation_coords(G.from_canonical[k]) == g

    def test_smith_normal_form_divisibility(self):
        diag, U, V, Vi = smith_normal_form([[4, 6], [6, 9], [2, 3]], 2)
        assert all(b % a == 0 for a, b in zip(diag, diag[1:]))
        assert sympy.Matrix(V) * sympy.Matrix(Vi) == sympy.eye(2)


class TestElements:
    def test_order(self):
        G = P("Z x Z2")
        assert G.element((1, 0)).order() == INFINITE
        assert G.element((0, 1)).order() == 2
        assert P("Z4 x Z6").element((1, 1)).order() == 12

    @given(st.lists(st.sampled_from([2, 3, 4, 6]), max_size=3), st.data())
    def test_group_axioms(self, orders, data):
        G = AbelianGroup.from_factors(1, orders)
        el = st.lists(st.integers(-20, 20), min_size=G.ngens, max_size=G.ngens).map(G.element)
        a, b, c = data.draw(el), data.draw(el), data.draw(el)
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a - a == G.identity
        assert 3 * a == a + a + a

    def test_sorting_is_total(self):
        G = P("Z2^2")
        assert sorted(G.elements()) == [G.element(t) for t in itertools.product(range(2), repeat=2)]


class TestSquareRootsAndQuotients:
    def test_examples(self):
        Z4, Z2 = P("Z4"), P("Z2")
        assert [r.coords for r in square_roots(Z4.element((2,)))] == [(1,), (3,)]
        assert square_roots(Z2.element((1,))) == []
        assert square_roots(P("Z").element((3,))) == []
        Q, _ = quotient_by(P("Z2^2").element((1, 1)))
        assert Q == Z2

    def test_quotient_by_infinite_order(self):
        with pytest.raises(GroupError):
            quotient_by(P("Z").element((2,)))

    def test_quotient_projection_is_surjective(self):
        G = P("Z2 x Z4")
        Q, proj = quotient(G, [G.element((1, 2))])
        assert {proj(x) for x in G.elements()} == set(Q.elements())

    @given(st.lists(st.sampled_from([2, 4, 8, 3]), min_size=1, max_size=3), st.data())
    def test_square_roots_exhaustive(self, orders, data):
        G = AbelianGroup.from_factors(0, orders)
        h = data.draw(st.sampled_from(list(G.elements())))
        assert square_roots(h) == sorted(x for x in G.elements() if 2 * x == h)


class TestAdjoin:
    @pytest.mark.parametrize("group,h,expected", [
        ("Z2", (1,), "Z4"),
        ("Z x Z2", (0, 1), "Z x Z4"),
        ("Z2^3", (1, 1, 1), "Z2^2 x Z4"),
        ("Z2^2", (1, 0), "Z2 x Z4"),
        ("Z x Z2", (0, 0), "Z x Z2^2"),
        ("Z3", (1,), "Z6"),
    ])
    def test_examples(self, group, h, expected):
        G = P(group)
        H, emb, d = adjoin_square_root(G, G.element(h))
        assert H == P(expected)
        assert 2 * d == emb(G.element(h))

    @given(st.lists(st.sampled_from([2, 4]), max_size=3), st.integers(0, 2), st.data())
    def test_embedding_is_injective_on_torsion(self, orders, free, data):
        G = AbelianGroup.from_factors(free, orders)
        h = data.draw(st.sampled_from(G.elements_of_order_dividing(2)))
        H, emb, d = adjoin_square_root(G, h)
        T = G.elements_of_order_dividing(G.torsion_exponent())
        assert len({emb(x) for x in T}) == len(T)
        # index 2: every element of H is emb(g) or emb(g) + d
        assert H.free_rank == G.free_rank

    def test_wrong_group(self):
        with pytest.raises(GroupError):
            adjoin_square_root(P("Z2"), P("Z4").element((1,)))


class TestHomsAndCharacters:
    def test_direct_product(self):
        Pr, (i1, i2) = direct_product(P("Z2"), P("Z3"))
        assert Pr == P("Z6")
        assert i1(P("Z2").element((1,))).order() == 2
        assert i2(P("Z3").element((1,))).order() == 3

    def test_hom_validation(self):
        Z2, Z4 = P("Z2"), P("Z4")
        GroupHom(Z2, Z4, (Z4.element((2,)),))
        with pytest.raises(GroupError):
            GroupHom(Z2, Z4, (Z4.element((1,)),))

    def test_hom_compose_and_kernel(self):
        Z4, Z2 = P("Z4"), P("Z2")
        f = GroupHom(Z4, Z2, (Z2.element((1,)),))
        g = GroupHom(Z2, Z4, (Z4.element((2,)),))
        assert [x.coords for x in f.kernel_elements()] == [(0,), (2,)]
        assert g.compose(f)(Z4.element((1,))) == Z4.element((2,))
        assert g.is_injective() and not f.is_injective()

    def test_characters_of_z3(self):
        F = Field(7)
        chars = finite_characters(P("Z3"), F)
        assert len(chars) == 3
        x = P("Z3").element((1,))
        assert {int(c(x)) for c in chars} == {1, 2, 4}

    def test_characters_are_homomorphisms(self):
        F = Field(13)
        G = P("Z2 x Z4")
        for chi in finite_characters(G, F):
            for a in G.elements():
                for b in G.elements():
                    assert chi(a + b) == chi(a) * chi(b)

    def test_character_value_check(self):
        with pytest.raises(GroupError):
            Character(P("Z2"), Field(7), [3])

    def test_is_isomorphic(self):
        assert is_isomorphic(P("Z6"), P("Z2 x Z3"))
        assert not is_isomorphic(P("Z4"), P("Z2^2"))
