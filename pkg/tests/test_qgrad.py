import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgrade.abelgroup import (
    AbelianGroup,
    Character,
    GroupHom,
    adjoin_square_root,
    direct_product,
    finite_characters,
)
from qgrade.exactfield import Field, FieldError, Matrix
from qgrade.grading import GradingError, verify_algebra_grading, verify_module_grading
from qgrade.matgrad import (
    elementary_grading,
    fine_catalog,
    pauli_grading,
    restrict_to_even_part,
)
from qgrade.qgrad import (
    ExtensionError,
    SuperGrading,
    character_action,
    decide_iso_extensions,
    extend_assoc,
    extend_automorphism,
    extend_pae,
    extend_to_Q,
    extension_shifts,
    fine_on_Q,
    inner_witness,
    kernel_scalings,
    parity_automorphism,
    push_even,
)
from qgrade.superalg import build_Q

G = AbelianGroup.parse
F13 = Field(13)


def entry(n, target, name):
    return next(e for e in fine_catalog(n, target) if e.name == name)


def sl3_minus_transpose():
    return entry(2, "lie", "torus-transpose")


def pauli3_in_z3z3z2():
    ep = entry(2, "lie", "pauli3")
    Z2 = G("Z2")
    P, (i1, i2) = direct_product(ep.group, Z2)
    return push_even(ep, i1), i1, i2(Z2.element((1,)))


def elementary_jordan(gammas, Z):
    return restrict_to_even_part(elementary_grading(Z, gammas, F13), "jordan")


ALL_N23 = [(t, n, e) for t in ("lie", "jordan") for n in (2, 3) for e in fine_catalog(n, t)]
IDS_N23 = [f"{t}{n}-{e.name}" for t, n, e in ALL_N23]
ALL_N2 = [(t, e) for t in ("lie", "jordan") for e in fine_catalog(2, t)]
IDS_N2 = [f"{t}-{e.name}" for t, e in ALL_N2]


class TestShifts:
    def test_type_one_in_z2(self):
        Z2 = G("Z2")
        ep = elementary_jordan([Z2.identity, Z2.element((1,))], Z2)
        assert ep.type_tag == "I"
        assert [d.coords for d in extension_shifts(ep)] == [(0,), (1,)]

    def test_type_two_in_z2_squared_has_none(self):
        ep = entry(2, "jordan", "torus-transpose")
        # project Z x Z2 onto its Z2 factor, then include into Z2^2
        Z22 = G("Z2^2")
        hom = GroupHom(ep.group, Z22, (Z22.element((1, 0)), Z22.element((0, 1))))
        img = push_even(ep, hom)
        assert img.h == Z22.element((0, 1))
        assert extension_shifts(img) == []

    def test_type_two_in_z4(self):
        ep = entry(2, "jordan", "torus-transpose")
        Z4 = G("Z4")
        hom = GroupHom(ep.group, Z4, (Z4.identity, Z4.element((2,))))
        img = push_even(ep, hom)
        assert [d.coords for d in extension_shifts(img)] == [(1,), (3,)]

    def test_push_must_keep_h(self):
        ep = entry(2, "jordan", "torus-transpose")
        Z = G("Z")
        with pytest.raises(GradingError):
            push_even(ep, GroupHom(ep.group, Z, (Z.element((1,)), Z.identity)))


class TestExtendToQ:
    def test_jordan_torus_in_z_z4(self):
        ep = entry(2, "jordan", "torus-transpose")
        H, emb, d = adjoin_square_root(ep.group, ep.h)
        assert H == G("Z x Z4")
        sg = extend_to_Q(push_even(ep, emb), d)
        assert sg.verified and verify_algebra_grading(sg.grading).ok
        assert 2 * d == emb(ep.h)

    def test_lie_pauli_with_z2_factor(self):
        ep, _i1, d = pauli3_in_z3z3z2()
        sg = extend_to_Q(ep, d)
        assert sg.verified
        N = sg.algebra.dimension // 2
        even = set(sg.grading.degrees[:N])
        odd = set(sg.grading.degrees[N:])
        assert odd == {g + d for g in even}
        assert verify_module_grading(sg.odd_grading()).ok

    def test_rejects_bad_d(self):
        ep, i1, _d = pauli3_in_z3z3z2()
        bad = i1(entry(2, "lie", "pauli3").group.generators()[0])
        with pytest.raises(ExtensionError, match=r"d\^2 != h"):
            extend_to_Q(ep, bad)
        rep = extend_to_Q(ep, bad, diagnostic=True)
        assert rep.by_sector().get("odd-odd", 0) > 0

    def test_wrong_group(self):
        ep, _i1, _d = pauli3_in_z3z3z2()
        with pytest.raises(ExtensionError):
            extend_to_Q(ep, G("Z2").identity)

    @pytest.mark.parametrize("target,n,ep", ALL_N23, ids=IDS_N23)
    def test_existence(self, target, n, ep):
        for d in extension_shifts(ep):
            assert extend_to_Q(ep, d).verified
        H, emb, d = adjoin_square_root(ep.group, ep.h)
        lifted = push_even(ep, emb)
        shifts = extension_shifts(lifted)
        assert shifts
        for d in shifts:
            assert extend_to_Q(lifted, d).verified

    @pytest.mark.parametrize("target,ep", ALL_N2, ids=IDS_N2)
    def test_completeness_desk_scale(self, target, ep):
        H, emb, _d = adjoin_square_root(ep.group, ep.h)
        lifted = push_even(ep, emb)
        good = set(extension_shifts(lifted))
        # bounded window of the lifted group: torsion part plus small free coordinates
        cands = set()
        for t in H.elements_of_order_dividing(H.torsion_exponent()):
            cands.add(t)
            for g in H.generators()[:H.free_rank]:
                cands.update({t + g, t - g})
        tested = 0
        for d in sorted(cands):
            if d in good:
                continue
            rep = extend_to_Q(lifted, d, diagnostic=True)
            assert rep.by_sector().get("odd-odd", 0) >= 1, str(d)
            tested += 1
        assert tested > 0

    def test_json_round_trip(self):
        ep, _i1, d = pauli3_in_z3z3z2()
        sg = extend_to_Q(ep, d)
        data = json.loads(json.dumps(sg.to_json()))
        for k in ("flavor", "n", "group", "even_degrees", "d", "verified"):
            assert k in data
        back = SuperGrading.from_json(data)
        assert back.verified and back.grading.degrees == sg.grading.degrees

    def test_json_without_even_block(self):
        ep = entry(2, "jordan", "torus-transpose")
        H, emb, d = adjoin_square_root(ep.group, ep.h)
        Z = G("Z")
        Zg = elementary_jordan([Z.identity, Z.element((1,))], Z)
        sg = extend_to_Q(Zg, Z.identity)
        data = sg.to_json()
        del data["even"]
        back = SuperGrading.from_json(data)
        assert back.verified
        assert [g.coords for g in back.grading.degrees] == [g.coords for g in sg.grading.degrees]
        assert H == G("Z x Z4")


class TestAssociativeAndPae:
    def test_pauli_identity_shift(self):
        p = pauli_grading(2, F13)
        gr = extend_assoc(p, p.group.identity)
        assert gr.support_of_parity(1) == gr.support_of_parity(0)

    def test_pauli_in_z2_cubed(self):
        p = pauli_grading(2, F13)
        Z2 = G("Z2")
        P, (i1, i2) = direct_product(p.group, Z2)
        from qgrade.grading import coarsen
        gr = extend_assoc(coarsen(p, i1), i2(Z2.element((1,))))
        assert gr.group == G("Z2^3") and gr.verified

    def test_order_four_rejected(self):
        Z4 = G("Z4")
        e = elementary_grading(Z4, [Z4.identity, Z4.element((1,))], F13)
        with pytest.raises(ExtensionError, match=r"c\^2 != e"):
            extend_assoc(e, Z4.element((1,)))

    def test_different_c_not_isomorphic_on_A(self):
        # grading-preserving maps fix every degree, so the odd supports must agree
        p = pauli_grading(2, F13)
        Z2 = G("Z2")
        P, (i1, i2) = direct_product(p.group, Z2)
        from qgrade.grading import coarsen
        base = coarsen(p, i1)
        a = extend_assoc(base, P.identity)
        b = extend_assoc(base, i2(Z2.element((1,))))
        assert a.support_of_parity(1) != b.support_of_parity(1)

    def test_pae_cartan(self):
        Z2 = G("Z^2")
        e1, e2 = Z2.generators()
        ep = restrict_to_even_part(elementary_grading(Z2, [Z2.identity, e1, e1 + e2], F13), "lie")
        for c in (Z2.identity, e1, e2):
            assert extend_pae(ep.grading, c).verified

    @settings(max_examples=15)
    @given(st.integers(0, 2), st.integers(0, 2))
    def test_pae_pauli_any_shift(self, a, b):
        ep = entry(2, "lie", "pauli3")
        c = ep.group.element((a, b))
        gr = extend_pae(ep.grading, c)
        assert gr.verified


class TestAutomorphisms:
    def Q(self, n=2, flavor="lie", F=F13):
        return build_Q(n, F, flavor)

    def test_identity(self):
        assert extend_automorphism(self.Q(), "inner").is_identity()

    @pytest.mark.parametrize("flavor", ["lie", "jordan"])
    def test_outer_squares_to_parity(self, flavor):
        Q = self.Q(2, flavor)
        phi = extend_automorphism(Q, "outer")
        assert phi.kind == "outer" and phi.lam * phi.lam == -1
        assert phi @ phi == parity_automorphism(Q)
        assert (phi**4).is_identity()

    def test_permutation_inner(self):
        Q = self.Q()
        r = Matrix(F13, [[0, 1, 0], [0, 0, 1], [1, 0, 0]])
        phi = extend_automorphism(Q, "inner", r)
        assert phi.is_automorphism() and phi.kind == "inner"

    def test_missing_sqrt_minus_one(self):
        with pytest.raises(FieldError):
            extend_automorphism(build_Q(2, Field(7), "jordan"), "outer")

    def test_singular_r(self):
        with pytest.raises(ExtensionError):
            extend_automorphism(self.Q(), "inner", Matrix.zeros(F13, 3))

    @pytest.mark.parametrize("flavor", ["lie", "jordan"])
    def test_kernel_is_plus_minus_one(self, flavor):
        Q = self.Q(2, flavor)
        assert sorted(int(x) for x in kernel_scalings(Q)) == [1, 12]
        assert [int(x) for x in kernel_scalings(build_Q(2, Field(0), "jordan"))] == [1, -1]

    def test_inner_witness_recovers_conjugation(self):
        ep = entry(2, "lie", "cartan")
        from qgrade.grading import operator_matrix
        r = Matrix(F13, [[1, 2, 0], [0, 1, 0], [0, 0, 1]])
        op = operator_matrix(ep.grading.carrier, lambda x: r @ x @ r.inverse())
        w = inner_witness(ep.grading.carrier, op)
        assert w is not None
        for B in ep.grading.carrier.matrices:
            assert w @ B @ w.inverse() == r @ B @ r.inverse()
        T = operator_matrix(ep.grading.carrier, lambda x: x.T.scale(-1))
        assert inner_witness(ep.grading.carrier, T) is None


class TestIsomorphism:
    def test_self(self):
        ep, _i1, d = pauli3_in_z3z3z2()
        sg = extend_to_Q(ep, d)
        assert decide_iso_extensions(sg, sg).verdict == "isomorphic"

    def test_different_shift(self):
        ep, _i1, d = pauli3_in_z3z3z2()
        a, b = extend_to_Q(ep, d), extend_to_Q(ep, ep.group.identity)
        assert decide_iso_extensions(a, b).verdict == "not"

    def test_swapped_elementary(self):
        Z = G("Z")
        g = Z.element((1,))
        A = extend_to_Q(elementary_jordan([Z.identity, g], Z), Z.identity)
        B = extend_to_Q(elementary_jordan([g, Z.identity], Z), Z.identity)
        res = decide_iso_extensions(A, B)
        assert res.verdict == "isomorphic"
        # the found map sends each homogeneous vector to the same degree
        M = res.automorphism
        for j, col in enumerate(M.columns()):
            for i, x in enumerate(col):
                if x:
                    assert B.grading.degrees[i] == A.grading.degrees[j]
        swap = Matrix(F13, [[0, 1], [1, 0]])
        assert decide_iso_extensions(A, B, witness=("inner", swap)).verdict == "isomorphic"
        with pytest.raises(ExtensionError):
            decide_iso_extensions(A, B, witness=("inner", Matrix.identity(F13, 2)))

    def test_mismatch_errors(self):
        Z = G("Z")
        A = extend_to_Q(elementary_jordan([Z.identity, Z.element((1,))], Z), Z.identity)
        ep, _i1, d = pauli3_in_z3z3z2()
        with pytest.raises(ExtensionError):
            decide_iso_extensions(A, extend_to_Q(ep, d))

    def test_unknown_without_search(self):
        Z = G("Z")
        g = Z.element((1,))
        A = extend_to_Q(elementary_jordan([Z.identity, g], Z), Z.identity)
        B = extend_to_Q(elementary_jordan([g, Z.identity], Z), Z.identity)
        assert decide_iso_extensions(A, B, search=False).verdict == "unknown"


class TestFineOnQ:
    @pytest.mark.parametrize("name,expected", [("pauli-transpose", "Z2^2 x Z4"),
                                               ("torus-transpose", "Z x Z4")])
    def test_jordan_two(self, name, expected):
        sg, H = fine_on_Q(entry(2, "jordan", name))
        assert H == G(expected) and sg.verified

    def test_lie_cartan(self):
        _sg, H = fine_on_Q(entry(2, "lie", "cartan"))
        assert H == G("Z^2 x Z2")

    @pytest.mark.parametrize("target,n,ep", ALL_N23, ids=IDS_N23)
    def test_every_entry(self, target, n, ep):
        sg, H = fine_on_Q(ep)
        assert H == adjoin_square_root(ep.group, ep.h)[0]
        assert not (sg.grading.support_of_parity(0) & sg.grading.support_of_parity(1))


class TestCharacters:
    def test_trivial(self):
        sg, H = fine_on_Q(entry(2, "jordan", "pauli-transpose"))
        F = sg.algebra.field
        chi = Character(sg.group, F, [1] * sg.group.ngens)
        assert character_action(sg, chi).is_identity()

    def test_all_characters_are_automorphisms(self):
        sg, _H = fine_on_Q(entry(2, "jordan", "pauli-transpose"))
        F = sg.algebra.field
        for chi in finite_characters(sg.group, F):
            phi = character_action(sg, chi)
            lam = chi(sg.d)
            assert phi.lam == lam
            assert (phi.kind == "inner") == (lam == 1)

    def test_torus_chi_d_minus_one_and_sqrt(self):
        sg, _H = fine_on_Q(entry(2, "jordan", "torus-transpose"))
        F = sg.algebra.field
        U = sg.group
        assert U == G("Z x Z4")
        i = F.sqrt_minus_one()
        for tors, kind in [(F(-1), "inner-parity"), (i, "outer")]:
            chi = Character(U, F, [F(2), tors])
            phi = character_action(sg, chi)
            assert phi.kind == kind
            if kind == "inner-parity":
                assert phi.lam == -1 and chi(sg.even.h) == 1
            else:
                assert phi.lam * phi.lam == -1

    def test_wrong_group(self):
        sg, _H = fine_on_Q(entry(2, "jordan", "torus-transpose"))
        Z2 = G("Z2")
        with pytest.raises(GradingError):
            character_action(sg, Character(Z2, sg.algebra.field, [1]))
