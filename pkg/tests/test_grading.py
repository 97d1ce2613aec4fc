import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qgrade.abelgroup import AbelianGroup, GroupHom, direct_product, quotient_by
from qgrade.exactfield import Field, Matrix
from qgrade.grading import (
    GradedMap,
    Grading,
    GradingError,
    ModuleGrading,
    coarsen,
    ensure_verified,
    even_part,
    graded_space,
    grading_from_commuting_automorphisms,
    is_automorphism,
    odd_module,
    operator_matrix,
    refine_by_automorphisms,
    shift,
    tensor_grading,
    verify_algebra_grading,
    verify_map_homogeneous,
    verify_module_grading,
)
from qgrade.matgrad import (
    elementary_grading,
    extended_associative,
    fine_catalog,
    pauli_grading,
    product_map,
)
from qgrade.superalg import build_matrix_algebra, build_Q_jordan, build_Q_lie, build_sl

F = Field(13)
G = AbelianGroup.parse


def cartan(n, F=F):
    Z = G(f"Z^{n}")
    gens = Z.generators()
    return elementary_grading(Z, gens, F)


def odd_grading(Q, Z, gammas):
    """Elementary-type grading on Q^0 and the matching module grading on Q^1."""
    ev = even_part(Q)
    n = len(gammas)
    if Q.flavor == "jordan-super":
        degs = [gammas[i] - gammas[j] for i in range(n) for j in range(n)]
    else:
        degs = [gammas[int(l[1]) - 1] - gammas[int(l[2]) - 1] if l[0] == "E" else Z.identity
                for l in ev.labels]
    gr = ensure_verified(Grading(Z, ev, tuple(degs)))
    return ModuleGrading(gr, odd_module(Q, ev), tuple(degs))


class TestVerifyAlgebra:
    def test_pauli_and_cartan(self):
        rep = verify_algebra_grading(pauli_grading(2, F))
        assert rep.ok and rep.checked == 16
        assert verify_algebra_grading(cartan(3)).ok

    @pytest.mark.parametrize("corrupt", range(4))
    def test_fault_injection_localizes(self, corrupt):
        gr = pauli_grading(2, F)
        degs = list(gr.degrees)
        degs[corrupt] = degs[corrupt] + gr.group.generators()[0]
        bad = Grading(gr.group, gr.carrier, tuple(degs))
        rep = verify_algebra_grading(bad)
        assert not rep.ok
        touched = {(v.i, v.j) for v in rep.violations}
        expected = {(i, j) for (i, j), terms in gr.carrier.table.items()
                    if corrupt in (i, j) or any(k == corrupt for k, _ in terms)}
        # cancellations in Z2^2 can hide some pairs, never add foreign ones
        assert touched <= expected
        others = [j for j in range(4) if j not in (0, corrupt)]
        if corrupt:
            assert {(corrupt, j) for j in others} | {(j, corrupt) for j in others} <= touched
        assert all(corrupt in (v.i, v.j, v.k) for v in rep.violations)
        with pytest.raises(GradingError):
            ensure_verified(bad)

    def test_report_strings_and_sectors(self):
        assert str(verify_algebra_grading(pauli_grading(2, F))) == "ok, 0 violations"
        Q = build_Q_jordan(2, F)
        Z3 = G("Z3")
        x = Z3.element((1,))
        degs = [Z3.identity] * 4 + [x] * 4
        rep = verify_algebra_grading(Grading(Z3, Q, tuple(degs)))
        assert not rep.ok
        sectors = rep.by_sector()
        assert sectors.get("odd-odd", 0) > 0 and sectors.get("even-even", 0) == 0
        assert str(rep).startswith("FAILED")
        json.dumps(rep.to_json())

    def test_group_mismatch(self):
        gr = pauli_grading(2, F)
        with pytest.raises(GradingError):
            Grading(G("Z3"), gr.carrier, gr.degrees)
        with pytest.raises(GradingError):
            Grading(gr.group, gr.carrier, gr.degrees[:2])

    @pytest.mark.parametrize("make", [lambda: pauli_grading(3, F), lambda: cartan(2),
                                      lambda: fine_catalog(2, "jordan")[0].grading])
    def test_json_round_trip_reverifies(self, make):
        gr = make()
        back = Grading.from_json(json.loads(json.dumps(gr.to_json())))
        assert not back.verified
        assert back.degrees == gr.degrees
        assert ensure_verified(back).verified


class TestModules:
    @pytest.mark.parametrize("flavor", ["lie", "jordan"])
    def test_odd_part_module_grading(self, flavor):
        Q = build_Q_lie(2, F) if flavor == "lie" else build_Q_jordan(2, F)
        Z = G("Z^2")
        m = 3 if flavor == "lie" else 2
        gammas = [Z.element((1, 0)), Z.element((0, 1)), Z.identity][:m]
        mg = odd_grading(Q, Z, gammas)
        assert verify_module_grading(mg).ok
        d = Z.element((2, -1))
        assert verify_module_grading(shift(mg, d)).ok

    def test_shift_identities(self):
        Z = G("Z^2")
        mg = odd_grading(build_Q_jordan(2, F), Z, [Z.element((1, 0)), Z.element((0, 1))])
        assert shift(mg, Z.identity).degrees == mg.degrees
        d = Z.element((3, -2))
        assert shift(shift(mg, d), -d).degrees == mg.degrees
        assert shift(mg, d).support() == {g + d for g in mg.support()}
        with pytest.raises(GradingError):
            shift(mg, G("Z2").element((1,)))

    def test_mismatched_group_rejected(self):
        Z = G("Z^2")
        mg = odd_grading(build_Q_jordan(2, F), Z, [Z.element((1, 0)), Z.element((0, 1))])
        Z3 = G("Z3")
        bad = ModuleGrading(mg.algebra_grading, mg.module, tuple(Z3.identity for _ in mg.degrees))
        with pytest.raises(GradingError):
            verify_module_grading(bad)

    def test_broken_module_grading_fails(self):
        Z = G("Z^2")
        mg = odd_grading(build_Q_jordan(2, F), Z, [Z.element((1, 0)), Z.element((0, 1))])
        degs = list(mg.degrees)
        degs[1] = degs[1] + Z.element((1, 1))
        assert not verify_module_grading(ModuleGrading(mg.algebra_grading, mg.module, tuple(degs))).ok

    @given(st.integers(-3, 3), st.integers(-3, 3), st.integers(1, 4))
    def test_coarsen_shift_commute(self, a, b, k):
        Z = G("Z^2")
        mg = odd_grading(build_Q_jordan(2, F), Z, [Z.element((1, 0)), Z.element((0, 1))])
        Zk = G(f"Z{k}") if k > 1 else G("1")
        imgs = (Zk.element((1,)) if k > 1 else Zk.identity, Zk.identity)
        alpha = GroupHom(Z, Zk, imgs)
        d = Z.element((a, b))
        left = [alpha(g) for g in shift(mg, d).degrees]
        cg = coarsen(mg.algebra_grading, alpha)
        cm = ModuleGrading(cg, mg.module, tuple(alpha(g) for g in mg.degrees))
        assert tuple(left) == shift(cm, alpha(d)).degrees
        assert verify_module_grading(shift(cm, alpha(d))).ok


class TestTensorAndCoarsen:
    def test_pauli_tensor_pauli(self):
        p = pauli_grading(2, F)
        P, (i1, i2) = direct_product(p.group, p.group)
        t = tensor_grading(coarsen(p, i1), coarsen(p, i2))
        assert P == G("Z2^4")
        assert verify_algebra_grading(t).ok
        assert len(t.support()) == 16

    def test_trivial_tensor(self):
        p = pauli_grading(2, F)
        triv = Grading(p.group, build_matrix_algebra(1, F), (p.group.identity,))
        t = tensor_grading(triv, p)
        assert t.degrees == p.degrees

    def test_elementary_tensor_pauli_componentwise(self):
        Z = G("Z")
        e = elementary_grading(Z, [Z.element((1,)), Z.identity], F)
        p = pauli_grading(2, F)
        P, (i1, i2) = direct_product(Z, p.group)
        t = tensor_grading(coarsen(e, i1), coarsen(p, i2))
        for a, x in enumerate(e.degrees):
            for b, y in enumerate(p.degrees):
                assert t.degrees[a * 4 + b] == i1(x) + i2(y)
        assert verify_algebra_grading(t).ok

    def test_tensor_group_mismatch(self):
        with pytest.raises(GradingError):
            tensor_grading(pauli_grading(2, F), cartan(2))

    @given(st.sampled_from([2, 3]), st.sampled_from([2, 3]))
    def test_support_of_tensor(self, a, b):
        pa, pb = pauli_grading(a, F), pauli_grading(b, F)
        P, (i1, i2) = direct_product(pa.group, pb.group)
        x, y = coarsen(pa, i1), coarsen(pb, i2)
        t = tensor_grading(x, y)
        assert t.support() <= {g + h for g in x.support() for h in y.support()}

    def test_coarsen_identity(self):
        p = pauli_grading(2, F)
        c = coarsen(p, GroupHom.identity(p.group))
        assert c.degrees == p.degrees and c.verified

    def test_cartan_mod_two(self):
        gr = cartan(2)
        Z2 = G("Z2")
        alpha = GroupHom(gr.group, Z2, (Z2.element((1,)), Z2.identity))
        c = coarsen(gr, alpha)
        assert c.group == Z2 and c.verified
        assert verify_algebra_grading(c).ok

    def test_coarsen_domain_mismatch(self):
        with pytest.raises(GradingError):
            coarsen(pauli_grading(2, F), GroupHom.identity(G("Z")))

    def test_quotient_of_type_two_is_closed(self):
        e = fine_catalog(2, "jordan")[0]
        ext = extended_associative(e.grading, "jordan")
        _Q, proj = quotient_by(e.h)
        assert verify_algebra_grading(coarsen(ext, proj)).ok


class TestEigenspaces:
    def test_transpose_on_sl3(self):
        L = build_sl(3, F)
        op = operator_matrix(L, lambda x: x.transpose().scale(-1))
        gr = grading_from_commuting_automorphisms(L, [op], [2])
        assert gr.group == G("Z2")
        assert sorted(gr.component_dimensions().values()) == [3, 5]
        assert gr.verified

    def test_pauli_from_conjugations(self):
        M2 = build_matrix_algebra(2, F)
        A = Matrix.diag(F, [1, -1])
        B = Matrix(F, [[0, 1], [1, 0]])
        ops = [operator_matrix(M2, lambda x, S=S: S @ x @ S.inverse()) for S in (A, B)]
        gr = grading_from_commuting_automorphisms(M2, ops, [2, 2])
        assert gr.group == G("Z2^2")
        assert sorted(gr.component_dimensions().values()) == [1, 1, 1, 1]
        prof = sorted(k for _, _, k in gr.dimension_profile())
        assert prof == sorted(k for _, _, k in pauli_grading(2, F).dimension_profile())

    def test_identity_only(self):
        M2 = build_matrix_algebra(2, F)
        gr = grading_from_commuting_automorphisms(M2, [Matrix.identity(F, 4)], [1])
        assert len(gr.support()) == 1

    def test_components_are_eigenspaces(self):
        M3 = build_matrix_algebra(3, F)
        w = F.root(3)
        S = Matrix.diag(F, [1, w, w * w])
        op = operator_matrix(M3, lambda x: S @ x @ S.inverse())
        gr = grading_from_commuting_automorphisms(M3, [op], [3])
        assert sum(gr.component_dimensions().values()) == 9
        # each rebased basis vector is an eigenvector of the original operator
        for M, g in zip(gr.carrier.matrices, gr.degrees):
            img = S @ M @ S.inverse()
            assert any(img == M.scale(w**e) for e in range(3))

    def test_rejects_non_automorphism(self):
        M2 = build_matrix_algebra(2, F)
        bad = Matrix.diag(F, [2, 1, 1, 1])
        assert not is_automorphism(M2, bad)
        with pytest.raises(GradingError):
            grading_from_commuting_automorphisms(M2, [bad], [2])

    def test_refine_trivial_grading(self):
        M2 = build_matrix_algebra(2, F)
        one = G("1")
        triv = ensure_verified(Grading(one, M2, tuple(one.identity for _ in range(4))))
        A = Matrix.diag(F, [1, -1])
        op = operator_matrix(M2, lambda x: A @ x @ A)
        r = refine_by_automorphisms(triv, [op], [2])
        assert r.group == G("Z2") and r.verified
        assert sorted(r.component_dimensions().values()) == [2, 2]


class TestHomogeneousMaps:
    def test_jordan_L_has_degree_h(self):
        e = next(x for x in fine_catalog(2, "jordan") if x.name == "torus-transpose")
        assert e.h == e.group.element((0, 1))
        ext = extended_associative(e.grading, "jordan")
        assert verify_map_homogeneous(product_map(ext, -1), e.h).ok
        assert not verify_map_homogeneous(product_map(ext, -1), e.group.identity).ok

    def test_lie_J_has_degree_h(self):
        e = next(x for x in fine_catalog(2, "lie") if x.type_tag == "II")
        ext = extended_associative(e.grading, "lie", e.h)
        assert verify_map_homogeneous(product_map(ext, 1), e.h).ok

    def test_pair_swap_has_degree_minus_two_d(self):
        Z = G("Z x Z2")
        base = [Z.element((a, b)) for a in range(-1, 2) for b in range(2)]
        d = Z.element((2, 1))
        src = graded_space(Z, [(x + d) + (y + d) for x in base for y in base], F)
        tgt = graded_space(Z, [x + y for x in base for y in base], F)
        f = GradedMap(src, tgt, tuple(((k, F.one),) for k in range(len(base) ** 2)))
        assert verify_map_homogeneous(f, -(2 * d)).ok
        assert not verify_map_homogeneous(f, -d).ok

    def test_group_mismatch(self):
        e = fine_catalog(2, "jordan")[0]
        f = product_map(extended_associative(e.grading, "jordan"), -1)
        with pytest.raises(GradingError):
            verify_map_homogeneous(f, G("Z3").identity)
