import pytest

from qserre import algebras as A
from qserre.field import ONE, RatF

P = RatF.parse


def test_lemma12_identities():
    checks = A.verify_lemma12(6)
    assert [c.id for c in checks] == [f"lemma12.{i}" for i in range(1, 7)]
    assert all(c.ok and c.oracle for c in checks)


def test_w_zprime_identities():
    checks = A.verify_w_identities(7)
    assert len(checks) == 8 and all(c.ok and c.oracle for c in checks)


def test_w_and_zprime_weights():
    u = A.build_u().spec
    assert A.element_w(u).weight() == (1, 2)
    assert A.element_zprime(u).weight() == (2, 2)


def test_embedding_respects_relations():
    emb = A.embedding_i()
    assert emb.check()
    assert sorted(emb.relation_residuals()) == ["X2X1", "X3X1", "X3X2", "X4X1", "X4X2", "X4X3"]
    assert not any(emb.serre_residuals())


def test_embedding_with_wrong_lambda_fails():
    emb = A.embedding_i(lam=A.lambda_value() * 2)
    res = emb.relation_residuals()
    assert res["X4X1"] and not res["X2X1"]


def test_solve_lambda():
    sol = A.solve_lambda()
    assert sol.value == P("r/((r^2 - s^2)*(r - s))") and sol.nullity == 0
    # with unit coefficient on the T2 T1^-1 term
    assert A.solve_lambda(ONE).value == P("-1/(r^2 - s^2)")


def test_t4_consistency():
    rep = A.t4_consistency()
    assert not rep.residual and rep.w_image_ok and rep.z_image_ok
    assert not A.x4_from_t_b3()


def test_torus_relations():
    rels = {r.pair: r for r in A.derive_torus_relations()}
    assert [p for p, r in rels.items() if r.discrepancy] == [(1, 4)]
    assert rels[(1, 4)].derived == P("r^2")
    assert rels[(1, 4)].printed_partner == (4, 2)
    assert rels[(2, 4)].derived == P("s^2")
    assert rels[(3, 4)].derived == P("r s")


def test_q4_designated_generators_satisfy_serre():
    assert not any(A.build_q4().serre_residuals())


def test_center_scans():
    zu = A.center_scan(A.build_u(), 6)
    assert len(zu) == 1 and zu[0] == 1
    zq = A.center_scan(A.build_q4(), 0, 3)
    assert len(zq) == 1 and zq[0] == 1
    zg = A.center_scan(A.build_gr_u(), 4)
    assert len(zg) == 1 and zg[0] == 1


def test_graded_center_system():
    eqs = A.graded_center_system()
    assert sorted(eqs) == sorted([(0, 0, 2, 2), (0, 2, 2, 0), (-2, 0, -1, 0), (0, -2, -1, 0)])
    assert A.graded_center_solution_rank(eqs) == 4
    assert A.satisfies(eqs, (0, 0, 0, 0)) and not A.satisfies(eqs, (1, 0, -2, 2))


def test_algebra_by_name():
    for name in ("u", "gru", "b4", "b3", "b2", "q4", "b1", "ugeq0", "vcheck"):
        assert A.algebra_by_name(name).spec.n in (4, 6)
    assert A.algebra_by_name("B3").spec.invertible == (True, True, False, False)
    with pytest.raises(KeyError):
        A.algebra_by_name("sl3")
