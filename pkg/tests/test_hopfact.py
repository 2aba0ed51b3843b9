import math

import pytest

from src import hopfact
from src.exactfield import CycloElem
from src.hopfact import InvalidAction, UnsupportedTarget


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_hopf_axioms_hold_for_every_primitive_root(n):
    for j in range(1, n):
        if math.gcd(j, n) != 1:
            continue
        report = hopfact.verify_hopf_axioms(hopfact.taft_algebra(n, CycloElem.zeta(n, j)))
        assert report.passed, report.failure


def test_taft_algebra_rejects_bad_parameters():
    with pytest.raises(ValueError):
        hopfact.taft_algebra(1, CycloElem.rational(1))
    with pytest.raises(ValueError):
        hopfact.taft_algebra(4, CycloElem.zeta(4, 2))


def test_coproduct_of_x():
    H = hopfact.taft_algebra(3, CycloElem.zeta(3))
    delta = hopfact.coproduct(H, 0, 1)
    # g (x) x + x (x) 1
    assert set(delta) == {((1, 0), (0, 1)), ((0, 1), (0, 0))}
    assert all(v == 1 for v in delta.values())


def test_coproduct_of_x_squared_has_q_binomial():
    lam = CycloElem.zeta(3)
    H = hopfact.taft_algebra(3, lam)
    delta = hopfact.coproduct(H, 0, 2)
    assert delta[((1, 1), (0, 1))] == 1 + lam
    assert delta[((2, 0), (0, 2))] == 1


def test_counit_and_antipode():
    H = hopfact.taft_algebra(4, CycloElem.zeta(4))
    P = H.presentation
    g, x = P.gen("g"), P.gen("x")
    assert hopfact.counit(H, g) == 1
    assert hopfact.counit(H, x) == 0
    assert hopfact.antipode(H, g) == P.monomial({"g": 3})
    assert hopfact.antipode(H, x) == -(P.monomial({"g": 3}) * x)


def test_make_action_validation():
    with pytest.raises(InvalidAction):
        hopfact.make_action("qplane", 4, m=3)
    with pytest.raises(InvalidAction):
        hopfact.make_action("weyl", 4)
    with pytest.raises(InvalidAction):
        hopfact.make_action("qplane", 3, eta=0)
    with pytest.raises(UnsupportedTarget):
        hopfact.make_action("torus", 3)


def test_weyl_actions_fix_lambda():
    mu = CycloElem.zeta(5)
    one = hopfact.make_action("weyl", 5, family=1)
    two = hopfact.make_action("weyl", 5, family=2)
    assert one.lam == mu ** -2
    assert two.lam == mu ** 2


def test_act_composes_x_then_g(plane_action):
    A = plane_action.algebra
    v = A.gen("v")
    assert plane_action.act((0, 1), v) == A.gen("u")
    assert plane_action.act((1, 0), v) == v * (plane_action.lam * plane_action.mu)
    assert plane_action.act((0, 2), v).is_zero()
    assert hopfact.act(plane_action, (1, 1), v) == A.gen("u") * plane_action.mu


@pytest.mark.parametrize(
    "target,n,m",
    [("qplane", 2, 2), ("qplane", 3, 3), ("qplane", 4, 2), ("qplane", 4, 4), ("qplane", 6, 3), ("weyl", 3, 3), ("weyl", 5, 5)],
)
def test_classified_families_are_module_algebras(target, n, m):
    found = hopfact.classify_linear_actions(n, CycloElem.zeta(n, n // m), target)
    assert [f.family for f in found.families] == [1, 2]
    for fam in found.families:
        report = hopfact.verify_module_algebra(fam.action, 4 if n > 4 else 6)
        assert report.passed, report.failure


def test_classification_for_mu_minus_one_excludes_non_diagonal():
    found = hopfact.classify_linear_actions(2, CycloElem.rational(-1, 2), "qplane")
    assert found.nondiagonal_excluded is True
    assert any("inconsistent" in line for line in found.derivation)


def test_classification_without_divisibility_is_empty():
    found = hopfact.classify_linear_actions(3, CycloElem.rational(-1), "qplane")
    assert found.families == []
    assert found.as_dict()["m"] == 2


def test_weyl_family_one_has_lambda_mu_minus_two():
    mu = CycloElem.zeta(3)
    found = hopfact.classify_linear_actions(3, mu, "weyl")
    assert found.families[0].action.lam == mu ** -2


def test_classification_rejects_other_targets():
    with pytest.raises(UnsupportedTarget):
        hopfact.classify_linear_actions(3, CycloElem.zeta(3), "affine3")


def test_wrong_g_image_breaks_the_taft_relation(plane_action):
    A = plane_action.algebra
    bad = hopfact.modify_action(plane_action, g_images={"v": A.gen("v") * plane_action.mu})
    report = hopfact.verify_module_algebra(bad, 4)
    assert not report.passed
    assert report.checks["taft_relation"] is False


def test_other_targets_are_module_algebras():
    for action in (
        hopfact.make_action("affine3", 3),
        hopfact.make_action("qmatrices", 3),
        hopfact.make_action("polyring", 2),
    ):
        assert hopfact.verify_module_algebra(action, 3).passed


def test_smash_commutation_rule(plane_action):
    s = hopfact.build_smash(plane_action)
    x = s.hopf(0, 1)
    for name in ("u", "v"):
        r = plane_action.algebra.gen(name)
        assert x * s.lift(r) == s.lift(plane_action.g_of(r)) * x + s.lift(plane_action.x_of(r))
    g = s.hopf(1, 0)
    u = plane_action.algebra.gen("u")
    assert g * s.lift(u) == s.lift(plane_action.g_of(u)) * g


def test_split_inverts_smash_basis(plane_action):
    s = hopfact.build_smash(plane_action)
    A = plane_action.algebra
    z = s.lift(A.gen("u")) * s.hopf(1, 2) + s.lift(A.gen("v"))
    parts = s.split(z)
    assert parts[(1, 2)] == A.gen("u")
    assert parts[(0, 0)] == A.gen("v")


@pytest.mark.parametrize(
    "target,n,m",
    [("qplane", 2, 2), ("qplane", 3, 3), ("qplane", 4, 2), ("qplane", 4, 4), ("qplane", 6, 3), ("weyl", 3, 3)],
)
def test_primeness_iff_mu_has_order_n(target, n, m):
    s = hopfact.build_smash(hopfact.make_action(target, n, m=m))
    prime, witness = hopfact.is_prime_smash(s)
    assert prime == (m == n)
    assert (witness is not None) == prime


def test_primeness_witnesses():
    s = hopfact.build_smash(hopfact.make_action("qplane", 2))
    assert hopfact.is_prime_smash(s)[1] == s.action.algebra.gen("u")
    w = hopfact.build_smash(hopfact.make_action("weyl", 3))
    assert hopfact.is_prime_smash(w)[1] == w.action.algebra.monomial({"u": 2})


def test_primeness_needs_plane_or_weyl():
    s = hopfact.build_smash(hopfact.make_action("polyring", 2))
    with pytest.raises(UnsupportedTarget):
        hopfact.is_prime_smash(s)


def test_action_to_dict(plane_action):
    data = hopfact.action_to_dict(plane_action)
    assert data["target"] == "qplane"
    assert data["family"] == 1
    assert set(data["g_images"]) == {"u", "v"}
