import pytest

from src import poisson
from src.commpoly import CommPoly
from src.exactfield import CycloElem
from src.ncpoly import ore_family
from src.poisson import JacobiViolation, PoissonDerivationPair, PoissonPolyAlgebra, Z_VARS


def test_coefficients_for_n_two():
    c = poisson.prop33_coefficients(2, 1, "plane")
    assert c.b1 == -4
    assert c.c1 == -8
    assert c.c2 == -1
    assert c.theta == CycloElem.rational("1/4")
    assert c.b2 is None
    assert c.as_dict()["theta"] == "1/4"


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2), (4, 1), (4, 3), (5, 2)])
def test_c1_is_k_plus_one_times_b1(n, k):
    c = poisson.prop33_coefficients(n, k)
    assert c.c1 == c.b1 * (k + 1)


def test_theta_depends_on_k_mod_n():
    assert poisson.prop33_coefficients(3, 1).theta == poisson.prop33_coefficients(3, 4).theta


def test_weyl_coefficients():
    c = poisson.prop33_coefficients(3, -2, "weyl")
    assert c.c1 == -c.b1
    assert c.b2 is not None and c.b2 != 0


def test_coefficients_reject_bad_parameters():
    with pytest.raises(ValueError):
        poisson.prop33_coefficients(3, 0)
    with pytest.raises(ValueError):
        poisson.prop33_coefficients(4, 2)
    with pytest.raises(ValueError):
        poisson.prop33_coefficients(4, 1, "weyl")
    with pytest.raises(ValueError):
        poisson.prop33_coefficients(3, 1, "torus")


def test_weyl_lift_is_normalized():
    lifted = poisson.prop33_coefficients(3, 1, "weyl")
    assert lifted == poisson.prop33_coefficients(3, -2, "weyl")
    assert lifted.k == -2
    assert lifted.c1 == -lifted.b1
    assert poisson.canonical_lift(5, 3, "weyl") == -2
    assert poisson.canonical_lift(4, 3, "plane") == 3
    # building the algebra runs the Jacobi check
    C = poisson.prop33_algebra(3, 1, "weyl")
    assert C.table() == poisson.prop33_algebra(3, -2, "weyl").table()


def test_weyl_needs_odd_n_before_anything_else():
    with pytest.raises(ValueError, match="n odd"):
        poisson.prop33_coefficients(2, -2, "weyl")
    with pytest.raises(ValueError, match="n odd"):
        poisson.canonical_lift(4, 0, "weyl")
    with pytest.raises(ValueError, match="k = -2 mod n"):
        poisson.prop33_coefficients(5, 1, "weyl")


def test_induced_bracket_of_u2_v2():
    ctx = poisson.specialization_context(2, 1)
    z1, z2, _ = CommPoly.gens(Z_VARS, 2)
    assert poisson.induced_bracket(ctx, ctx.lift("u"), ctx.lift("v")) == z1 * z2 * -4
    assert poisson.induced_bracket(ctx, ctx.lift("u"), ctx.lift("u")).is_zero()


def test_induced_bracket_needs_family_elements():
    ctx = poisson.specialization_context(3, 1)
    with pytest.raises(ValueError):
        poisson.induced_bracket(ctx, ctx.specialized.gen("u"), ctx.lift("v"))


def test_weyl_induced_bracket_has_constant_term():
    c = poisson.prop33_coefficients(3, -2, "weyl")
    ctx = poisson.specialization_context(3, -2, "weyl")
    z1, z2, _ = CommPoly.gens(Z_VARS, 3)
    assert poisson.induced_bracket(ctx, ctx.lift("u"), ctx.lift("v")) == z1 * z2 * c.b1 + c.b2


@pytest.mark.parametrize(
    "n,k,target",
    [(2, 1, "qplane"), (3, 1, "qplane"), (3, 2, "qplane"), (4, 1, "qplane"), (3, -2, "weyl")],
)
def test_induced_table_matches_closed_form(n, k, target):
    case = "plane" if target == "qplane" else "weyl"
    induced = poisson.induced_poisson_algebra(poisson.specialization_context(n, k, target))
    closed = poisson.prop33_algebra(n, k, case)
    for i, a in enumerate(Z_VARS):
        for b in Z_VARS[i + 1:]:
            assert induced.generator_bracket(a, b) == closed.generator_bracket(a, b), (a, b)


def test_bracket_on_products():
    c = poisson.prop33_coefficients(2, 1)
    C = poisson.prop33_algebra(2, 1)
    z1, z2, z3 = (C.gen(v) for v in Z_VARS)
    expected = z1 * (z2 * z3 * -c.c1 - z1 * c.c2) + (z1 * z3 * -c.b1) * z2
    assert poisson.poisson_bracket(C, z1 * z2, z3) == expected


def test_bracket_is_antisymmetric_and_satisfies_jacobi(rng):
    C = poisson.prop33_algebra(3, 1)
    gens = [C.gen(v) for v in Z_VARS]

    def random_poly():
        p = C.constant(rng.randint(-2, 2))
        for _ in range(3):
            term = C.constant(rng.choice([-1, 1, 2]))
            for g in gens:
                term = term * g ** rng.randint(0, 2)
            p = p + term
        return p

    for _ in range(5):
        f, g, h = random_poly(), random_poly(), random_poly()
        assert C.bracket(f, g) == -C.bracket(g, f)
        assert C.jacobiator(f, g, h).is_zero()


def test_jacobi_violation_is_detected():
    names = ("x", "y", "z")
    x, y, z = CommPoly.gens(names)
    with pytest.raises(JacobiViolation):
        PoissonPolyAlgebra(names, {("x", "y"): y, ("y", "z"): x})


def test_table_rejects_diagonal_entries():
    names = ("x", "y")
    x, _ = CommPoly.gens(names)
    with pytest.raises(ValueError):
        PoissonPolyAlgebra(names, {("x", "x"): x})


@pytest.mark.parametrize("n,k,case", [(2, 1, "plane"), (3, 1, "plane"), (3, -2, "weyl")])
def test_ore_extension_checks_pass(n, k, case):
    B, pair, C = poisson.prop33_ore_data(n, k, case)
    check = poisson.verify_poisson_ore(B, pair, C)
    assert check.passed, check.failures


def test_shifted_c1_only_breaks_the_ore_table():
    c = poisson.prop33_coefficients(2, 1)
    B, pair, C = poisson.prop33_ore_data(2, 1)
    z2 = B.gen("z2")
    shifted = PoissonDerivationPair(alpha={"z1": pair.alpha["z1"], "z2": z2 * (c.c1 + 1)}, beta=pair.beta)
    check = poisson.verify_poisson_ore(B, shifted, C)
    assert not check.passed
    assert check.checks == {"alpha_derivation": True, "beta_identity": True, "ore_table": False}


def test_normal_elements_of_plane_algebra():
    c = poisson.prop33_coefficients(2, 1)
    C = poisson.prop33_algebra(2, 1)
    z1, z2, z3 = (C.gen(v) for v in Z_VARS)
    assert poisson.is_poisson_normal(C, z1)
    assert not poisson.is_poisson_normal(C, z2)
    assert poisson.is_poisson_normal(C, z2 * z3 + z1 * c.theta)
    with pytest.raises(ValueError):
        poisson.is_poisson_normal(C, C.constant(0))


def test_normal_element_of_weyl_algebra():
    c = poisson.prop33_coefficients(3, -2, "weyl")
    C = poisson.prop33_algebra(3, -2, "weyl")
    z1, z2, z3 = (C.gen(v) for v in Z_VARS)
    prime = z1 * z2 * z3 + z1 * z1 * c.theta + z3 * (c.b2 / c.b1)
    assert poisson.is_poisson_normal(C, prime)
    assert not poisson.is_poisson_normal(C, z1)


def test_alpha_is_inner_in_plane_case():
    c = poisson.prop33_coefficients(3, 1)
    B, pair, _ = poisson.prop33_ore_data(3, 1)
    assert all(poisson.check_alpha_inner(B, pair, c.theta).values())


@pytest.mark.parametrize("n,k,target", [(2, 1, "qplane"), (3, 1, "qplane"), (3, 2, "qplane"), (3, -2, "weyl")])
def test_delta_power_identity(n, k, target):
    assert poisson.delta_power(n, k, target).holds


@pytest.mark.parametrize("k,target", [(1, "qplane"), (2, "qplane"), (-2, "weyl")])
def test_tau_delta_are_q_skew(k, target):
    result = poisson.check_q_skew(k, target)
    assert result["holds"]


def test_ore_maps_on_generators():
    R = ore_family(1)
    tau, delta = poisson.ore_maps(R)
    assert delta(R.gen("v")) == R.gen("u")
    assert delta(R.gen("u")).is_zero()
    with pytest.raises(ValueError):
        tau(R.gen("x"))


@pytest.mark.parametrize("n", range(2, 8))
def test_product_of_mu_powers_sign(n):
    assert poisson.check_mu_product_sign(n)
