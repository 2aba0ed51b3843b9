import dataclasses
import json

import pytest
import sympy as sp

from src import config, rauto
from src.rauto import EvenParams, Endomorphism, OddParams

SMALL = config.RautoBudget(
    draws=4, max_degree=2, slice_degree=3, beta_indices=(1,), search_samples=10, coefficient_range=2
)


@pytest.fixture
def S():
    return rauto.restricted_algebra().presentation


def test_identity_is_even_with_unit_parameters(S):
    e = rauto.identity()
    for name in rauto.GENERATORS:
        assert e.images[name] == S.gen(name)
    kind, params = rauto.parity(e)
    assert kind == "even"
    assert params.alpha == 1 and params.theta == 1 and params.betas == {}


@pytest.mark.parametrize("odd", [False, True])
def test_random_templates_are_automorphisms(rng, odd):
    for _ in range(SMALL.draws):
        params = rauto.random_params(rng, odd=odd, budget=SMALL)
        e = rauto.build_odd(params) if odd else rauto.build_even(params)
        assert rauto.is_homomorphism(e)
        assert rauto.is_bijective_on_slice(e, SMALL.slice_degree)
        assert rauto.check_disc_preservation(e)
        kind, found = rauto.parity(e)
        assert kind == ("odd" if odd else "even")
        assert found.alpha == params.alpha
        assert found.betas == params.betas


def test_odd_map_squares_u_to_minus_u_squared(S):
    psi = rauto.build_odd(OddParams(1, 1))
    u = S.gen("u")
    assert psi(u) * psi(u) == -(u * u)


def test_odd_after_odd_is_even():
    psi = rauto.build_odd(OddParams(1, 1))
    assert rauto.parity(rauto.compose(psi, psi))[0] == "even"


def test_parity_of_compositions(rng):
    even = rauto.build_even(rauto.random_params(rng, budget=SMALL))
    odd = rauto.build_odd(rauto.random_params(rng, odd=True, budget=SMALL))
    assert rauto.parity(rauto.compose(even, even))[0] == "even"
    assert rauto.parity(rauto.compose(even, odd))[0] == "odd"
    assert rauto.parity(rauto.compose(odd, even))[0] == "odd"
    assert rauto.parity(rauto.compose(odd, odd))[0] == "even"


def test_inverse_of_even_map():
    p = EvenParams(2, -1, -1, {1: 3, 3: -1})
    e = rauto.build_even(p)
    inv = rauto.build_even(rauto.inverse_even(p))
    assert rauto.compose(e, inv) == rauto.identity()
    assert rauto.compose(inv, e) == rauto.identity()


def test_params_validation():
    with pytest.raises(ValueError):
        EvenParams(1, 1, 1, {2: 1})
    with pytest.raises(ValueError):
        EvenParams(1, 1, 2)
    with pytest.raises(ValueError):
        EvenParams(0, 1)
    with pytest.raises(ValueError):
        OddParams(1, 0)
    assert EvenParams(1, 1, 1, {3: 0}).betas == {}


def test_non_homomorphism_is_detected(S):
    v = S.gen("v")
    e = Endomorphism({"u": v, "v": v, "g": S.gen("g"), "x": S.gen("x")})
    assert not rauto.is_homomorphism(e)
    assert rauto.parity(e)[0] == "neither"


def test_unrestricted_image_is_neither(S):
    e = rauto.build_even(EvenParams(1, 1))
    images = dict(e.images, x=S.gen("x") + S.gen("u"))
    assert rauto.parity(Endomorphism(images))[0] == "neither"


def test_disc_preservation_fails_for_a_shear(S):
    u, v = S.gen("u"), S.gen("v")
    e = Endomorphism({"u": u + v, "v": v, "g": S.gen("g"), "x": S.gen("x")})
    assert not rauto.check_disc_preservation(e)


def test_endomorphism_round_trip(rng):
    e = rauto.build_odd(rauto.random_params(rng, odd=True, budget=SMALL))
    data = json.loads(json.dumps(rauto.endomorphism_to_dict(e)))
    assert data["schema"] == config.ENDOMORPHISM_SCHEMA
    assert rauto.endomorphism_from_dict(data) == e


def test_endomorphism_dict_errors():
    data = rauto.endomorphism_to_dict(rauto.identity())
    with pytest.raises(ValueError):
        rauto.endomorphism_from_dict(dict(data, schema="other/0"))
    images = dict(data["images"])
    del images["x"]
    with pytest.raises(ValueError):
        rauto.endomorphism_from_dict(dict(data, images=images))


def _odd_with_shear(S):
    # u -> -(u g - 2 v g x), v -> -(u^2 g - 2 u v g x) - v g
    w = S.monomial({"u": 1, "g": 1}) - S.monomial({"v": 1, "g": 1, "x": 1}, 2)
    u = S.gen("u")
    return Endomorphism({"u": -w, "v": -(u * w) - S.monomial({"v": 1, "g": 1}), "g": S.gen("g"), "x": S.gen("x")})


def test_conjugation_by_one_plus_ugx_is_a_shear_outside_the_templates(S):
    u = S.gen("u")
    w = S.monomial({"u": 1, "g": 1}) - S.monomial({"v": 1, "g": 1, "x": 1}, 2)
    shear = Endomorphism({"u": u, "v": S.gen("v") + u * w, "g": S.gen("g"), "x": S.gen("x")})
    assert rauto.is_homomorphism(shear)
    assert rauto.is_bijective_on_slice(shear)
    assert rauto.check_disc_preservation(shear)
    assert rauto.parity(shear)[0] == "neither"
    assert rauto.linear_type(shear) == "even"
    # the shear is an even template after an inner automorphism
    conjugation = rauto.inner(S.monomial({"u": 1, "g": 1, "x": 1}, -1))
    assert rauto.compose(rauto.build_even(EvenParams(1, 1, 1, {3: 1})), conjugation) == shear


def test_conjugation_by_one_plus_ux(S):
    e = rauto.inner(S.monomial({"u": 1, "x": 1}, 2))
    assert e.images["g"] == S.gen("g") and e.images["x"] == S.gen("x")
    assert e.images["u"] == S.gen("u") - S.monomial({"u": 2, "x": 1}, 4)
    assert rauto.is_homomorphism(e)
    assert rauto.is_bijective_on_slice(e, SMALL.slice_degree)
    assert rauto.parity(e)[0] == "neither"
    assert rauto.linear_type(e) == "even"


def test_inner_needs_square_zero(S):
    with pytest.raises(ValueError):
        rauto.inner(S.gen("u"))


def test_odd_map_with_shear_tail_has_odd_linear_type(S):
    e = _odd_with_shear(S)
    assert rauto.is_homomorphism(e)
    assert rauto.is_bijective_on_slice(e)
    assert rauto.parity(e)[0] == "neither"
    assert rauto.linear_type(e) == "odd"


def test_linear_type_of_templates(rng):
    for odd in (False, True):
        params = rauto.random_params(rng, odd=odd, budget=SMALL)
        e = rauto.build_odd(params) if odd else rauto.build_even(params)
        assert rauto.linear_type(e) == ("odd" if odd else "even")


def test_linear_type_rejects_constant_terms(S):
    e = Endomorphism({"u": S.gen("u"), "v": S.gen("v") + 1, "g": S.gen("g"), "x": S.gen("x")})
    assert rauto.linear_type(e) == "neither"


def test_non_surjective_homomorphism_is_not_an_automorphism(S):
    # v -> v + v^3 with u -> u + u v^2 preserves every relation since v^2 is central
    u, v = S.gen("u"), S.gen("v")
    e = Endomorphism({"u": u + u * v * v, "v": v + v * v * v, "g": S.gen("g"), "x": S.gen("x")})
    assert rauto.is_homomorphism(e)
    assert not rauto.generators_in_image(e, 4)
    assert not rauto.is_bijective_on_slice(e, 4)
    assert rauto.linear_type(e) == "even"


def test_quadratic_system_of_the_identity_direction(S):
    assert rauto.quadratic_system([(S.gen("u"), S.gen("v"))], sp.symbols("t0:1")) == []
    w = S.monomial({"u": 1, "g": 1}) - S.monomial({"v": 1, "g": 1, "x": 1}, 2)
    mixed = [(S.gen("u"), S.gen("v")), (w, S.monomial({"v": 1, "g": 1}))]
    t0, t1 = sp.symbols("t0:2")
    # v and v g together: the cross term is -4 t0 t1 v^2 g x
    assert rauto.quadratic_system(mixed, (t0, t1)) == [-4 * t0 * t1]


def test_bounded_search_linear_parts_are_even_or_odd(rng):
    budget = dataclasses.replace(SMALL, search_samples=40)
    report = rauto.search_restricted(1, 1, budget, rng)
    assert report.passed, report.as_dict()
    assert report.draws == 40
    assert report.samples >= report.homomorphisms >= report.automorphisms > 0
    assert set(report.linear_types) <= {"even", "odd"}
    assert sum(report.parities.values()) == report.automorphisms
    assert report.beyond_template == report.parities.get("neither", 0)
    assert report.solution_dimension == 2 + 4 + 6
