"""Normalization algorithms: shifts, scalings, composita, the merge."""

import pytest

from towerdiff.algebra import valuation
from towerdiff.errors import (
    ConstantFieldTooSmall,
    DivisibilityObstruction,
    NotAnASExtension,
    NotPrimitive,
    SharedPoles,
    SharedRamification,
    ValidationFailed,
)
from towerdiff.ff import FieldSpec
from towerdiff.places import Place
from towerdiff.poly import Poly, RatFun, ratfun_valuation
from towerdiff.standard_form import (
    as_weak_standard_form,
    as_zero_normal,
    compositum_to_tower,
    elementary_abelian_merge,
    kummer_standard_form,
)
from towerdiff.tower import StepSpec, genus, tracked_place, validate

F3 = FieldSpec(3)
F5 = FieldSpec(5)
F9 = FieldSpec(3, 2, [1, 0, 1])


def test_weak_form_removes_cube_pole():
    x = Poly.x(F3)
    one = Poly.one(F3)
    r = RatFun(one, x**3) + RatFun(one, x)
    out, chain = as_weak_standard_form(r)
    assert out == RatFun(Poly.constant(F3, 2), x)
    assert len(chain) == 1
    assert chain.records[0]["w"] == RatFun(one, x)
    assert chain.replay_artin_schreier(r) == out


def test_weak_form_idempotent_on_standard_input():
    x = Poly.x(F3)
    one = Poly.one(F3)
    r = RatFun(Poly.constant(F3, 2) * x - one, x * (x - one))
    out, chain = as_weak_standard_form(r)
    assert out == r and len(chain) == 0


def test_weak_form_deep_pole():
    x = Poly.x(F3)
    one = Poly.one(F3)
    r = RatFun(one, x**6) + RatFun(one, x - one)
    out, chain = as_weak_standard_form(r)
    vx = ratfun_valuation(out, Place.finite(x))
    assert vx < 0 and vx % 3 != 0
    assert ratfun_valuation(out, Place.finite(x - one)) == -1
    assert chain.replay_artin_schreier(r) == out


def test_weak_form_pole_at_infinity():
    x = Poly.x(F3)
    one = Poly.one(F3)
    r = RatFun(x**3) + RatFun(one, x - one)
    out, chain = as_weak_standard_form(r)
    v_inf = ratfun_valuation(out, Place.infinite(F3))
    assert v_inf >= 0 or v_inf % 3 != 0
    assert chain.replay_artin_schreier(r) == out


def test_weak_form_preserves_true_ramification():
    x = Poly.x(F3)
    one = Poly.one(F3)
    r = RatFun(one, x**3) + RatFun(one, (x - one) ** 2)
    out, _ = as_weak_standard_form(r)
    assert ratfun_valuation(out, Place.finite(x - one)) == -2


def test_weak_form_detects_trivial_extension():
    x = Poly.x(F3)
    one = Poly.one(F3)
    w = RatFun(one, x)
    with pytest.raises(NotAnASExtension):
        as_weak_standard_form(w**3 - w)
    with pytest.raises(NotAnASExtension):
        as_weak_standard_form(RatFun.constant(F3, 2))


def test_zero_normal_needs_larger_constants():
    x = Poly.x(F3)
    one = Poly.one(F3)
    with pytest.raises(ConstantFieldTooSmall):
        as_zero_normal(RatFun(one, x), [Place.finite(x - one)])


def test_zero_normal_all_branches():
    x = Poly.x(F9)
    one = Poly.one(F9)
    t = Poly.constant(F9, F9.element([0, 1]))
    # v > 0 at (x-1); residue in the image at (x-2)? partition is computed internally
    r = RatFun(one, x) + RatFun(x - one)
    keeps = [Place.finite(x - one), Place.finite(x - one - one)]
    out, chain = as_zero_normal(r, keeps)
    for P in keeps:
        assert ratfun_valuation(out, P) == 0
    assert ratfun_valuation(out, Place.finite(x)) == -1
    assert chain.replay_artin_schreier(r) == out


def test_zero_normal_empty_keep_is_identity():
    x = Poly.x(F9)
    r = RatFun(Poly.one(F9), x)
    out, chain = as_zero_normal(r, [])
    assert out == r and len(chain) == 0


def test_kummer_form_folds_exponents():
    x = Poly.x(F5)
    one = Poly.one(F5)
    c = x**3 * (x - one)
    out, chain = kummer_standard_form(c, 2)
    assert out == RatFun(x * (x - one))
    # the chain witness is an exact square ratio
    assert chain.replay_kummer(RatFun(c)) == out


def test_kummer_form_untouched_when_standard():
    x = Poly.x(F5)
    one = Poly.one(F5)
    out, chain = kummer_standard_form(x * (x - one), 2)
    assert out == RatFun(x * (x - one)) and len(chain) == 0


def test_kummer_form_rejects_proper_powers():
    x = Poly.x(F5)
    one = Poly.one(F5)
    with pytest.raises(NotPrimitive):
        kummer_standard_form(x**2 * (x - one) ** 2, 4)


def test_kummer_form_infinity_obstruction():
    # v_inf is fixed mod n by any n-th power rescale: deg 1 cannot work for n=2
    x = Poly.x(F5)
    with pytest.raises(ValidationFailed):
        kummer_standard_form(x, 2)


def test_compositum_mixed(fixtures):
    x = Poly.x(F3)
    one = Poly.one(F3)
    comps = [
        StepSpec("kummer", x * (x - one), 2),
        StepSpec("artin_schreier", RatFun(one, x - one - one)),
    ]
    d = compositum_to_tower(comps)
    assert [s.kind for s in d.steps] == ["artin_schreier", "kummer"]
    assert validate(d).passed
    assert genus(d) == genus(fixtures["mixed_tower_f3"])


def test_compositum_shared_as_ramification():
    x = Poly.x(F3)
    one = Poly.one(F3)
    with pytest.raises(SharedRamification):
        compositum_to_tower(
            [
                StepSpec("artin_schreier", RatFun(one, x)),
                StepSpec("artin_schreier", RatFun(one + one, x)),
            ]
        )


def test_compositum_divisibility_obstruction():
    x = Poly.x(F5)
    one = Poly.one(F5)
    four = Poly.constant(F5, 4)
    with pytest.raises(DivisibilityObstruction):
        compositum_to_tower(
            [
                StepSpec("kummer", x * (x - one), 2),
                StepSpec("kummer", x * (x - four), 2),
            ]
        )


def test_compositum_disjoint_kummer_passes():
    x = Poly.x(F5)
    one = Poly.one(F5)
    d = compositum_to_tower(
        [
            StepSpec("kummer", x * (x - one), 2),
            StepSpec(
                "kummer",
                (x - one - one) * (x - Poly.constant(F5, 3)),
                2,
            ),
        ]
    )
    assert validate(d).passed


def test_merge_valuations():
    x = Poly.x(F9)
    one = Poly.one(F9)
    a1 = RatFun(one, x - one)
    z = RatFun(one, x)
    res = elementary_abelian_merge(a1, z, F9.one(), F9.one(), 2)
    pred = {P.poly: v for P, v in res.predicted_valuations.items()}
    assert pred[x] == -4  # v(z) * (1 + p(n-1)) = -1 * 4
    assert pred[x - one] == -1
    for P, v in res.predicted_valuations.items():
        assert valuation(res.rhs, tracked_place(res.tower, P)) == v


def test_merge_without_a1():
    x = Poly.x(F9)
    z = RatFun(Poly.one(F9), x)
    res = elementary_abelian_merge(RatFun.zero(F9), z, F9.one(), F9.one(), 2)
    assert {P.poly: v for P, v in res.predicted_valuations.items()} == {x: -4}


def test_merge_degenerate_case():
    x = Poly.x(F9)
    one = Poly.one(F9)
    res = elementary_abelian_merge(
        RatFun(one, x - one), RatFun(one, x), F9.one(), F9.one(), 1
    )
    assert res.degenerate
    # the z-pole disappears from the prediction: extension unramified there
    assert Place.finite(x) not in res.predicted_valuations


def test_merge_shared_poles_rejected():
    x = Poly.x(F9)
    z = RatFun(Poly.one(F9), x)
    with pytest.raises(SharedPoles):
        elementary_abelian_merge(z, z, F9.one(), F9.one(), 2)
