"""Galois action on the basis, nilpotency, and the module decomposition."""

import pytest

from towerdiff.basis import enumerate_basis
from towerdiff.errors import ParseError, UnsupportedAction
from towerdiff.ff import FieldSpec
from towerdiff.galois import (
    action_matrix,
    cyclic_decomposition,
    identity_matrix,
    matrix_mul,
    nilpotency_check,
    submodule_generators,
)
from towerdiff.poly import Poly
from towerdiff.tower import StepSpec, TowerDescriptor, genus

F3 = FieldSpec(3)
F5 = FieldSpec(5)


def as_ints(m):
    return [[e.coeffs[0] if e.spec.h == 1 else list(e.coeffs) for e in row] for row in m]


def test_action_identity(fixtures):
    for name in ("as_genus2_f3", "mixed_tower_f3", "elliptic_f5"):
        d = fixtures[name]
        m = action_matrix(d, [0] * d.r)
        assert m == identity_matrix(d.field, len(m)), name


def test_action_jordan_block(fixtures):
    d = fixtures["as_genus2_f3"]
    m = action_matrix(d, [1])
    assert as_ints(m) == [[1, 1], [0, 1]]


def test_action_character_scale(fixtures):
    d = fixtures["elliptic_f5"]
    m = action_matrix(d, [1])
    assert as_ints(m) == [[4]]  # zeta_2 = -1


def test_action_mixed_generators(fixtures):
    d = fixtures["mixed_tower_f3"]
    mk = action_matrix(d, [1, 0])
    ma = action_matrix(d, [0, 1])
    assert as_ints(mk) == [[2, 0], [0, 2]]  # both elements carry y1
    assert as_ints(ma) == [[1, 1], [0, 1]]


def test_action_is_representation(fixtures):
    for name in ("as_genus2_f3", "mixed_tower_f3", "fermat_n3_f7"):
        d = fixtures[name]
        spec = d.field
        gens = []
        for i, s in enumerate(d.steps):
            h = [0] * d.r
            h[i] = 1
            gens.append((action_matrix(d, h), s.degree))
        n = len(enumerate_basis(d))
        ident = identity_matrix(spec, n)
        for m, order in gens:
            # composition: sigma^order = 1
            acc = ident
            for _ in range(order):
                acc = matrix_mul(acc, m)
            assert acc == ident, name
        if d.r == 2:
            h12 = action_matrix(d, [1, 1])
            assert matrix_mul(gens[0][0], gens[1][0]) == h12, name


def test_nilpotency_on_fixtures(fixtures):
    for name, d in fixtures.items():
        assert nilpotency_check(d), name


def test_decomposition_as_genus2(fixtures):
    rep = cyclic_decomposition(fixtures["as_genus2_f3"])
    assert [(m.mu_p, m.mu_tame, mult) for m, mult in rep.entries] == [(2, (), 1)]
    assert rep.total_dimension() == rep.genus == 2
    assert rep.t_unr == 0


def test_decomposition_elliptic(fixtures):
    rep = cyclic_decomposition(fixtures["elliptic_f5"])
    assert [(m.mu_p, m.mu_tame, mult) for m, mult in rep.entries] == [(1, (1,), 1)]
    assert rep.total_dimension() == 1


def test_decomposition_all_cyclic_fixtures(fixtures):
    for name, d in fixtures.items():
        rep = cyclic_decomposition(d)
        assert rep.total_dimension() == genus(d), name


def test_decomposition_fermat_characters(fixtures):
    rep = cyclic_decomposition(fixtures["fermat_n3_f7"])
    assert [(m.mu_p, m.mu_tame, mult) for m, mult in rep.entries] == [(1, (1,), 1)]


def test_decomposition_rejects_bad_shape():
    x = Poly.x(F5)
    one = Poly.one(F5)
    d = TowerDescriptor(
        F5,
        [
            StepSpec("kummer", x * (x - one), 2),
            StepSpec("kummer", (x - one - one) * (x - Poly.constant(F5, 3)), 2),
        ],
    )
    with pytest.raises(UnsupportedAction):
        cyclic_decomposition(d)


def test_submodule_jordan_pair(fixtures):
    d = fixtures["as_genus2_f3"]
    gens = submodule_generators(d, (1,), 0)
    assert len(gens) == 2
    exps = {tuple(next(iter(g.terms))) for g in gens}
    assert exps == {(), (1,)}


def test_submodule_mixed(fixtures):
    d = fixtures["mixed_tower_f3"]
    gens = submodule_generators(d, (1, 1), 0)
    assert len(gens) == 2
    exps = {tuple(next(iter(g.terms))) for g in gens}
    assert exps == {(1,), (1, 1)}
    single = submodule_generators(d, (1, 0), 0)
    assert len(single) == 1


def test_submodule_requires_basis_index(fixtures):
    with pytest.raises(ParseError):
        submodule_generators(fixtures["as_genus2_f3"], (2,), 0)


def test_submodule_span_is_stable(fixtures):
    # the span of the generators maps into itself under every group generator
    from towerdiff.algebra import apply_automorphism

    d = fixtures["mixed_tower_f3"]
    gens = submodule_generators(d, (1, 1), 0)
    monos = {tuple(next(iter(g.terms))) for g in gens}
    for i in range(d.r):
        h = [0] * d.r
        h[i] = 1
        for g in gens:
            img = apply_automorphism(d, g, h)
            for exps in img.terms:
                assert tuple(exps) in monos
