"""Galois action on the differential basis and module decomposition.

For an abelian tower the generator substitutions y -> zeta*y (tame part)
and y -> y + 1 (wild part) act on the basis w_{mu,nu} = x^nu g_mu^{-1} y^mu dx
with constant coefficients; the action matrix, the nilpotency structure of
the wild part, and (for cyclic G) the indecomposable multiplicities are all
computed exactly and cross-checked against the dimension bookkeeping.
"""

from __future__ import annotations

from itertools import product
from math import factorial

from .algebra import AlgebraElement, apply_automorphism
from .basis import enumerate_basis, gamma_indices, invariant_table, lambda_rho
from .errors import (
    ClosureFailure,
    DecompositionInconsistent,
    ParseError,
    UnsupportedAction,
)
from .ff import FieldElement
from .poly import Poly, RatFun
from .tower import TowerDescriptor, analyze, genus


def _lambda_map(profile, mu):
    return {P: lambda_rho(tp, mu)[0] for P, tp in profile.items() if not P.is_infinite}


def _constant_of(coeff: RatFun) -> FieldElement:
    if coeff.num.degree > 0 or coeff.den.degree > 0:
        raise ClosureFailure("automorphism image has a non-constant coefficient")
    return coeff.num.leading() / coeff.den.leading()


def action_matrix(d: TowerDescriptor, h, seed: int = 0, profile=None):
    """Matrix of the automorphism sigma_1^{h_1}...sigma_r^{h_r} on the basis.

    Entry (i, j) is the coefficient of basis element i in the image of basis
    element j. The wild part only lowers exponents and the tame part only
    scales, so the image of each w_{mu,nu} is a k-combination of basis
    elements; anything else aborts.
    """
    if profile is None:
        profile = analyze(d, seed)
    basis = enumerate_basis(d, seed, profile)
    index = {(b.mu, b.nu): i for i, b in enumerate(basis)}
    lam = {}
    for mu in gamma_indices(d):
        lam[mu] = _lambda_map(profile, mu)
    spec = d.field
    zero = spec.zero()
    m = [[zero for _ in basis] for _ in basis]
    done_mu = {}
    for j, b in enumerate(basis):
        if b.mu not in done_mu:
            mono = AlgebraElement.monomial(spec, b.mu)
            done_mu[b.mu] = apply_automorphism(d, mono, h)
        img = done_mu[b.mu]
        for exps, coeff in img.terms.items():
            mu2 = tuple(exps) + (0,) * (d.r - len(exps))
            c0 = _constant_of(coeff)
            if mu2 not in lam:
                raise ClosureFailure(f"image index {mu2} outside the basis index set")
            hpoly = Poly.one(spec)
            for P, l2 in lam[mu2].items():
                diff = l2 - lam[b.mu].get(P, 0)
                if diff < 0:
                    raise ClosureFailure(
                        f"pole bookkeeping fails: lambda drops at {P} for {b.mu} -> {mu2}"
                    )
                hpoly = hpoly * P.poly**diff
            for P, l1 in lam[b.mu].items():
                if P not in lam[mu2] and l1 > 0:
                    raise ClosureFailure(
                        f"pole bookkeeping fails: lambda drops at {P} for {b.mu} -> {mu2}"
                    )
            for l, bl in enumerate(hpoly.coeffs):
                if bl.is_zero():
                    continue
                target = index.get((mu2, b.nu + l))
                if target is None:
                    raise ClosureFailure(
                        f"image term (mu={mu2}, nu={b.nu + l}) of basis element "
                        f"{b.pretty()} leaves the basis"
                    )
                m[target][j] = m[target][j] + c0 * bl
    return m


def matrix_mul(a, b):
    n = len(a)
    return [
        [sum((a[i][k] * b[k][j] for k in range(n)), start=a[0][0].spec.zero()) for j in range(n)]
        for i in range(n)
    ]


def identity_matrix(spec, n):
    zero, one = spec.zero(), spec.one()
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def _wild_levels(d: TowerDescriptor):
    return [i for i, s in enumerate(d.steps) if s.kind == "artin_schreier"]


def nilpotency_check(d: TowerDescriptor) -> bool:
    """(sigma_i - 1)^{mu_i} z^mu = mu_i! * z^{mu, i -> 0}, one more kills it.

    Checked for every reduced monomial z^mu and every wild level i by
    repeated application of the shift automorphism.
    """
    spec = d.field
    bounds = [s.degree for s in d.steps]
    for mu in product(*(range(b) for b in bounds)):
        for i in _wild_levels(d):
            h = [0] * d.r
            h[i] = 1
            u = AlgebraElement.monomial(spec, mu)
            for _ in range(mu[i]):
                u = apply_automorphism(d, u, h) - u
            dropped = list(mu)
            dropped[i] = 0
            expected = AlgebraElement.monomial(
                spec, dropped, RatFun.constant(spec, factorial(mu[i]) % spec.p)
            )
            if u != expected:
                return False
            if not (apply_automorphism(d, u, h) - u).is_zero():
                return False
    return True


class DeltaModule:
    """Indecomposable summand: Jordan block of size mu_p twisted by a character."""

    __slots__ = ("mu_p", "mu_tame", "dim")

    def __init__(self, mu_p: int, mu_tame, dim: int):
        self.mu_p = mu_p
        self.mu_tame = tuple(mu_tame)
        self.dim = dim

    def __repr__(self):
        return f"DeltaModule(mu_p={self.mu_p}, mu_tame={self.mu_tame}, dim={self.dim})"


class DecompositionReport:
    __slots__ = ("entries", "t_unr", "genus")

    def __init__(self, entries, t_unr, g):
        self.entries = list(entries)  # (DeltaModule, multiplicity)
        self.t_unr = t_unr
        self.genus = g

    def total_dimension(self) -> int:
        return sum(mod.dim * mult for mod, mult in self.entries)

    def __repr__(self):
        return f"DecompositionReport({self.entries}, t_unr={self.t_unr}, g={self.genus})"


def _cyclic_shape(d: TowerDescriptor):
    """(n, t): one optional leading Kummer step, then an Artin-Schreier chain."""
    kinds = [s.kind for s in d.steps]
    if kinds.count("kummer") > 1:
        raise UnsupportedAction("cyclic decomposition needs at most one tame step")
    if "kummer" in kinds and kinds[0] != "kummer":
        raise UnsupportedAction("cyclic decomposition expects the tame step first")
    n = d.steps[0].n if kinds[0] == "kummer" else 1
    t = kinds.count("artin_schreier")
    return n, t


def cyclic_decomposition(d: TowerDescriptor, seed: int = 0) -> DecompositionReport:
    """Multiplicities d_mu of the indecomposables for cyclic G of order p^t * n.

    Case analysis on mu_p with the invariant table; the top multiplicity
    (the free module of the p-part) is fixed by the per-character dimension
    count, which must come out a nonnegative integer, and the total must be
    the genus.
    """
    n, t = _cyclic_shape(d)
    p = d.field.p
    profile = analyze(d, seed)
    _, table = invariant_table(d, profile, seed)
    g = genus(d, seed, profile)
    t_unr = 0  # every validated wild step ramifies somewhere

    has_tame = d.steps[0].kind == "kummer"
    gamma = set(gamma_indices(d))

    def full_index(mu_p: int, mu_ku: int):
        digits = []
        m = mu_p
        for _ in range(t):
            m, rdig = divmod(m, p)
            digits.append(rdig)
        return ((mu_ku,) if has_tame else ()) + tuple(digits)

    def tval(mu_p: int, mu_ku: int) -> int:
        return table[full_index(mu_p, mu_ku)]

    def delta_flag(mu_p: int, mu_ku: int) -> int:
        return 1 if tval(mu_p, mu_ku) == 0 else 0

    entries = []
    for mu_ku in range(n):
        mults = {}
        for mu_p in range(1, p**t):
            if mu_p < p**t - 1:
                dm = (
                    tval(mu_p - 1, mu_ku)
                    - tval(mu_p, mu_ku)
                    + delta_flag(mu_p - 1, mu_ku)
                    - delta_flag(mu_p, mu_ku)
                )
            elif mu_ku != 0:
                dm = tval(mu_p - 1, mu_ku) - tval(mu_p, mu_ku) + delta_flag(mu_p - 1, mu_ku)
            else:
                dm = tval(mu_p - 1, mu_ku) - delta_flag(mu_p - 1, mu_ku) - 1
            if dm < 0:
                raise DecompositionInconsistent(
                    f"negative multiplicity {dm} at mu_p={mu_p}, character {mu_ku}"
                )
            mults[mu_p] = dm
        eig = sum(
            table[mu] - 1
            for mu in gamma
            if (not has_tame) or mu[0] == mu_ku
        )
        used = sum(dm * mu_p for mu_p, dm in mults.items())
        rem = eig - used
        if rem < 0 or rem % p**t != 0:
            raise DecompositionInconsistent(
                f"character {mu_ku}: eigenspace dimension {eig} does not split as "
                f"{used} plus a multiple of {p**t}"
            )
        mults[p**t] = rem // p**t
        tame_vec = (mu_ku,) if has_tame else ()
        for mu_p, dm in sorted(mults.items()):
            if dm:
                entries.append((DeltaModule(mu_p, tame_vec, mu_p), dm))
    report = DecompositionReport(entries, t_unr, g)
    if report.total_dimension() != g:
        raise DecompositionInconsistent(
            f"dimension sum {report.total_dimension()} != genus {g}"
        )
    return report


def submodule_generators(d: TowerDescriptor, mu, nu: int, seed: int = 0, profile=None):
    """Generators theta of the submodule attached to the basis element (mu, nu).

    theta_{mu'} = x^nu g_mu^{-1} y^{mu'} dx for every mu' below mu in the
    wild directions (tame part fixed); their span has dimension
    prod(mu_i + 1) over the wild levels and is stable under the action.
    """
    if profile is None:
        profile = analyze(d, seed)
    mu = tuple(mu)
    if len(mu) != d.r:
        raise ParseError("exponent vector length must match the tower height")
    basis_keys = {(b.mu, b.nu) for b in enumerate_basis(d, seed, profile)}
    if (mu, nu) not in basis_keys:
        raise ParseError(f"(mu={mu}, nu={nu}) does not index a basis element")
    spec = d.field
    g_mu = Poly.one(spec)
    for P, lam in _lambda_map(profile, mu).items():
        g_mu = g_mu * P.poly**lam
    coeff = RatFun(Poly.x(spec) ** nu, g_mu)
    wild = set(_wild_levels(d))
    ranges = [range(mu[i], mu[i] + 1) if i not in wild else range(mu[i] + 1) for i in range(d.r)]
    out = []
    for mu2 in product(*ranges):
        out.append(AlgebraElement.monomial(spec, mu2, coeff))
    return out
