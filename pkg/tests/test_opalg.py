from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from innerqft import opalg
from innerqft.opalg import (CRat, Delta3, Delta4, ERatioPow, Metric, OmegaPow,
                            OperatorExpr, SpinDelta, anticommutator,
                            commutator, delta_resolve, make_monomial,
                            normal_order, reduce_to_normal_form, vev)

from conftest import random_ladder, random_product


def expr_of(*monos):
    return OperatorExpr.from_monomials(list(monos))


# -- exact scalar arithmetic -------------------------------------------------

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@given(rationals, rationals, rationals, rationals)
def test_crat_multiplication(a, b, c, d):
    x, y = CRat(a, b), CRat(c, d)
    z = x * y
    assert z.re == a * c - b * d
    assert z.im == a * d + b * c
    assert (x * y).conj() == x.conj() * y.conj()


def test_crat_i_squared():
    assert opalg.I * opalg.I == CRat.of(-1)


# -- contact terms [DERIVED from the quantization rules] ----------------------


def test_scalar_contact_term():
    got = commutator(opalg.a("k", "K"), opalg.a("h", "H", dagger=True))
    want = expr_of(make_monomial(2, lam=-4, twopi=7,
                                 atoms=(OmegaPow("k"), Delta4("K", "H"),
                                        Delta3("k", "h"))))
    assert got == want


def test_dirac_contact_term():
    got = anticommutator(opalg.b("k", "s", "K"),
                         opalg.b("h", "t", "H", dagger=True))
    want = expr_of(make_monomial(1, lam=-4, twopi=7,
                                 atoms=(ERatioPow("k"), SpinDelta("s", "t"),
                                        Delta4("K", "H"), Delta3("k", "h"))))
    assert got == want


def test_gauge_contact_term():
    got = commutator(opalg.gauge("k", "g", "K", "G"),
                     opalg.gauge("h", "g2", "H", "G2", dagger=True))
    want = expr_of(make_monomial(2, lam=-2, twopi=7,
                                 atoms=(OmegaPow("k"), Metric(True, "g", "g2"),
                                        Metric(False, "G", "G2"),
                                        Delta4("K", "H"), Delta3("k", "h"))))
    assert got == want


def test_same_type_brackets_vanish():
    assert commutator(opalg.a("k", "K"), opalg.a("h", "H")).is_zero()
    assert commutator(opalg.a("k", "K", dagger=True),
                      opalg.a("h", "H", dagger=True)).is_zero()
    assert anticommutator(opalg.b("k", "s", "K"),
                          opalg.b("h", "t", "H")).is_zero()
    assert anticommutator(opalg.d("k", "s", "K", dagger=True),
                          opalg.d("h", "t", "H", dagger=True)).is_zero()


def test_distinct_species_commute_freely():
    pairs = [
        (opalg.a("k", "K"), opalg.b("h", "t", "H", dagger=True)),
        (opalg.a("k", "K"), opalg.gauge("h", "g", "H", "G", dagger=True)),
        (opalg.b("k", "s", "K"), opalg.d("h", "t", "H", dagger=True)),
        (opalg.d("k", "s", "K"), opalg.gauge("h", "g", "H", "G", dagger=True)),
    ]
    for x, y in pairs:
        fermi = (x.terms[0].ops[0].fermionic and y.terms[0].ops[0].fermionic)
        bracket = anticommutator(x, y) if fermi else commutator(x, y)
        assert bracket.is_zero()


def test_bound_spin_mismatch_kills_term():
    got = anticommutator(opalg.b("k", 1, "K"), opalg.b("h", 2, "H", dagger=True))
    assert got.is_zero()


def test_bound_gauge_metric_signs():
    # eta^{00} = +1, eta^{jj} = -1; inner metric is purely negative
    lhs = commutator(opalg.gauge("k", 0, "K", 1),
                     opalg.gauge("h", 0, "H", 1, dagger=True))
    want = expr_of(make_monomial(-2, lam=-2, twopi=7,
                                 atoms=(OmegaPow("k"), Delta4("K", "H"),
                                        Delta3("k", "h"))))
    assert lhs == want
    lhs = commutator(opalg.gauge("k", 2, "K", 3),
                     opalg.gauge("h", 2, "H", 3, dagger=True))
    want = expr_of(make_monomial(2, lam=-2, twopi=7,
                                 atoms=(OmegaPow("k"), Delta4("K", "H"),
                                        Delta3("k", "h"))))
    assert lhs == want
    assert commutator(opalg.gauge("k", 1, "K", 1),
                      opalg.gauge("h", 2, "H", 1, dagger=True)).is_zero()


def test_pauli_exclusion():
    b = opalg.b("k", 1, "K")
    assert reduce_to_normal_form(b * b).is_zero()
    bd = opalg.b("k", 1, "K", dagger=True)
    assert reduce_to_normal_form(bd * bd).is_zero()


def test_gauge_polarization_validation():
    with pytest.raises(ValueError):
        opalg.gauge("k", 4, "K", 1)
    with pytest.raises(ValueError):
        opalg.gauge("k", 1, "K", 0)  # inner index 0 is not a valid mode
    with pytest.raises(ValueError):
        opalg.b("k", 3, "K")


# -- reduction properties ----------------------------------------------------


@settings(max_examples=80, deadline=None)
@given(st.randoms(use_true_random=False))
def test_reduction_idempotent(r):
    e = random_product(r)
    once = reduce_to_normal_form(e)
    assert reduce_to_normal_form(once) == once


@settings(max_examples=80, deadline=None)
@given(st.randoms(use_true_random=False))
def test_reduction_is_normal_ordered(r):
    e = reduce_to_normal_form(random_product(r))
    for m in e.terms:
        keys = [op.sort_key() for op in m.ops]
        assert keys == sorted(keys)


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_dagger_involution(r):
    e = random_product(r)
    assert e.dagger().dagger() == e


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_dagger_antihomomorphism(r):
    x = random_product(r, max_ops=2)
    y = random_product(r, max_ops=2)
    assert (x * y).dagger() == y.dagger() * x.dagger()


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False))
def test_reduction_preserves_vev_probes(r):
    # the reduced expression is the same operator: identical matrix
    # elements between random states built from creators
    e = random_product(r, max_ops=3)
    red = reduce_to_normal_form(e)
    bra = random_product(r, max_ops=2)
    ket = random_product(r, max_ops=2)
    assert vev(bra.dagger() * e * ket) == vev(bra.dagger() * red * ket)


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False))
def test_commutator_antisymmetry(r):
    x = random_product(r, max_ops=2)
    y = random_product(r, max_ops=2)
    assert commutator(x, y) == -commutator(y, x)


@settings(max_examples=25, deadline=None)
@given(st.randoms(use_true_random=False))
def test_jacobi_identity(r):
    x = random_product(r, max_ops=2)
    y = random_product(r, max_ops=2)
    z = random_product(r, max_ops=2)
    total = (commutator(x, commutator(y, z))
             + commutator(y, commutator(z, x))
             + commutator(z, commutator(x, y)))
    assert total.is_zero()


def test_normal_order_drops_contact_terms():
    e = opalg.a("k", "K") * opalg.a("h", "H", dagger=True)
    assert normal_order(e) == reduce_to_normal_form(
        opalg.a("h", "H", dagger=True) * opalg.a("k", "K"))


def test_normal_order_keeps_fermionic_sign():
    e = opalg.b("k", "s", "K") * opalg.b("h", "t", "H", dagger=True)
    swapped = reduce_to_normal_form(
        opalg.b("h", "t", "H", dagger=True) * opalg.b("k", "s", "K"))
    assert normal_order(e) == -swapped


# -- scale-power bookkeeping ---------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_scale_powers_additive_under_product(r):
    m1 = make_monomial(1, lam=r.randint(-3, 3), twopi=r.randint(-3, 3),
                       vreg=r.randint(0, 2))
    m2 = make_monomial(1, lam=r.randint(-3, 3), twopi=r.randint(-3, 3),
                       vreg=r.randint(0, 2))
    prod = expr_of(m1) * expr_of(m2)
    ((m,),) = [prod.terms]
    assert (m.lam, m.twopi, m.vreg) == (m1.lam + m2.lam, m1.twopi + m2.twopi,
                                        m1.vreg + m2.vreg)


def test_vev_picks_scalar_part():
    assert vev(OperatorExpr.number(3)) == OperatorExpr.number(3)
    assert vev(opalg.a("k", "K", dagger=True)).is_zero()
    assert vev(opalg.a("k", "K")).is_zero()


def test_vev_two_point_ordering():
    assert vev(opalg.a("h", "H", dagger=True) * opalg.a("k", "K")).is_zero()
    assert not vev(opalg.a("k", "K") * opalg.a("h", "H", dagger=True)).is_zero()


# -- delta resolution ----------------------------------------------------------


def test_delta_resolve_substitutes_symbols():
    e = commutator(opalg.a("k", "K"), opalg.a("h", "H", dagger=True))
    resolved = delta_resolve(e, {"h": (Fraction(1), Fraction(2), Fraction(2)),
                                 "H": (Fraction(4), Fraction(0), Fraction(0),
                                       Fraction(0))})
    ((m,),) = [resolved.terms]
    # the deltas are consumed: k and K are unified with the bound values
    assert not any(isinstance(a, (Delta3, Delta4)) for a in m.atoms)
    atom_moms = [a.mom for a in m.atoms if isinstance(a, OmegaPow)]
    assert atom_moms == [(Fraction(1), Fraction(2), Fraction(2))]


def test_delta_resolve_conflicting_deltas_kill_monomial():
    m = make_monomial(1, atoms=(Delta3("k", (Fraction(1), Fraction(0), Fraction(0))),
                                Delta3("k", (Fraction(2), Fraction(0), Fraction(0)))))
    assert delta_resolve(expr_of(m)).is_zero()


def test_delta_resolve_rejects_malformed_bindings():
    e = opalg.a("k", "K")
    with pytest.raises(opalg.InconsistentBinding):
        delta_resolve(e, {("k",): (Fraction(1), Fraction(0), Fraction(0))})


def test_delta_symmetry_canonicalizes():
    assert Delta3("k", "h") == Delta3("h", "k")
    assert Delta4("K", "H") == Delta4("H", "K")
    assert SpinDelta(2, 1) == SpinDelta(1, 2)


def test_monomial_merge_cancels():
    x = opalg.a("k", "K")
    e = x + x - x.scale(2)
    assert e.is_zero()


def test_number_recognition():
    e = OperatorExpr.number(CRat(Fraction(1, 2), Fraction(-3)))
    assert e.is_number()
    assert not opalg.a("k", "K").is_number()
