from __future__ import annotations

import json
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from rankcrank.checks import VerificationError
from rankcrank.coeff import JetTruncationError
from rankcrank.diffops import D_a_from_jet
from rankcrank.pdeforge import (
    DaF_recurrence,
    F_series,
    NotInSpanError,
    PdeSpec,
    QuasimodularExpr,
    Y_series,
    assemble_main_theorem,
    check_binomial_display_jet,
    check_f0_identity,
    cstar_series,
    emit_pde,
    f0_closed_form,
    f0_sum,
    fit_quasimodular,
    normalize_corollary,
    quasimodular_basis,
    verify_chan_specialized,
    verify_classic_pdes,
    verify_L_derivatives,
    verify_Y_leading,
)
from rankcrank.qkernel import QSeries, euler, phi

PHI1 = (1, 0, 0, 0)
ONE = (0, 0, 0, 0)


def qe(d):
    return QuasimodularExpr.from_dict(d)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_initial_values_from_jets(m):
    assert D_a_from_jet(F_series(0, m, 3, 6), 0) == QSeries.constant(Fraction(m + 1, m), 6)
    for j in range(1, m):
        expected = Fraction((-1) ** j)
        for i in range(1, j + 1):
            expected *= Fraction(m - i, m + i + 1)
        assert D_a_from_jet(F_series(j, m, 3, 6), 0) == QSeries.constant(expected, 6)


def test_second_derivative_of_F02_from_jets():
    assert D_a_from_jet(F_series(0, 2, 5, 20), 2) == qe({ONE: 10, PHI1: -15}).to_series(20)


def test_domain_errors():
    with pytest.raises(ValueError):
        F_series(2, 2, 3, 5)
    with pytest.raises(ValueError):
        DaF_recurrence(0, 2, 5, 5)
    with pytest.raises(JetTruncationError):
        Y_series(2, 4, 5)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_derivatives_lie_in_expected_weight(m):
    for j in range(m):
        for a in range(2 * m + 1):
            expr = fit_quasimodular(DaF_recurrence(j, m, a, 30), 2 * (a // 2))
            assert expr.weight() <= 2 * (a // 2)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_log_derivative_lemma(m):
    assert verify_L_derivatives(m, 2 * m + 2, 10)


def test_fit_edge_cases():
    assert fit_quasimodular(QSeries.constant(Fraction(0), 20), 4) == QuasimodularExpr()
    with pytest.raises(NotInSpanError):
        fit_quasimodular(QSeries.monomial(1, Fraction(1), 20), 2)
    with pytest.raises(ValueError):
        fit_quasimodular(phi(1, 5), 2)


def test_fit_prefers_fewer_phi7_terms():
    # Phi_7 = Phi_3 + 120 Phi_3^2, so the fit must not use Phi_7
    s = phi(7, 40)
    assert fit_quasimodular(s, 8) == qe({(0, 1, 0, 0): 1, (0, 2, 0, 0): 120})


weight3 = st.dictionaries(
    st.sampled_from(quasimodular_basis(3)), st.fractions(max_denominator=7), max_size=5
)


@given(weight3)
def test_fit_roundtrip(d):
    expr = qe(d)
    assert fit_quasimodular(expr.to_series(25), 6) == expr


def test_quasimodular_expr_drops_zeros_and_renders():
    e = qe({ONE: 10, PHI1: -15, (0, 1, 0, 0): 0})
    assert len(e.terms) == 2
    assert str(e) == "10 - 15*Phi1"
    assert e.latex() == "10 - 15\\,\\Phi_1"


@pytest.mark.parametrize("m", range(1, 9))
def test_leading_coefficient_identity(m):
    assert f0_sum(m) == f0_closed_form(m)
    assert check_f0_identity(m)


@pytest.mark.parametrize("m", range(1, 7))
def test_binomial_display_jet(m):
    assert check_binomial_display_jet(m)


def test_y1_leading_derivative():
    Y = Y_series(1, 3, 20)
    assert D_a_from_jet(Y, 2) == cstar_series(20) ** 3 * euler(20) * 4


@pytest.mark.parametrize("m", [1, 2, 3])
def test_y_leading(m):
    assert verify_Y_leading(m, 10)


@pytest.mark.parametrize("m, N", [(1, 15), (2, 12)])
def test_specialized_lambert_identity(m, N):
    assert verify_chan_specialized(m, N)


def test_main_theorem_m1_unnormalized():
    spec = assemble_main_theorem(1, 20)
    assert spec.coeffs[1] == QSeries.constant(Fraction(2), spec.coeff_order)
    assert spec.coeffs[0] == qe({ONE: 4, PHI1: 12}).to_series(spec.coeff_order)
    assert spec.rhs_constant == 4


def test_main_theorem_m2_constant():
    spec = assemble_main_theorem(2, 12)
    assert spec.rhs_constant == -144 and spec.f0 == -6


@pytest.mark.parametrize("m", [1, 2, 3])
def test_coefficients_lie_in_expected_weight(m):
    spec = normalize_corollary(assemble_main_theorem(m, 10))
    assert spec.coeffs[m] == QSeries.constant(Fraction(1), spec.coeff_order)
    for i, form in enumerate(spec.forms):
        assert form.weight() <= 2 * (m - i)
        assert form.to_series(spec.coeff_order) == spec.coeffs[i]


def test_corollary_m2():
    spec = normalize_corollary(assemble_main_theorem(2, 15))
    assert spec.forms[1] == qe({PHI1: 60, ONE: 10})
    assert spec.forms[0] == qe({(2, 0, 0, 0): 300, (0, 1, 0, 0): 10, PHI1: 350, ONE: 24})
    assert spec.rhs_constant == factorial(4)


def test_normalize_rejects_wrong_leading_coefficient():
    spec = assemble_main_theorem(1, 8)
    spec.f0 = Fraction(3)
    with pytest.raises(VerificationError):
        normalize_corollary(spec)


def test_emit_json_m1():
    doc = json.loads(emit_pde(normalize_corollary(assemble_main_theorem(1, 12)), "json"))
    assert doc["m"] == 1 and doc["f0"] == 2
    assert doc["f"] == [
        {
            "power": 0,
            "monomials": [
                {"a": 0, "b": 0, "c": 0, "d": 0, "coeff": 2},
                {"a": 1, "b": 0, "c": 0, "d": 0, "coeff": 6},
            ],
        }
    ]


def test_emit_is_deterministic_and_guarded():
    spec = normalize_corollary(assemble_main_theorem(2, 10))
    assert emit_pde(spec, "latex") == emit_pde(spec, "latex")
    assert "60\\,\\Phi_1" in emit_pde(spec, "latex")
    raw = assemble_main_theorem(2, 10)
    with pytest.raises(ValueError):
        emit_pde(raw, "json")
    unverified = PdeSpec(1, True, [], Fraction(2), 0, 0, verified=False)
    with pytest.raises(VerificationError):
        emit_pde(unverified, "json")
    with pytest.raises(ValueError):
        emit_pde(spec, "yaml")


def test_classic_pdes():
    c = verify_classic_pdes(15)
    assert c, c.detail
    assert {s.name for s in c.sub} >= {"rank_crank_pde", "order4_pde", "order4_compact", "conjugation_H2"}
