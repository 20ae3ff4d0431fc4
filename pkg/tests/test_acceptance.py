"""Acceptance gate: every criterion at its stated truncation order, exact equality."""
from __future__ import annotations

import time
from fractions import Fraction

from rankcrank.arith import check_binomial_identity, check_f0_sum
from rankcrank.checks import Check
from rankcrank.diffops import D_a_from_jet, verify_theorem41
from rankcrank.genfun import crank_gf, rank_gf, verify_theorem11
from rankcrank.lambert import (
    Specialization,
    random_specialization,
    verify_chan,
    verify_jackson,
    verify_lewis,
    verify_watson,
)
from rankcrank.partitions import residue_class_counts, statistic_table
from rankcrank.pdeforge import (
    DaF_recurrence,
    F_series,
    QuasimodularExpr,
    assemble_main_theorem,
    check_binomial_display_jet,
    f0_closed_form,
    f0_sum,
    fit_quasimodular,
    normalize_corollary,
    verify_chan_specialized,
    verify_classic_pdes,
    verify_L_derivatives,
)

F = Fraction


def P(**terms):
    """Quasimodular expression from keywords like ``one=10, p1=-15, p1_p3=2``."""
    names = {"p1": 0, "p3": 1, "p5": 2, "p7": 3}
    d = {}
    for key, v in terms.items():
        exps = [0, 0, 0, 0]
        if key != "one":
            for tok in key.split("_"):
                base, _, power = tok.partition("e")
                exps[names[base]] += int(power or 1)
        d[tuple(exps)] = v
    return QuasimodularExpr.from_dict(d)


def timed(fn):
    t0 = time.perf_counter()
    ok = fn()
    return ok, time.perf_counter() - t0


def failures(checks):
    return [c for c in checks if not c]


def test_criterion_01_rank_k_appell_identity(acceptance):
    checks = []

    def run():
        checks.extend(verify_theorem11(k, 40) for k in range(1, 7))
        return not failures(checks)

    ok, dt = timed(run)
    assert acceptance(1, "R_k via level 2k-1 Appell sums, k=1..6, q^40", ok, dt, 60), failures(checks)


def test_criterion_02_rank_crank_pde(acceptance):
    result = {}

    def run():
        result["c"] = next(s for s in verify_classic_pdes(30).sub if s.name == "rank_crank_pde")
        return result["c"].ok

    ok, dt = timed(run)
    assert acceptance(2, "classical rank-crank PDE, q^30", ok, dt, 30), result["c"].detail


def test_criterion_03_order_four_pde(acceptance):
    result = {}
    wanted = {
        "order4_pde", "order4_compact", "conjugation_H", "conjugation_H2",
        "substituted_order4", "dq_euler", "dq_phi1",
    }

    def run():
        c = verify_classic_pdes(25)
        result["bad"] = [s.name for s in c.sub if s.name in wanted and not s]
        return {s.name for s in c.sub} >= wanted and not result["bad"]

    ok, dt = timed(run)
    assert acceptance(3, "order-4 PDE, compact form, conjugations, q-derivatives, q^25", ok, dt, 120), result


def test_criterion_04_appell_derivatives(acceptance):
    checks = []

    def run():
        checks.extend(verify_theorem41(k, ell, 30) for k in (3, 5, 7, 9) for ell in range(1, k))
        return len(checks) == 2 + 4 + 6 + 8 and not failures(checks)

    ok, dt = timed(run)
    assert acceptance(4, "D_l S_k = P_{k,l}(H*) Sigma, k in {3,5,7,9}, q^30", ok, dt, 180), failures(checks)


PRINTED_F02 = [
    P(one=F(3, 2)),
    P(one=F(15, 4)),
    P(one=10, p1=-15),
    P(one=F(225, 8), p1=F(-225, 2)),
    P(one=82, p1=-600, p1e2=450, p3=-195),
]
PRINTED_F12 = [
    P(one=F(-1, 4)),
    P(one=F(5, 8)),
    P(one=F(-5, 4), p1=F(-15, 2)),
    P(one=F(25, 16), p1=F(225, 4)),
    P(one=F(1, 4), p1=-225, p1e2=-675, p3=F(-255, 2)),
]


def test_criterion_05_derivative_tables(acceptance):
    bad = []

    def run():
        N = 30
        for j, table in ((0, PRINTED_F02), (1, PRINTED_F12)):
            for a, printed in enumerate(table):
                s = DaF_recurrence(j, 2, a, N)
                if s != printed.to_series(N) or fit_quasimodular(s, 2 * (a // 2)) != printed:
                    bad.append((j, a))
        return not bad

    ok, dt = timed(run)
    assert acceptance(5, "printed D_a tables for F_{0,2} and F_{1,2}", ok, dt, 10), bad


def test_criterion_06_jets_versus_recurrence(acceptance):
    bad = []

    def run():
        N = 20
        for m in range(1, 5):
            for j in range(m):
                Fs = F_series(j, m, 2 * m + 1, N)
                for a in range(2 * m + 1):
                    if D_a_from_jet(Fs, a) != DaF_recurrence(j, m, a, N):
                        bad.append((m, j, a))
        return not bad

    ok, dt = timed(run)
    assert acceptance(6, "jets vs recurrence, m<=4, all j, a<=2m, q^20", ok, dt, 120), bad


PRINTED_PDE = {
    1: [P(one=2, p1=6)],
    2: [P(p1=60, one=10), P(p1e2=300, p3=10, p1=350, one=24)],
    3: [
        P(p1=210, one=28),
        P(p3=210, p1e2=8820, one=252, p1=4410),
        P(p1e3=41160, p3=2450, p5=14, one=720, p1=22736, p1_p3=2940, p1e2=102900),
    ],
    4: [
        P(p1=504, one=60),
        P(p3=1260, p1=24948, one=1308, p1e2=68040),
        P(p1_p3=136080, p5=504, p3=45360, p1e2=2449440, p1=403704, p1e3=2449440, one=12176),
        P(
            one=40320, p1=2126232, p3=404082, p5=9828, p1_p3=2653560, p1e2=21820428,
            p1_p5=9072, p1e3=47764080, p7=18, p1e2_p3=1224720, p3e2=11340, p1e4=11022480,
        ),
    ],
}


def test_criterion_07_main_theorem_and_normalization(acceptance):
    bad = []

    def run():
        for m, N in ((1, 25), (2, 25), (3, 15), (4, 15)):
            spec = normalize_corollary(assemble_main_theorem(m, N))
            if spec.f0 != f0_closed_form(m) or spec.checked_order != N:
                bad.append((m, "f0"))
            for j, printed in enumerate(PRINTED_PDE[m], 1):
                fj = spec.f(j)
                if fj != printed.to_series(fj.order):
                    bad.append((m, j))
        return not bad

    ok, dt = timed(run)
    assert acceptance(7, "order-2m PDEs m=1..4 and printed f_j", ok, dt, 600), bad


def test_criterion_08_specialized_lambert_identity(acceptance):
    checks = []

    def run():
        checks.extend(verify_chan_specialized(m, N) for m, N in ((1, 25), (2, 25), (3, 15)))
        return not failures(checks)

    ok, dt = timed(run)
    assert acceptance(8, "specialized Lambert identity as t-jets, m=1,2 (q^25), m=3 (q^15)", ok, dt, 300), failures(checks)


def test_criterion_09_lambert_identities(acceptance):
    checks: list[Check] = []

    def run():
        for seed in (1, 2, 3):
            checks.append(verify_watson(random_specialization("watson", 1, seed), 30))
            checks.append(verify_jackson(random_specialization("jackson", 2, seed), 30))
            checks.append(verify_lewis(random_specialization("lewis", 1, seed), 30))
        checks.append(verify_jackson(Specialization(2, (3, 5)), 30, x_alt=7))
        for m in (3, 4, 5):
            checks.append(verify_chan(m, random_specialization("chan", m, m), 15))
        aux_checks = [c for c in checks if c.sub and len(c.sub) == 2]
        return not failures(checks) and len(aux_checks) >= 3 + 1 + 3

    ok, dt = timed(run)
    assert acceptance(9, "Watson, Jackson, Lewis (3 seeds, q^30), Chan m=3,4,5 (q^15)", ok, dt, 300), failures(checks)


def test_criterion_10_combinatorial_oracle(acceptance):
    bad = []

    def run():
        n_max = 15
        for stat, gf in (("rank", rank_gf), ("crank", crank_gf)):
            series = gf(n_max)
            table = statistic_table(stat, n_max)
            for n in range(n_max + 1):
                ms = {m for (m, nn) in table if nn == n} | set(series[n].terms())
                for m in ms:
                    if series[n].coeff(m) != table.get((m, n), 0):
                        bad.append((stat, m, n))
        for n in (4, 9, 14):
            if len(set(residue_class_counts("rank", n, 5))) != 1:
                bad.append(("dyson", n))
        return not bad

    ok, dt = timed(run)
    assert acceptance(10, "rank/crank vs enumeration n<=15, rank mod 5 at n=4,9,14", ok, dt, 30), bad


def test_criterion_11_arithmetic_identities(acceptance):
    bad = []

    def run():
        if not all(check_binomial_identity(ell, m) for ell in range(1, 25) for m in range(ell // 2 + 1)):
            bad.append("binomial")
        if not all(check_f0_sum(m) for m in range(1, 13)):
            bad.append("alternating power sum")
        if not all(f0_sum(m) == f0_closed_form(m) for m in range(1, 9)):
            bad.append("leading coefficient")
        if not all(check_binomial_display_jet(m) for m in range(1, 7)):
            bad.append("binomial display")
        for m in range(1, 6):
            if not verify_L_derivatives(m, 10, 12):
                bad.append(("log derivatives", m))
        return not bad

    ok, dt = timed(run)
    assert acceptance(11, "binomial sums, leading coefficient, log-derivative lemma via jets", ok, dt, 10), bad
