"""End-to-end acceptance checks, one per numbered criterion.

Run under pytest (`pytest tests/test_acceptance.py -v`) or directly
(`python3 tests/test_acceptance.py`); either way one PASS/FAIL line is printed
per criterion.
"""

from fractions import Fraction as F
import random
import time

import mpmath
import pytest

from artifact.branching import br_map, check_equivariance, hom_space_dimension, restrict_decompose
from artifact.characters import DirichletCharacter, characters_mod, evaluate as chi_at
from artifact.eisenstein import (
    SchwartzData, c_smooth, kummer_family, kummer_moment_check, kummer_witness, lattice_sum_numeric,
    qexp_eisenstein, schwartz_distribution_check,
)
from artifact.exact_arith import CycNumber, DomainError, factorize, vp
from artifact.gl3_local import (
    E0_factor, ExceptionalZero, LocalChar, LocalRepGL3, RefinedData, SatakeParams, classify_refinements,
    e_infty, e_p, enumerate_level_index, is_nearly_ordinary, is_ordinary, level_intersection_index,
)
from artifact.iwasawa import (
    GroupRingElem, evaluate_elem, is_invertible, moment_twist, multiply_smoothing, remove_smoothing,
    smoothing_factor, synthetic_tower, tower_to_measure, unit_witness, units_mod,
)
from artifact.symsq import (
    algebraicity_check, e_infty_ratio_holds, load_delta, numeric_L_value, zeta_spec,
)
from artifact.zeta_local import (
    Y_bruteforce, Y_closed_form, ZetaInput, Z_normalized, specialization_point, spherical_gamma,
    spherical_Y, spherical_Z,
)


def _primitive(q):
    return [c for c in characters_mod(q) if c.conductor() == q]


def _rand_frac(rng):
    return F(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9))


# ---------------------------------------------------------------------------

def criterion_1():
    rng = random.Random(2024)
    count = 0
    for p in (3, 5):
        etas = [("trivial", None), ("p", _primitive(p)), ("p^2", _primitive(p * p))]
        for kind in ("principal_series", "steinberg"):
            for label, eta_list in etas:
                for eta in (eta_list if isinstance(eta_list, list) else [eta_list]):
                    done = 0
                    while done < 5:
                        if kind == "principal_series":
                            rd = RefinedData.principal_series(p, _rand_frac(rng), _rand_frac(rng), _rand_frac(rng))
                        else:
                            rd = RefinedData.steinberg(p, _rand_frac(rng), _rand_frac(rng))
                        zi = ZetaInput(rd, eta)
                        try:
                            closed = [Y_closed_form(zi, j) for j in range(3)]
                        except ZeroDivisionError:
                            continue    # a pole at a critical point: resample
                        yb = Y_bruteforce(zi)
                        if yb != Y_closed_form(zi):
                            return False, f"Laurent identity fails: p={p} {kind} eta={label}"
                        for j in range(3):
                            if yb.specialize(*specialization_point(p, j)) != closed[j]:
                                return False, f"specialisation j={j} fails: p={p} {kind} eta={label}"
                        done += 1
                        count += 1
    return True, f"{count} datasets, exact, j = 0, 1, 2"


def criterion_2():
    rng = random.Random(7)
    n = 0
    for _ in range(8):
        p = rng.choice([3, 5, 7])
        vals = set()
        while len(vals) < 3:
            x = F(rng.randint(1, 9), rng.randint(1, 9))
            if x != 1:
                vals.add(x)
        s = SatakeParams(*sorted(vals), p)
        c1, c2 = F(rng.randint(1, 5), rng.randint(1, 5)), F(rng.randint(1, 5), rng.randint(1, 5))
        z = spherical_Z(s, c1, c2, 30)
        if Z_normalized(z, s, c1, c2) != 1:
            return False, f"normalised spherical Z != 1 for {s.triple}"
        if spherical_Y(s, c1, c2, 30) != spherical_gamma(s, c1, c2) * z:
            return False, f"Y != gamma Z for {s.triple}"
        n += 1
    return True, f"{n} unramified datasets, N = 30"


def criterion_3():
    rng = random.Random(3)
    for p in (3, 5):
        for n in range(1, 5):
            us = units_mod(p, n)
            top = GroupRingElem(p, n, {a: rng.randint(-3, 3) for a in rng.sample(us, min(6, len(us)))})
            mu = tower_to_measure(synthetic_tower(top, F(1 + p, 2)))
            if not (mu.is_compatible() and mu.bounded):
                return False, f"tower p={p} n={n} not norm-compatible"
    # finite-level twist identity, mod p^n, with lifts a + p^n
    for p, n in [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2)]:
        q = p ** n
        us = units_mod(p, n)
        x = GroupRingElem(p, n, {a: rng.randint(-4, 4) for a in us})
        for j in range(5):
            for eta in characters_mod(q):
                prim = eta.primitive()
                lhs = evaluate_elem(moment_twist(x, j), eta)
                rhs = evaluate_elem(x, lambda a: chi_at(prim, a) * ((a % q) + q) ** j)
                d = lhs - rhs
                d = d if isinstance(d, CycNumber) else CycNumber.from_rational(d)
                if not (d * F(1, q)).is_p_integral(p):
                    return False, f"twist identity fails mod {p}^{n}, j={j}"
    chi = DirichletCharacter.from_values(7, lambda a: F(0) if pow(a, 3, 7) == 1 else F(1, 2))
    mu = tower_to_measure(synthetic_tower(GroupRingElem(3, 2, {1: 2, 4: -1, 5: 3, 8: 1}), F(1)))
    for c, j in [(10, 0), (10, 2), (13, 1), (19, 3)]:
        if remove_smoothing(multiply_smoothing(mu, c, j, chi), c, j, chi).levels != mu.levels:
            return False, f"smoothing round trip fails c={c} j={j}"
    x = smoothing_factor(5, 1, 2, 0, DirichletCharacter.trivial(1))
    w = unit_witness(x)
    if is_invertible(x) or w is None or vp(evaluate_elem(x, w).to_rational(), 5) <= 0:
        return False, "p=5, c=2 non-invertibility not detected"
    return True, "towers n <= 4, twist mod p^n, round trip, p=5 c=2 witness"


def _ch(x, p, half=0, units=None):
    return LocalChar(F(x), p, half, units)


def criterion_4():
    # e_p values and the pole
    if e_p(F(2), None, 0, 5) != F(-9, 10):
        return False, "e_p(2, 1, 0; 5)"
    for args in [(F(1, 25), None, 2, 5), (F(1), None, 0, 3)]:
        try:
            e_p(*args)
            return False, f"pole not detected at {args}"
        except ExceptionalZero:
            pass
    # ramified: Gauss sum times (p^(j+1) alpha)^-n
    from artifact.characters import gauss_sum
    for eta in _primitive(25):
        alpha = F(3, 125)
        if e_p(alpha, eta, 1, 5) != gauss_sum(eta.inverse()) * (1 / (F(25) * alpha)) ** 2:
            return False, "ramified e_p"
    # E0 on P1-ordinary refinements of random principal series
    rng = random.Random(5)
    sampled = 0
    while sampled < 20:
        p = rng.choice([3, 5, 7])
        a = rng.randint(0, 3)
        u = F(rng.randint(1, p - 1) + p * rng.randint(0, 3), rng.randint(1, p - 1))
        alpha = u / F(p) ** (1 + a)
        mid = F(rng.randint(1, p - 1), rng.randint(1, p - 1))
        last = 1 / (alpha * mid) * F(rng.randint(1, p - 1), rng.randint(1, p - 1))
        rep = LocalRepGL3("principal_series", [_ch(alpha, p), _ch(mid, p), _ch(last, p)], p, a)
        v = is_ordinary(rep, 1)
        if not v:
            continue
        val = E0_factor(rep, v.refinement)
        if val == 0 or vp(val, p) != 0:
            return False, f"E0 = {val} is not a unit at {p}"
        sampled += 1
    for a in range(13):
        for j in range(a + 1):
            if not e_infty_ratio_holds(a, j):
                return False, f"e_infty ratio a={a} j={j}"
    return True, "e_p values and poles, E0 unit on 20 ordinary refinements, e_infty ratio a <= 12"


def criterion_5():
    t0 = time.time()
    for a in range(5):
        d = restrict_decompose(a)
        if not d.is_all_ones():
            return False, f"multiplicity table a={a}"
        if sum((i + j + 1) * m for (i, j), m in d.table.items()) != (a + 1) ** 3 or d.total_dimension() != (a + 1) ** 3:
            return False, f"dimension count a={a}"
        for j in range(a + 1):
            if hom_space_dimension(a, j) != 1:
                return False, f"hom dimension a={a} j={j}"
            if not br_map(a, j).is_integral() or not check_equivariance(a, j):
                return False, f"br a={a} j={j}"
    dt = time.time() - t0
    return dt < 60, f"a <= 4 in {dt:.1f}s"


def criterion_6():
    for p in (2, 3, 5):
        for t in (1, 2, 3):
            if not schwartz_distribution_check(p, t)[0]:
                return False, f"distribution p={p} t={t}"
    rng = random.Random(6)
    for j, M in [(1, 3), (2, 4), (2, 1), (4, 5), (0, 4), (3, 6)]:
        phi = SchwartzData.from_function(M, lambda x, y: rng.randint(-2, 3))
        if j == 0:
            phi = phi - SchwartzData(M, {(0, 0): phi(0, 0)})
        val, tail = lattice_sum_numeric(phi, j, 1j)
        if abs(qexp_eisenstein(phi, j, 12).evaluate(1j) - val) > 1e-8:
            return False, f"q-expansion vs lattice sum j={j} M={M}"
    for M, c, j in [(5, 7, 1), (5, 7, 2), (7, 5, 0), (4, 5, 3), (9, 5, 2)]:
        phi = SchwartzData.from_function(M, lambda x, y: rng.randint(-2, 3))
        if j == 0:
            phi = phi - SchwartzData(M, {(0, 0): phi(0, 0)})
        S = c_smooth(phi, c, j, -(-200 // M))
        if len(S.coeffs) < 200 or not S.is_integral_away_from(set(factorize(c * M))):
            return False, f"c-smoothing denominators M={M} c={c} j={j}"
    fam = kummer_family(5)
    for n in range(1, 21):
        if not kummer_moment_check(fam, 5, 1, 2, 6, n_index=n)[0]:
            return False, f"Kummer index {n}"
    ok, _ = kummer_witness(fam, 5, 1, 2, 3)
    if ok:
        return False, "Kummer negative control passed"
    return True, "distribution p in {2,3,5}, t <= 3; tau = i; 200 coefficients; Kummer mod 5"


def criterion_7():
    p = 5
    checks = []
    # supercuspidal: no refinements
    sc = LocalRepGL3("supercuspidal", [], p, 0, _ch(1, p))
    checks.append(classify_refinements(sc) == [] and not is_ordinary(sc, 1) and not is_ordinary(sc, 2))
    # Steinberg: ordinary iff a = 0
    for a in range(3):
        st_ = LocalRepGL3("steinberg_twist", [_ch(1, p)], p, a)
        checks.append(bool(is_ordinary(st_, 1)) == (a == 0) and bool(is_ordinary(st_, 2)) == (a == 0))
    # theta x supercuspidal
    th = LocalRepGL3("induced_theta_sc", [_ch(F(2, 9), 3), _ch(45, 3)], 3, 1)
    checks.append(bool(is_ordinary(th, 1)) and not is_nearly_ordinary(th, 2))
    # theta x Steinberg: the two cases, and their exclusivity
    c1 = LocalRepGL3("induced_theta_st", [_ch(F(3, 125), p), _ch(1, p)], p, 2)
    v1 = is_ordinary(c1, 1)
    checks.append(bool(v1) and v1.refinement.char == c1.chars[0])
    lam = _ch(2, p, -1)
    c2 = LocalRepGL3("induced_theta_st", [_ch(5, p), lam], p, 0)
    v2 = is_ordinary(c2, 1)
    checks.append(bool(v2) and v2.refinement.char == lam.abs_power(1))
    for vt in range(-3, 4):
        rep = LocalRepGL3("induced_theta_st", [_ch(F(2) * F(p) ** vt, p), _ch(1, p, -vt)], p, 0)
        hits = [r for r in classify_refinements(rep) if r.parabolic == 1 and r.slope == -1]
        checks.append(len(hits) == (1 if vt in (-1, 1) else 0))
    # principal series, unramified and ramified
    chars = [_ch(F(1, 3), 3), _ch(2, 3), _ch(3, 3)]
    ps = LocalRepGL3("principal_series", chars, 3, 0)
    checks.append(sum(r.parabolic == 1 for r in classify_refinements(ps)) == 3 and bool(is_ordinary(ps, 1)))
    ram = LocalChar(F(1, 3), 3, 0, DirichletCharacter(3, [F(1, 2)]))
    ps2 = LocalRepGL3("principal_series", [ram, chars[1], chars[2]], 3, 0)
    checks.append(bool(is_nearly_ordinary(ps2, 1)) and not is_ordinary(ps2, 1))
    # refinement <-> dual bijection for every kind
    u = DirichletCharacter(5, [F(1, 4)])
    reps = [LocalRepGL3("steinberg_twist", [LocalChar(F(2), p, 0, u)], p, 0),
            LocalRepGL3("induced_theta_sc", [_ch(F(1, 5), p), LocalChar(F(3), p, 1, u)], p, 0),
            LocalRepGL3("induced_theta_st", [_ch(F(1, 5), p), LocalChar(F(7), p, -1, u)], p, 0),
            LocalRepGL3("principal_series", [_ch(F(1, 5), p), LocalChar(F(2), p, 0, u), _ch(10, p)], p, 0),
            sc]
    for rep in reps:
        om_inv = rep.central_char.inverse()
        mapped = sorted((om_inv * r.char).key() for r in classify_refinements(rep) if r.parabolic == 1)
        dual = sorted(r.char.key() for r in classify_refinements(rep.dual()) if r.parabolic == 2)
        checks.append(mapped == dual)
    bad = [i for i, c in enumerate(checks) if not c]
    return not bad, "all cases" if not bad else f"failing checks {bad}"


def criterion_8():
    with mpmath.workdps(30):
        z2 = numeric_L_value(zeta_spec(), 2, dps=30)
        if abs(z2.value - mpmath.pi ** 2 / 6) > 1e-10:
            return False, "zeta(2) calibration"
    f = load_delta()
    found = {}
    for tol in (mpmath.mpf(10) ** -8, mpmath.mpf(10) ** -20):
        for j in (2, 4):
            r = algebraicity_check(f, j, tol=tol)
            if not r.ok or r.complete_value.denominator >= 10 ** 6:
                return False, f"no rational at j={j} (tol {mpmath.nstr(tol, 3)})"
            found[j] = r.complete_value
        ctrl = algebraicity_check(f, 2, include_e_infty=False, tol=tol)
        if ctrl.ok:
            return False, f"control without e_infty recognised {ctrl.value}"
    return True, f"zeta(2) ok; j=2 -> {found[2]}, j=4 -> {found[4]}; control fails"


def criterion_9():
    for p, n, t in [(3, 1, 2), (3, 2, 3), (5, 1, 2)]:
        want = p ** (2 * n - 1) * (p - 1)
        if not level_intersection_index(p, n, t) == enumerate_level_index(p, n, t) == want:
            return False, f"(p, n, t) = {(p, n, t)}"
    return True, "(3,1,2), (3,2,3), (5,1,2)"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


def _report(k, fn):
    t0 = time.time()
    try:
        ok, detail = fn()
    except Exception as e:   # a crash is a failure, reported on the line
        ok, detail = False, f"{type(e).__name__}: {e}"
    return ok, f"criterion {k}: {'PASS' if ok else 'FAIL'} ({detail}; {time.time() - t0:.1f}s)"


@pytest.mark.parametrize("k", range(1, 10), ids=lambda k: f"criterion_{k}")
def test_criterion(k, capsys):
    ok, line = _report(k, CRITERIA[k - 1])
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    import sys
    results = [_report(k, fn) for k, fn in enumerate(CRITERIA, 1)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
