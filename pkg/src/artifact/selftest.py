"""A fast invariant suite used by `artifact selftest`."""

from __future__ import annotations

from fractions import Fraction


def _checks(quick=True):
    from .characters import DirichletCharacter, characters_mod, quadratic_character
    from .iwasawa import (GroupRingElem, is_invertible, smoothing_factor, synthetic_tower,
                          tower_to_measure, unit_witness)
    from .gl3_local import (level_intersection_index, enumerate_level_index, e_p,
                            critical_set)
    from .zeta_local import ZetaInput, Y_bruteforce, Y_closed_form
    from .gl3_local import RefinedData
    from .branching import restrict_decompose, hom_space_dimension, check_equivariance
    from .eisenstein import schwartz_distribution_check, kummer_family, kummer_moment_check
    from .symsq import e_infty_ratio_holds

    def level_index():
        return all(level_intersection_index(p, n, t) == enumerate_level_index(p, n, t)
                   for p, n, t in [(3, 1, 2), (5, 1, 2)])

    def smoothing_counterexample():
        x = smoothing_factor(5, 1, 2, 0, DirichletCharacter.trivial(1))
        return not is_invertible(x) and unit_witness(x) is not None

    def tower():
        top = GroupRingElem(3, 3, {1: 2, 2: -1, 5: 3})
        return tower_to_measure(synthetic_tower(top, Fraction(1))).is_compatible()

    def ep_value():
        return e_p(Fraction(2), None, 0, 3) == Fraction(1 - Fraction(1, 6), 1 - 2)

    def crit():
        return critical_set(2, 1, None, "minus") == [-2, 0]

    def zeta():
        zi = ZetaInput(RefinedData.principal_series(5, Fraction(2), Fraction(1, 3), Fraction(1, 7)))
        return Y_bruteforce(zi) == Y_closed_form(zi)

    def branching():
        a = 2
        d = restrict_decompose(a)
        return d.is_all_ones() and all(hom_space_dimension(a, j) == 1 and check_equivariance(a, j)
                                       for j in range(a + 1))

    def distribution():
        return schwartz_distribution_check(3, 1)[0]

    def kummer():
        return kummer_moment_check(kummer_family(5), 5, 1, 2, 6, N_trunc=10)[0]

    def einf():
        return all(e_infty_ratio_holds(a, j) for a in range(7) for j in range(a + 1))

    out = [("level_index", level_index), ("smoothing_counterexample", smoothing_counterexample),
           ("tower_compatible", tower), ("e_p", ep_value), ("critical_set", crit),
           ("zeta_oracle", zeta), ("branching", branching), ("distribution", distribution),
           ("kummer", kummer), ("e_infty_ratio", einf)]
    if not quick:
        from .symsq import numeric_L_value, zeta_spec
        import mpmath

        def zeta2():
            v = numeric_L_value(zeta_spec(100), 2, target_digits=12)
            with mpmath.workdps(30):
                return abs(v.value - mpmath.pi ** 2 / 6) < 1e-10
        out.append(("zeta2_calibration", zeta2))
    return out


def run(quick=True):
    results = []
    for name, fn in _checks(quick):
        try:
            ok = bool(fn())
            err = None
        except Exception as e:  # reported, not raised
            ok, err = False, f"{type(e).__name__}: {e}"
        results.append({"name": name, "ok": ok, "error": err})
    return results
