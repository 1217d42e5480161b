"""Symmetric-square lifts of elliptic newforms to GL(3), the imprimitive
symmetric-square series, numerical evaluation of L-functions from functional
equation data, and the assembly of the interpolation right-hand side.

Normalisations.  A, B are the arithmetic roots of X^2 - a_p X + eps(p) p^(k-1)
(so AB = eps(p) p^(k-1)).  The lift pi = Sym^2(f) x theta x |.|^-a has Satake
parameters (A^2, AB, B^2) * theta(p) / p^(a+1), so that L(pi, s) = L(Sym^2 f x theta,
s + a + 1) and the ordinary root gives a unit Hecke eigenvalue.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
import json
import os

import mpmath

from .exact_arith import (CycNumber, DomainError, PadicNumber, SymbolicPeriod,
                          as_fraction, cyc_embed_mp, factorize, is_prime, vp)
from .characters import DirichletCharacter, evaluate as char_value, gauss_sum, parity
from .gl3_local import SatakeParams, critical_set, e_infty, e_p as gl3_e_p

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), "fixtures")


# ---------------------------------------------------------------------------
# Delta

def delta_coefficients(N: int):
    """tau(1..N) from Delta = q * (sum_m (-1)^m (2m+1) q^(m(m+1)/2))^8."""
    cube = [0] * N
    m = 0
    while m * (m + 1) // 2 < N:
        cube[m * (m + 1) // 2] = (-1) ** m * (2 * m + 1)
        m += 1

    def mul(u, v):
        out = [0] * N
        nz = [(i, c) for i, c in enumerate(v) if c]
        for i, a in enumerate(u):
            if a:
                for j, b in nz:
                    if i + j >= N:
                        break
                    out[i + j] += a * b
        return out

    sq = mul(cube, cube)
    four = mul(sq, sq)
    eight = mul(four, four)
    return [None] + eight[:N]   # index n -> tau(n); eight[n-1] is the q^n coefficient


def _tau_list(N):
    t = delta_coefficients(N)
    return {n: t[n] for n in range(1, N + 1)}


class ModFormData:
    __slots__ = ("weight", "level", "nebentype", "coeffs", "petersson_norm", "theta", "label")

    def __init__(self, weight, level, coeffs, nebentype=None, petersson_norm=None, theta=None,
                 label=""):
        self.weight = weight
        self.level = level
        self.coeffs = {int(n): as_fraction(c) for n, c in dict(coeffs).items()}
        self.nebentype = nebentype or DirichletCharacter.trivial(1)
        self.petersson_norm = petersson_norm
        self.theta = theta or DirichletCharacter.trivial(1)
        self.label = label

    @property
    def a(self):
        return self.weight - 2

    @property
    def n_coeff(self):
        n = 0
        while n + 1 in self.coeffs:
            n += 1
        return n

    def eps(self, n):
        return char_value(self.nebentype, n)

    def coefficient(self, n: int):
        """a_n from the stored table, extended by Hecke multiplicativity when
        only the prime coefficients are known."""
        if n in self.coeffs:
            return self.coeffs[n]
        out = Fraction(1)
        for l, e in factorize(n).items():
            out = out * self._prime_power(l, e)
        return out

    def _prime_power(self, l, e):
        if l ** e in self.coeffs:
            return self.coeffs[l ** e]
        if l not in self.coeffs:
            raise DomainError(f"coefficient a_{l} is not available")
        ep = self.eps(l).to_rational()
        if ep is None:
            raise DomainError("non-rational nebentype values are not supported here")
        prev, cur = Fraction(1), self.coeffs[l]
        for _ in range(e - 1):
            prev, cur = cur, self.coeffs[l] * cur - ep * Fraction(l) ** (self.weight - 1) * prev
        return cur

    def check_hecke(self, N=None):
        """Multiplicativity and the prime-power recursion on stored coefficients."""
        N = N or self.n_coeff
        c = self.coeffs
        for m in range(2, N + 1):
            for n in range(2, N // m + 1):
                if gcd(m, n) == 1 and c[m * n] != c[m] * c[n]:
                    return False, (m, n)
        for l in range(2, N + 1):
            if not is_prime(l) or self.level % l == 0:
                continue
            ep = self.eps(l).to_rational()
            q = l
            while q * l <= N:
                prev = c[q // l] if q > l else Fraction(1)
                if c[q * l] != c[l] * c[q] - ep * Fraction(l) ** (self.weight - 1) * prev:
                    return False, (q * l,)
                q *= l
        return True, None

    def to_json(self):
        return {"schema": "modform/1", "weight": self.weight, "level": self.level,
                "nebentype": self.nebentype.to_json(), "theta": self.theta.to_json(),
                "petersson_norm": self.petersson_norm, "label": self.label,
                "coefficients": [str(self.coeffs[n]) for n in range(1, self.n_coeff + 1)]}

    @classmethod
    def from_json(cls, d):
        for key in ("weight", "level", "coefficients"):
            if key not in d:
                raise DomainError(f"modular form JSON is missing field '{key}'")
        neb = DirichletCharacter.from_json(d["nebentype"]) if d.get("nebentype") else None
        th = DirichletCharacter.from_json(d["theta"]) if d.get("theta") else None
        coeffs = {i + 1: Fraction(c) for i, c in enumerate(d["coefficients"])}
        return cls(int(d["weight"]), int(d["level"]), coeffs, neb, d.get("petersson_norm"), th,
                   d.get("label", ""))


def load_delta(n_coeff=None) -> ModFormData:
    path = os.path.join(FIXTURE_DIR, "delta.json")
    with open(path) as fh:
        f = ModFormData.from_json(json.load(fh))
    if n_coeff is not None and n_coeff > f.n_coeff:
        f = ModFormData(12, 1, _tau_list(n_coeff), petersson_norm=f.petersson_norm, label="Delta")
    return f


# ---------------------------------------------------------------------------
# the lift

def _unit_root(ap: Fraction, ABp: Fraction, p: int, precision: int) -> PadicNumber:
    """The p-adic unit root of X^2 - a_p X + ABp, by the iteration A -> a_p - ABp/A."""
    a = PadicNumber.from_rational(ap, p, precision)
    if not a.is_unit():
        raise DomainError(f"f is not ordinary at {p}")
    c = PadicNumber.from_rational(ABp, p, precision)
    A = a
    for _ in range(precision + 2):
        A = a - c / A
    return A


def lift_satake(f: ModFormData, p: int, precision: int = 30):
    """Satake parameters of the lift at a good ordinary prime as p-adic numbers
    (the unit root A is taken in Z_p)."""
    if f.level % p == 0 or f.theta.conductor() % p == 0:
        raise DomainError(f"p = {p} divides the level or the conductor of theta")
    k, a = f.weight, f.a
    ep = f.eps(p).to_rational()
    th = char_value(f.theta, p).to_rational()
    if ep is None or th is None:
        raise DomainError("non-rational nebentype or theta values at p are not supported")
    ABp = ep * Fraction(p) ** (k - 1)
    ap = f.coefficient(p)
    A = _unit_root(ap, ABp, p, precision + 3 * (a + 1))
    B = PadicNumber.from_rational(ABp, p, precision + 3 * (a + 1)) / A
    sc = Fraction(th, p ** (a + 1))
    # k - 1 = a + 1, so beta = theta(p) eps(p)
    alpha, beta, gamma = A * A * sc, th * ep, B * B * sc
    return SatakeParams(alpha, beta, gamma, p, a, (-(a + 1), 0, a + 1))


def lift_hecke_trace(f: ModFormData, p: int) -> Fraction:
    """p^(a+1)(alpha+beta+gamma) = theta(p)(a_p^2 - eps(p) p^(k-1)), exactly."""
    ep = f.eps(p).to_rational()
    th = char_value(f.theta, p).to_rational()
    return th * (f.coefficient(p) ** 2 - ep * Fraction(p) ** (f.weight - 1))


def lift_central_parity(f: ModFormData) -> int:
    """omega_pi(-1) = (-1)^a theta(-1)."""
    return (-1) ** f.a * parity(f.theta)


# ---------------------------------------------------------------------------
# Dirichlet coefficients

class LSeriesSpec:
    """Lambda(s) = N^(s/2) prod Gamma_R(s + mu) L(s) = sign * conj-Lambda(weight - s)."""

    def __init__(self, coeffs, gamma_shifts, conductor, weight, sign=None, poles=(),
                 dual_coeffs=None, growth=0, label=""):
        self.coeffs = list(coeffs)          # coeffs[0] unused
        self.gamma_shifts = list(gamma_shifts)
        self.conductor = conductor
        self.weight = weight
        self.sign = sign
        self.poles = list(poles)           # (rho, residue of Lambda)
        self.dual_coeffs = dual_coeffs
        self.growth = growth               # |a_n| << n^growth (up to divisor functions)
        self.label = label

    @property
    def n_terms(self):
        return len(self.coeffs) - 1

    def to_json(self):
        return {"label": self.label, "gamma_shifts": [str(x) for x in self.gamma_shifts],
                "conductor": self.conductor, "weight": str(self.weight),
                "sign": None if self.sign is None else str(self.sign), "n_terms": self.n_terms}


def imprimitive_coeffs(f: ModFormData, N_terms: int):
    """Coefficients of L^(N_f)(2s - 2a - 2, eps^2) * sum a_{n^2} n^-s, n <= N_terms,
    from the stored table (needs a_m for m <= N_terms^2)."""
    if f.n_coeff < N_terms ** 2:
        raise DomainError(f"need a_n for n <= {N_terms ** 2}, have {f.n_coeff}")
    k = f.weight
    out = [None] + [CycNumber.from_rational(0)] * N_terms
    for m in range(1, int(N_terms ** 0.5) + 1):
        if gcd(m, f.level) != 1:
            continue
        w = f.eps(m) * f.eps(m) * Fraction(m) ** (2 * k - 2)
        for l in range(1, N_terms // (m * m) + 1):
            out[m * m * l] = out[m * m * l] + w * f.coeffs[l * l]
    return [None] + [c.to_rational() if c.to_rational() is not None else c for c in out[1:]]


def euler_coeffs(f: ModFormData, N_terms: int, twist: DirichletCharacter = None):
    """Coefficients of L(Sym^2 f x chi, s) for a level-one (or good-prime) f from
    the prime coefficients, via the local factors 1/((1-A^2X)(1-ABX)(1-B^2X))."""
    k = f.weight
    chi = twist
    out = [None] + [Fraction(1)] + [None] * (N_terms - 1)
    local = {}
    for l in range(2, N_terms + 1):
        if not is_prime(l):
            continue
        if f.level % l == 0:
            raise DomainError("bad primes of f are not modelled")
        ep = f.eps(l).to_rational()
        AB = ep * Fraction(l) ** (k - 1)
        e1 = f.coefficient(l) ** 2 - AB
        e2 = AB * e1
        e3 = AB ** 3
        c = [Fraction(1)]
        q = l
        while q <= N_terms:
            r = len(c)
            nxt = e1 * c[r - 1] - (e2 * c[r - 2] if r >= 2 else 0) + (e3 * c[r - 3] if r >= 3 else 0)
            c.append(nxt)
            q *= l
        local[l] = c
    for n in range(2, N_terms + 1):
        fac = factorize(n)
        v = Fraction(1)
        for l, e in fac.items():
            v *= local[l][e]
        out[n] = v
    if chi is not None and not chi.is_trivial():
        out = [None] + [char_value(chi, n) * out[n] for n in range(1, N_terms + 1)]
    return out


def sym2_spec(f: ModFormData, N_terms: int, twist: DirichletCharacter = None, sign=None):
    """Functional-equation data of L(Sym^2 f x chi, s) for level-one f and chi of
    conductor q (conductor q^3; the middle Gamma_R shift depends on chi(-1))."""
    if f.level != 1:
        raise DomainError("numerical symmetric-square data is provided for level one only")
    k = f.weight
    chi = twist if twist is not None and not twist.is_trivial() else None
    coeffs = euler_coeffs(f, N_terms, chi)
    q = chi.conductor() if chi else 1
    shift = 2 - k if (chi is None or parity(chi) == 1) else 1 - k
    dual = None
    if chi is not None:
        coeffs = [None] + [c for c in coeffs[1:]]
        dual = [None] + [c.conj() if isinstance(c, CycNumber) else c for c in coeffs[1:]]
    return LSeriesSpec(coeffs, [shift, 0, 1], q ** 3, 2 * k - 1,
                       sign=(1 if chi is None and sign is None else sign),
                       dual_coeffs=dual, growth=k - 1, label="Sym2")


def zeta_spec(N_terms=200):
    return LSeriesSpec([None] + [1] * N_terms, [0], 1, 1, sign=1,
                       poles=[(1, 1), (0, -1)], growth=0, label="zeta")


def dirichlet_spec(chi: DirichletCharacter, N_terms=400, sign=None):
    chi = chi.primitive()
    coeffs = [None] + [char_value(chi, n) for n in range(1, N_terms + 1)]
    dual = [None] + [c.conj() for c in coeffs[1:]]
    mu = 0 if parity(chi) == 1 else 1
    if sign is None and chi.order() <= 2 and mu == 0:
        sign = 1
    return LSeriesSpec(coeffs, [mu], chi.modulus, 1, sign=sign, dual_coeffs=dual,
                       growth=0, label="dirichlet")


# ---------------------------------------------------------------------------
# numerical evaluation

def _to_mp(c):
    if isinstance(c, CycNumber):
        return cyc_embed_mp(c)
    if isinstance(c, Fraction):
        return mpmath.mpf(c.numerator) / c.denominator
    return mpmath.mpmathify(c)


class _Prepared:
    def __init__(self, spec):
        self.spec = spec
        self.logs = [None] + [mpmath.log(n) for n in range(1, spec.n_terms + 1)]
        self.a = [None] + [_to_mp(c) for c in spec.coeffs[1:]]
        dual = spec.dual_coeffs or spec.coeffs
        self.b = [None] + [_to_mp(c) for c in dual[1:]]

    def dirichlet(self, s, dual=False):
        co = self.b if dual else self.a
        tot = mpmath.mpc(0)
        for n in range(1, len(co)):
            if co[n]:
                tot += co[n] * mpmath.exp(-s * self.logs[n])
        return tot

    def gamma(self, s):
        g = mpmath.power(self.spec.conductor, s / 2)
        for mu in self.spec.gamma_shifts:
            g *= mpmath.power(mpmath.pi, -(s + mu) / 2) * mpmath.gamma((s + mu) / 2)
        return g

    def Lambda(self, s, dual=False):
        return self.gamma(s) * self.dirichlet(s, dual)


def _line_integral(prep, s, c, sigma, dual, h, Y):
    """(1/2 pi) int Lambda(s + c + iy) exp((c+iy)^2/sigma^2)/(c+iy) dy by the trapezoid rule."""
    tot = mpmath.mpc(0)
    n = int(Y / h)
    for t in range(-n, n + 1):
        z = mpmath.mpc(c, t * h)
        tot += prep.Lambda(s + z, dual) * mpmath.exp(z * z / sigma ** 2) / z
    return tot * h / (2 * mpmath.pi)


def _pieces(prep, s, sigma, dps):
    spec = prep.spec
    target = spec.growth + 1 + 12          # real part where the series is used
    c = max(mpmath.mpf(1), target - mpmath.re(s))
    c2 = max(mpmath.mpf(1), target - (spec.weight - mpmath.re(s)))
    h = mpmath.mpf(1) / 5
    Y = 8 * sigma
    I1 = _line_integral(prep, s, c, sigma, False, h, Y)
    I2 = _line_integral(prep, spec.weight - s, c2, sigma, True, h, Y)
    P = mpmath.mpc(0)
    for rho, res in spec.poles:
        d = rho - s
        if -c2 < mpmath.re(d) < c:
            P += res * mpmath.exp(d * d / sigma ** 2) / d
    return I1, I2, P


class LValue:
    __slots__ = ("value", "error", "rigour", "sign")

    def __init__(self, value, error, rigour, sign):
        self.value, self.error, self.rigour, self.sign = value, error, rigour, sign

    def to_json(self):
        v = complex(self.value)
        return {"re": mpmath.nstr(mpmath.re(self.value), 30), "im": mpmath.nstr(mpmath.im(self.value), 30),
                "error_bound": float(self.error), "bound_type": self.rigour,
                "sign": None if self.sign is None else [float(complex(self.sign).real),
                                                        float(complex(self.sign).imag)]}


def numeric_Lambda(spec: LSeriesSpec, s, dps=40, sigmas=(5, 7)):
    with mpmath.workdps(dps + 20):
        prep = _Prepared(spec)
        s = mpmath.mpmathify(s)
        vals = []
        ps = [_pieces(prep, s, mpmath.mpf(sg), dps) for sg in sigmas]
        eps = spec.sign
        if eps is None:
            (A1, B1, P1), (A2, B2, P2) = ps[0], ps[1]
            if abs(B1 - B2) < mpmath.mpf(10) ** (-dps // 2):
                raise DomainError("cannot solve for the sign: the two smoothings coincide")
            eps = (A2 - P2 - A1 + P1) / (B1 - B2)
        for I1, I2, P in ps:
            vals.append(I1 + eps * I2 - P)
        return vals, eps, prep


def numeric_L_value(spec: LSeriesSpec, s, target_digits=20, dps=None):
    """L(s) with a heuristic error estimate from two different smoothings."""
    dps = dps or target_digits + 20
    with mpmath.workdps(dps + 20):
        vals, eps, prep = numeric_Lambda(spec, s, dps)
        s = mpmath.mpmathify(s)
        g = prep.gamma(s)
        if g == 0 or not mpmath.isfinite(g):
            raise DomainError("Gamma factor vanishes or has a pole at s")
        L = vals[0] / g
        err = abs(vals[0] - vals[1]) / abs(g) + mpmath.mpf(10) ** (-dps)
        # truncation of the Dirichlet series at real part growth+13
        N = spec.n_terms
        err += 10 * mpmath.mpf(N) ** (-11) * abs(L)
        out = LValue(+L, err, "heuristic", eps if spec.sign is None else spec.sign)
        if err > mpmath.mpf(10) ** (-target_digits):
            out.rigour = "heuristic (target not reached)"
        return out


# ---------------------------------------------------------------------------
# interpolation

def _pi_minus_L(f, j, eta, N_terms, dps):
    """L(pi x eta, -j) = L(Sym^2 f x theta eta, a + 1 - j)."""
    chi = f.theta * eta if eta is not None else f.theta
    spec = sym2_spec(f, N_terms, chi if not chi.is_trivial() else None)
    return numeric_L_value(spec, f.a + 1 - j, dps=dps)


def euler_factor_at_p(f: ModFormData, p: int, m: int, chi=None):
    """(1 - A^2 chi(p) p^-m)(1 - AB chi(p) p^-m)(1 - B^2 chi(p) p^-m), exactly."""
    k = f.weight
    ep = f.eps(p).to_rational()
    AB = ep * Fraction(p) ** (k - 1)
    e1 = f.coefficient(p) ** 2 - AB
    e2 = AB * e1
    e3 = AB ** 3
    x = Fraction(1, p ** m)
    if chi is not None:
        cv = char_value(chi, p)
        x = cv * x
    return 1 - e1 * x + e2 * x * x - e3 * x * x * x


class InterpolationReport:
    def __init__(self, **kw):
        self.__dict__.update(kw)

    def to_json(self):
        def enc(v):
            if hasattr(v, "to_json"):
                return v.to_json()
            if isinstance(v, Fraction):
                return str(v)
            if isinstance(v, (list, tuple)):
                return [enc(x) for x in v]
            if isinstance(v, dict):
                return {k: enc(x) for k, x in v.items()}
            return v
        return {k: enc(v) for k, v in sorted(self.__dict__.items())}


def _padic_json(x: PadicNumber, digits=10):
    p = x.prime
    if x.is_zero():
        return {"p": p, "valuation": None}
    return {"p": p, "valuation": x.valuation, "unit_mod_p^%d" % digits: int(x.unit % p ** digits)
            if isinstance(x.unit, int) else str(x.unit)}


def interpolation_rhs(f: ModFormData, p: int, j: int, eta: DirichletCharacter = None,
                      N_terms=250, dps=40, numeric=True):
    """e_infty(pi, -j) * e_p(pi~, eta, -j) * L^(p)(pi x eta, -j), with e_infty exact
    and symbolic, e_p exact (p-adic), and L numeric; the period stays symbolic."""
    a = f.a
    eta = eta or DirichletCharacter.trivial(1)
    par = lift_central_parity(f)
    if not 0 <= j <= a or -j not in critical_set(a, par, eta, "minus"):
        raise DomainError(f"(-{j}, eta) is not critical: need 0 <= j <= a and "
                          f"(-1)^j = omega(-1) eta(-1) = {par * parity(eta)}")
    sat = lift_satake(f, p)
    einf = e_infty(a, j)
    cond = eta.conductor()
    if cond == 1:
        ep = gl3_e_p(sat.alpha, None, j, p)
        ep_json = {"value": _padic_json(ep)}
    else:
        n = vp(cond, p)
        if p ** n != cond:
            raise DomainError("eta must have p-power conductor")
        G = gauss_sum(eta.primitive().inverse())
        pf = (PadicNumber.from_rational(Fraction(p) ** (j + 1), p, 40) * sat.alpha).inverse() ** n
        ep = (G, pf)
        ep_json = {"gauss_sum": G.to_json(), "padic_factor": _padic_json(pf)}
    rep = InterpolationReport(a=a, p=p, j=j, eta=eta.to_json(),
                              critical_points=[-x for x in critical_set(a, par, eta, "minus")],
                              e_infty=einf, e_p=ep_json, omega_parity=par)
    if numeric:
        chi = f.theta * eta
        Lv = _pi_minus_L(f, j, eta, N_terms, dps)
        m = a + 1 - j
        Efac = euler_factor_at_p(f, p, m, chi if not chi.is_trivial() else None)
        Lp = Lv.value * _to_mp(Efac)
        rep.L_numeric = Lv
        rep.euler_factor_at_p = Efac
        rep.L_p_removed = {"re": mpmath.nstr(mpmath.re(Lp), 30), "im": mpmath.nstr(mpmath.im(Lp), 30)}
        rep._Lp = Lp
    rep._ep = ep
    return rep


# ---------------------------------------------------------------------------
# the archimedean factor

def e_infty_ratio_holds(a: int, j: int) -> bool:
    """e_infty(-j) = (2 pi i)^j Gamma(a+1-j)/Gamma(a+1) e_infty(0), exactly."""
    lhs = e_infty(a, j)
    g = SymbolicPeriod(1, j, a + 1 - j) / SymbolicPeriod(1, 0, a + 1)
    rhs = g * e_infty(a, 0)
    return lhs == rhs


def classical_constant(a: int, j: int, omega_sign: int) -> SymbolicPeriod:
    """omega(-1) Gamma(a+1-j) (2 pi i)^j / 2^(2a+4), the j-dependent part of the
    classical normalisation (the i^-b is a j-independent unit)."""
    return SymbolicPeriod(Fraction(omega_sign, 2 ** (2 * a + 4)), j, a + 1 - j)


def rhs_ratio_constant(a: int, j: int, omega_sign: int) -> SymbolicPeriod:
    """classical_constant / e_infty: independent of j (= omega (2 pi i)^(a+1)/2^(2a+5))."""
    return classical_constant(a, j, omega_sign) / e_infty(a, j)


# ---------------------------------------------------------------------------
# algebraicity

_PETERSSON_CACHE = {}


def petersson_from_edge(f: ModFormData, N_terms=250, dps=40):
    """<f, f> = (k-1)! L(Sym^2 f, k) / (2^(2k-1) pi^(k+1)) for level one."""
    key = (f.weight, f.level, tuple(f.coefficient(n) for n in range(1, min(N_terms, 60) + 1)), N_terms, dps)
    if key not in _PETERSSON_CACHE:
        _PETERSSON_CACHE[key] = _petersson(f, N_terms, dps)
    return _PETERSSON_CACHE[key]


def _petersson(f, N_terms, dps):
    k = f.weight
    Lk = numeric_L_value(sym2_spec(f, N_terms), k, dps=dps)
    with mpmath.workdps(dps + 10):
        val = mpmath.factorial(k - 1) * mpmath.re(Lk.value) / (mpmath.mpf(2) ** (2 * k - 1) * mpmath.pi ** (k + 1))
    return val, Lk.error * mpmath.factorial(k - 1) / (mpmath.mpf(2) ** (2 * k - 1) * mpmath.pi ** (k + 1))


class RationalityResult:
    __slots__ = ("status", "value", "numeric", "residual", "detail", "complete_value")

    def __init__(self, status, value=None, numeric=None, residual=None, detail=""):
        self.status, self.value, self.numeric = status, value, numeric
        self.residual, self.detail = residual, detail
        self.complete_value = None

    @property
    def ok(self):
        return self.status == "recognized"

    def to_json(self):
        return {"status": self.status, "value": None if self.value is None else str(self.value),
                "numeric": None if self.numeric is None else mpmath.nstr(self.numeric, 25),
                "residual": None if self.residual is None else float(self.residual),
                "detail": self.detail,
                "complete_value": None if self.complete_value is None else str(self.complete_value)}


def recognize_rational(x, max_den=10 ** 6, tol=mpmath.mpf(10) ** -20, precision=None):
    """Continued-fraction reconstruction.  Accepts r = u/v, v <= max_den, with
    |x - r| <= tol * max(1, |x|).  Reports 'inconclusive' if the available
    precision cannot support the tolerance."""
    with mpmath.workdps(max(mpmath.mp.dps, 60)):
        return _recognize(mpmath.mpf(x), max_den, mpmath.mpf(tol), precision)


def _recognize(x, max_den, tol, precision):
    if precision is not None and precision > tol * max(1, abs(x)):
        return RationalityResult("inconclusive", numeric=x,
                                 detail="numerical error exceeds the tolerance")
    sign = -1 if x < 0 else 1
    ax = abs(x)
    ip = int(mpmath.floor(ax))
    frac = ax - ip
    # continued fraction of the fractional part at working precision
    best = None
    h0, h1, k0, k1 = 1, 0, 0, 1   # convergents of [0; a1, a2, ...]
    y = frac
    for _ in range(60):
        if y == 0:
            break
        y = 1 / y
        q = int(mpmath.floor(y))
        y = y - q
        h0, h1 = h1, q * h1 + h0
        k0, k1 = k1, q * k1 + k0
        if k1 > max_den:
            break
        cand = Fraction(h1, k1)
        if abs(frac - mpmath.mpf(cand.numerator) / cand.denominator) <= tol * max(1, ax):
            best = cand
            break
    if frac == 0 or abs(frac) <= tol * max(1, ax):
        best = Fraction(0)
    if best is None:
        return RationalityResult("failed", numeric=x,
                                 detail=f"no rational with denominator <= {max_den} within tolerance")
    r = sign * (ip + best)
    res = abs(x - mpmath.mpf(r.numerator) / r.denominator)
    return RationalityResult("recognized", r, x, res)


def normalized_value(f: ModFormData, p: int, j: int, petersson=None, include_e_infty=True,
                     N_terms=250, dps=40, scale=1, complete=False):
    """The classical normalisation
        omega(-1) Gamma(a+1-j) (2 pi i)^j / 2^(2a+4) * L^(p)(pi, -j) / (pi^(a+1) <f,f>)
    divided by i^-b, as a real number (b = 1 when omega(-1) = 1, else 0).
    With include_e_infty=False the Gamma and (2 pi i)^j are dropped; with
    complete=True the Euler factor at p is kept (L in place of L^(p))."""
    a = f.a
    rep = interpolation_rhs(f, p, j, None, N_terms, dps)
    om = rep.omega_parity
    with mpmath.workdps(dps + 10):
        if petersson is None:
            petersson, _ = petersson_from_edge(f, N_terms, dps)
        pet = mpmath.mpf(petersson)
        c = classical_constant(a, j, om).to_mp() if include_e_infty else mpmath.mpf(om) / 2 ** (2 * a + 4)
        L = rep.L_numeric.value if complete else rep._Lp
        val = c * L / (mpmath.pi ** (a + 1) * pet) * scale
        if abs(mpmath.im(val)) > abs(val) * mpmath.mpf(10) ** (-dps // 2):
            comp = val
        else:
            comp = mpmath.re(val)
        return comp, rep


def algebraicity_check(f: ModFormData, j: int, p: int = 11, petersson=None, eta=None,
                       include_e_infty=True, scale=1, max_den=10 ** 6,
                       tol=mpmath.mpf(10) ** -20, N_terms=250, dps=40):
    """Rational reconstruction of the normalised value.  The exact Euler factor
    at p is divided out before reconstruction and multiplied back afterwards."""
    if eta is not None and not eta.is_trivial():
        raise DomainError("algebraicity checks are implemented for trivial eta")
    with mpmath.workdps(dps + 10):
        complete, rep = normalized_value(f, p, j, petersson, include_e_infty, N_terms, dps, scale,
                                         complete=True)
        if isinstance(complete, mpmath.mpc):
            return RationalityResult("failed", numeric=None, detail="value is not real")
        Efac = rep.euler_factor_at_p
        err = rep.L_numeric.error / max(abs(rep.L_numeric.value), mpmath.mpf(10) ** -dps) * abs(complete)
        res = recognize_rational(complete, max_den, tol, precision=err)
    if res.ok:
        res.detail = f"complete value {res.value}; times Euler factor at {p} gives {res.value * Efac}"
        res.complete_value = res.value
        res.value = res.value * Efac
    return res


def dumps(obj) -> str:
    return json.dumps(obj.to_json(), sort_keys=True)
