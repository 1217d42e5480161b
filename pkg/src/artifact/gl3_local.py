"""Local data for GL(3) at p: Satake parameters, refinements, ordinarity,
L- and gamma-factors, critical sets and modified Euler factors."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
import json

from .exact_arith import (CycNumber, DomainError, HalfPow, PadicNumber, SymbolicPeriod,
                          as_fraction, euler_phi, vp)
from .characters import DirichletCharacter, gauss_sum, parity


def _valuation(x, p, declared=None):
    if declared is not None:
        return Fraction(declared)
    if isinstance(x, PadicNumber):
        return Fraction(x.valuation) if x.valuation is not None else None
    if isinstance(x, CycNumber):
        q = x.to_rational()
        if q is None:
            raise DomainError("cyclotomic scalar needs a declared p-adic valuation")
        x = q
    x = as_fraction(x)
    if x == 0:
        raise DomainError("zero has no finite valuation")
    return Fraction(vp(x, p))


def _inv(x):
    if isinstance(x, (CycNumber, PadicNumber)):
        return x.inverse()
    return Fraction(1) / as_fraction(x)


class SatakeParams:
    __slots__ = ("alpha", "beta", "gamma", "p", "weight_a", "valuations")

    def __init__(self, alpha, beta, gamma, p, weight_a=0, valuations=None):
        self.alpha, self.beta, self.gamma = alpha, beta, gamma
        self.p = p
        self.weight_a = weight_a
        vals = valuations or (None, None, None)
        self.valuations = tuple(_valuation(x, p, v) for x, v in zip(self.triple, vals))

    @property
    def triple(self):
        return (self.alpha, self.beta, self.gamma)

    def check_cohomological(self):
        b = 1 + self.weight_a
        return all(-b <= v <= b for v in self.valuations)

    def dual(self):
        return SatakeParams(_inv(self.alpha), _inv(self.beta), _inv(self.gamma), self.p,
                            self.weight_a, tuple(-v for v in self.valuations))

    def central(self):
        return self.alpha * self.beta * self.gamma

    def to_json(self):
        return {"p": self.p, "a": self.weight_a,
                "satake": [_enc(x) for x in self.triple],
                "valuations": [str(v) for v in self.valuations]}


def _enc(x):
    if isinstance(x, CycNumber):
        return x.to_json()
    return str(x)


def _dec(v):
    if isinstance(v, dict):
        return CycNumber(int(v["conductor"]), [Fraction(c) for c in v["coeffs"]])
    return Fraction(v)


def hecke_eigenvalues(s: SatakeParams, omega_p=None, conj=None):
    """(a_p1, a_p2).  With omega_p and a complex-conjugation map supplied, also
    returns whether a_p2 = omega_p * conj(a_p1)."""
    al, be, ga = s.triple
    scale = Fraction(s.p) ** (s.weight_a + 1)
    a1 = (al + be + ga) * scale
    a2 = (al * be + be * ga + ga * al) * scale
    if omega_p is None:
        return a1, a2
    c = conj or (lambda z: z.conj() if isinstance(z, CycNumber) else z)
    return a1, a2, a2 == omega_p * c(a1)


# ---------------------------------------------------------------------------
# characters of Q_p^x and refinements

class LocalChar:
    """Character of Q_p^x: value at p is coeff * p^(half/2); restriction to
    Z_p^x is a Dirichlet character of p-power modulus."""

    __slots__ = ("coeff", "half", "units", "p", "coeff_val")

    def __init__(self, coeff, p, half=0, units=None, valuation=None):
        self.coeff = coeff
        self.p = p
        self.half = half
        self.units = units or DirichletCharacter.trivial(1)
        self.coeff_val = _valuation(coeff, p, valuation)

    @property
    def ramified(self):
        return not self.units.is_trivial()

    @property
    def slope(self):
        return self.coeff_val + Fraction(self.half, 2)

    def value(self):
        return HalfPow(self.coeff, self.half, self.p)

    def __mul__(self, other):
        return LocalChar(self.coeff * other.coeff, self.p, self.half + other.half,
                         self.units * other.units, self.coeff_val + other.coeff_val)

    def inverse(self):
        return LocalChar(_inv(self.coeff), self.p, -self.half, self.units.inverse(), -self.coeff_val)

    def abs_power(self, k2):
        """Twist by |.|^(k2/2); |p| = p^-1."""
        return LocalChar(self.coeff, self.p, self.half - k2, self.units, self.coeff_val)

    def key(self):
        return (str(self.coeff), self.half, self.units.conductor(), self.units.primitive().angles)

    def __eq__(self, other):
        return isinstance(other, LocalChar) and self.coeff == other.coeff and \
            self.half == other.half and self.units == other.units

    def __hash__(self):
        return hash((self.half, self.units))

    def __repr__(self):
        r = f", ramified(cond {self.units.conductor()})" if self.ramified else ""
        return f"LocalChar({self.coeff}*p^({self.half}/2){r})"

    def to_json(self):
        return {"value": _enc(self.coeff), "half_power": self.half,
                "valuation": str(self.coeff_val), "units": self.units.to_json()}

    @classmethod
    def from_json(cls, d, p):
        u = DirichletCharacter.from_json(d["units"]) if "units" in d else None
        return cls(_dec(d["value"]), p, int(d.get("half_power", 0)), u,
                   Fraction(d["valuation"]) if "valuation" in d else None)


class Refinement:
    __slots__ = ("parabolic", "char")

    def __init__(self, parabolic, char: LocalChar):
        self.parabolic = parabolic
        self.char = char

    @property
    def character_value_at_p(self):
        return self.char.value()

    @property
    def ramified(self):
        return self.char.ramified

    @property
    def slope(self):
        return self.char.slope

    def __eq__(self, other):
        return isinstance(other, Refinement) and self.parabolic == other.parabolic and self.char == other.char

    def __repr__(self):
        return f"Refinement(P{self.parabolic}, {self.char!r}, slope={self.slope})"

    def to_json(self):
        return {"parabolic": self.parabolic, "character": self.char.to_json(),
                "ramified": self.ramified, "slope": str(self.slope)}


KINDS = ("supercuspidal", "steinberg_twist", "induced_theta_sc", "induced_theta_st",
         "principal_series")


class LocalRepGL3:
    """Generic irreducible representation of GL3(Q_p) by inducing data.

    supercuspidal:    central = omega
    steinberg_twist:  chars = (lam,)
    induced_theta_sc: chars = (theta, omega_sigma)
    induced_theta_st: chars = (theta, lam)
    principal_series: chars = (chi1, chi2, chi3)
    """

    __slots__ = ("kind", "chars", "p", "weight_a", "central_char")

    def __init__(self, kind, chars, p, weight_a=0, central_char=None):
        if kind not in KINDS:
            raise DomainError(f"unknown representation kind {kind!r}")
        self.kind, self.chars, self.p, self.weight_a = kind, tuple(chars), p, weight_a
        self.central_char = central_char
        if kind != "supercuspidal" and central_char is None:
            self.central_char = self._central()

    def _central(self):
        c = self.chars
        if self.kind == "steinberg_twist":
            return c[0] * c[0] * c[0]
        if self.kind == "induced_theta_sc":
            return c[0] * c[1]
        if self.kind == "induced_theta_st":
            return c[0] * c[1] * c[1]
        return c[0] * c[1] * c[2]

    def dual(self):
        cc = self.central_char.inverse() if self.central_char is not None else None
        return LocalRepGL3(self.kind, [x.inverse() for x in self.chars], self.p, self.weight_a, cc)

    def to_json(self):
        d = {"kind": self.kind, "p": self.p, "a": self.weight_a,
             "chars": [x.to_json() for x in self.chars]}
        if self.kind == "supercuspidal" and self.central_char is not None:
            d["central"] = self.central_char.to_json()
        return d

    @classmethod
    def from_json(cls, d):
        p = int(d["p"])
        chars = [LocalChar.from_json(x, p) for x in d.get("chars", [])]
        cc = LocalChar.from_json(d["central"], p) if "central" in d else None
        return cls(d["kind"], chars, p, int(d.get("a", 0)), cc)

    @classmethod
    def unramified(cls, s: SatakeParams):
        chars = [LocalChar(x, s.p, valuation=v) for x, v in zip(s.triple, s.valuations)]
        return cls("principal_series", chars, s.p, s.weight_a)


def classify_refinements(rep: LocalRepGL3):
    c = rep.chars
    if rep.kind == "supercuspidal":
        return []
    if rep.kind == "steinberg_twist":
        lam = c[0]
        return [Refinement(1, lam.abs_power(2)), Refinement(2, (lam * lam).abs_power(2))]
    if rep.kind == "induced_theta_sc":
        theta, om_sigma = c
        return [Refinement(1, theta), Refinement(2, om_sigma)]
    if rep.kind == "induced_theta_st":
        theta, lam = c
        return [Refinement(1, theta), Refinement(1, lam.abs_power(1)),
                Refinement(2, lam * lam), Refinement(2, (theta * lam).abs_power(1))]
    x1, x2, x3 = c
    return [Refinement(1, x1), Refinement(1, x2), Refinement(1, x3),
            Refinement(2, x1 * x2), Refinement(2, x2 * x3), Refinement(2, x3 * x1)]


class OrdinarityVerdict:
    __slots__ = ("value", "reason", "refinement")

    def __init__(self, value, reason="", refinement=None):
        self.value, self.reason, self.refinement = value, reason, refinement

    def __bool__(self):
        return self.value

    def __repr__(self):
        return f"OrdinarityVerdict({self.value}, {self.reason!r})"


def is_nearly_ordinary(rep: LocalRepGL3, i: int) -> OrdinarityVerdict:
    refs = [r for r in classify_refinements(rep) if r.parabolic == i]
    if not refs:
        return OrdinarityVerdict(False, "no refinements")
    target = -(1 + rep.weight_a)
    for r in refs:
        if r.slope == target:
            return OrdinarityVerdict(True, "slope -(1+a)", r)
    return OrdinarityVerdict(False, f"no P{i}-refinement of slope {target}")


def is_ordinary(data, i: int) -> OrdinarityVerdict:
    """P_i-ordinarity of SatakeParams (unit Hecke eigenvalue) or of a LocalRepGL3
    (a slope -(1+a) refinement with unramified character)."""
    if i not in (1, 2):
        raise DomainError("parabolic index must be 1 or 2")
    if isinstance(data, SatakeParams):
        a1, a2 = hecke_eigenvalues(data)
        v = _sum_valuation(data, i)
        return OrdinarityVerdict(v == 0, f"v_p(a_p{i}) = {v}")
    nv = is_nearly_ordinary(data, i)
    if not nv:
        return nv
    if nv.refinement.ramified:
        return OrdinarityVerdict(False, "nearly ordinary refinement is ramified", nv.refinement)
    return OrdinarityVerdict(True, "unramified refinement of slope -(1+a)", nv.refinement)


def _sum_valuation(s: SatakeParams, i):
    """v_p(a_{p,i}); exact for rational data, from declared valuations when the
    minimum is attained once."""
    a1, a2 = hecke_eigenvalues(s)
    x = a1 if i == 1 else a2
    try:
        return _valuation(x, s.p)
    except DomainError:
        v = s.valuations
        terms = sorted(v) if i == 1 else sorted([v[0] + v[1], v[1] + v[2], v[2] + v[0]])
        if terms[0] == terms[1]:
            raise DomainError("valuation of the eigenvalue is not determined by the declared data")
        return terms[0] + s.weight_a + 1


# ---------------------------------------------------------------------------
# L-factors, gamma-factors, critical values

def local_L_factor(s: SatakeParams):
    """Coefficients [1, c1, c2, c3] of (1 - alpha X)(1 - beta X)(1 - gamma X)."""
    al, be, ga = s.triple
    return [Fraction(1), -(al + be + ga), al * be + be * ga + ga * al, -(al * be * ga)]


def poly_from_roots(inv_roots):
    out = [Fraction(1)]
    for r in inv_roots:
        nxt = out + [0]
        for k in range(len(out)):
            nxt[k + 1] = nxt[k + 1] - r * out[k]
        out = nxt
    return out


def critical_set(a: int, omega_parity: int, eta: DirichletCharacter = None, side="minus"):
    """Integers j with (j, eta) critical on the given side."""
    eps = omega_parity * (parity(eta) if eta is not None else 1)
    if side == "minus":
        return [j for j in range(-a, 1) if (-1) ** (j % 2) == eps]
    if side == "plus":
        return [j for j in range(1, a + 2) if (-1) ** (j % 2) == -eps]
    raise DomainError("side must be 'minus' or 'plus'")


def _parity_int(x):
    if x in ("even", "+", "+1", 1):
        return 1
    if x in ("odd", "-", "-1", -1):
        return -1
    raise DomainError(f"unrecognised parity {x!r}")


def e_infty(a: int, j: int) -> SymbolicPeriod:
    """2 (2 pi i)^(j-a-1) Gamma(a+1-j), the factor at the point -j."""
    if not 0 <= j <= a:
        raise DomainError(f"need 0 <= j <= a, got j={j}, a={a}")
    return SymbolicPeriod(2, j - a - 1, a + 1 - j)


class ExceptionalZero(DomainError):
    pass


def e_p(alpha_p, eta: DirichletCharacter, j: int, p: int, a: int = None, omega_parity=None):
    """Modified Euler factor at p for the point -j, given alpha_p(p)."""
    if a is not None and omega_parity is not None:
        if -j not in critical_set(a, _parity_int(omega_parity), eta, "minus"):
            raise DomainError(f"(-{j}, eta) is not in the minus critical set")
    f = eta.conductor() if eta is not None else 1
    if f == 1:
        den = 1 - Fraction(p) ** j * alpha_p
        if (den.is_zero() if isinstance(den, (CycNumber, PadicNumber)) else den == 0):
            raise ExceptionalZero(f"1 - p^{j} alpha_p(p) vanishes (exceptional zero)")
        num = 1 - _inv(Fraction(p) ** (j + 1) * alpha_p)
        return num / den
    n = 0
    q = f
    while q % p == 0:
        q //= p
        n += 1
    if q != 1:
        raise DomainError(f"eta must have p-power conductor, got {f}")
    G = gauss_sum(eta.primitive().inverse())
    return G * _inv(Fraction(p) ** (j + 1) * alpha_p) ** n


def E0_factor(rep: LocalRepGL3, refinement: Refinement, chi_p=1, check_unit=False):
    """L(sigma x alpha, 0) / L(wedge^2 Pi, 0) for the P1-refinement alpha.

    When Pi is irreducibly induced from alpha x sigma this is
    1 - nu(p) chi_p with nu = omega_sigma = omega alpha^-1 (or 1 if nu is
    ramified); for the reducible inductions it is 1."""
    if refinement.parabolic != 1:
        raise DomainError("E0 is attached to a P1-refinement")
    if refinement.ramified:
        raise DomainError("E0 needs an unramified refinement")
    irreducible = rep.kind in ("principal_series", "induced_theta_sc") or (
        rep.kind == "induced_theta_st" and refinement.char == rep.chars[0])
    if not irreducible:
        val = Fraction(1)
    else:
        nu = rep.central_char * refinement.char.inverse()
        if nu.ramified:
            val = Fraction(1)
        else:
            val = 1 - nu.value().value() * chi_p
    if check_unit:
        if _iszero(val) or _valuation(val, rep.p) != 0:
            raise DomainError(f"E0 = {val} is not a p-adic unit")
    return val


def _iszero(x):
    return x.is_zero() if isinstance(x, (CycNumber, PadicNumber)) else x == 0


# ---------------------------------------------------------------------------
# refined newvector values

class RefinedData:
    """alpha_p and the local L-factor of the GL2 piece sigma, given by the
    coefficients [1, -c1, c2] of its denominator in T = p^-s."""

    __slots__ = ("p", "alpha_p", "r", "sigma_den", "kind")

    def __init__(self, p, alpha_p, sigma_den, r=0, kind="custom"):
        if not sigma_den or sigma_den[0] != 1 or len(sigma_den) > 3:
            raise DomainError("sigma L-factor denominator must be 1 + c1 T + c2 T^2")
        self.p, self.alpha_p, self.r, self.kind = p, alpha_p, r, kind
        self.sigma_den = [as_fraction(c) if not isinstance(c, CycNumber) else c for c in sigma_den]

    @classmethod
    def principal_series(cls, p, alpha_p, B, C, r=0):
        return cls(p, alpha_p, [1, -(B + C), B * C], r, "principal_series")

    @classmethod
    def steinberg(cls, p, alpha_p, C, r=1):
        return cls(p, alpha_p, [1, -C], r, "steinberg")

    @classmethod
    def supercuspidal(cls, p, alpha_p, r=2):
        return cls(p, alpha_p, [1], r, "supercuspidal")

    def b(self, n):
        return sigma_L_coeffs(self, n + 1)[n]

    def to_json(self):
        return {"p": self.p, "alpha_p": _enc(self.alpha_p), "r": self.r, "kind": self.kind,
                "sigma_den": [_enc(c) for c in self.sigma_den]}

    @classmethod
    def from_json(cls, d):
        return cls(int(d["p"]), _dec(d["alpha_p"]), [_dec(c) for c in d["sigma_den"]],
                   int(d.get("r", 0)), d.get("kind", "custom"))


def sigma_L_coeffs(rd: RefinedData, N: int):
    """b_0..b_{N-1} with sum b_n T^n = 1 / den(T)."""
    den = rd.sigma_den + [0] * (3 - len(rd.sigma_den))
    b = []
    for n in range(N):
        v = Fraction(1) if n == 0 else Fraction(0)
        if n >= 1:
            v = v - den[1] * b[n - 1]
        if n >= 2:
            v = v - den[2] * b[n - 2]
        b.append(v)
    return b


def whittaker_torus_value(rd: RefinedData, m: int, n: int):
    """Refined newvector at diag(p^(m+n), p^n, 1)."""
    if m < 0 or n < 0:
        return Fraction(0)
    w_sigma = HalfPow(rd.b(n), -n, rd.p)
    return (HalfPow(rd.alpha_p ** (m + n), -2 * m - n, rd.p) * w_sigma).value()


# ---------------------------------------------------------------------------
# level combinatorics

def level_intersection_index(p: int, n: int, t: int) -> int:
    if t < n:
        raise DomainError("need t >= n")
    return p ** (2 * n - 1) * (p - 1)


_U = ((1, 1, 0), (0, 0, -1), (0, 1, 0))
_U_INV = ((1, 0, -1), (0, 0, 1), (0, -1, 0))


def _matmul(A, B, q):
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(3)) % q for j in range(3))
                 for i in range(3))


def enumerate_level_index(p: int, n: int, t: int, r: int = 0) -> int:
    """Index computed by brute force: count h = ((a, b; 0, 1), z) mod p^t with
    u^-1 iota(h) u in the level group U_n (mod p^t)."""
    if t < max(n, r):
        raise DomainError("need t >= max(n, r)")
    q, qn, qr = p ** t, p ** n, p ** r
    units = [x for x in range(q) if x % p]
    total = kept = 0
    for a, b, z in product(units, range(q), units):
        total += 1
        h = ((a, b, 0), (0, 1, 0), (0, 0, z))
        g = _matmul(_matmul(_U_INV, h, q), _U, q)
        if g[0][1] % qn or g[0][2] % qn:
            continue
        if g[2][0] % qr or g[2][1] % qr or (g[2][2] - 1) % qr:
            continue
        kept += 1
    if total % kept:
        raise AssertionError("subgroup order does not divide group order")
    return total // kept


def dumps(obj) -> str:
    return json.dumps(obj.to_json(), sort_keys=True)
