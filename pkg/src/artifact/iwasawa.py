"""Group rings Z_p[(Z/p^n)^x], norm-compatible towers and measures on Z_p^x."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
import json

from .exact_arith import (CycNumber, DomainError, PadicNumber, as_fraction,
                          cyclotomic_poly, vp)
from .characters import (DirichletCharacter, characters_mod, evaluate as char_value,
                         padic_value, unit_group)


def units_mod(p: int, n: int):
    q = p ** n
    return [a for a in range(1, q + 1) if a % p]


def _is_zero(c):
    if isinstance(c, (CycNumber, PadicNumber)):
        return c.is_zero()
    return c == 0


def _scalar_valuation(c, p):
    """Valuation of a coefficient (None for zero)."""
    if isinstance(c, PadicNumber):
        return c.valuation
    if isinstance(c, CycNumber):
        q = c.to_rational()
        if q is None:
            # minimum over power-basis coordinates; a lower bound that is exact
            # for the integrality question since the power basis is integral
            vals = [vp(x, p) for x in c.coeffs if x]
            return min(vals)
        return vp(q, p)
    return vp(as_fraction(c), p)


def _rational_rep(c, p):
    """A rational number congruent to c (used only for reductions mod p)."""
    if isinstance(c, PadicNumber):
        return c.lift()
    if isinstance(c, CycNumber):
        q = c.to_rational()
        if q is None:
            return c  # caller must handle
        return q
    return as_fraction(c)


class GroupRingElem:
    """sum_x c_x [x] over x in Delta_n = (Z/p^n)^x; keys are the representatives in [1, p^n]."""

    __slots__ = ("p", "n", "coeffs")

    def __init__(self, p: int, n: int, coeffs=None):
        if n < 1:
            raise DomainError("level must be >= 1")
        q = p ** n
        clean = {}
        for a, c in (coeffs or {}).items():
            a = a % q or q
            if a % p == 0:
                raise DomainError(f"{a} is not a unit mod {p}^{n}")
            if not _is_zero(c):
                clean[a] = clean[a] + c if a in clean else c
        self.p, self.n = p, n
        self.coeffs = {a: c for a, c in clean.items() if not _is_zero(c)}

    @classmethod
    def group_element(cls, p, n, a, c=1):
        return cls(p, n, {a: c})

    @classmethod
    def one(cls, p, n):
        return cls(p, n, {1: 1})

    def coeff(self, a):
        q = self.p ** self.n
        return self.coeffs.get(a % q or q, 0)

    def _check(self, other):
        if (self.p, self.n) != (other.p, other.n):
            raise DomainError("group ring elements live at different levels")

    def __add__(self, other):
        self._check(other)
        c = dict(self.coeffs)
        for a, v in other.coeffs.items():
            c[a] = c[a] + v if a in c else v
        return GroupRingElem(self.p, self.n, c)

    def __neg__(self):
        return GroupRingElem(self.p, self.n, {a: -v for a, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return GroupRingElem(self.p, self.n, {a: v * s for a, v in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, GroupRingElem):
            return self.scale(other)
        self._check(other)
        q = self.p ** self.n
        out = {}
        for a, u in self.coeffs.items():
            for b, v in other.coeffs.items():
                k = a * b % q
                out[k] = out[k] + u * v if k in out else u * v
        return GroupRingElem(self.p, self.n, out)

    def __rmul__(self, s):
        return self.scale(s)

    def __eq__(self, other):
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        if (self.p, self.n) != (other.p, other.n):
            return False
        d = self - other
        return not d.coeffs

    def is_integral(self):
        for c in self.coeffs.values():
            v = _scalar_valuation(c, self.p)
            if v is not None and v < 0:
                return False
        return True

    def augmentation(self):
        return sum(self.coeffs.values(), 0)

    def __repr__(self):
        items = ", ".join(f"[{a}]:{c}" for a, c in sorted(self.coeffs.items()))
        return f"GroupRingElem(p={self.p}, n={self.n}, {{{items}}})"

    def to_json(self):
        return {str(a): _enc(c) for a, c in sorted(self.coeffs.items())}


def _enc(c):
    if isinstance(c, CycNumber):
        return c.to_json()
    if isinstance(c, PadicNumber):
        return {"padic": str(c.lift()), "precision": c.precision}
    return str(c)


def _dec(v, p):
    if isinstance(v, dict) and "padic" in v:
        return PadicNumber.from_rational(Fraction(v["padic"]), p, int(v["precision"]))
    if isinstance(v, dict):
        return CycNumber(int(v["conductor"]), [Fraction(x) for x in v["coeffs"]])
    return Fraction(v)


def norm_map(x: GroupRingElem) -> GroupRingElem:
    """Natural projection Z_p[Delta_{n+1}] -> Z_p[Delta_n]."""
    if x.n < 2:
        raise DomainError("norm map needs an element of level >= 2")
    q = x.p ** (x.n - 1)
    out = {}
    for a, c in x.coeffs.items():
        b = a % q or q
        out[b] = out[b] + c if b in out else c
    return GroupRingElem(x.p, x.n - 1, out)


def norm_down(x: GroupRingElem, m: int) -> GroupRingElem:
    while x.n > m:
        x = norm_map(x)
    return x


def evaluate_elem(x: GroupRingElem, eta) -> object:
    """sum_a c_a eta(a); eta is a DirichletCharacter with conductor dividing p^n,
    or any callable on integers."""
    if isinstance(eta, DirichletCharacter):
        f = eta.conductor()
        if (x.p ** x.n) % f:
            raise DomainError(f"character of conductor {f} does not factor through "
                              f"(Z/{x.p}^{x.n})^x")
        prim = eta.primitive()
        fn = lambda a: char_value(prim, a)
    else:
        fn = eta
    total = 0
    for a, c in x.coeffs.items():
        total = total + c * fn(a)
    return total


evaluate = evaluate_elem


def moment_twist(x: GroupRingElem, j: int) -> GroupRingElem:
    """[a] -> a^j [a] with a the integer lift in [1, p^n]."""
    return GroupRingElem(x.p, x.n, {a: c * a ** j for a, c in x.coeffs.items()})


# ---------------------------------------------------------------------------
# invertibility

def _cyclic_generator(p, n):
    gens, orders, _ = unit_group(p ** n)
    if len(gens) != 1:
        return None
    return gens[0], orders[0]


def _poly_mod_p(coeffs, p):
    """Reduce a list of rationals mod p; None if some denominator is divisible by p."""
    out = []
    for c in coeffs:
        c = as_fraction(c)
        if c.denominator % p == 0:
            return None
        out.append(c.numerator * pow(c.denominator, -1, p) % p)
    while out and out[-1] == 0:
        out.pop()
    return out


def _fp_polymod(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        if a[-1] == 0:
            a.pop()
            continue
        f = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - f * bi) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_gcd_is_one(a, b, p):
    while b:
        a, b = b, _fp_polymod(a, b, p)
    return len(a) == 1


def _rat_polymod(a, b):
    """Remainder of rational polynomials (low degree first)."""
    a = [as_fraction(x) for x in a]
    while len(a) >= len(b):
        if a[-1] == 0:
            a.pop()
            continue
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] -= f * bi
        a.pop()
    return a


def is_invertible(x: GroupRingElem) -> bool:
    """True iff every character evaluation of x is a p-adic unit."""
    p, n = x.p, x.n
    if not x.coeffs:
        return False
    cyc = _cyclic_generator(p, n)
    rat = {a: _rational_rep(c, p) for a, c in x.coeffs.items()}
    if cyc is not None and all(not isinstance(v, CycNumber) for v in rat.values()):
        g, m = cyc
        q = p ** n
        log = {}
        t = 1
        for k in range(m):
            log[t] = k
            t = t * g % q
        f = [Fraction(0)] * m
        for a, c in rat.items():
            f[log[a % q]] += c
        # evaluations at characters of exact order d are f(zeta_d) in Q(zeta_d)
        for d in range(1, m + 1):
            if m % d:
                continue
            phi = list(cyclotomic_poly(d))
            r = _rat_polymod(f, phi)
            red = _poly_mod_p(r, p)
            if red is None or not red:
                return False
            if not _fp_gcd_is_one(_poly_mod_p(phi, p), red, p):
                return False
        return True
    # general fallback: evaluate at every character exactly
    for eta in characters_mod(p ** n):
        v = evaluate_elem(x, eta)
        if not _value_is_unit(v, p):
            return False
    return True


def _value_is_unit(v, p):
    if isinstance(v, PadicNumber):
        return v.is_unit()
    if isinstance(v, CycNumber):
        if not v.is_p_integral(p):
            return False
        nv = v.norm()
        return nv != 0 and vp(nv, p) == 0
    v = as_fraction(v)
    return v != 0 and vp(v, p) == 0


def unit_witness(x: GroupRingElem):
    """A character at which x fails to be a unit, or None."""
    for eta in characters_mod(x.p ** x.n):
        if not _value_is_unit(evaluate_elem(x, eta), x.p):
            return eta
    return None


def _element_order(g, q):
    k, t = 1, g % q
    while t != 1:
        t = t * g % q
        k += 1
    return k


def binomial_inverse(A, B, g, p, n) -> GroupRingElem:
    """Inverse of A[1] - B[g] via (A - Bg) sum_k A^(m-1-k) B^k g^k = A^m - B^m."""
    q = p ** n
    m = _element_order(g, q)
    denom = A ** m - B ** m
    if _is_zero(denom):
        raise ZeroDivisionError("binomial element is a zero divisor")
    coeffs = {}
    gk = 1
    for k in range(m):
        c = A ** (m - 1 - k) * B ** k / denom
        coeffs[gk] = coeffs[gk] + c if gk in coeffs else c
        gk = gk * g % q
    return GroupRingElem(p, n, coeffs)


# ---------------------------------------------------------------------------
# towers and measures

class MeasureTower:
    __slots__ = ("p", "levels", "eigenvalue", "weight_a")

    def __init__(self, p, levels, eigenvalue, weight_a=0):
        self.p = p
        self.levels = list(levels)
        self.eigenvalue = eigenvalue
        self.weight_a = weight_a
        for k, x in enumerate(self.levels):
            if x.n != k + 1 or x.p != p:
                raise DomainError("tower levels must be indexed n = 1, 2, ...")


class Measure:
    __slots__ = ("p", "levels", "bounded", "eigenvalue", "weight_a")

    def __init__(self, p, levels, bounded=True, eigenvalue=1, weight_a=0):
        self.p = p
        self.levels = list(levels)
        self.bounded = bounded
        self.eigenvalue = eigenvalue
        self.weight_a = weight_a

    def level(self, n):
        return self.levels[n - 1]

    def is_compatible(self):
        return all(norm_map(self.levels[k + 1]) == self.levels[k]
                   for k in range(len(self.levels) - 1))

    def integrate(self, eta, n=None):
        """Integral of a function factoring through level n (default: top)."""
        x = self.levels[-1] if n is None else self.level(n)
        return evaluate_elem(x, eta)

    def to_json(self):
        return {"p": self.p, "a": self.weight_a, "eigenvalue": _enc(self.eigenvalue),
                "bounded": self.bounded,
                "levels": [{"n": x.n, "coeffs": x.to_json()} for x in self.levels]}

    @classmethod
    def from_json(cls, d):
        p = int(d["p"])
        levels = [GroupRingElem(p, int(L["n"]), {int(a): _dec(v, p) for a, v in L["coeffs"].items()})
                  for L in d["levels"]]
        return cls(p, levels, bool(d.get("bounded", True)), _dec(d.get("eigenvalue", "1"), p),
                   int(d.get("a", 0)))

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)


class IncompatibleTower(DomainError):
    pass


def tower_to_measure(t: MeasureTower) -> Measure:
    lam = t.eigenvalue
    if _is_zero(lam):
        raise DomainError("eigenvalue is zero")
    for k in range(len(t.levels) - 1):
        if norm_map(t.levels[k + 1]) != t.levels[k].scale(lam):
            raise IncompatibleTower(f"norm compatibility fails between levels {k + 1} and {k + 2}")
    levels = [x.scale(Fraction(1) / lam ** x.n if not isinstance(lam, (PadicNumber, CycNumber))
                      else lam.inverse() ** x.n)
              for x in t.levels]
    v = _scalar_valuation(lam, t.p)
    bounded = v == 0 and all(x.is_integral() for x in t.levels)
    return Measure(t.p, levels, bounded, lam, t.weight_a)


def synthetic_tower(top: GroupRingElem, eigenvalue, weight_a=0) -> MeasureTower:
    """levels[n] = eigenvalue^n * norm^(N-n)(top): a tower whose rescaling is
    the compatible system generated by top."""
    levels = []
    x = top
    chain = [x]
    while x.n > 1:
        x = norm_map(x)
        chain.append(x)
    chain.reverse()
    for y in chain:
        levels.append(y.scale(eigenvalue ** y.n))
    return MeasureTower(top.p, levels, eigenvalue, weight_a)


def smoothing_factor(p, n, c, j, chi: DirichletCharacter, precision=20) -> GroupRingElem:
    """c^2 [1] - c^(-j) chi(c)^(-1) [c^(-1) mod p^n]."""
    if c % p == 0:
        raise DomainError(f"c = {c} is not a unit mod {p}")
    chic = char_value(chi, c)
    if chic.is_zero():
        raise DomainError(f"chi(c) = 0: c shares a factor with the modulus of chi")
    q = chic.to_rational()
    if q is None:
        chic = padic_value(chi, c, p, precision)
    else:
        chic = q
    B = Fraction(1, c ** j) / chic if q is not None else chic.inverse() * Fraction(1, c ** j)
    cinv = pow(c, -1, p ** n)
    x = GroupRingElem(p, n, {1: Fraction(c * c)})
    return x - GroupRingElem(p, n, {cinv: B})


def remove_smoothing(mu_c: Measure, c, j, chi, precision=20) -> Measure:
    out = []
    for x in mu_c.levels:
        f = smoothing_factor(x.p, x.n, c, j, chi, precision)
        if not is_invertible(f):
            eta = unit_witness(f)
            raise DomainError(f"smoothing factor is not invertible at level {x.n}: "
                              f"evaluation at {eta} is not a unit")
        cinv = pow(c, -1, x.p ** x.n)
        A = f.coeff(1) if cinv != 1 else f.coeff(1)
        if cinv == 1:
            inv = GroupRingElem(x.p, x.n, {1: 1 / A if not isinstance(A, PadicNumber) else A.inverse()})
        else:
            B = -f.coeff(cinv)
            inv = binomial_inverse(A, B, cinv, x.p, x.n)
        out.append(x * inv)
    return Measure(mu_c.p, out, mu_c.bounded, mu_c.eigenvalue, mu_c.weight_a)


def apply_levelwise(mu: Measure, fn) -> Measure:
    return Measure(mu.p, [fn(x) for x in mu.levels], mu.bounded, mu.eigenvalue, mu.weight_a)


def multiply_smoothing(mu: Measure, c, j, chi, precision=20) -> Measure:
    return apply_levelwise(mu, lambda x: x * smoothing_factor(x.p, x.n, c, j, chi, precision))
