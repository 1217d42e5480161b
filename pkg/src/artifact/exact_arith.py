"""Exact scalars: capped p-adic numbers, cyclotomic numbers, Laurent-rational
functions in two variables and symbolic archimedean periods."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, factorial
import numbers

import mpmath


class DomainError(ValueError):
    """Raised when an input lies outside the domain of an operation."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, CycNumber):
        q = x.to_rational()
        if q is None:
            raise DomainError("cyclotomic number is not rational")
        return q
    raise TypeError(f"cannot convert {type(x).__name__} to Fraction")


def vp_int(n: int, p: int) -> int:
    if n == 0:
        raise DomainError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(x, p: int):
    """p-adic valuation of a nonzero rational (None for zero)."""
    x = as_fraction(x)
    if x == 0:
        return None
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def factorize(n: int) -> dict:
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    r = n
    for q in factorize(n):
        r = r // q * (q - 1)
    return r


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# ---------------------------------------------------------------------------
# p-adic numbers with capped relative precision

class PadicNumber:
    """Element p^valuation * unit of Q_p, known modulo p^(valuation+precision).

    The exact zero sentinel has unit 0 and valuation None; it absorbs
    precision (it is exactly zero)."""

    __slots__ = ("prime", "valuation", "unit", "precision")

    def __init__(self, prime, valuation, unit, precision):
        self.prime = prime
        self.precision = precision
        if unit is None or valuation is None:
            self.valuation = None
            self.unit = 0
            return
        mod = prime ** precision
        unit %= mod
        if unit == 0:
            # lost all digits; keep as an inexact zero at absolute precision
            self.valuation = None
            self.unit = 0
            return
        while unit % prime == 0:
            unit //= prime
            valuation += 1
            precision -= 1
        self.valuation = valuation
        self.unit = unit % (prime ** max(precision, 1))
        self.precision = max(precision, 1)

    @classmethod
    def zero(cls, p, precision=20):
        return cls(p, None, None, precision)

    @classmethod
    def from_rational(cls, x, p, precision=20):
        x = as_fraction(x)
        if x == 0:
            return cls.zero(p, precision)
        v = vp(x, p)
        num = x.numerator // p ** max(v, 0)
        den = x.denominator // p ** max(-v, 0)
        mod = p ** precision
        return cls(p, v, num * pow(den, -1, mod) % mod, precision)

    def _coerce(self, other):
        if isinstance(other, PadicNumber):
            if other.prime != self.prime:
                raise DomainError("mixing different primes")
            return other
        if isinstance(other, (int, Fraction)):
            return PadicNumber.from_rational(other, self.prime, self.precision)
        if isinstance(other, CycNumber):
            q = other.to_rational()
            if q is not None:
                return PadicNumber.from_rational(q, self.prime, self.precision)
            return cyc_to_padic(other, self.prime, self.precision)
        return NotImplemented

    def is_zero(self):
        return self.valuation is None

    def is_unit(self):
        return self.valuation == 0

    def is_integral(self):
        return self.valuation is None or self.valuation >= 0

    def absolute_precision(self):
        return None if self.valuation is None else self.valuation + self.precision

    def lift(self) -> Fraction:
        """Rational representative p^v * unit."""
        if self.valuation is None:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.prime) ** self.valuation

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        p = self.prime
        v = min(self.valuation, other.valuation)
        absprec = min(self.absolute_precision(), other.absolute_precision())
        a = self.unit * p ** (self.valuation - v)
        b = other.unit * p ** (other.valuation - v)
        prec = absprec - v
        s = (a + b) % p ** prec
        if s == 0:
            return PadicNumber(p, None, None, prec)
        return PadicNumber(p, v, s, prec)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero():
            return self
        return PadicNumber(self.prime, self.valuation, -self.unit, self.precision)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return PadicNumber.zero(self.prime, min(self.precision, other.precision))
        prec = min(self.precision, other.precision)
        return PadicNumber(self.prime, self.valuation + other.valuation,
                           self.unit * other.unit, prec)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("p-adic zero")
        mod = self.prime ** self.precision
        return PadicNumber(self.prime, -self.valuation, pow(self.unit, -1, mod),
                           self.precision)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        r = PadicNumber.from_rational(1, self.prime, self.precision)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        d = self - other
        return d.is_zero()

    def __hash__(self):
        return hash((self.prime, self.valuation))

    def congruent(self, other, n: int) -> bool:
        """Is self - other divisible by p^n?"""
        d = self - self._coerce(other)
        if d.is_zero():
            return True
        return d.valuation >= n

    def __repr__(self):
        if self.is_zero():
            return f"O({self.prime}^{self.precision})"
        return f"{self.unit}*{self.prime}^{self.valuation} + O({self.prime}^{self.valuation + self.precision})"


def teichmuller(a: int, p: int, N: int) -> PadicNumber:
    """The (p-1)-st root of unity congruent to a mod p, to N digits."""
    if a % p == 0:
        raise DomainError(f"{a} is not a unit mod {p}")
    mod = p ** N
    x = a % mod
    while True:
        y = pow(x, p, mod)
        if y == x:
            return PadicNumber(p, 0, x, N)
        x = y


# ---------------------------------------------------------------------------
# cyclotomic fields

@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Integer coefficients (low degree first) of the n-th cyclotomic polynomial."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _poly_exact_div(a, b):
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] // lead
        q[i] = c
        for k, bk in enumerate(b):
            a[i + k] -= c * bk
    assert all(x == 0 for x in a), "non-exact polynomial division"
    return q


@lru_cache(maxsize=None)
def _power_table(N: int) -> tuple:
    """Row e (0 <= e < N): coefficients of x^e reduced modulo Phi_N."""
    phi = cyclotomic_poly(N)
    d = len(phi) - 1
    rows = []
    cur = [0] * d
    cur[0] = 1
    for _ in range(N):
        rows.append(tuple(cur))
        # multiply by x
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * phi[k] for k, c in enumerate(cur)]
    return tuple(rows)


class CycNumber:
    """Element of Q(zeta_N) in the power basis 1, z, ..., z^(phi(N)-1)."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs):
        d = len(cyclotomic_poly(conductor)) - 1
        coeffs = [as_fraction(c) for c in coeffs]
        if len(coeffs) > d:
            coeffs = _reduce_exponents(conductor, dict(enumerate(coeffs)))
        self.conductor = conductor
        self.coeffs = tuple(coeffs) + (Fraction(0),) * (d - len(coeffs))

    # constructors
    @classmethod
    def from_rational(cls, q, N: int = 1):
        return cls(N, [as_fraction(q)])

    @classmethod
    def zeta(cls, N: int, k: int = 1):
        """zeta_N^k with zeta_N = exp(2 pi i / N)."""
        return cls(N, _reduce_exponents(N, {k % N: Fraction(1)}))

    @classmethod
    def from_exponents(cls, N: int, terms: dict):
        """Sum of c * zeta_N^e for e -> c in terms."""
        return cls(N, _reduce_exponents(N, terms))

    def lift_to(self, M: int) -> "CycNumber":
        if M % self.conductor:
            raise DomainError(f"Q(zeta_{self.conductor}) is not inside Q(zeta_{M})")
        if M == self.conductor:
            return self
        s = M // self.conductor
        return CycNumber(M, _reduce_exponents(M, {k * s: c for k, c in enumerate(self.coeffs) if c}))

    def _common(self, other):
        if isinstance(other, (int, Fraction)):
            return self, CycNumber(self.conductor, [other])
        if isinstance(other, CycNumber):
            if other.conductor == self.conductor:
                return self, other
            M = lcm(self.conductor, other.conductor)
            return self.lift_to(M), other.lift_to(M)
        return None

    def __add__(self, other):
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycNumber(a.conductor, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.conductor, [-x for x in self.coeffs])

    def __sub__(self, other):
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycNumber(a.conductor, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNumber(self.conductor, [x * other for x in self.coeffs])
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        N = a.conductor
        terms = {}
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    k = (i + j) % N
                    terms[k] = terms.get(k, 0) + x * y
        return CycNumber(N, _reduce_exponents(N, terms))

    __rmul__ = __mul__

    def mult_matrix(self):
        """Matrix of multiplication by self on the power basis (columns = images)."""
        d = len(self.coeffs)
        cols = []
        for k in range(d):
            cols.append((self * CycNumber.zeta(self.conductor, k)).coeffs)
        return [[cols[c][r] for c in range(d)] for r in range(d)]

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("cyclotomic zero")
        q = self.to_rational()
        if q is not None:
            return CycNumber(self.conductor, [1 / q])
        M = self.mult_matrix()
        d = len(M)
        rhs = [Fraction(1)] + [Fraction(0)] * (d - 1)
        return CycNumber(self.conductor, solve_linear(M, rhs))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNumber(self.conductor, [x / other for x in self.coeffs])
        if isinstance(other, CycNumber):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        r = CycNumber(self.conductor, [1])
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def is_zero(self):
        return not any(self.coeffs)

    def to_rational(self):
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def conj(self):
        """Complex conjugation zeta -> zeta^-1."""
        N = self.conductor
        return CycNumber(N, _reduce_exponents(N, {(-k) % N: c for k, c in enumerate(self.coeffs) if c}))

    def norm(self) -> Fraction:
        return det(self.mult_matrix())

    def trace(self) -> Fraction:
        M = self.mult_matrix()
        return sum(M[i][i] for i in range(len(M)))

    def is_p_integral(self, p: int) -> bool:
        return all(c.denominator % p for c in self.coeffs)

    def denominator(self) -> int:
        d = 1
        for c in self.coeffs:
            d = lcm(d, c.denominator)
        return d

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CycNumber)):
            return (self - other).is_zero()
        return NotImplemented

    def __hash__(self):
        q = self.to_rational()
        if q is not None:
            return hash(q)
        return hash(self.coeffs)

    def __repr__(self):
        q = self.to_rational()
        if q is not None:
            return f"Cyc({q})"
        terms = [f"{c}*z{self.conductor}^{k}" for k, c in enumerate(self.coeffs) if c]
        return "Cyc(" + " + ".join(terms) + ")"

    def to_json(self):
        return {"conductor": self.conductor, "coeffs": [str(c) for c in self.coeffs]}


def _reduce_exponents(N: int, terms: dict) -> list:
    table = _power_table(N)
    d = len(table[0])
    out = [Fraction(0)] * d
    for e, c in terms.items():
        if not c:
            continue
        row = table[e % N]
        for k, r in enumerate(row):
            if r:
                out[k] += c * r
    return out


def cyc_embed_complex(x, digits: int = 15) -> complex:
    """Complex value under zeta_N -> exp(2 pi i/N), accurate to 10^-digits."""
    if not isinstance(x, CycNumber):
        return complex(x)
    with mpmath.workdps(digits + 15):
        N = x.conductor
        z = mpmath.exp(2j * mpmath.pi / N)
        s = mpmath.mpc(0)
        for k, c in enumerate(x.coeffs):
            if c:
                s += mpmath.mpf(c.numerator) / c.denominator * z ** k
        return complex(s)


def cyc_embed_mp(x):
    """mpmath complex value at the current working precision."""
    if not isinstance(x, CycNumber):
        return mpmath.mpf(as_fraction(x).numerator) / as_fraction(x).denominator
    z = mpmath.exp(2j * mpmath.pi / x.conductor)
    s = mpmath.mpc(0)
    for k, c in enumerate(x.coeffs):
        if c:
            s += mpmath.mpf(c.numerator) / c.denominator * z ** k
    return s


def primitive_root(p: int) -> int:
    fs = factorize(p - 1)
    for g in range(2, p + 1):
        if all(pow(g, (p - 1) // q, p) != 1 for q in fs):
            return g
    return 1


def cyc_to_padic(x: CycNumber, p: int, precision: int) -> PadicNumber:
    """Image of x under zeta_{p-1} -> teichmuller(g_p), g_p the least primitive root.

    Only defined when the conductor of x divides p-1 (or 2(p-1) folded back)."""
    N = x.conductor
    if (p - 1) % N:
        raise DomainError(f"no embedding of Q(zeta_{N}) into Q_{p} (need {N} | {p - 1})")
    w = teichmuller(primitive_root(p), p, precision)
    z = w ** ((p - 1) // N)
    acc = PadicNumber.zero(p, precision)
    zk = PadicNumber.from_rational(1, p, precision)
    for c in x.coeffs:
        if c:
            acc = acc + zk * c
        zk = zk * z
    return acc


# ---------------------------------------------------------------------------
# small exact linear algebra

def solve_linear(M, rhs):
    """Solve M x = rhs over a field (entries Fraction/CycNumber); M square invertible."""
    n = len(M)
    A = [list(row) + [rhs[i]] for i, row in enumerate(M)]
    for c in range(n):
        piv = next((r for r in range(c, n) if not _is_zero(A[r][c])), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c] if not isinstance(A[c][c], CycNumber) else A[c][c].inverse()
        A[c] = [v * inv for v in A[c]]
        for r in range(n):
            if r != c and not _is_zero(A[r][c]):
                f = A[r][c]
                A[r] = [v - f * w for v, w in zip(A[r], A[c])]
    return [A[i][n] for i in range(n)]


def det(M):
    n = len(M)
    A = [list(r) for r in M]
    d = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = -d
        d *= A[c][c]
        for r in range(c + 1, n):
            if A[r][c]:
                f = A[r][c] / A[c][c]
                A[r] = [v - f * w for v, w in zip(A[r], A[c])]
    return d


def _is_zero(x):
    if isinstance(x, CycNumber):
        return x.is_zero()
    if isinstance(x, PadicNumber):
        return x.is_zero()
    return x == 0


def rank_and_kernel(rows, ncols):
    """Row-reduce a list of rows (Fractions); return (rank, kernel basis)."""
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [v - f * w for v, w in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    free = [c for c in range(ncols) if c not in pivots]
    kernel = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -A[i][f]
        kernel.append(v)
    return len(pivots), kernel


# ---------------------------------------------------------------------------
# Laurent polynomials and rational functions in X1, X2

def _zero_like(c):
    return isinstance(c, (int, Fraction)) and c == 0 or _is_zero(c)


class LaurentPoly:
    """Finite sum of c * X1^i * X2^j with (i, j) in Z^2."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for k, c in (terms or {}).items():
            if not _zero_like(c):
                clean[k] = c
        self.terms = clean

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i, j, c=1):
        return cls({(i, j): c})

    @classmethod
    def from_univariate(cls, coeffs, var=0, shift=0):
        out = {}
        for k, c in enumerate(coeffs):
            key = (k + shift, 0) if var == 0 else (0, k + shift)
            out[key] = c
        return cls(out)

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        other = _as_lp(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t[k] + c if k in t else c
        return LaurentPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_lp(other))

    def __rsub__(self, other):
        return _as_lp(other) - self

    def __mul__(self, other):
        other = _as_lp(other)
        t = {}
        for (i, j), c in self.terms.items():
            for (k, l), d in other.terms.items():
                key = (i + k, j + l)
                v = c * d
                t[key] = t[key] + v if key in t else v
        return LaurentPoly(t)

    __rmul__ = __mul__

    def __pow__(self, e):
        r = LaurentPoly.const(1)
        for _ in range(e):
            r = r * self
        return r

    def evaluate(self, x1, x2):
        s = 0
        for (i, j), c in self.terms.items():
            s = s + c * _ipow(x1, i) * _ipow(x2, j)
        return s

    def substitute(self, f1: "LaurentRational", f2: "LaurentRational") -> "LaurentRational":
        out = LaurentRational(LaurentPoly())
        for (i, j), c in self.terms.items():
            out = out + f1 ** i * f2 ** j * c
        return out

    def __eq__(self, other):
        return (self - _as_lp(other)).is_zero()

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*X1^{i}*X2^{j}" for (i, j), c in sorted(self.terms.items()))


def _ipow(x, e):
    if e >= 0:
        return x ** e
    return 1 / (x ** (-e)) if not isinstance(x, CycNumber) else x.inverse() ** (-e)


def _as_lp(x):
    if isinstance(x, LaurentPoly):
        return x
    return LaurentPoly.const(x)


class LaurentRational:
    """numerator / denominator with Laurent polynomial parts; equality by
    cross-multiplication, so no gcd reduction is ever needed."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = _as_lp(num)
        self.den = _as_lp(1 if den is None else den)
        if self.den.is_zero():
            raise ZeroDivisionError("zero denominator")

    @classmethod
    def const(cls, c):
        return cls(LaurentPoly.const(c))

    @classmethod
    def X1(cls, power=1):
        return cls(LaurentPoly.monomial(power, 0))

    @classmethod
    def X2(cls, power=1):
        return cls(LaurentPoly.monomial(0, power))

    def _c(self, other):
        if isinstance(other, LaurentRational):
            return other
        return LaurentRational(_as_lp(other))

    def __add__(self, other):
        o = self._c(other)
        return LaurentRational(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return LaurentRational(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._c(other))

    def __rsub__(self, other):
        return self._c(other) - self

    def __mul__(self, other):
        o = self._c(other)
        return LaurentRational(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._c(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return LaurentRational(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._c(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return LaurentRational(self.den ** (-e), self.num ** (-e))
        return LaurentRational(self.num ** e, self.den ** e)

    def is_zero(self):
        return self.num.is_zero()

    def specialize(self, x1, x2):
        d = self.den.evaluate(x1, x2)
        if _zero_like(d):
            raise ZeroDivisionError("denominator vanishes at the specialization point")
        return self.num.evaluate(x1, x2) / d

    def substitute(self, f1, f2):
        return self.num.substitute(f1, f2) / self.den.substitute(f1, f2)

    def __eq__(self, other):
        return laurent_equal(self, self._c(other))

    def __repr__(self):
        return f"[{self.num}] / [{self.den}]"

    def to_json(self):
        def enc(c):
            if isinstance(c, CycNumber):
                return c.to_json()
            return str(c)

        def poly(lp):
            return [[i, j, enc(c)] for (i, j), c in sorted(lp.terms.items())]

        return {"numerator": poly(self.num), "denominator": poly(self.den)}


def laurent_equal(f: LaurentRational, g: LaurentRational) -> bool:
    return (f.num * g.den - g.num * f.den).is_zero()


def geometric_sum(c, var=0, start=0) -> LaurentRational:
    """Sum_{k >= start} (c X)^k in closed form, X = X1 (var=0) or X2."""
    X = LaurentRational.X1() if var == 0 else LaurentRational.X2()
    first = (X * c) ** start if start >= 0 else LaurentRational.const(_ipow(c, start)) * (X ** start)
    return first / (1 - X * c)


# ---------------------------------------------------------------------------
# symbolic periods r * (2 pi i)^k * Gamma(m)

class SymbolicPeriod:
    __slots__ = ("rational_part", "power_of_2pi_i", "gamma_arg")

    def __init__(self, rational_part, power_of_2pi_i=0, gamma_arg=1):
        if gamma_arg < 1:
            raise DomainError("gamma argument must be a positive integer")
        self.rational_part = as_fraction(rational_part)
        self.power_of_2pi_i = power_of_2pi_i
        self.gamma_arg = gamma_arg

    def canonical(self):
        """(rational, k) after expanding Gamma(m) = (m-1)!."""
        return self.rational_part * factorial(self.gamma_arg - 1), self.power_of_2pi_i

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SymbolicPeriod(self.rational_part * other, self.power_of_2pi_i, self.gamma_arg)
        r = self.rational_part * other.rational_part * factorial(other.gamma_arg - 1)
        return SymbolicPeriod(r, self.power_of_2pi_i + other.power_of_2pi_i, self.gamma_arg)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return SymbolicPeriod(self.rational_part / other, self.power_of_2pi_i, self.gamma_arg)
        r = self.rational_part / other.rational_part / factorial(other.gamma_arg - 1)
        return SymbolicPeriod(r, self.power_of_2pi_i - other.power_of_2pi_i, self.gamma_arg)

    def __eq__(self, other):
        if not isinstance(other, SymbolicPeriod):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def to_complex(self, digits=20):
        with mpmath.workdps(digits + 10):
            v = (mpmath.mpf(self.rational_part.numerator) / self.rational_part.denominator
                 * (2j * mpmath.pi) ** self.power_of_2pi_i * mpmath.gamma(self.gamma_arg))
            return complex(v)

    def to_mp(self):
        return (mpmath.mpf(self.rational_part.numerator) / self.rational_part.denominator
                * (2j * mpmath.pi) ** self.power_of_2pi_i * mpmath.gamma(self.gamma_arg))

    def __repr__(self):
        return f"{self.rational_part}*(2*pi*i)^{self.power_of_2pi_i}*Gamma({self.gamma_arg})"

    def to_json(self):
        return {"rational_part": str(self.rational_part),
                "power_of_2pi_i": self.power_of_2pi_i,
                "gamma_arg": self.gamma_arg}


class HalfPow:
    """Scalar c * p^(k/2): the p^(1/2)-grading used for Whittaker values."""

    __slots__ = ("coeff", "half_exp", "p")

    def __init__(self, coeff, half_exp, p):
        self.coeff = coeff
        self.half_exp = half_exp
        self.p = p

    def __mul__(self, other):
        if isinstance(other, HalfPow):
            return HalfPow(self.coeff * other.coeff, self.half_exp + other.half_exp, self.p)
        return HalfPow(self.coeff * other, self.half_exp, self.p)

    __rmul__ = __mul__

    def grade(self):
        return self.half_exp % 2

    def value(self):
        """Exact value; only available in grade 0."""
        if self.half_exp % 2:
            raise DomainError("odd power of p^(1/2) has no rational value")
        return self.coeff * Fraction(self.p) ** (self.half_exp // 2)

    def to_float(self):
        return complex(cyc_embed_complex(self.coeff)) * self.p ** (self.half_exp / 2)

    def __repr__(self):
        return f"{self.coeff}*{self.p}^({self.half_exp}/2)"
