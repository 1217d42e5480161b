"""Finite-level Schwartz functions on A_f^2 and the q-expansions of the
holomorphic Eisenstein series they define.

Conventions.  A function Phi on (Z/M)^2 has Fourier transform

    F(a, b) = M^-2 sum_{x, y} Phi(x, y) e((x a + y b) / M),

viewed as a function on (1/M)Z^2 periodic mod Z^2.  For k = j + 2 the series

    E(tau) = (k-1)! / (-2 pi i)^k  sum'_{(m, n)} F(Mm, Mn) / (m tau + n)^k

has the expansion  c_0 + sum_{N >= 1} c_N q^{N/M}  (q = e(tau)) with

    c_N = M^-1 sum_{A d = N} d^(k-1) sum_x [Phi(x, -d) z^(xA) + (-1)^k Phi(x, d) z^(-xA)],
    c_0 = -(-1)^k M^(k-2) / k * sum_s (sum_x Phi(x, s)) B_k(s / M),

z = e(1/M).  Group elements act by (g Phi)(v) = Phi(v g) on row vectors.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, gcd
import json

import mpmath

from .exact_arith import (CycNumber, DomainError, as_fraction, cyc_embed_mp,
                          factorize, lcm, vp)
from .characters import DirichletCharacter


def _to_cyc(v):
    if isinstance(v, CycNumber):
        return v
    return CycNumber.from_rational(as_fraction(v))


def _is_zero(v):
    return v.is_zero() if isinstance(v, CycNumber) else v == 0


class SchwartzData:
    """A function on (Z/M)^2 with values in Q or a cyclotomic field, stored
    sparsely."""

    __slots__ = ("modulus", "values")

    def __init__(self, modulus: int, values=None):
        if modulus < 1:
            raise DomainError("modulus must be positive")
        self.modulus = modulus
        self.values = {}
        for (x, y), v in (values or {}).items():
            key = (x % modulus, y % modulus)
            if isinstance(v, CycNumber):
                r = v.to_rational()
                v = v if r is None else r
            else:
                v = as_fraction(v)
            if not _is_zero(v):
                self.values[key] = self.values.get(key, 0) + v

    @classmethod
    def indicator(cls, modulus, points):
        return cls(modulus, {pt: 1 for pt in points})

    @classmethod
    def from_function(cls, modulus, f):
        return cls(modulus, {(x, y): f(x, y) for x in range(modulus) for y in range(modulus)})

    @classmethod
    def coset(cls, modulus, point, step):
        """Characteristic function of point + step Z^2 (step | modulus)."""
        if modulus % step:
            raise DomainError("step must divide the modulus")
        px, py = point
        return cls.indicator(modulus, [(px + step * i, py + step * j)
                                       for i in range(modulus // step) for j in range(modulus // step)])

    def __call__(self, x, y):
        return self.values.get((x % self.modulus, y % self.modulus), Fraction(0))

    def in_S0(self):
        return _is_zero(self(0, 0))

    def is_rational(self):
        return all(not isinstance(v, CycNumber) for v in self.values.values())

    def inflate(self, M2: int) -> "SchwartzData":
        if M2 % self.modulus:
            raise DomainError("can only inflate to a multiple of the modulus")
        return SchwartzData(M2, {(x, y): self(x, y) for x in range(M2) for y in range(M2)
                                 if not _is_zero(self(x, y))})

    def _common(self, other):
        M = lcm(self.modulus, other.modulus)
        return self.inflate(M), other.inflate(M)

    def __add__(self, other):
        a, b = self._common(other)
        vals = dict(a.values)
        for k, v in b.values.items():
            vals[k] = vals.get(k, 0) + v
        return SchwartzData(a.modulus, vals)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return SchwartzData(self.modulus, {k: v * c for k, v in self.values.items()})

    def translate(self, g) -> "SchwartzData":
        """(g Phi)(x, y) = Phi((x, y) g) for an integer matrix g invertible mod M."""
        M = self.modulus
        (a, b), (c, d) = g
        if gcd(a * d - b * c, M) != 1:
            raise DomainError("matrix is not invertible modulo the level")
        out = {}
        for x in range(M):
            for y in range(M):
                v = self(x * a + y * c, x * b + y * d)
                if not _is_zero(v):
                    out[(x, y)] = v
        return SchwartzData(M, out)

    def scale_argument(self, u: int) -> "SchwartzData":
        """x -> Phi(u x) with u a unit mod M."""
        return self.translate(((u, 0), (0, u)))

    def __eq__(self, other):
        if not isinstance(other, SchwartzData):
            return NotImplemented
        a, b = self._common(other)
        keys = set(a.values) | set(b.values)
        return all(_to_cyc(a(*k)) == _to_cyc(b(*k)) for k in keys)

    def to_json(self):
        def enc(v):
            return v.to_json() if isinstance(v, CycNumber) else str(v)
        return {"modulus": self.modulus,
                "values": [[x, y, enc(v)] for (x, y), v in sorted(self.values.items())]}

    @classmethod
    def from_json(cls, d):
        M = int(d["modulus"])
        if "support" in d:
            return cls.indicator(M, [tuple(pt) for pt in d["support"]])
        return cls(M, {(int(x), int(y)): Fraction(v) for x, y, v in d["values"]})


def r_chi_project(phi: SchwartzData, chi: DirichletCharacter) -> SchwartzData:
    """Average of chi^-1(a) Phi(a x, a y) over a in (Z/M)^x (chi^-1 being the
    restriction of the adelic character to the units)."""
    M = lcm(phi.modulus, chi.modulus)
    phi = phi.inflate(M)
    chi = chi.extend(M)
    units = [a for a in range(1, M + 1) if gcd(a, M) == 1] if M > 1 else [0]
    n = len(units)
    out = {}
    for (x, y) in {(x, y) for x in range(M) for y in range(M)}:
        acc = {}
        L = 1
        for a in units:
            v = phi(a * x, a * y)
            if _is_zero(v):
                continue
            t = chi.angle(a) if M > 1 else Fraction(0)
            t = (-t) % 1
            term = CycNumber.zeta(t.denominator, t.numerator) * v
            acc[a] = term
        if acc:
            s = sum(acc.values(), CycNumber.from_rational(0))
            s = s * Fraction(1, n)
            if not s.is_zero():
                r = s.to_rational()
                out[(x, y)] = r if r is not None else s
    return SchwartzData(M, out)


def coset_reps(p: int, t: int):
    return [((1, 0), (v * p ** t, 1 + w * p ** t)) for v in range(p) for w in range(p)]


def phi_pt(p: int, t: int, modulus=None) -> SchwartzData:
    """ch[(0, 1) + p^t Z_p^2]."""
    M = modulus or p ** t
    return SchwartzData.coset(M, (0, 1), p ** t)


def schwartz_distribution_check(p: int, t: int, reps=None):
    """Sum over cosets of the translates of Phi_{p,t+1} equals Phi_{p,t}.
    Returns (ok, witness point or None)."""
    if t < 1:
        raise DomainError("t must be at least 1")
    M = p ** (t + 1)
    reps = coset_reps(p, t) if reps is None else reps
    fine = phi_pt(p, t + 1)
    total = SchwartzData(M)
    for g in reps:
        total = total + fine.translate(g)
    coarse = phi_pt(p, t).inflate(M)
    for x in range(M):
        for y in range(M):
            if _to_cyc(total(x, y)) != _to_cyc(coarse(x, y)):
                return False, (x, y)
    return True, None


# ---------------------------------------------------------------------------
# q-expansions

def bernoulli_poly(k: int, x: Fraction, B=None) -> Fraction:
    B = B or bernoulli_numbers(k)
    return sum((Fraction(_binom(k, i)) * B[i] * x ** (k - i) for i in range(k + 1)), Fraction(0))


def _binom(n, r):
    from math import comb
    return comb(n, r)


def bernoulli_numbers(n: int):
    """B_0..B_n with B_1 = -1/2."""
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(_binom(m + 1, i) * B[i] for i in range(m)) / Fraction(m + 1))
    return B


class QExpansion:
    """c_0 + sum c_N q^(N/M); coefficients are CycNumbers."""

    __slots__ = ("weight", "level", "coeffs")

    def __init__(self, weight, level, coeffs):
        self.weight, self.level, self.coeffs = weight, level, list(coeffs)

    @property
    def trunc(self):
        return (len(self.coeffs) - 1) // self.level

    def coefficient(self, n):
        """Coefficient of q^n (integral exponent)."""
        return self.coeffs[n * self.level]

    def at_level(self, M2):
        if M2 % self.level:
            raise DomainError("can only move to a multiple of the level")
        s = M2 // self.level
        zero = CycNumber.from_rational(0)
        out = [zero] * ((len(self.coeffs) - 1) * s + 1)
        for i, c in enumerate(self.coeffs):
            out[i * s] = c
        return QExpansion(self.weight, M2, out)

    def _common(self, other):
        if self.weight != other.weight:
            raise DomainError("weights differ")
        M = lcm(self.level, other.level)
        a, b = self.at_level(M), other.at_level(M)
        n = min(len(a.coeffs), len(b.coeffs))
        return a.coeffs[:n], b.coeffs[:n], M

    def __add__(self, other):
        a, b, M = self._common(other)
        return QExpansion(self.weight, M, [x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return QExpansion(self.weight, self.level, [x * c for x in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        if self.weight != other.weight:
            return False
        a, b, _ = self._common(other)
        return all(x == y for x, y in zip(a, b))

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def evaluate(self, tau, dps=30):
        with mpmath.workdps(dps):
            tau = mpmath.mpmathify(tau)
            qM = mpmath.exp(2j * mpmath.pi * tau / self.level)
            s = mpmath.mpc(0)
            for N, c in enumerate(self.coeffs):
                if not c.is_zero():
                    s += cyc_embed_mp(c) * qM ** N
            return complex(s)

    def denominators(self):
        d = 1
        for c in self.coeffs:
            d = lcm(d, c.denominator())
        return d

    def is_integral_away_from(self, primes):
        d = self.denominators()
        for l in factorize(d) if d > 1 else {}:
            if l not in primes:
                return False
        return True

    def to_json(self):
        return {"weight": self.weight, "level": self.level,
                "exponent_denominator": self.level,
                "coefficients": [c.to_json() for c in self.coeffs]}


def _phi_exponent_table(phi: SchwartzData):
    """Each value as {exponent of zeta_L: rational}, with a common L."""
    L = phi.modulus
    for v in phi.values.values():
        if isinstance(v, CycNumber):
            L = lcm(L, v.conductor)
    table = {}
    for k, v in phi.values.items():
        if isinstance(v, CycNumber):
            s = L // v.conductor
            table[k] = {i * s: c for i, c in enumerate(v.coeffs) if c}
        else:
            table[k] = {0: v}
    return table, L


def qexp_eisenstein(phi: SchwartzData, j: int, N_trunc: int) -> QExpansion:
    """Expansion up to q^N_trunc (exponents N/M for N <= M * N_trunc)."""
    if j < 0:
        raise DomainError("j must be non-negative")
    if j == 0 and not phi.in_S0():
        raise DomainError("weight 2 needs Phi(0, 0) = 0: the lattice sum does not converge")
    k = j + 2
    M = phi.modulus
    table, L = _phi_exponent_table(phi)
    step = L // M
    sign = -1 if k % 2 else 1
    # column sums: cols[y] = {x: value-dict}
    rows = {}
    for (x, y), d in table.items():
        rows.setdefault(y, []).append((x, d))
    # constant term
    B = bernoulli_numbers(k)
    c0 = {}
    for s in range(M):
        for x, d in rows.get(s, []):
            bk = bernoulli_poly(k, Fraction(s, M), B)
            for e, c in d.items():
                c0[e] = c0.get(e, 0) + c * bk
    pref = Fraction(-sign * M ** k, k * M * M)
    coeffs = [CycNumber.from_exponents(L, {e: c * pref for e, c in c0.items()})]
    for N in range(1, M * N_trunc + 1):
        acc = {}
        for A in range(1, N + 1):
            if N % A:
                continue
            d_ = N // A
            w = Fraction(d_ ** (k - 1), M)
            for x, d in rows.get((-d_) % M, []):
                sh = (x * A % M) * step
                for e, c in d.items():
                    acc[(e + sh) % L] = acc.get((e + sh) % L, 0) + w * c
            for x, d in rows.get(d_ % M, []):
                sh = (-x * A % M) * step
                for e, c in d.items():
                    acc[(e + sh) % L] = acc.get((e + sh) % L, 0) + sign * w * c
        coeffs.append(CycNumber.from_exponents(L, acc))
    return QExpansion(k, M, coeffs)


# ---------------------------------------------------------------------------
# numerical lattice sum

def fourier_numeric(phi: SchwartzData):
    M = phi.modulus
    z = mpmath.exp(2j * mpmath.pi / M)
    vals = {k: cyc_embed_mp(v) for k, v in phi.values.items()}
    F = {}
    for a in range(M):
        for b in range(M):
            s = mpmath.mpc(0)
            for (x, y), v in vals.items():
                s += v * z ** ((x * a + y * b) % M)
            F[(a, b)] = s / M ** 2
    return F


def _row_sum(k, zz):
    """sum over l in Z of (zz + l)^-k for zz off the real integers."""
    return mpmath.zeta(k, zz) + (-1) ** k * mpmath.zeta(k, 1 - zz)


def lattice_sum_numeric(phi: SchwartzData, j: int, tau, cutoff: int = 40, dps: int = 30):
    """Returns (value, tail_bound).  For each m = A/M with |A| <= cutoff the sum
    over n is done exactly via Hurwitz zeta values; the discarded rows are
    bounded with |sum_l (z + l)^-k| <= (2 pi)^k/(k-1)! sum_d d^(k-1) exp(-2 pi d Im z)."""
    k = j + 2
    if k < 3 and not phi.in_S0():
        raise DomainError("weight 2 needs Phi(0, 0) = 0")
    M = phi.modulus
    with mpmath.workdps(dps):
        tau = mpmath.mpmathify(tau)
        if mpmath.im(tau) <= 0:
            raise DomainError("tau must lie in the upper half plane")
        F = fourier_numeric(phi)
        total = mpmath.mpc(0)
        for r in range(1, M):
            total += F[(0, r)] * _row_sum(k, mpmath.mpf(r) / M)
        if k % 2 == 0:
            total += F[(0, 0)] * 2 * mpmath.zeta(k)
        for A in range(1, cutoff + 1):
            for sgn in (1, -1):
                for r in range(M):
                    f = F[((sgn * A) % M, r)]
                    if abs(f) == 0:
                        continue
                    total += f * _row_sum(k, (sgn * A * tau + r) / M)
        pref = mpmath.factorial(k - 1) / (-2j * mpmath.pi) ** k
        value = pref * total
        fmax = max((abs(v) for v in F.values()), default=0)
        h = mpmath.im(tau) / M
        row_bound = lambda A: mpmath.nsum(lambda d: d ** (k - 1) * mpmath.exp(-2 * mpmath.pi * d * A * h),
                                          [1, mpmath.inf])
        tail = 2 * M * fmax * mpmath.nsum(row_bound, [cutoff + 1, mpmath.inf])
        tail *= (2 * mpmath.pi) ** k / mpmath.factorial(k - 1) * abs(pref)
        return complex(value), float(tail)


# ---------------------------------------------------------------------------
# smoothing and congruences

def c_smooth(phi: SchwartzData, c: int, j: int, N_trunc: int) -> QExpansion:
    """c^2 E_Phi - c^-j E_{Phi(c^-1 .)}."""
    M = phi.modulus
    if gcd(c, 6 * M) != 1:
        raise DomainError(f"c = {c} must be prime to 6 * level = {6 * M}")
    cinv = pow(c, -1, M) if M > 1 else 0
    E = qexp_eisenstein(phi, j, N_trunc)
    E2 = qexp_eisenstein(phi.scale_argument(cinv), j, N_trunc)
    return E.scale(c * c) - E2.scale(Fraction(1, c ** j))


def kummer_family(p: int, level_exp: int = 1) -> SchwartzData:
    """p-depleted data ch(Z_p x Z_p^x) at level p^level_exp."""
    M = p ** level_exp
    return SchwartzData.indicator(M, [(x, y) for x in range(M) for y in range(M) if y % p])


def _divisible(x: CycNumber, p: int, t: int) -> bool:
    return all(c == 0 or vp(c, p) >= t for c in x.coeffs)


def kummer_moment_check(phi: SchwartzData, p: int, t: int, j: int, j2: int,
                        n_index=None, N_trunc: int = 30):
    """Compare coefficients of the weight j+2 and j2+2 expansions mod p^t.
    Checks the single index n_index (exponent of q) if given, else all positive
    indices up to N_trunc.  Returns (ok, witness)."""
    if (j - j2) % ((p - 1) * p ** (t - 1)):
        raise DomainError("j and j' must be congruent modulo (p-1) p^(t-1)")
    N = N_trunc if n_index is None else n_index
    E1 = qexp_eisenstein(phi, j, N)
    E2 = qexp_eisenstein(phi, j2, N)
    idx = range(1, len(E1.coeffs)) if n_index is None else [n_index * phi.modulus]
    for i in idx:
        a, b = E1.coeffs[i], E2.coeffs[i]
        if not (a.is_p_integral(p) and b.is_p_integral(p)):
            raise DomainError(f"coefficient {i} is not {p}-integral")
        if not _divisible(a - b, p, t):
            return False, Fraction(i, phi.modulus)
    return True, None


def kummer_witness(phi, p, t, j, j2, N_trunc=30):
    """Like kummer_moment_check but without the congruence precondition (for
    negative controls)."""
    E1 = qexp_eisenstein(phi, j, N_trunc)
    E2 = qexp_eisenstein(phi, j2, N_trunc)
    for i in range(1, len(E1.coeffs)):
        if not _divisible(E1.coeffs[i] - E2.coeffs[i], p, t):
            return False, Fraction(i, phi.modulus)
    return True, None


def galois(x: CycNumber, u: int) -> CycNumber:
    N = x.conductor
    if gcd(u, N) != 1:
        raise DomainError("u must be prime to the conductor")
    return CycNumber.from_exponents(N, {(i * u) % N: c for i, c in enumerate(x.coeffs) if c})


def expected_translate(E: QExpansion, g) -> QExpansion:
    """Effect on the expansion of translating rational Phi by
    [[1, 0], [1, 1]] (c_N -> zeta_M^N c_N) or by diag(u, 1) (Galois action of u^-1)."""
    M = E.level
    (a, b), (c, d) = g
    if (a, b, c, d) == (1, 0, 1, 1):
        return QExpansion(E.weight, M, [x * CycNumber.zeta(M, N % M) if M > 1 else x
                                        for N, x in enumerate(E.coeffs)])
    if b == 0 and c == 0 and d == 1:
        ui = pow(a, -1, M) if M > 1 else 1
        return QExpansion(E.weight, M, [galois(x.lift_to(M) if M % x.conductor == 0 else x, ui)
                                        for x in E.coeffs])
    raise DomainError("only [[1,0],[1,1]] and diag(u,1) are modelled")


def dumps(obj) -> str:
    return json.dumps(obj.to_json(), sort_keys=True)
