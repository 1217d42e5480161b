"""Local Rankin-Selberg zeta integrals for GL3 x GL2 at a finite prime.

Variables: X1 = p^-(s1 + s2 - 1/2) and X2 = p^-(s1 - s2 + 1/2), so that every
quantity below is a rational function over Q (or a cyclotomic field) with no
square roots of p.  The point s1 = (1-j)/2, s2 = -j/2 is X1 = p^j, X2 = 1/p.

Haar measures: d^x x gives Z_p^x volume 1, dg gives GL2(Z_p) volume 1.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .exact_arith import (CycNumber, DomainError, LaurentPoly, LaurentRational,
                          _is_zero as _exact_is_zero)
from .characters import DirichletCharacter, gauss_sum, evaluate as char_value
from . import gl3_local
from .gl3_local import (LocalChar, LocalRepGL3, Refinement, RefinedData, SatakeParams,
                        E0_factor, e_p, sigma_L_coeffs, whittaker_torus_value)


def _zero(x):
    if isinstance(x, (int, Fraction)):
        return x == 0
    return _exact_is_zero(x)


def specialization_point(p, j):
    return Fraction(p) ** j, Fraction(1, p)


# ---------------------------------------------------------------------------
# inputs

class ZetaInput:
    __slots__ = ("refined", "eta1", "R", "weight_a")

    def __init__(self, refined: RefinedData, eta1: DirichletCharacter = None, R=None, weight_a=0):
        self.refined = refined
        self.eta1 = eta1 or DirichletCharacter.trivial(1)
        p = refined.p
        f = self.eta1.conductor()
        n1 = 0
        while f % p == 0:
            f //= p
            n1 += 1
        if f != 1:
            raise DomainError("eta1 must have p-power conductor")
        self.weight_a = weight_a
        n = max(1, n1)
        self.R = max(n, refined.r) if R is None else R
        if self.R < n:
            raise DomainError("Schwartz depth R must be at least n")

    @property
    def p(self):
        return self.refined.p

    @property
    def n1(self):
        f, k = self.eta1.conductor(), 0
        while f % self.p == 0:
            f //= self.p
            k += 1
        return k

    @property
    def n(self):
        return max(1, self.n1)

    def to_json(self):
        return {"refined": self.refined.to_json(), "eta1": self.eta1.to_json(),
                "R": self.R, "a": self.weight_a}

    @classmethod
    def from_json(cls, d):
        eta = DirichletCharacter.from_json(d["eta1"]) if d.get("eta1") else None
        return cls(RefinedData.from_json(d["refined"]), eta, d.get("R"), int(d.get("a", 0)))


# ---------------------------------------------------------------------------
# the unit integral

def unit_integral(p, eta: DirichletCharacter, a: int):
    """Integral over Z_p^x of psi(p^a x) chi(x) d^x x, where chi is the local
    character attached to eta (so chi = eta^-1 on units)."""
    f = eta.conductor() if eta is not None else 1
    if f == 1:
        if a >= 0:
            return Fraction(1)
        if a == -1:
            return Fraction(-1, p - 1)
        return Fraction(0)
    n1, q = 0, f
    while q % p == 0:
        q //= p
        n1 += 1
    if q != 1:
        raise DomainError("eta must have p-power conductor")
    if a != -n1:
        return Fraction(0)
    G = gauss_sum(eta.primitive().inverse())
    return G * Fraction(1, p ** n1 - p ** (n1 - 1))


def unit_integral_bruteforce(p, eta: DirichletCharacter, a: int):
    """The same integral as a finite average over (Z/p^k)^x."""
    n1 = 0
    f = eta.conductor() if eta is not None else 1
    while f % p == 0:
        f //= p
        n1 += 1
    if a >= 0 and n1 == 0:
        return Fraction(1)
    k = max(n1, -a, 1)
    q = p ** k
    inv = eta.primitive().inverse() if eta is not None else DirichletCharacter.trivial(1)
    L = q
    total = CycNumber.from_rational(0, L)
    for x in range(1, q + 1):
        if x % p == 0:
            continue
        # psi(p^a x) = exp(2 pi i x p^a); trivial when a >= 0
        add = CycNumber.zeta(q, (x * p ** (k + a)) % q) if a < 0 else CycNumber.from_rational(1)
        total = total + add * char_value(inv, x)
    r = total * Fraction(1, q - q // p)
    v = r.to_rational()
    return v if v is not None else r


# ---------------------------------------------------------------------------
# exact sequence tools: Berlekamp-Massey and 2D rational reconstruction

def berlekamp_massey(seq):
    """Shortest LFSR (C, L) over the field of the entries: C[0] = 1 and
    sum_{i<=L} C[i] s[k-i] = 0 for L <= k < len(seq)."""
    C, B = [Fraction(1)], [Fraction(1)]
    L, m, b = 0, 1, Fraction(1)
    for k in range(len(seq)):
        d = seq[k]
        for i in range(1, L + 1):
            if i < len(C):
                d = d + C[i] * seq[k - i]
        if _zero(d):
            m += 1
            continue
        coef = d / b
        T = list(C)
        need = len(B) + m
        if len(C) < need:
            C = C + [Fraction(0)] * (need - len(C))
        for i, bi in enumerate(B):
            C[i + m] = C[i + m] - coef * bi
        if 2 * L <= k:
            L, B, b, m = k + 1 - L, T, d, 1
        else:
            m += 1
    while len(C) > 1 and _zero(C[-1]):
        C.pop()
    return C, L


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for k, y in enumerate(b):
            out[i + k] = out[i + k] + x * y
    return out


def _same_poly(a, b):
    if len(a) != len(b):
        return False
    return all(_zero(x - y) for x, y in zip(a, b))


class ReconstructionError(DomainError):
    pass


def reconstruct_2d(coeff, N1, N2):
    """Rational function P(x, w) / (D1(x) D2(w)) whose power series has the
    coefficients coeff(i, k), 0 <= i < N1, 0 <= k < N2.

    Denominators come from Berlekamp-Massey on every row and column; the
    numerator is checked to vanish outside its degree bounds over the whole
    box, otherwise ReconstructionError is raised."""
    if min(N1, N2) < 4:
        raise ReconstructionError("need at least 4 coefficients in each direction")
    box = [[coeff(i, k) for k in range(N2)] for i in range(N1)]

    def combine(seqs):
        polys, bound = [], 0
        for s in seqs:
            C, L = berlekamp_massey(s)
            if 2 * L + 2 > len(s):
                raise ReconstructionError("truncation too short for the recurrence found")
            if not any(_same_poly(C, q) for q in polys):
                polys.append(C)
            bound = max(bound, L - (len(C) - 1))
        D = [Fraction(1)]
        for q in polys:
            D = _poly_mul(D, q)
        return D, bound + len(D) - 2

    D1, b1 = combine([[box[i][k] for i in range(N1)] for k in range(N2)])
    D2, b2 = combine([[box[i][k] for k in range(N2)] for i in range(N1)])
    if b1 + 2 >= N1 or b2 + 2 >= N2:
        raise ReconstructionError("numerator degree bound leaves no room for verification")
    # numerator = D1(x) D2(w) S(x, w) on the box
    num = {}
    for i in range(N1):
        for k in range(N2):
            v = Fraction(0)
            for u, d1 in enumerate(D1):
                if u > i or _zero(d1):
                    continue
                for t, d2 in enumerate(D2):
                    if t > k or _zero(d2):
                        continue
                    c = box[i - u][k - t]
                    if not _zero(c):
                        v = v + d1 * d2 * c
            if _zero(v):
                continue
            if i > b1 or k > b2:
                raise ReconstructionError(f"numerator coefficient at ({i}, {k}) outside the "
                                          f"degree bounds ({b1}, {b2})")
            num[(i, k)] = v
    den = LaurentPoly({(u, 0): c for u, c in enumerate(D1)}) * \
        LaurentPoly({(0, t): c for t, c in enumerate(D2)})
    return LaurentPoly(num), den


def _laurent_from_box(num, den, shift1, sign2):
    """Map the (x, w) reconstruction to X1^(i+shift1) X2^(sign2 k)."""
    def remap(lp, s1):
        return LaurentPoly({(i + s1, sign2 * k): c for (i, k), c in lp.terms.items()})
    return LaurentRational(remap(num, shift1), remap(den, 0))


# ---------------------------------------------------------------------------
# parahoric test data: brute force and closed form

def _prefactor(zi):
    p = zi.p
    return Fraction(1) / (Fraction(p) ** (2 * zi.R) * (1 - Fraction(1, p * p)))


def Y_coefficient(zi: ZetaInput, a: int, b: int):
    """Coefficient of X1^a X2^-b in Y: the (a, b) term of the torus sum."""
    p, n = zi.p, zi.n
    W = whittaker_torus_value(zi.refined, n + a, b)
    if _zero(W):
        return Fraction(0)
    I = unit_integral(p, zi.eta1, a)
    if _zero(I):
        return Fraction(0)
    return _prefactor(zi) * W * Fraction(p) ** a * I


def Y_bruteforce(zi: ZetaInput, N1=16, N2=16) -> LaurentRational:
    if zi.refined.kind not in ("principal_series", "steinberg", "supercuspidal", "custom"):
        raise DomainError("unsupported sigma class")
    a0 = -zi.n - 2
    num, den = reconstruct_2d(lambda i, k: Y_coefficient(zi, a0 + i, k), N1, N2)
    return _laurent_from_box(num, den, a0, -1)


def L_sigma_alpha(rd: RefinedData) -> LaurentRational:
    """L(sigma x alpha, s2 - s1 + 1/2) as a function of X2: T = alpha / (p X2)."""
    T = LaurentRational.X2(-1) * (rd.alpha_p * Fraction(1, rd.p))
    den = LaurentRational.const(0)
    for k, c in enumerate(rd.sigma_den):
        den = den + T ** k * c
    return 1 / den


def Y_closed_form(zi: ZetaInput, j: int = None):
    """Closed form of Y; a LaurentRational when j is None, else the value at
    (s1, s2) = ((1-j)/2, -j/2)."""
    p, n, rd = zi.p, zi.n, zi.refined
    al = rd.alpha_p
    base = Fraction(1) / (Fraction(p) ** (2 * zi.R + n) * (1 - Fraction(1, p)) * (1 - Fraction(1, p * p)))
    if j is not None:
        ep = e_p(al, zi.eta1, j, p)
        rep, ref = local_rep_from_refined(rd)
        E0 = E0_factor(rep, ref)
        return base * al ** n * ep * E0 * exterior_square_L(rep, Fraction(1))
    Lsa = L_sigma_alpha(rd)
    if zi.n1 >= 1:
        G = gauss_sum(zi.eta1.primitive().inverse())
        return LaurentRational.X1(-n) * (base * Fraction(1, p ** n)) * Lsa * G
    X1 = LaurentRational.X1()
    ratio = (1 - LaurentRational.X1(-1) * (1 / (al * p))) / (1 - X1 * al)
    return ratio * (base * al) * Lsa


# ---------------------------------------------------------------------------
# representation-level L-data

def local_rep_from_refined(rd: RefinedData):
    """A GL3 representation with P1-refinement alpha and GL2 piece sigma."""
    p = rd.p
    if rd.kind == "principal_series":
        B, C = _roots_of_quadratic(rd)
        rep = LocalRepGL3("principal_series", [LocalChar(rd.alpha_p, p), LocalChar(B, p),
                                                LocalChar(C, p)], p)
    elif rd.kind == "steinberg":
        # L(St2 x lam, s) = (1 - C p^-s)^-1 with C = lam(p) p^(-1/2)
        C = -rd.sigma_den[1]
        rep = LocalRepGL3("induced_theta_st", [LocalChar(rd.alpha_p, p), LocalChar(C, p, half=1)], p)
    else:
        raise DomainError(f"no GL3 model attached to sigma class {rd.kind!r}")
    return rep, Refinement(1, rep.chars[0])


def _roots_of_quadratic(rd):
    s = -rd.sigma_den[1]
    q = rd.sigma_den[2]
    # rational roots only (the sampled data are built that way)
    from math import isqrt
    disc = s * s - 4 * q
    num, den = disc.numerator, disc.denominator
    rn, rdn = isqrt(num) if num >= 0 else -1, isqrt(den)
    if num < 0 or rn * rn != num or rdn * rdn != den:
        raise DomainError("principal series with irrational Satake parameters: pass them explicitly")
    r = Fraction(rn, rdn)
    return (s + r) / 2, (s - r) / 2


def L_roots(rep: LocalRepGL3):
    """Inverse roots of L(rep, s) in T = p^-s, as exact scalars."""
    out = []
    for ch in _langlands_chars(rep):
        if not ch.ramified:
            out.append(ch.value().value())
    return out


def _langlands_chars(rep):
    if rep.kind == "principal_series":
        return list(rep.chars)
    if rep.kind == "induced_theta_st":
        theta, lam = rep.chars
        return [theta, lam.abs_power(1)]
    if rep.kind == "induced_theta_sc":
        return [rep.chars[0]]
    if rep.kind == "steinberg_twist":
        return [rep.chars[0].abs_power(2)]
    return []


def exterior_square_L(rep: LocalRepGL3, X):
    """L(wedge^2 rep) evaluated at T = X."""
    if rep.kind == "principal_series":
        a, b, c = (ch for ch in rep.chars)
        pairs = [a * b, b * c, c * a]
    elif rep.kind == "induced_theta_st":
        theta, lam = rep.chars
        pairs = [theta * lam.abs_power(1), lam * lam]
    else:
        raise DomainError("exterior square implemented for principal series and theta x St")
    v = Fraction(1)
    for ch in pairs:
        if not ch.ramified:
            v = v / (1 - ch.value().value() * X)
    return v


def omega_at_p(rep):
    return rep.central_char.value().value()


# ---------------------------------------------------------------------------
# gamma factors

def L_factor_rational(roots, var=1, scale=1):
    """prod 1 / (1 - r * scale * X) with X = X1 (var=0) or X2 (var=1)."""
    X = LaurentRational.X1() if var == 0 else LaurentRational.X2()
    out = LaurentRational.const(1)
    for r in roots:
        out = out / (1 - X * (r * scale))
    return out


def gamma_factor(roots, dual_roots=None, p=None, var=1, twist=1):
    """gamma(pi x chi, s) = L(pi^v x chi^-1, 1 - s) / L(pi x chi, s), epsilon = 1,
    in the variable X = p^-s; twist is chi(p) for unramified chi."""
    if p is None:
        raise DomainError("gamma_factor needs p")
    if dual_roots is None:
        dual_roots = [1 / Fraction(r) if not isinstance(r, CycNumber) else r.inverse() for r in roots]
    X = LaurentRational.X1() if var == 0 else LaurentRational.X2()
    Xd = (X * p) ** -1  # p^-(1-s)
    num = LaurentRational.const(1)
    for r in dual_roots:
        num = num / (1 - Xd * (r / twist if not isinstance(twist, int) or twist != 1 else r))
    den = L_factor_rational(roots, var, twist)
    return num / den


def gamma_involution_holds(roots, p, dual_roots=None):
    """gamma(pi, s) gamma(pi^v, 1 - s) = 1 as rational functions."""
    if dual_roots is None:
        dual_roots = [1 / Fraction(r) for r in roots]
    g = gamma_factor(roots, dual_roots, p)
    gd = gamma_factor(dual_roots, roots, p)
    X2 = LaurentRational.X2()
    gd_sub = gd.substitute(LaurentRational.X1(), (X2 * p) ** -1)
    return g * gd_sub == 1


def Z_from_Y(y, gamma):
    if isinstance(y, LaurentRational):
        if not isinstance(gamma, LaurentRational):
            gamma = LaurentRational.const(gamma)
        if gamma.is_zero():
            raise DomainError("gamma factor vanishes identically")
        return y / gamma
    if _zero(gamma):
        raise DomainError("gamma factor vanishes at the point")
    return y / gamma


def parahoric_gamma(zi: ZetaInput) -> LaurentRational:
    """gamma(Pi x omega^-1, s1 - s2 + 1/2) for the parahoric test data (eta2 = 1)."""
    rep, _ = local_rep_from_refined(zi.refined)
    om = omega_at_p(rep)
    return gamma_factor(L_roots(rep), L_roots(rep.dual()), zi.p, 1, 1 / om)


def Z_closed_display(zi: ZetaInput, j: int):
    """The Z display at the critical point (epsilon = 1)."""
    p, n, rd = zi.p, zi.n, zi.refined
    rep, ref = local_rep_from_refined(rd)
    om = omega_at_p(rep)
    base = Fraction(1) / (Fraction(p) ** (2 * zi.R + n) * (1 - Fraction(1, p)) * (1 - Fraction(1, p * p)))
    L1 = Fraction(1)
    for r in L_roots(rep):
        L1 = L1 / (1 - r / om / p)
    return base * rd.alpha_p ** n * e_p(rd.alpha_p, zi.eta1, j, p) * E0_factor(rep, ref) * L1


# ---------------------------------------------------------------------------
# spherical data

def complete_homogeneous(params, K):
    """h_0..h_K of the given variables via the elementary-symmetric recurrence."""
    e = [Fraction(1)]
    for x in params:
        e = e + [Fraction(0)]
        for i in range(len(e) - 1, 0, -1):
            e[i] = e[i] + e[i - 1] * x
    h = [Fraction(1)]
    for k in range(1, K + 1):
        v = Fraction(0)
        for i in range(1, min(k, len(e) - 1) + 1):
            v = v + (-1) ** (i + 1) * e[i] * h[k - i]
        h.append(v)
    return h


def schur(lam, params, h=None):
    """Jacobi-Trudi: s_lam = det(h_{lam_i - i + j}); lam may have negative
    parts, handled by shifting with the determinant."""
    lam = list(lam)
    n = len(params)
    lam = lam + [0] * (n - len(lam))
    shift = min(0, lam[-1])
    if shift < 0:
        det_ = Fraction(1)
        for x in params:
            det_ = det_ * x
        return schur([l - shift for l in lam], params) / det_ ** (-shift)
    K = lam[0] + n
    h = h or complete_homogeneous(params, K)
    M = [[(h[lam[i] - i + j] if lam[i] - i + j >= 0 else Fraction(0)) for j in range(n)]
         for i in range(n)]
    return _det(M)


def schur_bialternant(lam, params):
    """a_{lam+delta} / a_delta; needs distinct parameters."""
    n = len(params)
    lam = list(lam) + [0] * (n - len(lam))
    num = _det([[x ** (lam[j] + n - 1 - j) for j in range(n)] for x in params])
    den = _det([[x ** (n - 1 - j) for j in range(n)] for x in params])
    if _zero(den):
        raise ZeroDivisionError("parameters are not distinct")
    return num / den


def _det(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    return sum(((-1) ** j) * M[0][j] * _det([row[:j] + row[j + 1:] for row in M[1:]])
               for j in range(n) if not _zero(M[0][j]))


def spherical_W3(s: SatakeParams, lam):
    """Spherical Whittaker function at diag(p^l1, p^l2, p^l3), W(1) = 1."""
    if not (lam[0] >= lam[1] >= lam[2]):
        return Fraction(0)
    return Fraction(s.p) ** (lam[2] - lam[0]) * schur(lam, list(s.triple))


def _gl2_monomials(lam):
    """s_(l1,l2)(m1, m2) as {(i, k): 1} for the monomials m1^i m2^k."""
    l1, l2 = lam
    return {(l2 + t, l1 - t): 1 for t in range(l1 - l2 + 1)}


def spherical_Z(s: SatakeParams, chi1_p=1, chi2_p=1, N=30) -> LaurentRational:
    """Torus sum for Z with spherical W and W_Phi, reconstructed from the
    N x N box of X1, X2 coefficients."""
    p = s.p
    chi1_p, chi2_p = Fraction(chi1_p), Fraction(chi2_p)
    box = {}
    # t = diag(p^l1, p^l2): W(iota(t)) W_Phi(t) chi1(det) |det|^(s1-1/2) delta_B^-1(t)
    for l1 in range(N):
        for l2 in range(min(l1, N - 1 - l1) + 1):
            w3 = spherical_W3(s, (l1, l2, 0))
            if _zero(w3):
                continue
            # W_Phi(t) = p^-(l1-l2)/2 s_lam(m1, m2), m1 = p^(1/2 - s2), m2 = p^(s2 - 1/2)/chi2(p);
            # the s-dependence combines with chi1(p)^|lam| p^-|lam| s1 into X1^i X2^k
            for (i, k), c in _gl2_monomials((l1, l2)).items():
                # half powers of p: W_Phi -(l1-l2), delta_B^-1 2(l1-l2), |det|^(s1-1/2)
                # gives l1+l2, the monomial (i-k), and rewriting in X1, X2 gives (k-i)
                half = -(l1 - l2) + 2 * (l1 - l2) + (l1 + l2) + (i - k) + (k - i)
                if half % 2:
                    raise AssertionError("half-integral power in spherical sum")
                coef = w3 * Fraction(p) ** (half // 2) * chi1_p ** (i + k) / chi2_p ** k * c
                box[(i, k)] = box.get((i, k), 0) + coef
    num, den = reconstruct_2d(lambda i, k: box.get((i, k), Fraction(0)), N // 2, N // 2)
    return _laurent_from_box(num, den, 0, 1)


def spherical_Y(s: SatakeParams, chi1_p=1, chi2_p=1, N=30) -> LaurentRational:
    """Y for spherical data: L(chi2, 2 s2) times the torus sum
    sum_{m, l >= 0} s_(m, 0, -l) (chi1(p) X1)^m ((chi2/chi1)(p) / (p X2))^l."""
    p = s.p
    chi1_p, chi2_p = Fraction(chi1_p), Fraction(chi2_p)
    params = list(s.triple)
    cache = {}

    def coeff(m, l):
        if (m, l) not in cache:
            cache[(m, l)] = schur((m, 0, -l), params) * chi1_p ** m * (chi2_p / chi1_p) ** l \
                / Fraction(p) ** l
        return cache[(m, l)]

    num, den = reconstruct_2d(coeff, N // 2, N // 2)
    body = _laurent_from_box(num, den, 0, -1)
    X1 = LaurentRational.X1()
    # p^(-2 s2) = X1 / (p X2)
    L2 = 1 / (1 - X1 * LaurentRational.X2(-1) * (chi2_p / p))
    return body * L2


def spherical_gamma(s: SatakeParams, chi1_p=1, chi2_p=1):
    """gamma(pi x chi1/chi2, s1 - s2 + 1/2) for unramified data."""
    roots = list(s.triple)
    return gamma_factor(roots, None, s.p, 1, Fraction(chi1_p) / Fraction(chi2_p))


def Z_normalized(z, s: SatakeParams, chi1_p=1, chi2_p=1):
    """Z / (L(pi x chi1, s1 + s2 - 1/2) L(pi x chi1 chi2^-1, s1 - s2 + 1/2))."""
    chi1_p, chi2_p = Fraction(chi1_p), Fraction(chi2_p)
    L1 = L_factor_rational(s.triple, 0, chi1_p)
    L2 = L_factor_rational(s.triple, 1, chi1_p / chi2_p)
    if isinstance(z, LaurentRational):
        return z / (L1 * L2)
    raise DomainError("Z_normalized expects a rational function")
