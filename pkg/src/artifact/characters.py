"""Dirichlet characters stored by generator images.

Generator convention for (Z/M)^x: for each prime power q = l^e exactly dividing M
(in increasing order of l):
  * l odd: the least positive integer g that is a primitive root mod l^e,
  * l = 2, e = 2: -1,
  * l = 2, e >= 3: -1 and then 5,
each lifted by CRT to be congruent to 1 modulo M/q.  A character is the tuple of
angles theta_i in Q/Z with chi(g_i) = exp(2 pi i theta_i).

Adelic dictionary: the Hecke character attached to chi takes the value chi(l) at
a uniformiser of Q_l for l not dividing M, and restricts to chi^{-1} on the
units at primes dividing M.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd
import json

from .exact_arith import (CycNumber, DomainError, PadicNumber, factorize,
                          teichmuller, primitive_root, lcm, euler_phi)


def _crt(residues, moduli):
    x, m = 0, 1
    for r, n in zip(residues, moduli):
        # solve x + m*t = r mod n
        t = ((r - x) * pow(m, -1, n)) % n
        x += m * t
        m *= n
    return x % m


def _prime_power_generators(l, e):
    q = l ** e
    if l == 2:
        if e == 1:
            return []
        if e == 2:
            return [(q - 1, 2)]
        return [(q - 1, 2), (5, 2 ** (e - 2))]
    order = euler_phi(q)
    fs = factorize(order)
    for g in range(2, q):
        if gcd(g, l) == 1 and all(pow(g, order // r, q) != 1 for r in fs):
            return [(g, order)]
    raise AssertionError("no primitive root")


@lru_cache(maxsize=None)
def unit_group(M: int):
    """(generators, orders, prime-power factor index) for (Z/M)^x."""
    fac = sorted(factorize(M).items())
    mods = [l ** e for l, e in fac]
    gens, orders, owner = [], [], []
    for idx, (l, e) in enumerate(fac):
        for g, o in _prime_power_generators(l, e):
            res = [1] * len(mods)
            res[idx] = g
            gens.append(_crt(res, mods) if mods else 1)
            orders.append(o)
            owner.append(idx)
    return tuple(gens), tuple(orders), tuple(owner)


@lru_cache(maxsize=None)
def discrete_log_table(M: int) -> dict:
    """unit a mod M -> exponent vector w.r.t. unit_group(M)."""
    gens, orders, _ = unit_group(M)
    table = {}
    for exps in product(*[range(o) for o in orders]):
        a = 1
        for g, k in zip(gens, exps):
            a = a * pow(g, k, M) % M
        table[a % M] = exps
    if M == 1:
        table = {0: ()}
    return table


class DirichletCharacter:
    __slots__ = ("modulus", "angles", "label", "_cond")

    def __init__(self, modulus: int, angles, label: str = ""):
        gens, orders, _ = unit_group(modulus)
        angles = tuple(Fraction(t) % 1 for t in angles)
        if len(angles) != len(gens):
            raise DomainError(f"modulus {modulus} needs {len(gens)} generator images")
        for t, o in zip(angles, orders):
            if (t * o) % 1:
                raise DomainError("generator image has order not dividing the generator order")
        self.modulus = modulus
        self.angles = angles
        self.label = label
        self._cond = None

    # constructors
    @classmethod
    def trivial(cls, modulus: int = 1):
        return cls(modulus, [0] * len(unit_group(modulus)[0]), "trivial")

    @classmethod
    def from_exponents(cls, modulus: int, exps, label=""):
        _, orders, _ = unit_group(modulus)
        return cls(modulus, [Fraction(k, o) for k, o in zip(exps, orders)], label)

    @classmethod
    def from_values(cls, modulus: int, angle_of):
        """Build from a function a -> angle (in Q/Z) given on units."""
        gens, _, _ = unit_group(modulus)
        return cls(modulus, [angle_of(g) for g in gens])

    @property
    def generator_images(self):
        return [CycNumber.zeta(t.denominator, t.numerator) for t in self.angles]

    def angle(self, a: int):
        """theta with chi(a) = exp(2 pi i theta), or None when gcd(a, M) > 1."""
        M = self.modulus
        if gcd(a, M) != 1:
            return None
        exps = discrete_log_table(M)[a % M]
        return sum((k * t for k, t in zip(exps, self.angles)), Fraction(0)) % 1

    def order(self) -> int:
        o = 1
        for t in self.angles:
            o = lcm(o, t.denominator)
        return o

    def __call__(self, a):
        return evaluate(self, a)

    def __mul__(self, other):
        M = lcm(self.modulus, other.modulus)
        a, b = self.extend(M), other.extend(M)
        return DirichletCharacter(M, [x + y for x, y in zip(a.angles, b.angles)])

    def inverse(self):
        return DirichletCharacter(self.modulus, [-t for t in self.angles], self.label + "^-1" if self.label else "")

    conj = inverse

    def extend(self, M: int) -> "DirichletCharacter":
        """Same character viewed modulo a multiple M of the modulus."""
        if M % self.modulus:
            raise DomainError("can only extend to a multiple of the modulus")
        if M == self.modulus:
            return self
        return DirichletCharacter.from_values(M, lambda g: self.angle(g % self.modulus))

    def is_trivial(self):
        return all(t == 0 for t in self.angles)

    def __eq__(self, other):
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        M = lcm(self.modulus, other.modulus)
        return self.extend(M).angles == other.extend(M).angles

    def __hash__(self):
        return hash((self.conductor(), self.primitive().angles))

    def conductor(self) -> int:
        if self._cond is None:
            self._cond = _conductor(self)
        return self._cond

    def is_primitive(self):
        return self.conductor() == self.modulus

    def primitive(self) -> "DirichletCharacter":
        f = self.conductor()
        if f == self.modulus:
            return self
        M = self.modulus

        def ang(g):
            a = g
            while gcd(a, M) != 1:
                a += f
            return self.angle(a)

        return DirichletCharacter.from_values(f, ang)

    def __repr__(self):
        return f"DirichletCharacter(mod {self.modulus}, angles={[str(t) for t in self.angles]})"

    def to_json(self):
        _, orders, _ = unit_group(self.modulus)
        return {"modulus": self.modulus,
                "generator_images": [int(t * o) for t, o in zip(self.angles, orders)],
                "generator_orders": list(orders),
                "label": self.label}

    @classmethod
    def from_json(cls, d):
        return cls.from_exponents(int(d["modulus"]), d["generator_images"], d.get("label", ""))


def _conductor(chi: DirichletCharacter) -> int:
    M = chi.modulus
    divisors = sorted(d for d in range(1, M + 1) if M % d == 0)
    units = [a for a in range(1, M + 1) if gcd(a, M) == 1]
    for f in divisors:
        if all(chi.angle(a) == 0 for a in units if (a - 1) % f == 0):
            return f
    return M


def characters_mod(M: int):
    _, orders, _ = unit_group(M)
    return [DirichletCharacter.from_exponents(M, e) for e in product(*[range(o) for o in orders])]


def evaluate(chi: DirichletCharacter, a: int) -> CycNumber:
    t = chi.angle(a)
    if t is None:
        return CycNumber.from_rational(0)
    return CycNumber.zeta(t.denominator, t.numerator)


def gauss_sum(chi: DirichletCharacter) -> CycNumber:
    """G(chi) = sum_a chi(a) exp(2 pi i a / N) for primitive chi of conductor N."""
    if not chi.is_primitive():
        raise DomainError(f"character is not primitive (conductor {chi.conductor()} < modulus "
                          f"{chi.modulus}); reduce with .primitive() first")
    N = chi.modulus
    L = lcm(N, chi.order())
    terms = {}
    for a in range(1, N + 1):
        t = chi.angle(a)
        if t is None:
            continue
        e = (int(t * L) + a * (L // N)) % L
        terms[e] = terms.get(e, 0) + 1
    return CycNumber.from_exponents(L, terms)


def parity(chi: DirichletCharacter) -> int:
    if chi.modulus <= 2:
        return 1
    return 1 if chi.angle(chi.modulus - 1) == 0 else -1


def conductor(chi: DirichletCharacter) -> int:
    return chi.conductor()


class CharacterDecomposition:
    __slots__ = ("at_p", "away_p")

    def __init__(self, at_p, away_p):
        self.at_p = at_p
        self.away_p = away_p

    def __repr__(self):
        return f"CharacterDecomposition(at_p={self.at_p!r}, away_p={self.away_p!r})"


def decompose_at_p(chi: DirichletCharacter, p: int) -> CharacterDecomposition:
    M = chi.modulus
    q = 1
    while M % (q * p) == 0:
        q *= p
    Mp = M // q

    def at(g):
        return chi.angle(_crt([g % q, 1], [q, Mp]) if Mp > 1 else g % q)

    def away(g):
        return chi.angle(_crt([1, g % Mp], [q, Mp]) if q > 1 else g % Mp)

    return CharacterDecomposition(DirichletCharacter.from_values(q, at),
                                  DirichletCharacter.from_values(Mp, away))


def padic_value(chi: DirichletCharacter, a: int, p: int, precision: int = 20) -> PadicNumber:
    """chi(a) in Z_p, sending exp(2 pi i/(p-1)) to the Teichmuller lift of the
    least primitive root mod p."""
    o = chi.order()
    if (p - 1) % o:
        raise DomainError(f"character of order {o} has no embedding in Q_{p} "
                          f"(order must divide {p - 1})")
    t = chi.angle(a)
    if t is None:
        return PadicNumber.zero(p, precision)
    w = teichmuller(primitive_root(p), p, precision)
    return w ** int(t * (p - 1))


def quadratic_character(M: int) -> DirichletCharacter:
    """The Legendre-type character for an odd prime M (or its unique order-2
    character for a cyclic unit group)."""
    gens, orders, _ = unit_group(M)
    if len(gens) != 1:
        raise DomainError("quadratic_character expects a cyclic unit group")
    return DirichletCharacter(M, [Fraction(1, 2)], "quadratic")


def dumps(chi: DirichletCharacter) -> str:
    return json.dumps(chi.to_json(), sort_keys=True)
