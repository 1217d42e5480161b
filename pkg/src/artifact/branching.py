"""The GL3 representation of highest weight (a, 0, -a), its restriction to
H = GL2 x GL1 (embedded block-diagonally) and the branching maps.

Model: V = Sym^a(std) (x) Sym^a(std^*) modulo the invariant r = x1 y1 + x2 y2 + x3 y3.
g acts by x_j -> sum_i g_ij x_i and y_j -> sum_i (g^-T)_ij y_i.  A basis is given
by the monomials x^A y^B with |A| = |B| = a and not both A1, B1 > 0; the normal
form uses x1 y1 = -x2 y2 - x3 y3.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial

from .exact_arith import DomainError, rank_and_kernel


def _compositions(total, parts=3):
    if parts == 1:
        yield (total,)
        return
    for k in range(total, -1, -1):
        for rest in _compositions(total - k, parts - 1):
            yield (k,) + rest


def dimension(a: int) -> int:
    if a < 0:
        raise DomainError("a must be non-negative")
    return (a + 1) ** 3


def h_rep_dimension(r, s, t=0):
    if r < s:
        raise DomainError("need r >= s")
    return r - s + 1


@lru_cache(maxsize=None)
def basis(a: int):
    out = []
    for A in _compositions(a):
        for B in _compositions(a):
            if A[0] and B[0]:
                continue
            out.append(A + B)
    return tuple(out)


@lru_cache(maxsize=None)
def _index(a):
    return {m: i for i, m in enumerate(basis(a))}


def weight(mono):
    return tuple(mono[i] - mono[i + 3] for i in range(3))


def _add(d, k, v):
    nv = d.get(k, 0) + v
    if nv:
        d[k] = nv
    else:
        d.pop(k, None)


@lru_cache(maxsize=None)
def _normal_form_mono(mono):
    if not (mono[0] and mono[3]):
        return ((mono, Fraction(1)),)
    m = list(mono)
    m[0] -= 1
    m[3] -= 1
    out = {}
    for k in (1, 2):
        t = list(m)
        t[k] += 1
        t[k + 3] += 1
        for mm, c in _normal_form_mono(tuple(t)):
            _add(out, mm, -c)
    return tuple(out.items())


def normal_form(poly: dict) -> dict:
    out = {}
    for mono, c in poly.items():
        for mm, d in _normal_form_mono(mono):
            _add(out, mm, c * d)
    return out


def lie_action(k: int, l: int, v: dict) -> dict:
    """E_kl (0-indexed) acting on a vector: x_k d/dx_l - y_l d/dy_k."""
    out = {}
    for mono, c in v.items():
        if mono[l]:
            m = list(mono)
            e = m[l]
            m[l] -= 1
            m[k] += 1
            _add(out, tuple(m), c * e)
        if mono[3 + k]:
            m = list(mono)
            e = m[3 + k]
            m[3 + k] -= 1
            m[3 + l] += 1
            _add(out, tuple(m), -c * e)
    return normal_form(out)


def _inverse3(g):
    from .exact_arith import solve_linear
    cols = [solve_linear([[Fraction(x) for x in row] for row in g],
                         [Fraction(int(i == j)) for i in range(3)]) for j in range(3)]
    return [[cols[j][i] for j in range(3)] for i in range(3)]


def _poly_mul(p, q):
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            _add(out, tuple(x + y for x, y in zip(m1, m2)), c1 * c2)
    return out


def group_action(g, v: dict) -> dict:
    """g in GL3(Q) (3x3 nested lists) acting on a vector of V."""
    gi = _inverse3(g)
    git = [[gi[j][i] for j in range(3)] for i in range(3)]
    lin = []
    for j in range(3):
        lin.append({tuple(int(t == i) for t in range(6)): Fraction(g[i][j])
                    for i in range(3) if g[i][j]})
    for j in range(3):
        lin.append({tuple(int(t == 3 + i) for t in range(6)): git[i][j]
                    for i in range(3) if git[i][j]})
    cache = {}

    def power(var, e):
        if (var, e) not in cache:
            r = {(0,) * 6: Fraction(1)}
            for _ in range(e):
                r = _poly_mul(r, lin[var])
            cache[(var, e)] = r
        return cache[(var, e)]

    out = {}
    for mono, c in v.items():
        term = {(0,) * 6: Fraction(c)}
        for var in range(6):
            if mono[var]:
                term = _poly_mul(term, power(var, mono[var]))
        for m, d in term.items():
            _add(out, m, d)
    return normal_form(out)


def iota(gamma, z):
    return [[gamma[0][0], gamma[0][1], 0], [gamma[1][0], gamma[1][1], 0], [0, 0, z]]


def weight_space(a, w):
    return [m for m in basis(a) if weight(m) == tuple(w)]


def _matrix_on(a, op, src, tgt):
    idx = {m: i for i, m in enumerate(tgt)}
    cols = []
    for m in src:
        img = op({m: Fraction(1)})
        col = [Fraction(0)] * len(tgt)
        for mm, c in img.items():
            if mm not in idx:
                raise AssertionError("operator left the target weight space")
            col[idx[mm]] = c
        cols.append(col)
    return [[cols[j][i] for j in range(len(src))] for i in range(len(tgt))]


def highest_weight_vectors(a, w):
    """Basis of ker E12 on the weight space w (vectors as dicts)."""
    src = weight_space(a, w)
    if not src:
        return []
    tgt = weight_space(a, (w[0] + 1, w[1] - 1, w[2]))
    if not tgt:
        return [{m: Fraction(1)} for m in src]
    M = _matrix_on(a, lambda v: lie_action(0, 1, v), src, tgt)
    _, ker = rank_and_kernel(M, len(src))
    return [{m: c for m, c in zip(src, vec) if c} for vec in ker]


class BranchingDecomp:
    __slots__ = ("a", "table", "extra")

    def __init__(self, a, table, extra):
        self.a, self.table, self.extra = a, table, extra

    def total_dimension(self):
        return sum(mult * (j + i + 1) for (i, j), mult in self.table.items()) + \
            sum(mult * (w[0] - w[1] + 1) for w, mult in self.extra.items())

    def is_all_ones(self):
        return not self.extra and all(self.table.get((i, j)) == 1
                                      for i in range(self.a + 1) for j in range(self.a + 1))

    def to_json(self):
        return {"a": self.a,
                "multiplicities": [[i, j, self.table[(i, j)]] for i, j in sorted(self.table)],
                "other_constituents": [[list(w), m] for w, m in sorted(self.extra.items())],
                "total_dimension": self.total_dimension()}


def restrict_decompose(a: int) -> BranchingDecomp:
    """Multiplicity of every H-highest weight (w1 >= w2; w3) in V|_H."""
    if a > 6:
        raise DomainError("explicit models are limited to a <= 6")
    weights = sorted({weight(m) for m in basis(a)})
    table, extra = {}, {}
    for w in weights:
        if w[0] < w[1]:
            continue
        mult = len(highest_weight_vectors(a, w))
        if not mult:
            continue
        j, i = w[0], -w[1]
        if 0 <= i <= a and 0 <= j <= a and w[2] == i - j:
            table[(i, j)] = mult
        else:
            extra[w] = mult
    for i in range(a + 1):
        for j in range(a + 1):
            table.setdefault((i, j), 0)
    return BranchingDecomp(a, table, extra)


def dimension_identity(a: int) -> bool:
    return sum(i + j + 1 for i in range(a + 1) for j in range(a + 1)) == (a + 1) ** 3


# ---------------------------------------------------------------------------
# the source representation V^H_(j,0;-j) = Sym^j(std of GL2) (x) z^-j
# basis e_k = binom(j, k) u1^(j-k) u2^k, k = 0..j

def source_action(j, gamma, z, vec):
    """(gamma, z) on a coordinate vector in the basis e_k."""
    out = [Fraction(0)] * (j + 1)
    a_, b_, c_, d_ = (Fraction(x) for x in (gamma[0][0], gamma[0][1], gamma[1][0], gamma[1][1]))
    zf = Fraction(z) ** (-j)
    for k, coef in enumerate(vec):
        if not coef:
            continue
        # binom(j,k) (a u1 + c u2)^(j-k) (b u1 + d u2)^k
        for s in range(j - k + 1):
            for t in range(k + 1):
                mono = comb(j - k, s) * a_ ** (j - k - s) * c_ ** s * comb(k, t) * b_ ** (k - t) * d_ ** t
                kk = s + t
                out[kk] += coef * comb(j, k) * mono / comb(j, kk) * zf
    return out


def source_lie(j, k, l, vec):
    """E_kl of gl2 (0-indexed) on the basis e_k."""
    out = [Fraction(0)] * (j + 1)
    for m, c in enumerate(vec):
        if not c:
            continue
        if (k, l) == (1, 0):   # F e_m = (m+1) e_{m+1}
            if m < j:
                out[m + 1] += c * (m + 1)
        elif (k, l) == (0, 1):  # E e_m = (j-m+1) e_{m-1}
            if m > 0:
                out[m - 1] += c * (j - m + 1)
        elif k == l:
            out[m] += c * ((j - m) if k == 0 else m)
    return out


U_INV = [[1, 0, -1], [0, 0, 1], [0, -1, 0]]


def distinguished_value(a, v):
    """f_v(u^-1): the coefficient of x1^a y2^a in u^-1 v."""
    img = group_action(U_INV, v)
    return img.get((a, 0, 0, 0, a, 0), Fraction(0))


def _primitive_integral(v):
    from math import gcd
    den = 1
    for c in v.values():
        den = den * c.denominator // gcd(den, c.denominator)
    ints = {m: int(c * den) for m, c in v.items()}
    g = 0
    for c in ints.values():
        g = gcd(g, c)
    return {m: Fraction(c, g) for m, c in ints.items()}


class BrMap:
    __slots__ = ("a", "j", "columns", "hw_vector", "normaliser")

    def __init__(self, a, j, columns, hw_vector, normaliser):
        self.a, self.j, self.columns = a, j, columns
        self.hw_vector, self.normaliser = hw_vector, normaliser

    def __call__(self, vec):
        out = {}
        for k, c in enumerate(vec):
            if c:
                for m, d in self.columns[k].items():
                    _add(out, m, c * d)
        return out

    def matrix(self):
        idx = _index(self.a)
        M = [[Fraction(0)] * (self.j + 1) for _ in basis(self.a)]
        for k, col in enumerate(self.columns):
            for m, c in col.items():
                M[idx[m]][k] = c
        return M

    def is_integral(self):
        return all(c.denominator == 1 for col in self.columns for c in col.values())

    def to_json(self):
        return {"a": self.a, "j": self.j,
                "columns": [[[list(m), str(c)] for m, c in sorted(col.items())] for col in self.columns],
                "distinguished_value": str(self.normaliser)}


@lru_cache(maxsize=None)
def br_map(a: int, j: int) -> BrMap:
    """H-equivariant V^H_(j,0;-j) -> V|_H, determined by the highest weight
    vector v0 of weight (j, 0, -j): e_k -> F^k v0 / k!.  v0 is scaled so that
    f_v0(u^-1) = 1."""
    if not 0 <= j <= a:
        raise DomainError("need 0 <= j <= a")
    hw = highest_weight_vectors(a, (j, 0, -j))
    if len(hw) != 1:
        raise DomainError(f"expected a unique highest weight vector, found {len(hw)}")
    v0 = _primitive_integral(hw[0])
    val = distinguished_value(a, v0)
    if val == 0:
        raise DomainError("distinguished value vanishes; normalisation undefined")
    v0 = {m: c / val for m, c in v0.items()}
    cols = [v0]
    cur = v0
    for k in range(1, j + 1):
        cur = lie_action(1, 0, cur)
        cols.append({m: c / factorial(k) for m, c in cur.items()})
    return BrMap(a, j, cols, v0, val)


def hom_space_dimension(a: int, j: int) -> int:
    """dim Hom_H(V^H_(j,0;-j), V|_H) from the full linear system for the Lie
    algebra of H (torus equations force weight preservation)."""
    src_weights = [(j - k, k, -j) for k in range(j + 1)]
    blocks = [weight_space(a, w) for w in src_weights]
    offsets = [0]
    for b in blocks:
        offsets.append(offsets[-1] + len(b))
    nunk = offsets[-1]
    if nunk == 0:
        return 0
    rows = []
    # unknown T(e_k) = sum_m t_{k,m} m, m in block k.  Equations T(X e_k) = X T(e_k)
    for (kk, ll) in ((0, 1), (1, 0)):
        for k in range(j + 1):
            lhs = source_lie(j, kk, ll, [Fraction(int(t == k)) for t in range(j + 1)])
            eqs = {}
            for kt, c in enumerate(lhs):
                if c:
                    for pos, m in enumerate(blocks[kt]):
                        eqs.setdefault(m, {})
                        eqs[m][offsets[kt] + pos] = eqs[m].get(offsets[kt] + pos, 0) + c
            for pos, m in enumerate(blocks[k]):
                img = lie_action(kk, ll, {m: Fraction(1)})
                for mm, c in img.items():
                    eqs.setdefault(mm, {})
                    eqs[mm][offsets[k] + pos] = eqs[mm].get(offsets[k] + pos, 0) - c
            for e in eqs.values():
                row = [Fraction(0)] * nunk
                for col, c in e.items():
                    row[col] += c
                if any(row):
                    rows.append(row)
    rank, _ = rank_and_kernel(rows, nunk) if rows else (0, None)
    return nunk - rank


H_GENERATORS = [
    ([[1, 1], [0, 1]], 1),
    ([[1, 0], [1, 1]], 1),
    ([[0, 1], [1, 0]], 1),
    ([[-1, 0], [0, 1]], 1),
    ([[1, 0], [0, 1]], -1),
    ([[2, 0], [0, 1]], 1),
    ([[1, 0], [0, 1]], 3),
]


def check_equivariance(a, j, generators=H_GENERATORS):
    br = br_map(a, j)
    for gamma, z in generators:
        g = iota(gamma, z)
        for k in range(j + 1):
            e = [Fraction(int(t == k)) for t in range(j + 1)]
            lhs = br(source_action(j, gamma, z, e))
            rhs = group_action(g, br(e))
            if normal_form(lhs) != rhs:
                return False
    return True


# ---------------------------------------------------------------------------
# the pairing

def pairing_aj(a, j, mu: dict, v):
    """mu(br(v)), with mu a functional given by its values on basis monomials
    and v coordinates in the basis e_k of V_(j,0) = V_(0,-j) (x) ||nu_1^j||."""
    img = br_map(a, j)(v)
    return sum((mu.get(m, 0) * c for m, c in img.items()), Fraction(0))


def dual_action(gamma, z, mu: dict, a):
    """(h mu)(w) = mu(iota(h)^-1 w), returned on basis monomials."""
    g = iota(gamma, z)
    gi = _inverse3(g)
    out = {}
    for m in basis(a):
        img = group_action(gi, {m: Fraction(1)})
        val = sum((mu.get(mm, 0) * c for mm, c in img.items()), Fraction(0))
        if val:
            out[m] = val
    return out


def nu1(gamma, z):
    return Fraction(gamma[0][0] * gamma[1][1] - gamma[0][1] * gamma[1][0]) / z


def gl2_dual_action(j, gamma, z, vec):
    """Action on V_(0,-j) = Sym^j (x) det^-j (z acts trivially)."""
    scale = Fraction(gamma[0][0] * gamma[1][1] - gamma[0][1] * gamma[1][0]) ** (-j) * Fraction(z) ** j
    return [c * scale for c in source_action(j, gamma, z, vec)]


def check_pairing_invariance(a, j, mu, v, generators=H_GENERATORS):
    """<h mu, h v> = nu_1(h)^-j <mu, v> on the given generators."""
    base = pairing_aj(a, j, mu, v)
    for gamma, z in generators:
        lhs = pairing_aj(a, j, dual_action(gamma, z, mu, a), gl2_dual_action(j, gamma, z, v))
        if lhs != nu1(gamma, z) ** (-j) * base:
            return False
    return True


def dumps(obj) -> str:
    import json
    return json.dumps(obj.to_json(), sort_keys=True)
