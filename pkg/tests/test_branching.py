from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from artifact.branching import (
    H_GENERATORS, basis, br_map, check_equivariance, check_pairing_invariance, dimension,
    dimension_identity, distinguished_value, group_action, h_rep_dimension, hom_space_dimension,
    iota, lie_action, normal_form, pairing_aj, restrict_decompose, weight,
)
from artifact.exact_arith import DomainError


def test_dimension_examples():
    assert [dimension(a) for a in range(3)] == [1, 8, 27]
    for a in range(5):
        assert len(basis(a)) == dimension(a)


def gelfand_tsetlin_count(lam):
    """Patterns with top row lam: an independent count of dim V_lam."""
    l1, l2, l3 = lam
    total = 0
    for m1 in range(l2, l1 + 1):
        for m2 in range(l3, l2 + 1):
            total += m1 - m2 + 1
    return total


def test_dimension_matches_gelfand_tsetlin():
    for a in range(8):
        assert dimension(a) == gelfand_tsetlin_count((a, 0, -a)) == (a + 1) ** 3


def test_weight_multiplicities_sum():
    for a in range(4):
        ws = {}
        for m in basis(a):
            w = weight(m)
            ws[w] = ws.get(w, 0) + 1
        assert sum(ws.values()) == (a + 1) ** 3


def test_h_rep_dimension():
    assert h_rep_dimension(3, -1, 4) == 5
    assert h_rep_dimension(0, 0) == 1


@pytest.mark.parametrize("a", [0, 1, 2, 3])
def test_restrict_decompose(a):
    d = restrict_decompose(a)
    assert d.is_all_ones()
    assert d.total_dimension() == (a + 1) ** 3
    dims = sorted(i + j + 1 for (i, j), m in d.table.items() for _ in range(m))
    if a == 1:
        assert dims == [1, 2, 2, 3]
    if a == 0:
        assert dims == [1]
    if a == 2:
        assert len(dims) == 9 and sum(dims) == 27


def test_restrict_decompose_cap():
    with pytest.raises(DomainError):
        restrict_decompose(7)


def test_dimension_identity_to_12():
    assert all(dimension_identity(a) for a in range(13))


@pytest.mark.parametrize("a,j", [(0, 0), (1, 0), (1, 1), (2, 1), (3, 2), (4, 0), (4, 4)])
def test_multiplicity_one(a, j):
    assert hom_space_dimension(a, j) == 1


@pytest.mark.parametrize("a", [0, 1, 2, 3])
def test_br_equivariant_and_integral(a):
    for j in range(a + 1):
        br = br_map(a, j)
        assert check_equivariance(a, j)
        assert br.is_integral()
        assert br.normaliser == (-1) ** (a - j)


def test_br_trivial_case():
    br = br_map(0, 0)
    assert br([F(1)]) == {basis(0)[0]: F(1)}


def test_br_distinguished_value_is_one():
    for a in range(4):
        for j in range(a + 1):
            assert distinguished_value(a, br_map(a, j).hw_vector) == 1


def test_group_action_is_a_homomorphism():
    a = 2
    g = iota([[1, 1], [0, 1]], 1)
    h = iota([[2, 0], [1, 1]], -1)
    gh = [[sum(g[i][k] * h[k][l] for k in range(3)) for l in range(3)] for i in range(3)]
    for m in basis(a)[:10]:
        v = {m: F(1)}
        assert group_action(g, group_action(h, v)) == group_action(gh, v)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2), st.data())
def test_pairing_bilinear(a, data):
    j = data.draw(st.integers(0, a))
    mons = basis(a)
    mu1 = {m: F(data.draw(st.integers(-3, 3))) for m in mons[:6]}
    mu2 = {m: F(data.draw(st.integers(-3, 3))) for m in mons[-6:]}
    v = [F(data.draw(st.integers(-3, 3))) for _ in range(j + 1)]
    w = [F(data.draw(st.integers(-3, 3))) for _ in range(j + 1)]
    mu12 = dict(mu1)
    for m, c in mu2.items():
        mu12[m] = mu12.get(m, 0) + c
    assert pairing_aj(a, j, mu12, v) == pairing_aj(a, j, mu1, v) + pairing_aj(a, j, mu2, v)
    vw = [x + y for x, y in zip(v, w)]
    assert pairing_aj(a, j, mu1, vw) == pairing_aj(a, j, mu1, v) + pairing_aj(a, j, mu1, w)


def test_pairing_normalisation_j0():
    for a in range(3):
        img = br_map(a, 0)([F(1)])
        m, c = next(iter(sorted(img.items())))
        mu = {m: 1 / c}
        assert pairing_aj(a, 0, mu, [F(1)]) == 1


def test_pairing_vanishes_off_component():
    a, j = 2, 1
    hit = set()
    for k in range(j + 1):
        hit |= set(br_map(a, j)([F(int(t == k)) for t in range(j + 1)]))
    others = [m for m in basis(a) if m not in hit]
    mu = {m: F(1) for m in others}
    assert pairing_aj(a, j, mu, [F(1), F(1)]) == 0


def test_pairing_invariance():
    a = 2
    for j in range(a + 1):
        mu = {m: F((i * 7) % 5 - 2) for i, m in enumerate(basis(a))}
        v = [F(k + 1) for k in range(j + 1)]
        assert check_pairing_invariance(a, j, mu, v)


def test_lie_action_kills_highest_weight():
    for a in range(3):
        for j in range(a + 1):
            v0 = br_map(a, j).hw_vector
            assert normal_form(lie_action(0, 1, v0)) == {}
