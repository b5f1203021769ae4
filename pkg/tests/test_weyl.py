import itertools
from fractions import Fraction

import pytest

from ospq.weyl import (
    Weight,
    WeylElement,
    act,
    bilinear,
    bilinear4,
    build_root_data,
    check_level,
    dual_weight,
    enumerate_domain,
    enumerate_lattice_box,
    enumerate_weyl,
    eps_prime,
    parity,
)


def W(*c):
    return Weight.of(*c)


def test_root_data_n1():
    rd = build_root_data(1)
    assert rd.even_pos == (W(2),)
    assert rd.odd_pos == (W(1),)
    assert rd.phi0 == ()
    assert rd.rho == W(Fraction(1, 2))


def test_root_data_n2():
    rd = build_root_data(2)
    assert set(rd.even_pos) == {W(1, -1), W(1, 1), W(2, 0), W(0, 2)}
    assert rd.rho == W(Fraction(3, 2), Fraction(1, 2))
    assert set(rd.phi0) == {W(1, -1), W(1, 1)}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_root_counts(n):
    rd = build_root_data(n)
    assert len(rd.even_pos) == n * n
    assert len(rd.odd_pos) == n
    assert len(set(rd.even_pos)) == n * n


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_two_rho(n):
    rd = build_root_data(n)
    total = Weight.zero(n)
    for a in rd.even_pos:
        total = total + a
    for b in rd.odd_pos:
        total = total - b
    assert total == rd.two_rho
    assert rd.rho.coords == tuple(Fraction(2 * (n - i) - 1, 2) for i in range(n))


def test_bilinear_examples():
    assert bilinear(Weight.eps(1, 2), Weight.eps(1, 2)) == 1
    assert bilinear(Weight.eps(1, 2), Weight.eps(2, 2)) == 0
    rho = build_root_data(2).rho
    assert bilinear(rho, rho) == Fraction(5, 2)
    assert bilinear4(rho, rho) == 10


@pytest.mark.parametrize("n,size", [(1, 2), (2, 8), (3, 48), (4, 384)])
def test_weyl_sizes(n, size):
    group = enumerate_weyl(n)
    assert len(group) == size
    assert len(set(group)) == size


def test_eps_prime_examples():
    assert eps_prime(WeylElement.identity(2)) == 1
    assert eps_prime(WeylElement((0,), (-1,))) == 1
    assert eps_prime(WeylElement((1, 0), (1, 1))) == -1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_eps_prime_is_a_character(n):
    group = enumerate_weyl(n)
    for a, b in itertools.product(group, repeat=2):
        assert eps_prime(a * b) == eps_prime(a) * eps_prime(b)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_action_preserves_form(n):
    vecs = [Weight(tuple(c)) for c in itertools.product(range(-2, 3), repeat=n)][:40]
    for sigma in enumerate_weyl(n):
        inv = sigma.inverse()
        for a, b in zip(vecs, reversed(vecs)):
            assert bilinear4(act(sigma, a), act(sigma, b)) == bilinear4(a, b)
            assert act(inv, act(sigma, a)) == a
        assert act(sigma * inv, a) == a


def test_action_examples():
    rho = build_root_data(2).rho
    assert act(WeylElement.identity(2), rho) == rho
    assert act(WeylElement((0, 1), (-1, -1)), rho) == -rho


def test_composition_is_action():
    group = enumerate_weyl(2)
    w = W(Fraction(3, 2), Fraction(1, 2))
    for a, b in itertools.product(group, repeat=2):
        assert act(a * b, w) == act(a, act(b, w))


def _domain_oracle(n, N, strict):
    # brute force over the box with the inequalities written out by hand
    rho = [Fraction(2 * (n - i) - 1, 2) for i in range(n)]
    out = []
    for lam in itertools.product(range(N // 2 + 1), repeat=n):
        s = [lam[i] + rho[i] for i in range(n)]
        vals = [2 * s[i] for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                vals += [s[i] - s[j], s[i] + s[j]]
        half = Fraction(N, 2)
        if strict:
            ok = all(0 < v < half for v in vals)
        else:
            ok = all(0 <= v <= half for v in vals)
        if ok:
            out.append(Weight.of(*lam))
    return sorted(out)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("N", [6, 10, 14, 18])
def test_domain_oracle(n, N):
    for strict in (True, False):
        assert enumerate_domain(n, N, strict) == _domain_oracle(n, N, strict)


@pytest.mark.parametrize("N", [6, 10, 14, 22])
def test_rank_one_domain(N):
    # for n = 1 the condition reads m + 1/2 < N/4
    inner = [W(m) for m in range(N) if Fraction(2 * m + 1, 2) < Fraction(N, 4)]
    closed = [W(m) for m in range(N) if Fraction(2 * m + 1, 2) <= Fraction(N, 4)]
    assert enumerate_domain(1, N, True) == inner
    assert enumerate_domain(1, N, False) == closed


def test_domain_examples():
    assert enumerate_domain(1, 10, True) == [W(0), W(1)]
    assert enumerate_domain(2, 10, True) == [W(0, 0)]
    assert {W(0, 0), W(1, 0), W(1, 1)} <= set(enumerate_domain(2, 14, True))


@pytest.mark.parametrize("n,N", [(1, 10), (2, 14), (2, 22), (3, 18)])
def test_domain_structure(n, N):
    inner = enumerate_domain(n, N, True)
    closed = enumerate_domain(n, N, False)
    assert set(inner) < set(closed)
    for lam in inner:
        assert lam.is_integral()
        assert dual_weight(lam) in inner
        c = lam.int_coords()
        assert all(c[i] >= c[i + 1] for i in range(n - 1)) and c[-1] >= 0


def test_check_level():
    assert check_level(6) == 1
    assert check_level(10) == 2
    for bad in (4, 8, 12, 5, 2):
        with pytest.raises(ValueError):
            check_level(bad)


def test_dual_weight():
    assert dual_weight(Weight.zero(2)) == Weight.zero(2)
    assert dual_weight(W(1, 0)) == W(1, 0)
    assert dual_weight(W(3, 1, 1)) == W(3, 1, 1)


def test_parity():
    assert parity(Weight.zero(1)) == 0
    assert parity(W(1)) == 1
    assert parity(W(1, 1)) == 0


def test_lattice_box():
    assert enumerate_lattice_box(1, 3) == [W(0), W(1), W(2)]
    assert len(enumerate_lattice_box(2, 5)) == 25
    assert enumerate_lattice_box(1, 1) == [W(0)]


def test_weight_serialisation():
    w = W(Fraction(3, 2), -1)
    assert Weight.from_json(w.to_json()) == w
    assert Weight.from_label(w.label()) == w
    with pytest.raises(ValueError):
        W(Fraction(1, 3))
