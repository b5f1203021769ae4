"""Root system of osp(1|2n) in the epsilon basis, its Weyl group, and weight domains.

Weights are stored with doubled coordinates so that half-integral vectors,
``rho`` in particular, stay exact integers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

__all__ = [
    "Weight",
    "WeylElement",
    "RootData",
    "build_root_data",
    "bilinear",
    "bilinear4",
    "enumerate_weyl",
    "eps_prime",
    "act",
    "check_level",
    "enumerate_domain",
    "dual_weight",
    "parity",
    "enumerate_lattice_box",
    "MAX_WEYL_RANK",
]

MAX_WEYL_RANK = 6


class RankMismatch(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Weight:
    """A vector in the span of eps_1..eps_n, stored as twice its coordinates."""

    doubled: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "doubled", tuple(int(x) for x in self.doubled))

    @classmethod
    def of(cls, *coords) -> "Weight":
        """Build from ordinary (possibly half-integral) coordinates."""
        doubled = []
        for c in coords:
            d = Fraction(c) * 2
            if d.denominator != 1:
                raise ValueError(f"coordinate {c} is not a half-integer")
            doubled.append(int(d))
        return cls(tuple(doubled))

    @classmethod
    def zero(cls, n: int) -> "Weight":
        return cls((0,) * n)

    @classmethod
    def eps(cls, i: int, n: int) -> "Weight":
        """The basis vector eps_i, 1-based."""
        return cls(tuple(2 if j == i - 1 else 0 for j in range(n)))

    @property
    def rank(self) -> int:
        return len(self.doubled)

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, 2) for x in self.doubled)

    def is_integral(self) -> bool:
        return all(x % 2 == 0 for x in self.doubled)

    def int_coords(self) -> tuple[int, ...]:
        if not self.is_integral():
            raise ValueError(f"{self} has non-integer coordinates")
        return tuple(x // 2 for x in self.doubled)

    def _check(self, other: "Weight"):
        if len(self.doubled) != len(other.doubled):
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a + b for a, b in zip(self.doubled, other.doubled)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a - b for a, b in zip(self.doubled, other.doubled)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.doubled))

    def scale(self, k: int) -> "Weight":
        return Weight(tuple(k * a for a in self.doubled))

    def label(self) -> str:
        """Compact key used in JSON maps: doubled coordinates joined by commas."""
        return ",".join(str(x) for x in self.doubled)

    @classmethod
    def from_label(cls, s: str) -> "Weight":
        return cls(tuple(int(x) for x in s.split(","))) if s else cls(())

    def to_json(self) -> dict:
        return {"doubled": True, "value": list(self.doubled)}

    @classmethod
    def from_json(cls, data) -> "Weight":
        if not data.get("doubled"):
            raise ValueError("weights are serialized with doubled coordinates")
        return cls(tuple(data["value"]))

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def bilinear4(a: Weight, b: Weight) -> int:
    """Four times the form (a, b); an integer for all weights."""
    a._check(b)
    return sum(x * y for x, y in zip(a.doubled, b.doubled))


def bilinear(a: Weight, b: Weight) -> Fraction:
    return Fraction(bilinear4(a, b), 4)


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation: ``(sigma w)_i = signs[i] * w[perm^{-1}(i)]`` (0-based)."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> "WeylElement":
        return cls(tuple(range(n)), (1,) * n)

    @property
    def rank(self) -> int:
        return len(self.perm)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        # (self * other) w = self(other(w))
        p, s = self.perm, self.signs
        inv_p = [0] * len(p)
        for i, pi in enumerate(p):
            inv_p[pi] = i
        perm = tuple(p[other.perm[i]] for i in range(len(p)))
        signs = tuple(s[i] * other.signs[inv_p[i]] for i in range(len(p)))
        return WeylElement(perm, signs)

    def inverse(self) -> "WeylElement":
        n = len(self.perm)
        inv_p = [0] * n
        for i, pi in enumerate(self.perm):
            inv_p[pi] = i
        return WeylElement(tuple(inv_p), tuple(self.signs[self.perm[i]] for i in range(n)))


def act(sigma: WeylElement, w: Weight) -> Weight:
    if sigma.rank != w.rank:
        raise RankMismatch(f"rank {sigma.rank} vs {w.rank}")
    out = [0] * w.rank
    for j, x in enumerate(w.doubled):
        i = sigma.perm[j]
        out[i] = sigma.signs[i] * x
    return Weight(tuple(out))


def _perm_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def eps_prime(sigma: WeylElement) -> int:
    """Sign character counting reflections in eps_i +- eps_j only.

    Sign flips (reflections in the roots 2 eps_k) contribute +1, so this is
    the sign of the underlying permutation.
    """
    return _perm_sign(sigma.perm)


@lru_cache(maxsize=None)
def enumerate_weyl(n: int) -> tuple[WeylElement, ...]:
    """All 2**n * n! signed permutations of rank n."""
    if n < 0 or n > MAX_WEYL_RANK:
        raise ValueError(f"rank {n} outside supported range 0..{MAX_WEYL_RANK}")
    return tuple(
        WeylElement(perm, signs)
        for perm in itertools.permutations(range(n))
        for signs in itertools.product((1, -1), repeat=n)
    )


@dataclass(frozen=True)
class RootData:
    """Positive roots of osp(1|2n) and the subsets used by the alcove conditions.

    ``even_pos`` holds ``eps_i +- eps_j`` and ``2 eps_i`` (``n**2`` roots),
    ``odd_pos`` holds ``eps_i``.  ``phi0`` keeps only ``eps_i +- eps_j``: a long
    root ``2 eps_i`` is left out because its half is the odd root ``eps_i``.
    Consequently the sign character on the Weyl group is the sign of the
    underlying permutation, and flipping a sign contributes +1.
    """

    n: int
    even_pos: tuple[Weight, ...]
    odd_pos: tuple[Weight, ...]
    phi0: tuple[Weight, ...]
    phi1: tuple[Weight, ...]
    rho: Weight

    @property
    def two_rho(self) -> Weight:
        return self.rho.scale(2)


@lru_cache(maxsize=None)
def build_root_data(n: int) -> RootData:
    if n < 1:
        raise ValueError(f"rank must be at least 1, got {n}")
    e = [Weight.eps(i, n) for i in range(1, n + 1)]
    pm = []
    for i in range(n):
        for j in range(i + 1, n):
            pm.append(e[i] - e[j])
            pm.append(e[i] + e[j])
    longs = [ek.scale(2) for ek in e]
    even = tuple(pm + longs)
    odd = tuple(e)
    total = Weight.zero(n)
    for a in even:
        total = total + a
    for b in odd:
        total = total - b
    # total is 2*rho in ordinary coordinates; doubled rho has the same integers
    rho = Weight(total.int_coords())
    return RootData(n=n, even_pos=even, odd_pos=odd, phi0=tuple(pm), phi1=odd, rho=rho)


def check_level(N: int) -> int:
    """Validate ``N = 2(2k+1)`` with ``k >= 1`` and return k."""
    if N < 6 or N % 4 != 2:
        raise ValueError(f"N must be of the form 2(2k+1) with k >= 1, got {N}")
    return (N - 2) // 4


def _alcove_values(lam: Weight, rd: RootData) -> Iterator[Fraction]:
    shifted = lam + rd.rho
    for alpha in rd.phi0 + rd.phi1:
        yield Fraction(2 * bilinear4(shifted, alpha), bilinear4(alpha, alpha))


def in_domain(lam: Weight, rd: RootData, N: int, strict: bool) -> bool:
    half = N // 2
    if strict:
        return all(0 < v < half for v in _alcove_values(lam, rd))
    return all(0 <= v <= half for v in _alcove_values(lam, rd))


def iter_domain(n: int, N: int, strict: bool) -> Iterator[Weight]:
    """Lazily scan the box ``0 <= lam_i <= N/2`` and yield weights in the domain.

    Coordinates are generated left to right and branches that already
    violate the eps_i bound or the eps_i - eps_{i+1} bound are pruned.
    """
    check_level(N)
    rd = build_root_data(n)
    half = N // 2
    rho2 = rd.rho.doubled

    def coord_ok(i, x):
        v = 2 * x + rho2[i]  # 2(lam + rho, eps_i)
        return (0 < v < half) if strict else (0 <= v <= half)

    def rec(prefix):
        i = len(prefix)
        if i == n:
            lam = Weight(tuple(2 * x for x in prefix))
            if in_domain(lam, rd, N, strict):
                yield lam
            return
        for x in range(half + 1):
            if not coord_ok(i, x):
                continue
            if i:
                # (lam + rho, eps_{i-1} - eps_i) = prefix[-1] - x + 1
                gap = prefix[-1] - x + 1
                if (strict and gap <= 0) or (not strict and gap < 0):
                    continue
            yield from rec(prefix + (x,))

    yield from rec(())


def enumerate_domain(n: int, N: int, strict: bool) -> list[Weight]:
    """Lambda_N^+ (strict) or its closure (non-strict), sorted."""
    return sorted(iter_domain(n, N, strict))


def dual_weight(lam: Weight, n: int | None = None) -> Weight:
    """``-w0(lam)`` for the longest element ``w0``; ``w0 = -1`` here, so this is ``lam``."""
    n = lam.rank if n is None else n
    w0 = WeylElement(tuple(range(n)), (-1,) * n)
    return -act(w0, lam)


def parity(lam: Weight) -> int:
    """Z/2 grading of an integral weight: sum of coordinates mod 2."""
    return sum(lam.int_coords()) % 2


def enumerate_lattice_box(n: int, M: int) -> list[Weight]:
    """Representatives ``{0..M-1}^n`` of ``X / M X``."""
    if M < 1:
        raise ValueError(f"modulus must be positive, got {M}")
    return [Weight(tuple(2 * x for x in c)) for c in itertools.product(range(M), repeat=n)]
