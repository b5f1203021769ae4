"""Exact arithmetic in cyclotomic fields and in integer Laurent polynomials.

Cyclotomic numbers are stored canonically in the power basis
``1, z, ..., z**(d-1)`` of ``Q(z)``, ``z = exp(2*pi*i/M)``, reduced modulo the
``M``-th cyclotomic polynomial.  Internally the coefficients are an integer
vector over one positive common denominator, reduced to lowest terms, so two
numbers are equal exactly when their stored data is identical.

Laurent polynomials are sparse maps ``exponent -> int`` in a variable ``u``.
In this package ``u`` always stands for ``q**(1/2)``.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

from .kernels import Reducer

Rational = Fraction

__all__ = [
    "Rational",
    "CycloNumber",
    "LaurentPoly",
    "OrderMismatch",
    "NonExactDivision",
    "cyclotomic_polynomial",
    "cyclo_root_power",
    "cyclo_add",
    "cyclo_mul",
    "cyclo_neg",
    "cyclo_inv",
    "cyclo_embed",
    "laurent_add",
    "laurent_mul",
    "laurent_exact_div",
    "laurent_specialize",
    "gauss_sum",
    "gauss_closed_form",
    "imaginary_unit",
    "sqrt_integer",
]


class OrderMismatch(ValueError):
    """Operands live in different cyclotomic fields."""


class NonExactDivision(ArithmeticError):
    """A Laurent polynomial division left a nonzero remainder."""


# ---------------------------------------------------------------------------
# cyclotomic fields


def _poly_divexact_int(num: list[int], den: Sequence[int]) -> list[int]:
    # den monic, coefficient lists low -> high
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            out[i - dd] = c
            for j, dc in enumerate(den):
                num[i - dd + j] -= c * dc
    assert not any(num), "cyclotomic factor did not divide"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(M: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the M-th cyclotomic polynomial."""
    if M < 1:
        raise ValueError(f"order must be positive, got {M}")
    poly = [-1] + [0] * (M - 1) + [1]
    for d in range(1, M):
        if M % d == 0:
            poly = _poly_divexact_int(poly, cyclotomic_polynomial(d))
    return tuple(poly)


class _Field:
    __slots__ = ("order", "degree", "phi", "rows", "reducer", "_roots")

    def __init__(self, M: int):
        phi = cyclotomic_polynomial(M)
        d = len(phi) - 1
        rows = []
        cur = [1] + [0] * (d - 1)
        for _ in range(M):
            rows.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for t in range(d):
                    cur[t] -= top * phi[t]
        self.order = M
        self.degree = d
        self.phi = phi
        self.rows = tuple(rows)
        self.reducer = Reducer(d, [list(r) for r in rows])
        self._roots = [cmath.exp(2j * math.pi * j / M) for j in range(d)]


@lru_cache(maxsize=None)
def _field(M: int) -> _Field:
    if M < 1:
        raise ValueError(f"order must be positive, got {M}")
    return _Field(M)


def _normalize(num, den):
    g = math.gcd(den, *num)
    if g != 1:
        num = tuple(c // g for c in num)
        den //= g
    else:
        num = tuple(num)
    return num, den


# polynomial helpers over Q for the inverse (low -> high coefficient lists)

def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _qdivmod(a, b):
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(a) - 1 < db:
        return [], _trim(a)
    quot = [Fraction(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            f = c / lead
            quot[i - db] = f
            for j, bc in enumerate(b):
                if bc:
                    a[i - db + j] -= f * bc
    return _trim(quot), _trim(a[:db])


def _qsub_mul(s0, qt, s1):
    out = list(s0) + [Fraction(0)] * max(0, len(qt) + len(s1) - 1 - len(s0))
    for i, a in enumerate(qt):
        if a:
            for j, b in enumerate(s1):
                if b:
                    out[i + j] -= a * b
    return _trim(out)


Coercible = Union["CycloNumber", int, Fraction]


class CycloNumber:
    """An element of the cyclotomic field of order ``M``.

    >>> z = CycloNumber.root(8, 1)
    >>> z ** 8 == 1
    True
    """

    __slots__ = ("order", "_num", "_den")

    def __init__(self, order: int, coeffs: Iterable = ()):
        F = _field(order)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > F.degree:
            raise ValueError(f"expected at most {F.degree} coefficients for order {order}, got {len(cs)}")
        cs += [Fraction(0)] * (F.degree - len(cs))
        den = math.lcm(1, *(c.denominator for c in cs))
        num = [c.numerator * (den // c.denominator) for c in cs]
        self.order = order
        self._num, self._den = _normalize(num, den)

    @classmethod
    def _make(cls, order: int, num, den: int = 1) -> "CycloNumber":
        obj = cls.__new__(cls)
        obj.order = order
        if den == 1:
            obj._num, obj._den = tuple(num), 1
        else:
            obj._num, obj._den = _normalize(num, den)
        return obj

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, order: int) -> "CycloNumber":
        return cls._make(order, (0,) * _field(order).degree)

    @classmethod
    def one(cls, order: int) -> "CycloNumber":
        return cls.from_rational(order, 1)

    @classmethod
    def from_rational(cls, order: int, r) -> "CycloNumber":
        r = Fraction(r)
        d = _field(order).degree
        num = [0] * d
        num[0] = r.numerator
        return cls._make(order, num, r.denominator) if r.denominator != 1 else cls._make(order, num)

    @classmethod
    def root(cls, order: int, e: int) -> "CycloNumber":
        F = _field(order)
        return cls._make(order, F.rows[e % order])

    @classmethod
    def from_exponents(cls, order: int, counts: Mapping[int, int]) -> "CycloNumber":
        """Build ``sum(c * z**e)`` from an exponent histogram (exponents taken mod order)."""
        folded: dict[int, int] = {}
        for e, c in counts.items():
            k = e % order
            folded[k] = folded.get(k, 0) + c
        return cls._make(order, _field(order).reducer.combine(folded))

    # -- accessors ----------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self._num)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return not any(self._num)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "CycloNumber":
        if isinstance(other, CycloNumber):
            if other.order != self.order:
                raise OrderMismatch(f"orders differ: {self.order} vs {other.order}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNumber.from_rational(self.order, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        da, db = self._den, o._den
        if da == db:
            if da == 1:
                return CycloNumber._make(self.order, [a + b for a, b in zip(self._num, o._num)])
            return CycloNumber._make(self.order, [a + b for a, b in zip(self._num, o._num)], da)
        den = math.lcm(da, db)
        fa, fb = den // da, den // db
        return CycloNumber._make(self.order, [a * fa + b * fb for a, b in zip(self._num, o._num)], den)

    __radd__ = __add__

    def __neg__(self):
        obj = CycloNumber.__new__(CycloNumber)
        obj.order, obj._num, obj._den = self.order, tuple(-c for c in self._num), self._den
        return obj

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        num = _field(self.order).reducer.mul(self._num, o._num)
        den = self._den * o._den
        return CycloNumber._make(self.order, num, den)

    __rmul__ = __mul__

    def inv(self) -> "CycloNumber":
        """Multiplicative inverse via the extended Euclidean algorithm against Phi_M."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        F = _field(self.order)
        if self.is_rational():
            return CycloNumber.from_rational(self.order, Fraction(self._den, self._num[0]))
        r0 = [Fraction(c) for c in F.phi]
        r1 = _trim([Fraction(c) for c in self._num])
        s0: list = []
        s1 = [Fraction(1)]
        while len(r1) > 1:
            qt, r = _qdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _qsub_mul(s0, qt, s1)
        # r1 is a nonzero constant since Phi_M is irreducible
        g = r1[0]
        coeffs = [c * self._den / g for c in s1]
        if len(coeffs) > F.degree:
            _, coeffs = _qdivmod(coeffs, [Fraction(c) for c in F.phi])
        return CycloNumber(self.order, coeffs)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self
        if e < 0:
            base, e = self.inv(), -e
        result = CycloNumber.one(self.order)
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def galois(self, t: int) -> "CycloNumber":
        """Apply the automorphism ``z -> z**t`` (t coprime to the order)."""
        if math.gcd(t, self.order) != 1:
            raise ValueError(f"{t} is not a unit modulo {self.order}")
        counts = {(t * j) % self.order: c for j, c in enumerate(self._num) if c}
        return CycloNumber._make(self.order, _field(self.order).reducer.combine(counts), self._den)

    def conjugate(self) -> "CycloNumber":
        return self.galois(-1)

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, CycloNumber):
            return self.order == other.order and self._den == other._den and self._num == other._num
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self._num[0], self._den) == other
        return NotImplemented

    def __hash__(self):
        return hash((self.order, self._num, self._den))

    def __reduce__(self):
        return (CycloNumber._make, (self.order, self._num, self._den))

    # -- output -------------------------------------------------------------
    def embed(self) -> complex:
        """Complex double approximation; for reporting only."""
        roots = _field(self.order)._roots
        den = self._den
        return sum((c / den) * w for c, w in zip(self._num, roots) if c) + 0j

    def __complex__(self):
        return self.embed()

    def to_json(self) -> dict:
        w = self.embed()
        return {
            "order": self.order,
            "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs],
            "float": [w.real, w.imag],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "CycloNumber":
        return cls(int(data["order"]), [Fraction(s) for s in data["coeffs"]])

    def __str__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if j == 0 else ("z" if j == 1 else f"z^{j}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                cs = str(c) if c.denominator == 1 else f"({c})"
                terms.append(cs + ("*" + mono if mono else ""))
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return body

    def __repr__(self):
        return f"CycloNumber({self.order}, {self})"


def cyclo_root_power(M: int, e: int) -> CycloNumber:
    return CycloNumber.root(M, e)


def cyclo_add(a: CycloNumber, b: CycloNumber) -> CycloNumber:
    return a + b


def cyclo_mul(a: CycloNumber, b: CycloNumber) -> CycloNumber:
    return a * b


def cyclo_neg(a: CycloNumber) -> CycloNumber:
    return -a


def cyclo_inv(a: CycloNumber) -> CycloNumber:
    return a.inv()


def cyclo_embed(a: CycloNumber) -> complex:
    return a.embed()


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """Integer Laurent polynomial in ``u``; immutable.

    >>> u = LaurentPoly.monomial(1)
    >>> (u - u ** -1) * (u + u ** -1)
    LaurentPoly(u^2 - u^-2)
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        self._terms = {int(e): int(c) for e, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "LaurentPoly":
        return cls({e: c})

    @classmethod
    def _wrap(cls, terms: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    @property
    def min_exp(self) -> int:
        return min(self._terms)

    @property
    def max_exp(self) -> int:
        return max(self._terms)

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._wrap({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if len(self._terms) == 1:
            (ex, c), = self._terms.items()
            if e >= 0 or c in (1, -1):
                return LaurentPoly({ex * e: c ** abs(e) if e >= 0 else c ** (-e)})
        if e < 0:
            raise ValueError("negative powers only for unit monomials")
        result = LaurentPoly({0: 1})
        for _ in range(e):
            result = result * self
        return result

    def exact_div(self, den: "LaurentPoly") -> "LaurentPoly":
        """Quotient when ``den`` divides ``self`` exactly in ``Z[u, 1/u]``.

        Raises NonExactDivision otherwise.
        """
        if not den._terms:
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if not self._terms:
            return LaurentPoly()
        dterms = sorted(den._terms.items(), reverse=True)
        dmax, lead = dterms[0]
        dmin = dterms[-1][0]
        nmin, nmax = self.min_exp, self.max_exp
        if nmax - nmin < dmax - dmin:
            raise NonExactDivision("numerator span smaller than denominator span")
        rem = [0] * (nmax - nmin + 1)
        for e, c in self._terms.items():
            rem[e - nmin] = c
        quot: dict[int, int] = {}
        stop = nmin + (dmax - dmin)
        for t in range(nmax, stop - 1, -1):
            c = rem[t - nmin]
            if not c:
                continue
            qc, r = divmod(c, lead)
            if r:
                raise NonExactDivision(f"leading coefficient {lead} does not divide {c}")
            shift = t - dmax
            quot[shift] = qc
            for e, dc in dterms:
                rem[shift + e - nmin] -= qc * dc
        if any(rem):
            raise NonExactDivision("nonzero remainder")
        return LaurentPoly._wrap(quot)

    def specialize(self, M: int, step: int) -> CycloNumber:
        """Substitute ``u -> exp(2*pi*i*step/M)``."""
        counts: dict[int, int] = {}
        for e, c in self._terms.items():
            k = (e * step) % M
            counts[k] = counts.get(k, 0) + c
        return CycloNumber.from_exponents(M, counts)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in sorted(self._terms.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in data.items()})

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            mono = "" if e == 0 else ("u" if e == 1 else f"u^{e}")
            if mono and abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}" + ("*" + mono if mono else "")
            parts.append(("- " if c < 0 else "+ ") + s)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def __repr__(self):
        return f"LaurentPoly({self})"


def laurent_add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def laurent_mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def laurent_exact_div(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    return num.exact_div(den)


def laurent_specialize(p: LaurentPoly, M: int, step: int) -> CycloNumber:
    return p.specialize(M, step)


# ---------------------------------------------------------------------------
# Gauss sums


def gauss_sum(N: int, m: int) -> CycloNumber:
    """``sum_{i=0}^{N-1} q**(i*(i+m))`` with ``q = exp(2*pi*i/N)``, in ``Q(z_{4N})``."""
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    M = 4 * N
    counts: dict[int, int] = {}
    for i in range(N):
        e = (4 * i * (i + m)) % M
        counts[e] = counts.get(e, 0) + 1
    return CycloNumber.from_exponents(M, counts)


def imaginary_unit(M: int) -> CycloNumber:
    if M % 4:
        raise ValueError(f"i is not in Q(z_{M})")
    return CycloNumber.root(M, M // 4)


def _sqrt_odd(p: int, M: int) -> CycloNumber:
    # classical quadratic Gauss sum: sum_j e(j^2/p) = sqrt(p) (p = 1 mod 4), i*sqrt(p) (p = 3 mod 4)
    if p == 1:
        return CycloNumber.one(M)
    g = CycloNumber.from_exponents(M, _count((M // p) * j * j for j in range(p)))
    return g if p % 4 == 1 else -imaginary_unit(M) * g


def _count(exps):
    out: dict[int, int] = {}
    for e in exps:
        out[e] = out.get(e, 0) + 1
    return out


def sqrt_integer(N: int, M: int) -> CycloNumber:
    """The positive square root of ``N`` as an element of ``Q(z_M)``.

    Needs the odd part of ``N`` to divide ``M``, ``4 | M``, and ``8 | M`` when
    ``N`` carries an odd power of two.
    """
    if N < 1:
        raise ValueError("N must be positive")
    e, p = 0, N
    while p % 2 == 0:
        p //= 2
        e += 1
    if M % p or (p > 1 and M % 4) or (e % 2 and M % 8):
        raise ValueError(f"sqrt({N}) is not constructed in Q(z_{M})")
    root = _sqrt_odd(p, M) * (2 ** (e // 2))
    if e % 2:
        root = root * (CycloNumber.root(M, M // 8) + CycloNumber.root(M, -(M // 8)))
    return root


def gauss_closed_form(N: int, m: int) -> CycloNumber:
    """``(1 + i) * sqrt(N) / x**(m*m)`` with ``x = exp(2*pi*i/(4N))``."""
    M = 4 * N
    return (CycloNumber.one(M) + imaginary_unit(M)) * sqrt_integer(N, M) * CycloNumber.root(M, -m * m)
