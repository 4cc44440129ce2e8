"""Exact arithmetic in the cyclotomic field Q(q), q a primitive N-th root of unity.

Elements are rational coefficient vectors in the power basis 1, q, ..., q^(d-1)
with d = deg(phi_N), stored as an integer numerator tuple over a common
positive denominator and reduced modulo the N-th cyclotomic polynomial after
every operation.  Zero-testing is therefore exact.

The complex embedding sends q to exp(2*pi*i*root_k/N).  The algebra does not
depend on root_k; only ``embed`` does.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union


def _poly_divmod_exact(num: list[int], den: list[int]) -> list[int]:
    """Divide integer polynomials (low degree first) by a monic divisor; the remainder must vanish."""
    num = list(num)
    dq = len(den) - 1
    assert den[-1] == 1
    out = [0] * (len(num) - dq)
    for i in range(len(num) - 1, dq - 1, -1):
        c = num[i]
        if c:
            out[i - dq] = c
            for j, dj in enumerate(den):
                num[i - dq + j] -= c * dj
    if any(num[:dq]):
        raise ArithmeticError("non-exact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, constant term first."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divmod_exact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


@dataclass(frozen=True)
class CycContext:
    """The field Q(q) for a fixed odd N; ``root_k`` selects the complex embedding."""

    N: int
    root_k: int = 1
    phi: tuple[int, ...] = field(init=False, repr=False, compare=False)
    deg: int = field(init=False, repr=False, compare=False)
    _powers: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        N, k = self.N, self.root_k
        if not isinstance(N, int) or N < 3 or N % 2 == 0:
            raise ValueError(f"N must be an odd integer >= 3, got {N!r}")
        if math.gcd(k, N) != 1:
            raise ValueError(f"root_k={k} is not coprime to N={N}")
        phi = cyclotomic_poly(N)
        d = len(phi) - 1
        # x^m mod phi for every exponent a product or a monomial can produce
        top = max(N, 2 * d - 1)
        powers = []
        cur = [1] + [0] * (d - 1)
        for _ in range(top):
            powers.append(tuple(cur))
            lead = cur[-1]
            cur = [0] + cur[:-1]
            if lead:
                for j in range(d):
                    cur[j] -= lead * phi[j]
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "deg", d)
        object.__setattr__(self, "_powers", tuple(powers))

    @property
    def r(self) -> int:
        return (self.N - 1) // 2

    def zero(self) -> "CycNum":
        return CycNum(self, (0,) * self.deg, 1, _normalized=True)

    def one(self) -> "CycNum":
        return self.monomial(0)

    def const(self, c: Union[int, Fraction]) -> "CycNum":
        c = Fraction(c)
        return CycNum(self, (c.numerator,) + (0,) * (self.deg - 1), c.denominator)

    def monomial(self, e: int, coeff: int = 1) -> "CycNum":
        """coeff * q^e for any integer e (negative exponents allowed)."""
        p = self._powers[e % self.N]
        return CycNum(self, tuple(coeff * c for c in p), 1, _normalized=coeff in (1, -1))

    @property
    def q(self) -> "CycNum":
        return self.monomial(1)

    def from_coeffs(self, coeffs: Sequence[Union[int, Fraction]]) -> "CycNum":
        """Element sum_i coeffs[i] q^i; longer vectors are reduced mod phi_N."""
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in fr]
        d = self.deg
        out = [0] * d
        for i, c in enumerate(ints):
            if c:
                p = self._powers[i % self.N] if i >= len(self._powers) else self._powers[i]
                for j in range(d):
                    out[j] += c * p[j]
        return CycNum(self, tuple(out), den)

    def laurent(self, terms: dict[int, int]) -> "CycNum":
        """Specialize a Laurent polynomial {exponent: integer coefficient} at q."""
        d = self.deg
        out = [0] * d
        for e, c in terms.items():
            if c:
                p = self._powers[e % self.N]
                for j in range(d):
                    out[j] += c * p[j]
        return CycNum(self, tuple(out), 1)

    def embedding_root(self) -> complex:
        return cmath.exp(2j * math.pi * self.root_k / self.N)


@lru_cache(maxsize=None)
def make_context(N: int, root_k: int = 1) -> CycContext:
    return CycContext(N, root_k)


Scalar = Union["CycNum", int, Fraction]


class CycNum:
    """Immutable element of Q(q)."""

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx: CycContext, num: tuple[int, ...], den: int = 1, _normalized: bool = False):
        if not _normalized:
            if den < 0:
                num = tuple(-c for c in num)
                den = -den
            if den != 1:
                g = den
                for c in num:
                    if c:
                        g = math.gcd(g, c)
                        if g == 1:
                            break
                if g != 1:
                    num = tuple(c // g for c in num)
                    den //= g
                if not any(num):
                    den = 1
        self.ctx = ctx
        self.num = num
        self.den = den

    # -- coercion -------------------------------------------------------
    def _coerce(self, other: Scalar) -> "CycNum":
        if isinstance(other, CycNum):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ValueError("context mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.const(other)
        return NotImplemented

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self) -> bool:
        return any(self.num)

    def is_integral(self) -> bool:
        return self.den == 1

    # -- ring operations --------------------------------------------------
    def __add__(self, other: Scalar) -> "CycNum":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return CycNum(self.ctx, tuple(a + b for a, b in zip(self.num, o.num)), self.den)
        return CycNum(
            self.ctx,
            tuple(a * o.den + b * self.den for a, b in zip(self.num, o.num)),
            self.den * o.den,
        )

    __radd__ = __add__

    def __neg__(self) -> "CycNum":
        return CycNum(self.ctx, tuple(-a for a in self.num), self.den, _normalized=True)

    def __sub__(self, other: Scalar) -> "CycNum":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other: Scalar) -> "CycNum":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "CycNum":
        if isinstance(other, int):
            return CycNum(self.ctx, tuple(a * other for a in self.num), self.den)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.num, o.num
        d = self.ctx.deg
        conv = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        out = conv[:d]
        powers = self.ctx._powers
        for m in range(d, 2 * d - 1):
            c = conv[m]
            if c:
                p = powers[m]
                for j in range(d):
                    out[j] += c * p[j]
        return CycNum(self.ctx, tuple(out), self.den * o.den)

    __rmul__ = __mul__

    def inv(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("inversion of zero in Q(q)")
        u = _poly_inverse_mod([Fraction(c) for c in self.num], list(self.ctx.phi))
        # a = num/den, so a^-1 = den * num^-1
        return self.ctx.from_coeffs(u) * self.den

    def __truediv__(self, other: Scalar) -> "CycNum":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other: Scalar) -> "CycNum":
        return self.inv() * other

    def __pow__(self, e: int) -> "CycNum":
        if e < 0:
            return self.inv() ** (-e)
        result = self.ctx.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparison -------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycNum):
            return self.ctx == other.ctx and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            o = self.ctx.const(other)
            return self.num == o.num and self.den == o.den
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx.N, self.num, self.den))

    # -- display ----------------------------------------------------------
    def embed(self) -> complex:
        z = self.ctx.embedding_root()
        return sum(c * z**i for i, c in enumerate(self.num)) / self.den

    def coeff_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            if mono and c in (1, -1):
                body = mono
            elif mono:
                body = f"{abs(c)}*{mono}"
            else:
                body = str(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self) -> str:
        return f"CycNum(N={self.ctx.N}, {self})"


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_inverse_mod(a: list[Fraction], m: list[int]) -> list[Fraction]:
    """Extended Euclid: u with u*a = 1 mod m over Q."""
    r0, r1 = _poly_trim([Fraction(c) for c in m]), _poly_trim(list(a))
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while len(r1) > 1:
        # r0 = qt * r1 + rem
        rem = list(r0)
        qt = [Fraction(0)] * (len(r0) - len(r1) + 1)
        lead = r1[-1]
        for i in range(len(rem) - len(r1), -1, -1):
            c = rem[i + len(r1) - 1] / lead
            qt[i] = c
            if c:
                for j, rj in enumerate(r1):
                    rem[i + j] -= c * rj
        rem = _poly_trim(rem[: len(r1) - 1])
        # s_new = s0 - qt * s1
        prod = [Fraction(0)] * (len(qt) + len(s1) - 1)
        for i, qi in enumerate(qt):
            if qi:
                for j, sj in enumerate(s1):
                    prod[i + j] += qi * sj
        n = max(len(s0), len(prod))
        s_new = [(s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0) for i in range(n)]
        r0, r1 = r1, rem
        s0, s1 = s1, _poly_trim(s_new) or [Fraction(0)]
        if not r1:
            raise ArithmeticError("element is a zero divisor")
    c = r1[0]
    return [x / c for x in s1]


def gauss_minus(ctx: CycContext) -> CycNum:
    """G_{-1} = sum over lambda in Z_N of q^(-lambda^2)."""
    return ctx.laurent(_accumulate((-(lam * lam), 1) for lam in range(ctx.N)))


def _accumulate(pairs) -> dict[int, int]:
    out: dict[int, int] = {}
    for e, c in pairs:
        out[e] = out.get(e, 0) + c
    return out
