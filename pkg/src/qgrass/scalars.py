"""Exact arithmetic in Q(q) for q a primitive root of unity, and q-combinatorics.

Elements live in Q[x]/(Phi_d(x)), where d is the multiplicative order of q.
Each element stores an integer numerator vector and one positive common
denominator, so arithmetic stays in Python ints until a division appears.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd


# integer polynomials are tuples of coefficients, lowest degree first


def _poly_trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p)


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_trim(out)


def _poly_divmod_monic(a, b):
    """Divide integer polynomial a by monic b; returns (quotient, remainder)."""
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return (0,), _poly_trim(a)
    quot = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            quot[k - db] = c
            for j, y in enumerate(b):
                a[k - db + j] -= c * y
    return _poly_trim(quot), _poly_trim(a[:db] or [0])


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d: int) -> tuple:
    """Coefficients of Phi_d, lowest degree first."""
    if d < 1:
        raise ValueError("cyclotomic index must be positive")
    p = (-1,) + (0,) * (d - 1) + (1,)
    for e in range(1, d):
        if d % e == 0:
            p, rem = _poly_divmod_monic(p, cyclotomic_polynomial(e))
            assert rem == (0,)
    return p


def format_poly(coeffs, var="x") -> str:
    """Human-readable form, highest degree first: (1, 1, 1) -> 'x^2 + x + 1'."""
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    head_sign, head = terms[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


class CycField:
    """The field Q[x]/(Phi_d). Built once per order and shared."""

    def __init__(self, order: int):
        self.order = order
        self.phi = cyclotomic_polynomial(order)
        self.deg = len(self.phi) - 1
        # x^k reduced mod Phi_d for every k < 2*deg - 1
        self._red = []
        for k in range(2 * self.deg - 1):
            _, rem = _poly_divmod_monic((0,) * k + (1,), self.phi)
            rem = list(rem) + [0] * (self.deg - len(rem))
            self._red.append(tuple(rem))
        self.zero = CycNum(self, (0,) * self.deg, 1)
        self.one = self.from_int(1)
        self._qpow = {}
        self._inv_cache = {}

    def from_int(self, n) -> "CycNum":
        if isinstance(n, Fraction):
            return CycNum(self, (n.numerator,) + (0,) * (self.deg - 1), n.denominator)
        return CycNum(self, (int(n),) + (0,) * (self.deg - 1), 1)

    def reduce(self, coeffs, den=1) -> "CycNum":
        """Reduce an arbitrary-length integer coefficient list."""
        out = [0] * self.deg
        for k, c in enumerate(coeffs):
            if c:
                if k < self.deg:
                    out[k] += c
                elif k < len(self._red):
                    for i, r in enumerate(self._red[k]):
                        out[i] += c * r
                else:
                    kk = k % self.order
                    for i, r in enumerate(self._red[kk] if kk < len(self._red) else self._xpow(kk)):
                        out[i] += c * r
        return CycNum(self, tuple(out), den)

    @lru_cache(maxsize=None)
    def _xpow(self, k):
        _, rem = _poly_divmod_monic((0,) * k + (1,), self.phi)
        return tuple(list(rem) + [0] * (self.deg - len(rem)))

    def q(self) -> "CycNum":
        return self.qpow(1)

    def qpow(self, k: int) -> "CycNum":
        k %= self.order
        v = self._qpow.get(k)
        if v is None:
            if k < self.deg:
                v = CycNum(self, tuple(1 if i == k else 0 for i in range(self.deg)), 1)
            else:
                v = self.reduce((0,) * k + (1,))
            self._qpow[k] = v
        return v

    def parse(self, text: str) -> "CycNum":
        """Inverse of str(): accepts sums of terms like '-3/2*q^2', 'q', '7'."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty literal")
        acc = self.zero
        for sign, coef, var, exp in re.findall(r"([+-]?)(\d+(?:/\d+)?)?\*?(q)?(?:\^(-?\d+))?", s):
            if not coef and not var:
                continue
            c = Fraction(coef) if coef else Fraction(1)
            if sign == "-":
                c = -c
            k = int(exp) if exp else (1 if var else 0)
            acc = acc + self.qpow(k) * c
        return acc

    def __repr__(self):
        return f"CycField(order={self.order})"


@lru_cache(maxsize=None)
def cyc_field(order: int) -> CycField:
    return CycField(order)


class CycNum:
    """Element of Q[x]/(Phi_d) stored as integer numerators over a common denominator."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: CycField, num, den: int = 1):
        if den < 0:
            num = tuple(-c for c in num)
            den = -den
        g = den
        for c in num:
            if c:
                g = gcd(g, c)
                if g == 1:
                    break
        if not any(num):
            den = 1
            g = 1
        if g != 1:
            num = tuple(c // g for c in num)
            den //= g
        self.field = field
        self.num = tuple(num)
        self.den = den
        self._hash = None

    # coercion
    def _lift(self, other):
        if isinstance(other, CycNum):
            if other.field is not self.field:
                raise ValueError("elements of different cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_int(other)
        return NotImplemented

    @property
    def coeffs(self) -> tuple:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self):
        return any(self.num)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.order, self.num, self.den))
        return self._hash

    def __neg__(self):
        return CycNum(self.field, tuple(-c for c in self.num), self.den)

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return CycNum(self.field, tuple(a + b for a, b in zip(self.num, o.num)), self.den)
        return CycNum(self.field,
                      tuple(a * o.den + b * self.den for a, b in zip(self.num, o.num)),
                      self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycNum(self.field, tuple(c * other for c in self.num), self.den)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        a, b = self.num, o.num
        n = len(a)
        prod = [0] * (2 * n - 1)
        for i in range(n):
            x = a[i]
            if x:
                for j in range(n):
                    y = b[j]
                    if y:
                        prod[i + j] += x * y
        return self.field.reduce(prod, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if not self:
            raise ZeroDivisionError("zero has no inverse")
        cache = self.field._inv_cache
        hit = cache.get((self.num, self.den))
        if hit is not None:
            return hit
        # solve (multiplication-by-self matrix) c = e_0 over Q
        n = self.field.deg
        cols = []
        for k in range(n):
            cols.append((self * self.field.qpow(k)).coeffs)
        mat = [[cols[j][i] for j in range(n)] + [Fraction(int(i == 0))] for i in range(n)]
        for c in range(n):
            p = next(r for r in range(c, n) if mat[r][c] != 0)
            mat[c], mat[p] = mat[p], mat[c]
            piv = mat[c][c]
            mat[c] = [v / piv for v in mat[c]]
            for r in range(n):
                if r != c and mat[r][c] != 0:
                    f = mat[r][c]
                    mat[r] = [v - f * w for v, w in zip(mat[r], mat[c])]
        sol = [mat[i][n] for i in range(n)]
        den = 1
        for v in sol:
            den = den * v.denominator // gcd(den, v.denominator)
        out = CycNum(self.field, tuple(int(v * den) for v in sol), den)
        cache[(self.num, self.den)] = out
        return out

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = self.field.one, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __str__(self):
        terms = []
        for k in range(len(self.num) - 1, -1, -1):
            c = Fraction(self.num[k], self.den)
            if c == 0:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"CycNum({self})"


@dataclass(frozen=True)
class RootSpec:
    """q is a primitive `order`-th root of unity with char(q) = ell."""

    ell: int
    order: int = 0

    def __post_init__(self):
        if self.order == 0:
            object.__setattr__(self, "order", self.ell)
        if self.ell < 3:
            raise ValueError(f"ell must be >= 3, got {self.ell}")
        if self.order not in (self.ell, 2 * self.ell):
            raise ValueError(f"order must be ell or 2*ell, got {self.order}")
        if self.order == self.ell and self.ell % 2 == 0:
            raise ValueError("order = ell requires ell odd")

    @property
    def field(self) -> CycField:
        return cyc_field(self.order)

    @property
    def q(self) -> CycNum:
        return self.field.q()

    def qpow(self, k: int) -> CycNum:
        return self.field.qpow(k)

    def to_json(self) -> dict:
        return {"ell": self.ell, "order": self.order}


# q-combinatorics


@lru_cache(maxsize=None)
def q_int(n: int, spec: RootSpec) -> CycNum:
    """[n] = (q^n - q^-n)/(q - q^-1), expanded as a sum of powers of q."""
    if n < 0:
        return -q_int(-n, spec)
    f = spec.field
    acc = [0] * spec.order
    for k in range(n):
        acc[(n - 1 - 2 * k) % spec.order] += 1
    return f.reduce(acc)


@lru_cache(maxsize=None)
def q_factorial(n: int, spec: RootSpec) -> CycNum:
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    out = spec.field.one
    for k in range(1, n + 1):
        out = out * q_int(k, spec)
    return out


@lru_cache(maxsize=None)
def gaussian_binomial(m: int, r: int) -> tuple:
    """Coefficients of prod_{i=1}^r (1 - w^(m-i+1)) / (1 - w^i) in w, for 0 <= r <= m.

    The division is exact over Z, so no value of w is ever divided by.
    """
    if not 0 <= r <= m:
        raise ValueError("need 0 <= r <= m")
    num = (1,)
    for i in range(1, r + 1):
        num = _poly_mul(num, (1,) * (m - i + 1))
    for i in range(1, r + 1):
        # (1 + w + ... + w^(i-1)) is monic
        num, rem = _poly_divmod_monic(num, (1,) * i)
        assert rem == (0,)
    return num


def q_binom(m: int, r: int, spec: RootSpec) -> CycNum:
    """Balanced Gaussian binomial [m choose r] at q, extended to all integers."""
    if r < 0:
        return spec.field.zero
    if m < 0:
        sign = -1 if r % 2 else 1
        return q_binom(-m + r - 1, r, spec) * sign
    if m < r:
        return spec.field.zero
    return _q_binom_nonneg(m, r, spec)


@lru_cache(maxsize=None)
def _q_binom_nonneg(m, r, spec):
    # [m choose r]_v = v^(-r(m-r)) * G(v^2)
    shift = -r * (m - r)
    acc = [0] * spec.order
    for k, c in enumerate(gaussian_binomial(m, r)):
        if c:
            acc[(2 * k + shift) % spec.order] += c
    return spec.field.reduce(acc)


def char_q(spec: RootSpec) -> int:
    """Smallest n > 0 with [n] = 0."""
    n = 1
    while q_int(n, spec):
        n += 1
        if n > 2 * spec.order:
            raise ArithmeticError("no vanishing q-integer found")
    return n


def pascal_check(m: int, r: int, spec: RootSpec) -> bool:
    """[m, r] = q^(r-m) [m-1, r-1] + q^r [m-1, r]."""
    lhs = q_binom(m, r, spec)
    rhs = spec.qpow(r - m) * q_binom(m - 1, r - 1, spec) + spec.qpow(r) * q_binom(m - 1, r, spec)
    return lhs == rhs


def digit_rhs(s: int, r: int, spec: RootSpec) -> CycNum:
    """Factorised value of [s choose r] through the ell-adic digits of s and r."""
    ell = spec.ell
    s1, s0 = divmod(s, ell)
    r1, r0 = divmod(r, ell)
    val = q_binom(s0, r0, spec) * comb(s1, r1) if s1 >= 0 and r1 >= 0 else spec.field.zero
    if spec.order == 2 * ell:
        if ((s1 + 1) * r1 * ell + s0 * r1 - r0 * s1) % 2:
            val = -val
    return val


def digit_factorization_check(s: int, r: int, spec: RootSpec) -> bool:
    if not 0 <= r <= s:
        raise ValueError("need 0 <= r <= s")
    return q_binom(s, r, spec) == digit_rhs(s, r, spec)


def binom_ell_check(s: int, spec: RootSpec) -> bool:
    """[s choose ell] equals s1, with the sign twist when q has order 2*ell."""
    ell = spec.ell
    s1, s0 = divmod(s, ell)
    expect = s1
    if spec.order == 2 * ell and ((s1 + 1) * ell + s0) % 2:
        expect = -s1
    return q_binom(s, ell, spec) == expect
