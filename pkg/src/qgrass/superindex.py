"""Combinatorics of <m|n>-indices: star products, graded enumeration, energy grades."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import comb
from typing import NamedTuple

from .scalars import RootSpec


@dataclass(frozen=True)
class Shape:
    """m even and n odd variables, q-characteristic ell, truncation level r.

    Even exponents are bounded by r*ell - 1. q is a primitive root of unity of
    the given order (ell or 2*ell; 0 means ell).
    """

    m: int
    n: int
    ell: int
    r: int = 1
    order: int = 0

    def __post_init__(self):
        if self.m < 1 or self.n < 0 or self.r < 1:
            raise ValueError(f"invalid shape {self}")
        if self.order == 0:
            object.__setattr__(self, "order", self.ell)
        RootSpec(self.ell, self.order)

    @property
    def bound(self) -> int:
        return self.r * self.ell - 1

    @property
    def top(self) -> int:
        return self.m * self.bound + self.n

    @property
    def spec(self) -> RootSpec:
        return RootSpec(self.ell, self.order)

    @property
    def total_dim(self) -> int:
        return (self.r * self.ell) ** self.m * 2 ** self.n

    def restricted(self) -> "Shape":
        return Shape(self.m, self.n, self.ell, 1, self.order)

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "ell": self.ell, "r": self.r, "order": self.order}

    def __str__(self):
        tail = "" if self.order == self.ell else f",q^{self.order}=1"
        return f"({self.m},{self.n},{self.ell},{self.r}{tail})"


class SuperTuple(NamedTuple):
    alpha: tuple
    mu: tuple

    @property
    def degree(self) -> int:
        return sum(self.alpha) + sum(self.mu)

    def flat(self) -> tuple:
        return self.alpha + self.mu

    def to_json(self) -> dict:
        return {"alpha": list(self.alpha), "mu": list(self.mu)}

    def __str__(self):
        a = ",".join(map(str, self.alpha))
        u = ",".join(map(str, self.mu))
        return f"<{a};{u}>"


def unit(length: int, i: int) -> tuple:
    """epsilon_i with 0-based i."""
    return tuple(int(k == i) for k in range(length))


def star(beta, gamma) -> int:
    """sum over j < i of beta_i * gamma_j."""
    if len(beta) != len(gamma):
        raise ValueError("star product needs equal lengths")
    out, prefix = 0, 0
    for b, g in zip(beta, gamma):
        out += b * prefix
        prefix += g
    return out


def super_star(a: SuperTuple, b: SuperTuple) -> int:
    return star(a.alpha, b.alpha) + star(a.mu, b.mu) + sum(a.mu) * sum(b.alpha)


def _compositions(total, parts, cap):
    """Tuples of `parts` integers in [0, cap] summing to total, in lexicographic order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    lo = max(0, total - cap * (parts - 1))
    for first in range(lo, min(cap, total) + 1):
        for rest in _compositions(total - first, parts - 1, cap):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _enumerate(shape: Shape, s: int) -> tuple:
    out = []
    for mu in product((0, 1), repeat=shape.n):
        rest = s - sum(mu)
        if rest < 0:
            continue
        for alpha in _compositions(rest, shape.m, shape.bound):
            out.append(SuperTuple(alpha, mu))
    out.sort()
    return tuple(out)


def enumerate_graded(shape: Shape, s: int) -> list:
    """All truncated indices of degree s, sorted lexicographically on (alpha, mu)."""
    if not 0 <= s <= shape.top:
        return []
    return list(_enumerate(shape, s))


def graded_dim_formula(shape: Shape, s: int) -> int:
    """Alternating-sum dimension of the degree-s piece."""
    m, n, rl = shape.m, shape.n, shape.r * shape.ell
    total = 0
    for i in range(0, min(s, n) + 1):
        for j in range(0, (s - i) // rl + 1):
            top = m + s - i - j * rl - 1
            total += (-1) ** j * comb(n, i) * comb(m, j) * comb(top, m - 1)
    return total


# energy grades


def edeg_vector(t: SuperTuple, ell: int) -> tuple:
    return tuple(a // ell for a in t.alpha)


def edeg(t: SuperTuple, ell: int) -> int:
    return sum(a // ell for a in t.alpha)


def edeg_of_support(support, ell: int) -> int:
    """Energy grade of a linear combination: maximum over its support."""
    return max(edeg(t, ell) for t in support)


def _same_degree(a, b):
    if len(a.alpha) != len(b.alpha) or len(a.mu) != len(b.mu):
        raise ValueError("shape mismatch")
    if a.degree != b.degree:
        raise ValueError("degree mismatch")


def equiv(a: SuperTuple, b: SuperTuple, ell: int) -> bool:
    _same_degree(a, b)
    return edeg_vector(a, ell) == edeg_vector(b, ell)


def geq_partial(a: SuperTuple, b: SuperTuple, ell: int) -> bool:
    _same_degree(a, b)
    return all(x >= y for x, y in zip(edeg_vector(a, ell), edeg_vector(b, ell)))


def succ_lex(k1, k2) -> bool:
    """Strict lexicographic order on m-tuples."""
    return tuple(k1) > tuple(k2)


def succcurlyeq_weight(k1, k2) -> bool:
    """k1 - k2 is a nonnegative combination of simple roots eps_i - eps_(i+1)."""
    if len(k1) != len(k2):
        raise ValueError("length mismatch")
    run = 0
    for a, b in zip(k1, k2):
        run += a - b
        if run < 0:
            return False
    return run == 0


# lowest and highest energy grades


def e0_e_brute(shape: Shape, s: int) -> tuple:
    basis = enumerate_graded(shape, s)
    if not basis:
        raise ValueError(f"degree {s} outside [0, {shape.top}]")
    grades = [edeg(t, shape.ell) for t in basis]
    return min(grades), max(grades)


def delta_sum_energy(shape: Shape, s: int):
    """Value of the delta-sum expression for E(s) in the middle range, or None.

    Uses the first decomposition s = j(ell-1) + h + n' found with 1 <= j <= m-1,
    1 <= h <= ell-1, 0 <= n' <= n.
    """
    m, n, l = shape.m, shape.n, shape.ell
    for j in range(1, m):
        for n1 in range(0, n + 1):
            h = s - j * (l - 1) - n1
            if 1 <= h <= l - 1:
                j1, j2 = divmod(j, l)
                na, nb = divmod(n1, l)
                t = nb + h - j2
                val = j - j1 + na
                if -(l - 1) <= t <= -1:
                    val -= 1
                if l <= t <= 2 * l - 2:
                    val += 1
                return val
    return None


def e0_e_closed(shape: Shape, s: int) -> tuple:
    """Case split of the lowest/highest energy grade, capped at m(r-1)."""
    m, n, l, r = shape.m, shape.n, shape.ell, shape.r
    if not 0 <= s <= shape.top:
        raise ValueError(f"degree {s} outside [0, {shape.top}]")
    cap = m * (r - 1)
    if s <= l - 1:
        return 0, 0
    if s >= shape.top - l + 1:
        return cap, cap
    if s <= m * (l - 1) + n:
        val = delta_sum_energy(shape, s)
        if val is None:
            val = s // l
        return 0, min(val, cap)
    k = (s - (m - 1) * (l - 1) - n) // l
    return k, min(s // l, cap)


def e0_e(shape: Shape, s: int) -> tuple:
    """Brute-force (E0, E); the closed form is checked against it elsewhere."""
    return e0_e_brute(shape, s)


# the sets K(kappa) and their representatives


def k_set(shape: Shape, kappa: int) -> list:
    """m-tuples with entries at most r-1 summing to kappa, lexicographically ordered."""
    if kappa < 0:
        return []
    return sorted(_compositions(kappa, shape.m, shape.r - 1))


def k_count(shape: Shape, kappa: int) -> int:
    """Coefficient of t^kappa in (1 + t + ... + t^(r-1))^m."""
    poly = [1]
    for _ in range(shape.m):
        nxt = [0] * (len(poly) + shape.r - 1)
        for i, c in enumerate(poly):
            for j in range(shape.r):
                nxt[i + j] += c
        poly = nxt
    return poly[kappa] if 0 <= kappa < len(poly) else 0


def omega_tail(n: int, h: int) -> tuple:
    """n bits with the first h set."""
    return tuple(int(i < h) for i in range(n))


def eta_repr(shape: Shape, kvec, s: int) -> SuperTuple:
    """Representative monomial of degree s with energy vector kvec."""
    m, n, l = shape.m, shape.n, shape.ell
    kvec = tuple(kvec)
    if len(kvec) != m or any(k < 0 or k > shape.r - 1 for k in kvec):
        raise ValueError(f"energy vector {kvec} not admissible for {shape}")
    rest = s - l * sum(kvec)
    if not 0 <= rest <= m * (l - 1) + n:
        raise ValueError(f"degree {s} not realizable with energy vector {kvec}")
    if rest <= m * (l - 1):
        gamma = []
        for _ in range(m):
            take = min(l - 1, rest)
            gamma.append(take)
            rest -= take
        mu = (0,) * n
    else:
        gamma = [l - 1] * m
        mu = omega_tail(n, rest - m * (l - 1))
    alpha = tuple(l * k + g for k, g in zip(kvec, gamma))
    return SuperTuple(alpha, mu)
