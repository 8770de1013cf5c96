"""Quantum super de Rham complex: forms, wedge signs, differentials, cohomology."""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations, product
from math import comb

from .linalg import SparseMatrix, rank
from .scalars import RootSpec
from .superindex import Shape, SuperTuple, enumerate_graded, star


class DForm(tuple):
    """(x, xi): x a SuperTuple for x^(alpha) (x) x^nu, xi the m+n dxi-bits."""

    __slots__ = ()

    def __new__(cls, x: SuperTuple, xi: tuple):
        return tuple.__new__(cls, (x, tuple(xi)))

    @property
    def x(self) -> SuperTuple:
        return self[0]

    @property
    def xi(self) -> tuple:
        return self[1]

    @property
    def degree(self) -> int:
        return sum(self[1])

    def to_json(self) -> dict:
        return {"x": self.x.to_json(), "xi": list(self.xi)}

    def __str__(self):
        idx = [str(i + 1) for i, b in enumerate(self.xi) if b]
        return f"{self.x} dxi[{','.join(idx)}]"


@dataclass(frozen=True)
class SuperWeight:
    """Even part in Z_+^m, odd part in Z_2^n."""

    even: tuple
    odd: tuple

    def k(self, shape: Shape) -> int:
        return sum(1 for a in self.even if a == shape.r * shape.ell)

    @property
    def h0(self) -> int:
        return sum(1 for a in self.even if a == 0)

    @property
    def h(self) -> int:
        return self.h0 + sum(1 for b in self.odd if b == 0)

    @property
    def nu_size(self) -> int:
        return sum(self.odd)

    def is_zero(self) -> bool:
        return not any(self.even) and not any(self.odd)

    def is_critical(self, shape: Shape) -> bool:
        return self.k(shape) + self.h == shape.m + shape.n

    def to_json(self) -> dict:
        return {"even": list(self.even), "odd": list(self.odd)}

    def __str__(self):
        return f"({','.join(map(str, self.even))}|{','.join(map(str, self.odd))})"


def raw_weight(form: DForm) -> tuple:
    """Integer weight: x-exponents plus dxi-bits, odd coordinates not reduced."""
    x, xi = form
    return tuple(a + b for a, b in zip(x.alpha + x.mu, xi))


def super_weight(form: DForm, m: int) -> SuperWeight:
    w = raw_weight(form)
    return SuperWeight(w[:m], tuple(v % 2 for v in w[m:]))


# wedge product of dxi monomials


def wedge(a: tuple, b: tuple, spec: RootSpec):
    """dxi^a ^ dxi^b as (coefficient, bits), or None when the bits overlap.

    The sign is (-q)^(number of pairs j in a, i in b with j > i).
    """
    if len(a) != len(b):
        raise ValueError("length mismatch")
    if any(x and y for x, y in zip(a, b)):
        return None
    swaps = star(a, b)
    coeff = spec.qpow(swaps)
    if swaps % 2:
        coeff = -coeff
    return coeff, tuple(x + y for x, y in zip(a, b))


def wedge_blocks(mu, nu, mu2, nu2, spec: RootSpec):
    """Displayed even/odd block rule: (-q)^(nu*mu2 + mu*mu2 + nu*nu2)."""
    a = tuple(mu) + tuple(nu)
    b = tuple(mu2) + tuple(nu2)
    if any(x and y for x, y in zip(a, b)):
        return None
    e = sum(nu) * sum(mu2) + star(mu, mu2) + star(nu, nu2)
    coeff = spec.qpow(e)
    if e % 2:
        coeff = -coeff
    return coeff, tuple(x + y for x, y in zip(a, b))


# differential


def d_terms(form: DForm, shape: Shape, rule: str = "compact"):
    """Terms (coefficient, target) of d applied to one basis form.

    rule="compact" uses q^(eps_j * lambda) (-1)^(eps_j * xi) with the raw weight;
    rule="direct" uses the separate even and odd coefficient formulas.
    """
    spec = shape.spec
    m, n = shape.m, shape.n
    x, xi = form
    alpha, nu = x.alpha, x.mu
    out = []
    lam = raw_weight(form)
    for j in range(m + n):
        if xi[j]:
            continue
        if j < m:
            if alpha[j] == 0:
                continue
            tx = SuperTuple(alpha[:j] + (alpha[j] - 1,) + alpha[j + 1:], nu)
            if rule == "compact":
                qexp, sgn = sum(lam[:j]), sum(xi[:j])
            else:
                qexp = sum(alpha[:j]) + sum(xi[:j])
                sgn = sum(xi[:j])
        else:
            t = j - m
            if nu[t] == 0:
                continue
            tx = SuperTuple(alpha, nu[:t] + (0,) + nu[t + 1:])
            if rule == "compact":
                qexp, sgn = sum(lam[:j]), sum(xi[:j])
            else:
                qexp = sum(alpha) + sum(nu[:t]) + sum(xi[:j])
                sgn = sum(xi[:j])
        coeff = spec.qpow(qexp)
        if sgn % 2:
            coeff = -coeff
        txi = xi[:j] + (1,) + xi[j + 1:]
        out.append((coeff, DForm(tx, txi)))
    return out


@lru_cache(maxsize=None)
def _x_basis(shape: Shape) -> tuple:
    out = []
    for s in range(shape.top + 1):
        out.extend(enumerate_graded(shape, s))
    return tuple(out)


@lru_cache(maxsize=None)
def forms(shape: Shape, s: int) -> tuple:
    """Degree-s forms of the truncated complex, ordered by (xi-word, x)."""
    k = shape.m + shape.n
    out = []
    for word in combinations(range(k), s):
        xi = tuple(int(i in word) for i in range(k))
        out.extend(DForm(x, xi) for x in _x_basis(shape))
    return tuple(out)


def d_matrix(shape: Shape, s: int, weight: SuperWeight = None, rule: str = "compact") -> SparseMatrix:
    """Matrix of d^s from degree-s to degree-(s+1) forms, optionally one weight block."""
    src = block_basis(shape, s, weight) if weight is not None else forms(shape, s)
    k = shape.m + shape.n
    if s + 1 <= k:
        tgt = block_basis(shape, s + 1, weight) if weight is not None else forms(shape, s + 1)
    else:
        tgt = ()
    pos = {f: i for i, f in enumerate(tgt)}
    cols = {}
    for j, f in enumerate(src):
        col = {}
        for coeff, t in d_terms(f, shape, rule):
            i = pos[t]
            col[i] = col[i] + coeff if i in col else coeff
        col = {i: c for i, c in col.items() if c}
        if col:
            cols[j] = col
    return SparseMatrix.from_columns(len(tgt), len(src), shape.spec.field, cols)


def complex_check(shape: Shape, enlarge: bool = True):
    """d^(s+1) d^s = 0 for all s; with enlarge=True also on the box enlarged by one level.

    Returns (passed, witnesses).
    """
    shapes = [shape] + ([Shape(shape.m, shape.n, shape.ell, shape.r + 1, shape.order)] if enlarge else [])
    witnesses = []
    for sh in shapes:
        mats = [d_matrix(sh, s) for s in range(sh.m + sh.n + 1)]
        for s in range(sh.m + sh.n):
            prod = mats[s + 1] @ mats[s]
            if not prod.is_zero():
                i, j, v = prod.entries()[0]
                witnesses.append({"shape": sh.to_json(), "s": s, "source": str(forms(sh, s)[j]),
                                  "value": str(v)})
    return not witnesses, witnesses


# q-differential operators on the Grassmann algebra


def partial_operator(shape: Shape, s: int, i: int) -> SparseMatrix:
    """Lower coordinate i (0-based) with weight q^(eps_i * <alpha, nu>): Omega^(s) -> Omega^(s-1)."""
    spec = shape.spec
    src = enumerate_graded(shape, s)
    tgt = enumerate_graded(shape, s - 1)
    pos = {t: k for k, t in enumerate(tgt)}
    cols = {}
    for j, t in enumerate(src):
        flat = list(t.flat())
        if flat[i] == 0:
            continue
        coeff = spec.qpow(sum(flat[:i]))
        flat[i] -= 1
        tt = SuperTuple(tuple(flat[:shape.m]), tuple(flat[shape.m:]))
        cols[j] = {pos[tt]: coeff}
    return SparseMatrix.from_columns(len(tgt), len(src), spec.field, cols)


def partial_ops_check(shape: Shape, s: int) -> bool:
    """j-partial after i-partial equals q^-1 times the reverse order, for j > i."""
    if s < 2:
        return True
    qinv = shape.spec.q.inverse()
    k = shape.m + shape.n
    ops = {i: partial_operator(shape, s, i) for i in range(k)}
    low = {i: partial_operator(shape, s - 1, i) for i in range(k)}
    for i in range(k):
        for j in range(i + 1, k):
            if low[j] @ ops[i] != (low[i] @ ops[j]).scale(qinv):
                return False
    return True


# weight blocks


def _coordinate_options(lam: SuperWeight, shape: Shape, bounded: bool = True):
    """Per coordinate: list of (x-exponent, xi-bit) realising the weight."""
    bound = shape.bound
    opts = []
    for a in lam.even:
        choices = []
        for b in (0, 1):
            e = a - b
            if e >= 0 and (not bounded or e <= bound):
                choices.append((e, b))
        opts.append(choices)
    for v in lam.odd:
        opts.append([(1, 0), (0, 1)] if v else [(0, 0), (1, 1)])
    return opts


def block_basis(shape: Shape, s: int, lam: SuperWeight, bounded: bool = True) -> tuple:
    """Forms of degree s and super-weight lam, ordered lexicographically by xi-word."""
    m = shape.m
    out = []
    for pick in product(*_coordinate_options(lam, shape, bounded)):
        xi = tuple(b for _, b in pick)
        if sum(xi) != s:
            continue
        ex = tuple(e for e, _ in pick)
        out.append(DForm(SuperTuple(ex[:m], ex[m:]), xi))
    word = lambda f: tuple(i for i, b in enumerate(f.xi) if b)
    out.sort(key=lambda f: (word(f), f.x))
    return tuple(out)


@dataclass
class DeRhamBlock:
    weight: SuperWeight
    s: int
    basis: tuple
    d_in: SparseMatrix
    d_out: SparseMatrix

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def cohomology(self) -> int:
        return self.dim - rank(self.d_out) - rank(self.d_in)


def occurring_weights(shape: Shape, s: int) -> list:
    seen = {super_weight(f, shape.m) for f in forms(shape, s)}
    return sorted(seen, key=lambda w: (w.even, w.odd))


def all_weights(shape: Shape) -> list:
    seen = set()
    for s in range(shape.m + shape.n + 1):
        seen.update(occurring_weights(shape, s))
    return sorted(seen, key=lambda w: (w.even, w.odd))


def block_dim_formula(shape: Shape, lam: SuperWeight, s: int) -> int:
    k, h0 = lam.k(shape), lam.h0
    top = shape.m + shape.n - k - h0
    return comb(top, s - k) if 0 <= s - k <= top else 0


def weight_blocks(shape: Shape, s: int) -> list:
    """Degree-s forms partitioned by super-weight, each checked against the closed dimension."""
    groups = {}
    for f in forms(shape, s):
        groups.setdefault(super_weight(f, shape.m), []).append(f)
    blocks = []
    for lam in sorted(groups, key=lambda w: (w.even, w.odd)):
        basis = block_basis(shape, s, lam)
        if sorted(basis) != sorted(groups[lam]):
            raise AssertionError(f"block enumeration mismatch at {lam}")
        if len(basis) != block_dim_formula(shape, lam, s):
            raise AssertionError(f"block dim {len(basis)} != closed form at {lam}, s={s}")
        d_out = d_matrix(shape, s, lam)
        d_in = d_matrix(shape, s - 1, lam) if s > 0 else SparseMatrix(len(basis), 0, shape.spec.field)
        blocks.append(DeRhamBlock(lam, s, basis, d_in, d_out))
    return blocks


def critical_weights(shape: Shape, s: int) -> list:
    return [w for w in occurring_weights(shape, s) if w.is_critical(shape)]


def critical_forms(shape: Shape, s: int) -> list:
    """Forms x((r ell - 1) on I | tau) dxi(I | tau) with |I| + |tau| = s."""
    m, n = shape.m, shape.n
    out = []
    for word in combinations(range(m + n), s):
        alpha = tuple(shape.bound if i in word else 0 for i in range(m))
        tau = tuple(int(m + t in word) for t in range(n))
        xi = tuple(int(i in word) for i in range(m + n))
        out.append(DForm(SuperTuple(alpha, tau), xi))
    return out


# cohomology


@dataclass
class CohomologyRow:
    s: int
    dim_forms: int
    rank_d: int
    dim_h: int
    expected: int
    n_critical_weights: int
    n_critical_forms: int


@dataclass
class CohomologyTable:
    shape: Shape
    rows: list
    noncritical_exact: bool
    critical_per_form: bool
    rank_bound_ok: bool
    representatives_ok: bool
    euler_ok: bool
    diagnostics: list = dc_field(default_factory=list)

    @property
    def betti(self) -> list:
        return [r.dim_h for r in self.rows]

    @property
    def ok(self) -> bool:
        return (all(r.dim_h == r.expected for r in self.rows) and self.noncritical_exact
                and self.critical_per_form and self.rank_bound_ok and self.representatives_ok
                and self.euler_ok)

    def to_json(self) -> dict:
        return {"shape": self.shape.to_json(), "ok": self.ok, "betti": self.betti,
                "rows": [r.__dict__ for r in self.rows],
                "noncritical_exact": self.noncritical_exact,
                "critical_per_form": self.critical_per_form,
                "rank_bound_ok": self.rank_bound_ok,
                "representatives_ok": self.representatives_ok,
                "euler_ok": self.euler_ok, "diagnostics": self.diagnostics}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["s", "dim_forms", "rank_d", "dim_H", "expected_binom",
                    "critical_weights", "critical_forms"])
        for r in self.rows:
            w.writerow([r.s, r.dim_forms, r.rank_d, r.dim_h, r.expected,
                        r.n_critical_weights, r.n_critical_forms])
        return buf.getvalue()


def cohomology(shape: Shape) -> CohomologyTable:
    k = shape.m + shape.n
    per_weight = {}
    for s in range(k + 1):
        for blk in weight_blocks(shape, s):
            per_weight.setdefault(blk.weight, {})[s] = blk
    noncrit_exact = True
    crit_ok = True
    bound_ok = True
    diagnostics = []
    h = [0] * (k + 1)
    ranks = [0] * (k + 1)
    for lam, blocks in per_weight.items():
        crit = lam.is_critical(shape)
        kk, h0 = lam.k(shape), lam.h0
        for s, blk in blocks.items():
            r_out = rank(blk.d_out)
            ranks[s] += r_out
            hs = blk.cohomology
            h[s] += hs
            if crit:
                if hs != blk.dim or hs != comb(shape.n, s - kk):
                    crit_ok = False
                    diagnostics.append({"weight": str(lam), "s": s, "dim": blk.dim, "H": hs})
            else:
                if hs:
                    noncrit_exact = False
                    diagnostics.append({"weight": str(lam), "s": s, "dim": blk.dim, "H": hs})
                top = k - kk - h0 - 1
                need = comb(top, s - kk) if 0 <= s - kk <= top else 0
                if r_out < need:
                    bound_ok = False
                    diagnostics.append({"weight": str(lam), "s": s, "rank": r_out, "bound": need})
    rows = []
    reps_ok = True
    for s in range(k + 1):
        reps = critical_forms(shape, s)
        for f in reps:
            if d_terms(f, shape):
                reps_ok = False
        dim_forms = len(forms(shape, s))
        rows.append(CohomologyRow(s, dim_forms, ranks[s], h[s], comb(k, s),
                                  len(critical_weights(shape, s)), len(reps)))
    euler_forms = sum((-1) ** r.s * r.dim_forms for r in rows)
    euler_h = sum((-1) ** r.s * r.dim_h for r in rows)
    return CohomologyTable(shape, rows, noncrit_exact, crit_ok, bound_ok, reps_ok,
                           euler_forms == euler_h, diagnostics)


# acyclicity, one weight at a time


@dataclass
class PoincareReport:
    weight: SuperWeight
    r: int
    dims: list
    ranks: list
    exact: bool
    same_as_untruncated: bool

    def to_json(self):
        return {"weight": self.weight.to_json(), "r": self.r, "dims": self.dims,
                "ranks": self.ranks, "exact": self.exact,
                "same_as_untruncated": self.same_as_untruncated}


def poincare_level(m: int, n: int, ell: int, lam: SuperWeight) -> int:
    """Smallest r with r*ell > |even part| + m + n."""
    need = sum(lam.even) + m + n
    return need // ell + 1


def weight_complex(shape: Shape, lam: SuperWeight):
    """dims and ranks of the lam-block in every degree."""
    k = shape.m + shape.n
    dims, ranks = [], []
    for s in range(k + 1):
        dims.append(len(block_basis(shape, s, lam)))
        ranks.append(rank(d_matrix(shape, s, lam)))
    return dims, ranks


def poincare_check(m: int, n: int, ell: int, lam: SuperWeight, order: int = 0) -> PoincareReport:
    if lam.is_zero():
        raise ValueError("the zero weight is excluded")
    if len(lam.even) != m or len(lam.odd) != n or any(v not in (0, 1) for v in lam.odd):
        raise ValueError(f"weight {lam} does not fit m={m}, n={n}")
    r = poincare_level(m, n, ell, lam)
    shape = Shape(m, n, ell, r, order)
    same = all(block_basis(shape, s, lam) == block_basis(shape, s, lam, bounded=False)
               for s in range(m + n + 1))
    dims, ranks = weight_complex(shape, lam)
    exact = all(dims[s] == ranks[s] + (ranks[s - 1] if s else 0) for s in range(m + n + 1))
    return PoincareReport(lam, r, dims, ranks, exact, same)


def random_weights(m: int, n: int, count: int, seed: int = 0, max_even: int = 6) -> list:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        lam = SuperWeight(tuple(rng.randint(0, max_even) for _ in range(m)),
                          tuple(rng.randint(0, 1) for _ in range(n)))
        if not lam.is_zero():
            out.append(lam)
    return out


def block_dims_check(shape: Shape):
    """Closed block dimension and nonemptiness (k <= s <= m+n-h0) for every occurring weight.

    Returns (passed, failures).
    """
    k = shape.m + shape.n
    failures = []
    for lam in all_weights(shape):
        kk, h0 = lam.k(shape), lam.h0
        for s in range(k + 1):
            dim = len(block_basis(shape, s, lam))
            nonempty = kk <= s <= k - h0
            if dim != block_dim_formula(shape, lam, s) or (dim > 0) != nonempty:
                failures.append({"weight": str(lam), "s": s, "dim": dim,
                                 "expected": block_dim_formula(shape, lam, s)})
    return not failures, failures
