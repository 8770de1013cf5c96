"""The quantum Grassmann superalgebra: product, generator actions, graded pieces."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from .linalg import SparseMatrix
from .scalars import CycNum, RootSpec, q_binom, q_int
from .superindex import (Shape, SuperTuple, enumerate_graded, graded_dim_formula,
                         star, super_star)


class OmegaElement:
    """Finite linear combination of monomials x^(alpha) (x) x^mu."""

    __slots__ = ("shape", "terms")

    def __init__(self, shape: Shape, terms=None):
        self.shape = shape
        self.terms = {t: c for t, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, shape, alpha, mu=None, coeff=None):
        mu = tuple(mu) if mu is not None else (0,) * shape.n
        coeff = coeff if coeff is not None else shape.spec.field.one
        return cls(shape, {SuperTuple(tuple(alpha), mu): coeff})

    @classmethod
    def one(cls, shape):
        return cls.monomial(shape, (0,) * shape.m)

    def __add__(self, other):
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out[t] + c if t in out else c
        return OmegaElement(self.shape, out)

    def scale(self, a):
        return OmegaElement(self.shape, {t: c * a for t, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, OmegaElement):
            return NotImplemented
        return self.shape == other.shape and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{t}" for t, c in sorted(self.terms.items()))


def _exterior_sign_power(mu, nu):
    """Reordering x^mu x^nu into normal order: (-q)^(mu*nu), or None on overlap."""
    if any(a and b for a, b in zip(mu, nu)):
        return None
    return star(mu, nu)


def monomial_product(a: SuperTuple, b: SuperTuple, spec: RootSpec):
    """Coefficient and index of x^a * x^b (untruncated), or None when zero."""
    swaps = _exterior_sign_power(a.mu, b.mu)
    if swaps is None:
        return None
    coeff = spec.qpow(super_star(a, b))
    if swaps % 2:
        coeff = -coeff
    for x, y in zip(a.alpha, b.alpha):
        coeff = coeff * q_binom(x + y, x, spec)
        if not coeff:
            return None
    alpha = tuple(x + y for x, y in zip(a.alpha, b.alpha))
    mu = tuple(x + y for x, y in zip(a.mu, b.mu))
    return coeff, SuperTuple(alpha, mu)


def multiply(a: OmegaElement, b: OmegaElement, truncated: bool = False) -> OmegaElement:
    """Star product; with truncated=True terms outside the box are dropped."""
    if a.shape != b.shape:
        raise ValueError("shape mismatch")
    spec = a.shape.spec
    bound = a.shape.bound
    out = {}
    for ta, ca in a.terms.items():
        for tb, cb in b.terms.items():
            hit = monomial_product(ta, tb, spec)
            if hit is None:
                continue
            coeff, t = hit
            if truncated and any(x > bound for x in t.alpha):
                continue
            c = coeff * ca * cb
            out[t] = out[t] + c if t in out else c
    return OmegaElement(a.shape, out)


# generators


def generator_labels(shape: Shape) -> list:
    """e_i, f_i for 1 <= i < m+n; K_i, Kinv_i for 1 <= i <= m+n."""
    k = shape.m + shape.n
    labels = [f"e{i}" for i in range(1, k)] + [f"f{i}" for i in range(1, k)]
    labels += [f"K{i}" for i in range(1, k + 1)] + [f"Kinv{i}" for i in range(1, k + 1)]
    return labels


def parse_label(label: str):
    for kind in ("Kinv", "K", "e", "f"):
        if label.startswith(kind):
            return kind, int(label[len(kind):])
    raise ValueError(f"unknown generator {label!r}")


def act_monomial(shape: Shape, label: str, t: SuperTuple):
    """(coefficient, target) for a generator on a monomial, or None when it vanishes."""
    kind, i = parse_label(label)
    m, n = shape.m, shape.n
    spec = shape.spec
    k = m + n
    bound = shape.bound
    alpha, mu = list(t.alpha), list(t.mu)
    if kind in ("K", "Kinv"):
        if not 1 <= i <= k:
            raise ValueError(f"invalid generator {label}")
        power = alpha[i - 1] if i <= m else -mu[i - m - 1]
        if kind == "Kinv":
            power = -power
        return spec.qpow(power), t
    if not 1 <= i < k:
        raise ValueError(f"invalid generator {label}")
    if i < m:
        a, b = i - 1, i
        if kind == "e":
            coeff = q_int(alpha[a] + 1, spec)
            alpha[a] += 1
            alpha[b] -= 1
        else:
            coeff = q_int(alpha[b] + 1, spec)
            alpha[a] -= 1
            alpha[b] += 1
    elif i == m:
        if kind == "e":
            if mu[0] != 1:
                return None
            coeff = q_int(alpha[m - 1] + 1, spec)
            alpha[m - 1] += 1
            mu[0] = 0
        else:
            if mu[0] != 0:
                return None
            coeff = spec.field.one
            alpha[m - 1] -= 1
            mu[0] = 1
    else:
        a, b = i - m - 1, i - m
        if kind == "e":
            if (mu[a], mu[b]) != (0, 1):
                return None
            mu[a], mu[b] = 1, 0
        else:
            if (mu[a], mu[b]) != (1, 0):
                return None
            mu[a], mu[b] = 0, 1
        coeff = spec.field.one
    if min(alpha) < 0 or max(alpha) > bound or not coeff:
        return None
    return coeff, SuperTuple(tuple(alpha), tuple(mu))


def act_generator(label: str, v: OmegaElement) -> OmegaElement:
    out = {}
    for t, c in v.terms.items():
        hit = act_monomial(v.shape, label, t)
        if hit is None:
            continue
        coeff, tgt = hit
        w = coeff * c
        out[tgt] = out[tgt] + w if tgt in out else w
    return OmegaElement(v.shape, out)


# graded pieces and their matrices


@dataclass(frozen=True)
class GradedPiece:
    shape: Shape
    s: int
    basis: tuple
    index: dict = dc_field(compare=False, hash=False, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def field(self):
        return self.shape.spec.field

    def vector(self, elem: OmegaElement) -> dict:
        return {self.index[t]: c for t, c in elem.terms.items()}

    def element(self, vec: dict) -> OmegaElement:
        return OmegaElement(self.shape, {self.basis[i]: c for i, c in vec.items()})

    def unit_vector(self, t: SuperTuple) -> dict:
        return {self.index[t]: self.field.one}


@lru_cache(maxsize=None)
def graded_piece(shape: Shape, s: int) -> GradedPiece:
    basis = tuple(enumerate_graded(shape, s))
    return GradedPiece(shape, s, basis, {t: i for i, t in enumerate(basis)})


class ActionMatrices:
    """Generator matrices on a graded piece, columns indexed by source monomial."""

    def __init__(self, piece: GradedPiece, mats: dict):
        self.piece = piece
        self.mats = mats

    def __getitem__(self, label) -> SparseMatrix:
        return self.mats[label]

    @property
    def labels(self):
        return list(self.mats)

    def raising(self):
        return [self.mats[f"e{i}"] for i in range(1, self.piece.shape.m + self.piece.shape.n)]

    def non_diagonal(self):
        k = self.piece.shape.m + self.piece.shape.n
        return [self.mats[f"{x}{i}"] for x in "ef" for i in range(1, k)]

    def all(self):
        return list(self.mats.values())

    def to_json(self) -> dict:
        return {label: mat.to_json() for label, mat in self.mats.items()}


@lru_cache(maxsize=None)
def action_matrices(piece: GradedPiece) -> ActionMatrices:
    shape = piece.shape
    d = piece.dim
    field = piece.field
    mats = {}
    for label in generator_labels(shape):
        cols = {}
        for j, t in enumerate(piece.basis):
            hit = act_monomial(shape, label, t)
            if hit is not None:
                coeff, tgt = hit
                cols[j] = {piece.index[tgt]: coeff}
        mats[label] = SparseMatrix.from_columns(d, d, field, cols)
    return ActionMatrices(piece, mats)


def dim_check(shape: Shape, s: int) -> tuple:
    enumerated = len(enumerate_graded(shape, s))
    formula = graded_dim_formula(shape, s)
    if enumerated != formula:
        raise AssertionError(f"dimension mismatch at {shape}, s={s}: {enumerated} vs {formula}")
    return enumerated, formula


# defining relations


@dataclass
class RelationReport:
    shape: Shape
    s: int
    checked: dict = dc_field(default_factory=dict)
    failures: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, family: str, name: str, lhs: SparseMatrix, rhs: SparseMatrix = None):
        self.checked[family] = self.checked.get(family, 0) + 1
        diff = lhs if rhs is None else lhs - rhs
        if not diff.is_zero():
            i, j, v = diff.entries()[0]
            self.failures.append({"family": family, "relation": name,
                                  "row": i, "col": j, "value": str(v)})

    def to_json(self) -> dict:
        return {"shape": self.shape.to_json(), "s": self.s, "ok": self.ok,
                "checked": self.checked, "failures": self.failures}


def _power(mat, k, ident):
    out = ident
    for _ in range(k):
        out = mat @ out
    return out


def relations_check(am: ActionMatrices, spec: RootSpec = None) -> RelationReport:
    piece = am.piece
    shape = piece.shape
    spec = spec or shape.spec
    field = spec.field
    m, k = shape.m, shape.m + shape.n
    d = piece.dim
    ident = SparseMatrix.identity(d, field)
    zero = SparseMatrix.zeros(d, d, field)
    rep = RelationReport(shape, piece.s)
    e = {i: am[f"e{i}"] for i in range(1, k)}
    f = {i: am[f"f{i}"] for i in range(1, k)}
    K = {i: am[f"K{i}"] for i in range(1, k + 1)}
    Kinv = {i: am[f"Kinv{i}"] for i in range(1, k + 1)}

    def qi(i):
        return spec.q if i <= m else spec.q.inverse()

    def parity(i):
        return 1 if i == m else 0

    # K invertible and commuting
    for i in range(1, k + 1):
        rep.record("k_inverse", f"K{i} Kinv{i} = 1", K[i] @ Kinv[i], ident)
        rep.record("k_inverse", f"Kinv{i} K{i} = 1", Kinv[i] @ K[i], ident)
        for j in range(i + 1, k + 1):
            rep.record("k_inverse", f"K{i} K{j} = K{j} K{i}", K[i] @ K[j], K[j] @ K[i])
    # K conjugation
    for i in range(1, k + 1):
        for j in range(1, k):
            p = int(i == j) - int(i == j + 1)
            rep.record("k_conjugation", f"K{i} e{j}", K[i] @ e[j], (e[j] @ K[i]).scale(qi(i) ** p))
            rep.record("k_conjugation", f"K{i} f{j}", K[i] @ f[j], (f[j] @ K[i]).scale(qi(i) ** (-p)))
    # e,f bracket
    for i in range(1, k):
        for j in range(1, k):
            sign = -1 if parity(i) * parity(j) else 1
            lhs = e[i] @ f[j] - (f[j] @ e[i]).scale(field.from_int(sign))
            if i == j:
                big = K[i] @ Kinv[i + 1]
                big_inv = Kinv[i] @ K[i + 1]
                rhs = (big - big_inv).scale((qi(i) - qi(i).inverse()).inverse())
            else:
                rhs = zero
            rep.record("ef_bracket", f"[e{i}, f{j}]", lhs, rhs)
    # distant generators commute
    for i in range(1, k):
        for j in range(i + 2, k):
            rep.record("distant_commute", f"e{i} e{j}", e[i] @ e[j], e[j] @ e[i])
            rep.record("distant_commute", f"f{i} f{j}", f[i] @ f[j], f[j] @ f[i])
    # Serre
    q2 = spec.q + spec.q.inverse()
    for i in range(1, k):
        if i == m:
            continue
        for j in (i - 1, i + 1):
            if not 1 <= j < k:
                continue
            for name, x in (("e", e), ("f", f)):
                lhs = x[i] @ x[i] @ x[j] - (x[i] @ x[j] @ x[i]).scale(q2) + x[j] @ x[i] @ x[i]
                rep.record("serre", f"Serre {name}{i},{name}{j}", lhs)
    # odd squares, only when an odd simple root exists
    if shape.n:
        rep.record("odd_square", f"e{m}^2", e[m] @ e[m])
        rep.record("odd_square", f"f{m}^2", f[m] @ f[m])
    # super Serre needs both neighbours of the odd simple root
    if m >= 2 and m + 1 < k:
        for name, x in (("e", e), ("f", f)):
            a, b, c = x[m - 1], x[m], x[m + 1]
            lhs = (a @ b @ c @ b + b @ a @ b @ c + c @ b @ a @ b + b @ c @ b @ a
                   - (b @ a @ c @ b).scale(q2))
            rep.record("super_serre", f"super Serre {name}", lhs)
    # restrictedness
    for i in range(1, k):
        if i == m:
            continue
        rep.record("restricted", f"e{i}^ell", _power(e[i], spec.ell, ident))
        rep.record("restricted", f"f{i}^ell", _power(f[i], spec.ell, ident))
    # K_i^order = 1 as a diagnostic
    for i in range(1, k + 1):
        rep.record("K-order", f"K{i}^order", _power(K[i], spec.order, ident), ident)
    return rep
