"""Submodule structure of the graded pieces: closures, socles, Loewy layers, nets.

Every generator maps a monomial to a multiple of a monomial, and distinct
monomials carry distinct torus weights. Torus-stable subspaces are therefore
spanned by monomials. That covers socles, isotypic parts, spaces of maximal
vectors, and the cyclic modules of monomials. The certificates below rely on
this to reduce socle and simplicity questions to finitely many monomial
closures.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from .linalg import (SparseMatrix, Subspace, block_diag, commutant, intersect,
                     is_local_algebra, nullspace, radical_dim)
from .omega import ActionMatrices, GradedPiece, action_matrices, graded_piece
from .superindex import (Shape, e0_e, edeg, edeg_vector, eta_repr, graded_dim_formula,
                         k_count, k_set, succcurlyeq_weight)


class CertificationError(AssertionError):
    """A certificate step failed."""


@dataclass
class Module:
    """A finite module given by generator matrices in a basis labelled by monomials.

    Labels are None for bases that are not monomial (restrictions to
    arbitrary subspaces).
    """

    mats: dict
    labels: list
    field: object
    shape: Shape
    s: int

    @property
    def dim(self) -> int:
        return len(self.labels)

    def raising(self):
        k = self.shape.m + self.shape.n
        return [self.mats[f"e{i}"] for i in range(1, k)]

    def generators(self):
        return list(self.mats.values())

    @property
    def graded(self) -> bool:
        return all(t is not None for t in self.labels)

    def index(self, t) -> int:
        return self.labels.index(t)

    def unit(self, i: int) -> dict:
        return {i: self.field.one}

    def coordinate_span(self, indices) -> Subspace:
        return Subspace.coordinate(self.dim, self.field, indices)


def piece_module(shape: Shape, s: int) -> Module:
    piece = graded_piece(shape, s)
    am = action_matrices(piece)
    return Module(dict(am.mats), list(piece.basis), piece.field, shape, s)


def quotient_module(mod: Module, sub: Subspace) -> Module:
    """Module structure on mod/sub, coordinates = non-pivot columns of sub."""
    pivots = set(sub.pivots)
    keep = [i for i in range(mod.dim) if i not in pivots]
    pos = {c: k for k, c in enumerate(keep)}
    mats = {}
    for label, mat in mod.mats.items():
        cols = {}
        for k, c in enumerate(keep):
            img = sub.reduce(mat.column(c))
            col = {pos[i]: v for i, v in img.items()}
            if col:
                cols[k] = col
        mats[label] = SparseMatrix.from_columns(len(keep), len(keep), mod.field, cols)
    labels = [mod.labels[c] for c in keep]
    return Module(mats, labels, mod.field, mod.shape, mod.s)


def submodule(mod: Module, sub: Subspace) -> Module:
    """Restriction of the action to an invariant subspace, in its rref basis."""
    rows = sub.rref_rows
    pivots = sub.pivots
    mats = {}
    for label, mat in mod.mats.items():
        cols = {}
        for k, row in enumerate(rows):
            img = mat.apply(row)
            if not sub.member(img):
                raise CertificationError(f"subspace not invariant under {label}")
            col = {c: img[p] for c, p in enumerate(pivots) if p in img}
            if col:
                cols[k] = col
        mats[label] = SparseMatrix.from_columns(len(rows), len(rows), mod.field, cols)
    labels = []
    for p, row in zip(pivots, rows):
        labels.append(mod.labels[p] if len(row) == 1 else None)
    return Module(mats, labels, mod.field, mod.shape, mod.s)


def direct_sum(a: Module, b: Module) -> Module:
    mats = {label: block_diag(a.mats[label], b.mats[label]) for label in a.mats}
    return Module(mats, a.labels + b.labels, a.field, a.shape, a.s)


# cyclic modules


@dataclass
class CyclicModule:
    module: Module
    generator: dict
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim


def closure(mod: Module, vectors) -> Subspace:
    """Smallest invariant subspace containing the given vectors."""
    space = Subspace(mod.dim, mod.field)
    queue = []
    for v in vectors:
        r = space.reduce(v)
        if r:
            space.add(r)
            queue.append(r)
    mats = mod.generators()
    while queue:
        w = queue.pop()
        for mat in mats:
            img = mat.apply(w)
            if not img:
                continue
            r = space.reduce(img)
            if r:
                space.add(r)
                queue.append(r)
    return space


def cyclic_closure(v: dict, mod: Module) -> CyclicModule:
    if not v:
        raise ValueError("cyclic closure of the zero vector")
    return CyclicModule(mod, v, closure(mod, [v]))


def monomial_closure(mod: Module, i: int) -> frozenset:
    """Indices reachable from basis vector i through nonzero generator entries."""
    seen = {i}
    stack = [i]
    cols = [mat for mat in mod.generators()]
    while stack:
        j = stack.pop()
        for mat in cols:
            for k in mat.column(j):
                if k not in seen:
                    seen.add(k)
                    stack.append(k)
    return frozenset(seen)


def is_invariant(mod: Module, sub: Subspace) -> bool:
    return all(sub.member(mat.apply(row)) for mat in mod.generators() for row in sub.rref_rows)


def maximal_space(mod: Module) -> Subspace:
    """Common kernel of the raising generators."""
    stacked = {}
    nrows = 0
    for mat in mod.raising():
        for (i, j, v) in mat.entries():
            stacked[(nrows + i, j)] = v
        nrows += mat.nrows
    return nullspace(SparseMatrix(max(nrows, 1), mod.dim, mod.field, stacked))


def weight_key(mod: Module, i: int) -> tuple:
    """Eigenvalues of the K generators on coordinate i (they act diagonally)."""
    return tuple(mat.get(i, i) for label, mat in sorted(mod.mats.items())
                 if label.startswith("K") and not label.startswith("Kinv"))


# simplicity


@dataclass
class SimplicityReport:
    simple: bool
    schur_local: bool
    commutant_dim: int
    exact: bool
    log: list = dc_field(default_factory=list)

    def to_json(self):
        return {"simple": self.simple, "schur_local": self.schur_local,
                "commutant_dim": self.commutant_dim, "exact": self.exact, "log": self.log}


def _maximal_generators(mod: Module, space: Subspace, rng=None):
    """Vectors whose closures decide simplicity of `space`, plus an exactness flag."""
    sub = submodule(mod, space)
    top = maximal_space(sub)
    rows = space.rref_rows

    def lift(v):
        out = {}
        for c, coeff in v.items():
            for k, x in rows[c].items():
                out[k] = out.get(k, mod.field.zero) + coeff * x
        return {k: x for k, x in out.items() if x}

    if top.is_monomial() and all(sub.labels[p] is not None for p in top.pivots):
        return [lift({p: mod.field.one}) for p in top.pivots], True
    # non-graded fallback: weight-space basis vectors plus random combinations
    rng = rng or random.Random(0)
    buckets = {}
    for row in top.rref_rows:
        buckets.setdefault(weight_key(sub, min(row)), []).append(row)
    vecs = []
    exact = True
    for rows_w in buckets.values():
        vecs.extend(lift(r) for r in rows_w)
        if len(rows_w) > 1:
            exact = False
            for _ in range(50):
                comb = {}
                for r in rows_w:
                    c = rng.randint(1, 97)
                    for k, x in r.items():
                        comb[k] = comb.get(k, mod.field.zero) + x * c
                comb = {k: x for k, x in comb.items() if x}
                if comb:
                    vecs.append(lift(comb))
    return vecs, exact


def simplicity_certify(cm: CyclicModule, schur: bool = True) -> SimplicityReport:
    """Decide simplicity of a cyclic module.

    Closure test: every maximal vector (monomial when graded) regenerates the
    whole module. Schur test: the commutant is local with one-dimensional
    semisimple quotient. A simple verdict with a failing Schur test raises.
    """
    mod, space = cm.module, cm.space
    log = []
    gens, exact = _maximal_generators(mod, space)
    simple = True
    for v in gens:
        sub = closure(mod, [v])
        if sub.dim != space.dim:
            simple = False
            log.append(f"maximal vector generates proper submodule of dim {sub.dim} < {space.dim}")
            break
    if simple:
        log.append(f"all {len(gens)} maximal generators regenerate dim {space.dim}")
    schur_local, cdim = True, -1
    if schur:
        restricted = submodule(mod, space)
        basis = commutant(restricted.generators())
        cdim = len(basis)
        k, rad = radical_dim(basis) if basis else (0, 0)
        schur_local = k - rad == 1
        log.append(f"commutant dim {cdim}, radical dim {rad}")
        if simple and cdim != 1:
            raise CertificationError("closure test says simple but commutant is not scalar")
    return SimplicityReport(simple, schur_local, cdim, exact, log)


# energy-grade filtration


def monomial_span(mod: Module, predicate) -> Subspace:
    return mod.coordinate_span([i for i, t in enumerate(mod.labels) if predicate(t)])


@dataclass
class FiltrationReport:
    shape: Shape
    s: int
    E0: int
    E: int
    chain_dims: list
    layer_dims: list
    layer_multiplicities: list
    expected_layer_dims: list
    invariant: bool
    chain: list = dc_field(default_factory=list, repr=False)

    @property
    def loewy_length(self) -> int:
        return len(self.layer_dims)

    @property
    def ok(self) -> bool:
        return (self.invariant and self.layer_dims == self.expected_layer_dims
                and self.loewy_length == self.E - self.E0 + 1
                and self.chain_dims[-1] == graded_dim_formula(self.shape, self.s))

    def to_json(self):
        return {"shape": self.shape.to_json(), "s": self.s, "E0": self.E0, "E": self.E,
                "chain_dims": self.chain_dims, "layer_dims": self.layer_dims,
                "layer_multiplicities": self.layer_multiplicities,
                "expected_layer_dims": self.expected_layer_dims,
                "loewy_length": self.loewy_length, "invariant": self.invariant, "ok": self.ok}


def edeg_filtration(shape: Shape, s: int, mod: Module = None) -> FiltrationReport:
    mod = mod or piece_module(shape, s)
    ell = shape.ell
    E0, E = e0_e(shape, s)
    chain, dims, layers, mults, expected = [], [], [], [], []
    invariant = True
    prev = 0
    for i in range(E - E0 + 1):
        V = monomial_span(mod, lambda t, top=E0 + i: edeg(t, ell) <= top)
        invariant &= is_invariant(mod, V)
        chain.append(V)
        dims.append(V.dim)
        layers.append(V.dim - prev)
        prev = V.dim
        mult = k_count(shape, E0 + i)
        mults.append(mult)
        expected.append(mult * graded_dim_formula(shape.restricted(), s - (E0 + i) * ell))
    return FiltrationReport(shape, s, E0, E, dims, layers, mults, expected, invariant, chain)


# socle


@dataclass
class SocleCertificate:
    shape: Shape
    s: int
    level: int
    dim: int
    summands: list
    certified: bool
    exact: bool
    log: list = dc_field(default_factory=list)
    space: Subspace = dc_field(default=None, repr=False)

    def to_json(self):
        return {"shape": self.shape.to_json(), "s": self.s, "level": self.level,
                "dim": self.dim, "summands": self.summands, "certified": self.certified,
                "exact": self.exact, "log": self.log}


def _certify_socle(mod: Module, grade: int, level: int = 0, schur: bool = True) -> SocleCertificate:
    """Certify Soc(mod) = span of monomials of energy grade `grade`."""
    shape, s, ell = mod.shape, mod.s, mod.shape.ell
    log = []
    ok = True
    S = monomial_span(mod, lambda t: edeg(t, ell) == grade)
    log.append(f"candidate: {S.dim} monomials of energy grade {grade}")
    # (a) invariance
    if not is_invariant(mod, S):
        ok = False
        log.append("(a) FAIL: candidate not invariant")
    else:
        log.append("(a) candidate invariant")
    # (b) direct sum of simple cyclic modules of the representatives
    summands = []
    total = Subspace(mod.dim, mod.field)
    exact = True
    for kvec in k_set(shape, grade):
        try:
            eta = eta_repr(shape, kvec, s)
        except ValueError:
            continue
        cm = cyclic_closure(mod.unit(mod.index(eta)), mod)
        rep = simplicity_certify(cm, schur=schur)
        exact &= rep.exact
        inside = S.contains(cm.space)
        summands.append({"kappa": list(kvec), "eta": eta.to_json(), "dim": cm.dim,
                         "simple": rep.simple, "inside": inside})
        ok &= rep.simple and inside
        for row in cm.space.rref_rows:
            total.add(row)
    dims_add = sum(x["dim"] for x in summands) == total.dim == S.dim
    ok &= dims_add
    log.append(f"(b) {len(summands)} simple summands, dims {[x['dim'] for x in summands]}, "
               f"direct and spanning: {dims_add}")
    # (c) essentiality through maximal vectors outside the candidate
    top = maximal_space(mod)
    if top.is_monomial():
        outside = [p for p in top.pivots if not S.member({p: mod.field.one})]
        bad = []
        for p in outside:
            C = closure(mod, [mod.unit(p)])
            if intersect(C, S).dim == 0:
                bad.append(str(mod.labels[p]))
        log.append(f"(c) {len(outside)} maximal monomials outside candidate, "
                   f"{len(outside) - len(bad)} meet it")
        if bad:
            ok = False
            log.append(f"(c) FAIL: closures avoiding candidate: {bad[:5]}")
    else:
        exact = False
        vecs, _ = _maximal_generators(mod, Subspace.ambient(mod.dim, mod.field))
        bad = 0
        for v in vecs:
            if S.member(v):
                continue
            if intersect(closure(mod, [v]), S).dim == 0:
                bad += 1
        log.append(f"(c) probabilistic: {len(vecs)} sampled maximal vectors, {bad} avoid candidate")
        ok &= bad == 0
    return SocleCertificate(shape, s, level, S.dim, summands, ok, exact, log, S)


def socle_certify(shape: Shape, s: int, schur: bool = True) -> SocleCertificate:
    mod = piece_module(shape, s)
    E0, _ = e0_e(shape, s)
    cert = _certify_socle(mod, E0, 0, schur)
    if not cert.certified:
        raise CertificationError("; ".join(cert.log))
    return cert


def socle_filtration_check(shape: Shape, s: int, schur: bool = False):
    """Certify Soc(piece / V_(i-1)) = V_i / V_(i-1) at every level.

    Returns (passed, list of certificates).
    """
    mod = piece_module(shape, s)
    filt = edeg_filtration(shape, s, mod)
    certs = []
    current = mod
    for i in range(len(filt.chain)):
        if i > 0:
            current = quotient_module(mod, filt.chain[i - 1])
        certs.append(_certify_socle(current, filt.E0 + i, i, schur))
    passed = all(c.certified for c in certs) and filt.ok
    return passed, certs


def primitive_check(shape: Shape, s: int) -> bool:
    """e_j sends each representative of energy vector in K(E0+i) into V_(i-1)."""
    mod = piece_module(shape, s)
    filt = edeg_filtration(shape, s, mod)
    for i in range(1, len(filt.chain)):
        for kvec in k_set(shape, filt.E0 + i):
            v = mod.unit(mod.index(eta_repr(shape, kvec, s)))
            for mat in mod.raising():
                if not filt.chain[i - 1].member(mat.apply(v)):
                    return False
    return True


def indecomposability_certify(shape: Shape, s: int = None, mod: Module = None) -> bool:
    """Endomorphism algebra is local."""
    mod = mod or piece_module(shape, s)
    basis = commutant(mod.generators())
    return is_local_algebra(basis)


# inclusion net and rigidity of the order relations


@dataclass
class InclusionNet:
    shape: Shape
    s: int
    vertices: list
    edges: list
    checks: dict

    def to_json(self):
        return {"shape": self.shape.to_json(), "s": self.s, "vertices": self.vertices,
                "edges": self.edges, "checks": self.checks}

    def to_dot(self) -> str:
        lines = [f'digraph net {{', f'  label="Omega^({self.s}) {self.shape}";', "  rankdir=BT;"]
        for v in self.vertices:
            name = "".join(map(str, v["kappa"]))
            lines.append(f'  "{name}" [label="{name}\\ndim {v["dim"]}"];')
        for a, b in self.edges:
            lines.append(f'  "{"".join(map(str, a))}" -> "{"".join(map(str, b))}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def inclusion_net(shape: Shape, s: int) -> InclusionNet:
    mod = piece_module(shape, s)
    E0, E = e0_e(shape, s)
    spaces = {}
    vertices = []
    for kappa in range(E0, E + 1):
        for kvec in k_set(shape, kappa):
            eta = eta_repr(shape, kvec, s)
            sp = closure(mod, [mod.unit(mod.index(eta))])
            spaces[kvec] = sp
            vertices.append({"kappa": list(kvec), "eta": eta.to_json(), "dim": sp.dim})
    edges = []
    order_ok = True
    same_grade_ok = True
    for a, sa in spaces.items():
        for b, sb in spaces.items():
            if sum(b) == sum(a) + 1:
                dominated = all(x <= y for x, y in zip(a, b))
                included = sb.contains(sa) and sb.dim > sa.dim
                if included:
                    edges.append((list(a), list(b)))
                order_ok &= included == dominated
            elif sum(a) == sum(b) and a != b:
                same_grade_ok &= not sb.contains(sa)
    weight_pairs = sum(1 for a in spaces for b in spaces
                       if a != b and sum(a) == sum(b) and succcurlyeq_weight(a, b))
    checks = {"edges_match_componentwise_order": order_ok,
              "same_grade_mutually_non_included": same_grade_ok,
              "weight_order_pairs": weight_pairs}
    return InclusionNet(shape, s, vertices, edges, checks)


def inclusion_order_check(shape: Shape, s: int, pairs=None):
    """Cyclic-module comparisons for monomial pairs of one degree.

    Returns counts per clause and a list of violations. Clause (i): equal energy
    vectors give equal modules. Clause (ii): componentwise larger energy with
    larger grade gives strict inclusion. Weak (iii): equal grade, different
    vectors, no inclusion either way.
    """
    mod = piece_module(shape, s)
    ell = shape.ell
    cache = {}

    def cyc(i):
        if i not in cache:
            cache[i] = closure(mod, [mod.unit(i)])
        return cache[i]

    if pairs is None:
        idx = range(mod.dim)
        pairs = [(i, j) for i in idx for j in idx if i < j]
    counts = {"i": 0, "ii": 0, "iii": 0}
    bad = []
    for i, j in pairs:
        a, b = mod.labels[i], mod.labels[j]
        ka, kb = edeg_vector(a, ell), edeg_vector(b, ell)
        if ka == kb:
            counts["i"] += 1
            if cyc(i) != cyc(j):
                bad.append(("i", str(a), str(b)))
            continue
        for x, y, kx, ky in ((i, j, ka, kb), (j, i, kb, ka)):
            if all(p >= q for p, q in zip(kx, ky)):
                counts["ii"] += 1
                big, small = cyc(x), cyc(y)
                if not (big.contains(small) and big.dim > small.dim):
                    bad.append(("ii", str(mod.labels[x]), str(mod.labels[y])))
                break
        else:
            if sum(ka) == sum(kb):
                counts["iii"] += 1
                if cyc(i).contains(cyc(j)) or cyc(j).contains(cyc(i)):
                    bad.append(("iii", str(a), str(b)))
    return counts, bad
