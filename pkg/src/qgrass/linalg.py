"""Exact sparse linear algebra over a cyclotomic field.

Vectors are dicts {index: CycNum} with no stored zeros. Subspaces keep a
reduced row echelon basis whose rows have a leading 1 at their pivot and zeros
in every other pivot column.
"""

from __future__ import annotations

from collections import defaultdict

from .scalars import CycField, CycNum


# sparse vectors


def vec_axpy(y: dict, a: CycNum, x: dict) -> None:
    """y += a*x in place."""
    for k, v in x.items():
        w = y.get(k)
        nv = a * v if w is None else w + a * v
        if nv:
            y[k] = nv
        elif w is not None:
            del y[k]


def vec_scale(x: dict, a: CycNum) -> dict:
    return {k: v * a for k, v in x.items()} if a else {}


def vec_add(x: dict, y: dict) -> dict:
    out = dict(x)
    for k, v in y.items():
        w = out.get(k)
        if w is None:
            out[k] = v
        else:
            s = w + v
            if s:
                out[k] = s
            else:
                del out[k]
    return out


class SparseMatrix:
    """nrows x ncols matrix with entries {(i, j): CycNum}."""

    __slots__ = ("nrows", "ncols", "field", "_cols", "_rows")

    def __init__(self, nrows: int, ncols: int, field: CycField, entries=None):
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        self._cols = defaultdict(dict)
        self._rows = None
        if entries:
            items = entries.items() if isinstance(entries, dict) else entries
            for (i, j), v in items:
                if not (0 <= i < nrows and 0 <= j < ncols):
                    raise IndexError(f"entry ({i},{j}) outside {nrows}x{ncols}")
                if v:
                    self._cols[j][i] = v

    @classmethod
    def from_columns(cls, nrows, ncols, field, columns: dict):
        mat = cls(nrows, ncols, field)
        for j, col in columns.items():
            if col:
                mat._cols[j] = dict(col)
        return mat

    @classmethod
    def identity(cls, d, field):
        return cls.from_columns(d, d, field, {j: {j: field.one} for j in range(d)})

    @classmethod
    def zeros(cls, nrows, ncols, field):
        return cls(nrows, ncols, field)

    def column(self, j) -> dict:
        return self._cols.get(j, {})

    def rows(self) -> dict:
        if self._rows is None:
            rows = defaultdict(dict)
            for j, col in self._cols.items():
                for i, v in col.items():
                    rows[i][j] = v
            self._rows = dict(rows)
        return self._rows

    def row(self, i) -> dict:
        return self.rows().get(i, {})

    def entries(self):
        """(i, j, value) triples sorted by (i, j)."""
        out = [(i, j, v) for j, col in self._cols.items() for i, v in col.items()]
        out.sort(key=lambda t: (t[0], t[1]))
        return out

    def nnz(self) -> int:
        return sum(len(c) for c in self._cols.values())

    def get(self, i, j):
        return self._cols.get(j, {}).get(i, self.field.zero)

    def is_zero(self) -> bool:
        return not any(self._cols.values())

    def is_diagonal(self) -> bool:
        return all(set(col) <= {j} for j, col in self._cols.items())

    def apply(self, v: dict) -> dict:
        out = {}
        for j, c in v.items():
            col = self._cols.get(j)
            if col:
                vec_axpy(out, c, col)
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch in product")
        cols = {j: self.apply(col) for j, col in other._cols.items()}
        return SparseMatrix.from_columns(self.nrows, other.ncols, self.field, cols)

    def __add__(self, other):
        self._check_same(other)
        cols = {j: dict(c) for j, c in self._cols.items()}
        for j, col in other._cols.items():
            cols[j] = vec_add(cols.get(j, {}), col)
        return SparseMatrix.from_columns(self.nrows, self.ncols, self.field, cols)

    def __neg__(self):
        m1 = -self.field.one
        return self.scale(m1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a) -> "SparseMatrix":
        cols = {j: vec_scale(c, a) for j, c in self._cols.items()}
        return SparseMatrix.from_columns(self.nrows, self.ncols, self.field, cols)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            return False
        keys = set(j for j, c in self._cols.items() if c) | set(j for j, c in other._cols.items() if c)
        return all(self._cols.get(j, {}) == other._cols.get(j, {}) for j in keys)

    __hash__ = None

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix.from_columns(self.ncols, self.nrows, self.field, self.rows())

    def restrict(self, idx_rows, idx_cols) -> "SparseMatrix":
        """Submatrix on the given (ordered) row and column index lists."""
        rpos = {r: k for k, r in enumerate(idx_rows)}
        cols = {}
        for k, j in enumerate(idx_cols):
            col = {rpos[i]: v for i, v in self._cols.get(j, {}).items() if i in rpos}
            if col:
                cols[k] = col
        return SparseMatrix.from_columns(len(idx_rows), len(idx_cols), self.field, cols)

    def _check_same(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("dimension mismatch")

    def to_json(self) -> dict:
        return {"rows": self.nrows, "cols": self.ncols,
                "entries": [[i, j, str(v)] for i, j, v in self.entries()]}

    @classmethod
    def from_json(cls, data: dict, field: CycField) -> "SparseMatrix":
        return cls(data["rows"], data["cols"], field,
                   [((i, j), field.parse(v)) for i, j, v in data["entries"]])

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def block_diag(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    cols = {j: dict(c) for j, c in a._cols.items()}
    for j, c in b._cols.items():
        cols[a.ncols + j] = {a.nrows + i: v for i, v in c.items()}
    return SparseMatrix.from_columns(a.nrows + b.nrows, a.ncols + b.ncols, a.field, cols)


# subspaces


class Subspace:
    """Row-reduced basis of a subspace of K^ambient_dim."""

    def __init__(self, ambient_dim: int, field: CycField, vectors=()):
        self.ambient_dim = ambient_dim
        self.field = field
        self._rows = {}  # pivot -> row with leading 1
        for v in vectors:
            self.add(v)

    @classmethod
    def ambient(cls, d, field):
        sub = cls(d, field)
        for i in range(d):
            sub._rows[i] = {i: field.one}
        return sub

    @classmethod
    def coordinate(cls, d, field, indices):
        """Span of standard basis vectors."""
        sub = cls(d, field)
        for i in indices:
            sub._rows[i] = {i: field.one}
        return sub

    @property
    def dim(self) -> int:
        return len(self._rows)

    def __len__(self):
        return len(self._rows)

    @property
    def pivots(self) -> list:
        return sorted(self._rows)

    @property
    def rref_rows(self) -> list:
        return [self._rows[p] for p in self.pivots]

    def copy(self) -> "Subspace":
        sub = Subspace(self.ambient_dim, self.field)
        sub._rows = {p: dict(r) for p, r in self._rows.items()}
        return sub

    def reduce(self, v: dict) -> dict:
        """Remainder of v modulo the subspace, supported off the pivots."""
        rows = self._rows
        hits = [k for k in v if k in rows]
        if not hits:
            return dict(v)
        out = dict(v)
        for p in hits:
            c = out.get(p)
            if c:
                vec_axpy(out, -c, rows[p])
        return out

    def add(self, v: dict) -> bool:
        """Insert v; returns True when the dimension grew."""
        w = self.reduce(v)
        if not w:
            return False
        p = min(w)
        inv = w[p].inverse()
        w = {k: c * inv for k, c in w.items()}
        for row in self._rows.values():
            c = row.get(p)
            if c:
                vec_axpy(row, -c, w)
        self._rows[p] = w
        return True

    def is_monomial(self) -> bool:
        """True when spanned by standard basis vectors."""
        return all(len(r) == 1 for r in self._rows.values())

    def member(self, v: dict) -> bool:
        return not self.reduce(v)

    def contains(self, other: "Subspace") -> bool:
        return all(self.member(r) for r in other._rows.values())

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self._rows == other._rows

    __hash__ = None

    def coordinates(self, v: dict) -> list:
        """Coefficients of v in the rref basis; v must lie in the subspace."""
        if not self.member(v):
            raise ValueError("vector not in subspace")
        zero = self.field.zero
        return [v.get(p, zero) for p in self.pivots]

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _check_ambient(u, v):
    if u.ambient_dim != v.ambient_dim:
        raise ValueError("ambient dimension mismatch")


def span_sum(u: Subspace, v: Subspace) -> Subspace:
    _check_ambient(u, v)
    out = u.copy()
    for row in v.rref_rows:
        out.add(row)
    return out


def intersect(u: Subspace, v: Subspace) -> Subspace:
    """U ∩ V: kernel of the map U -> K^d / V, pulled back to U."""
    _check_ambient(u, v)
    field = u.field
    out = Subspace(u.ambient_dim, field)
    # eliminate residues while tracking the combination of U's basis
    tracked = {}  # pivot -> (residue row, combination as vector)
    for row in u.rref_rows:
        res = v.reduce(row)
        comb = dict(row)
        while res:
            p = min(res)
            if p not in tracked:
                inv = res[p].inverse()
                tracked[p] = (vec_scale(res, inv), vec_scale(comb, inv))
                break
            prow, pcomb = tracked[p]
            c = res[p]
            vec_axpy(res, -c, prow)
            vec_axpy(comb, -c, pcomb)
        else:
            if comb:
                out.add(comb)
    return out


def quotient_dim(u: Subspace, v: Subspace) -> int:
    _check_ambient(u, v)
    if not u.contains(v):
        raise ValueError("quotient_dim needs V inside U")
    return u.dim - v.dim


# matrix invariants


def image(a: SparseMatrix) -> Subspace:
    sub = Subspace(a.nrows, a.field)
    for j in range(a.ncols):
        col = a.column(j)
        if col:
            sub.add(col)
    return sub


def rank(a: SparseMatrix) -> int:
    return image(a).dim


def nullspace(a: SparseMatrix) -> Subspace:
    """Kernel of a as a subspace of K^ncols."""
    rowspace = Subspace(a.ncols, a.field)
    for i, row in sorted(a.rows().items()):
        rowspace.add(row)
    return _kernel_from_rref(rowspace, range(a.ncols))


def _kernel_from_rref(rowspace: Subspace, unknowns) -> Subspace:
    field = rowspace.field
    pivots = set(rowspace.pivots)
    out = Subspace(rowspace.ambient_dim, field)
    # column index -> list of (pivot, coefficient) for rows touching it
    touch = defaultdict(list)
    for p, row in rowspace._rows.items():
        for k, c in row.items():
            if k != p:
                touch[k].append((p, c))
    for f in unknowns:
        if f in pivots:
            continue
        vec = {f: field.one}
        for p, c in touch.get(f, ()):
            vec[p] = -c
        out._rows[f] = vec
    # rows were built with leading entry at the free column only when it is the
    # smallest index; re-add to restore echelon form
    fixed = Subspace(rowspace.ambient_dim, field)
    for v in out._rows.values():
        fixed.add(v)
    return fixed


def solve_homogeneous(equations, unknowns, field: CycField) -> list:
    """Basis (as dicts over unknowns) of solutions of sparse linear equations.

    Equations and unknowns are split into connected components first, so a
    block-diagonal system costs the sum of its blocks.
    """
    unknowns = list(unknowns)
    parent = {u: u for u in unknowns}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    eqs = [e for e in equations if e]
    for e in eqs:
        keys = iter(e)
        first = find(next(keys))
        for k in keys:
            rk = find(k)
            if rk != first:
                parent[rk] = first
    comp_unknowns = defaultdict(list)
    for u in unknowns:
        comp_unknowns[find(u)].append(u)
    comp_eqs = defaultdict(list)
    for e in eqs:
        comp_eqs[find(next(iter(e)))].append(e)
    basis = []
    for root in sorted(comp_unknowns, key=lambda r: min(comp_unknowns[r])):
        us = comp_unknowns[root]
        pos = {u: k for k, u in enumerate(us)}
        rowspace = Subspace(len(us), field)
        for e in comp_eqs.get(root, ()):
            rowspace.add({pos[k]: v for k, v in e.items()})
        ker = _kernel_from_rref(rowspace, range(len(us)))
        for row in ker.rref_rows:
            basis.append({us[k]: v for k, v in row.items()})
    return basis


def commutant(mats, d: int = None, field: CycField = None) -> list:
    """Basis of {X : X M = M X for all M} as SparseMatrix objects."""
    mats = list(mats)
    if mats:
        d = mats[0].nrows
        field = mats[0].field
    if d is None or field is None:
        raise ValueError("empty matrix list needs explicit d and field")
    for a in mats:
        if a.nrows != d or a.ncols != d:
            raise ValueError("commutant needs square matrices of one size")
    # diagonal matrices force X_ab = 0 unless D_aa = D_bb
    label = [() for _ in range(d)]
    general = []
    for a in mats:
        if a.is_diagonal():
            diag = [a.get(i, i) for i in range(d)]
            label = [lab + (x,) for lab, x in zip(label, diag)]
        else:
            general.append(a)
    classes = defaultdict(list)
    for i, lab in enumerate(label):
        classes[lab].append(i)
    unknowns = [(a, b) for cls in classes.values() for a in cls for b in cls]
    eqs = defaultdict(dict)
    zero = field.zero
    for t, a in enumerate(general):
        rows = a.rows()
        for (i, c) in unknowns:
            # X_ic enters (X A)_ib with coefficient A_cb
            for b, v in rows.get(c, {}).items():
                e = eqs[(t, i, b)]
                e[(i, c)] = e.get((i, c), zero) + v
            # and (A X)_rc with coefficient -A_ri
            for r, v in a.column(i).items():
                e = eqs[(t, r, c)]
                e[(i, c)] = e.get((i, c), zero) - v
    equations = []
    for e in eqs.values():
        e = {k: v for k, v in e.items() if v}
        if e:
            equations.append(e)
    sols = solve_homogeneous(equations, unknowns, field)
    return [SparseMatrix(d, d, field, sol) for sol in sols]


def _flatten(mat: SparseMatrix) -> dict:
    d = mat.ncols
    return {i * d + j: v for i, j, v in mat.entries()}


def _unflatten(vec: dict, d: int, field) -> SparseMatrix:
    return SparseMatrix(d, d, field, {divmod(k, d): v for k, v in vec.items()})


def algebra_closure(basis, max_rounds: int = 20):
    """Rref basis of the unital algebra generated by the given square matrices."""
    basis = list(basis)
    if not basis:
        raise ValueError("empty basis")
    d = basis[0].nrows
    field = basis[0].field
    span = Subspace(d * d, field)
    span.add(_flatten(SparseMatrix.identity(d, field)))
    for b in basis:
        span.add(_flatten(b))
    for _ in range(max_rounds):
        mats = [_unflatten(r, d, field) for r in span.rref_rows]
        grew = False
        for x in mats:
            for y in mats:
                if span.add(_flatten(x @ y)):
                    grew = True
        if not grew:
            return span, d
    raise RuntimeError("algebra closure did not stabilise")


def radical_dim(basis):
    """Dimension of the algebra and of its trace-form radical (characteristic zero)."""
    span, d = algebra_closure(basis)
    field = span.field
    rows = span.rref_rows
    pivots = span.pivots
    k = len(rows)
    mats = [_unflatten(r, d, field) for r in rows]
    # left-regular representation: L_i[c, j] = coefficient of basis c in b_i b_j
    regular = []
    for x in mats:
        cols = {}
        for j, y in enumerate(mats):
            prod = _flatten(x @ y)
            if not span.member(prod):
                raise RuntimeError("basis not multiplicatively closed")
            col = {c: prod[p] for c, p in enumerate(pivots) if p in prod}
            if col:
                cols[j] = col
        regular.append(SparseMatrix.from_columns(k, k, field, cols))
    gram = {}
    for i in range(k):
        for j in range(i, k):
            prod = regular[i] @ regular[j]
            t = field.zero
            for c in range(k):
                t = t + prod.get(c, c)
            if t:
                gram[(i, j)] = t
                gram[(j, i)] = t
    g = SparseMatrix(k, k, field, gram)
    return k, k - rank(g)


def is_local_algebra(basis) -> bool:
    """True iff the generated algebra modulo its radical is one-dimensional."""
    k, rad = radical_dim(basis)
    return k - rad == 1
