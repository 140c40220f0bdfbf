"""Based vector spaces, sparse linear maps, and exact Gaussian elimination.

Everything is indexed: a BasedSpace is an ordered tuple of labels, a vector
is a sparse dict {index: scalar}, a LinMap a sparse dict {(row, col): scalar}.
Tensor products concatenate labels (the scalar space has the empty label, so
V tensor k is literally V) and flatten indices row-major with the left factor
varying slowest; all Sweedler-style composites in the rest of the package
rely on that one convention.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .fields import Field


class SpaceMismatch(ValueError):
    """Source/target spaces of composed or combined maps disagree."""


class NoSolution(ValueError):
    """Linear system is inconsistent."""


Label = tuple  # tuple of string atoms; () is the scalar-space label
Vec = dict    # {index: nonzero scalar}


@dataclass(frozen=True)
class BasedSpace:
    """A finite-dimensional space with an ordered basis of distinct labels."""

    field: Field
    labels: tuple

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("basis labels must be distinct")

    @property
    def dim(self) -> int:
        return len(self.labels)

    @cached_property
    def _index(self):
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label: Label) -> int:
        return self._index[label]

    def label_text(self, i: int) -> str:
        lab = self.labels[i]
        return "(" + "*".join(lab) + ")" if len(lab) != 1 else lab[0]

    def basis_vec(self, label_or_index) -> Vec:
        i = label_or_index if isinstance(label_or_index, int) else self.index(label_or_index)
        return {i: self.field.one}

    def vector(self, coeffs: dict) -> Vec:
        """Build a vector from {atom-or-label: scalar}, dropping zeros."""
        f = self.field
        out = {}
        for lab, v in coeffs.items():
            if not isinstance(lab, tuple):
                lab = (lab,)
            v = f.normalize(v)
            if not f.is_zero(v):
                out[self.index(lab)] = v
        return out

    def __repr__(self):
        return f"BasedSpace(dim={self.dim}, {self.field!r})"


def space(fld: Field, names, prefix: str = "") -> BasedSpace:
    """A space with one atomic label per name."""
    return BasedSpace(fld, tuple((f"{prefix}{n}",) for n in names))


def scalar_space(fld: Field) -> BasedSpace:
    """The ground field as a one-dimensional space with the empty label."""
    return BasedSpace(fld, ((),))


def tensor_space(*spaces: BasedSpace) -> BasedSpace:
    if not spaces:
        raise ValueError("tensor of no spaces")
    fld = spaces[0].field
    for v in spaces:
        if v.field != fld:
            raise SpaceMismatch("tensor factors over different fields")
    labels = tuple(
        tuple(itertools.chain.from_iterable(parts))
        for parts in itertools.product(*(v.labels for v in spaces))
    )
    return BasedSpace(fld, labels)


def split_index(i: int, dims) -> tuple:
    """Row-major multi-index of flat index i for the given factor dims."""
    out = []
    for d in reversed(dims):
        out.append(i % d)
        i //= d
    return tuple(reversed(out))


def join_index(ix, dims) -> int:
    i = 0
    for k, d in zip(ix, dims):
        i = i * d + k
    return i


# ---------------------------------------------------------------------------
# vectors

def vec_add(f: Field, u: Vec, v: Vec) -> Vec:
    out = dict(u)
    for i, x in v.items():
        y = f.add(out.get(i, f.zero), x)
        if f.is_zero(y):
            out.pop(i, None)
        else:
            out[i] = y
    return out

def vec_sub(f: Field, u: Vec, v: Vec) -> Vec:
    out = dict(u)
    for i, x in v.items():
        y = f.sub(out.get(i, f.zero), x)
        if f.is_zero(y):
            out.pop(i, None)
        else:
            out[i] = y
    return out

def vec_scale(f: Field, a, v: Vec) -> Vec:
    if f.is_zero(a):
        return {}
    return {i: f.mul(a, x) for i, x in v.items()}


# ---------------------------------------------------------------------------
# sparse linear maps

@dataclass
class LinMap:
    """A linear map given by its sparse coefficient table.

    entries maps (target index, source index) to a nonzero scalar.  Maps are
    treated as immutable once built; construction helpers drop zeros.
    """

    source: BasedSpace
    target: BasedSpace
    entries: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        f = self.source.field
        clean = {}
        for (r, c), v in self.entries.items():
            v = f.normalize(v)
            if not (0 <= r < self.target.dim and 0 <= c < self.source.dim):
                raise ValueError(f"entry index ({r},{c}) out of range")
            if not f.is_zero(v):
                clean[(r, c)] = v
        self.entries = clean

    @property
    def field(self) -> Field:
        return self.source.field

    @classmethod
    def identity(cls, V: BasedSpace) -> "LinMap":
        one = V.field.one
        return cls(V, V, {(i, i): one for i in range(V.dim)})

    @classmethod
    def zero(cls, source: BasedSpace, target: BasedSpace) -> "LinMap":
        return cls(source, target, {})

    @classmethod
    def from_columns(cls, source: BasedSpace, target: BasedSpace, col) -> "LinMap":
        """col(j) gives the image vector of source basis j."""
        entries = {}
        for j in range(source.dim):
            for i, v in col(j).items():
                entries[(i, j)] = v
        return cls(source, target, entries)

    @classmethod
    def from_label_rule(cls, source: BasedSpace, target: BasedSpace, rule) -> "LinMap":
        """rule(label) gives {target atom-or-label: scalar} for each source label."""
        return cls.from_columns(source, target, lambda j: target.vector(rule(source.labels[j])))

    @cached_property
    def _cols(self):
        cols = {}
        for (r, c), v in self.entries.items():
            cols.setdefault(c, {})[r] = v
        return cols

    def column(self, j: int) -> Vec:
        return dict(self._cols.get(j, {}))

    def apply(self, v: Vec) -> Vec:
        f = self.field
        out = {}
        for j, x in v.items():
            for i, a in self._cols.get(j, {}).items():
                y = f.add(out.get(i, f.zero), f.mul(a, x))
                if f.is_zero(y):
                    out.pop(i, None)
                else:
                    out[i] = y
        return out

    def __matmul__(self, other: "LinMap") -> "LinMap":
        """Composition self after other."""
        if other.target != self.source:
            raise SpaceMismatch("compose: inner spaces differ")
        return LinMap.from_columns(other.source, self.target,
                                   lambda j: self.apply(other.column(j)))

    def tensor(self, other: "LinMap") -> "LinMap":
        f = self.field
        src = tensor_space(self.source, other.source)
        tgt = tensor_space(self.target, other.target)
        st, ss = self.target.dim, self.source.dim
        ot, os_ = other.target.dim, other.source.dim
        entries = {}
        for (r1, c1), v1 in self.entries.items():
            for (r2, c2), v2 in other.entries.items():
                entries[(r1 * ot + r2, c1 * os_ + c2)] = f.mul(v1, v2)
        return LinMap(src, tgt, entries)

    def __add__(self, other: "LinMap") -> "LinMap":
        if other.source != self.source or other.target != self.target:
            raise SpaceMismatch("add: spaces differ")
        f = self.field
        entries = dict(self.entries)
        for k, v in other.entries.items():
            y = f.add(entries.get(k, f.zero), v)
            if f.is_zero(y):
                entries.pop(k, None)
            else:
                entries[k] = y
        return LinMap(self.source, self.target, entries)

    def __sub__(self, other: "LinMap") -> "LinMap":
        return self + other.scale(self.field.of_int(-1))

    def scale(self, a) -> "LinMap":
        f = self.field
        a = f.normalize(a)
        if f.is_zero(a):
            return LinMap.zero(self.source, self.target)
        return LinMap(self.source, self.target,
                      {k: f.mul(a, v) for k, v in self.entries.items()})

    def __eq__(self, other):
        return (isinstance(other, LinMap) and self.source == other.source
                and self.target == other.target and self.entries == other.entries)

    def same_table(self, other: "LinMap") -> bool:
        """Coefficientwise equality, ignoring labels."""
        return (self.source.dim == other.source.dim and self.target.dim == other.target.dim
                and self.entries == other.entries)

    def transposed_onto(self, source: BasedSpace, target: BasedSpace) -> "LinMap":
        """Transpose table, reinterpreted on caller-supplied (dual) spaces."""
        if source.dim != self.target.dim or target.dim != self.source.dim:
            raise SpaceMismatch("transpose: dims differ")
        return LinMap(source, target, {(c, r): v for (r, c), v in self.entries.items()})

    def __repr__(self):
        return f"LinMap({self.source.dim}->{self.target.dim}, nnz={len(self.entries)})"


def tensor_map(*maps: LinMap) -> LinMap:
    out = maps[0]
    for m in maps[1:]:
        out = out.tensor(m)
    return out


def permute_map(spaces, perm) -> LinMap:
    """The relabeling V_0xV_1x... -> V_{perm[0]}xV_{perm[1]}x...

    perm lists, for each output slot, which input factor lands there.
    """
    src = tensor_space(*spaces)
    tgt = tensor_space(*(spaces[p] for p in perm))
    dims = [v.dim for v in spaces]
    out_dims = [dims[p] for p in perm]
    one = src.field.one
    entries = {}
    for j in range(src.dim):
        ix = split_index(j, dims)
        entries[(join_index([ix[p] for p in perm], out_dims), j)] = one
    return LinMap(src, tgt, entries)


# ---------------------------------------------------------------------------
# exact elimination

def _rref(rows, field, width):
    """Reduced row echelon form of sparse rows (dicts), in place logic.

    Deterministic: columns are scanned in order and the first row with a
    nonzero entry in the current column becomes the pivot.  Returns
    (pivots, reduced_rows) where pivots is a list of (row_position, column).
    """
    f = field
    rows = [dict(r) for r in rows if r]
    pivots = []
    used = [False] * len(rows)
    for col in range(width):
        pick = None
        for ri, row in enumerate(rows):
            if not used[ri] and col in row:
                pick = ri
                break
        if pick is None:
            continue
        used[pick] = True
        piv = rows[pick]
        inv = f.inv(piv[col])
        for c in list(piv):
            piv[c] = f.mul(inv, piv[c])
        for ri, row in enumerate(rows):
            if ri != pick and col in row:
                factor = row[col]
                for c, v in piv.items():
                    y = f.sub(row.get(c, f.zero), f.mul(factor, v))
                    if f.is_zero(y):
                        row.pop(c, None)
                    else:
                        row[c] = y
        pivots.append((pick, col))
    reduced = [rows[ri] for ri, _ in pivots]
    return [col for _, col in pivots], reduced


def _rows_of(A: LinMap):
    rows = {}
    for (r, c), v in A.entries.items():
        rows.setdefault(r, {})[c] = v
    return [rows[r] for r in sorted(rows)]


def rank(A: LinMap) -> int:
    pivots, _ = _rref(_rows_of(A), A.field, A.source.dim)
    return len(pivots)


def solve(A: LinMap, b: Vec) -> Vec:
    """One exact solution of A x = b; raises NoSolution if b is not in the image."""
    sols = solve_many(A, {0: b}, 1)
    return sols[0]


def solve_many(A: LinMap, columns: dict, ncols: int) -> dict:
    """Solve A X = B for sparse B given as {colindex: Vec}; shared elimination."""
    f = A.field
    width = A.source.dim
    rows = {}
    rhs = {}
    for (r, c), v in A.entries.items():
        rows.setdefault(r, {})[c] = v
    for bc, bvec in columns.items():
        for r, v in bvec.items():
            rhs.setdefault(r, {})[bc] = v
    row_ids = sorted(set(rows) | set(rhs))
    work = [dict(rows.get(r, {})) for r in row_ids]
    tail = [dict(rhs.get(r, {})) for r in row_ids]

    pivots = []
    used = [False] * len(work)
    for col in range(width):
        pick = None
        for ri in range(len(work)):
            if not used[ri] and col in work[ri]:
                pick = ri
                break
        if pick is None:
            continue
        used[pick] = True
        inv = f.inv(work[pick][col])
        for c in list(work[pick]):
            work[pick][c] = f.mul(inv, work[pick][c])
        for c in list(tail[pick]):
            tail[pick][c] = f.mul(inv, tail[pick][c])
        for ri in range(len(work)):
            if ri != pick and col in work[ri]:
                factor = work[ri][col]
                for c, v in work[pick].items():
                    y = f.sub(work[ri].get(c, f.zero), f.mul(factor, v))
                    if f.is_zero(y):
                        work[ri].pop(c, None)
                    else:
                        work[ri][c] = y
                for c, v in tail[pick].items():
                    y = f.sub(tail[ri].get(c, f.zero), f.mul(factor, v))
                    if f.is_zero(y):
                        tail[ri].pop(c, None)
                    else:
                        tail[ri][c] = y
        pivots.append((pick, col))

    for ri in range(len(work)):
        if not used[ri] and not work[ri] and tail[ri]:
            raise NoSolution("inconsistent linear system")

    out = {bc: {} for bc in columns}
    for ri, col in pivots:
        for bc, v in tail[ri].items():
            out[bc][col] = v
    return out


def invert(A: LinMap) -> LinMap:
    """Exact two-sided inverse of a bijective map; NoSolution otherwise."""
    if A.source.dim != A.target.dim:
        raise NoSolution("non-square map is not invertible")
    one = A.field.one
    cols = solve_many(A, {j: {j: one} for j in range(A.target.dim)}, A.target.dim)
    inv = LinMap.from_columns(A.target, A.source, lambda j: cols[j])
    if (A @ inv) != LinMap.identity(A.target) or (inv @ A) != LinMap.identity(A.source):
        raise NoSolution("map is not bijective")
    return inv


# ---------------------------------------------------------------------------
# subspaces and quotients

def _sub_space(ambient: BasedSpace, n: int, name: str) -> BasedSpace:
    return BasedSpace(ambient.field, tuple((f"{name}{i}",) for i in range(n)))


@dataclass
class Subspace:
    """A subspace with a chosen inclusion and a section (left inverse)."""

    ambient: BasedSpace
    carrier: BasedSpace
    include: LinMap   # carrier -> ambient
    section: LinMap   # ambient -> carrier; section o include = id

    @classmethod
    def from_basis(cls, ambient: BasedSpace, vectors, name: str = "s") -> "Subspace":
        f = ambient.field
        vectors = list(vectors)
        piv_cols, _ = _rref([dict(v) for v in vectors], f, ambient.dim)
        if len(piv_cols) != len(vectors):
            raise ValueError("subspace basis vectors are dependent")
        carrier = _sub_space(ambient, len(vectors), name)
        include = LinMap.from_columns(carrier, ambient, lambda j: dict(vectors[j]))
        # section = (P M)^-1 P where P picks one pivot coordinate per basis vector
        k = len(vectors)
        if k == 0:
            return cls(ambient, carrier, include, LinMap.zero(ambient, carrier))
        pm = LinMap(carrier, carrier,
                    {(a, b): vectors[b].get(piv_cols[a], f.zero)
                     for a in range(k) for b in range(k)
                     if not f.is_zero(vectors[b].get(piv_cols[a], f.zero))})
        proj = LinMap(ambient, carrier, {(a, piv_cols[a]): f.one for a in range(k)})
        section = invert(pm) @ proj
        return cls(ambient, carrier, include, section)

    @classmethod
    def span(cls, ambient: BasedSpace, vectors, name: str = "s") -> "Subspace":
        _, reduced = _rref([dict(v) for v in vectors], ambient.field, ambient.dim)
        return cls.from_basis(ambient, reduced, name)

    @property
    def dim(self) -> int:
        return self.carrier.dim

    def contains(self, v: Vec) -> bool:
        return self.include.apply(self.section.apply(v)) == v

    def restrict(self, A: LinMap) -> LinMap:
        """Corestrict an ambient endomap to the subspace (caller checks invariance)."""
        return self.section @ A @ self.include


@dataclass
class QuotientSpace:
    """A quotient with a projection and a chosen lift (right inverse)."""

    ambient: BasedSpace
    carrier: BasedSpace
    project: LinMap   # ambient -> carrier
    lift: LinMap      # carrier -> ambient; project o lift = id
    relations: tuple  # reduced spanning vectors of the killed subspace

    @classmethod
    def from_relations(cls, ambient: BasedSpace, rel_vectors, name: str = "q") -> "QuotientSpace":
        f = ambient.field
        piv_cols, reduced = _rref([dict(v) for v in rel_vectors], f, ambient.dim)
        piv_set = set(piv_cols)
        free = [c for c in range(ambient.dim) if c not in piv_set]
        pos = {c: i for i, c in enumerate(free)}
        carrier = _sub_space(ambient, len(free), name)
        entries = {}
        for i, c in enumerate(free):
            entries[(i, c)] = f.one
        for pcol, row in zip(piv_cols, reduced):
            # row: e_p + sum coef e_f  =>  [e_p] = -sum coef [e_f]
            for c, v in row.items():
                if c != pcol:
                    entries[(pos[c], pcol)] = f.neg(v)
        project = LinMap(ambient, carrier, entries)
        lift = LinMap(carrier, ambient, {(c, i): f.one for i, c in enumerate(free)})
        return cls(ambient, carrier, project, lift, tuple(reduced))

    @property
    def dim(self) -> int:
        return self.carrier.dim

    def descends(self, A: LinMap) -> bool:
        """Does the ambient-source map A kill the relations?"""
        return all(not A.apply(dict(r)) for r in self.relations)


def kernel(A: LinMap, name: str = "ker") -> Subspace:
    """Null space of A as a Subspace of the source."""
    f = A.field
    piv_cols, reduced = _rref(_rows_of(A), f, A.source.dim)
    piv_set = set(piv_cols)
    free = [c for c in range(A.source.dim) if c not in piv_set]
    basis = []
    for fc in free:
        v = {fc: f.one}
        for pcol, row in zip(piv_cols, reduced):
            x = row.get(fc)
            if x is not None:
                v[pcol] = f.neg(x)
        basis.append(v)
    return Subspace.from_basis(A.source, basis, name)


def quotient(V: BasedSpace, rel_vectors, name: str = "q") -> QuotientSpace:
    return QuotientSpace.from_relations(V, rel_vectors, name)


def is_injective(A: LinMap) -> bool:
    return rank(A) == A.source.dim


def is_surjective(A: LinMap) -> bool:
    return rank(A) == A.target.dim
