"""Finite-dimensional algebras given by structure constants.

Paths compose left to right throughout: ``Path(("a", "b"))`` is the path that
traverses ``a`` and then ``b``, so it only exists when ``target(a) ==
source(b)``, and a path from ``i`` to ``j`` satisfies ``e_i p e_j = p``.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .errors import (
    EmptyQuiver,
    FieldMismatch,
    InconsistentRelations,
    InvalidQuiver,
    LiftDivergence,
    NonHomogeneousRelation,
    NonParallelRelation,
    NotAutomorphism,
    NotBasic,
    NotGraded,
    NotIdempotent,
    NotInvertible,
    NotNilpotentComplement,
    NotSplit,
    ShapeMismatch,
)
from .fields import FieldDescriptor, Scalar, find_root, random_scalar
from .labels import Combination, Path, Vertex

log = logging.getLogger(__name__)


# ---------------------------------------------------------------- quivers

@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        arrows = tuple(a if isinstance(a, Arrow) else Arrow(*map(str, a)) for a in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidQuiver("duplicate vertex ids")
        names = [a.name for a in arrows]
        if len(set(names)) != len(names):
            raise InvalidQuiver("duplicate arrow names")
        vs = set(self.vertices)
        for a in arrows:
            if a.source not in vs or a.target not in vs:
                raise InvalidQuiver(f"arrow {a.name} uses an undeclared vertex")
            if a.name in vs:
                raise InvalidQuiver(f"arrow name {a.name} clashes with a vertex id")

    @cached_property
    def arrow_map(self) -> Dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    def multiplicity(self, i: str, j: str) -> int:
        return sum(1 for a in self.arrows if a.source == i and a.target == j)

    def paths(self, length: int) -> List[Tuple[str, ...]]:
        """All paths of the given positive length, in lexicographic arrow order."""
        paths = [(a.name,) for a in self.arrows]
        for _ in range(length - 1):
            paths = [
                p + (a.name,)
                for p in paths
                for a in self.arrows
                if self.arrow_map[p[-1]].target == a.source
            ]
        return paths

    def path_ends(self, path: Sequence[str]) -> Tuple[str, str]:
        arrows = self.arrow_map
        for a, b in zip(path, path[1:]):
            if arrows[a].target != arrows[b].source:
                raise NonParallelRelation(f"{'.'.join(path)} is not a path")
        return arrows[path[0]].source, arrows[path[-1]].target

    def underlying_multiplicities(self):
        """Symmetric edge-multiplicity matrix of the underlying graph (loops on the diagonal)."""
        idx = {v: i for i, v in enumerate(self.vertices)}
        n = len(self.vertices)
        m = [[0] * n for _ in range(n)]
        for a in self.arrows:
            i, j = idx[a.source], idx[a.target]
            m[i][j] += 1
            if i != j:
                m[j][i] += 1
        return m


def quivers_isomorphic(q1: Quiver, q2: Quiver) -> bool:
    """Brute force over vertex bijections comparing arrow multiplicities."""
    if len(q1.vertices) != len(q2.vertices) or len(q1.arrows) != len(q2.arrows):
        return False
    n = len(q1.vertices)
    m1 = [[q1.multiplicity(a, b) for b in q1.vertices] for a in q1.vertices]
    m2 = [[q2.multiplicity(a, b) for b in q2.vertices] for a in q2.vertices]
    if sorted(map(sum, m1)) != sorted(map(sum, m2)):
        return False
    for perm in itertools.permutations(range(n)):
        if all(m1[i][j] == m2[perm[i]][perm[j]] for i in range(n) for j in range(n)):
            return True
    return False


@dataclass
class Presentation:
    """``field``-linear quiver algebra kQ/(I + J^truncate_radical).

    ``relations`` is a list of relations, each a list of ``(coefficient,
    path)`` pairs meaning sum(coefficient * path) = 0.
    """

    field: FieldDescriptor
    quiver: Quiver
    relations: List[List[Tuple[Scalar, Tuple[str, ...]]]] = dc_field(default_factory=list)
    truncate_radical: int = 3


# ---------------------------------------------------------------- algebras

class Algebra:
    """Algebra with basis ``labels`` and ``table[i][j] = {k: c}`` meaning
    ``b_i b_j = sum c b_k``. ``unit_idempotents`` are basis indices of
    pairwise orthogonal idempotents summing to 1."""

    def __init__(self, field, labels, table, unit_idempotents, grading=None, name="", flags=()):
        self.field = field
        self.labels = tuple(labels)
        self.table = table
        self.unit_idempotents = tuple(unit_idempotents)
        self.grading = tuple(grading) if grading is not None else None
        self.name = name
        self.flags = tuple(flags)
        n = len(self.labels)
        if len(table) != n or any(len(row) != n for row in table):
            raise ShapeMismatch("structure constant table does not match basis size")
        if self.grading is not None and len(self.grading) != n:
            raise ShapeMismatch("grading does not match basis size")

    def __repr__(self):
        return f"<Algebra {self.name or '?'} dim={self.dim} over {self.field}>"

    @property
    def dim(self) -> int:
        return len(self.labels)

    @cached_property
    def label_index(self) -> Dict[object, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, name) -> int:
        """Basis index from a label object or its printed form."""
        if name in self.label_index:
            return self.label_index[name]
        for i, lab in enumerate(self.labels):
            if str(lab) == name:
                return i
        raise KeyError(name)

    @property
    def is_graded(self) -> bool:
        return self.grading is not None

    @property
    def top_degree(self) -> int:
        return max(self.grading) if self.grading and self.dim else 0

    def degree_indices(self, d: int) -> List[int]:
        return [i for i, g in enumerate(self.grading) if g == d]

    # vectors

    def zero_vec(self):
        return linalg.zeros(self.field, self.dim)

    def basis_vec(self, i):
        return linalg.unit(self.field, self.dim, i)

    @cached_property
    def one_vec(self):
        v = self.zero_vec()
        for i in self.unit_idempotents:
            v[i] = self.field.one
        return v

    def mul_vec(self, x, y):
        out = self.zero_vec()
        ys = [(j, b) for j, b in enumerate(y) if b]
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.table[i]
            for j, b in ys:
                entry = row[j]
                if entry:
                    ab = a * b
                    for k, c in entry.items():
                        out[k] = out[k] + ab * c
        return out

    def mul_basis(self, i, j):
        out = self.zero_vec()
        for k, c in self.table[i][j].items():
            out[k] = c
        return out

    def left_matrix(self, x):
        """Matrix of y -> x*y (column i is x*b_i)."""
        cols = [self.mul_vec(x, self.basis_vec(i)) for i in range(self.dim)]
        return linalg.transpose(cols) if cols else []

    def right_matrix(self, x):
        cols = [self.mul_vec(self.basis_vec(i), x) for i in range(self.dim)]
        return linalg.transpose(cols) if cols else []

    # elements

    def element(self, coeffs) -> "Element":
        return Element(self, tuple(self.field.coerce(c) for c in coeffs))

    def basis_element(self, i) -> "Element":
        return Element(self, tuple(self.basis_vec(i)))

    def __getitem__(self, name) -> "Element":
        return self.basis_element(self.index(name))

    @property
    def one(self) -> "Element":
        return Element(self, tuple(self.one_vec))

    @property
    def zero(self) -> "Element":
        return Element(self, tuple(self.zero_vec()))

    # structure, cached

    @cached_property
    def radical(self) -> linalg.Subspace:
        return _radical(self)

    @cached_property
    def radical_powers(self) -> List[linalg.Subspace]:
        return _radical_powers(self)

    @cached_property
    def socle_space(self) -> linalg.Subspace:
        return _socle(self)

    def corner(self, e, f) -> linalg.Subspace:
        """The subspace e A f."""
        vecs = []
        for i in range(self.dim):
            v = self.mul_vec(self.mul_vec(e, self.basis_vec(i)), f)
            if any(v):
                vecs.append(v)
        return linalg.Subspace(self.field, self.dim, vecs)

    def vertex_names(self) -> List[str]:
        names = []
        for i in self.unit_idempotents:
            lab = self.labels[i]
            names.append(lab.vertex if isinstance(lab, Vertex) else str(lab))
        return names


@dataclass(frozen=True, eq=False)
class Element:
    algebra: Algebra
    coeffs: tuple

    def _check(self, other):
        if not isinstance(other, Element):
            return None
        if other.algebra is not self.algebra:
            raise FieldMismatch("elements belong to different algebras")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Element(self.algebra, tuple(linalg.add(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        other = self._check(other)
        return Element(self.algebra, tuple(linalg.sub(self.coeffs, other.coeffs)))

    def __neg__(self):
        return Element(self.algebra, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self.algebra, self, other)
        c = self.algebra.field.coerce(other)
        return Element(self.algebra, tuple(c * x for x in self.coeffs))

    def __rmul__(self, other):
        c = self.algebra.field.coerce(other)
        return Element(self.algebra, tuple(c * x for x in self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra is other.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __str__(self):
        return format_vector(self.algebra, self.coeffs)


def format_vector(A: Algebra, v) -> str:
    terms = []
    for c, lab in zip(v, A.labels):
        if not c:
            continue
        s = str(c)
        if s == "1":
            t = str(lab)
        elif s == "-1":
            t = f"-{lab}"
        elif " " in s:
            t = f"({s})*{lab}"
        else:
            t = f"{s}*{lab}"
        terms.append(t)
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def multiply(A: Algebra, x: Element, y: Element) -> Element:
    if x.algebra is not A or y.algebra is not A:
        raise FieldMismatch("multiplying elements of a different algebra")
    return Element(A, tuple(A.mul_vec(x.coeffs, y.coeffs)))


# ---------------------------------------------------------------- morphisms

class AlgebraMorphism:
    """Linear map given by the image of every source basis element."""

    def __init__(self, source: Algebra, target: Algebra, cols):
        self.source = source
        self.target = target
        self.cols = [list(c) for c in cols]
        if len(self.cols) != source.dim or any(len(c) != target.dim for c in self.cols):
            raise ShapeMismatch("morphism matrix has the wrong shape")

    @classmethod
    def identity(cls, A: Algebra) -> "AlgebraMorphism":
        return cls(A, A, [A.basis_vec(i) for i in range(A.dim)])

    @classmethod
    def from_matrix(cls, source, target, rows):
        return cls(source, target, linalg.transpose(rows) if rows else [])

    @property
    def matrix(self):
        return linalg.transpose(self.cols) if self.cols else []

    def apply_vec(self, v):
        out = self.target.zero_vec()
        for c, col in zip(v, self.cols):
            if c:
                out = linalg.axpy(c, col, out)
        return out

    def __call__(self, x):
        if isinstance(x, Element):
            return Element(self.target, tuple(self.apply_vec(x.coeffs)))
        return self.apply_vec(x)

    def compose(self, other: "AlgebraMorphism") -> "AlgebraMorphism":
        """``self`` after ``other``."""
        if other.target is not self.source:
            raise ShapeMismatch("morphisms do not compose")
        return AlgebraMorphism(other.source, self.target, [self.apply_vec(c) for c in other.cols])

    def inverse(self) -> "AlgebraMorphism":
        if self.source.dim != self.target.dim:
            raise NotInvertible("map between spaces of different dimension")
        inv = linalg.inverse(self.matrix, self.source.field)
        return AlgebraMorphism.from_matrix(self.target, self.source, inv)

    def power(self, n: int) -> "AlgebraMorphism":
        if self.source is not self.target:
            raise ShapeMismatch("only endomorphisms have powers")
        if n < 0:
            return self.inverse().power(-n)
        result = AlgebraMorphism.identity(self.source)
        base = self
        while n:
            if n & 1:
                result = base.compose(result)
            base = base.compose(base)
            n >>= 1
        return result

    def is_identity(self) -> bool:
        return self.source is self.target and all(
            c == self.source.basis_vec(i) for i, c in enumerate(self.cols)
        )

    def __eq__(self, other):
        if not isinstance(other, AlgebraMorphism):
            return NotImplemented
        return self.source is other.source and self.target is other.target and self.cols == other.cols

    def violations(self, limit=None) -> List[str]:
        out = []
        if self.apply_vec(self.source.one_vec) != self.target.one_vec:
            out.append("not unital")
        S, T = self.source, self.target
        for i in range(S.dim):
            for j in range(S.dim):
                lhs = self.apply_vec(S.mul_basis(i, j))
                rhs = T.mul_vec(self.cols[i], self.cols[j])
                if lhs != rhs:
                    out.append(f"f({S.labels[i]}*{S.labels[j]}) != f({S.labels[i]})*f({S.labels[j]})")
                    if limit and len(out) >= limit:
                        return out
        return out

    def is_homomorphism(self) -> bool:
        return not self.violations(limit=1)

    def is_automorphism(self) -> bool:
        if self.source is not self.target or not self.is_homomorphism():
            return False
        return bool(linalg.det(self.matrix, self.source.field))

    def require_automorphism(self):
        if not self.is_automorphism():
            raise NotAutomorphism("map is not an algebra automorphism")
        return self

    def is_graded(self) -> bool:
        S, T = self.source, self.target
        if not (S.is_graded and T.is_graded):
            return False
        return all(
            T.grading[k] == S.grading[i]
            for i, col in enumerate(self.cols)
            for k, c in enumerate(col)
            if c
        )

    def describe(self) -> List[Tuple[str, str]]:
        return [(str(lab), format_vector(self.target, col)) for lab, col in zip(self.source.labels, self.cols)]


def extend_from_generators(source: Algebra, target: Algebra, images: Dict[int, list]) -> AlgebraMorphism:
    """Extend images of the degree 0 and degree 1 basis elements multiplicatively.

    ``source`` must be graded and generated in degrees 0 and 1. The result is
    checked to be a homomorphism.
    """
    if not source.is_graded:
        raise NotGraded("multiplicative extension needs a graded source")
    F = source.field
    cols: Dict[int, list] = {}
    for d in (0, 1):
        for i in source.degree_indices(d):
            if i not in images:
                raise ValueError(f"no image given for generator {source.labels[i]}")
            cols[i] = list(images[i])
    prev = source.degree_indices(1)
    for d in range(2, source.top_degree + 1):
        targets = source.degree_indices(d)
        if not targets:
            continue
        words, word_images = [], []
        span = linalg.Subspace(F, source.dim)
        for i in prev:
            for a in source.degree_indices(1):
                v = source.mul_basis(i, a)
                if not any(v) or v in span:
                    continue
                span = linalg.Subspace(F, source.dim, span.rows + [v])
                words.append(v)
                word_images.append(target.mul_vec(cols[i], cols[a]))
        basis = linalg.Basis(F, source.dim, words)
        for t in targets:
            try:
                c = basis.coords(source.basis_vec(t))
            except ValueError:
                raise NotGraded(f"{source.labels[t]} is not generated in degree 1") from None
            img = target.zero_vec()
            for coef, w in zip(c, word_images):
                if coef:
                    img = linalg.axpy(coef, w, img)
            cols[t] = img
        prev = targets
    f = AlgebraMorphism(source, target, [cols[i] for i in range(source.dim)])
    bad = f.violations(limit=3)
    if bad:
        raise NotAutomorphism("generator images do not extend to a homomorphism: " + "; ".join(bad))
    return f


# ---------------------------------------------------------------- construction from quivers

def _normalize_relation(field, quiver, rel):
    terms: Dict[Tuple[str, ...], Scalar] = {}
    for coeff, path in rel:
        path = tuple(path)
        for a in path:
            if a not in quiver.arrow_map:
                raise InvalidQuiver(f"unknown arrow {a!r} in relation")
        if len(path) <= 1:
            raise InconsistentRelations(
                f"relation term {'.'.join(path) or '(empty)'} has length < 2 and would kill a vertex or arrow"
            )
        c = field.coerce(coeff)
        terms[path] = terms.get(path, field.zero) + c
    terms = {p: c for p, c in terms.items() if c}
    if not terms:
        return None
    ends = {quiver.path_ends(p) for p in terms}
    if len(ends) != 1:
        raise NonParallelRelation("relation terms do not share source and target")
    if len({len(p) for p in terms}) != 1:
        raise NonHomogeneousRelation("relation terms have different lengths")
    return terms


def build_algebra(p: Presentation, name: str = "") -> Algebra:
    """Basis: vertices, arrows, then standard monomials of each length below
    the truncation, with products reduced against the echelonised ideal."""
    F, Q, T = p.field, p.quiver, p.truncate_radical
    if not Q.vertices:
        raise EmptyQuiver("quiver has no vertices")
    if T < 2:
        raise ValueError("truncate_radical must be at least 2")
    rels = [r for r in (_normalize_relation(F, Q, rel) for rel in p.relations) if r]

    labels = [Vertex(v) for v in Q.vertices] + [Path((a.name,)) for a in Q.arrows]
    grading = [0] * len(Q.vertices) + [1] * len(Q.arrows)
    # per length: ideal echelon (path -> normal form) and standard monomials
    normal: Dict[Tuple[str, ...], Dict[Tuple[str, ...], Scalar]] = {}
    for d in range(2, T):
        paths = Q.paths(d)
        if not paths:
            break
        # prefer lexicographically larger paths as pivots so the smallest survive
        order = sorted(paths, reverse=True)
        col = {q: i for i, q in enumerate(order)}
        gens = []
        for rel in rels:
            ell = len(next(iter(rel)))
            if ell > d:
                continue
            src, tgt = Q.path_ends(next(iter(rel)))
            for left_len in range(d - ell + 1):
                lefts = [()] if left_len == 0 else [u for u in Q.paths(left_len) if Q.path_ends(u)[1] == src]
                right_len = d - ell - left_len
                rights = [()] if right_len == 0 else [v for v in Q.paths(right_len) if Q.path_ends(v)[0] == tgt]
                for u in lefts:
                    for v in rights:
                        vec = linalg.zeros(F, len(order))
                        for q, c in rel.items():
                            vec[col[u + q + v]] = c
                        gens.append(vec)
        rows, pivots = linalg.rref(gens, F, len(order)) if gens else ([], [])
        pivset = set(pivots)
        standard = sorted(q for q in paths if col[q] not in pivset)
        for q in standard:
            normal[q] = {q: F.one}
        for row, pc in zip(rows, pivots):
            normal[order[pc]] = {order[j]: -row[j] for j in range(len(order)) if j != pc and row[j]}
        labels.extend(Path(q) for q in standard)
        grading.extend([d] * len(standard))

    index = {lab: i for i, lab in enumerate(labels)}
    vidx = {v: i for i, v in enumerate(Q.vertices)}
    n = len(labels)
    table = [[{} for _ in range(n)] for _ in range(n)]
    one = F.one
    for i, li in enumerate(labels):
        for j, lj in enumerate(labels):
            if isinstance(li, Vertex) and isinstance(lj, Vertex):
                if li == lj:
                    table[i][j] = {i: one}
            elif isinstance(li, Vertex):
                if Q.path_ends(lj.arrows)[0] == li.vertex:
                    table[i][j] = {j: one}
            elif isinstance(lj, Vertex):
                if Q.path_ends(li.arrows)[1] == lj.vertex:
                    table[i][j] = {i: one}
            else:
                if Q.arrow_map[li.arrows[-1]].target != Q.arrow_map[lj.arrows[0]].source:
                    continue
                q = li.arrows + lj.arrows
                if len(q) >= T or q not in normal:
                    continue
                table[i][j] = {index[Path(r)]: c for r, c in normal[q].items()}
    return Algebra(F, labels, table, [vidx[v] for v in Q.vertices], grading, name=name)


# ---------------------------------------------------------------- radical and socle

def _trace_vector(A: Algebra, indices=None):
    """tr_k = trace of left multiplication by b_k on the span of ``indices``."""
    idx = range(A.dim) if indices is None else indices
    idxset = set(idx)
    out = []
    for k in range(A.dim):
        t = A.field.zero
        for l in idx:
            c = A.table[k][l].get(l)
            if c:
                t = t + c
        out.append(t)
    return out


def _dickson_radical(A: Algebra, indices=None) -> linalg.Subspace:
    """Radical in characteristic 0: the kernel of (x, y) -> Tr(L_{xy})."""
    idx = list(range(A.dim)) if indices is None else list(indices)
    tr = _trace_vector(A, idx)
    F = A.field
    gram = []
    for i in idx:
        row = []
        for j in idx:
            t = F.zero
            for k, c in A.table[i][j].items():
                if tr[k]:
                    t = t + c * tr[k]
            row.append(t)
        gram.append(row)
    kern = linalg.nullspace(gram, F, len(idx))
    vecs = []
    for v in kern:
        full = A.zero_vec()
        for c, i in zip(v, idx):
            full[i] = c
        vecs.append(full)
    return linalg.Subspace(F, A.dim, vecs)


def _closed_nilpotent(A: Algebra, space: linalg.Subspace) -> bool:
    power = space
    for _ in range(A.dim + 1):
        if power.dim == 0:
            return True
        nxt = [A.mul_vec(x, r) for x in power.rows for r in space.rows]
        nxt = linalg.Subspace(A.field, A.dim, nxt)
        if any(v not in space for v in nxt.rows) or nxt.dim >= power.dim:
            return False
        power = nxt
    return False


def _radical(A: Algebra) -> linalg.Subspace:
    F = A.field
    if A.is_graded:
        deg0 = A.degree_indices(0)
        positive = [A.basis_vec(i) for i, g in enumerate(A.grading) if g > 0]
        rad = linalg.Subspace(F, A.dim, positive)
        if set(deg0) != set(A.unit_idempotents) or len(deg0) != len(A.unit_idempotents):
            # degree-0 part must be semisimple for the positive part to be the radical
            tr = _trace_vector(A, deg0)
            gram = [[sum((c * tr[k] for k, c in A.table[i][j].items()), F.zero) for j in deg0] for i in deg0]
            if not linalg.det(gram, F):
                raise NotNilpotentComplement("degree-0 part is not semisimple; grading cannot give the radical")
        return rad
    candidate = linalg.Subspace(
        F, A.dim, [A.basis_vec(i) for i in range(A.dim) if i not in set(A.unit_idempotents)]
    )
    if _closed_nilpotent(A, candidate) and _is_two_sided_ideal(A, candidate):
        return candidate
    rad = _dickson_radical(A)
    # the trace kernel always contains the radical; in char 0 they agree, in
    # char p only a zero kernel is conclusive
    if rad.dim == 0 or (F.characteristic == 0 and _closed_nilpotent(A, rad)):
        return rad
    raise NotNilpotentComplement("span of the non-idempotent basis elements is not a nilpotent ideal")


def _is_two_sided_ideal(A: Algebra, space: linalg.Subspace) -> bool:
    for v in space.rows:
        for i in range(A.dim):
            b = A.basis_vec(i)
            if A.mul_vec(b, v) not in space or A.mul_vec(v, b) not in space:
                return False
    return True


def _radical_powers(A: Algebra) -> List[linalg.Subspace]:
    rad = A.radical
    powers = [linalg.Subspace(A.field, A.dim, [A.basis_vec(i) for i in range(A.dim)])]
    current = rad
    while current.dim:
        if len(powers) > A.dim + 1 or current.dim >= powers[-1].dim and len(powers) > 1:
            raise NotNilpotentComplement("radical is not nilpotent")
        powers.append(current)
        current = linalg.Subspace(A.field, A.dim, [A.mul_vec(x, r) for x in current.rows for r in rad.rows])
    return powers


def radical_layers(A: Algebra) -> List[linalg.Subspace]:
    """A = rad^0, rad^1, rad^2, ... down to the last nonzero power."""
    return list(A.radical_powers)


def radical_layer_dims(A: Algebra) -> List[int]:
    return [s.dim for s in A.radical_powers]


def loewy_length(A: Algebra) -> int:
    """Least m with rad^m = 0."""
    return len(A.radical_powers)


def _annihilator(A: Algebra, elements, side: str) -> linalg.Subspace:
    rows = []
    for r in elements:
        m = A.left_matrix(r) if side == "left" else A.right_matrix(r)
        rows.extend(row for row in m if any(row))
    kern = linalg.nullspace(rows, A.field, A.dim) if rows else [A.basis_vec(i) for i in range(A.dim)]
    return linalg.Subspace(A.field, A.dim, kern)


def _socle(A: Algebra) -> linalg.Subspace:
    rad = A.radical.rows
    # rad * x = 0 is the kernel of left multiplication by radical elements
    left = _annihilator(A, rad, "left")
    right = _annihilator(A, rad, "right")
    both = linalg.Subspace(A.field, A.dim, linalg.nullspace(
        [row for r in rad for row in A.left_matrix(r) + A.right_matrix(r) if any(row)], A.field, A.dim
    ) if rad else [A.basis_vec(i) for i in range(A.dim)])
    if left.rows != right.rows:
        log.warning("left and right socles of %s differ", A.name or "algebra")
    return _prefer_top_degree(A, both)


def _prefer_top_degree(A: Algebra, space: linalg.Subspace) -> linalg.Subspace:
    # echelon with pivots on non-idempotent, high-degree coordinates
    order = sorted(range(A.dim), key=lambda i: (i in A.unit_idempotents, -(A.grading[i] if A.grading else 0), i))
    return _subspace_with_order(A.field, A.dim, space.rows, order)


def _subspace_with_order(field, n, vectors, order) -> linalg.Subspace:
    perm = [[v[i] for i in order] for v in vectors if any(v)]
    out = linalg.Subspace(field, n)
    if not perm:
        return out
    rows, pivots = linalg.rref(perm, field, n)
    back = []
    for row in rows:
        full = linalg.zeros(field, n)
        for pos, i in enumerate(order):
            full[i] = row[pos]
        back.append(full)
    out.rows = back
    out.pivots = [order[p] for p in pivots]
    return out


def socle(A: Algebra) -> linalg.Subspace:
    return A.socle_space


# ---------------------------------------------------------------- quotients

def quotient_algebra(A: Algebra, ideal: linalg.Subspace, name: str = "") -> Algebra:
    """A / ideal on the complementary basis indices (labels kept)."""
    ideal = _prefer_top_degree(A, ideal)
    keep = ideal.complement_indices()
    pos = {i: p for p, i in enumerate(keep)}
    table = [[{} for _ in keep] for _ in keep]
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            v = ideal.reduce(A.mul_basis(i, j))
            entry = {pos[k]: c for k, c in enumerate(v) if c}
            table[a][b] = entry
    idems = []
    for e in A.unit_idempotents:
        v = ideal.reduce(A.basis_vec(e))
        if not any(v):
            continue
        if e not in pos or sum(1 for c in v if c) != 1:
            raise NotBasic("unit idempotent does not survive as a basis element of the quotient")
        idems.append(pos[e])
    grading = [A.grading[i] for i in keep] if A.is_graded else None
    flags = ("ZeroQuotient",) if not keep else ()
    return Algebra(A.field, [A.labels[i] for i in keep], table, idems, grading, name=name, flags=flags)


def quotient_by_socle(A: Algebra) -> Algebra:
    Q = quotient_algebra(A, A.socle_space, name=f"{A.name}/soc" if A.name else "")
    if Q.dim == 0:
        log.info("quotient by socle is zero (%s)", A.name or "algebra")
    return Q


# ---------------------------------------------------------------- connectivity and quivers

def _idempotent_graph_components(A: Algebra, idems) -> List[List[int]]:
    k = len(idems)
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in range(k):
        for t in range(s + 1, k):
            if A.corner(idems[s], idems[t]).dim or A.corner(idems[t], idems[s]).dim:
                parent[find(s)] = find(t)
    groups: Dict[int, List[int]] = {}
    for s in range(k):
        groups.setdefault(find(s), []).append(s)
    return sorted(groups.values())


def is_connected(A: Algebra) -> bool:
    idems = [A.basis_vec(i) for i in A.unit_idempotents]
    return len(_idempotent_graph_components(A, idems)) <= 1


def connected_components(A: Algebra) -> List[Algebra]:
    """Blocks cut out by connected groups of unit idempotents."""
    idems = [A.basis_vec(i) for i in A.unit_idempotents]
    groups = _idempotent_graph_components(A, idems)
    if len(groups) <= 1:
        return [A]
    out = []
    for g in groups:
        parts = [idems[s] for s in g]
        eta = A.zero_vec()
        for p in parts:
            eta = linalg.add(eta, p)
        out.append(idempotent_truncation(A, eta, parts))
    return out


def is_basic_split(A: Algebra) -> bool:
    """A/rad is a product of copies of the field, one per unit idempotent."""
    rad = A.radical
    if A.dim - rad.dim != len(A.unit_idempotents):
        return False
    return all(A.basis_vec(e) not in rad for e in A.unit_idempotents)


def quiver_of(A: Algebra) -> Quiver:
    """Gabriel quiver: one arrow i -> j per dimension of e_i (rad/rad^2) e_j."""
    if not is_basic_split(A):
        S = quotient_algebra(A, A.radical)
        _primitive_idempotents(S)  # raises NotSplit when a corner will not split
        raise NotBasic("algebra is not basic (or its unit idempotents are not primitive)")
    powers = A.radical_powers
    rad = powers[1] if len(powers) > 1 else linalg.Subspace(A.field, A.dim)
    rad2 = powers[2] if len(powers) > 2 else linalg.Subspace(A.field, A.dim)
    names = A.vertex_names()
    idems = [A.basis_vec(e) for e in A.unit_idempotents]
    arrows = []
    for s, es in enumerate(idems):
        for t, et in enumerate(idems):
            vecs = [A.mul_vec(A.mul_vec(es, r), et) for r in rad.rows]
            vecs += rad2.rows
            count = linalg.Subspace(A.field, A.dim, vecs).dim - rad2.dim
            if not count:
                continue
            # reuse degree-1 basis labels when they match
            found = []
            if A.is_graded:
                for i in A.degree_indices(1):
                    b = A.basis_vec(i)
                    if A.mul_vec(A.mul_vec(es, b), et) == b:
                        found.append(str(A.labels[i]))
            if len(found) == count:
                arrow_names = found
            else:
                arrow_names = [f"{names[s]}->{names[t]}#{k}" for k in range(count)]
            arrows.extend(Arrow(nm, names[s], names[t]) for nm in arrow_names)
    return Quiver(tuple(names), tuple(arrows))


# ---------------------------------------------------------------- idempotents

def _is_idempotent(A: Algebra, v) -> bool:
    return A.mul_vec(v, v) == list(v)


def idempotent_truncation(A: Algebra, eta, parts=None, name: str = "") -> Algebra:
    """The algebra eta A eta with unit eta.

    ``parts`` optionally splits eta into orthogonal idempotents, which become
    the unit idempotents of the result. Without it, eta is split along A's own
    unit idempotents when it is a sum of some of them.
    """
    eta = list(eta.coeffs if isinstance(eta, Element) else eta)
    F = A.field
    if not _is_idempotent(A, eta):
        raise NotIdempotent("eta^2 != eta")
    if not any(eta):
        raise NotIdempotent("eta is zero")
    if parts is None:
        ones = [i for i in range(A.dim) if eta[i]]
        if all(i in A.unit_idempotents and eta[i] == F.one for i in ones):
            parts = [A.basis_vec(i) for i in ones]
        else:
            parts = [eta]
    parts = [list(p.coeffs if isinstance(p, Element) else p) for p in parts]
    total = A.zero_vec()
    for p in parts:
        total = linalg.add(total, p)
    if total != eta:
        raise NotIdempotent("parts do not sum to eta")
    for s, p in enumerate(parts):
        for t, q in enumerate(parts):
            prod = A.mul_vec(p, q)
            if prod != (p if s == t else A.zero_vec()):
                raise NotIdempotent("parts are not orthogonal idempotents")

    homogeneous = A.is_graded and all(
        all(A.grading[i] == 0 for i, c in enumerate(p) if c) for p in parts
    )
    vectors, degrees, unit_pos = [], [], []
    for s, es in enumerate(parts):
        for t, et in enumerate(parts):
            groups = {}
            for i in range(A.dim):
                v = A.mul_vec(A.mul_vec(es, A.basis_vec(i)), et)
                if any(v):
                    groups.setdefault(A.grading[i] if homogeneous else 0, []).append(v)
            for d in sorted(groups):
                space = linalg.Subspace(F, A.dim, groups[d])
                rows = space.rows
                if s == t and d == 0:
                    rows = [es] + [r for r in rows if r not in linalg.Subspace(F, A.dim, [es])]
                    # keep only rows that enlarge the span
                    chosen, span = [], linalg.Subspace(F, A.dim)
                    for r in rows:
                        if r not in span:
                            chosen.append(r)
                            span = linalg.Subspace(F, A.dim, span.rows + [r])
                    rows = chosen
                    unit_pos.append(len(vectors))
                vectors.extend(rows)
                degrees.extend([d] * len(rows))
    labels = []
    for k, v in enumerate(vectors):
        nz = [i for i, c in enumerate(v) if c]
        if len(nz) == 1 and v[nz[0]] == F.one:
            labels.append(A.labels[nz[0]])
        else:
            labels.append(Combination(f"u{k}"))
    if len(set(labels)) != len(labels):
        labels = [lab if labels.count(lab) == 1 else Combination(f"u{k}") for k, lab in enumerate(labels)]
    basis = linalg.Basis(F, A.dim, vectors)
    m = len(vectors)
    table = [[{} for _ in range(m)] for _ in range(m)]
    for a in range(m):
        for b in range(m):
            c = basis.coords(A.mul_vec(vectors[a], vectors[b]))
            table[a][b] = {k: x for k, x in enumerate(c) if x}
    B = Algebra(F, labels, table, unit_pos, degrees if homogeneous else None, name=name)
    B.ambient = (A, vectors)
    return B


def _corner_basis(S: Algebra, e) -> linalg.Subspace:
    return S.corner(e, e)


def _min_poly_root(S: Algebra, e, y, basis: linalg.Basis):
    """Root of the minimal polynomial of y in the corner with unit e, or None."""
    F = S.field
    powers = [list(e)]
    span = linalg.Subspace(F, S.dim, [e])
    while True:
        nxt = S.mul_vec(powers[-1], y)
        if nxt in span:
            c = linalg.Basis(F, S.dim, powers).coords(nxt)
            poly = [-x for x in c] + [F.one]
            if len(poly) <= 2:
                return None, len(poly) - 1
            return find_root(poly), len(poly) - 1
        powers.append(nxt)
        span = linalg.Subspace(F, S.dim, span.rows + [nxt])


def _is_zero_divisor(S: Algebra, y, corner: linalg.Subspace) -> bool:
    if not any(y):
        return False
    basis = linalg.Basis(S.field, S.dim, corner.rows)
    cols = [basis.coords(S.mul_vec(y, r)) for r in corner.rows]
    return not linalg.det(linalg.transpose(cols), S.field)


def _split_idempotent(S: Algebra, e, corner: linalg.Subspace, rng):
    """Find an idempotent f with 0 != f != e inside the corner eSe."""
    F = S.field
    cbasis = linalg.Basis(F, S.dim, corner.rows)
    e_span = linalg.Subspace(F, S.dim, [e])
    candidates = [r for r in corner.rows if r not in e_span]
    pairs = [linalg.add(a, b) for a, b in itertools.combinations(candidates, 2)]
    pairs += [linalg.sub(a, b) for a, b in itertools.combinations(candidates, 2)]
    zero_div = None
    for y in candidates + pairs:
        if _is_zero_divisor(S, y, corner):
            zero_div = y
            break
    if zero_div is None:
        pool = list(candidates)
        for _ in range(40):
            pool.append(
                [sum((random_scalar(F, rng, 3) * r[k] for r in corner.rows), F.zero) for k in range(S.dim)]
            )
        for y in pool:
            if y in e_span:
                continue
            root, deg = _min_poly_root(S, e, y, cbasis)
            if root is not None:
                z = linalg.axpy(-root, e, y)
                if any(z):
                    zero_div = z
                    break
    if zero_div is None:
        raise NotSplit("could not split a corner of the semisimple quotient over the given field")
    z = zero_div
    # solve z x z = z for x in the corner; then x z is an idempotent
    cols = [S.mul_vec(S.mul_vec(z, r), z) for r in corner.rows]
    x = linalg.solve(linalg.transpose(cols), z, F)
    if x is None:
        raise LiftDivergence("quotient by the radical is not semisimple")
    xv = S.zero_vec()
    for c, r in zip(x, corner.rows):
        if c:
            xv = linalg.axpy(c, r, xv)
    f = S.mul_vec(xv, z)
    if not _is_idempotent(S, f) or not any(f) or f == list(e):
        raise LiftDivergence("regular-element splitting produced a bad idempotent")
    return f


def _primitive_idempotents(S: Algebra, seed: int = 0) -> List[list]:
    """Complete set of primitive orthogonal idempotents of a semisimple algebra
    with split simple factors; raises NotSplit otherwise."""
    rng = random.Random(seed)
    queue = [S.basis_vec(i) for i in S.unit_idempotents]
    done = []
    while queue:
        e = queue.pop()
        corner = _corner_basis(S, e)
        if corner.dim == 1:
            done.append(e)
            continue
        f = _split_idempotent(S, e, corner, rng)
        queue.append(f)
        queue.append(linalg.sub(e, f))
    return done


def _lift_idempotents(A: Algebra, keep: List[int], reps: List[list]) -> List[list]:
    """Lift orthogonal idempotents of A/rad (coordinates on ``keep``) to A."""
    F = A.field
    lifted = []
    for r in reps:
        x = A.zero_vec()
        for c, i in zip(r, keep):
            x[i] = c
        comp = linalg.sub(A.one_vec, [sum(v, F.zero) for v in zip(*lifted)] if lifted else A.zero_vec())
        x = A.mul_vec(A.mul_vec(comp, x), comp)
        for _ in range(2 * A.dim + 2):
            x2 = A.mul_vec(x, x)
            if x2 == x:
                break
            x3 = A.mul_vec(x2, x)
            x = linalg.sub(linalg.scale(F(3), x2), linalg.scale(F(2), x3))
        else:
            raise LiftDivergence("idempotent lifting did not converge")
        lifted.append(x)
    return lifted


def basic_idempotents(A: Algebra) -> List[list]:
    """Orthogonal idempotents of A, one primitive per simple block of A/rad."""
    if is_basic_split(A):
        return [A.basis_vec(e) for e in A.unit_idempotents]
    rad = _prefer_top_degree(A, A.radical)
    S = quotient_algebra(A, rad)
    keep = rad.complement_indices()
    prims = _primitive_idempotents(S)
    # group primitive idempotents by block: f S g != 0
    k = len(prims)
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in range(k):
        for t in range(s + 1, k):
            if find(s) != find(t) and S.corner(prims[s], prims[t]).dim:
                parent[find(s)] = find(t)
    chosen = {}
    for s in range(k):
        chosen.setdefault(find(s), s)
    reps = [prims[s] for s in sorted(chosen.values())]
    return _lift_idempotents(A, keep, reps)


def basic_idempotent(A: Algebra) -> Element:
    parts = basic_idempotents(A)
    eta = A.zero_vec()
    for p in parts:
        eta = linalg.add(eta, p)
    return Element(A, tuple(eta))


def basic_version(A: Algebra) -> Algebra:
    parts = basic_idempotents(A)
    if len(parts) == len(A.unit_idempotents) and is_basic_split(A):
        return A
    eta = A.zero_vec()
    for p in parts:
        eta = linalg.add(eta, p)
    return idempotent_truncation(A, eta, parts, name=f"basic({A.name})" if A.name else "")


# ---------------------------------------------------------------- verification

def check_algebra(A: Algebra) -> List[str]:
    """Associativity on all basis triples, unit laws, orthogonality of the unit
    idempotents and grading compatibility. Empty list means the table passes."""
    out = []
    n = A.dim
    F = A.field
    T = A.table
    for i in range(n):
        for j in range(n):
            ij = T[i][j]
            for k in range(n):
                lhs: Dict[int, Scalar] = {}
                for l, c in ij.items():
                    for m, d in T[l][k].items():
                        lhs[m] = lhs.get(m, F.zero) + c * d
                rhs: Dict[int, Scalar] = {}
                for l, c in T[j][k].items():
                    for m, d in T[i][l].items():
                        rhs[m] = rhs.get(m, F.zero) + c * d
                if {m: c for m, c in lhs.items() if c} != {m: c for m, c in rhs.items() if c}:
                    out.append(f"associativity fails on ({A.labels[i]}, {A.labels[j]}, {A.labels[k]})")
    one = A.one_vec
    for i in range(n):
        b = A.basis_vec(i)
        if A.mul_vec(one, b) != b or A.mul_vec(b, one) != b:
            out.append(f"unit law fails on {A.labels[i]}")
    for s in A.unit_idempotents:
        for t in A.unit_idempotents:
            expect = {s: F.one} if s == t else {}
            if {k: c for k, c in T[s][t].items() if c} != expect:
                out.append(f"idempotents {A.labels[s]}, {A.labels[t]} not orthogonal idempotents")
    if A.is_graded:
        for s in A.unit_idempotents:
            if A.grading[s] != 0:
                out.append(f"idempotent {A.labels[s]} not in degree 0")
        for i in range(n):
            for j in range(n):
                for k, c in T[i][j].items():
                    if c and A.grading[k] != A.grading[i] + A.grading[j]:
                        out.append(f"grading fails on {A.labels[i]}*{A.labels[j]}")
                        break
    return out
