"""Bilinear forms, Nakayama automorphisms, inner and outer automorphisms."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Dict, List, Optional

from . import linalg
from .algebra import (
    Algebra,
    AlgebraMorphism,
    _prefer_top_degree,
    is_basic_split,
    quiver_of,
)
from .errors import (
    DegenerateForm,
    InternalInconsistency,
    MonomialActionRequired,
    NotAutomorphism,
    NotBasic,
    NotGraded,
    NotInvertible,
    NotMultiplicative,
    NotSplit,
    ShapeMismatch,
    SocleBasisNotInBasis,
)
from .fields import is_root_of_unity, random_scalar

# grids larger than this are sampled instead of enumerated
EXHAUSTIVE_LIMIT = 20000


class BilinearForm:
    def __init__(self, algebra: Algebra, gram, origin: str = ""):
        self.algebra = algebra
        self.gram = [list(r) for r in gram]
        self.origin = origin
        n = algebra.dim
        if len(self.gram) != n or any(len(r) != n for r in self.gram):
            raise ShapeMismatch("gram matrix does not match the algebra")

    @classmethod
    def from_functional(cls, A: Algebra, f, origin=""):
        """The form (a, b) -> f(ab)."""
        F = A.field
        gram = []
        for i in range(A.dim):
            row = []
            for j in range(A.dim):
                t = F.zero
                for k, c in A.table[i][j].items():
                    if f[k]:
                        t = t + c * f[k]
                row.append(t)
            gram.append(row)
        return cls(A, gram, origin)

    @cached_property
    def determinant(self):
        return linalg.det(self.gram, self.algebra.field)

    @property
    def nondegenerate(self) -> bool:
        return bool(self.determinant)

    def pair(self, u, v):
        F = self.algebra.field
        t = F.zero
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if b and self.gram[i][j]:
                    t = t + a * b * self.gram[i][j]
        return t

    def associativity_violations(self) -> List[tuple]:
        A = self.algebra
        bad = []
        for i in range(A.dim):
            for j in range(A.dim):
                ij = A.mul_basis(i, j)
                for k in range(A.dim):
                    if self.pair(ij, A.basis_vec(k)) != self.pair(A.basis_vec(i), A.mul_basis(j, k)):
                        bad.append((i, j, k))
        return bad

    def is_associative(self) -> bool:
        return not self.associativity_violations()

    def is_symmetric_matrix(self) -> bool:
        return all(self.gram[i][j] == self.gram[j][i] for i in range(len(self.gram)) for j in range(i))


@dataclass
class NotFrobenius:
    """No nondegenerate associative form was found. ``proven`` is set when the
    search covered a grid large enough to rule one out."""

    tried: int
    proven: bool
    note: str = ""

    def __bool__(self):
        return False


def trace_functional(A: Algebra):
    """1 on socle basis elements that are radical elements or unit idempotents,
    0 elsewhere."""
    soc = A.socle_space
    if not soc.is_coordinate_subspace():
        raise SocleBasisNotInBasis("socle is not spanned by basis elements")
    rad = A.radical
    f = A.zero_vec()
    for p in soc.pivots:
        if p in A.unit_idempotents or A.basis_vec(p) in rad:
            f[p] = A.field.one
    return f


def trace_form(A: Algebra) -> BilinearForm:
    return BilinearForm.from_functional(A, trace_functional(A), origin="trace")


def _functional_candidates(A: Algebra, attempts: int, seed: int):
    F = A.field
    n = A.dim
    yield from (A.basis_vec(i) for i in range(n))
    for i, j in itertools.combinations(range(n), 2):
        v = A.zero_vec()
        v[i] = v[j] = F.one
        yield v
    rng = random.Random(seed)
    for _ in range(attempts):
        yield [random_scalar(F, rng, 20) for _ in range(n)]


def _grid(A: Algebra):
    """Finite grid on which a nonzero polynomial of degree <= dim cannot vanish
    identically, or None when that grid is too large."""
    F, n = A.field, A.dim
    if F.characteristic and F.characteristic <= n:
        values = range(F.characteristic)
    else:
        values = range(n + 1)
    if len(values) ** n > EXHAUSTIVE_LIMIT:
        return None
    return [F(v) for v in values]


def find_frobenius_form(A: Algebra, attempts: int = 32, seed: int = 0):
    """A nondegenerate associative form, or a :class:`NotFrobenius` record."""
    try:
        tf = trace_form(A)
        if tf.nondegenerate:
            return tf
    except SocleBasisNotInBasis:
        pass
    tried = 0
    for f in _functional_candidates(A, attempts, seed):
        tried += 1
        form = BilinearForm.from_functional(A, f, origin="functional")
        if form.nondegenerate:
            return form
    grid = _grid(A)
    if grid is None:
        return NotFrobenius(tried, False, "no nondegenerate form among sampled functionals")
    for f in itertools.product(grid, repeat=A.dim):
        tried += 1
        form = BilinearForm.from_functional(A, list(f), origin="functional")
        if form.nondegenerate:
            return form
    return NotFrobenius(tried, True, "determinant vanishes on an interpolation grid")


def nakayama_from_form(A: Algebra, B: BilinearForm) -> AlgebraMorphism:
    """The automorphism nu with <a, b> = <b, nu(a)>."""
    F = A.field
    if not B.nondegenerate:
        raise DegenerateForm("form is degenerate")
    G = B.gram
    N = linalg.matmul(linalg.inverse(G, F), linalg.transpose(G))
    nu = AlgebraMorphism.from_matrix(A, A, N)
    for i in range(A.dim):
        for j in range(A.dim):
            if G[i][j] != B.pair(A.basis_vec(j), nu.cols[i]):
                raise NotMultiplicative("gram relation fails for the computed map")
    if not nu.is_automorphism():
        raise NotMultiplicative("form is nondegenerate but the Nakayama map is not an automorphism")
    return nu


def nakayama(A: Algebra, attempts: int = 32, seed: int = 0):
    form = find_frobenius_form(A, attempts, seed)
    if not form:
        return form, None
    return form, nakayama_from_form(A, form)


def transfer_nakayama(phi: AlgebraMorphism, nu: AlgebraMorphism) -> AlgebraMorphism:
    """phi^-1 . nu . phi for an isomorphism phi: L -> G and nu on G."""
    if nu.source is not phi.target or nu.target is not phi.target:
        raise ShapeMismatch("nu must be an endomorphism of the target of phi")
    result = phi.inverse().compose(nu.compose(phi))
    if not result.is_automorphism():
        raise NotAutomorphism("transferred map is not an automorphism")
    return result


def automorphism_order(sigma: AlgebraMorphism, bound: int = 64) -> Optional[int]:
    power = sigma
    for n in range(1, bound + 1):
        if power.is_identity():
            return n
        power = sigma.compose(power)
    return None


# ---------------------------------------------------------------- inner automorphisms

@dataclass
class InnerResult:
    status: str  # "witness", "not_inner" or "undecided"
    witness: Optional[list] = None
    note: str = ""

    def __bool__(self):
        return self.status == "witness"


def _left_inverse(A: Algebra, u):
    one = A.one_vec
    L = A.left_matrix(u)
    v = linalg.solve(L, one, A.field)
    if v is None:
        raise NotInvertible("element is not a unit")
    return v


def _verify_witness(A: Algebra, sigma: AlgebraMorphism, u) -> bool:
    try:
        uinv = _left_inverse(A, u)
    except NotInvertible:
        return False
    if A.mul_vec(u, uinv) != A.one_vec or A.mul_vec(uinv, u) != A.one_vec:
        return False
    return all(
        sigma.cols[i] == A.mul_vec(A.mul_vec(u, A.basis_vec(i)), uinv) for i in range(A.dim)
    )


def inner_automorphism(A: Algebra, u) -> AlgebraMorphism:
    """a -> u a u^-1."""
    uinv = _left_inverse(A, u)
    return AlgebraMorphism(A, A, [A.mul_vec(A.mul_vec(u, A.basis_vec(i)), uinv) for i in range(A.dim)])


def intertwiners(A: Algebra, sigma: AlgebraMorphism) -> List[list]:
    """Basis of {u : sigma(a) u = u a for every a}."""
    rows = []
    for a in range(A.dim):
        L = A.left_matrix(sigma.cols[a])
        R = A.right_matrix(A.basis_vec(a))
        for lr, rr in zip(L, R):
            row = linalg.sub(lr, rr)
            if any(row):
                rows.append(row)
    return linalg.nullspace(rows, A.field, A.dim)


def is_inner(A: Algebra, sigma: AlgebraMorphism, seed: int = 0, attempts: int = 64) -> InnerResult:
    if not sigma.is_automorphism():
        raise NotAutomorphism("map is not an automorphism")
    F = A.field
    if sigma.is_identity():
        return InnerResult("witness", A.one_vec, "identity")
    U = intertwiners(A, sigma)
    if not U:
        return InnerResult("not_inner", note="no nonzero intertwiner")
    rad = _prefer_top_degree(A, A.radical)
    keep = rad.complement_indices()

    def combo(t):
        v = A.zero_vec()
        for c, u in zip(t, U):
            if c:
                v = linalg.axpy(c, u, v)
        return v

    def try_vec(v):
        return v if _verify_witness(A, sigma, v) else None

    d = len(U)
    if is_basic_split(A):
        # u is a unit iff its coefficient on every vertex idempotent is nonzero
        forms = [[rad.reduce(u)[e] for u in U] for e in A.unit_idempotents]
        if any(not any(row) for row in forms):
            return InnerResult("not_inner", note="every intertwiner lies in a proper ideal")
        tries = 0
        for c in range(len(forms) * max(d - 1, 1) + 2):
            if F.characteristic and c >= F.characteristic:
                break
            t = [F(c) ** k for k in range(d)]
            tries += 1
            w = try_vec(combo(t))
            if w is not None:
                return InnerResult("witness", w)
        grid_values = [F(v) for v in range(F.characteristic)] if F.characteristic else None
        if grid_values is not None and len(grid_values) ** d <= EXHAUSTIVE_LIMIT:
            for t in itertools.product(grid_values, repeat=d):
                if all(sum((a * b for a, b in zip(row, t)), F.zero) for row in forms):
                    w = try_vec(combo(list(t)))
                    if w is not None:
                        return InnerResult("witness", w)
            return InnerResult("not_inner", note="no unit in the intertwiner space (exhaustive)")
    # general case: det of left multiplication on A/rad is a polynomial of degree dim(A/rad)
    deg = len(keep)
    if F.characteristic and F.characteristic <= deg:
        values = [F(v) for v in range(F.characteristic)]
        proof = len(values) ** d <= EXHAUSTIVE_LIMIT
    else:
        values = [F(v) for v in range(deg + 1)]
        proof = True
    if len(values) ** d <= EXHAUSTIVE_LIMIT:
        for t in itertools.product(values, repeat=d):
            if not any(t):
                continue
            w = try_vec(combo(list(t)))
            if w is not None:
                return InnerResult("witness", w)
        if proof:
            return InnerResult("not_inner", note="unit test vanishes on an interpolation grid")
    rng = random.Random(seed)
    for _ in range(attempts):
        t = [random_scalar(F, rng, 50) for _ in range(d)]
        w = try_vec(combo(t))
        if w is not None:
            return InnerResult("witness", w)
    return InnerResult("undecided", note=f"no unit found among {attempts} random intertwiners")


# ---------------------------------------------------------------- cycle invariants

@dataclass
class CycleInvariantReport:
    vertex_permutation: Dict[str, str]
    arrow_permutation: Dict[str, str]
    weights: Dict[str, object]
    permutation_order: int
    cycles: List[List[str]]
    products: List[object]
    orders: List[Optional[int]]
    power_weights: Dict[str, object] = dc_field(default_factory=dict)

    @property
    def all_roots_of_unity(self) -> bool:
        return all(o is not None for o in self.orders)


def _perm_order(perm: Dict[str, str]) -> int:
    seen, order = set(), 1
    for start in perm:
        if start in seen:
            continue
        length, x = 0, start
        while x not in seen:
            seen.add(x)
            x = perm[x]
            length += 1
        order = order * length // math.gcd(order, length)
    return order


def cycle_invariants(A: Algebra, sigma: AlgebraMorphism) -> CycleInvariantReport:
    if not A.is_graded:
        raise NotGraded("cycle invariants need a graded algebra")
    if not is_basic_split(A):
        raise NotBasic("cycle invariants need a basic split algebra")
    F = A.field
    names = A.vertex_names()
    vidx = list(A.unit_idempotents)
    vperm = {}
    for s, e in enumerate(vidx):
        img = sigma.cols[e]
        hits = [t for t, f in enumerate(vidx) if img[f]]
        rest = [k for k, c in enumerate(img) if c and A.grading[k] == 0 and k not in vidx]
        if len(hits) != 1 or img[vidx[hits[0]]] != F.one or rest:
            raise MonomialActionRequired("automorphism does not permute the vertex idempotents")
        vperm[names[s]] = names[hits[0]]
    arrows = A.degree_indices(1)
    Q = quiver_of(A)
    arrow_names = {str(A.labels[i]): i for i in arrows}
    if set(a.name for a in Q.arrows) != set(arrow_names):
        raise MonomialActionRequired("degree-one basis is not an arrow basis")
    aperm, weights = {}, {}
    for name, i in arrow_names.items():
        img = sigma.cols[i]
        nz = [k for k, c in enumerate(img) if c]
        if len(nz) != 1 or A.grading[nz[0]] != 1:
            raise MonomialActionRequired(f"image of {name} is not a multiple of a single arrow")
        aperm[name] = str(A.labels[nz[0]])
        weights[name] = img[nz[0]]
    n0 = _perm_order({**{("v", k): ("v", v) for k, v in vperm.items()},
                      **{("a", k): ("a", v) for k, v in aperm.items()}})
    tau = sigma.power(n0)
    W = {name: tau.cols[i][i] for name, i in arrow_names.items()}

    # spanning forest and potentials: every non-tree arrow closes one basis cycle
    adj: Dict[str, list] = {v: [] for v in Q.vertices}
    for a in Q.arrows:
        adj[a.source].append(a)
        if a.target != a.source:
            adj[a.target].append(a)
    phi: Dict[str, object] = {}
    route: Dict[str, List[str]] = {}
    tree = set()
    for root in Q.vertices:
        if root in phi:
            continue
        phi[root] = F.one
        route[root] = []
        stack = [root]
        while stack:
            v = stack.pop()
            for a in adj[v]:
                if a.name in tree or a.source == a.target:
                    continue
                w = a.target if a.source == v else a.source
                if w in phi:
                    continue
                tree.add(a.name)
                if a.source == v:
                    phi[w] = phi[v] * W[a.name]
                else:
                    phi[w] = phi[v] / W[a.name]
                route[w] = route[v] + [a.name]
                stack.append(w)
    cycles, products, orders = [], [], []
    for a in Q.arrows:
        if a.name in tree:
            continue
        prod = phi[a.source] * W[a.name] / phi[a.target]
        cycles.append(sorted(set(route[a.source]) ^ set(route[a.target])) + [a.name])
        products.append(prod)
        orders.append(is_root_of_unity(prod))
    return CycleInvariantReport(vperm, aperm, weights, n0, cycles, products, orders, W)


# ---------------------------------------------------------------- outer order

@dataclass
class OuterOrder:
    status: str  # "finite", "infinite" or "exceeds_bound"
    value: Optional[int] = None
    note: str = ""
    witness: Optional[list] = None


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def outer_order(A: Algebra, sigma: AlgebraMorphism, bound: int = 64, seed: int = 0) -> OuterOrder:
    if not sigma.is_automorphism():
        raise NotAutomorphism("map is not an automorphism")
    first = is_inner(A, sigma, seed)
    if first:
        return OuterOrder("finite", 1, "inner", first.witness)
    try:
        rep = cycle_invariants(A, sigma)
    except (MonomialActionRequired, NotGraded, NotBasic, NotSplit):
        rep = None
    if rep is not None:
        for cyc, prod, order in zip(rep.cycles, rep.products, rep.orders):
            if order is None:
                return OuterOrder("infinite", None, f"cycle product {prod} not a root of unity")
        N = rep.permutation_order
        for o in rep.orders:
            N = N * o // math.gcd(N, o)
        for d in _divisors(N):
            if d % rep.permutation_order:
                continue
            res = is_inner(A, sigma.power(d), seed)
            if res:
                return OuterOrder("finite", d, f"cycle products are roots of unity; power {d} is inner", res.witness)
        # the candidate should always be inner; fall through to the direct search
    power = sigma
    for n in range(1, bound + 1):
        res = is_inner(A, power, seed)
        if res:
            return OuterOrder("finite", n, f"power {n} is inner", res.witness)
        power = sigma.compose(power)
    return OuterOrder("exceeds_bound", None, f"no inner power up to {bound}")


# ---------------------------------------------------------------- symmetry

@dataclass
class SymmetryResult:
    symmetric: bool
    form: object = None
    nakayama: Optional[AlgebraMorphism] = None
    inner: Optional[InnerResult] = None
    note: str = ""

    def __bool__(self):
        return self.symmetric


def is_symmetric(A: Algebra, attempts: int = 32, seed: int = 0) -> SymmetryResult:
    form = find_frobenius_form(A, attempts, seed)
    if not form:
        return SymmetryResult(False, form, note="not Frobenius")
    nu = nakayama_from_form(A, form)
    inner = is_inner(A, nu, seed)
    if inner.status == "undecided":
        return SymmetryResult(False, form, nu, inner, note="innerness of the Nakayama automorphism undecided")
    return SymmetryResult(bool(inner), form, nu, inner,
                          note="Nakayama automorphism inner" if inner else "Nakayama automorphism not inner")


def vertex_permutation(A: Algebra, sigma: AlgebraMorphism) -> Dict[str, str]:
    """Permutation of vertices induced modulo the radical."""
    rad = _prefer_top_degree(A, A.radical)
    names = A.vertex_names()
    out = {}
    for s, e in enumerate(A.unit_idempotents):
        img = rad.reduce(sigma.cols[e])
        hits = [t for t, f in enumerate(A.unit_idempotents) if img[f]]
        if len(hits) != 1:
            raise MonomialActionRequired("automorphism does not permute vertices modulo the radical")
        out[names[s]] = names[hits[0]]
    return out


def is_weakly_symmetric(A: Algebra, attempts: int = 32, seed: int = 0) -> bool:
    form = find_frobenius_form(A, attempts, seed)
    if not form:
        return False
    nu = nakayama_from_form(A, form)
    return all(k == v for k, v in vertex_permutation(A, nu).items())


def check_symmetric_guard(A: Algebra, order: OuterOrder, symmetric: bool):
    if symmetric and not (order.status == "finite" and order.value == 1):
        raise InternalInconsistency("symmetric algebra whose Nakayama automorphism is not inner")
