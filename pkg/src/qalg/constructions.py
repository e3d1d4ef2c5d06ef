"""Skew group algebras, the Z2 smash product and 2-quasi-Veronese,
trivial and twisted trivial extensions, Beilinson algebras, separated quivers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from . import linalg
from .algebra import (
    Algebra,
    AlgebraMorphism,
    Arrow,
    Quiver,
    basic_version,
    quiver_of,
    quivers_isomorphic,
)
from .errors import (
    ActionMismatch,
    CharDividesOrder,
    CharTwo,
    DegenerateInput,
    InfiniteOrder,
    NotAutomorphism,
    NotGraded,
    RadicalSquareNotZero,
    TopDegreeTooHigh,
    VerificationFailed,
)
from .frobenius import (
    BilinearForm,
    InnerResult,
    _verify_witness,
    automorphism_order,
    find_frobenius_form,
    is_inner,
    nakayama_from_form,
    trace_form,
    trace_functional,
)
from .labels import DualFunctional, GroupTensor, MatrixEntry, SmashTensor


# ---------------------------------------------------------------- group actions

class GroupAction:
    """A finite group acting on an algebra by automorphisms. Element 0 is the
    identity and ``table[g][h]`` is the index of gh."""

    def __init__(self, algebra: Algebra, elements, table, automorphisms):
        self.algebra = algebra
        self.elements = list(elements)
        self.table = [list(r) for r in table]
        self.automorphisms = list(automorphisms)
        self._verify()

    @property
    def order(self) -> int:
        return len(self.elements)

    def inverse(self, g: int) -> int:
        return next(h for h in range(self.order) if self.table[g][h] == 0)

    def _verify(self):
        n = self.order
        if len(self.table) != n or any(len(r) != n for r in self.table) or len(self.automorphisms) != n:
            raise ActionMismatch("group table or automorphism list has the wrong size")
        for g in range(n):
            if self.table[0][g] != g or self.table[g][0] != g:
                raise ActionMismatch("element 0 is not the identity")
            if not any(self.table[g][h] == 0 for h in range(n)):
                raise ActionMismatch(f"{self.elements[g]} has no inverse")
            for h in range(n):
                for k in range(n):
                    if self.table[self.table[g][h]][k] != self.table[g][self.table[h][k]]:
                        raise ActionMismatch("group table is not associative")
        for f in self.automorphisms:
            if f.source is not self.algebra or not f.is_automorphism():
                raise ActionMismatch("group element does not act by an automorphism")
        if not self.automorphisms[0].is_identity():
            raise ActionMismatch("identity element acts nontrivially")
        for g in range(n):
            for h in range(n):
                if self.automorphisms[g].compose(self.automorphisms[h]) != self.automorphisms[self.table[g][h]]:
                    raise ActionMismatch("action is not a group homomorphism")


def cyclic_action(A: Algebra, sigma: AlgebraMorphism, n: int) -> GroupAction:
    """Z/n acting through powers of sigma."""
    if not sigma.power(n).is_identity():
        raise ActionMismatch(f"automorphism does not have order dividing {n}")
    auts = [AlgebraMorphism.identity(A)]
    for _ in range(n - 1):
        auts.append(sigma.compose(auts[-1]))
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return GroupAction(A, [f"g{i}" for i in range(n)], table, auts)


# ---------------------------------------------------------------- skew group algebra

def skew_group_algebra(L: Algebra, G: GroupAction, name: str = "") -> Algebra:
    """Basis b (x) g at index g*dim + i; (a (x) g)(b (x) h) = a g(b) (x) gh."""
    if G.algebra is not L:
        raise ActionMismatch("group acts on a different algebra")
    n, m = L.dim, G.order
    table = [[{} for _ in range(n * m)] for _ in range(n * m)]
    for g in range(m):
        act = G.automorphisms[g]
        for h in range(m):
            gh = G.table[g][h]
            for i in range(n):
                for j in range(n):
                    prod = L.mul_vec(L.basis_vec(i), act.cols[j])
                    table[g * n + i][h * n + j] = {gh * n + k: c for k, c in enumerate(prod) if c}
    labels = [GroupTensor(L.labels[i], g) for g in range(m) for i in range(n)]
    grading = None
    if L.is_graded and all(f.is_graded() for f in G.automorphisms):
        grading = [L.grading[i] for _ in range(m) for i in range(n)]
    out = Algebra(L.field, labels, table, list(L.unit_idempotents), grading, name=name)
    out.base, out.group = L, G
    return out


def skew_group_form(B: BilinearForm, G: GroupAction, skew: Optional[Algebra] = None) -> BilinearForm:
    """<a (x) g, b (x) h> = <a, g(b)> when gh = 1, else 0."""
    L = B.algebra
    F = L.field
    if not B.nondegenerate:
        raise DegenerateInput("input form is degenerate")
    if F.characteristic and G.order % F.characteristic == 0:
        raise CharDividesOrder("group order is not invertible in the field")
    skew = skew or skew_group_algebra(L, G)
    n, m = L.dim, G.order
    gram = [[F.zero] * (n * m) for _ in range(n * m)]
    for g in range(m):
        h = G.inverse(g)
        act = G.automorphisms[g]
        for i in range(n):
            for j in range(n):
                gram[g * n + i][h * n + j] = B.pair(L.basis_vec(i), act.cols[j])
    form = BilinearForm(skew, gram, origin="skew group")
    if not form.nondegenerate or not form.is_associative():
        raise VerificationFailed("skew group form is degenerate or not associative")
    return form


@dataclass
class SkewSymmetryReport:
    algebra: Algebra
    order: int
    form: BilinearForm
    nakayama: AlgebraMorphism
    witness: list
    group_element_witness: bool
    inner: InnerResult


def skew_group_symmetric_check(L: Algebra, bound: int = 64, seed: int = 0) -> SkewSymmetryReport:
    """Build LG for G generated by the Nakayama automorphism and check that its
    Nakayama automorphism is conjugation by 1 (x) nu."""
    form = find_frobenius_form(L, seed=seed)
    if not form:
        raise DegenerateInput("algebra is not Frobenius")
    nu = nakayama_from_form(L, form)
    n = automorphism_order(nu, bound)
    if n is None:
        raise InfiniteOrder(f"Nakayama automorphism has no finite order up to {bound}")
    p = L.field.characteristic
    if p and n % p == 0:
        raise CharDividesOrder(f"characteristic {p} divides the order {n}")
    G = cyclic_action(L, nu, n)
    S = skew_group_algebra(L, G)
    sform = skew_group_form(form, G, S)
    snu = nakayama_from_form(S, sform)
    d = L.dim
    u = S.zero_vec()
    for t in L.unit_idempotents:
        u[(1 % n) * d + t] = L.field.one
    if _verify_witness(S, snu, u):
        return SkewSymmetryReport(S, n, sform, snu, u, True, InnerResult("witness", u, "1 (x) nu"))
    res = is_inner(S, snu, seed)
    if not res:
        raise VerificationFailed("Nakayama automorphism of the skew group algebra is not inner")
    return SkewSymmetryReport(S, n, sform, snu, res.witness, False, res)


# ---------------------------------------------------------------- Z2 constructions

def _require_graded_le2(L: Algebra):
    if not L.is_graded:
        raise NotGraded("construction needs a graded algebra")
    if L.top_degree > 2:
        raise TopDegreeTooHigh("construction needs degrees at most 2")


def smash_z2(L: Algebra, name: str = "") -> Algebra:
    """Basis b p_g at index g*dim + i; b p_g * b' p_h = [deg b' = g - h mod 2] bb' p_h.
    The Z2 action b p_h -> b p_{h+1} is attached as ``.action``."""
    _require_graded_le2(L)
    n = L.dim
    table = [[{} for _ in range(2 * n)] for _ in range(2 * n)]
    for g in range(2):
        for h in range(2):
            for i in range(n):
                for j in range(n):
                    if (L.grading[j] - (g - h)) % 2:
                        continue
                    entry = L.table[i][j]
                    if entry:
                        table[g * n + i][h * n + j] = {h * n + k: c for k, c in entry.items()}
    labels = [SmashTensor(L.labels[i], g) for g in range(2) for i in range(n)]
    idems = [g * n + t for g in range(2) for t in L.unit_idempotents]
    out = Algebra(L.field, labels, table, idems, [L.grading[i] for _ in range(2) for i in range(n)], name=name)
    shift = AlgebraMorphism(out, out, [out.basis_vec(((g + 1) % 2) * n + i) for g in range(2) for i in range(n)])
    out.action = GroupAction(out, ["e", "g"], [[0, 1], [1, 0]], [AlgebraMorphism.identity(out), shift])
    out.base = L
    return out


def quasi_veronese2(L: Algebra, name: str = "") -> Algebra:
    """Entries (r, c, b) with deg b = c - r mod 2 and matrix multiplication."""
    _require_graded_le2(L)
    entries = [(r, c, i) for r in range(2) for c in range(2) for i in range(L.dim)
               if (L.grading[i] - (c - r)) % 2 == 0]
    pos = {e: k for k, e in enumerate(entries)}
    m = len(entries)
    table = [[{} for _ in range(m)] for _ in range(m)]
    for a, (r, c, i) in enumerate(entries):
        for b, (r2, c2, j) in enumerate(entries):
            if c != r2:
                continue
            table[a][b] = {pos[(r, c2, k)]: x for k, x in L.table[i][j].items()}
    labels = [MatrixEntry(r, c, L.labels[i]) for r, c, i in entries]
    idems = [pos[(r, r, t)] for r in range(2) for t in L.unit_idempotents]
    out = Algebra(L.field, labels, table, idems, [L.grading[i] for _, _, i in entries], name=name)
    out.base = L
    return out


def veronese_smash_iso(L: Algebra, veronese: Optional[Algebra] = None, smash: Optional[Algebra] = None) -> AlgebraMorphism:
    """(r, c, b) -> b p_c, checked to be an algebra isomorphism."""
    V = veronese or quasi_veronese2(L)
    S = smash or smash_z2(L)
    cols = []
    for lab in V.labels:
        cols.append(S.basis_vec(S.index(SmashTensor(lab.inner, lab.col))))
    phi = AlgebraMorphism(V, S, cols)
    bad = phi.violations()
    if bad or not linalg.det(phi.matrix, L.field):
        raise VerificationFailed("veronese/smash map is not an isomorphism: " + "; ".join(bad[:3]))
    return phi


# ---------------------------------------------------------------- trivial extensions

def _dual_grading(A: Algebra, sigma: Optional[AlgebraMorphism]):
    if not A.is_graded or (sigma is not None and not sigma.is_graded()):
        return None
    top = A.top_degree
    return list(A.grading) + [top + 1 - g for g in A.grading]


def twisted_trivial_extension(A: Algebra, sigma: Optional[AlgebraMorphism] = None, name: str = "") -> Algebra:
    """A + DA with (a.f)(x) = f(xa) and (f.a)(x) = f(sigma(a) x).

    Attached: ``.form`` (the form (a, f) -> f(1)), ``.twist`` and
    ``.nakayama_hat_inv`` (sigma^-1 on A, f -> f.sigma on DA)."""
    if sigma is None:
        sigma = AlgebraMorphism.identity(A)
    elif sigma.source is not A or not sigma.is_automorphism():
        raise NotAutomorphism("twist is not an automorphism of the algebra")
    n = A.dim
    F = A.field
    T = A.table
    table = [[{} for _ in range(2 * n)] for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            table[i][j] = dict(T[i][j])
    # b_i . b_j* = sum_l c_{l i}^j b_l*
    for i in range(n):
        for l in range(n):
            for j, c in T[l][i].items():
                if c:
                    entry = table[i][n + j]
                    entry[n + l] = entry.get(n + l, F.zero) + c
    # b_j* . b_i = sum_l (sum_m sigma_{m i} c_{m l}^j) b_l*
    for i in range(n):
        img = sigma.cols[i]
        for m, s in enumerate(img):
            if not s:
                continue
            for l in range(n):
                for j, c in T[m][l].items():
                    if c:
                        entry = table[n + j][i]
                        entry[n + l] = entry.get(n + l, F.zero) + s * c
    for row in table:
        for k, entry in enumerate(row):
            row[k] = {key: v for key, v in entry.items() if v}
    labels = list(A.labels) + [DualFunctional(lab) for lab in A.labels]
    out = Algebra(F, labels, table, list(A.unit_idempotents), _dual_grading(A, sigma), name=name)
    f1 = out.zero_vec()
    for t in A.unit_idempotents:
        f1[n + t] = F.one
    out.form = BilinearForm.from_functional(out, f1, origin="evaluation at 1")
    out.base, out.twist = A, sigma
    inv = sigma.inverse()
    cols = []
    for i in range(n):
        cols.append(list(inv.cols[i]) + linalg.zeros(F, n))
    for j in range(n):
        # f -> f . sigma sends b_j* to sum_k sigma_{j k} b_k*
        cols.append(linalg.zeros(F, n) + [sigma.cols[k][j] for k in range(n)])
    hat = AlgebraMorphism(out, out, cols)
    for a in range(2 * n):
        for b in range(2 * n):
            if out.form.gram[a][b] != out.form.pair(out.basis_vec(b), hat.cols[a]):
                raise VerificationFailed("attached Nakayama map fails the gram relation")
    out.nakayama_hat_inv = hat
    return out


def trivial_extension(A: Algebra, name: str = "") -> Algebra:
    return twisted_trivial_extension(A, None, name=name)


def twist_isomorphism(A: Algebra, u, pi: AlgebraMorphism, composed: Algebra, plain: Algebra) -> AlgebraMorphism:
    """For sigma = conjugation by u, the map (a, f) -> (a, x -> f(ux)) from the
    extension twisted by sigma.pi to the one twisted by pi; verified."""
    n = A.dim
    F = A.field
    cols = []
    for i in range(n):
        cols.append(list(A.basis_vec(i)) + linalg.zeros(F, n))
    ub = [A.mul_vec(u, A.basis_vec(k)) for k in range(n)]
    for j in range(n):
        cols.append(linalg.zeros(F, n) + [ub[k][j] for k in range(n)])
    phi = AlgebraMorphism(composed, plain, cols)
    bad = phi.violations()
    if bad or not linalg.det(phi.matrix, F):
        raise VerificationFailed("twist comparison map is not an isomorphism")
    return phi


# ---------------------------------------------------------------- Beilinson and separated quivers

def beilinson(L: Algebra, name: str = "") -> Algebra:
    """Upper triangular [[L0, L1], [0, L0]]."""
    if not L.is_graded:
        raise NotGraded("Beilinson algebra needs a graded algebra")
    d0, d1 = L.degree_indices(0), L.degree_indices(1)
    entries = [(0, 0, i) for i in d0] + [(0, 1, i) for i in d1] + [(1, 1, i) for i in d0]
    pos = {e: k for k, e in enumerate(entries)}
    m = len(entries)
    table = [[{} for _ in range(m)] for _ in range(m)]
    for a, (r, c, i) in enumerate(entries):
        for b, (r2, c2, j) in enumerate(entries):
            if c != r2:
                continue
            table[a][b] = {pos[(r, c2, k)]: x for k, x in L.table[i][j].items() if x}
    labels = [MatrixEntry(r, c, L.labels[i]) for r, c, i in entries]
    idems = [pos[(r, r, t)] for r in range(2) for t in L.unit_idempotents]
    out = Algebra(L.field, labels, table, idems, [L.grading[i] for _, _, i in entries], name=name)
    out.base = L
    return out


def entrywise_morphism(L: Algebra, B: Algebra, f: AlgebraMorphism) -> AlgebraMorphism:
    """Apply a graded automorphism of L to every matrix entry of B."""
    cols = []
    for lab in B.labels:
        img = f.cols[L.index(lab.inner)]
        v = B.zero_vec()
        for k, c in enumerate(img):
            if c:
                v[B.index(MatrixEntry(lab.row, lab.col, L.labels[k]))] = c
        cols.append(v)
    return AlgebraMorphism(B, B, cols)


@dataclass
class VeroneseTrivextComparison:
    veronese: Algebra
    twisted: Algebra
    twist: AlgebraMorphism
    iso: AlgebraMorphism


def veronese_as_twisted_trivext(L: Algebra) -> VeroneseTrivextComparison:
    """Identify the 2-quasi-Veronese of L with the trivial extension of the
    Beilinson algebra twisted by nu^-1, via m -> (x -> T(x m)), where T sums
    the trace functional over the diagonal entries."""
    _require_graded_le2(L)
    form = trace_form(L)
    if not form.nondegenerate:
        raise DegenerateInput("trace form of the input is degenerate")
    nu = nakayama_from_form(L, form)
    t = trace_functional(L)
    V = quasi_veronese2(L)
    B = beilinson(L)
    sigma = entrywise_morphism(L, B, nu.inverse())
    D = twisted_trivial_extension(B, sigma)
    n = B.dim
    F = L.field
    in_b = {lab: k for k, lab in enumerate(B.labels)}
    cols = []
    for lab in V.labels:
        if lab in in_b:
            cols.append(D.basis_vec(in_b[lab]))
            continue
        m = V.basis_vec(V.index(lab))
        col = D.zero_vec()
        for k, blab in enumerate(B.labels):
            x = V.basis_vec(V.index(blab))
            prod = V.mul_vec(x, m)
            val = F.zero
            for idx, c in enumerate(prod):
                e = V.labels[idx]
                if c and e.row == e.col:
                    val = val + c * t[L.index(e.inner)]
            col[n + k] = val
        cols.append(col)
    iso = AlgebraMorphism(V, D, cols)
    bad = iso.violations()
    if bad or not linalg.det(iso.matrix, F):
        raise VerificationFailed("veronese is not identified with the twisted trivial extension: " + "; ".join(bad[:3]))
    return VeroneseTrivextComparison(V, D, sigma, iso)


def separated_quiver(A: Algebra) -> Quiver:
    """Vertices v and v'; one arrow v -> w' per arrow v -> w of the quiver of A."""
    powers = A.radical_powers
    if len(powers) > 2:
        raise RadicalSquareNotZero("separated quiver needs rad^2 = 0")
    Q = quiver_of(A)
    vertices = list(Q.vertices) + [v + "'" for v in Q.vertices]
    arrows = [Arrow(a.name, a.source, a.target + "'") for a in Q.arrows]
    return Quiver(tuple(vertices), tuple(arrows))


# ---------------------------------------------------------------- the double

def double_construction(L: Algebra, name: str = "") -> Algebra:
    """Skew group algebra of the Z2 smash product by its induced Z2 action."""
    if L.field.characteristic == 2:
        raise CharTwo("double construction needs characteristic different from 2")
    S = smash_z2(L)
    out = skew_group_algebra(S, S.action, name=name)
    out.base = L
    return out


@dataclass
class MoritaCheck:
    double: Algebra
    basic: Algebra
    quiver_matches: bool
    dim_matches: bool

    def __bool__(self):
        return self.quiver_matches and self.dim_matches


def double_morita_check(L: Algebra) -> MoritaCheck:
    D = double_construction(L)
    B = basic_version(D)
    return MoritaCheck(D, B, quivers_isomorphic(quiver_of(B), quiver_of(L)), B.dim == L.dim)
