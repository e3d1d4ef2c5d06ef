"""Dynkin and extended Dynkin recognition and the (Fg) decision procedure."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (
    Algebra,
    connected_components,
    basic_version,
    is_basic_split,
    is_connected,
    loewy_length,
    quotient_by_socle,
)
from .constructions import separated_quiver
from .errors import (
    Disconnected,
    InternalInconsistency,
    LoopPresent,
    NotSelfInjective,
    OutOfScope,
    TypeInconsistent,
)
from .frobenius import (
    automorphism_order,
    cycle_invariants,
    find_frobenius_form,
    is_symmetric,
    nakayama_from_form,
    outer_order,
)
from .errors import MonomialActionRequired, NotGraded, NotBasic


# ---------------------------------------------------------------- graphs

class UndirectedGraph:
    def __init__(self, vertices: Sequence, multiplicities):
        self.vertices = list(vertices)
        self.m = [list(r) for r in multiplicities]
        n = len(self.vertices)
        if len(self.m) != n or any(len(r) != n for r in self.m):
            raise ValueError("multiplicity matrix has the wrong size")
        for i in range(n):
            for j in range(n):
                if self.m[i][j] != self.m[j][i]:
                    raise ValueError("multiplicity matrix is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges):
        m = [[0] * n for _ in range(n)]
        for i, j in edges:
            m[i][j] += 1
            if i != j:
                m[j][i] += 1
        return cls(list(range(n)), m)

    @classmethod
    def from_quiver(cls, Q):
        return cls(list(Q.vertices), Q.underlying_multiplicities())

    @property
    def n(self):
        return len(self.vertices)

    def has_loop(self):
        return any(self.m[i][i] for i in range(self.n))

    def degree(self, i):
        return sum(self.m[i][j] for j in range(self.n) if j != i) + 2 * self.m[i][i]

    def neighbours(self, i):
        return [j for j in range(self.n) if j != i and self.m[i][j]]

    def components(self) -> List[List[int]]:
        seen, comps = set(), []
        for s in range(self.n):
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.neighbours(v):
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def induced(self, idx: Sequence[int]) -> "UndirectedGraph":
        return UndirectedGraph([self.vertices[i] for i in idx], [[self.m[i][j] for j in idx] for i in idx])

    def relabel(self, perm: Sequence[int]) -> "UndirectedGraph":
        """Graph whose vertex k is vertex perm[k] of this one."""
        return self.induced(perm)


def tits_matrix(G: UndirectedGraph):
    if G.has_loop():
        raise LoopPresent("Tits form of a graph with loops")
    return [[2 if i == j else -G.m[i][j] for j in range(G.n)] for i in range(G.n)]


@dataclass
class Definiteness:
    kind: str  # "positive_definite", "semidefinite" or "indefinite"
    pivots: List[Fraction]
    corank: int
    kernel: List[List[Fraction]]


def ldlt(M) -> Definiteness:
    """Symmetric Gaussian elimination with diagonal pivoting."""
    n = len(M)
    a = [[Fraction(x) for x in row] for row in M]
    active = list(range(n))
    pivots = []
    while active:
        p = max(active, key=lambda i: a[i][i])
        d = a[p][p]
        if d < 0:
            return Definiteness("indefinite", pivots, 0, [])
        if d == 0:
            if any(a[i][j] for i in active for j in active):
                return Definiteness("indefinite", pivots, 0, [])
            break
        pivots.append(d)
        active.remove(p)
        for i in active:
            if a[i][p]:
                f = a[i][p] / d
                for j in active:
                    if a[p][j]:
                        a[i][j] -= f * a[p][j]
    corank = len(active)
    if corank == 0:
        return Definiteness("positive_definite", pivots, 0, [])
    return Definiteness("semidefinite", pivots, corank, _kernel(M))


def _kernel(M):
    n = len(M)
    a = [[Fraction(x) for x in row] for row in M]
    pivcols, r = [], 0
    for c in range(n):
        p = next((i for i in range(r, n) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(n):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivcols.append(c)
        r += 1
    out = []
    for free in (c for c in range(n) if c not in pivcols):
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for row, pc in zip(a, pivcols):
            v[pc] = -row[free]
        out.append(v)
    return out


@dataclass(frozen=True)
class GraphType:
    kind: str  # "Dynkin", "ExtendedDynkin" or "Other"
    family: str = ""
    rank: int = 0

    @property
    def name(self):
        if self.kind == "Other":
            return "Other"
        return ("~" if self.kind == "ExtendedDynkin" else "") + f"{self.family}{self.rank}"

    def __str__(self):
        return "Other" if self.kind == "Other" else f"{self.kind}({self.name})"

    @property
    def is_tilde_a(self):
        return self.kind == "ExtendedDynkin" and self.family == "A"


@dataclass
class Recognition:
    label: GraphType
    certificate: Definiteness


def _arms(G: UndirectedGraph, centre: int) -> List[int]:
    arms = []
    for start in G.neighbours(centre):
        length, prev, v = 1, centre, start
        while True:
            nxt = [w for w in G.neighbours(v) if w != prev]
            if len(nxt) != 1:
                break
            prev, v = v, nxt[0]
            length += 1
        arms.append(length)
    return sorted(arms)


def _name_dynkin(G: UndirectedGraph) -> GraphType:
    n = G.n
    degs = [G.degree(i) for i in range(n)]
    branch = [i for i in range(n) if degs[i] >= 3]
    if not branch:
        return GraphType("Dynkin", "A", n)
    if len(branch) == 1 and degs[branch[0]] == 3:
        arms = _arms(G, branch[0])
        if arms[:2] == [1, 1]:
            return GraphType("Dynkin", "D", n)
        if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
            return GraphType("Dynkin", "E", n)
    raise InternalInconsistency("positive definite graph of unknown shape")


def _name_extended(G: UndirectedGraph) -> GraphType:
    n = G.n
    degs = [G.degree(i) for i in range(n)]
    if n == 2 and G.m[0][1] == 2:
        return GraphType("ExtendedDynkin", "A", 1)
    if all(d == 2 for d in degs):
        return GraphType("ExtendedDynkin", "A", n - 1)
    branch = [i for i in range(n) if degs[i] >= 3]
    if len(branch) == 1 and degs[branch[0]] == 4 and n == 5:
        return GraphType("ExtendedDynkin", "D", 4)
    if len(branch) == 2 and all(degs[i] == 3 for i in branch):
        return GraphType("ExtendedDynkin", "D", n - 1)
    if len(branch) == 1 and degs[branch[0]] == 3:
        arms = _arms(G, branch[0])
        shapes = {(2, 2, 2): 6, (1, 3, 3): 7, (1, 2, 5): 8}
        if tuple(arms) in shapes:
            return GraphType("ExtendedDynkin", "E", shapes[tuple(arms)])
    raise InternalInconsistency("corank-one semidefinite graph of unknown shape")


def recognize_graph(G: UndirectedGraph) -> Recognition:
    if len(G.components()) > 1:
        raise Disconnected("graph is not connected; recognise each component")
    cert = ldlt(tits_matrix(G))
    if cert.kind == "positive_definite":
        return Recognition(_name_dynkin(G), cert)
    if cert.kind == "semidefinite" and cert.corank == 1:
        return Recognition(_name_extended(G), cert)
    return Recognition(GraphType("Other"), cert)


def recognize_components(G: UndirectedGraph) -> List[Recognition]:
    return [recognize_graph(G.induced(c)) for c in G.components()]


# ---------------------------------------------------------------- standard graphs

def dynkin_graph(family: str, n: int) -> UndirectedGraph:
    if family == "A":
        return UndirectedGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if family == "D":
        return UndirectedGraph.from_edges(n, [(0, 2), (1, 2)] + [(i, i + 1) for i in range(2, n - 1)])
    if family == "E":
        # chain 0 - 1 - ... - (n-2) with vertex n-1 attached to vertex 2
        return UndirectedGraph.from_edges(n, [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)])
    raise ValueError(family)


def extended_dynkin_graph(family: str, n: int) -> UndirectedGraph:
    """The extended diagram with n + 1 vertices."""
    if family == "A":
        if n == 1:
            return UndirectedGraph.from_edges(2, [(0, 1), (0, 1)])
        return UndirectedGraph.from_edges(n + 1, [(i, (i + 1) % (n + 1)) for i in range(n + 1)])
    if family == "D":
        if n == 4:
            return UndirectedGraph.from_edges(5, [(0, k) for k in range(1, 5)])
        edges = [(0, 2), (1, 2)] + [(i, i + 1) for i in range(2, n - 2)] + [(n - 2, n - 1), (n - 2, n)]
        return UndirectedGraph.from_edges(n + 1, edges)
    if family == "E":
        arms = {6: (2, 2, 2), 7: (1, 3, 3), 8: (1, 2, 5)}[n]
        edges, nxt = [], 1
        for length in arms:
            prev = 0
            for _ in range(length):
                edges.append((prev, nxt))
                prev = nxt
                nxt += 1
        return UndirectedGraph.from_edges(n + 1, edges)
    raise ValueError(family)


def standard_graphs(max_vertices: int = 9):
    """(expected type, graph) for every Dynkin and extended Dynkin diagram
    with at most ``max_vertices`` vertices."""
    out = []
    for n in range(1, max_vertices + 1):
        out.append((GraphType("Dynkin", "A", n), dynkin_graph("A", n)))
        if n >= 4:
            out.append((GraphType("Dynkin", "D", n), dynkin_graph("D", n)))
        if n in (6, 7, 8):
            out.append((GraphType("Dynkin", "E", n), dynkin_graph("E", n)))
    for n in range(1, max_vertices):
        out.append((GraphType("ExtendedDynkin", "A", n), extended_dynkin_graph("A", n)))
        if n >= 4:
            out.append((GraphType("ExtendedDynkin", "D", n), extended_dynkin_graph("D", n)))
        if n in (6, 7, 8):
            out.append((GraphType("ExtendedDynkin", "E", n), extended_dynkin_graph("E", n)))
    return out


def edge_augmentations(G: UndirectedGraph):
    """Every graph obtained by adding one edge between existing vertices or
    one pendant edge to a new vertex (loops excluded)."""
    n = G.n
    for i in range(n):
        for j in range(i + 1, n):
            m = [list(r) for r in G.m]
            m[i][j] += 1
            m[j][i] += 1
            yield UndirectedGraph(list(range(n)), m)
    for i in range(n):
        m = [list(r) + [0] for r in G.m] + [[0] * (n + 1)]
        m[i][n] = m[n][i] = 1
        yield UndirectedGraph(list(range(n + 1)), m)


# ---------------------------------------------------------------- algebra type

@dataclass
class AlgebraType:
    label: GraphType
    components: List[Recognition]
    graph: UndirectedGraph


def algebra_type(L: Algebra) -> AlgebraType:
    """Type of the underlying graph of the separated quiver of L / soc L."""
    A = quotient_by_socle(L)
    if A.dim == 0:
        raise OutOfScope("quotient by the socle is zero")
    G = UndirectedGraph.from_quiver(separated_quiver(A))
    comps = recognize_components(G)
    labels = {c.label for c in comps}
    if len(labels) != 1:
        raise TypeInconsistent("components of the separated quiver have different types: "
                               + ", ".join(sorted(str(x) for x in labels)))
    return AlgebraType(comps[0].label, comps, G)


# ---------------------------------------------------------------- (Fg)

@dataclass
class FgVerdict:
    answer: str  # "Yes", "No" or "Unknown"
    reasons: List[Tuple[str, str, str]] = dc_field(default_factory=list)
    hypothesis_failures: List[str] = dc_field(default_factory=list)
    notices: List[str] = dc_field(default_factory=list)
    details: Dict[str, object] = dc_field(default_factory=dict)
    blocks: List["FgVerdict"] = dc_field(default_factory=list)

    def add(self, check, clause, outcome):
        self.reasons.append((check, clause, str(outcome)))


def _combine(verdicts: List[FgVerdict]) -> str:
    answers = [v.answer for v in verdicts]
    if "No" in answers:
        return "No"
    if "Unknown" in answers:
        return "Unknown"
    return "Yes"


def decide_fg(L: Algebra, bound: int = 64, seed: int = 0, attempts: int = 32) -> FgVerdict:
    notices = []
    if not is_basic_split(L):
        L = basic_version(L)
        notices.append(f"input is not basic; replaced by its basic version of dimension {L.dim}")
    if not is_connected(L):
        blocks = [_decide_connected(B, bound, seed, attempts) for B in connected_components(L)]
        v = FgVerdict(_combine(blocks), notices=notices + ["input is disconnected; verdict is the conjunction over blocks"],
                      blocks=blocks)
        for k, b in enumerate(blocks):
            v.add(f"block {k}", "each block decided separately", b.answer)
            v.hypothesis_failures.extend(f"block {k}: {h}" for h in b.hypothesis_failures)
        return v
    v = _decide_connected(L, bound, seed, attempts)
    v.notices = notices + v.notices
    return v


def _decide_connected(L: Algebra, bound, seed, attempts) -> FgVerdict:
    v = FgVerdict("Unknown")
    v.add("connected", "the classification assumes a connected algebra", "yes")
    form = find_frobenius_form(L, attempts, seed)
    if not form:
        raise NotSelfInjective("algebra is not Frobenius" + (" (proven)" if form.proven else " (search exhausted)"))
    v.add("frobenius", "a nondegenerate associative form exists", f"yes ({form.origin} form)")
    ll = loewy_length(L)
    v.details["loewy_length"] = ll
    if ll <= 2:
        v.add("radical square zero", "self-injective with rad^2 = 0 is a Nakayama algebra of finite representation type", "Yes")
        v.answer = "Yes"
        return v
    if ll > 3:
        raise OutOfScope(f"rad^3 != 0 (Loewy length {ll})")
    v.add("radical cube zero", "classification covers rad^3 = 0 != rad^2", "yes")
    nu = nakayama_from_form(L, form)
    p = L.field.characteristic
    if p == 2:
        v.hypothesis_failures.append("characteristic 2: 2 must be invertible in the field")
        v.add("characteristic", "2 must be invertible", "fails")
        return v
    if p:
        n = automorphism_order(nu, bound)
        v.details["nakayama_order"] = n
        if n is None:
            v.hypothesis_failures.append(f"order of the Nakayama automorphism exceeds {bound} in characteristic {p}")
            v.add("nakayama order", "the order of nu must be invertible in the field", f"exceeds {bound}")
            return v
        if n % p == 0:
            v.hypothesis_failures.append(f"characteristic {p} divides the Nakayama order {n}")
            v.add("nakayama order", "the order of nu must be invertible in the field", f"{n}, divisible by {p}")
            return v
        v.add("nakayama order", "the order of nu must be invertible in the field", f"{n}, invertible")
    else:
        v.add("characteristic", "2 and the order of nu are invertible in characteristic 0", "passes")
    T = algebra_type(L)
    v.details["type"] = str(T.label)
    v.add("type", "type is the graph of the separated quiver of L/soc L", str(T.label))
    if T.label.kind == "Dynkin":
        v.add("dynkin", "Dynkin type gives (Fg)", "Yes")
        v.answer = "Yes"
        return v
    if T.label.kind == "Other":
        v.add("other type", "neither Dynkin nor extended Dynkin: infinite complexity, not (Fg)", "No")
        v.answer = "No"
        return v
    if not T.label.is_tilde_a:
        v.add("extended dynkin", "extended Dynkin type other than ~A gives (Fg)", "Yes")
        v.answer = "Yes"
        return v
    oo = outer_order(L, nu, bound, seed)
    v.details["outer_order"] = oo.value if oo.status == "finite" else oo.status
    sym = is_symmetric(L, attempts, seed)
    if sym.symmetric and not (oo.status == "finite" and oo.value == 1):
        raise InternalInconsistency("symmetric algebra whose Nakayama automorphism has outer order other than 1")
    if oo.status == "finite":
        v.add("outer order", "~A type: (Fg) iff nu has finite order as an outer automorphism",
              f"finite, order {oo.value}")
        v.answer = "Yes"
    elif oo.status == "infinite":
        v.add("outer order", "~A type: (Fg) iff nu has finite order as an outer automorphism",
              f"infinite: {oo.note}")
        v.answer = "No"
    else:
        v.hypothesis_failures.append(f"outer order search exceeded bound {bound}")
        v.add("outer order", "~A type: (Fg) iff nu has finite order as an outer automorphism",
              f"not found up to {bound}")
    return v
