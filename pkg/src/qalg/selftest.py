"""Invariant checks over the built-in corpus, run by ``qalg selftest``."""

from __future__ import annotations

import random
import traceback
from typing import Callable, List, Tuple

from . import corpus
from .algebra import (
    AlgebraMorphism,
    basic_idempotents,
    check_algebra,
    idempotent_truncation,
    is_connected,
    quiver_of,
    quivers_isomorphic,
    quotient_by_socle,
    radical_layer_dims,
)
from .classify import (
    decide_fg,
    edge_augmentations,
    recognize_graph,
    standard_graphs,
)
from .constructions import (
    cyclic_action,
    double_morita_check,
    quasi_veronese2,
    skew_group_algebra,
    skew_group_form,
    smash_z2,
    trivial_extension,
    twist_isomorphism,
    twisted_trivial_extension,
    veronese_as_twisted_trivext,
    veronese_smash_iso,
)
from .fields import CyclotomicField, PrimeField, Rationals, field_invert, parse_scalar, random_scalar
from .frobenius import (
    automorphism_order,
    find_frobenius_form,
    inner_automorphism,
    is_inner,
    is_symmetric,
    nakayama_from_form,
    outer_order,
    trace_form,
)

Check = Tuple[str, Callable[[], str]]


def _graded_corpus():
    return [
        corpus.ground_field(),
        corpus.truncated_polynomial(),
        corpus.quantum_exterior(1),
        corpus.quantum_exterior(2),
        corpus.delta_kronecker(),
        corpus.delta_a2(),
    ]


def _frobenius_corpus():
    return _graded_corpus() + [
        corpus.quantum_exterior(-1),
        corpus.quantum_exterior(2, PrimeField(5)),
        corpus.quantum_exterior(3, CyclotomicField(3)),
    ]


def _scalars() -> str:
    rng = random.Random(7)
    for F in (Rationals(), PrimeField(7), CyclotomicField(5)):
        for _ in range(200):
            s = random_scalar(F, rng, 9)
            if parse_scalar(str(s), F) != s:
                return f"round trip fails for {s} in {F}"
            if s and s * field_invert(s) != F.one:
                return f"inverse fails for {s} in {F}"
    return ""


def _tables() -> str:
    algebras = _graded_corpus() + [corpus.kronecker(), corpus.path_a2(), corpus.two_points(), corpus.matrix_algebra()]
    for L in _graded_corpus():
        algebras += [smash_z2(L), quasi_veronese2(L), trivial_extension(L)]
    for A in algebras:
        bad = check_algebra(A)
        if bad:
            return f"{A.name}: {bad[0]}"
    return ""


def _telescoping() -> str:
    for A in _graded_corpus():
        dims = radical_layer_dims(A)
        if sum(a - b for a, b in zip(dims, dims[1:] + [0])) != A.dim:
            return f"{A.name}: layers {dims}"
    return ""


def _quiver_round_trip() -> str:
    for A, arrows in ((corpus.truncated_polynomial(), 1), (corpus.quantum_exterior(2), 2), (corpus.kronecker(), 2)):
        if len(quiver_of(A).arrows) != arrows:
            return f"{A.name}: wrong arrow count"
    return ""


def _socle_quotient() -> str:
    for A in _frobenius_corpus():
        if A.dim > 1 and len(radical_layer_dims(quotient_by_socle(A))) > 2:
            return f"{A.name}: quotient by socle has rad^2 != 0"
    return ""


def _basic_idempotents() -> str:
    for A in (corpus.matrix_algebra(), smash_z2(corpus.truncated_polynomial())):
        parts = basic_idempotents(A)
        eta = A.zero_vec()
        for p in parts:
            eta = [a + b for a, b in zip(eta, p)]
        B = idempotent_truncation(A, eta, parts)
        for e in B.unit_idempotents:
            corner = B.corner(B.basis_vec(e), B.basis_vec(e))
            rad = B.radical
            if corner.dim - sum(1 for r in corner.rows if r in rad) != 1:
                return f"{A.name}: corner not local"
    return ""


def _gram_relation() -> str:
    for A in _frobenius_corpus():
        form = find_frobenius_form(A)
        nu = nakayama_from_form(A, form)
        for i in range(A.dim):
            for j in range(A.dim):
                if form.gram[i][j] != form.pair(A.basis_vec(j), nu.cols[i]):
                    return f"{A.name}: gram relation fails"
        if not nu.is_automorphism():
            return f"{A.name}: nu not an automorphism"
    return ""


def _inner_witnesses() -> str:
    A = corpus.quantum_exterior(1)
    for coeffs in ((1, 1, 0, 0), (2, 0, 1, 3), (1, 1, 1, 1)):
        u = [A.field(c) for c in coeffs]
        s = inner_automorphism(A, u)
        res = is_inner(A, s)
        if not res:
            return f"conjugation by {coeffs} not recognised"
        w = res.witness
        if any(s.cols[i] != inner_automorphism(A, w).cols[i] for i in range(A.dim)):
            return "witness does not reproduce the automorphism"
    return ""


def _outer_minimal() -> str:
    for A in _frobenius_corpus():
        nu = nakayama_from_form(A, find_frobenius_form(A))
        oo = outer_order(A, nu)
        if oo.status != "finite":
            continue
        if not is_inner(A, nu.power(oo.value)):
            return f"{A.name}: returned power not inner"
        for d in range(1, oo.value):
            if oo.value % d == 0 and is_inner(A, nu.power(d)):
                return f"{A.name}: proper divisor {d} already inner"
    return ""


def _twist_by_inner() -> str:
    A = corpus.quantum_exterior(1)
    pi = nakayama_from_form(A, trace_form(A))
    u = [A.field(c) for c in (1, 1, 0, 2)]
    sigma = inner_automorphism(A, u)
    twist_isomorphism(A, u, pi, twisted_trivial_extension(A, sigma.compose(pi)), twisted_trivial_extension(A, pi))
    return ""


def _construction_dims() -> str:
    for L in _graded_corpus():
        if smash_z2(L).dim != 2 * L.dim or quasi_veronese2(L).dim != 2 * L.dim:
            return f"{L.name}: Z2 construction dimension"
        if trivial_extension(L).dim != 2 * L.dim:
            return f"{L.name}: trivial extension dimension"
        veronese_smash_iso(L)
    return ""


def _skew_forms() -> str:
    L = corpus.quantum_exterior(1)
    form = trace_form(L)
    nu = nakayama_from_form(L, form)
    G = cyclic_action(L, nu, automorphism_order(nu))
    S = skew_group_algebra(L, G)
    if S.dim != G.order * L.dim or check_algebra(S):
        return "skew group algebra malformed"
    skew_group_form(form, G, S)
    return ""


def _trivext_symmetric() -> str:
    for A in (corpus.kronecker(), corpus.path_a2(), corpus.ground_field(), corpus.truncated_polynomial()):
        if not is_symmetric(trivial_extension(A)):
            return f"trivial extension of {A.name} not symmetric"
    K = corpus.kronecker()
    swap = AlgebraMorphism(K, K, [K.basis_vec(i) for i in (0, 1, 3, 2)])
    twisted_trivial_extension(K, swap)
    return ""


def _veronese_trivext() -> str:
    for L in (corpus.truncated_polynomial(), corpus.quantum_exterior(2), corpus.delta_kronecker()):
        veronese_as_twisted_trivext(L)
    return ""


def _graph_sweep() -> str:
    for expected, G in standard_graphs(9):
        got = recognize_graph(G)
        if got.label != expected:
            return f"{expected} recognised as {got.label}"
        if expected.kind == "ExtendedDynkin":
            if not all(x > 0 for x in got.certificate.kernel[0]) and not all(x < 0 for x in got.certificate.kernel[0]):
                return f"{expected}: kernel vector not positive"
            for H in edge_augmentations(G):
                if recognize_graph(H).label.kind != "Other":
                    return f"augmentation of {expected} not Other"
    return ""


def _relabel_invariance() -> str:
    rng = random.Random(3)
    for expected, G in standard_graphs(7):
        perm = list(range(G.n))
        rng.shuffle(perm)
        if recognize_graph(G.relabel(perm)).label != expected:
            return f"{expected} changes under relabelling"
    return ""


def _finite_field_never_no() -> str:
    for q in (2, 3, 4):
        v = decide_fg(corpus.quantum_exterior(q, PrimeField(7)))
        if v.answer == "No":
            return f"q = {q} over GF(7) gave No"
    return ""


def _tame_hereditary() -> str:
    v = decide_fg(trivial_extension(corpus.kronecker()))
    if v.answer != "Yes":
        return "trivial extension of the Kronecker algebra is not (Fg)"
    return ""


def _morita_double() -> str:
    for L in (corpus.ground_field(), corpus.truncated_polynomial(), corpus.quantum_exterior(1)):
        if not double_morita_check(L):
            return f"{L.name}: basic version of the double does not match"
    return ""


def _seed_independence() -> str:
    for L in _frobenius_corpus():
        if decide_fg(L, seed=1).answer != decide_fg(L, seed=2).answer:
            return f"{L.name}: verdict depends on the seed"
    return ""


CHECKS: List[Check] = [
    ("scalar inverse and round trip", _scalars),
    ("constructed tables pass check_algebra", _tables),
    ("radical layers telescope", _telescoping),
    ("quiver of a presentation", _quiver_round_trip),
    ("quotient by socle has rad^2 = 0", _socle_quotient),
    ("basic idempotent corners are local", _basic_idempotents),
    ("Nakayama gram relation", _gram_relation),
    ("inner witnesses verify", _inner_witnesses),
    ("outer order is minimal", _outer_minimal),
    ("twist by an inner automorphism", _twist_by_inner),
    ("construction dimensions and veronese/smash iso", _construction_dims),
    ("skew group form nondegenerate", _skew_forms),
    ("trivial extensions symmetric", _trivext_symmetric),
    ("veronese is a twisted trivial extension", _veronese_trivext),
    ("Dynkin sweep", _graph_sweep),
    ("recognition invariant under relabelling", _relabel_invariance),
    ("finite fields never give No", _finite_field_never_no),
    ("tame hereditary trivial extension is (Fg)", _tame_hereditary),
    ("double is Morita equivalent", _morita_double),
    ("verdicts independent of seed", _seed_independence),
]


def run(extra=()) -> List[Tuple[str, bool, str]]:
    """Run every check; ``extra`` is a list of (name, algebra) whose tables are checked too."""
    results = []
    for name, fn in CHECKS:
        try:
            detail = fn()
        except Exception as exc:  # a failing check must not stop the others
            detail = f"{type(exc).__name__}: {exc}"
            traceback.print_exc()
        results.append((name, not detail, detail))
    for name, A in extra:
        bad = check_algebra(A)
        results.append((f"check_algebra({name})", not bad, "; ".join(bad[:5])))
    return results
