"""Small named algebras used by the self test, the tests and the examples."""

from __future__ import annotations

from .algebra import Algebra, Arrow, Presentation, Quiver, build_algebra
from .constructions import trivial_extension
from .fields import FieldDescriptor, Rationals
from .labels import MatrixEntry, Vertex


def ground_field(F: FieldDescriptor = None) -> Algebra:
    F = F or Rationals()
    return build_algebra(Presentation(F, Quiver(("1",)), [], 3), name="k")


def truncated_polynomial(F: FieldDescriptor = None, n: int = 3) -> Algebra:
    """k[x]/(x^n)."""
    F = F or Rationals()
    Q = Quiver(("1",), (Arrow("x", "1", "1"),))
    return build_algebra(Presentation(F, Q, [], n), name=f"k[x]/(x^{n})")


def quantum_exterior(q, F: FieldDescriptor = None) -> Algebra:
    """One vertex, loops x, y with x^2 = y^2 = xy + q yx = 0."""
    F = F or Rationals()
    q = F.coerce(q)
    Q = Quiver(("1",), (Arrow("x", "1", "1"), Arrow("y", "1", "1")))
    rels = [[(F.one, ("x", "x"))], [(F.one, ("y", "y"))], [(F.one, ("x", "y")), (q, ("y", "x"))]]
    return build_algebra(Presentation(F, Q, rels, 3), name=f"Lambda_{q}")


def kronecker(F: FieldDescriptor = None) -> Algebra:
    F = F or Rationals()
    Q = Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("b", "1", "2")))
    return build_algebra(Presentation(F, Q, [], 2), name="Kronecker")


def path_a2(F: FieldDescriptor = None) -> Algebra:
    F = F or Rationals()
    Q = Quiver(("1", "2"), (Arrow("a", "1", "2"),))
    return build_algebra(Presentation(F, Q, [], 3), name="kA2")


def two_points(F: FieldDescriptor = None) -> Algebra:
    F = F or Rationals()
    return build_algebra(Presentation(F, Quiver(("1", "2")), [], 3), name="k x k")


def matrix_algebra(F: FieldDescriptor = None, n: int = 2) -> Algebra:
    """Full n x n matrices; only the diagonal units are unit idempotents."""
    F = F or Rationals()
    entries = [(i, j) for i in range(n) for j in range(n)]
    pos = {e: k for k, e in enumerate(entries)}
    table = [[{} for _ in entries] for _ in entries]
    for a, (i, j) in enumerate(entries):
        for b, (k, l) in enumerate(entries):
            if j == k:
                table[a][b] = {pos[(i, l)]: F.one}
    labels = [MatrixEntry(i, j, Vertex("1")) for i, j in entries]
    return Algebra(F, labels, table, [pos[(i, i)] for i in range(n)], None, name=f"M{n}")


def delta_kronecker(F: FieldDescriptor = None) -> Algebra:
    return trivial_extension(kronecker(F), name="Delta(Kronecker)")


def delta_a2(F: FieldDescriptor = None) -> Algebra:
    return trivial_extension(path_a2(F), name="Delta(kA2)")
