"""Independent reference computations used to freeze expected values.

These use sympy matrices and hand-written regular representations, never the
package's own linear algebra.
"""

import sympy


def quantum_exterior_left_regular(q):
    """Left multiplication matrices on the basis (1, x, y, xy) of
    k<x, y>/(x^2, y^2, xy + q yx), written down from the relations."""
    q = sympy.Rational(q)
    # column j is the product with basis element j
    Lx = sympy.zeros(4, 4)
    Lx[1, 0] = 1          # x * 1 = x
    Lx[3, 2] = 1          # x * y = xy
    Ly = sympy.zeros(4, 4)
    Ly[2, 0] = 1          # y * 1 = y
    Ly[3, 1] = -1 / q     # y * x = -1/q xy
    Lxy = Lx * Ly
    return {"e": sympy.eye(4), "x": Lx, "y": Ly, "xy": Lxy}


def nakayama_matrix(gram):
    """N with <a, b> = <b, N a>, from N = G^-1 G^T."""
    G = sympy.Matrix(gram)
    return G.inv() * G.T


def to_sympy(rows):
    return sympy.Matrix([[sympy.Rational(str(x)) for x in r] for r in rows])


def skew_truncated_polynomial_table(n=3):
    """Structure constants of k[x]/(x^n) * Z2 with g x g^-1 = -x, basis x^i g^a
    at index a*n + i, from (x^i g^a)(x^j g^b) = (-1)^(a j) x^(i+j) g^(a+b)."""
    table = {}
    for a in range(2):
        for i in range(n):
            for b in range(2):
                for j in range(n):
                    if i + j < n:
                        table[(a * n + i, b * n + j)] = {((a + b) % 2) * n + i + j: (-1) ** (a * j)}
    return table


def trivext_product(mul, n, left, right, twist=None):
    """(a, f)(b, g) = (ab, a.g + f.b) with (a.g)(x) = g(x a), (f.b)(x) = f(twist(b) x).

    ``mul(u, v)`` multiplies coordinate vectors of the base algebra, ``left``
    and ``right`` are length-2n lists, functionals in dual-basis coordinates."""
    twist = twist or (lambda v: v)
    a, f = left[:n], left[n:]
    b, g = right[:n], right[n:]
    unit = [[1 if k == i else 0 for k in range(n)] for i in range(n)]
    ab = mul(a, b)
    dual = []
    for k in range(n):
        x = unit[k]
        val = sum(c * d for c, d in zip(g, mul(x, a)))
        val += sum(c * d for c, d in zip(f, mul(twist(b), x)))
        dual.append(val)
    return list(ab) + dual
