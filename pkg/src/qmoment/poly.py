"""Dense-free bivariate polynomial helpers on coefficient dictionaries.

Polynomials are maps ``{(i, j): coeff}`` for the monomial x^i y^j.  Degrees
in this package never exceed 6, so exact coefficient convolution is both
fast and faithful; no symbolic engine is involved.
"""

from .core import Index

Poly = dict[Index, float]


def p_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for (i1, j1), c1 in p.items():
        if c1 == 0.0:
            continue
        for (i2, j2), c2 in q.items():
            key = (i1 + i2, j1 + j2)
            out[key] = out.get(key, 0.0) + c1 * c2
    return out


def p_pow(p: Poly, k: int) -> Poly:
    out: Poly = {(0, 0): 1.0}
    for _ in range(k):
        out = p_mul(out, p)
    return out


def p_scale(p: Poly, factor: float) -> Poly:
    return {k: factor * v for k, v in p.items()}


def p_add(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0.0) + v
    return out


def p_eval(p: Poly, x: float, y: float) -> float:
    return float(sum(c * x**i * y**j for (i, j), c in p.items()))


def p_degree(p: Poly, tol: float = 0.0) -> int:
    degs = [i + j for (i, j), c in p.items() if abs(c) > tol]
    return max(degs, default=0)


def affine_powers(p1: Poly, p2: Poly, max_degree: int) -> dict[Index, Poly]:
    """Table of expanded products p1^i * p2^j for all i+j <= max_degree."""
    pow1 = [{(0, 0): 1.0}]
    pow2 = [{(0, 0): 1.0}]
    for _ in range(max_degree):
        pow1.append(p_mul(pow1[-1], p1))
        pow2.append(p_mul(pow2[-1], p2))
    table: dict[Index, Poly] = {}
    for i in range(max_degree + 1):
        for j in range(max_degree + 1 - i):
            table[(i, j)] = p_mul(pow1[i], pow2[j])
    return table
