"""Tiny multivariate polynomial arithmetic over a scalar backend.

Polynomials are dicts mapping exponent tuples to nonzero scalars; exponent
tuples are canonical with trailing zeros trimmed, so the constant term has
key ().  Only what the geometry needs: degree-one forms, products of forms
for exact sum checks, and evaluation.
"""

from __future__ import annotations


def _norm(exp):
    exp = tuple(exp)
    while exp and exp[-1] == 0:
        exp = exp[:-1]
    return exp


def poly_zero():
    return {}


def poly_const(backend, c):
    return {} if backend.is_zero(c) else {(): c}


def poly_from_form(backend, constant, coeffs):
    """The degree-one polynomial constant + sum coeffs_i * x_i."""
    p = {}
    if not backend.is_zero(constant):
        p[()] = constant
    for i, a in enumerate(coeffs):
        if not backend.is_zero(a):
            exp = [0] * (i + 1)
            exp[i] = 1
            p[tuple(exp)] = a
    return p


def poly_add(backend, p, q):
    out = dict(p)
    for e, c in q.items():
        s = backend.add(out.get(e, backend.zero), c)
        if backend.is_zero(s):
            out.pop(e, None)
        else:
            out[e] = s
    return out


def poly_neg(backend, p):
    return {e: backend.neg(c) for e, c in p.items()}


def poly_sub(backend, p, q):
    return poly_add(backend, p, poly_neg(backend, q))


def poly_scale(backend, p, c):
    if backend.is_zero(c):
        return {}
    return {e: backend.mul(x, c) for e, x in p.items()}


def poly_mul(backend, p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            n = max(len(e1), len(e2))
            a = e1 + (0,) * (n - len(e1))
            b = e2 + (0,) * (n - len(e2))
            e = _norm(x + y for x, y in zip(a, b))
            s = backend.add(out.get(e, backend.zero), backend.mul(c1, c2))
            if backend.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
    return out


def poly_pow(backend, p, n: int):
    if n < 0:
        raise ValueError("negative power of a polynomial")
    out = poly_const(backend, backend.one)
    for _ in range(n):
        out = poly_mul(backend, out, p)
    return out


def poly_eval(backend, p, point):
    total = backend.zero
    for e, c in p.items():
        term = c
        for i, k in enumerate(e):
            for _ in range(k):
                term = backend.mul(term, point[i])
        total = backend.add(total, term)
    return total


def poly_is_zero(p) -> bool:
    return not p


def poly_eq(backend, p, q) -> bool:
    return poly_is_zero(poly_sub(backend, p, q))
