"""Graded integer combinations of formal Milnor symbols [l1][l2]...[lp].

Normalization is syntactic and deliberately incomplete: factors are split
into canonical multiplicative atoms and sorted with anticommutation signs,
a repeated factor rewrites through [x][x] = -[-1][x], Steinberg products
[x][1-x] and [x][-x] vanish when both factors are concrete, terms carrying
a [-1] factor are 2-torsion, and prime-field backends truncate everything
of degree >= 2 (with the degree-1 part collapsed into the ambient cyclic
group).  `is_zero` answers zero / nonzero / unknown accordingly.
"""

from __future__ import annotations

import enum

from .fields import ZeroUnit


class NonConcreteCoefficient(ValueError):
    """A field unit could not be reassembled from a symbol coefficient."""


class Tri(enum.Enum):
    ZERO = "zero"
    NONZERO = "nonzero"
    UNKNOWN = "unknown"


def _minus_one(backend):
    return backend.neg(backend.one)


def _normalize_factors(backend, factors):
    """Sort symbol factors with signs; returns (sign, tuple) or (0, None).

    Adjacent equal factors other than [-1] rewrite via the square relation,
    which injects a [-1] and flips the sign; the injected factor then bubbles
    to the front like any other.
    """
    arr = list(factors)
    sign = 1
    while True:
        swapped = False
        k = 0
        while k < len(arr) - 1:
            ka = backend.atom_sort_key(arr[k])
            kb = backend.atom_sort_key(arr[k + 1])
            if ka > kb:
                arr[k], arr[k + 1] = arr[k + 1], arr[k]
                sign = -sign
                swapped = True
                k += 1
            elif ka == kb and not backend.eq(arr[k], _minus_one(backend)):
                arr[k: k + 2] = [_minus_one(backend), arr[k]]
                sign = -sign
                swapped = True
                k = 0
            else:
                k += 1
        if not swapped:
            break
    # Steinberg: [a][b] with a+b = 0 or a+b = 1 kills the whole term
    for i in range(len(arr)):
        for j in range(i + 1, len(arr)):
            if backend.atom_concrete(arr[i]) and backend.atom_concrete(arr[j]):
                s = backend.add(arr[i], arr[j])
                if backend.is_zero(s) or backend.eq(s, backend.one):
                    return 0, None
    return sign, tuple(arr)


class CoefficientElement:
    """Finite map {sorted factor tuple: nonzero integer} over one backend."""

    __slots__ = ("backend", "terms")

    def __init__(self, backend, terms=None, _normalized=False):
        self.backend = backend
        if _normalized:
            self.terms = terms or {}
            return
        merged = {}
        for factors, n in (terms or {}).items():
            if n == 0:
                continue
            sign, canon = _normalize_factors(backend, factors)
            if sign == 0:
                continue
            merged[canon] = merged.get(canon, 0) + sign * n
        self.terms = _postprocess(backend, merged)

    # ----- constructors -------------------------------------------------
    @staticmethod
    def zero(backend):
        return CoefficientElement(backend, {}, _normalized=True)

    @staticmethod
    def integer(backend, n: int):
        return CoefficientElement(backend, {(): n} if n else {}, _normalized=True)

    @staticmethod
    def symbol(backend, unit):
        """Degree-one class of a field unit, split multiplicatively."""
        if backend.is_zero(unit):
            raise ZeroUnit("symbol of 0")
        terms = {}
        for atom, e in backend.unit_factors(unit):
            terms[(atom,)] = terms.get((atom,), 0) + e
        return CoefficientElement(backend, terms)

    # ----- ring structure -----------------------------------------------
    def __add__(self, other):
        out = dict(self.terms)
        for f, n in other.terms.items():
            out[f] = out.get(f, 0) + n
        return CoefficientElement(self.backend, _postprocess(self.backend, out), _normalized=True)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, n: int):
        if n == 0:
            return CoefficientElement.zero(self.backend)
        out = {f: c * n for f, c in self.terms.items()}
        return CoefficientElement(self.backend, _postprocess(self.backend, out), _normalized=True)

    def __mul__(self, other):
        out = {}
        for f1, n1 in self.terms.items():
            for f2, n2 in other.terms.items():
                out[f1 + f2] = out.get(f1 + f2, 0) + n1 * n2
        return CoefficientElement(self.backend, out)

    def koszul(self, parity: int):
        """Multiply each degree-d part by (-1)^(d*parity)."""
        if parity % 2 == 0:
            return self
        out = {f: (-n if len(f) % 2 else n) for f, n in self.terms.items()}
        return CoefficientElement(self.backend, out, _normalized=True)

    # ----- structure ------------------------------------------------------
    def is_zero(self) -> Tri:
        if not self.terms:
            return Tri.ZERO
        kind = self.backend.kind
        if kind == "fp":
            return Tri.NONZERO
        maxdeg = max(len(f) for f in self.terms)
        if kind == "q":
            return Tri.NONZERO if maxdeg <= 1 else Tri.UNKNOWN
        return Tri.NONZERO if maxdeg == 0 else Tri.UNKNOWN

    def eq(self, other) -> Tri:
        return (self - other).is_zero()

    def degree_split(self):
        parts = {}
        for f, n in self.terms.items():
            parts.setdefault(len(f), {})[f] = n
        return {
            d: CoefficientElement(self.backend, t, _normalized=True)
            for d, t in sorted(parts.items())
        }

    def degree_part(self, d: int):
        t = {f: n for f, n in self.terms.items() if len(f) == d}
        return CoefficientElement(self.backend, t, _normalized=True)

    def max_degree(self) -> int:
        return max((len(f) for f in self.terms), default=0)

    def int_part(self) -> int:
        return self.terms.get((), 0)

    def degree_one_unit(self):
        """Reassemble the degree-one part into a single field unit."""
        b = self.backend
        unit = b.one
        for f, n in self.terms.items():
            if len(f) != 1:
                continue
            atom = f[0]
            if n >= 0:
                for _ in range(n):
                    unit = b.mul(unit, atom)
            else:
                for _ in range(-n):
                    unit = b.div(unit, atom)
        return unit

    def __eq__(self, other):
        return (
            isinstance(other, CoefficientElement)
            and self.backend.descriptor() == other.backend.descriptor()
            and self.terms == other.terms
        )

    __hash__ = None

    def render(self) -> str:
        if not self.terms:
            return "0"
        b = self.backend
        bits = []
        for f in sorted(self.terms, key=lambda f: (len(f), [b.atom_sort_key(a) for a in f])):
            n = self.terms[f]
            body = "".join(f"[{b.to_str(a)}]" for a in f)
            if not f:
                bits.append(str(n))
            elif n == 1:
                bits.append(body)
            elif n == -1:
                bits.append("-" + body)
            else:
                bits.append(f"{body}·{n}")
        return " + ".join(bits).replace("+ -", "- ")

    def __repr__(self):
        return self.render()


def _postprocess(backend, terms):
    """Backend truncation, [-1] 2-torsion, prime-field degree-1 collapse."""
    out = {}
    minus_one = _minus_one(backend)
    fp = backend.kind == "fp"
    unit_prod = backend.one
    for f, n in terms.items():
        if n == 0:
            continue
        if fp and len(f) >= 2:
            continue
        if fp and len(f) == 1:
            u = f[0]
            e = n % (backend.p - 1) if backend.p > 2 else 0
            for _ in range(e):
                unit_prod = backend.mul(unit_prod, u)
            continue
        if any(backend.eq(a, minus_one) for a in f):
            n %= 2
            if n == 0:
                continue
        out[f] = out.get(f, 0) + n
    if fp and not backend.eq(unit_prod, backend.one):
        out[(unit_prod,)] = 1
    return {f: n for f, n in out.items() if n != 0}
