"""The integer exterior algebra on hyperplane classes and its quotient.

The relation ideal is generated by monomials of empty-intersection subsets
and boundaries of dependent subsets with nonempty intersection; circuits and
minimal empty sets suffice as generators.  Graded ranks of the quotient are
computed two independent ways (integer Smith normal form and rational row
reduction) and a broken-circuit monomial basis is constructed and reduced
against, with per-instance verification left to the callers/tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .arrangement import Arrangement, circuits
from .fields import Rationals
from .linalg import matrix_rank, smith_normal_form


class ExteriorElement:
    """Integer combination of strictly increasing index monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    self.terms[tuple(mono)] = self.terms.get(tuple(mono), 0) + c
            self.terms = {m: c for m, c in self.terms.items() if c}

    @staticmethod
    def monomial(indices, coeff=1):
        idx = tuple(sorted(indices))
        if len(set(idx)) != len(idx):
            return ExteriorElement()
        return ExteriorElement({idx: coeff})

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return ExteriorElement(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, n: int):
        return ExteriorElement({m: n * c for m, c in self.terms.items()})

    def __neg__(self):
        return self.scale(-1)

    def wedge(self, other):
        out = {}
        for s, c in self.terms.items():
            for t, d in other.terms.items():
                sgn, merged = merge_sign(s, t)
                if sgn:
                    out[merged] = out.get(merged, 0) + sgn * c * d
        return ExteriorElement(out)

    def is_zero(self) -> bool:
        return not self.terms

    def degree_parts(self):
        by_deg = {}
        for m, c in self.terms.items():
            by_deg.setdefault(len(m), {})[m] = c
        return {d: ExteriorElement(t) for d, t in sorted(by_deg.items())}

    def __eq__(self, other):
        return isinstance(other, ExteriorElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=lambda m: (len(m), m)):
            c = self.terms[m]
            name = "e" + "".join(str(i + 1) for i in m) if m else "1"
            bits.append(f"{c:+d}*{name}")
        return " ".join(bits)


def merge_sign(s: tuple, t: tuple):
    """Shuffle sign and merged monomial of e_s ^ e_t, or (0, None) on overlap."""
    if set(s) & set(t):
        return 0, None
    sign = 1
    for a in s:
        sign *= (-1) ** sum(1 for b in t if b < a)
    return sign, tuple(sorted(s + t))


def exterior_product(a: ExteriorElement, b: ExteriorElement) -> ExteriorElement:
    return a.wedge(b)


def boundary_element(indices) -> ExteriorElement:
    """sum_k (-1)^k e_{i_1} ^ ... omit i_k ... ^ e_{i_s} with the sign of the
    lexicographically smallest monomial normalized to +1."""
    idx = tuple(sorted(indices))
    terms = {}
    for k in range(len(idx)):
        mono = idx[:k] + idx[k + 1:]
        terms[mono] = (-1) ** (k + 1)
    smallest = min(terms)
    if terms[smallest] < 0:
        terms = {m: -c for m, c in terms.items()}
    return ExteriorElement(terms)


def os_generators(arr: Arrangement):
    """Generators of the relation ideal: empty-flat monomials and boundaries."""
    gens = []
    for c in circuits(arr):
        if c.constant == 1:
            gens.append(ExteriorElement.monomial(c.indices))
        else:
            gens.append(boundary_element(c.indices))
    return gens


@dataclass(frozen=True)
class GradedRanks:
    ranks: tuple
    elementary_divisors: tuple


def _ideal_rows(arr: Arrangement, gens, degree: int):
    r = arr.r
    cols = {m: k for k, m in enumerate(combinations(range(r), degree))}
    rows = []
    for g in gens:
        gdeg = len(next(iter(g.terms)))
        if gdeg > degree:
            continue
        for extra in combinations(range(r), degree - gdeg):
            prod = ExteriorElement.monomial(extra).wedge(g)
            if prod.is_zero():
                continue
            row = [0] * len(cols)
            for m, c in prod.terms.items():
                row[cols[m]] = c
            rows.append(row)
    return rows, len(cols)


def graded_rank(arr: Arrangement) -> GradedRanks:
    """Per-degree ranks and elementary divisors of the quotient, via SNF."""
    gens = os_generators(arr)
    ranks = []
    divisors = []
    for d in range(arr.r + 1):
        rows, ncols = _ideal_rows(arr, gens, d)
        if rows:
            rk, divs = smith_normal_form(rows)
        else:
            rk, divs = 0, []
        ranks.append(comb(arr.r, d) - rk)
        divisors.append(tuple(divs))
    return GradedRanks(tuple(ranks), tuple(divisors))


def graded_rank_rational(arr: Arrangement):
    """Independent route: ranks of the same spans by row reduction over Q."""
    from fractions import Fraction

    q = Rationals()
    gens = os_generators(arr)
    ranks = []
    for d in range(arr.r + 1):
        rows, ncols = _ideal_rows(arr, gens, d)
        qrows = [[Fraction(x) for x in row] for row in rows]
        rk = matrix_rank(qrows, q) if qrows else 0
        ranks.append(comb(arr.r, d) - rk)
    return tuple(ranks)


class OSContext:
    """Reduction table for the quotient: broken-circuit rewriting with memo."""

    def __init__(self, arr: Arrangement):
        self.arr = arr
        self.circuits0 = []  # (tuple C, set C, min, boundary element)
        self.empties = []  # (tuple C, set C)
        for c in circuits(arr):
            if c.constant == 1:
                self.empties.append((c.indices, set(c.indices)))
            else:
                self.circuits0.append(
                    (c.indices, set(c.indices), c.indices[0], boundary_element(c.indices))
                )
        self._nf = {}

    def is_nbc(self, mono: tuple) -> bool:
        s = set(mono)
        if any(cs <= s for _, cs in self.empties):
            return False
        for C, cs, m, _ in self.circuits0:
            if cs - {m} <= s:
                return False
        return True

    def nbc_monomials(self):
        out = [m for d in range(self.arr.r + 1)
               for m in combinations(range(self.arr.r), d) if self.is_nbc(m)]
        return out

    def normal_form_monomial(self, mono: tuple) -> ExteriorElement:
        mono = tuple(sorted(mono))
        if mono in self._nf:
            return self._nf[mono]
        s = set(mono)
        if any(cs <= s for _, cs in self.empties):
            out = ExteriorElement()
        else:
            hit = next(((C, cs, m, b) for C, cs, m, b in self.circuits0 if cs - {m} <= s), None)
            if hit is None:
                out = ExteriorElement.monomial(mono)
            elif hit[1] <= s:
                out = ExteriorElement()  # e_C itself lies in the ideal
            else:
                C, cs, m, bd = hit
                rel = bd.wedge(ExteriorElement.monomial(tuple(s - (cs - {m}))))
                c_s = rel.terms.get(mono, 0)
                assert c_s in (1, -1), "broken-circuit relation must hit the monomial"
                rest = rel - ExteriorElement.monomial(mono, c_s)
                out = ExteriorElement()
                for m2, c2 in rest.terms.items():
                    out = out + self.normal_form_monomial(m2).scale(-c_s * c2)
        self._nf[mono] = out
        return out

    def normal_form(self, elem: ExteriorElement) -> ExteriorElement:
        out = ExteriorElement()
        for m, c in elem.terms.items():
            out = out + self.normal_form_monomial(m).scale(c)
        return out


def nbc_basis(arr: Arrangement):
    """Monomials containing no broken circuit of a nonempty-flat circuit and
    no full empty-flat circuit, ordered by (degree, lex)."""
    return OSContext(arr).nbc_monomials()
