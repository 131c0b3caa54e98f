"""The presented cohomology ring of an arrangement complement.

Elements are integer/symbol combinations of anticommuting degree-(1,1)
generators g_i (one per hyperplane class [phi_i]) over the Milnor-symbol
coefficient ring.  Words reduce to a normal form in two stages:

* squares collapse through g^2 = -[-1] g and generators sort with Koszul
  signs (`_merge_monomials`);
* a monomial whose support contains a broken circuit of a nonempty-flat
  circuit, or a full empty-flat circuit, rewrites through the exact relation
  element of that circuit (product relation for empty flats, the alternating
  tilde-R element otherwise), eliminating the monomial that misses the
  circuit's smallest index.  Each step strictly decreases the monomial
  weight sum(2^i), so reduction terminates; surviving monomials are the
  broken-circuit-free sets.

Public coordinates are over the deletion-restriction module basis; the
change of basis from broken-circuit coordinates is exact and unitriangular
with respect to coefficient degree, so it inverts by a finite series.
"""

from __future__ import annotations

import sys
from fractions import Fraction

from .arrangement import (
    Arrangement,
    UnitElement,
    circuits,
    delete,
    is_normal_crossing,
    restrict,
)
from .decomposition import module_basis
from .exterior import ExteriorElement, OSContext
from .fields import Rationals
from .linalg import row_reduce
from .polynomials import (
    poly_add,
    poly_const,
    poly_eq,
    poly_mul,
    poly_scale,
)
from .symbols import CoefficientElement, NonConcreteCoefficient, Tri

sys.setrecursionlimit(100000)


class MixedArrangement(ValueError):
    """Operands live over different arrangements."""


class PreconditionViolated(ValueError):
    """An exact precondition (sum of units, permutation, ...) fails."""


class NotNormalCrossing(ValueError):
    """Operation requires the normal-crossing-at-infinity condition."""


# --------------------------------------------------------------------------
# word algebra on raw monomial elements: dict[sorted index tuple] -> coeff
# --------------------------------------------------------------------------

def _merge_monomials(S, T):
    """Normalize g_S * g_T: returns (sign, #[-1] factors, merged tuple)."""
    sign = 1
    arr = []
    for x in list(S) + list(T):
        pos = len(arr)
        while pos > 0 and arr[pos - 1] > x:
            pos -= 1
        sign *= (-1) ** (len(arr) - pos)
        arr.insert(pos, x)
    out = []
    k = 0
    i = 0
    while i < len(arr):
        if i + 1 < len(arr) and arr[i] == arr[i + 1]:
            # g g -> -[-1] g; the [-1] floats out past the generators on its left
            sign *= -((-1) ** len(out))
            k += 1
            arr.pop(i + 1)
        else:
            out.append(arr[i])
            i += 1
    return sign, k, tuple(out)


class RingContext:
    """Per-arrangement reduction engine and cached combinatorial data."""

    def __init__(self, arr: Arrangement):
        self.arr = arr
        self.backend = arr.backend
        self.os = OSContext(arr)
        self.nbc = self.os.nbc_monomials()
        self.nbc_pos = {m: i for i, m in enumerate(self.nbc)}
        self.basis = module_basis(arr)
        self.basis_pos = {m: i for i, m in enumerate(self.basis)}
        if len(self.basis) != len(self.nbc):
            raise AssertionError(
                "module basis and broken-circuit basis disagree in size: "
                f"{len(self.basis)} vs {len(self.nbc)}"
            )
        deps = circuits(arr)
        self.deps0 = [c for c in deps if c.constant == 0]
        self.deps1 = [c for c in deps if c.constant == 1]
        self._m1 = CoefficientElement.symbol(self.backend, self.backend.neg(self.backend.one))
        self._m1_pow = {0: CoefficientElement.integer(self.backend, 1)}
        self._nf_cache = {}
        self._conv = None

    # -- coefficients ------------------------------------------------------
    def one_coeff(self):
        return CoefficientElement.integer(self.backend, 1)

    def int_coeff(self, n):
        return CoefficientElement.integer(self.backend, n)

    def m1_pow(self, k: int) -> CoefficientElement:
        if k not in self._m1_pow:
            self._m1_pow[k] = self.m1_pow(k - 1) * self._m1
        return self._m1_pow[k]

    # -- raw element algebra -------------------------------------------------
    def elem_add(self, a, b):
        out = dict(a)
        for S, c in b.items():
            s = out[S] + c if S in out else c
            if s.terms:
                out[S] = s
            else:
                out.pop(S, None)
        return out

    def elem_scale(self, a, n: int):
        if n == 0:
            return {}
        return {S: c.scale(n) for S, c in a.items()}

    def elem_coeff_mul(self, coeff: CoefficientElement, a):
        out = {}
        for S, c in a.items():
            v = coeff * c
            if v.terms:
                out[S] = v
        return out

    def elem_mul(self, a, b):
        out = {}
        for S, c in a.items():
            for T, d in b.items():
                dk = d.koszul(len(S))
                sign, k, U = _merge_monomials(S, T)
                coeff = c * dk
                if k:
                    coeff = coeff * self.m1_pow(k)
                if sign < 0:
                    coeff = coeff.scale(-1)
                if not coeff.terms:
                    continue
                s = out[U] + coeff if U in out else coeff
                if s.terms:
                    out[U] = s
                else:
                    out.pop(U, None)
        return out

    def unit_class_raw(self, u: UnitElement):
        if len(u.exponents) != self.arr.r:
            raise MixedArrangement("unit exponent vector does not match the arrangement")
        out = {}
        sym = CoefficientElement.symbol(self.backend, u.scalar)
        if sym.terms:
            out[()] = sym
        for i, e in enumerate(u.exponents):
            if e:
                out[(i,)] = self.int_coeff(e)
        return out

    def word_raw(self, units):
        out = {(): self.one_coeff()}
        for u in units:
            out = self.elem_mul(out, self.unit_class_raw(u))
        return out

    def rtilde_raw(self, units):
        """The alternating relation element of a tuple of units.

        Singleton omissions carry (-1)^position (1-based); larger omission
        sets of size a carry the coefficient [-1]^(a-1).
        """
        t = len(units)
        out = {}
        for mask in range(1, 1 << t):
            omitted = [i for i in range(t) if mask >> i & 1]
            kept = [units[i] for i in range(t) if not mask >> i & 1]
            prod = self.word_raw(kept)
            a = len(omitted)
            if a == 1:
                term = self.elem_scale(prod, (-1) ** (omitted[0] + 1))
            else:
                term = self.elem_coeff_mul(self.m1_pow(a - 1), prod)
            out = self.elem_add(out, term)
        return out

    # -- circuit rewriting ---------------------------------------------------
    def _applicable(self, S: tuple):
        s = set(S)
        hits = []
        for dep in self.deps1:
            if set(dep.indices) <= s:
                hits.append((1, dep))
        for dep in self.deps0:
            if set(dep.indices) - {dep.indices[0]} <= s:
                hits.append((0, dep))
        return hits

    def relation_element(self, S: tuple, kind: int, dep):
        """Exact relation containing g_S with integer coefficient +-1."""
        units = [
            UnitElement(lam, tuple(1 if i == idx else 0 for i in range(self.arr.r)))
            for idx, lam in zip(dep.indices, dep.scalars)
        ]
        if kind == 1:
            rel = self.word_raw(units)
            D = tuple(sorted(set(S) - set(dep.indices)))
        else:
            rel = self.rtilde_raw(units)
            D = tuple(sorted(set(S) - (set(dep.indices) - {dep.indices[0]})))
        if D:
            rel = self.elem_mul(rel, {D: self.one_coeff()})
        return rel

    def monomial_nf(self, S: tuple):
        """Normal form of the bare monomial g_S over the broken-circuit basis."""
        S = tuple(sorted(S))
        if S in self._nf_cache:
            return self._nf_cache[S]
        hits = self._applicable(S)
        if not hits:
            out = {S: self.one_coeff()}
        else:
            kind, dep = hits[0]
            rel = self.relation_element(S, kind, dep)
            pivot = rel.pop(S)
            assert pivot.terms == {(): 1} or pivot.terms == {(): -1}, (
                "relation must contain the rewritten monomial with unit coefficient"
            )
            sigma = pivot.int_part()
            out = {}
            for T, c in rel.items():
                part = self.elem_coeff_mul(c.scale(-sigma), self.monomial_nf(T))
                out = self.elem_add(out, part)
        self._nf_cache[S] = out
        return out

    def reduce(self, elem, rng=None):
        """Normal form over the broken-circuit monomials."""
        if rng is None:
            out = {}
            for S, c in elem.items():
                out = self.elem_add(out, self.elem_coeff_mul(c, self.monomial_nf(S)))
            return out
        work = dict(elem)
        while True:
            reducible = [(S, self._applicable(S)) for S in sorted(work)]
            reducible = [(S, h) for S, h in reducible if h]
            if not reducible:
                return work
            S, hits = reducible[rng.randrange(len(reducible))]
            kind, dep = hits[rng.randrange(len(hits))]
            rel = self.relation_element(S, kind, dep)
            sigma = rel[S].int_part()
            c = work[S]
            # work := work - c*sigma*rel cancels the S term exactly
            work = self.elem_add(work, self.elem_coeff_mul(c.scale(-sigma), rel))
            assert S not in work

    # -- module-basis coordinates ---------------------------------------------
    def _conversion(self):
        if self._conv is not None:
            return self._conv
        n = len(self.basis)
        C = [[None] * n for _ in range(n)]
        zero = CoefficientElement.zero(self.backend)
        for i, S in enumerate(self.basis):
            nf = self.monomial_nf(S)
            row = [zero] * n
            for T, c in nf.items():
                row[self.nbc_pos[T]] = c
            C[i] = row
        c0 = [[C[i][j].int_part() for j in range(n)] for i in range(n)]
        c0inv = _int_inverse(c0)
        if c0inv is None:
            raise AssertionError(
                "module basis does not map to a unimodular matrix over the "
                "broken-circuit basis; cross-check failed"
            )
        cplus = [
            [C[i][j] - self.int_coeff(c0[i][j]) for j in range(n)] for i in range(n)
        ]
        if all(not e.terms for row in cplus for e in row):
            D = [[self.int_coeff(c0inv[i][j]) for j in range(n)] for i in range(n)]
        else:
            E = _int_mat_coeff(c0inv, cplus, self)
            acc = _coeff_identity(n, self)
            P = E
            sign = -1
            guard = 0
            while any(e.terms for row in P for e in row):
                acc = _coeff_add(acc, _coeff_scale(P, sign))
                P = _coeff_matmul(P, E, self)
                sign = -sign
                guard += 1
                if guard > 4 * (self.arr.r + 2):
                    raise AssertionError("conversion series failed to terminate")
            D = _coeff_mat_int(acc, c0inv, self)
        self._conv = (C, D)
        return self._conv

    def to_module(self, nbc_elem):
        """Coordinates over the module basis of an nbc-reduced element."""
        _, D = self._conversion()
        n = len(self.basis)
        coords = {}
        for T, c in nbc_elem.items():
            j = self.nbc_pos[T]
            for i in range(n):
                v = c * D[j][i]
                if not v.terms:
                    continue
                S = self.basis[i]
                s = coords[S] + v if S in coords else v
                if s.terms:
                    coords[S] = s
                else:
                    coords.pop(S, None)
        return coords

    def to_nbc(self, coords):
        """Raw/broken-circuit element of module-basis coordinates."""
        return self.reduce(dict(coords))


def _int_inverse(m):
    """Exact inverse of an integer matrix; None unless unimodular."""
    n = len(m)
    q = Rationals()
    aug = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    rank, rref, pivots, _ = row_reduce(aug, q)
    if rank < n or pivots != list(range(n)):
        return None
    inv = [[rref[i][n + j] for j in range(n)] for i in range(n)]
    if any(x.denominator != 1 for row in inv for x in row):
        return None
    return [[int(x) for x in row] for row in inv]


def _coeff_identity(n, ctx):
    z = CoefficientElement.zero(ctx.backend)
    return [[ctx.int_coeff(1) if i == j else z for j in range(n)] for i in range(n)]


def _coeff_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _coeff_scale(a, n):
    return [[x.scale(n) for x in row] for row in a]


def _int_mat_coeff(ints, coeffs, ctx):
    n = len(ints)
    z = CoefficientElement.zero(ctx.backend)
    out = [[z] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = z
            for k in range(n):
                if ints[i][k]:
                    acc = acc + coeffs[k][j].scale(ints[i][k])
            out[i][j] = acc
    return out


def _coeff_mat_int(coeffs, ints, ctx):
    n = len(ints)
    z = CoefficientElement.zero(ctx.backend)
    out = [[z] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = z
            for k in range(n):
                if ints[k][j]:
                    acc = acc + coeffs[i][k].scale(ints[k][j])
            out[i][j] = acc
    return out


def _coeff_matmul(a, b, ctx):
    n = len(a)
    z = CoefficientElement.zero(ctx.backend)
    out = [[z] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = z
            for k in range(n):
                if a[i][k].terms and b[k][j].terms:
                    acc = acc + a[i][k] * b[k][j]
            out[i][j] = acc
    return out


_CONTEXTS = {}


def get_context(arr: Arrangement) -> RingContext:
    key = arr.key()
    if key not in _CONTEXTS:
        _CONTEXTS[key] = RingContext(arr)
    return _CONTEXTS[key]


class CohomologyElement:
    """Normal-form ring element: module-basis subsets -> symbol coefficients."""

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx: RingContext, coords):
        self.ctx = ctx
        self.coords = {S: c for S, c in coords.items() if c.terms}

    @property
    def arrangement(self):
        return self.ctx.arr

    @staticmethod
    def zero(arr: Arrangement):
        return CohomologyElement(get_context(arr), {})

    @staticmethod
    def one(arr: Arrangement):
        ctx = get_context(arr)
        return CohomologyElement(ctx, {(): ctx.one_coeff()})

    def _same(self, other):
        if self.ctx is not other.ctx:
            raise MixedArrangement("elements over different arrangements")

    def __add__(self, other):
        self._same(other)
        out = dict(self.coords)
        for S, c in other.coords.items():
            s = out[S] + c if S in out else c
            if s.terms:
                out[S] = s
            else:
                out.pop(S, None)
        return CohomologyElement(self.ctx, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, n: int):
        return CohomologyElement(self.ctx, {S: c.scale(n) for S, c in self.coords.items()})

    def coeff_scale(self, coeff: CoefficientElement):
        return CohomologyElement(
            self.ctx, {S: coeff * c for S, c in self.coords.items()}
        )

    def __mul__(self, other):
        self._same(other)
        ctx = self.ctx
        a = ctx.to_nbc(self.coords)
        b = ctx.to_nbc(other.coords)
        return CohomologyElement(ctx, ctx.to_module(ctx.reduce(ctx.elem_mul(a, b))))

    def is_zero(self) -> Tri:
        if not self.coords:
            return Tri.ZERO
        states = {c.is_zero() for c in self.coords.values()}
        if Tri.NONZERO in states:
            return Tri.NONZERO
        if states == {Tri.ZERO}:
            return Tri.ZERO
        return Tri.UNKNOWN

    def eq(self, other) -> Tri:
        return (self - other).is_zero()

    def bidegrees(self):
        out = set()
        for S, c in self.coords.items():
            for d in {len(f) for f in c.terms}:
                out.add((len(S) + d, len(S) + d))
        return sorted(out)

    def render(self):
        bits = []
        for S in sorted(self.coords, key=lambda S: (len(S), S)):
            mono = "{" + ",".join(str(i + 1) for i in S) + "}"
            bits.append(f"{mono}: {self.coords[S].render()}")
        return "; ".join(bits) if bits else "0"

    def __repr__(self):
        return self.render()


# --------------------------------------------------------------------------
# public operations
# --------------------------------------------------------------------------

def unit_class(arr: Arrangement, u: UnitElement) -> CohomologyElement:
    ctx = get_context(arr)
    raw = ctx.unit_class_raw(u)
    return CohomologyElement(ctx, ctx.to_module(ctx.reduce(raw)))


def multiply(x: CohomologyElement, y: CohomologyElement) -> CohomologyElement:
    return x * y


def reduce_word(arr: Arrangement, units) -> CohomologyElement:
    ctx = get_context(arr)
    raw = ctx.word_raw(list(units))
    return CohomologyElement(ctx, ctx.to_module(ctx.reduce(raw)))


def reduce_word_randomized(arr: Arrangement, units, rng) -> CohomologyElement:
    """Same normal form, but with rewrite choices driven by `rng`."""
    ctx = get_context(arr)
    raw = ctx.word_raw(list(units))
    return CohomologyElement(ctx, ctx.to_module(ctx.reduce(raw, rng=rng)))


def _unit_fraction(arr: Arrangement, u: UnitElement):
    b = arr.backend
    num = poly_const(b, u.scalar)
    den = poly_const(b, b.one)
    for i, e in enumerate(u.exponents):
        p = arr.form_poly(i)
        for _ in range(abs(e)):
            if e > 0:
                num = poly_mul(b, num, p)
            else:
                den = poly_mul(b, den, p)
    return num, den


def _unit_sum_equals(arr: Arrangement, units, target: int) -> bool:
    b = arr.backend
    num = poly_const(b, b.zero)
    den = poly_const(b, b.one)
    for u in units:
        nu, du = _unit_fraction(arr, u)
        num = poly_add(b, poly_mul(b, num, du), poly_mul(b, nu, den))
        den = poly_mul(b, den, du)
    return poly_eq(b, num, poly_scale(b, den, b.from_int(target)))


def rel_sum_one(arr: Arrangement, units) -> CohomologyElement:
    """Product of unit classes whose units sum to 1; must reduce to zero."""
    if not _unit_sum_equals(arr, units, 1):
        raise PreconditionViolated("units do not sum to 1")
    return reduce_word(arr, units)


def rel_square(arr: Arrangement, u: UnitElement) -> CohomologyElement:
    """[u]^2 + [-1][u]; must reduce to zero."""
    ctx = get_context(arr)
    sq = reduce_word(arr, [u, u])
    lin = reduce_word(arr, [u]).coeff_scale(ctx._m1)
    return sq + lin


def rel_R(arr: Arrangement, units) -> CohomologyElement:
    """The alternating relation element of units summing to 0; reduces to zero."""
    if not _unit_sum_equals(arr, units, 0):
        raise PreconditionViolated("units do not sum to 0")
    ctx = get_context(arr)
    raw = ctx.rtilde_raw(list(units))
    return CohomologyElement(ctx, ctx.to_module(ctx.reduce(raw)))


def rtilde_element(arr: Arrangement, units) -> CohomologyElement:
    """The alternating element of an arbitrary tuple (no sum condition)."""
    ctx = get_context(arr)
    raw = ctx.rtilde_raw(list(units))
    return CohomologyElement(ctx, ctx.to_module(ctx.reduce(raw)))


def _transport(x: CohomologyElement, perm):
    """Re-express x over the same arrangement with permuted hyperplane order.

    perm[k] = old index at new position k.
    """
    arr = x.arrangement
    arrp = arr.permuted(perm)
    ctxp = get_context(arrp)
    new_of_old = {old: new for new, old in enumerate(perm)}
    out = {}
    for S, c in x.coords.items():
        word = {(): c}
        for i in S:  # ascending old order; signs handled by elem_mul
            g = {(new_of_old[i],): ctxp.one_coeff()}
            word = ctxp.elem_mul(word, g)
        out = ctxp.elem_add(out, word)
    return arrp, ctxp, ctxp.reduce(out)


def gysin_residue(x: CohomologyElement, j: int) -> CohomologyElement:
    """Residue along hyperplane j: the restriction image of the [phi_j]-part.

    Recomputes coordinates with j as the recursion pivot, splits
    x = [phi_j] x1 + x2 against that basis, and returns the restriction of x1.
    """
    arr = x.arrangement
    arr.check_index(j)
    perm = [j] + [i for i in range(arr.r) if i != j]
    arrp, ctxp, nbc_elem = _transport(x, perm)
    coords = ctxp.to_module(nbc_elem)
    res = restrict(arrp, 0)
    ctx_res = get_context(res.arrangement)
    b = arr.backend
    # images of the deleted-arrangement generators under restriction
    images = {}
    for i in range(1, arrp.r):
        t = res.trace_map[i]
        if t is None:
            img = {}
            sym = CoefficientElement.symbol(b, res.constants[i])
            if sym.terms:
                img[()] = sym
        else:
            img = {(t,): ctx_res.one_coeff()}
            sym = CoefficientElement.symbol(b, res.scales[i])
            if sym.terms:
                img = ctx_res.elem_add(img, {(): sym})
        images[i] = img
    out = {}
    for S, c in coords.items():
        if not S or S[0] != 0:
            continue
        word = {(): c.koszul(1)}
        for i in S[1:]:
            word = ctx_res.elem_mul(word, images[i])
        out = ctx_res.elem_add(out, word)
    return CohomologyElement(ctx_res, ctx_res.to_module(ctx_res.reduce(out)))


def section_lift(arr: Arrangement, j: int, z: CohomologyElement) -> CohomologyElement:
    """Unit-level section of the restriction to hyperplane j.

    Each generator of the restricted arrangement lifts to the class of its
    first-occurrence original form, so restricting the lift gives back z
    exactly.
    """
    arr.check_index(j)
    perm = [j] + [i for i in range(arr.r) if i != j]
    arrp = arr.permuted(perm)
    ctxp = get_context(arrp)
    res = restrict(arrp, 0)
    if z.arrangement.key() != res.arrangement.key():
        raise MixedArrangement("element does not live on the restriction to j")
    out = {}
    for T, c in z.coords.items():
        word = {(): c}
        for k in T:
            word = ctxp.elem_mul(word, {(res.lifts[k],): ctxp.one_coeff()})
        out = ctxp.elem_add(out, word)
    lifted = CohomologyElement(ctxp, ctxp.to_module(ctxp.reduce(out)))
    if j == 0:
        return lifted
    return _transport_back(lifted, perm, arr)


def alpha_embed(arr: Arrangement, j: int, z: CohomologyElement) -> CohomologyElement:
    """Inclusion of classes from delete(arr, j)."""
    arr.check_index(j)
    del_arr, index_map = delete(arr, j)
    if z.arrangement.key() != del_arr.key():
        raise MixedArrangement("element does not live on the deletion at j")
    back = {new: old for old, new in index_map.items()}
    ctx = get_context(arr)
    out = {}
    for S, c in z.coords.items():
        word = {(): c}
        for i in S:
            word = ctx.elem_mul(word, {(back[i],): ctx.one_coeff()})
        out = ctx.elem_add(out, word)
    return CohomologyElement(ctx, ctx.to_module(ctx.reduce(out)))


def _transport_back(x: CohomologyElement, perm, arr: Arrangement):
    """Undo a permutation transport: x lives over arr.permuted(perm)."""
    ctx = get_context(arr)
    out = {}
    for S, c in x.coords.items():
        word = {(): c}
        for i in S:
            word = ctx.elem_mul(word, {(perm[i],): ctx.one_coeff()})
        out = ctx.elem_add(out, word)
    return CohomologyElement(ctx, ctx.to_module(ctx.reduce(out)))


def a0_projection(x: CohomologyElement) -> ExteriorElement:
    """Degree-zero coefficient part, through the divisor map, reduced mod L."""
    ctx = x.ctx
    out = ExteriorElement()
    for S, c in x.coords.items():
        n = c.int_part()
        if n:
            out = out + ctx.os.normal_form_monomial(S).scale(n)
    return out


def tame_symbol(arr: Arrangement, units):
    """Top-degree symbol extraction of a product of N+1 unit classes.

    Returns a sorted list of (field unit, N-subset); requires the
    normal-crossing condition at infinity.
    """
    if not is_normal_crossing(arr):
        raise NotNormalCrossing("tame symbols need the normal-crossing condition")
    units = list(units)
    if len(units) != arr.dimension + 1:
        raise PreconditionViolated(
            f"need exactly N+1 = {arr.dimension + 1} units, got {len(units)}"
        )
    w = reduce_word(arr, units)
    b = arr.backend
    out = []
    for S, c in w.coords.items():
        if len(S) != arr.dimension:
            continue
        deg1 = c.degree_part(1)
        if not deg1.terms:
            continue
        alpha = deg1.degree_one_unit()
        if b.eq(alpha, b.one):
            continue
        out.append((alpha, S))
    out.sort(key=lambda t: t[1])
    return out


def tame_symbol_line(backend, points, f: UnitElement, g: UnitElement):
    """Classical tame symbol on the punctured affine line, by direct formula.

    points are the removed points p_i; f and g are monomial units in the
    forms (x - p_i).  Returns a sorted list of (field unit, point index).
    """
    pts = list(points)
    if len({backend.to_str(p) for p in pts}) != len(pts):
        raise PreconditionViolated("points must be distinct")
    out = []
    for i, p in enumerate(pts):
        vf, vg = f.exponents[i], g.exponents[i]
        if vf == 0 and vg == 0:
            continue
        # value of f^vg / g^vf at p; the (x-p) exponents cancel exactly
        val = backend.one
        val = _scalar_pow(backend, f.scalar, vg, val)
        val = _scalar_pow(backend, g.scalar, -vf, val)
        for jj, pj in enumerate(pts):
            if jj == i:
                assert f.exponents[i] * vg - g.exponents[i] * vf == 0
                continue
            e = f.exponents[jj] * vg - g.exponents[jj] * vf
            val = _scalar_pow(backend, backend.sub(p, pj), e, val)
        if (vf * vg) % 2:
            val = backend.neg(val)
        if not backend.eq(val, backend.one):
            out.append((val, i))
    return out


def _scalar_pow(backend, base, e: int, acc):
    for _ in range(abs(e)):
        acc = backend.mul(acc, base) if e > 0 else backend.div(acc, base)
    return acc
