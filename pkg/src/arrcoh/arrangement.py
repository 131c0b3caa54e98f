"""Affine hyperplane arrangements over an exact field backend.

Hyperplanes are degree-one forms phi(x) = constant + sum coeffs_i x_i; the
arrangement keeps the original defining forms (they matter for unit classes)
and a normalized copy (first nonzero coefficient 1) used for identity tests.
Indices are 0-based throughout the package; the CLI layer renders 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .linalg import kernel_basis, matrix_rank, solve_affine
from .polynomials import poly_from_form


class ZeroForm(ValueError):
    """All coefficients of a would-be hyperplane vanish."""


class IndexOutOfRange(IndexError):
    """Hyperplane index outside the arrangement."""


@dataclass(frozen=True)
class Hyperplane:
    constant: object
    coeffs: tuple


def normalize_form(backend, constant, coeffs):
    """Scale a degree-one form so its first nonzero coefficient is 1.

    Returns (hyperplane, scale) with input = scale * normalized form.
    """
    coeffs = tuple(coeffs)
    pivot = next((i for i, a in enumerate(coeffs) if not backend.is_zero(a)), None)
    if pivot is None:
        raise ZeroForm("form has no nonzero coefficient")
    scale = coeffs[pivot]
    norm = Hyperplane(
        constant=backend.div(constant, scale),
        coeffs=tuple(backend.div(a, scale) for a in coeffs),
    )
    return norm, scale


class Arrangement:
    """Ordered list of pairwise distinct affine hyperplanes in A^N."""

    def __init__(self, backend, dimension: int, forms):
        if dimension < 0:
            raise ValueError("dimension must be >= 0")
        self.backend = backend
        self.dimension = dimension
        self.forms = tuple((c, tuple(cs)) for c, cs in forms)
        for c, cs in self.forms:
            if len(cs) != dimension:
                raise ValueError("coefficient vector length != dimension")
        self.normalized = tuple(normalize_form(backend, c, cs)[0] for c, cs in self.forms)
        keys = [self._form_key(h) for h in self.normalized]
        if len(set(keys)) != len(keys):
            raise ValueError("normalized hyperplanes must be pairwise distinct")

    @property
    def r(self) -> int:
        return len(self.forms)

    def _form_key(self, h: Hyperplane):
        b = self.backend
        return (b.to_str(h.constant),) + tuple(b.to_str(a) for a in h.coeffs)

    def key(self):
        """Canonical hashable key; order-sensitive."""
        return (
            self.backend.descriptor(),
            self.dimension,
            tuple(self._form_key(h) for h in self.normalized),
        )

    def check_index(self, j: int) -> int:
        if not 0 <= j < self.r:
            raise IndexOutOfRange(f"hyperplane index {j} out of range [0, {self.r})")
        return j

    def form_poly(self, i: int):
        c, cs = self.forms[self.check_index(i)]
        return poly_from_form(self.backend, c, cs)

    def permuted(self, order):
        """New arrangement with forms reordered: new position k holds old order[k]."""
        order = list(order)
        if sorted(order) != list(range(self.r)):
            raise ValueError("order must be a permutation of the hyperplane indices")
        return Arrangement(self.backend, self.dimension, [self.forms[i] for i in order])

    def __repr__(self):
        return f"Arrangement(N={self.dimension}, r={self.r}, field={self.backend.descriptor()})"


@dataclass(frozen=True)
class Flat:
    indices: tuple
    is_empty: bool
    codim: Optional[int]
    witness_point: Optional[tuple] = None


def flat_of(arr: Arrangement, subset) -> Flat:
    """Intersection data of the hyperplanes indexed by `subset`."""
    S = tuple(sorted(set(subset)))
    for i in S:
        arr.check_index(i)
    b = arr.backend
    if not S:
        return Flat(S, False, 0, tuple([b.zero] * arr.dimension))
    rows = [list(arr.forms[i][1]) for i in S]
    rhs = [b.neg(arr.forms[i][0]) for i in S]
    point = solve_affine(rows, rhs, b)
    if point is None:
        return Flat(S, True, None, None)
    codim = matrix_rank(rows, b)
    return Flat(S, False, codim, tuple(point))


def delete(arr: Arrangement, j: int):
    """Remove hyperplane j; returns (arrangement, index_map old -> new)."""
    arr.check_index(j)
    forms = [f for i, f in enumerate(arr.forms) if i != j]
    index_map = {i: (i if i < j else i - 1) for i in range(arr.r) if i != j}
    return Arrangement(arr.backend, arr.dimension, forms), index_map


@dataclass
class Restriction:
    """Trace of an arrangement on one of its hyperplanes.

    arrangement: the induced arrangement on Y_j (ambient dimension N-1, in the
        coordinates obtained by solving phi_j = 0 for its pivot variable);
        its defining forms are the restricted forms of first occurrences, so
        scale == 1 for every lift.
    trace_map: old index (!= j) -> new index, or None for empty traces.
    scales: old index -> mu with  phi_i|_{Y_j} = mu * (defining form of trace).
    constants: old index -> the nonzero constant phi_i|_{Y_j} for parallels.
    lifts: new index -> smallest old index mapping to it.
    """

    arrangement: Arrangement
    trace_map: dict
    scales: dict
    constants: dict
    lifts: list
    pivot_var: int


def restrict(arr: Arrangement, j: int) -> Restriction:
    arr.check_index(j)
    if arr.dimension < 1:
        raise IndexOutOfRange("cannot restrict in ambient dimension 0")
    b = arr.backend
    cj, aj = arr.forms[j]
    pivot = next(i for i, a in enumerate(aj) if not b.is_zero(a))
    # on Y_j:  x_pivot = -(cj + sum_{l != pivot} aj_l x_l) / aj_pivot
    inv = b.div(b.one, aj[pivot])
    keep = [l for l in range(arr.dimension) if l != pivot]

    def restricted_form(i):
        ci, ai = arr.forms[i]
        f = b.div(ai[pivot], aj[pivot])
        const = b.sub(ci, b.mul(f, cj))
        coeffs = tuple(b.sub(ai[l], b.mul(f, aj[l])) for l in keep)
        return const, coeffs

    forms = []
    norm_keys = []
    norm_scales = []
    trace_map, scales, constants, lifts = {}, {}, {}, []
    for i in range(arr.r):
        if i == j:
            continue
        const, coeffs = restricted_form(i)
        if all(b.is_zero(a) for a in coeffs):
            assert not b.is_zero(const), "distinct hyperplanes cannot share a trace form 0"
            trace_map[i] = None
            constants[i] = const
            continue
        norm, scale = normalize_form(b, const, coeffs)
        key = (b.to_str(norm.constant),) + tuple(b.to_str(a) for a in norm.coeffs)
        if key in norm_keys:
            k = norm_keys.index(key)
            trace_map[i] = k
            scales[i] = b.div(scale, norm_scales[k])
        else:
            k = len(forms)
            forms.append((const, coeffs))
            norm_keys.append(key)
            norm_scales.append(scale)
            trace_map[i] = k
            scales[i] = b.one
            lifts.append(i)
    sub = Arrangement(b, arr.dimension - 1, forms)
    return Restriction(sub, trace_map, scales, constants, lifts, pivot)


@dataclass(frozen=True)
class AffineDependency:
    """Exact relation  sum_k scalars[k] * phi_{indices[k]} = constant  (0 or 1)."""

    indices: tuple
    scalars: tuple
    constant: int


def affine_dependency(arr: Arrangement, subset) -> Optional[AffineDependency]:
    S = tuple(sorted(set(subset)))
    b = arr.backend
    # lambda with sum lambda_k * coeffs_{i_k} = 0: left kernel of the row matrix
    rows = [[arr.forms[i][1][l] for i in S] for l in range(arr.dimension)]
    if arr.dimension == 0:
        rows = []
    kern = kernel_basis(rows, b) if rows else [
        [b.one if k == t else b.zero for k in range(len(S))] for t in range(len(S))
    ]
    if not kern:
        return None
    consts = [
        _dot_consts(arr, b, S, v) for v in kern
    ]
    pick = next((t for t, c in enumerate(consts) if not b.is_zero(c)), None)
    if pick is not None:
        v = [b.div(x, consts[pick]) for x in kern[pick]]
        constant = 1
    else:
        v = list(kern[0])
        lead = next(x for x in v if not b.is_zero(x))
        v = [b.div(x, lead) for x in v]
        constant = 0
    support = [(i, x) for i, x in zip(S, v) if not b.is_zero(x)]
    return AffineDependency(
        indices=tuple(i for i, _ in support),
        scalars=tuple(x for _, x in support),
        constant=constant,
    )


def _dot_consts(arr, b, S, v):
    total = b.zero
    for i, x in zip(S, v):
        total = b.add(total, b.mul(x, arr.forms[i][0]))
    return total


def is_dependent(arr: Arrangement, subset) -> bool:
    """True iff the flat is empty or has codimension < |subset|."""
    S = tuple(sorted(set(subset)))
    if not S:
        return False
    rows = [list(arr.forms[i][1]) for i in S]
    return matrix_rank(rows, arr.backend) < len(S)


def circuits(arr: Arrangement):
    """All minimal dependent subsets with their exact dependencies."""
    found = []
    found_sets = []
    max_size = min(arr.r, arr.dimension + 2)
    for size in range(2, max_size + 1):
        for S in combinations(range(arr.r), size):
            sset = set(S)
            if any(c <= sset for c in found_sets):
                continue
            if is_dependent(arr, S):
                dep = affine_dependency(arr, S)
                assert dep is not None and dep.indices == S
                found.append(dep)
                found_sets.append(sset)
    return found


def minimal_empty_sets(arr: Arrangement):
    """Circuits whose flat is empty (dependency constant 1)."""
    return [c for c in circuits(arr) if c.constant == 1]


def is_normal_crossing(arr: Arrangement) -> bool:
    """Projective closures plus the hyperplane at infinity in general position.

    Homogenize each form to (constant, coeffs) in P^N and add the infinity
    form x_0; the divisor is normal crossing iff every subset of at most N+1
    of these r+1 vectors is linearly independent.
    """
    b = arr.backend
    vectors = [[c] + list(cs) for c, cs in arr.forms]
    vectors.append([b.one] + [b.zero] * arr.dimension)
    k = min(len(vectors), arr.dimension + 1)
    for size in range(2, k + 1):
        for T in combinations(vectors, size):
            if matrix_rank(list(T), b) < size:
                return False
    return True


@dataclass(frozen=True)
class UnitElement:
    """A unit of the complement: scalar * prod phi_i^{exponents_i}."""

    scalar: object
    exponents: tuple

    def times(self, other: "UnitElement", backend) -> "UnitElement":
        return UnitElement(
            backend.mul(self.scalar, other.scalar),
            tuple(a + b for a, b in zip(self.exponents, other.exponents)),
        )

    def power(self, n: int, backend) -> "UnitElement":
        if n >= 0:
            s = backend.one
            for _ in range(n):
                s = backend.mul(s, self.scalar)
        else:
            s = backend.div(backend.one, self.scalar)
            base = s
            for _ in range(-n - 1):
                s = backend.mul(s, base)
        return UnitElement(s, tuple(e * n for e in self.exponents))

    def divisor(self) -> tuple:
        return self.exponents


def unit_one(arr: Arrangement) -> UnitElement:
    return UnitElement(arr.backend.one, (0,) * arr.r)


def unit_generator(arr: Arrangement, i: int) -> UnitElement:
    arr.check_index(i)
    e = [0] * arr.r
    e[i] = 1
    return UnitElement(arr.backend.one, tuple(e))


def unit_kernel_generators(arr: Arrangement, j: int):
    """Generators of the kernel of restriction on units of delete(arr, j).

    Type 1: for hyperplanes whose traces on Y_j collide, the unit
    mu_i * phi_L / phi_i restricts to 1 (L the smallest collision partner,
    mu_i the ratio of restricted forms); type 2: for hyperplanes parallel to
    Y_j, (1/const) phi_i restricts to 1.  One generator per extra member of
    each collision class and one per parallel hyperplane.
    """
    arr.check_index(j)
    b = arr.backend
    res = restrict(arr, j)
    _, index_map = delete(arr, j)
    r_del = arr.r - 1
    gens = []
    for i in range(arr.r):
        if i == j:
            continue
        t = res.trace_map[i]
        exps = [0] * r_del
        if t is None:
            exps[index_map[i]] = 1
            gens.append(UnitElement(b.div(b.one, res.constants[i]), tuple(exps)))
            continue
        L = res.lifts[t]
        if i == L:
            continue
        exps[index_map[L]] = 1
        exps[index_map[i]] = -1
        gens.append(UnitElement(res.scales[i], tuple(exps)))
    return gens
