"""Seeded randomized relation suite: the executable test surface of the ring.

Families of exact instances:

* squares: [u]^2 + [-1][u] for random monomial units u;
* alternating relations: circuit dependencies scaled by random units, and
  (u, -u) pairs;
* product relations: empty-flat dependencies (which sum to 1), optionally
  padded by a constant mu into ((1-mu) f_1, ..., (1-mu) f_t, mu), and
  concatenations of two such tuples weighted mu / 1-mu;
* the recursion identity R(f_1, ..., f_{t-1}, -1) = (-1)^t [f_1]...[f_{t-1}].

On the rationals backend the padding constants are restricted to 2, -1, 1/2
so the coefficient products stay inside the syntactic rewrite rules; prime
fields take any constant with mu, 1-mu nonzero.  Every instance must reduce
to zero exactly; failures are collected, never swallowed.
"""

from __future__ import annotations

import random

from .arrangement import Arrangement, UnitElement, circuits
from .ring import reduce_word, rel_R, rel_square, rel_sum_one
from .symbols import Tri


def random_unit_monomial(arr: Arrangement, rng: random.Random, maxe: int = 2) -> UnitElement:
    b = arr.backend
    lam = b.random_unit(rng, small=True)
    while b.is_zero(lam):
        lam = b.random_unit(rng, small=True)
    exps = tuple(rng.randint(-maxe, maxe) for _ in range(arr.r))
    return UnitElement(lam, exps)


def _safe_padding_constants(arr: Arrangement):
    b = arr.backend
    if b.kind == "q":
        raw = ["2", "-1", "1/2"]
    elif b.kind == "fp":
        raw = [str(k) for k in range(2, min(b.p, 12))]
    else:
        raw = ["2", "-1", "1/2"]
    out = []
    for s in raw:
        mu = b.parse(s)
        if not b.is_zero(mu) and not b.is_zero(b.sub(b.one, mu)):
            out.append(mu)
    return out


def _dependency_units(arr: Arrangement, dep):
    return [
        UnitElement(lam, tuple(1 if i == k else 0 for i in range(arr.r)))
        for k, lam in zip(dep.indices, dep.scalars)
    ]


def _sum_one_tuples(arr: Arrangement, rng: random.Random):
    """One batch of tuples of units summing to 1."""
    b = arr.backend
    pads = _safe_padding_constants(arr)
    tuples = []
    bases = [_dependency_units(arr, dep) for dep in circuits(arr) if dep.constant == 1]
    if pads:
        mu = rng.choice(pads)
        tuples.append([UnitElement(mu, (0,) * arr.r), UnitElement(b.sub(b.one, mu), (0,) * arr.r)])
    for base in bases:
        tuples.append(base)
        if pads:
            mu = rng.choice(pads)
            om = b.sub(b.one, mu)
            padded = [UnitElement(b.mul(f.scalar, om), f.exponents) for f in base]
            padded.append(UnitElement(mu, (0,) * arr.r))
            tuples.append(padded)
    if len(bases) >= 2 and pads:
        mu = rng.choice(pads)
        om = b.sub(b.one, mu)
        f, g = rng.sample(bases, 2)
        tuples.append(
            [UnitElement(b.mul(u.scalar, mu), u.exponents) for u in f]
            + [UnitElement(b.mul(u.scalar, om), u.exponents) for u in g]
        )
    return tuples


def _sum_zero_tuples(arr: Arrangement, rng: random.Random):
    b = arr.backend
    tuples = []
    u = random_unit_monomial(arr, rng, maxe=1)
    tuples.append([u, UnitElement(b.neg(u.scalar), u.exponents)])
    for dep in circuits(arr):
        if dep.constant != 0:
            continue
        base = _dependency_units(arr, dep)
        tuples.append(base)
        v = random_unit_monomial(arr, rng, maxe=1)
        tuples.append([f.times(v, b) for f in base])
    return tuples


def relation_suite(arr: Arrangement, seed: int, trials: int):
    """Run `trials` exact relation instances; returns a deterministic report."""
    rng = random.Random(seed)
    counts = {"square": 0, "sum_one": 0, "sum_zero": 0, "recursion_identity": 0}
    failures = []
    b = arr.backend

    def record(kind, elem, detail):
        counts[kind] += 1
        if elem.is_zero() != Tri.ZERO:
            failures.append({"family": kind, "detail": detail, "value": elem.render()})

    done = 0
    while done < trials:
        u = random_unit_monomial(arr, rng)
        record("square", rel_square(arr, u), _render_units(arr, [u]))
        done += 1
        if done >= trials:
            break
        for tup in _sum_zero_tuples(arr, rng):
            record("sum_zero", rel_R(arr, tup), _render_units(arr, tup))
            done += 1
            if done >= trials:
                break
        if done >= trials:
            break
        for tup in _sum_one_tuples(arr, rng):
            record("sum_one", rel_sum_one(arr, tup), _render_units(arr, tup))
            done += 1
            if done >= trials:
                break
            # recursion identity: append -1 and compare against the plain word
            tup2 = tup + [UnitElement(b.neg(b.one), (0,) * arr.r)]
            t = len(tup2)
            lhs = rel_R(arr, tup2)
            rhs = reduce_word(arr, tup).scale((-1) ** t)
            counts["recursion_identity"] += 1
            if lhs.eq(rhs) != Tri.ZERO:
                failures.append(
                    {"family": "recursion_identity", "detail": _render_units(arr, tup),
                     "value": (lhs - rhs).render()}
                )
            done += 1
            if done >= trials:
                break
    return {
        "trials": done,
        "counts": counts,
        "failures": failures,
        "failure_count": len(failures),
    }


def _render_units(arr: Arrangement, units):
    b = arr.backend
    return [
        {"scalar": b.to_str(u.scalar), "exponents": list(u.exponents)} for u in units
    ]
