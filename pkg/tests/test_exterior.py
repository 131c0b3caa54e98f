from itertools import combinations
from math import comb

from hypothesis import given, settings
from hypothesis import strategies as st

from arrcoh.arrangement import is_normal_crossing
from arrcoh.exterior import (
    ExteriorElement,
    OSContext,
    exterior_product,
    graded_rank,
    graded_rank_rational,
    nbc_basis,
    os_generators,
)

mono = ExteriorElement.monomial


def test_product_examples():
    assert exterior_product(mono([0]), mono([1])) == mono([0, 1])
    assert exterior_product(mono([1]), mono([0])) == mono([0, 1], -1)
    assert exterior_product(mono([0]), mono([0])).is_zero()


small_elems = st.lists(
    st.tuples(st.lists(st.integers(0, 4), min_size=0, max_size=3, unique=True),
              st.integers(-3, 3)),
    min_size=0, max_size=4,
).map(lambda items: sum((mono(m, c) for m, c in items), ExteriorElement()))


@given(small_elems, small_elems)
@settings(max_examples=50)
def test_product_anticommutes_on_degree_one(a, b):
    # for degree-one parts x, y:  x ^ y = - y ^ x
    a1 = ExteriorElement({m: c for m, c in a.terms.items() if len(m) == 1})
    b1 = ExteriorElement({m: c for m, c in b.terms.items() if len(m) == 1})
    assert (a1.wedge(b1) + b1.wedge(a1)).is_zero()


@given(small_elems, small_elems, small_elems)
@settings(max_examples=50)
def test_product_associative(a, b, c):
    assert a.wedge(b).wedge(c) == a.wedge(b.wedge(c))


def test_os_generators_examples(q_named):
    t_gens = os_generators(q_named["triangle_concurrent"])
    assert len(t_gens) == 1
    assert t_gens[0] == ExteriorElement({(1, 2): 1, (0, 2): -1, (0, 1): 1})
    l2 = os_generators(q_named["parallel_pair"])
    assert l2 == [mono([0, 1])]
    assert os_generators(q_named["boolean2"]) == []


def test_graded_rank_examples(q_named):
    gr = graded_rank(q_named["triangle_concurrent"])
    assert gr.ranks == (1, 3, 2, 0)
    assert all(d == 1 for degree in gr.elementary_divisors for d in degree)
    assert graded_rank(q_named["parallel_pair"]).ranks == (1, 2, 0)
    assert graded_rank(q_named["boolean2"]).ranks == (1, 2, 1)


def test_graded_rank_dual_route(q_corpus):
    for _, arr in q_corpus:
        gr = graded_rank(arr)
        assert tuple(gr.ranks) == graded_rank_rational(arr)


def test_nbc_examples(q_named):
    t = q_named["triangle_concurrent"]
    assert set(nbc_basis(t)) == {(), (0,), (1,), (2,), (0, 1), (0, 2)}
    assert set(nbc_basis(q_named["boolean2"])) == {(), (0,), (1,), (0, 1)}
    assert set(nbc_basis(q_named["parallel_pair"])) == {(), (0,), (1,)}


def test_nbc_counts_match_ranks(q_corpus):
    for _, arr in q_corpus:
        gr = graded_rank(arr)
        basis = nbc_basis(arr)
        for d in range(arr.r + 1):
            assert sum(1 for m in basis if len(m) == d) == gr.ranks[d]


def test_normal_crossing_rank_formula(q_corpus):
    for _, arr in q_corpus:
        if not is_normal_crossing(arr):
            continue
        gr = graded_rank(arr)
        for d in range(arr.r + 1):
            expected = comb(arr.r, d) if d <= arr.dimension else 0
            assert gr.ranks[d] == expected


def test_ideal_closure_under_reduction(q_corpus):
    # generator times any monomial reduces to zero against the nbc span
    for _, arr in q_corpus:
        ctx = OSContext(arr)
        for g in os_generators(arr):
            for size in range(0, arr.r - len(next(iter(g.terms))) + 1):
                for extra in combinations(range(arr.r), size):
                    prod = mono(extra).wedge(g)
                    assert ctx.normal_form(prod).is_zero()


def test_normal_form_idempotent_on_basis(q_corpus):
    for _, arr in q_corpus:
        ctx = OSContext(arr)
        for m in nbc_basis(arr):
            assert ctx.normal_form_monomial(m) == mono(m)
