"""Deletion-restriction recursion: Tate-twist multiset, rank, module basis.

The splitting is non-canonical, so determinism is pinned down by two
conventions: the recursion always pivots on the first hyperplane of the
current (ordered) arrangement, and a basis monomial of the restriction lifts
through the smallest original index realizing each trace.  The twist
multiset itself is pivot-independent; only the basis depends on the order.
"""

from __future__ import annotations

from .arrangement import Arrangement, delete, restrict


def tate_twists(arr: Arrangement) -> dict:
    """Multiset {twist: multiplicity} of the free-module decomposition."""
    memo = {}

    def go(a: Arrangement) -> dict:
        key = a.key()
        if key in memo:
            return memo[key]
        if a.r == 0:
            out = {0: 1}
        else:
            del_arr, _ = delete(a, 0)
            res = restrict(a, 0)
            out = dict(go(del_arr))
            for n, mult in go(res.arrangement).items():
                out[n + 1] = out.get(n + 1, 0) + mult
        memo[key] = out
        return out

    return go(arr)


def poincare_polynomial(arr: Arrangement) -> list:
    """Coefficient vector: entry n is the multiplicity of twist n."""
    tw = tate_twists(arr)
    top = max(tw) if tw else 0
    return [tw.get(n, 0) for n in range(top + 1)]


def module_basis(arr: Arrangement) -> list:
    """Ordered list of index subsets; subset S stands for prod_{i in S} [phi_i].

    basis(arr) = basis(delete) followed by {pivot} + lift(basis(restriction)).
    """
    memo = {}

    def go(a: Arrangement) -> list:
        key = a.key()
        if key in memo:
            return memo[key]
        if a.r == 0:
            out = [()]
        else:
            del_arr, index_map = delete(a, 0)
            back = {new: old for old, new in index_map.items()}
            out = [tuple(sorted(back[i] for i in S)) for S in go(del_arr)]
            res = restrict(a, 0)
            for S in go(res.arrangement):
                lifted = tuple(sorted([0] + [res.lifts[k] for k in S]))
                out.append(lifted)
        memo[key] = out
        return out

    return go(arr)


def rank(arr: Arrangement) -> int:
    return len(module_basis(arr))
