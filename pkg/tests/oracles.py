"""Independent reference computations for the test suite.

Everything here deliberately avoids the package's own code paths: binomials
come from math.comb, partitions from filtered combinations, and polynomial
expansions from integer-coefficient Counters reduced mod 2 at the end.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from functools import lru_cache


def pascal_mod2(a: int, b: int) -> int:
    return math.comb(a, b) % 2 if 0 <= b <= a else 0


def partitions_exact(n: int, k: int):
    """Sorted index lists of length k, entries >= 1, summing to n."""
    if n < k:
        return []
    out = []
    for combo in itertools.combinations_with_replacement(range(1, n - k + 2), k):
        if sum(combo) == n:
            out.append(combo)
    return sorted(out)


@lru_cache(maxsize=None)
def partition_count(n: int, k: int) -> int:
    """Number of partitions of n into exactly k parts, by the recurrence."""
    if n == 0 and k == 0:
        return 1
    if n <= 0 or k <= 0:
        return 0
    return partition_count(n - 1, k - 1) + partition_count(n - k, k)


def weak_compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in weak_compositions(total - first, parts - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# Integer-coefficient polynomials on exponent vectors


def int_poly_mul(p: Counter, q: Counter) -> Counter:
    out: Counter = Counter()
    for s, cs in p.items():
        for t, ct in q.items():
            out[tuple(a + b for a, b in zip(s, t))] += cs * ct
    return out


def int_elementary(nvars: int, i: int) -> Counter:
    if i == 0:
        return Counter({(0,) * nvars: 1})
    out: Counter = Counter()
    for combo in itertools.combinations(range(nvars), i):
        t = [0] * nvars
        for j in combo:
            t[j] = 1
        out[tuple(t)] += 1
    return out


def int_w_monomial(nvars: int, powers) -> Counter:
    p = Counter({(0,) * nvars: 1})
    for index, exp in powers:
        for _ in range(exp):
            p = int_poly_mul(p, int_elementary(nvars, index))
    return p


def int_coeff_mod2(p: Counter, expvec) -> int:
    return p.get(tuple(expvec), 0) % 2


def int_sq_component(p: Counter, a: int) -> Counter:
    """Degree-(deg + a) part of the total square, by literal expansion of
    the product of (x_m + x_m^2)^{e_m} with integer binomials."""
    out: Counter = Counter()
    for term, coeff in p.items():
        choices = [range(e + 1) for e in term]
        for js in itertools.product(*choices):
            if sum(js) != a:
                continue
            weight = 1
            for e, j in zip(term, js):
                weight *= math.comb(e, j)
            out[tuple(e + j for e, j in zip(term, js))] += coeff * weight
    return out


def counter_mod2(p: Counter) -> frozenset:
    return frozenset(t for t, c in p.items() if c % 2)
