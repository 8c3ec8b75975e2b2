"""Cohomology-side Steenrod engine.

Adem normalization of Sq composites into the admissible basis, the unstable
action on GF(2) polynomial algebras through the splitting principle (each
Stiefel-Whitney class is represented by an elementary symmetric polynomial),
Wu-formula verification, suspension bookkeeping, and the suspension chain
check that rules out odd square candidates for k = 4r - 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Tuple

from .gf2 import binom_mod2

# ---------------------------------------------------------------------------
# Steenrod composites Sq^{a_1} ... Sq^{a_r} and Adem normalization


@dataclass(frozen=True)
class SqElement:
    """GF(2) sum of composites Sq^{a_1}...Sq^{a_r}, all of one total degree.

    Each term is a tuple of positive exponents; the empty frozenset is the
    zero element.  A term is admissible when a_j >= 2 a_{j+1} throughout.
    """

    terms: frozenset

    def __post_init__(self):
        degrees = set()
        for word in self.terms:
            if not word or any(a < 1 for a in word):
                raise ValueError("Sq exponents must be positive integers")
            degrees.add(sum(word))
        if len(degrees) > 1:
            raise ValueError("SqElement terms must share one total degree")

    @classmethod
    def from_words(cls, words: Iterable[Tuple[int, ...]]) -> "SqElement":
        acc = set()
        for w in words:
            w = tuple(w)
            acc.symmetric_difference_update({w})
        return cls(frozenset(acc))

    @property
    def degree(self) -> Optional[int]:
        for word in self.terms:
            return sum(word)
        return None

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SqElement") -> "SqElement":
        return SqElement(self.terms ^ other.terms)

    def render(self) -> str:
        if not self.terms:
            return "0"
        words = sorted(self.terms, reverse=True)
        return " + ".join(" ".join(f"Sq^{a}" for a in word) for word in words)


def sq(*exponents: int) -> SqElement:
    return SqElement(frozenset({tuple(exponents)}))


def is_admissible(word: Tuple[int, ...]) -> bool:
    return all(word[j] >= 2 * word[j + 1] for j in range(len(word) - 1))


@lru_cache(maxsize=None)
def _normalize_word(word: Tuple[int, ...]) -> frozenset:
    for j in range(len(word) - 1):
        a, b = word[j], word[j + 1]
        if a < 2 * b:
            # Adem relation: Sq^a Sq^b = sum_c C(b-c-1, a-2c) Sq^{a+b-c} Sq^c
            out = frozenset()
            for c in range(a // 2 + 1):
                if binom_mod2(b - c - 1, a - 2 * c):
                    middle = (a + b - c,) if c == 0 else (a + b - c, c)
                    out ^= _normalize_word(word[:j] + middle + word[j + 2:])
            return out
    return frozenset({word})


def adem_normalize(e: SqElement) -> SqElement:
    """Rewrite into the admissible basis.  Idempotent."""
    acc = frozenset()
    for word in e.terms:
        acc ^= _normalize_word(word)
    return SqElement(acc)


# ---------------------------------------------------------------------------
# Sparse symmetric polynomials over GF(2)


def _term_degree(term: Tuple[int, ...]) -> int:
    return sum(term)


@dataclass(frozen=True)
class SymPoly:
    """Homogeneous polynomial in GF(2)[x_1..x_n], stored as exponent vectors.

    Symmetry is not enforced structurally; the operations used here preserve
    it, and sq_act asserts it in debug mode.
    """

    nvars: int
    terms: frozenset

    def __post_init__(self):
        degrees = set()
        for t in self.terms:
            if len(t) != self.nvars or any(e < 0 for e in t):
                raise ValueError("exponent vectors must match nvars with entries >= 0")
            degrees.add(sum(t))
        if len(degrees) > 1:
            raise ValueError("SymPoly must be homogeneous")

    @classmethod
    def zero(cls, nvars: int) -> "SymPoly":
        return cls(nvars, frozenset())

    @classmethod
    def one(cls, nvars: int) -> "SymPoly":
        return cls(nvars, frozenset({(0,) * nvars}))

    @property
    def degree(self) -> Optional[int]:
        for t in self.terms:
            return sum(t)
        return None

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SymPoly") -> "SymPoly":
        if self.nvars != other.nvars:
            raise ValueError("cannot add polynomials in different variable counts")
        return SymPoly(self.nvars, self.terms ^ other.terms)

    def __mul__(self, other: "SymPoly") -> "SymPoly":
        if self.nvars != other.nvars:
            raise ValueError("cannot multiply polynomials in different variable counts")
        parity = {}
        for s in self.terms:
            for t in other.terms:
                m = tuple(a + b for a, b in zip(s, t))
                parity[m] = parity.get(m, 0) ^ 1
        return SymPoly(self.nvars, frozenset(m for m, p in parity.items() if p))

    def square(self) -> "SymPoly":
        # Frobenius: squaring is term-wise in characteristic 2.
        return SymPoly(self.nvars, frozenset(tuple(2 * e for e in t) for t in self.terms))

    def render_x(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for t in sorted(self.terms, reverse=True):
            factors = [f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(t) if e]
            out.append("*".join(factors) if factors else "1")
        return " + ".join(out)


def elementary(nvars: int, i: int) -> SymPoly:
    """The i-th elementary symmetric polynomial in nvars variables."""
    if i < 0:
        raise ValueError("elementary symmetric index must be >= 0")
    if i == 0:
        return SymPoly.one(nvars)
    if i > nvars:
        return SymPoly.zero(nvars)
    terms = set()
    for combo in itertools.combinations(range(nvars), i):
        t = [0] * nvars
        for j in combo:
            t[j] = 1
        terms.add(tuple(t))
    return SymPoly(nvars, frozenset(terms))


def w_poly(nvars: int, powers: Iterable[Tuple[int, int]]) -> SymPoly:
    """Polynomial representative of a w-monomial, e.g. [(1,2),(3,1)] = w1^2*w3."""
    p = SymPoly.one(nvars)
    for index, exp in powers:
        if index < 1 or exp < 0:
            raise ValueError("w-monomial needs indices >= 1 and exponents >= 0")
        base = elementary(nvars, index)
        for _ in range(exp):
            p = p * base
    return p


def _is_symmetric(p: SymPoly) -> bool:
    for t in p.terms:
        for j in range(p.nvars - 1):
            swapped = list(t)
            swapped[j], swapped[j + 1] = swapped[j + 1], swapped[j]
            if tuple(swapped) not in p.terms:
                return False
    return True


def _submasks(e: int):
    """All s with s & e == s, i.e. C(e, s) odd, in decreasing order."""
    s = e
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & e


def sq_act(a: int, p: SymPoly) -> SymPoly:
    """Degree-(deg p + a) component of the total square of p.

    On a variable Sq(x) = x + x^2; the Cartan rule makes the total square
    multiplicative, so on a monomial the component is a sum over ways of
    raising each exponent e_m by a submask j_m of e_m with sum(j) = a.
    Instability (zero above the degree, squaring at the degree) falls out.
    """
    if a < 0:
        raise ValueError("sq_act index must be >= 0")
    if a == 0:
        return p
    parity = {}
    n = p.nvars
    for term in p.terms:
        suffix_max = [0] * (n + 1)
        for m in range(n - 1, -1, -1):
            suffix_max[m] = suffix_max[m + 1] + term[m]

        def walk(m: int, budget: int, acc: tuple):
            if budget > suffix_max[m]:
                return
            if m == n:
                parity[acc] = parity.get(acc, 0) ^ 1
                return
            for j in _submasks(term[m]):
                if j <= budget:
                    walk(m + 1, budget - j, acc + (term[m] + j,))

        walk(0, a, ())
    result = SymPoly(n, frozenset(t for t, v in parity.items() if v))
    if __debug__ and len(result.terms) * n < 200_000:
        assert _is_symmetric(result) or not _is_symmetric(p)
    return result


def sq_element_act(e: SqElement, p: SymPoly) -> SymPoly:
    """Action of a sum of composites; rightmost factor acts first."""
    total = SymPoly.zero(p.nvars)
    for word in e.terms:
        q = p
        for a in reversed(word):
            q = sq_act(a, q)
        total = total + q
    return total


def to_w_basis(p: SymPoly) -> List[Tuple[Tuple[int, int], ...]]:
    """Greedy decomposition of a symmetric polynomial into w-monomials.

    Returns the GF(2) sum as a list of monomials, each a tuple of
    (index, exponent) pairs sorted by index.  Only used for readable output.
    """
    if not _is_symmetric(p):
        raise ValueError("w-basis decomposition needs a symmetric polynomial")
    out = []
    rest = p
    while not rest.is_zero:
        lead = max(rest.terms)  # lex-leading term of a symmetric poly is a partition
        lam = sorted(lead, reverse=True)
        powers = []
        for i in range(len(lam)):
            nxt = lam[i + 1] if i + 1 < len(lam) else 0
            if lam[i] - nxt:
                powers.append((i + 1, lam[i] - nxt))
        powers = tuple(powers)
        out.append(powers)
        rest = rest + w_poly(p.nvars, powers)
    return sorted(out)


def render_w_monomial(powers: Tuple[Tuple[int, int], ...]) -> str:
    if not powers:
        return "1"
    return "*".join(f"w{i}" + (f"^{e}" if e > 1 else "") for i, e in powers)


def render_w_sum(monomials: List[Tuple[Tuple[int, int], ...]]) -> str:
    if not monomials:
        return "0"
    return " + ".join(render_w_monomial(m) for m in monomials)


# ---------------------------------------------------------------------------
# Wu formula


def wu_rhs(i: int, j: int, nvars: int) -> SymPoly:
    """Right side of the Wu formula: sum_t C(j-i+t-1, t) w_{i-t} w_{j+t}."""
    total = SymPoly.zero(nvars)
    for t in range(i + 1):
        if binom_mod2(j - i + t - 1, t):
            total = total + elementary(nvars, i - t) * elementary(nvars, j + t)
    return total


def wu_check(i: int, j: int, k: int) -> int:
    """1 iff Sq^i(w_j), computed by the splitting principle, matches the
    Wu formula in k variables.  Arguments must satisfy 1 <= i <= j <= k."""
    if not 1 <= i <= j <= k:
        raise ValueError(f"wu_check requires 1 <= i <= j <= k, got ({i}, {j}, {k})")
    lhs = sq_act(i, elementary(k, j))
    return 1 if lhs == wu_rhs(i, j, k) else 0


# ---------------------------------------------------------------------------
# Suspension bookkeeping and the k = 4r - 1 exclusion chain


@dataclass(frozen=True)
class SuspendedClass:
    """A cohomology class sigma^s(payload); operations act on the payload."""

    susp: int
    payload: SymPoly

    def __post_init__(self):
        if self.susp < 0:
            raise ValueError("suspension count must be >= 0")

    @property
    def degree(self) -> Optional[int]:
        d = self.payload.degree
        return None if d is None else d + self.susp

    @property
    def is_zero(self) -> bool:
        return self.payload.is_zero

    def render(self) -> str:
        if self.payload.is_zero:
            return "0"
        body = render_w_sum(to_w_basis(self.payload))
        return f"s^{self.susp}({body})" if self.susp else body


def suspend_act(a: int, c: SuspendedClass) -> SuspendedClass:
    """Steenrod squares commute with suspension, so act on the payload."""
    if a < 1:
        raise ValueError("suspend_act index must be >= 1")
    return SuspendedClass(c.susp, sq_act(a, c.payload))


@dataclass(frozen=True)
class ChainStep:
    label: str
    value: str
    ok: bool


@dataclass(frozen=True)
class SuspensionChainReport:
    r: int
    k: int
    nvars: int
    adem_identity_ok: bool
    steps: Tuple[ChainStep, ...]
    final: SuspendedClass
    ok: bool


def suspension_chain_check(r: int) -> SuspensionChainReport:
    """Verify that Sq^{k+3} annihilates sigma^2 w_k for k = 4r - 1.

    A stable class whose double suspension has square Hurewicz image would
    force Sq^{k+3} to act non-trivially on the suspended universal class;
    this chain computes that action to be zero, step by displayed step,
    in k variables.
    """
    if r < 1:
        raise ValueError("suspension_chain_check requires r >= 1")
    k = 4 * r - 1
    n = k

    identity = adem_normalize(sq(2, 4 * r) + sq(1, 4 * r, 1))
    adem_ok = identity == sq(4 * r + 2)

    w_k = elementary(n, k)
    w1_wk = elementary(n, 1) * w_k

    steps = []

    # Sq^{4r} sigma^2 w_k dies: the index exceeds the payload degree.
    v1 = suspend_act(4 * r, SuspendedClass(2, w_k))
    steps.append(ChainStep(f"Sq^{4 * r} s^2(w{k})", v1.render(), v1.is_zero))

    # Sq^1 sigma^2 w_k = sigma^2 w_1 w_k, the i = 1 Wu value.
    v2 = suspend_act(1, SuspendedClass(2, w_k))
    ok2 = v2.payload == w1_wk
    steps.append(ChainStep(f"Sq^1 s^2(w{k})", v2.render(), ok2))

    # Sq^{4r} sigma^2 (w_1 w_k) is the top-degree square.
    v3 = suspend_act(4 * r, SuspendedClass(2, w1_wk))
    sq_w1wk = w1_wk.square()
    ok3 = v3.payload == sq_w1wk
    steps.append(ChainStep(f"Sq^{4 * r} s^2(w1*w{k})", v3.render(), ok3))

    # The square is itself a Sq^1 image: Sq^1 (w_1 w_k^2) = w_1^2 w_k^2.
    v4 = sq_act(1, elementary(n, 1) * w_k.square())
    ok4 = v4 == sq_w1wk
    steps.append(ChainStep(f"Sq^1 (w1*w{k}^2)", render_w_sum(to_w_basis(v4)), ok4))

    # Sq^1 of the square vanishes, matching Sq^1 Sq^1 = 0.
    v5 = suspend_act(1, SuspendedClass(2, sq_w1wk))
    steps.append(ChainStep(f"Sq^1 s^2(w1^2*w{k}^2)", v5.render(), v5.is_zero))

    final = v5
    ok = adem_ok and all(s.ok for s in steps) and final.is_zero
    return SuspensionChainReport(r, k, n, adem_ok, tuple(steps), final, ok)
