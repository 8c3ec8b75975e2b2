"""The monomial algebra of H_*BO(k) and reduced H_*MO(k).

Basis monomials e_I = e_{i_1}...e_{i_k} are sorted index lists; the Thom
complex MO(k) is the quotient of BO(k) by BO(k-1), so MO monomials need
every index >= 1 and any splitting that produces an index 0 dies in the
quotient, except for the two unit terms of the coproduct.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Tuple

from .gf2 import binom_mod2
from .steenrod import SymPoly

CONTEXT_MO = "MO"
CONTEXT_BO = "BO"


@dataclass(frozen=True)
class EMonomial:
    """e_{i_1}...e_{i_k} with indices sorted ascending.

    The empty index list is the distinguished unit monomial; it only ever
    legitimately appears inside tensor unit terms.
    """

    indices: Tuple[int, ...]
    context: str = CONTEXT_MO

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(sorted(self.indices)))
        if self.context not in (CONTEXT_MO, CONTEXT_BO):
            raise ValueError(f"unknown context {self.context!r}")
        low = 1 if self.context == CONTEXT_MO else 0
        if any(i < low for i in self.indices):
            raise ValueError(f"{self.context} monomial indices must be >= {low}")

    @property
    def k(self) -> int:
        return len(self.indices)

    @property
    def dim(self) -> int:
        return sum(self.indices)

    @property
    def is_unit(self) -> bool:
        return not self.indices

    def merge(self, other: "EMonomial") -> "EMonomial":
        if self.context != other.context:
            raise ValueError("cannot merge monomials from different contexts")
        return EMonomial(self.indices + other.indices, self.context)

    def render(self) -> str:
        if self.is_unit:
            return "1"
        return "e[" + ",".join(str(i) for i in self.indices) + "]"


def emon(*indices: int, context: str = CONTEXT_MO) -> EMonomial:
    return EMonomial(tuple(indices), context)


def _gf2_terms(pairs: Iterable) -> frozenset:
    parity: Dict = {}
    for item in pairs:
        parity[item] = parity.get(item, 0) ^ 1
    return frozenset(t for t, p in parity.items() if p)


@dataclass(frozen=True)
class MOClass:
    """A GF(2) sum of EMonomials sharing one (k, dimension)."""

    k: int
    dim: int
    terms: frozenset

    def __post_init__(self):
        for t in self.terms:
            if t.k != self.k or t.dim != self.dim:
                raise ValueError("MOClass terms must share k and dimension")

    @classmethod
    def from_monomials(cls, k: int, dim: int, monomials: Iterable[EMonomial]) -> "MOClass":
        return cls(k, dim, _gf2_terms(monomials))

    @classmethod
    def single(cls, m: EMonomial) -> "MOClass":
        return cls(m.k, m.dim, frozenset({m}))

    @classmethod
    def zero(cls, k: int, dim: int) -> "MOClass":
        return cls(k, dim, frozenset())

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "MOClass") -> "MOClass":
        if (self.k, self.dim) != (other.k, other.dim):
            raise ValueError("cannot add classes of different (k, dimension)")
        return MOClass(self.k, self.dim, self.terms ^ other.terms)

    def coefficient(self, m: EMonomial) -> int:
        return 1 if m in self.terms else 0

    def render(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(t.render() for t in sorted(self.terms, key=lambda m: m.indices))


@dataclass(frozen=True)
class TensorMOClass:
    """GF(2) sum of pairs u (x) v of EMonomials; units are empty monomials."""

    pairs: frozenset

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[EMonomial, EMonomial]]) -> "TensorMOClass":
        return cls(_gf2_terms(pairs))

    @property
    def is_zero(self) -> bool:
        return not self.pairs

    def __add__(self, other: "TensorMOClass") -> "TensorMOClass":
        return TensorMOClass(self.pairs ^ other.pairs)

    def product(self, other: "TensorMOClass") -> "TensorMOClass":
        """Componentwise external merge.

        A unit merged with a non-unit stands for e_0^k times a positive
        monomial, which dies in the Thom quotient; unit times unit stays
        the unit.
        """
        out = []
        for (l1, r1) in self.pairs:
            for (l2, r2) in other.pairs:
                if l1.is_unit != l2.is_unit or r1.is_unit != r2.is_unit:
                    continue
                out.append((l1.merge(l2), r1.merge(r2)))
        return TensorMOClass.from_pairs(out)

    def render(self) -> str:
        if not self.pairs:
            return "0"
        ordered = sorted(self.pairs, key=lambda p: (p[0].indices, p[1].indices))
        return " + ".join(f"{l.render()} (x) {r.render()}" for l, r in ordered)


# ---------------------------------------------------------------------------
# Basis enumeration


def _ascending_parts(total: int, slots: int, minimum: int):
    if slots == 0:
        if total == 0:
            yield ()
        return
    first = minimum
    while first * slots <= total:
        for rest in _ascending_parts(total - first, slots - 1, first):
            yield (first,) + rest
        first += 1


@lru_cache(maxsize=None)
def _mo_basis_cached(k: int, n: int) -> tuple:
    return tuple(EMonomial(p) for p in _ascending_parts(n, k, 1))


def mo_basis(k: int, n: int) -> List[EMonomial]:
    """All MO(k) monomials of dimension n, in lexicographic order."""
    if k < 1:
        raise ValueError("mo_basis requires k >= 1")
    if n < 0:
        return []
    return list(_mo_basis_cached(k, n))


# ---------------------------------------------------------------------------
# Product, coproduct, dual Steenrod action, Kronecker pairing


def mo_product(a: MOClass, b: MOClass) -> MOClass:
    """Bilinear extension of index-list merging; lands in k_a + k_b letters."""
    merged = []
    for s in a.terms:
        for t in b.terms:
            merged.append(s.merge(t))
    return MOClass.from_monomials(a.k + b.k, a.dim + b.dim, merged)


def _coproduct_monomial(m: EMonomial) -> List[Tuple[EMonomial, EMonomial]]:
    unit = EMonomial((), m.context)
    pairs = [(m, unit), (unit, m)]
    # Non-unit terms need every index >= 1 on both sides, so each index i
    # contributes splittings j in [1, i-1] only.
    ranges = [range(1, i) for i in m.indices]
    for choice in itertools.product(*ranges):
        left = EMonomial(choice, m.context)
        right = EMonomial(tuple(i - j for i, j in zip(m.indices, choice)), m.context)
        pairs.append((left, right))
    return pairs


def mo_coproduct(c: MOClass, reduced: bool = False) -> TensorMOClass:
    """Thom-space coproduct of an MO class; reduced drops the unit terms."""
    pairs: Dict = {}
    unit = EMonomial((), CONTEXT_MO)
    for m in c.terms:
        if m.context != CONTEXT_MO:
            raise ValueError("mo_coproduct is defined in the MO context only")
        for p in _coproduct_monomial(m):
            pairs[p] = pairs.get(p, 0) ^ 1
        if reduced:
            for p in {(m, unit), (unit, m)}:
                pairs[p] = pairs.get(p, 0) ^ 1
    return TensorMOClass(frozenset(p for p, v in pairs.items() if v))


def _sq_dual_monomial(i: int, m: EMonomial) -> List[EMonomial]:
    """Cartan expansion of the dual square over the factors of e_I.

    Factor e_j absorbs a with coefficient C(j - a, a) and becomes e_{j-a};
    in the MO context a resulting index 0 kills the term.
    """
    out = []
    idx = m.indices
    n = len(idx)
    suffix = [0] * (n + 1)
    for p in range(n - 1, -1, -1):
        suffix[p] = suffix[p + 1] + idx[p]

    def walk(pos: int, budget: int, acc: tuple):
        if budget > suffix[pos]:
            return
        if pos == n:
            if budget == 0:
                out.append(acc)
            return
        j = idx[pos]
        for a in range(0, min(budget, j) + 1):
            if binom_mod2(j - a, a):
                walk(pos + 1, budget - a, acc + (j - a,))

    walk(0, i, ())
    result = []
    for acc in out:
        if m.context == CONTEXT_MO and 0 in acc:
            continue
        result.append(EMonomial(acc, m.context))
    return result


def sq_dual(i: int, c: MOClass) -> MOClass:
    """Dual Steenrod action Sq^i_* on an MO (or BO) class."""
    if i < 1:
        raise ValueError("sq_dual index must be >= 1")
    collected = []
    for m in c.terms:
        collected.extend(_sq_dual_monomial(i, m))
    return MOClass.from_monomials(c.k, c.dim - i, collected)


def kronecker_pair(p: SymPoly, m: EMonomial) -> int:
    """Pairing of a symmetric polynomial against e_I.

    Equals the coefficient of x_1^{i_1}...x_k^{i_k}; by symmetry the sorted
    exponent vector can be read off directly.
    """
    if p.nvars != m.k:
        raise ValueError("variable count must match the monomial length")
    if p.degree is not None and p.degree != m.dim:
        raise ValueError(f"degree mismatch: polynomial degree {p.degree}, monomial dimension {m.dim}")
    return 1 if m.indices in p.terms else 0


def kronecker_pair_class(p: SymPoly, c: MOClass) -> int:
    out = 0
    for m in c.terms:
        out ^= kronecker_pair(p, m)
    return out
