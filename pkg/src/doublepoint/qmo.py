"""Homology of QMO(k) in the range the double point question needs.

Basis monomials are Pontrjagin products of polynomial generators Q^I e_J,
where I is admissible with excess exceeding dim e_J.  Since MO(k) is
(k-1)-connected with k >= 1, every generator in range has at most one
Kudo-Araki operation applied; longer admissible sequences cannot satisfy
the excess condition and the enumeration never produces them.

Conventions fixed here and gated by tests against displayed values:
  * Q^i u = 0 for i < dim u, the Pontrjagin square for i = dim u, and a
    generator (prepend i) for i > dim u on a single generator; other
    compositions raise InadmissibleComposition.
  * Q^i 1 = 0 for i > 0 and Q^0 1 = 1.
  * Nishida commutation: Sq^i_* Q^n = sum_t C(n-i, i-2t) Q^{n-i+t} Sq^t_*.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Tuple

from .errors import DomainError, InadmissibleComposition
from .gf2 import BitMatrix, BitVector, binom_mod2, kernel
from .mo import EMonomial, MOClass, mo_basis, mo_coproduct, sq_dual


@dataclass(frozen=True)
class QGenerator:
    """Q^{i_1}...Q^{i_r} applied to a base monomial, possibly suspended.

    ops is admissible (i_j <= i_{j+1}) with excess i_1 - i_2 - ... - i_r
    strictly above the base dimension; height doubles with each operation.
    susp counts formal suspensions of the base (used by the suspension
    arguments; zero in ordinary QMO(k) classes).
    """

    ops: Tuple[int, ...]
    base: EMonomial
    susp: int = 0

    def __post_init__(self):
        if self.susp < 0:
            raise ValueError("suspension count must be >= 0")
        if self.base.is_unit:
            raise ValueError("generators need a non-unit base monomial")
        if self.ops:
            if any(i < 1 for i in self.ops):
                raise ValueError("Kudo-Araki indices must be >= 1")
            if any(self.ops[j] > self.ops[j + 1] for j in range(len(self.ops) - 1)):
                raise ValueError("operation sequence must be admissible (non-decreasing)")
            excess = self.ops[0] - sum(self.ops[1:])
            if excess <= self.base_dim:
                raise ValueError("excess must exceed the base dimension")

    @property
    def base_dim(self) -> int:
        return self.base.dim + self.susp

    @property
    def dim(self) -> int:
        return sum(self.ops) + self.base_dim

    @property
    def height(self) -> int:
        return 1 << len(self.ops)

    def sort_key(self):
        return (self.height, self.ops, self.base.indices, self.susp)

    def render(self) -> str:
        body = self.base.render()
        if self.susp:
            body = f"s^{self.susp}({body})"
        for i in reversed(self.ops):
            body = f"Q^{i}({body})"
        return body


@dataclass(frozen=True)
class QMonomial:
    """Pontrjagin product of generators, kept in canonical sorted order.

    The empty product is the unit of the Pontrjagin ring.
    """

    factors: Tuple[QGenerator, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "factors", tuple(sorted(self.factors, key=QGenerator.sort_key))
        )

    @classmethod
    def unit(cls) -> "QMonomial":
        return cls(())

    @classmethod
    def from_emonomial(cls, m: EMonomial) -> "QMonomial":
        if m.is_unit:
            return cls.unit()
        return cls((QGenerator((), m),))

    @property
    def is_unit(self) -> bool:
        return not self.factors

    @property
    def dim(self) -> int:
        return sum(g.dim for g in self.factors)

    @property
    def height(self) -> int:
        return sum(g.height for g in self.factors)

    def product(self, other: "QMonomial") -> "QMonomial":
        return QMonomial(self.factors + other.factors)

    def sort_key(self):
        return (self.height, tuple(g.sort_key() for g in self.factors))

    def render(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(g.render() for g in self.factors)


def _gf2(items: Iterable) -> frozenset:
    parity: Dict = {}
    for x in items:
        parity[x] = parity.get(x, 0) ^ 1
    return frozenset(x for x, p in parity.items() if p)


@dataclass(frozen=True)
class QClass:
    """GF(2) sum of QMonomials of one dimension over a fixed k."""

    k: int
    dim: int
    terms: frozenset

    def __post_init__(self):
        for t in self.terms:
            if t.dim != self.dim:
                raise ValueError("QClass terms must share the dimension")

    @classmethod
    def from_monomials(cls, k: int, dim: int, monomials: Iterable[QMonomial]) -> "QClass":
        return cls(k, dim, _gf2(monomials))

    @classmethod
    def single(cls, k: int, m: QMonomial) -> "QClass":
        return cls(k, m.dim, frozenset({m}))

    @classmethod
    def zero(cls, k: int, dim: int) -> "QClass":
        return cls(k, dim, frozenset())

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "QClass") -> "QClass":
        if self.k != other.k or (self.terms and other.terms and self.dim != other.dim):
            raise ValueError("cannot add classes of different (k, dimension)")
        dim = self.dim if self.terms else other.dim
        return QClass(self.k, dim, self.terms ^ other.terms)

    def product(self, other: "QClass") -> "QClass":
        out = []
        for s in self.terms:
            for t in other.terms:
                out.append(s.product(t))
        return QClass.from_monomials(self.k, self.dim + other.dim, out)

    def coefficient(self, m: QMonomial) -> int:
        return 1 if m in self.terms else 0

    def sorted_terms(self) -> List[QMonomial]:
        return sorted(self.terms, key=QMonomial.sort_key)

    def render(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(t.render() for t in self.sorted_terms())


@dataclass(frozen=True)
class QTensor:
    """GF(2) sum of pairs of QMonomials, the value type of the coproduct."""

    k: int
    dim: int
    pairs: frozenset

    @property
    def is_zero(self) -> bool:
        return not self.pairs

    def __add__(self, other: "QTensor") -> "QTensor":
        if self.k != other.k:
            raise ValueError("tensor k mismatch")
        return QTensor(self.k, self.dim, self.pairs ^ other.pairs)

    def sorted_pairs(self) -> List[Tuple[QMonomial, QMonomial]]:
        return sorted(self.pairs, key=lambda p: (p[0].sort_key(), p[1].sort_key()))

    def render(self) -> str:
        if not self.pairs:
            return "0"
        return " + ".join(f"{l.render()} (x) {r.render()}" for l, r in self.sorted_pairs())


# ---------------------------------------------------------------------------
# Basis enumeration


@lru_cache(maxsize=None)
def _generators_of_dim(k: int, d: int) -> tuple:
    """Polynomial generators of H_*QMO(k) in dimension d."""
    gens = [QGenerator((), m) for m in mo_basis(k, d)]
    # Q^i e_J with i + |J| = d and i > |J| forces |J| < d/2.
    top = (d - 1) // 2
    for j in range(k, top + 1):
        for m in mo_basis(k, j):
            gens.append(QGenerator((d - j,), m))
    return tuple(sorted(gens, key=QGenerator.sort_key))


def _dim_partitions(n: int, minimum: int):
    """Partitions of n into parts >= minimum, ascending tuples."""
    if n == 0:
        yield ()
        return
    first = minimum
    while first <= n:
        for rest in _dim_partitions(n - first, first):
            yield (first,) + rest
        first += 1


@lru_cache(maxsize=None)
def _qmo_basis_cached(k: int, n: int) -> tuple:
    if k < 1:
        raise ValueError("qmo_basis requires k >= 1")
    if n < k:
        # Every generator has dimension >= k (the bottom cell), so nothing
        # lives below it; the unit is not counted as a basis monomial.
        return ()
    monomials = []
    for parts in _dim_partitions(n, k):
        groups = []
        for d, group in itertools.groupby(parts):
            count = len(list(group))
            pool = _generators_of_dim(k, d)
            groups.append(list(itertools.combinations_with_replacement(pool, count)))
        for combo in itertools.product(*groups):
            factors = tuple(g for part in combo for g in part)
            monomials.append(QMonomial(factors))
    return tuple(sorted(monomials, key=QMonomial.sort_key))


def qmo_basis(k: int, n: int) -> List[QMonomial]:
    """Monomial basis of H_n QMO(k), in canonical (height, factors) order."""
    return list(_qmo_basis_cached(k, n))


# ---------------------------------------------------------------------------
# Height projection and Kudo-Araki application


def h2_project(c: QClass) -> QClass:
    """Projection onto the height 2 monomials; all other heights die."""
    return QClass(c.k, c.dim, frozenset(t for t in c.terms if t.height == 2))


def _q_apply_monomial(i: int, m: QMonomial) -> Dict[QMonomial, int]:
    if m.is_unit:
        return {m: 1} if i == 0 else {}
    d = m.dim
    if i < d:
        return {}
    if i == d:
        return {m.product(m): 1}
    if len(m.factors) == 1:
        g = m.factors[0]
        if g.ops and i > g.ops[0]:
            raise InadmissibleComposition(
                f"inadmissible composition: Q^{i} cannot prefix Q^{g.ops[0]}"
            )
        return {QMonomial((QGenerator((i,) + g.ops, g.base, g.susp),)): 1}
    raise InadmissibleComposition(
        f"inadmissible composition: Q^{i} above the dimension of a product monomial"
    )


def q_apply(i: int, c: QClass) -> QClass:
    """Linear extension of the Kudo-Araki rules to a class."""
    parity: Dict[QMonomial, int] = {}
    for m in c.terms:
        for res, p in _q_apply_monomial(i, m).items():
            parity[res] = parity.get(res, 0) ^ p
    return QClass(c.k, c.dim + i, frozenset(t for t, p in parity.items() if p))


# ---------------------------------------------------------------------------
# Coproduct


def _pairs_mul(d1: Dict, d2: Dict) -> Dict:
    out: Dict = {}
    for (l1, r1), p1 in d1.items():
        for (l2, r2), p2 in d2.items():
            key = (l1.product(l2), r1.product(r2))
            out[key] = out.get(key, 0) ^ (p1 & p2)
    return {k_: v for k_, v in out.items() if v}


def _psi_generator(g: QGenerator) -> Dict:
    if g.susp:
        raise DomainError("coproduct of suspended classes is out of scope")
    if not g.ops:
        tens = mo_coproduct(MOClass.single(g.base), reduced=False)
        return {
            (QMonomial.from_emonomial(l), QMonomial.from_emonomial(r)): 1
            for (l, r) in tens.pairs
        }
    inner = _psi_generator(QGenerator(g.ops[1:], g.base, g.susp))
    n = g.ops[0]
    out: Dict = {}
    for a in range(n + 1):
        b = n - a
        for (l, r), p in inner.items():
            for lm, lp in _q_apply_monomial(a, l).items():
                for rm, rp in _q_apply_monomial(b, r).items():
                    key = (lm, rm)
                    out[key] = out.get(key, 0) ^ (p & lp & rp)
    return {k_: v for k_, v in out.items() if v}


def _psi_monomial(m: QMonomial) -> Dict:
    acc = {(QMonomial.unit(), QMonomial.unit()): 1}
    for g in m.factors:
        acc = _pairs_mul(acc, _psi_generator(g))
    return acc


def q_coproduct(c: QClass, reduced: bool = False) -> QTensor:
    """Hopf coproduct on QMO(k); reduced removes the two unit terms."""
    parity: Dict = {}
    unit = QMonomial.unit()
    for m in c.terms:
        for pair, p in _psi_monomial(m).items():
            parity[pair] = parity.get(pair, 0) ^ p
        if reduced:
            for pair in {(m, unit), (unit, m)}:
                parity[pair] = parity.get(pair, 0) ^ 1
    return QTensor(c.k, c.dim, frozenset(p for p, v in parity.items() if v))


# ---------------------------------------------------------------------------
# Dual Steenrod action (Nishida commutation)


def _nishida_coeff(a: int, b: int) -> int:
    # Upper negation extends C(a, b) to negative a; agrees with Lucas on
    # a >= 0 and only arises for dual squares above the operation index.
    if b == 0:
        return 1
    if a >= 0:
        return binom_mod2(a, b)
    return binom_mod2(b - a - 1, b)


def _compositions(total: int, slots: int):
    if slots == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, slots - 1):
            yield (first,) + rest


def _nishida_monomial(i: int, m: QMonomial) -> Dict[QMonomial, int]:
    if i == 0:
        return {m: 1}
    if m.is_unit or i >= m.dim:
        # The target reduced degree would be <= 0 and MO(k) is connected.
        return {}
    if len(m.factors) > 1:
        out: Dict[QMonomial, int] = {}
        singles = [QMonomial((g,)) for g in m.factors]
        for comp in _compositions(i, len(singles)):
            pieces = []
            dead = False
            for a, s in zip(comp, singles):
                d = _nishida_monomial(a, s)
                if not d:
                    dead = True
                    break
                pieces.append(d)
            if dead:
                continue
            for combo in itertools.product(*[list(p.items()) for p in pieces]):
                mono = QMonomial(())
                parity = 1
                for part, p in combo:
                    mono = mono.product(part)
                    parity &= p
                out[mono] = out.get(mono, 0) ^ parity
        return {k_: v for k_, v in out.items() if v}
    g = m.factors[0]
    if g.susp:
        raise DomainError("dual Steenrod action on suspended classes is out of scope")
    if not g.ops:
        res = sq_dual(i, MOClass.single(g.base))
        return {QMonomial.from_emonomial(t): 1 for t in res.terms}
    n = g.ops[0]
    inner = QMonomial((QGenerator(g.ops[1:], g.base, g.susp),))
    out = {}
    for t in range(i // 2 + 1):
        if not _nishida_coeff(n - i, i - 2 * t):
            continue
        for m2, p2 in _nishida_monomial(t, inner).items():
            for m3, p3 in _q_apply_monomial(n - i + t, m2).items():
                out[m3] = out.get(m3, 0) ^ (p2 & p3)
    return {k_: v for k_, v in out.items() if v}


def nishida(i: int, c: QClass) -> QClass:
    """Dual Steenrod operation Sq^i_* on a QMO class."""
    if i < 1:
        raise ValueError("nishida index must be >= 1")
    parity: Dict[QMonomial, int] = {}
    for m in c.terms:
        for res, p in _nishida_monomial(i, m).items():
            parity[res] = parity.get(res, 0) ^ p
    return QClass(c.k, c.dim - i, frozenset(t for t, p in parity.items() if p))


# ---------------------------------------------------------------------------
# Homology suspension


def homology_suspend(c: QClass, times: int) -> QClass:
    """Iterated homology suspension: kills genuine Pontrjagin products,
    commutes with the Kudo-Araki operations, and marks bases with a shift."""
    if times < 1:
        raise ValueError("suspension count must be >= 1")
    parity: Dict[QMonomial, int] = {}
    for m in c.terms:
        if m.is_unit:
            raise ValueError("suspension is defined on reduced classes only")
        if len(m.factors) > 1:
            continue
        g = m.factors[0]
        current = {QMonomial((QGenerator((), g.base, g.susp + times),)): 1}
        for op in reversed(g.ops):
            nxt: Dict[QMonomial, int] = {}
            for mono, p in current.items():
                for res, q in _q_apply_monomial(op, mono).items():
                    nxt[res] = nxt.get(res, 0) ^ (p & q)
            current = {k_: v for k_, v in nxt.items() if v}
        for mono, p in current.items():
            parity[mono] = parity.get(mono, 0) ^ p
    return QClass(c.k, c.dim + times, frozenset(t for t, p in parity.items() if p))


# ---------------------------------------------------------------------------
# Primitive submodule


def class_coords(c: QClass, basis: List[QMonomial]) -> BitVector:
    index = {m: i for i, m in enumerate(basis)}
    positions = []
    for t in c.terms:
        if t not in index:
            raise ValueError(f"term {t.render()} is not in the given basis")
        positions.append(index[t])
    return BitVector.from_ones(positions, len(basis))


def class_from_coords(v: BitVector, basis: List[QMonomial], k: int, dim: int) -> QClass:
    return QClass(k, dim, frozenset(basis[i] for i in v.ones()))


@lru_cache(maxsize=None)
def _primitive_submodule_cached(k: int, n: int) -> tuple:
    basis = _qmo_basis_cached(k, n)
    ncols = len(basis)
    # Reduced coproducts are sparse: any index 1 in a height 1 monomial
    # kills every non-unit splitting, so almost all columns vanish.
    row_index: Dict = {}
    columns = []
    for j, m in enumerate(basis):
        tens = q_coproduct(QClass.single(k, m), reduced=True)
        cols = []
        for pair in tens.pairs:
            if pair not in row_index:
                row_index[pair] = len(row_index)
            cols.append(row_index[pair])
        columns.append(cols)
    # Deterministic row order: sort the tensor pairs canonically.
    ordered = sorted(row_index, key=lambda p: (p[0].sort_key(), p[1].sort_key()))
    renumber = {row_index[p]: i for i, p in enumerate(ordered)}
    row_bits = [0] * len(ordered)
    for j, cols in enumerate(columns):
        for c in cols:
            row_bits[renumber[c]] |= 1 << j
    matrix = BitMatrix(tuple(BitVector(b, ncols) for b in row_bits), ncols)
    return tuple(
        class_from_coords(v, list(basis), k, n) for v in kernel(matrix)
    )


def primitive_submodule(k: int, n: int) -> List[QClass]:
    """Basis of the coproduct-primitive submodule of H_n QMO(k)."""
    return list(_primitive_submodule_cached(k, n))
