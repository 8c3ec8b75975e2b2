"""Characteristic number calculators in truncated polynomial rings.

Supports products of real projective spaces and the Dold manifolds
P(1, 2^{r-1}).  Tangent classes are the standard closed forms; normal
classes are obtained by exact inversion in the truncated ring, and
characteristic numbers by reading off the fundamental top monomial.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, Tuple


@dataclass(frozen=True)
class TruncRing:
    """GF(2) polynomial ring on graded generators with nilpotency bounds.

    Elements are frozensets of exponent tuples; an exponent reaching its
    bound kills the monomial.  Elements may be inhomogeneous (total
    characteristic classes are).
    """

    generators: Tuple[Tuple[str, int, int], ...]  # (name, degree, bound)

    def zero(self) -> frozenset:
        return frozenset()

    def one(self) -> frozenset:
        return frozenset({(0,) * len(self.generators)})

    def gen(self, i: int) -> frozenset:
        exps = [0] * len(self.generators)
        exps[i] = 1
        return frozenset({tuple(exps)})

    def degree_of(self, term: Tuple[int, ...]) -> int:
        return sum(e * g[1] for e, g in zip(term, self.generators))

    def add(self, a: frozenset, b: frozenset) -> frozenset:
        return a ^ b

    def mul(self, a: frozenset, b: frozenset) -> frozenset:
        parity: Dict[Tuple[int, ...], int] = {}
        bounds = [g[2] for g in self.generators]
        for s in a:
            for t in b:
                m = tuple(x + y for x, y in zip(s, t))
                if any(e >= bound for e, bound in zip(m, bounds)):
                    continue
                parity[m] = parity.get(m, 0) ^ 1
        return frozenset(m for m, p in parity.items() if p)

    def power(self, a: frozenset, n: int) -> frozenset:
        out = self.one()
        base = a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def invert_unit(self, a: frozenset) -> frozenset:
        """Inverse of 1 + nilpotent, by the terminating geometric series."""
        if self.one() & a == frozenset():
            raise ValueError("inversion needs a class with constant term 1")
        n = a ^ self.one()
        out = self.one()
        power = n
        while power:
            out = self.add(out, power)
            power = self.mul(power, n)
        return out

    def component(self, a: frozenset, degree: int) -> frozenset:
        return frozenset(t for t in a if self.degree_of(t) == degree)

    def render(self, a: frozenset) -> str:
        if not a:
            return "0"
        parts = []
        for t in sorted(a, key=lambda m: (self.degree_of(m), m)):
            factors = [
                g[0] + (f"^{e}" if e > 1 else "")
                for e, g in zip(t, self.generators)
                if e
            ]
            parts.append("*".join(factors) if factors else "1")
        return " + ".join(parts)


@dataclass(frozen=True)
class ManifoldSpec:
    """A supported closed manifold: a product of real projective spaces or
    the Dold manifold P(1, 2^{r-1})."""

    kind: str  # "rp" or "dold"
    data: Tuple[int, ...]  # rp: factor dimensions; dold: (r,)

    def __post_init__(self):
        if self.kind == "rp":
            if not self.data or any(n < 1 for n in self.data):
                raise ValueError("projective factors need dimension >= 1")
        elif self.kind == "dold":
            if len(self.data) != 1 or self.data[0] < 1:
                raise ValueError("Dold parameter r must be >= 1")
        else:
            raise ValueError(f"unknown manifold kind {self.kind!r}")

    @property
    def dim(self) -> int:
        if self.kind == "rp":
            return sum(self.data)
        return (1 << self.data[0]) + 1

    def render(self) -> str:
        if self.kind == "rp":
            return "x".join(f"RP({n})" for n in self.data)
        return f"Dold(r={self.data[0]})"


_RP_RE = re.compile(r"RP\((\d+)\)")
_DOLD_RE = re.compile(r"Dold\(r=(\d+)\)")


def parse_manifold(text: str) -> ManifoldSpec:
    """Parse 'RP(4)xRP(2)' or 'Dold(r=2)'."""
    text = text.strip()
    m = _DOLD_RE.fullmatch(text)
    if m:
        return ManifoldSpec("dold", (int(m.group(1)),))
    factors = text.split("x")
    dims = []
    for f in factors:
        m = _RP_RE.fullmatch(f.strip())
        if not m:
            raise ValueError(f"unsupported manifold spec {text!r}")
        dims.append(int(m.group(1)))
    return ManifoldSpec("rp", tuple(dims))


def _ring_of(spec: ManifoldSpec) -> TruncRing:
    if spec.kind == "rp":
        gens = tuple(
            (f"a{i + 1}" if len(spec.data) > 1 else "a", 1, n + 1)
            for i, n in enumerate(spec.data)
        )
        return TruncRing(gens)
    r = spec.data[0]
    return TruncRing((("c", 1, 2), ("d", 2, (1 << (r - 1)) + 1)))


def _tangent_class(spec: ManifoldSpec, ring: TruncRing) -> frozenset:
    if spec.kind == "rp":
        total = ring.one()
        for i, n in enumerate(spec.data):
            factor = ring.power(ring.add(ring.one(), ring.gen(i)), n + 1)
            total = ring.mul(total, factor)
        return total
    r = spec.data[0]
    c, d = ring.gen(0), ring.gen(1)
    one = ring.one()
    base = ring.add(ring.add(one, c), d)
    return ring.mul(ring.add(one, c), ring.power(base, (1 << (r - 1)) + 1))


def total_tangent_sw(spec: ManifoldSpec) -> Tuple[TruncRing, frozenset]:
    ring = _ring_of(spec)
    return ring, _tangent_class(spec, ring)


def total_normal_sw(spec: ManifoldSpec) -> Tuple[TruncRing, frozenset]:
    """Total normal class, the inverse of the tangent class."""
    ring, w = total_tangent_sw(spec)
    return ring, ring.invert_unit(w)


def normal_component(spec: ManifoldSpec, i: int) -> frozenset:
    ring, wbar = total_normal_sw(spec)
    return ring.component(wbar, i)


def _fundamental_monomial(spec: ManifoldSpec, ring: TruncRing) -> Tuple[int, ...]:
    if spec.kind == "rp":
        return tuple(n for n in spec.data)
    r = spec.data[0]
    return (1, 1 << (r - 1))


def sw_number(spec: ManifoldSpec, monomial: Iterable[int]) -> int:
    """Normal Stiefel-Whitney number for a product of normal components.

    monomial lists the component indices with multiplicity, e.g. (2, 7)
    for the number pairing wbar_2 wbar_7 against the fundamental class.
    """
    indices = list(monomial)
    if any(i < 1 for i in indices):
        raise ValueError("component indices must be >= 1")
    if sum(indices) != spec.dim:
        raise ValueError(
            f"degree mismatch: monomial degree {sum(indices)}, manifold dimension {spec.dim}"
        )
    ring, wbar = total_normal_sw(spec)
    product = ring.one()
    for i in indices:
        product = ring.mul(product, ring.component(wbar, i))
    return 1 if _fundamental_monomial(spec, ring) in product else 0
