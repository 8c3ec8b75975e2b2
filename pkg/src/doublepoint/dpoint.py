"""The double point layer: height 2 classes in dimension 2k+2, the
pushforward to MO(2k) that forgets the normal bundle splitting, and the
parity decision read off from the only stably spherical target class."""

from __future__ import annotations

from functools import lru_cache
from typing import List

from .errors import DomainError
from .gf2 import binom_mod2
from .mo import EMonomial, MOClass
from .qmo import QClass, QGenerator, QMonomial, qmo_basis


def _e1_power(k: int) -> EMonomial:
    return EMonomial((1,) * k)


def _closed_form_basis(k: int) -> List[QMonomial]:
    """The four height 2 monomials of dimension 2k+2 (three when k = 1,
    where the e_1^{k-2} entry degenerates away)."""
    e1k = _e1_power(k)
    out = [
        QMonomial((QGenerator((), e1k), QGenerator((), EMonomial((1,) * (k - 1) + (3,))))),
        QMonomial((QGenerator((), EMonomial((1,) * (k - 1) + (2,))),) * 2),
        QMonomial((QGenerator((k + 2,), e1k),)),
    ]
    if k >= 2:
        out.insert(
            1,
            QMonomial((QGenerator((), e1k), QGenerator((), EMonomial((1,) * (k - 2) + (2, 2))))),
        )
    return sorted(out, key=QMonomial.sort_key)


@lru_cache(maxsize=None)
def _d2_basis_cached(k: int) -> tuple:
    if k < 1:
        raise ValueError("d2_basis requires k >= 1")
    filtered = [m for m in qmo_basis(k, 2 * k + 2) if m.height == 2]
    expected = _closed_form_basis(k)
    if filtered != expected:
        raise AssertionError("height 2 enumeration disagrees with the closed form basis")
    return tuple(filtered)


def d2_basis(k: int) -> List[QMonomial]:
    """Basis of the height 2 part of H_{2k+2} QMO(k)."""
    return list(_d2_basis_cached(k))


def _push_monomial(k: int, m: QMonomial) -> MOClass:
    target_dim = 2 * k + 2
    if m.height != 2 or m.dim != target_dim:
        raise DomainError(
            "pushforward defined only for height 2 monomials of dimension 2k+2"
        )
    if len(m.factors) == 2:
        a, b = m.factors
        merged = a.base.merge(b.base)
        return MOClass.single(merged)
    g = m.factors[0]
    if g.ops != (k + 2,) or g.base != _e1_power(k) or g.susp:
        raise DomainError(
            "pushforward of an operation generator is defined only for Q^{k+2} e_1^k"
        )
    terms = []
    if binom_mod2(k, 1):
        terms.append(EMonomial((1,) * (2 * k - 1) + (3,)))
    if binom_mod2(k, 2):
        terms.append(EMonomial((1,) * (2 * k - 2) + (2, 2)))
    return MOClass.from_monomials(2 * k, target_dim, terms)


def xi_push(c: QClass) -> MOClass:
    """Pushforward of a height 2 class to H_{2k+2} MO(2k).

    Product monomials map by merging the two factors; the generator
    Q^{k+2} e_1^k maps to C(k,1) e_1^{2k-1} e_3 + C(k,2) e_1^{2k-2} e_2^2.
    """
    k = c.k
    out = MOClass.zero(2 * k, 2 * k + 2)
    for m in c.terms:
        out = out + _push_monomial(k, m)
    return out


def parity_decision(c: QClass) -> str:
    """"odd" iff the pushforward hits e_1^{2k-1} e_3, the one stably
    spherical class; otherwise "even"."""
    k = c.k
    image = xi_push(c)
    marker = EMonomial((1,) * (2 * k - 1) + (3,))
    return "odd" if image.coefficient(marker) else "even"
