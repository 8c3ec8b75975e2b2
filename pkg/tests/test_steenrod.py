import itertools
import random
from collections import Counter

import pytest

from doublepoint.steenrod import (
    SqElement,
    SuspendedClass,
    adem_normalize,
    elementary,
    is_admissible,
    render_w_sum,
    sq,
    sq_act,
    sq_element_act,
    suspend_act,
    suspension_chain_check,
    to_w_basis,
    w_poly,
    wu_check,
    wu_rhs,
)
from oracles import counter_mod2, int_sq_component


def test_adem_examples():
    assert adem_normalize(sq(1, 1)).is_zero
    assert adem_normalize(sq(2, 4)) == sq(6) + sq(5, 1)
    assert adem_normalize(sq(2, 4) + sq(1, 4, 1)) == sq(6)


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_adem_identity_family(r):
    lhs = adem_normalize(sq(2, 4 * r) + sq(1, 4 * r, 1))
    assert lhs == sq(4 * r + 2)


def _all_words(degree, max_len):
    out = []
    for length in range(1, max_len + 1):
        for comp in itertools.product(range(1, degree + 1), repeat=length):
            if sum(comp) == degree:
                out.append(comp)
    return out


def test_adem_idempotent_and_admissible():
    for degree in range(1, 10):
        for word in _all_words(degree, 3):
            n = adem_normalize(sq(*word))
            assert all(is_admissible(w) for w in n.terms)
            assert adem_normalize(n) == n


def test_adem_action_faithfulness():
    # Every composite of degree <= 12 (up to three factors), acting on small
    # polynomials whose degree keeps the chains non-trivial.
    small = [
        w_poly(2, [(1, 2)]),
        w_poly(3, [(2, 1), (1, 1)]),
        w_poly(3, [(3, 1), (1, 1)]),
    ]
    for degree in range(1, 13):
        for word in _all_words(degree, 3):
            e = sq(*word)
            n = adem_normalize(e)
            for p in small:
                assert sq_element_act(e, p) == sq_element_act(n, p), (word, p.render_x())
    # Spot checks at the top of the stated range: five variables, degree 8.
    heavy = w_poly(5, [(2, 2), (1, 4)])
    for word in [(2, 4), (1, 4, 1), (3, 3), (1, 2, 3), (2, 2, 2)]:
        e = sq(*word)
        n = adem_normalize(e)
        assert sq_element_act(e, heavy) == sq_element_act(n, heavy), word


def test_sq_act_examples():
    x = w_poly(1, [(1, 1)])
    assert sq_act(1, x) == x.square()
    assert sq_act(1, elementary(3, 3)) == elementary(3, 1) * elementary(3, 3)
    assert sq_act(4, elementary(3, 3)).is_zero


def test_sq_act_instability_and_top_square():
    rng = random.Random(3)
    samples = [
        elementary(3, 2),
        w_poly(4, [(2, 1), (1, 1)]),
        w_poly(2, [(1, 3)]),
        w_poly(5, [(4, 1)]),
    ]
    for p in samples:
        d = p.degree
        assert sq_act(d, p) == p.square()
        for a in range(d + 1, d + 4):
            assert sq_act(a, p).is_zero
        assert sq_act(0, p) == p


def test_sq_act_cartan():
    pairs = [
        (elementary(3, 1), elementary(3, 2)),
        (w_poly(4, [(1, 2)]), elementary(4, 3)),
        (w_poly(2, [(2, 1)]), w_poly(2, [(1, 1)])),
    ]
    for p, q in pairs:
        pq = p * q
        for a in range(0, p.degree + q.degree + 1):
            rhs = None
            for i in range(a + 1):
                piece = sq_act(i, p) * sq_act(a - i, q)
                rhs = piece if rhs is None else rhs + piece
            assert sq_act(a, pq) == rhs


def test_sq1_sq1_acts_as_zero():
    samples = [
        elementary(4, 2),
        w_poly(3, [(1, 1), (2, 1)]),
        w_poly(5, [(5, 1)]),
    ]
    for p in samples:
        assert sq_act(1, sq_act(1, p)).is_zero


def test_sq_act_against_integer_expansion():
    samples = [
        elementary(3, 2),
        w_poly(4, [(2, 2)]),
        w_poly(2, [(1, 3)]),
        elementary(5, 4),
    ]
    for p in samples:
        q = Counter({t: 1 for t in p.terms})
        for a in range(0, p.degree + 2):
            assert sq_act(a, p).terms == counter_mod2(int_sq_component(q, a))


def test_wu_formula_full_range():
    for k in range(1, 7):
        for j in range(1, k + 1):
            for i in range(1, j + 1):
                assert wu_check(i, j, k) == 1, (i, j, k)


def test_wu_specific_values():
    assert sq_act(1, elementary(3, 3)) == wu_rhs(1, 3, 3) == elementary(3, 1) * elementary(3, 3)
    rhs = wu_rhs(1, 4, 5)
    assert rhs == elementary(5, 1) * elementary(5, 4) + elementary(5, 5)
    for j, k in ((2, 3), (3, 5), (4, 4)):
        assert wu_rhs(j, j, k) == elementary(k, j).square()


def test_wu_check_range_errors():
    for bad in ((0, 1, 1), (2, 1, 3), (1, 4, 3)):
        with pytest.raises(ValueError):
            wu_check(*bad)


def test_suspend_act_examples():
    for r in (1, 2):
        k = 4 * r - 1
        w = elementary(k, k)
        assert suspend_act(4 * r, SuspendedClass(2, w)).is_zero
        w1w = elementary(k, 1) * w
        top = suspend_act(4 * r, SuspendedClass(2, w1w))
        assert top.payload == w1w.square()
        assert suspend_act(1, SuspendedClass(2, w1w.square())).is_zero


@pytest.mark.parametrize("r", [1, 2, 3])
def test_suspension_chain(r):
    rep = suspension_chain_check(r)
    assert rep.adem_identity_ok
    assert all(s.ok for s in rep.steps)
    assert len(rep.steps) == 5
    assert rep.final.is_zero
    assert rep.ok


def test_w_basis_roundtrip():
    samples = [
        elementary(4, 2) * elementary(4, 3),
        w_poly(3, [(1, 2), (3, 1)]),
        sq_act(2, w_poly(4, [(2, 1), (1, 1)])),
    ]
    for p in samples:
        decomposition = to_w_basis(p)
        rebuilt = None
        for powers in decomposition:
            piece = w_poly(p.nvars, powers)
            rebuilt = piece if rebuilt is None else rebuilt + piece
        if rebuilt is None:
            assert p.is_zero
        else:
            assert rebuilt == p


def test_render():
    assert (sq(6) + sq(5, 1)).render() == "Sq^6 + Sq^5 Sq^1"
    assert SqElement(frozenset()).render() == "0"
    assert render_w_sum(to_w_basis(elementary(3, 1) * elementary(3, 3))) == "w1*w3"
