import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sl2char.errors import DomainError, NoSuchElement, NotRegular, PrecisionLoss
from sl2char.padic import FieldContext, QuadExtScalar, ThetaLabel
from sl2char.tori import (
    NormOneElement,
    TorusClass,
    TorusElement,
    canonical_element,
    depth_zero_elements,
    enumerate_norm_one,
    key_moduli,
    legal_classes,
    quotient_order,
    random_element,
    random_regular,
    weyl_discriminant,
    weyl_discriminant_adjoint,
)

CTX5 = FieldContext(5, 12)
CTX7 = FieldContext(7, 12)
SPLIT = TorusClass("split")


def _classes(ctx):
    return legal_classes(ctx, include_split=True)


def test_class_lists():
    assert [str(c) for c in legal_classes(CTX5)] == ["eps,1", "eps,pi", "pi,1", "eps_pi,1"]
    assert len(legal_classes(CTX7)) == 6
    assert TorusClass("pi", "eps") in legal_classes(CTX7)
    assert TorusClass("eps_pi", "eps") in legal_classes(CTX7)
    assert len(legal_classes(FieldContext(13, 4))) == 4
    assert legal_classes(CTX5, include_split=True)[-1].is_split


def test_class_count_depends_on_p_mod_4():
    for p in (5, 7, 11, 13, 17, 19, 23, 29):
        n = len(legal_classes(FieldContext(p, 3)))
        assert n == (4 if p % 4 == 1 else 6)
        labels = [(c.theta, c.eta) for c in legal_classes(FieldContext(p, 3))]
        assert len(set(labels)) == len(labels)


def test_class_parse_and_validation():
    assert TorusClass.parse("eps:pi") == TorusClass("eps", "pi")
    assert TorusClass.parse("pi,eps") == TorusClass("pi", "eps")
    assert TorusClass.parse("split").is_split
    assert TorusClass.parse("eps_pi") == TorusClass("eps_pi", "1")
    with pytest.raises(DomainError):
        TorusClass("pi", "pi")
    with pytest.raises(DomainError):
        TorusClass("split", "1")


def test_depth_example_unramified():
    x = NormOneElement.from_b(CTX5, ThetaLabel.EPS, 5 * 3).x
    g = TorusElement(TorusClass("eps", "1"), x)
    dd = g.depth
    assert (dd.d, dd.d_minus, dd.d_plus, dd.sd) == (1, 0, 1, 1)
    assert weyl_discriminant(g) == Fraction(1, 25)
    assert weyl_discriminant(g) == weyl_discriminant_adjoint(g)


def test_depth_example_ramified():
    x = NormOneElement.from_b(CTX5, ThetaLabel.PI, 2).x
    g = TorusElement(TorusClass("pi", "1"), x)
    assert g.depth.d2 == 1
    assert weyl_discriminant(g) == weyl_discriminant_adjoint(g) == Fraction(1, 5)


def test_split_discriminant():
    for t in (1, 2, 3):
        g = TorusElement(SPLIT, CTX5.scalar(1 + 7 * 5**t))
        assert g.depth.d_plus == t
        assert weyl_discriminant(g) == weyl_discriminant_adjoint(g)
        assert float(weyl_discriminant(g)) == pytest.approx(5.0 ** (-2 * t))


def test_noncompact_split():
    g = TorusElement(SPLIT, CTX5.scalar(5))
    assert g.depth.d_plus2 < 0
    assert weyl_discriminant(g) == weyl_discriminant_adjoint(g)


def test_central_rejected():
    with pytest.raises(NotRegular):
        TorusElement(SPLIT, CTX5.scalar(1))
    with pytest.raises(NotRegular):
        TorusElement(SPLIT, CTX5.scalar(-1))
    with pytest.raises(NotRegular):
        TorusElement(TorusClass("eps", "1"), QuadExtScalar.make(CTX5, ThetaLabel.EPS, 1))
    with pytest.raises(NotRegular):
        TorusElement(SPLIT, CTX5.scalar(1 + 5**13))


def test_wrong_extension_rejected():
    x = NormOneElement.from_b(CTX5, ThetaLabel.PI, 2).x
    with pytest.raises(DomainError):
        TorusElement(TorusClass("eps", "1"), x)
    with pytest.raises(DomainError):
        NormOneElement(QuadExtScalar.make(CTX5, ThetaLabel.EPS, 2, 1))


def test_random_element_examples():
    g = random_element(CTX5, TorusClass("eps", "1"), 4, seed=3)
    assert g.lam.b.valuation() == 2 and g.depth.d2 == 4
    s = canonical_element(CTX5, SPLIT, 2)
    assert s.lam.same_as(6) and s.depth.d == 1
    with pytest.raises(NoSuchElement):
        random_element(CTX5, TorusClass("pi", "1"), 2)
    h = random_element(CTX5, TorusClass("pi", "1"), 3, seed=1)
    assert h.depth.d2 == 3


def test_random_element_deterministic():
    for cls in _classes(CTX7):
        for d2 in range(0, 6):
            try:
                a = random_element(CTX7, cls, d2, seed=11)
            except NoSuchElement:
                continue
            b = random_element(CTX7, cls, d2, seed=11)
            assert repr(a.lam) == repr(b.lam)
            assert a.depth.d2 == d2


@pytest.mark.parametrize("ctx", [CTX5, CTX7])
@given(st.integers(0, 2**31), st.integers(0, 5))
def test_depth_symmetries(ctx, seed, k):
    rng = random.Random(seed)
    cls = _classes(ctx)[k % len(_classes(ctx))]
    g = random_regular(ctx, cls, rng, 8)
    dd = g.depth
    assert g.inv().depth == dd
    assert (-g).depth.d_plus2 == dd.d_plus2
    assert (-g).depth.d2 == dd.d_minus2
    assert weyl_discriminant(g) == weyl_discriminant_adjoint(g)
    if dd.d_plus2 > 0:
        # topologically unipotent up to the center
        assert dd.sd2 == dd.d_plus2
        assert min(dd.d2, dd.d_minus2) == 0


@pytest.mark.parametrize("theta,R,want", [
    (ThetaLabel.EPS, 0, 6), (ThetaLabel.EPS, 2, 30), (ThetaLabel.PI, 0, 2),
    (ThetaLabel.PI, 1, 10), (ThetaLabel.EPS_PI, 3, 50),
])
def test_norm_one_enumeration_examples(theta, R, want):
    a, b = enumerate_norm_one(CTX5, theta, R)
    assert a.size == want == quotient_order(5, theta, R)


def _brute_cosets(p, t, ka, kb):
    """Norm-one residues mod p^(ka+1), reduced to keys: an independent count."""
    K = ka + 1
    m = p**K
    keys = set()
    for a in range(m):
        for b in range(m):
            if (a * a - t * b * b - 1) % m == 0:
                keys.add((a % p**ka, b % p**kb))
    return keys


@pytest.mark.parametrize("p", [5, 7])
@pytest.mark.parametrize("theta", list(ThetaLabel))
def test_norm_one_counts_against_brute_force(p, theta):
    ctx = FieldContext(p, 8)
    for R in range(0, 3):
        ka, kb = key_moduli(theta, R)
        a, b = enumerate_norm_one(ctx, theta, R)
        brute = _brute_cosets(p, ctx.theta_int(theta), ka, kb)
        assert set(zip(a.tolist(), b.tolist())) == brute
        assert len(brute) == quotient_order(p, theta, R)


def test_enumeration_closed_under_product():
    a, b = enumerate_norm_one(CTX7, ThetaLabel.EPS, 2)
    ka, kb = key_moduli(ThetaLabel.EPS, 2)
    ma, mb = 7**ka, 7**kb
    keys = set(zip(a.tolist(), b.tolist()))
    t = CTX7.eps
    rng = np.random.default_rng(0)
    for i, j in rng.integers(0, a.size, size=(200, 2)):
        pa = (a[i] * a[j] + t * b[i] * b[j]) % ma
        pb = (a[i] * b[j] + b[i] * a[j]) % mb
        assert (int(pa), int(pb)) in keys


def test_enumeration_precision_guard():
    with pytest.raises(PrecisionLoss):
        enumerate_norm_one(FieldContext(5, 3), ThetaLabel.EPS, 4)


def test_depth_zero_elements():
    for ctx in (CTX5, CTX7):
        els = depth_zero_elements(ctx, TorusClass("eps", "pi"))
        assert len(els) == ctx.q - 1
        assert all(g.depth.d_plus2 == 0 for g in els)
    with pytest.raises(DomainError):
        depth_zero_elements(CTX5, TorusClass("pi", "1"))


def test_canonical_elements():
    for cls in legal_classes(CTX7):
        for d2 in range(1, 9):
            try:
                g = canonical_element(CTX7, cls, d2)
            except NoSuchElement:
                assert (d2 - cls.label.v2) % 2
                continue
            assert g.depth.d2 == d2
            assert (-g).depth.d_minus2 == d2
