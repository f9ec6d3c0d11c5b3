import json
from fractions import Fraction as Fr

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ifs_w1.maps import Affine, HypothesisViolation, IFSystem, WeightVector, cantor_system, flip_system
from ifs_w1.registry import REGISTRY
from ifs_w1.staircase import Identity, Sign, build_staircase, cdf_difference_sign, integrate_against
from ifs_w1.transport import (w1_closed_same_ifs, w1_closed_two_ifs, w1_numeric, w1_prop5,
                              w1_report, w1_theorem4)


def _pair(e, res=1e-5):
    g = e.g if e.g is not None else e.f
    return build_staircase(e.f, e.p, res), build_staircase(g, e.q, res)


def test_eg1_closed_exact(eg1_system, eg1_weights):
    assert w1_closed_same_ifs(eg1_system, *eg1_weights) == Fr(1, 4)


def test_eg2_closed_exact():
    e = REGISTRY["eg2"]
    assert w1_closed_same_ifs(e.f, e.p, e.q) == Fr(29, 210)


def test_same_weights_zero(eg1_system, eg1_weights):
    assert w1_closed_same_ifs(eg1_system, eg1_weights[0], eg1_weights[0]) == 0


@pytest.mark.parametrize("eid,cond", [("eg4", "dominance"), ("eg5", "positivity")])
def test_theorem1_guards(eid, cond):
    e = REGISTRY[eid]
    with pytest.raises(HypothesisViolation) as exc:
        w1_closed_same_ifs(e.f, e.p, e.q)
    assert exc.value.condition == cond


def test_eg3_nonaffine_enclosure():
    e = REGISTRY["eg3"]
    iv = w1_closed_same_ifs(e.f, e.p, e.q, 1e-5)
    assert iv.intersects(w1_numeric(*_pair(e)))


def test_eg6_two_systems():
    e = REGISTRY["eg6"]
    v = w1_closed_two_ifs(e.f, e.g, e.p, e.q)
    assert v == Fr(1, 5)
    assert w1_numeric(*_pair(e, 1e-6)).contains(0.2)


@pytest.mark.parametrize("eid", ["eg7", "eg8"])
def test_theorem2_guard(eid):
    e = REGISTRY[eid]
    with pytest.raises(HypothesisViolation) as exc:
        w1_closed_two_ifs(e.f, e.g, e.p, e.q)
    assert exc.value.condition == "weight_order"


def test_two_systems_identical():
    s = cantor_system(3)
    p = WeightVector([Fr(1, 3), Fr(2, 3)])
    assert w1_closed_two_ifs(s, s, p, p) == 0


def test_theorem4_r7():
    res = w1_theorem4(7, 2)
    assert res.consistent and res.numeric.width < 1e-4
    assert res.threshold == pytest.approx(49 / 50)


def test_theorem4_range():
    with pytest.raises(HypothesisViolation) as exc:
        w1_theorem4(4, 2)
    assert exc.value.condition == "r_range"


def test_moment_reflection_is_not_a_symmetry():
    # reflecting x -> 1 - x maps the flip pair to a different system, so the
    # means of p and reversed p do not add up to 1
    s = flip_system(3)
    m_p = integrate_against(build_staircase(s, WeightVector([1 / 3, 2 / 3]), 1e-6), Identity())
    m_q = integrate_against(build_staircase(s, WeightVector([2 / 3, 1 / 3]), 1e-6), Identity())
    assert m_p.contains(0.6, 1e-6) and m_q.contains(3 / 8, 1e-6)


@pytest.mark.parametrize("r", [Fr(5, 2), 3, 10])
def test_prop5_zero_at_half(r):
    assert w1_prop5(r, WeightVector([Fr(1, 2), Fr(1, 2)])) == 0


@pytest.mark.parametrize("r,p1", [(Fr(5, 2), Fr(1, 4)), (3, Fr(1, 4)), (10, Fr(3, 4))])
def test_prop5_matches_numeric(r, p1):
    p = WeightVector([p1, 1 - p1])
    v = w1_prop5(r, p)
    A = build_staircase(flip_system(r), p, 1e-6)
    B = build_staircase(cantor_system(r), p, 1e-6)
    assert w1_numeric(A, B).contains(float(v), 1e-9)


def test_eg14_value():
    assert w1_prop5(Fr(5, 2), REGISTRY["eg14"].p) == Fr(1, 8)


def test_report_eg1():
    e = REGISTRY["eg1"]
    rep = w1_report(e.f, e.p, e.f, e.q, 1e-5)
    doc = json.loads(rep.dumps())
    assert doc["schema"] == 1 and doc["consistent"]
    t1 = next(c for c in doc["closed_forms"] if c["name"] == "theorem1")
    assert t1["hypotheses_held"] and t1["value"]["exact"] == "1/4"


def test_report_eg11_numeric_only():
    e = REGISTRY["eg11"]
    rep = w1_report(e.f, e.p, e.g, e.q, 1e-5)
    assert not any(c.hypotheses_held for c in rep.closed_forms) and rep.consistent


def test_report_identical():
    e = REGISTRY["eg1"]
    rep = w1_report(e.f, e.p, e.f, e.p, 1e-5)
    assert rep.numeric.lo == 0 and rep.numeric.hi < 1e-5 and rep.consistent


@pytest.mark.parametrize("eid", ["eg1", "eg2", "eg3", "eg6", "eg10", "eg14"])
def test_applicable_examples_agree(eid):
    e = REGISTRY[eid]
    rep = w1_report(e.f, e.p, e.g if e.g is not None else e.f, e.q, 1e-6)
    form = next(c for c in rep.closed_forms if c.name == e.theorem)
    assert form.hypotheses_held
    assert form.as_interval().intersects(rep.numeric, 1e-6)


def test_sign_constancy_gives_moment_difference(eg1_system, eg1_weights):
    A = build_staircase(eg1_system, eg1_weights[0], 1e-6)
    B = build_staircase(eg1_system, eg1_weights[1], 1e-6)
    assert cdf_difference_sign(A, B).kind is Sign.NON_NEGATIVE
    diff = abs(integrate_against(A, Identity()) - integrate_against(B, Identity()))
    assert diff.intersects(w1_numeric(A, B))


# metric properties on random two-map affine systems

@st.composite
def _measure(draw):
    a = draw(st.floats(0.05, 0.45))
    b = draw(st.floats(0.05, 0.45))
    neg = draw(st.booleans())
    f2 = Affine(-b, 1.0) if neg else Affine(b, 1 - b)
    p1 = draw(st.floats(0.1, 0.9))
    return IFSystem([Affine(a, 0.0), f2]), WeightVector([p1, 1 - p1])


@settings(max_examples=15, deadline=None)
@given(_measure(), _measure(), _measure())
def test_metric_properties(m1, m2, m3):
    A, B, C = (build_staircase(s, p, 1e-4) for s, p in (m1, m2, m3))
    ab, ba = w1_numeric(A, B), w1_numeric(B, A)
    assert ab == ba
    assert w1_numeric(A, A).contains(0.0)
    ac, bc = w1_numeric(A, C), w1_numeric(B, C)
    slack = 3 * (ab.width + bc.width + ac.width)
    assert ac.mid <= ab.mid + bc.mid + slack
