import pytest

from ifs_w1.intervals import ValueInterval


def test_basic():
    v = ValueInterval(1.0, 3.0)
    assert v.mid == 2.0 and v.width == 2.0 and not v.is_point
    assert v.contains(3.0) and not v.contains(3.1) and v.contains(3.1, tol=0.2)


def test_empty_rejected():
    with pytest.raises(ValueError):
        ValueInterval(1.0, 0.0)


def test_arithmetic():
    a, b = ValueInterval(1.0, 2.0), ValueInterval(0.5, 0.75)
    assert a - b == ValueInterval(0.25, 1.5)
    assert -a == ValueInterval(-2.0, -1.0)
    assert abs(ValueInterval(-1.0, 0.5)) == ValueInterval(0.0, 1.0)
    assert abs(ValueInterval(-2.0, -1.0)) == ValueInterval(1.0, 2.0)


def test_intersects():
    assert ValueInterval(0, 1).intersects(ValueInterval(1, 2))
    assert not ValueInterval(0, 1).intersects(ValueInterval(1.1, 2))
    assert ValueInterval(0, 1).intersects(ValueInterval(1.1, 2), tol=0.2)
