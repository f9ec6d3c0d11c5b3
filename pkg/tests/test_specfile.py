from fractions import Fraction as Fr

import pytest

from ifs_w1.maps import Affine, QuarterSine
from ifs_w1.specfile import SpecError, format_spec, parse_spec

EG1 = """# three maps
affine 1/5 0
affine 1/5 2/5   # middle
affine 1/5 4/5
weights 1/2 1/4 1/4
weights 1/4 1/4 1/2
"""


def test_parse_exact():
    spec = parse_spec(EG1)
    assert spec.system.maps[1] == Affine(Fr(1, 5), Fr(2, 5))
    assert spec.weights[1].weights == (Fr(1, 4), Fr(1, 4), Fr(1, 2))


def test_parse_qsine_and_decimals():
    spec = parse_spec("qsine 0.1666 0\naffine -1/6 1/2\nqsine 1/3 2/3\nweights 0.1 0.3 0.6\n")
    assert isinstance(spec.system.maps[0], QuarterSine) and not spec.system.all_positive


def test_round_trip():
    spec = parse_spec(EG1)
    again = parse_spec(format_spec(spec.system, spec.weights))
    assert again.system == spec.system and again.weights == spec.weights


@pytest.mark.parametrize("text,line,col", [
    ("affine 1/5 0\naffine 1/5 zz\n", 2, 12),
    ("affine 1/5 0\nlinear 1 0\n", 2, 1),
    ("affine 1/5 0\n  affine 1/5\n", 2, 3),
    ("affine 1/5 0\naffine 2 0\n", 2, 1),
    ("affine 1/5 0\naffine 1/5 4/5\nweights 0.5 0.6\n", 3, 1),
])
def test_errors_carry_position(text, line, col):
    with pytest.raises(SpecError) as exc:
        parse_spec(text)
    assert (exc.value.line, exc.value.col) == (line, col)


def test_weight_length_mismatch():
    with pytest.raises(SpecError):
        parse_spec("affine 1/5 0\naffine 1/5 4/5\nweights 0.2 0.3 0.5\n")
