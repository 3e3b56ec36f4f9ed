from fractions import Fraction

import pytest

from braidhopf import (Algebra, Scalar, Tensor, parse_presentation,
                       q_presentation, qnogo_eval)
from braidhopf.scalars import TPoly
from braidhopf.verify import fixture_path


def side(c):
    out = Tensor(2)
    out.add_term(((), (0,)), TPoly((c,)) if c else TPoly(()))
    return out


def test_obstruction_spot_value():
    lhs, rhs = qnogo_eval(Scalar(2), Fraction(1))
    assert lhs == side(Scalar(4))
    assert rhs == side(Scalar(1))
    assert lhs != rhs


@pytest.mark.parametrize("q", (
    Scalar(2), Scalar(Fraction(1, 2)), Scalar(0, 1), Scalar(-3),
    Scalar(1, 1),
))
def test_both_sides_in_closed_form(q):
    # the whole expression collapses to multiples of 1 (x) x: lhs carries
    # q^2 t, rhs carries t, so they differ exactly when q^2 != 1
    t = Fraction(3, 2)
    lhs, rhs = qnogo_eval(q, t)
    assert lhs == side(q * q * Scalar(t))
    assert rhs == side(Scalar(t))
    assert (lhs == rhs) == (q * q == Scalar(1))


@pytest.mark.parametrize("q", (Scalar(1), Scalar(-1)))
def test_unimodular_real_q_is_unobstructed(q):
    lhs, rhs = qnogo_eval(q, Fraction(5))
    assert lhs == rhs


def test_undeformed_time_is_always_unobstructed():
    lhs, rhs = qnogo_eval(Scalar(7), Fraction(0))
    assert lhs == rhs
    assert lhs.is_zero()


def test_q_zero_is_rejected():
    with pytest.raises(ValueError):
        qnogo_eval(Scalar(0))
    with pytest.raises(ValueError):
        q_presentation(Scalar(0))


def test_q_presentation_structure():
    pres = q_presentation(Scalar(2))
    assert pres.generators == ("x", "xs")
    assert pres.star == (1, 0)
    assert pres.braiding_kind == "diagonal"
    assert pres.braiding_table == ((Scalar(2), Scalar(2)),
                                   (Scalar(Fraction(1, 2)),
                                    Scalar(Fraction(1, 2))))
    alg = Algebra(pres)
    nf = alg.normal_form_word((1, 0))
    assert nf.coefficient(((0, 1),)) == TPoly((Scalar(Fraction(1, 2)),))


def test_template_instantiation_matches_the_builder():
    text = fixture_path("q.alg.in").read_text()
    text = text.replace("{qinv}", "1/2").replace("{q}", "2")
    pres = parse_presentation(text)
    built = q_presentation(Scalar(2))
    assert pres.generators == built.generators
    assert pres.grades == built.grades
    assert pres.star == built.star
    assert pres.braiding_kind == built.braiding_kind
    assert pres.braiding_table == built.braiding_table
    assert pres.rules == built.rules
    assert pres.cocycle == built.cocycle
    assert pres.antipode == built.antipode
