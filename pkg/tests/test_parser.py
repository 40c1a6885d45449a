import cmath
import math

import pytest

from quarticle.errors import DegenerateStateError, DomainError, ParseError
from quarticle.parser import Apply, Ket, evaluate_text, parse_state
from quarticle.states import phase_state, psi_s
from quarticle.tensor import inner, ray_compare


def test_psi_s_expression():
    assert ray_compare(evaluate_text("S(2,3)A(1,2)|0,1,2>"), psi_s(3))


def test_phase_expression():
    k = evaluate_text("|0,1> + exp(i 1.0472)|1,0>")
    assert abs(abs(inner(k, phase_state(1.0472))) - 1) < 1e-12


def test_ast_shape():
    expr = parse_state("2 S(2..4)A(1,2)|0,1,2,3>")
    (term,) = expr.terms
    assert term.coefficient == 2
    assert isinstance(term.factor, Apply) and term.factor.op == "S" and term.factor.slots == (2, 3, 4)
    assert isinstance(term.factor.child.child, Ket)


@pytest.mark.parametrize("text, coefficient", [
    ("1i|0>", 1j),
    ("-|0>", -1),
    ("0.5 * |0>", 0.5),
    ("2 exp(i 0.5)|0>", 2 * cmath.exp(0.5j)),
    ("exp(i -1)|0>", cmath.exp(-1j)),
])
def test_scalars(text, coefficient):
    (term,) = parse_state(text).terms
    assert term.coefficient == pytest.approx(coefficient)


def test_whitespace_insensitive():
    a = evaluate_text(" S ( 2 , 3 ) A(1,2) | 0 , 1 , 2 > ")
    assert ray_compare(a, psi_s(3))


def test_sum_and_difference():
    k = evaluate_text("|0,1> - |1,0>")
    assert k[(0, 1)] == pytest.approx(1 / math.sqrt(2))
    assert k[(1, 0)] == pytest.approx(-1 / math.sqrt(2))


@pytest.mark.parametrize("text", ["", "|0,1", "S(1)|0,1>", "|0,1> +", "Q(1,2)|0,1>", "|a>", "exp(1)|0>"])
def test_syntax_errors_have_positions(text):
    with pytest.raises(ParseError) as info:
        parse_state(text)
    assert info.value.position >= 0


def test_zero_result():
    with pytest.raises(DegenerateStateError):
        evaluate_text("A(1,2)|0,0>")
    with pytest.raises(DegenerateStateError):
        evaluate_text("|0,1> - |0,1>")


def test_range_errors():
    with pytest.raises(DomainError):
        evaluate_text("S(1,3)|0,1>")
    with pytest.raises(DomainError):
        evaluate_text("|0,1> + |0,1,0>")
    with pytest.raises(DomainError):
        evaluate_text("|0,3>", d=3)


def test_explicit_dimension():
    assert evaluate_text("|0,1>", d=4).dim == 4
    assert evaluate_text("|0,0>").dim == 2
