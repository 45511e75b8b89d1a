"""Netlist parse/format round trips and error reporting."""

import pytest

from depthbench.circuits import GateKind, cvp, random_circuit
from depthbench.netlist import NetlistError, format_netlist, parse_assignment, parse_netlist


NOT_GATE = "input 0\nnot 1 0\noutput 1\n"


def test_parse_simple_inverter():
    c = parse_netlist(NOT_GATE)
    assert c.n_inputs == 1
    assert c.gates[1].kind is GateKind.NOT
    assert cvp(c, parse_assignment("1", c.n_inputs)) == 0


def test_comments_and_blanks_ignored():
    text = "# an inverter\n\ninput 0   # the input\nnot 1 0\n\noutput 1\n"
    assert parse_netlist(text) == parse_netlist(NOT_GATE)


def test_const_and_majority_tokens():
    text = "const 0 1\nconst 1 0\nmaj 2 0 0 1\noutput 2\n"
    c = parse_netlist(text)
    assert c.gates[0].kind is GateKind.CONST1
    assert c.gates[1].kind is GateKind.CONST0
    assert cvp(c, ()) == 1  # two hot of three


def test_format_is_canonical_fixed_point():
    c = random_circuit(5, 3, 9, majority_fraction=0.3)
    text = format_netlist(c)
    assert parse_netlist(text) == c
    assert format_netlist(parse_netlist(text)) == text


@pytest.mark.parametrize("seed", range(25))
def test_round_trip_random_circuits(seed):
    c = random_circuit(seed, 1 + seed % 4, 1 + seed % 15, majority_fraction=0.25)
    assert parse_netlist(format_netlist(c)) == c


def test_unknown_kind_reports_line():
    with pytest.raises(NetlistError, match="line 2"):
        parse_netlist("input 0\nxor 1 0 0\noutput 1\n")


def test_out_of_order_id_reports_line():
    with pytest.raises(NetlistError, match="line 2.*out of order"):
        parse_netlist("input 0\nnot 7 0\noutput 7\n")


def test_missing_output_line():
    with pytest.raises(NetlistError, match="missing output"):
        parse_netlist("input 0\nnot 1 0\n")


def test_content_after_output_rejected():
    with pytest.raises(NetlistError, match="line 4"):
        parse_netlist("input 0\nnot 1 0\noutput 1\nnot 2 1\n")


def test_late_input_gate_reports_line():
    with pytest.raises(NetlistError, match="line 3"):
        parse_netlist("input 0\nnot 1 0\ninput 2\noutput 1\n")


def test_non_integer_id_reports_line():
    with pytest.raises(NetlistError, match="line 1.*not an integer"):
        parse_netlist("input x\noutput 0\n")


def test_structural_error_still_raised():
    # parses fine line by line but the NOT gate has two inputs
    with pytest.raises(NetlistError):
        parse_netlist("input 0\nnot 1 0 0\noutput 1\n")


def test_parse_assignment():
    assert parse_assignment("0110", 4) == (0, 1, 1, 0)
    assert parse_assignment("", 0) == ()
    with pytest.raises(Exception, match="assignment"):
        parse_assignment("01", 3)
    with pytest.raises(Exception, match="only 0 and 1"):
        parse_assignment("012", 3)
