"""Text format round-trips and byte stability."""

import pytest

from qstab import formats
from qstab.canonicalize import tripartition_normal_form
from qstab.channel import CodeSpec, analyze_channel
from qstab.clifford import cnot, cphase, fourier, pauli_x, pauli_z, phase_w, smult
from qstab.errors import FormatError
from qstab.pauli import z_op
from qstab.randgen import random_code, random_state
from qstab.stabilizer import GraphAdjacency, ghz_group


def test_stabilizer_round_trip():
    for d in (2, 6):
        for seed in (1, 2):
            s = random_state(d, 4, seed)
            text = formats.render_stabilizer(s)
            assert formats.parse_stabilizer(text) == s
            assert formats.render_stabilizer(formats.parse_stabilizer(text)) == text


def test_graph_round_trip():
    adj = GraphAdjacency.from_edges(4, [(0, 1, 1), (1, 3, 2), (0, 2, 5)])
    text = formats.render_graph(adj, 6)
    back, d = formats.parse_graph(text)
    assert back == adj and d == 6
    assert formats.render_graph(back, d) == text


def test_code_round_trip():
    graph, coding = random_code(3, 4, 2, 5)
    code = CodeSpec(4, 2, 3, graph, tuple(coding))
    text = formats.render_code(code)
    assert formats.parse_code(text) == code
    assert formats.render_code(formats.parse_code(text)) == text


def test_gates_round_trip():
    gates = [fourier(0), smult(1, 2), phase_w(2), pauli_x(0, 1),
             pauli_z(1, 2), cphase(0, 2, 1), cnot(2, 1)]
    text = formats.render_gates(3, 3, gates)
    d, n, back = formats.parse_gates(text)
    assert (d, n) == (3, 3)
    assert back == gates


def test_normal_form_round_trip_prime_and_composite():
    for d in (3, 6):
        s = random_state(d, 4, 9 + d)
        nf = tripartition_normal_form(s, [0, 3], [1], [2])
        text = formats.render_normal_form(nf)
        back = formats.parse_normal_form(text)
        assert back == nf
        assert formats.render_normal_form(back) == text


def test_channel_report_round_trip():
    graph, coding = random_code(2, 4, 2, 8)
    code = CodeSpec(4, 2, 2, graph, tuple(coding))
    analysis = analyze_channel(code, [0, 1], [2, 3])
    rep = formats.report_from_analysis(analysis)
    text = formats.render_channel_report(rep)
    back = formats.parse_channel_report(text)
    assert back == rep
    assert formats.render_channel_report(back) == text


def test_channel_report_bounds_phrasing():
    code = CodeSpec(2, 1, 2, GraphAdjacency.from_edges(2, [(0, 1, 1)]),
                    (z_op(2, 2, 0),))
    analysis = analyze_channel(code, [0], [1])
    text = formats.render_channel_report(
        formats.report_from_analysis(analysis, bounds=True))
    assert "C_B >= 1 (log2 units)" in text
    assert "Q_B >= 0 (log2 units)" in text


def test_detect_kind():
    s = ghz_group(2)
    assert formats.detect_kind(formats.render_stabilizer(s)) == "stabilizer"
    with pytest.raises(FormatError):
        formats.detect_kind("nonsense\n")


def test_parse_errors():
    with pytest.raises(FormatError):
        formats.parse_stabilizer("QSTAB1 graph\nD 2 n 2\n")
    with pytest.raises(FormatError):
        formats.parse_stabilizer("QSTAB1 stabilizer\nD 2 n 2 gens 1\n")
    with pytest.raises(FormatError):
        formats.parse_graph("QSTAB1 graph\nD 2 n 2\n2 1 1\n")
    with pytest.raises(FormatError):
        formats.parse_gate("Q 1")
    with pytest.raises(FormatError):
        formats.parse_code("QSTAB1 code\nD 2 n 2 k 1\n1 2 1\n")
