"""Text file formats, all under the QSTAB1 magic.

One format family: stabilizer files, graph files, code files, gate lists,
normal-form reports, and channel reports. Qudit and part indices are 1-based
in files (0-based in memory). Output is byte-stable: rendering the parse of a
rendered value reproduces the bytes, which is what the golden-file tests pin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .canonicalize import NormalForm
from .channel import ChannelAnalysis, CodeSpec
from .clifford import Gate, from_gates
from .errors import FormatError
from .pauli import PauliProduct, from_text, to_text
from .stabilizer import GraphAdjacency, StabilizerGroup

MAGIC = "QSTAB1"


def _lines(text: str) -> list[str]:
    return [ln.rstrip() for ln in text.splitlines() if ln.strip()]


def _expect_magic(lines: list[str], kind: str) -> list[str]:
    if not lines:
        raise FormatError("empty input")
    head = lines[0].split()
    if len(head) != 2 or head[0] != MAGIC or head[1] != kind:
        raise FormatError(f"expected '{MAGIC} {kind}' header, got {lines[0]!r}")
    return lines[1:]


def _header_ints(line: str, keys: tuple[str, ...]) -> list[int]:
    toks = line.split()
    if len(toks) != 2 * len(keys) or tuple(toks[::2]) != keys:
        raise FormatError(f"expected header {' '.join(keys)}, got {line!r}")
    try:
        return [int(t) for t in toks[1::2]]
    except ValueError as exc:
        raise FormatError(f"bad integer in header {line!r}") from exc


# ---------------------------------------------------------------- stabilizer

def render_stabilizer(group: StabilizerGroup) -> str:
    out = [f"{MAGIC} stabilizer", f"D {group.d} n {group.n} gens {len(group.gens)}"]
    out.extend(to_text(g) for g in group.gens)
    return "\n".join(out) + "\n"


def parse_stabilizer(text: str) -> StabilizerGroup:
    lines = _expect_magic(_lines(text), "stabilizer")
    d, n, k = _header_ints(lines[0], ("D", "n", "gens"))
    if len(lines) != 1 + k:
        raise FormatError(f"expected {k} generator lines, got {len(lines) - 1}")
    gens = []
    for ln in lines[1:]:
        g = from_text(ln, d)
        if g.n != n:
            raise FormatError(f"generator on {g.n} qudits in an n={n} file")
        gens.append(g)
    return StabilizerGroup(d, n, tuple(gens))


# --------------------------------------------------------------------- graph

def render_graph(adj: GraphAdjacency, d: int) -> str:
    out = [f"{MAGIC} graph", f"D {d} n {adj.n}"]
    for i in range(adj.n):
        for j in range(i + 1, adj.n):
            if adj.weights[i][j]:
                out.append(f"{i + 1} {j + 1} {adj.weights[i][j]}")
    return "\n".join(out) + "\n"


def _parse_edges(lines: list[str], n: int) -> GraphAdjacency:
    edges = []
    for ln in lines:
        toks = ln.split()
        if len(toks) != 3:
            raise FormatError(f"expected 'i j w' edge line, got {ln!r}")
        i, j, w = (int(t) for t in toks)
        if not (1 <= i < j <= n):
            raise FormatError(f"edge {ln!r} out of range or not upper-triangular")
        edges.append((i - 1, j - 1, w))
    return GraphAdjacency.from_edges(n, edges)


def parse_graph(text: str) -> tuple[GraphAdjacency, int]:
    lines = _expect_magic(_lines(text), "graph")
    d, n = _header_ints(lines[0], ("D", "n"))
    return _parse_edges(lines[1:], n), d


# ---------------------------------------------------------------------- code

def render_code(code: CodeSpec) -> str:
    out = [f"{MAGIC} code", f"D {code.d} n {code.n} k {code.k}"]
    for i in range(code.n):
        for j in range(i + 1, code.n):
            if code.graph.weights[i][j]:
                out.append(f"{i + 1} {j + 1} {code.graph.weights[i][j]}")
    out.append("CODING")
    out.extend(to_text(f) for f in code.coding_gens)
    return "\n".join(out) + "\n"


def parse_code(text: str) -> CodeSpec:
    lines = _expect_magic(_lines(text), "code")
    d, n, k = _header_ints(lines[0], ("D", "n", "k"))
    try:
        coding_at = lines.index("CODING")
    except ValueError:
        raise FormatError("missing CODING section") from None
    adj = _parse_edges(lines[1:coding_at], n)
    coding = tuple(from_text(ln, d) for ln in lines[coding_at + 1:])
    if len(coding) != k:
        raise FormatError(f"expected {k} coding generators, got {len(coding)}")
    return CodeSpec(n, k, d, adj, coding)


# --------------------------------------------------------------------- gates

def render_gate(g: Gate) -> str:
    qs = " ".join(str(q + 1) for q in g.qudits)
    if g.name in ("F", "W", "CNOT"):
        return f"{g.name} {qs}"
    return f"{g.name} {qs} {g.param}"


def parse_gate(line: str) -> Gate:
    toks = line.split()
    name = toks[0]
    try:
        if name in ("F", "W") and len(toks) == 2:
            return Gate(name, (int(toks[1]) - 1,))
        if name in ("S", "X", "Z") and len(toks) == 3:
            return Gate(name, (int(toks[1]) - 1,), int(toks[2]))
        if name == "CNOT" and len(toks) == 3:
            return Gate(name, (int(toks[1]) - 1, int(toks[2]) - 1))
        if name == "CP" and len(toks) == 4:
            return Gate(name, (int(toks[1]) - 1, int(toks[2]) - 1), int(toks[3]))
    except ValueError as exc:
        raise FormatError(f"bad integer in gate line {line!r}") from exc
    raise FormatError(f"unrecognized gate line {line!r}")


def render_gates(d: int, n: int, gates) -> str:
    out = [f"{MAGIC} gates", f"D {d} n {n}"]
    out.extend(render_gate(g) for g in gates)
    return "\n".join(out) + "\n"


def parse_gates(text: str) -> tuple[int, int, list[Gate]]:
    lines = _expect_magic(_lines(text), "gates")
    d, n = _header_ints(lines[0], ("D", "n"))
    return d, n, [parse_gate(ln) for ln in lines[1:]]


# --------------------------------------------------------- normal form report

def _render_parts(parts) -> list[str]:
    out = [f"parts {len(parts)}"]
    for i, part in enumerate(parts):
        body = ",".join(str(q + 1) for q in part) if part else "-"
        out.append(f"part {i + 1} {body}")
    return out


def _render_nf_body(nf: NormalForm) -> list[str]:
    # counts block, then per-part gate lists, then the assignment table
    out = []
    for key, val in nf.counts.items():
        out.append(f"{key} {val}")
    for i, tab in enumerate(nf.tableaux):
        out.append(f"tableau {i + 1} gates {len(tab.gate_log)}")
        out.extend(render_gate(g) for g in tab.gate_log)
    out.append(f"singles {len(nf.singles)}")
    for q, pi in nf.singles:
        out.append(f"single {q + 1} {pi + 1}")
    out.append(f"pairs {len(nf.pairs)}")
    for pi, pj, qx, qy in nf.pairs:
        out.append(f"pair {pi + 1} {pj + 1} {qx + 1} {qy + 1}")
    out.append(f"triples {len(nf.triples)}")
    for qa, qb, qc in nf.triples:
        out.append(f"triple {qa + 1} {qb + 1} {qc + 1}")
    return out


def render_normal_form(nf: NormalForm) -> str:
    out = [f"{MAGIC} normalform", f"D {nf.d} n {nf.n}"]
    out.extend(_render_parts(nf.parts))
    if nf.composite_counts_derived:
        out.append("composite-min true")
    out.extend(_render_nf_body(nf))
    for p, sub in nf.factors:
        out.append(f"factor {p}")
        out.extend(_render_nf_body(sub))
        out.append("end-factor")
    return "\n".join(out) + "\n"


class _Cursor:
    def __init__(self, lines: list[str]):
        self.lines = lines
        self.pos = 0

    def peek(self) -> str | None:
        return self.lines[self.pos] if self.pos < len(self.lines) else None

    def take(self) -> str:
        if self.pos >= len(self.lines):
            raise FormatError("unexpected end of report")
        self.pos += 1
        return self.lines[self.pos - 1]


_COUNT_KEYS = ("m_A", "m_B", "m_C", "m_AB", "m_AC", "m_BC", "m_ABC")


def _parse_nf_body(cur: _Cursor, d: int, n: int, parts) -> dict:
    counts = {}
    for key in _COUNT_KEYS:
        toks = cur.take().split()
        if len(toks) != 2 or toks[0] != key:
            raise FormatError(f"expected '{key} <count>'")
        counts[key] = int(toks[1])
    tableaux = []
    while True:
        nxt = cur.peek()
        if nxt is None or not nxt.startswith("tableau "):
            break
        toks = cur.take().split()
        count = int(toks[3])
        gates = [parse_gate(cur.take()) for _ in range(count)]
        tableaux.append(from_gates(d, n, gates))
    singles = []
    toks = cur.take().split()
    if toks[0] != "singles":
        raise FormatError("expected singles count")
    for _ in range(int(toks[1])):
        t = cur.take().split()
        singles.append((int(t[1]) - 1, int(t[2]) - 1))
    pairs = []
    toks = cur.take().split()
    if toks[0] != "pairs":
        raise FormatError("expected pairs count")
    for _ in range(int(toks[1])):
        t = cur.take().split()
        pairs.append((int(t[1]) - 1, int(t[2]) - 1, int(t[3]) - 1, int(t[4]) - 1))
    triples = []
    toks = cur.take().split()
    if toks[0] != "triples":
        raise FormatError("expected triples count")
    for _ in range(int(toks[1])):
        t = cur.take().split()
        triples.append((int(t[1]) - 1, int(t[2]) - 1, int(t[3]) - 1))
    return {"counts": counts, "singles": tuple(singles), "pairs": tuple(pairs),
            "triples": tuple(triples), "tableaux": tuple(tableaux)}


def _nf_from_body(d: int, n: int, parts, body: dict, factors=(),
                  derived=False) -> NormalForm:
    c = body["counts"]
    return NormalForm(
        d=d, n=n, parts=parts,
        m_a=c["m_A"], m_b=c["m_B"], m_c=c["m_C"],
        m_ab=c["m_AB"], m_ac=c["m_AC"], m_bc=c["m_BC"], m_abc=c["m_ABC"],
        singles=body["singles"], pairs=body["pairs"], triples=body["triples"],
        tableaux=body["tableaux"], factors=tuple(factors),
        composite_counts_derived=derived,
    )


def _parse_parts_block(cur: _Cursor, n: int):
    toks = cur.take().split()
    if toks[0] != "parts":
        raise FormatError("expected parts count")
    nparts = int(toks[1])
    parts = []
    for i in range(nparts):
        t = cur.take().split()
        if t[0] != "part" or int(t[1]) != i + 1:
            raise FormatError(f"expected 'part {i + 1} ...'")
        if len(t) == 2 or t[2] == "-":
            parts.append(())
        else:
            parts.append(tuple(int(q) - 1 for q in t[2].split(",")))
    return tuple(parts)


def parse_normal_form(text: str) -> NormalForm:
    lines = _expect_magic(_lines(text), "normalform")
    cur = _Cursor(lines)
    d, n = _header_ints(cur.take(), ("D", "n"))
    parts = _parse_parts_block(cur, n)
    derived = False
    if cur.peek() == "composite-min true":
        cur.take()
        derived = True
    body = _parse_nf_body(cur, d, n, parts)
    factors = []
    while cur.peek() is not None and cur.peek().startswith("factor "):
        p = int(cur.take().split()[1])
        sub_body = _parse_nf_body(cur, p, n, parts)
        if cur.take() != "end-factor":
            raise FormatError("expected end-factor")
        factors.append((p, _nf_from_body(p, n, parts, sub_body)))
    if cur.peek() is not None:
        raise FormatError(f"trailing content: {cur.peek()!r}")
    return _nf_from_body(d, n, parts, body, factors, derived)


# ------------------------------------------------------------ channel report

@dataclass(frozen=True)
class ChannelReport:
    """Parseable image of a ChannelAnalysis (counts, groups, input gates)."""

    d: int
    n: int
    k: int
    out_b: tuple[int, ...]
    out_c: tuple[int, ...]
    m_abc: int
    m_ab: int
    m_ac: int
    m_bc: int
    m_b: int
    m_c: int
    info_b: tuple[PauliProduct, ...]
    info_c: tuple[PauliProduct, ...]
    input_gates: tuple[Gate, ...]
    bounds: bool = False


def report_from_analysis(analysis: ChannelAnalysis,
                         bounds: bool = False) -> ChannelReport:
    return ChannelReport(
        d=analysis.code.d, n=analysis.code.n, k=analysis.code.k,
        out_b=analysis.out_b, out_c=analysis.out_c,
        m_abc=analysis.m_abc, m_ab=analysis.m_ab, m_ac=analysis.m_ac,
        m_bc=analysis.m_bc, m_b=analysis.m_b, m_c=analysis.m_c,
        info_b=analysis.info_b, info_c=analysis.info_c,
        input_gates=tuple(analysis.input_tableau.gate_log),
        bounds=bounds,
    )


def _bits_str(count: int, d: int) -> str:
    bits = count * math.log2(d)
    if bits == int(bits):
        return str(int(bits))
    return repr(bits)


def render_channel_report(rep: ChannelReport) -> str:
    out = [f"{MAGIC} channel", f"D {rep.d} n {rep.n} k {rep.k}"]
    out.append("B " + (",".join(str(q + 1) for q in rep.out_b) or "-"))
    out.append("C " + (",".join(str(q + 1) for q in rep.out_c) or "-"))
    for key, val in (("m_ABC", rep.m_abc), ("m_AB", rep.m_ab),
                     ("m_AC", rep.m_ac), ("m_BC", rep.m_bc),
                     ("m_B", rep.m_b), ("m_C", rep.m_c)):
        out.append(f"{key} {val}")
    q_b, c_b = rep.m_ab, rep.m_ab + rep.m_abc
    q_c, c_c = rep.m_ac, rep.m_ac + rep.m_abc
    rel = ">=" if rep.bounds else "="
    out.append(f"Q_B {rel} {_bits_str(q_b, rep.d)} (log2 units)")
    out.append(f"C_B {rel} {_bits_str(c_b, rep.d)} (log2 units)")
    out.append(f"Q_C {rel} {_bits_str(q_c, rep.d)} (log2 units)")
    out.append(f"C_C {rel} {_bits_str(c_c, rep.d)} (log2 units)")
    out.append(f"info_B {len(rep.info_b)}")
    out.extend(to_text(p) for p in rep.info_b)
    out.append(f"info_C {len(rep.info_c)}")
    out.extend(to_text(p) for p in rep.info_c)
    out.append(f"input-gates {len(rep.input_gates)}")
    out.extend(render_gate(g) for g in rep.input_gates)
    return "\n".join(out) + "\n"


def parse_channel_report(text: str) -> ChannelReport:
    lines = _expect_magic(_lines(text), "channel")
    cur = _Cursor(lines)
    d, n, k = _header_ints(cur.take(), ("D", "n", "k"))

    def _part_line(tag: str) -> tuple[int, ...]:
        toks = cur.take().split()
        if toks[0] != tag:
            raise FormatError(f"expected {tag} line")
        if len(toks) == 1 or toks[1] == "-":
            return ()
        return tuple(int(q) - 1 for q in toks[1].split(","))

    out_b = _part_line("B")
    out_c = _part_line("C")
    counts = {}
    for key in ("m_ABC", "m_AB", "m_AC", "m_BC", "m_B", "m_C"):
        toks = cur.take().split()
        if toks[0] != key:
            raise FormatError(f"expected '{key} <count>'")
        counts[key] = int(toks[1])
    bounds = False
    for _ in range(4):
        toks = cur.take().split()
        bounds = toks[1] == ">="
    info = {}
    for tag in ("info_B", "info_C"):
        toks = cur.take().split()
        if toks[0] != tag:
            raise FormatError(f"expected {tag} count")
        info[tag] = tuple(from_text(cur.take(), d) for _ in range(int(toks[1])))
    toks = cur.take().split()
    if toks[0] != "input-gates":
        raise FormatError("expected input-gates count")
    gates = tuple(parse_gate(cur.take()) for _ in range(int(toks[1])))
    if cur.peek() is not None:
        raise FormatError(f"trailing content: {cur.peek()!r}")
    return ChannelReport(
        d=d, n=n, k=k, out_b=out_b, out_c=out_c,
        m_abc=counts["m_ABC"], m_ab=counts["m_AB"], m_ac=counts["m_AC"],
        m_bc=counts["m_BC"], m_b=counts["m_B"], m_c=counts["m_C"],
        info_b=info["info_B"], info_c=info["info_C"],
        input_gates=gates, bounds=bounds,
    )


def detect_kind(text: str) -> str:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty input")
    head = lines[0].split()
    if len(head) != 2 or head[0] != MAGIC:
        raise FormatError(f"not a {MAGIC} file: {lines[0]!r}")
    return head[1]
