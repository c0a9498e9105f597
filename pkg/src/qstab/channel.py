"""Stabilizer code channels: Choi states, decomposition, capacities, duality.

A code is a graph state on n output qudits plus k independent Z-type coding
generators (prime D). Its Choi state lives on k+n qudits (inputs first); the
tripartition normal form of that state with parts (inputs, B, C) yields the
channel decomposition directly:

  EPR input<->B   perfect quantum channel to B    (X and Z transmitted)
  GHZ input,B,C   perfectly decohering channel    (Z transmitted to both)
  EPR input<->C   depolarizing channel to B       (nothing transmitted)

Input-side Pauli groups are stored in the transformed input basis; the
input tableau is recorded so membership queries for original-basis operators
conjugate through it first (the transpose enters because an input-side Choi
unitary acts transposed on the isometry).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import linalg
from .canonicalize import NormalForm, tripartition_normal_form
from .clifford import CliffordTableau, conjugate, cphase, inverse_tableau
from .errors import (
    InternalInvariant,
    InvalidCode,
    NonPrimeD,
    NotMaximallyMixedInput,
    ShapeMismatch,
)
from .modring import factorize
from .pauli import (
    PauliProduct,
    embed,
    from_exponents,
    inverse,
    multiply,
    phase_op,
    restrict,
    x_op,
)
from .stabilizer import (
    GraphAdjacency,
    StabilizerGroup,
    from_graph,
    reduced_rank,
)


@dataclass(frozen=True)
class CodeSpec:
    """An [[n, k]]_D additive graph code: graph plus Z-type coding group."""

    n: int
    k: int
    d: int
    graph: GraphAdjacency
    coding_gens: tuple[PauliProduct, ...]

    def __post_init__(self) -> None:
        if not factorize(self.d).is_prime:
            raise NonPrimeD(f"codes are defined for prime D, got {self.d}")
        if self.graph.n != self.n:
            raise ShapeMismatch("graph size differs from n")
        if len(self.coding_gens) != self.k:
            raise InvalidCode(f"expected {self.k} coding generators")
        rows = []
        for f in self.coding_gens:
            if f.d != self.d or f.n != self.n:
                raise ShapeMismatch("coding generator shape differs from code")
            if any(f.x) or f.gamma != 0:
                raise InvalidCode("coding generators must be plain Z products")
            rows.append(list(f.z))
        if rows and linalg.rank(rows, self.d) != self.k:
            raise InvalidCode("coding generators are dependent")

    @property
    def graph_group(self) -> StabilizerGroup:
        return from_graph(self.graph, self.d)


def code_to_choi_state(code: CodeSpec) -> StabilizerGroup:
    """Stabilizer state of the code's Choi ket on k+n qudits (inputs first).

    One generator per graph generator g_j, dressed with the input Z powers
    that cancel the phases of commuting g_j past the coding group; plus one
    X_input (x) f^{-1} generator per coding generator.
    """
    d, n, k = code.d, code.n, code.k
    total = k + n
    out_slots = list(range(k, k + n))
    gens: list[PauliProduct] = []
    graph_gens = code.graph_group.gens
    for j in range(n):
        # beta_{jl} is the commutation phase of g_j with f_l: the Z exponent
        # of f_l at vertex j, because g_j carries X only at vertex j
        z_in = [(-code.coding_gens[length].z[j]) % d for length in range(k)]
        dressed = multiply(from_exponents(d, [0] * total, z_in + [0] * n),
                           embed(graph_gens[j], total, out_slots))
        gens.append(dressed)
    for length in range(k):
        gens.append(multiply(x_op(d, total, length),
                             embed(inverse(code.coding_gens[length]), total,
                                   out_slots)))
    choi = StabilizerGroup(d, total, tuple(gens))
    if reduced_rank(choi, list(range(k))) != d**k:
        raise InternalInvariant("Choi input marginal is not maximally mixed")
    return choi


def graph_choi_to_code(adj: GraphAdjacency, k: int,
                       d: int) -> tuple[CodeSpec, list]:
    """Read a code off a graph-form Choi state on k+n vertices.

    The first k vertices are inputs. Returns the CodeSpec (output graph plus
    coding generators from the input-output adjacency block) and the list of
    input-side controlled-phase gates from intra-input edges, recorded as the
    input unitary of the correspondence.
    """
    total = adj.n
    n = total - k
    if n <= 0:
        raise ShapeMismatch("graph must have more vertices than inputs")
    state = from_graph(adj, d)
    if reduced_rank(state, list(range(k))) != d**k:
        raise NotMaximallyMixedInput(
            f"input marginal rank != {d}^{k}; not an isometry's Choi state")
    out_graph = GraphAdjacency(
        n, tuple(tuple(adj.weights[i][j] for j in range(k, total))
                 for i in range(k, total)))
    coding = tuple(
        from_exponents(d, [0] * n,
                       [adj.weights[length][j] % d for j in range(k, total)])
        for length in range(k))
    input_gates = [cphase(i, j, adj.weights[i][j])
                   for i in range(k) for j in range(i + 1, k)
                   if adj.weights[i][j] % d]
    return CodeSpec(n, k, d, out_graph, coding), input_gates


@dataclass(frozen=True)
class ChannelAnalysis:
    """Decomposition counts, capacities, and subset information groups."""

    code: CodeSpec
    out_b: tuple[int, ...]
    out_c: tuple[int, ...]
    normal_form: NormalForm
    m_abc: int
    m_ab: int
    m_ac: int
    m_bc: int
    m_b: int
    m_c: int
    info_b: tuple[PauliProduct, ...]
    info_c: tuple[PauliProduct, ...]
    input_tableau: CliffordTableau

    @property
    def q_b(self) -> int:
        return self.m_ab

    @property
    def c_b(self) -> int:
        return self.m_ab + self.m_abc

    @property
    def q_c(self) -> int:
        return self.m_ac

    @property
    def c_c(self) -> int:
        return self.m_ac + self.m_abc

    def bits(self, count: int) -> float:
        return count * math.log2(self.code.d)


def analyze_channel(code: CodeSpec, out_b, out_c) -> ChannelAnalysis:
    """Full channel analysis for the output bipartition (B, C).

    Builds the Choi state, runs the tripartition normal form with the inputs
    as part A, and reads the channel structure off the counts. Every input
    qudit is consumed by an EPR pair or a GHZ (the input marginal is
    maximally mixed, so no input single survives).
    """
    out_b = tuple(sorted(out_b))
    out_c = tuple(sorted(out_c))
    if set(out_b) & set(out_c):
        raise ShapeMismatch("B and C overlap")
    if set(out_b) | set(out_c) != set(range(code.n)):
        raise ShapeMismatch("B and C must cover all output qudits")
    k = code.k
    choi = code_to_choi_state(code)
    part_a = list(range(k))
    part_b = [k + q for q in out_b]
    part_c = [k + q for q in out_c]
    nf = tripartition_normal_form(choi, part_a, part_b, part_c)
    if nf.m_a != 0:
        raise InternalInvariant("input qudit left unentangled by an isometry")
    if nf.m_abc + nf.m_ab + nf.m_ac != k:
        raise InternalInvariant("input qudits not fully consumed")
    info_b, info_c = _info_groups(code.d, k, nf)
    return ChannelAnalysis(
        code=code, out_b=out_b, out_c=out_c, normal_form=nf,
        m_abc=nf.m_abc, m_ab=nf.m_ab, m_ac=nf.m_ac, m_bc=nf.m_bc,
        m_b=nf.m_b, m_c=nf.m_c,
        info_b=info_b, info_c=info_c,
        input_tableau=nf.tableaux[0],
    )


def _info_groups(d: int, k: int,
                 nf: NormalForm) -> tuple[tuple[PauliProduct, ...],
                                          tuple[PauliProduct, ...]]:
    """Subset information groups in the transformed input basis.

    An EPR pair from input slot q to a side transmits X_q and Z_q to that
    side; a GHZ input slot transmits Z_q to both sides; the phase generator
    is always present.
    """
    epr_b = sorted(qa for pi, pj, qa, _ in nf.pairs if (pi, pj) == (0, 1))
    epr_c = sorted(qa for pi, pj, qa, _ in nf.pairs if (pi, pj) == (0, 2))
    ghz = sorted(qa for qa, _, _ in nf.triples)
    info_b: list[PauliProduct] = [phase_op(d, k, 1)]
    info_c: list[PauliProduct] = [phase_op(d, k, 1)]
    for q in epr_b:
        info_b.append(x_op(d, k, q))
        info_b.append(from_exponents(d, [0] * k, [1 if i == q else 0
                                                  for i in range(k)]))
    for q in epr_c:
        info_c.append(x_op(d, k, q))
        info_c.append(from_exponents(d, [0] * k, [1 if i == q else 0
                                                  for i in range(k)]))
    for q in ghz:
        zq = from_exponents(d, [0] * k, [1 if i == q else 0 for i in range(k)])
        info_b.append(zq)
        info_c.append(zq)
    return tuple(info_b), tuple(info_c)


def info_group(analysis: ChannelAnalysis, side: str) -> tuple[PauliProduct, ...]:
    if side == "B":
        return analysis.info_b
    if side == "C":
        return analysis.info_c
    raise ShapeMismatch(f"side must be 'B' or 'C', got {side!r}")


def centralizer_in_pauli(gens, d: int, k: int) -> tuple[PauliProduct, ...]:
    """Generators of the centralizer of `gens` inside the k-qudit Pauli group.

    The exponent vectors of the centralizer form the symplectic nullspace of
    the generators' exponent matrix; the phase generator is always included.
    """
    rows = []
    for g in gens:
        if any(g.x) or any(g.z):
            rows.append([v % d for v in g.z] + [(-v) % d for v in g.x])
    out: list[PauliProduct] = [phase_op(d, k, 1)]
    if not rows:
        basis = [[1 if i == j else 0 for j in range(2 * k)]
                 for i in range(2 * k)]
    else:
        basis = linalg.nullspace(rows, d)
    for v in basis:
        out.append(from_exponents(d, v[:k], v[k:]))
    return tuple(out)


def _pattern_span(gens, d: int, k: int) -> list[list[int]]:
    rows = [list(g.x) + list(g.z) for g in gens if any(g.x) or any(g.z)]
    if not rows:
        return []
    return linalg.rref(rows, d)[0]


def pauli_groups_equal(a, b, d: int, k: int) -> bool:
    """Equality of phase-saturated input Pauli groups (exponent spans)."""
    return _pattern_span(a, d, k) == _pattern_span(b, d, k)


def verify_duality(analysis: ChannelAnalysis) -> bool:
    """G_B = Cent(G_C) and G_C = Cent(G_B) inside the input Pauli group."""
    d, k = analysis.code.d, analysis.code.k
    cent_c = centralizer_in_pauli(analysis.info_c, d, k)
    cent_b = centralizer_in_pauli(analysis.info_b, d, k)
    return (pauli_groups_equal(analysis.info_b, cent_c, d, k)
            and pauli_groups_equal(analysis.info_c, cent_b, d, k))


def transpose_pauli(p: PauliProduct) -> PauliProduct:
    """Matrix transpose in the computational basis: x -> -x with an omega
    correction from reordering."""
    gamma = p.gamma + 2 * sum(a * b for a, b in zip(p.x, p.z))
    return PauliProduct(p.d, gamma, tuple((-v) % p.d for v in p.x), p.z)


def to_original_input_basis(analysis: ChannelAnalysis,
                            p: PauliProduct) -> PauliProduct:
    """Map a transformed-basis input Pauli to the original input basis.

    The recorded Choi-side input unitary W acts on the isometry as W^T, so
    the original-basis operator is W^T p (W^T)^dag = (W^dag p^T W)^T.
    """
    if p.n != analysis.code.k:
        raise ShapeMismatch("operator must live on the k input qudits")
    k = analysis.code.k
    total = analysis.code.k + analysis.code.n
    wide = embed(p, total, list(range(k)))
    inv_tab = inverse_tableau(analysis.input_tableau)
    mapped = transpose_pauli(conjugate(inv_tab, transpose_pauli(wide)))
    return restrict(mapped, list(range(k)))


@dataclass(frozen=True)
class CapacityBounds:
    """Lower bounds from a subcode: its capacities bound the enclosing
    channel's from below."""

    analysis: ChannelAnalysis

    @property
    def q_b(self) -> int:
        return self.analysis.q_b

    @property
    def c_b(self) -> int:
        return self.analysis.c_b

    @property
    def q_c(self) -> int:
        return self.analysis.q_c

    @property
    def c_c(self) -> int:
        return self.analysis.c_c


def subcode_bounds(sub: CodeSpec, out_b, out_c) -> CapacityBounds:
    """Capacity lower bounds for any channel whose coding space contains the
    given stabilizer subcode."""
    return CapacityBounds(analyze_channel(sub, out_b, out_c))
