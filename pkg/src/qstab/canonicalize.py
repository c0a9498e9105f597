"""EPR/GHZ normal forms of bipartitioned and tripartitioned stabilizer states.

The constructive pipeline, for prime D:

  1. unentangled extraction: while some part carries a local subgroup element,
     pivot it to a bare X on one qudit, rebase the other generators off that
     qudit, and retire the qudit as a single |+>.
  2. EPR extraction on a pair of parts: whenever two elements of the
     two-part subgroup have non-commuting first-part components, normalize
     their commutation phase to a single omega, pivot one element to
     Z Z^{-1}, shape the other to X X across one qudit of each part, rebase
     the remaining generators off those qudits, and retire the pair.
  3. GHZ extraction: pick a BC-local element and pivot it to Z_b Z_c^{-1};
     locate the AB-local partner carrying the matching Z_b and pivot it to
     Z_a^{-1} Z_b; locate the element whose C-pattern is a bare X_c and shape
     it to X_a X_b X_c; rebase and retire the triple.

Squarefree composite D runs per prime factor after CRT decomposition; the
composite counts are reported as the componentwise minimum across factors
(the per-factor results remain ground truth and are carried along).

All tie-breaks are fixed (lowest generator index, lowest qudit index), so
identical inputs produce identical normal forms. Every prime-D run ends with
a built-in exactness check: the input conjugated by the returned unitaries
must equal the normal-form group bit-exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import linalg
from .clifford import (
    CliffordTableau,
    Gate,
    apply_gate,
    compose,
    conjugate,
    gate_conjugate,
    identity_tableau,
    pauli_x,
    pauli_z,
    pivot_part_gates,
)
from .crt import decompose_state
from .errors import (
    InternalInvariant,
    NonPrimeD,
    NotAState,
    NotSquarefree,
    PreconditionViolated,
    ShapeMismatch,
)
from .modring import factorize, inv_mod
from .pauli import PauliProduct, identity, multiply, power, x_op
from .stabilizer import (
    StabilizerGroup,
    canonical_form,
    epr_pair_generators,
    ghz_generators,
    reduce_generators,
    subgroup_on_part,
)


@dataclass(frozen=True)
class Partition:
    """Two or three disjoint index sets covering all n qudits."""

    n: int
    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.parts) not in (2, 3):
            raise ShapeMismatch("partitions have two or three parts")
        seen: set[int] = set()
        for part in self.parts:
            for q in part:
                if not 0 <= q < self.n:
                    raise ShapeMismatch(f"qudit {q} outside register of size {self.n}")
                if q in seen:
                    raise ShapeMismatch(f"qudit {q} appears in two parts")
                seen.add(q)
        if len(seen) != self.n:
            missing = sorted(set(range(self.n)) - seen)
            raise ShapeMismatch(f"qudits {missing} not covered by the partition")
        object.__setattr__(self, "parts",
                           tuple(tuple(sorted(p)) for p in self.parts))


@dataclass(frozen=True)
class NormalForm:
    """Counts, per-part unitaries, and the qudit role assignment.

    For composite D, `factors` holds the per-prime normal forms (ground
    truth); the top-level counts are then the componentwise minimum and
    `composite_counts_derived` marks that presentation.
    """

    d: int
    n: int
    parts: tuple[tuple[int, ...], ...]
    m_a: int
    m_b: int
    m_c: int
    m_ab: int
    m_ac: int
    m_bc: int
    m_abc: int
    singles: tuple[tuple[int, int], ...]
    pairs: tuple[tuple[int, int, int, int], ...]
    triples: tuple[tuple[int, int, int], ...]
    tableaux: tuple[CliffordTableau, ...]
    factors: tuple[tuple[int, "NormalForm"], ...] = ()
    composite_counts_derived: bool = False

    @property
    def counts(self) -> dict[str, int]:
        return {"m_A": self.m_a, "m_B": self.m_b, "m_C": self.m_c,
                "m_AB": self.m_ab, "m_AC": self.m_ac, "m_BC": self.m_bc,
                "m_ABC": self.m_abc}

    def crossing_count(self, side) -> int:
        """Normal-form factors crossing the cut with the given part indices
        on one side; a GHZ crosses every nontrivial cut once."""
        side_set = set(side)
        total = 0
        if 0 < len(side_set) < len(self.parts):
            total += self.m_abc
        for (i, j), m in (((0, 1), self.m_ab), ((0, 2), self.m_ac),
                          ((1, 2), self.m_bc)):
            if (i in side_set) != (j in side_set):
                total += m
        return total


def normal_form_group(nf: NormalForm) -> StabilizerGroup:
    """The exact group the conjugated input must equal (prime D)."""
    gens: list[PauliProduct] = []
    for q, _ in nf.singles:
        gens.append(x_op(nf.d, nf.n, q))
    for _, _, qx, qy in nf.pairs:
        gens.extend(epr_pair_generators(nf.d, nf.n, qx, qy))
    for qa, qb, qc in nf.triples:
        gens.extend(ghz_generators(nf.d, nf.n, qa, qb, qc))
    return StabilizerGroup(nf.d, nf.n, tuple(gens))


def composed_tableau(nf: NormalForm) -> CliffordTableau:
    """All per-part unitaries composed (their supports are disjoint)."""
    total = nf.tableaux[0]
    for t in nf.tableaux[1:]:
        total = compose(total, t)
    return total


class _Extraction:
    """Mutable working state shared by the extraction steps (prime D)."""

    def __init__(self, group: StabilizerGroup, partition: Partition):
        self.d = group.d
        self.n = group.n
        self.parts = [list(p) for p in partition.parts]
        self.active: list[PauliProduct] = list(
            reduce_generators(group.d, list(group.gens), group.n))
        self.tabs: list[CliffordTableau] = [
            identity_tableau(group.d, group.n) for _ in self.parts]
        self.retired: set[int] = set()
        self.singles: list[tuple[int, int]] = []
        self.pairs: list[tuple[int, int, int, int]] = []
        self.triples: list[tuple[int, int, int]] = []

    def active_qudits(self, part_idx: int) -> list[int]:
        return [q for q in self.parts[part_idx] if q not in self.retired]

    def active_group(self) -> StabilizerGroup:
        return StabilizerGroup(self.d, self.n, tuple(self.active))

    def apply(self, part_idx: int, gates: list[Gate],
              tracked: list[PauliProduct]) -> list[PauliProduct]:
        allowed = set(self.active_qudits(part_idx))
        for g in gates:
            if not set(g.qudits) <= allowed:
                raise InternalInvariant("gate escapes its part's active qudits")
            self.tabs[part_idx] = apply_gate(self.tabs[part_idx], g)
            self.active = [gate_conjugate(g, a) for a in self.active]
            tracked = [gate_conjugate(g, t) for t in tracked]
        return tracked

    def reduce_active(self, paulis: list[PauliProduct]) -> None:
        self.active = list(reduce_generators(self.d, paulis, self.n))
        expected = self.d ** (self.n - len(self.retired))
        if self.active_group().size != expected:
            raise InternalInvariant("active group lost or gained elements")

    def strip_phase(self, part_idx: int, tracked: list[PauliProduct],
                    which: int, qudit: int, use_x: bool) -> list[PauliProduct]:
        """Remove the residual omega power of tracked[which] via a Pauli
        conjugation at `qudit` (conj by X^a adds 2 a z to gamma; Z^b, -2 b x).

        Every tracked element rides through the same gate: a Pauli conjugation
        can rephase any element with support at `qudit`.
        """
        element = tracked[which]
        if element.gamma % 2 != 0:
            raise InternalInvariant("element has odd phase; p^D != I")
        c = element.gamma // 2
        if c == 0:
            return tracked
        if use_x:
            a = (-c * inv_mod(element.z[qudit], self.d)) % self.d
            gate = pauli_x(qudit, a)
        else:
            b = (c * inv_mod(element.x[qudit], self.d)) % self.d
            gate = pauli_z(qudit, b)
        return self.apply(part_idx, [gate], tracked)


def _comm_on(p: PauliProduct, q: PauliProduct, qudits, d: int) -> int:
    """Commutation phase of the components restricted to `qudits`."""
    return sum(p.x[i] * q.z[i] - p.z[i] * q.x[i] for i in qudits) % d


def _columns(g: PauliProduct, qudits) -> list[int]:
    return [g.x[i] for i in qudits] + [g.z[i] for i in qudits]


def _solve_for_pattern(gens: list[PauliProduct], qudits, target: list[int],
                       d: int, n: int) -> PauliProduct | None:
    """Group element whose exponents on `qudits` equal `target` (prime D)."""
    if not gens:
        return None
    rows = [_columns(g, qudits) for g in gens]
    coeffs = linalg.solve(rows, target, d)
    if coeffs is None:
        return None
    el = identity(d, n)
    for g, c in zip(gens, coeffs):
        if c:
            el = multiply(el, power(g, c))
    return el


def _extract_single_once(ctx: _Extraction, part_idx: int) -> bool:
    """One unentangled-qudit extraction from `part_idx`, if possible."""
    part_active = ctx.active_qudits(part_idx)
    if not part_active:
        return False
    sub = subgroup_on_part(ctx.active_group(), part_active)
    if not sub.gens:
        return False
    s = sub.gens[0]
    target = min(s.support())
    gates, _ = pivot_part_gates(s, part_active, target, "X")
    (s,) = ctx.apply(part_idx, gates, [s])
    (s,) = ctx.strip_phase(part_idx, [s], 0, target, use_x=False)
    if s != x_op(ctx.d, ctx.n, target):
        raise InternalInvariant("single-qudit pivot failed")
    # every group element commutes with s = X_target, so no Z_target appears
    rebased = [multiply(g, power(s, -g.x[target])) for g in ctx.active]
    ctx.retired.add(target)
    ctx.singles.append((target, part_idx))
    ctx.reduce_active([g for g in rebased if not (g.x[target] or g.z[target])])
    return True


def _extract_epr_once(ctx: _Extraction, pi: int, pj: int) -> bool:
    """One EPR extraction across parts (pi, pj), if possible."""
    ax = ctx.active_qudits(pi)
    ay = ctx.active_qudits(pj)
    if not ax or not ay:
        return False
    sub = subgroup_on_part(ctx.active_group(), ax + ay)
    pair = None
    for a, b in itertools.combinations(range(len(sub.gens)), 2):
        alpha = _comm_on(sub.gens[b], sub.gens[a], ax, ctx.d)
        if alpha:
            pair = (a, b, alpha)
            break
    if pair is None:
        return False
    a, b, alpha = pair
    s_j = sub.gens[a]
    s_k = power(sub.gens[b], inv_mod(alpha, ctx.d))

    qx = min(q for q in ax if s_j.x[q] or s_j.z[q])
    gates, _ = pivot_part_gates(s_j, ax, qx, "Z")
    s_j, s_k = ctx.apply(pi, gates, [s_j, s_k])
    qy = min(q for q in ay if s_j.x[q] or s_j.z[q])
    gates, _ = pivot_part_gates(s_j, ay, qy, "Z-")
    s_j, s_k = ctx.apply(pj, gates, [s_j, s_k])
    s_j, s_k = ctx.strip_phase(pi, [s_j, s_k], 0, qx, use_x=True)

    # commutation with s_j pins both X exponents of s_k to one
    if s_k.x[qx] != 1 or s_k.x[qy] != 1:
        raise InternalInvariant("partner element lost its X components")
    gates, _ = pivot_part_gates(s_k, ax, qx, "X")
    s_j, s_k = ctx.apply(pi, gates, [s_j, s_k])
    gates, _ = pivot_part_gates(s_k, ay, qy, "X")
    s_j, s_k = ctx.apply(pj, gates, [s_j, s_k])
    s_j, s_k = ctx.strip_phase(pi, [s_j, s_k], 1, qx, use_x=False)

    pair_gens = epr_pair_generators(ctx.d, ctx.n, qx, qy)
    if s_k != pair_gens[0] or s_j != pair_gens[1]:
        raise InternalInvariant("EPR shaping failed")
    rebased = [multiply(g, multiply(power(s_k, -g.x[qx]),
                                    power(s_j, -g.z[qx])))
               for g in ctx.active]
    ctx.retired.update((qx, qy))
    ctx.pairs.append((pi, pj, qx, qy))
    ctx.reduce_active([g for g in rebased
                       if not any(g.x[q] or g.z[q] for q in (qx, qy))])
    return True


def _extract_ghz_once(ctx: _Extraction) -> bool:
    """One GHZ extraction; False when the active group is exhausted."""
    if not ctx.active:
        return False
    aq = [ctx.active_qudits(i) for i in range(3)]
    sub_bc = subgroup_on_part(ctx.active_group(), aq[1] + aq[2])
    if not sub_bc.gens:
        raise InternalInvariant("nonempty active state with empty BC subgroup")
    t1 = sub_bc.gens[0]

    qb = min(q for q in aq[1] if t1.x[q] or t1.z[q])
    gates, _ = pivot_part_gates(t1, aq[1], qb, "Z")
    (t1,) = ctx.apply(1, gates, [t1])
    qc = min(q for q in aq[2] if t1.x[q] or t1.z[q])
    gates, _ = pivot_part_gates(t1, aq[2], qc, "Z-")
    (t1,) = ctx.apply(2, gates, [t1])
    (t1,) = ctx.strip_phase(1, [t1], 0, qb, use_x=True)

    sub_ab = subgroup_on_part(ctx.active_group(), aq[0] + aq[1])
    target = [0] * (2 * len(aq[1]))
    target[len(aq[1]) + aq[1].index(qb)] = 1
    t2 = _solve_for_pattern(list(sub_ab.gens), aq[1], target, ctx.d, ctx.n)
    if t2 is None:
        raise InternalInvariant("no AB element matching Z on the pivot qudit")
    qa = min(q for q in aq[0] if t2.x[q] or t2.z[q])
    gates, _ = pivot_part_gates(t2, aq[0], qa, "Z-")
    t1, t2 = ctx.apply(0, gates, [t1, t2])
    t1, t2 = ctx.strip_phase(0, [t1, t2], 1, qa, use_x=True)

    target = [0] * (2 * len(aq[2]))
    target[aq[2].index(qc)] = 1
    t3 = _solve_for_pattern(ctx.active, aq[2], target, ctx.d, ctx.n)
    if t3 is None:
        raise InternalInvariant("no element with bare X on the C pivot qudit")
    # commutation with t1 and t2 pins both X exponents of t3 to one
    if t3.x[qa] != 1 or t3.x[qb] != 1:
        raise InternalInvariant("GHZ candidate lost its X components")
    gates, _ = pivot_part_gates(t3, aq[0], qa, "X")
    t1, t2, t3 = ctx.apply(0, gates, [t1, t2, t3])
    gates, _ = pivot_part_gates(t3, aq[1], qb, "X")
    t1, t2, t3 = ctx.apply(1, gates, [t1, t2, t3])
    t1, t2, t3 = ctx.strip_phase(2, [t1, t2, t3], 2, qc, use_x=False)

    xxx = ghz_generators(ctx.d, ctx.n, qa, qb, qc)[0]
    zb_zc = epr_pair_generators(ctx.d, ctx.n, qb, qc)[1]
    za_zb = power(epr_pair_generators(ctx.d, ctx.n, qa, qb)[1], -1)
    if t1 != zb_zc or t2 != za_zb or t3 != xxx:
        raise InternalInvariant("GHZ shaping failed")

    rebased = []
    for g in ctx.active:
        g1 = multiply(g, power(t3, -g.x[qa]))
        a_exp = g1.z[qa]
        b_exp = g1.z[qb]
        rebased.append(multiply(g1, multiply(power(t2, a_exp),
                                             power(t1, -(a_exp + b_exp)))))
    ctx.retired.update((qa, qb, qc))
    ctx.triples.append((qa, qb, qc))
    ctx.reduce_active([g for g in rebased
                       if not any(g.x[q] or g.z[q] for q in (qa, qb, qc))])
    return True


def _prime_normal_form(group: StabilizerGroup,
                       partition: Partition) -> NormalForm:
    ctx = _Extraction(group, partition)
    nparts = len(partition.parts)
    changed = True
    while changed:
        changed = False
        for pi in range(nparts):
            while _extract_single_once(ctx, pi):
                changed = True
        for pi, pj in itertools.combinations(range(nparts), 2):
            while _extract_epr_once(ctx, pi, pj):
                changed = True
    if nparts == 3:
        while _extract_ghz_once(ctx):
            pass
    if ctx.active:
        raise InternalInvariant("extraction finished with residual generators")

    part_singles = [0, 0, 0]
    for _, pi in ctx.singles:
        part_singles[pi] += 1
    pair_counts = {(0, 1): 0, (0, 2): 0, (1, 2): 0}
    for pi, pj, _, _ in ctx.pairs:
        pair_counts[(pi, pj)] += 1
    nf = NormalForm(
        d=group.d, n=group.n, parts=partition.parts,
        m_a=part_singles[0], m_b=part_singles[1], m_c=part_singles[2],
        m_ab=pair_counts[(0, 1)], m_ac=pair_counts[(0, 2)],
        m_bc=pair_counts[(1, 2)], m_abc=len(ctx.triples),
        singles=tuple(ctx.singles), pairs=tuple(ctx.pairs),
        triples=tuple(ctx.triples), tableaux=tuple(ctx.tabs),
    )
    _verify_exact(group, nf)
    return nf


def _verify_exact(group: StabilizerGroup, nf: NormalForm) -> None:
    """The input conjugated by the returned unitaries must equal the
    normal-form group bit-exactly."""
    total = composed_tableau(nf)
    conjugated = StabilizerGroup(
        group.d, group.n, tuple(conjugate(total, g) for g in group.gens))
    if canonical_form(conjugated) != canonical_form(normal_form_group(nf)):
        raise InternalInvariant("conjugated input differs from the normal form")


def _composite_normal_form(group: StabilizerGroup,
                           partition: Partition) -> NormalForm:
    factor_forms = [(p, _prime_normal_form(factor, partition))
                    for p, factor in decompose_state(group)]
    mins = {key: min(nf.counts[key] for _, nf in factor_forms)
            for key in factor_forms[0][1].counts}
    return NormalForm(
        d=group.d, n=group.n, parts=partition.parts,
        m_a=mins["m_A"], m_b=mins["m_B"], m_c=mins["m_C"],
        m_ab=mins["m_AB"], m_ac=mins["m_AC"], m_bc=mins["m_BC"],
        m_abc=mins["m_ABC"],
        singles=(), pairs=(), triples=(), tableaux=(),
        factors=tuple(factor_forms), composite_counts_derived=True,
    )


def _normal_form(group: StabilizerGroup, parts) -> NormalForm:
    if not group.is_state():
        raise NotAState(f"group size {group.size} != {group.d}^{group.n}")
    partition = Partition(group.n, tuple(tuple(p) for p in parts))
    mod = factorize(group.d)
    if not mod.squarefree:
        raise NotSquarefree(f"D = {group.d} is not squarefree")
    if mod.is_prime:
        return _prime_normal_form(group, partition)
    return _composite_normal_form(group, partition)


def bipartition_normal_form(group: StabilizerGroup, part_a,
                            part_b) -> NormalForm:
    """EPR-pair/single-qudit normal form across a bipartition."""
    return _normal_form(group, (part_a, part_b))


def tripartition_normal_form(group: StabilizerGroup, part_a, part_b,
                             part_c) -> NormalForm:
    """GHZ/EPR/single-qudit normal form across a tripartition."""
    return _normal_form(group, (part_a, part_b, part_c))


def _require_prime(d: int) -> None:
    if not factorize(d).is_prime:
        raise NonPrimeD("direct extraction requires prime D")


def _with_rest(n: int, parts: list[tuple[int, ...]]) -> Partition:
    """Complete a 1- or 2-part prefix with the remaining qudits."""
    covered = set().union(*(set(p) for p in parts)) if parts else set()
    rest = tuple(q for q in range(n) if q not in covered)
    if len(parts) == 1:
        return Partition(n, (parts[0], rest))
    if len(parts) == 2 and rest:
        return Partition(n, (parts[0], parts[1], rest))
    return Partition(n, tuple(parts))


def extract_unentangled(group: StabilizerGroup,
                        part) -> tuple[StabilizerGroup, CliffordTableau, int]:
    """Pull every unentangled single qudit out of `part` (prime D).

    Returns the conjugated group (extracted qudits carry bare X generators),
    the local Clifford on `part`, and the extraction count.
    """
    _require_prime(group.d)
    partition = _with_rest(group.n, [tuple(sorted(part))])
    ctx = _Extraction(group, partition)
    count = 0
    while _extract_single_once(ctx, 0):
        count += 1
    gens = tuple(ctx.active) + tuple(x_op(group.d, group.n, q)
                                     for q, _ in ctx.singles)
    return StabilizerGroup(group.d, group.n, gens), ctx.tabs[0], count


def extract_epr_pair(group: StabilizerGroup, part_x, part_y):
    """One EPR extraction across (part_x, part_y), or None when every pair of
    first-part components commutes (prime D).

    Returns (conjugated group, (tab_x, tab_y), (qx, qy)); the extracted pair
    generators stay in the returned group on the retired qudits.
    """
    _require_prime(group.d)
    partition = _with_rest(
        group.n, [tuple(sorted(part_x)), tuple(sorted(part_y))])
    ctx = _Extraction(group, partition)
    if not _extract_epr_once(ctx, 0, 1):
        return None
    _, _, qx, qy = ctx.pairs[0]
    gens = tuple(ctx.active) + tuple(
        epr_pair_generators(group.d, group.n, qx, qy))
    return (StabilizerGroup(group.d, group.n, gens),
            (ctx.tabs[0], ctx.tabs[1]), (qx, qy))


def extract_ghz(group: StabilizerGroup, part_a, part_b, part_c):
    """One GHZ extraction, or None when the state is fully extracted
    (prime D).

    Raises PreconditionViolated when a part still carries an unentangled
    subsystem or a pairwise EPR pair remains.
    """
    _require_prime(group.d)
    partition = Partition(group.n, (tuple(part_a), tuple(part_b),
                                    tuple(part_c)))
    ctx = _Extraction(group, partition)
    for pi in range(3):
        sub = subgroup_on_part(ctx.active_group(), ctx.active_qudits(pi))
        if sub.gens:
            raise PreconditionViolated(
                f"part {pi} still carries an unentangled subsystem")
    for pi, pj in itertools.combinations(range(3), 2):
        ax = ctx.active_qudits(pi)
        sub = subgroup_on_part(ctx.active_group(),
                               ax + ctx.active_qudits(pj))
        for a, b in itertools.combinations(sub.gens, 2):
            if _comm_on(a, b, ax, ctx.d) != 0:
                raise PreconditionViolated(
                    f"pairwise EPR extraction incomplete between parts {pi} and {pj}")
    if not _extract_ghz_once(ctx):
        return None
    qa, qb, qc = ctx.triples[0]
    gens = tuple(ctx.active) + tuple(
        ghz_generators(group.d, group.n, qa, qb, qc))
    return (StabilizerGroup(group.d, group.n, gens), tuple(ctx.tabs),
            (qa, qb, qc))
