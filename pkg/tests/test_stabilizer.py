"""Stabilizer groups: construction, subgroups, ranks, factorization."""

import random

import pytest

from qstab import oracle
from qstab.errors import InvalidStabilizer, NotAState, NotSquarefree, NotSubgroup
from qstab.pauli import (
    from_exponents,
    is_identity_on,
    multiply,
    x_op,
    z_op,
)
from qstab.randgen import random_state
from qstab.stabilizer import (
    GraphAdjacency,
    StabilizerGroup,
    canonical_form,
    elements,
    epr_group,
    extend_generators,
    from_graph,
    ghz_group,
    groups_equal,
    member,
    plus_state_group,
    reduced_rank,
    subgroup_on_part,
    tensor_groups,
    try_factor,
)


def eq100_s1(d):
    return StabilizerGroup(d, 3, (
        from_exponents(d, (0, 0, 0), (1, 0, d - 1)),
        from_exponents(d, (1, 0, 1), (0, 0, 0)),
        from_exponents(d, (0, 1, 0), (0, 0, 0)),
    ))


def test_from_graph_single_vertex():
    g = from_graph(GraphAdjacency(1, ((0,),)), 3)
    assert g.gens == (x_op(3, 1, 0),)


def test_from_graph_one_edge_qubits():
    g = from_graph(GraphAdjacency.from_edges(2, [(0, 1, 1)]), 2)
    assert groups_equal(g, StabilizerGroup(2, 2, (
        from_exponents(2, (1, 0), (0, 1)),   # X1 Z2^{-1} = X1 Z2 at D=2
        from_exponents(2, (0, 1), (1, 0)),
    )))


def test_pentagon_generators():
    pent = GraphAdjacency.from_edges(
        5, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 0, 1)])
    g = from_graph(pent, 2)
    # ring generators X_i Z_{i-1} Z_{i+1}
    for i, gen in enumerate(g.gens):
        assert gen.x[i] == 1
        assert gen.z[(i - 1) % 5] == 1 and gen.z[(i + 1) % 5] == 1
        assert sum(gen.x) == 1 and sum(gen.z) == 2


def test_invalid_noncommuting():
    with pytest.raises(InvalidStabilizer):
        StabilizerGroup(3, 1, (x_op(3, 1, 0), z_op(3, 1, 0)))


def test_invalid_phase_power():
    # lambda X at D=2 squares to -I, not I
    with pytest.raises(InvalidStabilizer):
        StabilizerGroup(2, 1, (from_exponents(2, (1,), (0,), 1),))


def test_invalid_dependent():
    with pytest.raises(InvalidStabilizer):
        StabilizerGroup(3, 2, (x_op(3, 2, 0), x_op(3, 2, 0, 2)))


def test_non_squarefree_rejected():
    with pytest.raises(NotSquarefree):
        StabilizerGroup(4, 1, (x_op(4, 1, 0),))


def test_group_size_composite():
    g = ghz_group(6)
    assert g.size == 6**3
    assert g.is_state()


def test_subgroup_on_part_epr_trivial():
    for d in (2, 3, 5, 6):
        sub = subgroup_on_part(epr_group(d), [0])
        assert sub.gens == ()


def test_subgroup_on_part_eq100():
    for d in (2, 3, 5):
        sub = subgroup_on_part(eq100_s1(d), [0, 1])
        assert groups_equal(
            StabilizerGroup(d, 3, sub.gens),
            StabilizerGroup(d, 3, (x_op(d, 3, 1),)))


def test_subgroup_on_part_everything():
    for d in (2, 6):
        s = ghz_group(d)
        assert groups_equal(subgroup_on_part(s, [0, 1, 2]), s)


def test_subgroup_divides_and_is_local():
    rng = random.Random(20)
    for d in (2, 3, 6):
        for seed in range(6):
            s = random_state(d, 4, seed + 100 * d)
            part = [q for q in range(4) if rng.random() < 0.5]
            sub = subgroup_on_part(s, part)
            assert s.size % sub.size == 0
            off = [q for q in range(4) if q not in part]
            for g in sub.gens:
                assert is_identity_on(g, off)


def test_subgroup_composite_vs_brute_force():
    # scan all group elements; compare with the CRT-based computation
    for d in (6, 10):
        for seed in range(4):
            s = random_state(d, 3, seed + d)
            for part in ([0], [1, 2], [0, 2]):
                off = [q for q in range(3) if q not in part]
                brute = [el for el in elements(s) if is_identity_on(el, off)]
                sub = subgroup_on_part(s, part)
                sub_elements = {str(el) for el in elements(sub)}
                assert sub_elements == {str(el) for el in brute}


def test_reduced_rank_examples():
    for d in (2, 3, 5, 6, 10):
        assert reduced_rank(ghz_group(d), [0]) == d
        assert reduced_rank(epr_group(d), [0]) == d
        assert reduced_rank(plus_state_group(d, 3), [0, 2]) == 1


def test_reduced_rank_matches_dense():
    for d in (2, 3, 5):
        for seed in range(8):
            n = 3 + seed % 2
            s = random_state(d, n, 7 * seed + d)
            part = [q for q in range(n) if (q + seed) % 2 == 0]
            if not part or len(part) == n:
                continue
            v = oracle.state_from_group(s)
            rho = oracle.reduced_density(v, part, d, n)
            assert reduced_rank(s, part) == oracle.density_rank(rho)


def test_rank_formula_on_random_groups():
    # rank(rho_A) * |S_A| = D^{n_A} on 100 random cases
    checked = 0
    for d in (2, 3, 5, 6):
        for seed in range(25):
            s = random_state(d, 4, 13 * seed + d)
            part = [0, 2] if seed % 2 else [1, 2, 3]
            sub = subgroup_on_part(s, part)
            assert reduced_rank(s, part) * sub.size == d ** len(part)
            checked += 1
    assert checked == 100


def test_state_projector_rank_one():
    # the dense construction verifies generator fixing internally
    for d in (2, 3, 5):
        for n in (2, 3, 4):
            if d**n > 700:
                continue
            v = oracle.state_from_group(random_state(d, n, d * n))
            assert abs(complex(v.conj() @ v) - 1.0) < 1e-9


def test_extend_generators_full_set():
    s = ghz_group(3)
    ext = extend_generators(s, list(s.gens))
    assert groups_equal(ext, s)


def test_extend_generators_from_xxx():
    for d in (2, 3, 5):
        s = ghz_group(d)
        xxx = from_exponents(d, (1, 1, 1), (0, 0, 0))
        ext = extend_generators(s, [xxx])
        assert ext.gens[0] == xxx
        assert len(ext.gens) == 3
        assert groups_equal(ext, s)


def test_extend_generators_empty():
    s = epr_group(5)
    ext = extend_generators(s, [])
    assert groups_equal(ext, s)


def test_extend_generators_rejects_outsiders():
    with pytest.raises(NotSubgroup):
        extend_generators(ghz_group(3), [x_op(3, 3, 0)])


def test_member_detects_phase_mismatch():
    s = epr_group(3)
    xx = from_exponents(3, (1, 1), (0, 0))
    assert member(s, xx)
    assert not member(s, from_exponents(3, (1, 1), (0, 0), 2))


def test_tensor_and_try_factor():
    for d in (2, 3, 6):
        prod = tensor_groups(epr_group(d), plus_state_group(d, 1))
        split = try_factor(prod, [0, 1])
        assert split is not None
        left, right = split
        assert groups_equal(left, epr_group(d))
        assert groups_equal(right, plus_state_group(d, 1))


def test_try_factor_ghz_fails():
    for d in (2, 3, 6):
        assert try_factor(ghz_group(d), [0]) is None
        assert try_factor(ghz_group(d), [1, 2]) is None


def test_try_factor_eq100():
    # the first example state factors across {A1, B1} | {A2}
    for d in (2, 3):
        split = try_factor(eq100_s1(d), [0, 2])
        assert split is not None
        left, right = split
        assert groups_equal(left, epr_group(d))
        assert groups_equal(right, plus_state_group(d, 1))


def test_epr_ghz_dense_states():
    import numpy as np

    for d in (2, 3, 5):
        v = oracle.state_from_group(epr_group(d))
        want = np.zeros(d * d, complex)
        for i in range(d):
            want[i * d + i] = 1 / np.sqrt(d)
        assert oracle.states_equal_up_to_phase(v, want)
    v = oracle.state_from_group(ghz_group(3))
    want = np.zeros(27, complex)
    for i in range(3):
        want[i * 9 + i * 3 + i] = 1 / np.sqrt(3)
    assert oracle.states_equal_up_to_phase(v, want)


def test_not_a_state_rank():
    partial = StabilizerGroup(3, 2, (x_op(3, 2, 0),))
    with pytest.raises(NotAState):
        reduced_rank(partial, [0])


def test_canonical_form_presentation_independent():
    for d in (2, 3, 6):
        s = ghz_group(d)
        g1, g2, g3 = s.gens
        other = StabilizerGroup(d, 3, (multiply(g1, g2), g3, g2))
        assert canonical_form(other) == canonical_form(s)
        assert groups_equal(other, s)


def test_zero_qudit_group():
    empty = StabilizerGroup(3, 0, ())
    assert empty.size == 1 and empty.is_state()
