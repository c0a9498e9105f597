"""Clifford tableaux: gate rules, composition, pivoting, dense agreement."""

import random

import pytest

from qstab import oracle
from qstab.clifford import (
    apply_gate,
    cnot,
    compose,
    conjugate,
    conjugate_by_gates,
    cphase,
    fourier,
    from_gates,
    gate_conjugate,
    identity_tableau,
    inverse_tableau,
    pauli_x,
    pauli_z,
    phase_w,
    pivot_to_x1,
    smult,
)
from qstab.errors import IdentityOnPart, NonPrimeD, NotInvertible
from qstab.modring import inv_mod
from qstab.pauli import from_exponents, identity, order, x_op, z_op


def random_pauli(rng, d, n):
    return from_exponents(d, [rng.randrange(d) for _ in range(n)],
                          [rng.randrange(d) for _ in range(n)],
                          rng.randrange(2 * d))


def random_gates(rng, d, n, count):
    gates = []
    for _ in range(count):
        q = rng.randrange(n)
        kind = rng.randrange(7 if n > 1 else 5)
        if kind == 0:
            gates.append(fourier(q))
        elif kind == 1:
            while True:
                a = rng.randrange(1, d)
                try:
                    inv_mod(a, d)
                    break
                except NotInvertible:
                    continue
            gates.append(smult(q, a))
        elif kind == 2:
            gates.append(phase_w(q))
        elif kind == 3:
            gates.append(pauli_x(q, rng.randrange(1, d)))
        elif kind == 4:
            gates.append(pauli_z(q, rng.randrange(1, d)))
        else:
            r = rng.choice([i for i in range(n) if i != q])
            if kind == 5:
                gates.append(cphase(q, r, rng.randrange(1, d)))
            else:
                gates.append(cnot(q, r))
    return gates


def test_fourier_table_rows():
    for d in (2, 3, 4, 5, 6):
        z = z_op(d, 1, 0)
        x = x_op(d, 1, 0)
        assert gate_conjugate(fourier(0), z) == x
        assert gate_conjugate(fourier(0), x) == z_op(d, 1, 0, d - 1)


def test_smult_table_rows():
    for d, alpha in ((3, 2), (5, 3), (7, 4)):
        abar = inv_mod(alpha, d)
        assert gate_conjugate(smult(0, alpha), z_op(d, 1, 0)) == z_op(d, 1, 0, alpha)
        assert gate_conjugate(smult(0, alpha), x_op(d, 1, 0)) == x_op(d, 1, 0, abar)


def test_smult_rejects_non_invertible():
    with pytest.raises(NotInvertible):
        apply_gate(identity_tableau(6, 1), smult(0, 2))


def test_phase_w_table_rows():
    for d in (3, 5, 7):  # odd: X -> XZ with no extra phase
        got = gate_conjugate(phase_w(0), x_op(d, 1, 0))
        assert got == from_exponents(d, (1,), (1,), 0)
    for d in (2, 4, 6):  # even: X -> lambda X Z
        got = gate_conjugate(phase_w(0), x_op(d, 1, 0))
        assert got == from_exponents(d, (1,), (1,), 1)
    for d in (2, 3, 6):
        assert gate_conjugate(phase_w(0), z_op(d, 1, 0)) == z_op(d, 1, 0)


def test_cnot_equals_fourier_conjugated_cphase():
    # CNOT = (I (x) F) CP (I (x) F)^dag, as conjugation maps
    for d in (2, 3, 5, 6):
        lhs = from_gates(d, 2, [cnot(0, 1)])
        rhs = from_gates(d, 2, [fourier(1)] * 3 + [cphase(0, 1, 1), fourier(1)])
        assert lhs.image_x == rhs.image_x
        assert lhs.image_z == rhs.image_z


def test_conjugate_via_images_equals_gate_replay():
    rng = random.Random(11)
    for d in (2, 3, 5, 6):
        for _ in range(10):
            n = rng.randrange(1, 4)
            gates = random_gates(rng, d, n, 8)
            tab = from_gates(d, n, gates)
            p = random_pauli(rng, d, n)
            assert conjugate(tab, p) == conjugate_by_gates(gates, p)


def test_conjugate_matches_dense():
    rng = random.Random(12)
    for d in (2, 3, 5):
        for _ in range(8):
            n = rng.randrange(1, 4)
            gates = random_gates(rng, d, n, 6)
            tab = from_gates(d, n, gates)
            u = oracle.clifford_matrix(d, n, gates)
            p = random_pauli(rng, d, n)
            lhs = u @ oracle.pauli_matrix(p) @ u.conj().T
            assert oracle.matrices_equal(lhs, oracle.pauli_matrix(conjugate(tab, p)))


def test_identity_tableau_fixes_everything():
    rng = random.Random(13)
    for d in (2, 6):
        p = random_pauli(rng, d, 3)
        assert conjugate(identity_tableau(d, 3), p) == p


def test_fourier_fourth_power_is_identity():
    # independent oracle: dense matrix replay
    for d in (2, 3, 5, 6):
        tab = from_gates(d, 1, [fourier(0)] * 4)
        assert tab.image_x == identity_tableau(d, 1).image_x
        assert tab.image_z == identity_tableau(d, 1).image_z
        u = oracle.clifford_matrix(d, 1, [fourier(0)] * 4)
        assert oracle.matrices_equal(u, oracle.clifford_matrix(d, 1, []))


def test_compose_and_inverse():
    rng = random.Random(14)
    for d in (2, 3, 5, 6):
        n = 2
        t1 = from_gates(d, n, random_gates(rng, d, n, 6))
        t2 = from_gates(d, n, random_gates(rng, d, n, 6))
        both = compose(t1, t2)
        p = random_pauli(rng, d, n)
        assert conjugate(both, p) == conjugate(t1, conjugate(t2, p))
        inv = inverse_tableau(t1)
        round_trip = compose(t1, inv)
        ident = identity_tableau(d, n)
        assert round_trip.image_x == ident.image_x
        assert round_trip.image_z == ident.image_z


def test_compose_associative():
    rng = random.Random(15)
    d, n = 3, 2
    tabs = [from_gates(d, n, random_gates(rng, d, n, 5)) for _ in range(3)]
    left = compose(compose(tabs[0], tabs[1]), tabs[2])
    right = compose(tabs[0], compose(tabs[1], tabs[2]))
    assert left.image_x == right.image_x and left.image_z == right.image_z


def test_symplectic_and_order_preservation():
    from qstab.pauli import commutation_phase

    rng = random.Random(16)
    for d in (2, 3, 5, 6):
        n = 3
        tab = from_gates(d, n, random_gates(rng, d, n, 10))
        for _ in range(10):
            p, q = random_pauli(rng, d, n), random_pauli(rng, d, n)
            assert commutation_phase(p, q) == commutation_phase(
                conjugate(tab, p), conjugate(tab, q))
            assert order(p) == order(conjugate(tab, p))


def test_gate_log_replay_determinism():
    rng = random.Random(17)
    for d in (2, 5, 6):
        gates = random_gates(rng, d, 3, 12)
        t1 = from_gates(d, 3, gates)
        t2 = from_gates(d, 3, list(t1.gate_log))
        assert t1 == t2


def test_pivot_already_in_place():
    for d in (2, 3, 5):
        p = x_op(d, 3, 1)
        tab = pivot_to_x1(p, [0, 1, 2], target=1)
        assert tab.gate_log == ()
        assert conjugate(tab, p) == p


def test_pivot_single_z_is_one_fourier():
    p = z_op(3, 1, 0)
    tab = pivot_to_x1(p, [0])
    assert [g.name for g in tab.gate_log] == ["F"]
    assert conjugate(tab, p) == x_op(3, 1, 0)


def test_pivot_random_exact_with_dense():
    rng = random.Random(18)
    for d in (2, 3, 5):
        for _ in range(25):
            n = rng.randrange(1, 4)
            p = from_exponents(d, [rng.randrange(d) for _ in range(n)],
                               [rng.randrange(d) for _ in range(n)])
            if p.is_phase():
                continue
            # arrange p^D = I exactly by zeroing gamma of a bare product
            from qstab.pauli import power

            pd = power(p, d)
            if pd.gamma:
                target_gamma = next(g for g in range(2 * d)
                                    if (g * d + pd.gamma) % (2 * d) == 0)
                p = from_exponents(d, p.x, p.z, target_gamma)
            assert power(p, d).is_identity()
            tab = pivot_to_x1(p, range(n))
            got = conjugate(tab, p)
            assert got == x_op(d, n, min(p.support()))
            tabz = pivot_to_x1(p, range(n), want_z=True)
            assert conjugate(tabz, p) == z_op(d, n, min(p.support()))
            u = oracle.clifford_matrix(d, n, tab.gate_log)
            assert oracle.matrices_equal(
                u @ oracle.pauli_matrix(p) @ u.conj().T,
                oracle.pauli_matrix(got))


def test_pivot_errors():
    with pytest.raises(IdentityOnPart):
        pivot_to_x1(identity(3, 2), [0, 1])
    with pytest.raises(NonPrimeD):
        pivot_to_x1(x_op(6, 1, 0), [0])
    with pytest.raises(IdentityOnPart):
        pivot_to_x1(x_op(3, 2, 1), [0])


def test_gates_confined_to_part():
    rng = random.Random(19)
    d, n = 3, 4
    p = from_exponents(d, (0, 1, 2, 0), (0, 2, 1, 0))
    tab = pivot_to_x1(p, [1, 2])
    assert all(set(g.qudits) <= {1, 2} for g in tab.gate_log)
    assert conjugate(tab, p) == x_op(d, n, 1)
