"""Clifford unitaries as conjugation tableaux with replayable gate logs.

A tableau stores the images of the 2n Pauli generators under U . U^dag plus
the ordered list of elementary gates that produced it, so every canonicalization
result is a human-auditable circuit. The gate alphabet:

    F q        Fourier gate:        Z -> X,  X -> Z^{-1}
    S q a      multiplicative gate: Z -> Z^a, X -> X^{a^{-1}}   (a invertible)
    W q        phase gate:          Z -> Z,  X -> lambda X Z (even D) / X Z (odd D)
    X q a      Pauli X^a conjugation (phases only)
    Z q b      Pauli Z^b conjugation (phases only)
    CP q r w   controlled-phase^w:  X_q -> X_q Z_r^{-w}, X_r -> Z_q^{-w} X_r
    CNOT q r   controlled shift:    X_q -> X_q X_r^{-1}, Z_r -> Z_q Z_r

All rules are exact on (x, z, gamma); the derivations fix gamma increments so
that tableau conjugation agrees entrywise with dense matrix conjugation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    IdentityOnPart,
    IndexOutOfRange,
    InvalidStabilizer,
    NonPrimeD,
    ShapeMismatch,
)
from .modring import inv_mod, is_prime
from .pauli import PauliProduct, multiply, power, x_op, z_op

GATE_NAMES = ("F", "S", "W", "X", "Z", "CP", "CNOT")


@dataclass(frozen=True)
class Gate:
    """One elementary gate: name, qudit indices, optional integer parameter."""

    name: str
    qudits: tuple[int, ...]
    param: int = 0


def fourier(q: int) -> Gate:
    return Gate("F", (q,))


def smult(q: int, alpha: int) -> Gate:
    return Gate("S", (q,), alpha)


def phase_w(q: int) -> Gate:
    return Gate("W", (q,))


def pauli_x(q: int, a: int = 1) -> Gate:
    return Gate("X", (q,), a)


def pauli_z(q: int, b: int = 1) -> Gate:
    return Gate("Z", (q,), b)


def cphase(control: int, target: int, weight: int = 1) -> Gate:
    return Gate("CP", (control, target), weight)


def cnot(control: int, target: int) -> Gate:
    return Gate("CNOT", (control, target))


def gate_conjugate(gate: Gate, p: PauliProduct) -> PauliProduct:
    """Image of p under conjugation by the gate's unitary, exact in gamma."""
    d = p.d
    x = list(p.x)
    z = list(p.z)
    gamma = p.gamma
    for q in gate.qudits:
        if not 0 <= q < p.n:
            raise IndexOutOfRange(f"qudit {q} outside register of size {p.n}")
    if gate.name == "F":
        q = gate.qudits[0]
        # Z^{-x} X^z reorders with omega^{x z}
        gamma += 2 * x[q] * z[q]
        x[q], z[q] = z[q], (-x[q]) % d
    elif gate.name == "S":
        q = gate.qudits[0]
        alpha = gate.param % d
        abar = inv_mod(alpha, d)
        x[q] = (abar * x[q]) % d
        z[q] = (alpha * z[q]) % d
    elif gate.name == "W":
        q = gate.qudits[0]
        e = 1 if d % 2 == 0 else 0
        # (lambda^e X Z)^x = lambda^{e x} omega^{-x(x-1)/2} X^x Z^x
        gamma += e * x[q] - x[q] * (x[q] - 1)
        z[q] = (z[q] + x[q]) % d
    elif gate.name == "X":
        q = gate.qudits[0]
        gamma += 2 * gate.param * z[q]
    elif gate.name == "Z":
        q = gate.qudits[0]
        gamma -= 2 * gate.param * x[q]
    elif gate.name == "CP":
        q, r = gate.qudits
        if q == r:
            raise IndexOutOfRange("CP needs distinct qudits")
        w = gate.param
        gamma += 2 * w * x[q] * x[r]
        z[q] = (z[q] - w * x[r]) % d
        z[r] = (z[r] - w * x[q]) % d
    elif gate.name == "CNOT":
        q, r = gate.qudits
        if q == r:
            raise IndexOutOfRange("CNOT needs distinct qudits")
        z[q] = (z[q] + z[r]) % d
        x[r] = (x[r] - x[q]) % d
    else:
        raise ShapeMismatch(f"unknown gate {gate.name!r}")
    return PauliProduct(d, gamma, tuple(x), tuple(z))


def _check_gate(gate: Gate, d: int, n: int) -> None:
    for q in gate.qudits:
        if not 0 <= q < n:
            raise IndexOutOfRange(f"qudit {q} outside register of size {n}")
    if gate.name == "S":
        inv_mod(gate.param, d)  # raises NotInvertible for bad alpha
    if gate.name in ("CP", "CNOT") and gate.qudits[0] == gate.qudits[1]:
        raise IndexOutOfRange(f"{gate.name} needs distinct qudits")


@dataclass(frozen=True)
class CliffordTableau:
    """Images of the X_i and Z_i generators under U . U^dag, plus gate log."""

    d: int
    n: int
    image_x: tuple[PauliProduct, ...]
    image_z: tuple[PauliProduct, ...]
    gate_log: tuple[Gate, ...]


def identity_tableau(d: int, n: int) -> CliffordTableau:
    return CliffordTableau(
        d, n,
        tuple(x_op(d, n, i) for i in range(n)),
        tuple(z_op(d, n, i) for i in range(n)),
        (),
    )


def apply_gate(tab: CliffordTableau, gate: Gate) -> CliffordTableau:
    """Tableau of (gate * U) given the tableau of U."""
    _check_gate(gate, tab.d, tab.n)
    return CliffordTableau(
        tab.d, tab.n,
        tuple(gate_conjugate(gate, p) for p in tab.image_x),
        tuple(gate_conjugate(gate, p) for p in tab.image_z),
        tab.gate_log + (gate,),
    )


def apply_gates(tab: CliffordTableau, gates) -> CliffordTableau:
    for g in gates:
        tab = apply_gate(tab, g)
    return tab


def from_gates(d: int, n: int, gates) -> CliffordTableau:
    return apply_gates(identity_tableau(d, n), gates)


def conjugate(tab: CliffordTableau, p: PauliProduct) -> PauliProduct:
    """U p U^dag, expanding p over the generator images with exact phases."""
    if p.d != tab.d or p.n != tab.n:
        raise ShapeMismatch(
            f"pauli (D={p.d}, n={p.n}) vs tableau (D={tab.d}, n={tab.n})")
    out = PauliProduct(tab.d, p.gamma, (0,) * tab.n, (0,) * tab.n)
    for i in range(tab.n):
        if p.x[i]:
            out = multiply(out, power(tab.image_x[i], p.x[i]))
        if p.z[i]:
            out = multiply(out, power(tab.image_z[i], p.z[i]))
    return out


def conjugate_by_gates(gates, p: PauliProduct) -> PauliProduct:
    """Replay a gate list over a single Pauli (equivalent to conjugate)."""
    for g in gates:
        p = gate_conjugate(g, p)
    return p


def compose(t1: CliffordTableau, t2: CliffordTableau) -> CliffordTableau:
    """Tableau of U1 * U2 (t1 applied after t2)."""
    if t1.d != t2.d or t1.n != t2.n:
        raise ShapeMismatch("tableau shapes differ")
    return CliffordTableau(
        t1.d, t1.n,
        tuple(conjugate(t1, p) for p in t2.image_x),
        tuple(conjugate(t1, p) for p in t2.image_z),
        t2.gate_log + t1.gate_log,
    )


def _inverse_gates(gate: Gate, d: int) -> list[Gate]:
    """Expand one gate's inverse in the same alphabet (no dagger forms)."""
    if gate.name == "F":
        return [gate] * 3
    if gate.name == "S":
        return [smult(gate.qudits[0], inv_mod(gate.param, d))]
    if gate.name == "W":
        reps = (2 * d - 1) if d % 2 == 0 else (d - 1)
        return [gate] * reps
    if gate.name == "X":
        return [pauli_x(gate.qudits[0], (-gate.param) % d)]
    if gate.name == "Z":
        return [pauli_z(gate.qudits[0], (-gate.param) % d)]
    if gate.name == "CP":
        return [cphase(gate.qudits[0], gate.qudits[1], (-gate.param) % d)]
    if gate.name == "CNOT":
        return [gate] * (d - 1)
    raise ShapeMismatch(f"unknown gate {gate.name!r}")


def inverse_tableau(tab: CliffordTableau) -> CliffordTableau:
    """Tableau of U^{-1}: reversed gate log with each gate inverted."""
    gates: list[Gate] = []
    for g in reversed(tab.gate_log):
        gates.extend(_inverse_gates(g, tab.d))
    return from_gates(tab.d, tab.n, gates)


def _pivot_gates_step(p: PauliProduct, q: int) -> tuple[list[Gate], PauliProduct]:
    """Gates (on qudit q alone) turning p's q-component into exactly X_q.

    Requires prime D and a nontrivial component at q.
    """
    d = p.d
    gates: list[Gate] = []

    def shoot(gate: Gate) -> None:
        nonlocal p
        gates.append(gate)
        p = gate_conjugate(gate, p)

    if p.x[q] == 0:
        shoot(fourier(q))
    t = (-p.z[q] * inv_mod(p.x[q], d)) % d
    for _ in range(t):
        shoot(phase_w(q))
    if p.x[q] != 1:
        shoot(smult(q, p.x[q]))
    return gates, p


def pivot_part_gates(p: PauliProduct, part, target: int,
                     form: str = "X") -> tuple[list[Gate], PauliProduct]:
    """Gates on `part` making p's part-components a single operator at target.

    form "X" yields X_target (exponent 1), "Z" yields Z_target, "Z-" yields
    Z_target^{-1}; components of p outside `part` and the overall phase are
    left as they land. Requires prime D.
    """
    d = p.d
    if not is_prime(d):
        raise NonPrimeD(f"pivoting needs prime D, got {d}")
    part = sorted(part)
    if target not in part:
        raise IndexOutOfRange(f"target {target} not in part {part}")
    if all(p.x[i] == 0 and p.z[i] == 0 for i in part):
        raise IdentityOnPart("operator is trivial on the given part")

    gates: list[Gate] = []

    def run(step_gates: list[Gate], new_p: PauliProduct) -> None:
        nonlocal p
        gates.extend(step_gates)
        p = new_p

    if p.x[target] or p.z[target]:
        run(*_pivot_gates_step(p, target))
    else:
        # borrow the lowest nontrivial part qudit, then swing it onto target
        src = next(i for i in part if p.x[i] or p.z[i])
        run(*_pivot_gates_step(p, src))
        g = cnot(src, target)
        run([g], gate_conjugate(g, p))       # X_src -> X_src X_target^{-1}
        run(*_pivot_gates_step(p, target))   # normalize the new component
    for u in part:
        if u == target or (p.x[u] == 0 and p.z[u] == 0):
            continue
        run(*_pivot_gates_step(p, u))
        g = cnot(target, u)
        run([g], gate_conjugate(g, p))
    if form == "Z":
        for _ in range(3):
            g = fourier(target)
            run([g], gate_conjugate(g, p))
    elif form == "Z-":
        g = fourier(target)
        run([g], gate_conjugate(g, p))
    elif form != "X":
        raise ShapeMismatch(f"unknown pivot form {form!r}")
    return gates, p


def pivot_to_x1(p: PauliProduct, part, target: int | None = None,
                want_z: bool = False) -> CliffordTableau:
    """Clifford supported on `part` mapping p to exactly X_target (or Z_target).

    Requires prime D, p supported inside `part`, and p^D = I so the residual
    phase is an omega power removable by trailing Pauli conjugations.
    """
    part = sorted(part)
    support = [i for i in part if p.x[i] or p.z[i]]
    if not support:
        raise IdentityOnPart("operator is trivial on the given part")
    outside = [i for i in range(p.n) if i not in part and (p.x[i] or p.z[i])]
    if outside:
        raise ShapeMismatch(f"operator acts outside the part at {outside}")
    if target is None:
        target = support[0]
    form = "Z" if want_z else "X"
    gates, moved = pivot_part_gates(p, part, target, form)
    if moved.gamma % 2 != 0:
        raise InvalidStabilizer("operator has p^D = -I; phase not removable")
    c = moved.gamma // 2
    if c:
        if want_z:
            g = pauli_x(target, (-c) % p.d)   # conj by X^a: gamma += 2 a z
        else:
            g = pauli_z(target, c % p.d)      # conj by Z^b: gamma -= 2 b x
        gates.append(g)
        moved = gate_conjugate(g, moved)
    expected = (z_op(p.d, p.n, target) if want_z else x_op(p.d, p.n, target))
    if moved != expected:
        raise InvalidStabilizer("pivot failed to normalize the operator")
    return from_gates(p.d, p.n, gates)
