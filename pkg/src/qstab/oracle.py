"""Brute-force dense ground truth: matrices, states, partial traces, channels.

Everything upstream is exact integer arithmetic; this module realizes the
operators as explicit complex matrices (X = sum_j |j><j+1|, Z = diag(omega^j),
lambda = exp(i pi / D)) and is used to cross-check the algebraic fast path at
desk scale. Tolerances live in two constants: ZERO_TOL for rank/nullity
decisions and EQ_TOL for entrywise equality.
"""

from __future__ import annotations

import itertools

import numpy as np

from .clifford import Gate
from .errors import NotAState, NotRankOne, TooLarge
from .pauli import PauliProduct
from .stabilizer import StabilizerGroup, elements

ZERO_TOL = 1e-9
EQ_TOL = 1e-10
DIMENSION_CAP = 4096


def _check_cap(d: int, n: int) -> int:
    dim = d**n
    if dim > DIMENSION_CAP:
        raise TooLarge(f"dense dimension {d}^{n} exceeds {DIMENSION_CAP}")
    return dim


def _lam(d: int) -> complex:
    return np.exp(1j * np.pi / d)


def _omega(d: int) -> complex:
    return np.exp(2j * np.pi / d)


def x_matrix(d: int, a: int = 1) -> np.ndarray:
    m = np.zeros((d, d), dtype=complex)
    for j in range(d):
        m[j, (j + a) % d] = 1.0
    return m


def z_matrix(d: int, b: int = 1) -> np.ndarray:
    return np.diag([_omega(d) ** ((j * b) % d) for j in range(d)])


def pauli_matrix(p: PauliProduct) -> np.ndarray:
    _check_cap(p.d, p.n)
    m = np.array([[_lam(p.d) ** p.gamma]])
    for x, z in zip(p.x, p.z):
        m = np.kron(m, x_matrix(p.d, x) @ z_matrix(p.d, z))
    return m


def fourier_matrix(d: int) -> np.ndarray:
    om = _omega(d)
    return np.array([[om ** (j * k) for k in range(d)] for j in range(d)]) / np.sqrt(d)


def smult_matrix(d: int, alpha: int) -> np.ndarray:
    m = np.zeros((d, d), dtype=complex)
    for j in range(d):
        m[j, (alpha * j) % d] = 1.0
    return m


def phase_w_matrix(d: int) -> np.ndarray:
    lam = _lam(d)
    if d % 2 == 0:
        return np.diag([lam ** (-j * (j + 2)) for j in range(d)])
    return np.diag([lam ** (-j * (j + 1)) for j in range(d)])


def _digit_weights(d: int, n: int) -> np.ndarray:
    return d ** (n - 1 - np.arange(n))


def _digits(d: int, n: int) -> np.ndarray:
    idx = np.arange(d**n)
    return (idx[:, None] // _digit_weights(d, n)) % d


def gate_matrix(gate: Gate, d: int, n: int) -> np.ndarray:
    """Full n-qudit matrix of one elementary gate."""
    dim = _check_cap(d, n)
    if gate.name in ("F", "S", "W", "X", "Z"):
        q = gate.qudits[0]
        if gate.name == "F":
            local = fourier_matrix(d)
        elif gate.name == "S":
            local = smult_matrix(d, gate.param)
        elif gate.name == "W":
            local = phase_w_matrix(d)
        elif gate.name == "X":
            local = x_matrix(d, gate.param)
        else:
            local = z_matrix(d, gate.param)
        m = np.array([[1.0 + 0j]])
        for i in range(n):
            m = np.kron(m, local if i == q else np.eye(d))
        return m
    digs = _digits(d, n)
    q, r = gate.qudits
    if gate.name == "CP":
        return np.diag(_omega(d) ** ((gate.param * digs[:, q] * digs[:, r]) % d))
    if gate.name == "CNOT":
        m = np.zeros((dim, dim), dtype=complex)
        weights = _digit_weights(d, n)
        for col in range(dim):
            mr = (digs[col, r] - digs[col, q]) % d
            row = col + (mr - digs[col, r]) * weights[r]
            m[row, col] = 1.0
        return m
    raise ValueError(f"unknown gate {gate.name!r}")


def clifford_matrix(d: int, n: int, gates) -> np.ndarray:
    """Replay a gate log as an explicit unitary (later gates act last)."""
    u = np.eye(_check_cap(d, n), dtype=complex)
    for g in gates:
        u = gate_matrix(g, d, n) @ u
    return u


def apply_pauli_vec(p: PauliProduct, v: np.ndarray) -> np.ndarray:
    """p |v> using index arithmetic: X^x Z^z |m> = omega^{z.m} |m - x>."""
    d, n = p.d, p.n
    digs = _digits(d, n)
    weights = _digit_weights(d, n)
    phase = _lam(d) ** p.gamma * _omega(d) ** (digs @ np.array(p.z) % d)
    new_idx = ((digs - np.array(p.x)) % d) @ weights
    out = np.zeros_like(v)
    out[new_idx] = phase * v
    return out


def state_from_group(group: StabilizerGroup) -> np.ndarray:
    """Unit vector of the unique stabilizer state of a D^n-element group.

    Built as a projector column (1/D^n) sum_s s |m0> for the first basis ket
    with nonzero overlap, then verified against every generator; a generator
    that fails to fix the vector signals an inconsistent group.
    """
    if not group.is_state():
        raise NotAState(f"group size {group.size} != {group.d}^{group.n}")
    dim = _check_cap(group.d, group.n)
    d, n = group.d, group.n
    lam = _lam(d)
    om = _omega(d)
    for m0 in range(dim):
        m0_digits = [(m0 // d ** (n - 1 - i)) % d for i in range(n)]
        v = np.zeros(dim, dtype=complex)
        for s in elements(group):
            phase = lam**s.gamma * om ** (sum(z * m for z, m in zip(s.z, m0_digits)) % d)
            target_digits = [(m - x) % d for m, x in zip(m0_digits, s.x)]
            target = sum(t * d ** (n - 1 - i) for i, t in enumerate(target_digits))
            v[target] += phase
        norm = np.linalg.norm(v)
        if norm > ZERO_TOL:
            v /= norm
            for g in group.gens:
                if np.max(np.abs(apply_pauli_vec(g, v) - v)) > ZERO_TOL:
                    raise NotRankOne("projector sum is not a rank-1 projector")
            return v
    raise NotRankOne("projector sum vanished on every basis column")


def _part_axes(v: np.ndarray, part, d: int, n: int) -> np.ndarray:
    part = sorted(part)
    rest = [i for i in range(n) if i not in part]
    t = v.reshape([d] * n).transpose(part + rest)
    return t.reshape(d ** len(part), d ** len(rest))


def reduced_density(v: np.ndarray, part, d: int, n: int) -> np.ndarray:
    """Partial trace of |v><v| keeping `part`."""
    m = _part_axes(v, part, d, n)
    return m @ m.conj().T


def schmidt_rank(v: np.ndarray, part, d: int, n: int) -> int:
    """Number of singular values above ZERO_TOL across the part|rest cut."""
    m = _part_axes(v, part, d, n)
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s > ZERO_TOL))


def density_rank(rho: np.ndarray) -> int:
    vals = np.linalg.eigvalsh(rho)
    return int(np.sum(vals > ZERO_TOL))


def fidelity(u: np.ndarray, v: np.ndarray) -> float:
    return float(abs(np.vdot(u, v)) ** 2)


def isometry_from_code(graph_group: StabilizerGroup, coding_gens) -> np.ndarray:
    """V = sum_i f_1^{i_1} ... f_k^{i_k} |G> <i|  as a D^n x D^k matrix."""
    d = graph_group.d
    n = graph_group.n
    k = len(coding_gens)
    if d ** (n + k) > DIMENSION_CAP:
        raise TooLarge(f"dense dimension {d}^{n + k} exceeds {DIMENSION_CAP}")
    g_vec = state_from_group(graph_group)
    v = np.zeros((d**n, d**k), dtype=complex)
    for col, combo in enumerate(itertools.product(range(d), repeat=k)):
        ket = g_vec
        for f, c in zip(coding_gens, combo):
            for _ in range(c):
                ket = apply_pauli_vec(f, ket)
        v[:, col] = ket
    return v


def apply_channel(v_iso: np.ndarray, keep, d: int, n: int,
                  rho_in: np.ndarray) -> np.ndarray:
    """E(rho) = Tr_complement{ V rho V^dag } on the kept output qudits."""
    big = v_iso @ rho_in @ v_iso.conj().T
    keep = sorted(keep)
    rest = [i for i in range(n) if i not in keep]
    t = big.reshape([d] * (2 * n))
    perm = keep + rest + [n + i for i in keep] + [n + i for i in rest]
    t = t.transpose(perm)
    dk = d ** len(keep)
    dr = d ** len(rest)
    t = t.reshape(dk, dr, dk, dr)
    return np.einsum("arbr->ab", t)


def pauli_transmitted(v_iso: np.ndarray, keep, d: int, n: int,
                      p: PauliProduct) -> bool:
    """Whether the channel image of the input Pauli p is nonzero."""
    out = apply_channel(v_iso, keep, d, n, pauli_matrix(p))
    return bool(np.max(np.abs(out)) > ZERO_TOL)


def brute_force_info_group(v_iso: np.ndarray, keep, d: int, n: int,
                           k: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (x, z) exponent patterns on the k inputs with nonzero channel image."""
    out = []
    for xs in itertools.product(range(d), repeat=k):
        for zs in itertools.product(range(d), repeat=k):
            p = PauliProduct(d, 0, xs, zs)
            if pauli_transmitted(v_iso, keep, d, n, p):
                out.append((xs, zs))
    return out


def crt_embedded_state(v: np.ndarray, d: int, n: int, primes) -> np.ndarray:
    """Apply the per-qudit CRT basis map a -> (a mod p_1, ..., a mod p_m) to
    each qudit, then reorder axes factor-major so the result is directly
    comparable with the tensor product of the factor states."""
    primes = list(primes)
    m = len(primes)
    shape = []
    for _ in range(n):
        shape.extend(primes)
    out = np.zeros(shape, dtype=complex).reshape(-1)
    fweights = np.ones(m, dtype=int)
    for f in range(m - 2, -1, -1):
        fweights[f] = fweights[f + 1] * primes[f + 1]
    block = int(np.prod(primes))
    for idx in range(d**n):
        digits = [(idx // d ** (n - 1 - i)) % d for i in range(n)]
        pos = 0
        for a in digits:
            local = sum((a % p) * w for p, w in zip(primes, fweights))
            pos = pos * block + local
        out[pos] = v[idx]
    t = out.reshape(shape)
    perm = [q * m + f for f in range(m) for q in range(n)]
    return t.transpose(perm).reshape(-1)


def kron_states(states) -> np.ndarray:
    out = np.array([1.0 + 0j])
    for s in states:
        out = np.kron(out, s)
    return out


def pauli_order_dense(p: PauliProduct) -> int:
    """Order by repeated dense multiplication (independent of the formula)."""
    m = pauli_matrix(p)
    acc = m.copy()
    for a in range(1, p.d + 1):
        offdiag = acc - np.diag(np.diag(acc))
        if np.max(np.abs(offdiag)) < ZERO_TOL:
            diag = np.diag(acc)
            if np.max(np.abs(diag - diag[0])) < ZERO_TOL:
                return a
        acc = acc @ m
    raise NotRankOne("no power up to D proportional to identity")


def matrices_equal(a: np.ndarray, b: np.ndarray, tol: float = EQ_TOL) -> bool:
    return bool(np.max(np.abs(a - b)) <= tol)


def states_equal_up_to_phase(a: np.ndarray, b: np.ndarray,
                             tol: float = ZERO_TOL) -> bool:
    return fidelity(a, b) >= 1.0 - tol
