"""Pauli products on n qudits of dimension D with exact phase tracking.

A Pauli product is lambda^gamma * X_1^{x_1} Z_1^{z_1} (x) ... (x) X_n^{x_n} Z_n^{z_n}
with lambda = exp(i*pi/D) (so lambda^2 = omega = exp(2*pi*i/D)), gamma in
Z_{2D}, and per-qudit normal ordering X-before-Z. The single exponent gamma
over Z_{2D} is the minimal phase group closed under multiplication, so all
phase bookkeeping is exact integer arithmetic.

Sign conventions follow the defining matrices X = sum_j |j><j+1| and
Z = sum_j omega^j |j><j|, under which X Z = omega Z X. Consequences used
throughout:

    Z^a X^b          = omega^{-a b} X^b Z^a
    (X^x Z^z)^k      = omega^{-x z k (k-1)/2} X^{k x} Z^{k z}
    p q              = omega^{sum_i (x_i(p) z_i(q) - z_i(p) x_i(q))} q p
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ShapeMismatch

_TEXT_SEP = "|"


@dataclass(frozen=True)
class PauliProduct:
    """Immutable Pauli product: dimension, phase exponent, exponent vectors."""

    d: int
    gamma: int
    x: tuple[int, ...]
    z: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.x) != len(self.z):
            raise ShapeMismatch("x and z exponent vectors differ in length")
        two_d = 2 * self.d
        object.__setattr__(self, "gamma", self.gamma % two_d)
        object.__setattr__(self, "x", tuple(v % self.d for v in self.x))
        object.__setattr__(self, "z", tuple(v % self.d for v in self.z))

    @property
    def n(self) -> int:
        return len(self.x)

    def is_identity(self) -> bool:
        """Exactly the identity operator, phase included."""
        return self.gamma == 0 and not any(self.x) and not any(self.z)

    def is_phase(self) -> bool:
        """Proportional to the identity (any lambda power)."""
        return not any(self.x) and not any(self.z)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if self.x[i] or self.z[i])

    def __str__(self) -> str:
        return to_text(self)


def identity(d: int, n: int) -> PauliProduct:
    return PauliProduct(d, 0, (0,) * n, (0,) * n)


def phase_op(d: int, n: int, gamma: int) -> PauliProduct:
    """lambda^gamma times the identity."""
    return PauliProduct(d, gamma, (0,) * n, (0,) * n)


def from_exponents(d: int, x: list[int] | tuple[int, ...],
                   z: list[int] | tuple[int, ...], gamma: int = 0) -> PauliProduct:
    return PauliProduct(d, gamma, tuple(x), tuple(z))


def x_op(d: int, n: int, qudit: int, a: int = 1) -> PauliProduct:
    x = [0] * n
    x[qudit] = a
    return PauliProduct(d, 0, tuple(x), (0,) * n)


def z_op(d: int, n: int, qudit: int, b: int = 1) -> PauliProduct:
    z = [0] * n
    z[qudit] = b
    return PauliProduct(d, 0, (0,) * n, tuple(z))


def _check_shapes(p: PauliProduct, q: PauliProduct) -> None:
    if p.d != q.d or p.n != q.n:
        raise ShapeMismatch(
            f"operands differ: (D={p.d}, n={p.n}) vs (D={q.d}, n={q.n})")


def multiply(p: PauliProduct, q: PauliProduct) -> PauliProduct:
    """Normal-ordered operator product p * q.

    Moving each Z^{z_i(p)} left past X^{x_i(q)} contributes
    omega^{-z_i(p) x_i(q)}, i.e. gamma -= 2 * sum_i z_i(p) x_i(q).
    """
    _check_shapes(p, q)
    d = p.d
    reorder = sum(zp * xq for zp, xq in zip(p.z, q.x))
    gamma = (p.gamma + q.gamma - 2 * reorder) % (2 * d)
    x = tuple((a + b) % d for a, b in zip(p.x, q.x))
    z = tuple((a + b) % d for a, b in zip(p.z, q.z))
    return PauliProduct(d, gamma, x, z)


def power(p: PauliProduct, k: int) -> PauliProduct:
    """p^k for any integer k (negative k gives inverse powers).

    Closed form: gamma(k) = k*gamma - k(k-1) * sum_i x_i z_i mod 2D, which is
    the accumulated reordering phase of k-fold multiplication.
    """
    d = p.d
    sigma = sum(a * b for a, b in zip(p.x, p.z))
    gamma = (k * p.gamma - k * (k - 1) * sigma) % (2 * d)
    x = tuple((k * a) % d for a in p.x)
    z = tuple((k * a) % d for a in p.z)
    return PauliProduct(d, gamma, x, z)


def inverse(p: PauliProduct) -> PauliProduct:
    return power(p, -1)


def commutation_phase(p: PauliProduct, q: PauliProduct) -> int:
    """alpha in Z_D with p q = omega^alpha q p; zero iff p and q commute."""
    _check_shapes(p, q)
    alpha = sum(xp * zq - zp * xq
                for xp, zp, xq, zq in zip(p.x, p.z, q.x, q.z))
    return alpha % p.d


def commute(p: PauliProduct, q: PauliProduct) -> bool:
    return commutation_phase(p, q) == 0


def order(p: PauliProduct) -> int:
    """Smallest a in [1, D] with p^a proportional to the identity.

    Equals D / gcd(D, x_1, ..., x_n, z_1, ..., z_n); always divides D.
    """
    g = math.gcd(p.d, *p.x, *p.z) if p.n else p.d
    return p.d // g


def tensor(p: PauliProduct, q: PauliProduct) -> PauliProduct:
    """p (x) q on the concatenated qudit register."""
    if p.d != q.d:
        raise ShapeMismatch(f"dimensions differ: {p.d} vs {q.d}")
    return PauliProduct(p.d, p.gamma + q.gamma, p.x + q.x, p.z + q.z)


def restrict(p: PauliProduct, qudits: list[int] | tuple[int, ...],
             keep_phase: bool = True) -> PauliProduct:
    """Component of p on the listed qudits (in the given order).

    The phase of a split is ambiguous; by convention the whole gamma rides on
    whichever factor asks for it (keep_phase).
    """
    x = tuple(p.x[i] for i in qudits)
    z = tuple(p.z[i] for i in qudits)
    return PauliProduct(p.d, p.gamma if keep_phase else 0, x, z)


def is_identity_on(p: PauliProduct, qudits) -> bool:
    return all(p.x[i] == 0 and p.z[i] == 0 for i in qudits)


def proportional(p: PauliProduct, q: PauliProduct) -> int | None:
    """The c with p = lambda^c q when exponent vectors agree, else None."""
    _check_shapes(p, q)
    if p.x != q.x or p.z != q.z:
        return None
    return (p.gamma - q.gamma) % (2 * p.d)


def embed(p: PauliProduct, n: int, at: list[int] | tuple[int, ...]) -> PauliProduct:
    """Place p's qudit i at position at[i] of an n-qudit register."""
    x = [0] * n
    z = [0] * n
    for i, q in enumerate(at):
        x[q] = p.x[i]
        z[q] = p.z[i]
    return PauliProduct(p.d, p.gamma, tuple(x), tuple(z))


def to_text(p: PauliProduct) -> str:
    """Serialize as `g | x1 ... xn | z1 ... zn`."""
    xs = " ".join(str(v) for v in p.x)
    zs = " ".join(str(v) for v in p.z)
    return f"{p.gamma} {_TEXT_SEP} {xs} {_TEXT_SEP} {zs}".rstrip()


def from_text(line: str, d: int) -> PauliProduct:
    from .errors import FormatError

    parts = line.split(_TEXT_SEP)
    if len(parts) != 3:
        raise FormatError(f"expected 'g | x.. | z..', got {line!r}")
    try:
        gamma = int(parts[0])
        x = tuple(int(t) for t in parts[1].split())
        z = tuple(int(t) for t in parts[2].split())
    except ValueError as exc:
        raise FormatError(f"bad integer in Pauli line {line!r}") from exc
    if len(x) != len(z):
        raise FormatError(f"x/z length mismatch in {line!r}")
    return PauliProduct(d, gamma, x, z)
