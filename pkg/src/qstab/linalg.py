"""Linear algebra over prime fields F_p on plain integer rows.

Matrices are lists of row lists with entries reduced mod p. Sizes here are
desk-scale (rows and columns bounded by a few dozen), so clarity beats
vectorization and the exact path stays free of floating point.
"""

from __future__ import annotations

from .modring import inv_mod


def rref(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over F_p.

    Returns (rref_rows, pivot_columns); zero rows are dropped. The RREF of a
    row space is unique, which downstream code relies on for canonical forms.
    """
    mat = [[v % p for v in row] for row in rows]
    ncols = len(mat[0]) if mat else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = inv_mod(mat[r][c], p)
        mat[r] = [(v * inv) % p for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: list[list[int]], p: int) -> int:
    return len(rref(rows, p)[0])


def nullspace(rows: list[list[int]], p: int) -> list[list[int]]:
    """Basis of the right kernel {c in F_p^ncols : M c = 0} for M = rows."""
    reduced, pivots = rref(rows, p)
    ncols = len(rows[0]) if rows else 0
    free = [c for c in range(ncols) if c not in pivots]
    basis: list[list[int]] = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = (-reduced[r][f]) % p
        basis.append(v)
    return basis


def left_nullspace(rows: list[list[int]], p: int) -> list[list[int]]:
    """Basis of {c : sum_i c_i * rows[i] = 0 mod p}."""
    transposed = [[rows[i][j] for i in range(len(rows))] for j in range(len(rows[0]))] if rows else []
    if not rows:
        return []
    if not transposed:
        # zero-width rows: every coefficient vector annihilates them
        return [[1 if i == j else 0 for j in range(len(rows))] for i in range(len(rows))]
    return nullspace(transposed, p)


def solve(rows: list[list[int]], target: list[int], p: int) -> list[int] | None:
    """One solution c of sum_i c_i * rows[i] = target mod p, or None."""
    if not rows:
        return [] if all(t % p == 0 for t in target) else None
    ncols = len(rows[0])
    aug = [[rows[i][j] for i in range(len(rows))] for j in range(ncols)]
    for j in range(ncols):
        aug[j].append(target[j] % p)
    reduced, pivots = rref(aug, p)
    nvars = len(rows)
    if nvars in pivots:
        return None
    c = [0] * nvars
    for r, col in enumerate(pivots):
        c[col] = reduced[r][nvars]
    return c


def in_span(rows: list[list[int]], vec: list[int], p: int) -> bool:
    return solve(rows, vec, p) is not None
