"""Exact Gaussian elimination over a coefficient field (dense, row lists)."""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .coeffs import Field


def rref(rows: Sequence[Sequence], ncols: int, F: Field) -> Tuple[List[list], List[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not F.is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(v, inv) for v in m[r]]
        for i in range(len(m)):
            if i != r and not F.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int, F: Field) -> int:
    return len(rref(rows, ncols, F)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, F: Field) -> List[list]:
    """Basis of {v : rows · v = 0}."""
    red, pivots = rref(rows, ncols, F)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [F.zero] * ncols
        v[fc] = F.one
        for row, pc in zip(red, pivots):
            v[pc] = F.neg(row[fc])
        basis.append(v)
    return basis


def first_dependency(vectors: Sequence[Sequence], F: Field):
    """Coefficients ``c`` with ``sum c_i v_i = 0`` and ``c_last = 1``, or None.

    Only succeeds when the last vector lies in the span of the earlier ones.
    """
    k = len(vectors)
    if k == 0:
        return None
    dim = len(vectors[0])
    # columns are the vectors: solve sum_{i<k-1} c_i v_i = -v_last
    rows = [[vectors[i][j] for i in range(k - 1)] + [F.neg(vectors[-1][j])] for j in range(dim)]
    red, pivots = rref(rows, k, F)
    if (k - 1) in pivots:
        return None
    sol = [F.zero] * (k - 1)
    for row, pc in zip(red, pivots):
        sol[pc] = row[k - 1]
    return sol + [F.one]
