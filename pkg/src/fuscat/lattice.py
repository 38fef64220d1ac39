"""Exact integer row reduction (Hermite normal form) and span membership."""

from __future__ import annotations


def hermite_normal_form(rows) -> list:
    """Row-style HNF of the integer lattice spanned by ``rows``.

    Returns the nonzero rows, with positive pivots, strictly increasing pivot
    columns, and entries above each pivot reduced into ``[0, pivot)``.
    """
    A = [list(map(int, r)) for r in rows if any(r)]
    if not A:
        return []
    ncols = len(A[0])
    basis = []
    r = 0
    for c in range(ncols):
        # gather rows r.. with nonzero entry in column c and run Euclid on them
        while True:
            nz = [i for i in range(r, len(A)) if A[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[piv] = A[piv], A[r]
            done = True
            for i in range(r + 1, len(A)):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                    if A[i][c]:
                        done = False
            if done:
                break
        if r < len(A) and A[r][c] != 0:
            if A[r][c] < 0:
                A[r] = [-x for x in A[r]]
            for i in range(r):
                q = A[i][c] // A[r][c]
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
            r += 1
            if r == len(A):
                break
    basis = [row for row in A[:r] if any(row)]
    return basis


def _pivot(row):
    return next(i for i, x in enumerate(row) if x)


def in_span(hnf, v) -> bool:
    """Is ``v`` an integer combination of the rows of an HNF basis?"""
    v = list(map(int, v))
    for row in hnf:
        c = _pivot(row)
        if v[c] % row[c]:
            return False
        q = v[c] // row[c]
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return not any(v)


def rank(hnf) -> int:
    return len(hnf)


def augmentation_kernel_basis(n: int) -> list:
    """Basis ``e_i - e_0`` of the kernel of the augmentation on ``Z^n``."""
    out = []
    for i in range(1, n):
        v = [0] * n
        v[0], v[i] = -1, 1
        out.append(v)
    return out


def spans_augmentation_kernel(rows, n: int) -> bool:
    """Do ``rows`` (all of augmentation zero) span the whole kernel over ``Z``?"""
    hnf = hermite_normal_form(rows) if rows else []
    return all(in_span(hnf, v) for v in augmentation_kernel_basis(n))
