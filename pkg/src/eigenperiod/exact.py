"""Exact integer and rational matrix kernel.

Matrices are plain row-major lists of lists holding Python ``int`` or
``fractions.Fraction`` entries, so there is no overflow anywhere. The
routines here are small and deterministic; everything in the lattice layer
is built on top of them.
"""

from fractions import Fraction
from typing import NamedTuple, Sequence

Matrix = list[list]


class SignatureTriple(NamedTuple):
    t_plus: int
    t_minus: int
    t_zero: int


def as_int_matrix(A: Sequence[Sequence]) -> Matrix:
    rows = [list(r) for r in A]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix")
    out = []
    for r in rows:
        row = []
        for x in r:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"non-integer entry {x}")
                x = x.numerator
            elif not isinstance(x, int):
                if int(x) != x:
                    raise ValueError(f"non-integer entry {x}")
                x = int(x)
            row.append(x)
        out.append(row)
    return out


def as_rat_matrix(A: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in r] for r in A]


def shape(A: Matrix) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def transpose(A: Matrix) -> Matrix:
    return [list(c) for c in zip(*A)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Matrix, x: Sequence) -> list:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def bilinear(x: Sequence, G: Matrix, y: Sequence):
    return sum(xi * gy for xi, gy in zip(x, matvec(G, y)))


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = zeros(n, n)
    k = 0
    for b in blocks:
        for i, row in enumerate(b):
            out[k + i][k:k + len(row)] = list(row)
        k += len(b)
    return out


def is_symmetric(A: Matrix) -> bool:
    n, m = shape(A)
    return n == m and all(A[i][j] == A[j][i] for i in range(n) for j in range(i))


def exact_determinant(A: Sequence[Sequence]) -> int:
    """Determinant of an integer matrix by Bareiss fraction-free elimination."""
    M = as_int_matrix(A)
    n, m = shape(M)
    if n != m:
        raise ValueError(f"determinant of non-square {n}x{m} matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pivot - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = pivot
    return sign * M[n - 1][n - 1]


def rat_inverse(A: Sequence[Sequence]) -> Matrix:
    """Inverse over Q by Gauss-Jordan; raises on singular input."""
    M = as_rat_matrix(A)
    n, m = shape(M)
    if n != m:
        raise ValueError("inverse of non-square matrix")
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


# -- Smith normal form ------------------------------------------------------

def _swap_rows(M, i, j):
    M[i], M[j] = M[j], M[i]


def _swap_cols(M, i, j):
    for row in M:
        row[i], row[j] = row[j], row[i]


def _add_row(M, src, dst, f):
    # row_dst += f * row_src
    if f:
        M[dst] = [a + f * b for a, b in zip(M[dst], M[src])]


def _add_col(M, src, dst, f):
    if f:
        for row in M:
            row[dst] += f * row[src]


def _neg_row(M, i):
    M[i] = [-x for x in M[i]]


def smith_normal_form(A: Sequence[Sequence]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, S, V)`` with ``U @ A @ V == S`` and ``S`` in Smith form.

    ``U`` and ``V`` are unimodular. The diagonal of ``S`` is nonnegative,
    satisfies ``s_1 | s_2 | ...`` and has its zeros last. Pivots are the
    entry of smallest absolute value, ties broken in row-major order, so the
    transforms are reproducible.
    """
    S = as_int_matrix(A)
    r, c = shape(S)
    U = identity(r)
    V = identity(c)
    t = 0
    while t < min(r, c):
        # smallest nonzero entry of the trailing block
        best = None
        for i in range(t, r):
            for j in range(t, c):
                x = S[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        _swap_rows(S, t, i)
        _swap_rows(U, t, i)
        _swap_cols(S, t, j)
        _swap_cols(V, t, j)
        while True:
            done = True
            p = S[t][t]
            for i in range(t + 1, r):
                if S[i][t]:
                    q = S[i][t] // p
                    _add_row(S, t, i, -q)
                    _add_row(U, t, i, -q)
                    if S[i][t]:
                        done = False
            for j in range(t + 1, c):
                if S[t][j]:
                    q = S[t][j] // p
                    _add_col(S, t, j, -q)
                    _add_col(V, t, j, -q)
                    if S[t][j]:
                        done = False
            if not done:
                # a smaller remainder appeared in row or column t; repivot on it
                best = None
                for i in range(t, r):
                    if S[i][t] and (best is None or abs(S[i][t]) < best[0]):
                        best = (abs(S[i][t]), i, t)
                for j in range(t, c):
                    if S[t][j] and (best is None or abs(S[t][j]) < best[0]):
                        best = (abs(S[t][j]), t, j)
                _, i, j = best
                _swap_rows(S, t, i)
                _swap_rows(U, t, i)
                _swap_cols(S, t, j)
                _swap_cols(V, t, j)
                continue
            # row and column are clear; enforce divisibility on the block
            p = S[t][t]
            bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c)
                        if S[i][j] % p), None)
            if bad is None:
                break
            _add_row(S, bad[0], t, 1)
            _add_row(U, bad[0], t, 1)
        if S[t][t] < 0:
            _neg_row(S, t)
            _neg_row(U, t)
        t += 1
    return U, S, V


def invariant_factors(A: Sequence[Sequence]) -> list[int]:
    """Nonzero diagonal of the Smith form of ``A``."""
    _, S, _ = smith_normal_form(A)
    return [S[i][i] for i in range(min(shape(S))) if S[i][i]]


# -- Sylvester signature ----------------------------------------------------

def exact_signature(G: Sequence[Sequence]) -> SignatureTriple:
    """Sylvester signature of a symmetric rational matrix.

    Symmetric congruence reduction over Q. A zero diagonal with a nonzero
    off-diagonal entry is split off as a hyperbolic 2x2 block, which
    contributes one positive and one negative direction.
    """
    M = as_rat_matrix(G)
    if not is_symmetric(M):
        raise ValueError("signature requires a symmetric matrix")
    n = len(M)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if M[i][i] != 0), None)
        if piv is not None:
            d = M[piv][piv]
            if d > 0:
                pos += 1
            else:
                neg += 1
            rest = [i for i in active if i != piv]
            for i in rest:
                f = M[i][piv] / d
                if f:
                    for j in rest:
                        M[i][j] -= f * M[piv][j]
            active = rest
            continue
        pair = next(((i, j) for i in active for j in active if j > i and M[i][j] != 0), None)
        if pair is None:
            break
        i, j = pair
        # all diagonals vanish: eliminate the hyperbolic block (i, j)
        pos += 1
        neg += 1
        b = M[i][j]
        rest = [k for k in active if k not in (i, j)]
        # block is [[0, b], [b, 0]], inverse [[0, 1/b], [1/b, 0]]
        for k in rest:
            ki, kj = M[k][i], M[k][j]
            if not (ki or kj):
                continue
            for l in rest:
                li, lj = M[l][i], M[l][j]
                M[k][l] -= (ki * lj + kj * li) / b
        active = rest
    return SignatureTriple(pos, neg, n - pos - neg)
