"""Siegel half-plane, bounded models and period-matrix checks.

All matrices are numpy arrays. Comparisons are absolute, in the max norm,
against ``tol`` (default ``DEFAULT_TOL``); entries are assumed to be O(1).
Positive definiteness is decided by diagonally pivoted elimination, never by
eigenvalues.

Sign convention for polarizations: an integral skew matrix ``A`` is accepted
when the complex structure is positive for ``-A``. With this convention the
coperiod matrix ``(tau, 1)^T`` and the period matrix ``(1, tau)`` with
``Im tau > 0`` are both polarized by ``A = r J`` for every ``r < 0``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .exact import exact_signature

DEFAULT_TOL = 1e-9


class BoundaryCollapse(ArithmeticError):
    """``C Z + D`` is singular: the matrix is not symplectic or Z is not interior."""


def _cmat(Z) -> np.ndarray:
    Z = np.asarray(Z, dtype=complex)
    if Z.ndim == 1:
        Z = Z.reshape(-1, 1)
    if Z.ndim != 2:
        raise ValueError("expected a matrix")
    if not np.all(np.isfinite(Z)):
        raise ValueError("matrix has non-finite entries")
    return Z


def _square(Z) -> np.ndarray:
    Z = _cmat(Z)
    if Z.shape[0] != Z.shape[1]:
        raise ValueError(f"expected a square matrix, got {Z.shape}")
    return Z


def is_positive_definite(H, tol: float = DEFAULT_TOL) -> bool:
    """Hermitian (or real symmetric) positivity by diagonal pivoting."""
    H = _square(H).copy()
    if np.max(np.abs(H - H.conj().T), initial=0.0) > tol:
        return False
    n = H.shape[0]
    for k in range(n):
        d = H.diagonal().real[k:]
        i = k + int(np.argmax(d))
        if d[i - k] <= tol:
            return False
        H[[k, i]] = H[[i, k]]
        H[:, [k, i]] = H[:, [i, k]]
        piv = H[k, k].real
        H[k + 1:, k + 1:] -= np.outer(H[k + 1:, k], H[k, k + 1:]) / piv
    return True


# -- Siegel half-plane ------------------------------------------------------

def is_siegel_point(Z, tol: float = DEFAULT_TOL) -> bool:
    Z = _square(Z)
    return bool(np.max(np.abs(Z - Z.T), initial=0.0) <= tol) and is_positive_definite(Z.imag, tol)


def standard_J(g: int) -> np.ndarray:
    I = np.eye(g, dtype=int)
    O = np.zeros((g, g), dtype=int)
    return np.block([[O, I], [-I, O]])


def J_D(d: Sequence[int]) -> np.ndarray:
    D = np.diag(np.asarray(d, dtype=int))
    O = np.zeros_like(D)
    return np.block([[O, D], [-D, O]])


def _blocks(M) -> tuple[np.ndarray, ...]:
    M = np.asarray(M)
    n = M.shape[0]
    if M.shape != (n, n) or n % 2:
        raise ValueError("expected a square matrix of even size")
    g = n // 2
    return M[:g, :g], M[:g, g:], M[g:, :g], M[g:, g:]


def symplectic_action(M, Z, tol: float = DEFAULT_TOL) -> np.ndarray:
    """``M . Z = (A Z + B)(C Z + D)^-1``."""
    Z = _square(Z)
    A, B, C, D = _blocks(np.asarray(M, dtype=float))
    if A.shape[0] != Z.shape[0]:
        raise ValueError("matrix and point have different genus")
    den = C @ Z + D
    if np.linalg.svd(den, compute_uv=False).min() <= tol:
        raise BoundaryCollapse("boundary collapse: C Z + D is singular")
    num = A @ Z + B
    # X den = num  <=>  den^T X^T = num^T
    out = np.linalg.solve(den.T, num.T).T
    return (out + out.T) / 2


def is_symplectic(M, d: Optional[Sequence[int]] = None, exact: bool = False,
                  tol: float = DEFAULT_TOL) -> bool:
    """``M^T J_D M == J_D``; ``d=None`` means the standard form J."""
    M = np.asarray(M)
    n = M.shape[0]
    if M.shape != (n, n) or n % 2:
        raise ValueError("expected a square matrix of even size")
    g = n // 2
    if d is None:
        d = [1] * g
    if len(d) != g:
        raise ValueError(f"polarization type has {len(d)} entries, matrix needs {g}")
    form = J_D(d)
    if exact:
        Mi = [[int(x) for x in row] for row in M.tolist()]
        if any(x != y for rx, ry in zip(Mi, M.tolist()) for x, y in zip(rx, ry)):
            raise ValueError("exact mode needs integer entries")
        F = form.tolist()
        Mt = list(map(list, zip(*Mi)))
        lhs = [[sum(Mt[i][k] * F[k][l] * Mi[l][j] for k in range(n) for l in range(n))
                for j in range(n)] for i in range(n)]
        return lhs == F
    M = M.astype(float)
    return bool(np.max(np.abs(M.T @ form @ M - form)) <= tol)


def transitivity_witness(Z, tol: float = DEFAULT_TOL) -> np.ndarray:
    """A real symplectic M with ``M . (i I) == Z``.

    With ``Z = X + iY`` and ``Y = A A^T`` (Cholesky),
    ``M = [[A, X A^-T], [0, A^-T]]``.
    """
    Z = _square(Z)
    X, Y = Z.real, Z.imag
    if not is_positive_definite(Y, tol):
        raise ValueError("Im(Z) is not positive definite")
    A = np.linalg.cholesky((Y + Y.T) / 2)
    AinvT = np.linalg.inv(A).T
    g = Z.shape[0]
    return np.block([[A, X @ AinvT], [np.zeros((g, g)), AinvT]])


# -- bounded models ---------------------------------------------------------

def in_bounded_siegel(W, tol: float = DEFAULT_TOL) -> bool:
    """``W^T == W`` and ``I - conj(W) W > 0``."""
    W = _square(W)
    if np.max(np.abs(W - W.T), initial=0.0) > tol:
        return False
    return is_positive_definite(np.eye(W.shape[0]) - W.conj() @ W, tol)


def cayley_to_bounded(Z, tol: float = DEFAULT_TOL) -> np.ndarray:
    """``W = (Z - iI)(Z + iI)^-1``; sends ``iI`` to the origin."""
    Z = _square(Z)
    if not is_siegel_point(Z, tol):
        raise ValueError("not a point of the Siegel half-plane")
    I = np.eye(Z.shape[0])
    W = np.linalg.solve((Z + 1j * I).T, (Z - 1j * I).T).T
    W = (W + W.T) / 2
    if not in_bounded_siegel(W, tol):
        raise ValueError("image is on the boundary within tolerance")
    return W


def cayley_from_bounded(W, tol: float = DEFAULT_TOL) -> np.ndarray:
    """``Z = i (I + W)(I - W)^-1``."""
    W = _square(W)
    if not in_bounded_siegel(W, tol):
        raise ValueError("W is not inside the bounded domain (boundary input)")
    I = np.eye(W.shape[0])
    Z = 1j * np.linalg.solve((I - W).T, (I + W).T).T
    return (Z + Z.T) / 2


def in_bounded_Ipq(Z, tol: float = DEFAULT_TOL) -> bool:
    """Z is q x p; membership is ``I_p - Z^T conj(Z) > 0``."""
    Z = _cmat(Z)
    p = Z.shape[1]
    return is_positive_definite(np.eye(p) - Z.T @ Z.conj(), tol)


def satake_embed(Z) -> np.ndarray:
    """``[[0_p, Z^T], [Z, 0_q]]`` for a q x p matrix Z."""
    Z = _cmat(Z)
    q, p = Z.shape
    return np.block([[np.zeros((p, p)), Z.T], [Z, np.zeros((q, q))]])


def product_embed(blocks: Iterable) -> np.ndarray:
    """Block-diagonal assembly of the Satake images of several blocks."""
    mats = [satake_embed(b) for b in blocks]
    n = sum(m.shape[0] for m in mats)
    out = np.zeros((n, n), dtype=complex)
    k = 0
    for m in mats:
        s = m.shape[0]
        out[k:k + s, k:k + s] = m
        k += s
    return out


# -- period matrices and polarizations --------------------------------------

def _period_matrix(P) -> np.ndarray:
    P = _cmat(P)
    g, n = P.shape
    if n == g:
        # a square input is the normalized block of (I_g | P)
        return np.hstack([np.eye(g), P])
    if n != 2 * g:
        raise ValueError(f"period matrix must be g x 2g, got {P.shape}")
    return P


def _check_skew(A, size: int) -> np.ndarray:
    A = np.asarray(A)
    if A.shape != (size, size):
        raise ValueError(f"A must be {size} x {size}")
    if np.any(A != -A.T):
        raise ValueError("A must be skew-symmetric")
    return A.astype(float)


def riemann_frobenius(Pi, A, mode: str = "coperiod", tol: float = DEFAULT_TOL) -> bool:
    """Riemann-Frobenius conditions for a torus and an integral skew form A.

    ``coperiod``: Pi is 2g x g, ``Pi^T A Pi = 0`` and ``i Pi^T A conj(Pi) > 0``.
    ``period``: Pi is g x 2g (a square g x g input means ``(I_g | Pi)``),
    ``Pi A^-1 Pi^T = 0`` and ``-i conj(Pi) A^-1 Pi^T > 0``.
    """
    if mode == "coperiod":
        P = _cmat(Pi)
        n, g = P.shape
        if n != 2 * g:
            raise ValueError(f"coperiod matrix must be 2g x g, got {P.shape}")
        A = _check_skew(A, n)
        if np.linalg.matrix_rank(P, tol=tol) < g:
            raise ValueError("coperiod matrix is not of full rank")
        iso = P.T @ A @ P
        herm = 1j * P.T @ A @ P.conj()
    elif mode == "period":
        P = _period_matrix(Pi)
        g, n = P.shape
        A = _check_skew(A, n)
        if abs(np.linalg.det(A)) < 0.5:
            raise ValueError("A is singular; period mode needs A^-1")
        B = np.linalg.inv(A)
        iso = P @ B @ P.T
        herm = -1j * P.conj() @ B @ P.T
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if np.max(np.abs(iso), initial=0.0) > tol:
        return False
    return is_positive_definite(herm, tol)


def _skew_from_upper(vals: Sequence[int], n: int) -> np.ndarray:
    A = np.zeros((n, n), dtype=int)
    for (i, j), v in zip(itertools.combinations(range(n), 2), vals):
        A[i, j], A[j, i] = v, -v
    return A


def find_polarization(P, entry_bound: int, tol: float = DEFAULT_TOL,
                      chunk: int = 1 << 20) -> list[np.ndarray]:
    """All primitive integral skew A with entries in [-bound, bound] polarizing P.

    Conditions are those of :func:`riemann_frobenius` in period mode. They are
    invariant under positive scaling only, so candidates are reduced to
    gcd 1 but their sign is kept. The search is vectorized over chunks of the
    box; the result is sorted by the upper-triangular entries.
    """
    if entry_bound < 1:
        raise ValueError("entry_bound must be >= 1")
    P = _period_matrix(P)
    if P.shape[1] == 4:
        return _find_polarization_g2(P, entry_bound, tol, chunk)
    return _find_polarization_box(P, entry_bound, tol, chunk)


def _iso_scale(P: np.ndarray) -> float:
    return 1.0 + float(np.max(np.abs(P))) ** 2


def _find_polarization_box(P: np.ndarray, bound: int, tol: float,
                           chunk: int) -> list[np.ndarray]:
    # generic path: invert every nonsingular candidate in the box
    n = P.shape[1]
    pairs = list(itertools.combinations(range(n), 2))
    k = len(pairs)
    total = (2 * bound + 1) ** k
    rows = np.array([i for i, _ in pairs])
    cols = np.array([j for _, j in pairs])
    scale = _iso_scale(P)
    hits = []
    for start in range(0, total, chunk):
        digits = _box_digits(start, min(start + chunk, total), k, bound)
        A = np.zeros((len(digits), n, n))
        A[:, rows, cols] = digits
        A[:, cols, rows] = -digits
        det = np.linalg.det(A)
        ok = np.abs(det) > 0.5
        if not ok.any():
            continue
        A, digits = A[ok], digits[ok]
        B = np.linalg.inv(A)
        iso = np.einsum("ia,nab,jb->nij", P, B, P)
        bnorm = np.max(np.abs(B), axis=(1, 2))
        keep = np.max(np.abs(iso), axis=(1, 2)) <= tol * scale * (1 + bnorm)
        for vals in digits[keep]:
            vals = [int(v) for v in vals]
            if math.gcd(*vals) != 1:
                continue
            cand = _skew_from_upper(vals, n)
            if riemann_frobenius(P, cand, "period", tol):
                hits.append(tuple(vals))
    return [_skew_from_upper(v, n) for v in sorted(hits)]


def _box_digits(start: int, stop: int, k: int, bound: int) -> np.ndarray:
    base = 2 * bound + 1
    rest = np.arange(start, stop, dtype=np.int64)
    digits = np.empty((rest.size, k), dtype=np.int64)
    for t in range(k - 1, -1, -1):
        digits[:, t] = rest % base - bound
        rest //= base
    return digits


def _find_polarization_g2(P: np.ndarray, bound: int, tol: float,
                          chunk: int) -> list[np.ndarray]:
    # For 4 x 4 skew A, A^-1 = -D(A) / Pf(A) where D(A) is linear in the
    # entries of A, so the isotropy condition is one linear complex equation.
    def dual(a):
        a12, a13, a14, a23, a24, a34 = a
        return _skew_from_upper([a34, -a24, a23, a14, -a13, a12], 4)

    coef = np.array([(P @ dual(e) @ P.T)[0, 1] for e in np.eye(6, dtype=int)])
    scale = _iso_scale(P)
    hits = []
    total = (2 * bound + 1) ** 6
    for start in range(0, total, chunk):
        digits = _box_digits(start, min(start + chunk, total), 6, bound)
        iso = digits @ coef
        keep = np.abs(iso) <= tol * scale * (1 + np.max(np.abs(digits), axis=1))
        for vals in digits[keep]:
            vals = [int(v) for v in vals]
            a12, a13, a14, a23, a24, a34 = vals
            if a12 * a34 - a13 * a24 + a14 * a23 == 0 or math.gcd(*vals) != 1:
                continue
            cand = _skew_from_upper(vals, 4)
            if riemann_frobenius(P, cand, "period", tol):
                hits.append(tuple(vals))
    return [_skew_from_upper(v, 4) for v in sorted(hits)]


def normalize_period(Pi, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Reduce a 2g x g coperiod matrix to ``(Z, I_g)^T`` by right multiplication.

    Returns Z, which must lie in the Siegel half-plane.
    """
    P = _cmat(Pi)
    n, g = P.shape
    if n != 2 * g:
        raise ValueError(f"expected a 2g x g matrix, got {P.shape}")
    bottom = P[g:]
    if np.linalg.svd(bottom, compute_uv=False).min() <= tol:
        raise ValueError("non-normalizable basis: bottom block is singular (permute rows)")
    if not riemann_frobenius(P, -standard_J(g), "coperiod", tol):
        raise ValueError("matrix does not satisfy the Riemann conditions for J")
    Z = np.linalg.solve(bottom.T, P[:g].T).T
    Z = (Z + Z.T) / 2
    if not is_siegel_point(Z, tol):
        raise ValueError("normalized matrix is not in the Siegel half-plane")
    return Z


# -- polarization types -----------------------------------------------------

@dataclass(frozen=True)
class PolarizationType:
    d: tuple[int, ...]
    primitive: bool = True

    def __post_init__(self):
        d = tuple(int(x) for x in self.d)
        if not d or any(x <= 0 for x in d):
            raise ValueError("polarization type needs positive entries")
        if any(b % a for a, b in zip(d, d[1:])):
            raise ValueError(f"{d} is not a divisibility chain")
        if self.primitive and math.gcd(*d) != 1:
            raise ValueError(f"{d} is not primitive")
        object.__setattr__(self, "d", d)

    @property
    def g(self) -> int:
        return len(self.d)


def dual_polarization_type(D: PolarizationType) -> PolarizationType:
    """``(1, d_g/d_{g-1}, ..., d_g/d_1)`` reduced to primitive form."""
    top = D.d[-1]
    dual = [top // x for x in reversed(D.d)]
    c = math.gcd(*dual)
    return PolarizationType(tuple(x // c for x in dual))


# -- order-4 complex structures ---------------------------------------------

def order4_structure(p: int, q: int) -> tuple[np.ndarray, dict]:
    """Integral complex structure of type (p, q) on Z^{2g}, g = p + q.

    ``I e_k = e_{k+g}`` for k <= p and ``I e_{p+k} = -e_{p+g+k}``. The report
    gives the actual signature of ``Q(v, I v')`` rather than assuming it.
    """
    if p < 0 or q < 0 or p + q < 1:
        raise ValueError("need p, q >= 0 and p + q >= 1")
    g = p + q
    I = np.zeros((2 * g, 2 * g), dtype=int)
    for k in range(p):
        I[k + g, k] = 1
        I[k, k + g] = -1
    for k in range(p, g):
        I[k + g, k] = -1
        I[k, k + g] = 1
    J = standard_J(g)
    S = J @ I
    sym = bool(np.array_equal(S, S.T))
    report = {
        "p": p,
        "q": q,
        "square_is_minus_identity": bool(np.array_equal(I @ I, -np.eye(2 * g, dtype=int))),
        "symplectic": is_symplectic(I, exact=True),
        "form_symmetric": sym,
        "form_signature": list(exact_signature(S.tolist()))[:2] if sym else None,
    }
    report["form_positive_definite"] = report["form_signature"] == [2 * g, 0]
    return I, report


# -- random data for tests and demos ----------------------------------------

def random_sp2g_z(g: int, rng: np.random.Generator, steps: int = 6) -> np.ndarray:
    """A random element of Sp(2g, Z): a product of elementary generators."""
    J = standard_J(g)
    I = np.eye(g, dtype=int)
    O = np.zeros((g, g), dtype=int)
    M = np.eye(2 * g, dtype=int)
    for _ in range(steps):
        kind = rng.integers(3)
        if kind == 0:
            S = rng.integers(-1, 2, size=(g, g))
            S = np.triu(S) + np.triu(S, 1).T
            E = np.block([[I, S], [O, I]])
        elif kind == 1:
            # elementary unimodular block diag(U, U^-T)
            U = I.copy()
            if g > 1:
                i, j = rng.choice(g, size=2, replace=False)
                U[i, j] = rng.choice([-1, 1])
            else:
                U = -U
            UinvT = np.round(np.linalg.inv(U)).astype(int).T
            E = np.block([[U, O], [O, UinvT]])
        else:
            E = J
        M = M @ E
    return M


def random_siegel_point(g: int, rng: np.random.Generator) -> np.ndarray:
    X = rng.normal(size=(g, g))
    R = rng.normal(size=(g, g))
    Y = R @ R.T + 0.5 * np.eye(g)
    return (X + X.T) / 2 + 1j * Y
