"""Shared random generators and independent oracles for the test suite."""

import functools
import itertools

import numpy as np


def random_int_matrix(rng, rows, cols, bound=9):
    return rng.integers(-bound, bound + 1, size=(rows, cols)).tolist()


def random_symmetric(rng, n, bound=9):
    A = rng.integers(-bound, bound + 1, size=(n, n))
    return np.triu(A) + np.triu(A, 1).T


def random_unimodular(rng, n, steps=12):
    T = np.eye(n, dtype=object)
    for _ in range(steps):
        i, j = rng.choice(n, size=2, replace=False) if n > 1 else (0, 0)
        if i == j:
            T[:, i] = -T[:, i]
        else:
            T[:, j] = T[:, j] + int(rng.choice([-2, -1, 1, 2])) * T[:, i]
    return [[int(x) for x in row] for row in T]


def box_vectors_of_norm(gram, norm):
    """Count x with x^T G x == norm by scanning a box.

    For definite G the box ``|x_i| <= sqrt(norm * (G^-1)_ii)`` contains every
    solution, which is the classical coordinate bound.
    """
    G = np.array(gram, dtype=float)
    sign = -1.0 if norm < 0 else 1.0
    P = sign * G
    bounds = np.floor(np.sqrt(abs(norm) * np.diag(np.linalg.inv(P))) + 1e-9).astype(int)
    ranges = [range(-b, b + 1) for b in bounds]
    pts = np.array(list(itertools.product(*ranges)), dtype=np.int64)
    vals = np.einsum("ni,ij,nj->n", pts, np.array(gram, dtype=np.int64), pts)
    return int(np.sum(vals == norm))


def brute_force_weights(m, sigma, d_max):
    """Every descending m-tuple of fractions with denominators <= d_max, sum 2
    and the pair condition, found by plain depth-first search over all fractions."""
    from fractions import Fraction

    from eigenperiod.dm import pair_ok

    fr = sorted({Fraction(a, b) for b in range(2, d_max + 1) for a in range(1, b)}, reverse=True)
    lo = fr[-1]
    out = set()

    def rec(pre, start, rem, k):
        if k == 1:
            u = rem
            if (0 < u < 1 and u.denominator <= d_max and (not pre or u <= pre[-1])
                    and all(pair_ok(u, v, sigma) for v in pre)):
                out.add(tuple(pre + [u]))
            return
        for i in range(start, len(fr)):
            u = fr[i]
            if u * k < rem:
                break
            if rem - u < (k - 1) * lo:
                continue
            if all(pair_ok(u, v, sigma) for v in pre):
                pre.append(u)
                rec(pre, i, rem - u, k - 1)
                pre.pop()

    rec([], 0, Fraction(2), m)
    return out


@functools.cache
def cached_enumeration(m, condition, d_max=60):
    from eigenperiod.dm import enumerate_weights

    return tuple(enumerate_weights(m, condition, d_max))
