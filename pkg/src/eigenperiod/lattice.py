"""Integral lattices, discriminant forms and root systems.

Root lattices follow the K3 convention: ``A_n``, ``D_n`` and ``E_n`` are
*negative* definite (Gram matrix = minus the Cartan matrix). The
positive-definite versions are ``rescale(L, -1)``, written ``L(-1)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import (
    SignatureTriple,
    as_int_matrix,
    bilinear,
    block_diag,
    exact_determinant,
    exact_signature,
    identity,
    is_symmetric,
    matmul,
    rat_inverse,
    smith_normal_form,
    transpose,
)

FQF_CAP = 2000


@dataclass(frozen=True)
class IntegralLattice:
    """A nondegenerate symmetric integer Gram matrix with a display label.

    Equality compares Gram matrices only; the label is metadata.
    """

    gram: tuple[tuple[int, ...], ...]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        G = as_int_matrix(self.gram)
        if not is_symmetric(G):
            raise ValueError(f"{self.label or 'lattice'}: Gram matrix is not symmetric")
        if G and exact_determinant(G) == 0:
            raise ValueError(f"{self.label or 'lattice'}: degenerate Gram matrix")
        object.__setattr__(self, "gram", tuple(tuple(r) for r in G))

    @classmethod
    def from_gram(cls, gram: Sequence[Sequence[int]], label: str = "") -> IntegralLattice:
        return cls(tuple(tuple(r) for r in gram), label)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def gram_matrix(self) -> list[list[int]]:
        return [list(r) for r in self.gram]

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def det(self) -> int:
        return exact_determinant(self.gram)

    def signature(self) -> SignatureTriple:
        return exact_signature(self.gram)

    def __repr__(self):
        return f"IntegralLattice({self.label or '?'}, rank={self.rank})"


# -- constructors -----------------------------------------------------------

def _cartan_edges(kind: str, n: int) -> list[tuple[int, int]]:
    if kind == "A":
        return [(i, i + 1) for i in range(n - 1)]
    if kind == "D":
        # chain 0-1-...-(n-2) with node n-1 attached to n-3
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if kind == "E":
        # Bourbaki labelling: chain 1-3-4-5-...-n, node 2 attached to 4
        chain = [0] + list(range(2, n))
        return list(zip(chain, chain[1:])) + [(1, 3)]
    raise ValueError(kind)


def _root_lattice(kind: str, n: int) -> IntegralLattice:
    G = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in _cartan_edges(kind, n):
        G[i][j] = G[j][i] = 1
    return IntegralLattice.from_gram(G, f"{kind}{n}")


def standard_lattice(name: str, n: int | None = None) -> IntegralLattice:
    """Build ``U``, ``A(n)``, ``D(n)``, ``E(6|7|8)`` or ``rank1(m)``.

    ``name`` may carry the parameter inline (``"E8"``, ``"A2"``) or take it
    through ``n``.
    """
    key = name.strip()
    if n is None and len(key) > 1 and key[0] in "ADE":
        digits = key[1:]
        if not digits.isdigit():
            raise ValueError(f"unsupported lattice name {name!r}")
        key, n = key[0], int(digits)
    if key == "U":
        return IntegralLattice.from_gram([[0, 1], [1, 0]], "U")
    if key == "rank1":
        if not n:
            raise ValueError("rank1(m) needs m != 0")
        return IntegralLattice.from_gram([[n]], f"<{n}>")
    if key in ("A", "D", "E"):
        if n is None:
            raise ValueError(f"{key} needs a rank")
        if key == "A" and n >= 1:
            return _root_lattice("A", n)
        if key == "D" and n >= 4:
            return _root_lattice("D", n)
        if key == "E" and n in (6, 7, 8):
            return _root_lattice("E", n)
        raise ValueError(f"unsupported root lattice {key}{n}")
    raise ValueError(f"unsupported lattice name {name!r}")


def rescale(L: IntegralLattice, s: int) -> IntegralLattice:
    if s == 0:
        raise ValueError("scale factor must be nonzero")
    if s == 1:
        return L
    G = [[s * x for x in row] for row in L.gram]
    return IntegralLattice.from_gram(G, f"{L.label}({s})")


def direct_sum(parts: Sequence[IntegralLattice]) -> IntegralLattice:
    parts = list(parts)
    if not parts:
        raise ValueError("direct sum of an empty list")
    if len(parts) == 1:
        return parts[0]
    G = block_diag([p.gram_matrix for p in parts])
    return IntegralLattice.from_gram(G, "+".join(p.label for p in parts))


# -- discriminant group and form --------------------------------------------

def discriminant_group(L: IntegralLattice) -> list[int]:
    """Invariant factors > 1 of ``L*/L``; the empty list is the trivial group."""
    _, S, _ = smith_normal_form(L.gram)
    return [S[i][i] for i in range(L.rank) if S[i][i] > 1]


def _mod(x: Fraction, m: int) -> Fraction:
    return x - m * math.floor(x / m)


@dataclass(frozen=True)
class FiniteQuadraticForm:
    """Finite abelian group ``prod Z/n_i`` with ``q`` to Q/2Z and ``b`` to Q/Z.

    ``q_values[i]`` is ``q`` of the i-th generator (reduced to ``[0, 2)``),
    ``b_pairings[i][j]`` the pairing of generators ``i`` and ``j`` in ``[0, 1)``.
    """

    invariant_factors: tuple[int, ...]
    q_values: tuple[Fraction, ...]
    b_pairings: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        k = len(self.invariant_factors)
        if len(self.q_values) != k or len(self.b_pairings) != k:
            raise ValueError("generator count mismatch")
        q = tuple(_mod(Fraction(x), 2) for x in self.q_values)
        b = tuple(tuple(_mod(Fraction(x), 1) for x in row) for row in self.b_pairings)
        for i in range(k):
            if _mod(q[i], 1) != b[i][i]:
                raise ValueError("q(g) and b(g, g) disagree mod 1")
            for j in range(i):
                if b[i][j] != b[j][i]:
                    raise ValueError("b is not symmetric")
        object.__setattr__(self, "q_values", q)
        object.__setattr__(self, "b_pairings", b)

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    def elements(self) -> Iterable[tuple[int, ...]]:
        return itertools.product(*(range(n) for n in self.invariant_factors))

    def q(self, x: Sequence[int]) -> Fraction:
        k = len(x)
        v = sum(x[i] * x[i] * self.q_values[i] for i in range(k))
        v += 2 * sum(x[i] * x[j] * self.b_pairings[i][j] for i in range(k) for j in range(i))
        return _mod(Fraction(v), 2)

    def b(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        k = len(x)
        v = sum(x[i] * y[j] * self.b_pairings[i][j] for i in range(k) for j in range(k))
        return _mod(Fraction(v), 1)

    def element_order(self, x: Sequence[int]) -> int:
        o = 1
        for xi, n in zip(x, self.invariant_factors):
            o = math.lcm(o, n // math.gcd(xi, n))
        return o

    def negated(self) -> FiniteQuadraticForm:
        return FiniteQuadraticForm(
            self.invariant_factors,
            tuple(-x for x in self.q_values),
            tuple(tuple(-x for x in row) for row in self.b_pairings),
        )


def discriminant_form(L: IntegralLattice) -> FiniteQuadraticForm:
    """Discriminant quadratic form of an even lattice.

    With ``U G V = S`` (Smith form) the classes of the dual vectors
    ``G^-1 U^-1 e_i`` generate ``L*/L`` with orders ``s_i``.
    """
    if not L.is_even:
        raise ValueError(f"{L.label or 'lattice'} is odd; q is only defined mod Z")
    G = L.gram_matrix
    U, S, _ = smith_normal_form(G)
    keep = [i for i in range(L.rank) if S[i][i] > 1]
    gens = transpose(matmul(rat_inverse(G), rat_inverse(U)))
    gens = [gens[i] for i in keep]
    q = tuple(bilinear(g, G, g) for g in gens)
    b = tuple(tuple(bilinear(g, G, h) for h in gens) for g in gens)
    return FiniteQuadraticForm(tuple(S[i][i] for i in keep), q, b)


def is_p_elementary(L: IntegralLattice, p: int) -> bool:
    if p < 2 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
        raise ValueError(f"{p} is not prime")
    return all(n == p for n in discriminant_group(L))


def fqf_isomorphic(q1: FiniteQuadraticForm, q2: FiniteQuadraticForm,
                   negate: bool = False, cap: int = FQF_CAP) -> bool:
    """Decide whether ``q1`` is isometric to ``q2`` (or to ``-q2``).

    Backtracking over images of the generators of ``q1``: each image must
    have the generator's order, the same ``q`` value and the same pairings
    with the images chosen so far. Since ``b`` is nondegenerate such a map is
    injective, hence bijective when the orders agree.
    """
    if q1.order > cap or q2.order > cap:
        raise ValueError(f"cap exceeded: group orders {q1.order}, {q2.order} > {cap}")
    if q1.order != q2.order:
        return False
    if negate:
        q2 = q2.negated()
    elems = list(q2.elements())
    # invariant check before searching: counts of (order, q) agree
    prof1 = sorted((q1.element_order(x), q1.q(x)) for x in q1.elements())
    prof2 = sorted((q2.element_order(y), q2.q(y)) for y in elems)
    if prof1 != prof2:
        return False
    k = len(q1.invariant_factors)
    gens = [tuple(int(i == j) for j in range(k)) for i in range(k)]
    buckets: dict[tuple[int, Fraction], list] = {}
    for y in elems:
        buckets.setdefault((q2.element_order(y), q2.q(y)), []).append(y)
    images: list = []

    def search(i: int) -> bool:
        if i == k:
            return True
        g = gens[i]
        for y in buckets.get((q1.invariant_factors[i], q1.q_values[i]), ()):
            if all(q2.b(y, images[j]) == q1.b_pairings[i][j] for j in range(i)):
                images.append(y)
                if search(i + 1):
                    return True
                images.pop()
        return False

    return search(0)


# -- roots ------------------------------------------------------------------

def _ldl(P: list[list[Fraction]]):
    """Exact ``P = sum_i d_i (x_i + sum_{j>i} m_ij x_j)^2`` for positive definite P."""
    n = len(P)
    A = [[Fraction(x) for x in row] for row in P]
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = A[i][i]
        if d[i] <= 0:
            raise ValueError("form is not positive definite")
        for j in range(i + 1, n):
            mu[i][j] = A[i][j] / d[i]
        for j in range(i + 1, n):
            for l in range(i + 1, n):
                A[j][l] -= mu[i][j] * A[i][l]
    return d, mu


def vectors_of_norm(L: IntegralLattice, norm: int) -> list[tuple[int, ...]]:
    """All x with ``x^T G x == norm`` for definite L (sign of norm must match)."""
    sig = L.signature()
    if sig.t_minus == L.rank and norm < 0:
        P, target = [[-x for x in row] for row in L.gram], -norm
    elif sig.t_plus == L.rank and norm > 0:
        P, target = L.gram_matrix, norm
    else:
        raise ValueError("vector enumeration needs a definite lattice and a norm of matching sign")
    d, mu = _ldl(P)
    n = L.rank
    x = [0] * n
    found = []

    def rec(i: int, rem: Fraction):
        # coordinates i+1..n-1 are fixed; rem is the budget left for 0..i
        if i < 0:
            if rem == 0:
                found.append(tuple(x))
            return
        c = sum(mu[i][j] * x[j] for j in range(i + 1, n))
        r = math.sqrt(float(rem / d[i]))
        lo = math.floor(-c - r) - 1
        hi = math.ceil(-c + r) + 1
        for v in range(lo, hi + 1):
            t = d[i] * (v + c) ** 2
            if t <= rem:
                x[i] = v
                rec(i - 1, rem - t)
        x[i] = 0

    rec(n - 1, Fraction(target))
    return sorted(found)


def root_vectors(L: IntegralLattice) -> list[tuple[int, ...]]:
    """All vectors of norm -2 in a negative definite lattice, sorted."""
    sig = L.signature()
    if sig.t_minus != L.rank:
        raise ValueError("root enumeration needs a negative definite lattice")
    return vectors_of_norm(L, -2)


def is_isometry(L: IntegralLattice, T: Sequence[Sequence[int]]) -> bool:
    T = as_int_matrix(T)
    if len(T) != L.rank or any(len(r) != L.rank for r in T):
        raise ValueError("isometry size does not match lattice rank")
    G = L.gram_matrix
    return matmul(matmul(transpose(T), G), T) == G and abs(exact_determinant(T)) == 1


def change_basis(L: IntegralLattice, T: Sequence[Sequence[int]]) -> IntegralLattice:
    """Gram matrix of L in the basis given by the columns of unimodular T."""
    T = as_int_matrix(T)
    if abs(exact_determinant(T)) != 1:
        raise ValueError("basis change must be unimodular")
    return IntegralLattice.from_gram(matmul(matmul(transpose(T), L.gram_matrix), T), L.label)


__all__ = [
    "FQF_CAP",
    "FiniteQuadraticForm",
    "IntegralLattice",
    "change_basis",
    "direct_sum",
    "discriminant_form",
    "discriminant_group",
    "fqf_isomorphic",
    "is_isometry",
    "is_p_elementary",
    "rescale",
    "root_vectors",
    "standard_lattice",
    "vectors_of_norm",
]
