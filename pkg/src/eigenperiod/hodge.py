"""Character Hodge structures and the bookkeeping around eigenperiods.

A :class:`CharacterHodgeStructure` records only dimensions: for a cyclic
group of order ``m`` acting on a weight ``k`` Hodge structure it stores
``h^{p,k-p}_a``, the dimension of the ``(p, k-p)`` part on which the
generator acts by ``exp(2 pi i a / m)``. Nothing here touches actual
periods; every result is a statement about integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Sequence

from .dm import WeightSystem, validate_weights


@dataclass(frozen=True)
class CharacterHodgeStructure:
    """Dimensions ``h^{p,k-p}_a`` keyed by ``(a, p)``.

    Character indices are reduced mod ``group_order`` and zero entries are
    dropped, so two structures with the same nonzero dimensions compare equal.
    """

    weight: int
    group_order: int
    dims: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        if self.weight < 0:
            raise ValueError("weight must be >= 0")
        if self.group_order < 1:
            raise ValueError("group_order must be >= 1")
        clean: dict[tuple[int, int], int] = {}
        for (a, p), h in dict(self.dims).items():
            if not 0 <= p <= self.weight:
                raise ValueError(f"p = {p} outside 0..{self.weight}")
            if h < 0:
                raise ValueError(f"negative dimension at ({a}, {p})")
            key = (a % self.group_order, p)
            if key in clean:
                raise ValueError(f"duplicate entry for character {key[0]}, p = {p}")
            if h:
                clean[key] = int(h)
        object.__setattr__(self, "dims", dict(sorted(clean.items())))

    def h(self, a: int, p: int) -> int:
        return self.dims.get((a % self.group_order, p), 0)

    def conj(self, a: int) -> int:
        return (-a) % self.group_order

    def characters(self) -> list[int]:
        return sorted({a for a, _ in self.dims})

    def total(self, chars: Iterable[int] | None = None) -> int:
        if chars is None:
            return sum(self.dims.values())
        keep = {a % self.group_order for a in chars}
        return sum(h for (a, _), h in self.dims.items() if a in keep)

    def hodge_numbers(self) -> tuple[int, ...]:
        """Totals over all characters, ordered ``(h^{k,0}, ..., h^{0,k})``."""
        out = [0] * (self.weight + 1)
        for (_, p), h in self.dims.items():
            out[self.weight - p] += h
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "weight": self.weight,
            "group_order": self.group_order,
            "dims": [[a, p, h] for (a, p), h in self.dims.items()],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "CharacterHodgeStructure":
        try:
            weight = int(obj["weight"])
            m = int(obj["group_order"])
            triples = obj.get("dims", [])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed Hodge structure: {exc}") from None
        dims = {}
        for t in triples:
            if len(t) != 3:
                raise ValueError(f"dims entries are [a, p, h], got {t!r}")
            a, p, h = (int(x) for x in t)
            if (a % m, p) in dims:
                raise ValueError(f"duplicate entry for character {a}, p = {p}")
            dims[(a % m, p)] = h
        return cls(weight, m, dims)


def validate_chs(H: CharacterHodgeStructure) -> tuple[bool, list[str]]:
    """Check the reality condition ``h^{p,q}_a == h^{q,p}_{-a}``.

    Returns the verdict and a list of human-readable violations.
    """
    k = H.weight
    problems = []
    keys = set(H.dims) | {(H.conj(a), k - p) for a, p in H.dims}
    for a, p in sorted(keys):
        b, q = H.conj(a), k - p
        if (b, q) < (a, p):
            continue
        if H.h(a, p) != H.h(b, q):
            problems.append(
                f"h^({p},{k - p})_{a} = {H.h(a, p)} but h^({q},{k - q})_{b} = {H.h(b, q)}"
            )
    return not problems, problems


def canonical_sigma(m: int) -> frozenset[int]:
    """Characters with ``Im chi(g) > 0`` for the standard generator."""
    return frozenset(a for a in range(1, m) if 2 * a < m)


def half_twist(H: CharacterHodgeStructure, sigma: Iterable[int]) -> CharacterHodgeStructure:
    """Negative half twist along ``sigma``; the result has weight ``k + 1``.

    On a character in ``sigma`` the Hodge filtration is shifted up by one,
    on its conjugate it is kept and the complementary index is shifted.
    Characters outside ``sigma`` and its conjugates are discarded.
    """
    m, k = H.group_order, H.weight
    S = {a % m for a in sigma}
    for a in sorted(S):
        if a == 0 or 2 * a == m:
            raise ValueError(f"character {a} is real and cannot be twisted")
        if (-a) % m in S:
            raise ValueError(f"sigma contains both {a} and its conjugate {(-a) % m}")
    dims = {}
    for a in S:
        b = (-a) % m
        for p in range(k + 1):
            dims[(a, p + 1)] = H.h(a, p)
            dims[(b, p)] = H.h(b, p)
    return CharacterHodgeStructure(k + 1, m, dims)


def sylvester_signature(b: int, hodge_numbers: Sequence[int],
                        n: int | None = None) -> tuple[int, int]:
    """Signature ``(t+, t-)`` of the intersection form from Hodge numbers.

    ``hodge_numbers`` lists ``h^{n,0}, ..., h^{0,n}`` for an even weight
    ``n``. Off the middle each class contributes ``(-1)^p``. In the middle
    the primitive part ``h^{n/2,n/2} - 1`` contributes with sign
    ``(-1)^{n/2}`` and the polarization class contributes ``+1``.
    """
    h = [int(x) for x in hodge_numbers]
    if n is None:
        n = len(h) - 1
    if len(h) != n + 1:
        raise ValueError(f"expected {n + 1} Hodge numbers for weight {n}, got {len(h)}")
    if n % 2:
        raise ValueError(f"weight {n} is odd; the intersection form is not symmetric")
    if any(x < 0 for x in h):
        raise ValueError("Hodge numbers must be nonnegative")
    if sum(h) != b:
        raise ValueError(f"Hodge numbers sum to {sum(h)}, not b = {b}")
    mid = n // 2
    I = 0
    for i, x in enumerate(h):
        p = n - i
        if p == mid:
            if x:
                I += (-1) ** mid * (x - 1) + 1
        else:
            I += (-1) ** p * x
    if (b - I) % 2:
        raise ValueError(f"parity mismatch: b = {b} and index I = {I} differ by an odd number")
    return (b + I) // 2, (b - I) // 2


class EigenDims(NamedTuple):
    numbers: tuple[int, ...]  # (h^{n,0}, h^{n-1,1}, ..., h^{0,n})
    total: int


def arrangement_eigendims(mu: WeightSystem | Sequence, n: int) -> EigenDims:
    """Eigenspace Hodge numbers for the arrangement attached to ``mu``.

    ``h^{p,q} = C(|mu| - 1, p) * C(m - 1 - |mu|, q)`` with ``p + q = n``;
    the row sum is ``C(m - 2, n)``.
    """
    if not isinstance(mu, WeightSystem):
        mu = validate_weights(mu)
    if n < 0:
        raise ValueError("n must be >= 0")
    w = mu.weight
    m = mu.m
    numbers = tuple(math.comb(w - 1, p) * math.comb(m - 1 - w, n - p)
                    for p in range(n, -1, -1))
    total = math.comb(m - 2, n)
    if sum(numbers) != total:
        raise ArithmeticError(f"row sum {sum(numbers)} differs from C({m - 2}, {n}) = {total}")
    return EigenDims(numbers, total)


class DomainFactor(NamedTuple):
    kind: str  # "ball", "type_I" or "type_IV"
    params: tuple[int, ...]
    dimension: int


@dataclass(frozen=True)
class DomainDescriptor:
    factors: tuple[DomainFactor, ...]
    total_dimension: int
    siegel_embedding_genus: int

    def as_dict(self) -> dict:
        return {
            "factors": [{"kind": f.kind, "params": list(f.params), "dimension": f.dimension}
                        for f in self.factors],
            "total_dimension": self.total_dimension,
            "siegel_embedding_genus": self.siegel_embedding_genus,
        }


def domain_classifier(entries: Iterable[tuple[bool, int, int]]) -> DomainDescriptor:
    """Classify the period domain of a product of eigenspaces.

    Each entry is ``(is_real, p, q)``, one per conjugate pair of characters.
    """
    factors = []
    genus = 0
    for is_real, p, q in entries:
        if p < 0 or q < 0 or p + q < 1:
            raise ValueError(f"bad signature ({p}, {q})")
        if is_real:
            factors.append(DomainFactor("type_IV", (p + q - 2,), max(p + q - 2, 0)))
            continue
        genus += p + q
        if min(p, q) == 1:
            factors.append(DomainFactor("ball", (max(p, q),), max(p, q)))
        else:
            factors.append(DomainFactor("type_I", (p, q), p * q))
    return DomainDescriptor(tuple(factors), sum(f.dimension for f in factors), genus)


def eigenperiod_ball_dim(dim_n_chi: int) -> int:
    """Dimension of the ball cut out by an eigenspace of dimension ``dim_n_chi``."""
    if dim_n_chi < 1:
        raise ValueError("eigenspace dimension must be >= 1")
    return dim_n_chi - 1


__all__ = [
    "CharacterHodgeStructure",
    "DomainDescriptor",
    "DomainFactor",
    "EigenDims",
    "arrangement_eigendims",
    "canonical_sigma",
    "domain_classifier",
    "eigenperiod_ball_dim",
    "half_twist",
    "sylvester_signature",
    "validate_chs",
]
