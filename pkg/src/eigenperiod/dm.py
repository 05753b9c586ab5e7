"""Hypergeometric weight systems, their integrality conditions and enumeration.

A weight system is a list of rationals ``0 < mu_i < 1`` with integral sum.
The INT condition asks that ``1 / (1 - mu_i - mu_j)`` be an integer whenever
``mu_i + mu_j < 1``; the weaker SigmaINT condition only asks for
``2 / (1 - mu_i - mu_j)`` when ``mu_i == mu_j``.

:func:`enumerate_weights` lists every ball-case system (``|mu| = 2``) of a
given length. It rests on one observation: if ``s`` is the smallest weight,
any other weight ``t`` with ``t + s < 1`` must satisfy ``1 - s - t = 1/n``,
so once ``s`` is fixed the candidates form a short explicit list. Weights
with ``t + s >= 1`` are unconstrained by ``s`` but there can be at most one
of them once ``m >= 5``.
"""

from __future__ import annotations

import bisect
import enum
import math
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

INT = "INT"
SIGMA_INT = "SigmaINT"
CONDITIONS = (INT, SIGMA_INT)


class WeightError(ValueError):
    """Raised by :func:`validate_weights`; ``condition`` names the failed rule."""

    def __init__(self, condition: str, message: str):
        super().__init__(message)
        self.condition = condition


@dataclass(frozen=True, order=True)
class WeightSystem:
    """Reduced rationals sorted in descending order."""

    entries: tuple[Fraction, ...]

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def d(self) -> int:
        return math.lcm(*(x.denominator for x in self.entries))

    @property
    def weight(self) -> int:
        return int(sum(self.entries))

    def numerators(self) -> tuple[int, ...]:
        d = self.d
        return tuple(int(x * d) for x in self.entries)

    def to_string(self) -> str:
        d = self.d
        return ",".join(f"{k}/{d}" for k in self.numerators())

    def to_json(self) -> list[list[int]]:
        return [[x.numerator, x.denominator] for x in self.entries]

    def __str__(self) -> str:
        return self.to_string()


def validate_weights(mu: Iterable) -> WeightSystem:
    """Canonical form of ``mu``; raises :class:`WeightError` on bad input."""
    try:
        vals = [Fraction(x) for x in mu]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise WeightError("parse", f"not a list of rationals: {exc}") from None
    if not vals:
        raise WeightError("nonempty", "a weight system needs at least one weight")
    bad = [x for x in vals if not 0 < x < 1]
    if bad:
        raise WeightError("range", f"weights must satisfy 0 < mu_i < 1; offending: "
                          f"{', '.join(map(str, bad))}")
    total = sum(vals)
    if total.denominator != 1:
        raise WeightError("integral_sum", f"sum of weights is {total}, not an integer")
    return WeightSystem(tuple(sorted(vals, reverse=True)))


_REPEAT = re.compile(r"^\s*(.+?)\s*[x^]\s*(\d+)\s*$")


def parse_weights(text: str) -> WeightSystem:
    """Parse ``"k1/d,k2/d,..."``; an item may carry a repeat count, ``1/3x6``."""
    vals: list[Fraction] = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            raise WeightError("parse", f"empty item in {text!r}")
        count = 1
        rep = _REPEAT.match(item)
        if rep:
            item, count = rep.group(1), int(rep.group(2))
        item = item.strip("()")
        try:
            vals.extend([Fraction(item)] * count)
        except (ValueError, ZeroDivisionError):
            raise WeightError("parse", f"cannot read {item!r} as a rational") from None
    return validate_weights(vals)


def weights_from_json(obj: Sequence[Sequence[int]]) -> WeightSystem:
    return validate_weights(Fraction(int(n), int(d)) for n, d in obj)


# -- integrality conditions --------------------------------------------------

def pair_ok(u: Fraction, v: Fraction, sigma: bool = False) -> bool:
    """Condition on a single pair; ``sigma`` relaxes it for equal weights."""
    s = u + v
    if s >= 1:
        return True
    inv = 1 / (1 - s)
    if sigma and u == v:
        return (2 * inv).denominator == 1
    return inv.denominator == 1


def _check(mu: WeightSystem, sigma: bool) -> bool:
    e = mu.entries
    return all(pair_ok(e[i], e[j], sigma) for i in range(len(e)) for j in range(i))


def is_int(mu: WeightSystem) -> bool:
    return _check(mu, False)


def is_sigma_int(mu: WeightSystem) -> bool:
    return _check(mu, True)


def failing_pairs(mu: WeightSystem, condition: str = INT) -> list[tuple[Fraction, Fraction]]:
    """Distinct pairs of weights violating the condition."""
    sigma = _condition(condition)
    e = mu.entries
    out = set()
    for i in range(len(e)):
        for j in range(i):
            if not pair_ok(e[i], e[j], sigma):
                out.add((e[j], e[i]))
    return sorted(out, reverse=True)


def _condition(condition: str) -> bool:
    key = condition.replace("Σ", "Sigma").lower()
    if key == "int":
        return False
    if key in ("sigmaint", "sigma_int", "sigma-int"):
        return True
    raise ValueError(f"unknown condition {condition!r}; expected INT or SigmaINT")


# -- enumeration -------------------------------------------------------------

def _fractions(d_max: int) -> list[Fraction]:
    return sorted({Fraction(a, b) for b in range(2, d_max + 1) for a in range(1, b)})


def _max_bigs(m: int, s: Fraction) -> int:
    # j weights >= 1 - s and m - j weights >= s cannot exceed a total of 2
    return max(j for j in range(m) if 2 - j >= s * (m - 2 * j))


def _for_smallest(args) -> set[tuple[Fraction, ...]]:
    m, s, sigma, d_max, all_fracs = args
    out: set[tuple[Fraction, ...]] = set()
    low_big = max(s, 1 - s)
    bigs = [b for b in all_fracs if b >= low_big]

    # every weight t in [s, 1 - s) must satisfy the pair condition with s,
    # which for t != s means 1 - s - t = 1/n
    K = [s] if pair_ok(s, s, sigma) else []
    lo = bisect.bisect_right(all_fracs, s)
    hi = bisect.bisect_left(all_fracs, 1 - s)
    K += [t for t in all_fracs[lo:hi] if (1 - s - t).numerator == 1]
    K.sort(reverse=True)

    def compatible(u, prefix):
        return all(pair_ok(u, v, sigma) for v in prefix)

    def finish(prefix, rem, j):
        if j == 0:
            if rem == 0:
                out.add(tuple(sorted(prefix + [s], reverse=True)))
            return
        if not j * low_big <= rem < j:
            return
        if j == 1:
            if rem.denominator <= d_max and compatible(rem, prefix):
                out.add(tuple(sorted(prefix + [rem, s], reverse=True)))
            return
        # several large weights only occur for m <= 4
        for b in bigs:
            if b * j < rem:
                continue
            if b + (j - 1) * low_big > rem:
                break
            if compatible(b, prefix):
                prefix.append(b)
                finish(prefix, rem - b, j - 1)
                prefix.pop()

    def rec(prefix, start, rem, k, j):
        if k == 0:
            finish(prefix, rem, j)
            return
        for i in range(start, len(K)):
            u = K[i]
            if j == 0 and u * k < rem:
                break
            if j > 0 and u * k <= rem - j:
                break
            if u + (k - 1) * s > rem - j * low_big:
                continue
            if compatible(u, prefix):
                prefix.append(u)
                rec(prefix, i, rem - u, k - 1, j)
                prefix.pop()

    for j in range(_max_bigs(m, s) + 1):
        rec([], 0, 2 - s, m - 1 - j, j)
    return out


def enumerate_weights(m: int, condition: str = INT, d_max: int = 60,
                      order: str = "ascending", workers: int = 1) -> list[WeightSystem]:
    """All weight systems of length ``m`` with ``|mu| = 2`` satisfying ``condition``.

    Systems are unordered multisets; every entry has reduced denominator at
    most ``d_max``. The search runs over the smallest weight ``s``; ``order``
    only changes the order in which those values are visited and ``workers``
    spreads them over processes. The merged result is sorted descending and
    does not depend on either.
    """
    if m < 3:
        raise ValueError("m must be >= 3")
    if d_max < 2:
        raise ValueError("d_max must be >= 2")
    sigma = _condition(condition)
    all_fracs = _fractions(d_max)
    smalls = [s for s in all_fracs if s * m <= 2]
    if order == "descending":
        smalls.reverse()
    elif order != "ascending":
        raise ValueError("order must be 'ascending' or 'descending'")
    jobs = [(m, s, sigma, d_max, all_fracs) for s in smalls]
    found: set[tuple[Fraction, ...]] = set()
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            for part in pool.map(_for_smallest, jobs, chunksize=8):
                found |= part
    else:
        for job in jobs:
            found |= _for_smallest(job)
    return [WeightSystem(t) for t in sorted(found, reverse=True)]


# -- stability and covers ----------------------------------------------------

class Stability(str, enum.Enum):
    STABLE = "Stable"
    STRICTLY_SEMISTABLE = "StrictlySemistable"
    UNSTABLE = "Unstable"


@dataclass(frozen=True)
class StabilityVerdict:
    verdict: Stability
    witnesses: tuple[tuple[int, ...], ...] = ()

    def as_dict(self) -> dict:
        return {"verdict": self.verdict.value, "witnesses": [list(w) for w in self.witnesses]}


def git_classify(k: Sequence[int], groups: Sequence[Sequence[int]]) -> StabilityVerdict:
    """Stability of weighted points on the line given which of them coincide.

    ``groups`` partitions the indices ``0 .. m-1``. A class of weight more
    than half the total destabilizes; exactly half makes the point strictly
    semistable. Witnesses are the offending classes.
    """
    k = [int(x) for x in k]
    if any(x <= 0 for x in k):
        raise ValueError("weights must be positive integers")
    seen = sorted(i for g in groups for i in g)
    if seen != list(range(len(k))):
        raise ValueError(f"groups do not partition the indices 0..{len(k) - 1}")
    total = sum(k)
    over, equal = [], []
    for g in groups:
        w = 2 * sum(k[i] for i in g)
        if w > total:
            over.append(tuple(sorted(g)))
        elif w == total:
            equal.append(tuple(sorted(g)))
    if over:
        return StabilityVerdict(Stability.UNSTABLE, tuple(sorted(over)))
    if equal:
        return StabilityVerdict(Stability.STRICTLY_SEMISTABLE, tuple(sorted(equal)))
    return StabilityVerdict(Stability.STABLE)


def cyclic_cover_genus(d: int, exponents: Sequence[int]) -> int:
    """Genus of the smooth model of ``y^d = prod (x - z_i)^{k_i}``.

    The point at infinity is a branch point with exponent ``sum k_i``.
    """
    ks = [int(x) for x in exponents]
    if d < 2:
        raise ValueError("d must be >= 2")
    if not ks:
        raise ValueError("at least one exponent is required")
    if math.gcd(d, *ks) != 1:
        raise ValueError(f"gcd(d, k) = {math.gcd(d, *ks)} != 1: the cover is reducible")
    ram = sum(d - math.gcd(d, x) for x in ks) + d - math.gcd(d, sum(ks))
    twice = -2 * d + ram + 2
    if twice % 2:
        raise ArithmeticError("Riemann-Hurwitz produced an odd Euler characteristic")
    return twice // 2


def ball_dimension(m: int) -> int:
    """Dimension of the ball parametrizing ``m`` points on the line."""
    if m < 4:
        raise ValueError("m must be >= 4")
    return m - 3


__all__ = [
    "CONDITIONS",
    "INT",
    "SIGMA_INT",
    "Stability",
    "StabilityVerdict",
    "WeightError",
    "WeightSystem",
    "ball_dimension",
    "cyclic_cover_genus",
    "enumerate_weights",
    "failing_pairs",
    "git_classify",
    "is_int",
    "is_sigma_int",
    "pair_ok",
    "parse_weights",
    "validate_weights",
    "weights_from_json",
]
