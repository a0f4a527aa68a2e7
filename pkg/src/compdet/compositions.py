"""Compositions of an integer into a fixed number of parts.

A composition of n into k parts is an ordered tuple of non-negative
integers summing to n.  The ALL domain allows zero parts; the POSITIVE
domain requires every part to be at least 1.  Matrices elsewhere in the
package are indexed by the canonical (ascending lexicographic) ordering
produced here, so this ordering must never change.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence


class ParameterError(ValueError):
    """Invalid (n, k, domain) parameters."""


class CompositionLookupError(LookupError):
    """Composition not a member of the requested domain."""


class Domain(Enum):
    ALL = "ALL"            # parts >= 0
    POSITIVE = "POSITIVE"  # parts >= 1


@dataclass(frozen=True)
class Composition:
    """Immutable vector of non-negative integers."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.parts, tuple):
            object.__setattr__(self, "parts", tuple(self.parts))
        for p in self.parts:
            if not isinstance(p, int) or p < 0:
                raise ParameterError(f"composition parts must be non-negative integers: {self.parts}")

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, t: int) -> int:
        return self.parts[t]

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def _check_params(n: int, k: int, domain: Domain) -> None:
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    if domain is Domain.POSITIVE and n < k:
        raise ParameterError(f"POSITIVE domain requires n >= k, got n={n}, k={k}")


def _parts_iter(n: int, k: int, lo: int) -> Iterator[tuple[int, ...]]:
    if k == 1:
        if n >= lo:
            yield (n,)
        return
    for first in range(lo, n - lo * (k - 1) + 1):
        for rest in _parts_iter(n - first, k - 1, lo):
            yield (first,) + rest


def enumerate_compositions(n: int, k: int, domain: Domain = Domain.ALL) -> list[Composition]:
    """All compositions in the domain, ascending lexicographic order."""
    _check_params(n, k, domain)
    lo = 1 if domain is Domain.POSITIVE else 0
    return [Composition(p) for p in _parts_iter(n, k, lo)]


def count_compositions(n: int, k: int, domain: Domain = Domain.ALL) -> int:
    """Closed-form size of the domain (stars and bars)."""
    _check_params(n, k, domain)
    if domain is Domain.POSITIVE:
        return math.comb(n - 1, k - 1)
    return math.comb(n + k - 1, k - 1)


def _count_or_zero(n: int, k: int, domain: Domain) -> int:
    if k < 1 or n < 0 or (domain is Domain.POSITIVE and n < k):
        return 0
    return count_compositions(n, k, domain)


def composition_index(c: Composition | Sequence[int], n: int, k: int,
                      domain: Domain = Domain.ALL) -> int:
    """Position of c in the canonical order; inverse of enumeration."""
    _check_params(n, k, domain)
    parts = tuple(c)
    lo = 1 if domain is Domain.POSITIVE else 0
    if len(parts) != k or sum(parts) != n or any(p < lo for p in parts):
        raise CompositionLookupError(f"{parts} is not in C({n},{k}) domain {domain.value}")
    rank = 0
    rem = n
    for t in range(k - 1):
        for v in range(lo, parts[t]):
            rank += _count_or_zero(rem - v, k - t - 1, domain)
        rem -= parts[t]
    return rank


def shift_down(c: Composition) -> Composition:
    """Subtract 1 from each part; bijection from C*(n,k) onto C(n-k,k)."""
    if any(p < 1 for p in c):
        raise ParameterError(f"shift_down requires all parts >= 1, got {c}")
    return Composition(tuple(p - 1 for p in c))


def unit_composition(t: int, k: int) -> Composition:
    """Composition of 1 with the single 1 in (1-based) position t."""
    if not 1 <= t <= k:
        raise ParameterError(f"position t={t} out of range 1..{k}")
    return Composition(tuple(1 if i == t - 1 else 0 for i in range(k)))
