"""Composition-indexed matrices for the three entry families.

Rows and columns both follow the canonical lexicographic ordering of the
composition domain.  Entry at (row alpha, col beta):

    BINOMIAL       prod_t C(x_t + l_t*alpha_t, beta_t)
    BINOMIAL_BETA  prod_t C(x_t + l_t*alpha_t + beta_t, beta_t)
    POWER          prod_t (x_t + l_t*alpha_t)^beta_t

Scalar-lambda / single-x / shifted variants are obtained by substitution
into these matrices, never by separate builders.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping, Sequence

from .compositions import Composition, Domain, enumerate_compositions
from .polynomials import (
    Coeff,
    Polynomial,
    binomial_value,
    l_var,
    poly_binomial,
    poly_to_string,
    variable_names,
    x_var,
)


class EntryFamily(Enum):
    BINOMIAL = "BINOMIAL"
    BINOMIAL_BETA = "BINOMIAL_BETA"
    POWER = "POWER"


@dataclass(frozen=True)
class SymbolicMatrix:
    family: EntryFamily
    domain: Domain
    n: int
    k: int
    row_index: tuple[Composition, ...]
    col_index: tuple[Composition, ...]
    entries: tuple[tuple[Polynomial, ...], ...]

    @property
    def order(self) -> int:
        return len(self.row_index)

    def substitute(self, mapping: Mapping[int, Polynomial | Coeff]) -> "SymbolicMatrix":
        return SymbolicMatrix(
            family=self.family, domain=self.domain, n=self.n, k=self.k,
            row_index=self.row_index, col_index=self.col_index,
            entries=tuple(tuple(e.substitute(mapping) for e in row) for row in self.entries))

    def to_json_dict(self) -> dict:
        return {
            "family": self.family.value,
            "domain": self.domain.value,
            "n": self.n,
            "k": self.k,
            "order": self.order,
            "row_order": [list(c.parts) for c in self.row_index],
            "entries": [[poly_to_string(e, self.k) for e in row] for row in self.entries],
        }


def _symbolic_entry(family: EntryFamily, k: int,
                    alpha: Composition, beta: Composition) -> Polynomial:
    entry = Polynomial.constant(2 * k, 1)
    for t in range(1, k + 1):
        base = x_var(k, t) + l_var(k, t) * alpha[t - 1]
        bt = beta[t - 1]
        if family is EntryFamily.BINOMIAL:
            entry = entry * poly_binomial(base, bt)
        elif family is EntryFamily.BINOMIAL_BETA:
            entry = entry * poly_binomial(base + bt, bt)
        else:
            entry = entry * base ** bt
    return entry


def build_matrix(family: EntryFamily, domain: Domain, n: int, k: int) -> SymbolicMatrix:
    """Symbolic matrix over the canonical composition ordering."""
    comps = tuple(enumerate_compositions(n, k, domain))
    entries = tuple(
        tuple(_symbolic_entry(family, k, alpha, beta) for beta in comps)
        for alpha in comps)
    return SymbolicMatrix(family=family, domain=domain, n=n, k=k,
                          row_index=comps, col_index=comps, entries=entries)


def assignment_vector(k: int, assignment: Mapping[str, Coeff]) -> list[Coeff | None]:
    """Order an x1..xk,l1..lk name->value map into a variable-index vector."""
    names = variable_names(k)
    unknown = set(assignment) - set(names)
    if unknown:
        raise ValueError(f"unknown variables: {sorted(unknown)}")
    return [assignment.get(name) for name in names]


def _numeric_entry(family: EntryFamily, k: int, alpha: Composition, beta: Composition,
                   xs: Sequence[Coeff], ls: Sequence[Coeff]) -> Coeff:
    value: Coeff = 1
    for t in range(k):
        base = xs[t] + ls[t] * alpha[t]
        bt = beta[t]
        if family is EntryFamily.BINOMIAL:
            value *= binomial_value(base, bt)
        elif family is EntryFamily.BINOMIAL_BETA:
            value *= binomial_value(base + bt, bt)
        else:
            # Fraction(0) ** 0 == 1, matching the 0^0 = 1 convention.
            value *= base ** bt
    return value


def build_numeric_matrix(family: EntryFamily, domain: Domain, n: int, k: int,
                         assignment: Mapping[str, Coeff] | Sequence[Coeff | None],
                         ) -> list[list[Coeff]]:
    """Entrywise numeric evaluation, computed directly on rationals."""
    if isinstance(assignment, Mapping):
        values = assignment_vector(k, assignment)
    else:
        values = list(assignment)
        if len(values) != 2 * k:
            raise ValueError(f"expected {2 * k} values, got {len(values)}")
    if any(v is None for v in values):
        missing = [variable_names(k)[i] for i, v in enumerate(values) if v is None]
        raise ValueError(f"missing assignment for variables: {missing}")
    xs = [Fraction(v) for v in values[:k]]
    ls = [Fraction(v) for v in values[k:]]
    comps = enumerate_compositions(n, k, domain)
    return [[_numeric_entry(family, k, alpha, beta, xs, ls) for beta in comps]
            for alpha in comps]
