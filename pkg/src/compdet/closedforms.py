"""Closed-form product sides and proof-internal objects.

Every right-hand side is a FactoredForm: a rational scalar times a list
of (polynomial base, exponent) pairs.  Fractions of the shape
(n + sum_j (x_j - eps_j)/lambda_j) are stored lambda-cleared as the
multilinear factor

    T = n*prod_j l_j + sum_t x_t*prod_{j!=t} l_j - sum_t eps_t*prod_{j!=t} l_j

which is exact because the number of eps-factors in each product formula
equals the power of prod_j l_j in front of it (an invariant the verifier
checks).  Exponents and multiplicities always use the set-counting
binomial convention (zero outside 0 <= r <= m).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .compositions import (
    Composition,
    Domain,
    ParameterError,
    count_compositions,
    enumerate_compositions,
)
from .polynomials import (
    Coeff,
    Polynomial,
    counting_binomial,
    l_var,
    poly_binomial,
    poly_to_string,
    x_var,
)


class TheoremId(Enum):
    THM1 = "THM1"
    THM3 = "THM3"
    THM4 = "THM4"
    THM4B = "THM4B"
    COR2 = "COR2"
    COR2B = "COR2B"
    COR5A = "COR5A"
    COR1A = "COR1A"
    DP = "DP"
    DP2 = "DP2"
    COR1B = "COR1B"
    CONJ1 = "CONJ1"
    CONJ2 = "CONJ2"


POSITIVE_DOMAIN_IDS = frozenset({TheoremId.DP, TheoremId.DP2, TheoremId.COR1B})


@dataclass(frozen=True)
class FactoredForm:
    """scalar * prod(base ** exponent), kept factored until needed."""

    k: int
    scalar: Fraction
    factors: tuple[tuple[Polynomial, int], ...]

    @classmethod
    def make(cls, k: int, scalar: Coeff,
             factors: Sequence[tuple[Polynomial, int]]) -> "FactoredForm":
        kept = []
        for base, exp in factors:
            if exp < 0:
                raise ValueError("factor exponents must be non-negative")
            if exp == 0 or base == 1:
                continue
            kept.append((base, exp))
        return cls(k=k, scalar=Fraction(scalar), factors=tuple(kept))

    def expand(self) -> Polynomial:
        result = Polynomial.constant(2 * self.k, self.scalar)
        for base, exp in self.factors:
            result = result * base ** exp
        return result

    def evaluate(self, values: Sequence[Coeff | None]) -> Fraction:
        result = Fraction(self.scalar)
        for base, exp in self.factors:
            result *= Fraction(base.evaluate(values)) ** exp
        return result

    def to_json_dict(self) -> dict:
        return {
            "scalar": str(self.scalar),
            "factors": [
                {"base": poly_to_string(base, self.k), "exp": exp}
                for base, exp in self.factors
            ],
        }


# -- shared building blocks -------------------------------------------------

def _lambda_product(k: int, skip: int | None = None) -> Polynomial:
    result = Polynomial.constant(2 * k, 1)
    for j in range(1, k + 1):
        if j != skip:
            result = result * l_var(k, j)
    return result


def _x_sum(k: int) -> Polynomial:
    total = Polynomial.zero(2 * k)
    for t in range(1, k + 1):
        total = total + x_var(k, t)
    return total


def _cleared_factor(n: int, k: int, eps: Sequence[int],
                    x_shift: int, eps_sign: int) -> Polynomial:
    """lambda-cleared (n + sum_t ((x_t + x_shift) + eps_sign*eps_t)/l_t)."""
    result = _lambda_product(k) * n
    for t in range(1, k + 1):
        cofactor = _lambda_product(k, skip=t)
        result = result + (x_var(k, t) + x_shift) * cofactor
        e = eps[t - 1]
        if e:
            result = result + cofactor * (eps_sign * e)
    return result


def linear_factor_T(n: int, k: int, eps: Composition | Sequence[int]) -> Polynomial:
    """The multilinear factor that divides the BINOMIAL determinant."""
    eps = tuple(eps)
    if len(eps) != k or any(e < 0 for e in eps):
        raise ParameterError(f"eps must have {k} non-negative parts, got {eps}")
    return _cleared_factor(n, k, eps, x_shift=0, eps_sign=-1)


def _eps_below(limit: int, k: int) -> list[Composition]:
    """All compositions with fewer than `limit` total, smallest totals first."""
    out: list[Composition] = []
    for i in range(limit):
        out.extend(enumerate_compositions(i, k, Domain.ALL))
    return out


def _denominator_power(n: int, k: int) -> int:
    return math.prod(i ** counting_binomial(n + k - i - 1, k - 1) for i in range(1, n + 1))


def _thm1_tail(n: int, k: int) -> int:
    return math.prod(
        i ** ((n - i + 1) * counting_binomial(n + k - i - 1, k - 2))
        for i in range(1, n))


def _positive_prefactor_exponent(n: int, k: int, j: int) -> int:
    # Multiplicity of (x_i + j*l_i) in the positive-domain formulas: the
    # number of compositions of n-k-j+1 into k-1 parts.  For k >= 2 this
    # is the binomial C(n-j-1, k-2); for k = 1 it is 1 exactly when j = n.
    if k >= 2:
        return counting_binomial(n - j - 1, k - 2)
    return 1 if j == n else 0


def _check_rhs_params(theorem: TheoremId, n: int, k: int) -> None:
    if n < 1 or k < 1:
        raise ParameterError(f"n and k must be positive, got n={n}, k={k}")
    if theorem in POSITIVE_DOMAIN_IDS and n < k:
        raise ParameterError(f"{theorem.value} requires n >= k, got n={n}, k={k}")


# -- the thirteen right-hand sides ------------------------------------------

def _rhs_thm4(n: int, k: int) -> FactoredForm:
    factors = [(_cleared_factor(n, k, eps.parts, 0, -1), 1) for eps in _eps_below(n, k)]
    return FactoredForm.make(k, Fraction(1, _denominator_power(n, k)), factors)


def _rhs_thm4b(n: int, k: int) -> FactoredForm:
    factors = [(_cleared_factor(n, k, eps.parts, 1, +1), 1) for eps in _eps_below(n, k)]
    return FactoredForm.make(k, Fraction(1, _denominator_power(n, k)), factors)


def _rhs_cor2(n: int, k: int) -> FactoredForm:
    lam = l_var(k, 1)
    factors = [(lam, (k - 1) * counting_binomial(n + k - 1, k))]
    xs = _x_sum(k)
    for i in range(1, n + 1):
        base = xs + lam * n - n + i
        factors.append((base, counting_binomial(n + k - i - 1, k - 1)))
    return FactoredForm.make(k, Fraction(1, _denominator_power(n, k)), factors)


def _rhs_cor2b(n: int, k: int) -> FactoredForm:
    lam = l_var(k, 1)
    factors = [(lam, (k - 1) * counting_binomial(n + k - 1, k))]
    xs = _x_sum(k)
    for i in range(1, n + 1):
        base = xs + lam * n + n + k - i
        factors.append((base, counting_binomial(n + k - i - 1, k - 1)))
    return FactoredForm.make(k, Fraction(1, _denominator_power(n, k)), factors)


def _power_tail(n: int, k: int) -> int:
    return math.prod(
        i ** ((k - 1) * counting_binomial(n + k - i - 1, k - 1))
        for i in range(1, n + 1))


def _rhs_cor5a(n: int, k: int) -> FactoredForm:
    t0 = _cleared_factor(n, k, (0,) * k, 0, -1)
    return FactoredForm.make(
        k, _power_tail(n, k), [(t0, counting_binomial(n + k - 1, k))])


def _rhs_cor1a(n: int, k: int) -> FactoredForm:
    lam = l_var(k, 1)
    power = counting_binomial(n + k - 1, k)
    factors = [(lam, (k - 1) * power), (_x_sum(k) + lam * n, power)]
    return FactoredForm.make(k, _power_tail(n, k), factors)


def _rhs_thm3(n: int, k: int) -> FactoredForm:
    power = counting_binomial(n + k - 1, k)
    return FactoredForm.make(k, _power_tail(n, k), [(_x_sum(k) + n, power)])


def _rhs_thm1(n: int, k: int) -> FactoredForm:
    base = Polynomial.constant(2 * k, n)
    exp = counting_binomial(n + k - 1, k) + k - 1
    return FactoredForm.make(k, _thm1_tail(n, k), [(base, exp)])


def _rhs_conj1(n: int, k: int) -> FactoredForm:
    base = x_var(k, 1) * k + n
    scalar = n ** (k - 1) * _thm1_tail(n, k)
    return FactoredForm.make(k, scalar, [(base, counting_binomial(n + k - 1, k))])


def _rhs_conj2(n: int, k: int) -> FactoredForm:
    x1 = x_var(k, 1)
    factors = [
        (x1 * k + n + k + i, counting_binomial(k + i - 1, k - 1))
        for i in range(n)
    ]
    return FactoredForm.make(k, Fraction(1, _denominator_power(n, k)), factors)


def _positive_scalar_denominator(n: int, k: int) -> int:
    pre = math.prod(
        j ** (k * _positive_prefactor_exponent(n, k, j))
        for j in range(1, n - k + 2))
    tail = math.prod(
        i ** counting_binomial(n - i - 1, k - 1) for i in range(1, n + 1))
    return pre * tail


def _positive_prefactors(n: int, k: int, shift: int) -> list[tuple[Polynomial, int]]:
    factors = []
    for i in range(1, k + 1):
        for j in range(1, n - k + 2):
            exp = _positive_prefactor_exponent(n, k, j)
            if exp:
                factors.append((x_var(k, i) + l_var(k, i) * j + shift, exp))
    return factors


def _rhs_dp(n: int, k: int) -> FactoredForm:
    factors = _positive_prefactors(n, k, 0)
    factors += [(_cleared_factor(n, k, eps.parts, -1, -1), 1)
                for eps in _eps_below(n - k, k)]
    return FactoredForm.make(k, Fraction(1, _positive_scalar_denominator(n, k)), factors)


def _rhs_dp2(n: int, k: int) -> FactoredForm:
    factors = _positive_prefactors(n, k, 1)
    factors += [(_cleared_factor(n, k, eps.parts, 2, +1), 1)
                for eps in _eps_below(n - k, k)]
    return FactoredForm.make(k, Fraction(1, _positive_scalar_denominator(n, k)), factors)


def _rhs_cor1b(n: int, k: int) -> FactoredForm:
    factors = _positive_prefactors(n, k, 0)
    t0 = _cleared_factor(n, k, (0,) * k, 0, -1)
    factors.append((t0, counting_binomial(n - 1, k)))
    scalar = math.prod(
        i ** ((k - 1) * counting_binomial(n - i - 1, k - 1))
        for i in range(1, n - k + 1))
    return FactoredForm.make(k, scalar, factors)


_RHS_BUILDERS = {
    TheoremId.THM1: _rhs_thm1,
    TheoremId.THM3: _rhs_thm3,
    TheoremId.THM4: _rhs_thm4,
    TheoremId.THM4B: _rhs_thm4b,
    TheoremId.COR2: _rhs_cor2,
    TheoremId.COR2B: _rhs_cor2b,
    TheoremId.COR5A: _rhs_cor5a,
    TheoremId.COR1A: _rhs_cor1a,
    TheoremId.DP: _rhs_dp,
    TheoremId.DP2: _rhs_dp2,
    TheoremId.COR1B: _rhs_cor1b,
    TheoremId.CONJ1: _rhs_conj1,
    TheoremId.CONJ2: _rhs_conj2,
}


def rhs(theorem: TheoremId, n: int, k: int) -> FactoredForm:
    """Factored right-hand side of the determinant identity."""
    _check_rhs_params(theorem, n, k)
    return _RHS_BUILDERS[theorem](n, k)


# -- kernel objects ----------------------------------------------------------

def _check_kernel_params(n: int, k: int, i: int, eps: Sequence[int]) -> None:
    if not 1 <= i <= n:
        raise ParameterError(f"need 1 <= i <= n, got i={i}, n={n}")
    if len(eps) != k or any(e < 0 for e in eps) or sum(eps) != n - i:
        raise ParameterError(f"eps={tuple(eps)} is not a composition of {n - i} into {k} parts")


def kernel_vector(n: int, k: int, i: int,
                  eps: Composition | Sequence[int]) -> dict[Composition, Polynomial]:
    """Null vector of the BINOMIAL matrix at T = 0, scaled by prod_j l_j.

    Supported on {delta + eps : delta in C(i,k)}; the coefficient of the
    unit vector at delta + eps is (sum_t delta_t * prod_{j!=t} l_j) times
    the integer multinomial C(delta+eps choose delta).
    """
    eps = tuple(eps)
    _check_kernel_params(n, k, i, eps)
    vector: dict[Composition, Polynomial] = {}
    for delta in enumerate_compositions(i, k, Domain.ALL):
        weight = Polynomial.zero(2 * k)
        for t in range(1, k + 1):
            if delta[t - 1]:
                weight = weight + _lambda_product(k, skip=t) * delta[t - 1]
        multi = math.prod(math.comb(d + e, d) for d, e in zip(delta, eps))
        coeff = weight * multi
        if coeff:
            vector[Composition(tuple(d + e for d, e in zip(delta, eps)))] = coeff
    return vector


def kernel_action_expected(n: int, k: int, i: int, eps: Composition | Sequence[int],
                           alpha: Composition | Sequence[int]) -> Polynomial:
    """Closed form of row alpha of M(n,k) times the scaled kernel vector."""
    eps = tuple(eps)
    _check_kernel_params(n, k, i, eps)
    alpha = tuple(alpha)
    if len(alpha) != k or any(a < 0 for a in alpha) or sum(alpha) != n:
        raise ParameterError(f"alpha={alpha} is not a composition of {n} into {k} parts")
    front = Polynomial.constant(2 * k, 1)
    shifted_sum = Polynomial.zero(2 * k)
    for t in range(1, k + 1):
        entry = x_var(k, t) + l_var(k, t) * alpha[t - 1]
        front = front * poly_binomial(entry, eps[t - 1])
        shifted_sum = shifted_sum + entry
    middle = linear_factor_T(n, k, eps)
    back = poly_binomial(shifted_sum - (n - i) - 1, i - 1)
    return front * middle * back


# -- lemma-level identities ---------------------------------------------------

def chu_vandermonde_lhs(n: int, k: int) -> Polynomial:
    """Sum over C(n,k) of prod_t C(x_t, delta_t)."""
    if n < 0 or k < 1:
        raise ParameterError(f"need n >= 0 and k >= 1, got n={n}, k={k}")
    total = Polynomial.zero(2 * k)
    for delta in enumerate_compositions(n, k, Domain.ALL):
        term = Polynomial.constant(2 * k, 1)
        for t in range(1, k + 1):
            term = term * poly_binomial(x_var(k, t), delta[t - 1])
        total = total + term
    return total


def chu_vandermonde_rhs(n: int, k: int) -> Polynomial:
    """C(x_1 + ... + x_k, n)."""
    if n < 0 or k < 1:
        raise ParameterError(f"need n >= 0 and k >= 1, got n={n}, k={k}")
    return poly_binomial(_x_sum(k), n)


def factorial_product(n: int, k: int) -> int:
    """Direct product of beta_1! ... beta_k! over all compositions of n."""
    if n < 0 or k < 1:
        raise ParameterError(f"need n >= 0 and k >= 1, got n={n}, k={k}")
    return math.prod(
        math.prod(math.factorial(b) for b in beta)
        for beta in enumerate_compositions(n, k, Domain.ALL))


def factorial_product_closed(n: int, k: int) -> int:
    """Closed form prod_i i^(k * C(n+k-i-1, k-1)) of the same product."""
    if n < 0 or k < 1:
        raise ParameterError(f"need n >= 0 and k >= 1, got n={n}, k={k}")
    return math.prod(
        i ** (k * counting_binomial(n + k - i - 1, k - 1))
        for i in range(1, n + 1))


def epsilon_factor_count(n: int, k: int) -> int:
    """Number of eps with |eps| < n, by summed closed-form counts."""
    return sum(count_compositions(i, k, Domain.ALL) for i in range(n))
