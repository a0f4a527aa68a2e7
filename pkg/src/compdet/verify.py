"""Identity verification: determinant vs closed form, kernel membership,
lemma identities, and specialization chains.

All comparisons are exact (polynomial equality or rational equality);
there are no tolerances anywhere.  Numeric mode is randomized identity
testing at seeded rational points, so a PASS is a Schwartz-Zippel-style
probabilistic certificate while any FAIL is a hard counterexample.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .compositions import (
    Composition,
    Domain,
    ParameterError,
    count_compositions,
    enumerate_compositions,
)
from .closedforms import (
    FactoredForm,
    TheoremId,
    POSITIVE_DOMAIN_IDS,
    chu_vandermonde_lhs,
    chu_vandermonde_rhs,
    epsilon_factor_count,
    factorial_product,
    factorial_product_closed,
    kernel_action_expected,
    kernel_vector,
    linear_factor_T,
    rhs,
)
from .determinant import det_bareiss, det_numeric
from .matrices import EntryFamily, build_matrix
from .polynomials import (
    Coeff,
    ExactDivisionError,
    Polynomial,
    counting_binomial,
    poly_to_string,
    variable_names,
)

DEFAULT_TRIALS = 20
DEFAULT_SEED = 0
DEFAULT_SYMBOLIC_CAP = 15

# Expanding a THM4 right-hand side is exponential in the factor count;
# expansion-based degree checks are skipped above this many factors.
_DEGREE_EXPANSION_FACTOR_LIMIT = 20
_EPS_ENUMERATION_LIMIT = 20000


class SymbolicCapExceeded(ValueError):
    """Matrix order above the symbolic cap; use numeric mode instead."""


@dataclass(frozen=True)
class TheoremSetup:
    family: EntryFamily
    domain: Domain
    scalar_lambda: bool = False  # l_j -> l_1 for all j
    unit_lambda: bool = False    # l_j -> 1
    scalar_x: bool = False       # x_j -> x_1
    zero_x: bool = False         # x_j -> 0


THEOREM_SETUPS: dict[TheoremId, TheoremSetup] = {
    TheoremId.THM4: TheoremSetup(EntryFamily.BINOMIAL, Domain.ALL),
    TheoremId.THM4B: TheoremSetup(EntryFamily.BINOMIAL_BETA, Domain.ALL),
    TheoremId.COR2: TheoremSetup(EntryFamily.BINOMIAL, Domain.ALL, scalar_lambda=True),
    TheoremId.COR2B: TheoremSetup(EntryFamily.BINOMIAL_BETA, Domain.ALL, scalar_lambda=True),
    TheoremId.COR5A: TheoremSetup(EntryFamily.POWER, Domain.ALL),
    TheoremId.COR1A: TheoremSetup(EntryFamily.POWER, Domain.ALL, scalar_lambda=True),
    TheoremId.THM3: TheoremSetup(EntryFamily.POWER, Domain.ALL, unit_lambda=True),
    TheoremId.THM1: TheoremSetup(EntryFamily.POWER, Domain.ALL, unit_lambda=True, zero_x=True),
    TheoremId.CONJ1: TheoremSetup(EntryFamily.POWER, Domain.ALL, unit_lambda=True, scalar_x=True),
    TheoremId.CONJ2: TheoremSetup(EntryFamily.BINOMIAL_BETA, Domain.ALL,
                                  unit_lambda=True, scalar_x=True),
    TheoremId.DP: TheoremSetup(EntryFamily.BINOMIAL, Domain.POSITIVE),
    TheoremId.DP2: TheoremSetup(EntryFamily.BINOMIAL_BETA, Domain.POSITIVE),
    TheoremId.COR1B: TheoremSetup(EntryFamily.POWER, Domain.POSITIVE),
}


def substitution_map(theorem: TheoremId, k: int) -> dict[int, Polynomial | Coeff]:
    """Variable substitutions that turn the general matrix into the id's matrix."""
    setup = THEOREM_SETUPS[theorem]
    mapping: dict[int, Polynomial | Coeff] = {}
    nvars = 2 * k
    for j in range(1, k + 1):
        xi = j - 1
        li = k + j - 1
        if setup.zero_x:
            mapping[xi] = 0
        elif setup.scalar_x and j > 1:
            mapping[xi] = Polynomial.variable(nvars, 0)
        if setup.unit_lambda:
            mapping[li] = 1
        elif setup.scalar_lambda and j > 1:
            mapping[li] = Polynomial.variable(nvars, k)
    return mapping


@dataclass
class VerificationReport:
    theorem: str
    n: int
    k: int
    mode: str  # SYMBOLIC | NUMERIC | KERNEL | SPECIALIZATION
    status: str  # PASS | FAIL
    seed: int | None = None
    trials: int | None = None
    elapsed_ms: float = 0.0
    witness: dict | None = None

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    def to_json_dict(self, include_timing: bool = True) -> dict:
        out: dict = {
            "theorem": self.theorem,
            "n": self.n,
            "k": self.k,
            "mode": self.mode,
            "status": self.status,
            "trials": self.trials,
            "seed": self.seed,
            "witness": self.witness,
        }
        if include_timing:
            out["elapsed_ms"] = self.elapsed_ms
        return out


def _leading_term_witness(diff: Polynomial, k: int) -> dict:
    mon, coeff = diff.leading_term()
    single = Polynomial(diff.nvars, {mon: coeff})
    return {"difference_leading_term": poly_to_string(single, k)}


def _tampered_form(form: FactoredForm) -> FactoredForm:
    """Negative control: last factor's exponent bumped by one."""
    if not form.factors:
        raise ValueError("cannot tamper with a factor-free form")
    base, exp = form.factors[-1]
    return FactoredForm(k=form.k, scalar=form.scalar,
                        factors=form.factors[:-1] + ((base, exp + 1),))


def verify_symbolic(theorem: TheoremId, n: int, k: int,
                    symbolic_cap: int = DEFAULT_SYMBOLIC_CAP,
                    tamper: bool = False) -> VerificationReport:
    """Exact polynomial equality of determinant and closed form."""
    setup = THEOREM_SETUPS[theorem]
    order = count_compositions(n, k, setup.domain)
    if order > symbolic_cap:
        raise SymbolicCapExceeded(
            f"order {order} exceeds symbolic cap {symbolic_cap}; use numeric mode")
    start = time.perf_counter()
    form = rhs(theorem, n, k)
    if tamper:
        form = _tampered_form(form)
    matrix = build_matrix(setup.family, setup.domain, n, k)
    mapping = substitution_map(theorem, k)
    if mapping:
        matrix = matrix.substitute(mapping)
    det = det_bareiss(matrix)
    diff = det - form.expand()
    elapsed = (time.perf_counter() - start) * 1000.0
    if diff.is_zero:
        return VerificationReport(theorem.value, n, k, "SYMBOLIC", "PASS",
                                  elapsed_ms=elapsed)
    return VerificationReport(theorem.value, n, k, "SYMBOLIC", "FAIL",
                              elapsed_ms=elapsed,
                              witness=_leading_term_witness(diff, k))


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 9))


def _draw_assignment(rng: random.Random, theorem: TheoremId, k: int) -> list[Fraction]:
    """Seeded rational point respecting the id's substitution, lambdas nonzero."""
    setup = THEOREM_SETUPS[theorem]
    while True:
        xs = [_random_rational(rng) for _ in range(k)]
        ls = [_random_rational(rng) for _ in range(k)]
        if setup.zero_x:
            xs = [Fraction(0)] * k
        elif setup.scalar_x:
            xs = [xs[0]] * k
        if setup.unit_lambda:
            ls = [Fraction(1)] * k
        elif setup.scalar_lambda:
            ls = [ls[0]] * k
        if all(ls):
            return xs + ls


def verify_numeric(theorem: TheoremId, n: int, k: int,
                   trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED,
                   tamper: bool = False) -> VerificationReport:
    """Randomized identity testing with exact rational comparison."""
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    setup = THEOREM_SETUPS[theorem]
    start = time.perf_counter()
    form = rhs(theorem, n, k)
    if tamper:
        form = _tampered_form(form)
    rng = random.Random(seed)
    for _ in range(trials):
        values = _draw_assignment(rng, theorem, k)
        lhs = det_numeric(setup.family, setup.domain, n, k, values)
        rhs_value = form.evaluate(values)
        if lhs != rhs_value:
            elapsed = (time.perf_counter() - start) * 1000.0
            names = variable_names(k)
            witness = {
                "assignment": {name: str(v) for name, v in zip(names, values)},
                "lhs": str(lhs),
                "rhs": str(rhs_value),
            }
            return VerificationReport(theorem.value, n, k, "NUMERIC", "FAIL",
                                      seed=seed, trials=trials,
                                      elapsed_ms=elapsed, witness=witness)
    elapsed = (time.perf_counter() - start) * 1000.0
    return VerificationReport(theorem.value, n, k, "NUMERIC", "PASS",
                              seed=seed, trials=trials, elapsed_ms=elapsed)


def verify_kernel(n: int, k: int, i: int, eps: Composition | Sequence[int],
                  tamper: bool = False) -> VerificationReport:
    """Row-by-row check that the explicit vector is killed at T = 0.

    Confirms both that M(n,k) times the scaled kernel vector matches the
    closed form of the proof, and that the matched form is divisible by
    the linear factor T, so setting T = 0 annihilates the product.
    """
    eps = tuple(eps)
    start = time.perf_counter()
    matrix = build_matrix(EntryFamily.BINOMIAL, Domain.ALL, n, k)
    vector = kernel_vector(n, k, i, eps)
    col_of = {comp: j for j, comp in enumerate(matrix.col_index)}
    t_factor = linear_factor_T(n, k, eps)
    tag = f"KERNEL[i={i},eps={Composition(eps)}]"
    for r, alpha in enumerate(matrix.row_index):
        action = Polynomial.zero(2 * k)
        for comp, coeff in vector.items():
            action = action + matrix.entries[r][col_of[comp]] * coeff
        expected = kernel_action_expected(n, k, i, eps, alpha)
        if tamper:
            expected = expected * t_factor  # T-exponent off by one
        diff = action - expected
        if not diff.is_zero:
            elapsed = (time.perf_counter() - start) * 1000.0
            witness = _leading_term_witness(diff, k)
            witness["row"] = str(alpha)
            return VerificationReport(tag, n, k, "KERNEL", "FAIL",
                                      elapsed_ms=elapsed, witness=witness)
        if not action.is_zero:
            try:
                action.exact_div(t_factor)
            except ExactDivisionError:
                elapsed = (time.perf_counter() - start) * 1000.0
                return VerificationReport(tag, n, k, "KERNEL", "FAIL",
                                          elapsed_ms=elapsed,
                                          witness={"row": str(alpha),
                                                   "reason": "action not divisible by T"})
    elapsed = (time.perf_counter() - start) * 1000.0
    return VerificationReport(tag, n, k, "KERNEL", "PASS", elapsed_ms=elapsed)


# -- lemma suite --------------------------------------------------------------

def _lemma_report(tag: str, n: int, k: int, ok: bool, start: float,
                  witness: dict | None = None) -> VerificationReport:
    elapsed = (time.perf_counter() - start) * 1000.0
    return VerificationReport(tag, n, k, "SYMBOLIC", "PASS" if ok else "FAIL",
                              elapsed_ms=elapsed, witness=None if ok else witness)


def _check_chu_vandermonde(n: int, k: int) -> VerificationReport:
    start = time.perf_counter()
    diff = chu_vandermonde_lhs(n, k) - chu_vandermonde_rhs(n, k)
    witness = None if diff.is_zero else _leading_term_witness(diff, k)
    return _lemma_report("CHU_VANDERMONDE", n, k, diff.is_zero, start, witness)


def _check_factorial_product(n: int, k: int) -> VerificationReport:
    start = time.perf_counter()
    direct = factorial_product(n, k)
    closed = factorial_product_closed(n, k)
    return _lemma_report("FACTORIAL_PRODUCT", n, k, direct == closed, start,
                         {"direct": str(direct), "closed": str(closed)})


def _check_eps_count(n: int, k: int) -> VerificationReport:
    start = time.perf_counter()
    expected = counting_binomial(n + k - 1, k)
    if expected <= _EPS_ENUMERATION_LIMIT:
        actual = sum(
            len(enumerate_compositions(i, k, Domain.ALL)) for i in range(n))
    else:
        actual = epsilon_factor_count(n, k)
    return _lemma_report("EPS_COUNT", n, k, actual == expected, start,
                         {"actual": str(actual), "expected": str(expected)})


def _check_degree_identity(n: int, k: int) -> VerificationReport:
    start = time.perf_counter()
    target = k * counting_binomial(n + k - 1, k)
    ok = target == n * count_compositions(n, k, Domain.ALL)
    if ok and counting_binomial(n + k - 1, k) <= _DEGREE_EXPANSION_FACTOR_LIMIT:
        ok = rhs(TheoremId.THM4, n, k).expand().total_degree() == target
    return _lemma_report("DEGREE", n, k, ok, start, {"expected_degree": str(target)})


def _check_exponent_link(n: int, k: int) -> VerificationReport:
    start = time.perf_counter()
    ok = all(
        (k - 1) * counting_binomial(n + k - i - 1, k - 1)
        == (n - i + 1) * counting_binomial(n + k - i - 1, k - 2)
        for i in range(1, n))
    ok = ok and (k - 1) * counting_binomial(k - 1, k - 1) == k - 1
    return _lemma_report("EXPONENT_LINK", n, k, ok, start, {})


def _check_parity(n: int, k: int) -> VerificationReport:
    start = time.perf_counter()
    total = n * count_compositions(n, k, Domain.ALL) + k * counting_binomial(n + k - 1, k)
    return _lemma_report("PARITY", n, k, total % 2 == 0, start, {"sum": str(total)})


def verify_lemmas(n_max: int, k_max: int) -> list[VerificationReport]:
    """All proof-internal identities over 0-or-1 <= n <= n_max, 1 <= k <= k_max."""
    if n_max < 0 or k_max < 1:
        raise ParameterError("bounds must satisfy n_max >= 0 and k_max >= 1")
    reports: list[VerificationReport] = []
    for k in range(1, k_max + 1):
        for n in range(0, n_max + 1):
            reports.append(_check_chu_vandermonde(n, k))
            reports.append(_check_factorial_product(n, k))
            if n >= 1:
                reports.append(_check_eps_count(n, k))
                reports.append(_check_degree_identity(n, k))
                reports.append(_check_exponent_link(n, k))
                reports.append(_check_parity(n, k))
    return reports


# -- specialization chain ------------------------------------------------------

def _specialization_cases(k: int) -> list[tuple[str, TheoremId, dict, TheoremId]]:
    nvars = 2 * k
    x1 = Polynomial.variable(nvars, 0)
    l1 = Polynomial.variable(nvars, k)
    lam_scalar = {k + j - 1: l1 for j in range(2, k + 1)}
    lam_one = {k + j - 1: 1 for j in range(1, k + 1)}
    x_scalar = {j - 1: x1 for j in range(2, k + 1)}
    return [
        ("THM4|scalar-lambda=COR2", TheoremId.THM4, lam_scalar, TheoremId.COR2),
        ("THM4B|scalar-lambda=COR2B", TheoremId.THM4B, lam_scalar, TheoremId.COR2B),
        ("COR2B|lambda=1,scalar-x=CONJ2", TheoremId.COR2B, {**lam_one, **x_scalar},
         TheoremId.CONJ2),
        ("COR5A|scalar-lambda=COR1A", TheoremId.COR5A, lam_scalar, TheoremId.COR1A),
        ("COR1A|lambda=1=THM3", TheoremId.COR1A, lam_one, TheoremId.THM3),
        ("THM3|scalar-x=CONJ1", TheoremId.THM3, x_scalar, TheoremId.CONJ1),
    ]


def verify_specializations(n: int, k: int, tamper: bool = False) -> list[VerificationReport]:
    """RHS-only equalities relating each general form to its specializations."""
    reports = []
    for tag, general_id, mapping, special_id in _specialization_cases(k):
        start = time.perf_counter()
        general = rhs(general_id, n, k).expand().substitute(mapping)
        special_form = rhs(special_id, n, k)
        if tamper:
            special_form = _tampered_form(special_form)
        diff = general - special_form.expand()
        elapsed = (time.perf_counter() - start) * 1000.0
        if diff.is_zero:
            reports.append(VerificationReport(tag, n, k, "SPECIALIZATION", "PASS",
                                              elapsed_ms=elapsed))
        else:
            reports.append(VerificationReport(tag, n, k, "SPECIALIZATION", "FAIL",
                                              elapsed_ms=elapsed,
                                              witness=_leading_term_witness(diff, k)))
    return reports


# -- full sweep ----------------------------------------------------------------

def _symbolic_grid(theorem: TheoremId, n_max: int, k_max: int,
                   symbolic_cap: int) -> list[tuple[int, int]]:
    setup = THEOREM_SETUPS[theorem]
    pairs = []
    for k in range(1, k_max + 1):
        for n in range(1, n_max + 1):
            if theorem in POSITIVE_DOMAIN_IDS and n < k:
                continue
            if count_compositions(n, k, setup.domain) <= symbolic_cap:
                pairs.append((n, k))
    return pairs


def run_suite(n_max: int = 3, k_max: int = 3,
              trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED,
              symbolic_cap: int = DEFAULT_SYMBOLIC_CAP) -> list[VerificationReport]:
    """Deterministic sweep exercising every theorem id and every mode."""
    reports: list[VerificationReport] = []
    for theorem in TheoremId:
        for n, k in _symbolic_grid(theorem, n_max, k_max, min(symbolic_cap, 10)):
            reports.append(verify_symbolic(theorem, n, k, symbolic_cap=symbolic_cap))
    for theorem in TheoremId:
        setup = THEOREM_SETUPS[theorem]
        n = max(2, k_max) if theorem in POSITIVE_DOMAIN_IDS else 2
        k = min(2, k_max)
        if theorem in POSITIVE_DOMAIN_IDS and n < k:
            n = k
        reports.append(verify_numeric(theorem, n, k, trials=trials, seed=seed))
    for k in range(1, min(k_max, 3) + 1):
        for n in range(1, min(n_max, 3) + 1):
            for i in range(1, n + 1):
                for eps in enumerate_compositions(n - i, k, Domain.ALL):
                    reports.append(verify_kernel(n, k, i, eps))
    reports.extend(verify_lemmas(n_max, k_max))
    if n_max >= 2 and k_max >= 2:
        reports.extend(verify_specializations(2, 2))
    # negative controls: tampered variants must FAIL
    controls = [
        verify_symbolic(TheoremId.THM4, 2, 2, tamper=True),
        verify_numeric(TheoremId.THM4, 2, 2, trials=max(1, trials), seed=seed, tamper=True),
        verify_kernel(2, 2, 1, (1, 0), tamper=True),
    ]
    controls.extend(verify_specializations(2, 2, tamper=True))
    for report in controls:
        flipped = "PASS" if report.status == "FAIL" else "FAIL"
        reports.append(VerificationReport(
            f"NEGATIVE_CONTROL[{report.theorem}]", report.n, report.k,
            report.mode, flipped, seed=report.seed, trials=report.trials,
            elapsed_ms=report.elapsed_ms, witness=report.witness))
    return reports
