"""Sparse multivariate polynomials with exact rational coefficients.

The working ring for k-part compositions has 2k variables: x1..xk at
indices 0..k-1 and l1..lk (the lambda weights) at indices k..2k-1.
Coefficients are Python ints where possible and Fractions otherwise;
there is no floating point anywhere in this package.

Monomials are packed into single integers, 16 bits per exponent with the
total degree in the top field, so that integer comparison of keys is
exactly graded-lexicographic comparison and monomial multiplication is
integer addition.  Exponents must stay below 2^16, far beyond anything
the determinant sizes here produce.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping, Sequence, Union

Coeff = Union[int, Fraction]
Monomial = tuple[int, ...]

try:  # compiled inner loops; pure-Python fallbacks below are equivalent
    from ._accel import div_update as _div_update
    from ._accel import exact_div_i64 as _exact_div_i64
    from ._accel import fused_i64 as _fused_i64
    from ._accel import fused_terms as _fused_terms
    from ._accel import mul_i64 as _mul_i64
    from ._accel import mul_terms as _mul_terms
except ImportError:  # pragma: no cover - exercised only without the extension
    _div_update = _fused_terms = _mul_terms = None
    _exact_div_i64 = _fused_i64 = _mul_i64 = None

def _bits_for(nvars: int) -> int:
    """Exponent field width for the packed monomial keys of an nvars-ring.

    Chosen so that whole keys fit in a signed 64-bit word whenever the
    variable count allows (enabling the compiled kernels), with a floor
    of 6 bits per exponent; very wide rings fall back to 16-bit fields
    and pure-Python arithmetic.
    """
    b = 63 // (nvars + 1)
    return min(b, 16) if b >= 6 else 16


def _ring_info(nvars: int) -> tuple[int, int, bool]:
    """(field bits, max representable total degree, keys fit in 63 bits)."""
    info = _RING_INFO.get(nvars)
    if info is None:
        bits = _bits_for(nvars)
        info = (bits, (1 << bits) - 1, bits * (nvars + 1) <= 63)
        _RING_INFO[nvars] = info
    return info


_RING_INFO: dict[int, tuple[int, int, bool]] = {}


def _check_product_degree(a: "Polynomial", b: "Polynomial", cap: int) -> None:
    da, db = a.total_degree(), b.total_degree()
    if da >= 0 and db >= 0 and da + db > cap:
        raise ValueError(
            f"product degree {da + db} exceeds the packed capacity {cap} "
            f"for {a.nvars} variables")


class ExactDivisionError(ArithmeticError):
    """Polynomial division was expected to be exact but is not.

    Raised only from code paths (Bareiss elimination, factored-form
    clearing) where exactness is guaranteed by construction, so this
    always indicates an internal bug rather than bad user input.
    """


def _norm_coeff(c: Coeff) -> Coeff:
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return c.numerator
        return c
    if isinstance(c, int):
        return c
    raise TypeError(f"coefficients must be int or Fraction, got {type(c).__name__}")


def _strip_zeros(terms: dict[int, Coeff]) -> dict[int, Coeff]:
    """Drop zero entries and demote integral Fractions after a hot loop."""
    out: dict[int, Coeff] = {}
    for key, c in terms.items():
        if c:
            out[key] = c.numerator if isinstance(c, Fraction) and c.denominator == 1 else c
    return out


def _encode(mon: Sequence[int], nvars: int) -> int:
    bits = _bits_for(nvars)
    key = sum(mon)
    if key >= 1 << bits:
        raise ValueError("total degree too large for packed representation")
    for e in mon:
        key = (key << bits) | e
    return key


def _decode(key: int, nvars: int) -> Monomial:
    bits = _bits_for(nvars)
    mask = (1 << bits) - 1
    out = [0] * nvars
    for i in range(nvars - 1, -1, -1):
        out[i] = key & mask
        key >>= bits
    return tuple(out)


def _grlex_key(m: Monomial) -> tuple[int, Monomial]:
    return (sum(m), m)


class Polynomial:
    """Immutable sparse polynomial: map from exponent tuple to coefficient."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, Coeff] | None = None):
        packed: dict[int, Coeff] = {}
        if terms:
            for mon, c in terms.items():
                c = _norm_coeff(c)
                if c == 0:
                    continue
                if len(mon) != nvars or any(e < 0 for e in mon):
                    raise ValueError(f"bad monomial {mon} for {nvars} variables")
                packed[_encode(mon, nvars)] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", packed)

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def _raw(cls, nvars: int, packed: dict[int, Coeff]) -> "Polynomial":
        p = object.__new__(cls)
        object.__setattr__(p, "nvars", nvars)
        object.__setattr__(p, "_terms", packed)
        return p

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c: Coeff) -> "Polynomial":
        c = _norm_coeff(c)
        if c == 0:
            return cls.zero(nvars)
        return cls._raw(nvars, {0: c})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for {nvars} variables")
        bits = _bits_for(nvars)
        return cls._raw(nvars, {(1 << (bits * nvars)) | (1 << (bits * (nvars - 1 - index))): 1})

    @property
    def terms(self) -> dict[Monomial, Coeff]:
        """Decoded view: exponent tuple -> coefficient."""
        return {_decode(key, self.nvars): c for key, c in self._terms.items()}

    # -- ring structure -------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("mixed variable contexts")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.nvars, other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        res = dict(self._terms)
        for key, c in other._terms.items():
            s = res.get(key, 0) + c
            if s:
                res[key] = _norm_coeff(s)
            else:
                res.pop(key, None)
        return Polynomial._raw(self.nvars, res)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        res = dict(self._terms)
        for key, c in other._terms.items():
            s = res.get(key, 0) - c
            if s:
                res[key] = _norm_coeff(s)
            else:
                res.pop(key, None)
        return Polynomial._raw(self.nvars, res)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Polynomial.zero(self.nvars)
            return Polynomial._raw(
                self.nvars, {m: _norm_coeff(c * other) for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._terms, other._terms
        bits, cap, fits64 = _ring_info(self.nvars)
        _check_product_degree(self, other, cap)
        if fits64 and _mul_i64 is not None:
            fast = _mul_i64(a, b)
            if fast is not None:
                return Polynomial._raw(self.nvars, fast)
        if _mul_terms is not None:
            return Polynomial._raw(self.nvars, _strip_zeros(_mul_terms(a, b)))
        res: dict[int, Coeff] = {}
        get = res.get
        if len(a) > len(b):
            a, b = b, a
        b_items = list(b.items())
        for m1, c1 in a.items():
            for m2, c2 in b_items:
                key = m1 + m2
                res[key] = get(key, 0) + c1 * c2
        return Polynomial._raw(self.nvars, _strip_zeros(res))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial exponent must be a non-negative integer")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._terms.items())))

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    # -- queries ---------------------------------------------------------

    def total_degree(self) -> int:
        """Maximum total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(self._terms) >> (_bits_for(self.nvars) * self.nvars)

    def leading_term(self) -> tuple[Monomial, Coeff]:
        """Term that is maximal in graded lexicographic order."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        key = max(self._terms)
        return _decode(key, self.nvars), self._terms[key]

    def homogeneous_component(self, d: int) -> "Polynomial":
        if d < 0:
            raise ValueError("degree must be non-negative")
        shift = _bits_for(self.nvars) * self.nvars
        return Polynomial._raw(
            self.nvars, {m: c for m, c in self._terms.items() if m >> shift == d})

    def constant_value(self) -> Coeff:
        """Coefficient view of a constant polynomial."""
        if not self._terms:
            return 0
        if len(self._terms) == 1 and 0 in self._terms:
            return self._terms[0]
        raise ValueError("polynomial is not constant")

    def denominator_lcm(self) -> int:
        """LCM of all coefficient denominators."""
        lcm = 1
        for c in self._terms.values():
            if isinstance(c, Fraction):
                lcm = math.lcm(lcm, c.denominator)
        return lcm

    # -- division, evaluation, substitution -------------------------------

    def exact_div(self, other: "Polynomial | Coeff") -> "Polynomial":
        """Quotient q with q * other == self; raises if division is not exact."""
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / Fraction(other))
        if not isinstance(other, Polynomial) or other.nvars != self.nvars:
            raise ValueError("mixed variable contexts")
        if other.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero:
            return Polynomial.zero(self.nvars)
        nvars = self.nvars
        bits, _, fits64 = _ring_info(nvars)
        if fits64 and _exact_div_i64 is not None:
            fast = _exact_div_i64(self._terms, other._terms, nvars, bits,
                                  ExactDivisionError)
            if fast is not None:
                return Polynomial._raw(nvars, fast)
        lead_key = max(other._terms)
        lead_c = other._terms[lead_key]
        lead_mon = _decode(lead_key, nvars)
        lead_int = isinstance(lead_c, int)
        tail = [(dkey, dc) for dkey, dc in other._terms.items() if dkey != lead_key]
        rem: dict[int, Coeff] = dict(self._terms)
        quot: dict[int, Coeff] = {}
        rget = rem.get
        while rem:
            key = max(rem)
            c = rem.pop(key)
            mon = _decode(key, nvars)
            if any(a < b for a, b in zip(mon, lead_mon)):
                raise ExactDivisionError("leading term not divisible")
            qkey = key - lead_key
            if lead_int and isinstance(c, int):
                qc, r = divmod(c, lead_c)
                if r:
                    qc = Fraction(c, lead_c)
            else:
                qc = _norm_coeff(Fraction(c) / Fraction(lead_c))
            quot[qkey] = qc
            if _div_update is not None:
                _div_update(rem, qkey, qc, tail)
            else:
                for dkey, dc in tail:
                    tkey = qkey + dkey
                    s = rget(tkey, 0) - qc * dc
                    if s:
                        rem[tkey] = s
                    else:
                        rem.pop(tkey, None)
        return Polynomial._raw(self.nvars, _strip_zeros(quot))

    def __truediv__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / Fraction(other))
        if isinstance(other, Polynomial):
            return self.exact_div(other)
        return NotImplemented

    def evaluate(self, values: Sequence[Coeff | None]) -> Coeff:
        """Exact substitution of numbers for variables.

        `values` is indexed by variable; a None entry is allowed only for
        variables that do not occur in the polynomial.
        """
        if len(values) != self.nvars:
            raise ValueError(f"expected {self.nvars} values, got {len(values)}")
        total: Coeff = 0
        for key, c in self._terms.items():
            term: Coeff = c
            for idx, e in enumerate(_decode(key, self.nvars)):
                if e:
                    v = values[idx]
                    if v is None:
                        raise ValueError(f"no value supplied for variable index {idx}")
                    term *= v ** e
            total += term
        return _norm_coeff(total) if isinstance(total, Fraction) else total

    def substitute(self, mapping: Mapping[int, "Polynomial | Coeff"]) -> "Polynomial":
        """Replace selected variables by polynomials or constants."""
        if not mapping:
            return self
        subs: dict[int, Polynomial] = {}
        for idx, val in mapping.items():
            if not 0 <= idx < self.nvars:
                raise ValueError(f"variable index {idx} out of range")
            subs[idx] = val if isinstance(val, Polynomial) else Polynomial.constant(self.nvars, val)
        result = Polynomial.zero(self.nvars)
        for key, c in self._terms.items():
            residual = [0] * self.nvars
            factor = Polynomial.constant(self.nvars, c)
            for idx, e in enumerate(_decode(key, self.nvars)):
                if not e:
                    continue
                if idx in subs:
                    factor = factor * subs[idx] ** e
                else:
                    residual[idx] = e
            if any(residual):
                factor = factor * Polynomial._raw(self.nvars, {_encode(residual, self.nvars): 1})
            result = result + factor
        return result

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {self.terms!r})"


def fused_mul_sub(a: Polynomial, b: Polynomial, c: Polynomial, d: Polynomial) -> Polynomial:
    """a*b - c*d in one accumulation pass; the Bareiss inner loop."""
    nvars = a.nvars
    bits, cap, fits64 = _ring_info(nvars)
    _check_product_degree(a, b, cap)
    _check_product_degree(c, d, cap)
    if fits64 and _fused_i64 is not None:
        fast = _fused_i64(a._terms, b._terms, c._terms, d._terms)
        if fast is not None:
            return Polynomial._raw(nvars, fast)
    if _fused_terms is not None:
        return Polynomial._raw(
            nvars, _strip_zeros(_fused_terms(a._terms, b._terms, c._terms, d._terms)))
    res: dict[int, Coeff] = {}
    get = res.get
    for p, q, sgn in ((a, b, 1), (c, d, -1)):
        pt, qt = p._terms, q._terms
        if len(pt) > len(qt):
            pt, qt = qt, pt
        q_items = [(m2, sgn * c2) for m2, c2 in qt.items()]
        for m1, c1 in pt.items():
            for m2, c2 in q_items:
                key = m1 + m2
                res[key] = get(key, 0) + c1 * c2
    return Polynomial._raw(nvars, _strip_zeros(res))


# -- variable naming convention: x1..xk then l1..lk ----------------------

def x_var(k: int, t: int) -> Polynomial:
    """The variable x_t (1-based) in the 2k-variable ring."""
    if not 1 <= t <= k:
        raise ValueError(f"t={t} out of range 1..{k}")
    return Polynomial.variable(2 * k, t - 1)


def l_var(k: int, t: int) -> Polynomial:
    """The variable lambda_t (1-based), printed as l{t}."""
    if not 1 <= t <= k:
        raise ValueError(f"t={t} out of range 1..{k}")
    return Polynomial.variable(2 * k, k + t - 1)


def variable_names(k: int) -> list[str]:
    return [f"x{t}" for t in range(1, k + 1)] + [f"l{t}" for t in range(1, k + 1)]


def poly_to_string(p: Polynomial, k: int) -> str:
    """Canonical text form: graded-lex descending, coefficients as p/q."""
    if p.is_zero:
        return "0"
    names = variable_names(k)
    if len(names) != p.nvars:
        raise ValueError("k does not match the polynomial's variable context")
    terms = p.terms
    pieces = []
    for mon in sorted(terms, key=_grlex_key, reverse=True):
        c = terms[mon]
        vars_part = "*".join(
            names[i] if e == 1 else f"{names[i]}^{e}"
            for i, e in enumerate(mon) if e)
        if not vars_part:
            pieces.append(str(c))
        elif c == 1:
            pieces.append(vars_part)
        else:
            pieces.append(f"{c}*{vars_part}")
    return " + ".join(pieces)


# -- binomial machinery ----------------------------------------------------

def falling_factorial(p: Polynomial, m: int) -> Polynomial:
    """p (p-1) ... (p-m+1); equals 1 for m = 0."""
    if m < 0:
        raise ValueError("m must be non-negative")
    result = Polynomial.constant(p.nvars, 1)
    for j in range(m):
        result = result * (p - j)
    return result


def poly_binomial(p: Polynomial, m: int) -> Polynomial:
    """Binomial coefficient C(p, m) for a polynomial top argument."""
    if m < 0:
        raise ValueError("m must be non-negative")
    return falling_factorial(p, m) * Fraction(1, math.factorial(m))


def counting_binomial(m: int, r: int) -> int:
    """Set-counting binomial: C(m, r) within 0 <= r <= m, else 0.

    Used only for exponents and multiplicities in product formulas,
    never for matrix entries.
    """
    if r < 0 or m < 0 or r > m:
        return 0
    return math.comb(m, r)


def binomial_value(v: Coeff, m: int) -> Coeff:
    """Numeric C(v, m) for a rational top argument, falling-product form."""
    if m < 0:
        raise ValueError("m must be non-negative")
    num: Coeff = 1
    for j in range(m):
        num *= v - j
    return _norm_coeff(Fraction(num, math.factorial(m)))
