"""Generalized Stirling and Bell numbers of a boson string.

The same coefficient table is reachable four ways: direct rewriting (algebra
module), the bug-colony recurrence, an inclusion-exclusion closed form, and
brute enumeration (combinat module).  Everything here is exact: integers are
Python ints, series terms are fractions, and decimal output is produced only
at the final rounding step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterator, Mapping

from .algebra import StringType
from .errors import (NegativeExponent, NonCanonicalPrefix, OutOfRange,
                     PrecisionUnreachable)

DEFAULT_MAX_TERMS = 10000


def falling_factorial(l: int, p: int) -> int:
    """(l)_p = l(l-1)...(l-p+1); (l)_0 = 1.

    Defined for any sign of l: 0 <= l < p gives 0, negative l gives the
    signed product.  Callers that mean "number of injections" must ensure
    the base is nonnegative themselves.
    """
    if p < 0:
        raise ValueError("p must be nonnegative")
    out = 1
    for i in range(p):
        out *= l - i
    return out


@dataclass(frozen=True)
class StirlingTable:
    """Nonzero generalized Stirling coefficients of a type, keyed by the
    number of surviving annihilators (equally: free legs of a colony)."""

    type: StringType
    values: Mapping[int, int]

    def __post_init__(self):
        clean = {int(k): int(v) for k, v in sorted(self.values.items()) if v}
        lo, hi = self.type.s[0], self.type.total_s
        for k, v in clean.items():
            if not lo <= k <= hi:
                raise ValueError(f"key {k} outside the window [{lo}, {hi}]")
            if v < 0:
                raise ValueError("coefficients count colonies; got a negative")
        object.__setattr__(self, "values", clean)

    def bell(self) -> int:
        return sum(self.values.values())


@dataclass(frozen=True)
class BellPolynomial:
    """Dense integer coefficient vector; coeffs[k] multiplies x^k."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("empty coefficient vector")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, x):
        """Horner evaluation; exact for int or Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


@dataclass(frozen=True)
class ApproxValue:
    """A rounded numeric result together with how it was produced."""

    value: Decimal
    precision_digits: int
    terms_used: int

    def __post_init__(self):
        if self.precision_digits < 1:
            raise ValueError("precision_digits must be positive")
        if self.terms_used < 1:
            raise ValueError("terms_used must be positive")


@dataclass(frozen=True)
class ComplexApproxValue:
    """Rounded complex result; real/imag are decimals at the same precision."""

    real: Decimal
    imag: Decimal
    precision_digits: int
    terms_used: int

    def __post_init__(self):
        if self.precision_digits < 1:
            raise ValueError("precision_digits must be positive")
        if self.terms_used < 1:
            raise ValueError("terms_used must be positive")


def _prefix_product(t: StringType, x: int) -> int:
    # prod_j (x + d_{j-1})_(s_j), the signed product, any integer x
    ds = t.prefix_excesses
    out = 1
    for j in range(t.n):
        out *= falling_factorial(x + ds[j], t.s[j])
    return out


def stirling_recurrence(t: StringType) -> StirlingTable:
    """Build the coefficient table factor by factor.

    Appending a factor with s' annihilators to a word of excess d sends
    S(k) to sum_j C(s',j) (d+k-j)_(s'-j) S(k-j): j new annihilators survive,
    the rest land on existing creation slots.  The falling factorial is used
    in its signed form on purpose; whenever its base would be negative the
    multiplying table entry is zero, so no clamping is needed (and clamping
    would hide genuine indexing bugs).
    """
    values: dict[int, int] = {t.s[0]: 1}
    ds = t.prefix_excesses
    for i in range(1, t.n):
        d_prev = ds[i]
        s_next = t.s[i]
        new: dict[int, int] = {}
        for m, v in values.items():
            for j in range(s_next + 1):
                w = math.comb(s_next, j) * falling_factorial(d_prev + m, s_next - j)
                if w:
                    new[m + j] = new.get(m + j, 0) + v * w
        values = new
    return StirlingTable(t, values)


def bell_number(t: StringType) -> int:
    """Sum of the Stirling table; also the number of colonies of this type."""
    return stirling_recurrence(t).bell()


def stirling_closed_form(t: StringType, k: int) -> int:
    """Single coefficient by inclusion-exclusion over monomial actions.

    Computes (1/k!) sum_m C(k,m)(-1)^(k-m) prod_j (m+d_{j-1})_(s_j).  The
    alternating sum is kept integral and divided by k! once at the end; exact
    divisibility is asserted.  Needs every prefix excess nonnegative because
    the derivation pushes monomials through the word.
    """
    ds = t.prefix_excesses
    if min(ds) < 0:
        raise NonCanonicalPrefix(f"prefix excesses {ds} contain a negative entry")
    if not t.s[0] <= k <= t.total_s:
        raise OutOfRange(f"k={k} outside [{t.s[0]}, {t.total_s}]")
    total = 0
    for m in range(k + 1):
        sign = -1 if (k - m) % 2 else 1
        total += sign * math.comb(k, m) * _prefix_product(t, m)
    quotient, remainder = divmod(total, math.factorial(k))
    if remainder:
        raise AssertionError(f"alternating sum {total} not divisible by {k}!")
    return quotient


def bell_polynomial(t: StringType) -> BellPolynomial:
    """The polynomial sum_k S(k) x^k; evaluation at 1 is the Bell number."""
    table = stirling_recurrence(t)
    coeffs = [0] * (t.total_s + 1)
    for k, v in table.values.items():
        coeffs[k] = v
    return BellPolynomial(tuple(coeffs))


def bell_poly_recursion(prev: BellPolynomial, d_prev: int, r_next: int,
                        s_next: int) -> BellPolynomial:
    """Extend a Bell polynomial by one factor through the differential model.

    New polynomial = x^(s'-d) (D+1)^(s') x^d old, with d the excess before
    the new factor.  r_next is accepted for signature symmetry but cancels
    out of the coefficients; it only moves the excess of later factors.
    """
    if d_prev < 0:
        raise NonCanonicalPrefix(f"excess before the new factor is {d_prev}")
    if r_next < 0 or s_next < 0:
        raise ValueError("factor exponents must be nonnegative")
    c = [0] * d_prev + list(prev.coeffs)
    for _ in range(s_next):
        # (D+1) maps coefficient vector f to f_i + (i+1) f_{i+1}
        c = [c[i] + ((i + 1) * c[i + 1] if i + 1 < len(c) else 0)
             for i in range(len(c))]
    shift = s_next - d_prev
    if shift >= 0:
        c = [0] * shift + c
    else:
        if any(c[:-shift]):
            raise NegativeExponent(
                f"shift by x^{shift} hits nonzero low-order coefficients")
        c = c[-shift:]
    return BellPolynomial(tuple(c))


def dobinski_terms(t: StringType, x) -> Iterator[Fraction]:
    """Exact terms p(m) x^m / m! of the infinite-series Bell representation,
    starting at m = s_1, where p(m) = prod_j (m+d_{j-1})_(s_j)."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("x must be nonnegative")
    ds = t.prefix_excesses
    if min(ds) < 0:
        raise NonCanonicalPrefix(f"prefix excesses {ds} contain a negative entry")

    def gen():
        m = t.s[0]
        xpow = x ** m
        fact = math.factorial(m)
        while True:
            yield Fraction(_prefix_product(t, m) * xpow.numerator,
                           xpow.denominator * fact)
            m += 1
            xpow *= x
            fact *= m

    return gen()


def dobinski_eval(t: StringType, x, target_digits: int,
                  max_terms: int = DEFAULT_MAX_TERMS) -> ApproxValue:
    """Numerically sum e^(-x) sum_{m>=s_1} p(m) x^m / m!.

    Terms are exact rationals; summation stops once the tail is provably
    below 10^-(target_digits+2) of the partial sum.  The tail test uses the
    ratio bound term_{m+1}/term_m <= x/(m+1-sum(s)), valid as soon as
    m+1 > sum(s), and requires the ratio <= 1/2 so the geometric tail is at
    most twice the next term.  Only the final multiplication by e^(-x) runs
    in decimal arithmetic, with ten guard digits.
    """
    if target_digits < 1:
        raise ValueError("target_digits must be positive")
    x = Fraction(x)
    if x < 0:
        raise ValueError("x must be nonnegative")
    ds = t.prefix_excesses
    if min(ds) < 0:
        raise NonCanonicalPrefix(f"prefix excesses {ds} contain a negative entry")
    if x == 0:
        return ApproxValue(Decimal(0), target_digits, 1)

    total_s = t.total_s
    tol = Fraction(1, 10 ** (target_digits + 2))
    partial = Fraction(0)
    used = 0
    terms = dobinski_terms(t, x)
    for term in terms:
        used += 1
        partial += term
        m = t.s[0] + used - 1
        room = m + 1 - total_s
        if room > 0 and partial > 0:
            ratio = x / room
            if ratio <= Fraction(1, 2) and 2 * term * ratio < tol * partial:
                break
        if used >= max_terms:
            raise PrecisionUnreachable(
                f"tail bound still unmet after {max_terms} terms")

    with localcontext() as ctx:
        ctx.prec = target_digits + 10
        s_dec = Decimal(partial.numerator) / Decimal(partial.denominator)
        x_dec = Decimal(x.numerator) / Decimal(x.denominator)
        value = s_dec * (-x_dec).exp()
        ctx.prec = target_digits
        value = +value
    return ApproxValue(value, target_digits, used)


def settlement_product(t: StringType, m: int) -> int:
    """prod_j (m+d_{j-1})_(s_j): the number of m-settlements of the type.

    Pure product, no prefix condition; agreement with enumeration is a
    theorem (and a test) for types whose prefix excesses are nonnegative.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    return _prefix_product(t, m)


def _classical_stirling2(nmax: int) -> list[list[int]]:
    # rows[n][k] = S2(n,k) from the textbook recurrence, used only as the
    # monomial -> falling-factorial basis change
    rows = [[1]]
    for n in range(1, nmax + 1):
        prev = rows[-1]
        row = [0] * (n + 1)
        for k in range(1, n + 1):
            row[k] = prev[k - 1] + (k * prev[k] if k < n else 0)
        rows.append(row)
    return rows


def falling_factorial_expansion(t: StringType) -> dict[int, int]:
    """Coefficients c_k of prod_j (X+d_{j-1})_(s_j) = sum_k c_k (X)_k.

    Expands the product into ordinary monomial coefficients and changes
    basis with the classical Stirling triangle; independent of the
    recurrence, so comparing the result against stirling_recurrence checks
    the polynomial identity coefficient by coefficient.
    """
    ds = t.prefix_excesses
    if min(ds) < 0:
        raise NonCanonicalPrefix(f"prefix excesses {ds} contain a negative entry")
    poly = [1]
    for j in range(t.n):
        for i in range(t.s[j]):
            root = ds[j] - i
            new = [0] * (len(poly) + 1)
            for a, c in enumerate(poly):
                new[a] += root * c
                new[a + 1] += c
            poly = new
    s2 = _classical_stirling2(len(poly) - 1)
    out: dict[int, int] = {}
    for n, c in enumerate(poly):
        if not c:
            continue
        for k in range(n + 1):
            v = c * s2[n][k]
            if v:
                out[k] = out.get(k, 0) + v
    return {k: v for k, v in sorted(out.items()) if v}


def check_polynomial_identity(t: StringType, x: int) -> bool:
    """Test prod_j (x+d_{j-1})_(s_j) == sum_k S(k) (x)_k at one integer x."""
    ds = t.prefix_excesses
    if min(ds) < 0:
        raise NonCanonicalPrefix(f"prefix excesses {ds} contain a negative entry")
    lhs = _prefix_product(t, x)
    table = stirling_recurrence(t)
    rhs = sum(v * falling_factorial(x, k) for k, v in table.values.items())
    return lhs == rhs


def _gaussian_parts(z) -> tuple[Fraction, Fraction]:
    if isinstance(z, complex):
        return Fraction(z.real), Fraction(z.imag)
    if isinstance(z, tuple) and len(z) == 2:
        return Fraction(z[0]), Fraction(z[1])
    return Fraction(z), Fraction(0)


def coherent_expectation_exact(t: StringType, zr: Fraction,
                               zi: Fraction) -> tuple[Fraction, Fraction]:
    """conj(z)^(d_n) * B(|z|^2) as exact rational real/imaginary parts."""
    mod2 = zr * zr + zi * zi
    b = bell_polynomial(t).evaluate(mod2)
    re, im = Fraction(1), Fraction(0)
    for _ in range(t.excess):
        re, im = re * zr + im * zi, im * zr - re * zi
    return re * b, im * b


def coherent_expectation(t: StringType, z, target_digits: int) -> ComplexApproxValue:
    """Diagonal matrix element between coherent states of amplitude z.

    Equals conj(z)^(d_n) times the Bell polynomial at |z|^2.  The input is
    taken apart into exact rational real/imaginary parts (binary floats are
    rationals), evaluated exactly, and rounded once at the end.
    """
    if target_digits < 1:
        raise ValueError("target_digits must be positive")
    ds = t.prefix_excesses
    if min(ds) < 0:
        raise NonCanonicalPrefix(f"prefix excesses {ds} contain a negative entry")
    zr, zi = _gaussian_parts(z)
    re, im = coherent_expectation_exact(t, zr, zi)
    with localcontext() as ctx:
        ctx.prec = target_digits
        re_dec = Decimal(re.numerator) / Decimal(re.denominator)
        im_dec = Decimal(im.numerator) / Decimal(im.denominator)
    terms = sum(1 for c in bell_polynomial(t).coeffs if c)
    return ComplexApproxValue(re_dec, im_dec, target_digits, max(terms, 1))
