"""Exact normal ordering of words in the boson creation/annihilation operators.

Words live in the algebra generated by a and a+ with a a+ - a+ a = 1.  Normal
ordering rewrites a word as an integer combination of monomials (a+)^i a^j
with every creation operator on the left; all coefficients are exact Python
integers.  Words of constant excess i - j collapse further to a prefix
(a+)^d times a diagonal sum over (a+)^k a^k, which is where the generalized
Stirling coefficients come from.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping

from .errors import NegativeExcess, NonCanonicalPrefix


class Letter(enum.Enum):
    """One generator: CREATION is a+, ANNIHILATION is a."""

    CREATION = "ad"
    ANNIHILATION = "a"


CREATION = Letter.CREATION
ANNIHILATION = Letter.ANNIHILATION


@dataclass(frozen=True)
class BosonWord:
    """A finite product of generators, leftmost letter written (and acting) last.

    The empty word is the identity operator.
    """

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        for l in self.letters:
            if not isinstance(l, Letter):
                raise TypeError(f"not a generator: {l!r}")

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def excess(self) -> int:
        """Number of creations minus number of annihilations."""
        ups = sum(1 for l in self.letters if l is CREATION)
        return 2 * ups - len(self.letters)

    def concat(self, other: "BosonWord") -> "BosonWord":
        return BosonWord(self.letters + other.letters)


@dataclass(frozen=True)
class StringType:
    """Exponent vectors (r, s) of a word (a+)^r_n a^s_n ... (a+)^r_1 a^s_1.

    Factor 1 is the rightmost factor, i.e. the one applied first.  All
    exponents are positive integers; a block with a missing power belongs to
    the neighbouring factor instead.
    """

    r: tuple[int, ...]
    s: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(int(x) for x in self.r))
        object.__setattr__(self, "s", tuple(int(x) for x in self.s))
        if len(self.r) != len(self.s):
            raise ValueError("r and s must have the same length")
        if not self.r:
            raise ValueError("a type needs at least one factor")
        if min(self.r) < 1 or min(self.s) < 1:
            raise ValueError("all exponents must be positive")

    @classmethod
    def uniform(cls, r: int, s: int, n: int) -> "StringType":
        """The type of ((a+)^r a^s)^n."""
        return cls((r,) * n, (s,) * n)

    @property
    def n(self) -> int:
        return len(self.r)

    @cached_property
    def prefix_excesses(self) -> tuple[int, ...]:
        """d_0..d_n where d_j is the creation surplus of factors 1..j; d_0 = 0."""
        ds = [0]
        for ri, si in zip(self.r, self.s):
            ds.append(ds[-1] + ri - si)
        return tuple(ds)

    @property
    def excess(self) -> int:
        return self.prefix_excesses[-1]

    @property
    def total_s(self) -> int:
        return sum(self.s)

    @property
    def total_r(self) -> int:
        return sum(self.r)

    def has_nonnegative_prefixes(self) -> bool:
        return min(self.prefix_excesses) >= 0


@dataclass(frozen=True, eq=True)
class NormalForm:
    """A normally ordered operator of constant excess.

    ``coeffs[k]`` multiplies (a+)^(k + max(excess, 0)) a^(k + max(-excess, 0)),
    so for nonnegative excess d the operator is
    (a+)^d * sum_k coeffs[k] (a+)^k a^k.  Zero coefficients are not stored.
    """

    excess: int
    coeffs: Mapping[int, int]

    def __post_init__(self):
        clean = {int(k): int(v) for k, v in sorted(self.coeffs.items()) if v}
        if clean and min(clean) < 0:
            raise ValueError("diagonal degree k must be nonnegative")
        object.__setattr__(self, "coeffs", clean)

    def monomials(self) -> Iterator[tuple[int, int, int]]:
        """Yield (creation degree, annihilation degree, coefficient)."""
        up = max(self.excess, 0)
        down = max(-self.excess, 0)
        for k, c in self.coeffs.items():
            yield k + up, k + down, c

    def multiply(self, other: "NormalForm") -> "NormalForm":
        """Normally ordered product; excesses add."""
        acc: dict[tuple[int, int], int] = {}
        for i1, j1, c1 in self.monomials():
            for i2, j2, c2 in other.monomials():
                # only the inner boundary a^j1 (a+)^i2 needs rewriting
                for p, w in apply_crossing(j1, i2):
                    key = (i1 + i2 - p, j1 + j2 - p)
                    acc[key] = acc.get(key, 0) + c1 * c2 * w
        return _collapse(acc, self.excess + other.excess)

    __mul__ = multiply


def apply_crossing(k: int, l: int) -> list[tuple[int, int]]:
    """Coefficients of a^k (a+)^l = sum_p C(k,p) l!/(l-p)! (a+)^(l-p) a^(k-p).

    Returns the list of (p, coefficient) for p = 0..min(k, l); every
    coefficient is a positive integer.
    """
    if k < 0 or l < 0:
        raise ValueError("exponents must be nonnegative")
    out = []
    for p in range(min(k, l) + 1):
        c = math.comb(k, p)
        for i in range(p):
            c *= l - i
        out.append((p, c))
    return out


def _collapse(acc: dict[tuple[int, int], int], excess: int) -> NormalForm:
    coeffs: dict[int, int] = {}
    for (i, j), c in acc.items():
        if c == 0:
            continue
        if i - j != excess:
            raise AssertionError("rewriting changed the excess")
        k = min(i, j)
        coeffs[k] = coeffs.get(k, 0) + c
    return NormalForm(excess, coeffs)


def _runs(letters: tuple[Letter, ...]) -> tuple[tuple[Letter, int], ...]:
    runs: list[list] = []
    for l in letters:
        if runs and runs[-1][0] is l:
            runs[-1][1] += 1
        else:
            runs.append([l, 1])
    return tuple((l, c) for l, c in runs)


def _merge(runs: tuple[tuple[Letter, int], ...]) -> tuple[tuple[Letter, int], ...]:
    merged: list[list] = []
    for l, c in runs:
        if merged and merged[-1][0] is l:
            merged[-1][1] += c
        else:
            merged.append([l, c])
    return tuple((l, c) for l, c in merged)


def _rewrite_blockwise(word: BosonWord) -> dict[tuple[int, int], int]:
    # worklist over run-length encoded terms; each step clears one whole
    # a-block / a+-block boundary with one crossing expansion
    acc: dict[tuple[int, int], int] = {}
    stack: list[tuple[tuple[tuple[Letter, int], ...], int]] = [(_runs(word.letters), 1)]
    while stack:
        runs, coeff = stack.pop()
        pos = next(
            (t for t in range(len(runs) - 1)
             if runs[t][0] is ANNIHILATION and runs[t + 1][0] is CREATION),
            None,
        )
        if pos is None:
            i = sum(c for l, c in runs if l is CREATION)
            j = sum(c for l, c in runs if l is ANNIHILATION)
            acc[(i, j)] = acc.get((i, j), 0) + coeff
            continue
        k, l = runs[pos][1], runs[pos + 1][1]
        for p, w in apply_crossing(k, l):
            middle = []
            if l - p:
                middle.append((CREATION, l - p))
            if k - p:
                middle.append((ANNIHILATION, k - p))
            stack.append((_merge(runs[:pos] + tuple(middle) + runs[pos + 2:]),
                          coeff * w))
    return acc


def _rewrite_letterwise(word: BosonWord) -> dict[tuple[int, int], int]:
    # one commutator at a time: ... a a+ ... -> ... a+ a ... + ... (drop) ...
    # exponential blowup, only useful as a cross-check on short words
    pending: dict[tuple[Letter, ...], int] = {word.letters: 1}
    acc: dict[tuple[int, int], int] = {}
    while pending:
        nxt: dict[tuple[Letter, ...], int] = {}
        for letters, coeff in pending.items():
            pos = next(
                (t for t in range(len(letters) - 1)
                 if letters[t] is ANNIHILATION and letters[t + 1] is CREATION),
                None,
            )
            if pos is None:
                i = sum(1 for l in letters if l is CREATION)
                j = len(letters) - i
                acc[(i, j)] = acc.get((i, j), 0) + coeff
            else:
                swapped = letters[:pos] + (CREATION, ANNIHILATION) + letters[pos + 2:]
                dropped = letters[:pos] + letters[pos + 2:]
                nxt[swapped] = nxt.get(swapped, 0) + coeff
                nxt[dropped] = nxt.get(dropped, 0) + coeff
        pending = nxt
    return acc


def normal_order(word: BosonWord, method: str = "blockwise") -> NormalForm:
    """Rewrite a word into its normal form with exact integer coefficients.

    ``method="blockwise"`` clears one block boundary per step and is the
    default; ``method="letterwise"`` applies the commutation relation one
    letter pair at a time and exists as an independent cross-check.
    Both are confluent: the result is the same dictionary.
    """
    if method == "blockwise":
        acc = _rewrite_blockwise(word)
    elif method == "letterwise":
        acc = _rewrite_letterwise(word)
    else:
        raise ValueError(f"unknown method {method!r}")
    return _collapse(acc, word.excess)


def word_from_type(t: StringType) -> BosonWord:
    """The word (a+)^r_n a^s_n ... (a+)^r_1 a^s_1; factor 1 ends up rightmost."""
    letters: list[Letter] = []
    for ri, si in zip(reversed(t.r), reversed(t.s)):
        letters.extend([CREATION] * ri)
        letters.extend([ANNIHILATION] * si)
    return BosonWord(tuple(letters))


def type_from_word(word: BosonWord) -> StringType | None:
    """Inverse of word_from_type where one exists.

    Factors the word into strictly alternating creation/annihilation runs
    starting with a creation run; returns None when the word is not of that
    grouped shape (for example when it starts with an annihilator).
    """
    runs = _runs(word.letters)
    if not runs or len(runs) % 2:
        return None
    pairs = list(zip(runs[0::2], runs[1::2]))
    if any(up[0] is not CREATION or down[0] is not ANNIHILATION
           for up, down in pairs):
        return None
    r = tuple(up[1] for up, _ in reversed(pairs))
    s = tuple(down[1] for _, down in reversed(pairs))
    return StringType(r, s)


def extract_stirling(form: NormalForm) -> tuple[int, dict[int, int]]:
    """Split a normal form into (excess d, diagonal coefficient table).

    Only defined for nonnegative excess, where the operator reads
    (a+)^d sum_k S(k) (a+)^k a^k; the returned table maps k to S(k) and
    omits zeros.
    """
    if form.excess < 0:
        raise NegativeExcess(
            f"excess {form.excess} < 0: no creation prefix to factor out")
    return form.excess, dict(form.coeffs)


def xd_action_on_monomial(t: StringType, m: int) -> tuple[int, int]:
    """Push x^m through the differential model X^r_n D^s_n ... X^r_1 D^s_1.

    Returns (coefficient, exponent): the image is coefficient * x^exponent
    with coefficient = prod_j (m + d_{j-1})^falling(s_j) and exponent
    m + d_n.  Requires every prefix excess to be nonnegative, otherwise some
    intermediate monomial would have negative degree.
    """
    if m < 0:
        raise ValueError("monomial degree must be nonnegative")
    ds = t.prefix_excesses
    if min(ds) < 0:
        raise NonCanonicalPrefix(
            f"prefix excesses {ds} contain a negative entry")
    coeff = 1
    for j in range(t.n):
        base = m + ds[j]
        for i in range(t.s[j]):
            coeff *= base - i
    return coeff, m + ds[-1]
