"""Exact integer/rational sequences built from Raney numbers.

Everything in this module is computed in exact rational arithmetic
(``fractions.Fraction``).  The central object is the two-parameter family

    a_n(p, t) = t * raney(p, 1, n) + (1 - t) * raney(p, 2, n),

an affine deformation between the Fuss numbers (t = 1) and their squared
generating-function counterparts (t = 0).  Quantities that admit two
independent formulas (a product closed form and the affine combination, a
constellation count and its a_n expression, ...) are evaluated both ways and
compared; a mismatch raises :class:`~fussdeform.errors.InconsistencyError`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, isfinite
from typing import Iterable, Literal, Sequence, Union

from .errors import InconsistencyError

RationalLike = Union[Fraction, int, str]

__all__ = [
    "Params",
    "SeqTable",
    "parse_rational",
    "rational_str",
    "raney",
    "deformed_fuss",
    "deformed_table",
    "constellation_count",
    "constellation_table",
    "binomial_transform",
    "a220910",
    "a220910_table",
    "a022558_table",
    "necessary_gap",
    "catalan_table",
]


def parse_rational(text: RationalLike) -> Fraction:
    """Parse ``num/den``, an integer literal, or a finite decimal into a Fraction.

    Accepts Fraction and int unchanged.  Floats are deliberately rejected:
    callers that work in float mode should say so explicitly instead of
    smuggling binary-rounded values into exact code paths.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        raise TypeError("float is not accepted where an exact rational is required")
    s = str(text).strip()
    if not s:
        raise ValueError("empty rational literal")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse rational literal {text!r}") from exc


def rational_str(value: Fraction) -> str:
    """Canonical ``num/den`` rendering used by every serializer in the package."""
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Params:
    """A (p, t) parameter pair, tagged exact (Fraction) or float.

    Exact mode is required by every routine that promises exact arithmetic;
    float mode is accepted by the density/quadrature layer.  Use the
    :meth:`exact` / :meth:`floating` constructors rather than the raw
    dataclass constructor.
    """

    p: Union[Fraction, float]
    t: Union[Fraction, float]
    mode: Literal["exact", "float"]

    @classmethod
    def exact(cls, p: RationalLike, t: RationalLike) -> "Params":
        return cls(parse_rational(p), parse_rational(t), "exact")

    @classmethod
    def floating(cls, p: float, t: float) -> "Params":
        p = float(p)
        t = float(t)
        if not (isfinite(p) and isfinite(t)):
            raise ValueError("p and t must be finite")
        return cls(p, t, "float")

    def require_exact(self, operation: str) -> tuple[Fraction, Fraction]:
        if self.mode != "exact":
            raise ValueError(f"{operation} requires exact-mode Params")
        return self.p, self.t  # type: ignore[return-value]

    def as_floats(self) -> tuple[float, float]:
        return float(self.p), float(self.t)


@dataclass
class SeqTable:
    """A labelled run of consecutive sequence values.

    ``values[i]`` is the term of index ``offset + i``.  The label must stay
    free of commas so the CSV rendering needs no quoting.
    """

    label: str
    offset: int
    values: list[Fraction] = field(default_factory=list)

    def __post_init__(self) -> None:
        if "," in self.label or "\n" in self.label:
            raise ValueError("sequence label must not contain commas or newlines")
        if self.offset < 0:
            raise ValueError("offset must be nonnegative")
        self.values = [parse_rational(v) for v in self.values]

    def __len__(self) -> int:
        return len(self.values)

    def term(self, n: int) -> Fraction:
        i = n - self.offset
        if not 0 <= i < len(self.values):
            raise IndexError(f"index {n} outside stored range")
        return self.values[i]

    def to_csv(self) -> str:
        lines = ["label,offset,n,value"]
        for i, v in enumerate(self.values):
            lines.append(f"{self.label},{self.offset},{self.offset + i},{rational_str(v)}")
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> dict:
        return {
            "label": self.label,
            "offset": self.offset,
            "values": [rational_str(v) for v in self.values],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2) + "\n"


def raney(p: RationalLike, r: RationalLike, n: int) -> Fraction:
    """Raney number: 1 for n = 0, else (r / n!) * prod_{i=1}^{n-1} (n p + r - i).

    Defined for arbitrary rational p and r.  For integer p >= 1, r = 1 these
    are the Fuss numbers counting nonnegative lattice paths with steps in
    {1, 1 - p}; the reflection raney(p, r, n) * (-1)^n = raney(1-p, -r, n)
    holds identically in (p, r).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    p = parse_rational(p)
    r = parse_rational(r)
    if n == 0:
        return Fraction(1)
    acc = r
    base = n * p + r
    for i in range(1, n):
        acc *= base - i
    return acc / factorial(n)


def _deformed_closed(p: Fraction, t: Fraction, n: int) -> Fraction:
    # Single product form with the vanishing linear factors cancelled, so it
    # stays well defined when (n p - n + 1)(n p - n + 2) has a zero factor.
    if n == 0:
        return Fraction(1)
    if n == 1:
        return 2 - t
    prod = Fraction(1)
    for i in range(n - 2):
        prod *= n * p - i
    return prod * (n * (2 * p - t - p * t) + 2) / factorial(n)


def deformed_fuss(params: Params, n: int) -> Fraction:
    """a_n(p, t), computed by two independent routes and cross-checked.

    Route one is the affine combination t*raney(p,1,n) + (1-t)*raney(p,2,n);
    route two is the single product closed form.  Both are exact; a mismatch
    raises InconsistencyError.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    p, t = params.require_exact("deformed_fuss")
    affine = t * raney(p, 1, n) + (1 - t) * raney(p, 2, n)
    closed = _deformed_closed(p, t, n)
    if affine != closed:
        raise InconsistencyError(
            f"a_{n}({p},{t}): affine route {affine} != closed form {closed}"
        )
    return affine


def deformed_table(params: Params, n_max: int) -> SeqTable:
    """SeqTable of a_0(p,t) .. a_{n_max}(p,t)."""
    p, t = params.require_exact("deformed_table")
    values = [deformed_fuss(params, n) for n in range(n_max + 1)]
    return SeqTable(label=f"a(p={p};t={t})", offset=0, values=values)


def constellation_count(p: int, n: int) -> Fraction:
    """Number of p-constellations with n polygons (p >= 2 integer, n >= 1).

    Evaluated directly from binom(np, n) * (p+1) * p^(n-1) / ((np-n+1)(np-n+2))
    and cross-checked against the deformed-family identity
    C_p(n) = (p+1) p^n / (2p) * a_n(p, 2p/(p+1)).
    """
    if not isinstance(p, int) or isinstance(p, bool) or p < 2:
        raise ValueError("constellation counts require integer p >= 2")
    if n < 1:
        raise ValueError("constellation counts start at n = 1")
    if n == 1:
        direct = Fraction(1)
    else:
        prod = Fraction(1)
        for i in range(n - 2):
            prod *= n * p - i
        direct = prod * (p + 1) * Fraction(p) ** (n - 1) / factorial(n)
    t_star = Fraction(2 * p, p + 1)
    via_family = (
        Fraction(p + 1) * Fraction(p) ** n / (2 * p)
        * deformed_fuss(Params.exact(p, t_star), n)
    )
    if direct != via_family:
        raise InconsistencyError(
            f"C_{p}({n}): direct {direct} != deformed-family route {via_family}"
        )
    return direct


def constellation_table(p: int, n_max: int) -> SeqTable:
    values = [constellation_count(p, n) for n in range(1, n_max + 1)]
    return SeqTable(label=f"constellation(p={p})", offset=1, values=values)


def binomial_transform(seq: SeqTable, direction: str = "forward") -> SeqTable:
    """Forward binomial transform b_n = sum_k (-1)^(n-k) binom(n,k) a_k, or its inverse.

    The transform acts on absolute indices, so the input table must start at
    offset 0.  forward followed by inverse is the identity.
    """
    from math import comb

    if seq.offset != 0:
        raise ValueError("binomial transform is defined for offset-0 tables")
    if not seq.values:
        raise ValueError("binomial transform of an empty table")
    a = seq.values
    out: list[Fraction] = []
    if direction == "forward":
        for n in range(len(a)):
            out.append(sum(((-1) ** (n - k)) * comb(n, k) * a[k] for k in range(n + 1)))
        label = f"binomial({seq.label})"
    elif direction == "inverse":
        for n in range(len(a)):
            out.append(sum(comb(n, k) * a[k] for k in range(n + 1)))
        label = f"inv-binomial({seq.label})"
    else:
        raise ValueError("direction must be 'forward' or 'inverse'")
    return SeqTable(label=label, offset=0, values=out)


_A220910_METHODS = ("recurrence", "closed_a", "closed_b", "cumulant")


def _a220910_recurrence(n_max: int) -> list[Fraction]:
    # n * a_n = (8n - 34) a_{n-1} + 24 (2n - 3) a_{n-2}, seeds a_0 = a_1 = 1.
    vals = [Fraction(1), Fraction(1)]
    for n in range(2, n_max + 1):
        vals.append(((8 * n - 34) * vals[n - 1] + 24 * (2 * n - 3) * vals[n - 2]) / n)
    return vals[: n_max + 1]


def _a220910_closed_a(n: int) -> Fraction:
    # Hypergeometric-style finite sum; the running products keep every term
    # exact without ever forming a factorial of a half-integer.
    from math import comb

    if n == 0:
        return Fraction(1)
    head = Fraction(1 - 8 * n, 2) * Fraction(-4) ** n
    total = Fraction(0)
    falling = Fraction(1)  # prod_{i=0}^{k-1} (n - i)
    halfprod = (n - Fraction(1, 2)) * (n - Fraction(3, 2))  # prod_{i=0}^{k+1}(n-i-1/2)
    three_pow = Fraction(3) ** (n + 1)
    sign_pow = Fraction(1)  # (-3)^k
    for k in range(n + 1):
        if k > 0:
            falling *= n - (k - 1)
            halfprod *= n - k - Fraction(3, 2)
            sign_pow *= -3
        total += three_pow * (k + 1) * falling / (8 * sign_pow * halfprod)
    return head + comb(2 * n, n) * total


def _a220910_closed_b(n: int) -> Fraction:
    from math import comb

    if n == 0:
        return Fraction(1)
    # Inner alternating sum, accumulated strictly left to right.
    term = Fraction(1)  # k = 0 term of (-3)^k / k! * prod_{i=0}^{k-1} (i - 3/2)
    inner = term
    for k in range(1, n + 2):
        term *= Fraction(-3) * (k - Fraction(5, 2)) / k
        inner += term
    head = Fraction(-4) ** n * Fraction(1 - 8 * n, 16) * (8 - inner)
    tail = comb(2 * n, n) * Fraction(3) ** (n + 3) / (32 * (n + 1))
    return head + tail


def _a220910_cumulant(n_max: int) -> list[Fraction]:
    # a_n = 2^n * r_n(3, 3/2) where r is the free-cumulant sequence of the
    # (3, 3/2) family; the closed R expansion lives in the series module.
    from . import series

    if n_max == 0:
        return [Fraction(1)]
    r = series.r_series_closed(3, Fraction(3, 2), n_max)
    out = [Fraction(1)]
    for n in range(1, n_max + 1):
        out.append(Fraction(2) ** n * r.coeffs[n])
    return out


def a220910_table(n_max: int, method: str = "recurrence") -> SeqTable:
    """A220910 prefix a_0..a_{n_max} by the requested method.

    Methods: ``recurrence`` (three-term, exact division by n), ``closed_a``
    and ``closed_b`` (two independent finite closed sums), ``cumulant``
    (2^n times the free cumulants of the (3, 3/2) family).
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if method not in _A220910_METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {_A220910_METHODS}")
    if method == "recurrence":
        values = _a220910_recurrence(n_max)
    elif method == "closed_a":
        values = [_a220910_closed_a(n) for n in range(n_max + 1)]
    elif method == "closed_b":
        values = [_a220910_closed_b(n) for n in range(n_max + 1)]
    else:
        values = _a220910_cumulant(n_max)
    return SeqTable(label="A220910", offset=0, values=values)


def a220910(n: int, method: str = "recurrence") -> Fraction:
    """Single term of A220910 (1, 1, 3, 14, 83, 570, ...)."""
    return a220910_table(n, method).values[n]


def ex1_table(n_max: int) -> SeqTable:
    """The sequence 1, 2, 5, 16, 64, ...: a_0 = 1 and a_n = 3^n r_n(2, 4/3) for n >= 1."""
    from . import series

    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    values = [Fraction(1)]
    if n_max >= 1:
        r = series.r_series_closed(2, Fraction(4, 3), n_max)
        for n in range(1, n_max + 1):
            values.append(Fraction(3) ** n * r.coeffs[n])
    return SeqTable(label="ex1", offset=0, values=values)


def a022558_table(n_max: int) -> SeqTable:
    """A022558 prefix: the forward binomial transform of the ex1 sequence."""
    return SeqTable(
        label="A022558",
        offset=0,
        values=binomial_transform(ex1_table(n_max), "forward").values,
    )


def necessary_gap(params: Params) -> Fraction:
    """a_2 - a_1^2 for the deformed family, as the polynomial 2p - pt - t^2 + 3t - 3.

    Nonnegativity of this gap is necessary for the moment sequence to be
    positive definite.  The polynomial is cross-checked against the direct
    a_2 - a_1^2 evaluation.
    """
    p, t = params.require_exact("necessary_gap")
    poly = 2 * p - p * t - t * t + 3 * t - 3
    direct = deformed_fuss(params, 2) - deformed_fuss(params, 1) ** 2
    if poly != direct:
        raise InconsistencyError(f"necessary_gap({p},{t}): {poly} != {direct}")
    return poly


def catalan_table(n_max: int) -> SeqTable:
    """Catalan numbers as a SeqTable (the t = 1, p = 2 slice of the family)."""
    values = [raney(2, 1, n) for n in range(n_max + 1)]
    return SeqTable(label="catalan", offset=0, values=values)
