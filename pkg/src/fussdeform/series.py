"""Truncated power series over exact rationals, and the transform layer.

A :class:`TruncSeries` is an eager, dense jet: a tuple of Fraction
coefficients c_0..c_N.  Binary operations truncate to the shorter order, so
every identity in this module is an identity of jets.  On top of the generic
engine (multiply, divide, compose, revert, sqrt1p, pow1p) sit the domain
series: the Fuss generating function B_p, the moment series of the deformed
family, free cumulants, and the S- and R-transforms with their closed forms.

Everything here is exact; floats never enter.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import InconsistencyError
from .exact_seq import Params, RationalLike, parse_rational, rational_str, raney

__all__ = [
    "TruncSeries",
    "CumulantTable",
    "ClosedFormFallbackWarning",
    "compose",
    "revert",
    "sqrt1p",
    "pow1p",
    "bp_series",
    "moment_series",
    "cumulants_from_moments",
    "moments_from_cumulants",
    "cumulant_jet",
    "s_series_from_moments",
    "s_series_closed",
    "r_series_closed",
    "gf_closed_expand",
    "GF_NAMES",
]


class ClosedFormFallbackWarning(RuntimeWarning):
    """A closed form is singular at the requested parameters; a generic route ran instead."""


@dataclass(frozen=True)
class TruncSeries:
    """Jet c_0 + c_1 z + ... + c_N z^N with exact rational coefficients."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("a jet needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(parse_rational(c) for c in self.coeffs))

    # -- construction -------------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[RationalLike], order: Optional[int] = None) -> "TruncSeries":
        cs = [parse_rational(c) for c in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError("order must be nonnegative")
            cs = cs[: order + 1] + [Fraction(0)] * max(0, order + 1 - len(cs))
        return cls(tuple(cs))

    @classmethod
    def constant(cls, value: RationalLike, order: int) -> "TruncSeries":
        return cls.from_coeffs([value], order)

    @classmethod
    def identity(cls, order: int) -> "TruncSeries":
        """The jet of z itself."""
        if order < 1:
            raise ValueError("the identity jet needs order >= 1")
        return cls.from_coeffs([0, 1], order)

    # -- basic queries ------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, n: int) -> Fraction:
        if not 0 <= n <= self.order:
            raise IndexError(f"coefficient {n} outside jet of order {self.order}")
        return self.coeffs[n]

    def truncate(self, order: int) -> "TruncSeries":
        if order < 0:
            raise ValueError("order must be nonnegative")
        if order >= self.order:
            return TruncSeries.from_coeffs(self.coeffs, order)
        return TruncSeries(self.coeffs[: order + 1])

    # -- ring operations (truncate to the shorter operand) ------------------

    @staticmethod
    def _coerce(other: Union["TruncSeries", RationalLike], order: int) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return other
        return TruncSeries.constant(parse_rational(other), order)

    def __add__(self, other: Union["TruncSeries", RationalLike]) -> "TruncSeries":
        o = self._coerce(other, self.order)
        n = min(self.order, o.order)
        return TruncSeries(tuple(self.coeffs[i] + o.coeffs[i] for i in range(n + 1)))

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Union["TruncSeries", RationalLike]) -> "TruncSeries":
        return self + (-self._coerce(other, self.order))

    def __rsub__(self, other: RationalLike) -> "TruncSeries":
        return self._coerce(other, self.order) + (-self)

    def __mul__(self, other: Union["TruncSeries", RationalLike]) -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            c = parse_rational(other)
            return TruncSeries(tuple(ci * c for ci in self.coeffs))
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i, ci in enumerate(self.coeffs[: n + 1]):
            if ci == 0:
                continue
            for j in range(0, n + 1 - i):
                cj = other.coeffs[j]
                if cj:
                    out[i + j] += ci * cj
        return TruncSeries(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other: Union["TruncSeries", RationalLike]) -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            c = parse_rational(other)
            if c == 0:
                raise ZeroDivisionError("division of a jet by zero")
            return self * (Fraction(1) / c)
        if other.coeffs[0] == 0:
            raise ValueError(
                "jet division needs a nonzero constant term; strip z factors explicitly"
            )
        n = min(self.order, other.order)
        g0 = other.coeffs[0]
        out: list[Fraction] = []
        for k in range(n + 1):
            acc = self.coeffs[k]
            for j in range(1, k + 1):
                acc -= other.coeffs[j] * out[k - j]
            out.append(acc / g0)
        return TruncSeries(tuple(out))

    def __rtruediv__(self, other: RationalLike) -> "TruncSeries":
        return TruncSeries.constant(other, self.order) / self

    # -- calculus and reindexing --------------------------------------------

    def deriv(self) -> "TruncSeries":
        if self.order == 0:
            return TruncSeries((Fraction(0),))
        return TruncSeries(tuple(k * self.coeffs[k] for k in range(1, self.order + 1)))

    def shift_down(self, k: int) -> "TruncSeries":
        """Divide by z^k; requires the low-order coefficients to vanish."""
        if k < 0 or k > self.order:
            raise ValueError("shift amount outside jet order")
        if any(c != 0 for c in self.coeffs[:k]):
            raise ValueError(f"jet is not divisible by z^{k}")
        return TruncSeries(self.coeffs[k:])

    def shift_up(self, k: int) -> "TruncSeries":
        """Multiply by z^k, keeping all computed coefficients."""
        if k < 0:
            raise ValueError("shift amount must be nonnegative")
        return TruncSeries((Fraction(0),) * k + self.coeffs)

    # -- serialization ------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "order": self.order,
            "mode": "exact",
            "coeffs": [rational_str(c) for c in self.coeffs],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2) + "\n"


def compose(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    """Jet of f(g(z)); requires g(0) = 0 so the composition is well defined."""
    if g.coeffs[0] != 0:
        raise ValueError("composition needs an inner jet with zero constant term")
    n = min(f.order, g.order)
    g = g.truncate(n)
    acc = TruncSeries.constant(f.coeffs[n], n)
    for k in range(n - 1, -1, -1):
        acc = acc * g + f.coeffs[k]
    return acc


def revert(f: TruncSeries) -> TruncSeries:
    """Compositional inverse jet: g with f(g(z)) = z.  Needs c_0 = 0, c_1 != 0.

    Uses the Lagrange inversion coefficients g_n = [w^{n-1}] (w / f(w))^n / n,
    with (w/f)^n accumulated by repeated jet multiplication.
    """
    if f.coeffs[0] != 0:
        raise ValueError("reversion needs a jet with zero constant term")
    if f.order < 1 or f.coeffs[1] == 0:
        raise ValueError("reversion needs a nonzero linear coefficient")
    n = f.order
    base = TruncSeries(f.coeffs[1:])  # f/z, constant term f_1 != 0
    h = TruncSeries.constant(1, n - 1) / base.truncate(n - 1)  # jet of w/f(w)
    out = [Fraction(0)] * (n + 1)
    power = h
    for k in range(1, n + 1):
        out[k] = power.coeffs[k - 1] / k
        if k < n:
            power = power * h
    g = TruncSeries(tuple(out))
    check = compose(f, g)
    if check != TruncSeries.identity(n):
        raise InconsistencyError("reversion self-check failed: f(g(z)) != z")
    return g


def sqrt1p(f: TruncSeries) -> TruncSeries:
    """Square root of a jet with constant term 1 (principal branch)."""
    if f.coeffs[0] != 1:
        raise ValueError("sqrt1p needs constant term exactly 1")
    n = f.order
    out = [Fraction(1)]
    for k in range(1, n + 1):
        acc = f.coeffs[k]
        for j in range(1, k):
            acc -= out[j] * out[k - j]
        out.append(acc / 2)
    return TruncSeries(tuple(out))


def pow1p(f: TruncSeries, alpha: RationalLike) -> TruncSeries:
    """f^alpha for a jet with constant term 1 and exact rational alpha.

    Coefficient recurrence: n g_n = sum_{j=1}^{n} (j (alpha + 1) - n) f_j g_{n-j}.
    """
    if f.coeffs[0] != 1:
        raise ValueError("pow1p needs constant term exactly 1")
    a = parse_rational(alpha)
    n = f.order
    out = [Fraction(1)]
    for k in range(1, n + 1):
        acc = Fraction(0)
        for j in range(1, k + 1):
            fj = f.coeffs[j]
            if fj:
                acc += (j * (a + 1) - k) * fj * out[k - j]
        out.append(acc / k)
    return TruncSeries(tuple(out))


@dataclass(frozen=True)
class CumulantTable:
    """Free cumulants r_1..r_N, optionally remembering the parameters they came from."""

    values: tuple[Fraction, ...]
    params: Optional[Params] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(parse_rational(v) for v in self.values))

    def __len__(self) -> int:
        return len(self.values)

    def cumulant(self, n: int) -> Fraction:
        if not 1 <= n <= len(self.values):
            raise IndexError(f"cumulant index {n} outside 1..{len(self.values)}")
        return self.values[n - 1]

    def to_json_obj(self) -> dict:
        obj: dict = {"cumulants": [rational_str(v) for v in self.values]}
        if self.params is not None and self.params.mode == "exact":
            obj["p"] = rational_str(self.params.p)  # type: ignore[arg-type]
            obj["t"] = rational_str(self.params.t)  # type: ignore[arg-type]
        return obj


def bp_series(p: RationalLike, r: RationalLike, order: int) -> TruncSeries:
    """Jet of B_p(z)^r, whose coefficients are the Raney numbers raney(p, r, n)."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    p = parse_rational(p)
    r = parse_rational(r)
    return TruncSeries(tuple(raney(p, r, n) for n in range(order + 1)))


def moment_series(params: Params, order: int) -> TruncSeries:
    """Moment jet of the deformed family: t B_p + (1 - t) B_p^2.

    The affine combination of Raney jets is cross-checked coefficientwise
    against the product B_p * B_p computed by jet multiplication, which ties
    the series engine to the exact-sequence module.
    """
    p, t = params.require_exact("moment_series")
    b1 = bp_series(p, 1, order)
    b2_product = b1 * b1
    b2_raney = bp_series(p, 2, order)
    if b2_product != b2_raney:
        raise InconsistencyError(
            f"B_{p}^2 jet disagrees between multiplication and the Raney formula"
        )
    return t * b1 + (1 - t) * b2_raney


def cumulants_from_moments(m: TruncSeries) -> CumulantTable:
    """Free cumulants r_1..r_N from a moment jet with m_0 = 1.

    Solves 1 + R(z M(z)) = M(z) for the jet of R: revert u = z M(z), then
    compose M - 1 with the reverted jet.
    """
    if m.coeffs[0] != 1:
        raise ValueError("cumulants_from_moments needs a moment jet with m_0 = 1")
    n = m.order
    if n < 1:
        raise ValueError("need at least order 1 to extract a cumulant")
    u = m.shift_up(1).truncate(n)  # z * M(z), order n
    inv = revert(u)
    r = compose(m - 1, inv)
    if r.coeffs[0] != 0:
        raise InconsistencyError("cumulant jet has a nonzero constant term")
    return CumulantTable(values=tuple(r.coeffs[1:]))


def cumulant_jet(table: CumulantTable, order: Optional[int] = None) -> TruncSeries:
    """The jet of R(z) = r_1 z + r_2 z^2 + ... from a cumulant table."""
    n = len(table.values) if order is None else order
    if n > len(table.values):
        raise ValueError("requested order exceeds the stored cumulants")
    return TruncSeries((Fraction(0),) + table.values[:n])


def moments_from_cumulants(table: CumulantTable) -> TruncSeries:
    """Moment jet m_0..m_N from cumulants r_1..r_N (inverse of cumulants_from_moments).

    Reverts v = z / (1 + R(z)) and reads the moments off the inverse jet of
    z M(z).
    """
    n = len(table.values)
    if n < 1:
        raise ValueError("need at least one cumulant")
    one_plus = cumulant_jet(table) + 1  # 1 + R(z), order n
    v = (1 / one_plus).shift_up(1)  # z / (1 + R(z)), order n + 1
    u = revert(v)  # jet of z M(z) to order n + 1
    m = TruncSeries(u.coeffs[1:])  # moments m_0..m_n
    if m.coeffs[0] != 1:
        raise InconsistencyError("moment jet reconstruction lost the normalization")
    return m


def s_series_from_moments(m: TruncSeries) -> TruncSeries:
    """S-transform jet from a moment jet: S(w) = (1 + w)/w * revert(M - 1).

    Needs m_0 = 1 and m_1 != 0.  The result has order one less than the input.
    """
    if m.coeffs[0] != 1:
        raise ValueError("s_series_from_moments needs m_0 = 1")
    if m.order < 2 or m.coeffs[1] == 0:
        raise ValueError("s_series_from_moments needs m_1 != 0 and order >= 2")
    chi = revert(m - 1)
    ratio = chi.shift_down(1)  # chi / w, constant term 1/m_1
    one_plus_w = TruncSeries.from_coeffs([1, 1], ratio.order)
    return one_plus_w * ratio


def s_series_closed(params: Params, order: int) -> TruncSeries:
    """Closed-form S-transform jet of the deformed family.

    S(w) = (1+w)^(1-p) * h(w)^p / ((2 - t) d(w)) with
    q = sqrt(1 + 4 (1-t) w / (2-t)^2), h = 1 + (2-t)(q-1)/2, d = (q+1)/2.
    Undefined at t = 2 (the family loses its first moment there).
    """
    p, t = params.require_exact("s_series_closed")
    if t == 2:
        raise ValueError("the closed S-transform is singular at t = 2")
    if order < 0:
        raise ValueError("order must be nonnegative")
    a = 4 * (1 - t) / (2 - t) ** 2
    q = sqrt1p(TruncSeries.from_coeffs([1, a], order))
    h = 1 + Fraction(2 - t, 2) * (q - 1)
    d = (q + 1) / 2
    one_plus_w = TruncSeries.from_coeffs([1, 1], order)
    s = pow1p(one_plus_w, 1 - p) * pow1p(h, p) / d / (2 - t)
    return s


def r_series_closed(p: RationalLike, t: RationalLike, order: int) -> TruncSeries:
    """Closed-form R-transform jet for p = 2 or p = 3.

    p = 2, t = 1 is the Catalan case R = z/(1-z).  The p = 3 closed form has
    a denominator 2(t - 1 + z)^2 whose constant vanishes at t = 1; there the
    function falls back to the generic moment route and emits a
    ClosedFormFallbackWarning.
    """
    p = parse_rational(p)
    t = parse_rational(t)
    if order < 1:
        raise ValueError("order must be at least 1")
    if p == 2:
        if t == 1:
            return TruncSeries((Fraction(0),) + (Fraction(1),) * order)
        rad = sqrt1p(TruncSeries.from_coeffs([1, 2 - 4 * t, 1], order))
        front = TruncSeries.from_coeffs([t - 1, -1], order)
        num = TruncSeries.from_coeffs([1 - t, 3 * t - 2, -1], order) + front * rad
        r = num / (2 * (t - 1))
    elif p == 3:
        if t == 1:
            warnings.warn(
                "closed R-transform is singular at (p, t) = (3, 1); "
                "falling back to the moment route",
                ClosedFormFallbackWarning,
                stacklevel=2,
            )
            table = cumulants_from_moments(moment_series(Params.exact(3, 1), order))
            return cumulant_jet(table)
        rad = sqrt1p(TruncSeries.from_coeffs([1, -4 * t], order))
        num = (
            TruncSeries.from_coeffs([-((t - 1) ** 2), 4 - 7 * t + 4 * t * t, -2], order)
            + TruncSeries.from_coeffs([(1 - t) ** 2, -t], order) * rad
        )
        den = TruncSeries.from_coeffs(
            [2 * (t - 1) ** 2, 4 * (t - 1), 2], order
        )
        r = num / den
    else:
        raise ValueError("closed R-transform is implemented for p in {2, 3} only")
    if r.coeffs[0] != 0:
        raise InconsistencyError("closed R jet has a nonzero constant term")
    return r


def _poly_product(*factors: Sequence[RationalLike]) -> list[Fraction]:
    out = [Fraction(1)]
    for poly in factors:
        poly = [parse_rational(c) for c in poly]
        new = [Fraction(0)] * (len(out) + len(poly) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(poly):
                new[i + j] += a * b
        out = new
    return out


def _gf_ex1(order: int) -> TruncSeries:
    # (1 + 18 z - 27 z^2 + sqrt((1 - z)(1 - 9 z)^3)) / 2
    inner = _poly_product([1, -1], [1, -9], [1, -9], [1, -9])
    rad = sqrt1p(TruncSeries.from_coeffs(inner, order))
    return (TruncSeries.from_coeffs([1, 18, -27], order) + rad) / 2


def _gf_a220910(order: int) -> TruncSeries:
    # (1 + 36 z + sqrt((1 - 12 z)^3)) / (2 (1 + 4 z)^2)
    inner = _poly_product([1, -12], [1, -12], [1, -12])
    rad = sqrt1p(TruncSeries.from_coeffs(inner, order))
    num = TruncSeries.from_coeffs([1, 36], order) + rad
    den = TruncSeries.from_coeffs(_poly_product([2], [1, 4], [1, 4]), order)
    return num / den


def _gf_a022558(order: int) -> TruncSeries:
    # (1 + 20 z - 8 z^2 + sqrt((1 - 8 z)^3)) / (2 (1 + z)^3)
    inner = _poly_product([1, -8], [1, -8], [1, -8])
    rad = sqrt1p(TruncSeries.from_coeffs(inner, order))
    num = TruncSeries.from_coeffs([1, 20, -8], order) + rad
    den = TruncSeries.from_coeffs(_poly_product([2], [1, 1], [1, 1], [1, 1]), order)
    return num / den


GF_NAMES = ("ex1_gf", "a220910_gf", "a022558_gf")


def gf_closed_expand(name: str, order: int) -> TruncSeries:
    """Expand one of the named algebraic generating functions as a jet.

    ``ex1_gf``      -- ordinary GF of 3^n r_n(2, 4/3) (1, 2, 5, 16, 64, ...)
    ``a220910_gf``  -- ordinary GF of A220910 (1, 1, 3, 14, 83, ...)
    ``a022558_gf``  -- ordinary GF of A022558 (1, 1, 2, 6, 23, ...)
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    if name == "ex1_gf":
        return _gf_ex1(order)
    if name == "a220910_gf":
        return _gf_a220910(order)
    if name == "a022558_gf":
        return _gf_a022558(order)
    raise ValueError(f"unknown generating function {name!r}; expected one of {GF_NAMES}")
