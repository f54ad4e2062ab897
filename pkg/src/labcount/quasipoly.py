"""Exact quasi-polynomial fitting, period detection and generating functions.

A quasi-polynomial of period ``p`` is stored as ``p`` constituent
polynomials; constituent ``j`` is a polynomial in the argument ``k`` itself
and governs every ``k`` with ``k % p == j``.  All arithmetic uses
:class:`fractions.Fraction`, so there are no tolerances anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from .errors import InputError, UsageError

Poly = tuple[Fraction, ...]


class InsufficientSamples(UsageError):
    """Not enough samples in some residue class to fit and validate."""


def _trim(coeffs: Sequence[Fraction]) -> Poly:
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c) if c else (Fraction(0),)


def poly_eval(coeffs: Sequence[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_degree(coeffs: Sequence[Fraction]) -> int:
    """Degree, with -1 for the zero polynomial."""
    c = _trim(coeffs)
    return -1 if c == (0,) else len(c) - 1


def poly_mul(a: Sequence, b: Sequence) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def interpolate(xs: Sequence[int], ys: Sequence) -> Poly:
    """Coefficients (constant term first) of the interpolating polynomial."""
    if len(xs) != len(ys) or len(set(xs)) != len(xs):
        raise UsageError("interpolation needs distinct abscissae, one per value")
    result = [Fraction(0)] * len(xs)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = poly_mul(basis, [Fraction(-xj), Fraction(1)])
                denom *= xi - xj
        scale = Fraction(yi) / denom
        for t, c in enumerate(basis):
            result[t] += scale * c
    return _trim(result)


@dataclass(frozen=True)
class QuasiPolynomial:
    period: int
    constituents: tuple[Poly, ...]
    valid_from: int = 0

    def __post_init__(self) -> None:
        if self.period < 1 or len(self.constituents) != self.period:
            raise UsageError("a quasi-polynomial needs exactly `period` constituents")
        object.__setattr__(
            self, "constituents", tuple(_trim([Fraction(c) for c in p]) for p in self.constituents)
        )

    @property
    def degree(self) -> int:
        return max(0, max(poly_degree(c) for c in self.constituents))

    def __call__(self, t: int) -> Fraction:
        return evaluate(self, t)

    def to_json(self) -> dict:
        return {
            "period": self.period,
            "valid_from": self.valid_from,
            "constituents": [[format_rational(c) for c in p] for p in self.constituents],
        }

    @classmethod
    def from_json(cls, data: dict) -> "QuasiPolynomial":
        return cls(
            int(data["period"]),
            tuple(tuple(parse_rational(c) for c in p) for p in data["constituents"]),
            int(data.get("valid_from", 0)),
        )

    def reduced(self) -> "QuasiPolynomial":
        """The same function written with its smallest period."""
        for p in range(1, self.period + 1):
            if self.period % p == 0 and all(
                self.constituents[j] == self.constituents[j % p] for j in range(self.period)
            ):
                return QuasiPolynomial(p, self.constituents[:p], self.valid_from)
        return self


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(text) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational number: {text!r}") from None


def evaluate(qp: QuasiPolynomial, t: int) -> Fraction:
    return poly_eval(qp.constituents[t % qp.period], t)


def fit_fixed(sequence: Sequence[int], period: int, degree: int, offset: int = 0) -> Optional[QuasiPolynomial]:
    """Fit ``sequence[k]`` for ``k >= offset`` with the given period and degree.

    Each residue class is interpolated on its first ``degree + 1`` samples
    and checked on the rest.  Returns ``None`` on any mismatch and raises
    :class:`InsufficientSamples` if a class has no held-out sample.
    """
    if period < 1 or degree < 0 or offset < 0:
        raise UsageError("period must be positive; degree and offset nonnegative")
    constituents = []
    for j in range(period):
        args = [k for k in range(offset, len(sequence)) if k % period == j]
        if len(args) < degree + 2:
            raise InsufficientSamples(
                f"residue {j} mod {period} has {len(args)} samples from {offset}; need {degree + 2}"
            )
        fit_args = args[: degree + 1]
        poly = interpolate(fit_args, [sequence[k] for k in fit_args])
        for k in args[degree + 1:]:
            if poly_eval(poly, k) != sequence[k]:
                return None
        constituents.append(poly)
    return QuasiPolynomial(period, tuple(constituents), offset)


@dataclass(frozen=True)
class FitReport:
    status: str  # "found", "failed" or "inconclusive"
    period: Optional[int] = None
    degree: Optional[int] = None
    offset: Optional[int] = None
    qp: Optional[QuasiPolynomial] = None

    @property
    def found(self) -> bool:
        return self.status == "found"

    def to_json(self) -> dict:
        out: dict = {"status": self.status}
        if self.found:
            out.update(period=self.period, degree=self.degree, offset=self.offset, qp=self.qp.to_json())
        return out


def detect_minimal(
    sequence: Sequence[int], max_period: int, degree_bound: int, max_offset: int = 0
) -> FitReport:
    """Smallest (period, degree, offset), in that priority, that fits the data.

    Candidates lacking a held-out sample in some residue class are skipped;
    if every candidate is skipped the result is ``inconclusive``.
    """
    tested = False
    for p in range(1, max_period + 1):
        for d in range(degree_bound + 1):
            for k0 in range(max_offset + 1):
                try:
                    qp = fit_fixed(sequence, p, d, k0)
                except InsufficientSamples:
                    continue
                tested = True
                if qp is not None:
                    return FitReport("found", p, d, k0, qp)
    return FitReport("failed" if tested else "inconclusive")


# ---------------------------------------------------------------------------
# generating functions


@dataclass(frozen=True)
class GeneratingFunctionForm:
    """``numerator(z) / prod_i (1 - z**factors[i])``."""

    numerator: tuple[Fraction, ...]
    factors: tuple[int, ...]

    @property
    def a(self) -> int:
        return self.factors.count(1)

    @property
    def b(self) -> int:
        return self.factors.count(2)

    def denominator(self) -> list[Fraction]:
        den = [Fraction(1)]
        for d in self.factors:
            den = poly_mul(den, [Fraction(1)] + [Fraction(0)] * (d - 1) + [Fraction(-1)])
        return den

    def expand(self, terms: int) -> list[Fraction]:
        """First ``terms`` power-series coefficients."""
        den = self.denominator()
        out: list[Fraction] = []
        for n in range(terms):
            acc = self.numerator[n] if n < len(self.numerator) else Fraction(0)
            for i in range(1, min(n, len(den) - 1) + 1):
                acc -= den[i] * out[n - i]
            out.append(acc)
        return out

    def to_json(self) -> dict:
        out = {
            "numerator": [format_rational(c) for c in self.numerator],
            "denominator_factors": list(self.factors),
        }
        if set(self.factors) <= {1, 2}:
            out.update(a=self.a, b=self.b)
        return out


def to_generating_function(
    qp: QuasiPolynomial, transient: Sequence[int] = ()
) -> GeneratingFunctionForm:
    """Rational form of ``sum_k f(k) z**k``.

    Period 1 and 2 use ``(1-z)**a (1-z**2)**b`` with ``a + 2b`` minimal: the
    pole at ``z=-1`` has order ``deg Q + 1`` and the pole at ``z=1`` order
    ``deg P + 1``, where ``f(k) = P(k) + (-1)**k Q(k)``.  Longer periods use
    ``(1 - z**p)**(degree+1)``.  When ``valid_from > 0`` the values for
    ``k < valid_from`` must be supplied and end up in the numerator.
    """
    if len(transient) != qp.valid_from:
        raise UsageError(f"need {qp.valid_from} transient values, got {len(transient)}")
    qp = qp.reduced()
    if qp.period == 1:
        deg_p = poly_degree(qp.constituents[0])
        factors = (1,) * (deg_p + 1)
    elif qp.period == 2:
        even, odd = qp.constituents
        width = max(len(even), len(odd))
        even = list(even) + [Fraction(0)] * (width - len(even))
        odd = list(odd) + [Fraction(0)] * (width - len(odd))
        p_part = [(x + y) / 2 for x, y in zip(even, odd)]
        q_part = [(x - y) / 2 for x, y in zip(even, odd)]
        b = poly_degree(q_part) + 1
        a = max(0, poly_degree(p_part) + 1 - b)
        factors = (1,) * a + (2,) * b
    else:
        factors = (qp.period,) * (qp.degree + 1)

    def value(k: int) -> Fraction:
        return Fraction(transient[k]) if k < qp.valid_from else evaluate(qp, k)

    den = GeneratingFunctionForm((), factors).denominator()
    length = len(den) - 1 + qp.valid_from
    numerator = []
    for n in range(length + len(den)):
        acc = sum((den[i] * value(n - i) for i in range(min(n, len(den) - 1) + 1)), Fraction(0))
        numerator.append(acc)
    if any(numerator[length:]):
        raise UsageError("quasi-polynomial does not match the chosen denominator")
    return GeneratingFunctionForm(_trim(numerator[:length]) if length else (Fraction(0),), factors)


def common_period(periods: Sequence[int]) -> int:
    return lcm(*periods) if periods else 1
