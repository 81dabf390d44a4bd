"""Post-processing of Hilbert-function tables.

A table of dimensions dim M_d, d = 0..d_max, is turned into its quadratic
Hilbert polynomial, its postulation number and the numerator p(t) of its
Hilbert series p(t)/(1 - t)^3.  Everything is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NotStabilized

__all__ = [
    "HilbertData",
    "fit_hp",
    "hp_value",
    "postulation",
    "series_numerator",
    "expand_series",
    "hilbert_data",
    "format_hp",
]

HP = tuple[Fraction, Fraction, Fraction]


def _third_difference(v: Sequence[int], k: int) -> int:
    return v[k] - 3 * v[k - 1] + 3 * v[k - 2] - v[k - 3]


def fit_hp(values: Sequence[int], stabilization_window: int = 4) -> HP:
    """Quadratic a d^2 + b d + c through the last three values.

    The last ``stabilization_window + 1`` values must have vanishing third
    difference, otherwise the table has not reached its polynomial regime.
    """
    w = stabilization_window
    n = len(values)
    if n < w + 3:
        raise NotStabilized(f"need at least {w + 3} values to fit, got {n}")
    for k in range(n - w, n):
        if k >= 3 and _third_difference(values, k) != 0:
            raise NotStabilized(
                f"third difference is nonzero at d={k}; extend the degree range"
            )
    d0 = n - 3
    y0, y1, y2 = (Fraction(values[d0 + i]) for i in range(3))
    # Newton form on d0, d0+1, d0+2
    a = (y2 - 2 * y1 + y0) / 2
    b1 = y1 - y0  # = a(2 d0 + 1) + b
    b = b1 - a * (2 * d0 + 1)
    c = y0 - a * d0 * d0 - b * d0
    return (a, b, c)


def hp_value(hp: HP, d: int) -> Fraction:
    a, b, c = hp
    return a * d * d + b * d + c


def postulation(values: Sequence[int], hp: HP) -> int:
    """Largest d in range with values[d] != hp(d), or -1."""
    for d in range(len(values) - 1, -1, -1):
        if hp_value(hp, d) != values[d]:
            return d
    return -1


def series_numerator(values: Sequence[int], hp: HP | None = None) -> list[int]:
    """Coefficients of p(t) = (1 - t)^3 * sum values[d] t^d, truncated.

    If ``hp`` is given the table is first extended by three Hilbert-polynomial
    values, so that trailing numerator coefficients are computed rather than
    assumed.  The tail of the computed coefficients must vanish.
    """
    v = list(values)
    if hp is not None:
        for d in range(len(v), len(v) + 3):
            x = hp_value(hp, d)
            if x.denominator != 1:
                raise NotStabilized("Hilbert polynomial is not integer-valued")
            v.append(int(x))
    get = lambda k: v[k] if k >= 0 else 0  # noqa: E731
    p = [get(k) - 3 * get(k - 1) + 3 * get(k - 2) - get(k - 3) for k in range(len(v))]
    last = max((k for k, c in enumerate(p) if c), default=-1)
    if last >= len(v) - 3:
        raise NotStabilized(
            "series numerator has not terminated within the computed range; extend it"
        )
    return p[: last + 1]


def expand_series(p: Sequence[int], n_terms: int) -> list[int]:
    """First ``n_terms`` coefficients of p(t) / (1 - t)^3."""
    out = []
    for d in range(n_terms):
        out.append(sum(c * (d - k + 2) * (d - k + 1) // 2 for k, c in enumerate(p) if k <= d))
    return out


@dataclass(frozen=True)
class HilbertData:
    values: tuple[int, ...]
    hp: HP
    postulation: int
    series_numerator: tuple[int, ...]

    def hp_string(self) -> str:
        return format_hp(self.hp)


def hilbert_data(values: Sequence[int], stabilization_window: int = 4) -> HilbertData:
    hp = fit_hp(values, stabilization_window)
    return HilbertData(
        tuple(values), hp, postulation(values, hp), tuple(series_numerator(values, hp))
    )


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_hp(hp: HP) -> str:
    """Human-readable quadratic, e.g. ``4d^2 - 5d + 5``."""
    parts = []
    for coef, mono in zip(hp, ("d^2", "d", "")):
        if coef == 0:
            continue
        sign = "-" if coef < 0 else "+"
        mag = abs(coef)
        body = _frac(mag) if (mono == "" or mag != 1) else ""
        parts.append((sign, body + mono))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s
