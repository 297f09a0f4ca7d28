"""Closed-form bound expressions and the table of published bounds."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable


def convex_max_threshold(k: int) -> int:
    """Smallest n from which convex position maximises the number of k-holes:
    2 (k-1)! C(k,4) + k - 1."""
    if k < 4:
        raise ValueError("k must be at least 4")
    return 2 * factorial(k - 1) * comb(k, 4) + k - 1


def khole_t_coefficient(n: int, k: int) -> Fraction:
    """Coefficient of T in :func:`khole_upper_expression`."""
    return Fraction(factorial(k - 1), 2) * comb(n - 3, k - 4) - Fraction(comb(n - 3, k - 3), comb(k, 3))


def khole_upper_expression(n: int, k: int, T: int) -> Fraction:
    """C(n,k) + ((k-1)!/2 C(n-3,k-4) - C(n-3,k-3)/C(k,3)) T.

    T is the number of triangles of the set with a point inside.
    """
    if not n >= k >= 4:
        raise ValueError("need n >= k >= 4")
    if T < 0:
        raise ValueError("T must be non-negative")
    return comb(n, k) + khole_t_coefficient(n, k) * T


def dc_khole_lower_factor(n: int, k: int) -> Fraction:
    """C((n-4)/2, (n-k)/2) * (n-k+2)/2 for the double chain; the exponential
    factor in k is left out."""
    if n % 2 or (n - k) % 2:
        raise ValueError("parity mismatch: need n even and n - k even")
    if not 4 <= k <= n:
        raise ValueError("need 4 <= k <= n")
    return comb((n - 4) // 2, (n - k) // 2) * Fraction(n - k + 2, 2)


@dataclass(frozen=True)
class Bound:
    """One printed bound. ``value(n)`` drops any o()/O() term; when such a term
    exists ``informational`` is true and comparisons are not gating."""
    quantity: str
    relation: str               # ">=", "<=" or "=="
    text: str
    value: Callable[[int], Fraction] | None
    error_term: str | None = None

    @property
    def informational(self) -> bool:
        return self.error_term is not None or self.value is None

    def evaluate(self, n: int) -> Fraction:
        if self.value is None:
            raise ValueError(f"{self.text} has no evaluable main term")
        return Fraction(self.value(n))

    def check(self, n: int, measured) -> bool:
        v = self.evaluate(n)
        return {">=": measured >= v, "<=": measured <= v, "==": measured == v}[self.relation]


@dataclass(frozen=True)
class BoundTable:
    k: int
    rows: tuple

    def get(self, quantity: str, relation: str) -> Bound:
        for b in self.rows:
            if b.quantity == quantity and b.relation == relation:
                return b
        raise KeyError((quantity, relation))


F = Fraction


def _poly(*coeffs):
    """coeffs from the highest power of n down to the constant."""
    def f(n):
        v = F(0)
        for c in coeffs:
            v = v * n + F(c)
        return v
    return f


def _falling(k):
    return lambda n: F(factorial(n), factorial(n - k + 1))


def _binom(k):
    return lambda n: F(comb(n, k))


_ROWS = {
    3: (
        Bound("convex_holes_min", ">=", "n^2 - 32/7 n + 22/7", _poly(1, F(-32, 7), F(22, 7))),
        Bound("convex_holes_min", "<=", "1.6196 n^2 + o(n^2)", _poly(F("1.6196"), 0, 0), "o(n^2)"),
    ),
    4: (
        Bound("convex_holes_min", ">=", "n^2/2 - 9/4 n - o(n)", _poly(F(1, 2), F(-9, 4), 0), "o(n)"),
        Bound("convex_holes_min", "<=", "1.9397 n^2 + o(n^2)", _poly(F("1.9397"), 0, 0), "o(n^2)"),
        Bound("nonconvex_holes_max", "<=", "n^3/2 - O(n^2)", _poly(F(1, 2), 0, 0, 0), "O(n^2)"),
        Bound("nonconvex_holes_max", ">=", "n^3/2 - O(n^2 log n)", _poly(F(1, 2), 0, 0, 0), "O(n^2 log n)"),
        Bound("general_holes_min", ">=", "5/2 n^2 - O(n)", _poly(F(5, 2), 0, 0), "O(n)"),
        Bound("general_holes_max", "==", "C(n,4)", _binom(4)),
        Bound("convex_gons_min", "==", "cr(n)", None),
        Bound("nonconvex_gons_max", "==", "3 C(n,4) - 3 cr(n)", None),
        Bound("general_gons_min", "==", "C(n,4)", _binom(4)),
        Bound("general_gons_max", "==", "3 C(n,4) - 2 cr(n)", None),
    ),
    5: (
        Bound("convex_holes_min", ">=", "3n/4 - o(n)", _poly(F(3, 4), 0), "o(n)"),
        Bound("convex_holes_min", "<=", "1.0207 n^2 + o(n^2)", _poly(F("1.0207"), 0, 0), "o(n^2)"),
        Bound("nonconvex_holes_max", "<=", "n!/(n-4)!", _falling(5)),
        Bound("general_holes_min", ">=", "17 n^2 - O(n)", _poly(17, 0, 0), "O(n)"),
        Bound("general_holes_max", "==", "C(n,5)", _binom(5)),
        Bound("nonconvex_gons_max", "==", "10 C(n,5) - 2 (n-4) cr(n)", None),
        Bound("general_gons_min", "==", "C(n,5)", _binom(5)),
    ),
    6: (
        Bound("convex_holes_min", ">=", "n/229 - 4", _poly(F(1, 229), -4)),
        Bound("convex_holes_min", "<=", "0.2006 n^2 + o(n^2)", _poly(F("0.2006"), 0, 0), "o(n^2)"),
        Bound("nonconvex_holes_max", "<=", "n!/(n-5)!", _falling(6)),
        Bound("general_holes_min", ">=", "n^2 - O(n)", _poly(1, 0, 0), "O(n)"),
        Bound("general_holes_max", "==", "C(n,6)", _binom(6)),
        Bound("general_gons_min", "==", "C(n,6)", _binom(6)),
    ),
    7: (
        Bound("convex_holes_min", "==", "0 (Horton sets)", _poly(0)),
        Bound("nonconvex_holes_max", "<=", "n!/(n-6)!", _falling(7)),
        Bound("general_holes_min", ">=", "n^2 - O(n)", _poly(1, 0, 0), "O(n)"),
        Bound("general_holes_max", "==", "C(n,7)", _binom(7)),
        Bound("general_gons_min", "==", "C(n,7)", _binom(7)),
    ),
}


def published_bounds(k: int) -> BoundTable:
    if k not in _ROWS:
        raise ValueError(f"no published bounds stored for k={k}; supported: 3..7")
    return BoundTable(k, _ROWS[k])
