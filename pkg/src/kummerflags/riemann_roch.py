"""Riemann-Roch spaces ``L(a P_inf + sum_k beta_k Q_k)`` on Kummer curves.

For divisors supported on ``P_inf`` and the rational ramified places the
space splits as ``sum_j y^j L_x(j)``, where ``L_x(j)`` is a Riemann-Roch
space of the rational function field:

    n_k(j) = floor((beta_k + j) / m)
    bound(j) = floor((a - j r) / m) + sum_k n_k(j)
    L_x(j) = span{ x^d / prod_k (x - a_k)^{n_k(j)} : 0 <= d <= bound(j) }

The basis function with index ``(j, d)`` has pole order
``m (d - sum_k n_k(j)) + j r`` at ``P_inf``; distinct ``j`` give distinct
residues mod ``m`` because ``gcd(m, r) = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NonZeroDegree
from .kummer_curve import CurveSpec, Divisor, MonomialFunction, Place


def _full_beta(curve: CurveSpec, beta: Sequence[int]) -> tuple[int, ...]:
    beta = tuple(int(b) for b in beta)
    if len(beta) > len(curve.roots):
        raise ValueError("beta has more entries than rational ramified places")
    return beta + (0,) * (len(curve.roots) - len(beta))


def _shifts(curve: CurveSpec, beta: tuple[int, ...], j: int) -> list[int]:
    return [(b + j) // curve.m for b in beta]


def _bound(curve: CurveSpec, a: int, beta, j: int) -> int:
    return (a - j * curve.r) // curve.m + sum(_shifts(curve, beta, j))


def rr_dim(curve: CurveSpec, a: int, beta: Sequence[int]) -> int:
    """``l(a P_inf + G_beta)``; ``beta`` is indexed by the curve's rational roots."""
    beta = _full_beta(curve, beta)
    return sum(max(0, _bound(curve, a, beta, j) + 1) for j in range(curve.m))


def pole_function(curve: CurveSpec, a: int, beta: Sequence[int]) -> MonomialFunction | None:
    """The basis function of exact pole order ``a``, or None when ``a`` is not in H_beta."""
    beta = _full_beta(curve, beta)
    m, r = curve.m, curve.r
    j = (a * pow(r, -1, m)) % m
    n = _shifts(curve, beta, j)
    d = (a - j * r) // m + sum(n)
    if d < 0:
        return None
    return MonomialFunction.basis_element(curve, d, [-v for v in n], j)


@dataclass
class RRBasis:
    a: int
    beta: tuple[int, ...]
    functions: list[MonomialFunction]
    pole_orders: list[int]

    @property
    def dim(self) -> int:
        return len(self.functions)

    @property
    def terms(self) -> list[MonomialFunction]:
        return self.functions


def rr_basis(curve: CurveSpec, a: int, beta: Sequence[int]) -> RRBasis:
    """Monomial basis of ``L(a P_inf + G_beta)`` sorted by pole order at infinity."""
    beta = _full_beta(curve, beta)
    m, r = curve.m, curve.r
    items = []
    for j in range(m):
        n = _shifts(curve, beta, j)
        for d in range(_bound(curve, a, beta, j) + 1):
            pole = m * (d - sum(n)) + j * r
            items.append((pole, MonomialFunction.basis_element(curve, d, [-v for v in n], j)))
    items.sort(key=lambda t: t[0])
    return RRBasis(a, beta, [f for _, f in items], [p for p, _ in items])


def h_set(curve: CurveSpec, beta: Sequence[int], window: tuple[int, int]) -> list[int]:
    """Elements of H_beta (pole numbers where l jumps) inside ``[lo, hi]``."""
    lo, hi = window
    return [a for a in range(lo, hi + 1) if pole_function(curve, a, beta) is not None]


def is_principal(curve: CurveSpec, div: Divisor, normalize_at: Place | None = None
                 ) -> MonomialFunction | None:
    """A function with divisor ``div``, or None if ``div`` is not principal.

    ``div`` must be supported on ``P_inf`` and the rational ramified places.
    When ``normalize_at`` is given the witness takes the value 1 there.
    """
    if div.degree != 0:
        raise NonZeroDegree(f"divisor has degree {div.degree}")
    beta = [0] * len(curve.roots)
    a = 0
    for place, c in div.coeffs.items():
        if place.is_infinity:
            a = -c
        elif place.is_ramified:
            beta[place.index] = -c
        else:
            raise ValueError("divisor must be supported on P_inf and ramified places")
    if rr_dim(curve, a, beta) != 1:
        return None
    (z,) = rr_basis(curve, a, beta).functions
    if normalize_at is not None:
        z = z.scale(curve.F.sinv(z(normalize_at)))
    return z
