"""Self-orthogonal flags in characteristic 2.

Starting from an isometry-dual flag ``S_beta`` with vector ``x``, the
function ``f_y`` interpolating ``y_i = 1/sqrt(x_1 x_i)`` on ``D`` (and 0
on the ``Q`` places) has, when its divisor is ``sum u_i Q_i - u P``, the
property that ``S_{beta + (u_i)}`` is self-orthogonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (ConstructionFailed, NotIsometryDual, OddCharacteristic,
                     PreconditionViolated, SingularSystem)
from .evalcode import EvalSet, building_basis
from .finite_field import DTYPE, FieldSpec, solve
from .flag import build_flag, verify_isometry_pair
from .isodual import isodual
from .kummer_curve import CurveSpec, MonomialFunction, Place

EXACT = "ExactDivisor"
DIRECT = "DirectCheck"


@dataclass
class SelfOrthResult:
    f_y: MonomialFunction
    u: int
    u_vec: tuple[int, ...]
    beta_prime: tuple[int, ...]
    verified: bool
    verification_mode: str
    x: np.ndarray | None = None
    y: np.ndarray | None = None


def sqrt_target_vector(F: FieldSpec, x, t: int) -> np.ndarray:
    """``(1/sqrt(x_1 x_i))_i`` followed by ``t`` zeros."""
    if F.p != 2:
        raise OddCharacteristic("square roots of the isometry vector need characteristic 2")
    x = np.asarray(x, dtype=DTYPE)
    if np.any(x == 0):
        raise ValueError("isometry vector has a zero coordinate")
    y = F.inv(F.sqrt(F.mul(x, x[0])))
    return np.concatenate([y, np.zeros(t, dtype=DTYPE)])


def interpolate_one_point(curve: CurveSpec, places: EvalSet | Sequence[Place], y
                          ) -> MonomialFunction:
    """The unique combination of one-point basis functions taking the values ``y``."""
    S = places if isinstance(places, EvalSet) else EvalSet(curve, places)
    y = np.asarray(y, dtype=DTYPE)
    if y.shape != (S.n,):
        raise ValueError("y must have one value per place")
    bb = building_basis(curve, (), (), S)
    try:
        lam = solve(curve.F, bb.vectors.T, y)
    except ValueError as e:
        raise SingularSystem(str(e)) from e
    f = MonomialFunction.zero(curve)
    for c, w in zip(lam.tolist(), bb.witnesses):
        if c:
            f = f + w.scale(c)
    return f


def verify_divisor_shape(curve: CurveSpec, f: MonomialFunction, scope: Sequence[int]
                         ) -> tuple[int, tuple[int, ...]] | None:
    """``(u, (u_i))`` if ``(f) = sum u_i Q_i - u P_inf`` over ``scope``, else None.

    Valuations at ``P_inf`` and at the ramified places are exact.  Since
    ``f`` has ``u`` zeros in total, ``sum u_i = u`` rules out zeros
    elsewhere; the evaluation check at the other rational places is a
    cheap second guard.
    """
    if f.is_zero():
        return None
    u = -f.valuation_inf()
    us = tuple(f.valuation_ram(k) for k in scope)
    if u < 1 or any(v < 0 for v in us):
        return None
    others = [k for k in range(len(curve.roots)) if k not in scope]
    if any(f.valuation_ram(k) != 0 for k in others):
        return None
    if sum(us) != u:
        return None
    ram = [curve.ramified_place(k) for k in others]
    aff = [Place.affine(x, yy) for x, yy in curve.affine_points()]
    rest = EvalSet(curve, ram + aff)
    if rest.n and np.any(rest.evaluate(f) == 0):
        return None
    return u, us


def construct_self_orthogonal(curve: CurveSpec, scope: Sequence[int], beta: Sequence[int],
                              D: EvalSet, seed: int = 0) -> SelfOrthResult:
    """Run the square-root interpolation pipeline on ``S_beta``."""
    F = curve.F
    if F.p != 2:
        raise OddCharacteristic("the construction needs characteristic 2")
    if D.n < 2 * curve.g + 2:
        raise PreconditionViolated(f"n = {D.n} < 2g + 2 = {2 * curve.g + 2}")
    scope = tuple(scope)
    beta = tuple(int(b) for b in beta)
    rep = isodual(curve, scope, beta, D, seed=seed)
    if not rep.is_dual:
        raise NotIsometryDual(f"S_beta is not isometry-dual ({rep.status})")
    y = sqrt_target_vector(F, rep.x, len(scope))
    Dt = D.extended([curve.ramified_place(k) for k in scope])
    f_y = interpolate_one_point(curve, Dt, y)
    shape = verify_divisor_shape(curve, f_y, scope)
    if shape is not None:
        u, us = shape
        mode = EXACT
    else:
        u = max(0, -f_y.valuation_inf())
        us = tuple(max(0, f_y.valuation_ram(k)) for k in scope)
        mode = DIRECT
    beta2 = tuple(b + d for b, d in zip(beta, us))
    ones = np.ones(D.n, dtype=DTYPE)
    ok = verify_isometry_pair(build_flag(curve, scope, beta2, D), ones)
    if mode == DIRECT and not ok:
        raise ConstructionFailed(f"divisor of f_y has the wrong shape and S_{beta2} is not self-orthogonal")
    return SelfOrthResult(f_y, u, us, beta2, ok, mode, rep.x, y)
