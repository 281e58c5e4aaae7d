"""Evaluation codes ``C_L(D, a P_inf + G_beta)`` and building bases of their flags."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import HStarNotReached, InternalRankFailure, PoleAtPlace
from .finite_field import DTYPE, FieldSpec, RowReducer, rref
from .kummer_curve import CurveSpec, MonomialFunction, Place, enumerate_places
from .riemann_roch import RRBasis, pole_function


class EvalSet:
    """Ordered evaluation places ``P_1, ..., P_n`` (never ``P_inf``)."""

    def __init__(self, curve: CurveSpec, places: Sequence[Place]):
        places = list(places)
        if len(set(places)) != len(places):
            raise ValueError("evaluation places must be pairwise distinct")
        if any(p.is_infinity for p in places):
            raise ValueError("P_inf cannot be an evaluation place")
        self.curve = curve
        self.places = places
        self.xs = np.array([p.x for p in places], dtype=DTYPE)
        self.ys = np.array([p.y for p in places], dtype=DTYPE)
        self.ram = np.array([p.index if p.is_ramified else -1 for p in places])

    @classmethod
    def complement(cls, curve: CurveSpec, scope: Sequence[int] = (), ordering="default") -> "EvalSet":
        """All rational places except ``P_inf`` and the ramified places in ``scope``."""
        skip = set(scope)
        places = [p for p in enumerate_places(curve, ordering)
                  if not p.is_infinity and not (p.is_ramified and p.index in skip)]
        return cls(curve, places)

    @property
    def n(self) -> int:
        return len(self.places)

    def __len__(self) -> int:
        return self.n

    def evaluate(self, func: MonomialFunction) -> np.ndarray:
        return func.evaluate_arrays(self.xs, self.ys, self.ram)

    def extended(self, extra: Sequence[Place]) -> "EvalSet":
        return EvalSet(self.curve, self.places + list(extra))


@dataclass
class Code:
    """A linear code stored by its (canonical) RREF generator matrix."""

    generators: np.ndarray
    n: int

    @property
    def dim(self) -> int:
        return self.generators.shape[0]

    def __eq__(self, other) -> bool:
        return (isinstance(other, Code) and self.n == other.n
                and self.generators.shape == other.generators.shape
                and bool(np.array_equal(self.generators, other.generators)))

    @classmethod
    def span(cls, F: FieldSpec, vectors, n: int | None = None) -> "Code":
        V = np.asarray(vectors, dtype=DTYPE)
        if n is None:
            n = V.shape[-1]
        V = V.reshape(-1, n)
        if V.shape[0] == 0:
            return cls(np.zeros((0, n), dtype=DTYPE), n)
        R, _ = rref(F, V)
        return cls(R, n)


def _expand_beta(curve: CurveSpec, scope: Sequence[int], beta: Sequence[int]) -> list[int]:
    if len(scope) != len(beta):
        raise ValueError("beta must have one entry per place in scope")
    full = [0] * len(curve.roots)
    for k, b in zip(scope, beta):
        full[k] = int(b)
    return full


def _check_disjoint(D: EvalSet, scope: Sequence[int], beta: Sequence[int]):
    for k, b in zip(scope, beta):
        if np.any(D.ram == k):
            raise PoleAtPlace(f"Q{k + 1} is in the support of G and in D")


def encode(curve: CurveSpec, basis: RRBasis, D: EvalSet) -> Code:
    """RREF of the evaluation matrix of ``basis`` on ``D``."""
    for k, b in enumerate(basis.beta):
        if b > 0 and np.any(D.ram == k):
            raise PoleAtPlace(f"Q{k + 1} is in the support of G and in D")
    if not basis.functions:
        return Code(np.zeros((0, D.n), dtype=DTYPE), D.n)
    M = np.vstack([D.evaluate(f) for f in basis.functions])
    return Code.span(curve.F, M, D.n)


@dataclass
class BuildingBasis:
    vectors: np.ndarray
    witnesses: list[MonomialFunction]
    a_values: list[int]

    @property
    def n(self) -> int:
        return self.vectors.shape[1]


def _sweep_cap(curve: CurveSpec, beta: Sequence[int], n: int) -> int:
    return n + 2 * curve.g + abs(sum(beta)) + curve.m


def building_basis(curve: CurveSpec, scope: Sequence[int], beta: Sequence[int], D: EvalSet
                   ) -> BuildingBasis:
    """Sweep ``a`` upward from ``-sum(beta)`` collecting one vector per jump of the code."""
    _check_disjoint(D, scope, beta)
    full = _expand_beta(curve, scope, beta)
    F = curve.F
    n = D.n
    red = RowReducer(F, n)
    vectors, witnesses, a_values = [], [], []
    a = -sum(beta)
    cap = _sweep_cap(curve, beta, n)
    while len(a_values) < n:
        if a > cap:
            raise HStarNotReached(f"code dimension stuck at {len(a_values)} < {n} up to a = {cap}")
        f = pole_function(curve, a, full)
        if f is not None:
            v = D.evaluate(f)
            if red.feed(v):
                vectors.append(v)
                witnesses.append(f)
                a_values.append(a)
        a += 1
    V = np.vstack(vectors) if vectors else np.zeros((0, n), dtype=DTYPE)
    if len(vectors) != n:
        raise InternalRankFailure("building basis incomplete")
    return BuildingBasis(V, witnesses, a_values)


def h_star(curve: CurveSpec, scope: Sequence[int], beta: Sequence[int], D: EvalSet) -> list[int]:
    return building_basis(curve, scope, beta, D).a_values


def code_at(curve: CurveSpec, scope: Sequence[int], beta: Sequence[int], a: int, D: EvalSet) -> Code:
    """``C_L(D, a P_inf + G_beta)`` computed directly from the full Riemann-Roch basis."""
    from .riemann_roch import rr_basis

    return encode(curve, rr_basis(curve, a, _expand_beta(curve, scope, beta)), D)
