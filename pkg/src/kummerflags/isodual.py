"""Deciding the isometry-dual property of complete flags.

A complete flag with building basis ``v_1..v_n`` is isometry-dual iff the
space of ``x`` orthogonal to every ``v_a * v_b`` with ``a + b <= n``
contains a vector of full weight; that vector is the isometry vector.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DimensionMismatch, WrongDivisorShape
from .evalcode import BuildingBasis, EvalSet, building_basis
from .finite_field import DTYPE, FieldSpec, RowReducer, rank
from .flag import verify_isometry_pair, build_flag
from .kummer_curve import CurveSpec, MonomialFunction
from .riemann_roch import h_set

DUAL = "Dual"
SELF_ORTHOGONAL = "SelfOrthogonal"
NOT_DUAL = "NotDual"
INCONCLUSIVE = "Inconclusive"

EXHAUSTIVE_LIMIT = 1 << 20
RANDOM_TRIES = 10_000
CHUNK = 256


@dataclass
class IsometryReport:
    status: str
    x: np.ndarray | None
    nullspace_dim: int
    rows_used: int
    seed: int | None = None
    nullspace: np.ndarray | None = field(default=None, repr=False)

    @property
    def is_dual(self) -> bool:
        return self.status in (DUAL, SELF_ORTHOGONAL)


def product_pairs(n: int, extra: bool = False) -> Iterator[tuple[int, int]]:
    """1-based index pairs ``a <= b`` with ``a + b <= n`` (or ``n + 1`` when ``extra``)."""
    top = n + 1 if extra else n
    for a in range(1, n + 1):
        for b in range(a, top - a + 1):
            yield a, b


def product_row_count(n: int, extra: bool = False) -> int:
    return sum(1 for _ in product_pairs(n, extra))


def product_matrix(F: FieldSpec, bb: BuildingBasis | np.ndarray, extra: bool = False,
                   chunk: int = CHUNK) -> Iterator[np.ndarray]:
    """Yield blocks of rows ``v_a * v_b`` over the symmetric index pairs."""
    V = bb.vectors if isinstance(bb, BuildingBasis) else np.asarray(bb, dtype=DTYPE)
    n = V.shape[0]
    pairs = product_pairs(n, extra)
    while True:
        block = list(itertools.islice(pairs, chunk))
        if not block:
            return
        a = np.array([p[0] - 1 for p in block])
        b = np.array([p[1] - 1 for p in block])
        yield F.mul(V[a], V[b])


def _normalize(F: FieldSpec, x: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(x)
    return F.mul(x, F.inv(x[nz[0]])) if nz.size else x


def _projective_reps(F: FieldSpec, dim: int) -> Iterator[np.ndarray]:
    """Coefficient vectors whose first nonzero entry is 1, in blocks."""
    q = F.q
    for lead in range(dim):
        tail = dim - lead - 1
        total = q ** tail
        for start in range(0, total, 1 << 14):
            idx = np.arange(start, min(total, start + (1 << 14)))
            C = np.zeros((idx.size, dim), dtype=DTYPE)
            C[:, lead] = 1
            for c in range(tail):
                C[:, dim - 1 - c] = idx % q
                idx = idx // q
            yield C


def nullspace_full_weight(F: FieldSpec, rows: Iterable[np.ndarray], n: int,
                          seed: int = 0) -> IsometryReport:
    """Null space of the streamed rows and a full-weight vector in it, if any."""
    red = RowReducer(F, n)
    used = 0
    for block in rows:
        block = np.atleast_2d(np.asarray(block, dtype=DTYPE))
        used += block.shape[0]
        red.feed(block)
    N = red.nullspace()
    dim = N.shape[0]

    def done(x, status=None):
        if x is None:
            return IsometryReport(status, None, dim, used, seed, N)
        x = _normalize(F, x)
        st = SELF_ORTHOGONAL if np.all(x == 1) else DUAL
        return IsometryReport(st, x, dim, used, seed, N)

    if dim == 0:
        return done(None, NOT_DUAL)
    if dim == 1:
        return done(N[0]) if np.all(N[0] != 0) else done(None, NOT_DUAL)
    if (F.q ** dim - 1) // (F.q - 1) <= EXHAUSTIVE_LIMIT:
        for C in _projective_reps(F, dim):
            X = F.matmul(C, N)
            hit = np.flatnonzero(np.all(X != 0, axis=1))
            if hit.size:
                return done(X[hit[0]])
        return done(None, NOT_DUAL)
    rng = np.random.default_rng(seed)
    for _ in range(RANDOM_TRIES // CHUNK + 1):
        C = rng.integers(0, F.q, size=(CHUNK, dim)).astype(DTYPE)
        X = F.matmul(C, N)
        hit = np.flatnonzero(np.all(X != 0, axis=1))
        if hit.size:
            return done(X[hit[0]])
    return done(None, INCONCLUSIVE)


def isodual(curve: CurveSpec, scope: Sequence[int], beta: Sequence[int], D: EvalSet,
            seed: int = 0, extra_rows: bool = False) -> IsometryReport:
    """Run the isometry-dual test on ``S_beta``."""
    bb = building_basis(curve, scope, beta, D)
    rep = nullspace_full_weight(curve.F, product_matrix(curve.F, bb, extra_rows), D.n, seed)
    rep.building_basis = bb
    return rep


def general_isometry_solutions(F: FieldSpec, code_bases: Sequence[tuple[int, np.ndarray]]
                               ) -> np.ndarray:
    """All ``x`` (zero coordinates allowed) with ``C_{s-i}^perp = x * C_i`` for a flag ``C_0..C_s``.

    ``code_bases[i]`` is ``(dim, generator rows)``; the flag must be nested,
    start at ``{0}``, end at the full space and satisfy
    ``dim C_i + dim C_{s-i} = n``.
    """
    s = len(code_bases) - 1
    if s < 1:
        raise DimensionMismatch("need at least C_0 and C_s")
    mats = []
    for k, B in code_bases:
        B = np.asarray(B, dtype=DTYPE)
        if B.ndim == 1:
            B = B.reshape(0 if k == 0 else 1, -1)
        if B.shape[0] != k:
            raise DimensionMismatch(f"declared dimension {k} but {B.shape[0]} generators")
        mats.append(B)
    n = max(B.shape[1] for B in mats if B.size) if any(B.size for B in mats) else 0
    if code_bases[0][0] != 0 or code_bases[s][0] != n:
        raise DimensionMismatch("flag must start at {0} and end at the full space")
    for i in range(s + 1):
        if code_bases[i][0] + code_bases[s - i][0] != n:
            raise DimensionMismatch(f"dim C_{i} + dim C_{s - i} != n")
    for i in range(1, s + 1):
        if mats[i - 1].shape[0] and rank(F, np.vstack([mats[i], mats[i - 1]])) != mats[i].shape[0]:
            raise DimensionMismatch(f"C_{i - 1} is not contained in C_{i}")
    red = RowReducer(F, n)
    for i in range(1, s):
        A, B = mats[i], mats[s - i]
        if A.shape[0] and B.shape[0]:
            red.feed(F.mul(A[:, None, :], B[None, :, :]).reshape(-1, n))
    return red.nullspace()


@dataclass
class Translation:
    beta: tuple[int, ...]
    beta_prime: tuple[int, ...]
    u: int
    u_vec: tuple[int, ...]
    tau: np.ndarray
    h_shift_ok: bool
    hstar_shift_ok: bool
    x_prediction: np.ndarray | None = None
    x_fresh: np.ndarray | None = None

    @property
    def prediction_ok(self) -> bool | None:
        if self.x_prediction is None or self.x_fresh is None:
            return None
        return bool(np.array_equal(self.x_prediction, self.x_fresh))


def translation_shape(curve: CurveSpec, f: MonomialFunction, scope: Sequence[int]
                      ) -> tuple[int, tuple[int, ...]]:
    """``(u, (u_k))`` when ``(f) = u P_inf - sum u_k Q_k`` over ``scope``; else WrongDivisorShape."""
    if f.is_zero() or not f.is_monomial():
        raise WrongDivisorShape("translation function must be a nonzero monomial")
    t = f.as_term()
    if t.j and poly_degree(curve.cofactor) > 0:
        raise WrongDivisorShape("y vanishes at ramified places that are not rational")
    u = f.valuation_inf()
    us = []
    for k in range(len(curve.roots)):
        v = f.valuation_ram(k)
        if k in scope:
            us.append(-v)
        elif v:
            raise WrongDivisorShape(f"f has valuation {v} at Q{k + 1} outside the support")
    if u < 1 or any(x < 0 for x in us):
        raise WrongDivisorShape(f"divisor is not u*P_inf - sum u_k Q_k with u >= 1 (u={u}, u_k={us})")
    return u, tuple(us)


def poly_degree(P) -> int:
    return len(P) - 1


def translate_flag(curve: CurveSpec, scope: Sequence[int], beta: Sequence[int],
                   f: MonomialFunction, D: EvalSet, x_beta=None,
                   window: tuple[int, int] | None = None, check_fresh: bool = True,
                   seed: int = 0) -> Translation:
    """Move ``S_beta`` to ``S_{beta+u}`` using ``f`` and predict the new isometry vector."""
    scope = tuple(scope)
    beta = tuple(int(b) for b in beta)
    u, us = translation_shape(curve, f, scope)
    beta2 = tuple(b + d for b, d in zip(beta, us))
    F = curve.F
    vals = D.evaluate(f)
    tau = F.mul(vals, F.inv(vals[0]))

    full = [0] * len(curve.roots)
    full2 = [0] * len(curve.roots)
    for k, b, b2 in zip(scope, beta, beta2):
        full[k], full2[k] = b, b2
    lo, hi = window or (-sum(beta2) - curve.m, D.n + 2 * curve.g + sum(beta) + curve.m)
    h1 = h_set(curve, full, (lo, hi))
    h2 = h_set(curve, full2, (lo - u, hi - u))
    h_ok = [a - u for a in h1] == h2
    hs1 = building_basis(curve, scope, beta, D).a_values
    hs2 = building_basis(curve, scope, beta2, D).a_values
    hs_ok = [a - u for a in hs1] == hs2

    out = Translation(beta, beta2, u, us, tau, h_ok, hs_ok)
    if x_beta is not None:
        out.x_prediction = F.div(np.asarray(x_beta, dtype=DTYPE), F.mul(tau, tau))
        if check_fresh:
            rep = isodual(curve, scope, beta2, D, seed=seed)
            out.x_fresh = rep.x
    return out


def verify_report(curve: CurveSpec, scope, beta, D: EvalSet, rep: IsometryReport) -> bool:
    """Independent confirmation of a Dual report on all n+1 code pairs."""
    if not rep.is_dual:
        return False
    return verify_isometry_pair(build_flag(curve, scope, beta, D), rep.x)
