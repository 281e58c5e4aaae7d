"""Periods, the group T0 and the lattice of dual-giving divisors.

For ramified places ``Q_i`` the period ``pi_i`` is the least ``u >= 1``
with ``u (P_inf - Q_i)`` principal; on Kummer curves it equals ``m``.
Flags ``S_gamma`` are isometry-dual exactly for
``gamma_i = beta_i + (theta_i + lambda_i pi_i) / 2`` with ``theta`` in T0.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

import numpy as np

from .errors import PeriodNotFoundWithinBound, PreconditionViolated
from .evalcode import EvalSet
from .finite_field import DTYPE
from .flag import build_flag, scale_code
from .isodual import isodual
from .kummer_curve import CurveSpec, Divisor, MonomialFunction, Place
from .riemann_roch import is_principal

PERIOD_CAP_FACTOR = 16
FLAG_BOUND_NOTE = ("odd q: flag bound read as (isometry-vector bound) * 2^(t-1), "
                   "from fixing v_1 = 1 in the +-1 vector")


def _p_minus_q(curve: CurveSpec, coeffs: Sequence[int], scope: Sequence[int]) -> Divisor:
    d: dict[Place, int] = {Place.infinity(): sum(coeffs)}
    for k, c in zip(scope, coeffs):
        if c:
            d[curve.ramified_place(k)] = -c
    return Divisor(d)


def lemma_hypotheses(curve: CurveSpec) -> bool:
    """``2 <= r < m`` and ``gcd(m, r) = 1``: the period is then ``m``."""
    return 2 <= curve.r < curve.m and gcd(curve.m, curve.r) == 1


@dataclass
class Period:
    index: int
    pi: int
    witness: MonomialFunction
    checked: int


def period(curve: CurveSpec, k: int, bound: int | None = None,
           normalize_at: Place | None = None) -> Period:
    """Least ``u`` with ``u (P_inf - Q_k)`` principal, with its witness.

    The search starts at ``bound`` (default ``m``) and doubles up to a
    hard cap before giving up.
    """
    if not 0 <= k < len(curve.roots):
        raise ValueError(f"no rational ramified place with index {k}")
    bound = curve.m if bound is None else int(bound)
    if bound < 1:
        raise ValueError("bound must be positive")
    cap = PERIOD_CAP_FACTOR * max(bound, curve.m)
    u = 1
    while True:
        while u <= bound:
            z = is_principal(curve, _p_minus_q(curve, [u], [k]), normalize_at)
            if z is not None:
                if lemma_hypotheses(curve) and u != curve.m:
                    raise AssertionError(f"period {u} contradicts the expected value {curve.m}")
                return Period(k, u, z, u)
            u += 1
        if bound >= cap:
            raise PeriodNotFoundWithinBound(f"no principal multiple up to {bound}")
        bound = min(2 * bound, cap)


def periods(curve: CurveSpec, scope: Sequence[int], normalize_at: Place | None = None
            ) -> list[Period]:
    return [period(curve, k, normalize_at=normalize_at) for k in scope]


@dataclass
class T0Set:
    periods: tuple[int, ...]
    members: list[tuple[int, ...]]
    witnesses: dict[tuple[int, ...], MonomialFunction] = field(repr=False)

    def __contains__(self, theta) -> bool:
        return tuple(theta) in self.witnesses

    def __len__(self) -> int:
        return len(self.members)

    def add(self, a, b) -> tuple[int, ...]:
        return tuple((x + y) % p for x, y, p in zip(a, b, self.periods))

    def decompose(self, delta) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """``delta = theta + lambda * pi`` with ``0 <= theta_i < pi_i``."""
        theta = tuple(d % p for d, p in zip(delta, self.periods))
        lam = tuple(d // p for d, p in zip(delta, self.periods))
        return theta, lam


def enumerate_T0(curve: CurveSpec, scope: Sequence[int], pis: Sequence[int],
                 normalize_at: Place | None = None) -> T0Set:
    """All ``theta`` in the box ``prod [0, pi_i)`` with ``sum theta_i (P - Q_i)`` principal."""
    members, wit = [], {}
    for theta in itertools.product(*(range(p) for p in pis)):
        z = is_principal(curve, _p_minus_q(curve, theta, scope), normalize_at)
        if z is not None:
            members.append(theta)
            wit[theta] = z
    return T0Set(tuple(pis), members, wit)


@dataclass
class GammaReport:
    gamma: tuple[int, ...]
    theta: tuple[int, ...]
    lam: tuple[int, ...]
    x_predicted: np.ndarray
    x_confirmed: bool | None
    status: str | None = None


@dataclass
class GammaSweep:
    reports: list[GammaReport]
    negatives: list[tuple[tuple[int, ...], str]]

    @property
    def all_confirmed(self) -> bool:
        return all(r.x_confirmed for r in self.reports)

    @property
    def negatives_ok(self) -> bool:
        return all(st == "NotDual" for _, st in self.negatives)


def _normalize(F, x):
    return F.mul(x, F.inv(x[0]))


def predict_x(curve: CurveSpec, D: EvalSet, x_beta, theta_witness: MonomialFunction,
              phis: Sequence[MonomialFunction], lam: Sequence[int]) -> np.ndarray:
    """``x_beta / ev(psi_theta * prod phi_i^lambda_i)``, first entry scaled to 1.

    With ``(psi_theta) = sum theta_i (P - Q_i)`` and ``(phi_i) = pi_i (P - Q_i)``
    the isometry function of ``S_gamma`` is that of ``S_beta`` divided by
    this product: moving ``G`` by ``+delta`` moves the canonical-type
    divisor ``E`` by ``-2 delta`` at ``P_inf`` and ``+2 delta`` at the ``Q_i``.
    """
    F = curve.F
    w = D.evaluate(theta_witness)
    for phi, l in zip(phis, lam):
        if l:
            w = F.mul(w, F.power(D.evaluate(phi), int(l)))
    return _normalize(F, F.div(np.asarray(x_beta, dtype=DTYPE), w))


def enumerate_gamma(curve: CurveSpec, scope: Sequence[int], beta: Sequence[int], x_beta,
                    lambda_box: Sequence[tuple[int, int]], D: EvalSet, confirm: bool = True,
                    negatives: int = 50, seed: int = 0, workers: int = 1) -> GammaSweep:
    """Sweep ``theta`` in T0 and ``lambda`` in ``lambda_box`` (inclusive ranges).

    Each admissible ``gamma`` gets a predicted vector and, with ``confirm``,
    a fresh isometry-dual test.  Up to ``negatives`` off-lattice points of
    the spanned box are sampled and tested as well; they should all fail.
    """
    def test(g):
        return isodual(curve, scope, g, D, seed=seed)

    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    run = (lambda gs: list(pool.map(test, gs))) if pool else (lambda gs: [test(g) for g in gs])
    scope = tuple(scope)
    beta = tuple(int(b) for b in beta)
    if len(lambda_box) != len(scope):
        raise ValueError("lambda_box needs one range per Q")
    P1 = D.places[0]
    per = periods(curve, scope, P1)
    pis = [p.pi for p in per]
    phis = [p.witness for p in per]
    T0 = enumerate_T0(curve, scope, pis, P1)
    reports = []
    for theta in T0.members:
        for lam in itertools.product(*(range(lo, hi + 1) for lo, hi in lambda_box)):
            s = [t + l * p for t, l, p in zip(theta, lam, pis)]
            if any(v % 2 for v in s):
                continue
            gamma = tuple(b + v // 2 for b, v in zip(beta, s))
            xp = predict_x(curve, D, x_beta, T0.witnesses[theta], phis, lam)
            reports.append(GammaReport(gamma, theta, tuple(lam), xp, None))
    if confirm:
        for r, rep in zip(reports, run([r.gamma for r in reports])):
            r.status = rep.status
            r.x_confirmed = rep.is_dual and bool(np.array_equal(rep.x, r.x_predicted))
    neg = []
    if negatives and reports:
        on = {r.gamma for r in reports}
        lo = [min(g[i] for g in on) for i in range(len(scope))]
        hi = [max(g[i] for g in on) for i in range(len(scope))]
        off = [g for g in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))
               if not _on_lattice(g, beta, T0, pis)]
        rng = np.random.default_rng(seed)
        pick = rng.choice(len(off), size=min(negatives, len(off)), replace=False) if off else []
        sample = [off[i] for i in sorted(int(i) for i in pick)]
        neg = [(g, rep.status) for g, rep in zip(sample, run(sample))]
    if pool:
        pool.shutdown()
    return GammaSweep(reports, neg)


def _on_lattice(gamma, beta, T0: T0Set, pis) -> bool:
    delta = [2 * (g - b) for g, b in zip(gamma, beta)]
    theta, _ = T0.decompose(delta)
    return theta in T0


@dataclass
class TranslationEquivalence:
    beta: tuple[int, ...]
    beta_prime: tuple[int, ...]
    v: np.ndarray
    identical: bool
    verified: bool


def translation_equivalence(curve: CurveSpec, scope: Sequence[int], beta: Sequence[int],
                            lambda_tilde: Sequence[int], D: EvalSet) -> TranslationEquivalence:
    """Compare ``S_beta`` with ``S_{beta + lambda_tilde * pi / 2}`` code by code."""
    F = curve.F
    scope = tuple(scope)
    beta = tuple(int(b) for b in beta)
    per = periods(curve, scope, D.places[0])
    pis = [p.pi for p in per]
    for l, p in zip(lambda_tilde, pis):
        if l % (F.q - 1) or (l * p) % 2:
            raise PreconditionViolated(f"lambda={l} must be a multiple of q-1 with lambda*pi even")
    beta2 = tuple(b + l * p // 2 for b, l, p in zip(beta, lambda_tilde, pis))
    v = np.ones(D.n, dtype=DTYPE)
    for per_i, l in zip(per, lambda_tilde):
        if l:
            v = F.mul(v, F.power(D.evaluate(per_i.witness), int(l) // 2))
    minus_one = F.sneg(1)
    if not np.all((v == 1) | (v == minus_one)):
        raise AssertionError("translation vector has entries other than +-1")
    A = build_flag(curve, scope, beta, D).codes
    B = build_flag(curve, scope, beta2, D).codes
    identical = all(a == b for a, b in zip(A, B))
    if F.p == 2:
        verified = bool(np.all(v == 1)) and identical
    else:
        verified = all(a == scale_code(F, v, b) for a, b in zip(A, B))
    return TranslationEquivalence(beta, beta2, v, identical, verified)


def signs(F, v) -> list[int]:
    """``+-1`` entries as Python ints."""
    return [1 if int(a) == 1 else -1 for a in v]


@dataclass
class CountBounds:
    iso_vector_bound: int
    flag_bound: int
    e: int
    o: int
    T0_zero: int
    note: str | None = None


def count_bounds(q: int, pis: Sequence[int], T0: T0Set | Sequence[Sequence[int]]) -> CountBounds:
    members = T0.members if isinstance(T0, T0Set) else [tuple(t) for t in T0]
    t = len(pis)
    e = sum(1 for p in pis if p % 2 == 0)
    o = t - e
    t00 = sum(1 for th in members if not any(a % 2 and p % 2 == 0 for a, p in zip(th, pis)))
    if q % 2 == 0:
        iso = t00 * (q - 1) ** t
        return CountBounds(iso, iso, e, o, t00)
    iso = t00 * ((q - 1) // 2) ** o * (q - 1) ** e
    return CountBounds(iso, iso * 2 ** max(t - 1, 0), e, o, t00, FLAG_BOUND_NOTE)
