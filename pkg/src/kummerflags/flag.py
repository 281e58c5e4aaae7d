"""Complete flags ``S_beta`` of evaluation codes and code-level duality."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import ZeroComponentInX
from .evalcode import BuildingBasis, Code, EvalSet, building_basis
from .finite_field import DTYPE, FieldSpec, nullspace_from_rref
from .kummer_curve import CurveSpec


def prefix_codes(F: FieldSpec, V: np.ndarray) -> list[Code]:
    """RREFs of ``span(v_1..v_i)`` for ``i = 0..len(V)``, built incrementally."""
    n = V.shape[1]
    R = np.zeros((0, n), dtype=DTYPE)
    piv: list[int] = []
    out = [Code(R.copy(), n)]
    for v in V:
        w = np.asarray(v, dtype=DTYPE)
        if piv:
            w = F.sub(w, F.matmul(w[piv][None, :], R)[0])
        nz = np.flatnonzero(w)
        if nz.size == 0:
            out.append(Code(R.copy(), n))
            continue
        c = int(nz[0])
        w = F.mul(w, F.inv(w[c]))
        if piv:
            R = F.sub(R, F.mul(R[:, c][:, None], w[None, :]))
        pos = int(np.searchsorted(piv, c))
        R = np.insert(R, pos, w, axis=0)
        piv.insert(pos, c)
        out.append(Code(R.copy(), n))
    return out


@dataclass
class Flag:
    curve: CurveSpec
    scope: tuple[int, ...]
    beta: tuple[int, ...]
    D: EvalSet
    bb: BuildingBasis

    @property
    def n(self) -> int:
        return self.D.n

    @property
    def a_values(self) -> list[int]:
        """``a_0`` followed by H*_beta."""
        return [self.a0] + list(self.bb.a_values)

    @property
    def a0(self) -> int:
        return self.bb.a_values[0] - 1

    @cached_property
    def codes(self) -> list[Code]:
        return prefix_codes(self.curve.F, self.bb.vectors)

    @property
    def dims(self) -> list[int]:
        return [c.dim for c in self.codes]

    def dual_pairs(self) -> list[tuple[int, int]]:
        """``(a_i, a_{n-i})``: the code at ``a_i`` has dual at ``a_{n-i}`` when self-orthogonal."""
        av = self.a_values
        return [(av[i], av[self.n - i]) for i in range(self.n + 1)]


def build_flag(curve: CurveSpec, scope: Sequence[int], beta: Sequence[int], D: EvalSet) -> Flag:
    scope = tuple(scope)
    beta = tuple(int(b) for b in beta)
    return Flag(curve, scope, beta, D, building_basis(curve, scope, beta, D))


def dual_code(F: FieldSpec, c: Code) -> Code:
    """Orthogonal complement under the standard inner product."""
    if c.dim == 0:
        return Code(np.eye(c.n, dtype=DTYPE), c.n)
    N = nullspace_from_rref(F, c.generators, _pivots(c.generators), c.n)
    return Code.span(F, N, c.n)


def _pivots(R: np.ndarray) -> list[int]:
    return [int(np.flatnonzero(row)[0]) for row in R]


def scale_code(F: FieldSpec, x, c: Code) -> Code:
    return Code.span(F, F.mul(c.generators, np.asarray(x, dtype=DTYPE)[None, :]), c.n)


def verify_isometry_pair(flag: Flag, x, method: str = "gram") -> bool:
    """True iff ``dual(C_{n-i}) == x * C_i`` for every ``i = 0..n``.

    ``method="rref"`` compares the RREFs of both sides code by code.
    ``method="gram"`` uses that, with ``x`` of full weight, both sides
    have dimension ``i`` and the equality reduces to the orthogonality
    ``(x * v_a) . v_b = 0`` for all ``a + b <= n`` in the building basis.
    """
    F = flag.curve.F
    x = np.asarray(x, dtype=DTYPE)
    if x.shape != (flag.n,):
        raise ValueError("x must have length n")
    if np.any(x == 0):
        raise ZeroComponentInX("isometry vectors have no zero coordinates")
    n = flag.n
    if method == "rref":
        codes = flag.codes
        return all(dual_code(F, codes[n - i]) == scale_code(F, x, codes[i]) for i in range(n + 1))
    if method != "gram":
        raise ValueError(f"unknown method {method!r}")
    V = flag.bb.vectors
    G = F.matmul(F.mul(V, x[None, :]), V.T)
    a = np.arange(1, n + 1)
    mask = (a[:, None] + a[None, :]) <= n
    return not np.any(G[mask])
