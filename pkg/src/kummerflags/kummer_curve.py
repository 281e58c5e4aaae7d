"""Kummer function fields ``y^m = f(x)`` over GF(q) with ``gcd(m, deg f) = 1``.

Places, divisors and functions.  Every function handled here lives in
``F_q[x, 1/(x - a_k)][y]`` where the ``a_k`` are the rational roots of
``f``; it is stored as ``sum_j y^j * P_j(x) * prod_k (x - a_k)^{e_jk}`` with
``0 <= j < m`` and each ``P_j`` coprime to every ``x - a_k``.  That form is
canonical, and because the summands have pairwise distinct valuations
modulo ``m`` at the place at infinity and at each ramified place, those
valuations are read off exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from . import poly
from .errors import (
    ExplicitOrderingIncomplete,
    GcdViolation,
    NonSeparable,
    PoleAtPlace,
    UnsupportedPlace,
)
from .finite_field import DTYPE, FieldSpec

INFINITY = "infinity"
RAMIFIED = "ramified"
AFFINE = "affine"


@dataclass(frozen=True)
class Place:
    kind: str
    x: int | None = None
    y: int | None = None
    index: int | None = None

    @classmethod
    def infinity(cls) -> "Place":
        return cls(INFINITY)

    @classmethod
    def ramified(cls, index: int, x: int) -> "Place":
        return cls(RAMIFIED, x, 0, index)

    @classmethod
    def affine(cls, x: int, y: int) -> "Place":
        return cls(AFFINE, x, y)

    @property
    def is_infinity(self) -> bool:
        return self.kind == INFINITY

    @property
    def is_ramified(self) -> bool:
        return self.kind == RAMIFIED

    def label(self, F: FieldSpec | None = None) -> str:
        if self.is_infinity:
            return "P_inf"
        if F is None:
            return f"({self.x},{self.y})"
        return f"({F.render(self.x)},{F.render(self.y)})"


class Divisor:
    """Finite formal sum of rational places with integer coefficients."""

    def __init__(self, coeffs: dict[Place, int] | None = None):
        self.coeffs = {p: int(c) for p, c in (coeffs or {}).items() if c}

    def __getitem__(self, place: Place) -> int:
        return self.coeffs.get(place, 0)

    def __add__(self, other: "Divisor") -> "Divisor":
        out = dict(self.coeffs)
        for p, c in other.coeffs.items():
            out[p] = out.get(p, 0) + c
        return Divisor(out)

    def __neg__(self) -> "Divisor":
        return Divisor({p: -c for p, c in self.coeffs.items()})

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __mul__(self, n: int) -> "Divisor":
        return Divisor({p: n * c for p, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Divisor) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    @property
    def degree(self) -> int:
        return sum(self.coeffs.values())

    @property
    def support(self) -> set[Place]:
        return set(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for p, c in sorted(self.coeffs.items(), key=lambda pc: _place_sort_key(pc[0])):
            name = "P_inf" if p.is_infinity else (
                f"Q{p.index + 1}" if p.is_ramified else p.label())
            parts.append(f"{c}*{name}")
        return " + ".join(parts)


def _place_sort_key(p: Place):
    if p.is_infinity:
        return (0, 0, 0)
    if p.is_ramified:
        return (1, p.index, 0)
    return (2, p.x, p.y)


@dataclass(frozen=True)
class MonomialTerm:
    """``coeff * prod_k (x - a_k)^{i_k} * y^j`` with ``0 <= j < m``."""

    i_exps: tuple[int, ...]
    j: int
    coeff: int = 1


class CurveSpec:
    """The curve ``y^m = f(x)`` over ``field``.

    ``roots`` lists the roots of ``f`` lying in the field (0 first, then by
    discrete logarithm); ``cofactor`` is ``f / prod (x - root)``, equal to
    ``(1,)`` exactly when ``f`` splits.
    """

    def __init__(self, field: FieldSpec, m: int, f_coeffs: Sequence[int]):
        F = field
        f = poly.trim(int(c) for c in f_coeffs)
        r = poly.degree(f)
        if m < 2:
            raise GcdViolation("Kummer exponent must be >= 2")
        if r < 1:
            raise NonSeparable("f must be non-constant")
        if gcd(m, r) != 1:
            raise GcdViolation(f"gcd(m={m}, deg f={r}) != 1")
        if poly.degree(poly.gcd(F, f, poly.derivative(F, f))) > 0:
            raise NonSeparable("f has a repeated factor")
        self.F = F
        self.m = m
        self.f = f
        self.r = r
        lead = f[-1]
        roots = poly.roots(F, f)
        roots.sort(key=lambda a: -1 if a == 0 else int(F.log(a)))
        self.roots = tuple(roots)
        rest = poly.scale(F, f, 1)
        for a in roots:
            rest, mult = poly.strip_root(F, rest, a)
            assert mult == 1
        self.cofactor = rest
        self.lead = lead
        self.g = (m - 1) * (r - 1) // 2
        # the monomial bases assume p does not divide m
        self.tame = m % F.p != 0

    @property
    def field(self) -> FieldSpec:
        return self.F

    @property
    def t_roots(self) -> int:
        return len(self.roots)

    @property
    def splits(self) -> bool:
        return self.cofactor == (self.lead,)

    def __repr__(self):
        return f"CurveSpec(m={self.m}, f={list(self.f)}, q={self.F.q}, g={self.g})"

    # -- places ------------------------------------------------------------
    def ramified_place(self, i: int) -> Place:
        return Place.ramified(i, self.roots[i])

    def ramified_places(self) -> list[Place]:
        return [self.ramified_place(i) for i in range(len(self.roots))]

    def affine_points(self) -> list[tuple[int, int]]:
        """All ``(x, y)`` with ``y != 0`` and ``y^m = f(x)``."""
        F = self.F
        ys = np.arange(1, F.q, dtype=DTYPE)
        ym = F.power(ys, self.m)
        buckets: dict[int, list[int]] = {}
        for y, v in zip(ys.tolist(), ym.tolist()):
            buckets.setdefault(v, []).append(y)
        fx = poly.eval_many(F, self.f, F.elements())
        out = []
        for x, v in enumerate(fx.tolist()):
            if v:
                out.extend((x, y) for y in buckets.get(v, ()))
        return out

    def place_at(self, x: int, y: int) -> Place:
        if y == 0:
            if x not in self.roots:
                raise ValueError(f"({x},0) is not on the curve")
            return self.ramified_place(self.roots.index(x))
        return Place.affine(x, y)

    def on_curve(self, x: int, y: int) -> bool:
        F = self.F
        return int(F.power(y, self.m)) == poly.eval_scalar(F, self.f, x)


def curve_make(field: FieldSpec, m: int, f_coeffs) -> CurveSpec:
    return CurveSpec(field, m, f_coeffs)


def _dlog_key(F: FieldSpec, v: int, one_last: bool = False) -> int:
    if v == 0:
        return -1
    e = int(F.log(v))
    if one_last and e == 0:
        return F.q - 1
    return e


def enumerate_places(curve: CurveSpec, ordering="default") -> list[Place]:
    """All rational places, ``P_inf`` first.

    ``ordering`` is ``"default"`` (finite places sorted by discrete log of
    ``x`` then of ``y``, zero first), ``"cyclic"`` (as default but with
    ``x = 1`` sorted last, i.e. ``x`` runs through ``a, a^2, ..., a^(q-1)``)
    or an explicit sequence of ``(x, y)`` pairs.  An explicit sequence must
    list every non-ramified affine place exactly once; ramified places may
    be listed or omitted (omitted ones come right after ``P_inf``).
    """
    F = curve.F
    ram = curve.ramified_places()
    aff = [Place.affine(x, y) for x, y in curve.affine_points()]
    if isinstance(ordering, str):
        if ordering not in ("default", "cyclic"):
            raise ValueError(f"unknown place ordering {ordering!r}")
        one_last = ordering == "cyclic"
        finite = sorted(ram + aff, key=lambda p: (_dlog_key(F, p.x, one_last),
                                                  _dlog_key(F, p.y)))
        return [Place.infinity()] + finite
    listed: list[Place] = []
    seen: set[Place] = set()
    for x, y in ordering:
        x, y = int(x), int(y)
        if not curve.on_curve(x, y) or (y == 0 and x not in curve.roots):
            raise ExplicitOrderingIncomplete(f"({F.render(x)},{F.render(y)}) is not a rational place")
        p = curve.place_at(x, y)
        if p in seen:
            raise ExplicitOrderingIncomplete(f"place {p.label(F)} listed twice")
        seen.add(p)
        listed.append(p)
    missing = [p for p in aff if p not in seen]
    if missing:
        raise ExplicitOrderingIncomplete(
            f"{len(missing)} affine places missing, e.g. {missing[0].label(F)}")
    return [Place.infinity()] + [p for p in ram if p not in seen] + listed


# --- functions ------------------------------------------------------------

class MonomialFunction:
    """A function ``sum_j y^j P_j(x) prod_k (x - a_k)^{e_jk}`` on a Kummer curve."""

    __slots__ = ("curve", "parts")

    def __init__(self, curve: CurveSpec, parts: dict[int, tuple[tuple, tuple]] | None = None):
        self.curve = curve
        self.parts = {}
        for j, (P, e) in (parts or {}).items():
            P, e = _normalize(curve, P, e)
            if P:
                self.parts[j] = (P, e)

    # constructors
    @classmethod
    def zero(cls, curve: CurveSpec) -> "MonomialFunction":
        return cls(curve)

    @classmethod
    def constant(cls, curve: CurveSpec, c: int) -> "MonomialFunction":
        return cls(curve, {0: ((int(c),), (0,) * len(curve.roots))})

    @classmethod
    def from_term(cls, curve: CurveSpec, term: MonomialTerm) -> "MonomialFunction":
        if not 0 <= term.j < curve.m:
            raise ValueError("y exponent must satisfy 0 <= j < m")
        return cls(curve, {term.j: ((int(term.coeff),), tuple(term.i_exps))})

    @classmethod
    def from_terms(cls, curve: CurveSpec, terms: Iterable[MonomialTerm]) -> "MonomialFunction":
        out = cls.zero(curve)
        for t in terms:
            out = out + cls.from_term(curve, t)
        return out

    @classmethod
    def basis_element(cls, curve: CurveSpec, d: int, exps, j: int) -> "MonomialFunction":
        """``x^d * prod_k (x - a_k)^{exps_k} * y^j``."""
        P = (0,) * d + (1,)
        return cls(curve, {j: (P, tuple(exps))})

    @classmethod
    def x_minus(cls, curve: CurveSpec, k: int, e: int = 1) -> "MonomialFunction":
        exps = [0] * len(curve.roots)
        exps[k] = e
        return cls(curve, {0: ((1,), tuple(exps))})

    @classmethod
    def y(cls, curve: CurveSpec) -> "MonomialFunction":
        return cls(curve, {1 % curve.m: ((1,), (0,) * len(curve.roots))}) if curve.m > 1 else None

    # algebra
    def is_zero(self) -> bool:
        return not self.parts

    def __eq__(self, other) -> bool:
        return isinstance(other, MonomialFunction) and self.parts == other.parts

    def __hash__(self):
        return hash(tuple(sorted(self.parts.items())))

    def __add__(self, other: "MonomialFunction") -> "MonomialFunction":
        F = self.curve.F
        parts = dict(self.parts)
        for j, (P2, e2) in other.parts.items():
            if j not in parts:
                parts[j] = (P2, e2)
                continue
            P1, e1 = parts[j]
            e = tuple(min(a, b) for a, b in zip(e1, e2))
            A = _shift(self.curve, P1, [a - c for a, c in zip(e1, e)])
            B = _shift(self.curve, P2, [b - c for b, c in zip(e2, e)])
            parts[j] = (poly.add(F, A, B), e)
        return MonomialFunction(self.curve, parts)

    def __neg__(self) -> "MonomialFunction":
        F = self.curve.F
        return MonomialFunction(self.curve, {j: (poly.neg(F, P), e) for j, (P, e) in self.parts.items()})

    def __sub__(self, other: "MonomialFunction") -> "MonomialFunction":
        return self + (-other)

    def scale(self, c: int) -> "MonomialFunction":
        F = self.curve.F
        return MonomialFunction(self.curve, {j: (poly.scale(F, P, int(c)), e)
                                             for j, (P, e) in self.parts.items()})

    def __mul__(self, other) -> "MonomialFunction":
        if not isinstance(other, MonomialFunction):
            return self.scale(int(other))
        C = self.curve
        F = C.F
        out = MonomialFunction.zero(C)
        for j1, (P1, e1) in self.parts.items():
            for j2, (P2, e2) in other.parts.items():
                P = poly.mul(F, P1, P2)
                e = tuple(a + b for a, b in zip(e1, e2))
                j = j1 + j2
                if j >= C.m:
                    # y^m = f = lead * cofactor * prod (x - a_k)
                    j -= C.m
                    P = poly.mul(F, P, C.cofactor)
                    e = tuple(a + 1 for a in e)
                out = out + MonomialFunction(C, {j: (P, e)})
        return out

    __rmul__ = __mul__

    def is_monomial(self) -> bool:
        """True when the function is a single term ``c * prod (x-a_k)^i * y^j``."""
        return len(self.parts) == 1 and len(next(iter(self.parts.values()))[0]) == 1

    def as_term(self) -> MonomialTerm:
        if not self.is_monomial():
            raise ValueError("function is not a single monomial")
        (j, (P, e)), = self.parts.items()
        return MonomialTerm(e, j, P[0])

    def inverse(self) -> "MonomialFunction":
        """Reciprocal; defined for single monomials on a split curve."""
        C = self.curve
        if not self.is_monomial():
            raise ValueError("only monomials are invertible in this representation")
        t = self.as_term()
        F = C.F
        c = F.sinv(t.coeff)
        e = tuple(-a for a in t.i_exps)
        if t.j == 0:
            return MonomialFunction(C, {0: ((c,), e)})
        if not C.splits:
            raise ValueError("y is not invertible here: f does not split")
        # 1/y^j = y^(m-j) / f
        c = F.smul(c, F.sinv(C.lead))
        e = tuple(a - 1 for a in e)
        return MonomialFunction(C, {C.m - t.j: ((c,), e)})

    def __pow__(self, n: int) -> "MonomialFunction":
        if n < 0:
            return self.inverse() ** (-n)
        out = MonomialFunction.constant(self.curve, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, MonomialFunction):
            return self * other.inverse()
        return self.scale(self.curve.F.sinv(int(other)))

    # valuations
    def valuation_inf(self) -> int:
        C = self.curve
        if not self.parts:
            raise ValueError("valuation of zero")
        return min(-(C.m * (poly.degree(P) + sum(e)) + j * C.r) for j, (P, e) in self.parts.items())

    def valuation_ram(self, k: int) -> int:
        C = self.curve
        if not self.parts:
            raise ValueError("valuation of zero")
        return min(C.m * e[k] + j for j, (P, e) in self.parts.items())

    def valuation(self, place: Place) -> int:
        if place.is_infinity:
            return self.valuation_inf()
        if place.is_ramified:
            return self.valuation_ram(place.index)
        raise UnsupportedPlace("valuations are only offered at P_inf and ramified places")

    @property
    def pole_order(self) -> int:
        return -self.valuation_inf()

    def divisor_on_support(self) -> Divisor:
        """Valuations at ``P_inf`` and the rational ramified places."""
        C = self.curve
        d = {Place.infinity(): self.valuation_inf()}
        for k in range(len(C.roots)):
            d[C.ramified_place(k)] = self.valuation_ram(k)
        return Divisor(d)

    # evaluation
    def evaluate_arrays(self, xs, ys, ram) -> np.ndarray:
        """Values at places given as arrays.

        ``ram[i]`` is the ramified index of place ``i`` or ``-1`` for a
        non-ramified affine place with coordinates ``(xs[i], ys[i])``.
        """
        C = self.curve
        F = C.F
        xs = np.asarray(xs, dtype=DTYPE)
        ys = np.asarray(ys, dtype=DTYPE)
        ram = np.asarray(ram)
        out = np.zeros(xs.shape, dtype=DTYPE)
        aff = ram < 0
        if aff.any():
            xa, ya = xs[aff], ys[aff]
            acc = np.zeros(xa.shape, dtype=DTYPE)
            for j, (P, e) in self.parts.items():
                v = poly.eval_many(F, P, xa)
                for k, ek in enumerate(e):
                    if ek:
                        v = F.mul(v, F.power(F.sub(xa, C.roots[k]), ek))
                if j:
                    v = F.mul(v, F.power(ya, j))
                acc = F.add(acc, v)
            out[aff] = acc
        for k in np.unique(ram[~aff]).tolist():
            out[ram == k] = self.value_at_ramified(k)
        return out

    def value_at_ramified(self, k: int) -> int:
        C = self.curve
        F = C.F
        if not self.parts:
            return 0
        v = self.valuation_ram(k)
        if v < 0:
            raise PoleAtPlace(f"pole of order {-v} at Q{k + 1}")
        if v > 0:
            return 0
        P, e = self.parts[0]
        val = poly.eval_scalar(F, P, C.roots[k])
        for l, el in enumerate(e):
            if l != k and el:
                val = F.smul(val, F.spow(F.ssub(C.roots[k], C.roots[l]), el))
        return val

    def __call__(self, place: Place) -> int:
        if place.is_infinity:
            v = self.valuation_inf()
            if v < 0:
                raise PoleAtPlace("pole at infinity")
            if v > 0:
                return 0
            raise UnsupportedPlace("value at infinity of a unit is not offered")
        if place.is_ramified:
            return self.value_at_ramified(place.index)
        return int(self.evaluate_arrays([place.x], [place.y], [-1])[0])

    # display
    def render(self, symbol: str = "α") -> str:
        C = self.curve
        F = C.F
        if not self.parts:
            return "0"
        pieces = []
        for j in sorted(self.parts):
            P, e = self.parts[j]
            factors = []
            if len(P) == 1:
                coeff = P[0]
            else:
                coeff = 1
                factors.append("(" + _render_poly(F, P, symbol) + ")")
            for k, ek in enumerate(e):
                if not ek:
                    continue
                a = C.roots[k]
                base = "x" if a == 0 else f"(x{'+' if F.p == 2 else '-'}{F.render(a, symbol)})"
                factors.append(base if ek == 1 else f"{base}^{ek}")
            if j:
                factors.append("y" if j == 1 else f"y^{j}")
            if coeff != 1 or not factors:
                factors.insert(0, F.render(coeff, symbol))
            pieces.append("*".join(factors))
        return " + ".join(pieces)

    def __repr__(self):
        return self.render()


def _render_poly(F: FieldSpec, P, symbol: str) -> str:
    terms = []
    for d in range(len(P) - 1, -1, -1):
        c = P[d]
        if not c:
            continue
        mono = "" if d == 0 else ("x" if d == 1 else f"x^{d}")
        if not mono:
            terms.append(F.render(c, symbol))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{F.render(c, symbol)}*{mono}")
    return "+".join(terms)


def _normalize(curve: CurveSpec, P, e):
    F = curve.F
    P = poly.trim(int(c) for c in P)
    e = list(e)
    if len(e) != len(curve.roots):
        raise ValueError("exponent vector length must equal the number of rational roots")
    if not P:
        return (), tuple(0 for _ in e)
    for k, a in enumerate(curve.roots):
        P, mult = poly.strip_root(F, P, a)
        e[k] += mult
    return P, tuple(e)


def _shift(curve: CurveSpec, P, extra):
    F = curve.F
    for k, n in enumerate(extra):
        if n:
            P = poly.mul(F, P, poly.power(F, poly.linear(F, curve.roots[k]), n))
    return P


# --- spec-level entry points ---------------------------------------------

def monomial_valuation(curve: CurveSpec, term: MonomialTerm, place: Place) -> int:
    if place.is_infinity:
        return -(curve.m * sum(term.i_exps) + term.j * curve.r)
    if place.is_ramified:
        return curve.m * term.i_exps[place.index] + term.j
    raise UnsupportedPlace("valuations are only offered at P_inf and ramified places")


def monomial_divisor(curve: CurveSpec, term: MonomialTerm) -> Divisor:
    d = {Place.infinity(): monomial_valuation(curve, term, Place.infinity())}
    for k in range(len(curve.roots)):
        P = curve.ramified_place(k)
        d[P] = monomial_valuation(curve, term, P)
    return Divisor(d)


def evaluate(curve: CurveSpec, func, place: Place) -> int:
    if isinstance(func, MonomialTerm):
        func = MonomialFunction.from_term(curve, func)
    elif not isinstance(func, MonomialFunction):
        func = MonomialFunction.from_terms(curve, func)
    return func(place)


_FN_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-zα]+)|(.))")


def parse_function(curve: CurveSpec, text: str, symbol: str = "α") -> MonomialFunction:
    """Parse the output of :meth:`MonomialFunction.render` (and similar input).

    Grammar: sums and differences of ``*``-products of factors, each
    factor being ``x``, ``y``, a field constant (``α``, ``3``) or a
    parenthesised expression, optionally raised to an integer power
    (negative powers need an invertible monomial).
    """
    F = curve.F
    toks = []
    for num, word, ch in _FN_TOKEN.findall(text):
        if num:
            toks.append(("num", int(num)))
        elif word:
            toks.append(("word", word))
        elif ch.strip():
            toks.append(("op", ch))
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take(kind=None, val=None):
        nonlocal pos
        tk = peek()
        if tk[0] is None or (kind and tk[0] != kind) or (val is not None and tk[1] != val):
            raise ValueError(f"cannot parse function {text!r}")
        pos += 1
        return tk[1]

    def atom():
        kind, val = peek()
        if (kind, val) == ("op", "("):
            take()
            e = expr()
            take("op", ")")
            return e
        if kind == "num":
            take()
            return MonomialFunction.constant(curve, F.from_int(val))
        if kind == "word":
            take()
            if val == "x":
                return MonomialFunction(curve, {0: ((0, 1), (0,) * len(curve.roots))})
            if val == "y":
                return MonomialFunction.y(curve)
            if val in (symbol, "a", "alpha"):
                return MonomialFunction.constant(curve, F.generator)
        raise ValueError(f"cannot parse function {text!r}")

    def factor():
        base = atom()
        if peek() == ("op", "^"):
            take()
            sign = -1 if peek() == ("op", "-") else 1
            if sign < 0:
                take()
            base = base ** (sign * take("num"))
        return base

    def term():
        out = factor()
        while peek() == ("op", "*"):
            take()
            out = out * factor()
        return out

    def expr():
        neg = False
        if peek() == ("op", "-"):
            take()
            neg = True
        out = term()
        if neg:
            out = -out
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()
            t = term()
            out = out + t if op == "+" else out - t
        return out

    f = expr()
    if pos != len(toks):
        raise ValueError(f"cannot parse function {text!r}")
    return f
