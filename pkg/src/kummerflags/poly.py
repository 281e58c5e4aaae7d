"""Dense univariate polynomials over a :class:`FieldSpec`.

A polynomial is a tuple of encoded field elements, lowest degree first,
with no trailing zeros (the zero polynomial is ``()``).
"""

from __future__ import annotations

import numpy as np

from .finite_field import DTYPE, FieldSpec


def trim(a) -> tuple:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def degree(a) -> int:
    return len(a) - 1


def add(F: FieldSpec, a, b) -> tuple:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out.append(F.sadd(x, y))
    return trim(out)


def neg(F: FieldSpec, a) -> tuple:
    return tuple(F.sneg(c) for c in a)


def sub(F: FieldSpec, a, b) -> tuple:
    return add(F, a, neg(F, b))


def scale(F: FieldSpec, a, c: int) -> tuple:
    if c == 0:
        return ()
    return tuple(F.smul(x, c) for x in a)


def mul(F: FieldSpec, a, b) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = F.sadd(out[i + j], F.smul(x, y))
    return trim(out)


def linear(F: FieldSpec, root: int) -> tuple:
    """The monic polynomial ``x - root``."""
    return (F.sneg(root), 1)


def power(F: FieldSpec, a, e: int) -> tuple:
    out: tuple = (1,)
    base = a
    while e:
        if e & 1:
            out = mul(F, out, base)
        base = mul(F, base, base)
        e >>= 1
    return out


def divmod_poly(F: FieldSpec, a, b) -> tuple[tuple, tuple]:
    a = list(trim(a))
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = F.sinv(b[-1])
    qt = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = F.smul(a[-1], inv_lead)
        shift = len(a) - len(b)
        qt[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = F.ssub(a[shift + i], F.smul(c, bc))
        a = list(trim(a))
    return trim(qt), tuple(a)


def gcd(F: FieldSpec, a, b) -> tuple:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_poly(F, a, b)[1]
    if a:
        a = scale(F, a, F.sinv(a[-1]))
    return a


def derivative(F: FieldSpec, a) -> tuple:
    return trim(F.smul(c, F.from_int(i)) for i, c in enumerate(a) if i > 0)


def eval_scalar(F: FieldSpec, a, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.sadd(F.smul(acc, x), c)
    return acc


def eval_many(F: FieldSpec, a, xs) -> np.ndarray:
    xs = np.asarray(xs, dtype=DTYPE)
    acc = np.zeros_like(xs)
    for c in reversed(a):
        acc = F.add(F.mul(acc, xs), c)
    return acc


def strip_root(F: FieldSpec, a, root: int) -> tuple[tuple, int]:
    """Divide out ``(x - root)`` as often as possible; returns (quotient, multiplicity)."""
    a = trim(a)
    mult = 0
    while a and eval_scalar(F, a, root) == 0:
        # synthetic division
        out = [0] * (len(a) - 1)
        carry = 0
        for i in range(len(a) - 1, 0, -1):
            carry = F.sadd(a[i], F.smul(carry, root))
            out[i - 1] = carry
        a = trim(out)
        mult += 1
    return a, mult


def roots(F: FieldSpec, a) -> list[int]:
    vals = eval_many(F, a, F.elements())
    return [int(v) for v in np.flatnonzero(vals == 0)]
