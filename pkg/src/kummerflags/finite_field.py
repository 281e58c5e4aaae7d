"""Arithmetic in GF(p^k) and dense linear algebra over it.

Elements are encoded as integers ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``
where ``c_i`` is the coefficient of ``x^i`` in the polynomial basis modulo
the defining polynomial.  Bulk routines take and return ``numpy`` integer
arrays in this encoding; :class:`FieldElement` wraps a single value for
ergonomic scalar work.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import (
    CharacteristicNotPrime,
    DivisionByZero,
    NonPrimitiveGenerator,
    OddCharacteristic,
    ReducibleModulus,
    SpecMismatch,
)

TABLE_LIMIT = 2**20
ADD_TABLE_LIMIT = 1024
DTYPE = np.int64


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over GF(p), coefficient lists low -> high -----------------

def _ptrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    a = _ptrim(c % p for c in a)
    f = _ptrim(f)
    inv_lead = pow(f[-1], -1, p)
    while len(a) >= len(f):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(f)
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        a = _ptrim(a)
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _ptrim((x - y) % p for x, y in zip(a, b))


def _pgcd(a, b, p):
    a, b = _ptrim(a), _ptrim(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(a, e, f, p):
    result = [1]
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def is_irreducible(f, p: int) -> bool:
    """Rabin's irreducibility test for a polynomial over GF(p)."""
    f = _ptrim(c % p for c in f)
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]

    def frob_iter(times):
        h = x
        for _ in range(times):
            h = _ppowmod(h, p, f, p)
        return h

    if _psub(frob_iter(k), x, p):
        return False
    for d in _prime_factors(k):
        g = _pgcd(f, _psub(frob_iter(k // d), x, p), p)
        if len(g) > 1:
            return False
    return True


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(x(?:\s*\^\s*(\d+))?)?")


def parse_poly(text, p: int) -> list[int]:
    """Parse ``"x^4+x+1"`` (or a coefficient list, low degree first)."""
    if not isinstance(text, str):
        return [int(c) % p for c in text]
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
        sign, num, xpart, exp = m.groups()
        if not num and not xpart:
            raise ValueError(f"cannot parse polynomial {text!r}")
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        deg = (int(exp) if exp else 1) if xpart else 0
        coeffs[deg] = coeffs.get(deg, 0) + c
        pos = m.end()
    top = max(coeffs)
    return [coeffs.get(i, 0) % p for i in range(top + 1)]


class FieldSpec:
    """The finite field GF(p^k) = GF(p)[x]/(modulus) with a declared generator.

    Construction verifies that ``modulus`` is irreducible and that
    ``generator`` has multiplicative order ``p^k - 1``.  For fields with at
    most ``2**20`` elements exponential and logarithm tables are built.
    """

    def __init__(self, p: int, k: int, modulus, generator):
        if not is_prime(p):
            raise CharacteristicNotPrime(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        modulus = parse_poly(modulus, p)
        if len(_ptrim(modulus)) != k + 1:
            raise ReducibleModulus(f"modulus must have degree {k}")
        if modulus[-1] != 1:
            raise ReducibleModulus("modulus must be monic")
        if not is_irreducible(modulus, p):
            raise ReducibleModulus(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = tuple(modulus)
        gen = _pmod(parse_poly(generator, p), modulus, p)
        self.generator = self._encode(gen)
        self._pows = np.array([p**i for i in range(k)], dtype=DTYPE)
        self._build_tables()

    # -- encoding ----------------------------------------------------------
    def _encode(self, coeffs) -> int:
        v = 0
        for c in reversed(list(coeffs)):
            v = v * self.p + (c % self.p)
        return v

    def _decode(self, v: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(v % self.p)
            v //= self.p
        return out

    def _mul_slow(self, a: int, b: int) -> int:
        return self._encode(_pmod(_pmul(self._decode(a), self._decode(b), self.p),
                                  self.modulus, self.p))

    def _build_tables(self):
        q, p = self.q, self.p
        self.has_tables = q <= TABLE_LIMIT
        if not self.has_tables:
            if self.generator == 0 or any(
                    self._pow_slow(self.generator, (q - 1) // ell) == 1
                    for ell in _prime_factors(q - 1)):
                raise NonPrimitiveGenerator("generator is not primitive")
            return
        exp = np.zeros(2 * (q - 1), dtype=DTYPE)
        log = np.full(q, -1, dtype=DTYPE)
        v = 1
        for i in range(q - 1):
            if log[v] != -1:
                raise NonPrimitiveGenerator(
                    f"generator has order {i}, not {q - 1}")
            exp[i] = v
            log[v] = i
            v = self._mul_slow(v, self.generator)
        if v != 1:
            raise NonPrimitiveGenerator("generator is not primitive")
        exp[q - 1:] = exp[:q - 1]
        self._exp = exp
        self._log = log
        self._expl = exp.tolist()
        self._logl = log.tolist()
        digits = np.array([self._decode(v) for v in range(q)], dtype=DTYPE)
        self._digits = digits
        self._neg = ((-digits) % p) @ self._pows if p != 2 else np.arange(q, dtype=DTYPE)
        self._add = None
        if p != 2 and q <= ADD_TABLE_LIMIT:
            self._add = ((digits[:, None, :] + digits[None, :, :]) % p) @ self._pows

    def _pow_slow(self, a: int, e: int) -> int:
        r, b = 1, a
        while e:
            if e & 1:
                r = self._mul_slow(r, b)
            b = self._mul_slow(b, b)
            e >>= 1
        return r

    # -- identity ----------------------------------------------------------
    def __eq__(self, other):
        return (isinstance(other, FieldSpec) and self.p == other.p
                and self.modulus == other.modulus and self.generator == other.generator)

    def __hash__(self):
        return hash((self.p, self.modulus, self.generator))

    def __repr__(self):
        return f"FieldSpec(p={self.p}, k={self.k}, modulus={list(self.modulus)})"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def one(self) -> int:
        return 1

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            check_same(self, value.field)
            return value
        if isinstance(value, (list, tuple)):
            value = self._encode(value)
        value = int(value)
        if not 0 <= value < self.q:
            raise ValueError(f"{value} is not an element encoding of GF({self.q})")
        return FieldElement(self, value)

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` in the prime subfield."""
        return n % self.p

    def alpha(self, e: int) -> int:
        """``generator ** e`` as an encoded element."""
        return self.power(self.generator, e)

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=DTYPE)

    # -- scalar arithmetic on python ints ----------------------------------
    def sadd(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return int(self.add(a, b))

    def sneg(self, a: int) -> int:
        return a if self.p == 2 else int(self._neg[a]) if self.has_tables else int(self.neg(a))

    def ssub(self, a: int, b: int) -> int:
        return self.sadd(a, self.sneg(b))

    def smul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if not self.has_tables:
            return self._mul_slow(a, b)
        return self._expl[self._logl[a] + self._logl[b]]

    def sinv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if not self.has_tables:
            return self._pow_slow(a, self.q - 2)
        return self._expl[(-self._logl[a]) % (self.q - 1)]

    def sdiv(self, a: int, b: int) -> int:
        return self.smul(a, self.sinv(b))

    def spow(self, a: int, e: int) -> int:
        return int(self.power(a, e))

    # -- vectorized arithmetic on encoded arrays ---------------------------
    def add(self, a, b):
        a = np.asarray(a, dtype=DTYPE)
        b = np.asarray(b, dtype=DTYPE)
        if self.p == 2:
            return a ^ b
        if self._add is not None:
            return self._add[a, b]
        return ((self._digits[a] + self._digits[b]) % self.p) @ self._pows

    def neg(self, a):
        a = np.asarray(a, dtype=DTYPE)
        if self.p == 2:
            return a
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a, dtype=DTYPE)
        b = np.asarray(b, dtype=DTYPE)
        if not self.has_tables:
            return np.vectorize(self._mul_slow, otypes=[DTYPE])(a, b)
        out = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        a = np.asarray(a, dtype=DTYPE)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        if not self.has_tables:
            return np.vectorize(lambda v: self._pow_slow(v, self.q - 2), otypes=[DTYPE])(a)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, e):
        a = np.asarray(a, dtype=DTYPE)
        e = np.asarray(e, dtype=DTYPE)
        if np.any((a == 0) & (e < 0)):
            raise DivisionByZero("negative power of zero")
        if not self.has_tables:
            def one(v, n):
                if v == 0:
                    return 1 if n == 0 else 0
                if n < 0:
                    v, n = self._pow_slow(v, self.q - 2), -n
                return self._pow_slow(v, n)
            return np.vectorize(one, otypes=[DTYPE])(a, e)
        out = self._exp[(self._log[a] * (e % (self.q - 1))) % (self.q - 1)]
        return np.where(a == 0, np.where(e == 0, 1, 0), out)

    def log(self, a):
        """Discrete logarithm with respect to the declared generator."""
        a = np.asarray(a, dtype=DTYPE)
        if np.any(a == 0):
            raise DivisionByZero("discrete log of zero")
        if not self.has_tables:
            raise NotImplementedError("discrete logs need tables (q <= 2**20)")
        return self._log[a]

    def sqrt(self, a):
        """Square root in characteristic 2 (inverse Frobenius, ``a^(q/2)``)."""
        if self.p != 2:
            raise OddCharacteristic("square roots are only unique in characteristic 2")
        return self.power(a, self.q // 2)

    def sum(self, a, axis=None):
        a = np.asarray(a, dtype=DTYPE)
        if self.p == 2:
            if axis is None:
                return np.bitwise_xor.reduce(a.ravel()) if a.size else DTYPE(0)
            if a.shape[axis] == 0:
                return np.zeros(np.delete(a.shape, axis), dtype=DTYPE)
            return np.bitwise_xor.reduce(a, axis=axis)
        if self.has_tables:
            d = self._digits[a]
        else:
            d = np.array([self._decode(int(v)) for v in a.ravel()],
                         dtype=DTYPE).reshape(a.shape + (self.k,))
        if axis is None:
            return (d.reshape(-1, self.k).sum(axis=0) % self.p) @ self._pows
        return (d.sum(axis=axis) % self.p) @ self._pows

    def dot(self, a, b):
        return self.sum(self.mul(a, b))

    def matmul(self, a, b):
        """Matrix product over the field.

        The python-level loop runs over the smallest of the three
        dimensions; each step is one vectorized multiply-accumulate.
        """
        a = np.asarray(a, dtype=DTYPE)
        b = np.asarray(b, dtype=DTYPE)
        vec = b.ndim == 1
        if vec:
            b = b[:, None]
        rows, inner, cols = a.shape[0], a.shape[1], b.shape[1]
        out = np.zeros((rows, cols), dtype=DTYPE)
        if inner == 0 or rows == 0 or cols == 0:
            pass
        elif cols <= min(rows, inner):
            for c in range(cols):
                out[:, c] = self.sum(self.mul(a, b[:, c][None, :]), axis=1)
        elif rows <= inner:
            for r in range(rows):
                out[r] = self.sum(self.mul(a[r][:, None], b), axis=0)
        else:
            for i in range(inner):
                col = a[:, i]
                if col.any():
                    out = self.add(out, self.mul(col[:, None], b[i][None, :]))
        return out[:, 0] if vec else out

    # -- rendering ---------------------------------------------------------
    def render(self, v, symbol: str = "α") -> str:
        v = int(v)
        if v == 0:
            return "0"
        if v == 1:
            return "1"
        e = int(self.log(v))
        return symbol if e == 1 else f"{symbol}^{e}"

    def parse(self, text: str, symbol: str = "α") -> int:
        t = text.strip()
        if t == "0":
            return 0
        if t == "1":
            return 1
        if t.startswith("-") and t[1:].isdigit():
            return self.from_int(-int(t[1:]))
        for sym in (symbol, "a", "alpha"):
            if t == sym:
                return self.generator
            if t.startswith(sym + "^"):
                return int(self.alpha(int(t[len(sym) + 1:])))
        if t.isdigit():
            return self.from_int(int(t))
        raise ValueError(f"cannot parse field element {text!r}")


def check_same(f1: FieldSpec, f2: FieldSpec):
    if f1 is not f2 and f1 != f2:
        raise SpecMismatch("operands belong to different fields")


def ff_make(p: int, k: int, modulus, generator) -> FieldSpec:
    return FieldSpec(p, k, modulus, generator)


class FieldElement:
    """A single element of a :class:`FieldSpec`."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value: int):
        self.field = field
        self.value = int(value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if __debug__:
                check_same(self.field, other.field)
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def _wrap(self, v) -> "FieldElement":
        return FieldElement(self.field, int(v))

    @property
    def rep(self) -> list[int]:
        return self.field._decode(self.value)

    def __add__(self, other):
        o = self._other(other)
        return self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return self._wrap(self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return self._wrap(self.field.div(o, self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.power(self.value, e))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def inverse(self):
        return self._wrap(self.field.inv(self.value))

    def sqrt(self):
        return self._wrap(self.field.sqrt(self.value))

    def log(self) -> int:
        return int(self.field.log(self.value))

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return self.field.render(self.value)


def ff_arith(a: FieldElement, b: FieldElement | None, op: str, e: int | None = None):
    """Dispatch one of ``add, sub, mul, div, pow, inv, neg``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        return a**e
    if op == "inv":
        return a.inverse()
    if op == "neg":
        return -a
    raise ValueError(f"unknown operation {op!r}")


def ff_sqrt_char2(a: FieldElement) -> FieldElement:
    return a.sqrt()


# --- linear algebra --------------------------------------------------------

@dataclass
class Reduction:
    rank: int
    rref: np.ndarray
    pivots: list[int]
    nullspace: np.ndarray = dc_field(default=None)


def _normalize_rows(F: FieldSpec, rows, pivots):
    """Scale each row so its pivot entry is 1."""
    if not len(pivots):
        return rows
    lead = rows[np.arange(len(pivots)), pivots]
    return F.mul(rows, F.inv(lead)[:, None])


def rref(F: FieldSpec, mat) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; zero rows are dropped.

    Pivot rule: for each column in turn, the first row (in current order,
    at or below the pivot position) with a nonzero entry.
    """
    A = np.atleast_2d(np.array(mat, dtype=DTYPE, copy=True))
    m, n = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = F.mul(A[r], F.inv(A[r, c]))
        col = A[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            A[rows] = F.sub(A[rows], F.mul(col[rows][:, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A[:r], pivots


def nullspace_from_rref(F: FieldSpec, R, pivots, n: int) -> np.ndarray:
    """Kernel basis in free-variable form: one vector per non-pivot column."""
    free = [c for c in range(n) if c not in set(pivots)]
    N = np.zeros((len(free), n), dtype=DTYPE)
    for t, f in enumerate(free):
        N[t, f] = 1
        if len(pivots):
            N[t, pivots] = F.neg(R[:, f])
    return N


def row_reduce(F: FieldSpec, mat, mode: str = "rref") -> Reduction:
    """Rank, RREF and (for ``mode='nullspace'``) a kernel basis of ``mat``."""
    A = np.asarray(mat, dtype=DTYPE)
    n = A.shape[1]
    R, piv = rref(F, A)
    red = Reduction(rank=len(piv), rref=R, pivots=piv)
    if mode == "nullspace":
        red.nullspace = nullspace_from_rref(F, R, piv, n)
    elif mode not in ("rank", "rref"):
        raise ValueError(f"unknown mode {mode!r}")
    return red


class RowReducer:
    """Incremental elimination that keeps only a reduced basis of the rows fed.

    Rows arrive in batches; each batch is reduced against the current basis
    and only new pivots are kept, so memory stays at ``rank x ncols`` no
    matter how many rows are streamed.  Feeding stops doing work once the
    rank equals the number of columns.
    """

    def __init__(self, F: FieldSpec, ncols: int):
        self.F = F
        self.ncols = ncols
        self.basis = np.zeros((0, ncols), dtype=DTYPE)
        self.pivots: list[int] = []
        self.rows_seen = 0
        self._kernel_cache = None

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def full(self) -> bool:
        return self.rank == self.ncols

    def reduce(self, rows) -> np.ndarray:
        """Rows minus their projection on the current basis (pivot columns cleared)."""
        X = np.asarray(rows, dtype=DTYPE)
        if X.ndim == 1:
            X = X[None, :]
        if self.rank:
            X = self.F.sub(X, self.F.matmul(X[:, self.pivots], self.basis))
        return X

    def contains(self, row) -> bool:
        return not self.reduce(row).any()

    def _kernel(self) -> np.ndarray:
        if self._kernel_cache is None or self._kernel_cache[0] != self.rank:
            self._kernel_cache = (self.rank, self.nullspace())
        return self._kernel_cache[1]

    def feed(self, rows) -> int:
        """Add rows; returns how many of them increased the rank."""
        X = np.asarray(rows, dtype=DTYPE)
        if X.ndim == 1:
            X = X[None, :]
        self.rows_seen += X.shape[0]
        if self.full or X.shape[0] == 0:
            return 0
        if 2 * self.rank > self.ncols:
            # cheap filter: a row lies in the row space iff it kills the kernel
            hits = self.F.matmul(X, self._kernel().T).any(axis=1)
            X = X[hits]
            if X.shape[0] == 0:
                return 0
        X = self.reduce(X)
        X = X[X.any(axis=1)]
        if X.shape[0] == 0:
            return 0
        R, new_piv = rref(self.F, X)
        if self.rank:
            # clear the new pivot columns from the old basis rows
            B = self.F.sub(self.basis, self.F.matmul(self.basis[:, new_piv], R))
        else:
            B = self.basis
        allrows = np.vstack([B, R])
        allpiv = self.pivots + new_piv
        order = np.argsort(allpiv, kind="stable")
        self.basis = allrows[order]
        self.pivots = [allpiv[i] for i in order]
        return len(new_piv)

    def nullspace(self) -> np.ndarray:
        return nullspace_from_rref(self.F, self.basis, self.pivots, self.ncols)


def rank(F: FieldSpec, mat) -> int:
    return len(rref(F, mat)[1])


def solve(F: FieldSpec, A, b) -> np.ndarray:
    """Solve ``A x = b`` for square nonsingular ``A``; raises ValueError otherwise."""
    A = np.asarray(A, dtype=DTYPE)
    b = np.asarray(b, dtype=DTYPE)
    n = A.shape[0]
    R, piv = rref(F, np.hstack([A, b[:, None]]))
    if piv != list(range(n)):
        raise ValueError("singular system")
    return R[:, n].copy()
