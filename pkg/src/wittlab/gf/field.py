"""Finite fields F_{p^m} in polynomial representation.

An element of F_{p^m} = F_p[u]/(f(u)) is stored as an integer *code*
``sum(c_k * p**k)`` where ``c_0 + c_1 u + ... + c_{m-1} u^{m-1}`` is its
reduced representative.  Bulk data (ring coefficients, matrices) is kept in
numpy arrays whose trailing axis of length ``m`` holds these digits; the
array helpers on :class:`FieldCtx` operate on that layout.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

__all__ = [
    "FieldError",
    "NonPrime",
    "EvenOrSmallChar",
    "DivByZero",
    "FieldCtx",
    "FieldElt",
    "ff_build",
    "ff_arith",
    "ff_frobenius",
    "is_prime",
    "parse_elt",
]

_LOG_TABLE_LIMIT = 20000


class FieldError(ValueError):
    pass


class NonPrime(FieldError):
    pass


class EvenOrSmallChar(FieldError):
    pass


class DivByZero(ZeroDivisionError):
    pass


def is_prime(k: int) -> bool:
    if k < 2:
        return False
    if k % 2 == 0:
        return k == 2
    f = 3
    while f * f <= k:
        if k % f == 0:
            return False
        f += 2
    return True


# -- dense polynomials over the prime field, as lists of ints (low first) --

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % p
    return _trim(a[:df] if len(a) > df else a)


def _fp_mulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _fp_mod(out, f, p)


def _fp_powmod(a, e, f, p):
    result = [1]
    base = _fp_mod(a, f, p)
    while e:
        if e & 1:
            result = _fp_mulmod(result, base, f, p)
        base = _fp_mulmod(base, base, f, p)
        e >>= 1
    return result


def _fp_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _fp_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def _is_irreducible(f, p):
    """Degree-m monic f is irreducible iff gcd(f, t^{p^k} - t) = 1 for k <= m/2."""
    m = len(f) - 1
    if m == 1:
        return True
    h = [0, 1]
    for _ in range(m // 2):
        h = _fp_powmod(h, p, f, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        if len(_fp_gcd(f, _trim(diff), p)) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def _least_irreducible(p: int, m: int) -> tuple:
    # coefficient tuples (c_0, ..., c_{m-1}) in lex order, c_0 most significant
    if m == 1:
        return (0, 1)
    # a zero constant term means t divides f, so that whole block is skipped
    for c0 in range(1, p):
        for rest in itertools.product(range(p), repeat=m - 1):
            f = [c0, *rest, 1]
            if _is_irreducible(f, p):
                return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FieldCtx:
    """The field F_{p^m} with a fixed monic irreducible modulus."""

    def __init__(self, p: int, m: int, modulus: tuple):
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = tuple(modulus)
        self._pows = [p**k for k in range(m)]
        # digits of u^{m+i} reduced, for i = 0..m-2
        red = np.zeros((max(m - 1, 0), m), dtype=np.int64)
        cur = [(-c) % p for c in self.modulus[:m]]  # u^m
        for i in range(m - 1):
            red[i] = cur
            # multiply by u
            top = cur[-1]
            cur = [0] + cur[:-1]
            cur = [(cur[j] - top * self.modulus[j]) % p for j in range(m)]
        self._red = red
        self._log = None
        self._exp = None
        self._add_table = None

    # -- identity ---------------------------------------------------------

    def __repr__(self):
        return f"FieldCtx(p={self.p}, m={self.m}, modulus={self.modulus})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and self.p == other.p
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.modulus))

    @property
    def tag(self) -> str:
        return f"gf({self.p}^{self.m})"

    # -- code <-> digits --------------------------------------------------

    def digits(self, code: int) -> list:
        p = self.p
        out = []
        for _ in range(self.m):
            code, r = divmod(code, p)
            out.append(r)
        return out

    def from_digits(self, digits) -> int:
        return sum(int(d) % self.p * w for d, w in zip(digits, self._pows))

    def from_int(self, k: int) -> int:
        return k % self.p

    def gen(self) -> int:
        """Code of the class of u."""
        if self.m == 1:
            return (-self.modulus[0]) % self.p
        return self.p

    def elements(self):
        return range(self.q)

    # -- scalar arithmetic on codes ----------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return int(self._add_table[a, b])
        p = self.p
        out, w = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * w
            a //= p
            b //= p
            w *= p
        return out

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        p = self.p
        out, w = 0, 1
        while a:
            out += ((-(a % p)) % p) * w
            a //= p
            w *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self.q <= _LOG_TABLE_LIMIT:
            self._ensure_tables()
            return int(self._exp[(self._log[a] + self._log[b]) % (self.q - 1)])
        return self._mul_digits(a, b)

    def _mul_digits(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        da, db = self.digits(a), self.digits(b)
        full = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    full[i + j] += x * y
        out = [v % p for v in full[:m]]
        for i in range(m - 1):
            c = full[m + i] % p
            if c:
                row = self._red[i]
                for j in range(m):
                    out[j] = (out[j] + c * int(row[j])) % p
        return self.from_digits(out)

    def _ensure_tables(self):
        if self._log is not None:
            return
        q = self.q
        order = q - 1
        factors = [f for f in range(2, order + 1) if order % f == 0 and is_prime(f)]
        for g in range(2, q):
            if all(self._pow_slow(g, order // f) != 1 for f in factors):
                break
        exp = np.zeros(order, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for k in range(order):
            exp[k] = x
            log[x] = k
            x = self._mul_digits(x, g)
        self._exp, self._log = exp, log
        if q <= 1024:
            digs = np.array([self.digits(c) for c in range(q)], dtype=np.int64)
            s = (digs[:, None, :] + digs[None, :, :]) % self.p
            self._add_table = s @ np.array(self._pows, dtype=np.int64)

    def _pow_slow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_digits(result, base)
            base = self._mul_digits(base, base)
            e >>= 1
        return result

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a = self.inv(a)
            e = -e
        if self.m == 1:
            return pow(a, e, self.p)
        if a == 0:
            return 1 if e == 0 else 0
        if self.q <= _LOG_TABLE_LIMIT:
            self._ensure_tables()
            return int(self._exp[(int(self._log[a]) * e) % (self.q - 1)])
        return self._pow_slow(a, e % (self.q - 1))

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivByZero("division by zero in " + self.tag)
        if self.m == 1:
            return pow(a, -1, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frob(self, a: int, k: int = 1) -> int:
        """a^{p^k}."""
        k %= self.m
        if k == 0 or self.m == 1:
            return a
        return self.pow(a, self.p**k)

    def pth_root(self, a: int) -> int:
        return self.frob(a, self.m - 1)

    # -- digit arrays (trailing axis of length m) ----------------------------

    def encode(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        if self.m == 1:
            return (codes % self.p)[..., None]
        out = np.empty(codes.shape + (self.m,), dtype=np.int64)
        c = codes.copy()
        for k in range(self.m):
            out[..., k] = c % self.p
            c //= self.p
        return out

    def decode(self, arr) -> np.ndarray:
        arr = np.asarray(arr, dtype=np.int64)
        if self.m == 1:
            return arr[..., 0].copy()
        return arr @ np.array(self._pows, dtype=np.int64)

    def zeros(self, shape) -> np.ndarray:
        if isinstance(shape, int):
            shape = (shape,)
        return np.zeros(tuple(shape) + (self.m,), dtype=np.int64)

    def ones_like_scalar(self) -> np.ndarray:
        z = np.zeros(self.m, dtype=np.int64)
        z[0] = 1
        return z

    def eye(self, d: int) -> np.ndarray:
        out = self.zeros((d, d))
        out[np.arange(d), np.arange(d), 0] = 1
        return out

    def reduce_full(self, full: np.ndarray) -> np.ndarray:
        """Reduce digit arrays of length 2m-1 (unreduced products) to length m."""
        p, m = self.p, self.m
        full = full % p
        if m == 1:
            return full
        return (full[..., :m] + full[..., m:] @ self._red) % p

    def amul(self, a, b) -> np.ndarray:
        """Elementwise product of digit arrays with broadcasting."""
        p, m = self.p, self.m
        if m == 1:
            return a * b % p
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        full = np.zeros(a.shape[:-1] + (2 * m - 1,), dtype=np.int64)
        for i in range(m):
            full[..., i:i + m] += a[..., i:i + 1] * b
        return self.reduce_full(full)

    def ascale(self, a, code: int) -> np.ndarray:
        """Multiply a digit array by the scalar with the given code."""
        if self.m == 1:
            return a * code % self.p
        return self.amul(a, self.encode(code))

    def anonzero(self, a) -> np.ndarray:
        return np.asarray(a).any(axis=-1)

    def elt(self, x) -> "FieldElt":
        if isinstance(x, FieldElt):
            if x.ctx != self:
                raise FieldError("element belongs to a different field")
            return x
        return FieldElt(self, self.from_int(int(x)))

    def to_elts(self, arr) -> list:
        return [FieldElt(self, int(c)) for c in np.ravel(self.decode(arr))]

    # -- serialization -----------------------------------------------------

    def serialize(self, code: int) -> str:
        return f"{self.tag}:{self.digit_string(code)}"

    def digit_string(self, code: int) -> str:
        sep = "" if self.p <= 10 else "."
        return sep.join(str(d) for d in self.digits(code))

    def parse_digit_string(self, s: str) -> int:
        parts = list(s) if self.p <= 10 else s.split(".")
        if len(parts) != self.m:
            raise FieldError(f"expected {self.m} digits, got {s!r}")
        digits = [int(d) for d in parts]
        if any(d < 0 or d >= self.p for d in digits):
            raise FieldError(f"digit out of range in {s!r}")
        return self.from_digits(digits)


@lru_cache(maxsize=None)
def ff_build(p: int, m: int = 1) -> FieldCtx:
    """Return F_{p^m} with the lexicographically least monic irreducible modulus."""
    if not isinstance(p, int) or not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if p <= 2:
        raise EvenOrSmallChar("characteristic must be an odd prime")
    if m < 1:
        raise FieldError("extension degree must be >= 1")
    return FieldCtx(p, m, _least_irreducible(p, m))


class FieldElt:
    """An element of a :class:`FieldCtx`; immutable."""

    __slots__ = ("ctx", "v")

    def __init__(self, ctx: FieldCtx, v: int):
        self.ctx = ctx
        self.v = v

    def _coerce(self, other):
        if isinstance(other, FieldElt):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise FieldError("operands belong to different fields")
            return other.v
        if isinstance(other, (int, np.integer)):
            return self.ctx.from_int(int(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElt(self.ctx, self.ctx.add(self.v, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElt(self.ctx, self.ctx.sub(self.v, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElt(self.ctx, self.ctx.sub(o, self.v))

    def __neg__(self):
        return FieldElt(self.ctx, self.ctx.neg(self.v))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElt(self.ctx, self.ctx.mul(self.v, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElt(self.ctx, self.ctx.div(self.v, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElt(self.ctx, self.ctx.div(o, self.v))

    def __pow__(self, e: int):
        return FieldElt(self.ctx, self.ctx.pow(self.v, e))

    def inverse(self):
        return FieldElt(self.ctx, self.ctx.inv(self.v))

    def frobenius(self, k: int = 1):
        return FieldElt(self.ctx, self.ctx.frob(self.v, k))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.v == o

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.m, self.v))

    def __bool__(self):
        return self.v != 0

    def is_zero(self) -> bool:
        return self.v == 0

    def digits(self) -> list:
        return self.ctx.digits(self.v)

    def serialize(self) -> str:
        return self.ctx.serialize(self.v)

    def __repr__(self):
        return self.serialize()

    def __int__(self):
        if self.ctx.m != 1:
            raise TypeError("only prime-field elements convert to int")
        return self.v


def parse_elt(text: str) -> FieldElt:
    """Inverse of :meth:`FieldElt.serialize`."""
    head, _, body = text.partition(":")
    if not head.startswith("gf(") or not head.endswith(")") or "^" not in head:
        raise FieldError(f"not a field element: {text!r}")
    p_s, m_s = head[3:-1].split("^")
    ctx = ff_build(int(p_s), int(m_s))
    return FieldElt(ctx, ctx.parse_digit_string(body))


def ff_arith(a: FieldElt, b: FieldElt, op: str) -> FieldElt:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def ff_frobenius(a: FieldElt, k: int) -> FieldElt:
    if k < 0:
        raise ValueError("k must be non-negative")
    return a.frobenius(k)
