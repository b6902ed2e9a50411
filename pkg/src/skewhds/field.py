"""Table-driven arithmetic in GF(p^m).

Elements are integer codes: the polynomial-basis coordinates a_0..a_{m-1}
packed as sum(a_i * p**i).  Code 0 is zero and code 1 is one.  Every
vectorised method accepts a Python int or a numpy integer array of codes.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

MAX_FIELD_ORDER = 2 ** 21
ADD_TABLE_LIMIT = 3 ** 7


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, m) with n == p**m, or None if n is not a prime power."""
    if n < 2:
        return None
    for p in range(2, int(n ** 0.5) + 2):
        if p * p > n:
            break
        if n % p == 0:
            m = 0
            while n % p == 0:
                n //= p
                m += 1
            return (p, m) if n == 1 else None
    return (n, 1)


# -- polynomials over GF(p), coefficient lists with constant term first --

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, f, p):
    a = _trim(a)
    f = _trim(f)
    inv_lead = pow(f[-1], -1, p)
    while len(a) >= len(f):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(f)
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        a = _trim(a)
    return a


def _poly_mulmod(a, b, f, p):
    prod = [0] * (len(a) + len(b))
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _poly_mod(prod, f, p)


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _poly_gcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(modulus, p: int) -> bool:
    """Rabin-style test: no factor of degree d <= m/2 divides the modulus."""
    f = _trim(modulus)
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if f[0] == 0:
        return False
    xpow = [0, 1]
    for d in range(1, m // 2 + 1):
        # xpow <- xpow^p mod f, i.e. x^(p^d)
        acc = [1]
        base = xpow
        e = p
        while e:
            if e & 1:
                acc = _poly_mulmod(acc, base, f, p)
            base = _poly_mulmod(base, base, f, p)
            e >>= 1
        xpow = acc
        g = _poly_gcd(f, _poly_sub(xpow, [0, 1], p), p)
        if len(g) > 1:
            return False
    return True


def smallest_irreducible(p: int, m: int) -> list[int]:
    # lexicographic order on (c_0, ..., c_{m-1}) with c_0 most significant
    for coeffs in itertools.product(range(p), repeat=m):
        cand = list(coeffs) + [1]
        if is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")


@dataclass(frozen=True)
class FieldSpec:
    p: int
    m: int
    modulus: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.p ** self.m

    def to_dict(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "FieldSpec":
        return cls(int(d["p"]), int(d["m"]), tuple(int(c) for c in d["modulus"]))


class GF:
    """GF(p^m) with exp/log, trace and square tables over a fixed primitive element."""

    def __init__(self, spec: FieldSpec):
        p, m = spec.p, spec.m
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if m < 1:
            raise FieldError("extension degree must be >= 1")
        if p ** m > MAX_FIELD_ORDER:
            raise FieldError(f"GF({p}^{m}) exceeds the table bound of {MAX_FIELD_ORDER} elements")
        mod = tuple(int(c) for c in spec.modulus)
        if len(mod) != m + 1 or mod[-1] != 1 or any(not 0 <= c < p for c in mod):
            raise FieldError(f"modulus must be monic of degree {m} with coefficients in [0, {p})")
        if not is_irreducible(mod, p):
            raise FieldError(f"modulus {list(mod)} is reducible over GF({p})")
        self.spec = FieldSpec(p, m, mod)
        self.p = p
        self.m = m
        self.q = p ** m
        self.order = self.q
        self._pw = np.array([p ** i for i in range(m)], dtype=np.int64)
        codes = np.arange(self.q, dtype=np.int64)
        self.digits = ((codes[:, None] // self._pw[None, :]) % p).astype(np.int64)
        self.add_table = self._build_add_table() if self.q <= ADD_TABLE_LIMIT and m > 1 else None
        self.neg_table = ((-self.digits) % p) @ self._pw
        self._build_mul_tables()
        self._build_trace()

    # -- construction --

    def _build_add_table(self) -> np.ndarray:
        q = self.q
        table = np.empty((q, q), dtype=np.int16 if q < 2 ** 15 else np.int32)
        step = max(1, 2 ** 20 // (q * self.m))
        for lo in range(0, q, step):
            rows = self.digits[lo:lo + step, None, :] + self.digits[None, :, :]
            table[lo:lo + step] = (rows % self.p) @ self._pw
        return table

    def _mul_matrix(self, g: int) -> np.ndarray:
        """Matrix of x -> g*x on coordinate vectors (column j = g * x^j)."""
        p, m = self.p, self.m
        f = list(self.spec.modulus)
        gpoly = _trim([int(d) for d in self.digits[g]]) if g < self.q else None
        cols = []
        for j in range(m):
            prod = _poly_mulmod(gpoly, [0] * j + [1], f, p)
            cols.append(prod + [0] * (m - len(prod)))
        return np.array(cols, dtype=np.int64).T

    def _matpow(self, M: np.ndarray, e: int) -> np.ndarray:
        R = np.eye(self.m, dtype=np.int64)
        while e:
            if e & 1:
                R = R @ M % self.p
            M = M @ M % self.p
            e >>= 1
        return R

    def _build_mul_tables(self):
        q, p = self.q, self.p
        n = q - 1
        eye = np.eye(self.m, dtype=np.int64)
        factors = prime_factors(n) if n > 1 else []
        gen = None
        for g in range(1, q):
            M = self._mul_matrix(g)
            if all(not np.array_equal(self._matpow(M, n // l), eye) for l in factors):
                gen = g
                break
        if gen is None:
            raise FieldError("no primitive element found")
        self.generator = gen
        step = (self.digits @ M.T % p) @ self._pw  # code -> gen * code
        exp = np.empty(2 * n, dtype=np.int64)
        x = 1
        for k in range(n):
            exp[k] = x
            x = int(step[x])
        exp[n:] = exp[:n]
        log = np.full(q, -1, dtype=np.int64)
        log[exp[:n]] = np.arange(n)
        self.exp_table = exp
        self.log_table = log
        # zero-absorbing variants: log(0) lands in a block of zeros
        self._zlog = np.where(log < 0, 2 * n, log)
        self._zexp = np.concatenate([exp, np.zeros(2 * n + 1, dtype=np.int64)])

    def _build_trace(self):
        codes = np.arange(self.q, dtype=np.int64)
        acc = np.zeros(self.q, dtype=np.int64)
        for i in range(self.m):
            acc = self.add(acc, self.frobenius(codes, i))
        if np.any(acc >= self.p):
            raise FieldError("trace left the prime field; tables are inconsistent")
        self.trace_table = acc
        sq = np.zeros(self.q, dtype=np.int8)
        if self.p != 2:
            nz = codes[1:]
            sq[1:] = np.where(self.log_table[nz] % 2 == 0, 1, -1)
        self.chi_table = sq

    # -- identity --

    def __eq__(self, other):
        return isinstance(other, GF) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"GF({self.p}^{self.m}, modulus={list(self.spec.modulus)})"

    def __call__(self, code) -> "FieldElement":
        return FieldElement(self, self.coerce(code))

    def coerce(self, v) -> int:
        if isinstance(v, FieldElement):
            if v.field != self:
                raise FieldError("element belongs to a different field")
            return v.code
        v = int(v)
        if 0 <= v < self.q:
            return v
        raise FieldError(f"code {v} out of range for GF({self.p}^{self.m})")

    def from_int(self, n: int) -> int:
        """The element n*1 of the prime subfield."""
        return n % self.p

    @property
    def alpha(self) -> int:
        """3^((m+1)/2), the exponent of the Ree-Tits family; only for p=3, m odd."""
        if self.p != 3 or self.m % 2 == 0:
            raise FieldError("alpha is defined only for GF(3^m) with m odd")
        return 3 ** ((self.m + 1) // 2)

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def nonzero(self) -> np.ndarray:
        return np.arange(1, self.q, dtype=np.int64)

    # -- vectorised arithmetic on codes --

    def encode(self, digits) -> np.ndarray:
        return (np.asarray(digits, dtype=np.int64) % self.p) @ self._pw

    def add(self, x, y):
        if self.m == 1:
            r = (np.asarray(x) + np.asarray(y)) % self.p
        elif self.add_table is not None:
            r = self.add_table[x, y].astype(np.int64)
        else:
            r = ((self.digits[x] + self.digits[y]) % self.p) @ self._pw
        return r if _isarr(x, y) else int(r)

    def neg(self, x):
        r = self.neg_table[x]
        return r if _isarr(x) else int(r)

    def sub(self, x, y):
        if self.m == 1:
            r = (np.asarray(x) - np.asarray(y)) % self.p
            return r if _isarr(x, y) else int(r)
        return self.add(x, self.neg(y))

    def scalar_mul(self, k: int, x):
        """k*x for an integer k (repeated addition)."""
        return self.mul(self.from_int(k), x)

    def mul(self, x, y):
        n = self.q - 1
        if _isarr(x, y):
            return self._zexp[self._zlog[x] + self._zlog[y]]
        x, y = int(x), int(y)
        if x == 0 or y == 0:
            return 0
        return int(self.exp_table[(self.log_table[x] + self.log_table[y]) % n])

    def inv(self, x):
        n = self.q - 1
        if _isarr(x):
            x = np.asarray(x, dtype=np.int64)
            if np.any(x == 0):
                raise ZeroDivisionError("inverse of zero")
            return self.exp_table[(-self.log_table[x]) % n]
        if int(x) == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.exp_table[(-self.log_table[int(x)]) % n])

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def pow(self, x, k: int):
        """x**k; negative k needs nonzero x.  0**0 is 1."""
        n = self.q - 1
        if _isarr(x):
            x = np.asarray(x, dtype=np.int64)
            if k < 0 and np.any(x == 0):
                raise ZeroDivisionError("negative power of zero")
            if k == 0:
                return np.ones_like(x)
            lx = self._zlog[x]
            r = self.exp_table[(lx * (k % n)) % n]
            return np.where(lx == 2 * n, 0, r)
        x = int(x)
        if k == 0:
            return 1
        if x == 0:
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        return int(self.exp_table[(int(self.log_table[x]) * (k % n)) % n])

    def frobenius(self, x, j: int):
        return self.pow(x, self.p ** (j % self.m))

    def trace(self, x):
        r = self.trace_table[x]
        return r if _isarr(x) else int(r)

    def quadratic_character(self, x):
        if self.p == 2:
            raise FieldError("quadratic character needs odd characteristic")
        r = self.chi_table[x]
        return r.astype(np.int64) if _isarr(x) else int(r)

    chi = quadratic_character

    def log(self, x):
        if _isarr(x):
            if np.any(np.asarray(x) == 0):
                raise ZeroDivisionError("log of zero")
            return self.log_table[x]
        if int(x) == 0:
            raise ZeroDivisionError("log of zero")
        return int(self.log_table[int(x)])

    def squares(self) -> np.ndarray:
        """Nonzero squares, ascending."""
        return np.flatnonzero(self.chi_table == 1)

    def poly_str(self, code: int) -> str:
        terms = []
        for i in reversed(range(self.m)):
            c = int(self.digits[code][i])
            if c:
                mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(mono if c == 1 and i else f"{c}" if i == 0 else f"{c}*{mono}")
        return " + ".join(terms) or "0"


def _isarr(*xs) -> bool:
    return any(isinstance(x, np.ndarray) for x in xs)


class FieldElement:
    """Scalar convenience wrapper around a code; mixing fields raises FieldError."""

    __slots__ = ("field", "code")

    def __init__(self, field: GF, code: int):
        self.field = field
        self.code = int(code)

    def _other(self, y) -> int:
        if isinstance(y, FieldElement):
            if y.field != self.field:
                raise FieldError("cannot combine elements of different fields")
            return y.code
        if isinstance(y, (int, np.integer)):
            return self.field.from_int(int(y))
        return NotImplemented

    def _wrap(self, c):
        return FieldElement(self.field, c)

    def __add__(self, y):
        return self._wrap(self.field.add(self.code, self._other(y)))

    __radd__ = __add__

    def __sub__(self, y):
        return self._wrap(self.field.sub(self.code, self._other(y)))

    def __rsub__(self, y):
        return self._wrap(self.field.sub(self._other(y), self.code))

    def __mul__(self, y):
        return self._wrap(self.field.mul(self.code, self._other(y)))

    __rmul__ = __mul__

    def __truediv__(self, y):
        return self._wrap(self.field.div(self.code, self._other(y)))

    def __neg__(self):
        return self._wrap(self.field.neg(self.code))

    def __pow__(self, k: int):
        return self._wrap(self.field.pow(self.code, k))

    def inverse(self):
        return self._wrap(self.field.inv(self.code))

    def trace(self) -> int:
        return self.field.trace(self.code)

    def chi(self) -> int:
        return self.field.quadratic_character(self.code)

    def frobenius(self, j: int = 1):
        return self._wrap(self.field.frobenius(self.code, j))

    def __eq__(self, y):
        if isinstance(y, FieldElement):
            if y.field != self.field:
                raise FieldError("cannot compare elements of different fields")
            return self.code == y.code
        if isinstance(y, (int, np.integer)):
            return self.code == self.field.from_int(int(y))
        return NotImplemented

    def __hash__(self):
        return hash((self.field.spec, self.code))

    def __int__(self):
        return self.code

    def __repr__(self):
        return f"<{self.code} in GF({self.field.p}^{self.field.m})>"


_cache: dict[tuple, GF] = {}


def make_field(p: int, m: int, modulus=None) -> GF:
    """Build (and cache) GF(p^m); the default modulus is the lexicographically smallest irreducible."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if m < 1:
        raise FieldError("extension degree must be >= 1")
    if p ** m > MAX_FIELD_ORDER:
        raise FieldError(f"GF({p}^{m}) exceeds the table bound of {MAX_FIELD_ORDER} elements")
    if modulus is None:
        modulus = smallest_irreducible(p, m)
    key = (p, m, tuple(int(c) for c in modulus))
    if key not in _cache:
        _cache[key] = GF(FieldSpec(*key))
    return _cache[key]


def gf3(m: int, modulus=None) -> GF:
    return make_field(3, m, modulus)


def field_from_order(q: int) -> GF:
    pp = prime_power(q)
    if pp is None:
        raise FieldError(f"{q} is not a prime power")
    return make_field(*pp)
