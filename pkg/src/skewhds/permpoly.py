"""The explicit polynomials: Ree-Tits f_a, Dickson D_n(x, a), Ding-Yuan g_u.

All evaluators are vectorised over x (an int code or an array of codes).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from math import comb

import numpy as np

from .field import GF, FieldError


def _require_rt_field(F: GF):
    if F.p != 3 or F.m % 2 == 0:
        raise FieldError("Ree-Tits polynomials need GF(3^m) with m odd")


def eval_f(F: GF, a: int, x):
    """f_a(x) = x^(2*alpha+3) + (a*x)^alpha - a^2*x."""
    _require_rt_field(F)
    al = F.alpha
    t1 = F.pow(x, 2 * al + 3)
    t2 = F.pow(F.mul(a, x), al)
    t3 = F.mul(F.mul(a, a), x)
    return F.sub(F.add(t1, t2), t3)


def eval_spread_g(F: GF, x, y):
    """g(x, y) = -x^(2*alpha+3) - y^alpha of the Ree-Tits slice spread."""
    _require_rt_field(F)
    al = F.alpha
    return F.neg(F.add(F.pow(x, 2 * al + 3), F.pow(y, al)))


def dickson_coefficients(n: int, p: int) -> list[tuple[int, int]]:
    """(exponent, integer coefficient mod p) pairs of D_n(x, a) per power of (-a).

    The rational factor n/(n-j) * C(n-j, j) is an integer; it is computed
    exactly before reduction so no division happens in characteristic p.
    """
    if n < 1:
        raise ValueError("Dickson index must be >= 1")
    out = []
    for j in range(n // 2 + 1):
        num = n * comb(n - j, j)
        assert num % (n - j) == 0
        out.append((j, (num // (n - j)) % p))
    return out


def eval_dickson(F: GF, n: int, a: int, x):
    """D_n(x, a) = sum_j n/(n-j) C(n-j, j) (-a)^j x^(n-2j)."""
    x_arr = np.asarray(x, dtype=np.int64)
    acc = np.zeros_like(x_arr)
    mina = F.neg(a)
    for j, c in dickson_coefficients(n, F.p):
        if c == 0:
            continue
        coef = F.mul(F.from_int(c), F.pow(mina, j))
        acc = F.add(acc, F.mul(np.full_like(x_arr, coef), F.pow(x_arr, n - 2 * j)))
    return acc if isinstance(x, np.ndarray) else int(acc)


def eval_dickson_recurrence(F: GF, n: int, a: int, x):
    """Same polynomial via D_k = x*D_{k-1} - a*D_{k-2}, D_0 = 2, D_1 = x."""
    x_arr = np.asarray(x, dtype=np.int64)
    prev = np.full_like(x_arr, F.from_int(2))
    cur = x_arr.copy()
    if n == 0:
        return prev if isinstance(x, np.ndarray) else int(prev)
    for _ in range(n - 1):
        prev, cur = cur, F.sub(F.mul(x_arr, cur), F.mul(np.full_like(x_arr, a), prev))
    return cur if isinstance(x, np.ndarray) else int(cur)


def eval_dy(F: GF, u: int, x):
    """g_u(x) = x^10 - u*x^6 - u^2*x^2."""
    t = F.sub(F.pow(x, 10), F.mul(u, F.pow(x, 6)))
    return F.sub(t, F.mul(F.mul(u, u), F.pow(x, 2)))


@dataclass
class PolySpec:
    """A polynomial family member; evaluate with `poly(F, x)`."""
    family: str
    params: dict = dfield(default_factory=dict)

    def __call__(self, F: GF, x):
        kind = self.family
        if kind == "reetits":
            return eval_f(F, self.params["a"], x)
        if kind == "dickson":
            return eval_dickson(F, self.params["n"], self.params["a"], x)
        if kind == "dingyuan":
            return eval_dy(F, self.params["u"], x)
        if kind == "custom":
            return eval_custom(F, self.params["coeffs"], x)
        raise ValueError(f"unknown polynomial family {kind!r}")

    def text(self, F: GF) -> str:
        """Canonical descending-monomial rendering; field constants printed as codes."""
        terms = self.monomials(F)
        parts = []
        for e, c in terms:
            mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
            if c == 1 and e:
                parts.append(mono)
            else:
                parts.append(f"[{c}]{mono}" if mono else f"[{c}]")
        return " + ".join(parts) or "0"

    def monomials(self, F: GF) -> list[tuple[int, int]]:
        """(exponent, coefficient code) pairs with like terms merged, descending by exponent."""
        acc: dict[int, int] = {}

        def put(e, c):
            acc[e] = F.add(acc.get(e, 0), c)

        kind = self.family
        if kind == "reetits":
            a, al = self.params["a"], F.alpha
            put(2 * al + 3, 1)
            put(al, F.pow(a, al))
            put(1, F.neg(F.mul(a, a)))
        elif kind == "dickson":
            n, a = self.params["n"], self.params["a"]
            for j, c in dickson_coefficients(n, F.p):
                put(n - 2 * j, F.mul(F.from_int(c), F.pow(F.neg(a), j)))
        elif kind == "dingyuan":
            u = self.params["u"]
            put(10, 1)
            put(6, F.neg(u))
            put(2, F.neg(F.mul(u, u)))
        elif kind == "custom":
            for e, c in enumerate(self.params["coeffs"]):
                put(e, c)
        return [(e, c) for e, c in sorted(acc.items(), reverse=True) if c]


def eval_custom(F: GF, coeffs, x):
    """Coefficient codes listed constant term first."""
    x_arr = np.asarray(x, dtype=np.int64)
    acc = np.zeros_like(x_arr)
    for e, c in enumerate(coeffs):
        if c:
            acc = F.add(acc, F.mul(np.full_like(x_arr, c), F.pow(x_arr, e)))
    return acc if isinstance(x, np.ndarray) else int(acc)


def is_permutation_values(values, q: int) -> bool:
    hit = np.zeros(q, dtype=bool)
    hit[np.asarray(values)] = True
    return bool(hit.all())


def is_permutation(poly, F: GF) -> bool:
    """Exhaustive image check; `poly` is a PolySpec or any callable (F, x) -> codes."""
    return is_permutation_values(poly(F, F.elements()), F.q)


def dickson_scaling_identity_check(F: GF, samples: int = 100_000, seed: int = 0) -> bool:
    """b^5 D_5(x, a) == D_5(b x, b^2 a); exhaustive for q <= 243, sampled otherwise."""
    if F.p != 3:
        raise FieldError("identity is checked in characteristic 3")
    q = F.q
    if q <= 243:
        a, x = (g.ravel() for g in np.meshgrid(F.elements(), F.elements(), indexing="ij"))
        for b in range(q):
            bb = np.full_like(x, b)
            lhs = F.mul(F.pow(bb, 5), eval_dickson_pointwise(F, 5, a, x))
            rhs = eval_dickson_pointwise(F, 5, F.mul(F.mul(bb, bb), a), F.mul(bb, x))
            if not np.array_equal(lhs, rhs):
                return False
        return True
    rng = np.random.default_rng(seed)
    a = rng.integers(0, q, samples)
    b = rng.integers(0, q, samples)
    x = rng.integers(0, q, samples)
    lhs = F.mul(F.pow(b, 5), eval_dickson_pointwise(F, 5, a, x))
    rhs = eval_dickson_pointwise(F, 5, F.mul(F.mul(b, b), a), F.mul(b, x))
    return bool(np.array_equal(lhs, rhs))


def eval_dickson_pointwise(F: GF, n: int, a, x):
    """D_n with a per-point parameter array `a`."""
    x = np.asarray(x, dtype=np.int64)
    a = np.broadcast_to(np.asarray(a, dtype=np.int64), x.shape)
    acc = np.zeros_like(x)
    mina = F.neg(np.ascontiguousarray(a))
    for j, c in dickson_coefficients(n, F.p):
        if c == 0:
            continue
        coef = F.scalar_mul(c, F.pow(mina, j))
        acc = F.add(acc, F.mul(coef, F.pow(x, n - 2 * j)))
    return acc


def rt_scaling_identity_check(F: GF, samples: int = 100_000, seed: int = 0) -> bool:
    """b^(2alpha+3) f_a(x/b) == f_{a b^(alpha+1)}(x) for nonzero b."""
    _require_rt_field(F)
    q, al = F.q, F.alpha
    if q <= 27:
        xs = F.elements()
        for a in range(q):
            for b in range(1, q):
                lhs = F.mul(np.full(q, F.pow(b, 2 * al + 3)), eval_f(F, a, F.mul(xs, np.full(q, F.inv(b)))))
                rhs = eval_f(F, F.mul(a, F.pow(b, al + 1)), xs)
                if not np.array_equal(lhs, rhs):
                    return False
        return True
    rng = np.random.default_rng(seed)
    a = rng.integers(0, q, samples)
    b = rng.integers(1, q, samples)
    x = rng.integers(0, q, samples)
    lhs = F.mul(F.pow(b, 2 * al + 3), eval_f(F, a, F.mul(x, F.inv(b))))
    rhs = eval_f(F, F.mul(a, F.pow(b, al + 1)), x)
    return bool(np.array_equal(lhs, rhs))
