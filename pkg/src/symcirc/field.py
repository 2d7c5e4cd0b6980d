"""Exact arithmetic in F_p and F_{p^k}.

Elements are plain ints in ``[0, q)``: the base-``p`` digits of the int are the
coefficient vector of the element in ``F_p[x]/(irred)``, lowest degree first.
``FieldElem`` wraps an int together with its context for operator use.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import DivisionByZero, ExtensionTooLarge, FieldTooSmall, NotIrreducible, NotPrime

TABLE_LIMIT = 1 << 22


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


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- dense polynomials over F_p as lists (ascending), used only for field setup


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    inv_lead = pow(m[-1], p - 2, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pmod(out, m, p)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _is_irreducible(f: Sequence[int], p: int) -> bool:
    """Ben-Or test: f has no factor of degree <= k/2 iff gcd(x^{p^i} - x, f) = 1."""
    f = _trim([c % p for c in f])
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    cur = x
    for _ in range(k // 2):
        # cur <- cur^p mod f
        r, base, e = [1], cur, p
        while e:
            if e & 1:
                r = _pmulmod(r, base, f, p)
            base = _pmulmod(base, base, f, p)
            e >>= 1
        cur = r
        diff = list(cur) + [0] * max(0, 2 - len(cur))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(f, _trim(diff), p)) > 1:
            return False
    return True


@dataclass(frozen=True, eq=False)
class FieldCtx:
    p: int
    k: int
    irred: tuple[int, ...]
    q: int = dc_field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.p**self.k)

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.k, self.irred) == (other.p, other.k, other.irred)

    def __hash__(self):
        return hash((self.p, self.k, self.irred))

    def __repr__(self):
        return f"FieldCtx({self.spec})"

    @property
    def spec(self) -> str:
        if self.k == 1:
            return str(self.p)
        return f"{self.p}^{self.k}:" + ",".join(map(str, self.irred))

    @property
    def char(self) -> int:
        return self.p

    # -- encoding

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F."""
        return n % self.p

    def to_vec(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_vec(self, v: Sequence[int]) -> int:
        if len(v) > self.k:
            v = _pmod(list(v), list(self.irred), self.p) if self.k > 1 else [sum(v) % self.p]
        n = 0
        for c in reversed(list(v)):
            n = n * self.p + (c % self.p)
        return n

    def elem(self, a) -> "FieldElem":
        if isinstance(a, FieldElem):
            return a
        if isinstance(a, (list, tuple)):
            return FieldElem(self, self.from_vec(a))
        return FieldElem(self, self.from_int(a))

    # -- tables for extension fields

    @cached_property
    def _tables(self):
        """(log, exp, digits, powers) tables; built lazily for q <= TABLE_LIMIT."""
        q, p, k = self.q, self.p, self.k
        digits = np.zeros((q, k), dtype=np.int64)
        ar = np.arange(q, dtype=np.int64)
        for i in range(k):
            digits[:, i] = ar % p
            ar //= p
        pw = np.array([p**i for i in range(k)], dtype=np.int64)
        g = self._find_generator()
        # powers of g by doubling: multiplying by a fixed scalar is F_p-linear
        # on coefficient vectors, so each step is one matrix product
        block = np.zeros((1, k), dtype=np.float64)
        block[0, 0] = 1
        n = 1
        while n < q - 1:
            G = self._slow_pow(g, n)
            M = np.array([self.to_vec(self._slow_mul(G, p**j)) for j in range(k)], dtype=np.float64)
            block = np.vstack([block, np.mod(block @ M, p)])
            n *= 2
        exp1 = block[: q - 1].astype(np.int64) @ pw
        exp = np.concatenate([exp1, exp1])
        log = np.zeros(q, dtype=np.int64)
        log[exp1] = np.arange(q - 1, dtype=np.int64)
        return log, exp, digits, pw

    @cached_property
    def _lists(self):
        """List copies of log/exp plus Zech logs log(1 + g^i) (-1 where 1 + g^i = 0)."""
        log, exp, dg, pw = self._tables
        ones = (dg[exp[: self.q - 1]] + dg[1]) % self.p @ pw
        zech = np.where(ones == 0, -1, log[ones])
        return log.tolist(), exp.tolist(), zech.tolist()

    @cached_property
    def _packing(self):
        """Digits packed b bits apart in one int64; sums of up to m packed values cannot carry."""
        b = 63 // self.k
        _, _, dg, _ = self._tables
        shifts = np.arange(self.k, dtype=np.int64) * b
        return dg @ (np.int64(1) << shifts), b, ((1 << b) - 1) // (self.p - 1)

    def _slow_mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        return self.from_vec(_pmulmod(self.to_vec(a), self.to_vec(b), list(self.irred), self.p))

    def _slow_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return r

    def _find_generator(self) -> int:
        n = self.q - 1
        fs = _prime_factors(n)
        for g in range(2 if self.q > 2 else 1, self.q):
            if all(self._slow_pow(g, n // f) != 1 for f in fs):
                return g
        return 1

    @property
    def has_tables(self) -> bool:
        return self.q <= TABLE_LIMIT

    # -- scalar arithmetic on encoded ints

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if a == 0 or b == 0:
            return a or b
        if self.has_tables:
            log, exp, zech = self._lists
            la = log[a]
            z = zech[(log[b] - la) % (self.q - 1)]
            return 0 if z < 0 else exp[la + z]
        return self.from_vec([(x + y) % self.p for x, y in zip(self.to_vec(a), self.to_vec(b))])

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        if self.p == 2 or a == 0:
            return a
        if self.has_tables:
            log, exp, _ = self._lists
            return exp[log[a] + (self.q - 1) // 2]
        return self.from_vec([-c for c in self.to_vec(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self.has_tables:
            log, exp, _ = self._lists
            return exp[log[a] + log[b]]
        return self._slow_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self.has_tables:
            log, exp, _, _ = self._tables
            return int(exp[(-log[a]) % (self.q - 1)])
        return self._slow_pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.k == 1:
            return pow(a, e, self.p)
        if self.has_tables:
            log, exp, _, _ = self._tables
            return int(exp[(int(log[a]) * e) % (self.q - 1)])
        return self._slow_pow(a, e)

    def sum(self, xs: Iterable[int]) -> int:
        acc = 0
        for x in xs:
            acc = self.add(acc, x)
        return acc

    def prod(self, xs: Iterable[int]) -> int:
        acc = 1
        for x in xs:
            acc = self.mul(acc, x)
        return acc

    def in_prime_subfield(self, a: int) -> bool:
        return a < self.p

    # -- vectorized arithmetic on int64 arrays

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        _, _, dg, pw = self._tables
        return ((dg[a] + dg[b]) % self.p) @ pw

    def vneg(self, a: np.ndarray) -> np.ndarray:
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        _, _, dg, pw = self._tables
        return ((-dg[a]) % self.p) @ pw

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.k == 1:
            return (a * b) % self.p
        log, exp, _, _ = self._tables
        out = exp[log[a] + log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vscale(self, c: int, a: np.ndarray) -> np.ndarray:
        return self.vmul(np.full_like(a, c), a)

    def vsum(self, a: np.ndarray, axis: int = 0) -> np.ndarray:
        if self.k == 1:
            return a.sum(axis=axis) % self.p
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        _, _, dg, pw = self._tables
        return (dg[a].sum(axis=axis) % self.p) @ pw


@dataclass(frozen=True)
class FieldElem:
    ctx: FieldCtx
    value: int

    def _v(self, o) -> int:
        if isinstance(o, FieldElem):
            return o.value
        return self.ctx.from_int(o)

    def __add__(self, o):
        return FieldElem(self.ctx, self.ctx.add(self.value, self._v(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return FieldElem(self.ctx, self.ctx.sub(self.value, self._v(o)))

    def __rsub__(self, o):
        return FieldElem(self.ctx, self.ctx.sub(self._v(o), self.value))

    def __mul__(self, o):
        return FieldElem(self.ctx, self.ctx.mul(self.value, self._v(o)))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.value))

    def __truediv__(self, o):
        return FieldElem(self.ctx, self.ctx.div(self.value, self._v(o)))

    def __pow__(self, e: int):
        return FieldElem(self.ctx, self.ctx.pow(self.value, e))

    def inv(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.inv(self.value))

    def __eq__(self, o):
        if isinstance(o, FieldElem):
            return self.ctx == o.ctx and self.value == o.value
        if isinstance(o, int):
            return self.value == self.ctx.from_int(o)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        if self.ctx.k == 1:
            return str(self.value)
        return "[" + ",".join(map(str, self.ctx.to_vec(self.value))) + "]"


def make_prime_field(p: int) -> FieldCtx:
    if not is_prime(p):
        raise NotPrime(p)
    return FieldCtx(p, 1, (0, 1))


def find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of degree k in lexicographic order of the low coefficients."""
    for n in range(p**k):
        low = []
        for _ in range(k):
            n, r = divmod(n, p)
            low.append(r)
        if low[0] == 0:
            continue
        f = tuple(low) + (1,)
        if _is_irreducible(f, p):
            return f
    raise NotIrreducible(f"no irreducible of degree {k} over F_{p}")  # unreachable


def make_ext_field(p: int, k: int, irred: Sequence[int] | None = None) -> FieldCtx:
    if not is_prime(p):
        raise NotPrime(p)
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if k == 1 and irred is None:
        return make_prime_field(p)
    if irred is None:
        irred = find_irreducible(p, k)
    irred = tuple(c % p for c in irred)
    if len(irred) != k + 1 or irred[-1] != 1:
        raise NotIrreducible(f"defining polynomial must be monic of degree {k}")
    if not _is_irreducible(irred, p):
        raise NotIrreducible(f"{list(irred)} is reducible over F_{p}")
    return FieldCtx(p, k, irred)


def parse_field(spec: str) -> FieldCtx:
    """Parse ``p`` or ``p^k[:c0,c1,...,ck]``."""
    spec = spec.strip()
    irred = None
    if ":" in spec:
        spec, tail = spec.split(":", 1)
        irred = [int(c) for c in tail.split(",") if c.strip()]
    if "^" in spec:
        p_s, k_s = spec.split("^", 1)
        return make_ext_field(int(p_s), int(k_s), irred)
    q = int(spec)
    if q > 1 and not is_prime(q):
        fs = _prime_factors(q)
        if len(fs) == 1:
            k, m = 0, q
            while m > 1:
                m //= fs[0]
                k += 1
            return make_ext_field(fs[0], k, irred)
    return make_prime_field(q)


def field_arith(ctx: FieldCtx, op: str, *operands) -> FieldElem:
    vals = [ctx.elem(o).value for o in operands]
    if op == "add":
        r = ctx.add(*vals)
    elif op == "sub":
        r = ctx.sub(*vals)
    elif op == "mul":
        r = ctx.mul(*vals)
    elif op == "neg":
        r = ctx.neg(vals[0])
    elif op == "inv":
        r = ctx.inv(vals[0])
    elif op == "pow":
        r = ctx.pow(vals[0], operands[1] if isinstance(operands[1], int) else operands[1].value)
    else:
        raise ValueError(f"unknown op {op!r}")
    return FieldElem(ctx, r)


def distinct_points(ctx: FieldCtx, n: int, nonzero: bool = False) -> list[int]:
    start = 1 if nonzero else 0
    if ctx.q - start < n:
        raise FieldTooSmall(needed=n + start, have=ctx.q)
    return list(range(start, start + n))


def random_elem(ctx: FieldCtx, rng) -> int:
    return int(rng.integers(0, ctx.q))


def extension_containing(ctx: FieldCtx, required_q: int, degree_multiple: int = 1) -> tuple[FieldCtx, list[int]]:
    """Smallest extension of ``ctx`` with at least ``required_q`` elements.

    The relative degree is a multiple of ``degree_multiple``.  Returns the
    big field and the embedding as a lookup list: small int -> big int.
    """
    m = degree_multiple
    while ctx.p ** (ctx.k * m) < required_q:
        m += degree_multiple
    if m == 1:
        return ctx, list(range(ctx.q))
    big = make_ext_field(ctx.p, ctx.k * m)
    if ctx.k == 1:
        return big, list(range(ctx.p))
    # image of the small generator x: a root of ctx.irred in big
    theta = vector_roots(big, ctx.irred)[0]
    powers = [big.pow(theta, i) for i in range(ctx.k)]
    table = []
    for a in range(ctx.q):
        acc = 0
        for c, pw in zip(ctx.to_vec(a), powers):
            if c:
                acc = big.add(acc, big.mul(c, pw))
        table.append(acc)
    return big, table


def vector_roots(ctx: FieldCtx, coeffs: Sequence[int]) -> list[int]:
    """All roots in ``ctx`` of the polynomial with ascending encoded coefficients (exhaustive)."""
    if ctx.q > TABLE_LIMIT:
        raise ExtensionTooLarge(f"exhaustive root search needs q <= {TABLE_LIMIT}, got {ctx.q}")
    xs = np.arange(ctx.q, dtype=np.int64)
    acc = np.zeros(ctx.q, dtype=np.int64)
    for c in reversed(list(coeffs)):
        acc = ctx.vadd(ctx.vmul(acc, xs), np.full(ctx.q, c, dtype=np.int64))
    return [int(r) for r in np.nonzero(acc == 0)[0]]
