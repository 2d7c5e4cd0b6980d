"""Exact univariate / truncated multivariate polynomials and the classical oracles.

Everything here is deliberately naive (schoolbook products, Gaussian elimination,
Newton iteration) so it can serve as an independent check on the circuits.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .errors import (
    BothZero,
    DegreeZero,
    DivisionByZero,
    IndexOutOfRange,
    InconsistentSystem,
    NotARoot,
    NotSymmetric,
    SingularRoot,
)
from .field import FieldCtx, FieldElem


def _strip(c: Sequence[int]) -> tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class UniPoly:
    """Dense polynomial, ascending coefficients (encoded field ints)."""

    ctx: FieldCtx
    coeffs: tuple[int, ...]
    var: str = "y"

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    @classmethod
    def from_ints(cls, ctx: FieldCtx, ints: Iterable[int], var: str = "y") -> "UniPoly":
        return cls(ctx, tuple(ctx.from_int(i) for i in ints), var)

    @classmethod
    def from_roots(cls, ctx: FieldCtx, roots: Iterable[int], var: str = "y") -> "UniPoly":
        out = cls(ctx, (1,), var)
        for r in roots:
            out = out * cls(ctx, (ctx.neg(r), 1), var)
        return out

    @classmethod
    def const(cls, ctx: FieldCtx, c: int, var: str = "y") -> "UniPoly":
        return cls(ctx, (c,), var)

    @property
    def degree(self) -> int:
        """-1 stands in for the degree of the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def const_like(self, c: int) -> "UniPoly":
        return UniPoly(self.ctx, (c,), self.var)

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def _wrap(self, o) -> "UniPoly":
        if isinstance(o, UniPoly):
            return o
        if isinstance(o, FieldElem):
            return UniPoly(self.ctx, (o.value,), self.var)
        return UniPoly(self.ctx, (self.ctx.from_int(o),), self.var)

    def __add__(self, o):
        o = self._wrap(o)
        F = self.ctx
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly(F, tuple(F.add(self.coeff(i), o.coeff(i)) for i in range(n)), self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.ctx, tuple(self.ctx.neg(c) for c in self.coeffs), self.var)

    def __sub__(self, o):
        return self + (-self._wrap(o))

    def __rsub__(self, o):
        return self._wrap(o) - self

    def __mul__(self, o):
        o = self._wrap(o)
        F = self.ctx
        if not self.coeffs or not o.coeffs:
            return UniPoly(F, (), self.var)
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return UniPoly(F, tuple(out), self.var)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        r = UniPoly(self.ctx, (1,), self.var)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def scale(self, c: int) -> "UniPoly":
        return UniPoly(self.ctx, tuple(self.ctx.mul(c, a) for a in self.coeffs), self.var)

    def divrem(self, d: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        F = self.ctx
        if d.is_zero():
            raise DivisionByZero("polynomial division by zero")
        r = list(self.coeffs)
        dd = d.degree
        inv = F.inv(d.lead())
        q = [0] * max(0, len(r) - dd)
        for i in range(len(r) - 1, dd - 1, -1):
            c = F.mul(r[i], inv)
            if c:
                q[i - dd] = c
                for j, dc in enumerate(d.coeffs):
                    r[i - dd + j] = F.sub(r[i - dd + j], F.mul(c, dc))
        return UniPoly(F, tuple(q), self.var), UniPoly(F, tuple(r[:dd]), self.var)

    def __floordiv__(self, d):
        return self.divrem(d)[0]

    def __mod__(self, d):
        return self.divrem(d)[1]

    def __call__(self, x: int) -> int:
        return self.eval(x)

    def eval(self, x: int) -> int:
        F = self.ctx
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def shift(self, a: int) -> "UniPoly":
        """f(y + a)."""
        out = UniPoly(self.ctx, (), self.var)
        lin = UniPoly(self.ctx, (a, 1), self.var)
        for c in reversed(self.coeffs):
            out = out * lin + UniPoly(self.ctx, (c,), self.var)
        return out

    def derivative(self) -> "UniPoly":
        F = self.ctx
        return UniPoly(F, tuple(F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs) if i), self.var)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self.scale(self.ctx.inv(self.lead()))

    def __eq__(self, o):
        if not isinstance(o, UniPoly):
            return NotImplemented
        return self.ctx == o.ctx and self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                cs = repr(FieldElem(self.ctx, c))
                terms.append(cs if i == 0 else f"{cs}*{self.var}^{i}")
        return " + ".join(terms)


def poly_arith(op: str, *args):
    if op == "add":
        return args[0] + args[1]
    if op == "mul":
        return args[0] * args[1]
    if op == "divrem":
        return args[0].divrem(args[1])
    if op == "eval":
        return FieldElem(args[0].ctx, args[0].eval(args[0].ctx.elem(args[1]).value))
    if op == "shift":
        return args[0].shift(args[0].ctx.elem(args[1]).value)
    if op == "derivative":
        return args[0].derivative()
    raise ValueError(f"unknown op {op!r}")


def euclid_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    if f.is_zero() and g.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def lcm(f: UniPoly, g: UniPoly) -> UniPoly:
    return (f * g // euclid_gcd(f, g)).monic()


def pth_root_poly(f: UniPoly) -> UniPoly:
    """h with h^p = f, for f whose exponents are all multiples of p."""
    F = f.ctx
    root = lambda c: F.pow(c, F.q // F.p)  # noqa: E731  (inverse of Frobenius)
    return UniPoly(F, tuple(root(f.coeff(i)) for i in range(0, len(f.coeffs), F.p)), f.var)


def squarefree_part(f: UniPoly) -> UniPoly:
    """Radical of f (product of its distinct monic irreducible factors)."""
    if f.degree <= 0:
        return UniPoly(f.ctx, (1,), f.var)
    f = f.monic()
    df = f.derivative()
    if df.is_zero():
        return squarefree_part(pth_root_poly(f))
    g = euclid_gcd(f, df)
    w = f // g
    # g still contains the factors whose multiplicity is divisible by p
    rest = g
    while True:
        h = euclid_gcd(rest, w)
        if h.degree <= 0:
            break
        rest = rest // h
        if rest.degree <= 0:
            break
    # `rest` now has only factors absent from w; these are p-th powers
    if rest.degree > 0:
        extra = squarefree_part(rest if rest.derivative().is_zero() else rest)
        return lcm(w, extra)
    return w.monic()


def sylvester_matrix(f: UniPoly, g: UniPoly) -> list[list[int]]:
    a, b = f.degree, g.degree
    n = a + b
    rows = []
    for i in range(b):
        row = [0] * n
        for j, c in enumerate(reversed(f.coeffs)):
            row[i + j] = c
        rows.append(row)
    for i in range(a):
        row = [0] * n
        for j, c in enumerate(reversed(g.coeffs)):
            row[i + j] = c
        rows.append(row)
    return rows


def determinant(ctx: FieldCtx, m: list[list[int]]) -> int:
    F = ctx
    m = [list(r) for r in m]
    n = len(m)
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = F.neg(det)
        det = F.mul(det, m[col][col])
        inv = F.inv(m[col][col])
        for r in range(col + 1, n):
            if m[r][col]:
                c = F.mul(m[r][col], inv)
                for k in range(col, n):
                    m[r][k] = F.sub(m[r][k], F.mul(c, m[col][k]))
    return det


def sylvester_resultant(f: UniPoly, g: UniPoly) -> int:
    if f.degree < 1 or g.degree < 1:
        raise DegreeZero("resultant needs degrees >= 1")
    return determinant(f.ctx, sylvester_matrix(f, g))


def solve_linear(ctx: FieldCtx, A: list[list[int]], b: list[int]) -> list[int]:
    """Unique solution of A x = b (A may be tall); raises InconsistentSystem."""
    F = ctx
    rows = [list(r) + [v] for r, v in zip(A, b)]
    ncol = len(A[0]) if A else 0
    piv_cols = []
    r = 0
    for c in range(ncol):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, v) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(row[-1] for row in rows[r:]) or len(piv_cols) < ncol:
        raise InconsistentSystem("system has no unique solution")
    x = [0] * ncol
    for i, c in enumerate(piv_cols):
        x[c] = rows[i][-1]
    return x


# ---------------------------------------------------------------- TruncMV


class TruncMV:
    """Sparse multivariate polynomial truncated at total degree ``cap``."""

    __slots__ = ("ctx", "vars", "cap", "terms")

    def __init__(self, ctx: FieldCtx, vars: Sequence[str], cap: int, terms=None):
        self.ctx = ctx
        self.vars = tuple(vars)
        self.cap = cap
        t = {}
        for e, c in (terms or {}).items():
            if c and sum(e) <= cap:
                t[tuple(e)] = c
        self.terms = t

    @classmethod
    def const(cls, ctx, vars, cap, c: int) -> "TruncMV":
        return cls(ctx, vars, cap, {(0,) * len(vars): c})

    @classmethod
    def var(cls, ctx, vars, cap, name: str) -> "TruncMV":
        e = [0] * len(vars)
        e[list(vars).index(name)] = 1
        return cls(ctx, vars, cap, {tuple(e): 1})

    def const_like(self, c: int) -> "TruncMV":
        return TruncMV.const(self.ctx, self.vars, self.cap, c)

    def _like(self, terms) -> "TruncMV":
        return TruncMV(self.ctx, self.vars, self.cap, terms)

    def _wrap(self, o) -> "TruncMV":
        if isinstance(o, TruncMV):
            return o
        v = o.value if isinstance(o, FieldElem) else self.ctx.from_int(o)
        return TruncMV.const(self.ctx, self.vars, self.cap, v)

    def __add__(self, o):
        o = self._wrap(o)
        F = self.ctx
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = F.add(t.get(e, 0), c)
        return self._like(t)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: self.ctx.neg(c) for e, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-self._wrap(o))

    def __rsub__(self, o):
        return self._wrap(o) - self

    def __mul__(self, o):
        o = self._wrap(o)
        F = self.ctx
        t: dict = {}
        cap = self.cap
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in o.terms.items():
                if d1 + sum(e2) > cap:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = F.add(t.get(e, 0), F.mul(c1, c2))
        return self._like(t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        r = TruncMV.const(self.ctx, self.vars, self.cap, 1)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def scale(self, c: int) -> "TruncMV":
        return self._like({e: self.ctx.mul(c, v) for e, v in self.terms.items()})

    def coeff(self, exps: Sequence[int]) -> int:
        return self.terms.get(tuple(exps), 0)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def hom(self, d: int) -> "TruncMV":
        return self._like({e: c for e, c in self.terms.items() if sum(e) == d})

    def truncate(self, d: int) -> "TruncMV":
        return TruncMV(self.ctx, self.vars, min(d, self.cap), self.terms)

    def with_cap(self, cap: int) -> "TruncMV":
        return TruncMV(self.ctx, self.vars, cap, self.terms)

    def eval(self, point: dict) -> int:
        F = self.ctx
        acc = 0
        for e, c in self.terms.items():
            v = c
            for name, k in zip(self.vars, e):
                if k:
                    v = F.mul(v, F.pow(point[name], k))
            acc = F.add(acc, v)
        return acc

    def substitute(self, name: str, value: "TruncMV") -> "TruncMV":
        """Replace variable ``name`` by ``value`` (a TruncMV over the same vars)."""
        i = self.vars.index(name)
        out = self._like({})
        powers = {0: TruncMV.const(self.ctx, self.vars, self.cap, 1)}
        for e, c in self.terms.items():
            k = e[i]
            if k not in powers:
                powers[k] = value**k
            rest = list(e)
            rest[i] = 0
            out = out + self._like({tuple(rest): c}) * powers[k]
        return out

    def __eq__(self, o):
        if not isinstance(o, TruncMV):
            return NotImplemented
        return self.ctx == o.ctx and self.vars == o.vars and self.terms == o.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(f"{v}^{k}" if k > 1 else v for v, k in zip(self.vars, e) if k)
            cs = repr(FieldElem(self.ctx, c))
            parts.append(cs if not mono else f"{cs}*{mono}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "cap": self.cap,
            "terms": [{"exps": list(e), "coeff": self.ctx.to_vec(c) if self.ctx.k > 1 else c} for e, c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, ctx: FieldCtx, obj: dict) -> "TruncMV":
        terms = {}
        for t in obj["terms"]:
            c = t["coeff"]
            terms[tuple(t["exps"])] = ctx.from_vec(c) if isinstance(c, list) else ctx.from_int(c)
        return cls(ctx, obj["vars"], obj["cap"], terms)


# ---------------------------------------------------------------- power series in one variable


def series_mul(F: FieldCtx, a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def series_inv(F: FieldCtx, a: list[int], n: int) -> list[int]:
    if not a or a[0] == 0:
        raise DivisionByZero("series with zero constant term")
    inv0 = F.inv(a[0])
    out = [0] * n
    out[0] = inv0
    for k in range(1, n):
        s = 0
        for j in range(1, min(k, len(a) - 1) + 1):
            s = F.add(s, F.mul(a[j], out[k - j]))
        out[k] = F.neg(F.mul(s, inv0))
    return out


def _bivariate_rows(P: TruncMV, tvar: str, yvar: str) -> dict[int, list[int]]:
    """P as {y-exponent: t-series coefficient list}."""
    ti, yi = P.vars.index(tvar), P.vars.index(yvar)
    rows: dict[int, list[int]] = {}
    for e, c in P.terms.items():
        if any(k for idx, k in enumerate(e) if idx not in (ti, yi)):
            raise ValueError("expected a bivariate polynomial")
        row = rows.setdefault(e[yi], [])
        while len(row) <= e[ti]:
            row.append(0)
        row[e[ti]] = c
    return rows


def _compose(F, rows, phi, n, deriv=False):
    """P(t, phi) (or dP/dy(t, phi)) mod t^n via Horner."""
    if deriv:
        rows = {k - 1: [F.mul(F.from_int(k), c) for c in r] for k, r in rows.items() if k >= 1}
    if not rows:
        return [0] * n
    top = max(rows)
    acc = [0] * n
    for k in range(top, -1, -1):
        acc = series_mul(F, acc, phi, n)
        for i, c in enumerate(rows.get(k, [])[:n]):
            acc[i] = F.add(acc[i], c)
    return acc


def newton_lift(P: TruncMV, y0, d: int, tvar: str = "t", yvar: str = "y") -> TruncMV:
    """Power-series root phi(t) of P(t, y) with phi(0)=y0, modulo t^(d+1)."""
    F = P.ctx
    y0 = F.elem(y0).value
    rows = _bivariate_rows(P, tvar, yvar)
    n = d + 1
    at0 = _compose(F, rows, [y0] + [0] * d, 1)[0]
    if at0 != 0:
        raise NotARoot(f"P(0, {y0}) = {at0} != 0")
    if _compose(F, rows, [y0] + [0] * d, 1, deriv=True)[0] == 0:
        raise SingularRoot("dP/dy vanishes at the root")
    phi = [y0] + [0] * d
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        val = _compose(F, rows, phi, prec)
        der = _compose(F, rows, phi, prec, deriv=True)
        corr = series_mul(F, val, series_inv(F, der, prec), prec)
        phi = [F.sub(a, b) for a, b in zip(phi[:prec], corr)] + phi[prec:]
    return TruncMV(F, (tvar,), d, {(i,): c for i, c in enumerate(phi[:n])})


def hasse_derivative(Fp, var: str | None, i: int):
    """Order-i Hasse derivative: coefficient of z^i in F(..., var + z)."""
    ctx = Fp.ctx
    if isinstance(Fp, UniPoly):
        return UniPoly(
            ctx,
            tuple(ctx.mul(ctx.from_int(comb(e, i)), c) for e, c in enumerate(Fp.coeffs) if e >= i),
            Fp.var,
        )
    vi = Fp.vars.index(var)
    terms = {}
    for e, c in Fp.terms.items():
        if e[vi] >= i:
            b = ctx.from_int(comb(e[vi], i))
            if b:
                ne = list(e)
                ne[vi] -= i
                terms[tuple(ne)] = ctx.mul(b, c)
    return TruncMV(ctx, Fp.vars, Fp.cap, terms)


def esym_eval(values: Sequence, r: int):
    """Elementary symmetric polynomial of ring elements (support + and *)."""
    n = len(values)
    if r < 0 or r > n:
        raise IndexOutOfRange(f"Esym index {r} outside [0, {n}]")
    if r == 0:
        return 1 if not values else values[0] * 0 + 1
    E = [None] * (r + 1)
    E[0] = 1
    for v in values:
        for j in range(r, 0, -1):
            if E[j - 1] is None:
                continue
            term = E[j - 1] * v if not isinstance(E[j - 1], int) else v * E[j - 1]
            E[j] = term if E[j] is None else E[j] + term
    return E[r]


def esym_eval_ints(F: FieldCtx, values: Sequence[int], r: int) -> int:
    if r < 0 or r > len(values):
        raise IndexOutOfRange(f"Esym index {r} outside [0, {len(values)}]")
    E = [1] + [0] * r
    for v in values:
        for j in range(r, 0, -1):
            E[j] = F.add(E[j], F.mul(E[j - 1], v))
    return E[r]


def esym_mv(ctx: FieldCtx, xs: Sequence[str], cap: int, vars: Sequence[str]) -> list[TruncMV]:
    """[Esym_0, ..., Esym_n] of the named variables as TruncMV."""
    n = len(xs)
    E = [TruncMV.const(ctx, vars, cap, 1)] + [TruncMV(ctx, vars, cap) for _ in range(n)]
    for x in xs:
        xv = TruncMV.var(ctx, vars, cap, x)
        for j in range(n, 0, -1):
            E[j] = E[j] + E[j - 1] * xv
    return E


def _weighted_monomials(n: int, d: int):
    """Exponent vectors a with sum_i (i+1) a_i <= d."""
    def rec(i, left):
        if i == n:
            yield ()
            return
        w = i + 1
        for k in range(left // w + 1):
            for rest in rec(i + 1, left - k * w):
                yield (k,) + rest
    yield from rec(0, d)


def is_symmetric_mv(P: TruncMV, xs: Sequence[str]) -> bool:
    idx = [P.vars.index(x) for x in xs]
    for a, b in itertools.combinations(idx, 2):
        for e, c in P.terms.items():
            s = list(e)
            s[a], s[b] = s[b], s[a]
            if P.terms.get(tuple(s), 0) != c:
                return False
    return True


def symdecomp_oracle(P: TruncMV, d: int, xs: Sequence[str] | None = None, zs: Sequence[str] | None = None) -> TruncMV:
    """The unique Q with Q(Esym_1, ..., Esym_n) = P, by linear algebra."""
    ctx = P.ctx
    xs = list(xs or P.vars)
    n = len(xs)
    zs = list(zs or [f"z{i + 1}" for i in range(n)])
    if not is_symmetric_mv(P, xs):
        raise NotSymmetric("P is not symmetric")
    E = esym_mv(ctx, xs, d, P.vars)[1:]
    monos = list(_weighted_monomials(n, d))
    cols = []
    for a in monos:
        v = TruncMV.const(ctx, P.vars, d, 1)
        for Ei, k in zip(E, a):
            if k:
                v = v * Ei**k
        cols.append(v)
    keys = sorted(set().union(*(c.terms for c in cols), P.terms))
    A = [[c.coeff(k) for c in cols] for k in keys]
    b = [P.coeff(k) for k in keys]
    sol = solve_linear(ctx, A, b)
    return TruncMV(ctx, zs, d, {a: c for a, c in zip(monos, sol)})


# ---------------------------------------------------------------- coefficient conventions


def to_signed(f: UniPoly) -> list[int]:
    """Monic f = y^d - f_1 y^(d-1) + ... + (-1)^d f_d  ->  [f_1, ..., f_d]."""
    F = f.ctx
    d = f.degree
    out = []
    for r in range(1, d + 1):
        c = f.coeff(d - r)
        out.append(c if r % 2 == 0 else F.neg(c))
    return out


def from_signed(ctx: FieldCtx, signed: Sequence[int], var: str = "y") -> UniPoly:
    d = len(signed)
    coeffs = [0] * (d + 1)
    coeffs[d] = 1
    for r, s in enumerate(signed, start=1):
        coeffs[d - r] = s if r % 2 == 0 else ctx.neg(s)
    return UniPoly(ctx, tuple(coeffs), var)


def interpolate(ctx: FieldCtx, xs: Sequence[int], ys: Sequence[int], var: str = "y") -> UniPoly:
    """Lagrange interpolation through (xs[i], ys[i])."""
    F = ctx
    out = UniPoly(F, (), var)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        num = UniPoly(F, (1,), var)
        den = 1
        for j, xj in enumerate(xs):
            if j != i:
                num = num * UniPoly(F, (F.neg(xj), 1), var)
                den = F.mul(den, F.sub(xi, xj))
        out = out + num.scale(F.mul(yi, F.inv(den)))
    return out
