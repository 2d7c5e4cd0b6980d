"""Factor powers g^(p^ell) of a bivariate P(t, y) over small characteristic.

A root phi of P with multiplicity N = p^ell * e (gcd(p, e) = 1) still has a
closed form for phi^(p^ell) by coefficient extraction.  Writing the formula
with the root's constant term as a free input z gives a rational function
R(z) with a t-free denominator; evaluating it at the roots of g(0, y) and
taking elementary symmetric functions gives the coefficients of
g(t, y)^(p^ell) = prod_j (y^(p^ell) - phi_j^(p^ell)).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .circuit import Builder, Circuit, RatioCircuit, lift_circuit
from .errors import (
    BadMultiplicity,
    DegenerateInput,
    ExtensionTooLarge,
    FieldTooSmall,
    NotARoot,
    SharedRoots,
    ShiftFailed,
)
from .field import TABLE_LIMIT, FieldCtx, extension_containing, vector_roots
from .gadgets import combine, hom_le, make_interp_plan
from .polyring import UniPoly, euclid_gcd, squarefree_part


# ---------------------------------------------------------------- values


@dataclass(frozen=True)
class SeriesPoly:
    """Polynomial in y whose coefficients are polynomials in t of degree <= d."""

    ctx: FieldCtx
    d: int
    coeffs: tuple[tuple[int, ...], ...]  # coeffs[j][i]: coefficient of t^i y^j

    @classmethod
    def from_terms(cls, ctx: FieldCtx, d: int, terms: dict[tuple[int, int], int]) -> "SeriesPoly":
        deg = max((j for (i, j), c in terms.items() if c and i <= d), default=-1)
        rows = [[0] * (d + 1) for _ in range(deg + 1)]
        for (i, j), c in terms.items():
            if i <= d and c:
                rows[j][i] = ctx.add(rows[j][i], c)
        return cls(ctx, d, tuple(tuple(r) for r in rows))

    def terms(self) -> dict[tuple[int, int], int]:
        return {(i, j): c for j, row in enumerate(self.coeffs) for i, c in enumerate(row) if c}

    @property
    def degree_y(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, o: "SeriesPoly") -> "SeriesPoly":
        F, d = self.ctx, min(self.d, o.d)
        out: dict[tuple[int, int], int] = {}
        for (i1, j1), c1 in self.terms().items():
            for (i2, j2), c2 in o.terms().items():
                if i1 + i2 <= d:
                    key = (i1 + i2, j1 + j2)
                    out[key] = F.add(out.get(key, 0), F.mul(c1, c2))
        return SeriesPoly.from_terms(F, d, out)

    def __pow__(self, k: int) -> "SeriesPoly":
        r = SeriesPoly.from_terms(self.ctx, self.d, {(0, 0): 1})
        base = self
        while k:
            if k & 1:
                r = r * base
            k >>= 1
            if k:
                base = base * base
        return r

    def __str__(self) -> str:
        parts = []
        for (i, j), c in sorted(self.terms().items(), key=lambda kv: (-kv[0][1], kv[0][0])):
            mono = "*".join(x for x in (f"t^{i}" if i > 1 else "t" if i else "", f"y^{j}" if j > 1 else "y" if j else "") if x)
            parts.append(f"{c}*{mono}" if mono and c != 1 else mono or str(c))
        return " + ".join(parts) or "0"

    def to_json(self) -> dict:
        return {"d": self.d, "terms": [[i, j, c] for (i, j), c in sorted(self.terms().items())]}


def bivariate_terms(c: Circuit, t: str = "t", y: str = "y") -> dict[tuple[int, int], int]:
    """Exact (t, y) monomial coefficients of a circuit in t and y."""
    from .circuit import to_truncmv

    mv = to_truncmv(c, [t, y])
    return {tuple(e): v for e, v in mv.terms.items() if v}


# ---------------------------------------------------------------- instances


@dataclass
class FactorInstance:
    """P(t, y) monic in y, the fiber g(0, y) of one factor and its multiplicity p^ell * e."""

    P: Circuit
    g0: UniPoly
    ell: int
    e: int
    d: int
    t: str = "t"
    y: str = "y"

    @property
    def ctx(self) -> FieldCtx:
        return self.P.ctx

    @property
    def order(self) -> int:
        return self.ctx.p**self.ell * self.e

    def fiber(self) -> UniPoly:
        """P(0, y)."""
        F = self.ctx
        asg = {self.t: UniPoly(F, (), "y"), self.y: UniPoly(F, (0, 1), "y")}
        return self.P.eval(asg)[0]

    def validate(self) -> None:
        F = self.ctx
        if self.e < 1 or self.e % F.p == 0 or self.ell < 0:
            raise BadMultiplicity(f"need ell >= 0 and gcd(p, e) = 1, got ell={self.ell}, e={self.e}, p={F.p}")
        if set(self.P.input_names) - {self.t, self.y}:
            raise DegenerateInput("P must be a circuit in t and y only")
        terms = bivariate_terms(self.P, self.t, self.y)
        top = max((j for (_, j) in terms), default=0)
        lead = {i: c for (i, j), c in terms.items() if j == top}
        if lead != {0: 1}:
            raise DegenerateInput("P is not monic in y")
        g0 = self.g0
        if g0.is_zero() or g0.lead() != 1 or g0.degree < 1:
            raise DegenerateInput("g(0, y) must be monic of positive degree")
        if squarefree_part(g0).degree != g0.degree:
            raise DegenerateInput("g(0, y) is not square-free")
        fib = self.fiber()
        N = self.order
        q, rem = fib.divrem(g0**N)
        if not rem.is_zero():
            raise NotARoot(f"g(0, y)^{N} does not divide P(0, y)")
        if euclid_gcd(q, g0).degree > 0:
            raise BadMultiplicity(f"roots of g(0, y) have multiplicity above {N} in P(0, y)")


def _draw_shift(F: FieldCtx, n: int, rng) -> tuple[list[int], list[int]]:
    return [int(v) for v in rng.integers(0, F.q, n)], [int(v) for v in rng.integers(0, F.q, n)]


def psi_shift(
    C: Circuit,
    seed: int = 0,
    attempts: int = 32,
    draw: Callable | None = None,
) -> Circuit:
    """x_i -> t*x_i + a_i*y + b_i with random a, b, redrawn until the image is usable.

    The image (with the x inputs fixed at random points) must have a
    constant leading coefficient in y and must keep the number of distinct
    roots at t = 0.  The returned circuit has inputs x_1..x_n, t, y.
    """
    F = C.ctx
    rng = np.random.default_rng(seed)
    draw = draw or _draw_shift
    xs = C.input_names
    groups = dict(C.inputs)
    for _ in range(attempts):
        a, bvec = draw(F, len(xs), rng)
        b = Builder(F)
        for n in xs:
            b.input(n, groups[n])
        t, y = b.input("t", "t"), b.input("y", "y")
        imap = {}
        for n, ai, bi in zip(xs, a, bvec):
            imap[n] = b.add([b.mul([t, b.input(n)]), b.scale(ai, y), b.const(bi)])
        out = b.circuit(b.embed(C, imap))
        if _shift_ok(out, xs, rng):
            return out
    raise ShiftFailed(f"no usable shift in {attempts} attempts (field too small or degenerate input)")


def _shift_ok(c: Circuit, xs: Sequence[str], rng) -> bool:
    F = c.ctx
    fixed = Builder(F)
    t, y = fixed.input("t", "t"), fixed.input("y", "y")
    pts = {n: fixed.const(int(rng.integers(0, F.q))) for n in xs}
    pts.update({"t": t, "y": y})
    biv = fixed.circuit(fixed.embed(c, pts))
    terms = bivariate_terms(biv)
    if not terms:
        return False
    top = max(j for (_, j) in terms)
    if {i for (i, j) in terms if j == top} != {0} or top == 0:
        return False

    def fiber(tv: int) -> UniPoly:
        return biv.eval({"t": UniPoly(F, (tv,), "y"), "y": UniPoly(F, (0, 1), "y")})[0]

    base = squarefree_part(fiber(0)).degree
    generic = max(squarefree_part(fiber(int(v))).degree for v in rng.integers(0, F.q, 3))
    return base == generic


# ---------------------------------------------------------------- R(z)


@dataclass(frozen=True)
class _RPlan:
    N: int
    pl: int
    M: int
    deg_y: int
    deg_t: int
    D_y: int
    D_t: int

    @property
    def required_q(self) -> int:
        return max(self.D_y, self.D_t, self.deg_y) + 1


def _r_plan(inst: FactorInstance) -> _RPlan:
    F = inst.ctx
    pl = F.p**inst.ell
    N = pl * inst.e
    M = 2 * inst.e * (inst.d + pl)
    deg_y = inst.P.syntactic_degree([inst.y])
    deg_t = inst.P.syntactic_degree([inst.t])
    D_y = M * max(N, deg_y) + deg_y
    D_t = (M + 1) * max(deg_t, 1)
    return _RPlan(N, pl, M, deg_y, deg_t, D_y, D_t)


def smallchar_required_q(inst: FactorInstance) -> int:
    return _r_plan(inst).required_q


def build_R(inst: FactorInstance, truncate: bool = True) -> RatioCircuit:
    """R(z) = R_num / R_den on inputs (t, z).

    At z = phi(0) for a root phi of multiplicity p^ell * e, R equals
    phi^(p^ell) mod t^(d+1).  R_den = alpha(z)^(M+1) with
    alpha(z) = H^N_y P(0, z) does not involve t.  With ``truncate=False``
    the numerator is returned before the final degree <= d truncation in t.
    """
    inst.validate()
    F = inst.ctx
    pr = _r_plan(inst)
    if F.q < pr.required_q:
        raise FieldTooSmall(needed=pr.required_q, have=F.q)
    P, tn, yn = inst.P, inst.t, inst.y
    plan_y = make_interp_plan(F, pr.D_y)
    plan_h = make_interp_plan(F, pr.deg_y)
    hrow_pl = plan_h.row(pr.pl)
    hrow_N = plan_h.row(pr.N)
    e_inv = F.inv(F.from_int(inst.e))

    b = Builder(F)
    t, z = b.input(tn, "t"), b.input("z", "z")
    zero = b.const(0)
    cache: dict[tuple[int, bool], int] = {}

    def P_at(c: int, at_origin: bool = False) -> int:
        # P(t, z + c), or P(0, z + c)
        key = (c, at_origin)
        if key not in cache:
            yv = b.add([z, b.const(c)]) if c else z
            cache[key] = b.embed(P, {yn: yv, tn: zero if at_origin else t})[0]
        return cache[key]

    alpha = combine(b, hrow_N, [P_at(zeta, True) for zeta in plan_h.points])
    terms = [b.mul([z] * pr.pl + [alpha] * (pr.M + 1))]
    for j, gamma in enumerate(plan_y.points):
        H = combine(b, hrow_pl, [P_at(F.add(gamma, zeta)) for zeta in plan_h.points])
        L = b.add([b.scale(F.pow(gamma, pr.N), alpha), b.neg(P_at(gamma))])
        for m in range(pr.M + 1):
            k = pr.pl * (inst.e * (m + 1) - 2)
            if k < 0 or k > pr.D_y:
                continue
            w = plan_y.weights[k][j]
            if w:
                terms.append(b.mul_c(F.mul(w, e_inv), [H] + [L] * m + [alpha] * (pr.M - m)))
    sig = [(tn, "t"), ("z", "z")]
    num = b.circuit([b.add(terms)], sig)
    den = b.circuit([b.mul([alpha] * (pr.M + 1))], sig)
    if truncate:
        num = hom_le(num, inst.d, group=[tn])
    return RatioCircuit(num, den)


# ---------------------------------------------------------------- factor power


@lru_cache(maxsize=None)
def _splitting_field(F: FieldCtx, g0: tuple[int, ...], need: int):
    """Smallest tabulated extension with >= need elements in which g0 splits."""
    n = len(g0) - 1
    j = 1
    while True:
        big, emb = extension_containing(F, need, j)
        if big.q > TABLE_LIMIT:
            raise ExtensionTooLarge(f"g(0, y) needs a splitting field above {TABLE_LIMIT} elements")
        roots = vector_roots(big, [emb[c] for c in g0])
        if len(roots) == n:
            return big, emb, tuple(roots)
        j += 1


def _lift_instance(inst: FactorInstance, big: FieldCtx, emb: Sequence[int]) -> FactorInstance:
    g0 = UniPoly(big, tuple(emb[c] for c in inst.g0.coeffs), inst.g0.var)
    return FactorInstance(lift_circuit(inst.P, big, emb), g0, inst.ell, inst.e, inst.d, inst.t, inst.y)


def root_powers(inst: FactorInstance) -> tuple[FieldCtx, list[int], list[int], list[list[int]]]:
    """phi_j^(p^ell) mod t^(d+1) for each root of g(0, y), in a splitting field.

    Returns the field, the embedding of the base field, the roots and the
    t-coefficients per root.
    """
    inst.validate()
    F = inst.ctx
    big, emb, roots = _splitting_field(F, tuple(inst.g0.coeffs), smallchar_required_q(inst))
    binst = _lift_instance(inst, big, emb)
    R = build_R(binst, truncate=False)
    zs = np.array(roots, dtype=np.int64)
    dens = R.den.eval_batch({inst.t: 0, "z": zs}, len(roots))[0]
    if np.any(dens == 0):
        raise SharedRoots("R's denominator vanishes at a root of g(0, y)")
    D_t = R.num.syntactic_degree([inst.t])
    plan = make_interp_plan(big, D_t)
    m = len(plan.points)
    cols = {inst.t: np.tile(np.array(plan.points, dtype=np.int64), len(roots)), "z": np.repeat(zs, m)}
    vals = R.num.eval_batch(cols, m * len(roots))[0].reshape(len(roots), m)
    out = []
    for row, den in zip(vals, dens):
        inv = big.inv(int(den))
        row = [int(v) for v in row]
        out.append([big.mul(inv, big.sum(big.mul(w, v) for w, v in zip(plan.weights[i], row))) for i in range(min(inst.d, D_t) + 1)])
        out[-1] += [0] * (inst.d + 1 - len(out[-1]))
    return big, emb, list(roots), out


def factor_power(inst: FactorInstance) -> SeriesPoly:
    """g(t, y)^(p^ell) mod t^(d+1) from P, the fiber g(0, y) and (ell, e)."""
    from .polyring import series_mul

    F, d = inst.ctx, inst.d
    big, emb, roots, series = root_powers(inst)
    # prod_j (Y - s_j) = sum_k (-1)^k Esym_k(s) Y^(n-k), truncated in t
    esym = [[1] + [0] * d]
    for s in series:
        nxt = [list(c) for c in esym] + [[0] * (d + 1)]
        for k in range(1, len(nxt)):
            prod = series_mul(big, esym[k - 1], s, d + 1)
            nxt[k] = [big.add(a, b) for a, b in zip(nxt[k], prod)]
        esym = nxt
    down = {v: i for i, v in enumerate(emb)}
    n = len(roots)
    pl = F.p**inst.ell
    terms: dict[tuple[int, int], int] = {}
    for k, c in enumerate(esym):
        sign = 1 if k % 2 == 0 else big.neg(1)
        for i, v in enumerate(c):
            v = big.mul(sign, v)
            if v:
                if v not in down:
                    raise AssertionError("symmetric function left the base field")
                terms[(i, pl * (n - k))] = down[v]
    return SeriesPoly.from_terms(F, d, terms)


# ---------------------------------------------------------------- planted data

Terms = dict  # {(i, j): c} for c * t^i * y^j


def split_multiplicity(p: int, mult: int) -> tuple[int, int]:
    """mult = p^ell * e with gcd(p, e) = 1."""
    if mult < 1:
        raise BadMultiplicity("multiplicity must be >= 1")
    ell = 0
    while mult % p == 0:
        mult //= p
        ell += 1
    return ell, mult


def factors_circuit(F: FieldCtx, factors: Sequence[tuple[Terms, int]], t: str = "t", y: str = "y") -> Circuit:
    """Circuit for prod f_i^(m_i); each factor is a sum of monomials."""
    b = Builder(F)
    tr, yr = b.input(t, "t"), b.input(y, "y")
    parts = []
    for terms, mult in factors:
        g = b.add([b.mul_c(c, [tr] * i + [yr] * j) for (i, j), c in sorted(terms.items()) if c])
        parts += [g] * mult
    return b.circuit([b.mul(parts)], [(t, "t"), (y, "y")])


def instance_from_factors(F: FieldCtx, factors: Sequence[tuple[Terms, int]], target: int, d: int) -> FactorInstance:
    """FactorInstance for the factor ``target`` of prod f_i^(m_i)."""
    terms, mult = factors[target]
    ell, e = split_multiplicity(F.p, mult)
    deg = max(j for (i, j), c in terms.items() if c)
    g0 = [0] * (deg + 1)
    for (i, j), c in terms.items():
        if i == 0:
            g0[j] = F.add(g0[j], c)
    return FactorInstance(factors_circuit(F, factors), UniPoly(F, tuple(g0), "y"), ell, e, d)


def planted_power(F: FieldCtx, terms: Terms, ell: int, d: int) -> SeriesPoly:
    """g^(p^ell) mod t^(d+1), by direct expansion."""
    return SeriesPoly.from_terms(F, d, terms) ** (F.p**ell)
