"""Constant-depth building blocks.

Everything here rests on one fact: a univariate polynomial of degree <= D is
a fixed linear combination of its values at D+1 distinct points.  Scaling or
substituting a group of inputs by those points turns coefficient extraction
into one extra Add layer on top of D+1 copies of the circuit.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .circuit import Builder, Circuit
from .errors import DegreeBoundExceeded, DenominatorVanishesAtOrigin, FieldTooSmall
from .field import FieldCtx, distinct_points

EXACT_CHECK_LIMIT = 48


@dataclass(frozen=True)
class InterpPlan:
    """Points alpha_0..alpha_D and weights with sum_j w[i][j] * alpha_j^e = [e == i]."""

    ctx: FieldCtx
    D: int
    points: tuple[int, ...]
    weights: tuple[tuple[int, ...], ...]

    def row(self, i: int) -> tuple[int, ...]:
        if i > self.D or i < 0:
            return (0,) * (self.D + 1)
        return self.weights[i]

    def row_le(self, d: int) -> tuple[int, ...]:
        """Weights recovering the sum of coefficients 0..d."""
        F = self.ctx
        out = [0] * (self.D + 1)
        for i in range(min(d, self.D) + 1):
            out = [F.add(a, b) for a, b in zip(out, self.weights[i])]
        return tuple(out)

    def recover(self, values: Sequence[int]) -> list[int]:
        """Coefficients 0..D from values at the plan points."""
        F = self.ctx
        return [F.sum(F.mul(w, v) for w, v in zip(row, values)) for row in self.weights]


def make_interp_plan(ctx: FieldCtx, D: int, nonzero: bool = False) -> InterpPlan:
    return _plan(ctx, D, nonzero)


@lru_cache(maxsize=None)
def _plan(ctx: FieldCtx, D: int, nonzero: bool) -> InterpPlan:
    F = ctx
    pts = distinct_points(ctx, D + 1, nonzero=nonzero)
    # master polynomial M(t) = prod (t - a_k), ascending coefficients
    M = [1]
    for a in pts:
        nxt = [0] * (len(M) + 1)
        for i, c in enumerate(M):
            nxt[i + 1] = F.add(nxt[i + 1], c)
            nxt[i] = F.sub(nxt[i], F.mul(a, c))
        M = nxt
    cols = []
    for a in pts:
        # M(t) / (t - a) by synthetic division, then divide by its value at a
        q = [0] * (D + 1)
        acc = 0
        for i in range(D + 1, 0, -1):
            acc = F.add(M[i], F.mul(acc, a))
            q[i - 1] = acc
        den = 0
        for c in reversed(q):
            den = F.add(F.mul(den, a), c)
        inv = F.inv(den)
        cols.append([F.mul(c, inv) for c in q])
    weights = tuple(tuple(cols[j][i] for j in range(D + 1)) for i in range(D + 1))
    plan = InterpPlan(ctx, D, tuple(pts), weights)
    _check_plan(plan)
    return plan


def _check_plan(plan: InterpPlan) -> None:
    F = plan.ctx
    D = plan.D
    if D <= EXACT_CHECK_LIMIT:
        for e in range(D + 1):
            vals = [F.pow(a, e) for a in plan.points]
            got = plan.recover(vals)
            if any(g != (1 if i == e else 0) for i, g in enumerate(got)):
                raise AssertionError("interpolation weights failed the monomial check")
        return
    # randomized check of W V r = r
    rng = np.random.default_rng(D)
    r = [int(x) for x in rng.integers(0, F.q, D + 1)]
    vals = []
    for a in plan.points:
        acc = 0
        for c in reversed(r):
            acc = F.add(F.mul(acc, a), c)
        vals.append(acc)
    if plan.recover(vals) != r:
        raise AssertionError("interpolation weights failed the randomized check")


def required_points(D: int, nonzero: bool = False) -> int:
    return D + 1 + (1 if nonzero else 0)


# ---------------------------------------------------------------- builder-level helpers


def _group_names(c: Circuit, group) -> list[str]:
    if isinstance(group, str):
        names = c.group_names(group)
        if not names and group in c.input_names:
            names = [group]
        return names
    return list(group)


def _check_degree(c: Circuit, names, D: int, certified: bool) -> None:
    if certified:
        return
    deg = c.syntactic_degree(names)
    if deg > D:
        raise DegreeBoundExceeded(f"syntactic degree {deg} exceeds bound {D}")


def combine(b: Builder, weights: Sequence[int], refs: Sequence[int]) -> int:
    """Add of w_j * ref_j with zero weights dropped."""
    return b.add([b.scale(w, r) for w, r in zip(weights, refs) if w])


def esym_refs(b: Builder, refs: Sequence[int], r: int) -> int:
    """Depth-3 Esym_r of the given gates: Add, Mul, Add."""
    F = b.ctx
    m = len(refs)
    if r == 0:
        return b.const(1)
    if r > m:
        return b.const(0)
    plan = make_interp_plan(F, m)
    terms = []
    for a, w in zip(plan.points, plan.row(r)):
        if not w:
            continue
        if a == 0:
            terms.append(b.const(w))
            continue
        ainv = F.inv(a)
        lin = [b.add([b.const(ainv), y]) for y in refs]
        terms.append(b.mul_c(F.mul(w, F.pow(a, m)), lin))
    return b.add(terms)


# ---------------------------------------------------------------- circuit-level gadgets


def coeff_extract(c: Circuit, group, i: int, D: int | None = None, bound_certified: bool = False) -> Circuit:
    """Coefficient of the group variables' degree-i part, with group inputs set to points.

    For a single-variable group this is the ordinary coefficient of x^i; the
    group inputs disappear from the signature.
    """
    names = _group_names(c, group)
    if D is None:
        D = c.syntactic_degree(names)
    _check_degree(c, names, D, bound_certified)
    F = c.ctx
    sig = [(n, g) for n, g in c.inputs if n not in names]
    b = Builder(F)
    for n, g in sig:
        b.input(n, g)
    if i > D or i < 0:
        return b.circuit([b.const(0)] * len(c.outputs), sig)
    plan = make_interp_plan(F, D)
    copies = [b.embed(c, {n: b.const(a) for n in names}) for a in plan.points]
    w = plan.row(i)
    outs = [combine(b, w, [cp[k] for cp in copies]) for k in range(len(c.outputs))]
    return b.circuit(outs, sig)


def _scaled_copies(b: Builder, c: Circuit, names, points) -> list[list[int]]:
    copies = []
    for a in points:
        m = {n: b.scale(a, b.input(n, dict(c.inputs)[n])) for n in names}
        copies.append(b.embed(c, m))
    return copies


def hom_extract(c: Circuit, group, i: int, D: int | None = None, bound_certified: bool = False) -> Circuit:
    """Homogeneous degree-i part in the group variables."""
    names = _group_names(c, group)
    if D is None:
        D = c.syntactic_degree(names)
    _check_degree(c, names, D, bound_certified)
    b = Builder(c.ctx)
    for n, g in c.inputs:
        b.input(n, g)
    if i > D or i < 0:
        return b.circuit([b.const(0)] * len(c.outputs), list(c.inputs))
    plan = make_interp_plan(c.ctx, D)
    copies = _scaled_copies(b, c, names, plan.points)
    w = plan.row(i)
    outs = [combine(b, w, [cp[k] for cp in copies]) for k in range(len(c.outputs))]
    return b.circuit(outs, list(c.inputs))


def hom_le(c: Circuit, d: int, D: int | None = None, group=None, bound_certified: bool = False) -> Circuit:
    """Sum of the homogeneous parts of degree 0..d (all inputs unless ``group``)."""
    names = _group_names(c, group) if group is not None else c.input_names
    if D is None:
        D = c.syntactic_degree(names)
    _check_degree(c, names, D, bound_certified)
    b = Builder(c.ctx)
    for n, g in c.inputs:
        b.input(n, g)
    plan = make_interp_plan(c.ctx, D)
    copies = _scaled_copies(b, c, names, plan.points)
    w = plan.row_le(d)
    outs = [combine(b, w, [cp[k] for cp in copies]) for k in range(len(c.outputs))]
    return b.circuit(outs, list(c.inputs))


def hasse_gadget(c: Circuit, y: str, i: int, D: int | None = None) -> Circuit:
    """H^i_y(c): coefficient of z^i in c(..., y + z), by interpolation in z."""
    if D is None:
        D = c.syntactic_degree([y])
    _check_degree(c, [y], D, False)
    b = Builder(c.ctx)
    for n, g in c.inputs:
        b.input(n, g)
    if i > D:
        return b.circuit([b.const(0)] * len(c.outputs), list(c.inputs))
    plan = make_interp_plan(c.ctx, D)
    yref = b.input(y)
    copies = [b.embed(c, {y: b.add([yref, b.const(a)])}) for a in plan.points]
    w = plan.row(i)
    outs = [combine(b, w, [cp[k] for cp in copies]) for k in range(len(c.outputs))]
    return b.circuit(outs, list(c.inputs))


def esym_gadget(ctx: FieldCtx, m: int, r: int, names: Sequence[str] | None = None, group: str = "y") -> Circuit:
    """Depth-3 circuit for Esym_r(y_1, ..., y_m)."""
    if m + 1 > ctx.q:
        raise FieldTooSmall(needed=m + 1, have=ctx.q)
    names = list(names or [f"y{i + 1}" for i in range(m)])
    b = Builder(ctx)
    refs = [b.input(n, group) for n in names]
    return b.circuit([esym_refs(b, refs, r)])


def origin_value(den: Circuit, group, rng=None, trials: int = 4) -> int:
    """Value of ``den`` with the group set to 0; must not depend on other inputs."""
    names = set(_group_names(den, group))
    rng = rng or np.random.default_rng(0)
    cols = {n: (0 if n in names else rng.integers(0, den.ctx.q, trials)) for n in den.input_names}
    vals = den.eval_batch(cols, trials)[0]
    if len(set(int(v) for v in vals)) != 1:
        raise DenominatorVanishesAtOrigin("denominator at the origin is not a constant")
    c0 = int(vals[0])
    if c0 == 0:
        raise DenominatorVanishesAtOrigin("denominator vanishes at the origin")
    return c0


def strassen_divide(num: Circuit, den: Circuit, d: int, group) -> Circuit:
    """Hom_{<=d}(num/den) in the group, by a truncated geometric series."""
    F = num.ctx
    c0 = origin_value(den, group)
    inv = F.inv(c0)
    names = _group_names(num, group) or _group_names(den, group)
    sig = list(num.inputs)
    for s in den.inputs:
        if s not in sig:
            sig.append(s)
    b = Builder(F)
    for n, g in sig:
        b.input(n, g)
    nref = b.embed(num)[0]
    dref = b.embed(den)[0]
    u = b.add([b.const(1), b.scale(F.neg(inv), dref)])
    series = b.add([b.mul([u] * k) if k else b.const(1) for k in range(d + 1)])
    raw = b.circuit([b.mul_c(inv, [nref, series])], sig)
    D = num.syntactic_degree(names) + d * den.syntactic_degree(names)
    return hom_le(raw, d, D, group=names)
