"""Symmetric decomposition: from a circuit for symmetric P to a circuit for Q.

P(x) = Q(Esym_1(x), ..., Esym_n(x)).  The generic polynomial

    F(z, y) = y^n - (z_1 + b_1) y^(n-1) + ... + (-1)^n (z_n + b_n),

with b_i = Esym_i(a_1..a_n) for distinct a_j, has n power-series roots
A_j(z) with A_j(0) = a_j, and Esym_i(A(z)) = z_i + b_i.  Hence
P(A(z)) = Q(z + b), which is recovered up to degree deg Q by keeping the
homogeneous parts of degree <= deg Q and shifting z back.

F is affine in z, so each root is written directly as a sum of powers of
linear forms (one Furstenberg expansion per root, sharing a single y-grid);
the homogeneous parts come out separately, which makes the final truncation
cheap: P(A(lam*w)) only needs the parts rescaled by lam^s.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

import numpy as np

from .circuit import Builder, Circuit
from .errors import FieldTooSmall, NotSymmetric
from .field import FieldCtx, distinct_points
from .gadgets import make_interp_plan
from .polyring import esym_eval_ints


def _esyms(F: FieldCtx, alphas: Sequence[int]) -> list[int]:
    return [esym_eval_ints(F, alphas, i) for i in range(1, len(alphas) + 1)]


def generic_esym_poly(ctx: FieldCtx, n: int, block_id: int | str | None = None, names: Sequence[str] | None = None):
    """Circuit for F(z, y), the points a_j and b = Esym(a)."""
    alphas = distinct_points(ctx, n)
    betas = _esyms(ctx, alphas)
    suffix = "" if block_id is None else f"_{block_id}"
    names = list(names or [f"z{i + 1}{suffix}" for i in range(n)])
    b = Builder(ctx)
    y = b.input("y", "y")
    zs = [b.input(nm, "z" if block_id is None else f"z{block_id}") for nm in names]
    F = ctx
    terms = [b.pow(y, n)]
    for i in range(1, n + 1):
        sign = 1 if i % 2 == 0 else F.neg(1)
        zi = b.add([zs[i - 1], b.const(betas[i - 1])])
        terms.append(b.mul_c(sign, [zi] + [y] * (n - i)))
    return b.circuit([b.add(terms)]), alphas, betas


@dataclass(frozen=True)
class _RootTable:
    """Constants of the structured root expansion for one block size."""

    alphas: tuple[int, ...]
    betas: tuple[int, ...]
    # per root j: list over grid points of (lin coeffs, k coeffs, c1[s], c2[s])
    roots: tuple


def _root_grid_D(n: int, dQ: int) -> int:
    M = 2 * (dQ + 1)
    return (M + 1) * n - 1


@lru_cache(maxsize=None)
def _root_table(F: FieldCtx, n: int, dQ: int) -> _RootTable:
    alphas = distinct_points(F, n)
    betas = _esyms(F, alphas)
    M = 2 * (dQ + 1)
    D_y = _root_grid_D(n, dQ)
    plan = make_interp_plan(F, D_y)
    # F0(Y) = prod (Y - a_k), ascending coefficients
    F0 = [1]
    for a in alphas:
        nxt = [0] * (len(F0) + 1)
        for i, c in enumerate(F0):
            nxt[i + 1] = F.add(nxt[i + 1], c)
            nxt[i] = F.sub(nxt[i], F.mul(a, c))
        F0 = nxt
    dF0 = [F.mul(F.from_int(i), c) for i, c in enumerate(F0)][1:]

    def ev(poly, v):
        acc = 0
        for c in reversed(poly):
            acc = F.add(F.mul(acc, v), c)
        return acc

    minus1 = F.neg(1)
    binom = [[F.from_int(comb(m, s)) for s in range(dQ + 1)] for m in range(M + 1)]
    roots = []
    for aj in alphas:
        alpha = ev(dF0, aj)
        ainv = [F.inv(F.pow(alpha, m + 1)) for m in range(M + 1)]
        grid = []
        for eta, g in enumerate(plan.points):
            v = F.add(g, aj)
            A = F.sub(F.mul(alpha, g), ev(F0, v))
            K0 = ev(dF0, v)
            # L = A + lin(w), K = K0 + kl(w)
            lin, kl = [], []
            for i in range(1, n + 1):
                sgn = 1 if i % 2 == 0 else minus1
                lin.append(F.neg(F.mul(sgn, F.pow(v, n - i))))
                kl.append(F.mul(sgn, F.mul(F.from_int(n - i), F.pow(v, n - i - 1))) if n - i >= 1 else 0)
            Apow = [1]
            for _ in range(M + 1):
                Apow.append(F.mul(Apow[-1], A))
            wts = [plan.weights[m - 1][eta] if m >= 1 else 0 for m in range(M + 1)]
            c1 = [0] * (dQ + 1)
            c2 = [0] * (dQ + 1)
            for s in range(1, dQ + 1):
                acc1 = acc2 = 0
                for m in range(1, M + 1):
                    base = F.mul(ainv[m], wts[m])
                    if not base:
                        continue
                    if m >= s:
                        acc1 = F.add(acc1, F.mul(base, F.mul(binom[m][s], F.mul(K0, Apow[m - s]))))
                    if m >= s - 1:
                        acc2 = F.add(acc2, F.mul(base, F.mul(binom[m][s - 1], Apow[m - s + 1])))
                c1[s], c2[s] = acc1, acc2
            grid.append((tuple(lin), tuple(kl), tuple(c1), tuple(c2)))
        roots.append(tuple(grid))
    return _RootTable(tuple(alphas), tuple(betas), tuple(roots))


def _homogeneous_root_parts(b: Builder, table: _RootTable, ws: Sequence[int], dQ: int) -> list[list[int]]:
    """H[j][s]: gate for the degree-s part of root j (s = 1..dQ) in the w inputs."""
    out = []
    for grid in table.roots:
        parts = [[] for _ in range(dQ + 1)]
        for lin, kl, c1, c2 in grid:
            lref = b.linear(zip(lin, ws))
            kref = b.linear(zip(kl, ws))
            for s in range(1, dQ + 1):
                if c1[s]:
                    parts[s].append(b.mul_c(c1[s], [lref] * s))
                if c2[s]:
                    parts[s].append(b.mul_c(c2[s], [kref] + [lref] * (s - 1)))
        out.append([None] + [b.add(p) for p in parts[1:]])
    return out


def check_symmetric(P: Circuit, blocks: Sequence[Sequence[str]], points: int = 20, seed: int = 0) -> None:
    """Randomized check: P is invariant under adjacent swaps inside each block."""
    F = P.ctx
    rng = np.random.default_rng(seed)
    base = {n: rng.integers(0, F.q, points) for n in P.input_names}
    ref = P.eval_batch(base, points)
    for bi, blk in enumerate(blocks):
        blk = list(blk)
        for a, c in zip(blk, blk[1:] + blk[:1]):
            if a == c:
                continue
            sw = dict(base)
            sw[a], sw[c] = base[c], base[a]
            if not np.array_equal(P.eval_batch(sw, points), ref):
                raise NotSymmetric(f"not symmetric in block {bi} under swapping {a} and {c}")


@dataclass(frozen=True)
class DecompositionPlan:
    dQ: int
    dP: int
    lam_D: int
    grid_D: tuple[int, ...]
    required_q: int


def plan_decomposition(P: Circuit, blocks, d: int, block_degrees=None) -> DecompositionPlan:
    """Degree bounds and field size for a decomposition."""
    names = [n for blk in blocks for n in blk]
    syn = P.syntactic_degree(names)
    dP = min(d, syn)
    if d > syn:
        warnings.warn(f"declared degree {d} exceeds syntactic degree {syn}; using {syn}", stacklevel=3)
    if block_degrees is None:
        block_degrees = [P.max_var_degree(blk) for blk in blocks]
    else:
        block_degrees = [min(a, P.max_var_degree(blk)) for a, blk in zip(block_degrees, blocks)]
    # deg Q <= sum over blocks of the largest per-variable degree of P in that block
    dQ = min(dP, sum(block_degrees))
    grid = tuple(_root_grid_D(len(blk), dQ) for blk in blocks)
    lam_D = dP * dQ
    req = max([lam_D + 1] + [g + 1 for g in grid] + [len(blk) for blk in blocks])
    return DecompositionPlan(dQ, dP, lam_D, grid, req)


def multi_symmetric_decomposition_circuit(
    P: Circuit,
    part: Sequence[Sequence[str]],
    d: int,
    passthrough: Sequence[str] = (),
    out_names: Sequence[Sequence[str]] | None = None,
    block_degrees: Sequence[int] | None = None,
    check: bool = True,
    out_groups: Sequence[str] | None = None,
) -> Circuit:
    """Circuit for Q with P = Q(Esym(block_1), ..., Esym(block_k), passthrough).

    ``d`` is the degree of P in the block variables.  ``block_degrees``
    optionally supplies known per-variable degree bounds (one per block) that
    are tighter than the syntactic ones.
    """
    F = P.ctx
    blocks = [list(b) for b in part]
    covered = {n for blk in blocks for n in blk} | set(passthrough)
    extra = [n for n in P.input_names if n not in covered]
    passthrough = list(passthrough) + extra
    if check:
        check_symmetric(P, blocks)
    plan = plan_decomposition(P, blocks, d, block_degrees)
    if F.q < plan.required_q:
        raise FieldTooSmall(needed=plan.required_q, have=F.q)
    dQ = plan.dQ
    if out_names is None:
        if len(blocks) == 1:
            out_names = [[f"z{i + 1}" for i in range(len(blocks[0]))]]
        else:
            out_names = [[f"z{k + 1}_{i + 1}" for i in range(len(blk))] for k, blk in enumerate(blocks)]
    groups = dict(P.inputs)
    if out_groups is None:
        out_groups = ["z"] if len(blocks) == 1 else [f"z{k + 1}" for k in range(len(blocks))]
    sig = []
    for names, grp in zip(out_names, out_groups):
        sig += [(n, grp) for n in names]
    sig += [(n, groups.get(n, "x")) for n in passthrough]

    b = Builder(F)
    for n, g in sig:
        b.input(n, g)
    pass_refs = {n: b.input(n) for n in passthrough}
    root_parts = []  # per block: (table, H parts)
    for blk, names in zip(blocks, out_names):
        n = len(blk)
        table = _root_table(F, n, dQ)
        # un-shift: w_i = u_i - b_i
        ws = [b.add([b.input(u), b.const(F.neg(bi))]) for u, bi in zip(names, table.betas)]
        root_parts.append((table, _homogeneous_root_parts(b, table, ws, dQ)))

    lam = make_interp_plan(F, plan.lam_D)
    wts = lam.row_le(dQ)
    outs = []
    for lt, wt in zip(lam.points, wts):
        if not wt:
            continue
        lpow = [F.pow(lt, s) for s in range(dQ + 1)]
        imap = dict(pass_refs)
        for blk, (table, H) in zip(blocks, root_parts):
            for xname, aj, Hj in zip(blk, table.alphas, H):
                terms = [b.const(aj)] + [b.scale(lpow[s], Hj[s]) for s in range(1, dQ + 1)]
                imap[xname] = b.add(terms)
        outs.append(b.scale(wt, b.embed(P, imap)[0]))
    return b.circuit([b.add(outs)], sig)


def symmetric_decomposition_circuit(
    P: Circuit, d: int, xs: Sequence[str] | None = None, out_names: Sequence[str] | None = None, check: bool = True
) -> Circuit:
    """Single-block case: circuit on z_1..z_n for the Q with P = Q(Esym(x))."""
    xs = list(xs or P.input_names)
    return multi_symmetric_decomposition_circuit(
        P, [xs], d, out_names=[list(out_names)] if out_names else None, check=check
    )


def symdec_required_q(P: Circuit, part, d: int, block_degrees=None) -> int:
    return plan_decomposition(P, [list(b) for b in part], d, block_degrees).required_q
