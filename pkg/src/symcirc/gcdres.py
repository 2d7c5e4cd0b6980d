"""Resultant, Esym-on-roots, Filter and GCD families in constant depth.

Monic polynomials enter circuits through signed coordinates: for
f = y^d - f_1 y^(d-1) + ... + (-1)^d f_d the inputs are f_1..f_d, which are
the elementary symmetric values of the roots.  Every construction here is a
bi-symmetric circuit in formal roots s_i (of f) and t_j (of g), decomposed
back onto the coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .circuit import Builder, Circuit, PiecewiseFamily, RatioCircuit
from .errors import AllTestsZero, DegenerateInput, NonzeroRemainder
from .field import FieldCtx, extension_containing, make_prime_field
from .gadgets import coeff_extract, esym_refs, make_interp_plan
from .polyring import UniPoly, interpolate, to_signed
from .symdec import multi_symmetric_decomposition_circuit, plan_decomposition


def f_names(d: int) -> list[str]:
    return [f"f{i + 1}" for i in range(d)]


def g_names(d: int) -> list[str]:
    return [f"g{i + 1}" for i in range(d)]


def _root_builder(ctx: FieldCtx, d1: int, d2: int, with_y: bool = False):
    b = Builder(ctx)
    s = [b.input(f"s{i + 1}", "s") for i in range(d1)]
    t = [b.input(f"t{j + 1}", "t") for j in range(d2)]
    y = b.input("y", "y") if with_y else None
    return b, s, t, y


def _diffs(b: Builder, s: Sequence[int], t: Sequence[int]) -> list[list[int]]:
    return [[b.add([si, b.neg(tj)]) for tj in t] for si in s]


def _decompose(P: Circuit, d1: int, d2: int, d: int, degs, passthrough=()) -> Circuit:
    blocks = [[f"s{i + 1}" for i in range(d1)], [f"t{j + 1}" for j in range(d2)]]
    return multi_symmetric_decomposition_circuit(
        P,
        blocks,
        d,
        passthrough=passthrough,
        out_names=[f_names(d1), g_names(d2)],
        out_groups=["f", "g"],
        block_degrees=degs,
        check=False,
    )


def _const_family_circuit(ctx, d1, d2, value, with_y=False, extra=()) -> Circuit:
    b = Builder(ctx)
    sig = [(n, "f") for n in f_names(d1)] + [(n, "g") for n in g_names(d2)] + list(extra)
    if with_y:
        sig.append(("y", "y"))
    for n, g in sig:
        b.input(n, g)
    return b.circuit([b.const(value)], sig)


def _bisym_P(ctx: FieldCtx, d1: int, d2: int, k: int, kind: str):
    """Bi-symmetric circuit in roots s, t with its degree and per-block degree bounds."""
    with_y = kind == "num"
    b, s, t, y = _root_builder(ctx, d1, d2, with_y)
    diffs = _diffs(b, s, t)
    if kind == "res":
        return b.circuit([b.mul([x for row in diffs for x in row])]), d1 * d2, [d2, d1]
    if kind == "num":
        hs = [b.mul([b.add([y, b.neg(si)])] + row) for si, row in zip(s, diffs)]
        return b.circuit([esym_refs(b, hs, k)]), k * (d2 + 1), [d2 + 1, k]
    hs = [b.mul(row) for row in diffs]
    return b.circuit([esym_refs(b, hs, k)]), k * d2, [d2, k]


# degree bounds do not depend on the characteristic, so the probe circuit is
# built over a field large enough for its own interpolation plans
_PROBE = make_prime_field(2_147_483_647)


@lru_cache(maxsize=None)
def _bisym_required_q(ctx: FieldCtx, d1: int, d2: int, k: int, kind: str) -> int:
    P, d, degs = _bisym_P(_PROBE, d1, d2, k, kind)
    blocks = [[f"s{i + 1}" for i in range(d1)], [f"t{j + 1}" for j in range(d2)]]
    return max(plan_decomposition(P, blocks, d, degs).required_q, d1 + 1)


@lru_cache(maxsize=None)
def resultant_circuit(ctx: FieldCtx, d1: int, d2: int) -> Circuit:
    """Res(f, g) = prod (s_i - t_j) as a circuit on the signed coordinates."""
    P, d, degs = _bisym_P(ctx, d1, d2, 0, "res")
    return _decompose(P, d1, d2, d, degs)


def resultant_required_q(ctx: FieldCtx, d1: int, d2: int) -> int:
    return _bisym_required_q(ctx, d1, d2, 0, "res")


@lru_cache(maxsize=None)
def esym_on_roots_circuit(ctx: FieldCtx, d1: int, d2: int, r: int, with_y: bool = False) -> Circuit:
    """Esym_r({g(s_1), ..., g(s_d1)}) on the coordinates of f and g."""
    if r == 0:
        return _const_family_circuit(ctx, d1, d2, 1, with_y)
    P, d, degs = _bisym_P(ctx, d1, d2, r, "esym")
    Q = _decompose(P, d1, d2, d, degs)
    return _align(Q, list(Q.inputs) + [("y", "y")]) if with_y else Q


@lru_cache(maxsize=None)
def filter_numerator_circuit(ctx: FieldCtx, d1: int, d2: int, r: int) -> Circuit:
    """Esym_r({(y - s_i) g(s_i)}) with y carried through."""
    if r == 0:
        return _const_family_circuit(ctx, d1, d2, 1, True)
    P, d, degs = _bisym_P(ctx, d1, d2, r, "num")
    return _decompose(P, d1, d2, d, degs, passthrough=["y"])


def _signed_inputs(f: UniPoly, g: UniPoly) -> dict[str, int]:
    cols = dict(zip(f_names(f.degree), to_signed(f)))
    cols.update(zip(g_names(g.degree), to_signed(g)))
    return cols


def _require_monic(*polys: UniPoly) -> None:
    for p in polys:
        if p.is_zero() or p.lead() != 1:
            raise DegenerateInput("inputs must be monic")


# ---------------------------------------------------------------- working over an extension when needed


@dataclass
class _Lifted:
    """A field big enough for a construction plus the embedding of the small one."""

    small: FieldCtx
    big: FieldCtx
    emb: list[int]
    inv: dict = field(default_factory=dict)

    def __post_init__(self):
        self.inv = {v: i for i, v in enumerate(self.emb)}

    def up(self, p: UniPoly) -> UniPoly:
        return UniPoly(self.big, tuple(self.emb[c] for c in p.coeffs), p.var)

    def down(self, p: UniPoly) -> UniPoly:
        try:
            return UniPoly(self.small, tuple(self.inv[c] for c in p.coeffs), p.var)
        except KeyError as exc:
            raise AssertionError("result left the base field") from exc


def lifted_field(ctx: FieldCtx, need: int) -> _Lifted:
    big, emb = extension_containing(ctx, need)
    return _Lifted(ctx, big, emb)


def resultant_eval(f: UniPoly, g: UniPoly) -> tuple[int, Circuit]:
    """Resultant of monic f, g through the circuit (extension field if needed)."""
    _require_monic(f, g)
    ctx = f.ctx
    need = resultant_required_q(ctx, f.degree, g.degree)
    L = lifted_field(ctx, need)
    C = resultant_circuit(L.big, f.degree, g.degree)
    fu, gu = L.up(f), L.up(g)
    v = int(C.eval_batch(_signed_inputs(fu, gu), 1)[0, 0])
    return L.inv[v], C


def resultant_eval_batch(ctx: FieldCtx, pairs: Sequence[tuple[UniPoly, UniPoly]]) -> list[int]:
    """Resultants of many monic pairs, grouped by degree profile."""
    out: list[int | None] = [None] * len(pairs)
    groups: dict[tuple[int, int], list[int]] = {}
    for k, (f, g) in enumerate(pairs):
        _require_monic(f, g)
        groups.setdefault((f.degree, g.degree), []).append(k)
    for (d1, d2), idx in groups.items():
        L = lifted_field(ctx, resultant_required_q(ctx, d1, d2))
        C = resultant_circuit(L.big, d1, d2)
        cols = {n: [] for n in f_names(d1) + g_names(d2)}
        for k in idx:
            f, g = pairs[k]
            for n, v in _signed_inputs(L.up(f), L.up(g)).items():
                cols[n].append(v)
        vals = C.eval_batch({n: np.array(v, dtype=np.int64) for n, v in cols.items()}, len(idx))[0]
        for k, v in zip(idx, vals):
            out[k] = L.inv[int(v)]
    return out  # type: ignore[return-value]


# ---------------------------------------------------------------- rational Esym on roots


def esym_rational_on_roots(f, gC: Circuit, hC: Circuit, r: int, y: str = "y", check: bool = False) -> RatioCircuit:
    """Esym_r({g(s_i)/h(s_i)}) over the roots s_i of f as A/B.

    A = coeff_{lam^r} prod (h(s_i) + lam g(s_i)) and B = prod h(s_i), both
    decomposed onto the signed coordinates of f.  ``f`` is a monic UniPoly
    (coordinates become constants) or an int degree (coordinates are inputs
    f1..fn).  Other inputs of g and h are carried through.
    """
    if isinstance(f, UniPoly):
        _require_monic(f)
        n = f.degree
    else:
        n = int(f)
    ctx = gC.ctx
    others = []
    for c in (gC, hC):
        for nm, grp in c.inputs:
            if nm != y and (nm, grp) not in others:
                others.append((nm, grp))
    b = Builder(ctx)
    s = [b.input(f"s{i + 1}", "s") for i in range(n)]
    for nm, grp in others:
        b.input(nm, grp)
    gv = [b.embed(gC, {y: si})[0] for si in s]
    hv = [b.embed(hC, {y: si})[0] for si in s]
    plan = make_interp_plan(ctx, n)
    terms = []
    for a, w in zip(plan.points, plan.row(r)):
        if w:
            terms.append(b.mul_c(w, [b.add([hi, b.scale(a, gi)]) for gi, hi in zip(gv, hv)]))
    sig = [(f"s{i + 1}", "s") for i in range(n)] + others
    PA = b.circuit([b.add(terms)], sig)
    PB = b.circuit([b.mul(hv)], sig)
    pass_names = [nm for nm, _ in others]
    dy = max(gC.syntactic_degree([y]), hC.syntactic_degree([y]))
    blocks = [[f"s{i + 1}" for i in range(n)]]
    A = multi_symmetric_decomposition_circuit(PA, blocks, n * dy, pass_names, [f_names(n)], [dy], check, ["f"])
    B = multi_symmetric_decomposition_circuit(PB, blocks, n * hC.syntactic_degree([y]), pass_names, [f_names(n)], None, check, ["f"])
    if isinstance(f, UniPoly):
        consts = dict(zip(f_names(n), to_signed(f)))
        A, B = _fix_inputs(A, consts), _fix_inputs(B, consts)
    else:
        B = _align(B, A.inputs)
    return RatioCircuit(A, B)


def _fix_inputs(c: Circuit, values: dict[str, int]) -> Circuit:
    b = Builder(c.ctx)
    sig = [(n, g) for n, g in c.inputs if n not in values]
    for n, g in sig:
        b.input(n, g)
    outs = b.embed(c, {n: b.const(v) for n, v in values.items()})
    return b.circuit(outs, sig)


def _align(c: Circuit, sig) -> Circuit:
    b = Builder(c.ctx)
    for n, g in sig:
        b.input(n, g)
    return b.circuit(b.embed(c), list(sig))


# ---------------------------------------------------------------- Filter


@dataclass
class FilterResult:
    advice_r: int
    numerator: UniPoly
    denominator: int
    result: UniPoly
    condition: str


def _family_sig(d1, d2, extra=()):
    return [(n, "f") for n in f_names(d1)] + [(n, "g") for n in g_names(d2)] + list(extra) + [("y", "y")]


@lru_cache(maxsize=None)
def filter_family(ctx: FieldCtx, d1: int, d2: int) -> PiecewiseFamily:
    """T_k = Esym_k{g(s)}, A_k = Esym_k{(y - s) g(s)}, B_k = T_k for k = 0..d1."""
    sig = _family_sig(d1, d2)
    tests, nums = {}, {}
    for k in range(d1 + 1):
        tests[k] = _align(esym_on_roots_circuit(ctx, d1, d2, k), sig)
        nums[k] = _align(filter_numerator_circuit(ctx, d1, d2, k), sig)
    return PiecewiseFamily((d1, d2), tests, nums, dict(tests), meta={"kind": "filter"})


def filter_required_q(ctx: FieldCtx, d1: int, d2: int) -> int:
    return max(_bisym_required_q(ctx, d1, d2, k, kind) for k in range(1, d1 + 1) for kind in ("esym", "num"))


def filter_eval(family: PiecewiseFamily | None, f: UniPoly, g: UniPoly, condition: str = "!=0") -> FilterResult:
    """Filter(f | g != 0) or Filter(f | g = 0) via the piece-wise family."""
    _require_monic(f, g)
    if condition not in ("!=0", "≠0", "=0"):
        raise ValueError("condition must be '!=0' or '=0'")
    ctx = f.ctx
    d1, d2 = f.degree, g.degree
    L = lifted_field(ctx, filter_required_q(ctx, d1, d2))
    if family is None or family.tests[d1].ctx != L.big or family.params != (d1, d2):
        family = filter_family(L.big, d1, d2)
    fu, gu = L.up(f), L.up(g)
    base = _signed_inputs(fu, gu)
    r = None
    for k in range(d1, -1, -1):
        if int(family.tests[k].eval_batch({**base, "y": 0}, 1)[0, 0]) != 0:
            r = k
            break
    if r is None:
        raise AllTestsZero("every test circuit vanished")
    F = L.big
    den = int(family.dens[r].eval_batch({**base, "y": 0}, 1)[0, 0])
    pts = make_interp_plan(F, r).points
    vals = family.nums[r].eval_batch({**base, "y": np.array(pts)}, len(pts))[0]
    num = interpolate(F, pts, [int(v) for v in vals])
    res = num.scale(F.inv(den))
    out = L.down(res)
    if condition == "=0":
        q, rem = f.divrem(out)
        if not rem.is_zero():
            raise NonzeroRemainder("f is not divisible by the filtered part")
        out = q
    return FilterResult(r, L.down(num), L.inv[den], out, condition)


# ---------------------------------------------------------------- GCD


def _substitute_F(ctx: FieldCtx, c: Circuit, d1: int, d2: int) -> Circuit:
    """Replace the f-coordinates by those of F = f + z g (affine in z)."""
    sig = _family_sig(d1, d2, [("z", "z")])
    b = Builder(ctx)
    for n, g in sig:
        b.input(n, g)
    z = b.input("z")
    shift = d1 - d2
    sign = 1 if shift % 2 == 0 else ctx.neg(1)
    imap = {}
    for r in range(1, d1 + 1):
        fr = b.input(f"f{r}")
        sidx = r - shift
        if sidx < 0:
            imap[f"f{r}"] = fr
            continue
        gz = z if sidx == 0 else b.mul([z, b.input(f"g{sidx}")])
        imap[f"f{r}"] = b.add([fr, b.scale(sign, gz)])
    outs = b.embed(c, imap)
    return b.circuit(outs, sig)


@lru_cache(maxsize=None)
def gcd_family(ctx: FieldCtx, d1: int, d2: int) -> PiecewiseFamily:
    """Tests T_k(F, g), numerators A_k(F, g), denominators B_k = T_k over F = f + z g."""
    if not d1 > d2 >= 1:
        raise DegenerateInput("gcd_family needs d1 > d2 >= 1")
    tests, nums = {}, {}
    zdeg = {}
    for k in range(d1 + 1):
        tests[k] = _substitute_F(ctx, esym_on_roots_circuit(ctx, d1, d2, k), d1, d2)
        nums[k] = _substitute_F(ctx, filter_numerator_circuit(ctx, d1, d2, k), d1, d2)
        # z-degree bounds: the degree of Q in the f-coordinates
        zdeg[k] = (min(k * d2, d2 + k), min(k * (d2 + 1), d2 + 1 + k))
    return PiecewiseFamily((d1, d2), tests, nums, dict(tests), advice_rule="(max k with T_k != 0, least i with [z^i]A_k != 0)", meta={"kind": "gcd", "zdeg": zdeg})


def gcd_required_q(ctx: FieldCtx, d1: int, d2: int) -> int:
    return filter_required_q(ctx, d1, d2)


@dataclass
class GcdResult:
    gcd: UniPoly
    advice_r: int | None
    advice_i: int | None
    d1: int
    d2: int
    normalized: tuple[UniPoly, UniPoly] | None = None


def normalize_pair(f: UniPoly, g: UniPoly):
    """Monic f, g with deg f > deg g >= 1, or a short-circuit gcd.

    Returns (f, g, None) or (None, None, gcd).
    """
    if f.is_zero() and g.is_zero():
        raise DegenerateInput("gcd(0, 0) is undefined")
    if g.is_zero():
        return None, None, f.monic()
    if f.is_zero():
        return None, None, g.monic()
    f, g = f.monic(), g.monic()
    if f.degree < g.degree:
        f, g = g, f
    if f.degree == g.degree:
        h = g - f
        if h.is_zero():
            return None, None, f
        g = h.monic()
    if g.degree == 0:
        return None, None, UniPoly(f.ctx, (1,), f.var)
    return f, g, None


def _eval_cols(c: Circuit, cols: dict, batch: int) -> np.ndarray:
    return c.eval_batch(cols, batch)[0]


def gcd_eval_batch(pairs: Sequence[tuple[UniPoly, UniPoly]], ctx: FieldCtx | None = None) -> list[GcdResult]:
    """GCDs of many pairs through the piece-wise family, batched per degree profile."""
    results: list[GcdResult | None] = [None] * len(pairs)
    groups: dict[tuple[int, int], list[tuple[int, UniPoly, UniPoly]]] = {}
    for k, (f, g) in enumerate(pairs):
        nf, ng, short = normalize_pair(f, g)
        if short is not None:
            results[k] = GcdResult(short, None, None, f.degree, g.degree)
            continue
        groups.setdefault((nf.degree, ng.degree), []).append((k, nf, ng))
    for (d1, d2), items in groups.items():
        small = items[0][1].ctx
        L = lifted_field(small, gcd_required_q(small, d1, d2))
        fam = gcd_family(L.big, d1, d2)
        for k, res in zip([it[0] for it in items], _gcd_group(fam, L, [(it[1], it[2]) for it in items])):
            results[k] = res
    return results  # type: ignore[return-value]


def _grid_eval(c: Circuit, coords, js, names, zs, ys=None) -> np.ndarray:
    """Values of c for pairs js on the grid zs (x ys); shape (len(js), len(zs)[, len(ys)])."""
    mz = len(zs)
    my = 1 if ys is None else len(ys)
    cols = {nm: np.repeat([coords[j][nm] for j in js], mz * my) for nm in names}
    cols["z"] = np.tile(np.repeat(np.asarray(zs, dtype=np.int64), my), len(js))
    cols["y"] = 0 if ys is None else np.tile(np.asarray(ys, dtype=np.int64), mz * len(js))
    vals = _eval_cols(c, cols, len(js) * mz * my)
    return vals.reshape((len(js), mz) if ys is None else (len(js), mz, my))


def _gcd_group(fam: PiecewiseFamily, L: _Lifted, pairs) -> list[GcdResult]:
    F = L.big
    d1, d2 = fam.params
    ups = [(L.up(f), L.up(g)) for f, g in pairs]
    coords = [_signed_inputs(fu, gu) for fu, gu in ups]
    names = f_names(d1) + g_names(d2)
    n = len(pairs)
    r_of: list[int | None] = [None] * n
    t0: dict[int, int] = {}
    pending = list(range(n))
    for k in range(d1, -1, -1):
        if not pending:
            break
        # z = 0 first: a nonzero value settles the test without the full grid
        v0 = _grid_eval(fam.tests[k], coords, pending, names, [0])[:, 0]
        still = []
        for v, j in zip(v0, pending):
            if v:
                r_of[j], t0[j] = k, int(v)
            else:
                still.append(j)
        if still:
            zp = make_interp_plan(F, fam.meta["zdeg"][k][0])
            rows = _grid_eval(fam.tests[k], coords, still, names, zp.points)
            left = []
            for row, j in zip(rows, still):
                if np.any(row != 0):
                    r_of[j] = k
                else:
                    left.append(j)
            still = left
        pending = still
    if pending:
        raise AllTestsZero("every test circuit vanished")
    by_r: dict[int, list[int]] = {}
    for j in range(n):
        by_r.setdefault(r_of[j], []).append(j)
    # A[j][e][i]: coefficient of y^e z^i (only the columns needed)
    A_of: dict[int, list[list[int]]] = {}
    i_of: dict[int, int] = {}
    for r, js in by_r.items():
        yp = make_interp_plan(F, r)
        g0 = _grid_eval(fam.nums[r], coords, js, names, [0], yp.points)[:, 0, :]
        full = []
        for j, row in zip(js, g0):
            if np.any(row != 0):
                A_of[j] = [[c] for c in yp.recover([int(v) for v in row])]
                i_of[j] = 0
            else:
                full.append(j)
        if not full:
            continue
        zp = make_interp_plan(F, fam.meta["zdeg"][r][1])
        grids = _grid_eval(fam.nums[r], coords, full, names, zp.points, yp.points)
        for j, grid in zip(full, grids):
            ycoef = [yp.recover([int(v) for v in row]) for row in grid]
            A = [zp.recover([ycoef[a][e] for a in range(len(zp.points))]) for e in range(len(yp.points))]
            A_of[j] = A
            i_of[j] = next(i for i in range(len(A[0])) if any(A[e][i] for e in range(len(A))))
    # z-coefficients of T_r where i > 0 needs B_i and B_(i-1)
    tz: dict[int, list[int]] = {}
    late: dict[int, list[int]] = {}
    for j in range(n):
        if i_of[j] > 0 or j not in t0:
            late.setdefault(r_of[j], []).append(j)
    for r, js in late.items():
        zp = make_interp_plan(F, fam.meta["zdeg"][r][0])
        for j, row in zip(js, _grid_eval(fam.tests[r], coords, js, names, zp.points)):
            tz[j] = zp.recover([int(v) for v in row])
    out = []
    for j in range(n):
        fu, gu = ups[j]
        r, i, A = r_of[j], i_of[j], A_of[j]
        Ai = UniPoly(F, tuple(A[e][i] for e in range(len(A))), fu.var)
        B = tz.get(j, [t0.get(j, 0)])
        Bi = B[i] if i < len(B) else 0
        Bi1 = B[i - 1] if 0 < i <= len(B) else 0
        FB = fu.scale(Bi) + gu.scale(Bi1)
        q, rem = FB.divrem(Ai)
        if not rem.is_zero():
            raise NonzeroRemainder("coefficient ratio did not divide exactly")
        gcd = L.down(q.monic())
        if r != d1 - gcd.degree:
            raise AssertionError(f"advice law violated: r={r}, d1={d1}, deg gcd={gcd.degree}")
        out.append(GcdResult(gcd, r, i, d1, d2, (L.down(fu), L.down(gu))))
    return out


def gcd_eval(family: PiecewiseFamily | None, f: UniPoly, g: UniPoly) -> GcdResult:
    """Monic gcd(f, g) through the family; the family is rebuilt if it does not fit."""
    return gcd_eval_batch([(f, g)])[0]


def lcm_eval(f: UniPoly, g: UniPoly) -> UniPoly:
    d = gcd_eval(None, f, g).gcd
    q, rem = (f * g).divrem(d)
    if not rem.is_zero():
        raise NonzeroRemainder("f*g not divisible by gcd")
    return q.monic()


def gcd_ratio_circuits(ctx: FieldCtx, d1: int, d2: int, r: int, i: int) -> RatioCircuit:
    """coeff_{z^i}[F * B_r] over coeff_{z^i}[A_r]: the advice-(r, i) member as circuits in (f, g, y)."""
    fam = gcd_family(ctx, d1, d2)
    A, B = fam.nums[r], fam.dens[r]
    dz_b, dz_a = fam.meta["zdeg"][r]
    b = Builder(ctx)
    sig = _family_sig(d1, d2, [("z", "z")])
    for n, g in sig:
        b.input(n, g)
    y, z = b.input("y"), b.input("z")
    # F(y, z) = y^d1 + sum_r (-1)^r (f_r + z * (g part)) y^(d1 - r)
    shift = d1 - d2
    terms = [b.pow(y, d1)]
    for k in range(1, d1 + 1):
        sign = 1 if k % 2 == 0 else ctx.neg(1)
        fk = b.input(f"f{k}")
        sidx = k - shift
        if sidx >= 0:
            gz = z if sidx == 0 else b.mul([z, b.input(f"g{sidx}")])
            gsign = 1 if shift % 2 == 0 else ctx.neg(1)
            fk = b.add([fk, b.scale(gsign, gz)])
        terms.append(b.mul_c(sign, [fk] + [y] * (d1 - k)))
    Fy = b.add(terms)
    Bref = b.embed(B)[0]
    FB = b.circuit([b.mul([Fy, Bref])], sig)
    num = coeff_extract(FB, ["z"], i, dz_b + 1, bound_certified=True)
    den = coeff_extract(A, ["z"], i, dz_a, bound_certified=True)
    return RatioCircuit(num, _align(den, num.inputs))
