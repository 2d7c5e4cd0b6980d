"""Truncated power-series roots as constant-depth circuits.

For P(x, y) with P(0, y0) = 0 the root phi(x) with phi(0) = y0 is written as
a finite sum of coefficient extractions of powers of (alpha*y^N - P), where
N is the multiplicity of the root at the origin.  Only interpolation is
needed, so the depth stays a constant above the depth of P.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .circuit import Builder, Circuit, encode
from .errors import BadMultiplicity, FieldTooSmall, NotARoot, SingularRoot
from .gadgets import combine, hom_le, make_interp_plan
from .polyring import TruncMV, UniPoly, newton_lift


@dataclass
class RootSpec:
    """P(x, y) with a root y0 over the origin of multiplicity p^ell * e."""

    P: Circuit
    y0: int = 0
    d: int = 4
    ell: int = 0
    e: int = 1
    y: str = "y"
    _alpha: int | None = field(default=None, repr=False)

    @property
    def ctx(self):
        return self.P.ctx

    @property
    def xs(self) -> list[str]:
        return [n for n in self.P.input_names if n != self.y]

    @property
    def order(self) -> int:
        """Multiplicity N = p^ell * e of the root (N = 1 for a simple root)."""
        return (self.ctx.p**self.ell) * self.e

    def fiber(self) -> UniPoly:
        """P(0, y0 + y) as a polynomial in y."""
        F = self.ctx
        yv = UniPoly(F, (encode(F, self.y0), 1), "y")
        asg = {n: UniPoly(F, (), "y") for n in self.xs}
        asg[self.y] = yv
        return self.P.eval(asg)[0]

    @property
    def alpha(self) -> int:
        """H^N_y P(0, y0)."""
        if self._alpha is None:
            self._alpha = self.fiber().coeff(self.order)
        return self._alpha

    def validate(self) -> None:
        F = self.ctx
        if self.e < 1 or self.e % F.p == 0:
            raise BadMultiplicity(f"e={self.e} must be >= 1 and prime to p={F.p}")
        fib = self.fiber()
        if fib.coeff(0) != 0:
            raise NotARoot(f"P(0, y0) = {fib.coeff(0)} != 0")
        if self.alpha == 0:
            raise SingularRoot(f"H^{self.order}_y P vanishes at the origin root")


def _root_plans(spec: RootSpec, M: int):
    deg_y = spec.P.syntactic_degree([spec.y])
    N = spec.order
    D_y = M * max(N, deg_y) + deg_y
    return deg_y, D_y


def root_required_q(spec: RootSpec) -> int:
    """Field size the root constructions need (largest interpolation plan + 1)."""
    M = 2 * spec.e * (spec.d + spec.ctx.p**spec.ell)
    deg_y, D_y = _root_plans(spec, M)
    deg_x = spec.P.syntactic_degree(spec.xs)
    D_x = (M + 1) * max(deg_x, 1)
    return max(D_y, D_x, deg_y) + 1


def furstenberg_root_power_circuit(spec: RootSpec) -> Circuit:
    """Circuit over the x-inputs computing phi^(p^ell) mod <x>^(d+1)."""
    spec.validate()
    F = spec.ctx
    P, yname = spec.P, spec.y
    pl = F.p**spec.ell
    N = spec.order
    M = 2 * spec.e * (spec.d + pl)
    need = root_required_q(spec)
    if F.q < need:
        raise FieldTooSmall(needed=need, have=F.q)
    deg_y, D_y = _root_plans(spec, M)
    plan_y = make_interp_plan(F, D_y)
    plan_h = make_interp_plan(F, deg_y)
    hrow = plan_h.row(pl)
    alpha = spec.alpha
    y0 = encode(F, spec.y0)

    b = Builder(F)
    xs = spec.xs
    groups = dict(P.inputs)
    for n in xs:
        b.input(n, groups[n])
    cache: dict[int, int] = {}

    def P_at(v: int) -> int:
        if v not in cache:
            cache[v] = b.embed(P, {yname: b.const(v)})[0]
        return cache[v]

    # per-m scalar 1 / (e * alpha^(m+1))
    e_inv = F.inv(F.from_int(spec.e))
    terms = [b.const(F.pow(y0, pl))] if y0 else []
    for j, gamma in enumerate(plan_y.points):
        # H^(p^ell)_y P at y0 + gamma, by shift-interpolation
        H = combine(b, hrow, [P_at(F.add(F.add(y0, gamma), zeta)) for zeta in plan_h.points])
        L = b.add([b.const(F.mul(alpha, F.pow(gamma, N))), b.neg(P_at(F.add(y0, gamma)))])
        for m in range(M + 1):
            k = pl * (spec.e * (m + 1) - 2)
            if k < 0 or k > D_y:
                continue
            w = plan_y.weights[k][j]
            if not w:
                continue
            c = F.mul(w, F.mul(e_inv, F.inv(F.pow(alpha, m + 1))))
            terms.append(b.mul_c(c, [H] + [L] * m))
    inner = b.circuit([b.add(terms)], [(n, groups[n]) for n in xs])
    return hom_le(inner, spec.d, group=xs)


def furstenberg_root_circuit(spec: RootSpec) -> Circuit:
    """Simple-root case: circuit over the x-inputs computing phi mod <x>^(d+1)."""
    if spec.ell != 0 or spec.e != 1:
        raise BadMultiplicity("furstenberg_root_circuit is the simple-root case (ell=0, e=1)")
    return furstenberg_root_power_circuit(spec)


def series_coeffs(c: Circuit, var: str, d: int) -> list[int]:
    """Coefficients 0..d of a single-input circuit whose value has degree <= d."""
    plan = make_interp_plan(c.ctx, d)
    vals = c.eval_batch({var: np.array(plan.points, dtype=np.int64)}, d + 1)[0]
    return plan.recover([int(v) for v in vals])


def circuit_to_truncmv(c: Circuit, d: int) -> TruncMV:
    """Symbolic value of a root circuit as a TruncMV truncated at degree d."""
    if len(c.inputs) == 1:
        var = c.input_names[0]
        co = series_coeffs(c, var, d)
        return TruncMV(c.ctx, (var,), d, {(i,): v for i, v in enumerate(co)})
    from .circuit import to_truncmv

    return to_truncmv(c, cap=d)


def verify_root_spec(spec: RootSpec) -> dict:
    """Diagnostics: P at the origin root, alpha, and (simple, bivariate roots) a Newton cross-check."""
    report: dict = {"ok": True, "errors": []}
    try:
        fib = spec.fiber()
        report["p_at_origin"] = fib.coeff(0)
        report["alpha"] = spec.alpha
        spec.validate()
    except (NotARoot, SingularRoot, BadMultiplicity) as exc:
        report["ok"] = False
        report["errors"].append(type(exc).__name__)
        return report
    if spec.ell == 0 and spec.e == 1 and len(spec.xs) == 1:
        from .circuit import to_truncmv

        t = spec.xs[0]
        Pm = to_truncmv(spec.P, [t, spec.y])
        phi = newton_lift(Pm, spec.y0, spec.d, tvar=t, yvar=spec.y)
        try:
            circ = furstenberg_root_circuit(spec)
            got = series_coeffs(circ, t, spec.d)
            report["newton_agree"] = got == [phi.coeff((i,)) for i in range(spec.d + 1)]
        except FieldTooSmall as exc:
            report["newton_agree"] = None
            report["required_q"] = exc.required_q
        if report.get("newton_agree") is False:
            report["ok"] = False
    return report


def check_multiplicity(p: int, e: int) -> None:
    if e < 1 or gcd(p, e) != 1:
        raise BadMultiplicity(f"gcd(p, e) must be 1, got p={p}, e={e}")
