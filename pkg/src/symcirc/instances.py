"""Seeded generators for planted test instances."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Builder, Circuit
from .field import FieldCtx
from .gadgets import esym_refs
from .polyring import TruncMV, UniPoly, euclid_gcd, squarefree_part, _weighted_monomials
from .smallchar import FactorInstance, SeriesPoly, Terms, instance_from_factors, planted_power


def rng_of(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def elem(F: FieldCtx, rng) -> int:
    return int(rng.integers(0, F.q))


def random_monic(F: FieldCtx, deg: int, rng, var: str = "y") -> UniPoly:
    return UniPoly(F, tuple(elem(F, rng) for _ in range(deg)) + (1,), var)


def random_squarefree(F: FieldCtx, deg: int, rng, avoid: UniPoly | None = None, tries: int = 200) -> UniPoly | None:
    """Random monic square-free polynomial, coprime to ``avoid`` when given."""
    for _ in range(tries):
        f = random_monic(F, deg, rng)
        if squarefree_part(f).degree != deg:
            continue
        if avoid is not None and euclid_gcd(f, avoid).degree > 0:
            continue
        return f
    return None


# ---------------------------------------------------------------- gcd / resultant


def random_pair(F: FieldCtx, d1: int, d2: int, rng) -> tuple[UniPoly, UniPoly]:
    return random_monic(F, d1, rng), random_monic(F, d2, rng)


def planted_gcd_pair(F: FieldCtx, d1: int, d2: int, rng) -> tuple[UniPoly, UniPoly]:
    """Monic f, g of degrees d1, d2 sharing repeated factors.

    Multiplicities are drawn up to p + 1 when the degrees allow, so factors
    whose multiplicity is divisible by p show up.
    """
    while True:
        h = random_monic(F, int(rng.integers(1, 3)), rng)
        mf = int(rng.integers(1, max(2, d1 // h.degree) + 1))
        mg = int(rng.integers(1, max(2, d2 // h.degree) + 1))
        if h.degree * mf > d1 or h.degree * mg > d2:
            continue
        f = h**mf * random_monic(F, d1 - h.degree * mf, rng)
        g = h**mg * random_monic(F, d2 - h.degree * mg, rng)
        return f, g


def common_root_pair(F: FieldCtx, d1: int, d2: int, rng) -> tuple[UniPoly, UniPoly]:
    r = UniPoly(F, (elem(F, rng), 1))
    return r * random_monic(F, d1 - 1, rng), r * random_monic(F, d2 - 1, rng)


# ---------------------------------------------------------------- symmetric decomposition


@dataclass
class PlantedSymmetric:
    P: Circuit
    Q: TruncMV
    n: int
    d: int


def random_weighted_Q(F: FieldCtx, n: int, d: int, rng) -> TruncMV:
    """Random Q(z_1..z_n) with sum_i i * deg_{z_i} <= d."""
    zs = [f"z{i + 1}" for i in range(n)]
    terms = {}
    for a in _weighted_monomials(n, d):
        c = elem(F, rng)
        if c:
            terms[tuple(a)] = c
    return TruncMV(F, zs, d, terms)


def circuit_of_composition(Q: TruncMV, n: int, xs=None) -> Circuit:
    """P(x) = Q(Esym_1(x), ..., Esym_n(x)) as a circuit on x_1..x_n."""
    F = Q.ctx
    xs = list(xs or [f"x{i + 1}" for i in range(n)])
    b = Builder(F)
    refs = [b.input(x, "x") for x in xs]
    es = [esym_refs(b, refs, i + 1) for i in range(n)]
    terms = [b.mul_c(c, [e for e, k in zip(es, a) for _ in range(k)]) for a, c in sorted(Q.terms.items()) if c]
    return b.circuit([b.add(terms)])


def planted_symmetric(F: FieldCtx, n: int, d: int, rng) -> PlantedSymmetric:
    Q = random_weighted_Q(F, n, d, rng)
    return PlantedSymmetric(circuit_of_composition(Q, n), Q, n, d)


# ---------------------------------------------------------------- root lifting


@dataclass
class PlantedRoot:
    P: Circuit
    y0: int
    terms: dict


def planted_simple_root(F: FieldCtx, rng, deg_t: int = 2, deg_y: int = 3) -> PlantedRoot:
    """Random P(t, y) with P(0, y0) = 0 and dP/dy(0, y0) != 0."""
    y0 = elem(F, rng)
    while True:
        terms = {(i, j): elem(F, rng) for i in range(deg_t + 1) for j in range(deg_y + 1)}
        # shift the t^0 fiber so that y0 is a simple root
        fib = UniPoly(F, tuple(terms[(0, j)] for j in range(deg_y + 1)))
        terms[(0, 0)] = F.sub(terms[(0, 0)], fib.eval(y0))
        fib = UniPoly(F, tuple(terms[(0, j)] for j in range(deg_y + 1)))
        if fib.derivative().eval(y0) != 0:
            break
    b = Builder(F)
    t, y = b.input("t", "t"), b.input("y", "y")
    P = b.circuit([b.add([b.mul_c(c, [t] * i + [y] * j) for (i, j), c in sorted(terms.items()) if c])])
    return PlantedRoot(P, y0, {k: v for k, v in terms.items() if v})


# ---------------------------------------------------------------- factor powers


@dataclass
class PlantedFactor:
    instance: FactorInstance
    factors: list[tuple[Terms, int]]
    target: int
    expected: SeriesPoly

    def to_json(self) -> dict:
        F = self.instance.ctx
        return {
            "p": F.p,
            "k": F.k,
            "factors": [{"terms": [[i, j, c] for (i, j), c in sorted(t.items())], "mult": m} for t, m in self.factors],
            "target": self.target,
            "d": self.instance.d,
        }


def _perturb(F: FieldCtx, fiber: UniPoly, rng, deg_t: int) -> Terms:
    """fiber(y) + sum_{i=1..deg_t} t^i r_i(y) with deg r_i < deg fiber (stays monic)."""
    terms = {(0, j): c for j, c in enumerate(fiber.coeffs) if c}
    for i in range(1, deg_t + 1):
        for j in range(fiber.degree):
            c = elem(F, rng)
            if c:
                terms[(i, j)] = c
    return terms


def splits(F: FieldCtx, f: UniPoly) -> bool:
    """True if f has deg f distinct roots in F (exhaustive; small fields only)."""
    from .field import vector_roots

    return len(vector_roots(F, f.coeffs)) == f.degree


def planted_factor(
    F: FieldCtx,
    ell: int,
    e: int,
    d: int,
    rng,
    max_deg: int = 3,
    deg_t: int = 1,
    split_fibers: bool | None = None,
) -> PlantedFactor:
    """P = g^(p^ell * e) * h^m with g(0, y) square-free and coprime to h(0, y).

    ``split_fibers`` forces g(0, y) to split over F; by default it is forced
    only for fields whose quadratic extension cannot be tabulated.
    """
    from .field import TABLE_LIMIT

    if split_fibers is None:
        split_fibers = F.q * F.q > TABLE_LIMIT
    N = F.p**ell * e
    while True:
        n = int(rng.integers(1, max_deg + 1))
        if split_fibers:
            if n > F.q:
                continue
            roots = rng.choice(F.q, size=n, replace=False)
            g0 = UniPoly.from_roots(F, [int(r) for r in roots])
        else:
            g0 = random_squarefree(F, n, rng)
            if g0 is None:
                continue
        nh = int(rng.integers(0, 3))
        factors = [(_perturb(F, g0, rng, deg_t), N)]
        if nh:
            h0 = random_squarefree(F, nh, rng, avoid=g0)
            if h0 is not None:
                factors.append((_perturb(F, h0, rng, deg_t), int(rng.integers(1, 3))))
        target = 0
        if len(factors) > 1 and rng.integers(0, 2):
            factors.reverse()
            target = 1
        inst = instance_from_factors(F, factors, target, d)
        if inst.ell != ell or inst.e != e:
            continue
        return PlantedFactor(inst, factors, target, planted_power(F, factors[target][0], ell, d))
