import numpy as np
import pytest

from symcirc import smallchar as sc
from symcirc.circuit import Builder, to_truncmv
from symcirc.errors import BadMultiplicity, DegenerateInput, NotARoot, ShiftFailed
from symcirc.field import make_ext_field, make_prime_field
from symcirc.instances import planted_factor
from symcirc.polyring import UniPoly

F2, F3, P = make_prime_field(2), make_prime_field(3), make_prime_field(10007)


def lin_t(F, cs):
    """y - (c_0 + c_1 t + ...) as terms."""
    terms = {(0, 1): 1}
    for i, c in enumerate(cs):
        if c:
            terms[(i, 0)] = F.neg(c)
    return terms


def series(F, d, terms):
    return sc.SeriesPoly.from_terms(F, d, terms)


# ---------------------------------------------------------------- psi shift


def _x1():
    b = Builder(P)
    return b.circuit([b.input("x1")])


def test_psi_shift_linear():
    shifted = sc.psi_shift(_x1(), draw=lambda F, n, rng: ([5], [7]))
    mv = to_truncmv(shifted, ["x1", "t", "y"])
    assert mv.terms == {(1, 1, 0): 1, (0, 0, 1): 5, (0, 0, 0): 7}
    with pytest.raises(ShiftFailed):
        sc.psi_shift(_x1(), draw=lambda F, n, rng: ([0], [7]))


def test_psi_shift_all_zero_draws_fail():
    b = Builder(P)
    x1, x2 = b.input("x1"), b.input("x2")
    C = b.circuit([b.mul([x1, x2])])
    with pytest.raises(ShiftFailed):
        sc.psi_shift(C, draw=lambda F, n, rng: ([0] * n, [0] * n))


def test_psi_shift_repeated_factors():
    b = Builder(P)
    x1, x2 = b.input("x1"), b.input("x2")
    s = b.add([x1, x2, b.const(1)])
    C = b.circuit([b.mul([s, s, b.sub(x1, x2)])])
    for seed in range(5):
        img = sc.psi_shift(C, seed=seed)
        mv = to_truncmv(img, ["x1", "x2", "t", "y"])
        assert max(sum(e) for e in mv.terms) == 6
        assert max(e[3] for e in mv.terms) == 3


# ---------------------------------------------------------------- SeriesPoly


def test_series_poly_arithmetic():
    g = series(P, 3, {(0, 1): 1, (1, 0): 2})
    sq = g * g
    assert sq.terms() == {(0, 2): 1, (1, 1): 4, (2, 0): 4}
    assert (g**3).degree_y == 3
    assert str(series(F2, 2, {(0, 2): 1, (2, 0): 1})) == "y^2 + t^2"
    assert series(P, 1, {(3, 0): 1}).terms() == {}


# ---------------------------------------------------------------- factor power examples


def test_factor_power_examples():
    # (y - t)^2 (y - 1) over F_2
    inst = sc.instance_from_factors(F2, [(lin_t(F2, [0, 1]), 2), (lin_t(F2, [1]), 1)], 0, 4)
    assert (inst.ell, inst.e) == (1, 1)
    assert sc.factor_power(inst) == series(F2, 4, {(0, 2): 1, (2, 0): 1})
    # (y - t)^3 (y - 1 - t) over F_3
    inst = sc.instance_from_factors(F3, [(lin_t(F3, [0, 1]), 3), (lin_t(F3, [1, 1]), 1)], 0, 4)
    assert sc.factor_power(inst) == series(F3, 4, {(0, 3): 1, (3, 0): F3.neg(1)})
    # (y - t)^2 (y - t - 1)^2 over F_2 with g = (y - t)(y - t - 1)
    g = {(0, 2): 1, (0, 1): 1, (1, 0): 1, (2, 0): 1}
    inst = sc.instance_from_factors(F2, [(g, 2)], 0, 4)
    assert sc.factor_power(inst) == series(F2, 4, g) ** 2
    assert sc.factor_power(inst) == series(F2, 4, {(0, 4): 1, (0, 2): 1, (4, 0): 1, (2, 0): 1})
    # (y - t)^3 (y - 1) over F_2: ell = 0, e = 3
    inst = sc.instance_from_factors(F2, [(lin_t(F2, [0, 1]), 3), (lin_t(F2, [1]), 1)], 0, 4)
    assert (inst.ell, inst.e) == (0, 3)
    assert sc.factor_power(inst) == series(F2, 4, {(0, 1): 1, (1, 0): 1})


def test_R_at_zero_matches_power():
    inst = sc.instance_from_factors(F2, [(lin_t(F2, [0, 1]), 2)], 0, 4)
    big, emb, roots, ser = sc.root_powers(inst)
    assert roots == [0] and ser == [[0, 0, 1, 0, 0]]


@pytest.mark.parametrize("F", [F2, F3], ids=lambda F: F.spec)
def test_R_at_planted_roots(F):
    rng = np.random.default_rng(6)
    for _ in range(6):
        d = int(rng.integers(1, 5))
        r0, r1 = rng.choice(F.q, 2, replace=False) if F.q > 2 else (0, 1)
        cs0 = [int(r0)] + [int(v) for v in rng.integers(0, F.q, 2)]
        cs1 = [int(r1)] + [int(v) for v in rng.integers(0, F.q, 2)]
        ell, e = (1, 1) if rng.integers(2) else (0, 2 if F.p != 2 else 3)
        N = F.p**ell * e
        inst = sc.instance_from_factors(F, [(lin_t(F, cs0), N), (lin_t(F, cs1), 1)], 0, d)
        big, emb, roots, ser = sc.root_powers(inst)
        assert roots == [emb[int(r0)]]
        phi = series(F, d, {(i, 0): c for i, c in enumerate(cs0)}) ** (F.p**ell)
        want = [emb[phi.terms().get((i, 0), 0)] for i in range(d + 1)]
        assert ser[0] == want
        R = sc.build_R(sc._lift_instance(inst, big, emb))
        assert R.den.eval({"t": 0, "z": roots[0]})[0] != 0


def test_reconstruction_and_power_support():
    rng = np.random.default_rng(7)
    for F, splits in ((F2, [(1, 1), (0, 3), (2, 1)]), (F3, [(1, 1), (0, 2)]), (make_ext_field(2, 2), [(1, 1), (0, 3)])):
        for k in range(8):
            ell, e = splits[k % len(splits)]
            pl = planted_factor(F, ell, e, int(rng.integers(1, 5)), rng)
            got = sc.factor_power(pl.instance)
            assert got == pl.expected
            if F.k == 1:
                step = F.p**ell
                assert all(i % step == 0 and j % step == 0 for i, j in got.terms())


def test_build_R_depth_delta_uniform():
    rng = np.random.default_rng(8)
    deltas = set()
    for _ in range(5):
        pl = planted_factor(F2, 1, 1, 2, rng, max_deg=2)
        inst = pl.instance
        big, emb, _ = sc._splitting_field(F2, tuple(inst.g0.coeffs), sc.smallchar_required_q(inst))
        R = sc.build_R(sc._lift_instance(inst, big, emb))
        deltas.add(R.num.stats().depth - inst.P.stats().depth)
    assert len(deltas) == 1


def test_instance_validation():
    with pytest.raises(BadMultiplicity):
        sc.FactorInstance(sc.factors_circuit(F2, [(lin_t(F2, [0, 1]), 2)]), UniPoly(F2, (0, 1)), 0, 2, 2).validate()
    b = Builder(F2)
    t, y = b.input("t", "t"), b.input("y", "y")
    not_monic = b.circuit([b.add([b.mul([t, y, y]), b.mul([y, y]), t])])
    with pytest.raises(DegenerateInput):
        sc.FactorInstance(not_monic, UniPoly(F2, (0, 1)), 1, 1, 2).validate()
    sq = sc.factors_circuit(F2, [(lin_t(F2, [0, 1]), 2)])
    with pytest.raises(NotARoot):
        sc.FactorInstance(sq, UniPoly(F2, (1, 1)), 1, 1, 2).validate()
    with pytest.raises(BadMultiplicity):
        sc.FactorInstance(sq, UniPoly(F2, (0, 1)), 0, 1, 2).validate()


def test_split_multiplicity():
    assert sc.split_multiplicity(2, 12) == (2, 3)
    assert sc.split_multiplicity(3, 2) == (0, 2)
    with pytest.raises(BadMultiplicity):
        sc.split_multiplicity(2, 0)


def test_factor_power_order_six():
    rng = np.random.default_rng(10)
    for F, (ell, e) in ((F2, (1, 1)), (F3, (0, 2)), (F2, (0, 3))):
        pl = planted_factor(F, ell, e, 6, rng, max_deg=2)
        assert sc.factor_power(pl.instance) == pl.expected
