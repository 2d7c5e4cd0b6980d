import numpy as np
import pytest

from symcirc import gcdres
from symcirc.circuit import Builder
from symcirc.errors import DegenerateInput
from symcirc.field import make_ext_field, make_prime_field
from symcirc.instances import common_root_pair, planted_gcd_pair, random_pair
from symcirc.polyring import UniPoly, esym_eval_ints, euclid_gcd, lcm, sylvester_resultant, to_signed

P = make_prime_field(10007)


def up(F, *cs):
    return UniPoly.from_ints(F, cs)


def lin(F, a):
    """y - a for an encoded element a."""
    return UniPoly(F, (F.neg(a), 1))


def test_resultant_examples():
    a, b = 123, 9000
    assert gcdres.resultant_eval(up(P, -a, 1), up(P, -b, 1))[0] == P.from_int(a - b)
    assert gcdres.resultant_eval(up(P, -1, 0, 1), up(P, -4, 0, 1))[0] == 9
    with pytest.raises(DegenerateInput):
        gcdres.resultant_eval(up(P, 1, 2), up(P, 1, 1))


@pytest.mark.parametrize("F", [P, make_ext_field(2, 16), make_ext_field(3, 8)], ids=lambda F: F.spec)
def test_resultant_matches_sylvester(F):
    rng = np.random.default_rng(0)
    pairs = [random_pair(F, int(rng.integers(1, 6)), int(rng.integers(1, 6)), rng) for _ in range(40)]
    pairs += [common_root_pair(F, 3, 2, rng) for _ in range(5)]
    got = gcdres.resultant_eval_batch(F, pairs)
    assert got == [sylvester_resultant(f, g) for f, g in pairs]
    assert all(v == 0 for v in got[-5:])


def _eval_on(c, f, g):
    return c.eval(gcdres._signed_inputs(f, g))[0]


def test_esym_on_roots_examples():
    f, g = lin(P, 1) * lin(P, 2), lin(P, 1)
    assert _eval_on(gcdres.esym_on_roots_circuit(P, 2, 1, 1), f, g) == 1
    assert _eval_on(gcdres.esym_on_roots_circuit(P, 2, 1, 2), f, g) == 0
    rng = np.random.default_rng(1)
    for _ in range(30):
        rts = [int(v) for v in rng.integers(0, P.q, 3)]
        f = UniPoly.from_roots(P, rts)
        g = random_pair(P, 2, 2, rng)[1]
        r = int(rng.integers(0, 4))
        want = esym_eval_ints(P, [g.eval(s) for s in rts], r)
        assert _eval_on(gcdres.esym_on_roots_circuit(P, 3, 2, r), f, g) == want
    # r = d1 is the resultant
    f, g = random_pair(P, 3, 2, rng)
    assert _eval_on(gcdres.esym_on_roots_circuit(P, 3, 2, 3), f, g) == sylvester_resultant(f, g)


def _y_circuit(F, build):
    b = Builder(F)
    y = b.input("y", "y")
    return b.circuit([build(b, y)])


def test_esym_rational_on_roots():
    f = lin(P, 1) * lin(P, 2)
    g = _y_circuit(P, lambda b, y: y)
    h = _y_circuit(P, lambda b, y: b.add([y, b.const(1)]))
    R = gcdres.esym_rational_on_roots(f, g, h, 1)
    assert R.eval({}) == P.div(7, 6)
    one = _y_circuit(P, lambda b, y: b.const(1))
    R1 = gcdres.esym_rational_on_roots(f, g, one, 2)
    assert R1.eval({}) == 2


def test_filter_examples():
    f = lin(P, 1) * lin(P, 2) ** 2
    res = gcdres.filter_eval(None, f, lin(P, 1), "!=0")
    assert res.advice_r == 2 and res.result == lin(P, 2) ** 2
    coprime = gcdres.filter_eval(None, f, lin(P, 5), "!=0")
    assert coprime.advice_r == 3 and coprime.result == f
    same = gcdres.filter_eval(None, f, f, "!=0")
    assert same.advice_r == 0 and same.result == up(P, 1)
    f = lin(P, 3) ** 2 * lin(P, 4)
    assert gcdres.filter_eval(None, f, lin(P, 4), "=0").result == lin(P, 4)
    assert gcdres.filter_eval(None, f, lin(P, 4), "!=0").result == lin(P, 3) ** 2


def test_filter_soundness():
    rng = np.random.default_rng(2)
    for _ in range(20):
        f, g = common_root_pair(P, 4, 2, rng)
        keep = gcdres.filter_eval(None, f, g, "!=0").result
        drop = gcdres.filter_eval(None, f, g, "=0").result
        assert keep * drop == f
        if keep.degree > 0 and euclid_gcd(f, f.derivative()).degree == 0:
            assert sylvester_resultant(keep, g) != 0


def test_gcd_examples():
    assert gcdres.gcd_eval(None, up(P, -1, 0, 1), up(P, -1, 1)).gcd == up(P, -1, 1)
    rng = np.random.default_rng(3)
    a, b = random_pair(P, 3, 2, rng)
    if euclid_gcd(a, b).degree == 0:
        assert gcdres.gcd_eval(None, a, b).gcd == up(P, 1)
    assert gcdres.gcd_eval(None, a, a).gcd == a
    F = make_ext_field(2, 12)
    f = lin(F, 1) ** 2 * lin(F, 2)
    g = lin(F, 1) ** 2 * lin(F, 3)
    res = gcdres.gcd_eval(None, f, g)
    assert res.gcd == lin(F, 1) ** 2


@pytest.mark.parametrize("F", [P, make_prime_field(3), make_ext_field(3, 4)], ids=lambda F: F.spec)
def test_gcd_batch_and_advice_law(F):
    rng = np.random.default_rng(4)
    pairs = [random_pair(F, 3, 2, rng) for _ in range(10)] + [planted_gcd_pair(F, 5, 3, rng) for _ in range(10)]
    for (f, g), res in zip(pairs, gcdres.gcd_eval_batch(pairs)):
        ref = euclid_gcd(f, g).monic()
        assert res.gcd == ref
        if res.advice_r is not None:
            assert res.advice_r == res.d1 - ref.degree


def test_gcd_ratio_member():
    f, g = lin(P, 1) * lin(P, 2) * lin(P, 3), lin(P, 1) * lin(P, 7)
    res = gcdres.gcd_eval(None, f, g)
    need = gcdres.gcd_required_q(P, 3, 2)
    assert need <= P.q
    R = gcdres.gcd_ratio_circuits(P, 3, 2, res.advice_r, res.advice_i)
    vals = {**gcdres._signed_inputs(f, g), "y": 1}
    assert R.eval(vals) == 0
    assert R.eval({**vals, "y": 9}) == res.gcd.eval(9)


def test_lcm():
    rng = np.random.default_rng(5)
    f, g = random_pair(P, 3, 2, rng)
    if euclid_gcd(f, g).degree == 0:
        assert gcdres.lcm_eval(f, g) == (f * g).monic()
    assert gcdres.lcm_eval(f, f) == f
    a, b, c = lin(P, 1), lin(P, 2), lin(P, 3)
    assert gcdres.lcm_eval(a**2 * b, a * c) == a**2 * b * c == lcm(a**2 * b, a * c)


def test_family_depth_is_constant():
    profiles = set()
    for d1 in range(2, 5):
        fam = gcdres.gcd_family(P, d1, d1 - 1)
        profiles.add((max(c.stats().depth for c in fam.tests.values()), max(c.stats().depth for c in fam.nums.values())))
    assert len(profiles) == 1
    res_depths = {gcdres.resultant_circuit(P, d1, d1 - 1).stats().depth for d1 in range(2, 7)}
    assert len(res_depths) == 1


def test_signed_convention():
    f = lin(P, 1) * lin(P, 2)
    # y^2 - 3y + 2: Esym_1 = 3, Esym_2 = 2
    assert to_signed(f) == [3, 2]
