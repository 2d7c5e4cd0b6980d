import numpy as np
import pytest

from symcirc.circuit import Builder, Circuit, lift_circuit, to_truncmv
from symcirc.errors import DegreeBoundExceeded, DenominatorVanishesAtOrigin, FieldTooSmall
from symcirc.field import extension_containing, make_prime_field
from symcirc.gadgets import (
    coeff_extract,
    esym_gadget,
    hasse_gadget,
    hom_extract,
    hom_le,
    make_interp_plan,
    strassen_divide,
)
from symcirc.polyring import esym_eval_ints, hasse_derivative

F2, F7, P = make_prime_field(2), make_prime_field(7), make_prime_field(10007)


def power_circuit(F, k, var="y") -> Circuit:
    b = Builder(F)
    y = b.input(var, var)
    return b.circuit([b.mul([y] * k)])


def test_interp_plan_examples():
    plan = make_interp_plan(F7, 2)
    assert plan.points == (0, 1, 2)
    assert plan.row(0) == (1, 0, 0)
    assert plan.recover([a * a % 7 for a in plan.points]) == [0, 0, 1]
    assert make_interp_plan(F7, 0).weights == ((1,),)
    with pytest.raises(FieldTooSmall):
        make_interp_plan(make_prime_field(5), 5)


def test_coeff_extract_examples():
    b = Builder(P)
    s = b.add([b.const(1), b.input("y", "y")])
    c = b.circuit([b.mul([s, s])])
    assert coeff_extract(c, "y", 1).eval({})[0] == 2
    assert coeff_extract(c, "y", 5).eval({})[0] == 0
    b = Builder(P)
    t = b.input("t", "t")
    ys = [b.input(f"y{i}", "y") for i in range(1, 4)]
    c = b.circuit([b.mul([b.add([b.const(1), b.mul([t, y])]) for y in ys])])
    e2 = coeff_extract(c, "t", 2)
    assert e2.eval({"y1": 1, "y2": 2, "y3": 3})[0] == 11
    with pytest.raises(DegreeBoundExceeded):
        coeff_extract(c, "t", 1, D=2)


def test_coeff_extract_matches_symbolic():
    rng = np.random.default_rng(0)
    for _ in range(100):
        b = Builder(P)
        t, x = b.input("t", "t"), b.input("x")
        terms = [b.mul_c(int(rng.integers(1, P.q)), [t] * int(rng.integers(0, 7)) + [x] * int(rng.integers(0, 3))) for _ in range(4)]
        c = b.circuit([b.add(terms)])
        mv = to_truncmv(c, ["t", "x"], cap=12)
        i = int(rng.integers(0, 7))
        got = coeff_extract(c, "t", i, D=6)
        xv = int(rng.integers(0, P.q))
        want = P.sum(P.mul(v, P.pow(xv, e[1])) for e, v in mv.terms.items() if e[0] == i)
        assert got.eval({"x": xv})[0] == want


def test_hom_extract_and_hom_le():
    b = Builder(P)
    x, y = b.input("x"), b.input("y")
    c = b.circuit([b.add([b.mul([x, x]), b.mul([x, y]), b.const(3)])])
    h2 = hom_extract(c, ["x", "y"], 2)
    h0 = hom_extract(c, ["x", "y"], 0)
    rng = np.random.default_rng(1)
    for _ in range(20):
        a, v = (int(z) for z in rng.integers(0, P.q, 2))
        assert h2.eval({"x": a, "y": v})[0] == P.add(P.mul(a, a), P.mul(a, v))
        assert h0.eval({"x": a, "y": v})[0] == 3
        assert hom_le(c, 2).eval({"x": a, "y": v}) == c.eval({"x": a, "y": v})


def test_hasse_gadget_examples():
    assert to_truncmv(hasse_gadget(power_circuit(P, 3), "y", 2)).terms == {(1,): 3}
    y2 = power_circuit(F2, 2)
    with pytest.raises(FieldTooSmall):
        hasse_gadget(y2, "y", 1)
    # interpolation needs three points, so work in F_4
    big, emb = extension_containing(F2, 3)
    y2 = lift_circuit(y2, big, emb)
    for v in range(big.q):
        assert hasse_gadget(y2, "y", 1).eval({"y": v})[0] == 0
        assert hasse_gadget(y2, "y", 2).eval({"y": v})[0] == 1


def test_hasse_gadget_matches_oracle():
    rng = np.random.default_rng(2)
    for _ in range(50):
        b = Builder(P)
        y, x = b.input("y", "y"), b.input("x")
        terms = [b.mul_c(int(rng.integers(1, P.q)), [y] * int(rng.integers(0, 5)) + [x] * int(rng.integers(0, 2))) for _ in range(3)]
        c = b.circuit([b.add(terms)])
        i = int(rng.integers(0, 4))
        got = to_truncmv(hasse_gadget(c, "y", i), ["y", "x"], cap=8)
        want = hasse_derivative(to_truncmv(c, ["y", "x"], cap=8), "y", i)
        assert got == want


def test_esym_gadget():
    assert esym_gadget(P, 3, 2).eval({"y1": 1, "y2": 2, "y3": 3})[0] == 11
    assert esym_gadget(P, 3, 0).eval({"y1": 4, "y2": 5, "y3": 6})[0] == 1
    assert esym_gadget(P, 3, 3).eval({"y1": 4, "y2": 5, "y3": 6})[0] == 120
    rng = np.random.default_rng(3)
    for m in range(1, 9):
        for r in range(m + 1):
            c = esym_gadget(P, m, r)
            assert c.stats().depth <= 3
            for _ in range(100 // (m + 1)):
                vals = [int(v) for v in rng.integers(0, P.q, m)]
                assert c.eval(dict(zip(c.input_names, vals)))[0] == esym_eval_ints(P, vals, r)


def _t_circuit(build):
    b = Builder(P)
    t = b.input("t", "t")
    return b.circuit([build(b, t)], [("t", "t")])


def test_strassen_divide_examples():
    one = _t_circuit(lambda b, t: b.const(1))
    one_minus_t = _t_circuit(lambda b, t: b.add([b.const(1), b.neg(t)]))
    q = strassen_divide(one, one_minus_t, 3, "t")
    assert to_truncmv(q, ["t"], cap=8).terms == {(i,): 1 for i in range(4)}
    same = strassen_divide(one_minus_t, one_minus_t, 3, "t")
    assert to_truncmv(same, ["t"], cap=8).terms == {(0,): 1}
    t = _t_circuit(lambda b, t: t)
    one_plus_t = _t_circuit(lambda b, t: b.add([b.const(1), t]))
    assert to_truncmv(strassen_divide(t, one_plus_t, 2, "t"), ["t"], cap=8).terms == {(1,): 1, (2,): P.neg(1)}
    with pytest.raises(DenominatorVanishesAtOrigin):
        strassen_divide(one, t, 2, "t")


def test_gadget_depth_overhead():
    rng = np.random.default_rng(4)
    b = Builder(P)
    y, x = b.input("y", "y"), b.input("x")
    s = b.add([y, x, b.const(int(rng.integers(1, P.q)))])
    c = b.circuit([b.mul([s, s, b.add([y, b.mul([x, x])])])])
    base = c.stats().depth
    for g in (coeff_extract(c, "y", 1), hom_extract(c, ["x", "y"], 2), hom_le(c, 2), hasse_gadget(c, "y", 1)):
        assert g.stats().depth - base <= 4
