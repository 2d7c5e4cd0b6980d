import numpy as np
import pytest

from symcirc.circuit import Builder, substitute, to_truncmv
from symcirc.errors import FieldTooSmall, NotSymmetric
from symcirc.field import make_ext_field, make_prime_field
from symcirc.gadgets import esym_gadget
from symcirc.instances import circuit_of_composition, planted_symmetric
from symcirc.polyring import UniPoly, from_signed, sylvester_resultant, symdecomp_oracle
from symcirc.symdec import (
    generic_esym_poly,
    multi_symmetric_decomposition_circuit,
    symdec_required_q,
    symmetric_decomposition_circuit,
)

P = make_prime_field(10007)


def powersum(F, n, k):
    b = Builder(F)
    return b.circuit([b.add([b.mul([b.input(f"x{i + 1}")] * k) for i in range(n)])])


def test_generic_esym_poly():
    F7 = make_prime_field(7)
    c, alphas, betas = generic_esym_poly(F7, 2)
    assert alphas == [0, 1] and betas == [1, 0]
    z = {"z1": 0, "z2": 0}
    at0 = UniPoly(F7, tuple(c.eval({**z, "y": UniPoly(F7, (0, 1))})[0].coeffs))
    assert at0 == UniPoly.from_ints(F7, [0, -1, 1])
    for a in alphas:
        assert c.eval({**z, "y": a})[0] == 0


def test_witnesses():
    Q = symmetric_decomposition_circuit(powersum(P, 2, 2), 2)
    assert to_truncmv(Q, ["z1", "z2"]).terms == {(2, 0): 1, (0, 1): P.neg(2)}
    Q = symmetric_decomposition_circuit(powersum(P, 3, 3), 3)
    assert to_truncmv(Q, ["z1", "z2", "z3"]).terms == {(3, 0, 0): 1, (1, 1, 0): P.neg(3), (0, 0, 1): 3}
    F = make_ext_field(2, 12)
    Q = symmetric_decomposition_circuit(powersum(F, 2, 2), 2)
    assert to_truncmv(Q, ["z1", "z2"]).terms == {(2, 0): 1}


def test_esym_decomposes_to_coordinate():
    rng = np.random.default_rng(0)
    for k in (1, 2, 3):
        Q = symmetric_decomposition_circuit(esym_gadget(P, 3, k, names=["x1", "x2", "x3"], group="x"), k)
        for _ in range(50):
            z = {f"z{i}": int(v) for i, v in zip((1, 2, 3), rng.integers(0, P.q, 3))}
            assert Q.eval(z)[0] == z[f"z{k}"]


def test_recomposition_and_oracle():
    rng = np.random.default_rng(1)
    for n in (2, 3):
        for d in (2, 3, 4):
            pl = planted_symmetric(P, n, d, rng)
            zs = [f"z{i + 1}" for i in range(n)]
            Qc = symmetric_decomposition_circuit(pl.P, d)
            assert to_truncmv(Qc, zs, cap=d) == pl.Q
            xs = pl.P.input_names
            plug = {z: esym_gadget(P, n, i + 1, names=xs, group="x") for i, z in enumerate(zs)}
            back = substitute(Qc, plug)
            for _ in range(20):
                pt = {x: int(v) for x, v in zip(xs, rng.integers(0, P.q, n))}
                assert back.eval(pt) == pl.P.eval(pt)
            ref = symdecomp_oracle(to_truncmv(pl.P, xs), d, xs, zs)
            assert ref == pl.Q


def test_depth_overhead_constant_across_arity():
    deltas = set()
    for n in range(2, 6):
        Pc = powersum(P, n, 3)
        deltas.add(symmetric_decomposition_circuit(Pc, 3).stats().depth - Pc.stats().depth)
    assert len(deltas) == 1 and deltas.pop() <= 20


def test_multi_symmetric_blocks():
    b = Builder(P)
    x = [b.input(f"x{i}", "x") for i in (1, 2)]
    y = [b.input(f"y{i}", "y") for i in (1, 2)]
    prod = b.circuit([b.mul([b.add(x), b.add(y)])])
    Q = multi_symmetric_decomposition_circuit(prod, [["x1", "x2"], ["y1", "y2"]], 2)
    assert to_truncmv(Q, ["z1_1", "z1_2", "z2_1", "z2_2"]).terms == {(1, 0, 1, 0): 1}
    b = Builder(P)
    diff = b.circuit([b.sub(b.input("x1", "x"), b.input("y1", "y"))])
    Q = multi_symmetric_decomposition_circuit(diff, [["x1"], ["y1"]], 1)
    assert to_truncmv(Q, ["z1_1", "z2_1"]).terms == {(1, 0): 1, (0, 1): P.neg(1)}


def test_resultant_through_blocks():
    b = Builder(P)
    xs = [b.input(f"x{i}", "x") for i in (1, 2)]
    ys = [b.input(f"y{i}", "y") for i in (1, 2)]
    c = b.circuit([b.mul([b.sub(x, y) for x in xs for y in ys])])
    Q = multi_symmetric_decomposition_circuit(c, [["x1", "x2"], ["y1", "y2"]], 4)
    rng = np.random.default_rng(2)
    for _ in range(100):
        a1, a2, b1, b2 = (int(v) for v in rng.integers(0, P.q, 4))
        f, g = from_signed(P, [a1, a2]), from_signed(P, [b1, b2])
        assert Q.eval({"z1_1": a1, "z1_2": a2, "z2_1": b1, "z2_2": b2})[0] == sylvester_resultant(f, g)


def test_passthrough_transparency():
    b = Builder(P)
    x1, x2, w = b.input("x1", "x"), b.input("x2", "x"), b.input("w", "w")
    c = b.circuit([b.mul([b.add([x1, x2]), w])])
    Q = multi_symmetric_decomposition_circuit(c, [["x1", "x2"]], 1, passthrough=["w"])
    rng = np.random.default_rng(3)
    for _ in range(10):
        z1, w = (int(v) for v in rng.integers(0, P.q, 2))
        vals = {Q.eval({"z1": z1, "z2": int(z2), "w": w})[0].value for z2 in rng.integers(0, P.q, 4)}
        assert vals == {P.mul(z1, w)}


def test_errors():
    b = Builder(P)
    c = b.circuit([b.mul([b.input("x1"), b.input("x1"), b.input("x2")])])
    with pytest.raises(NotSymmetric):
        symmetric_decomposition_circuit(c, 3)
    small = make_prime_field(5)
    need = symdec_required_q(powersum(small, 3, 3), [["x1", "x2", "x3"]], 3)
    with pytest.raises(FieldTooSmall) as exc:
        symmetric_decomposition_circuit(powersum(small, 3, 3), 3)
    assert exc.value.required_q == need


def test_composition_helper():
    rng = np.random.default_rng(4)
    pl = planted_symmetric(P, 2, 3, rng)
    assert circuit_of_composition(pl.Q, 2).structure_key() == pl.P.structure_key()
