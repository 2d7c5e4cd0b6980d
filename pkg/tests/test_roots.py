import numpy as np
import pytest

from symcirc import roots
from symcirc.circuit import Builder, lift_circuit, substitute, to_truncmv
from symcirc.errors import BadMultiplicity, FieldTooSmall
from symcirc.field import extension_containing, make_prime_field
from symcirc.instances import planted_simple_root
from symcirc.polyring import newton_lift
from symcirc.smallchar import factors_circuit

P = make_prime_field(10007)


def catalan_P(F=P):
    b = Builder(F)
    t, y = b.input("t", "t"), b.input("y", "y")
    return b.circuit([b.add([b.mul([y, y]), b.neg(y), t])])


def lifted(spec: roots.RootSpec) -> roots.RootSpec:
    big, emb = extension_containing(spec.ctx, roots.root_required_q(spec))
    return roots.RootSpec(lift_circuit(spec.P, big, emb), emb[spec.y0], spec.d, spec.ell, spec.e)


def test_linear_root():
    b = Builder(P)
    x1, x2, y = b.input("x1"), b.input("x2"), b.input("y", "y")
    Pc = b.circuit([b.add([y, b.neg(x1), b.neg(x2)])])
    C = roots.furstenberg_root_circuit(roots.RootSpec(Pc, 0, 3))
    assert to_truncmv(C, ["x1", "x2"], cap=3).terms == {(1, 0): 1, (0, 1): 1}


def test_catalan():
    C = roots.furstenberg_root_circuit(roots.RootSpec(catalan_P(), 0, 4))
    assert roots.series_coeffs(C, "t", 4) == [0, 1, 1, 2, 5]
    assert C.stats().depth - catalan_P().stats().depth <= 8


def test_root_annihilates_P_and_truncation_consistency():
    Pc = catalan_P()
    d = 6
    C = roots.furstenberg_root_circuit(roots.RootSpec(Pc, 0, d))
    comp = substitute(Pc, {"y": C, "t": _t_identity()})
    assert all(v == 0 for e, v in to_truncmv(comp, ["t"], cap=d).terms.items())
    full = roots.series_coeffs(C, "t", d)
    for d2 in range(1, d):
        C2 = roots.furstenberg_root_circuit(roots.RootSpec(Pc, 0, d2))
        assert roots.series_coeffs(C2, "t", d2) == full[: d2 + 1]


def _t_identity():
    b = Builder(P)
    return b.circuit([b.input("t", "t")])


def test_planted_simple_roots_match_newton():
    rng = np.random.default_rng(5)
    for _ in range(25):
        pr = planted_simple_root(P, rng)
        d = int(rng.integers(1, 7))
        got = roots.series_coeffs(roots.furstenberg_root_circuit(roots.RootSpec(pr.P, pr.y0, d)), "t", d)
        phi = newton_lift(to_truncmv(pr.P, ["t", "y"]), pr.y0, d)
        assert got == [phi.coeff((i,)) for i in range(d + 1)]


def test_general_constructor_degenerates_to_simple_case():
    spec = roots.RootSpec(catalan_P(), 0, 4)
    a = roots.series_coeffs(roots.furstenberg_root_power_circuit(spec), "t", 4)
    assert a == roots.series_coeffs(roots.furstenberg_root_circuit(spec), "t", 4)


def test_char2_square():
    F2 = make_prime_field(2)
    sq = factors_circuit(F2, [({(0, 1): 1, (1, 0): 1}, 2)])
    with pytest.raises(FieldTooSmall):
        roots.furstenberg_root_power_circuit(roots.RootSpec(sq, 0, 4, 1, 1))
    for factors in ([({(0, 1): 1, (1, 0): 1}, 2)], [({(0, 1): 1, (1, 0): 1}, 2), ({(0, 1): 1, (0, 0): 1}, 1)]):
        spec = lifted(roots.RootSpec(factors_circuit(F2, factors), 0, 4, 1, 1))
        assert roots.series_coeffs(roots.furstenberg_root_power_circuit(spec), "t", 4) == [0, 0, 1, 0, 0]


def test_char3_cube():
    F3 = make_prime_field(3)
    neg1 = F3.neg(1)
    # (y - t - t^2)^3 (y - 1)
    Pc = factors_circuit(F3, [({(0, 1): 1, (1, 0): neg1, (2, 0): neg1}, 3), ({(0, 1): 1, (0, 0): neg1}, 1)])
    spec = lifted(roots.RootSpec(Pc, 0, 6, 1, 1))
    assert roots.series_coeffs(roots.furstenberg_root_power_circuit(spec), "t", 6) == [0, 0, 0, 1, 0, 0, 1]


def test_verify_root_spec():
    assert roots.verify_root_spec(roots.RootSpec(catalan_P(), 0, 4)) == {
        "ok": True, "errors": [], "p_at_origin": 0, "alpha": P.neg(1), "newton_agree": True,
    }
    b = Builder(P)
    t, y = b.input("t", "t"), b.input("y", "y")
    double = b.circuit([b.add([b.mul([y, y]), t])])
    assert roots.verify_root_spec(roots.RootSpec(double, 0, 4))["errors"] == ["SingularRoot"]
    assert roots.verify_root_spec(roots.RootSpec(catalan_P(), 5, 4))["errors"] == ["NotARoot"]


def test_bad_multiplicity():
    with pytest.raises(BadMultiplicity):
        roots.check_multiplicity(2, 2)
    with pytest.raises(BadMultiplicity):
        roots.furstenberg_root_circuit(roots.RootSpec(catalan_P(), 0, 4, 1, 1))
