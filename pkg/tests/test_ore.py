import random

from dfinite import DiffOp, Poly, RecOp, lclm, ode_to_rec, op_mul, op_right_divrem, rec_to_ode
from dfinite.ore import ratfuncs_to_op, right_divides
from dfinite.polys import RatFunc
from dfinite.rationals import QQ


def _rand_poly(rng, deg, zero_ok=True):
    while True:
        p = Poly([QQ(rng.randint(-4, 4)) for _ in range(deg + 1)])
        if zero_ok or not p.is_zero():
            return p


def _rand_op(rng, order, deg):
    coeffs = [_rand_poly(rng, rng.randint(0, deg)) for _ in range(order)]
    coeffs.append(_rand_poly(rng, rng.randint(0, deg), zero_ok=False))
    return DiffOp(coeffs)


def test_mul_log_factorization():
    # ((1-z) D - 1) o D has the same normal form as (1-z) D^2 - D
    a = DiffOp([Poly([-1]), Poly([1, -1])])
    d = DiffOp([Poly(), Poly([1])])
    assert op_mul(a, d) == DiffOp([Poly(), Poly([-1]), Poly([1, -1])])


def test_sqrt_factorization_display(sqrt_op):
    # z D - 1 right-divides the operator (it kills the rational solution z);
    # the quotient reconstructs the factorization with denominators cleared
    b = DiffOp([Poly([-1]), Poly([0, 1])])
    q, r = op_right_divrem(sqrt_op, b)
    assert not r
    z = Poly([0, 1])
    assert q[1] == RatFunc(Poly([1, -2]) * Poly([1, -4]), z)
    assert q[0] == RatFunc.const(-4)
    assert op_mul(DiffOp.from_ratfuncs(q), b) == sqrt_op


def test_mul_identity():
    one = DiffOp([Poly([1])])
    b = DiffOp([Poly([3, 1]), Poly([0, 2]), Poly([5])])
    assert op_mul(one, b) == b
    assert op_mul(b, one) == b


def test_mul_associative_random():
    rng = random.Random(7)
    for _ in range(20):
        a, b, c = (_rand_op(rng, rng.randint(0, 2), 2) for _ in range(3))
        assert op_mul(op_mul(a, b), c) == op_mul(a, op_mul(b, c))


def test_divrem_product_roundtrip():
    rng = random.Random(11)
    for _ in range(20):
        c = _rand_op(rng, rng.randint(0, 2), 2)
        b = _rand_op(rng, rng.randint(1, 2), 2)
        a = op_mul(c, b)
        q, r = op_right_divrem(a, b)
        assert not r
        assert ratfuncs_to_op(q) == c


def test_divrem_sqrt_display(sqrt_op):
    b = DiffOp([Poly([-1]), Poly([0, 1])])
    q, r = op_right_divrem(sqrt_op, b)
    assert not r  # z D - 1 right-divides the operator


def test_divrem_nonzero_remainder():
    # D^2 = (D + 1)(D - 1) + 1
    a = DiffOp([Poly(), Poly(), Poly([1])])
    b = DiffOp([Poly([-1]), Poly([1])])
    q, r = op_right_divrem(a, b)
    assert [x for x in q] == [RatFunc.const(1), RatFunc.const(1)]
    assert [x for x in r] == [RatFunc.const(1)]


def test_lclm_idempotent():
    a = DiffOp([Poly([1, 3]), Poly([0, 1]), Poly([2])])
    assert lclm(a, a) == a


def test_lclm_exp_and_const():
    d = DiffOp([Poly(), Poly([1])])
    dm1 = DiffOp([Poly([-1]), Poly([1])])
    m = lclm(d, dm1)
    assert m.order == 2
    assert right_divides(d, m)
    assert right_divides(dm1, m)


def test_lclm_z_and_z2():
    l1 = DiffOp([Poly([-1]), Poly([0, 1])])
    l2 = DiffOp([Poly([-2]), Poly([0, 1])])
    m = lclm(l1, l2)
    assert m == DiffOp([Poly([2]), Poly([0, -2]), Poly([0, 0, 1])])


def test_lclm_divisibility_random():
    rng = random.Random(13)
    for _ in range(15):
        a = _rand_op(rng, rng.randint(1, 2), 1)
        b = _rand_op(rng, rng.randint(1, 2), 1)
        m = lclm(a, b)
        assert m.order <= a.order + b.order
        assert right_divides(a, m)
        assert right_divides(b, m)


def test_ode_to_rec_apery(apery_op):
    rec = ode_to_rec(apery_op)
    n = Poly.x()
    expected = RecOp(
        [n * n * n,
         Poly([1, 2]) * Poly([5, 17, 17]) * Poly([-1]),
         (n + 1) * (n + 1) * (n + 1)],
        backshift=1,
    )
    assert rec == expected


def test_ode_to_rec_exponential():
    rec = ode_to_rec(DiffOp([Poly([-1]), Poly([1])]))
    assert rec == RecOp([Poly([-1]), Poly([1, 1])], backshift=0)


def test_ode_to_rec_geometric():
    rec = ode_to_rec(DiffOp([Poly([-2]), Poly([1, -2])]))
    assert rec == RecOp([Poly([-2, -2]), Poly([1, 1])], backshift=0)


def test_rec_to_ode_apery(apery_op):
    n = Poly.x()
    rec = RecOp(
        [n * n * n,
         Poly([1, 2]) * Poly([5, 17, 17]) * Poly([-1]),
         (n + 1) * (n + 1) * (n + 1)],
        backshift=1,
    )
    assert rec_to_ode(rec) == apery_op


def test_rec_to_ode_trivial():
    rec = RecOp([Poly([-1]), Poly([1, 1])], backshift=0)
    assert rec_to_ode(rec) == DiffOp([Poly([-1]), Poly([1])])


def test_rec_to_ode_central_binomial_squares():
    # (n+1)^2 a_{n+1} - 4 (2n+1)^2 a_n; indicial at 0 must be a double root
    from dfinite.local import SingularPoint, indicial

    n = Poly.x()
    rec = RecOp([Poly([1, 2]) * Poly([1, 2]) * Poly([-4]), (n + 1) * (n + 1)])
    op = rec_to_ode(rec)
    assert op.order == 2
    data = indicial(op, SingularPoint.rational(QQ(0)))
    assert data.monic_q_poly() == Poly([0, 0, 1])


def test_round_trips_random():
    # every solution of op is annihilated by rec_to_ode(ode_to_rec(op))
    rng = random.Random(17)
    from dfinite.series import TruncSeries, apply_op, unroll

    for _ in range(15):
        while True:
            op = _rand_op(rng, rng.randint(1, 3), 2)
            if op.leading[0] != 0:  # the origin is an ordinary point
                break
        back = rec_to_ode(ode_to_rec(op))
        init = TruncSeries([QQ(rng.randint(-3, 3)) for _ in range(op.order)])
        f = unroll(op, init, op.order + 16)
        out = apply_op(back, f)
        assert all(c == 0 for c in out.coeffs)
