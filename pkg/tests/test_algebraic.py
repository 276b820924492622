import random

import pytest

from dfinite import (
    BivarPoly,
    DiffOp,
    Poly,
    TruncSeries,
    annihilator_of_roots,
    certify_root,
    gen_binomial_sum,
    guess_algebraic,
    guess_annihilator,
    prove_algebraic,
    unroll,
)
from dfinite.errors import NotSquarefree, PrecisionTooLow, RootNotSeparable
from dfinite.rationals import QQ


def test_guess_algebraic_sqrt(sqrt_op):
    f = unroll(sqrt_op, TruncSeries([1, -1]), 40)
    p = guess_algebraic(f, 2, 2)
    # (y - z)^2 - (1 - 4z) up to scalar
    expected = BivarPoly([Poly([-1, 4, 1]), Poly([0, -2]), Poly([1])])
    assert p == expected


def test_guess_algebraic_rational():
    f = TruncSeries([QQ(2) ** n for n in range(30)])
    p = guess_algebraic(f, 1, 1)
    assert p == BivarPoly([Poly([-1]), Poly([1, -2])])


def test_guess_algebraic_apery_empty(apery_op, apery_init):
    f = unroll(apery_op, apery_init, 70)
    assert guess_algebraic(f, 6, 6) is None


def test_guess_algebraic_precision():
    with pytest.raises(PrecisionTooLow):
        guess_algebraic(TruncSeries([1, 2, 3]), 3, 3)


def test_annihilator_of_roots_sqrt():
    p = BivarPoly([Poly([-1, 4]), Poly(), Poly([1])])  # y^2 - (1 - 4z)
    op = annihilator_of_roots(p)
    assert op == DiffOp([Poly([-2]), Poly([-1, 4])])


def test_annihilator_of_roots_rational():
    p = BivarPoly([Poly([-1]), Poly([1, -1])])  # (1-z) y - 1
    op = annihilator_of_roots(p)
    assert op == DiffOp([Poly([-1]), Poly([1, -1])])


def test_annihilator_of_roots_shifted_sqrt(sqrt_op):
    p = BivarPoly([Poly([-1, 4, 1]), Poly([0, -2]), Poly([1])])  # (y-z)^2 - (1-4z)
    assert annihilator_of_roots(p) == sqrt_op


def test_annihilator_rejects_nonsquarefree():
    p = BivarPoly([Poly(), Poly(), Poly([1])])  # y^2
    with pytest.raises(NotSquarefree):
        annihilator_of_roots(p)


def test_certify_root_sqrt(sqrt_op):
    p = BivarPoly([Poly([-1, 4, 1]), Poly([0, -2]), Poly([1])])
    assert certify_root(sqrt_op, TruncSeries([1, -1]), p) is True


def test_certify_root_corrupted(sqrt_op):
    bad = BivarPoly([Poly([-1, 5, 1]), Poly([0, -2]), Poly([1])])
    assert certify_root(sqrt_op, TruncSeries([1, -1]), bad) is False


def test_certify_root_double_root_not_separable(sqrt_op):
    # P(0, y) = (y - 1)^2 * (...): the seed value 1 is a double root
    p = BivarPoly([Poly([1]), Poly([-2, 1]), Poly([1])])  # y^2 + (z-2) y + 1
    with pytest.raises(RootNotSeparable):
        certify_root(sqrt_op, TruncSeries([1, -1]), p)


def test_prove_algebraic_sqrt(sqrt_op):
    got = prove_algebraic(sqrt_op, TruncSeries([1, -1]), max_dy=4, max_dz=4)
    assert got is not None
    p, ann = got
    assert p.deg_y == 2
    assert ann == sqrt_op


def test_prove_algebraic_f11():
    f = gen_binomial_sum([1, 1], 80)
    op = guess_annihilator(f, 3)
    got = prove_algebraic(op, f.prefix(3), max_dy=4, max_dz=4)
    assert got is not None
    p, _ = got
    # 1/sqrt(1-6z+z^2): minimal polynomial (1-6z+z^2) y^2 - 1
    assert p == BivarPoly([Poly([-1]), Poly(), Poly([1, -6, 1])])


def test_prove_algebraic_apery_exhausts(apery_op, apery_init):
    assert prove_algebraic(apery_op, apery_init, max_dy=4, max_dz=4) is None


def test_round_trip_random_algebraic():
    # random y with known minimal polynomial Q of small degree: the prover
    # recovers a polynomial with the same squarefree part
    rng = random.Random(41)
    for _ in range(4):
        # build an algebraic series: y = c0 + c1 w + c2 w^2, w = sqrt(1 + a z)
        a = rng.randint(1, 4)
        c = [QQ(rng.randint(-3, 3)) for _ in range(3)]
        if c[1] == 0 and c[2] == 0:
            continue
        n = 50
        w = _sqrt_series(QQ(a), n)
        w2 = _mul(w, w, n)
        y = [(c[0] if i == 0 else QQ(0)) + c[1] * w[i] + c[2] * w2[i] for i in range(n)]
        f = TruncSeries(y)
        op = guess_annihilator(f, 3)
        assert op is not None
        got = prove_algebraic(op, f.prefix(max(op.order, 1)), max_dy=4, max_dz=6)
        assert got is not None
        p, _ = got
        check = p.evaluate_series(f)
        assert all(x == 0 for x in check.coeffs)


def _sqrt_series(a, n):
    # sqrt(1 + a z) by Newton iteration on y^2 - (1 + a z)
    out = [QQ(1)] + [QQ(0)] * (n - 1)
    prec = 1
    target = [QQ(1), a] + [QQ(0)] * (n - 2)
    while prec < n:
        prec = min(2 * prec, n)
        cur = (out + [QQ(0)] * prec)[:prec]
        sq = _mul(cur, cur, prec)
        err = [target[i] - sq[i] for i in range(prec)]
        half = _div_series(err, cur, prec)
        out = [cur[i] + half[i] / 2 for i in range(prec)]
    return out


def _mul(a, b, n):
    out = [QQ(0)] * n
    for i, x in enumerate(a[:n]):
        if x == 0:
            continue
        for j, y in enumerate(b[: n - i]):
            if y != 0:
                out[i + j] += x * y
    return out


def _div_series(a, b, n):
    inv = [1 / b[0]] + [QQ(0)] * (n - 1)
    for m in range(1, n):
        acc = QQ(0)
        for k in range(1, m + 1):
            if k < len(b):
                acc += b[k] * inv[m - k]
        inv[m] = -acc / b[0]
    return _mul(a, inv, n)
