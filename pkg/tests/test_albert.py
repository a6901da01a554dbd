import random

from gmpy2 import mpq

from exalg.albert import (
    albert_checks,
    random_albert,
    random_w,
    standard_albert,
)


def test_identity_suite():
    results = albert_checks(random.Random(0), trials=50)
    assert all(ok for _, ok in results)
    assert len(results) == 7


def test_dimensions_and_unit():
    alb = standard_albert()
    assert alb.dim == 27
    e = alb.unit()
    assert alb.trace(e.c) == 3
    rng = random.Random(1)
    x = random_albert(alb, rng)
    assert e * x == x


def test_jordan_product_is_commutative():
    alb = standard_albert()
    rng = random.Random(2)
    for _ in range(20):
        x = random_albert(alb, rng, gaussian=True)
        y = random_albert(alb, rng)
        assert x * y == y * x


def test_jordan_identity():
    # (x^2 * y) * x = x^2 * (y * x), the defining weak associativity
    alb = standard_albert()
    rng = random.Random(3)
    for _ in range(12):
        x = random_albert(alb, rng)
        y = random_albert(alb, rng, gaussian=True)
        x2 = x * x
        assert (x2 * y) * x == x2 * (y * x)


def test_trace_form_symmetric_and_associative():
    alb = standard_albert()
    rng = random.Random(4)
    for _ in range(12):
        x = random_albert(alb, rng)
        y = random_albert(alb, rng)
        z = random_albert(alb, rng, gaussian=True)
        assert alb.trace_form(x.c, y.c) == alb.trace_form(y.c, x.c)
        assert alb.trace_form((x * y).c, z.c) == alb.trace_form(x.c, (y * z).c)


def test_w_embed_project_round_trip():
    alb = standard_albert()
    rng = random.Random(5)
    for _ in range(10):
        w = random_w(alb, rng)
        back = alb.w_project(alb.w_embed(w))
        assert list(back) == list(w)
        assert alb.trace(alb.w_embed(w)) == 0


def test_w_basis_values_are_exact_rationals():
    # regression: integer true-division once leaked floats in here
    alb = standard_albert()
    allowed = (int, type(mpq(0)))
    for t in range(26):
        w = [mpq(0)] * 26
        w[t] = mpq(1)
        for v in alb.w_embed(w):
            assert isinstance(v, allowed), type(v)
    x = random_albert(alb, random.Random(6))
    for v in alb.w_project(x.c):
        assert isinstance(v, allowed), type(v)
    t, r = alb.degree3_residual(x.c, x.c, x.c)
    assert isinstance(t, allowed), type(t)


def test_projection_kills_trace_only():
    alb = standard_albert()
    rng = random.Random(7)
    x = random_albert(alb, rng)
    p = alb.project_coeffs(x.c)
    assert alb.trace(p) == 0
    # projecting twice is the same as projecting once
    assert alb.project_coeffs(p) == list(p)
