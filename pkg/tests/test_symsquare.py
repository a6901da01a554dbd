import random

from gmpy2 import mpq

from exalg.derivations import f4, g2
from exalg.symsquare import (
    o8_space,
    traceless_operator_basis,
    verify_sumrules,
    w7_space,
    w26_space,
)


def test_sumrule_suite():
    assert all(ok for _, ok in verify_sumrules(random.Random(0), trials=5))


def test_space_shapes():
    assert w7_space().dim == 7 and len(w7_space().idx) == 28
    assert w26_space().dim == 26 and len(w26_space().idx) == 351
    assert o8_space().dim == 8


def test_pair_coeffs_match_varphi():
    # the coefficient expansion of x.y agrees with the symmetrised
    # operator picture transported back by varphi_inv
    sq = w7_space()
    rng = random.Random(1)
    for _ in range(8):
        x = [mpq(rng.randint(-3, 3)) for _ in range(7)]
        y = [mpq(rng.randint(-3, 3)) for _ in range(7)]
        u = sq.pair_coeffs(x, y)
        assert sq.varphi_inv(sq.varphi(u)) == u


def test_identity_is_fixed_by_the_action():
    sq = w7_space()
    lie = g2()
    idv = sq.identity()
    for d in lie.w_basis[:5]:
        assert sq.act(d, idv) == sq.zero()


def test_w26_identity_is_fixed():
    sq = w26_space()
    lie = f4()
    idv = sq.identity()
    for d in lie.w_basis[:3]:
        assert sq.act(d, idv) == sq.zero()


def test_act_leibniz_matches_act():
    sq = w7_space()
    lie = g2()
    rng = random.Random(2)
    d = lie.w_basis[5]
    for _ in range(6):
        u = [mpq(rng.randint(-2, 2)) for _ in range(len(sq.idx))]
        assert sq.act_leibniz(d, u) == sq.act(d, u)


def test_traceless_operator_basis_has_codim_one():
    sq = w7_space()
    basis = traceless_operator_basis(sq)
    assert len(basis) == 27
    for b in basis:
        assert sq.trace(b) == 0


def test_w_bilinear_diagonal():
    sq = w7_space()
    x = [mpq(1)] + [mpq(0)] * 6
    assert sq.w_bilinear(x, x) == mpq(2)
    sqw = w26_space()
    y = [mpq(1)] + [mpq(0)] * 25
    assert sqw.w_bilinear(y, y) == mpq(2)
    z = [mpq(0), mpq(1)] + [mpq(0)] * 24
    assert sqw.w_bilinear(z, z) == mpq(6)
