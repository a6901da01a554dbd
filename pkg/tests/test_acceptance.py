"""Acceptance gate: one test per contract criterion.

Every comparison is exact (tolerance 0); elapsed time is asserted against
the per-criterion budget so a pathological slowdown fails the gate instead
of passing silently.  Run with ``pytest -v tests/test_acceptance.py`` for
the one-line-per-criterion report (add ``-s`` for timings).
"""

import random
import time

from gmpy2 import mpq

_cache: dict = {}


def _cg(kind):
    if kind not in _cache:
        from exalg.cgcore import CGAlgebra
        from exalg.derivations import f4, g2

        t0 = time.perf_counter()
        alg = CGAlgebra(g2() if kind == "g2" else f4())
        alg.dimension  # force the rank computation
        _cache[kind] = (alg, time.perf_counter() - t0)
    return _cache[kind]


def _done(name: str, t0: float, budget: float):
    dt = time.perf_counter() - t0
    print(f"PASS {name} in {dt:.2f}s (budget {budget:.0f}s)")
    assert dt < budget, f"{name} exceeded its {budget}s budget: {dt:.2f}s"


def test_c1_octonion_identity_suite():
    from exalg.octonion import octonion_checks

    t0 = time.perf_counter()
    results = octonion_checks(random.Random(0), trials=50)
    assert [n for n, _ in results] == [
        "plane mnemonic anchor e6 e2 = e4",
        "quadratic relation xy + yx in span(x, y, e)",
        "form moves across products via conjugation",
        "conjugate-cancellation scales by the norm",
        "Moufang identities",
        "associator is alternating",
        "commutator product on pure parts",
        "commutator product associates with the form",
        "pure-part associator closed forms",
    ]
    _done("c1 octonion suite", t0, 5)


def test_c2_albert_identity_suite():
    from exalg.albert import albert_checks
    from exalg.products import projected_product_checks

    t0 = time.perf_counter()
    assert all(ok for _, ok in albert_checks(random.Random(0), trials=50))
    assert all(
        ok for _, ok in projected_product_checks(random.Random(0), trials=50)
    )
    _done("c2 albert suite", t0, 30)


def test_c3_derivation_suite():
    from exalg.derivations import derivation_checks, f4, g2

    t0 = time.perf_counter()
    r14 = derivation_checks(g2(), random.Random(0), trials=6)
    r52 = derivation_checks(f4(), random.Random(0), trials=6)
    assert r14[0][0] == "generator span has dimension 14"
    assert r52[0][0] == "generator span has dimension 52"
    assert all(ok for _, ok in r14 + r52)
    _done("c3 derivation suite", t0, 120)


def test_c4_coefficient_facts():
    from exalg.derivations import f4, g2, killing_checks

    t0 = time.perf_counter()
    names14 = [n for n, ok in killing_checks(g2()) if ok]
    names52 = [n for n, ok in killing_checks(f4()) if ok]
    assert "Killing form equals 4 times the natural trace form" in names14
    assert "Killing form equals 3 times the natural trace form" in names52
    assert any("Casimir" in n for n in names14)
    assert any("Casimir" in n for n in names52)
    _done("c4 coefficient facts", t0, 120)


def test_c5_carrier_dimensions():
    cg28, t28 = _cg("g2")
    assert cg28.dimension == 28
    assert t28 < 10, f"dim-28 carrier took {t28:.2f}s (budget 10s)"
    print(f"PASS c5a carrier dimension 28 in {t28:.2f}s (budget 10s)")
    cg325, t325 = _cg("f4")
    assert cg325.dimension == 325
    assert t325 < 900, f"dim-325 carrier took {t325:.2f}s (budget 900s)"
    print(f"PASS c5b carrier dimension 325 in {t325:.2f}s (budget 900s)")


def test_c6_g2_transported_product():
    from exalg.cgcore import (
        core_map_checks,
        sigma_closed_form_checks_g2,
    )
    from exalg.linalg import Mat
    from exalg.products import (
        g2_product_checks,
        recover_g2_coefficients,
        sigma_hom_check_g2,
    )

    t0 = time.perf_counter()
    cg, _ = _cg("g2")
    assert sigma_hom_check_g2(cg) == 406  # exhaustive over unordered pairs
    assert cg.sigma(cg.identity) == Mat.identity(7)
    # trace-form associativity on >= 100 random triples
    assert all(ok for _, ok in core_map_checks(cg, random.Random(0), trials=100))
    assert all(ok for _, ok in sigma_closed_form_checks_g2(cg, random.Random(0)))
    assert all(ok for _, ok in g2_product_checks(random.Random(0), trials=6))
    assert recover_g2_coefficients() == (mpq(-1, 48), mpq(1, 12), mpq(5, 168))
    _done("c6 dim-28 transported product", t0, 300)


def test_c7_f4_transported_product():
    from exalg.products import (
        diamond_path_check_f4,
        f4_product_checks,
        sigma_hom_check_f4,
    )

    t0 = time.perf_counter()
    cg, _ = _cg("f4")
    assert sigma_hom_check_f4(cg, random.Random(0), npairs=200) == 200
    # covers: the isotropic slot-square display, both mixed-law displays,
    # the exhaustive 5/18 / -1/26 identity law, and closure of every
    # evaluated product under the membership predicate
    assert all(ok for _, ok in f4_product_checks(random.Random(0), trials=3))
    assert all(ok for _, ok in diamond_path_check_f4(cg))
    _done("c7 dim-325 transported product", t0, 1200)


def test_c8_equivariant_spaces():
    from exalg.equivariance import equivariance_checks_f4, equivariance_checks_g2

    t0 = time.perf_counter()
    g2r = equivariance_checks_g2(random.Random(0))
    f4r = equivariance_checks_f4(random.Random(0))
    names = [n for n, ok in g2r + f4r if ok]
    assert len(names) == len(g2r) + len(f4r)
    assert any("27-dim product space: dimension 2" in n for n in names)
    assert sum("one invariant form" in n for n in names) == 3  # 7-, 27-, 26-dim
    _done("c8 equivariant spaces", t0, 1800)


def test_c9_witness():
    from exalg.derivations import g2
    from exalg.products import leibniz_defect, witness_b3
    from exalg.symsquare import w7_space

    t0 = time.perf_counter()
    sq = w7_space()
    expect = sq.zero()
    expect[sq.idx.index_of(4, 5)] = mpq(-1, 3)  # -(1/3) e5.e6
    assert witness_b3() == expect
    lie = g2()
    u, v = sq.pair(0, 0), sq.pair(3, 3)
    for d in lie.basis:
        assert not any(leibniz_defect(lie.restrict_to_w(d), u, v))
    _done("c9 witness", t0, 10)
