import random

import pytest
from gmpy2 import mpq

from exalg.cgcore import (
    CGAlgebra,
    core_map_checks,
    sigma_closed_form_checks_f4,
    sigma_closed_form_checks_g2,
)
from exalg.derivations import f4, g2
from exalg.linalg import Mat


@pytest.fixture(scope="module")
def cg28():
    return CGAlgebra(g2())


@pytest.fixture(scope="module")
def cg325():
    return CGAlgebra(f4())


def test_core_suite_g2(cg28):
    results = core_map_checks(cg28, random.Random(0), trials=12)
    assert all(ok for _, ok in results)
    assert results[0][0] == "carrier dimension is 28"


def test_core_suite_f4(cg325):
    results = core_map_checks(cg325, random.Random(0), trials=3)
    assert all(ok for _, ok in results)
    assert results[0][0] == "carrier dimension is 325"


def test_closed_form_suites(cg28, cg325):
    assert all(ok for _, ok in sigma_closed_form_checks_g2(cg28, random.Random(1)))
    assert all(ok for _, ok in sigma_closed_form_checks_f4(cg325, random.Random(1)))


def test_unit_maps_to_identity_operator(cg28):
    ident = cg28.identity
    assert cg28.sigma(ident) == Mat.identity(7)
    assert cg28.epsilon(ident) == mpq(1)


def test_diamond_commutes(cg28):
    rng = random.Random(2)
    from exalg.cgcore import random_element

    u = random_element(cg28, rng)
    v = random_element(cg28, rng)
    assert cg28.diamond(u, v).endo == cg28.diamond(v, u).endo


def test_kernel_combinations_annihilate(cg28):
    # rejected generator pairs give exact relations in End(g)
    combos = cg28.kernel_combinations(limit=3)
    assert combos
    for combo in combos:
        assert cg28.element_from_pair_combo(combo).endo.is_zero()


def test_coords_round_trip(cg28):
    el = cg28.basis_element(5)
    co = cg28.coords_of(el.endo)
    assert co[5] == mpq(1) and sum(1 for c in co if c) == 1
