import random

import pytest
from gmpy2 import mpq

from exalg.derivations import f4, g2
from exalg.equivariance import (
    ModuleTooLarge,
    bilinear_form_space,
    decomposition_dims,
    equivariance_checks_f4,
    equivariance_checks_g2,
    product_space,
    traceless_sq_module,
)
from exalg.linalg import Mat


def test_g2_equivariance_suite():
    results = equivariance_checks_g2(random.Random(0))
    assert all(ok for _, ok in results)
    names = [n for n, _ in results]
    assert any("dimension 2" in n for n in names)


def test_f4_equivariance_suite():
    results = equivariance_checks_f4(random.Random(0))
    assert all(ok for _, ok in results)


def test_size_guard():
    with pytest.raises(ModuleTooLarge):
        product_space([Mat.zeros(28)])


def test_form_space_on_w7_is_the_pairing():
    from exalg.linalg import SymIndex

    lie = g2()
    dim, forms = bilinear_form_space(list(lie.w_basis))
    assert dim == 1
    # the invariant form is a multiple of the diagonal pairing
    f = forms[0]
    idx = SymIndex(7)
    diag = f[idx.index_of(0, 0)]
    assert diag != 0
    for i in range(7):
        for j in range(i, 7):
            assert f[idx.index_of(i, j)] == (diag if i == j else 0)


def test_f4_symmetric_square_splits():
    fdim, kdim, crank = decomposition_dims(f4())
    assert (fdim, kdim, crank) == (1, 324, 26)


def test_product_space_dimension_is_order_independent():
    mats, _ = traceless_sq_module(g2())
    rng = random.Random(7)
    dim1, _ = product_space(mats, rng)
    shuffled = list(mats)
    rng.shuffle(shuffled)
    dim2, _ = product_space(shuffled, rng)
    assert dim1 == dim2 == 2
