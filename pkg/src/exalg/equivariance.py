"""Invariant bilinear forms and equivariant products by exact nullspace
computation.

Dimension statements that are usually settled by character arithmetic are
recomputed here directly: the Leibniz constraint rows of the derivation
action are assembled per generator and their kernels intersected exactly.
The large system (symmetric equivariant products on the 27-dim module,
27 * 378 = 10206 unknowns) becomes tractable through an exact change to a
joint eigenbasis of a commuting generator pair -- the basis derivations
all act with Gaussian-rational spectrum -- which turns the constraint
blocks of those two generators into a plain coordinate selection.  The
remaining generators are then eliminated inside the cut subspace, with a
kernel-annihilation filter that skips rows already in the row span.

Floating point enters only as a hint source for eigenvalue candidates;
every eigenspace is certified exactly afterwards, and any failure to
split falls back to generic incremental elimination.  Symmetry of the
product maps is structural (unknowns are indexed by unordered pairs), and
all reported bases are exact.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
from gmpy2 import mpq

from .derivations import LieAlgebra, invert
from .linalg import Mat, RowBasis, SymIndex, chained_kernel, kernel_basis, solve_in_span
from .scalar import Scalar
from .symsquare import traceless_operator_basis, w7_space, w26_space


class ModuleTooLarge(RuntimeError):
    """Raised when an equivariance computation is refused for size."""


_VDIM_LIMIT = 27


def _reim(x):
    if isinstance(x, Scalar):
        return (mpq(x.re), mpq(x.im))
    return (mpq(x), mpq(0))


def _to_complex(x):
    re, im = _reim(x)
    return complex(float(re), float(im))


def _scalar_of(key):
    re, im = key
    return Scalar(re, im) if im else mpq(re)


def _exact_spectrum(m: Mat):
    """Eigenvalues with exact eigenspace bases, or None when the matrix
    does not split with Gaussian-rational spectrum.

    Numeric eigenvalues only suggest candidates; each eigenspace is an
    exact kernel and the dimensions must add up to full.
    """
    n = m.nrows
    arr = np.array([[_to_complex(x) for x in row] for row in m.rows])
    cands = set()
    for z in np.linalg.eigvals(arr):
        fr = Fraction(float(z.real)).limit_denominator(48)
        fi = Fraction(float(z.imag)).limit_denominator(48)
        cands.add((mpq(fr.numerator, fr.denominator), mpq(fi.numerator, fi.denominator)))
    spaces = []
    total = 0
    for key in sorted(cands):
        shifted = m.copy()
        lam = _scalar_of(key)
        for t in range(n):
            shifted.rows[t][t] = shifted.rows[t][t] - lam
        vecs = kernel_basis(shifted)
        if vecs:
            spaces.append((key, vecs))
            total += len(vecs)
    return spaces if total == n else None


def _ksum(ka, kb):
    return tuple((a[0] + b[0], a[1] + b[1]) for a, b in zip(ka, kb))


def _split_basis(mats):
    """Joint eigenbasis of the first splittable generator and, when one
    exists, the first other generator commuting with it.

    Returns (P, Pinv, lambdas, used_indices) with lambdas[t] the weight
    tuple of eigen coordinate t, or None when nothing splits.
    """
    i1 = spectrum1 = None
    for i, m in enumerate(mats):
        spectrum = _exact_spectrum(m)
        if spectrum is not None:
            i1, spectrum1 = i, spectrum
            break
    if spectrum1 is None:
        return None
    n = mats[i1].nrows
    i2 = None
    for j in range(len(mats)):
        if j != i1 and (mats[i1] @ mats[j] - mats[j] @ mats[i1]).is_zero():
            i2 = j
            break

    def single():
        cols, lams = [], []
        for key, vecs in spectrum1:
            for v in vecs:
                cols.append(v)
                lams.append((key,))
        return cols, lams, (i1,)

    cols, lams = [], []
    if i2 is not None:
        ok = True
        for key, vecs in spectrum1:
            rbe = RowBasis(n, track=True)
            for v in vecs:
                rbe.add(v)
            k = len(vecs)
            r = Mat.zeros(k)
            for c, v in enumerate(vecs):
                sol = rbe.solve(mats[i2].apply(v))
                if sol is None:
                    ok = False
                    break
                for pos, cc in sol.items():
                    r.rows[pos][c] = cc
            if not ok:
                break
            sub = _exact_spectrum(r)
            if sub is None:
                ok = False
                break
            for key2, wvecs in sub:
                for w in wvecs:
                    col = [mpq(0)] * n
                    for t, wt in enumerate(w):
                        if wt:
                            for rr in range(n):
                                if vecs[t][rr]:
                                    col[rr] += wt * vecs[t][rr]
                    cols.append(col)
                    lams.append((key, key2))
        if not ok:
            cols, lams, used = single()
        else:
            used = (i1, i2)
    else:
        cols, lams, used = single()

    p = Mat([[cols[c][r] for c in range(n)] for r in range(n)])
    pinv = invert(p)
    for pos, t in enumerate(used):
        ap = pinv @ mats[t] @ p
        for r in range(n):
            for c in range(n):
                expect = _scalar_of(lams[r][pos]) if r == c else 0
                assert ap.rows[r][c] == expect, "eigenbasis failed to diagonalize"
    return p, pinv, lams, used


def _acc(row: dict, k: int, c):
    v = row.get(k, 0) + c
    if v:
        row[k] = v
    else:
        row.pop(k, None)


def _product_rows(ap: Mat, sym: SymIndex):
    """Leibniz constraint rows for one generator on symmetric maps
    Sym^2 V -> V; unknown (gamma, K) sits at flat index gamma*len(sym)+K."""
    n = ap.nrows
    nsym = len(sym)
    for gamma in range(n):
        base = gamma * nsym
        arow = ap.rows[gamma]
        for k, (al, be) in enumerate(sym.pairs):
            row: dict = {}
            for dl in range(n):
                c = arow[dl]
                if c:
                    _acc(row, dl * nsym + k, c)
                c = ap.rows[dl][al]
                if c:
                    _acc(row, base + sym.index_of(dl, be), -c)
                c = ap.rows[dl][be]
                if c:
                    _acc(row, base + sym.index_of(al, dl), -c)
            if row:
                yield row


def _form_rows(ap: Mat, sym: SymIndex):
    """Invariance rows for one generator on symmetric bilinear forms."""
    n = ap.nrows
    for al, be in sym.pairs:
        row: dict = {}
        for dl in range(n):
            c = ap.rows[dl][al]
            if c:
                _acc(row, sym.index_of(dl, be), c)
            c = ap.rows[dl][be]
            if c:
                _acc(row, sym.index_of(al, dl), c)
        if row:
            yield row


def _sq_action_rows(ap: Mat, sym: SymIndex):
    """Rows of the induced action on Sq^2 V (for fixed-vector systems)."""
    n = ap.nrows
    rows: dict = {}
    for k, (al, be) in enumerate(sym.pairs):
        for dl in range(n):
            c = ap.rows[dl][al]
            if c:
                _acc(rows.setdefault(sym.index_of(dl, be), {}), k, c)
            c = ap.rows[dl][be]
            if c:
                _acc(rows.setdefault(sym.index_of(al, dl), {}), k, c)
    for row in rows.values():
        if row:
            yield row


def _constrained_kernel(blocks, allowed, nunknowns):
    """Common kernel of the given sparse rows inside the coordinate
    subspace spanned by the `allowed` unknown indices.

    Rows already inside the accumulated row span are skipped via a kernel
    annihilation test (a row kills the current kernel iff it is in the
    span), so only rank-growing rows pay for elimination.
    """
    pos = {j: t for t, j in enumerate(allowed)}
    d = len(allowed)
    if d == 0:
        return []
    rb = RowBasis(d)
    kern = None

    def refresh():
        nonlocal kern
        kern = []
        for sv in rb.kernel_vectors():
            kv = [mpq(0)] * d
            for t, c in sv.items():
                kv[t] = c
            kern.append((kv, sorted(sv)))

    for block in blocks:
        for row in block:
            r = [mpq(0)] * d
            hit = False
            for j, c in row.items():
                t = pos.get(j)
                if t is not None and c:
                    r[t] = c
                    hit = True
            if not hit:
                continue
            if kern is not None:
                if all(
                    not sum((r[t] * kv[t] for t in nz if r[t]), start=mpq(0))
                    for kv, nz in kern
                ):
                    continue
            if not rb.add(r):
                refresh()
            if rb.rank == d:
                return []
    if kern is None:
        refresh()
    out = []
    for kv, nz in kern:
        out.append({allowed[t]: kv[t] for t in nz})
    return out


def _expand(sol: dict, length: int):
    vec = [mpq(0)] * length
    for j, c in sol.items():
        vec[j] = c
    return vec


def _closure_check(mats, rng, trials: int = 4):
    """Sampled precondition: commutators of generators stay in their span."""
    if len(mats) < 2:
        return
    flat = [m.flatten() for m in mats]
    for _ in range(trials):
        i = rng.randrange(len(mats))
        j = rng.randrange(len(mats))
        if i == j:
            continue
        comm = (mats[i] @ mats[j] - mats[j] @ mats[i]).flatten()
        if solve_in_span(flat, comm) is None:
            raise ValueError("generator commutator left the span: not a Lie action")


def product_space(mats, rng=None):
    """Dimension and basis of commutative equivariant products Sym^2 V -> V.

    Each basis element is a flat coefficient vector x with x[gamma*N + K]
    the e_gamma-coefficient of p(e_alpha, e_beta), K = (alpha <= beta)
    over SymIndex; symmetry of p is structural.  Generators are consumed
    per block: an exactly splittable commuting pair is absorbed as a
    coordinate cut in its joint eigenbasis, the rest are eliminated
    incrementally inside the cut.
    """
    mats = list(mats)
    if not mats:
        raise ValueError("need at least one action matrix")
    n = mats[0].nrows
    if n > _VDIM_LIMIT:
        raise ModuleTooLarge(
            f"equivariant product computation refused for module dimension {n} > {_VDIM_LIMIT}"
        )
    _closure_check(mats, rng or random.Random(0))
    sym = SymIndex(n)
    nsym = len(sym)
    nunk = n * nsym
    split = _split_basis(mats)
    if split is None:
        sols = chained_kernel((_product_rows(m, sym) for m in mats), nunk)
        flats = [_expand(s, nunk) for s in sols]
        return len(flats), flats
    p, pinv, lams, used = split
    allowed = [
        gamma * nsym + k
        for gamma in range(n)
        for k, (al, be) in enumerate(sym.pairs)
        if _ksum(lams[al], lams[be]) == lams[gamma]
    ]
    blocks = (
        _product_rows(pinv @ m @ p, sym) for t, m in enumerate(mats) if t not in used
    )
    sols = _constrained_kernel(blocks, allowed, nunk)
    flats = [_product_to_std(s, p, pinv, sym) for s in sols]
    return len(flats), flats


def _pinv_cols(pinv: Mat):
    n = pinv.nrows
    return [[pinv.rows[r][c] for r in range(n)] for c in range(n)]


def _product_to_std(sol: dict, p: Mat, pinv: Mat, sym: SymIndex):
    """Flat standard-coordinate table of a product given in eigen coords."""
    n = p.nrows
    nsym = len(sym)
    cols = _pinv_cols(pinv)
    entries = [(divmod(j, nsym), y) for j, y in sol.items()]
    flat = [mpq(0)] * (n * nsym)
    for k, (a, b) in enumerate(sym.pairs):
        u, v = cols[a], cols[b]
        wprime = [mpq(0)] * n
        for (gamma, kab), y in entries:
            al, be = sym.pairs[kab]
            w = u[al] * v[be] + (u[be] * v[al] if al != be else 0)
            if w:
                wprime[gamma] += y * w
        wstd = p.apply(wprime)
        for gamma in range(n):
            if wstd[gamma]:
                flat[gamma * nsym + k] = wstd[gamma]
    return flat


def apply_flat(flat, n: int, u, v):
    """Evaluate a flat product table on coefficient vectors of length n."""
    sym = SymIndex(n)
    nsym = len(sym)
    out = [mpq(0)] * n
    for k, (al, be) in enumerate(sym.pairs):
        w = u[al] * v[be] + (u[be] * v[al] if al != be else 0)
        if w:
            for gamma in range(n):
                c = flat[gamma * nsym + k]
                if c:
                    out[gamma] += c * w
    return out


def bilinear_form_space(mats):
    """Dimension and basis of invariant symmetric bilinear forms on the
    module; forms are coefficient vectors over SymIndex pairs."""
    mats = list(mats)
    if not mats:
        raise ValueError("need at least one action matrix")
    n = mats[0].nrows
    if n > _VDIM_LIMIT:
        raise ModuleTooLarge(
            f"invariant form computation refused for module dimension {n} > {_VDIM_LIMIT}"
        )
    sym = SymIndex(n)
    nsym = len(sym)
    split = _split_basis(mats)
    if split is None:
        sols = chained_kernel((_form_rows(m, sym) for m in mats), nsym)
        return len(sols), [_expand(s, nsym) for s in sols]
    p, pinv, lams, used = split
    zero = tuple((mpq(0), mpq(0)) for _ in lams[0])
    allowed = [
        k for k, (al, be) in enumerate(sym.pairs) if _ksum(lams[al], lams[be]) == zero
    ]
    blocks = (_form_rows(pinv @ m @ p, sym) for t, m in enumerate(mats) if t not in used)
    sols = _constrained_kernel(blocks, allowed, nsym)
    cols = _pinv_cols(pinv)
    out = []
    for sol in sols:
        flat = [mpq(0)] * nsym
        for k, (a, b) in enumerate(sym.pairs):
            u, v = cols[a], cols[b]
            acc = mpq(0)
            for kab, y in sol.items():
                al, be = sym.pairs[kab]
                w = u[al] * v[be] + (u[be] * v[al] if al != be else 0)
                if w:
                    acc += y * w
            if acc:
                flat[k] = acc
        out.append(flat)
    return len(out), out


def fixed_vector_space(mats):
    """Dimension and basis of module-invariant vectors in Sq^2 V."""
    mats = list(mats)
    n = mats[0].nrows
    if n > _VDIM_LIMIT:
        raise ModuleTooLarge(
            f"fixed-vector computation refused for module dimension {n} > {_VDIM_LIMIT}"
        )
    sym = SymIndex(n)
    nsym = len(sym)
    split = _split_basis(mats)
    if split is None:
        sols = chained_kernel((_sq_action_rows(m, sym) for m in mats), nsym)
        return len(sols), [_expand(s, nsym) for s in sols]
    p, pinv, lams, used = split
    zero = tuple((mpq(0), mpq(0)) for _ in lams[0])
    allowed = [
        k for k, (al, be) in enumerate(sym.pairs) if _ksum(lams[al], lams[be]) == zero
    ]
    blocks = (
        _sq_action_rows(pinv @ m @ p, sym) for t, m in enumerate(mats) if t not in used
    )
    sols = _constrained_kernel(blocks, allowed, nsym)
    out = []
    for sol in sols:
        flat = [mpq(0)] * nsym
        for kab, y in sol.items():
            al, be = sym.pairs[kab]
            for k, (a, b) in enumerate(sym.pairs):
                if a == b:
                    w = p.rows[a][al] * p.rows[a][be]
                else:
                    w = p.rows[a][al] * p.rows[b][be] + p.rows[b][al] * p.rows[a][be]
                if w:
                    flat[k] += y * w
        out.append(flat)
    return len(out), out


def traceless_sq_module(lie: LieAlgebra):
    """Action matrices of the basis derivations on the trace-zero part of
    Sq^2 W_7, with the basis vectors used for the coordinates."""
    if lie.kind != "g2":
        raise ValueError("the 27-dim traceless module is built from the 7-dim space")
    sq = w7_space()
    basis = traceless_operator_basis(sq)
    rb = RowBasis(len(sq.idx), track=True)
    for b in basis:
        rb.add(b)
    mats = []
    for d in lie.w_basis:
        m = Mat.zeros(len(basis))
        for k, b in enumerate(basis):
            sol = rb.solve(sq.act(d, b))
            assert sol is not None, "action left the traceless subspace"
            for pos, c in sol.items():
                m.rows[pos][k] = c
        mats.append(m)
    return mats, basis


def v27_flat_table(apply_fn, basis):
    """Flat coordinate table of a bilinear product on the traceless module,
    from its Sq^2-coefficient implementation."""
    sq = w7_space()
    rb = RowBasis(len(sq.idx), track=True)
    for b in basis:
        rb.add(b)
    n = len(basis)
    sym = SymIndex(n)
    nsym = len(sym)
    flat = [mpq(0)] * (n * nsym)
    for k, (a, b) in enumerate(sym.pairs):
        sol = rb.solve(apply_fn(basis[a], basis[b]))
        assert sol is not None, "product left the traceless subspace"
        for pos, c in sol.items():
            flat[pos * nsym + k] = c
    return flat


def decomposition_dims(lie: LieAlgebra):
    """Sizes of the three pieces of Sq^2 W_26 under the derivation action:
    (fixed line, kernel complement of the fixed line, contraction rank).

    The contraction is chi (pair xy to x*y); its kernel is the
    325-dimensional algebra, the fixed line inside it is spanned by the
    weighted diagonal identity, and the rank-26 image matches the natural
    module.  Expected value (1, 324, 26).
    """
    if lie.kind != "f4":
        raise ValueError("the decomposition is computed for the 26-dim module")
    from .products import chi_f4, membership_af4

    sq = w26_space()
    nsym = len(sq.idx)
    rb = RowBasis(26)
    for k in range(nsym):
        u = [mpq(0)] * nsym
        u[k] = mpq(1)
        rb.add(chi_f4(u))
    rank = rb.rank
    kernel_dim = nsym - rank
    fdim, fvecs = fixed_vector_space(lie.w_basis)
    for v in fvecs:
        assert membership_af4(v), "fixed vector fell outside the contraction kernel"
    if fdim == 1:
        assert solve_in_span([sq.identity()], fvecs[0]) is not None, (
            "fixed line is not the weighted diagonal identity"
        )
    return (fdim, kernel_dim - fdim, rank)


def chi_equivariance_check(lie: LieAlgebra) -> int:
    """chi(T.u) == T.chi(u) for every basis derivation and basis pair;
    returns the number of instances checked."""
    from .products import chi_f4

    sq = w26_space()
    nsym = len(sq.idx)
    count = 0
    for d in lie.w_basis:
        for k in range(nsym):
            u = [mpq(0)] * nsym
            u[k] = mpq(1)
            lhs = chi_f4(sq.act_leibniz(d, u))
            rhs = d.apply(chi_f4(u))
            assert lhs == rhs
            count += 1
    return count


def _natural_form_flat(norms):
    n = len(norms)
    sym = SymIndex(n)
    flat = [mpq(0)] * len(sym)
    for t in range(n):
        flat[sym.index_of(t, t)] = mpq(norms[t])
    return flat


def equivariance_checks_g2(rng=None):
    """Invariant-space suite for the 7- and 27-dim modules.  Returns
    [(name, True)]; raises AssertionError on failure.

    * one invariant form on W_7, proportional to the pairing,
    * one invariant form on the 27-dim module, proportional to the
      restriction of the pair form,
    * the commutative equivariant product space on the 27-dim module is
      2-dimensional and equals the span of the two auxiliary products,
    * every returned basis product passes Leibniz spot-checks,
    * dimensions are stable under a shuffled generator order,
    * the trivial 1-dim module has a 1-dim product space.
    """
    from .derivations import g2
    from .products import odot1_g2, odot2_g2, pair_form

    rng = rng or random.Random(0)
    lie = g2()
    sq = w7_space()
    results = []

    dim7, forms7 = bilinear_form_space(lie.w_basis)
    assert dim7 == 1
    assert solve_in_span(forms7, _natural_form_flat(sq.norms)) is not None
    results.append(("7-dim module: one invariant form, the pairing", True))

    mats27, basis27 = traceless_sq_module(lie)
    dim27, forms27 = bilinear_form_space(mats27)
    assert dim27 == 1
    sym27 = SymIndex(27)
    gram = [mpq(0)] * len(sym27)
    for k, (a, b) in enumerate(sym27.pairs):
        gram[k] = pair_form(sq, basis27[a], basis27[b])
    assert solve_in_span(forms27, gram) is not None
    results.append(("27-dim module: one invariant form, the pair form", True))

    pdim, pbasis = product_space(mats27, rng)
    assert pdim == 2
    flat1 = v27_flat_table(odot1_g2, basis27)
    flat2 = v27_flat_table(odot2_g2, basis27)
    for f in (flat1, flat2):
        assert solve_in_span(pbasis, f) is not None
    for f in pbasis:
        assert solve_in_span([flat1, flat2], f) is not None
    results.append(("27-dim product space: dimension 2, auxiliary-product span", True))

    for f in pbasis:
        for _ in range(3):
            d = mats27[rng.randrange(len(mats27))]
            u = [mpq(rng.randint(-2, 2)) for _ in range(27)]
            v = [mpq(rng.randint(-2, 2)) for _ in range(27)]
            lhs = d.apply(apply_flat(f, 27, u, v))
            rhs = apply_flat(f, 27, d.apply(u), v)
            rhs = [x + y for x, y in zip(rhs, apply_flat(f, 27, u, d.apply(v)))]
            assert lhs == rhs
    results.append(("returned products pass Leibniz spot-checks", True))

    order = list(range(len(mats27)))
    rng.shuffle(order)
    sdim, _ = product_space([mats27[t] for t in order], rng)
    assert sdim == 2
    fdim, _ = bilinear_form_space([mats27[t] for t in order])
    assert fdim == 1
    results.append(("dimensions stable under shuffled generator order", True))

    tdim, tbasis = product_space([Mat.zeros(1)], rng)
    assert tdim == 1 and tbasis[0][0] != 0
    results.append(("trivial 1-dim module: product space is scalar", True))

    return results


def equivariance_checks_f4(rng=None):
    """Invariant-space suite for the 26-dim module.  Returns [(name, True)].

    * one invariant form, proportional to the trace pairing,
    * the contraction to the natural module is equivariant (exhaustive),
    * Sq^2 W_26 splits as fixed line + 324 + 26,
    * the product-space computation refuses oversized modules.
    """
    from .derivations import f4

    rng = rng or random.Random(0)
    lie = f4()
    sq = w26_space()
    results = []

    dim26, forms26 = bilinear_form_space(lie.w_basis)
    assert dim26 == 1
    assert solve_in_span(forms26, _natural_form_flat(sq.norms)) is not None
    results.append(("26-dim module: one invariant form, the trace pairing", True))

    count = chi_equivariance_check(lie)
    assert count == 52 * len(sq.idx)
    results.append(("contraction to the natural module is equivariant", True))

    dims = decomposition_dims(lie)
    assert dims == (1, 324, 26)
    results.append(("symmetric square splits as 1 + 324 + 26", True))

    try:
        product_space([Mat.zeros(28)], rng)
    except ModuleTooLarge:
        pass
    else:
        raise AssertionError("size guard did not fire")
    results.append(("oversized product-space request is refused", True))

    return results
