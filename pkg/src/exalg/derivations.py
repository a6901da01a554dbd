"""Standard derivations of the octonions and of the Albert algebra, and
the Lie algebras they span (the 14- and 52-dimensional ones).

Octonion case: D_{a,b} = [L_a, L_b] + [L_a, R_b] + [R_a, R_b].
Albert case:   D_{x,y} = [L_x, L_y] for the Jordan multiplication.

A LieAlgebra instance owns a deterministically chosen basis (greedy
first-come rank extension over lexicographic generator pairs), the ad
matrices in that basis, the Killing form, and the restriction of each
basis derivation to the trace-zero part W of the ambient algebra.
"""

from __future__ import annotations

from functools import lru_cache

from gmpy2 import mpq

from .albert import AlbertAlgebra, standard_albert
from .linalg import Mat, RowBasis
from .octonion import Octonion, OctonionAlgebra


def trace_product(a: Mat, b: Mat):
    """Tr(a @ b) without forming the product."""
    tot = 0
    br = b.rows
    for u, row in enumerate(a.rows):
        for v, x in enumerate(row):
            if x:
                y = br[v][u]
                if y:
                    tot += x * y
    return tot


def std_der_oct(alg: OctonionAlgebra, a: Octonion, b: Octonion) -> Mat:
    cols = []
    for t in range(8):
        x = alg.basis(t)
        ax, bx, xa, xb = a * x, b * x, x * a, x * b
        v = a * bx - b * ax + a * xb - ax * b + xb * a - xa * b
        cols.append(v.c)
    return Mat([[cols[t][i] for t in range(8)] for i in range(8)])


def std_der_albert(alb: AlbertAlgebra, x, y) -> Mat:
    jm = alb.jordan_coeffs
    n = alb.dim
    cols = []
    for t in range(n):
        z = [mpq(0)] * n
        z[t] = mpq(1)
        yz, xz = jm(y, z), jm(x, z)
        cols.append([p - q for p, q in zip(jm(x, yz), jm(y, xz))])
    return Mat([[cols[t][i] for t in range(n)] for i in range(n)])


class LieAlgebra:
    """A derivation Lie algebra with its chosen basis and cached data."""

    def __init__(self, kind: str, albert: AlbertAlgebra):
        if kind not in ("g2", "f4"):
            raise ValueError(f"unknown kind {kind!r}")
        self.kind = kind
        self.albert = albert
        self.oct = albert.oct
        if kind == "g2":
            self.ambient_dim, self.w_dim, self.dim = 8, 7, 14
            self.dual_coxeter = mpq(4)
        else:
            self.ambient_dim, self.w_dim, self.dim = 27, 26, 52
            self.dual_coxeter = mpq(9)
        self._build_basis()

    def _candidate(self, i: int, j: int) -> Mat:
        if self.kind == "g2":
            return std_der_oct(self.oct, self.oct.basis(i), self.oct.basis(j))
        n = self.albert.dim
        x = [mpq(0)] * n
        y = [mpq(0)] * n
        x[i] = mpq(1)
        y[j] = mpq(1)
        return std_der_albert(self.albert, x, y)

    def _build_basis(self):
        n = self.ambient_dim
        rb = RowBasis(n * n, track=True)
        basis, tags, candidates = [], [], []
        for i in range(n):
            for j in range(i + 1, n):
                d = self._candidate(i, j)
                candidates.append((i, j))
                if rb.add(d.flatten()):
                    basis.append(d)
                    tags.append((i, j))
        self.basis = basis
        self.pair_tags = tags
        self._candidate_tags = candidates
        self._rb = rb
        if len(basis) != self.dim:
            raise RuntimeError(
                f"derivation span of {self.kind} has dimension {len(basis)}, expected {self.dim}"
            )

    # -- coordinates -------------------------------------------------------

    def coords_of(self, mat: Mat):
        """Coordinates of an ambient-space derivation in the chosen basis,
        or None if it lies outside the span."""
        sol = self._rb.solve(mat.flatten())
        if sol is None:
            return None
        pos = {added: t for t, added in enumerate(self._rb.indep_ids)}
        out = [mpq(0)] * self.dim
        for added, v in sol.items():
            out[pos[added]] = v
        return out

    def derivation_of(self, coords) -> Mat:
        m = Mat.zeros(self.ambient_dim)
        for t, c in enumerate(coords):
            if c:
                rows = self.basis[t].rows
                for i in range(self.ambient_dim):
                    mi = m.rows[i]
                    for j, a in enumerate(rows[i]):
                        if a:
                            mi[j] += c * a
        return m

    # -- cached structure ----------------------------------------------------

    @property
    def w_basis(self) -> list[Mat]:
        """Basis derivations restricted to the trace-zero part W."""
        if not hasattr(self, "_w_basis"):
            self._w_basis = [self.restrict_to_w(d) for d in self.basis]
        return self._w_basis

    def restrict_to_w(self, d: Mat) -> Mat:
        if self.kind == "g2":
            assert all(not d.rows[0][j] for j in range(8)) and all(
                not d.rows[i][0] for i in range(8)
            ), "derivation does not kill the unit"
            return Mat([row[1:] for row in d.rows[1:]])
        alb = self.albert
        cols = []
        for t in range(26):
            w = [mpq(0)] * 26
            w[t] = mpq(1)
            img = d.apply(alb.w_embed(w))
            cols.append(alb.w_project(img))
        return Mat([[cols[t][i] for t in range(26)] for i in range(26)])

    @property
    def ad(self) -> list[Mat]:
        if not hasattr(self, "_ad"):
            n = self.dim
            coords = [[None] * n for _ in range(n)]
            for i in range(n):
                coords[i][i] = [mpq(0)] * n
                for j in range(i + 1, n):
                    br = self.basis[i].commutator(self.basis[j])
                    c = self.coords_of(br)
                    if c is None:
                        raise RuntimeError("bracket left the span")
                    coords[i][j] = c
                    coords[j][i] = [-v for v in c]
            self._ad = [
                Mat([[coords[i][j][k] for j in range(n)] for k in range(n)])
                for i in range(n)
            ]
        return self._ad

    def bracket_coords(self, x, y):
        """[x, y] in basis coordinates, via the ad matrices."""
        out = [0] * self.dim
        for i, xi in enumerate(x):
            if xi:
                col = self.ad[i]
                for k in range(self.dim):
                    row = col.rows[k]
                    acc = 0
                    for j, yj in enumerate(y):
                        if yj and row[j]:
                            acc += row[j] * yj
                    if acc:
                        out[k] += xi * acc
        return out

    def ad_of(self, coords) -> Mat:
        m = Mat.zeros(self.dim)
        for t, c in enumerate(coords):
            if c:
                rows = self.ad[t].rows
                for i in range(self.dim):
                    mi = m.rows[i]
                    for j, a in enumerate(rows[i]):
                        if a:
                            mi[j] += c * a
        return m

    def w_of(self, coords) -> Mat:
        m = Mat.zeros(self.w_dim)
        for t, c in enumerate(coords):
            if c:
                rows = self.w_basis[t].rows
                for i in range(self.w_dim):
                    mi = m.rows[i]
                    for j, a in enumerate(rows[i]):
                        if a:
                            mi[j] += c * a
        return m

    @property
    def killing(self) -> Mat:
        if not hasattr(self, "_killing"):
            n = self.dim
            ad = self.ad
            k = Mat.zeros(n)
            for i in range(n):
                for j in range(i, n):
                    v = trace_product(ad[i], ad[j])
                    k.rows[i][j] = v
                    k.rows[j][i] = v
            self._killing = k
        return self._killing

    @property
    def natural_gram(self) -> Mat:
        """Gram matrix Tr(pi(X_i) pi(X_j)) of the W-restriction."""
        if not hasattr(self, "_natural"):
            n = self.dim
            w = self.w_basis
            g = Mat.zeros(n)
            for i in range(n):
                for j in range(i, n):
                    v = trace_product(w[i], w[j])
                    g.rows[i][j] = v
                    g.rows[j][i] = v
            self._natural = g
        return self._natural

    def killing_of(self, x, y):
        tot = 0
        krows = self.killing.rows
        for i, xi in enumerate(x):
            if xi:
                row = krows[i]
                acc = 0
                for j, yj in enumerate(y):
                    if yj and row[j]:
                        acc += row[j] * yj
                if acc:
                    tot += xi * acc
        return tot

    @property
    def killing_inverse(self) -> Mat:
        if not hasattr(self, "_kinv"):
            self._kinv = invert(self.killing)
        return self._kinv

    def casimir_scalar(self):
        """The scalar by which sum_i pi(X_i) pi(Y^i) acts on W, where Y^i
        is the Killing-dual basis.  Raises if the operator is not scalar."""
        kinv = self.killing_inverse
        total = Mat.zeros(self.w_dim)
        for i in range(self.dim):
            dual = self.w_of(kinv.rows[i])
            total = total + self.w_basis[i] @ dual
        c = total.rows[0][0]
        if total != Mat.identity(self.w_dim).scale(c):
            raise RuntimeError("Casimir operator is not scalar on W")
        return c

    def __repr__(self):
        return f"LieAlgebra({self.kind}, dim={self.dim})"


def invert(m: Mat) -> Mat:
    n = m.nrows
    rb = RowBasis(2 * n)
    ident = Mat.identity(n)
    for i in range(n):
        rb.add(list(m.rows[i]) + list(ident.rows[i]))
    if rb.rank != n:
        raise ValueError("matrix is singular")
    rows = [None] * n
    ech = rb.echelon_rows()
    for t, p in enumerate(rb.pivots):
        if p >= n:
            raise ValueError("matrix is singular")
        rows[p] = list(ech[t][n:])
    return Mat(rows)


@lru_cache(maxsize=None)
def g2() -> LieAlgebra:
    return LieAlgebra("g2", standard_albert())


@lru_cache(maxsize=None)
def f4() -> LieAlgebra:
    return LieAlgebra("f4", standard_albert())


def random_lie_coords(lie: LieAlgebra, rng, support: int = 3):
    """Sparse random element of the Lie algebra in basis coordinates."""
    out = [mpq(0)] * lie.dim
    for _ in range(support):
        out[rng.randrange(lie.dim)] += mpq(rng.randint(-2, 2), rng.choice((1, 2)))
    return out


def _ambient_units(lie: LieAlgebra):
    n = lie.ambient_dim
    units = []
    for t in range(n):
        u = [mpq(0)] * n
        u[t] = mpq(1)
        units.append(u)
    return units


def _ambient_mul(lie: LieAlgebra, x, y):
    if lie.kind == "g2":
        return lie.oct.mul_coeffs(x, y)
    return lie.albert.jordan_coeffs(x, y)


def _ambient_gram(lie: LieAlgebra):
    if lie.kind == "g2":
        return [mpq(2)] * 8
    return list(lie.albert.gram)


def _random_ambient(lie: LieAlgebra, rng, gaussian=False):
    from .albert import random_albert
    from .octonion import random_octonion

    if lie.kind == "g2":
        return list(random_octonion(lie.oct, rng, gaussian=gaussian).c)
    return list(random_albert(lie.albert, rng, gaussian=gaussian).c)


def _std_der(lie: LieAlgebra, x, y) -> Mat:
    if lie.kind == "g2":
        return std_der_oct(lie.oct, lie.oct.element(x), lie.oct.element(y))
    return std_der_albert(lie.albert, x, y)


def derivation_checks(lie: LieAlgebra, rng=None, trials: int = 6):
    """Derivation suite for one of the two algebras.  Returns
    [(name, True), ...]; raises AssertionError on any failure.

    Exhaustive parts: the generator span has the expected dimension, every
    basis derivation satisfies the Leibniz rule on all basis products and
    is skew with respect to the ambient bilinear form; for the Jordan case
    additionally the full image table of the generator families (diagonal
    pairs vanish, mixed diagonal/slot and same-slot generators act by the
    tabulated closed forms).  Sampled parts: antisymmetry and degeneracy
    of the generator map, the bracket transport rule
    [D, D_{x,y}] = D_{Dx,y} + D_{x,Dy}, and for the octonion case the
    three-term closed form of D_{a,b} on pure elements.
    """
    import random

    rng = rng or random.Random(0)
    results = []
    n = lie.ambient_dim
    units = _ambient_units(lie)

    assert len(lie.basis) == lie.dim
    assert lie.coords_of(Mat.zeros(n)) == [mpq(0)] * lie.dim
    results.append((f"generator span has dimension {lie.dim}", True))

    for d in lie.basis:
        cols = [d.apply(u) for u in units]
        for i in range(n):
            for j in range(n):
                lhs = d.apply(_ambient_mul(lie, units[i], units[j]))
                rhs = _ambient_mul(lie, cols[i], units[j])
                rhs2 = _ambient_mul(lie, units[i], cols[j])
                assert lhs == [a + b for a, b in zip(rhs, rhs2)], (i, j)
    results.append(("Leibniz rule on all basis products", True))

    gram = _ambient_gram(lie)
    for d in lie.basis:
        for i in range(n):
            for j in range(i, n):
                assert gram[i] * d.rows[i][j] + gram[j] * d.rows[j][i] == 0, (i, j)
    results.append(("skew-symmetry for the ambient form", True))

    e = [mpq(0)] * n
    if lie.kind == "g2":
        e[0] = mpq(1)
    else:
        e[0] = e[1] = e[2] = mpq(1)
    zero = Mat.zeros(n)
    for _ in range(trials):
        x = _random_ambient(lie, rng, gaussian=True)
        y = _random_ambient(lie, rng)
        assert _std_der(lie, x, y) == _std_der(lie, y, x).scale(-1)
        assert _std_der(lie, x, x) == zero
        assert _std_der(lie, e, y) == zero
    results.append(("generator map is alternating and kills the unit", True))

    for _ in range(trials):
        d = _std_der(lie, _random_ambient(lie, rng), _random_ambient(lie, rng, gaussian=True))
        x = _random_ambient(lie, rng)
        y = _random_ambient(lie, rng, gaussian=True)
        dxy = _std_der(lie, x, y)
        lhs = d @ dxy - dxy @ d
        assert lhs == _std_der(lie, d.apply(x), y) + _std_der(lie, x, d.apply(y))
    results.append(("bracket transports through the generator map", True))

    if lie.kind == "g2":
        results.extend(_closed_form_checks_oct(lie, rng, trials))
    else:
        results.extend(_table_checks_albert(lie))
    return results


def _closed_form_checks_oct(lie: LieAlgebra, rng, trials: int):
    from .octonion import bilinear, malcev, random_octonion

    oc = lie.oct
    pures = [oc.basis(t) for t in range(1, 8)]
    extra = [
        (
            random_octonion(oc, rng, pure=True),
            random_octonion(oc, rng, pure=True, gaussian=True),
            random_octonion(oc, rng, pure=True),
        )
        for _ in range(trials)
    ]
    for a, b, x in [(a, b, x) for a in pures for b in pures for x in pures] + extra:
        d = std_der_oct(oc, a, b)
        img = oc.element(d.apply(list(x.c)))
        rhs = 3 * bilinear(a, x) * b - 3 * bilinear(b, x) * a
        rhs = rhs + mpq(1, 2) * malcev(x, malcev(a, b))
        assert img == rhs, (a, b, x)
    return [("three-term closed form on pure elements", True)]


def _table_checks_albert(lie: LieAlgebra):
    """Exhaustive image table of the two Jordan generator families."""
    from .octonion import bilinear as oct_bilinear

    alb = lie.albert
    oc = lie.oct
    obasis = [oc.basis(t) for t in range(8)]
    ones = [alb.idempotent(i) for i in (1, 2, 3)]
    zero27 = [mpq(0)] * alb.dim

    def slot(a, s):
        return alb.slot(a, s).c

    def ap(d, x):
        return d.apply(list(x))

    def lin(*terms):
        out = [mpq(0)] * alb.dim
        for c, v in terms:
            if c:
                for t, vt in enumerate(v):
                    if vt:
                        out[t] += c * vt
        return out

    for i in range(3):
        for j in range(3):
            assert std_der_albert(alb, ones[i].c, ones[j].c) == Mat.zeros(alb.dim)
    for i in (1, 2, 3):
        for a in obasis:
            assert std_der_albert(alb, ones[i - 1].c, slot(a, i)) == Mat.zeros(alb.dim)
    out = [("diagonal and aligned-slot generators vanish", True)]

    for i in (1, 2, 3):
        for j in (1, 2, 3):
            if j == i:
                continue
            k = 6 - i - j
            for a in obasis:
                d = std_der_albert(alb, ones[i - 1].c, slot(a, j))
                aj = slot(a, j)
                assert ap(d, ones[i - 1].c) == lin((mpq(-1, 4), aj)), (i, j, a)
                assert ap(d, ones[j - 1].c) == zero27, (i, j, a)
                assert ap(d, ones[k - 1].c) == lin((mpq(1, 4), aj)), (i, j, a)
                for b in obasis:
                    bi = slot(b, i)
                    prod = alb.jordan_coeffs(aj, bi)
                    assert ap(d, bi) == lin((mpq(1, 2), prod)), (i, j, a, b)
                    g = oct_bilinear(a, b)
                    diff = [p - q for p, q in zip(ones[i - 1].c, ones[k - 1].c)]
                    assert ap(d, slot(b, j)) == lin((g * mpq(1, 4), diff)), (i, j, a, b)
                    bk = slot(b, k)
                    prodk = alb.jordan_coeffs(aj, bk)
                    assert ap(d, bk) == lin((mpq(-1, 2), prodk)), (i, j, a, b)
    out.append(("mixed diagonal/slot generator image table", True))

    for i in (1, 2, 3):
        others = [t for t in (1, 2, 3) if t != i]
        for a in obasis:
            ai = slot(a, i)
            for b in obasis:
                bi = slot(b, i)
                d = std_der_albert(alb, ai, bi)
                assert ap(d, ones[i - 1].c) == zero27, (i, a, b)
                for j in others:
                    assert ap(d, ones[j - 1].c) == zero27, (i, j, a, b)
                for c in obasis:
                    ci = slot(c, i)
                    expect = lin(
                        (oct_bilinear(b, c) * mpq(1, 2), ai),
                        (-oct_bilinear(a, c) * mpq(1, 2), bi),
                    )
                    assert ap(d, ci) == expect, (i, a, b, c)
                    for j in others:
                        cj = slot(c, j)
                        expect = [
                            p - q
                            for p, q in zip(
                                alb.jordan_coeffs(ai, alb.jordan_coeffs(bi, cj)),
                                alb.jordan_coeffs(bi, alb.jordan_coeffs(ai, cj)),
                            )
                        ]
                        assert ap(d, cj) == expect, (i, j, a, b, c)
    out.append(("same-slot generator image table", True))
    return out


def killing_checks(lie: LieAlgebra):
    """Trace-form facts: the Killing form is an exact integer multiple of
    the natural-module trace form (4x for the octonion case, 3x for the
    Jordan case), and the dual-basis Casimir operator on W is an exact
    scalar (1/2 resp. 2/3)."""
    ratio = mpq(4) if lie.kind == "g2" else mpq(3)
    expect = mpq(1, 2) if lie.kind == "g2" else mpq(2, 3)
    assert lie.killing == lie.natural_gram.scale(ratio)
    assert lie.casimir_scalar() == expect
    return [
        (f"Killing form equals {ratio} times the natural trace form", True),
        (f"Casimir operator is the scalar {expect} on W", True),
    ]
