"""The commutative algebra attached to a Lie algebra via its adjoint and
natural representations.

For X, Y in the Lie algebra g put

    S(XY) = h (adX . adY) + (X K(Y,-) + Y K(X,-))/2,

where h is the dual Coxeter number, . the symmetrised operator product
and K the Killing form.  The span of all S(XY) inside End(g) is the
algebra carrier (dim 28 for the 14-dim algebra, 325 for the 52-dim one);
the product of two generators expands into ten S-terms, see
:meth:`CGAlgebra.diamond`.  The map sigma,

    sigma(S(XY)) = 6h pi(X).pi(Y) - K(X,Y)/2 id_W,

with pi the restriction to the natural module W, embeds the carrier into
the symmetric operators on W; every closed-form product downstream is a
statement about this embedding.
"""

from __future__ import annotations

import numpy as np
from gmpy2 import mpq

from .derivations import LieAlgebra, std_der_albert, std_der_oct
from .linalg import Mat, RowBasis, SymIndex


class CGElement:
    """A formal combination sum coeff * S(X Y); the endomorphism and the
    coordinates over the carrier basis are computed on demand."""

    __slots__ = ("alg", "gens", "_endo")

    def __init__(self, alg: "CGAlgebra", gens):
        self.alg = alg
        self.gens = [(tuple(x), tuple(y), c) for x, y, c in gens if c]
        self._endo = None

    @property
    def endo(self) -> Mat:
        if self._endo is None:
            m = Mat.zeros(self.alg.lie.dim)
            for x, y, c in self.gens:
                m = m + self.alg.s_endo(x, y).scale(c)
            self._endo = m
        return self._endo

    def coords(self):
        return self.alg.coords_of(self.endo)

    def __add__(self, other):
        return CGElement(self.alg, self.gens + other.gens)

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, c):
        return CGElement(self.alg, [(x, y, c * v) for x, y, v in self.gens])

    def __repr__(self):
        return f"CGElement({len(self.gens)} generators)"


class CGAlgebra:
    """Carrier space im(S) with the diamond product, the trace form and
    the embedding into End(W)."""

    def __init__(self, lie: LieAlgebra, track: bool | None = None):
        self.lie = lie
        self.h = lie.dual_coxeter
        self.pairs = SymIndex(lie.dim)
        # coordinates over the carrier basis need row tracking, which is
        # cheap for the small algebra and opt-in for the big one
        self.track = (lie.dim <= 14) if track is None else track
        self._built = False

    # -- the S map -----------------------------------------------------------

    def s_endo(self, x, y) -> Mat:
        """S(XY) as a matrix acting on the Lie algebra."""
        lie = self.lie
        m = lie.ad_of(x).jordan(lie.ad_of(y))
        n = lie.dim
        kx, ky = lie.killing.apply(x), lie.killing.apply(y)
        half = mpq(1, 2)
        rows = m.rows
        h = self.h
        for r in range(n):
            xr, yr = x[r], y[r]
            row = rows[r]
            for c in range(n):
                row[c] = h * row[c] + half * (xr * ky[c] + yr * kx[c])
        return m

    def s_basis_endo(self, i: int, j: int) -> Mat:
        e = self._unit
        return self.s_endo(e(i), e(j))

    def _unit(self, i):
        v = [mpq(0)] * self.lie.dim
        v[i] = mpq(1)
        return tuple(v)

    def s(self, x, y, coeff=mpq(1)) -> CGElement:
        return CGElement(self, [(x, y, coeff)])

    # -- carrier basis -------------------------------------------------------

    def _build(self):
        if self._built:
            return
        lie = self.lie
        rb = RowBasis(lie.dim * lie.dim, track=self.track)
        tags, endos, rejected = [], [], []
        for k in range(len(self.pairs)):
            i, j = self.pairs.pair_of(k)
            m = self.s_basis_endo(i, j)
            if rb.add(np.array(m.flatten(), dtype=object)):
                tags.append((i, j))
                endos.append(m)
            else:
                rejected.append((i, j))
        self.rb = rb
        self.tags = tags
        self.endos = endos
        self.rejected = rejected
        self._pos = {aid: p for p, aid in enumerate(rb.indep_ids)}
        self.dim = rb.rank
        self._built = True

    @property
    def basis_tags(self):
        self._build()
        return self.tags

    @property
    def dimension(self) -> int:
        self._build()
        return self.dim

    def basis_element(self, p: int) -> CGElement:
        self._build()
        i, j = self.tags[p]
        return self.s(self._unit(i), self._unit(j))

    def contains_endo(self, m: Mat) -> bool:
        self._build()
        return self.rb.contains(np.array(m.flatten(), dtype=object))

    def coords_of(self, m: Mat):
        """Coordinates over the carrier basis; raises when the operator is
        outside the span or tracking is disabled."""
        self._build()
        if not self.track:
            raise RuntimeError("carrier basis built without coordinate tracking")
        sol = self.rb.solve(np.array(m.flatten(), dtype=object))
        if sol is None:
            raise ValueError("endomorphism is not in the carrier span")
        out = [mpq(0)] * self.dim
        for aid, c in sol.items():
            out[self._pos[aid]] = c
        return out

    def kernel_combinations(self, limit: int | None = None):
        """Coefficient vectors over the generator pairs spanning ker(S);
        each rejected pair yields one relation."""
        self._build()
        if not self.track:
            raise RuntimeError("kernel extraction needs coordinate tracking")
        out = []
        for (i, j) in self.rejected[: limit or len(self.rejected)]:
            m = self.s_basis_endo(i, j)
            sol = self.rb.solve(np.array(m.flatten(), dtype=object))
            vec = {self.pairs.index_of(i, j): mpq(1)}
            for aid, c in sol.items():
                vec[aid] = vec.get(aid, mpq(0)) - c
            out.append(vec)
        return out

    def element_from_pair_combo(self, combo: dict) -> CGElement:
        gens = []
        for k, c in combo.items():
            i, j = self.pairs.pair_of(k)
            gens.append((self._unit(i), self._unit(j), c))
        return CGElement(self, gens)

    # -- product, trace form, identity --------------------------------------

    def diamond(self, u: CGElement, v: CGElement) -> CGElement:
        """The commutative product, expanded on generators:

        S(AB) . S(CD) = h/2 [ S(A, (adC.adD)B) + S((adC.adD)A, B)
                            + S(C, (adA.adB)D) + S((adA.adB)C, D)
                            + S([A,C],[B,D]) + S([A,D],[B,C]) ]
              + 1/4 [ K(A,C)S(BD) + K(A,D)S(BC) + K(B,C)S(AD) + K(B,D)S(AC) ].
        """
        lie = self.lie
        half_h = self.h / 2
        quart = mpq(1, 4)
        gens = []
        for a, b, cu in u.gens:
            mab = lie.ad_of(a).jordan(lie.ad_of(b))
            ka, kb = lie.killing.apply(a), lie.killing.apply(b)
            for c, d, cv in v.gens:
                w = cu * cv
                mcd = lie.ad_of(c).jordan(lie.ad_of(d))
                wh = w * half_h
                gens.append((a, tuple(mcd.apply(b)), wh))
                gens.append((tuple(mcd.apply(a)), b, wh))
                gens.append((c, tuple(mab.apply(d)), wh))
                gens.append((tuple(mab.apply(c)), d, wh))
                gens.append(
                    (tuple(lie.bracket_coords(a, c)), tuple(lie.bracket_coords(b, d)), wh)
                )
                gens.append(
                    (tuple(lie.bracket_coords(a, d)), tuple(lie.bracket_coords(b, c)), wh)
                )
                kac = sum(p * q for p, q in zip(ka, c))
                kad = sum(p * q for p, q in zip(ka, d))
                kbc = sum(p * q for p, q in zip(kb, c))
                kbd = sum(p * q for p, q in zip(kb, d))
                wq = w * quart
                if kac:
                    gens.append((b, d, wq * kac))
                if kad:
                    gens.append((b, c, wq * kad))
                if kbc:
                    gens.append((a, d, wq * kbc))
                if kbd:
                    gens.append((a, c, wq * kbd))
        return CGElement(self, gens)

    def epsilon(self, u: CGElement):
        """Normalised trace: Tr(S(XY)) = (h+1) K(X,Y), divided by dim g."""
        tot = mpq(0)
        lie = self.lie
        for x, y, c in u.gens:
            tot += c * lie.killing_of(list(x), list(y))
        return tot * (self.h + 1) / lie.dim

    def tau(self, u: CGElement, v: CGElement):
        return self.epsilon(self.diamond(u, v))

    @property
    def identity(self) -> CGElement:
        """The unit: S applied to the Killing-dual Casimir tensor, scaled so
        that epsilon = 1; sigma sends it to id_W."""
        if not hasattr(self, "_identity"):
            kinv = self.lie.killing_inverse
            n = self.lie.dim
            gens = []
            for i in range(n):
                for j in range(i, n):
                    c = kinv.rows[i][j]
                    if c:
                        if i != j:
                            c = 2 * c
                        gens.append((self._unit(i), self._unit(j), c / (self.h + 1)))
            self._identity = CGElement(self, gens)
        return self._identity

    # -- the embedding -------------------------------------------------------

    def sigma(self, u: CGElement) -> Mat:
        lie = self.lie
        w = lie.w_dim
        m = Mat.zeros(w)
        coef = 6 * self.h
        for x, y, c in u.gens:
            t = lie.w_of(list(x)).jordan(lie.w_of(list(y))).scale(c * coef)
            k = c * lie.killing_of(list(x), list(y)) / 2
            rows = t.rows
            if k:
                for r in range(w):
                    rows[r][r] -= k
            m = m + t
        return m

    def __repr__(self):
        return f"CGAlgebra({self.lie.kind}, h={self.h})"


# -- closed-form checks for the embedding -----------------------------------


def _sq7():
    from .symsquare import w7_space

    return w7_space()


def _sq26():
    from .symsquare import w26_space

    return w26_space()


def der_element_oct(cg: CGAlgebra, a, b):
    """Coordinates of the standard derivation of the octonions attached to
    the pure octonions a, b, as a Lie-algebra coordinate tuple."""
    d = std_der_oct(cg.lie.oct, a, b)
    return tuple(cg.lie.coords_of(d))


def sigma_closed_form_checks_g2(cg: CGAlgebra, rng, trials: int = 8):
    """Exact checks of the generator images under sigma:

    * the four-octonion formula for sigma(S(D_{a,b} D_{c,d})),
    * its two-variable specialisation sigma(S(D_{a,b} D_{c,b})),
    * the preimage formula sigma(S(D_{a,a*c} D_{c,a*c})) = -768 N(a)N(c) ac
      for orthogonal a, c.
    Returns [(name, True)...]; raises AssertionError on failure.
    """
    from .octonion import bilinear, malcev, random_octonion

    lie = cg.lie
    alg = lie.oct
    sq = _sq7()
    results = []

    def w(o):
        return list(o.c[1:])

    def der(a, b):
        return tuple(lie.coords_of(std_der_oct(alg, a, b)))

    for _ in range(trials):
        a, b, c, d = (random_octonion(alg, rng, pure=True) for _ in range(4))
        u = cg.s(der(a, b), der(c, d))
        ab, cd = malcev(a, b), malcev(c, d)
        rhs = sq.zero()

        def acc(vec, x, y):
            for k, t in enumerate(sq.pair_coeffs(w(x), w(y))):
                if t:
                    vec[k] += t

        tmp = sq.zero()
        acc(tmp, b, d)
        rhs = [r - 216 * bilinear(a, c) * t for r, t in zip(rhs, tmp)]
        for x, y, co in (
            (b, c, 216 * bilinear(a, d)),
            (a, c, -216 * bilinear(b, d)),
            (a, d, 216 * bilinear(b, c)),
            (malcev(a, cd), b, mpq(-36)),
            (malcev(b, cd), a, mpq(36)),
            (malcev(c, ab), d, mpq(-36)),
            (malcev(d, ab), c, mpq(36)),
            (ab, cd, mpq(12)),
        ):
            tmp = sq.pair_coeffs(w(x), w(y))
            rhs = [r + co * t for r, t in zip(rhs, tmp)]
        idco = 18 * (
            2 * bilinear(a, c) * bilinear(b, d)
            - 2 * bilinear(a, d) * bilinear(b, c)
            - bilinear(ab, cd)
        )
        rhs = [r + idco * t for r, t in zip(rhs, sq.identity())]
        assert cg.sigma(u) == sq.varphi(rhs)
    results.append(("four-argument generator image", True))

    for _ in range(trials):
        a, b, c = (random_octonion(alg, rng, pure=True) for _ in range(3))
        u = cg.s(der(a, b), der(c, b))
        nb = bilinear(b, b) / 2
        rhs = sq.zero()
        for x, y, co in (
            (b, b, -72 * bilinear(a, c)),
            (a, c, -144 * nb),
            (c, b, 72 * bilinear(a, b)),
            (a, b, 72 * bilinear(c, b)),
            (malcev(a, b), malcev(c, b), mpq(12)),
        ):
            tmp = sq.pair_coeffs(w(x), w(y))
            rhs = [r + co * t for r, t in zip(rhs, tmp)]
        assert cg.sigma(u) == sq.varphi(rhs)
    results.append(("two-argument generator image", True))

    for _ in range(trials):
        a = random_octonion(alg, rng, pure=True)
        c = random_octonion(alg, rng, pure=True)
        # orthogonalise c against a (exactly); skip degenerate draws
        na = bilinear(a, a)
        if not na:
            continue
        c = c - (bilinear(a, c) / na) * a
        ac = malcev(a, c)
        u = cg.s(der(a, ac), der(c, ac))
        co = -768 * (bilinear(a, a) / 2) * (bilinear(c, c) / 2)
        rhs = [co * t for t in sq.pair_coeffs(w(a), w(c))]
        assert cg.sigma(u) == sq.varphi(rhs)
    results.append(("orthogonal-pair preimage formula", True))
    return results


def sigma_closed_form_checks_f4(cg: CGAlgebra, rng, trials: int = 4):
    """Exact checks of the three slot-element generator images under sigma
    (squares of two-slot derivations, mixed diagonal/slot pairs with equal
    and with different diagonal indices)."""
    from .octonion import bilinear, random_octonion
    from .symsquare import indicator

    lie = cg.lie
    alb = lie.albert
    sq = _sq26()
    results = []

    def wslot(a, s):
        return alb.w_project(alb.slot(a, s).c)

    def wdiag(i, k):
        c = [mpq(0)] * 27
        c[i - 1] = mpq(1)
        c[k - 1] = mpq(-1)
        return alb.w_project(c)

    def der(x, y):
        return tuple(lie.coords_of(std_der_albert(alb, x, y)))

    cycles = [(1, 2, 3), (2, 3, 1), (3, 1, 2)]

    for i, j, k in cycles:
        for _ in range(trials):
            a = random_octonion(alb.oct, rng)
            b = random_octonion(alb.oct, rng)
            u = cg.s(der(alb.slot(a, i).c, alb.slot(b, i).c),
                     der(alb.slot(a, i).c, alb.slot(b, i).c))
            t = bilinear(a, b)
            disc = t * t - bilinear(a, a) * bilinear(b, b)
            ind = [p + q for p, q in zip(indicator(j), indicator(k))]
            rhs = [mpq(3, 2) * disc * p for p in ind]
            for x, y, co in (
                (wslot(a, i), wslot(b, i), 12 * t),
                (wslot(a, i), wslot(a, i), -6 * bilinear(b, b)),
                (wslot(b, i), wslot(b, i), -6 * bilinear(a, a)),
            ):
                tmp = sq.pair_coeffs(x, y)
                rhs = [r + co * v for r, v in zip(rhs, tmp)]
            rhs = [r - disc * v for r, v in zip(rhs, sq.identity())]
            rhs = [mpq(9, 4) * r for r in rhs]
            assert cg.sigma(u) == sq.varphi(rhs)
    results.append(("slot-square generator image", True))

    for sign, name in ((-1, "diagonal/slot pair, same diagonal"),
                       (1, "diagonal/slot pair, split diagonal")):
        for i, j, k in cycles:
            for _ in range(trials):
                a = random_octonion(alb.oct, rng)
                b = random_octonion(alb.oct, rng)
                one_i = alb.idempotent(i).c
                one_k = alb.idempotent(k).c
                x1 = der(one_i, alb.slot(a, j).c)
                x2 = der(one_i if sign < 0 else one_k, alb.slot(b, j).c)
                u = cg.s(x1, x2)
                t = bilinear(a, b)
                # the indicators are those of the two slots other than the
                # slot carrying a and b, i.e. slots i and k
                ind = [p + q for p, q in zip(indicator(i), indicator(k))]
                rhs = [mpq(3, 2) * t * p for p in ind]
                for x, y, co in (
                    (wdiag(i, k), wdiag(i, k), 3 * t),
                    (wslot(a, j), wslot(b, j), mpq(6)),
                ):
                    tmp = sq.pair_coeffs(x, y)
                    rhs = [r + co * v for r, v in zip(rhs, tmp)]
                rhs = [r - t * v for r, v in zip(rhs, sq.identity())]
                rhs = [sign * mpq(9, 8) * r for r in rhs]
                assert cg.sigma(u) == sq.varphi(rhs)
        results.append((name, True))
    return results


def random_element(cg: CGAlgebra, rng, support: int = 2) -> CGElement:
    """Random sparse combination of generator pairs S(X_i X_j)."""
    from .derivations import random_lie_coords

    gens = []
    for _ in range(support):
        x = tuple(random_lie_coords(cg.lie, rng))
        y = tuple(random_lie_coords(cg.lie, rng))
        gens.append((x, y, mpq(rng.randint(1, 3), rng.choice((1, 2)))))
    return CGElement(cg, gens)


def core_map_checks(cg: CGAlgebra, rng=None, trials: int = 12):
    """Structural facts about the carrier, the unit and the trace form:

    * the carrier has the expected dimension (28 resp. 325),
    * the canonical unit maps to id_W under the endomorphism realisation
      and has normalised trace 1,
    * the trace form associates with the product, tau(u.v, w) = tau(u, v.w),
      on random triples,
    * generator images are symmetric for the weighted form on W.
    Returns [(name, True)...].
    """
    import random

    rng = rng or random.Random(0)
    lie = cg.lie
    results = []

    expect = 28 if lie.kind == "g2" else 325
    assert cg.dimension == expect
    results.append((f"carrier dimension is {expect}", True))

    ident = cg.identity
    assert cg.sigma(ident) == Mat.identity(lie.w_dim)
    assert ident.endo == Mat.identity(lie.dim)
    assert cg.epsilon(ident) == 1
    results.append(("unit realises the identity operator, trace 1", True))

    for _ in range(trials):
        u = random_element(cg, rng)
        v = random_element(cg, rng)
        w = random_element(cg, rng)
        assert cg.tau(cg.diamond(u, v), w) == cg.tau(u, cg.diamond(v, w))
    results.append(("trace form associates with the product", True))

    sq = _sq7() if lie.kind == "g2" else _sq26()
    g = sq.norms
    n = lie.w_dim
    for _ in range(max(2, trials // 4)):
        m = cg.sigma(random_element(cg, rng))
        for i in range(n):
            for j in range(i + 1, n):
                assert g[i] * m.rows[i][j] == g[j] * m.rows[j][i], (i, j)
    results.append(("images are symmetric for the weighted form", True))

    return results
