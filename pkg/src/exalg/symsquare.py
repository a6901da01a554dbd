"""Symmetric squares of quadratic spaces and their identification with
symmetric operators.

For a space with nondegenerate diagonal Gram matrix, the element ab maps
to the operator z -> (a<b,z> + b<a,z>)/2; this is an isomorphism onto the
operators symmetric with respect to the form.  Everything downstream
(the closed-form products, the embeddings, the invariant-theory checks)
works through this identification, so coefficient vectors over unordered
index pairs are the lingua franca of the package.

Orthonormal bases do not always exist over Q(i): a diagonal form
diag(n_1..n_k) is equivalent to the identity only if its discriminant
prod(n_t) is a square, and neither 2 (pure octonions) nor 3 (traceless
Albert elements) is a square in Q(i).  Where the literature assumes an
orthonormal basis we use the weighted decomposition id = sum xx/<x,x>
over an orthogonal basis instead, which is the same tensor.
"""

from __future__ import annotations

from functools import lru_cache

from gmpy2 import mpq

from .albert import standard_albert
from .linalg import Mat, RowBasis, SymIndex
from .octonion import LABELS as OCT_LABELS


class SymSquare:
    """Coefficient calculus for the symmetric square of a quadratic space
    with diagonal Gram matrix `norms`."""

    def __init__(self, norms, labels=None, name: str = ""):
        self.norms = list(norms)
        self.dim = len(self.norms)
        self.idx = SymIndex(self.dim)
        self.name = name
        self.labels = list(labels) if labels else [f"w{t+1}" for t in range(self.dim)]
        if len(self.labels) != self.dim:
            raise ValueError("label count mismatch")

    # -- basic maps ---------------------------------------------------------

    def zero(self):
        return [mpq(0)] * len(self.idx)

    def pair(self, i: int, j: int):
        u = self.zero()
        u[self.idx.index_of(i, j)] = mpq(1)
        return u

    def pair_coeffs(self, x, y):
        """The element xy for coordinate vectors x, y."""
        u = self.zero()
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj:
                    u[self.idx.index_of(i, j)] += xi * yj
        return u

    def w_bilinear(self, x, y):
        return sum(a * b * n for a, b, n in zip(x, y, self.norms))

    def varphi(self, u) -> Mat:
        """The symmetric operator of a coefficient vector."""
        m = Mat.zeros(self.dim)
        for k, c in enumerate(u):
            if not c:
                continue
            p, q = self.idx.pair_of(k)
            if p == q:
                m.rows[p][p] += c * self.norms[p]
            else:
                m.rows[p][q] += c * self.norms[q] / 2
                m.rows[q][p] += c * self.norms[p] / 2
        return m

    def varphi_inv(self, m: Mat):
        """Coefficients of an operator symmetric w.r.t. the form; raises on
        non-symmetric input (every matrix entry is checked)."""
        if m.nrows != self.dim or m.ncols != self.dim:
            raise ValueError("operator dimension mismatch")
        u = self.zero()
        for p in range(self.dim):
            u[self.idx.index_of(p, p)] = m.rows[p][p] / self.norms[p]
            for q in range(p + 1, self.dim):
                c = 2 * m.rows[p][q] / self.norms[q]
                c2 = 2 * m.rows[q][p] / self.norms[p]
                if c != c2:
                    raise ValueError("operator is not symmetric for the form")
                u[self.idx.index_of(p, q)] = c
        return u

    def trace(self, u):
        """Tr of the associated operator: <a,b> on generators ab."""
        return sum(
            u[self.idx.index_of(p, p)] * self.norms[p] for p in range(self.dim)
        )

    def identity(self):
        """Coefficients of id_W, i.e. sum_t (b_t b_t)/<b_t,b_t>."""
        u = self.zero()
        for p in range(self.dim):
            u[self.idx.index_of(p, p)] = 1 / mpq(self.norms[p])
        return u

    # -- derivation action --------------------------------------------------

    def act(self, d: Mat, u):
        """Action of a form-skew operator d on the symmetric square, via
        conjugation of the associated symmetric operator."""
        m = self.varphi(u)
        return self.varphi_inv(d @ m - m @ d)

    def act_leibniz(self, d: Mat, u):
        """Same action computed term by term: d(ab) = (da)b + a(db)."""
        out = self.zero()
        cols = [[d.rows[i][j] for i in range(self.dim)] for j in range(self.dim)]
        for k, c in enumerate(u):
            if not c:
                continue
            p, q = self.idx.pair_of(k)
            ep = [mpq(0)] * self.dim
            ep[p] = mpq(1)
            eq = [mpq(0)] * self.dim
            eq[q] = mpq(1)
            for t, v in enumerate(self.pair_coeffs(cols[p], eq)):
                if v:
                    out[t] += c * v
            for t, v in enumerate(self.pair_coeffs(ep, cols[q])):
                if v:
                    out[t] += c * v
        return out

    def pair_label(self, k: int) -> str:
        p, q = self.idx.pair_of(k)
        return f"{self.labels[p]}.{self.labels[q]}"

    def __repr__(self):
        return f"SymSquare({self.name or self.dim}, pairs={len(self.idx)})"


def _exact_sqrt(q):
    """sqrt of a positive rational if it is rational, else None."""
    q = mpq(q)
    if q <= 0:
        return None
    from gmpy2 import isqrt

    num, den = q.numerator, q.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return mpq(rn, rd)
    return None


def orthonormal_basis(norms):
    """Orthonormal coordinate vectors for a diagonal form, when one exists
    over Q(i).

    Norm-1 vectors pass through; two norm-n vectors with 2n a perfect
    square combine as (u +- v)/sqrt(2n).  If vectors remain unpaired the
    form's discriminant is a nonsquare times a square, and no orthonormal
    basis exists over Q(i); we raise with that explanation.
    """
    groups: dict = {}
    for t, n in enumerate(norms):
        groups.setdefault(mpq(n), []).append(t)
    dim = len(norms)
    out = []

    def unit(t, scale):
        v = [mpq(0)] * dim
        v[t] = scale
        return v

    leftovers = []
    for n, idxs in sorted(groups.items()):
        if n == 1:
            out.extend(unit(t, mpq(1)) for t in idxs)
            continue
        r = _exact_sqrt(n)
        if r is not None:
            out.extend(unit(t, 1 / r) for t in idxs)
            continue
        s = _exact_sqrt(2 * n)
        if s is not None:
            while len(idxs) >= 2:
                a, b = idxs.pop(), idxs.pop()
                u = [mpq(0)] * dim
                v = [mpq(0)] * dim
                u[a] = u[b] = 1 / s
                v[a] = 1 / s
                v[b] = -1 / s
                out.append(u)
                out.append(v)
        leftovers.extend(idxs)
    if leftovers:
        disc = mpq(1)
        for n in norms:
            disc *= mpq(n)
        raise ValueError(
            f"no orthonormal basis over Q(i): discriminant {disc} is not a "
            "square in Q(i) (modulo squares), so the form is not equivalent "
            "to the identity; use the weighted decomposition id = sum xx/<x,x> instead"
        )
    return out


# -- the three concrete spaces ---------------------------------------------


@lru_cache(maxsize=None)
def w7_space() -> SymSquare:
    """Pure octonions with the doubled norm form, <e_i,e_i> = 2."""
    return SymSquare([mpq(2)] * 7, labels=OCT_LABELS[1:], name="W7")


@lru_cache(maxsize=None)
def o8_space() -> SymSquare:
    """Full octonions; this one does admit an orthonormal basis."""
    return SymSquare([mpq(2)] * 8, labels=OCT_LABELS, name="O8")


@lru_cache(maxsize=None)
def w26_space() -> SymSquare:
    alb = standard_albert()
    labels = ["E11-E22", "E11+E22-2E33"] + [
        f"({OCT_LABELS[t]})_{s}" for s in (1, 2, 3) for t in range(8)
    ]
    return SymSquare(list(alb.w_norms), labels=labels, name="W26")


def traceless_operator_basis(sq: SymSquare):
    """A basis of the trace-zero part of the symmetric square:
    the off-diagonal pairs plus consecutive diagonal differences
    b_t b_t / n_t - b_{t+1} b_{t+1} / n_{t+1}.  Returns coefficient
    vectors; their count is dim(dim+1)/2 - 1 and they are checked to be
    independent and traceless."""
    out = []
    n = sq.dim
    for p in range(n):
        for q in range(p + 1, n):
            out.append(sq.pair(p, q))
    for t in range(n - 1):
        u = sq.zero()
        u[sq.idx.index_of(t, t)] = 1 / mpq(sq.norms[t])
        u[sq.idx.index_of(t + 1, t + 1)] = -1 / mpq(sq.norms[t + 1])
        out.append(u)
    rb = RowBasis(len(sq.idx))
    for u in out:
        if sq.trace(u):
            raise AssertionError("traceless basis element has nonzero trace")
        if not rb.add(u):
            raise AssertionError("traceless basis elements are dependent")
    assert rb.rank == n * (n + 1) // 2 - 1
    return out


def verify_sumrules(rng=None, trials: int = 5):
    """Exact spot-checks of the contraction identities used by the
    closed-form products.  Returns a list of (name, True) entries; raises
    AssertionError on any failure.

    * weighted identity decomposition on all three spaces,
    * sum_i (e_i * a)(e_i * b) = 2<a,b> sum_i e_i e_i - 4 ab over the seven
      pure basis octonions (* the commutator product), with
      sum_i e_i e_i = 2 id,
    * sum_x (xa)(xb) = <a,b>/2 sum_x xx = sum_x (ax)(bx) over an
      orthonormal basis of the full octonions, with sum_x xx = id.
    """
    import random

    from .octonion import bilinear as oct_bilinear
    from .octonion import malcev, random_octonion, standard_octonions

    rng = rng or random.Random(0)
    oct_alg = standard_octonions()
    results = []

    for sq in (w7_space(), o8_space(), w26_space()):
        total = sq.zero()
        for t in range(sq.dim):
            k = sq.idx.index_of(t, t)
            total[k] += 1 / mpq(sq.norms[t])
        assert total == sq.identity()
        results.append((f"weighted identity on {sq.name}", True))

    sq7 = w7_space()
    basis_sum = [2 * c for c in sq7.identity()]  # sum_i e_i e_i, which is 2 id_W
    for _ in range(trials):
        a = random_octonion(oct_alg, rng, pure=True)
        b = random_octonion(oct_alg, rng, pure=True)
        lhs = sq7.zero()
        for i in range(1, 8):
            ei = oct_alg.basis(i)
            u = malcev(ei, a).c[1:]
            v = malcev(ei, b).c[1:]
            for k, c in enumerate(sq7.pair_coeffs(u, v)):
                lhs[k] += c
        ab = sq7.pair_coeffs(a.c[1:], b.c[1:])
        t2 = 2 * oct_bilinear(a, b)
        rhs = [t2 * p - 4 * q for p, q in zip(basis_sum, ab)]
        assert lhs == rhs
    results.append(("pure-basis contraction of the commutator product", True))

    sq8 = o8_space()
    onb = orthonormal_basis(sq8.norms)
    total = sq8.zero()
    for x in onb:
        for k, c in enumerate(sq8.pair_coeffs(x, x)):
            total[k] += c
    assert total == sq8.identity()
    results.append(("orthonormal identity decomposition on O8", True))

    for _ in range(trials):
        a = random_octonion(oct_alg, rng)
        b = random_octonion(oct_alg, rng)
        left = sq8.zero()
        right = sq8.zero()
        for x in onb:
            xo = oct_alg.element(x)
            xa, xb = (xo * a).c, (xo * b).c
            ax, bx = (a * xo).c, (b * xo).c
            for k, c in enumerate(sq8.pair_coeffs(xa, xb)):
                left[k] += c
            for k, c in enumerate(sq8.pair_coeffs(ax, bx)):
                right[k] += c
        half = oct_bilinear(a, b) / 2
        mid = [half * c for c in sq8.identity()]
        assert left == mid == right
    results.append(("orthonormal-basis contraction on O8", True))
    return results


def indicator(i: int, basis=None):
    """The slot indicator as a Sq^2 W26 coefficient vector: acts as the
    identity on the i-th off-diagonal octonion block and as 0 on the rest
    of the trace-zero space.

    basis: optional orthogonal octonion basis (list of Octonion) with
    nonzero norms; defaults to the standard basis with all norms 1.
    """
    if i not in (1, 2, 3):
        raise ValueError("slot index must be 1, 2 or 3")
    alb = standard_albert()
    sq = w26_space()
    out = sq.zero()
    if basis is None:
        octs = [alb.oct.basis(t) for t in range(8)]
    else:
        octs = list(basis)
        if len(octs) != 8:
            raise ValueError("octonion basis must have 8 elements")
    from .octonion import bilinear as oct_bilinear

    for t, x in enumerate(octs):
        n = oct_bilinear(x, x)
        if not n:
            raise ValueError("basis vector with zero norm")
        for s, y in enumerate(octs):
            if s < t and oct_bilinear(x, y):
                raise ValueError("octonion basis is not orthogonal")
        w = alb.w_project(alb.slot(x, i).c)
        for k, v in enumerate(sq.pair_coeffs(w, w)):
            if v:
                out[k] += v / n
    return out
