"""The 27-dimensional Jordan algebra of hermitian 3x3 octonion matrices.

Basis order: the three diagonal idempotents, then the off-diagonal
octonion slots in slot-major order, so index 3 + 8*(s-1) + t is the
octonion basis vector e_t sitting in slot s.  Structure constants are
derived once from honest matrix multiplication in the hermitian model
and cached; everything else (trace form, projection, the traceless
product) is table-driven.

The traceless subspace W (dim 26) gets its own coordinates: first the
two diagonal traceless directions 1_1 - 1_2 and 1_1 + 1_2 - 2*1_3, then
the 24 off-diagonal coordinates in ambient order.  Both are orthogonal
for the trace form, with norms 2 and 6 on the diagonal directions and 2
on each off-diagonal one.
"""

from __future__ import annotations

from functools import lru_cache

from gmpy2 import mpq

from .octonion import LABELS as OCT_LABELS
from .octonion import Octonion, OctonionAlgebra, standard_octonions
from .scalar import Scalar

# slot s corresponds to the off-diagonal (row, col) position pair
_SLOT_POS = {1: (1, 2), 2: (2, 0), 3: (0, 1)}

DIM = 27
W_DIM = 26


def _labels():
    out = ["E11", "E22", "E33"]
    for s in (1, 2, 3):
        for t in range(8):
            out.append(f"({OCT_LABELS[t]})_{s}")
    return tuple(out)


LABELS = _labels()


class AlbertAlgebra:
    """Structure constants and helpers for one choice of octonion table."""

    def __init__(self, oct_alg: OctonionAlgebra):
        self.oct = oct_alg
        self.dim = DIM
        self._build()

    # -- construction -------------------------------------------------------

    def _basis_matrix(self, idx: int):
        z = self.oct.zero()
        m = [[z] * 3 for _ in range(3)]
        if idx < 3:
            m[idx][idx] = self.oct.unit()
            return m
        s, t = divmod(idx - 3, 8)
        j, k = _SLOT_POS[s + 1]
        x = self.oct.basis(t)
        m[j][k] = x
        m[k][j] = x.conj()
        return m

    def _matrix_coeffs(self, m) -> list:
        coeffs = [mpq(0)] * DIM
        for i in range(3):
            d = m[i][i]
            assert not any(d.c[1:]), "diagonal entry of a hermitian square left k*e"
            coeffs[i] = d.c[0]
        for s in (1, 2, 3):
            j, k = _SLOT_POS[s]
            x = m[j][k]
            assert m[k][j] == x.conj(), "product is not hermitian"
            for t in range(8):
                coeffs[3 + 8 * (s - 1) + t] = x.c[t]
        return coeffs

    def _build(self):
        mats = [self._basis_matrix(i) for i in range(DIM)]
        half = mpq(1, 2)
        tab = [[None] * DIM for _ in range(DIM)]
        for i in range(DIM):
            for j in range(i, DIM):
                a, b = mats[i], mats[j]
                prod = [
                    [
                        sum((a[r][m] * b[m][c] + b[r][m] * a[m][c] for m in range(3)),
                            self.oct.zero()) * half
                        for c in range(3)
                    ]
                    for r in range(3)
                ]
                coeffs = self._matrix_coeffs(prod)
                entry = [(k, c) for k, c in enumerate(coeffs) if c]
                tab[i][j] = entry
                tab[j][i] = entry
        self.jtab = tab
        # trace form is diagonal on this basis: 1 on idempotents, 2 on slots
        self.gram = [mpq(1)] * 3 + [mpq(2)] * 24

    # -- products ------------------------------------------------------------

    def jordan_coeffs(self, x, y):
        out = [0] * DIM
        tab = self.jtab
        for i, xi in enumerate(x):
            if xi:
                rowi = tab[i]
                for j, yj in enumerate(y):
                    if yj:
                        xy = xi * yj
                        for k, c in rowi[j]:
                            out[k] += xy * c
        return out

    def trace(self, x):
        return x[0] + x[1] + x[2]

    def trace_form(self, x, y):
        return sum(g * a * b for g, a, b in zip(self.gram, x, y))

    def project_coeffs(self, x):
        t = self.trace(x) * mpq(1, 3)
        out = list(x)
        out[0] -= t
        out[1] -= t
        out[2] -= t
        return out

    # -- element constructors --------------------------------------------------

    def element(self, coeffs) -> "AlbertElement":
        return AlbertElement(self, tuple(coeffs))

    def basis(self, i: int) -> "AlbertElement":
        c = [mpq(0)] * DIM
        c[i] = mpq(1)
        return self.element(c)

    def unit(self) -> "AlbertElement":
        c = [mpq(0)] * DIM
        c[0] = c[1] = c[2] = mpq(1)
        return self.element(c)

    def idempotent(self, i: int) -> "AlbertElement":
        return self.basis(i - 1)

    def slot(self, x: Octonion, s: int) -> "AlbertElement":
        """The element x_s carrying an octonion in off-diagonal slot s."""
        c = [mpq(0)] * DIM
        for t in range(8):
            c[3 + 8 * (s - 1) + t] = x.c[t]
        return self.element(c)

    # -- cubic form helper -------------------------------------------------------

    def degree3_residual(self, x, y, z):
        """Returns (t, r) where r collects the symmetric degree-3 relation
        and t is the trilinear value; the relation itself says r == 3*t*e."""
        jm = self.jordan_coeffs
        tf = self.trace_form
        yz, xz, xy = jm(y, z), jm(x, z), jm(x, y)
        tx, ty, tz = self.trace(x), self.trace(y), self.trace(z)
        r = [
            a + b + c
            for a, b, c in zip(jm(x, yz), jm(y, xz), jm(z, xy))
        ]
        for vec, coef in ((yz, tx), (xz, ty), (xy, tz)):
            if coef:
                for k in range(DIM):
                    r[k] -= coef * vec[k]
        for vec, coef in (
            (z, (tf(x, y) - tx * ty) / 2),
            (y, (tf(x, z) - tx * tz) / 2),
            (x, (tf(y, z) - ty * tz) / 2),
        ):
            if coef:
                for k in range(DIM):
                    r[k] -= coef * vec[k]
        t = (r[0] + r[1] + r[2]) * mpq(1, 9)
        return t, r

    def trilinear(self, x, y, z):
        """Symmetric trilinear form <x,y,z> normalized by the degree-3
        relation; <e,e,e> = 1."""
        return self.degree3_residual(x, y, z)[0]

    # -- traceless subspace W ------------------------------------------------------

    def w_embed(self, w):
        """26 traceless coordinates -> 27 ambient coordinates."""
        a, b = w[0], w[1]
        return [a + b, -a + b, -2 * b] + list(w[2:])

    def w_project(self, x):
        """27 ambient coordinates -> 26 traceless coordinates (applies the
        trace projection first)."""
        p = self.project_coeffs(x)
        half = mpq(1, 2)
        return [(p[0] - p[1]) * half, -p[2] * half] + list(p[3:])

    @property
    def w_norms(self):
        return [mpq(2), mpq(6)] + [mpq(2)] * 24

    def w_bilinear(self, u, v):
        return sum(g * a * b for g, a, b in zip(self.w_norms, u, v))

    @property
    def star_tab(self):
        """26x26 table of the projected product on W: entries are sparse
        [(k, coeff)] lists over W coordinates."""
        if not hasattr(self, "_star_tab"):
            basis27 = [self.w_embed([mpq(1) if t == i else mpq(0) for t in range(W_DIM)])
                       for i in range(W_DIM)]
            tab = []
            for i in range(W_DIM):
                row = []
                for j in range(W_DIM):
                    prod = self.w_project(self.jordan_coeffs(basis27[i], basis27[j]))
                    row.append([(k, c) for k, c in enumerate(prod) if c])
                tab.append(row)
            self._star_tab = tab
        return self._star_tab

    def star_coeffs(self, u, v):
        """The projected product pi(x . y) in W coordinates."""
        out = [0] * W_DIM
        tab = self.star_tab
        for i, ui in enumerate(u):
            if ui:
                rowi = tab[i]
                for j, vj in enumerate(v):
                    if vj:
                        uv = ui * vj
                        for k, c in rowi[j]:
                            out[k] += uv * c
        return out

    def __repr__(self):
        return f"AlbertAlgebra(over {self.oct!r})"


class AlbertElement:
    __slots__ = ("alg", "c")

    def __init__(self, alg: AlbertAlgebra, coeffs):
        self.alg = alg
        self.c = tuple(coeffs)

    def __add__(self, other):
        return AlbertElement(self.alg, tuple(a + b for a, b in zip(self.c, other.c)))

    def __sub__(self, other):
        return AlbertElement(self.alg, tuple(a - b for a, b in zip(self.c, other.c)))

    def __neg__(self):
        return AlbertElement(self.alg, tuple(-a for a in self.c))

    def __mul__(self, other):
        if isinstance(other, AlbertElement):
            return AlbertElement(self.alg, tuple(self.alg.jordan_coeffs(self.c, other.c)))
        return AlbertElement(self.alg, tuple(a * other for a in self.c))

    def __rmul__(self, other):
        return AlbertElement(self.alg, tuple(other * a for a in self.c))

    def __eq__(self, other):
        return isinstance(other, AlbertElement) and all(
            a == b for a, b in zip(self.c, other.c)
        )

    __hash__ = None  # type: ignore[assignment]

    def trace(self):
        return self.alg.trace(self.c)

    def project(self) -> "AlbertElement":
        return AlbertElement(self.alg, tuple(self.alg.project_coeffs(self.c)))

    def is_zero(self) -> bool:
        return not any(self.c)

    def __repr__(self):
        terms = [f"{a}*{LABELS[t]}" for t, a in enumerate(self.c) if a]
        return " + ".join(terms) if terms else "0"


@lru_cache(maxsize=None)
def standard_albert() -> AlbertAlgebra:
    return AlbertAlgebra(standard_octonions())


def jordan_mul(x: AlbertElement, y: AlbertElement) -> AlbertElement:
    return x * y


def trace_form(x: AlbertElement, y: AlbertElement):
    return x.alg.trace_form(x.c, y.c)


def project(x: AlbertElement) -> AlbertElement:
    return x.project()


def random_albert(alb: AlbertAlgebra, rng, gaussian=False, traceless=False) -> AlbertElement:
    def coeff():
        v = mpq(rng.randint(-3, 3), rng.choice((1, 1, 2)))
        if gaussian and rng.random() < 0.35:
            return Scalar(v, mpq(rng.randint(-2, 2)))
        return v

    c = [coeff() for _ in range(DIM)]
    x = alb.element(c)
    return x.project() if traceless else x


def random_w(alb: AlbertAlgebra, rng, gaussian=False) -> list:
    """Random traceless element in W coordinates."""
    return alb.w_project(random_albert(alb, rng, gaussian=gaussian).c)


def albert_checks(rng=None, trials: int = 50):
    """Jordan-matrix identity suite.  Returns [(name, True), ...].

    Exhaustive over the hermitian basis: the six block multiplication
    rules (idempotent squares/products, idempotent-times-slot, same-slot
    and cross-slot octonion products), the block-orthogonality of the
    trace form, and the linearized cubic relation (whose residual must be
    a multiple of the unit; its scalar is the normalized trilinear form).
    Random tuples re-check the cubic relation and the symmetry and
    determinant anchors of the trilinear form.
    """
    import random

    from .octonion import random_octonion, standard_octonions
    from .octonion import bilinear as oct_bilinear

    rng = rng or random.Random(0)
    alb = standard_albert()
    oc = standard_octonions()
    results = []
    obasis = [oc.basis(t) for t in range(8)]
    ones = [alb.idempotent(i) for i in (1, 2, 3)]
    zero = alb.element([mpq(0)] * DIM)

    for i in range(3):
        for j in range(3):
            expect = ones[i] if i == j else zero
            assert ones[i] * ones[j] == expect, (i, j)
    results.append(("diagonal idempotents are orthogonal", True))

    for i in (1, 2, 3):
        for a in obasis:
            assert ones[i - 1] * alb.slot(a, i) == zero, (i, a)
            for j in (1, 2, 3):
                if j != i:
                    prod = ones[i - 1] * alb.slot(a, j)
                    assert prod == mpq(1, 2) * alb.slot(a, j), (i, j, a)
    results.append(("idempotents halve the off-diagonal slots", True))

    for i in (1, 2, 3):
        j, k = [t for t in (1, 2, 3) if t != i]
        rest = ones[j - 1] + ones[k - 1]
        for a in obasis:
            for b in obasis:
                prod = alb.slot(a, i) * alb.slot(b, i)
                assert prod == mpq(1, 2) * oct_bilinear(a, b) * rest, (i, a, b)
    results.append(("same-slot products land on the complementary diagonal", True))

    cyclic = {(1, 2): 3, (2, 3): 1, (3, 1): 2}
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            if i == j:
                continue
            for a in obasis:
                for b in obasis:
                    if (i, j) in cyclic:
                        k, w = cyclic[(i, j)], (a * b).conj()
                    else:
                        k, w = cyclic[(j, i)], (b * a).conj()
                    prod = alb.slot(a, i) * alb.slot(b, j)
                    assert prod == mpq(1, 2) * alb.slot(w, k), (i, j, a, b)
    results.append(("cross-slot products conjugate into the third slot", True))

    for i in (1, 2, 3):
        for j in (1, 2, 3):
            for a in obasis:
                assert trace_form(ones[i - 1], alb.slot(a, j)) == 0, (i, j, a)
                for b in obasis:
                    g = oct_bilinear(a, b) if i == j else 0
                    assert trace_form(alb.slot(a, i), alb.slot(b, j)) == g, (i, j, a, b)
            assert trace_form(ones[i - 1], ones[j - 1]) == (1 if i == j else 0), (i, j)
    results.append(("trace form is block diagonal with octonion blocks", True))

    def scalar_residual(x, y, z):
        t, r = alb.degree3_residual(x, y, z)
        assert r[0] == r[1] == r[2], (x, y, z)
        assert not any(r[3:]), (x, y, z)
        assert 3 * t == r[0], (x, y, z)
        return t

    units = []
    for p in range(DIM):
        c = [mpq(0)] * DIM
        c[p] = mpq(1)
        units.append(c)
    for p in range(DIM):
        for q in range(p, DIM):
            for s in range(q, DIM):
                scalar_residual(units[p], units[q], units[s])
    results.append(("cubic residual is scalar on all basis triples", True))

    eu = alb.unit()
    assert scalar_residual(eu.c, eu.c, eu.c) == 1
    for _ in range(trials):
        al, be, ga = (mpq(rng.randint(-4, 4)) for _ in range(3))
        d = alb.element([al, be, ga] + [mpq(0)] * 24)
        assert scalar_residual(d.c, d.c, d.c) == al * be * ga
        x = random_albert(alb, rng, gaussian=True)
        y = random_albert(alb, rng)
        z = random_albert(alb, rng, gaussian=True)
        t = scalar_residual(x.c, y.c, z.c)
        assert t == scalar_residual(y.c, x.c, z.c) == scalar_residual(z.c, y.c, x.c)
    results.append(("trilinear scalar: unit and diagonal anchors, symmetry", True))

    return results
