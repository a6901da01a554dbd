"""Split octonions over Q(i), built by three Cayley-Dickson doublings.

Basis order: e (unit), e1, e2, e3 = e1*e2, e4, e5 = e1*e4, e6 = e2*e4,
e7 = e3*e4.  The norm is the quadratic form sum(c_t^2) in this basis and
the bilinear form is its full polarization <x,y> = N(x+y) - N(x) - N(y),
so basis vectors have <e_t, e_t> = 2.

The multiplication table is data, not code: identity checks run against
whatever table an :class:`OctonionAlgebra` instance carries, which is
how the corrupted-sign fault injection works.
"""

from __future__ import annotations

from functools import lru_cache

from gmpy2 import mpq

from .scalar import Scalar

LABELS = ("e", "e1", "e2", "e3", "e4", "e5", "e6", "e7")


def _cd_conj(a):
    if len(a) == 1:
        return list(a)
    h = len(a) // 2
    return _cd_conj(a[:h]) + [-x for x in a[h:]]


def _cd_mul(a, b):
    """Cayley-Dickson product with doubling parameter -1:
    (a1, a2)(b1, b2) = (a1 b1 - conj(b2) a2, b2 a1 + a2 conj(b1))."""
    n = len(a)
    if n == 1:
        return [a[0] * b[0]]
    h = n // 2
    a1, a2, b1, b2 = a[:h], a[h:], b[:h], b[h:]
    p = [x - y for x, y in zip(_cd_mul(a1, b1), _cd_mul(_cd_conj(b2), a2))]
    q = [x + y for x, y in zip(_cd_mul(b2, a1), _cd_mul(a2, _cd_conj(b1)))]
    return p + q


def _unit(n, k):
    v = [0] * n
    v[k] = 1
    return v


def _build_table():
    """Signed index table for the relabeled basis."""
    raw = {}
    for i in range(8):
        for j in range(8):
            prod = _cd_mul(_unit(8, i), _unit(8, j))
            nz = [(k, s) for k, s in enumerate(prod) if s]
            assert len(nz) == 1 and nz[0][1] in (1, -1)
            raw[i, j] = nz[0]

    def raw_mul(u, v):
        ku, su = u
        kv, sv = v
        k, s = raw[ku, kv]
        return (k, s * su * sv)

    # relabel: e1, e2, e4 are the three doubling units; products fill in
    rel = [(0, 1), (1, 1), (2, 1), None, (4, 1), None, None, None]
    rel[3] = raw_mul(rel[1], rel[2])
    rel[5] = raw_mul(rel[1], rel[4])
    rel[6] = raw_mul(rel[2], rel[4])
    rel[7] = raw_mul(rel[3], rel[4])
    assert sorted(k for k, _ in rel) == list(range(8))
    back = {k: (t, s) for t, (k, s) in enumerate(rel)}

    table = [[None] * 8 for _ in range(8)]
    for i in range(8):
        for j in range(8):
            k, s = raw_mul(rel[i], rel[j])
            t, st = back[k]
            table[i][j] = (t, s * st)
    return tuple(tuple(row) for row in table)


class OctonionAlgebra:
    """An 8-dimensional algebra given by a signed unit-product table."""

    def __init__(self, table, tag="split"):
        self.table = table
        self.tag = tag

    @classmethod
    def split(cls) -> "OctonionAlgebra":
        return cls(_build_table())

    def with_corrupted_sign(self, i: int, j: int) -> "OctonionAlgebra":
        """Fault-injection hook: flip the sign of one table entry."""
        table = [list(row) for row in self.table]
        k, s = table[i][j]
        table[i][j] = (k, -s)
        return OctonionAlgebra(tuple(tuple(r) for r in table), tag=f"corrupt({i},{j})")

    # -- element constructors ---------------------------------------------

    def element(self, coeffs) -> "Octonion":
        return Octonion(self, tuple(coeffs))

    def basis(self, t: int) -> "Octonion":
        c = [mpq(0)] * 8
        c[t] = mpq(1)
        return Octonion(self, tuple(c))

    def unit(self) -> "Octonion":
        return self.basis(0)

    def pure(self, coeffs7) -> "Octonion":
        return self.element((mpq(0),) + tuple(coeffs7))

    def zero(self) -> "Octonion":
        return self.element((mpq(0),) * 8)

    # -- coefficient-level products ----------------------------------------

    def mul_coeffs(self, a, b):
        out = [0] * 8
        tab = self.table
        for i, x in enumerate(a):
            if x:
                rowi = tab[i]
                for j, y in enumerate(b):
                    if y:
                        k, s = rowi[j]
                        out[k] += x * y if s > 0 else -(x * y)
        return out

    @property
    def malcev_table(self):
        """7x7 table of e_i * e_j = e_i e_j - e_j e_i on pure indices;
        entries are sparse [(pure_index, coeff)] lists."""
        if not hasattr(self, "_mtab"):
            tab = []
            for i in range(1, 8):
                row = []
                for j in range(1, 8):
                    prod = self.mul_coeffs(_unit(8, i), _unit(8, j))
                    back = self.mul_coeffs(_unit(8, j), _unit(8, i))
                    diff = [x - y for x, y in zip(prod, back)]
                    assert not diff[0], "Malcev product of pure elements left W"
                    row.append([(k - 1, mpq(v)) for k, v in enumerate(diff) if k and v])
                tab.append(row)
            self._mtab = tab
        return self._mtab

    def __repr__(self):
        return f"OctonionAlgebra({self.tag})"


class Octonion:
    __slots__ = ("alg", "c")

    def __init__(self, alg: OctonionAlgebra, coeffs):
        self.alg = alg
        self.c = tuple(coeffs)

    def __add__(self, other):
        return Octonion(self.alg, tuple(a + b for a, b in zip(self.c, other.c)))

    def __sub__(self, other):
        return Octonion(self.alg, tuple(a - b for a, b in zip(self.c, other.c)))

    def __neg__(self):
        return Octonion(self.alg, tuple(-a for a in self.c))

    def __mul__(self, other):
        if isinstance(other, Octonion):
            return Octonion(self.alg, tuple(self.alg.mul_coeffs(self.c, other.c)))
        return Octonion(self.alg, tuple(a * other for a in self.c))

    def __rmul__(self, other):
        return Octonion(self.alg, tuple(other * a for a in self.c))

    def __eq__(self, other):
        return isinstance(other, Octonion) and all(
            a == b for a, b in zip(self.c, other.c)
        )

    __hash__ = None  # type: ignore[assignment]

    def conj(self) -> "Octonion":
        return Octonion(self.alg, (self.c[0],) + tuple(-a for a in self.c[1:]))

    def norm(self):
        return sum(a * a for a in self.c)

    def is_pure(self) -> bool:
        return not self.c[0]

    def is_zero(self) -> bool:
        return not any(self.c)

    def pure_part(self) -> "Octonion":
        return Octonion(self.alg, (mpq(0),) + self.c[1:])

    def scalar_part(self):
        return self.c[0]

    def __repr__(self):
        terms = [f"{a}*{LABELS[t]}" for t, a in enumerate(self.c) if a]
        return " + ".join(terms) if terms else "0"


def bilinear(x: Octonion, y: Octonion):
    """Polarized norm form <x,y> = N(x+y) - N(x) - N(y) = 2 sum x_t y_t."""
    return mpq(2) * sum(a * b for a, b in zip(x.c, y.c))


def malcev(x: Octonion, y: Octonion) -> Octonion:
    """Commutator product x*y = xy - yx; maps W x W into W."""
    return x * y - y * x


def associator(x: Octonion, y: Octonion, z: Octonion) -> Octonion:
    return (x * y) * z - x * (y * z)


@lru_cache(maxsize=None)
def standard_octonions() -> OctonionAlgebra:
    return OctonionAlgebra.split()


def random_octonion(alg, rng, pure=False, gaussian=False) -> Octonion:
    """Small-height random element; gaussian=True mixes in imaginary parts."""

    def coeff():
        v = mpq(rng.randint(-3, 3), rng.choice((1, 1, 2)))
        if gaussian and rng.random() < 0.4:
            return Scalar(v, mpq(rng.randint(-2, 2), 1))
        return v

    c = [coeff() for _ in range(8)]
    if pure:
        c[0] = mpq(0)
    return alg.element(c)


def octonion_checks(rng=None, trials: int = 50):
    """Composition-algebra identity suite: exhaustive over the basis and
    repeated on seeded random elements.  Returns [(name, True), ...] and
    raises AssertionError with the offending tuple on any failure.

    Covers the quadratic minimal polynomial, the three adjointness rules
    of the form, the kernel rules x(conj(x)y) = N(x)y, the three Moufang
    identities, full antisymmetry of the associator, and the pure-part
    facts used later: a*b = 2ab + <a,b>e, form-associativity of *, and
    the two closed forms for the associator on pure elements.
    """
    import random

    rng = rng or random.Random(0)
    alg = standard_octonions()
    results = []
    e = alg.unit()
    basis = [alg.basis(t) for t in range(8)]

    assert basis[6] * basis[2] == basis[4], ("e6*e2", basis[6] * basis[2])
    results.append(("plane mnemonic anchor e6 e2 = e4", True))

    def samples(n, **kw):
        return [random_octonion(alg, rng, **kw) for _ in range(n)]

    pairs = [(x, y) for x in basis for y in basis]
    pairs += list(zip(samples(trials), samples(trials, gaussian=True)))
    for x, y in pairs:
        lhs = x * y + y * x - bilinear(x, e) * y - bilinear(y, e) * x
        assert lhs + bilinear(x, y) * e == alg.zero(), (x, y)
    results.append(("quadratic relation xy + yx in span(x, y, e)", True))

    triples = [(x, y, z) for x in basis for y in basis for z in basis]
    triples += list(
        zip(samples(trials), samples(trials, gaussian=True), samples(trials))
    )
    for x, y, z in triples:
        assert bilinear(x * y, z) == bilinear(y, x.conj() * z), (x, y, z)
        assert bilinear(x * y, z) == bilinear(x, z * y.conj()), (x, y, z)
        assert bilinear(x * y, z.conj()) == bilinear(y * z, x.conj()), (x, y, z)
    results.append(("form moves across products via conjugation", True))

    for x, y in pairs:
        assert x * (x.conj() * y) == x.norm() * y, (x, y)
        assert (x * y.conj()) * y == y.norm() * x, (x, y)
    results.append(("conjugate-cancellation scales by the norm", True))

    for x, y, z in triples:
        assert (z * x) * (y * z) == z * ((x * y) * z), (x, y, z)
        assert z * (x * (z * y)) == (z * (x * z)) * y, (x, y, z)
        assert x * (z * (y * z)) == ((x * z) * y) * z, (x, y, z)
    results.append(("Moufang identities", True))

    for x, y, z in triples:
        a = associator(x, y, z)
        assert associator(y, x, z) == -a, (x, y, z)
        assert associator(x, z, y) == -a, (x, y, z)
        assert associator(z, y, x) == -a, (x, y, z)
    results.append(("associator is alternating", True))

    wpairs = [(x, y) for x in basis[1:] for y in basis[1:]]
    wpairs += list(zip(samples(trials, pure=True), samples(trials, pure=True, gaussian=True)))
    for a, b in wpairs:
        m = malcev(a, b)
        assert m.is_pure(), (a, b)
        assert m == 2 * (a * b) + bilinear(a, b) * e, (a, b)
    results.append(("commutator product on pure parts", True))

    wtriples = [(x, y, z) for x in basis[1:] for y in basis[1:] for z in basis[1:]]
    wtriples += list(
        zip(
            samples(trials, pure=True),
            samples(trials, pure=True, gaussian=True),
            samples(trials, pure=True),
        )
    )
    for x, y, z in wtriples:
        assert bilinear(malcev(x, y), z) == bilinear(x, malcev(y, z)), (x, y, z)
    results.append(("commutator product associates with the form", True))

    for a, x, b in wtriples:
        rhs = mpq(1, 2) * malcev(x, malcev(a, b)) + bilinear(a, x) * b
        assert associator(a, x, b) == rhs - bilinear(b, x) * a, (a, x, b)
        lhs = malcev(malcev(x, a), b) + malcev(malcev(x, b), a)
        rhs2 = 2 * bilinear(a, x) * b + 2 * bilinear(b, x) * a - 4 * bilinear(a, b) * x
        assert lhs == rhs2, (a, x, b)
    results.append(("pure-part associator closed forms", True))

    return results
