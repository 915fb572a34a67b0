"""The algebraic side of the curve dictionary for a cycle of n projective
lines: named object tags, the tabulated total Hom dimensions they satisfy,
multidegree arithmetic on the component curves G_1..G_n, and exact lattice
computations with the in-fiber intersection form.

Hom dimensions are a curated table of known values, not recomputed from
sheaf cohomology; ``check_dictionary`` confronts each tabulated value with
the geometric intersection number of the corresponding curves.
"""

from fractions import Fraction

from .mcg import MCGContext, MappingClass, derived_arc
from .surface import intersection_number

# ---- object tags ------------------------------------------------------------

OY = ("OY",)


def Ox(i):
    """The structure sheaf of the marked smooth point x_i on component i."""
    return ("Ox", i)


def OG(i, a):
    """The line bundle of degree a on the i-th component."""
    return ("OG", i, a)


def PsiOx(i):
    """The image of Ox(i) under the i-th spherical twist functor."""
    return ("PsiOx", i)


def _check_tag(n, tag):
    kind = tag[0]
    if kind == "OY":
        return
    if kind in ("Ox", "PsiOx"):
        if not 1 <= tag[1] <= n:
            raise ValueError("component index out of range: %r" % (tag,))
        return
    if kind == "OG":
        if not 1 <= tag[1] <= n:
            raise ValueError("component index out of range: %r" % (tag,))
        return
    raise ValueError("unknown object tag: %r" % (tag,))


def curve_of(ctx, tag):
    """The curve on the n-punctured torus associated to an object tag."""
    _check_tag(ctx.model.n, tag)
    kind = tag[0]
    if kind == "OY":
        return ctx.model.curve_A()
    if kind == "Ox":
        return ctx.model.curve_B(tag[1])
    if kind == "OG":
        return derived_arc(ctx, tag[1], tag[2])
    # PsiOx(i): the half twist along the i-th base arc applied to B_i
    i = tag[1]
    return MappingClass.from_terms(ctx, [("H", i, 1)]).act(ctx.model.curve_B(i))


# ---- Hom dimension table -----------------------------------------------------


class HomNotTabulated(KeyError):
    """The requested pair has no tabulated total Hom dimension (which is
    different from the dimension being zero)."""


def _adjacent(n, i, j):
    return abs(i - j) in (1, n - 1)


def hom_total(n, E, F):
    """Total dimension of Hom^*(E, F) for the tabulated pairs.

    Raises HomNotTabulated for pairs outside the table.  The components
    G_i, G_j with |i-j| = 1 or n-1 meet in one point when n >= 3; for
    n = 2 the two components meet twice and the pairs whose value depends
    on that adjacency count are left untabulated.
    """
    _check_tag(n, E)
    _check_tag(n, F)
    if E[0] == "PsiOx":
        i = E[1]
        if F[0] == "Ox":
            return 2 if F[1] == i else 0
        if F[0] == "OY":
            return 1
        if F[0] == "OG" and F[2] == -1:
            j = F[1]
            if j == i:
                return 1
            if n >= 3:
                return 1 if _adjacent(n, i, j) else 0
            raise HomNotTabulated((E, F))
        if F[0] == "OG" and F[1] == i and F[2] == 0:
            return 3
    if E[0] == "OG" and E[2] == -1:
        if F[0] == "Ox" and F[1] != E[1]:
            return 0
        if F[0] == "OY":
            return 0
    raise HomNotTabulated((E, F))


def tabulated_pairs(n):
    """All object pairs carrying a tabulated Hom total, in a fixed order."""
    pairs = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            pairs.append((PsiOx(i), Ox(j)))
        pairs.append((PsiOx(i), OY))
        for j in range(1, n + 1):
            if n >= 3 or j == i:
                pairs.append((PsiOx(i), OG(j, -1)))
        pairs.append((PsiOx(i), OG(i, 0)))
        for j in range(1, n + 1):
            if j != i:
                pairs.append((OG(i, -1), Ox(j)))
        pairs.append((OG(i, -1), OY))
    return pairs


def check_dictionary(ctx, E, F):
    """Whether the tabulated Hom total equals the geometric intersection
    number of the associated curves."""
    expected = hom_total(ctx.model.n, E, F)
    actual = intersection_number(curve_of(ctx, E), curve_of(ctx, F))
    return expected == actual


# ---- the in-fiber intersection form -----------------------------------------


def in_fiber_form(n):
    """Intersection matrix of the components of a cycle of n lines.

    Self-intersections are -2; distinct components meet once when
    cyclically adjacent (n >= 3) and twice when n = 2.
    """
    if n < 2:
        raise ValueError("the cycle needs at least two components")
    if n == 2:
        return [[-2, 2], [2, -2]]
    return [
        [-2 if i == j else (1 if _adjacent(n, i, j) else 0) for j in range(1, n + 1)]
        for i in range(1, n + 1)
    ]


def form_kernel(n):
    """Basis of the rational kernel of the in-fiber form, by exact
    Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in in_fiber_form(n)]
    cols = n
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                m[k] = [a - f * b for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
    basis = []
    free = [c for c in range(cols) if c not in pivots]
    for c in free:
        v = [Fraction(0)] * cols
        v[c] = Fraction(1)
        for row_i, pc in enumerate(pivots):
            v[pc] = -m[row_i][c]
        basis.append(_clear_denominators(v))
    return basis


def _clear_denominators(v):
    from math import gcd, lcm

    denom = lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * denom) for x in v]
    g = gcd(*ints) if any(ints) else 1
    return [x // g for x in ints]


def in_restriction_lattice(v):
    """Membership of an integer vector in the row lattice of the in-fiber
    form, by exact integer (Hermite-style) elimination."""
    v = [int(x) for x in v]
    n = len(v)
    rows = [list(r) for r in in_fiber_form(n)]
    for c in range(n):
        while True:
            nz = [r for r in rows if r[c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda r: abs(r[c]))
            for r in rows:
                if r is not piv and r[c] != 0:
                    q = r[c] // piv[c]
                    for k in range(n):
                        r[k] -= q * piv[k]
            if all(r[c] == 0 for r in rows if r is not piv):
                rows.remove(piv)
                if v[c] % piv[c] != 0:
                    return False
                q = v[c] // piv[c]
                for k in range(n):
                    v[k] -= q * piv[k]
                break
        if v[c] != 0:
            return False
    return all(x == 0 for x in v)


# ---- multidegrees ------------------------------------------------------------


def multidegree(n, terms):
    """Multidegree of a formal integer combination of point classes and
    component restrictions.

    ``terms`` is an iterable of ("x", i, coeff) or ("G", i, coeff);
    a point on component i contributes e_i, the restriction of component
    i contributes e_{i-1} - 2 e_i + e_{i+1} with cyclic indices.
    """
    deg = [0] * n
    for kind, i, coeff in terms:
        if not 1 <= i <= n:
            raise ValueError("component index out of range")
        j = i - 1
        if kind == "x":
            deg[j] += coeff
        elif kind == "G":
            deg[(j - 1) % n] += coeff
            deg[j] -= 2 * coeff
            deg[(j + 1) % n] += coeff
        else:
            raise ValueError("unknown term kind: %r" % (kind,))
    return tuple(deg)
