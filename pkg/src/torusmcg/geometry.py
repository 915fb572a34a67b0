"""Exact rational plane geometry used by the flat torus model.

Points are pairs of Fractions.  Everything here is exact; no floats.
"""

from fractions import Fraction

Q = Fraction


def pt(x, y):
    return (Q(x), Q(y))


def add(p, q):
    return (p[0] + q[0], p[1] + q[1])


def sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def scale(p, s):
    return (p[0] * s, p[1] * s)


def cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def qfloor(q):
    return q.numerator // q.denominator


def qceil(q):
    return -((-q).numerator // q.denominator)


def lerp(p, q, t):
    return (p[0] + (q[0] - p[0]) * t, p[1] + (q[1] - p[1]) * t)


def seg_intersection(a1, a2, b1, b2):
    """Intersection of closed segments [a1,a2] and [b1,b2].

    Returns None, ("point", t, u, P) with parameters along each segment,
    or ("overlap",) for collinear segments sharing more than a point.
    """
    d1 = sub(a2, a1)
    d2 = sub(b2, b1)
    w = sub(b1, a1)
    denom = cross(d1, d2)
    if denom == 0:
        if cross(w, d1) != 0:
            return None
        # collinear: project onto the longer axis of d1
        if d1 == (0, 0):
            if d2 == (0, 0):
                return ("point", Q(0), Q(0), a1) if a1 == b1 else None
            # a is a point on line b
            u = _param_on(b1, d2, a1)
            if u is None or not (0 <= u <= 1):
                return None
            return ("point", Q(0), u, a1)
        t1 = _param_on(a1, d1, b1)
        t2 = _param_on(a1, d1, b2)
        if t1 is None or t2 is None:
            return None
        lo, hi = min(t1, t2), max(t1, t2)
        lo = max(lo, Q(0))
        hi = min(hi, Q(1))
        if lo > hi:
            return None
        if lo == hi:
            P = lerp(a1, a2, lo)
            u = _param_on(b1, d2, P)
            return ("point", lo, u, P)
        return ("overlap",)
    t = cross(w, d2) / denom
    u = cross(w, d1) / denom
    if 0 <= t <= 1 and 0 <= u <= 1:
        return ("point", t, u, lerp(a1, a2, t))
    return None


def _param_on(origin, direction, point):
    if direction[0] != 0:
        return (point[0] - origin[0]) / direction[0]
    if direction[1] != 0:
        return (point[1] - origin[1]) / direction[1]
    return None


def winding_number(loop, p):
    """Winding number of a closed polyline around p (p not on the curve).

    Half-open horizontal crossing rule; exact for rational data.
    """
    wind = 0
    px, py = p
    m = len(loop)
    for i in range(m):
        a = loop[i]
        b = loop[(i + 1) % m]
        if a[1] <= py < b[1]:
            if cross(sub(b, a), sub(p, a)) > 0:
                wind += 1
        elif b[1] <= py < a[1]:
            if cross(sub(b, a), sub(p, a)) < 0:
                wind -= 1
    return wind


def signed_area2(loop):
    """Twice the signed area of a closed polyline."""
    s = Q(0)
    m = len(loop)
    for i in range(m):
        s += cross(loop[i], loop[(i + 1) % m])
    return s


def point_on_segment(p, a, b):
    if cross(sub(b, a), sub(p, a)) != 0:
        return False
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def point_in_convex(p, poly):
    """True if p is inside or on the boundary of a convex CCW polygon."""
    m = len(poly)
    for i in range(m):
        a, b = poly[i], poly[(i + 1) % m]
        if cross(sub(b, a), sub(p, a)) < 0:
            return False
    return True


def clip_convex(subject, clip):
    """Sutherland-Hodgman clip of a convex polygon against a convex CCW one."""
    out = list(subject)
    m = len(clip)
    for i in range(m):
        if not out:
            return []
        a, b = clip[i], clip[(i + 1) % m]
        d = sub(b, a)
        inp = out
        out = []
        prev = inp[-1]
        prev_in = cross(d, sub(prev, a)) >= 0
        for cur in inp:
            cur_in = cross(d, sub(cur, a)) >= 0
            if cur_in != prev_in:
                denom = cross(d, sub(cur, prev))
                t = cross(d, sub(a, prev)) / denom
                out.append(lerp(prev, cur, t))
            if cur_in:
                out.append(cur)
            prev, prev_in = cur, cur_in
    # dedupe consecutive equal vertices
    res = []
    for p in out:
        if not res or res[-1] != p:
            res.append(p)
    if len(res) >= 2 and res[0] == res[-1]:
        res.pop()
    return res


def polygon_ccw(poly):
    return poly if signed_area2(poly) >= 0 else list(reversed(poly))


def bbox(points):
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    return (min(xs), min(ys), max(xs), max(ys))


def bbox_overlap(b1, b2):
    return not (b1[2] < b2[0] or b2[2] < b1[0] or b1[3] < b2[1] or b2[3] < b1[1])


class AffineMap:
    """Exact affine map (x, y) -> (a x + b y + e, c x + d y + f)."""

    __slots__ = ("a", "b", "c", "d", "e", "f")

    def __init__(self, a, b, c, d, e, f):
        self.a, self.b, self.c, self.d = Q(a), Q(b), Q(c), Q(d)
        self.e, self.f = Q(e), Q(f)

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1, 0, 0)

    @classmethod
    def translation(cls, v):
        return cls(1, 0, 0, 1, v[0], v[1])

    @classmethod
    def from_triangles(cls, src, dst):
        """Unique affine map sending src[i] -> dst[i] for a nondegenerate triangle."""
        (x0, y0), (x1, y1), (x2, y2) = src
        u = (x1 - x0, y1 - y0)
        v = (x2 - x0, y2 - y0)
        det = cross(u, v)
        if det == 0:
            raise ValueError("degenerate source triangle")
        (X0, Y0), (X1, Y1), (X2, Y2) = dst
        U = (X1 - X0, Y1 - Y0)
        V = (X2 - X0, Y2 - Y0)
        # linear part L = [U V] * [u v]^-1
        a = (U[0] * v[1] - V[0] * u[1]) / det
        b = (V[0] * u[0] - U[0] * v[0]) / det
        c = (U[1] * v[1] - V[1] * u[1]) / det
        d = (V[1] * u[0] - U[1] * v[0]) / det
        e = X0 - a * x0 - b * y0
        f = Y0 - c * x0 - d * y0
        return cls(a, b, c, d, e, f)

    def apply(self, p):
        x, y = p
        return (self.a * x + self.b * y + self.e, self.c * x + self.d * y + self.f)

    def compose(self, other):
        """self after other."""
        o = other
        return AffineMap(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
            self.a * o.e + self.b * o.f + self.e,
            self.c * o.e + self.d * o.f + self.f,
        )

    def inverse(self):
        det = self.a * self.d - self.b * self.c
        if det == 0:
            raise ValueError("singular affine map")
        a = self.d / det
        b = -self.b / det
        c = -self.c / det
        d = self.a / det
        return AffineMap(a, b, c, d, -(a * self.e + b * self.f), -(c * self.e + d * self.f))
