"""Exact piecewise-linear homeomorphisms of the plane, equivariant under
integer translations, used as lifts of twist maps on the flat torus.

Every map here sends rational points to rational points and has an exact
inverse, so applying a map and then its inverse returns the input
polyline verbatim (after dropping redundant vertices).
"""

from .geometry import (
    Q,
    AffineMap,
    bbox,
    bbox_overlap,
    clip_convex,
    lerp,
    point_in_convex,
    polygon_ccw,
    qceil,
    qfloor,
    seg_intersection,
    signed_area2,
    sub,
)


class PLMap:
    def apply_point(self, p):
        raise NotImplementedError

    def apply_polyline(self, verts):
        raise NotImplementedError

    def inverse(self):
        raise NotImplementedError


def _subdivide_1d(a, b, cuts):
    """Values in (min,max) strictly between a and b, ordered from a to b."""
    if a == b:
        return []
    lo, hi = (a, b) if a < b else (b, a)
    vals = [c for c in cuts if lo < c < hi]
    vals.sort(reverse=a > b)
    return vals


class StripShear(PLMap):
    """Model Dehn twist supported on a periodic strip of width 2*halfwidth.

    axis "x": strip  center-h <= x <= center+h  (mod 1), map (x,y) ->
    (x, y + e(x)) with e a staircase rising by ``direction`` across each
    strip.  axis "y": the transposed map (x + e(y), y).  The lift
    satisfies F(z + m) = F(z) + L m for the expected shear matrix L.
    """

    def __init__(self, axis, center, halfwidth, direction):
        if axis not in ("x", "y"):
            raise ValueError("axis must be 'x' or 'y'")
        self.axis = axis
        self.center = Q(center)
        self.halfwidth = Q(halfwidth)
        if direction not in (1, -1):
            raise ValueError("direction must be +-1")
        self.direction = direction
        self.base = self.center - self.halfwidth

    def disp(self, c):
        u = c - self.base
        k = qfloor(u)
        r = u - k
        ramp = r / (2 * self.halfwidth)
        if ramp > 1:
            ramp = Q(1)
        return self.direction * (k + ramp)

    def _map(self, p):
        if self.axis == "x":
            return (p[0], p[1] + self.disp(p[0]))
        return (p[0] + self.disp(p[1]), p[1])

    def apply_point(self, p):
        return self._map(p)

    def _cuts_between(self, a, b):
        # breakpoints of e: base + m and base + 2h + m
        lo, hi = min(a, b), max(a, b)
        cuts = []
        for off in (Q(0), 2 * self.halfwidth):
            m = qceil(lo - self.base - off)
            while self.base + off + m < hi:
                c = self.base + off + m
                if lo < c < hi:
                    cuts.append(c)
                m += 1
        return cuts

    def apply_polyline(self, verts):
        coord = 0 if self.axis == "x" else 1
        out = [self._map(verts[0])]
        for i in range(len(verts) - 1):
            a, b = verts[i], verts[i + 1]
            for c in _subdivide_1d(a[coord], b[coord], self._cuts_between(a[coord], b[coord])):
                t = (c - a[coord]) / (b[coord] - a[coord])
                out.append(self._map(lerp(a, b, t)))
            out.append(self._map(b))
        return out

    def inverse(self):
        return StripShear(self.axis, self.center, self.halfwidth, -self.direction)


class ProfileShear(PLMap):
    """Shear (x, y) -> (x, y + d(x)) (axis "x") or (x + d(y), y) (axis "y")
    for a 1-periodic piecewise-linear d given by breakpoints on [0, 1).

    Used for small general-position perturbations; zeros of d pin chosen
    horizontal/vertical lines (punctures, basepoint), so the shear is
    isotopic to the identity relative to those points.
    """

    def __init__(self, axis, breakpoints):
        if axis not in ("x", "y"):
            raise ValueError("axis must be 'x' or 'y'")
        self.axis = axis
        bps = sorted((Q(c), Q(v)) for c, v in breakpoints)
        if not bps or any(not 0 <= c < 1 for c, _ in bps):
            raise ValueError("breakpoints must lie in [0,1)")
        self.bps = bps

    @classmethod
    def from_zeros(cls, axis, zeros, delta, skew=Q(2, 5)):
        """Profile vanishing exactly at ``zeros`` with one peak per gap,
        placed at the ``skew`` fraction of the gap (kept off the gap
        midpoint so peaks avoid the model's special lines)."""
        zs = sorted(set(Q(z) % 1 for z in zeros))
        pts = []
        for i, z in enumerate(zs):
            pts.append((z, Q(0)))
            nxt = zs[(i + 1) % len(zs)] + (1 if i + 1 == len(zs) else 0)
            peak = z + (nxt - z) * Q(skew)
            pts.append((peak % 1, Q(delta)))
        return cls(axis, pts)

    def disp(self, c):
        cm = c % 1
        bps = self.bps
        k = len(bps)
        for i in range(k):
            c1, v1 = bps[i]
            c2, v2 = bps[(i + 1) % k] if i + 1 < k else (bps[0][0] + 1, bps[0][1])
            if c1 <= cm <= c2:
                if c1 == c2:
                    return v1
                return v1 + (v2 - v1) * (cm - c1) / (c2 - c1)
        # cm below first breakpoint: interval from last (shifted down) to first
        c1, v1 = bps[-1][0] - 1, bps[-1][1]
        c2, v2 = bps[0]
        return v1 + (v2 - v1) * (cm - c1) / (c2 - c1)

    def _map(self, p):
        if self.axis == "x":
            return (p[0], p[1] + self.disp(p[0]))
        return (p[0] + self.disp(p[1]), p[1])

    def apply_point(self, p):
        return self._map(p)

    def apply_polyline(self, verts):
        coord = 0 if self.axis == "x" else 1
        out = [self._map(verts[0])]
        for i in range(len(verts) - 1):
            a, b = verts[i], verts[i + 1]
            lo, hi = min(a[coord], b[coord]), max(a[coord], b[coord])
            cuts = []
            for c, _ in self.bps:
                m = qceil(lo - c)
                while c + m < hi:
                    if lo < c + m < hi:
                        cuts.append(c + m)
                    m += 1
            for c in _subdivide_1d(a[coord], b[coord], cuts):
                t = (c - a[coord]) / (b[coord] - a[coord])
                out.append(self._map(lerp(a, b, t)))
            out.append(self._map(b))
        return out

    def inverse(self):
        return ProfileShear(self.axis, [(c, -v) for c, v in self.bps])


class ProfileStretch(ProfileShear):
    """Reparametrization (x, y) -> (x + d(x), y) (axis "x") or
    (x, y + d(y)) (axis "y") for a 1-periodic piecewise-linear d.

    Unlike a shear, this moves points transversally to the lines of
    constant axis coordinate, so it can push a curve off a vertical or
    horizontal line while zeros of d pin chosen lines in place.  The
    profile slopes must stay above -1 so the map is a homeomorphism.
    """

    def __init__(self, axis, breakpoints):
        super().__init__(axis, breakpoints)
        k = len(self.bps)
        for i in range(k):
            c1, v1 = self.bps[i]
            c2, v2 = self.bps[(i + 1) % k] if i + 1 < k else (self.bps[0][0] + 1, self.bps[0][1])
            if c1 < c2 and (v2 - v1) / (c2 - c1) <= -1:
                raise ValueError("stretch profile slope must exceed -1")

    def _map(self, p):
        if self.axis == "x":
            return (p[0] + self.disp(p[0]), p[1])
        return (p[0], p[1] + self.disp(p[1]))

    def inverse(self):
        return ProfileStretch(self.axis, [((c + v) % 1, -v) for c, v in self.bps])


class PiecewiseAffine(PLMap):
    """Homeomorphism that is affine on each cell of a polygonal subdivision
    of a bounded support, the identity elsewhere, extended Z^2-periodically.

    ``pieces`` is a list of (convex CCW polygon, AffineMap).  Adjacent
    pieces must agree on shared edges (guaranteed by the constructions
    below, not re-checked here).
    """

    def __init__(self, pieces):
        self.pieces = [(polygon_ccw(list(poly)), m) for poly, m in pieces]
        self.pboxes = [bbox(poly) for poly, _ in self.pieces]
        xs = [b for bb in self.pboxes for b in (bb[0], bb[2])]
        ys = [b for bb in self.pboxes for b in (bb[1], bb[3])]
        self.support = (min(xs), min(ys), max(xs), max(ys))

    def _translates(self, box):
        sx0, sy0, sx1, sy1 = self.support
        for mx in range(qceil(box[0] - sx1), qfloor(box[2] - sx0) + 1):
            for my in range(qceil(box[1] - sy1), qfloor(box[3] - sy0) + 1):
                yield (Q(mx), Q(my))

    def _locate(self, p):
        box = (p[0], p[1], p[0], p[1])
        for tv in self._translates(box):
            q = (p[0] - tv[0], p[1] - tv[1])
            for (poly, m), pb in zip(self.pieces, self.pboxes):
                if pb[0] <= q[0] <= pb[2] and pb[1] <= q[1] <= pb[3]:
                    if point_in_convex(q, poly):
                        return m, tv
        return None, None

    def apply_point(self, p):
        m, tv = self._locate(p)
        if m is None:
            return p
        q = m.apply((p[0] - tv[0], p[1] - tv[1]))
        return (q[0] + tv[0], q[1] + tv[1])

    def apply_polyline(self, verts):
        out = [self.apply_point(verts[0])]
        for i in range(len(verts) - 1):
            a, b = verts[i], verts[i + 1]
            sbox = bbox([a, b])
            params = set()
            for tv in self._translates(sbox):
                a2 = (a[0] - tv[0], a[1] - tv[1])
                b2 = (b[0] - tv[0], b[1] - tv[1])
                s2box = bbox([a2, b2])
                for (poly, _), pb in zip(self.pieces, self.pboxes):
                    if not bbox_overlap(s2box, pb):
                        continue
                    k = len(poly)
                    for j in range(k):
                        e1, e2 = poly[j], poly[(j + 1) % k]
                        res = seg_intersection(a2, b2, e1, e2)
                        if res is None:
                            continue
                        if res[0] == "point":
                            params.add(res[1])
                        else:  # collinear overlap: cut at edge endpoints
                            for e in (e1, e2):
                                t = _param_of(a2, b2, e)
                                if t is not None and 0 < t < 1:
                                    params.add(t)
            cuts = sorted(t for t in params if 0 < t < 1)
            prev_t = Q(0)
            prev_p = a
            for t in cuts + [Q(1)]:
                cur_p = lerp(a, b, t) if t < 1 else b
                mid = lerp(prev_p, cur_p, Q(1, 2))
                m, tv = self._locate(mid)
                if m is None:
                    out.append(cur_p)
                else:
                    q = m.apply((cur_p[0] - tv[0], cur_p[1] - tv[1]))
                    out.append((q[0] + tv[0], q[1] + tv[1]))
                prev_t, prev_p = t, cur_p
        return out

    def inverse(self):
        inv = []
        for poly, m in self.pieces:
            inv.append(([m.apply(p) for p in poly], m.inverse()))
        return PiecewiseAffine(inv)


def _param_of(a, b, p):
    d = sub(b, a)
    if d[0] != 0:
        return (p[0] - a[0]) / d[0]
    if d[1] != 0:
        return (p[1] - a[1]) / d[1]
    return None


class Composite(PLMap):
    def __init__(self, maps):
        self.maps = list(maps)  # applied first-to-last

    def apply_point(self, p):
        for m in self.maps:
            p = m.apply_point(p)
        return p

    def apply_polyline(self, verts):
        for m in self.maps:
            verts = m.apply_polyline(verts)
        return verts

    def inverse(self):
        return Composite([m.inverse() for m in reversed(self.maps)])


def _rect_corner(w, h, theta):
    """PL parametrization of the rectangle boundary [-w,w] x [-h,h].

    theta runs over R mod 8 with corners at even integers:
    q(0)=(w,-h), q(2)=(w,h), q(4)=(-w,h), q(6)=(-w,-h); CCW, q(t+4)=-q(t).
    """
    corners = [(w, -h), (w, h), (-w, h), (-w, -h)]
    t = theta % 8
    i = t // 2  # which side
    fr = (t - 2 * i) / 2
    a = corners[int(i) % 4]
    b = corners[(int(i) + 1) % 4]
    return (a[0] + (b[0] - a[0]) * fr, a[1] + (b[1] - a[1]) * fr)


def rect_twist(center, w, h, u0, u1, half_turns, direction):
    """Twist supported on the rectangle annulus between the boxes
    center + u0*[-w,w]x[-h,h] and center + u1*[-w,w]x[-h,h].

    half_turns=1 is the half twist: the inner box maps by the antipodal
    map z -> 2*center - z (exchanging the two marked points inside) and
    the annulus interpolates by a flat shear.  half_turns=2 is the full
    Dehn twist about the rectangle boundary: identity inside.
    """
    cx, cy = Q(center[0]), Q(center[1])
    w, h, u0, u1 = Q(w), Q(h), Q(u0), Q(u1)
    shift = Q(4 * half_turns * direction)

    def flat_to_plane_vertex(theta, u):
        qx, qy = _rect_corner(w, h, theta)
        return (cx + u * qx, cy + u * qy)

    # shear of the flat annulus coordinates (theta, u)
    S = AffineMap(1, -shift / (u1 - u0), 0, 1, shift * u1 / (u1 - u0), 0)
    S_inv = S.inverse()

    pieces = []
    for i in range(4):
        # one cell per rectangle side: the boundary parametrization is
        # affine on [2i, 2i+2], so side-sized triangles stay affine
        t0, t1 = Q(2 * i), Q(2 * i + 2)
        quads = [
            [(t0, u0), (t1, u0), (t1, u1)],
            [(t0, u0), (t1, u1), (t0, u1)],
        ]
        for tri in quads:
            plane_tri = [flat_to_plane_vertex(t, u) for t, u in tri]
            A_src = AffineMap.from_triangles(tri, plane_tri)
            A_src_inv = A_src.inverse()
            img = [S.apply(p) for p in tri]
            thetas = [p[0] for p in img]
            t_min, t_max = min(thetas), max(thetas)
            lo_k = qfloor((t_min - 8) / 8)
            hi_k = qceil(t_max / 8)
            for k in range(lo_k, hi_k + 1):
                off = Q(8 * k)
                for j in range(4):
                    # skip target cells disjoint from the image in theta
                    s0, s1 = Q(2 * j) + off, Q(2 * j + 2) + off
                    if s0 >= t_max or s1 <= t_min:
                        continue
                    tgt_tris = [
                        [(s0, u0), (s1, u0), (s1, u1)],
                        [(s0, u0), (s1, u1), (s0, u1)],
                    ]
                    for tt in tgt_tris:
                        X = clip_convex(img, tt)
                        if len(X) < 3 or signed_area2([p for p in X]) == 0:
                            continue
                        base_tt = [(t - off, u) for t, u in tt]
                        plane_tt = [flat_to_plane_vertex(t, u) for t, u in base_tt]
                        A_tgt = AffineMap.from_triangles(base_tt, plane_tt)
                        M = (
                            A_tgt.compose(AffineMap.translation((-off, 0)))
                            .compose(S)
                            .compose(A_src_inv)
                        )
                        src_poly = [A_src.apply(S_inv.apply(p)) for p in X]
                        pieces.append((src_poly, M))
    inner = [
        (cx - u0 * w, cy - u0 * h),
        (cx + u0 * w, cy - u0 * h),
        (cx + u0 * w, cy + u0 * h),
        (cx - u0 * w, cy + u0 * h),
    ]
    if half_turns % 2:
        inner_map = AffineMap(-1, 0, 0, -1, 2 * cx, 2 * cy)
    else:
        inner_map = AffineMap.identity()
    pieces.append((inner, inner_map))
    return PiecewiseAffine(pieces)
