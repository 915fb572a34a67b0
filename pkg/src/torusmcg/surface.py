"""Flat model of the n-punctured torus with exact-rational curves.

The torus is R^2/Z^2; punctures sit at p_k = ((2k-1)/(2n), 1/2).  A curve
is stored as a lifted polyline in R^2: a loop closes up to an integer
translation (its homology class), an arc runs between puncture lifts.

The cut system is the square's edge circles (x = 0 and y = 0) together
with the vertical slit from each puncture to the top edge.  Its
complement is a disk, so the crossing sequence of a loop against the
cuts determines its pi_1 word through a fixed dictionary.
"""

from . import freegroup as fg
from .geometry import (
    Q,
    add,
    bbox,
    bbox_overlap,
    cross,
    lerp,
    point_on_segment,
    qceil,
    qfloor,
    seg_intersection,
    sub,
    winding_number,
)
from .plmaps import Composite, ProfileShear, ProfileStretch


class DegeneratePosition(Exception):
    """Non-transverse configuration; retry after a perturbation."""


class Curve:
    """Polyline curve on a TorusModel, stored as a lift to the plane."""

    def __init__(self, model, kind, verts, ends=None):
        if kind not in ("loop", "arc"):
            raise ValueError("kind must be 'loop' or 'arc'")
        self.model = model
        self.kind = kind
        self.verts = [(Q(x), Q(y)) for x, y in verts]
        if len(self.verts) < 2:
            raise ValueError("need at least one segment")
        self.ends = ends
        if kind == "loop":
            per = sub(self.verts[-1], self.verts[0])
            if per[0].denominator != 1 or per[1].denominator != 1:
                raise ValueError("loop lift must close up to an integer vector")
        else:
            if ends is None or len(ends) != 2:
                raise ValueError("arc needs (start, end) puncture indices")
            for v, k in ((self.verts[0], ends[0]), (self.verts[-1], ends[1])):
                d = sub(v, model.puncture(k))
                if d[0].denominator != 1 or d[1].denominator != 1:
                    raise ValueError("arc endpoint is not a lift of its puncture")

    def period(self):
        return sub(self.verts[-1], self.verts[0])

    @property
    def nsegs(self):
        return len(self.verts) - 1

    def segments(self):
        return list(zip(self.verts[:-1], self.verts[1:]))

    def with_verts(self, verts):
        return Curve(self.model, self.kind, verts, self.ends)

    def translated(self, tv):
        return self.with_verts([add(v, tv) for v in self.verts])

    def reversed_(self):
        ends = (self.ends[1], self.ends[0]) if self.ends else None
        return Curve(self.model, self.kind, list(reversed(self.verts)), ends)

    def simplified(self):
        """Drop zero-length segments and merge collinear forward runs."""
        vs = []
        for v in self.verts:
            if not vs or vs[-1] != v:
                vs.append(v)
        if len(vs) < 2:
            vs = self.verts[:2]
        out = [vs[0]]
        for v in vs[1:]:
            while len(out) >= 2:
                d1 = sub(out[-1], out[-2])
                d2 = sub(v, out[-1])
                if cross(d1, d2) == 0 and d1[0] * d2[0] + d1[1] * d2[1] > 0:
                    out.pop()
                else:
                    break
            out.append(v)
        return self.with_verts(out)

    def vertex_lift(self, i):
        m = self.nsegs
        if 0 <= i <= m:
            return self.verts[i]
        if self.kind != "loop":
            raise IndexError("vertex index out of range for an arc")
        k, r = divmod(i, m)
        per = self.period()
        return add(self.verts[r], (per[0] * k, per[1] * k))

    def point_at(self, s):
        s = Q(s)
        m = self.nsegs
        shift = (Q(0), Q(0))
        if self.kind == "loop":
            k = qfloor(s / m)
            if k != 0:
                per = self.period()
                shift = (per[0] * k, per[1] * k)
                s -= k * m
        elif not 0 <= s <= m:
            raise ValueError("parameter outside arc")
        i = min(qfloor(s), m - 1)
        p = lerp(self.verts[i], self.verts[i + 1], s - i)
        return add(p, shift)

    def subarc(self, s1, s2):
        """Lifted subpath for parameters s1 < s2 (wrapping allowed on loops)."""
        s1, s2 = Q(s1), Q(s2)
        if not s1 < s2:
            raise ValueError("need s1 < s2")
        pts = [self.point_at(s1)]
        i = qfloor(s1) + 1
        while i < s2:
            v = self.vertex_lift(i)
            if pts[-1] != v:
                pts.append(v)
            i += 1
        p = self.point_at(s2)
        if pts[-1] != p:
            pts.append(p)
        return pts

    def rebased(self, map_obj):
        return self.with_verts(map_obj.apply_polyline(self.verts))

    def __repr__(self):
        return "Curve(%s, %d segments)" % (self.kind, self.nsegs)


class TorusModel:
    """The n-punctured square torus with its cut system and standard curves."""

    def __init__(self, n):
        if n < 2:
            raise ValueError("need at least two punctures")
        self.n = n
        self.slit_x = [Q(2 * k - 1, 2 * n) for k in range(1, n + 1)]
        self.punctures = [(x, Q(1, 2)) for x in self.slit_x]
        # basepoint for pi_1, chosen off the cut system and all twist supports
        self.basepoint = (Q(1, 16 * n), Q(1, 8))
        self.alphabet = fg.Alphabet(n)
        self._peripheral = None
        # complement-is-a-disk check: cell structure has 1+2n vertices
        # (corner, slit tops, punctures), 2n+2 edges (x-circle; n+1 arcs of
        # the y-circle; n slits), one face; Euler characteristic must vanish.
        assert (1 + 2 * n) - (2 * n + 2) + 1 == 0

    def puncture(self, k):
        if not 1 <= k <= self.n:
            raise ValueError("puncture index out of range")
        return self.punctures[k - 1]

    # ---- standard curves -------------------------------------------------

    def curve_A(self):
        return Curve(self, "loop", [(Q(0), Q(1, 4)), (Q(1), Q(1, 4))])

    def curve_B(self, k):
        if not 1 <= k <= self.n:
            raise ValueError("index out of range")
        x = Q(0) if k == self.n else Q(k, self.n)
        return Curve(self, "loop", [(x, Q(0)), (x, Q(1))])

    def base_arc(self, k):
        """The straight midline arc ARC_k(-1) from p_k to p_{k+1 mod n}."""
        if not 1 <= k <= self.n:
            raise ValueError("index out of range")
        a = self.punctures[k - 1]
        if k < self.n:
            b = self.punctures[k]
            ends = (k, k + 1)
        else:
            b = add(self.punctures[0], (Q(1), Q(0)))
            ends = (self.n, 1)
        return Curve(self, "arc", [a, b], ends)

    def based_loop(self, letter):
        """Based representative of generator `letter` (1 = A, 1+i = B_i)."""
        b = self.basepoint
        if letter == 1:
            return Curve(self, "loop", [b, add(b, (Q(1), Q(0)))])
        i = letter - 1
        if i == self.n:
            return Curve(self, "loop", [b, add(b, (Q(0), Q(1)))])
        x = Q(i, self.n)
        return Curve(
            self,
            "loop",
            [b, (x, b[1]), (x, b[1] + 1), (b[0], b[1] + 1)],
        )

    def peripheral_loop(self, k):
        """Based loop going counterclockwise once around puncture k."""
        b = self.basepoint
        x = self.slit_x[k - 1]
        r = Q(1, 8 * self.n)
        y0 = Q(1, 2) - r
        y1 = Q(1, 2) + r
        return Curve(
            self,
            "loop",
            [
                b,
                (x, b[1]),
                (x, y0),
                (x + r, y0),
                (x + r, y1),
                (x - r, y1),
                (x - r, y0),
                (x, y0),
                (x, b[1]),
                b,
            ],
        )

    def peripheral_structure(self):
        """Traced peripheral words, computed once per model."""
        if self._peripheral is None:
            words = [
                trace_based_word(self, self.peripheral_loop(k))
                for k in range(1, self.n + 1)
            ]
            self._peripheral = fg.PeripheralStructure(words)
        return self._peripheral


# ---- tracing loops to pi_1 words ------------------------------------------


def _slit_word(model, k, eastward):
    """Dictionary word for crossing slit k eastward (derived once from the
    cut-graph vertex relations; see module docstring)."""
    n = model.n
    if k == 1:
        w = (n + 1, -2)
    elif k < n:
        w = (k, -(k + 1))
    else:
        w = (n, 1, -(n + 1), -1)
    return w if eastward else fg.invert_word(w)


def _harc_word(model, x_frac, upward):
    n = model.n
    j = sum(1 for s in model.slit_x if s < x_frac)
    if j == 0:
        w = (n + 1,)
    elif j < n:
        w = (j + 1,)
    else:
        w = (1, n + 1, -1)
    return w if upward else fg.invert_word(w)


def _trace_events(model, curve):
    """Crossing events (seg index, parameter, word) against the cut system.

    Raises DegeneratePosition when the polyline touches a cut
    tangentially, at a vertex, or at a cut-graph vertex.
    """
    events = []
    for i, (a, b) in enumerate(curve.segments()):
        dx = b[0] - a[0]
        dy = b[1] - a[1]
        # the circle x = 0 (all integer lifts)
        if dx == 0:
            if a[0].denominator == 1:
                raise DegeneratePosition("segment runs along the x-cut")
        else:
            lo, hi = (a[0], b[0]) if a[0] < b[0] else (b[0], a[0])
            m = qceil(lo)
            while m <= qfloor(hi):
                t = (m - a[0]) / dx
                if t == 0 or t == 1:
                    raise DegeneratePosition("vertex on the x-cut")
                y = a[1] + dy * t
                if y.denominator == 1:
                    raise DegeneratePosition("crossing at the cut corner")
                events.append((i, t, (1,) if dx > 0 else (-1,)))
                m += 1
        # the circle y = 0
        if dy == 0:
            if a[1].denominator == 1:
                raise DegeneratePosition("segment runs along the y-cut")
        else:
            lo, hi = (a[1], b[1]) if a[1] < b[1] else (b[1], a[1])
            m = qceil(lo)
            while m <= qfloor(hi):
                t = (m - a[1]) / dy
                if t == 0 or t == 1:
                    raise DegeneratePosition("vertex on the y-cut")
                x = a[0] + dx * t
                xf = x - qfloor(x)
                if xf == 0:
                    raise DegeneratePosition("crossing at the cut corner")
                if xf in model.slit_x:
                    raise DegeneratePosition("crossing at a slit top")
                events.append((i, t, _harc_word(model, xf, dy > 0)))
                m += 1
        # the slits x = slit_x[k] + mx, y in [1/2 + my, 1 + my]
        ylo, yhi = (a[1], b[1]) if a[1] < b[1] else (b[1], a[1])
        if dx == 0:
            xf = a[0] - qfloor(a[0])
            if xf in model.slit_x:
                for my in range(qfloor(ylo) - 1, qfloor(yhi) + 2):
                    if ylo < my + 1 and yhi > my + Q(1, 2):
                        raise DegeneratePosition("segment runs along a slit")
            continue
        xlo, xhi = (a[0], b[0]) if a[0] < b[0] else (b[0], a[0])
        for k in range(1, model.n + 1):
            sx = model.slit_x[k - 1]
            mx = qceil(xlo - sx)
            while sx + mx <= xhi:
                t = (sx + mx - a[0]) / dx
                if 0 <= t <= 1:
                    y = a[1] + dy * t
                    my = qfloor(y - Q(1, 2))
                    if Q(1, 2) + my <= y <= 1 + my:
                        if y == Q(1, 2) + my:
                            raise ValueError("curve passes through a puncture")
                        if y == 1 + my:
                            raise DegeneratePosition("crossing at a slit top")
                        if t == 0 or t == 1:
                            raise DegeneratePosition("vertex on a slit")
                        events.append((i, t, _slit_word(model, k, dx > 0)))
                mx += 1
    events.sort(key=lambda e: (e[0], e[1]))
    word = []
    for _, _, w in events:
        word.extend(w)
    return fg.reduce_word(word)


def _trace_jiggle(model, attempt, pin_basepoint):
    zeros_x = list(model.slit_x)
    zeros_y = [Q(1, 2)]
    if pin_basepoint:
        zeros_x.append(model.basepoint[0])
        zeros_y.append(model.basepoint[1])
    delta = Q(1, 101 * 3**attempt)
    # Peak placement within each gap: kept away from 1/2 so profile
    # breakpoints never land on the cut circles or slit lines, and varied
    # with the attempt so repeated perturbations differ.
    skews = [Q(2, 5), Q(3, 7), Q(2, 7), Q(4, 9), Q(3, 11), Q(5, 13), Q(4, 13)]
    skew = skews[attempt % len(skews)]
    return Composite(
        [
            ProfileStretch("x", ProfileShear.from_zeros("x", zeros_x, delta / 3, skew).bps),
            ProfileStretch("y", ProfileShear.from_zeros("y", zeros_y, delta / 4, skew).bps),
            ProfileShear.from_zeros("x", zeros_x, delta, skew),
            ProfileShear.from_zeros("y", zeros_y, delta / 2, skew),
        ]
    )


def _traced_word(model, curve, pin_basepoint):
    cur = curve
    for attempt in range(14):
        try:
            return _trace_events(model, cur)
        except DegeneratePosition:
            cur = curve.rebased(_trace_jiggle(model, attempt, pin_basepoint))
    raise RuntimeError("tracing failed: perturbation schedule exhausted")


def word_of_loop(curve):
    """Conjugacy class of a loop in pi_1, as a canonical cyclic word."""
    if curve.kind != "loop":
        raise ValueError("word_of_loop takes a loop")
    return fg.canonical_cycle(_traced_word(curve.model, curve, False))


def trace_based_word(model, curve):
    """Reduced pi_1 word of a loop based at the model basepoint."""
    if curve.kind != "loop" or curve.verts[0] != model.basepoint:
        raise ValueError("curve is not based at the model basepoint")
    return _traced_word(model, curve, True)


# ---- transverse position and crossings ------------------------------------


def _segment_bboxes(curve):
    return [bbox([a, b]) for a, b in curve.segments()]


def _is_terminal(curve, i, t):
    if curve.kind != "arc":
        return False
    return (i == 0 and t == 0) or (i == curve.nsegs - 1 and t == 1)


def all_crossings(alpha, beta):
    """Transverse crossings as (s_alpha, s_beta, point, translate) records.

    The beta lift translated by `translate` passes through `point`.
    Shared arc endpoints at punctures are skipped; any other boundary or
    tangential contact raises DegeneratePosition.
    """
    crossings = []
    asegs = alpha.segments()
    bsegs = beta.segments()
    aboxes = _segment_bboxes(alpha)
    bboxes_ = _segment_bboxes(beta)
    for i, (a1, a2) in enumerate(asegs):
        ab = aboxes[i]
        for j, (b1, b2) in enumerate(bsegs):
            bb = bboxes_[j]
            for mx in range(qceil(ab[0] - bb[2]), qfloor(ab[2] - bb[0]) + 1):
                for my in range(qceil(ab[1] - bb[3]), qfloor(ab[3] - bb[1]) + 1):
                    tv = (Q(mx), Q(my))
                    res = seg_intersection(a1, a2, add(b1, tv), add(b2, tv))
                    if res is None:
                        continue
                    if res[0] == "overlap":
                        raise DegeneratePosition("collinear overlap")
                    _, t, u, P = res
                    a_term = _is_terminal(alpha, i, t)
                    b_term = _is_terminal(beta, j, u)
                    if a_term and b_term:
                        continue  # shared puncture endpoint: never a crossing
                    if t in (0, 1) or u in (0, 1):
                        raise DegeneratePosition("crossing at a vertex")
                    crossings.append((i + t, j + u, P, tv))
    crossings.sort(key=lambda c: (c[0], c[1]))
    return crossings


def general_position(alpha, beta, max_attempts=14):
    """Perturb beta by shears from a fixed schedule until transverse.

    Returns (alpha, beta', crossings); the shears fix every puncture, so
    the isotopy class of beta is preserved.
    """
    if alpha.model is not beta.model:
        raise ValueError("curves live on different models")
    model = alpha.model
    cur = beta
    for attempt in range(max_attempts):
        try:
            return alpha, cur, all_crossings(alpha, cur)
        except DegeneratePosition:
            cur = beta.rebased(_trace_jiggle(model, attempt, False))
    raise RuntimeError("general_position: perturbation schedule exhausted")


# ---- embeddedness / curve hygiene ------------------------------------------


def _self_crossings(curve):
    """Proper self-crossings of the projected curve, as (s1, s2, P, tv)."""
    segs = curve.segments()
    boxes = _segment_bboxes(curve)
    per = curve.period() if curve.kind == "loop" else None
    out = []
    m = len(segs)
    for i in range(m):
        a1, a2 = segs[i]
        for j in range(i, m):
            b1, b2 = segs[j]
            for mx in range(qceil(boxes[i][0] - boxes[j][2]), qfloor(boxes[i][2] - boxes[j][0]) + 1):
                for my in range(qceil(boxes[i][1] - boxes[j][3]), qfloor(boxes[i][3] - boxes[j][1]) + 1):
                    tv = (Q(mx), Q(my))
                    if i == j and tv == (0, 0):
                        continue
                    if i == j:
                        # parallel translates: only the periodic junction of a
                        # loop with its own continuation may touch
                        res = seg_intersection(a1, a2, add(b1, tv), add(b2, tv))
                        if res is None:
                            continue
                        if (
                            per is not None
                            and res[0] == "point"
                            and (
                                (tv == per and res[1] == 1 and res[2] == 0)
                                or (tv == (-per[0], -per[1]) and res[1] == 0 and res[2] == 1)
                            )
                        ):
                            continue
                        raise DegeneratePosition("segment touches its translate")
                    res = seg_intersection(a1, a2, add(b1, tv), add(b2, tv))
                    if res is None:
                        continue
                    if res[0] == "overlap":
                        raise DegeneratePosition("self-overlap")
                    _, t, u, P = res
                    consecutive = (j == i + 1 and tv == (0, 0) and t == 1 and u == 0)
                    wrap = (
                        per is not None
                        and i == 0
                        and j == m - 1
                        and tv == (-per[0], -per[1])
                        and t == 0
                        and u == 1
                    )
                    if consecutive or wrap:
                        continue
                    if t in (0, 1) or u in (0, 1):
                        raise DegeneratePosition("self-touch at a vertex")
                    out.append((i + t, j + u, P, tv))
    return out


def is_embedded(curve):
    try:
        return not _self_crossings(curve)
    except DegeneratePosition:
        return False


def curve_avoids_punctures(curve):
    """Interior of the curve avoids every puncture lift."""
    model = curve.model
    endpoints = (curve.verts[0], curve.verts[-1]) if curve.kind == "arc" else ()
    for a, b in curve.segments():
        box = bbox([a, b])
        for p in model.punctures:
            for mx in range(qceil(box[0] - p[0]), qfloor(box[2] - p[0]) + 1):
                for my in range(qceil(box[1] - p[1]), qfloor(box[3] - p[1]) + 1):
                    q = add(p, (Q(mx), Q(my)))
                    if q in endpoints:
                        continue
                    if point_on_segment(q, a, b):
                        return False
    return True


# ---- bigon detection and removal -------------------------------------------


def _loop_is_clean_disk_boundary(model, L, skip_vertex=None):
    """Exact checks that closed polyline L bounds an embedded puncture-free
    disk on the torus: simple, simple across translates, zero winding
    around every puncture lift near it."""
    m = len(L)
    if m < 3:
        return False
    # simple in the plane
    for i in range(m):
        a1, a2 = L[i], L[(i + 1) % m]
        for j in range(i + 1, m):
            if j == i + 1 or (i == 0 and j == m - 1):
                continue
            res = seg_intersection(a1, a2, L[j], L[(j + 1) % m])
            if res is not None:
                return False
    # simple on the torus
    box = bbox(L)
    for mx in range(qceil(box[0] - box[2]), qfloor(box[2] - box[0]) + 1):
        for my in range(qceil(box[1] - box[3]), qfloor(box[3] - box[1]) + 1):
            tv = (Q(mx), Q(my))
            if tv == (0, 0):
                continue
            Lt = [add(p, tv) for p in L]
            if not bbox_overlap(box, bbox(Lt)):
                continue
            for i in range(m):
                for j in range(m):
                    if seg_intersection(L[i], L[(i + 1) % m], Lt[j], Lt[(j + 1) % m]):
                        return False
    # no puncture inside
    for p in model.punctures:
        for mx in range(qfloor(box[0] - p[0]), qceil(box[2] - p[0]) + 1):
            for my in range(qfloor(box[1] - p[1]), qceil(box[3] - p[1]) + 1):
                q = add(p, (Q(mx), Q(my)))
                if skip_vertex is not None and q == skip_vertex:
                    continue
                on_boundary = any(
                    point_on_segment(q, L[i], L[(i + 1) % m]) for i in range(m)
                )
                if on_boundary:
                    return False
                if winding_number(L, q) != 0:
                    return False
    return True


def _find_bigon(alpha, beta, crossings):
    """Innermost bigon between alpha and beta, if any.

    Returns (sa1, sa2, subB) where alpha's parameter interval [sa1,sa2]
    (sa2 may exceed nsegs for a wrapping loop) and the translated beta
    subpath subB (running from alpha.point_at(sa1) to alpha.point_at(sa2))
    bound a puncture-free disk.
    """
    m = len(crossings)
    if m < 2:
        return None
    by_a = sorted(crossings, key=lambda c: c[0])
    by_b = sorted(crossings, key=lambda c: c[1])
    rank_b = {id(c): r for r, c in enumerate(by_b)}
    n_pairs = m if alpha.kind == "loop" else m - 1
    mb = beta.nsegs
    for idx in range(n_pairs):
        c1 = by_a[idx]
        c2 = by_a[(idx + 1) % m]
        sa1 = c1[0]
        sa2 = c2[0] if idx + 1 < m else c2[0] + alpha.nsegs
        if sa1 == sa2:
            continue
        r1, r2 = rank_b[id(c1)], rank_b[id(c2)]
        if abs(r1 - r2) == 1:
            lo, hi = (c1, c2) if c1[1] < c2[1] else (c2, c1)
            sub = beta.subarc(lo[1], hi[1])
            ends = (lo, hi)
        elif beta.kind == "loop" and {r1, r2} == {0, m - 1} and m > 2:
            lo, hi = (c1, c2) if c1[1] > c2[1] else (c2, c1)  # lo has larger s_b
            sub = beta.subarc(lo[1], hi[1] + mb)
            ends = (lo, hi)
        else:
            continue
        P1 = alpha.point_at(sa1)
        P2 = alpha.point_at(sa2)
        # sub[0] sits at crossing `lo`; align the beta subpath to run P1 -> P2
        lo = ends[0]
        tgt1, tgt2 = (P1, P2) if lo is c1 else (P2, P1)
        u = (tgt1[0] - sub[0][0], tgt1[1] - sub[0][1])
        if add(sub[-1], u) != tgt2:
            continue
        subB = [add(p, u) for p in sub]
        if lo is c2:
            subB = list(reversed(subB))
        L = alpha.subarc(sa1, sa2)[:-1] + list(reversed(subB))[:-1]
        if _loop_is_clean_disk_boundary(alpha.model, L):
            return (sa1, sa2, subB)
    return None


def _find_half_bigon(alpha, beta, crossings):
    """Puncture-anchored bigon between two arcs sharing an endpoint.

    Returns (a_end, s_land, subB) where a_end selects alpha's endpoint,
    the crossing is at parameter base, and subB runs from the shared
    puncture lift (alpha's endpoint) to the crossing point on alpha.
    """
    if alpha.kind != "arc" or beta.kind != "arc" or not crossings:
        return None
    by_a = sorted(crossings, key=lambda c: c[0])
    by_b = sorted(crossings, key=lambda c: c[1])
    for a_end in (0, 1):
        c = by_a[0] if a_end == 0 else by_a[-1]
        Pa = alpha.verts[0] if a_end == 0 else alpha.verts[-1]
        for b_end in (0, 1):
            cb = by_b[0] if b_end == 0 else by_b[-1]
            if cb is not c:
                continue
            Pb = beta.verts[0] if b_end == 0 else beta.verts[-1]
            if add(Pb, c[3]) != Pa:
                continue
            # beta subpath from its end to the crossing, translated to alpha
            if b_end == 0:
                sub = beta.subarc(Q(0), c[1])
            else:
                sub = list(reversed(beta.subarc(c[1], beta.nsegs)))
            subB = [add(p, c[3]) for p in sub]  # runs Pa -> P
            if a_end == 0:
                apath = alpha.subarc(Q(0), c[0])
            else:
                apath = list(reversed(alpha.subarc(c[0], alpha.nsegs)))
            L = apath[:-1] + list(reversed(subB))[:-1]
            if _loop_is_clean_disk_boundary(alpha.model, L, skip_vertex=Pa):
                return (a_end, c[0], subB)
    return None


def offset_polyline(pts, side, eps):
    """Polyline pushed off to one side by about eps, with mitered corners."""
    offs = []
    for a, b in zip(pts[:-1], pts[1:]):
        d = sub(b, a)
        scale_ = eps / max(abs(d[0]), abs(d[1]))
        offs.append((-d[1] * scale_ * side, d[0] * scale_ * side))
    out = [add(pts[0], offs[0])]
    for i in range(1, len(pts) - 1):
        v = pts[i]
        o1, o2 = offs[i - 1], offs[i]
        for p in (add(v, o1), add(v, add(o1, o2)), add(v, o2)):
            if out[-1] != p:
                out.append(p)
    p = add(pts[-1], offs[-1])
    if out[-1] != p:
        out.append(p)
    return out


def _candidate_after_bigon(alpha, sa1, sa2, subB, side, eps):
    """Alpha with its [sa1, sa2] subpath replaced by a push-off of subB."""
    s1m = sa1 - eps
    s2p = sa2 + eps
    m = alpha.nsegs
    off = offset_polyline(subB, side, eps)
    if alpha.kind == "loop":
        if s2p - s1m >= m:
            return None
        keep = alpha.subarc(s2p, s1m + m)  # from A2 around to A1 + per
        per = alpha.period()
        tail = [add(p, per) for p in off] + [add(keep[0], per)]
        return alpha.with_verts(_dedupe(keep + tail)).simplified()
    if s1m < 0 or s2p > m:
        return None
    verts = _dedupe(alpha.subarc(Q(0), s1m) + off + alpha.subarc(s2p, Q(m)))
    return alpha.with_verts(verts).simplified()


def _candidate_after_half_bigon(alpha, a_end, s_cross, subB, side, eps):
    m = alpha.nsegs
    off = offset_polyline(subB, side, eps)
    if a_end == 0:
        s_land = s_cross + eps
        if s_land >= m:
            return None
        verts = _dedupe([alpha.verts[0]] + off + alpha.subarc(s_land, Q(m)))
    else:
        s_land = s_cross - eps
        if s_land <= 0:
            return None
        verts = _dedupe(
            alpha.subarc(Q(0), s_land) + list(reversed(off)) + [alpha.verts[-1]]
        )
    return alpha.with_verts(verts).simplified()


def _dedupe(pts):
    out = []
    for p in pts:
        if not out or out[-1] != p:
            out.append(p)
    return out


def _params_clear(crossings, lo, hi, exclude):
    for c in crossings:
        if c in exclude:
            continue
        if lo <= c[0] <= hi:
            return False
    return True


def _surgery(alpha, beta, crossings, expected):
    """Remove one innermost (half-)bigon; returns (alpha', crossings') or None."""
    big = _find_bigon(alpha, beta, crossings)
    half = None if big else _find_half_bigon(alpha, beta, crossings)
    if big is None and half is None:
        return None, crossings, False
    for k in range(10):
        eps = Q(1, 257 * 4**k)
        for side in (1, -1):
            if big is not None:
                sa1, sa2, subB = big
                cand = _candidate_after_bigon(alpha, sa1, sa2, subB, side, eps)
                drop = 2
            else:
                a_end, s_cross, subB = half
                cand = _candidate_after_half_bigon(alpha, a_end, s_cross, subB, side, eps)
                drop = 1
            if cand is None:
                continue
            if not is_embedded(cand) or not curve_avoids_punctures(cand):
                continue
            try:
                new_cr = all_crossings(cand, beta)
            except DegeneratePosition:
                continue
            if len(new_cr) == expected - drop:
                return cand, new_cr, True
    raise RuntimeError("bigon surgery failed at all scheduled precisions")


def intersection_number(alpha, beta, max_iterations=10000):
    """Geometric (minimal) intersection number of two curves.

    Puts the pair in general position, then removes innermost
    puncture-free bigons (and, for arcs sharing an endpoint,
    puncture-anchored half bigons) until none remain.
    """
    if _same_curve(alpha, beta):
        raise ValueError("intersection_number requires distinct curves")
    a0 = alpha.simplified()
    b0 = beta.simplified()
    last_error = None
    for outer in range(6):
        b1 = b0 if outer == 0 else b0.rebased(_trace_jiggle(b0.model, outer + 3, False))
        try:
            a, b, crossings = general_position(a0, b1)
        except RuntimeError as exc:
            last_error = exc
            continue
        steps = 0
        try:
            while True:
                steps += 1
                if steps > max_iterations:
                    raise RuntimeError("bigon removal exceeded the iteration cap")
                a2, crossings2, found = _surgery(a, b, crossings, len(crossings))
                if not found:
                    return len(crossings)
                a, crossings = a2, crossings2
        except RuntimeError as exc:
            last_error = exc
            continue
    raise RuntimeError("intersection_number failed: %s" % last_error)


def _same_curve(alpha, beta):
    if alpha.kind != beta.kind or len(alpha.verts) != len(beta.verts):
        return False
    d = sub(beta.verts[0], alpha.verts[0])
    if d[0].denominator != 1 or d[1].denominator != 1:
        return False
    return all(add(v, d) == w for v, w in zip(alpha.verts, beta.verts))


def minimal_representative(curve, max_iterations=100):
    """Remove exact kinks (puncture-free monogons) and redundant vertices."""
    cur = curve.simplified()
    for _ in range(max_iterations):
        try:
            selfs = _self_crossings(cur)
        except DegeneratePosition:
            raise RuntimeError("curve touches itself non-transversally")
        if not selfs:
            return cur
        selfs.sort(key=lambda c: c[1] - c[0])
        done = False
        for s1, s2, P, tv in selfs:
            if tv != (0, 0):
                continue
            sub = cur.subarc(s1, s2)
            if not _loop_is_clean_disk_boundary(cur.model, sub[:-1]):
                continue
            if cur.kind == "loop":
                keep = cur.subarc(s2, s1 + cur.nsegs)
                cand = cur.with_verts(keep).simplified()
            else:
                verts = _dedupe(cur.subarc(Q(0), s1) + cur.subarc(s2, Q(cur.nsegs)))
                cand = cur.with_verts(verts).simplified()
            cur = cand
            done = True
            break
        if not done:
            raise RuntimeError("irreducible self-intersection in minimal_representative")
    raise RuntimeError("minimal_representative exceeded the iteration cap")
