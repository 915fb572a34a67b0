"""Mapping classes of the n-punctured torus.

Generators: TY (Dehn twist along A), T_k (Dehn twist along B_k) and H_k
(half twist along the straight arc between punctures k and k+1).  Each
generator is realized as an exact piecewise-linear homeomorphism of the
flat torus, so mapping classes act on curves on the nose, and act on
pi_1 by tracing the images of based generator loops.

Words apply left-to-right: the word [g1, g2] means "do g1, then g2".
Equality of mapping classes is decided through the induced outer
automorphism together with the puncture permutation: a class is trivial
iff its automorphism is inner and the permutation is the identity.
"""

from collections import namedtuple

from . import freegroup as fg
from . import surface
from .geometry import Q, add, cross, qfloor, sub
from .plmaps import StripShear, rect_twist

# Global handedness of the positive twists, frozen by calibration against
# the twist-conjugation identity and the three-intersection disambiguation
# (see tests): flipping either constant breaks one of the two.
HANDEDNESS_T = -1
HANDEDNESS_H = 1

Prim = namedtuple("Prim", "kind index sign")  # kind: 'TY' | 'T' | 'H'


def expand_token(kind, index, sign, a=-1):
    """Primitive generator sequence (left-to-right) for one word term.

    H with degree a expands through conjugation:
    tau_{k,a} = T_k^{a+1} . H_k . T_k^{-(a+1)} as a left-to-right word.
    """
    if kind in ("TY", "T"):
        return [Prim(kind, index, sign)]
    if kind != "H":
        raise ValueError("unknown generator kind %r" % kind)
    c = a + 1
    pre = [Prim("T", index, 1 if c > 0 else -1)] * abs(c)
    post = [Prim("T", index, -1 if c > 0 else 1)] * abs(c)
    return pre + [Prim("H", index, sign)] + post


class MCGContext:
    """Per-n registry: the torus model, the generator homeomorphisms and
    their traced actions on pi_1 (computed once, cached)."""

    _instances = {}

    def __init__(self, n):
        self.n = n
        self.model = surface.TorusModel(n)
        self._maps = {}
        self._autos = {}
        self._traces = {}

    @classmethod
    def get(cls, n):
        if n not in cls._instances:
            cls._instances[n] = cls(n)
        return cls._instances[n]

    def plmap(self, prim):
        if prim in self._maps:
            return self._maps[prim]
        n = self.n
        if prim.sign == -1:
            m = self.plmap(Prim(prim.kind, prim.index, 1)).inverse()
        elif prim.kind == "TY":
            # a strip shear along "y" displaces x, which has the opposite
            # chirality to the same-direction shear along "x"; negate so
            # every Dehn twist shares one global handedness
            m = StripShear("y", Q(1, 4), Q(1, 16), -HANDEDNESS_T)
        elif prim.kind == "T":
            k = prim.index
            if k < n:
                m = StripShear("x", Q(k, n), Q(1, 4 * n), HANDEDNESS_T)
            else:
                # supported on a strip isotopic to B_n but off x = 0, so the
                # support stays clear of the basepoint and the cut corner
                m = StripShear("x", 1 - Q(1, 4 * n), Q(1, 8 * n), HANDEDNESS_T)
        elif prim.kind == "H":
            k = prim.index
            cx = Q(1) if k == n else Q(k, n)
            m = rect_twist((cx, Q(1, 2)), Q(1, 8 * n), Q(1, 48), 5, 6, 1, HANDEDNESS_H)
        else:
            raise ValueError("unknown primitive %r" % (prim,))
        self._maps[prim] = m
        return m

    def boundary_twist_map(self, k, direction):
        """Dehn twist along the boundary of the half-twist rectangle of H_k."""
        n = self.n
        cx = Q(1) if k == n else Q(k, n)
        return rect_twist((cx, Q(1, 2)), Q(1, 8 * n), Q(1, 48), 5, 6, 2, direction * HANDEDNESS_H)

    def auto(self, prim):
        """Automorphism of pi_1 induced by a primitive generator."""
        if prim not in self._autos:
            images = self._traced_images(prim)
            inv_images = self._traced_images(Prim(prim.kind, prim.index, -prim.sign))
            self._autos[prim] = fg.FreeAutomorphism(self.n + 1, images, inv_images)
        return self._autos[prim]

    def _traced_images(self, prim):
        if prim not in self._traces:
            m = self.plmap(prim)
            out = []
            for letter in range(1, self.n + 2):
                loop = self.model.based_loop(letter).rebased(m)
                out.append(surface.trace_based_word(self.model, loop))
            self._traces[prim] = out
        return self._traces[prim]

    def prim_perm(self, prim):
        perm = list(range(self.n))
        if prim.kind == "H":
            i = prim.index - 1
            j = prim.index % self.n
            perm[i], perm[j] = perm[j], perm[i]
        return tuple(perm)

    def peripheral(self):
        return self.model.peripheral_structure()


class MappingClass:
    """A word in the twist generators, with cached pi_1 data."""

    def __init__(self, ctx, prims):
        self.ctx = ctx
        self.prims = tuple(prims)
        self._outer = None

    @classmethod
    def identity(cls, ctx):
        return cls(ctx, ())

    @classmethod
    def from_terms(cls, ctx, terms):
        """terms: iterable of (kind, index, sign) or (kind, index, sign, a)."""
        prims = []
        for term in terms:
            prims.extend(expand_token(*term))
        return cls(ctx, prims)

    def compose(self, other):
        """Left-to-right: self, then other."""
        return MappingClass(self.ctx, self.prims + other.prims)

    def inverse(self):
        return MappingClass(
            self.ctx, tuple(Prim(p.kind, p.index, -p.sign) for p in reversed(self.prims))
        )

    def power(self, k):
        base = self if k >= 0 else self.inverse()
        out = MappingClass.identity(self.ctx)
        for _ in range(abs(k)):
            out = out.compose(base)
        return out

    def outer(self):
        if self._outer is None:
            aut = fg.FreeAutomorphism.identity(self.ctx.n + 1)
            for p in self.prims:
                aut = self.ctx.auto(p).compose(aut)
            self._outer = aut
        return self._outer

    def perm(self):
        perm = tuple(range(self.ctx.n))
        for p in self.prims:
            step = self.ctx.prim_perm(p)
            perm = tuple(step[x] for x in perm)
        return perm

    def act(self, curve):
        out = curve
        for p in self.prims:
            verts = self.ctx.plmap(p).apply_polyline(out.verts)
            ends = out.ends
            if ends is not None:
                # half twists swap the punctures, so arc endpoints relabel
                q = self.ctx.prim_perm(p)
                ends = (q[ends[0] - 1] + 1, q[ends[1] - 1] + 1)
            out = surface.Curve(out.model, out.kind, verts, ends).simplified()
        return out

    def __repr__(self):
        return "MappingClass(n=%d, %s)" % (self.ctx.n, list(self.prims))


def to_outer_aut(m):
    """The induced outer automorphism together with the puncture permutation."""
    return m.outer(), m.perm()


def equal(m1, m2):
    """Mapping-class equality via the outer-automorphism embedding."""
    if m1.ctx is not m2.ctx:
        raise ValueError("mapping classes on different models")
    if m1.perm() != m2.perm():
        return False
    diff = m1.outer().compose(m2.outer().inverse())
    return fg.is_inner(diff) is not None


def half_twist_action(k, x, sign=1, a=-1):
    """tau_{k,a}^sign applied to the curve x."""
    ctx = MCGContext.get(x.model.n)
    return MappingClass.from_terms(ctx, [("H", k, sign, a)]).act(x)


def derived_arc(ctx, k, a):
    """ARC_k(a) = T_k^{a+1}(ARC_k(-1))."""
    arc = ctx.model.base_arc(k)
    return MappingClass.from_terms(ctx, [("T", k, 1)]).power(a + 1).act(arc)


def _seg_normal(d, eps):
    """rot90 of d, rationally scaled to length about eps."""
    s = eps / max(abs(d[0]), abs(d[1]))
    return (-d[1] * s, d[0] * s)


def _spiral_copy(cw, u0, entry_side, d):
    """One full copy of the loop cw starting at parameter u0, pushed off by
    a radius that slides from entry_side*d to -entry_side*d over the lap.

    The radius is piecewise linear in cw's own parameter, so the copies
    inserted at different crossings are parallel tracks that never meet.
    Returns (points, start anchor, end anchor), anchors on cw's lift.
    """
    n = cw.nsegs
    params = [u0] + [Q(k) for k in range(qfloor(u0) + 1, qfloor(u0) + n + 1)] + [u0 + n]
    pts = [cw.point_at(t) for t in params]
    out = []
    for j, t in enumerate(params):
        r = entry_side * d * (1 - 2 * (t - u0) / n)
        if j == 0:
            offs = [_seg_normal(sub(pts[1], pts[0]), r)]
        elif j == len(params) - 1:
            offs = [_seg_normal(sub(pts[-1], pts[-2]), r)]
        else:
            o1 = _seg_normal(sub(pts[j], pts[j - 1]), r)
            o2 = _seg_normal(sub(pts[j + 1], pts[j]), r)
            offs = [o1] if o1 == o2 else [o1, add(o1, o2), o2]
        for o in offs:
            p = add(pts[j], o)
            if not out or out[-1] != p:
                out.append(p)
    return out, pts[0], pts[-1]


def _splice_once(cc, x2, crossings, sign, d, hfrac):
    w = sign * HANDEDNESS_T
    n_c = cc.nsegs
    order = sorted(crossings, key=lambda r: r[1])
    verts = []
    shift = (Q(0), Q(0))
    prev = Q(0)
    for idx, (s_c_i, s_x_i, P_i, tv_i) in enumerate(order):
        c_dir = _dir_at(cc, s_c_i)
        x_dir = _dir_at(x2, s_x_i)
        sigma = 1 if cross(x_dir, c_dir) > 0 else -1
        o = w * sigma
        cw = cc if o > 0 else cc.reversed_()
        u0 = s_c_i if o > 0 else n_c - s_c_i
        lo = prev if idx == 0 else order[idx - 1][1]
        hi = order[idx + 1][1] if idx + 1 < len(order) else Q(x2.nsegs)
        h_in = min(s_x_i - qfloor(s_x_i), s_x_i - lo) * hfrac
        h_out = min(qfloor(s_x_i) + 1 - s_x_i, hi - s_x_i) * hfrac
        piece = x2.subarc(prev, s_x_i - h_in)
        verts.extend(add(p, shift) for p in piece)
        # entry side, measured in the frame of the traversed copy: x
        # approaches from side sigma of c, which is side sigma*o = w of cw
        spiral, a0, a1 = _spiral_copy(cw, u0, w, d)
        # re-anchor the copy on x's lift of the crossing point
        d0 = sub(add(x2.point_at(s_x_i), shift), a0)
        for p in spiral:
            q = add(p, d0)
            if verts[-1] != q:
                verts.append(q)
        shift = add(shift, sub(a1, a0))
        prev = s_x_i + h_out
    tail = x2.subarc(prev, Q(x2.nsegs))
    for p in tail:
        q = add(p, shift)
        if verts[-1] != q:
            verts.append(q)
    return surface.Curve(x2.model, x2.kind, surface._dedupe(verts), x2.ends)


def dehn_twist_action(c, x, sign=1):
    """Dehn twist along the simple loop c, applied to x by splicing a full
    push-off copy of c into x at every crossing."""
    if c.kind != "loop":
        raise ValueError("dehn_twist_action twists along a loop")
    c = surface.minimal_representative(c)
    if not surface.is_embedded(c):
        raise ValueError("twisting curve is not simple")
    x0 = x.simplified()
    last = None
    for attempt in range(8):
        xj = x0 if attempt == 0 else x0.rebased(surface._trace_jiggle(c.model, attempt + 2, False))
        try:
            cc, x2, crossings = surface.general_position(c, xj)
        except RuntimeError as exc:
            last = exc
            continue
        if not crossings:
            return x2
        # the push-off radius must clear both the perturbation of x and any
        # strand of x running close to c without crossing it; scan downward
        # from just below the perturbation scale and validate each try
        delta = Q(1, 101 * 3 ** (attempt + 2))
        for div in (16, 64, 512):
            out = _splice_once(cc, x2, crossings, sign, delta / div, Q(1, 4))
            if surface.is_embedded(out) and surface.curve_avoids_punctures(out):
                return surface.minimal_representative(out)
        last = RuntimeError("spliced curve failed validation")
    raise RuntimeError("dehn_twist_action failed: %s" % last)


def _dir_at(curve, s):
    i = min(surface.qfloor(s), curve.nsegs - 1)
    return sub(curve.verts[i + 1], curve.verts[i])


def braid_check(gamma, delta):
    """Whether the twists along two curves with i = 1 satisfy the braid
    relation; for disjoint curves (i = 0) checks commutation instead."""
    ctx = MCGContext.get(gamma.model.n)
    i = surface.intersection_number(gamma, delta)
    tg = _twist_class(ctx, gamma)
    td = _twist_class(ctx, delta)
    if i == 1:
        return equal(tg.compose(td).compose(tg), td.compose(tg).compose(td))
    if i == 0:
        return equal(tg.compose(td), td.compose(tg))
    raise ValueError("braid_check needs i(gamma, delta) in {0, 1}, got %d" % i)


def _twist_class(ctx, curve):
    """Recognize the twist along a standard curve as a MappingClass."""
    if curve.kind == "loop":
        w = surface.word_of_loop(curve)
        if w == fg.canonical_cycle((1,)):
            return MappingClass.from_terms(ctx, [("TY", 0, 1)])
        for k in range(1, ctx.n + 1):
            if w == fg.canonical_cycle((k + 1,)):
                return MappingClass.from_terms(ctx, [("T", k, 1)])
        raise ValueError("loop is not isotopic to a standard curve")
    for k in range(1, ctx.n + 1):
        if surface._same_curve(curve, ctx.model.base_arc(k)):
            return MappingClass.from_terms(ctx, [("H", k, 1)])
    raise ValueError("arc is not a standard base arc")
