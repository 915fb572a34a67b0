"""The group of twist functors along spherical objects supported on the
reducible fibers, modeled as formal words in the generators T_{O_Gi(a)}
and mapped, fiber by fiber, into mapping class groups of punctured tori.

A word's image has one MappingClass factor per fiber; by the structure
theorem for this group, kernel membership is equivalent to every factor
being the identity, which is decided exactly through the free-group
action.  The relation suite replays the group relations (commutation,
braid, twist conjugation) as pass/fail report entries.
"""

from collections import namedtuple

from .mcg import MCGContext, MappingClass, equal

FiberConfig = namedtuple("FiberConfig", "counts")
BGen = namedtuple("BGen", "fiber component degree sign")


def make_config(counts):
    counts = tuple(int(c) for c in counts)
    if not counts:
        raise ValueError("at least one fiber is required")
    if any(c < 2 for c in counts):
        raise ValueError("every fiber needs at least two components")
    return FiberConfig(counts)


def make_gen(fiber, component, degree, sign=1):
    if sign not in (1, -1):
        raise ValueError("sign must be +-1")
    return BGen(int(fiber), int(component), int(degree), sign)


def _check_word(word, cfg):
    for g in word:
        if not 1 <= g.fiber <= len(cfg.counts):
            raise ValueError("fiber index out of range: %r" % (g,))
        if not 1 <= g.component <= cfg.counts[g.fiber - 1]:
            raise ValueError("component index out of range: %r" % (g,))


def image(word, cfg):
    """One MappingClass per fiber: BGen(j,i,a)^s contributes the half
    twist tau_{i,a}^s in factor j and nothing elsewhere; left-to-right."""
    _check_word(word, cfg)
    factors = [MappingClass.identity(MCGContext.get(n)) for n in cfg.counts]
    for g in word:
        j = g.fiber - 1
        step = MappingClass.from_terms(
            MCGContext.get(cfg.counts[j]), [("H", g.component, g.sign, g.degree)]
        )
        factors[j] = factors[j].compose(step)
    return factors


def is_in_kernel(word, cfg):
    """Whether the word acts trivially on every fiber."""
    return all(
        equal(f, MappingClass.identity(f.ctx)) for f in image(word, cfg)
    )


def express_in_generators(j, i, a, sign=1):
    """A word over {tau_{i,-1}, tau_{i,0}} (degrees -1 and 0 only) whose
    image equals tau_{i,a}^sign.

    Uses that tau_{i,a-1} tau_{i,a} is the same mapping class for every a,
    so tau_{i,a} = tau_{i,a-1}^-1 (tau_{i,-1} tau_{i,0}) going up and
    tau_{i,a} = (tau_{i,-1} tau_{i,0}) tau_{i,a+1}^-1 going down.
    """

    def expand(a):
        if a in (-1, 0):
            return [(a, 1)]
        d = [(-1, 1), (0, 1)]
        if a > 0:
            return _invert(expand(a - 1)) + d
        return d + _invert(expand(a + 1))

    def _invert(w):
        return [(deg, -s) for deg, s in reversed(w)]

    w = expand(a)
    if sign < 0:
        w = _invert(w)
    return [BGen(j, i, deg, s) for deg, s in w]


# ---- relation suite ----------------------------------------------------------


def _entry(name, expected, actual, anchor):
    return {
        "name": name,
        "status": "pass" if expected == actual else "fail",
        "expected": expected,
        "actual": actual,
        "paper_anchor": anchor,
    }


def _skip(name, anchor):
    return {
        "name": name,
        "status": "skip",
        "expected": None,
        "actual": None,
        "paper_anchor": anchor,
    }


def _word(ctx, terms):
    return MappingClass.from_terms(ctx, terms)


def relation_suite(cfg, bs=range(-2, 3)):
    """Pass/fail entries for the group relations on every fiber:
    commutation of half twists along disjoint arcs, the braid relation for
    adjacent ones (recorded as an expected inequality of the commutation),
    twist conjugation shifting the degree, and the two-twist identity."""
    entries = []
    for jf, n in enumerate(cfg.counts, start=1):
        ctx = MCGContext.get(n)
        pre = "fiber%d/" % jf

        def T(k, s=1):
            return _word(ctx, [("T", k, s)])

        def H(k, s=1, a=-1):
            return _word(ctx, [("H", k, s, a)])

        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                adjacent = abs(i - j) in (1, n - 1)
                commute = equal(H(i).compose(H(j)), H(j).compose(H(i)))
                if adjacent and n >= 3:
                    entries.append(
                        _entry(
                            pre + "commute-H%d-H%d" % (i, j),
                            False,
                            commute,
                            "half twists along arcs sharing a puncture do not commute",
                        )
                    )
                elif not adjacent:
                    entries.append(
                        _entry(
                            pre + "commute-H%d-H%d" % (i, j),
                            True,
                            commute,
                            "half twists along disjoint arcs commute",
                        )
                    )
        for i in range(1, n + 1):
            j = i % n + 1
            name = pre + "braid-H%d-H%d" % (i, j)
            if n < 3:
                entries.append(_skip(name, "braid relation needs at least three punctured-torus arcs"))
                continue
            lhs = H(i).compose(H(j)).compose(H(i))
            rhs = H(j).compose(H(i)).compose(H(j))
            entries.append(
                _entry(
                    name,
                    True,
                    equal(lhs, rhs),
                    "half twists along arcs sharing one endpoint satisfy the braid relation",
                )
            )
        for k in range(1, n + 1):
            for b in range(-3, 4):
                lhs = T(k).compose(H(k, 1, b)).compose(T(k, -1))
                rhs = H(k, 1, b + 1)
                entries.append(
                    _entry(
                        pre + "conjugation-T%d-tau[%d]" % (k, b),
                        True,
                        equal(lhs, rhs),
                        "conjugating a half twist by the Dehn twist along its loop shifts the degree by one",
                    )
                )
        for i in range(1, n + 1):
            im = (i - 2) % n + 1
            ip = i % n + 1
            for b in bs:
                tau = H(i, 1, b)
                lhs = tau.compose(T(i)).compose(tau).compose(T(i, -1))
                rhs = T(im).compose(T(i, -1)).compose(T(i, -1)).compose(T(ip))
                entries.append(
                    _entry(
                        pre + "two-twist-T%d-tau[%d]" % (i, b),
                        True,
                        equal(lhs, rhs),
                        "the square of a half twist composed with Dehn twists matches the neighboring twist product",
                    )
                )
    entries.sort(key=lambda e: e["name"])
    summary = {
        "pass": sum(e["status"] == "pass" for e in entries),
        "fail": sum(e["status"] == "fail" for e in entries),
        "skip": sum(e["status"] == "skip" for e in entries),
    }
    return {"suite": "relations", "entries": entries, "summary": summary}
