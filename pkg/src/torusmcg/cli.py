"""Command-line interface: parse mapping-class words and curve names, run
single computations (intersection numbers, curve images, equality, Hom
values, lattice questions, kernel membership), and run the verification
suites with deterministic text or JSON reports.

Exit codes: 0 all pass, 1 any failure, 2 usage error.
"""

import argparse
import json
import re
import sys

from . import bgroup, dcat
from .mcg import MCGContext, MappingClass, derived_arc, expand_token
from .surface import intersection_number, word_of_loop


class UsageError(ValueError):
    pass


# ---- parsing -----------------------------------------------------------------

_TERM_RE = re.compile(r"^(TY|T(\d+)|H(\d+)(?:\[(-?\d+)\])?)(?:\^(-?\d+))?$")


def parse_word(text, n):
    """Word grammar: whitespace-separated terms, term = gen('^'int)?,
    gen = 'TY' | 'T'<i> | 'H'<i>('['<a>']')?, default a = -1.
    Returns a list of (kind, index, sign[, a]) tuples, powers expanded."""
    terms = []
    for pos, tok in enumerate(text.split(), start=1):
        m = _TERM_RE.match(tok)
        if not m:
            raise UsageError("unknown token %r at position %d" % (tok, pos))
        power = int(m.group(5)) if m.group(5) is not None else 1
        sign = 1 if power > 0 else -1
        if m.group(1) == "TY":
            base = ("TY", 0, sign)
        elif m.group(2) is not None:
            i = int(m.group(2))
            if not 1 <= i <= n:
                raise UsageError("index out of range in %r at position %d" % (tok, pos))
            base = ("T", i, sign)
        else:
            i = int(m.group(3))
            if not 1 <= i <= n:
                raise UsageError("index out of range in %r at position %d" % (tok, pos))
            a = int(m.group(4)) if m.group(4) is not None else -1
            base = ("H", i, sign, a)
        terms.extend([base] * abs(power))
    return terms


_CURVE_RE = re.compile(r"^(A|B(\d+)|G(\d+)\[(-?\d+)\])$")


def parse_curve(text, ctx):
    """Curve grammar: 'A' | 'B'<i> | 'G'<i>'['<a>']' | 'apply(word,curve)'."""
    text = text.strip()
    if text.startswith("apply(") and text.endswith(")"):
        inner = text[len("apply(") : -1]
        if "," not in inner:
            raise UsageError("apply(...) needs a word and a curve")
        word_part, curve_part = inner.split(",", 1)
        word = parse_word(word_part, ctx.model.n)
        curve = parse_curve(curve_part, ctx)
        return MappingClass.from_terms(ctx, word).act(curve)
    m = _CURVE_RE.match(text)
    if not m:
        raise UsageError("unknown curve %r" % text)
    if m.group(1) == "A":
        return ctx.model.curve_A()
    n = ctx.model.n
    if m.group(2) is not None:
        i = int(m.group(2))
        if not 1 <= i <= n:
            raise UsageError("curve index out of range in %r" % text)
        return ctx.model.curve_B(i)
    i = int(m.group(3))
    if not 1 <= i <= n:
        raise UsageError("curve index out of range in %r" % text)
    return derived_arc(ctx, i, int(m.group(4)))


_TAG_RE = re.compile(r"^(OY|Ox(\d+)|OG(\d+)\[(-?\d+)\]|PsiOx(\d+))$")


def parse_tag(text, n):
    """Object tags: 'OY' | 'Ox'<i> | 'OG'<i>'['<a>']' | 'PsiOx'<i>."""
    m = _TAG_RE.match(text.strip())
    if not m:
        raise UsageError("unknown object tag %r" % text)
    if m.group(1) == "OY":
        return dcat.OY
    for g, make in ((2, dcat.Ox), (5, dcat.PsiOx)):
        if m.group(g) is not None:
            i = int(m.group(g))
            if not 1 <= i <= n:
                raise UsageError("tag index out of range in %r" % text)
            return make(i)
    i = int(m.group(3))
    if not 1 <= i <= n:
        raise UsageError("tag index out of range in %r" % text)
    return dcat.OG(i, int(m.group(4)))


_BGEN_RE = re.compile(r"^(\d+):(\d+)\[(-?\d+)\](?:\^(-?1))?$")


def parse_bword(text, cfg):
    """B-word grammar: whitespace-separated '<fiber>:<component>[<degree>]'
    tokens with an optional '^-1'."""
    word = []
    for pos, tok in enumerate(text.split(), start=1):
        m = _BGEN_RE.match(tok)
        if not m:
            raise UsageError("unknown B-generator %r at position %d" % (tok, pos))
        sign = int(m.group(4)) if m.group(4) else 1
        word.append(bgroup.make_gen(int(m.group(1)), int(m.group(2)), int(m.group(3)), sign))
    try:
        bgroup._check_word(word, cfg)
    except ValueError as exc:
        raise UsageError(str(exc))
    return word


def format_tag(tag):
    if tag[0] == "OY":
        return "OY"
    if tag[0] == "Ox":
        return "Ox%d" % tag[1]
    if tag[0] == "PsiOx":
        return "PsiOx%d" % tag[1]
    return "OG%d[%d]" % (tag[1], tag[2])


# ---- suites ------------------------------------------------------------------


def _entry(name, expected, actual, anchor):
    return {
        "name": name,
        "status": "pass" if expected == actual else "fail",
        "expected": expected,
        "actual": actual,
        "paper_anchor": anchor,
    }


def dictionary_suite(n, max_iterations):
    ctx = MCGContext.get(n)
    entries = []
    for E, F in dcat.tabulated_pairs(n):
        expected = dcat.hom_total(n, E, F)
        actual = intersection_number(
            dcat.curve_of(ctx, E), dcat.curve_of(ctx, F), max_iterations
        )
        entries.append(
            _entry(
                "dictionary-%s-%s" % (format_tag(E), format_tag(F)),
                expected,
                actual,
                "total Hom dimension equals the minimal geometric intersection number",
            )
        )
    return {"suite": "dictionary", "entries": entries}


def lattice_suite():
    entries = []
    for n in range(2, 9):
        basis = dcat.form_kernel(n)
        entries.append(
            _entry(
                "lattice-kernel-n%d" % n,
                [[1] * n],
                basis,
                "the radical of the in-fiber intersection form is spanned by the class of the whole fiber",
            )
        )
        entries.append(
            _entry(
                "lattice-rows-n%d" % n,
                True,
                all(dcat.in_restriction_lattice(r) for r in dcat.in_fiber_form(n)),
                "every component restriction lies in the multidegree restriction lattice",
            )
        )
        entries.append(
            _entry(
                "lattice-unit-vectors-n%d" % n,
                False,
                any(
                    dcat.in_restriction_lattice([1 if j == i else 0 for j in range(n)])
                    for i in range(n)
                ),
                "a single point class is not a restriction multidegree, so restriction is not surjective",
            )
        )
    return {"suite": "lattice", "entries": entries}


def kernel_suite(cfg):
    entries = []
    for jf, n in enumerate(cfg.counts, start=1):
        word = []
        for i in range(1, n + 1):
            word += [bgroup.make_gen(jf, i, -1), bgroup.make_gen(jf, i, 0)]
        entries.append(
            _entry(
                "kernel-fiber%d-full-product" % jf,
                True,
                bgroup.is_in_kernel(word, cfg),
                "tensoring by the fiber class acts trivially on every mapping class group factor",
            )
        )
        entries.append(
            _entry(
                "kernel-fiber%d-single-pair" % jf,
                False,
                bgroup.is_in_kernel(word[:2], cfg),
                "tensoring by a single component class acts nontrivially",
            )
        )
        for a in (-3, 2):
            ew = bgroup.express_in_generators(jf, 1, a)
            img = bgroup.image(ew, cfg)[jf - 1]
            ref = MappingClass.from_terms(MCGContext.get(n), [("H", 1, 1, a)])
            entries.append(
                _entry(
                    "kernel-fiber%d-express-a%d" % (jf, a),
                    True,
                    bgroup.equal(img, ref),
                    "every degree twist is a word in the degree -1 and 0 twists",
                )
            )
    entries.append(
        _entry(
            "kernel-empty-word",
            True,
            bgroup.is_in_kernel([], cfg),
            "the empty word is in the kernel",
        )
    )
    return {"suite": "kernel", "entries": entries}


def run_suite(name, n, cfg, max_iterations):
    reports = []
    if name in ("relations", "all"):
        reports.append(bgroup.relation_suite(cfg))
    if name in ("dictionary", "all"):
        reports.append(dictionary_suite(n, max_iterations))
    if name in ("lattice", "all"):
        reports.append(lattice_suite())
    if name in ("kernel", "all"):
        reports.append(kernel_suite(cfg))
    entries = [e for r in reports for e in r["entries"]]
    entries.sort(key=lambda e: e["name"])
    summary = {
        "pass": sum(e["status"] == "pass" for e in entries),
        "fail": sum(e["status"] == "fail" for e in entries),
        "skip": sum(e["status"] == "skip" for e in entries),
    }
    return {"suite": name, "entries": entries, "summary": summary}


def emit_report(report, as_json):
    if as_json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        for e in report["entries"]:
            line = "%s %s" % (e["status"].upper(), e["name"])
            if e["status"] == "fail":
                line += " (expected=%r, actual=%r)" % (e["expected"], e["actual"])
            print(line)
        s = report["summary"]
        print("suite %s: %d pass, %d fail, %d skip" % (report["suite"], s["pass"], s["fail"], s["skip"]))
    return 0 if report["summary"]["fail"] == 0 else 1


# ---- commands ----------------------------------------------------------------


def _profile(ctx, curve, max_iterations):
    """Intersection numbers of a curve with the reference curves."""
    n = ctx.model.n
    probes = [("A", ctx.model.curve_A())]
    probes += [("B%d" % i, ctx.model.curve_B(i)) for i in range(1, n + 1)]
    probes += [("G%d[-1]" % i, ctx.model.base_arc(i)) for i in range(1, n + 1)]
    out = []
    for name, probe in probes:
        try:
            out.append((name, intersection_number(curve, probe, max_iterations)))
        except ValueError:
            out.append((name, "self"))
    return out


def cmd_intersect(args):
    ctx = MCGContext.get(args.n)
    alpha = parse_curve(args.alpha, ctx)
    beta = parse_curve(args.beta, ctx)
    print(intersection_number(alpha, beta, args.max_iterations))
    return 0


def cmd_act(args):
    ctx = MCGContext.get(args.n)
    curve = parse_curve(args.curve, ctx)
    image = MappingClass.from_terms(ctx, parse_word(args.word, args.n)).act(curve)
    if image.kind == "loop":
        print("word: %s" % ctx.model.alphabet.format(word_of_loop(image)))
    else:
        print("arc: punctures %d -> %d" % (image.ends[0], image.ends[1]))
    print("profile: " + " ".join("%s=%s" % (k, v) for k, v in _profile(ctx, image, args.max_iterations)))
    return 0


def cmd_equal(args):
    from .mcg import equal

    ctx = MCGContext.get(args.n)
    m1 = MappingClass.from_terms(ctx, parse_word(args.word1, args.n))
    m2 = MappingClass.from_terms(ctx, parse_word(args.word2, args.n))
    print("true" if equal(m1, m2) else "false")
    return 0


def cmd_hom(args):
    E = parse_tag(args.E, args.n)
    F = parse_tag(args.F, args.n)
    try:
        print(dcat.hom_total(args.n, E, F))
    except dcat.HomNotTabulated:
        print("not tabulated")
        return 1
    return 0


def cmd_lattice(args):
    if args.vector is None:
        for v in dcat.form_kernel(args.n):
            print(" ".join(str(x) for x in v))
        return 0
    v = [int(x) for x in args.vector.split(",")]
    if len(v) != args.n:
        raise UsageError("vector length must equal n")
    print("true" if dcat.in_restriction_lattice(v) else "false")
    return 0


def cmd_kernel(args):
    cfg = bgroup.make_config(_parse_fibers(args))
    word = parse_bword(args.word, cfg)
    print("true" if bgroup.is_in_kernel(word, cfg) else "false")
    return 0


def cmd_verify(args):
    cfg = bgroup.make_config(_parse_fibers(args))
    report = run_suite(args.suite, args.n, cfg, args.max_iterations)
    return emit_report(report, args.json)


def _parse_fibers(args):
    if args.fibers:
        return [int(x) for x in args.fibers.split(",")]
    return [args.n]


def build_parser():
    p = argparse.ArgumentParser(
        prog="torusmcg",
        description="Mapping class groups of punctured tori and the curve dictionary for cycles of projective lines.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--n", type=int, default=3, help="number of punctures / components")
        sp.add_argument("--fibers", help="comma-separated component counts, one per fiber")
        sp.add_argument("--max-iterations", type=int, default=10000, help="bigon removal cap")
        sp.add_argument("--json", action="store_true", help="structured report output")

    sp = sub.add_parser("intersect", help="minimal intersection number of two curves")
    sp.add_argument("alpha")
    sp.add_argument("beta")
    common(sp)
    sp.set_defaults(fn=cmd_intersect)

    sp = sub.add_parser("act", help="image of a curve under a mapping-class word")
    sp.add_argument("word")
    sp.add_argument("curve")
    common(sp)
    sp.set_defaults(fn=cmd_act)

    sp = sub.add_parser("equal", help="equality of two mapping-class words")
    sp.add_argument("word1")
    sp.add_argument("word2")
    common(sp)
    sp.set_defaults(fn=cmd_equal)

    sp = sub.add_parser("hom", help="tabulated total Hom dimension of an object pair")
    sp.add_argument("E")
    sp.add_argument("F")
    common(sp)
    sp.set_defaults(fn=cmd_hom)

    sp = sub.add_parser("lattice", help="kernel basis, or membership of a vector (e.g. 1,-2,1)")
    sp.add_argument("vector", nargs="?")
    common(sp)
    sp.set_defaults(fn=cmd_lattice)

    sp = sub.add_parser("kernel", help="kernel membership of a B-word (tokens like 1:2[-1])")
    sp.add_argument("word")
    common(sp)
    sp.set_defaults(fn=cmd_kernel)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", default="all", choices=["relations", "dictionary", "lattice", "kernel", "all"])
    common(sp)
    sp.set_defaults(fn=cmd_verify)

    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.n < 2:
        print("error: --n must be at least 2", file=sys.stderr)
        return 2
    try:
        return args.fn(args)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except Exception as exc:  # computation failure: report and exit 1
        print("error: %s" % exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
