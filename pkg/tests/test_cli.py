import json

import pytest

from torusmcg import cli
from torusmcg.cli import UsageError, main, parse_bword, parse_curve, parse_tag, parse_word
from torusmcg.mcg import MCGContext


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_parse_word_grammar():
    assert parse_word("TY T1 H2", 3) == [("TY", 0, 1), ("T", 1, 1), ("H", 2, 1, -1)]
    assert parse_word("T1^-2", 3) == [("T", 1, -1), ("T", 1, -1)]
    assert parse_word("H1[0]^2", 3) == [("H", 1, 1, 0), ("H", 1, 1, 0)]
    assert parse_word("TY^0", 3) == []
    assert parse_word("", 3) == []
    for bad in ["T4", "H0", "Q1", "T1^x", "H1[2"]:
        with pytest.raises(UsageError):
            parse_word(bad, 3)


def test_parse_curve_grammar():
    ctx = MCGContext.get(3)
    assert parse_curve("A", ctx).verts == ctx.model.curve_A().verts
    assert parse_curve("B2", ctx).verts == ctx.model.curve_B(2).verts
    assert parse_curve("G1[-1]", ctx).ends == (1, 2)
    moved = parse_curve("apply(T1, A)", ctx)
    assert moved.kind == "loop"
    for bad in ["B4", "G0[-1]", "C1", "apply(T1)", "apply(T1, B9)"]:
        with pytest.raises(UsageError):
            parse_curve(bad, ctx)


def test_parse_tag_grammar():
    assert parse_tag("OY", 3) == ("OY",)
    assert parse_tag("Ox2", 3) == ("Ox", 2)
    assert parse_tag("OG1[-1]", 3) == ("OG", 1, -1)
    assert parse_tag("PsiOx3", 3) == ("PsiOx", 3)
    for bad in ["Ox4", "OG0[-1]", "xyz", "PsiOx0"]:
        with pytest.raises(UsageError):
            parse_tag(bad, 3)


def test_parse_bword_grammar():
    from torusmcg.bgroup import make_config

    cfg = make_config([3, 2])
    w = parse_bword("1:2[-1] 2:1[0]^-1", cfg)
    assert [(g.fiber, g.component, g.degree, g.sign) for g in w] == [
        (1, 2, -1, 1),
        (2, 1, 0, -1),
    ]
    for bad in ["3:1[-1]", "1:5[0]", "1:1", "junk"]:
        with pytest.raises(UsageError):
            parse_bword(bad, cfg)


def test_cmd_intersect(capsys):
    code, out = run(capsys, ["intersect", "A", "B1"])
    assert code == 0 and out.strip() == "1"
    code, out = run(capsys, ["intersect", "--n", "4", "B1", "B3"])
    assert code == 0 and out.strip() == "0"
    code, out = run(capsys, ["intersect", "G1[0]", "apply(H1, B1)"])
    assert code == 0 and out.strip() == "3"


def test_cmd_act(capsys):
    code, out = run(capsys, ["act", "T1", "A"])
    assert code == 0 and out.startswith("word:")
    code, out = run(capsys, ["act", "H1", "G1[-1]"])
    assert code == 0 and out.startswith("arc:")


def test_cmd_equal(capsys):
    code, out = run(capsys, ["equal", "T1 T2", "T2 T1"])
    assert code == 0 and out.strip() == "true"
    code, out = run(capsys, ["equal", "T1", "T2"])
    assert code == 0 and out.strip() == "false"
    code, out = run(capsys, ["equal", "TY T1 TY", "T1 TY T1"])
    assert code == 0 and out.strip() == "true"


def test_cmd_hom(capsys):
    code, out = run(capsys, ["hom", "PsiOx1", "Ox1"])
    assert code == 0 and out.strip() == "2"
    code, out = run(capsys, ["hom", "Ox1", "Ox2"])
    assert code == 1 and out.strip() == "not tabulated"


def test_cmd_lattice(capsys):
    code, out = run(capsys, ["lattice"])
    assert code == 0 and out.split() == ["1", "1", "1"]
    code, out = run(capsys, ["lattice", "1,-2,1"])
    assert code == 0 and out.strip() == "true"
    code, out = run(capsys, ["lattice", "1,0,0"])
    assert code == 0 and out.strip() == "false"
    code, out = run(capsys, ["lattice", "1,0"])
    assert code == 2


def test_cmd_kernel(capsys):
    word = " ".join("1:%d[-1] 1:%d[0]" % (i, i) for i in (1, 2, 3))
    code, out = run(capsys, ["kernel", word])
    assert code == 0 and out.strip() == "true"
    code, out = run(capsys, ["kernel", "1:1[-1]"])
    assert code == 0 and out.strip() == "false"


def test_cmd_verify_text_and_json(capsys):
    code, text = run(capsys, ["verify", "--suite", "lattice"])
    assert code == 0
    assert "suite lattice:" in text and " 0 fail" in text
    code, js = run(capsys, ["verify", "--suite", "lattice", "--json"])
    assert code == 0
    report = json.loads(js)
    assert report["summary"]["fail"] == 0
    assert all(
        set(e) == {"name", "status", "expected", "actual", "paper_anchor"}
        for e in report["entries"]
    )


def test_cmd_verify_deterministic(capsys):
    _, out1 = run(capsys, ["verify", "--suite", "kernel", "--json", "--fibers", "3,2"])
    _, out2 = run(capsys, ["verify", "--suite", "kernel", "--json", "--fibers", "3,2"])
    assert out1 == out2


def test_exit_codes():
    assert main(["intersect", "A", "Q9"]) == 2
    assert main(["act", "T9", "A"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["nosuchcommand"])
    assert exc.value.code == 2
