import json
import random

import pytest

from segalkit import io
from segalkit.bisset import F, box, disc
from segalkit.category import cyclic_group, disc_nerve, ordinal_cat, representable_functor
from segalkit.cli import main
from segalkit.corpus import categories, random_chain
from segalkit.ez import find_isomorphism
from segalkit.report import ANCHORS, Report, UnknownAnchor
from segalkit.sset import boundary, horn, standard, vertex_map


def _roundtrip(obj, tmp_path, name="x.json"):
    p = tmp_path / name
    io.save(obj, p)
    first = p.read_bytes()
    back = io.load(p)
    io.save(back, p)
    assert p.read_bytes() == first
    return back


@pytest.mark.parametrize("make", [
    lambda: standard(2), lambda: boundary(3), lambda: horn(3, 1), lambda: box(1, 1), lambda: F(2),
    lambda: disc_nerve(cyclic_group(2), 3), lambda: disc(boundary(2)),
], ids=["Δ2", "∂Δ3", "Λ1[3]", "box11", "F2", "nerve-z2", "disc∂Δ2"])
def test_object_roundtrip(make, tmp_path):
    X = make()
    Y = _roundtrip(X, tmp_path)
    assert find_isomorphism(X, Y) is not None
    assert len(Y) == len(X)


def test_map_category_functor_chain_roundtrip(tmp_path):
    f = vertex_map(standard(2), 1)
    g = _roundtrip(f, tmp_path, "m.json")
    g.validate()
    assert [c.gen for c in g.assignment] == [c.gen for c in f.assignment]
    for name, C in categories().items():
        D = _roundtrip(C, tmp_path, f"{name}.json")
        assert sorted(a.name for a in D.arrows) == sorted(a.name for a in C.arrows)
    C = ordinal_cat(2)
    Fn = _roundtrip(representable_functor(C, "0"), tmp_path, "f.json")
    Fn.validate()
    ch = random_chain(random.Random(3))
    back = _roundtrip(ch, tmp_path, "c.json")
    assert back.length == ch.length


@pytest.mark.parametrize("text", [
    "not json",
    '{"kind": "nonsense"}',
    '{"kind": "sset", "generators": [{"degree": [0], "ids": [0]}], "faces": [{"of": 7}]}',
    '{"kind": "sset"}',
    '[1, 2]',
])
def test_malformed_files(text, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(text)
    with pytest.raises(io.FormatError) as exc:
        io.load(p)
    assert "bad.json" in str(exc.value)


def test_report_anchor_guard():
    assert "E:Segal(b)" in ANCHORS
    Report("segal", "E:Segal(b)+E:comp", "exact-discrete", True)
    with pytest.raises(UnknownAnchor):
        Report("segal", "E:Segal(z)", "exact-discrete", True)
    with pytest.raises(ValueError):
        Report("segal", "E:Segal(b)", "", True)


# -- command line -----------------------------------------------------------

def _make(tmp_path, *args, name="obj.json"):
    out = tmp_path / name
    assert main(["make", *args, "--out", str(out)]) == 0
    return str(out)


def _check(capsys, *args):
    code = main(["check", *args])
    return code, capsys.readouterr().out


def test_cli_nerve_segal_and_complete(tmp_path, capsys):
    f = _make(tmp_path, "nerve", "z2", name="disc_nerve_z2.json")
    code, _ = _check(capsys, "segal", "--in", f, "--bound", "4")
    assert code == 0
    code, out = _check(capsys, "complete", "--in", f)
    doc = json.loads(out)
    assert code == 1 and doc["verdict"] is False
    assert (doc["certificate"]["heq"], doc["certificate"]["X0"]) == (2, 1)
    assert doc["tier"] == "exact-discrete" and "seconds" not in doc


def test_cli_homology(tmp_path, capsys):
    f = _make(tmp_path, "boundary", "2", name="boundary2.json")
    code, out = _check(capsys, "homology", "--in", f)
    assert code == 0
    detail = json.loads(out)["detail"]
    assert detail["H0"] == detail["H1"] == {"betti": 1, "torsion": []}


def test_cli_left_fib_twist_projection(tmp_path, capsys):
    from segalkit.bisset import twist_projection
    X = disc_nerve(ordinal_cat(2))
    p = tmp_path / "pi_nerve_poset.json"
    io.save(twist_projection(X).map, p)
    code, _ = _check(capsys, "left-fib", "--in", str(p), "--bound", "3")
    assert code == 0


def test_cli_make_examples(tmp_path):
    f = _make(tmp_path, "box", "1", "1")
    doc = json.loads(open(f).read())
    assert doc["kind"] == "bisset"
    assert sum(len(g["ids"]) for g in doc["generators"]) == 9
    vertices = [g for g in doc["generators"] if g["degree"] == [0, 0]]
    assert len(vertices[0]["ids"]) == 4
    assert json.loads(open(_make(tmp_path, "nerve", "path2", name="n.json")).read())["kind"] == "bisset"
    C = tmp_path / "C.json"
    Fn = tmp_path / "F.json"
    io.save(ordinal_cat(1), C)
    io.save(representable_functor(ordinal_cat(1), "0"), Fn)
    e = _make(tmp_path, "elements", str(C), str(Fn), name="e.json")
    assert json.loads(open(e).read())["kind"] == "map"


def test_cli_make_is_deterministic(tmp_path):
    a = _make(tmp_path, "chain", "--seed", "4", name="a.json")
    b = _make(tmp_path, "chain", "--seed", "4", name="b.json")
    assert open(a, "rb").read() == open(b, "rb").read()


def test_cli_usage_errors(tmp_path, capsys):
    assert main(["check", "segal"]) == 2
    assert main(["check", "nonsense", "--in", "x"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["check", "segal", "--in", str(bad)]) == 2
    f = _make(tmp_path, "box", "1", "1")
    assert main(["check", "segal", "--in", f]) == 2  # not discrete
    assert main(["check", "kan-fib", "--in", f]) == 2
    assert main(["check", "segal", "--in", f, "--bound", "0"]) == 2
    assert main(["make", "box", "1"]) == 2
    assert main(["make", "nerve", "no-such-category"]) == 2
    capsys.readouterr()


def test_cli_resource_cap(tmp_path, monkeypatch):
    f = _make(tmp_path, "standard", "3")
    monkeypatch.setenv("SEGALKIT_MAX_CELLS", "10")
    assert main(["check", "kan-fib", "--in", f, "--bound", "3"]) == 3


def test_cli_text_output(tmp_path, capsys):
    f = _make(tmp_path, "standard", "1")
    code, out = _check(capsys, "kan-fib", "--in", f, "--bound", "2", "--text")
    assert code == 1 and out.strip()


def test_cli_suite_on_empty_and_corrupted_corpus(tmp_path, capsys):
    d = tmp_path / "corpus"
    d.mkdir()
    assert main(["suite", "--corpus", str(d), "--only", "4", "5"]) == 0
    assert len(list((d / "maps").glob("*.json"))) == 100
    victim = sorted((d / "chains").glob("*.json"))[0]
    victim.write_text("garbage")
    capsys.readouterr()
    assert main(["suite", "--corpus", str(d), "--only", "5"]) == 2
    assert victim.name in capsys.readouterr().err
