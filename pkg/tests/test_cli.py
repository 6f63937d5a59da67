import io
import json

import pytest

from excellent_ktrees.cli import BUDGET, INPUT_ERROR, NEGATIVE, OK, main
from excellent_ktrees.construct import random_certificate, random_ktree
from excellent_ktrees.family import Certificate, O1Step, O2Step, replay_certificate
from excellent_ktrees.formats import (
    FormatError,
    format_certificate,
    format_graph,
    iter_graph_files,
    parse_certificate,
    parse_graph,
    to_dot,
)
from excellent_ktrees.graph import build_graph, cycle_graph
from excellent_ktrees.oracle import BUDGET_ENV


def run(*argv):
    buf = io.StringIO()
    code = main(list(map(str, argv)), out=buf)
    return code, buf.getvalue()


@pytest.fixture
def write(tmp_path):
    def _write(name, g, k=None):
        p = tmp_path / name
        p.write_text(format_graph(g, k) if not isinstance(g, str) else g)
        return p

    return _write


def test_oracle_c6(write, c6):
    code, out = run("oracle", write("c6.g", c6))
    assert code == OK
    lines = out.splitlines()
    assert lines[:5] == ["alpha=3", "i=2", "alpha_c=3", "well_covered=false", "excellent=true"]
    assert "vertex 0 max=3" in lines


def test_oracle_json_and_negative(write, dia):
    code, out = run("oracle", write("d.g", dia), "--json")
    assert code == NEGATIVE
    data = json.loads(out)
    assert (data["alpha"], data["alpha_c"], data["excellent"]) == (2, 1, False)


def test_oracle_budget_refusal(write, monkeypatch):
    monkeypatch.setenv(BUDGET_ENV, "8")
    code, _ = run("oracle", write("c9.g", cycle_graph(9)))
    assert code == BUDGET


def test_cover_diamond_none(write, dia):
    assert run("cover", write("d.g", dia), "--k", 2) == (NEGATIVE, "none\n")


def test_cover_prints_parts_and_counts(write, o1_six):
    code, out = run("cover", write("o.g", o1_six), "--k", 2)
    assert code == OK and out == "cover 0 1 2\ncover 3 4 5\n"
    assert run("cover", write("c4.g", cycle_graph(4)), "--k", 1, "--count") == (OK, "count 2 (stopped at limit 2)\n")
    assert run("cover", write("o.g", o1_six), "--count", "--limit", 5) == (OK, "count 1\n")


def test_decompose_k3(write, k3):
    assert run("decompose", write("k3.g", k3)) == (OK, "base 0 1 2\n")


def test_decompose_negative_and_rejection(write, dia, c6):
    assert run("decompose", write("d.g", dia)) == (NEGATIVE, "not alpha-excellent\n")
    code, _ = run("decompose", write("c6.g", c6))
    assert code == INPUT_ERROR


def test_decompose_output_replays(write):
    _, t = random_certificate(5, 3)
    g = t.graph
    code, out = run("decompose", write("m.g", g))
    assert code == OK
    assert replay_certificate(parse_certificate(out), g.n).graph == g


def test_check(write, dia, o1_six):
    assert run("check", write("d.g", dia)) == (NEGATIVE, "not excellent\n")
    code, out = run("check", write("o.g", o1_six), "--certify")
    assert code == OK
    assert out.startswith("excellent\n# cover\ncover 0 1 2\ncover 3 4 5\n# certificate\nbase ")
    cert_text = out.split("# certificate\n")[1]
    assert replay_certificate(parse_certificate(cert_text)).graph == o1_six


def test_embed(write, dia):
    code, out = run("embed", write("d.g", dia))
    assert code == OK
    gf = parse_graph(out)
    assert gf.graph.n == 6 and gf.k == 2
    assert "# map 0 0" in out


def test_gen_random_and_exhaustive():
    code, out = run("gen", "--n", 9, "--k", 3, "--seed", 4)
    assert code == OK
    gf = parse_graph(out)
    assert gf.graph == random_ktree(n=9, k=3, seed=4) and gf.k == 3
    code, out = run("gen", "--n", 6, "--exhaustive")
    assert code == OK and len(list(iter_graph_files(out.splitlines()))) == 5
    assert run("gen", "--n", 2, "--k", 3)[0] == INPUT_ERROR


def test_explore_streams_records(capsys):
    code, out = run("explore", "--k", 2, "--nmax", 9, "--budget", 25, "--seed", 1)
    assert code == OK
    recs = [json.loads(line) for line in out.splitlines()]
    assert len(recs) == 25
    assert set(recs[0]) >= {"fingerprint", "k", "n", "excellent", "has_cover", "agrees"}
    assert "records=25" in capsys.readouterr().err


def test_explore_resume(tmp_path):
    code, out = run("explore", "--k", 2, "--nmax", 7, "--budget", 20)
    prev = tmp_path / "prev.jsonl"
    prev.write_text(out)
    code, again = run("explore", "--k", 2, "--nmax", 7, "--budget", 20, "--resume-from", prev)
    assert code == OK and again == ""
    bad = tmp_path / "bad.jsonl"
    bad.write_text("{}\n")
    assert run("explore", "--k", 2, "--nmax", 7, "--budget", 2, "--resume-from", bad)[0] == INPUT_ERROR


def test_explore_bad_arguments():
    assert run("explore", "--k", 3, "--nmax", 3, "--budget", 5)[0] == INPUT_ERROR


def test_convert_roundtrip_and_dot(write, o1_six, dia):
    src = write("o.g", "# hello\nn 6 k 2\n5 4\n0 1\n1 2\n2 0\n0 3\n1 3\n1 4\n3 4\n3 5\n")
    code, out = run("convert", src)
    assert code == OK and parse_graph(out).graph == o1_six
    code, dot = run("convert", src, "--dot", "--labels")
    assert code == OK
    assert dot.startswith("graph G {") and dot.count("// red triangle") == 2 and dot.count("// blue triangle") == 2
    code, dot = run("convert", write("d.g", dia), "--dot", "--labels")
    assert code == OK and "red triangle" not in dot


@pytest.mark.parametrize(
    "text, line",
    [
        ("n 3\n0 1\n1 x\n", 3),
        ("# c\n0 1\n", 2),
        ("n 3\n0 5\n", 2),
        ("n 3\n1 1\n", 2),
        ("n 3 q 2\n", 1),
        ("n 3\n0 1 2\n", 2),
    ],
)
def test_malformed_graph_files(write, capsys, text, line):
    code, _ = run("oracle", write("bad.g", text))
    assert code == INPUT_ERROR
    assert f"line {line}" in capsys.readouterr().err
    with pytest.raises(FormatError) as err:
        parse_graph(text)
    assert err.value.line == line


def test_missing_file_and_bad_usage(tmp_path):
    assert run("oracle", tmp_path / "nope.g")[0] == INPUT_ERROR
    assert run("frobnicate")[0] == INPUT_ERROR
    assert run()[0] == INPUT_ERROR


def test_stdin(monkeypatch, k3):
    monkeypatch.setattr("sys.stdin", io.StringIO(format_graph(k3)))
    assert run("decompose", "-") == (OK, "base 0 1 2\n")


def test_graph_format_roundtrip_random():
    for seed in range(20):
        g = random_ktree(n=12, k=3, seed=seed)
        text = format_graph(g, 3, ["c"])
        gf = parse_graph(text)
        assert gf.graph == g and gf.k == 3
        assert format_graph(gf.graph, gf.k, ["c"]) == text


def test_multi_graph_stream():
    text = format_graph(cycle_graph(4)) + format_graph(build_graph(0, []))
    graphs = [gf.graph for gf in iter_graph_files(text.splitlines())]
    assert graphs == [cycle_graph(4), build_graph(0, [])]
    with pytest.raises(FormatError):
        parse_graph(text)


def test_certificate_format_roundtrip():
    cert = Certificate((0, 1, 2), (O1Step((0, 1), (3, 4, 5)), O2Step((3, 4, 5), (5, 3), (6, 7, 8))))
    text = format_certificate(cert)
    assert text == "base 0 1 2\nO1 0 1 3 4 5\nO2 3 4 5 3 6 7 8\n"
    assert parse_certificate(text) == cert
    for seed in range(10):
        c, _ = random_certificate(4, seed)
        assert parse_certificate(format_certificate(c)) == c


@pytest.mark.parametrize("text", ["", "O1 0 1 3 4 5\n", "base 0 1 2\nO3 1 2\n", "base 0 1 2\nO1 0 1 3\n"])
def test_malformed_certificates(text):
    with pytest.raises(FormatError):
        parse_certificate(text)


def test_dot_without_labels(c6):
    dot = to_dot(c6)
    assert dot.count(" -- ") == 6 and "cluster" not in dot
