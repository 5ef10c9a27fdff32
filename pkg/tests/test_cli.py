import json

import pytest

from iedcolor.cli import main
from iedcolor.graphs import cube_graph
from iedcolor import io


@pytest.fixture
def files(tmp_path):
    hg = tmp_path / "h.hg"
    hg.write_text("H 4 2\nE 1 2 3\nE 2 3 4\n")
    cube = tmp_path / "cube.g"
    cube.write_text(io.format_graph(cube_graph()))
    p4 = tmp_path / "p4.g"
    p4.write_text("G 4 3\nE 1 2\nE 2 3\nE 3 4\n")
    fano = tmp_path / "fano.hg"
    fano.write_text("H 7 7\n" + "".join(f"E {a} {b} {c}\n" for a, b, c in ((1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3))))
    phi = tmp_path / "phi.f"
    phi.write_text("F 2 1\nC 1 2\n")
    rev = tmp_path / "rev.p"
    rev.write_text("P 3 2\n1 2 3\n3 2 1\n")
    return tmp_path


def run_cli(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_bounds(capsys):
    assert run_cli(capsys, "bounds", "--k", 10, "--delta", 2, "--i", 9, "--mode", "sequences", "--pi-size", 1)[:2] == (0, "R=2\n")
    code, out, _ = run_cli(capsys, "bounds", "--k", 3, "--delta", 2, "--i", 2, "--json")
    assert json.loads(out)["R"] == 16
    code, out, _ = run_cli(capsys, "bounds", "--thresholds")
    assert code == 0 and out.count(" ok") == 4


def test_color_then_verify(files, capsys):
    code, out, _ = run_cli(capsys, "color", "--in", files / "h.hg", "--mode", "sets", "--seed", 7)
    assert code == 0 and out.endswith("# iterations 4 seed 7\n")
    (files / "out.col").write_text(out)
    assert run_cli(capsys, "verify", "--in", files / "h.hg", "--coloring", files / "out.col", "--mode", "sets")[:2] == (0, "ok\n")
    (files / "bad.col").write_text("1 1\n2 2\n3 1\n4 2\n")
    code, out, _ = run_cli(capsys, "verify", "--in", files / "h.hg", "--coloring", files / "bad.col")
    assert code == 1 and out == "violation edges 1 2\n"


def test_same_seed_same_bytes(files, capsys):
    a = run_cli(capsys, "color", "--in", files / "h.hg", "--seed", 3, "--lists", 3, "--json")
    b = run_cli(capsys, "color", "--in", files / "h.hg", "--seed", 3, "--lists", 3, "--json")
    assert a == b


def test_color_cap_exit_code(files, capsys):
    code, out, _ = run_cli(capsys, "color", "--in", files / "h.hg", "--lists", 2, "--seed", 0, "--max-iters", 2)
    assert code == 1 and "incomplete" in out


def test_decode_check(files, capsys):
    code, out, _ = run_cli(capsys, "decode-check", "--in", files / "h.hg", "--mode", "multisets", "--seed", 7)
    assert code == 0 and out.startswith("round-trip OK, ")
    trace = files / "t.log"
    code, out, _ = run_cli(capsys, "color", "--in", files / "h.hg", "--lists", 3, "--seed", 1, "--trace", trace)
    (files / "c.col").write_text(out)
    code, out, _ = run_cli(capsys, "decode-check", "--in", files / "h.hg", "--lists", 3, "--trace", trace, "--coloring", files / "c.col")
    assert code == 0 and len(out.split()) == len(trace.read_text().splitlines())


def test_sequences_with_pi(files, capsys):
    hg = files / "s.hg"
    hg.write_text("H 5 2\nE 1 2 3\nE 3 4 5\n")
    code, out, _ = run_cli(capsys, "color", "--in", hg, "--mode", "sequences", "--pi", files / "rev.p", "--seed", 2)
    assert code == 0
    (files / "s.col").write_text(out)
    code, _, _ = run_cli(capsys, "verify", "--in", hg, "--coloring", files / "s.col", "--mode", "sequences", "--pi", files / "rev.p")
    assert code == 0


def test_dual_total_and_labels(files, capsys):
    code, out, _ = run_cli(capsys, "dual", "--in", files / "cube.g")
    assert code == 0 and out.startswith("H 12 8\n")
    code, out, _ = run_cli(capsys, "total", "--in", files / "cube.g")
    assert out.startswith("H 20 8\n")
    code, out, _ = run_cli(capsys, "dual", "--in", files / "cube.g", "--label", "--seed", 3)
    assert code == 0 and len(out.splitlines()) == 12
    code, out, _ = run_cli(capsys, "total", "--in", files / "cube.g", "--label")
    assert code == 0 and sum(1 for ln in out.splitlines() if ln.startswith("v ")) == 8


def test_gndi_and_property_b(files, capsys):
    assert run_cli(capsys, "gndi", "--in", files / "p4.g")[:2] == (0, "gndi 3\n")
    code, out, _ = run_cli(capsys, "gndi", "--in", files / "p4.g", "--brute", "--json")
    assert json.loads(out) == {"gndi": 3}
    assert run_cli(capsys, "property-b", "--in", files / "fano.hg")[:2] == (1, "none\n")
    code, out, _ = run_cli(capsys, "property-b", "--in", files / "phi.f")
    assert code == 0 and out == "1 2\n2 1\n"


def test_gadget(files, capsys):
    code, out, _ = run_cli(capsys, "gadget", "--in", files / "phi.f", "--girth", 4)
    assert code == 0 and out.startswith("G 11 10\n")


def test_oracle(files, capsys):
    code, out, _ = run_cli(capsys, "oracle", "--in", files / "h.hg", "--lists", 3)
    assert code == 0 and out == "1 1\n2 1\n3 1\n4 2\n"
    code, out, _ = run_cli(capsys, "oracle", "--in", files / "h.hg", "--lists", 1)
    assert code == 1


def test_bench_writes_plot(files, capsys):
    png = files / "b.png"
    code, out, _ = run_cli(capsys, "bench", "--in", files / "h.hg", "--trials", 5, "--plot", png)
    assert code == 0 and out.splitlines()[0] == "trial\tseed\titerations"
    assert "nRlnR" in out and png.stat().st_size > 0
    png2 = files / "s.png"
    code, out, _ = run_cli(capsys, "bench", "--regular", 4, "--sizes", "20,40", "--trials", 3, "--plot", png2)
    assert code == 0 and len(out.splitlines()) == 3 and png2.exists()


def test_input_errors(files, capsys):
    bad = files / "bad.hg"
    bad.write_text("H 2 1\nE 1 x\n")
    code, _, err = run_cli(capsys, "color", "--in", bad)
    assert code == 2 and "line 2" in err
    code, _, err = run_cli(capsys, "color", "--in", files / "missing.hg")
    assert code == 2
    code, _, err = run_cli(capsys, "bounds", "--k", 3)
    assert code == 2
    with pytest.raises(SystemExit) as info:
        main(["color", "--mode", "nope", "--in", "x"])
    assert info.value.code == 2
