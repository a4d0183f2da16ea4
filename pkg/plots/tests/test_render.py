import json

import pytest

from ssf_plots import EmptyInput, PlotJob, SchemaError, render
from ssf_plots.cli import main


def job(kind, inputs, out):
    return PlotJob(kind=kind, inputs=[str(p) for p in inputs], output=str(out))


@pytest.mark.parametrize("kind,source", [
    ("xi_curve", "records"),
    ("xi_curve", "records_csv"),
    ("mu_heatmap", "mu"),
    ("det_trace", "det"),
    ("phase_flow", "phases"),
])
def test_kinds_render(golden, tmp_path, kind, source):
    out = tmp_path / f"{kind}_{source}.svg"
    data = render(job(kind, [golden[source]], out))
    assert out.exists() and out.stat().st_size > 0
    assert data.startswith(b"<svg") and data.rstrip().endswith(b"</svg>")


def test_repeated_render_byte_identical(golden, tmp_path):
    for kind, source in (("xi_curve", "records"), ("mu_heatmap", "mu"),
                         ("det_trace", "det"), ("phase_flow", "phases")):
        a = render(job(kind, [golden[source]], tmp_path / "a.svg"))
        b = render(job(kind, [golden[source]], tmp_path / "b.svg"))
        assert a == b
        assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()


def test_mu_heatmap_marks_jumps(golden, tmp_path):
    rows = [json.loads(x) for x in open(golden["mu"])]
    data = render(job("mu_heatmap", [golden["mu"]], tmp_path / "mu.svg"))
    # one vertical jump line per listed jump
    expected = sum(len(r["jumps"]) for r in rows)
    assert data.count(b'stroke-width="0.6"') == expected


def test_single_record_heatmap(golden, tmp_path):
    single = tmp_path / "one.jsonl"
    single.write_text(open(golden["mu"]).readline())
    data = render(job("mu_heatmap", [single], tmp_path / "one.svg"))
    assert data.startswith(b"<svg")


def test_malformed_json_schema_error(tmp_path):
    bad = tmp_path / "bad.jsonl"
    bad.write_text("{not json\n")
    with pytest.raises(SchemaError):
        render(job("xi_curve", [bad], tmp_path / "x.svg"))
    assert main(["--kind", "xi_curve", "--in", str(bad),
                 "--out", str(tmp_path / "x.svg")]) == 2


def test_missing_keys_schema_error(tmp_path):
    bad = tmp_path / "bad2.jsonl"
    bad.write_text(json.dumps({"lambda": 0.0}) + "\n")
    with pytest.raises(SchemaError):
        render(job("xi_curve", [bad], tmp_path / "x.svg"))


def test_empty_input(tmp_path):
    empty = tmp_path / "empty.jsonl"
    empty.write_text("")
    with pytest.raises(EmptyInput):
        render(job("xi_curve", [empty], tmp_path / "x.svg"))
    assert main(["--kind", "mu_heatmap", "--in", str(empty),
                 "--out", str(tmp_path / "x.svg")]) == 2
