import json
import os

import pytest

from modk2 import harness
from modk2.k2model import PresentedK2
from modk2.modsym import get_presentation


def strip_timing(report):
    out = dict(report)
    out.pop("elapsed_ms")
    out.pop("generated")
    return out


def test_every_kind_runs_and_passes():
    cases = [
        ("welldefined", dict(M=5)),
        ("theorem1-divides", dict(M=4, p=2)),
        ("theorem1-coprime", dict(M=4, p=3)),
        ("atkin", dict(M=14, ell=2)),
        ("eisenstein", dict(M=11, ell=3)),
        ("prop31", dict(M=7)),
        ("lemma41", dict(M=4, p=2, trials=30)),
        ("sanity-integrality", dict(M=7)),
    ]
    for kind, kw in cases:
        report = harness.run_check(kind, **kw)
        assert report["ok"], (kind, report)
        assert report["counts"]["failed"] == 0
        assert report["kind"] == kind


def test_report_deterministic():
    a = harness.run_check("lemma41", 4, p=2, trials=20, seed=9)
    b = harness.run_check("lemma41", 4, p=2, trials=20, seed=9)
    assert strip_timing(a) == strip_timing(b)
    c = harness.run_check("theorem1-coprime", 4, p=3)
    d = harness.run_check("theorem1-coprime", 4, p=3)
    assert strip_timing(c) == strip_timing(d)


def test_empty_report_is_valid():
    # genus zero leaves no closed-surface basis vectors to check
    report = harness.run_check("atkin", 5, ell=5)
    assert report["ok"]
    assert report["counts"] == {"total": 0, "failed": 0}
    assert "PASS" in harness.render_text(report)


def test_render_text_marks_failures():
    report = harness.run_check("prop31", 5)
    text = harness.render_text(report)
    assert text.splitlines()[0].startswith("PASS prop31 level=5")
    report["checks"][0]["ok"] = False
    report["ok"] = False
    report["counts"]["failed"] = 1
    text = harness.render_text(report)
    assert "FAIL" in text.splitlines()[0]
    assert any(ln.strip().startswith("[FAIL]") for ln in text.splitlines())


def test_render_json_roundtrip():
    report = harness.run_check("welldefined", 4)
    loaded = json.loads(harness.render_json(report))
    assert loaded == report


def test_select_cusp_subset_modes():
    pres = get_presentation(8)
    orbits = harness.select_cusp_subset(pres, 4, "all")
    assert orbits and all(orbits[i][0] < orbits[i + 1][0]
                          for i in range(len(orbits) - 1))
    first = harness.select_cusp_subset(pres, 4, "orbit")
    assert first == [orbits[0]]
    inf = pres.cusps.class_of_fraction(1, 0)
    through = harness.select_cusp_subset(pres, 4, "infty")
    assert len(through) == 1 and inf in through[0]
    with pytest.raises(ValueError):
        harness.select_cusp_subset(pres, 4, "everything")


def test_wedge_row_cache_roundtrip(tmp_path):
    pk = PresentedK2(5)
    path = os.path.join(str(tmp_path), "k2rows-M5.txt")
    harness.save_wedge_rows(pk, path)
    level, rows = harness.load_wedge_rows(path)
    assert level == 5 and rows == pk.rows
    rebuilt = PresentedK2.from_rows(5, rows)
    assert rebuilt.quotient.invariants() == pk.quotient.invariants()


def test_degeneracy_cache_roundtrip(tmp_path):
    ph = get_presentation(8)
    pl = get_presentation(4)
    pi1, pi2 = harness.degeneracy_pair(ph, pl, 2, str(tmp_path))
    assert os.path.exists(os.path.join(str(tmp_path), "degeneracy-M8-p2.txt"))
    again1, again2 = harness.degeneracy_pair(ph, pl, 2, str(tmp_path))
    assert again1 == pi1 and again2 == pi2
    fresh1, fresh2 = harness.degeneracy_pair(ph, pl, 2, None)
    assert fresh1 == pi1 and fresh2 == pi2


def test_cache_files_written(tmp_path):
    cache = str(tmp_path)
    report = harness.run_check("theorem1-coprime", 4, p=3, backend="both",
                               cache_dir=cache)
    assert report["ok"]
    names = sorted(os.listdir(cache))
    assert "degeneracy-M12-p3.txt" in names
    assert "k2rows-M12.txt" in names
    assert "presentation-M4.txt" in names
    assert "presentation-M12.txt" in names
    with open(os.path.join(cache, "presentation-M4.txt")) as fh:
        assert fh.readline().strip() == "modk2 presentation 1"


def test_presented_backend_annotations():
    report = harness.run_check("theorem1-coprime", 4, p=3, backend="both")
    names = [c["name"] for c in report["checks"]]
    assert "presented-preimage-independence" in names
    assert report["ok"]
    for c in report["checks"]:
        if "presented_high" in c:
            assert "reduced_to_zero" in c["presented_high"]
    report = harness.run_check("eisenstein", 11, ell=3, backend="both")
    assert report["ok"]
    assert all("presented" in c for c in report["checks"])


def test_presentation_text_shape():
    text = harness.presentation_text(5, "C0")
    lines = text.splitlines()
    assert lines[0] == "modk2 presentation 1"
    assert "level 5" in lines
    assert "cusps C0" in lines
    assert any(ln.startswith("subgroup-rank ") for ln in lines)
    assert any(ln.startswith("invariants ") for ln in lines)
    # interior boundary set for level 5 is the two non-unit cusp classes
    bset = [ln for ln in lines if ln.startswith("boundary-set")][0]
    pres = get_presentation(5)
    assert bset == "boundary-set " + " ".join(str(i) for i in pres.cusps.interior)
    with pytest.raises(ValueError):
        harness.presentation_text(5, "some")


def test_run_check_rejects_unknown():
    with pytest.raises(AssertionError):
        harness.run_check("frobnicate", 5)
    with pytest.raises(AssertionError):
        harness.run_check("welldefined", 5, backend="fancy")