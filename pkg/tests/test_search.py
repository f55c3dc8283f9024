"""Family scans, checkpointing, and the fixed-degree classifications."""

import json

import pytest

import apnsurf.search as search
from apnsurf.differential import (differential_spectrum, fingerprint_digest,
                                  is_apn, walsh_fingerprint)
from apnsurf.errors import (BudgetExceeded, CorruptCheckpoint,
                            InvalidParameters)
from apnsurf.gf2m import Field
from apnsurf.polyfunc import PolyFunc
from apnsurf.search import (Hit, SearchJob, SearchResult, checkpoint_resume,
                            checkpoint_save, classify_degree6,
                            classify_degree7, classify_degree9, scan)

F8 = Field(3)
F16 = Field(4)


def test_job_validation():
    with pytest.raises(InvalidParameters):
        SearchJob(F16, [(6, 1)], (3, 4))
    with pytest.raises(InvalidParameters):
        SearchJob(F16, [(6, 1)], (3, 1))
    with pytest.raises(InvalidParameters):
        SearchJob(F16, [(6, 1)], (0, 3))
    with pytest.raises(InvalidParameters):
        SearchJob(F16, [(6, 1)], (3, 3))
    with pytest.raises(InvalidParameters):
        SearchJob(F16, [(6, 1)], (3, 6))
    with pytest.raises(InvalidParameters):
        SearchJob(F8, [(6, 1)], (9,))
    with pytest.raises(InvalidParameters):
        SearchJob(F16, [(6, 1)], (3,), budget=0)


def test_index_little_endian_roundtrip():
    job = SearchJob(F16, [(6, 1)], (3, 5))
    assert job.candidates == 256
    assert job.coeff_vector(7 + 3 * 16) == (7, 3)
    assert job.index_of((7, 3)) == 55
    f = job.candidate(55)
    assert dict(f.terms()) == {6: 1, 3: 7, 5: 3}
    assert job.coeff_vector(0) == (0, 0)
    assert job.candidate(0) == PolyFunc.monomial(F16, 6)


def test_scan_degree6_m4_frozen():
    job = SearchJob(F16, [(6, 1)], (3, 5))
    res = scan(job)
    assert [h.coeffs for h in res.hits] == [(0, 0)]
    assert res.hits[0].delta == 2
    assert res.scanned == 256 and res.cursor == 256
    assert res.aborted_early == 255
    x3 = PolyFunc.monomial(F16, 3)
    assert res.hits[0].digest == fingerprint_digest(walsh_fingerprint(x3))


def test_scan_matches_direct_check():
    job = SearchJob(F8, [(5, 1)], (3,))
    res = scan(job)
    want = []
    for c in range(8):
        f = PolyFunc(F8, [(5, 1), (3, c)])
        if is_apn(f):
            want.append((c,))
    assert [h.coeffs for h in res.hits] == want


def test_worker_count_invariance(monkeypatch):
    monkeypatch.setattr(search, "SHARD", 32)
    job = SearchJob(F16, [(6, 1)], (3, 5))
    one = scan(job, workers=1)
    three = scan(job, workers=3)
    assert [h.index for h in one.hits] == [h.index for h in three.hits]
    assert one.scanned == three.scanned


def test_split_scan_equals_full_scan():
    job = SearchJob(F16, [(6, 1)], (3, 5))
    full = scan(job)
    a = scan(job, 0, 100)
    b = scan(job, 100)
    assert a.cursor == 100 and b.start == 100
    got = [h.index for h in a.hits] + [h.index for h in b.hits]
    assert got == [h.index for h in full.hits]


def test_checkpoint_roundtrip(tmp_path):
    job = SearchJob(F16, [(6, 1)], (3, 5))
    path = tmp_path / "ck"
    checkpoint_save(path, job, 100)
    assert checkpoint_resume(path, job) == 100


def test_checkpoint_rejects_garbage(tmp_path):
    job = SearchJob(F16, [(6, 1)], (3, 5))
    path = tmp_path / "ck"
    path.write_text("not a checkpoint\n")
    with pytest.raises(CorruptCheckpoint):
        checkpoint_resume(path, job)
    path.write_text("feedbeef 100\n")
    with pytest.raises(CorruptCheckpoint):
        checkpoint_resume(path, job)
    checkpoint_save(path, job, 10)
    other = SearchJob(F16, [(6, 1)], (3,))
    with pytest.raises(CorruptCheckpoint):
        checkpoint_resume(path, other)
    path.write_text("%s %d\n" % (job.family_hash(), 10 ** 6))
    with pytest.raises(CorruptCheckpoint):
        checkpoint_resume(path, job)
    with pytest.raises(CorruptCheckpoint):
        checkpoint_resume(tmp_path / "missing", job)


def test_budget_exceeded_carries_partial_and_resumes():
    q2 = 16 * 16
    small = SearchJob(F16, [(6, 1)], (3, 5), budget=50 * q2)
    with pytest.raises(BudgetExceeded) as err:
        scan(small)
    partial = err.value.partial
    assert partial.cursor == 50 and partial.scanned == 50
    rest = scan(SearchJob(F16, [(6, 1)], (3, 5)), start=partial.cursor)
    full = scan(SearchJob(F16, [(6, 1)], (3, 5)))
    got = [h.index for h in partial.hits] + [h.index for h in rest.hits]
    assert got == [h.index for h in full.hits]


def test_budget_too_small_for_anything():
    job = SearchJob(F16, [(6, 1)], (3,), budget=10)
    with pytest.raises(BudgetExceeded) as err:
        scan(job)
    assert err.value.partial.cursor == 0
    assert err.value.partial.scanned == 0


def test_empty_and_fixed_only_families():
    empty = SearchJob(F8, [], ())
    res = scan(empty)
    assert res.hits == [] and res.scanned == 1 and res.cursor == 1
    fixed = SearchJob(F8, [(3, 1)], ())
    res = scan(fixed)
    assert len(res.hits) == 1 and res.hits[0].coeffs == ()


def test_jsonl_shape():
    res = scan(SearchJob(F16, [(6, 1)], (3, 5)))
    lines = res.to_jsonl().strip().split("\n")
    assert len(lines) == 1
    rec = json.loads(lines[0])
    assert rec["coeffs"] == ["0x0", "0x0"]
    assert rec["delta"] == 2 and len(rec["digest"]) == 64
    none = scan(SearchJob(F8, [], ()))
    assert none.to_jsonl() == ""


def test_hits_closed_under_scaling():
    job = SearchJob(F16, [(9, 1)], (3, 6))
    res = scan(job)
    hitset = {h.coeffs for h in res.hits}
    assert (0, 0) in hitset
    for a3, a6 in hitset:
        for a in range(1, 16):
            ia = F16.inv(a)
            moved = (F16.mul(a3, F16.pow_(ia, 6)),
                     F16.mul(a6, F16.pow_(ia, 3)))
            assert moved in hitset, (a3, a6, a)


def test_classify_degree6():
    for m in (4, 5):
        rep = classify_degree6(m)
        assert [h.coeffs for h in rep.all_hits()] == [(0, 0)]
        assert rep.reference_digests["x^3"] == rep.reference_digests["x^6"]
        assert rep.all_hits()[0].digest == rep.reference_digests["x^3"]
        assert any("necessary but not sufficient" in n for n in rep.notes)
    with pytest.raises(InvalidParameters):
        classify_degree6(2)


def test_classify_degree7_m4_and_m5():
    rep4 = classify_degree7(4)
    assert rep4.all_hits() == []
    rep5 = classify_degree7(5)
    hits = rep5.all_hits()
    assert hits
    coeffs = {h.coeffs for h in hits}
    assert (0, 0, 0) in coeffs
    ref = rep5.reference_digests["x^7"]
    assert all(h.digest == ref for h in hits)
    assert any("matches" in n for n in rep5.notes)


def test_classify_degree9_m4():
    rep = classify_degree9(4)
    labels = [s.label for s in rep.scans]
    assert len(labels) == 6
    assert any("a6^2" in lbl for lbl in labels)
    by_label = {s.label: s for s in rep.scans}
    plain = by_label["x^9+a6*x^6+a3*x^3"]
    assert (0, 0) in {h.coeffs for h in plain.hits}
    assert any("maps into a reduced family" in n for n in rep.notes)
    full = by_label["x^9+a7*x^7+a6*x^6+a5*x^5+a3*x^3"]
    assert (0, 0, 0, 0) in {h.coeffs for h in full.hits}
    as_json = json.dumps(rep.as_dict())
    assert "a6" in as_json


def test_classify_report_dict_roundtrip():
    rep = classify_degree6(4)
    d = rep.as_dict()
    assert d["degree"] == 6 and d["m"] == 4
    assert d["scans"][0]["hits"][0]["coeffs"] == {"a3": 0, "a5": 0}
    json.loads(json.dumps(d))
