"""Exhaustive search for almost perfectly nonlinear maps in
coefficient families.

A family is a fixed polynomial part plus free coefficients attached to
a set of monomial degrees.  Candidates are indexed by little-endian
base-q integers: digit j of the index is the coefficient of the j-th
free degree (ascending).  Scans enumerate a contiguous index range
with the early-abort differential kernel, then re-verify every
surviving candidate with a full spectrum computation, so a reported hit
never rests on the fast path alone.

Free degrees may not be powers of two: a linearized summand never
changes differential behaviour, so scanning over its coefficient would
multiply the work by q for nothing.
"""

import hashlib
import json
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .differential import (differential_spectrum, fingerprint_digest,
                           walsh_fingerprint)
from .errors import (BudgetExceeded, CorruptCheckpoint, InvalidParameters)
from .gf2m import Field
from .kernels import power_table, scan_range, value_table
from .polyfunc import PolyFunc, affine_transform, is_q_affine, normalize

DEFAULT_BUDGET = 1 << 30
SHARD = 4096


def _is_pow2(n):
    return n >= 1 and (n & (n - 1)) == 0


class SearchJob:
    """A coefficient family over one field, with a work budget.

    fixed_terms: iterable of (exponent, coefficient) for the bound part.
    free_degrees: monomial degrees carrying free coefficients; stored
    ascending.  The budget caps candidates times q^2 table work.
    """

    __slots__ = ("field", "fixed_terms", "free_degrees", "budget")

    def __init__(self, field, fixed_terms, free_degrees, budget=DEFAULT_BUDGET):
        if budget <= 0:
            raise InvalidParameters("budget must be positive")
        q = field.q
        degs = tuple(sorted(free_degrees))
        if len(set(degs)) != len(degs):
            raise InvalidParameters("duplicate free degree")
        fixed = []
        fixed_degs = set()
        for e, c in fixed_terms:
            c = field.check(c)
            if c:
                fixed.append((int(e), c))
                fixed_degs.add(int(e))
        for e in degs:
            if not 0 < e < q:
                raise InvalidParameters(
                    "free degree %d outside 1..%d" % (e, q - 1))
            if _is_pow2(e):
                raise InvalidParameters(
                    "free degree %d is linearized; strip it" % e)
            if e in fixed_degs:
                raise InvalidParameters(
                    "degree %d is both fixed and free" % e)
        self.field = field
        self.fixed_terms = tuple(sorted(fixed))
        self.free_degrees = degs
        self.budget = budget

    @property
    def candidates(self):
        return self.field.q ** len(self.free_degrees)

    def coeff_vector(self, index):
        """Little-endian base-q digits of index, one per free degree."""
        q = self.field.q
        out = []
        for _ in self.free_degrees:
            out.append(index % q)
            index //= q
        return tuple(out)

    def index_of(self, coeffs):
        q = self.field.q
        index = 0
        for c in reversed(coeffs):
            index = index * q + c
        return index

    def candidate(self, index):
        terms = list(self.fixed_terms)
        for e, c in zip(self.free_degrees, self.coeff_vector(index)):
            terms.append((e, c))
        return PolyFunc(self.field, terms)

    def family_hash(self):
        desc = "m=%d;poly=%#x;fixed=%r;free=%r" % (
            self.field.m, self.field.poly, self.fixed_terms,
            self.free_degrees)
        return hashlib.sha256(desc.encode()).hexdigest()

    def __repr__(self):
        return "SearchJob(m=%d, fixed=%r, free=%r)" % (
            self.field.m, self.fixed_terms, self.free_degrees)


class Hit:
    """One verified family member with differential uniformity two."""

    __slots__ = ("index", "coeffs", "delta", "digest")

    def __init__(self, index, coeffs, delta, digest):
        self.index = index
        self.coeffs = coeffs
        self.delta = delta
        self.digest = digest

    def __repr__(self):
        return "Hit(index=%d, coeffs=%r, delta=%d)" % (
            self.index, self.coeffs, self.delta)


class SearchResult:
    """Outcome of one contiguous scan.

    cursor is the first index not yet processed; feeding it back as
    start continues the scan with an identical combined hit list.
    aborted_early counts candidates rejected by the early-abort pass.
    """

    __slots__ = ("job", "start", "cursor", "hits", "scanned",
                 "aborted_early", "elapsed")

    def __init__(self, job, start, cursor, hits, scanned, elapsed):
        self.job = job
        self.start = start
        self.cursor = cursor
        self.hits = hits
        self.scanned = scanned
        self.aborted_early = scanned - len(hits)
        self.elapsed = elapsed

    def to_jsonl(self):
        lines = []
        for h in self.hits:
            lines.append(json.dumps({
                "index": h.index,
                "coeffs": ["%#x" % c for c in h.coeffs],
                "delta": h.delta,
                "digest": h.digest,
            }, sort_keys=True))
        return "\n".join(lines) + ("\n" if lines else "")

    def __repr__(self):
        return ("SearchResult(hits=%d, scanned=%d, cursor=%d)"
                % (len(self.hits), self.scanned, self.cursor))


def _verify_hit(job, index):
    f = job.candidate(index)
    if f.is_zero or is_q_affine(f):
        return None
    spec = differential_spectrum(f)
    assert spec.delta == 2, (index, spec.delta)
    digest = fingerprint_digest(walsh_fingerprint(f))
    return Hit(index, job.coeff_vector(index), spec.delta, digest)


def scan(job, start=0, stop=None, workers=1):
    """Scan candidate indices [start, stop) in ascending order.

    The hit list is deterministic and independent of worker count.
    When the job's budget cannot cover the range, the covered prefix is
    scanned and BudgetExceeded is raised with the partial result (its
    cursor marks the restart point) attached.
    """
    total = job.candidates
    if stop is None:
        stop = total
    if not 0 <= start <= stop <= total:
        raise InvalidParameters(
            "bad range [%d, %d) for %d candidates" % (start, stop, total))
    if workers < 1:
        raise InvalidParameters("workers must be positive")
    field = job.field
    q = field.q
    t0 = time.perf_counter()
    allowed = job.budget // (q * q)
    eff_stop = min(stop, start + allowed)

    fixed_table = value_table(field, list(job.fixed_terms))
    monos = [power_table(field, e) for e in job.free_degrees]
    mono_tables = (np.array(monos, dtype=np.int64) if monos
                   else np.zeros((0, q), dtype=np.int64))

    shards = [(s, min(s + SHARD, eff_stop))
              for s in range(start, eff_stop, SHARD)]
    raw = []
    if shards:
        def run(bounds):
            lo, hi = bounds
            hits, nh = scan_range(fixed_table, mono_tables, field,
                                  lo, hi, cap=hi - lo)
            assert nh <= hi - lo
            return hits
        if workers == 1 or len(shards) == 1:
            parts = [run(b) for b in shards]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(run, shards))
        for part in parts:
            raw.extend(int(i) for i in part)

    hits = []
    for index in raw:
        h = _verify_hit(job, index)
        if h is not None:
            hits.append(h)
    result = SearchResult(job, start, eff_stop, hits, eff_stop - start,
                          time.perf_counter() - t0)
    if eff_stop < stop:
        raise BudgetExceeded(
            "budget %d covers %d of %d candidates" %
            (job.budget, allowed, stop - start), partial=result)
    return result


# ------------------------------------------------------------- checkpoints

def checkpoint_save(path, job, cursor):
    """Write the family hash and cursor as one line of plain text."""
    with open(path, "w") as fh:
        fh.write("%s %d\n" % (job.family_hash(), cursor))


def checkpoint_resume(path, job):
    """Read a cursor back; the stored hash must match the job."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise CorruptCheckpoint("unreadable checkpoint: %s" % e)
    parts = text.split()
    if len(parts) != 2:
        raise CorruptCheckpoint("expected two fields, got %d" % len(parts))
    if parts[0] != job.family_hash():
        raise CorruptCheckpoint("checkpoint belongs to a different family")
    try:
        cursor = int(parts[1])
    except ValueError:
        raise CorruptCheckpoint("non-integer cursor %r" % parts[1])
    if not 0 <= cursor <= job.candidates:
        raise CorruptCheckpoint("cursor %d out of range" % cursor)
    return cursor


# ----------------------------------------------------------- classification

FINGERPRINT_CAVEAT = ("fingerprint equality is necessary but not "
                      "sufficient for equivalence of maps")


class FamilyScan:
    """One family's scan inside a classification report."""

    __slots__ = ("label", "free_degrees", "hits", "scanned", "elapsed")

    def __init__(self, label, result):
        self.label = label
        self.free_degrees = result.job.free_degrees
        self.hits = result.hits
        self.scanned = result.scanned
        self.elapsed = result.elapsed

    def coeff_maps(self):
        """Hits as degree-keyed dicts, e.g. {"a3": 1, "a6": 9}."""
        out = []
        for h in self.hits:
            out.append({"a%d" % e: c
                        for e, c in zip(self.free_degrees, h.coeffs)})
        return out

    def as_dict(self):
        return {"label": self.label,
                "free_degrees": list(self.free_degrees),
                "scanned": self.scanned,
                "hits": [{"coeffs": dict(zip(
                    ("a%d" % e for e in self.free_degrees), h.coeffs)),
                    "delta": h.delta, "digest": h.digest}
                    for h in self.hits]}


class ClassifyReport:
    """Structured outcome of a fixed-degree classification run."""

    __slots__ = ("degree", "m", "scans", "reference_digests", "notes")

    def __init__(self, degree, m, scans, reference_digests, notes):
        self.degree = degree
        self.m = m
        self.scans = scans
        self.reference_digests = reference_digests
        self.notes = notes

    def all_hits(self):
        return [h for s in self.scans for h in s.hits]

    def as_dict(self):
        return {"degree": self.degree, "m": self.m,
                "scans": [s.as_dict() for s in self.scans],
                "reference_digests": self.reference_digests,
                "notes": list(self.notes)}

    def __repr__(self):
        return "ClassifyReport(degree=%d, m=%d, hits=%d)" % (
            self.degree, self.m, len(self.all_hits()))


def _reference_digest(field, e):
    f = PolyFunc.monomial(field, e)
    return fingerprint_digest(walsh_fingerprint(f))


def classify_degree6(m, workers=1):
    """Scan x^6 + a5*x^5 + a3*x^3 and compare hits against x^3."""
    if not 3 <= m <= 7:
        raise InvalidParameters("degree-6 classification needs 3 <= m <= 7")
    field = Field(m)
    result = scan(SearchJob(field, [(6, 1)], (3, 5)), workers=workers)
    refs = {"x^3": _reference_digest(field, 3),
            "x^6": _reference_digest(field, 6)}
    notes = [FINGERPRINT_CAVEAT,
             "x^6 is a doubling twist of x^3, so their fingerprints agree"]
    return ClassifyReport(6, m, [FamilyScan("x^6+a5*x^5+a3*x^3", result)],
                          refs, notes)


def classify_degree7(m, workers=1):
    """Scan x^7 + a6*x^6 + a5*x^5 + a3*x^3; compare hits against x^7."""
    if not 3 <= m <= 6:
        raise InvalidParameters("degree-7 classification needs 3 <= m <= 6")
    field = Field(m)
    result = scan(SearchJob(field, [(7, 1)], (3, 5, 6)), workers=workers)
    refs = {"x^7": _reference_digest(field, 7)}
    matched = all(h.digest == refs["x^7"] for h in result.hits)
    notes = [FINGERPRINT_CAVEAT]
    if result.hits:
        notes.append("every hit's fingerprint %s that of x^7" %
                     ("matches" if matched else "DOES NOT match"))
    return ClassifyReport(
        7, m, [FamilyScan("x^7+a6*x^6+a5*x^5+a3*x^3", result)], refs, notes)


def _degree9_reduction_note(field, full_hits, reduced_hit_sets):
    """Check every full-family hit lands in a reduced family under some
    substitution x -> a*x + b with the output rescaled monic, and
    report the outcome."""
    q = field.q
    escapees = []
    for h in full_hits:
        f = PolyFunc(field, [(9, 1), (7, h.coeffs[3]), (6, h.coeffs[2]),
                             (5, h.coeffs[1]), (3, h.coeffs[0])])
        found = False
        for a in range(1, q):
            if found:
                break
            c = field.pow_(field.inv(a), 9)
            for b in range(q):
                new = dict(normalize(affine_transform(f, a, b, c)).terms())
                key = set(new)
                for degs, ones, hitset in reduced_hit_sets:
                    shape = {9} | set(degs) | set(ones)
                    if key <= shape and all(new.get(e) == 1 for e in ones):
                        if tuple(new.get(e, 0) for e in degs) in hitset:
                            found = True
                            break
                if found:
                    break
        if not found:
            escapees.append(h.coeffs)
    if escapees:
        return ("full-family hits escaping the reduced families: %r"
                % (escapees,))
    return ("every full-family hit maps into a reduced family under "
            "affine substitution")


def classify_degree9(m, workers=1):
    """Scan the reduced degree-9 families; at m <= 5 also scan the full
    family to confirm the reduction loses no hit."""
    if not 4 <= m <= 6:
        raise InvalidParameters("degree-9 classification needs 4 <= m <= 6")
    field = Field(m)
    q = field.q
    families = [
        ("x^9+x^7+a5*x^5+a3*x^3", [(9, 1), (7, 1)], (3, 5)),
        ("x^9+a6*x^6+x^5+a3*x^3", [(9, 1), (5, 1)], (3, 6)),
        ("x^9+a6*x^6+a3*x^3", [(9, 1)], (3, 6)),
        ("x^9+a5*x^5+a3*x^3", [(9, 1)], (3, 5)),
    ]
    scans = []
    for label, fixed, free in families:
        result = scan(SearchJob(field, fixed, free), workers=workers)
        scans.append(FamilyScan(label, result))

    # coupled one-parameter family, nonzero parameter by construction
    coupled_hits = []
    for a6 in range(1, q):
        f = PolyFunc(field, [(9, 1), (6, a6), (3, field.mul(a6, a6))])
        spec = differential_spectrum(f)
        if spec.delta == 2:
            digest = fingerprint_digest(walsh_fingerprint(f))
            coupled_hits.append(Hit(a6, (a6,), 2, digest))
    coupled_job = SearchJob(field, [(9, 1)], (6,))
    coupled = SearchResult(coupled_job, 0, q, coupled_hits, q - 1, 0.0)
    scans.append(FamilyScan("x^9+a6*x^6+a6^2*x^3 (a6 nonzero)", coupled))

    refs = {"x^3": _reference_digest(field, 3),
            "x^9": _reference_digest(field, 9)}
    notes = [
        FINGERPRINT_CAVEAT,
        "isolated-regime exact bound gives m_max = 9 for degree 9; a "
        "weaker constant in the same count argument reads as m <= 13; "
        "both are reported, neither is silently preferred",
    ]
    if m <= 5:
        full = scan(SearchJob(field, [(9, 1)], (3, 5, 6, 7)),
                    workers=workers)
        scans.append(FamilyScan("x^9+a7*x^7+a6*x^6+a5*x^5+a3*x^3", full))
        reduced_sets = [
            ((3, 5), (7,), {h.coeffs for h in scans[0].hits}),
            ((3, 6), (5,), {h.coeffs for h in scans[1].hits}),
            ((3, 6), (), {h.coeffs for h in scans[2].hits}),
            ((3, 5), (), {h.coeffs for h in scans[3].hits}),
        ]
        notes.append(_degree9_reduction_note(field, full.hits,
                                             reduced_sets))
    return ClassifyReport(9, m, scans, refs, notes)
