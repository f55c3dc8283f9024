"""Differential spectra, the uniformity-two test, and Walsh fingerprints."""

import hashlib
import json

import numpy as np

from . import kernels
from .errors import FieldTooLarge
from .gf2m import Field

_SIZE_GATE = 16


class DifferentialSpectrum:
    """Distribution of derivative solution counts.

    counts maps a solution count c to the number of (a, b) pairs, a
    nonzero, for which f(x+a)+f(x) = b has exactly c solutions; delta is
    the largest count that occurs.
    """

    __slots__ = ("m", "counts", "delta")

    def __init__(self, m, counts):
        self.m = m
        self.counts = dict(sorted(counts.items()))
        self.delta = max(c for c, n in self.counts.items() if n > 0)

    def __eq__(self, other):
        return (isinstance(other, DifferentialSpectrum)
                and self.m == other.m and self.counts == other.counts)

    def __repr__(self):
        return f"DifferentialSpectrum(m={self.m}, delta={self.delta}, counts={self.counts})"


def _gate(field):
    if field.m > _SIZE_GATE:
        raise FieldTooLarge(
            f"value-table analysis capped at m <= {_SIZE_GATE}, got {field.m}")


def differential_spectrum(f):
    """Full spectrum of the map; table-driven, m <= 16."""
    _gate(f.field)
    table = kernels.value_table(f.field, f.terms())
    hist = kernels.spectrum_hist(table, f.field.q)
    counts = {c: int(n) for c, n in enumerate(hist) if n}
    return DifferentialSpectrum(f.field.m, counts)


def is_apn(f):
    """True when the differential uniformity is exactly two; aborts a
    candidate at the first solution count that reaches four."""
    _gate(f.field)
    table = kernels.value_table(f.field, f.terms())
    return kernels.is_apn_table(table, f.field.q)


def uniformity(f):
    return differential_spectrum(f).delta


def walsh_fingerprint(f):
    """Multiset of Walsh transform values over all (a, b) with b nonzero,
    as a dict value -> multiplicity."""
    _gate(f.field)
    fld = f.field
    q = fld.q
    table = kernels.value_table(fld, f.terms())
    pm = fld.pair_table()
    inv = np.zeros(q, dtype=np.int64)
    inv[pm] = np.arange(q, dtype=np.int64)
    pmf_perm = pm[table[inv]]
    hist = kernels.walsh_hist(pmf_perm, q)
    return {v - q: int(n) for v, n in enumerate(hist) if n}


def fingerprint_digest(fp):
    """Stable hex digest of a Walsh fingerprint."""
    blob = json.dumps([[int(v), int(n)] for v, n in sorted(fp.items())],
                      separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()
