"""Shared fixtures: a disk-backed spectrum cache and acceptance reporting.

Sampled spectra are expensive (dense eigendecompositions), so sets used by
the acceptance tests are stored under tests/.cache keyed by their full
configuration. A cache hit loads byte-identical data through the public
loader; a miss samples once and saves. Delete the directory to force
resampling.
"""
from __future__ import annotations

from pathlib import Path

import pytest

from dsff_lab.ensembles import EnsembleSpec
from dsff_lab.spectra import load_spectra, sample_spectra, save_spectra

CACHE_DIR = Path(__file__).resolve().parent / ".cache"

ACCEPTANCE_LINES = []


def cached_spectra(field, distribution, n, m, master_seed):
    spec = EnsembleSpec(field=field, distribution=distribution, n=n)
    path = CACHE_DIR / f"{field}-{distribution}-n{n}-m{m}-seed{master_seed}.bin"
    if path.exists():
        return load_spectra(str(path))
    CACHE_DIR.mkdir(exist_ok=True)
    sset = sample_spectra(spec, m, master_seed)
    save_spectra(sset, str(path))
    return load_spectra(str(path))


@pytest.fixture(scope="session")
def spectra_cache():
    return cached_spectra


@pytest.fixture
def acceptance_report():
    def record(line):
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.line(line)
