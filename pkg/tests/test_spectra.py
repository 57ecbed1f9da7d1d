import numpy as np
import pytest

from dsff_lab.ensembles import EnsembleSpec, MatrixSample
from dsff_lab.spectra import (
    CacheHeaderError,
    CacheLengthError,
    CacheVersionError,
    EigensolverError,
    SpectraError,
    eigenvalues,
    load_spectra,
    sample_spectra,
    save_spectra,
)

SPEC = EnsembleSpec(field="complex", distribution="gaussian", n=16)


def test_eigenvalues_of_diagonal_matrix():
    diag = np.array([1.0 + 2.0j, -0.5, 3.0j])
    sample = eigenvalues(MatrixSample(entries=np.diag(diag), master_seed=0, sample_index=4))
    assert sample.sample_index == 4
    assert np.allclose(np.sort_complex(sample.eigenvalues), np.sort_complex(diag))


def test_eigenvalues_input_validation():
    with pytest.raises(ValueError, match="square"):
        eigenvalues(MatrixSample(entries=np.zeros((2, 3)), master_seed=0, sample_index=0))
    bad = np.array([[1.0, np.nan], [0.0, 1.0]])
    with pytest.raises(ValueError, match="finite"):
        eigenvalues(MatrixSample(entries=bad, master_seed=0, sample_index=0))


def test_eigensolver_error_carries_sample_index(monkeypatch):
    def boom(_):
        raise np.linalg.LinAlgError("did not converge")

    monkeypatch.setattr(np.linalg, "eigvals", boom)
    with pytest.raises(EigensolverError, match="sample 7") as err:
        eigenvalues(MatrixSample(entries=np.eye(3), master_seed=0, sample_index=7))
    assert err.value.sample_index == 7
    assert isinstance(err.value, SpectraError)


def test_sample_spectra_shape_and_determinism():
    a = sample_spectra(SPEC, 6, 123, parallelism=1)
    b = sample_spectra(SPEC, 6, 123, parallelism=3)
    assert a.eigenvalues.shape == (6, 16)
    assert a.eigenvalues.dtype == np.complex128
    assert a.eigenvalues.tobytes() == b.eigenvalues.tobytes()
    assert a.m == 6 and a.n == 16


def test_sample_views():
    sset = sample_spectra(SPEC, 3, 9)
    third = sset.sample(2)
    assert third.sample_index == 2
    assert np.array_equal(third.eigenvalues, sset.eigenvalues[2])
    assert [s.sample_index for s in sset.samples()] == [0, 1, 2]


def test_sample_spectra_validation():
    with pytest.raises(ValueError, match="m must"):
        sample_spectra(SPEC, 0, 1)


def test_save_load_roundtrip(tmp_path):
    path = str(tmp_path / "spectra.bin")
    sset = sample_spectra(SPEC, 4, 77)
    save_spectra(sset, path)
    loaded = load_spectra(path)
    assert loaded.spec == sset.spec
    assert loaded.master_seed == 77
    assert loaded.eigenvalues.tobytes() == sset.eigenvalues.tobytes()
    assert not loaded.eigenvalues.flags.writeable

    # saving the loaded set again is byte-identical
    path2 = str(tmp_path / "spectra2.bin")
    save_spectra(loaded, path2)
    assert (tmp_path / "spectra.bin").read_bytes() == (tmp_path / "spectra2.bin").read_bytes()


def test_load_rejects_bad_magic(tmp_path):
    path = tmp_path / "junk.bin"
    path.write_bytes(b"not a cache at all\n" + b"\x00" * 64)
    with pytest.raises(CacheHeaderError):
        load_spectra(str(path))


def test_load_rejects_corrupt_header(tmp_path):
    path = tmp_path / "corrupt.bin"
    path.write_bytes(b"dsff-spectra {not json}\n")
    with pytest.raises(CacheHeaderError):
        load_spectra(str(path))
    path.write_bytes(b'dsff-spectra {"m": 1}\n')
    with pytest.raises(CacheHeaderError):
        load_spectra(str(path))


def test_load_rejects_unknown_version(tmp_path):
    path = str(tmp_path / "future.bin")
    sset = sample_spectra(SPEC, 2, 5)
    save_spectra(sset, path)
    blob = open(path, "rb").read()
    blob = blob.replace(b'"format_version":1', b'"format_version":2', 1)
    open(path, "wb").write(blob)
    with pytest.raises(CacheVersionError):
        load_spectra(path)


def test_load_rejects_truncated_payload(tmp_path):
    path = str(tmp_path / "short.bin")
    sset = sample_spectra(SPEC, 2, 5)
    save_spectra(sset, path)
    blob = open(path, "rb").read()
    open(path, "wb").write(blob[:-16])
    with pytest.raises(CacheLengthError):
        load_spectra(path)


def test_error_hierarchy():
    for cls in (CacheHeaderError, CacheVersionError, CacheLengthError, EigensolverError):
        assert issubclass(cls, SpectraError)


def test_spectra_match_direct_eigendecomposition():
    from dsff_lab.ensembles import sample_matrix

    sset = sample_spectra(SPEC, 3, 55)
    for i in range(3):
        direct = np.linalg.eigvals(sample_matrix(SPEC, 55, i).entries)
        assert np.array_equal(np.asarray(sset.eigenvalues[i]), direct)
