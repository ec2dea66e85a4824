import json

import numpy as np

from saft.fixtures import (a2b3_params, chirped_sinc_fixture, data_path, load_coefficients,
                           local_points, local_setup, write_all)
from saft.generators import Generator
from saft.io import load_params, read_samples, read_signal
from saft.sampling import synthesize

FILES = ["fourier.json", "a2b3.json", "gauss.csv", "chirped_sinc_samples.csv",
         "chirped_sinc_truth.csv", "chirped_sinc_coefficients.json",
         "local_coefficients.json", "local_samples.csv"]


def test_bundled_fixtures_regenerate_identically(tmp_path):
    write_all(tmp_path)
    for name in FILES:
        assert (tmp_path / name).read_bytes() == data_path(name).read_bytes(), name


def test_deterministic_setup():
    a = local_setup()
    b = local_setup()
    assert a[2] == b[2]
    assert np.array_equal(a[3].values, b[3].values)
    x = local_points()
    assert x.size == 61 and x[0] >= -10 and x[-1] <= 10 and np.all(np.diff(x) > 0)
    assert not np.array_equal(local_points(8), x)


def test_bundled_files_consistent():
    A = load_params(data_path("a2b3.json"))
    assert A.c_derived and A == a2b3_params()
    coeffs = load_coefficients(data_path("chirped_sinc_coefficients.json"))
    samples = read_samples(data_path("chirped_sinc_samples.csv"))
    gen = Generator("chirped_sinc")
    assert np.max(np.abs(samples.values - synthesize(A, gen, coeffs, samples.points))) < 1e-15
    truth = read_signal(data_path("chirped_sinc_truth.csv"))
    _, _, _, t2 = chirped_sinc_fixture()
    assert np.array_equal(truth.values, t2.values)
    meta = json.loads(data_path("local_coefficients.json").read_text())
    assert meta["generator"] == "bspline2c" and len(meta["points"]) == 61
