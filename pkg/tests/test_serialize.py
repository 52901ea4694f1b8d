import numpy as np
import pytest

from vqcbench import serialize
from vqcbench.baseline import fit_logistic
from vqcbench.errors import ConfigurationError
from vqcbench.preprocess import fit_pca, fit_scaler


def _models():
    rng = np.random.default_rng(0)
    X = rng.normal(size=(30, 4)) * np.pi
    y = (X[:, 0] > 0).astype(int)
    return [fit_scaler(X), fit_pca(X, 3), fit_logistic(X, y)]


@pytest.mark.parametrize("index", [0, 1, 2])
def test_round_trip_exact(tmp_path, index):
    model = _models()[index]
    path = tmp_path / "m.txt"
    serialize.save(model, path)
    back = serialize.load(path)
    assert type(back) is type(model)
    for name, value in vars(model).items():
        np.testing.assert_array_equal(getattr(back, name), value)


def test_rejects_garbage():
    with pytest.raises(ConfigurationError):
        serialize.loads("hello\n")
    with pytest.raises(ConfigurationError):
        serialize.loads("vqcbench-model 1\nkind pca\nend\n")
    with pytest.raises(ConfigurationError):
        serialize.dumps(object())
