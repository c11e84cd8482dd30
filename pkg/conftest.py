import numpy as np
import pytest

from core import Prng
from lstm import NetworkConfig, init_network
from simulation import SimConfig, preset_train, simulate_run
from utils.cache import clear_cache


@pytest.fixture(autouse=True)
def _isolated_env(monkeypatch):
    for name in ("STRAINCAST_SEED", "STRAINCAST_CONFIG", "STRAINCAST_LOG_LEVEL", "SOURCE_DATE_EPOCH"):
        monkeypatch.delenv(name, raising=False)
    clear_cache()
    yield
    clear_cache()


@pytest.fixture
def small_config():
    return NetworkConfig(lstm_hidden_sizes=[3], dense_hidden=4, window_size=4)


@pytest.fixture
def small_net(small_config):
    return init_network(small_config, Prng(11))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def test_run():
    """Noisy test-train crossing at 50 kmph."""
    return simulate_run(preset_train("test"), cfg=SimConfig(speed_kmph=50.0, seed=1))
