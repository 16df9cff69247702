import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make `oracles` importable

from timtin import decomp
from timtin.fixtures import baseline_map, five_user_network, improved_map


@pytest.fixture(scope="session")
def network5():
    return five_user_network()


@pytest.fixture(scope="session")
def baseline_result(network5):
    return decomp.evaluate_map(network5, baseline_map())


@pytest.fixture(scope="session")
def improved_result(network5):
    return decomp.evaluate_map(network5, improved_map())
