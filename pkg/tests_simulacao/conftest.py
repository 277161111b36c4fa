"""
Arquivo de configuração central para a suíte de testes das simulações.
Define fixtures reutilizáveis (redes pequenas, calibres e geradores de
números aleatórios) para toda a sessão de testes.
"""

import logging
import os
from pathlib import Path

import numpy as np
import pytest
from dotenv import load_dotenv

from fermions.gauge import uniform_gauge
from lattice.choices import Boundary
from lattice.honeycomb import build_lattice


dotenv_path = Path(__file__).parent / ".env.test"
load_dotenv(dotenv_path=dotenv_path)

logging.getLogger().setLevel(os.getenv("TEST_LOG_LEVEL", "WARNING"))


@pytest.fixture(scope="session")
def test_seed() -> int:
    """Semente base dos testes, lida do .env.test."""
    return int(os.getenv("TEST_SEED", "0"))


@pytest.fixture
def rng(test_seed):
    """Gerador novo por teste, para que a ordem de execução não importe."""
    return np.random.default_rng(test_seed)


@pytest.fixture(scope="session")
def torus_2x2():
    """Menor toro válido: 8 sítios, acessível ao oráculo de vetor de estado."""
    return build_lattice(2, 2, Boundary.TORUS)


@pytest.fixture(scope="session")
def torus_3x3():
    return build_lattice(3, 3, Boundary.TORUS)


@pytest.fixture(scope="session")
def torus_6x6():
    return build_lattice(6, 6, Boundary.TORUS)


@pytest.fixture(scope="session")
def cylinder_4x3():
    return build_lattice(4, 3, Boundary.CYLINDER)


@pytest.fixture(scope="session")
def gauge_2x2(torus_2x2):
    return uniform_gauge(torus_2x2)


@pytest.fixture(scope="session")
def gauge_3x3(torus_3x3):
    return uniform_gauge(torus_3x3)


def random_skew(rng, n: int) -> np.ndarray:
    """Matriz real antissimétrica aleatória n × n."""
    M = rng.normal(size=(n, n))
    return M - M.T
