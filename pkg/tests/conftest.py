import numpy as np
import pytest

from ssf_lab import DenseModel, FactoredPerturbation, HalfLineLaplacianModel, HermitianMatrix


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)


def lattice_model(j, sites, weights) -> HalfLineLaplacianModel:
    return HalfLineLaplacianModel(FactoredPerturbation(j=j, sites=sites, weights=weights))


@pytest.fixture
def scalar_plus():
    """Rank-1 site-1 coupling +1: boundary data (0, 1, 1) at energy 0."""
    return lattice_model([[1.0]], [1], [[1.0]])


@pytest.fixture
def scalar_minus():
    return lattice_model([[-1.0]], [1], [[1.0]])


@pytest.fixture
def lattice_mixed():
    return lattice_model(np.diag([1.0, -1.0]), [1, 2], [[1.0, 0.3], [0.2, 0.8]])


@pytest.fixture
def diag_pair():
    """h0 = diag(0, 2), h = diag(1, 3): the worked two-level example."""
    return DenseModel(
        HermitianMatrix(np.diag([0.0, 2.0])),
        FactoredPerturbation(j=np.eye(2), g=np.eye(2)),
    )
