import numpy as np
import pytest

from seqlat.rearrangement import StepFunction


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_step(rng, atoms=4, total=0.9, signed=True):
    """Step function on [0,1] with explicit atom positions."""
    m = rng.dirichlet(np.ones(atoms)) * total
    v = np.exp(rng.normal(0.0, 1.0, atoms))
    if signed:
        v = v * rng.choice([-1.0, 1.0], atoms)
    starts = np.concatenate([[0.0], np.cumsum(m)[:-1]])
    return StepFunction(list(zip(v, m)), starts=starts)


def random_substochastic(rng, nrows, ncols, signed=True):
    """Matrix with max column sum <= 1 and max row sum <= 1."""
    S = rng.uniform(0.0, 1.0, (nrows, ncols))
    S /= max(float(S.sum(axis=0).max()), float(S.sum(axis=1).max()))
    if signed:
        S = S * rng.choice([-1.0, 1.0], (nrows, ncols))
    return S


def disjoint_step_family(rng, members=3, atoms_each=2, total=0.9):
    """Pairwise disjoint positive step functions covering part of [0,1]."""
    weights = rng.dirichlet(np.ones(members)) * total
    out = []
    offset = 0.0
    for w in weights:
        m = rng.dirichlet(np.ones(atoms_each)) * w
        v = np.exp(rng.normal(0.0, 0.8, atoms_each))
        starts = offset + np.concatenate([[0.0], np.cumsum(m)[:-1]])
        out.append(StepFunction(list(zip(v, m)), starts=starts))
        offset += w
    return out
