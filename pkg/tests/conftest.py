"""Shared fixtures: the reference state corpus on a 256-point grid."""

import numpy as np
import pytest

from phasekit import core, phasespace

SQRT_HALF = np.sqrt(0.5)
CAT_SEPARATION = 2.5


def build_corpus(grid):
    """Twelve states: Gaussians, oscillator eigenstates, cats, mixtures."""
    ground = core.gaussian_packet(grid, 0.0, 0.0, SQRT_HALF)
    wide = core.gaussian_packet(grid, 0.0, 0.0, 1.0)
    displaced = core.gaussian_packet(grid, 2.0, 1.0, SQRT_HALF)
    squeezed = core.gaussian_packet(grid, 0.0, 3.0, 0.5)
    excited1 = core.oscillator_eigenstate(grid, 1)
    excited2 = core.oscillator_eigenstate(grid, 2)
    a = CAT_SEPARATION
    lobe_m = core.gaussian_packet(grid, -a, 0.0, SQRT_HALF)
    lobe_p = core.gaussian_packet(grid, a, 0.0, SQRT_HALF)
    even_cat = core.superpose([(1.0, lobe_m), (1.0, lobe_p)])
    odd_cat = core.superpose([(1.0, lobe_m), (-1.0, lobe_p)])
    kicked = core.superpose([
        (1.0, core.gaussian_packet(grid, -2.0, 1.0, 0.8)),
        (0.6 + 0.8j, core.gaussian_packet(grid, 1.5, -1.0, 0.7)),
    ])
    far_m = core.gaussian_packet(grid, -3.0, 0.0, SQRT_HALF)
    far_p = core.gaussian_packet(grid, 3.0, 0.0, SQRT_HALF)
    gaussian_mixture = core.MixedState([(0.5, far_m), (0.5, far_p)])
    orthogonal_mixture = core.MixedState([(0.25, ground), (0.75, excited1)])
    thermal_like = core.MixedState([(0.5, ground), (0.3, excited1),
                                    (0.2, excited2)])
    return {
        "ground": ground,
        "wide_gaussian": wide,
        "displaced": displaced,
        "squeezed": squeezed,
        "excited1": excited1,
        "excited2": excited2,
        "even_cat": even_cat,
        "odd_cat": odd_cat,
        "kicked_superposition": kicked,
        "gaussian_mixture": gaussian_mixture,
        "orthogonal_mixture": orthogonal_mixture,
        "thermal_like": thermal_like,
    }


@pytest.fixture(scope="session")
def grid256():
    return core.GridSpec(-16.0, 16.0, 256)


@pytest.fixture(scope="session")
def corpus(grid256):
    return build_corpus(grid256)


@pytest.fixture(scope="session")
def corpus_wigner(corpus):
    return {name: phasespace.wigner_from_state(state)
            for name, state in corpus.items()}
