import numpy as np
import pytest

from shared.models import Arena, ModelParams, SimConfig

TABLE_DEFAULTS = """\
# reference desk-scale parameters
ENV_WIDTH=900
ENV_HEIGHT=900
VISUAL_FIELD_RESOLUTION=320
RADIUS_AGENT=5.5
VF_GAM=0.1
VF_V0=1
VF_ALP0=1.0
VF_ALP1=0.09
VF_BET0=0.5
VF_BET1=0.09
AGENT_FOV=1.0
T=20000
N=10
BOUNDARY=torus
VISION_RANGE=2000
"""


@pytest.fixture
def params() -> ModelParams:
    return ModelParams()


@pytest.fixture
def torus() -> Arena:
    return Arena(width=900, height=900, boundary="periodic")


@pytest.fixture
def walls() -> Arena:
    return Arena(width=900, height=900, boundary="reflective")


@pytest.fixture
def small_config() -> SimConfig:
    return SimConfig(n_agents=4, t_max=60, record_stride=10, seed=7)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def config_text() -> str:
    return TABLE_DEFAULTS
