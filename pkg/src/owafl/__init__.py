"""OWA and median-voter mechanisms for facility location, with incentive and fairness analysis."""

from .core import (
    EPS_LOC,
    EPS_W,
    AgmvsParams,
    DomainError,
    GmvsParams,
    Mechanism,
    OwaWeights,
    Profile,
    agmvs_as_gmvs,
    agmvs_locate,
    cost,
    gmvs_locate,
    locate,
    order_statistic_as_agmvs,
    order_statistic_weights,
    owa_locate,
    preset,
    utility,
)

__version__ = "0.1.0"
