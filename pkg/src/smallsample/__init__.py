"""Fast sampling of small numbers of distinct integers, with reference algorithms."""

__version__ = "0.1.0"

from .general import (
    insertion_sampling,
    insertion_sampling_uo,
    pool_sampling,
    reservoir_l,
    reservoir_l_uo,
    reservoir_r,
    reservoir_r_uo,
    shuffle,
)
from .prng import CountingSource, RandomSource, ScriptedSource, SplitMix64
from .small import (
    CompareChangeNetwork,
    CompareChangeStep,
    build_network,
    random_four_tuple,
    random_four_tuple_into,
    random_pair,
    random_pair_into,
    random_triple,
    random_triple_into,
    run_network,
    run_network_into,
)

__all__ = [
    "CompareChangeNetwork",
    "CompareChangeStep",
    "CountingSource",
    "RandomSource",
    "ScriptedSource",
    "SplitMix64",
    "build_network",
    "insertion_sampling",
    "insertion_sampling_uo",
    "pool_sampling",
    "random_four_tuple",
    "random_four_tuple_into",
    "random_pair",
    "random_pair_into",
    "random_triple",
    "random_triple_into",
    "reservoir_l",
    "reservoir_l_uo",
    "reservoir_r",
    "reservoir_r_uo",
    "run_network",
    "run_network_into",
    "shuffle",
]
