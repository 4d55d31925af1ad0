"""Shared default generators for calls made without an explicit rng.

One generator per seed lives for the whole process, so repeated calls keep
drawing from the same stream instead of restarting it.
"""
import random

import numpy as np
from django.conf import settings

_python_generators = {}
_numpy_generators = {}


def default_random():
    """общий random.Random, посеянный RANDOM_SEED"""
    seed = settings.RANDOM_SEED
    if seed not in _python_generators:
        _python_generators[seed] = random.Random(seed)
    return _python_generators[seed]


def default_numpy_rng():
    """общий numpy Generator, посеянный RANDOM_SEED"""
    seed = settings.RANDOM_SEED
    if seed not in _numpy_generators:
        _numpy_generators[seed] = np.random.default_rng(seed)
    return _numpy_generators[seed]
