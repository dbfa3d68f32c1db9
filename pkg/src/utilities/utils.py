"""
Shared helpers: logging, error types, value checks and seeded random streams.
"""

from __future__ import annotations

import logging
from typing import Any, Mapping, Sequence

import numpy as np


def get_logger(name=__name__, level=logging.INFO) -> logging.Logger:
    """Initializes python logger."""
    logger = logging.getLogger(name)
    logger.setLevel(level)
    return logger


log = get_logger(__name__)


class ParameterDomainError(ValueError):
    """A numeric parameter lies outside of its admissible domain."""


class ConfigError(ValueError):
    """The experiment configuration cannot be parsed or contains unknown keys."""


class DimensionError(ValueError):
    """Sequence lengths do not match the execution horizon (or each other)."""


class MissingArtifactError(FileNotFoundError):
    pass


def raise_error_if_invalid_value(value: Any, possible_values: Sequence[Any], name: str = None):
    """Raises an error if the given value (optionally named by name) is not one of the possible values."""
    if value not in possible_values:
        name = name or (value.__name__ if hasattr(value, "__name__") else "value")
        raise ConfigError(f"{name} must be one of {possible_values}, but was {value}")
    return value


def check_domain(name: str, value: float, bound: str, is_valid: bool):
    """Raise a ParameterDomainError naming the parameter and its bound if ``is_valid`` is False."""
    if not is_valid:
        raise ParameterDomainError(f"{name}={value} violates {bound}")


def raise_if_invalid_shape(value: np.ndarray, expected_shape: tuple, name: str = None):
    if value.shape != tuple(expected_shape):
        name = name or "array"
        raise DimensionError(f"Expected {name} to have shape {tuple(expected_shape)}, but got {value.shape}")


# Random streams. Every stream of an experiment is derived from the single master seed as
# SeedSequence(seed, spawn_key=(stream_id,)), so adding or removing strategies never shifts another stream.
RANDOM_STREAMS: Mapping[str, int] = {
    "benchmark": 0,
    "adagrad": 1,
    "rmsprop": 2,
    "adam": 3,
    "custom": 4,
    "simulate": 5,
}


def get_rng(seed: int, stream: str | int | None = None) -> np.random.Generator:
    """Returns a PCG64 generator for the given master seed and (optional) named sub-stream.

    Normal draws are taken with ``Generator.standard_normal`` (numpy's ziggurat transform);
    pinning the bit generator to PCG64 freezes the bit stream across numpy versions.
    """
    if stream is None:
        seed_seq = np.random.SeedSequence(seed)
    else:
        stream_id = RANDOM_STREAMS[stream] if isinstance(stream, str) else int(stream)
        seed_seq = np.random.SeedSequence(seed, spawn_key=(stream_id,))
    return np.random.Generator(np.random.PCG64(seed_seq))
