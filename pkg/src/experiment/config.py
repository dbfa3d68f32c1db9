"""
Experiment configuration: one dataclass tree, read from and written to a *flat* YAML document.

Leaf keys of the market, problem, optimizer and logging sections live at the top level of the file
(``theta: 5.0e-05``, ``learning_rate: 0.025``). Per-variant optimizer overrides use the variant name as
a dotted prefix (``adam.learning_rate: 0.01``).
"""

from __future__ import annotations

import dataclasses
import os
from typing import Any, Dict, List, Mapping, Optional, Sequence

import dacite
import yaml
from omegaconf import OmegaConf

from src.experiment.logging_utils import LoggingConfig
from src.market.params import ExecutionProblem, MarketParams
from src.optimizers._base_optimizer import OptimizerConfig
from src.optimizers.registry import VARIANTS, get_variant
from src.utilities.dicts import to_flat_dict, to_nested_dict
from src.utilities.utils import (
    ConfigError,
    ParameterDomainError,
    check_domain,
    get_logger,
    raise_error_if_invalid_value,
)


log = get_logger(__name__)

OUTPUT_FORMATS = ("csv", "json", "both")
SIMULATE_STRATEGIES = ("optimum", "uniform") + VARIANTS
INLINE_SECTIONS = {
    "market": MarketParams,
    "problem": ExecutionProblem,
    "optimizer": OptimizerConfig,
    "logging": LoggingConfig,
}
_DACITE_CONFIG = dacite.Config(strict=True, type_hooks={float: float})


def _field_names(data_class) -> List[str]:
    return [field.name for field in dataclasses.fields(data_class)]


@dataclasses.dataclass
class ExperimentConfig:
    """
    Configuration of one experiment (any of the ``simulate``, ``optimize``, ``benchmark``, ``oracle`` runs).

    Attributes:
        market: market coefficients.
        problem: block size and horizon.
        optimizer: hyperparameters shared by all SGD variants.
        variant_overrides: per-variant replacements of optimizer fields, e.g. {"custom": {"learning_rate": 0.01}}.
        variants: SGD variants that are run and benchmarked.
        seed: master seed; every random stream of the experiment is derived from it.
        paths: number of common noise paths the strategies are evaluated on.
        output_dir: directory receiving the artifacts.
        output_format: ``csv``, ``json`` or ``both``.
        include_uniform: add the uniform (TWAP) schedule as an extra benchmark strategy.
        oracle_grid_divisions: the brute-force oracle searches multiples of total_shares / oracle_grid_divisions.
        strategy: strategy executed by the ``simulate`` subcommand.
        variant: SGD variant run by the ``optimize`` subcommand.
        print_config: pretty-print the resolved configuration before running.
        verbose: show progress bars.
        logging: logging configuration.
    """

    market: MarketParams = dataclasses.field(default_factory=MarketParams)
    problem: ExecutionProblem = dataclasses.field(default_factory=ExecutionProblem)
    optimizer: OptimizerConfig = dataclasses.field(default_factory=OptimizerConfig)
    variant_overrides: Dict[str, Dict[str, Any]] = dataclasses.field(default_factory=dict)
    variants: List[str] = dataclasses.field(default_factory=lambda: list(VARIANTS))
    seed: int = 42
    paths: int = 100
    output_dir: str = "results"
    output_format: str = "both"
    include_uniform: bool = False
    oracle_grid_divisions: int = 60
    strategy: str = "optimum"
    variant: str = "custom"
    print_config: bool = False
    verbose: bool = False
    logging: LoggingConfig = dataclasses.field(default_factory=LoggingConfig)

    def __post_init__(self):
        raise_error_if_invalid_value(self.output_format, OUTPUT_FORMATS, name="output_format")
        raise_error_if_invalid_value(self.strategy, SIMULATE_STRATEGIES, name="strategy")
        raise_error_if_invalid_value(self.variant, VARIANTS, name="variant")
        if len(self.variants) == 0 or len(set(self.variants)) != len(self.variants):
            raise ConfigError(f"variants must be a non-empty list without repetitions, but was {self.variants}")
        for variant in self.variants:
            raise_error_if_invalid_value(variant, VARIANTS, name="variants")
        check_domain("seed", self.seed, "0 <= seed < 2**64", 0 <= self.seed < 2**64)
        check_domain("paths", self.paths, "paths >= 1", self.paths >= 1)
        divisions = self.oracle_grid_divisions
        check_domain("oracle_grid_divisions", divisions, "oracle_grid_divisions >= 1", divisions >= 1)
        for variant, overrides in self.variant_overrides.items():
            raise_error_if_invalid_value(variant, VARIANTS, name="variant_overrides")
            unknown = sorted(set(overrides) - set(_field_names(OptimizerConfig)))
            if unknown:
                raise ConfigError(f"Unknown keys: {', '.join(f'{variant}.{key}' for key in unknown)}")
            self.optimizer_config_for(variant)

    def optimizer_config_for(self, variant: str) -> OptimizerConfig:
        """The optimizer config ``variant`` runs with (validated).

        Fields resolve from the shared ``optimizer`` section, then the variant's built-in defaults
        (see ``SGDVariant.default_overrides``), then ``variant_overrides[variant]``.
        """
        overrides = {**get_variant(variant).default_overrides, **self.variant_overrides.get(variant, {})}
        if not overrides:
            return self.optimizer
        return _from_dict(OptimizerConfig, {**dataclasses.asdict(self.optimizer), **overrides})


def _from_dict(data_class, data: Mapping[str, Any]):
    try:
        return dacite.from_dict(data_class=data_class, data=data, config=_DACITE_CONFIG)
    except dacite.DaciteError as e:
        raise ConfigError(str(e)) from e
    except (ConfigError, ParameterDomainError):
        raise
    except (TypeError, ValueError) as e:
        # e.g. a float field given a non-numeric string
        raise ConfigError(str(e)) from e


def _known_keys() -> List[str]:
    keys = [name for section in INLINE_SECTIONS.values() for name in _field_names(section)]
    keys += [name for name in _field_names(ExperimentConfig) if name not in INLINE_SECTIONS]
    return keys


def _is_known(key: str, known: Sequence[str]) -> bool:
    if "." in key:
        variant, _, field = key.partition(".")
        return variant in VARIANTS and field in _field_names(OptimizerConfig)
    return key in known and key != "variant_overrides"


def _to_flat_container(cfg) -> Dict[str, Any]:
    container = OmegaConf.to_container(cfg, resolve=True) or {}
    if not isinstance(container, dict):
        raise ConfigError(f"Config must be a mapping of keys to values, got {type(container).__name__}")
    return to_flat_dict(container)


def config_from_flat_dict(flat: Mapping[str, Any]) -> ExperimentConfig:
    """Builds an ExperimentConfig from flat keys; absent keys take their defaults."""
    known = _known_keys()
    unknown = sorted(key for key in flat if not _is_known(key, known))
    if unknown:
        raise ConfigError(f"Unknown keys: {', '.join(unknown)}")

    inline_keys = {section: _field_names(data_class) for section, data_class in INLINE_SECTIONS.items()}
    nested = to_nested_dict(flat, inline=inline_keys)
    nested["variant_overrides"] = {variant: nested.pop(variant) for variant in VARIANTS if variant in nested}
    return _from_dict(ExperimentConfig, nested)


def parse_config(
    config_path: Optional[str] = None,
    overrides: Sequence[str] = (),
    config_text: Optional[str] = None,
    seed: Optional[int] = None,
    paths: Optional[int] = None,
    out: Optional[str] = None,
    fmt: Optional[str] = None,
) -> ExperimentConfig:
    """Resolves the experiment configuration.

    Precedence (lowest to highest): documented defaults, the flat YAML file (or ``config_text``),
    ``key=value`` overrides, then the explicit ``seed``/``paths``/``out``/``fmt`` flags.

    Raises:
        ConfigError: on unknown keys (all of them are listed) or values of the wrong type.
        ParameterDomainError: if a value violates its domain, e.g. ``rho=1.5 violates |rho| < 1``.
    """
    flat: Dict[str, Any] = {}
    if config_path is not None:
        if not os.path.isfile(config_path):
            raise ConfigError(f"Config file {config_path} does not exist")
        flat.update(_to_flat_container(OmegaConf.load(config_path)))
    if config_text is not None:
        flat.update(_to_flat_container(OmegaConf.create(config_text)))
    if overrides:
        malformed = [override for override in overrides if "=" not in override]
        if malformed:
            raise ConfigError(f"Overrides must look like key=value, got {malformed}")
        flat.update(_to_flat_container(OmegaConf.from_dotlist(list(overrides))))

    flags = {"seed": seed, "paths": paths, "output_dir": out, "output_format": fmt}
    flat.update({key: value for key, value in flags.items() if value is not None})
    return config_from_flat_dict(flat)


def config_to_flat_dict(config: ExperimentConfig) -> Dict[str, Any]:
    nested = dataclasses.asdict(config)
    variant_overrides = nested.pop("variant_overrides")
    flat = to_flat_dict(nested, inline=INLINE_SECTIONS.keys())
    for variant, overrides in variant_overrides.items():
        for key, value in overrides.items():
            flat[f"{variant}.{key}"] = value
    return flat


def emit_config(config: ExperimentConfig) -> str:
    """The flat YAML text of ``config``; ``parse_config(config_text=emit_config(c)) == c``."""
    return yaml.safe_dump(config_to_flat_dict(config), default_flow_style=False, sort_keys=False)
