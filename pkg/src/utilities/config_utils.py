from __future__ import annotations

import dataclasses
from typing import Any, Dict, Sequence, Union

import yaml

from src.utilities.utils import get_logger


log = get_logger(__name__)


def print_config(
    config,
    fields: Union[str, Sequence[str]] = (
        "market",
        "problem",
        "optimizer",
        "variant_overrides",
        "seed",
        "paths",
    ),
    rich_style: str = "magenta",
    max_width: int = 128,
) -> None:
    """Prints the sections of a dataclass config using Rich library and its tree structure.

    Credits go to: https://github.com/ashleve/lightning-hydra-template

    Args:
        config: Configuration dataclass (e.g. an ``ExperimentConfig``).
        fields (Sequence[str], optional): Determines which main fields from config will
            be printed and in what order. Use "all" to print every field.
        rich_style (str, optional): Style of Rich library to use for printing. E.g "magenta", "bold", "italic", etc.
    """
    import importlib.util

    config_dict = dataclasses.asdict(config)
    if not importlib.util.find_spec("rich"):
        # no pretty printing
        log.info(yaml.safe_dump(config_dict, sort_keys=False))
        return
    import rich.console
    import rich.syntax
    import rich.tree

    tree = rich.tree.Tree(":gear: CONFIG", style=rich_style, guide_style=rich_style)
    if isinstance(fields, str):
        fields = list(config_dict.keys()) if fields.lower() == "all" else [fields]

    for field in fields:
        branch = tree.add(field, style=rich_style, guide_style=rich_style)
        config_section = config_dict.get(field)
        if isinstance(config_section, dict):
            branch_content = yaml.safe_dump(config_section, sort_keys=False) if config_section else "{}"
        else:
            branch_content = str(config_section)
        branch.add(rich.syntax.Syntax(branch_content, "yaml"))

    console = rich.console.Console(width=max_width)
    console.print(tree)


def get_difference_between_dicts(dict1: Dict[str, Any], dict2: Dict[str, Any]) -> Dict[str, Any]:
    """
    Get the entries of the flat dictionary dict2 that are missing from or differ from dict1.

    Args:
        dict1: Flat dictionary (e.g. the default config).
        dict2: Flat dictionary. Use the values of this dictionary if they are different from dict1.
    """
    return {k: v for k, v in dict2.items() if k not in dict1 or dict1[k] != v}
