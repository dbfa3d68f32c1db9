from __future__ import annotations

import dataclasses
import json
import math
import os
from typing import Any, List, Mapping

import numpy as np
import pandas as pd

from src.utilities.utils import get_logger, raise_error_if_invalid_value


log = get_logger(__name__)

FLOAT_FORMAT = "%.17g"


@dataclasses.dataclass
class DataWriterConfig:
    """
    Configuration for experiment artifact writers.

    Args:
        output_format: ``csv`` writes the report as report.csv, ``json`` as report.json, ``both`` writes both.
            Schedules, traces and plot data are always written as CSV tables.
        float_format: printf-style format of every float in a CSV file (17 significant digits round-trip
            double precision exactly).
    """

    output_format: str = "both"
    float_format: str = FLOAT_FORMAT

    def __post_init__(self):
        raise_error_if_invalid_value(self.output_format, ("csv", "json", "both"), name="output_format")

    @property
    def write_csv_report(self) -> bool:
        return self.output_format in ("csv", "both")

    @property
    def write_json_report(self) -> bool:
        return self.output_format in ("json", "both")

    def build(self, experiment_dir: str) -> DataWriter:
        return DataWriter(path=experiment_dir, float_format=self.float_format)


def _json_safe(value: Any) -> Any:
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, Mapping):
        return {str(k): _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


class DataWriter:
    """
    Writes the artifacts of one run into ``path``. Each file is written under a temporary name and then
    renamed into place. Used as a context manager, every file written in the block is removed again if the
    block raises.
    """

    def __init__(self, path: str, float_format: str = FLOAT_FORMAT):
        self.path = path
        self.float_format = float_format
        self.written: List[str] = []
        os.makedirs(path, exist_ok=True)

    def __enter__(self) -> DataWriter:
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is not None:
            self.remove_written()
        return False

    def _commit(self, filename: str, text: str) -> str:
        target = os.path.join(self.path, filename)
        tmp_path = f"{target}.tmp-{os.getpid()}"
        try:
            with open(tmp_path, "w", newline="") as f:
                f.write(text)
            os.replace(tmp_path, target)
        finally:
            if os.path.exists(tmp_path):
                os.remove(tmp_path)
        self.written.append(target)
        log.info(f"Wrote {target}")
        return target

    def write_table(self, filename: str, df: pd.DataFrame) -> str:
        text = df.to_csv(index=False, float_format=self.float_format, lineterminator="\n")
        return self._commit(filename, text)

    def write_text(self, filename: str, text: str) -> str:
        return self._commit(filename, text)

    def write_json(self, filename: str, payload: Mapping[str, Any]) -> str:
        text = json.dumps(_json_safe(payload), indent=2, allow_nan=False) + "\n"
        return self._commit(filename, text)

    def remove_written(self):
        for target in self.written:
            if os.path.exists(target):
                os.remove(target)
                log.info(f"Removed partial artifact {target}")
        self.written = []
