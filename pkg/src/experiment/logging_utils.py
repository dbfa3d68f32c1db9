import dataclasses
import logging
import os
from typing import Union

from src.utilities.utils import get_logger


log = get_logger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


@dataclasses.dataclass
class LoggingConfig:
    """
    Attributes:
        log_to_screen: emit records on stderr. When False only warnings and errors reach the screen.
        log_to_file: also write ``<output_dir>/<subcommand>_out.log``. The log file is not a run artifact
            and is never compared between runs.
        log_format: format of every record.
        level: minimum level, as a name (``"DEBUG"``) or a number.
    """

    log_to_screen: bool = True
    log_to_file: bool = False
    log_format: str = LOG_FORMAT
    level: Union[str, int] = logging.INFO

    def configure_logging(self, experiment_dir: str, log_filename: str):
        """Installs the handlers on the root logger, replacing any earlier configuration."""
        screen_level = self.level if self.log_to_screen else logging.WARNING
        logging.basicConfig(format=self.log_format, level=screen_level, force=True)
        root = logging.getLogger()
        root.setLevel(self.level)
        for handler in root.handlers:
            handler.setLevel(screen_level)
        if not self.log_to_file:
            return
        os.makedirs(experiment_dir, exist_ok=True)
        file_handler = logging.FileHandler(os.path.join(experiment_dir, log_filename))
        file_handler.setLevel(self.level)
        file_handler.setFormatter(logging.Formatter(self.log_format))
        root.addHandler(file_handler)


def log_versions():
    """Logs the versions of the numerical stack the results depend on."""
    import numpy
    import pandas
    import xarray

    for module in (numpy, xarray, pandas):
        log.info(f"{module.__name__} version: {module.__version__}")
