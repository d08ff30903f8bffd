import logging
import time
from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass

from algebra.errors import MalformedInput
from algebra.groups import FgAbGroup
from commands.report import Report
from simplicial.cochains import Cochain
from simplicial.complexes import Complex
from simplicial.corpus import standard_space
from utils.json_io import load_json

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Manifest:
    """
    One command invocation: the command name, its inputs and parameters.

    Attributes:
        command (str): Subcommand name.
        space (str | None): Corpus space name.
        complex_path (str | None): JSON file with {"vertices", "facets"}.
        group (str | None): Group description such as "Z/2+Z".
        p, q, s, n, length, max_degree, seed (int | None): Numeric parameters.
        form_path, cocycle_path, tower_path (str | None): JSON inputs.
        action (str | None): Sub-operation for deligne and tower.
    """
    command: str
    space: str = None
    complex_path: str = None
    group: str = None
    p: int = None
    q: int = None
    s: int = None
    n: int = None
    length: int = None
    max_degree: int = None
    seed: int = None
    form_path: str = None
    cocycle_path: str = None
    tower_path: str = None
    action: str = None

    @classmethod
    def from_args(cls, args):
        fields = cls.__dataclass_fields__
        return cls(**{name: getattr(args, name) for name in fields if hasattr(args, name)})

    def echo(self):
        return {key: value for key, value in asdict(self).items() if key != "command"}


class BaseCommand(ABC):
    """Base class for all commands"""

    name = None

    def __init__(self, settings):
        """
        Initialize with settings

        Args:
            settings (dict): Output of load_configuration, possibly overridden by flags
        """
        self.settings = settings

    @property
    def budget(self):
        return self.settings['RANK_BUDGET']

    def execute(self, manifest):
        """
        Run the command and time it.

        Args:
            manifest (Manifest): Invocation.

        Returns:
            Report: Results and verdicts.
        """
        started = time.perf_counter()
        report = Report(self.name, self.parameters(manifest))
        self.run(manifest, report)
        report.elapsed_ms = int((time.perf_counter() - started) * 1000)
        logger.info(f"{self.name}: {len(report.verdicts)} verdicts, {'passed' if report.passed else 'FAILED'}")
        return report

    def parameters(self, manifest):
        return manifest.echo()

    @abstractmethod
    def run(self, manifest, report):
        """
        Fill the report with results and verdicts

        Args:
            manifest (Manifest): Invocation.
            report (Report): Report to fill.
        """
        pass

    # Input helpers

    def load_space(self, manifest):
        """(label, Complex) from --space or --complex"""
        if manifest.complex_path:
            return manifest.complex_path, Complex.from_json(load_json(manifest.complex_path))
        if manifest.space:
            return manifest.space, standard_space(manifest.space)
        raise MalformedInput(f"{self.name} needs --space or --complex")

    def load_group(self, manifest):
        if not manifest.group:
            raise MalformedInput(f"{self.name} needs --group")
        return FgAbGroup.parse(manifest.group)

    def load_cochain(self, path, X):
        return Cochain.from_json(load_json(path), X)

    def require(self, manifest, name, default=None):
        value = getattr(manifest, name)
        if value is None:
            if default is None:
                raise MalformedInput(f"{self.name} needs --{name.replace('_', '-')}")
            return default
        return value
