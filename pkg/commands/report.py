from dataclasses import dataclass, field

from config import ReportFormat
from utils.json_io import dump_json
from utils.report_templates import ReportTemplates


@dataclass(frozen=True)
class Verdict:
    """
    One verified statement.

    Attributes:
        name (str): What was checked.
        passed (bool): Outcome.
        certifies (str | None): The invariant a passing check certifies.
        witness (object | None): JSON-ready counterexample or evidence.
    """
    name: str
    passed: bool
    certifies: str = None
    witness: object = None

    def __post_init__(self):
        if self.certifies is None and self.witness is None:
            raise ValueError(f"Verdict '{self.name}' needs a witness or a certified invariant")

    def to_json(self):
        return {"name": self.name, "passed": self.passed, "certifies": self.certifies, "witness": self.witness}


@dataclass
class Report:
    """
    Outcome of a command: echoed parameters, results, verdicts and the
    convention block.

    Attributes:
        command (str): Command name.
        parameters (dict): Echo of the effective parameters.
        results (dict): JSON-ready computed data.
        verdicts (list): Verdict objects.
        elapsed_ms (int | None): Wall time, emitted only when requested.
    """
    command: str
    parameters: dict
    results: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)
    elapsed_ms: int = None

    @property
    def passed(self):
        return all(v.passed for v in self.verdicts)

    def add(self, name, passed, certifies=None, witness=None):
        self.verdicts.append(Verdict(name, bool(passed), certifies, witness))

    def to_json(self, include_timing=False):
        data = {
            "command": self.command,
            "parameters": self.parameters,
            "conventions": dict(ReportTemplates.CONVENTIONS),
            "results": self.results,
            "verdicts": [v.to_json() for v in self.verdicts],
            "passed": self.passed,
        }
        if include_timing and self.elapsed_ms is not None:
            data["timing"] = {"elapsed_ms": self.elapsed_ms}
        return data

    def render(self, report_format=ReportFormat.JSON, include_timing=False):
        data = self.to_json(include_timing)
        if ReportFormat(report_format) is ReportFormat.MARKDOWN:
            return ReportTemplates.format_markdown(data)
        return dump_json(data)
