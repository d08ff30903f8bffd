"""
Report Template Module

Markdown rendering for command reports and the convention block that every
report carries.

Each command has a title template; unknown commands fall back to a
generic one, and a caller can override the title outright.
"""

from typing import Any, Dict, List, Optional

from utils.json_io import dump_json


class ReportTemplates:
    """
    Templates for human-readable reports.

    Attributes:
        CONVENTIONS (Dict[str, str]): Sign conventions and coefficient
            substitutions that results are stated in.
        DEFAULT_TITLE (str): Title used for commands without their own.
        COMMAND_TITLES (Dict[str, str]): Title template per command.
    """

    CONVENTIONS: Dict[str, str] = {
        "orientation": "simplices are sorted vertex tuples; ∂[v_0..v_n] = Σ (-1)^i [.. v_i omitted ..]",
        "mapping_cone": "Cone(f)^n = A^{n+1} ⊕ B^n, d(a, b) = (-d_A a, f(a) + d_B b)",
        "total_complex": "d = d_h + (-1)^r d_v on the (r, s) summand",
        "deligne_cone": "degree n: C^n(Z) ⊕ C^n_{>=q}(Q) ⊕ C^{n-1}(Q), d(c, ω, θ) = (δc, δω, ι(c) - ω - δθ)",
        "tower": "D = δ̌ + (-1)^r δ; collapse reads Čech indices on the front face, cochains on the back face",
        "coefficients": "Q stands in for R, Q/Z for C* (via exp), and Z(q) := Z without the (2πi)^q twist",
        "arithmetic": "exact integers and fractions; no floating point",
    }

    DEFAULT_TITLE: str = "Report: {command}"

    COMMAND_TITLES: Dict[str, str] = {
        "cohomology": "Simplicial cohomology of {space}",
        "em-homology": "Homology of K({group}, {s})",
        "join-model": "Milnor join model of {group}",
        "bar-exactness": "Bar resolution exactness for {group}",
        "deligne": "Deligne cohomology on {space}",
        "weil-kostant": "Weil-Kostant lift on {space}",
        "tower": "Čech tower on {space}",
        "corpus": "Acceptance corpus",
    }

    @classmethod
    def get_title(cls, command: str, parameters: Dict[str, Any], override_title: Optional[str] = None) -> str:
        """
        Title for a report.

        Args:
            command (str): Command name.
            parameters (Dict[str, Any]): Echoed parameters used to fill the template.
            override_title (Optional[str]): Replaces the selected template.

        Returns:
            str: Filled title; missing parameters render as "?".
        """
        if override_title is not None:
            return override_title
        template = cls.COMMAND_TITLES.get(command, cls.DEFAULT_TITLE)
        values = {key: "?" if value is None else value for key, value in parameters.items()}
        values.setdefault("command", command)
        try:
            return template.format(**values)
        except KeyError:
            return cls.DEFAULT_TITLE.format(command=command)

    @classmethod
    def format_verdicts(cls, verdicts: List[Dict[str, Any]]) -> str:
        lines = ["| check | result | certifies / witness |", "|---|---|---|"]
        for verdict in verdicts:
            result = "pass" if verdict["passed"] else "FAIL"
            detail = verdict.get("certifies") or ""
            if verdict.get("witness") is not None:
                detail = f"{detail} witness: `{dump_json(verdict['witness']).strip()}`".strip()
            lines.append(f"| {verdict['name']} | {result} | {detail.replace('|', '/')} |")
        return "\n".join(lines)

    @classmethod
    def format_markdown(cls, report: Dict[str, Any], override_title: Optional[str] = None) -> str:
        """
        Render a report dictionary (Report.to_json output) as markdown.

        Returns:
            str: Title, parameters, conventions, verdict table and results.
        """
        title = cls.get_title(report["command"], report["parameters"], override_title)
        parts = [f"# {title}", ""]
        parts.append("## Parameters")
        parts.extend(f"- {key}: {value}" for key, value in sorted(report["parameters"].items()) if value is not None)
        parts.append("")
        parts.append("## Conventions")
        parts.extend(f"- {key}: {value}" for key, value in report["conventions"].items())
        parts.append("")
        parts.append("## Verdicts")
        parts.append(cls.format_verdicts(report["verdicts"]))
        parts.append("")
        parts.append(f"Overall: {'PASS' if report['passed'] else 'FAIL'}")
        parts.append("")
        parts.append("## Results")
        parts.append("```json")
        parts.append(dump_json(report["results"]).rstrip())
        parts.append("```")
        if "timing" in report:
            parts.append("")
            parts.append(f"Elapsed: {report['timing']['elapsed_ms']} ms")
        return "\n".join(parts) + "\n"
