"""YAML run reports written by the CLI."""

import logging
import os
from dataclasses import asdict, dataclass, field
from typing import Any, Optional

import yaml

from src import __version__
from src.errors import ParameterError
from src.graphs import Graph
from src.solver import GameValue, GdnResult
from src.strategies.base import VerificationReport

logger = logging.getLogger(__name__)


@dataclass
class RunReport:
    command: list[str]
    graph: str
    parameters: dict[str, Any] = field(default_factory=dict)
    result: dict[str, Any] = field(default_factory=dict)
    nodes: int = 0
    wall_time: float = 0.0
    version: str = __version__

    def to_yaml(self) -> str:
        data = {"version": self.version}
        data.update((k, v) for k, v in asdict(self).items() if k != "version")
        return yaml.safe_dump(data, sort_keys=False, default_flow_style=False)

    @classmethod
    def from_yaml(cls, text: str) -> "RunReport":
        data = yaml.safe_load(text)
        if not isinstance(data, dict) or "version" not in data:
            raise ParameterError("Not a run report: missing version field")
        return cls(**data)

    def save(self, path: str) -> str:
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, "w") as f:
            f.write(self.to_yaml())
        logger.info("wrote report %s", path)
        return path


def load_reports(path: str) -> list[RunReport]:
    """Reports from a file holding one or more YAML documents."""
    with open(path) as f:
        docs = [d for d in yaml.safe_load_all(f) if d is not None]
    return [RunReport(**d) for d in docs]


def save_reports(reports: list[RunReport], path: str) -> str:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w") as f:
        f.write("---\n".join(r.to_yaml() for r in reports))
    return path


def describe_graph(g: Graph) -> str:
    return f"{g.name()} (n={g.n}, m={len(g.edges)})"


def value_fields(value: GameValue) -> dict[str, Any]:
    return {
        "winner": value.winner.value,
        "colors": value.colors,
        "first": value.first.value,
    }


def gdn_fields(result: GdnResult) -> dict[str, Any]:
    fields: dict[str, Any] = {"kind": result.kind, "value": str(result)}
    if result.certificate is not None:
        fields["certificate"] = list(result.certificate.image)
    if result.certificate_kind is not None:
        fields["certificate_kind"] = result.certificate_kind
    fields["winners"] = {d: w.value for d, w in sorted(result.winners.items())}
    if result.notes:
        fields["notes"] = list(result.notes)
    return fields


def verification_fields(report: VerificationReport) -> dict[str, Any]:
    fields: dict[str, Any] = {
        "strategy": report.strategy,
        "side": report.side.value,
        "mode": report.mode,
        "verdict": report.verdict,
        "games": report.games,
    }
    if report.counterexample is not None:
        fields["counterexample"] = [list(m) for m in report.counterexample]
        fields["violations"] = list(report.violations)
    return fields


def default_report_path(report_dir: str, command: str, graph: Optional[Graph] = None) -> str:
    stem = command if graph is None else f"{command}-{graph.name()}"
    return os.path.join(report_dir, f"{stem}.yaml")
