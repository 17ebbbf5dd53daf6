"""
Analysis reports: the subject echo, results, explicit witness maps and
diagnostics of one command, rendered as canonical JSON or as text.

Reports hold no timing or log output, so the same input always yields the
same bytes.
"""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping

from algebra.mv_core import Homomorphism, IsoWitness
from core.errors import HomomorphismError, InvalidArgumentError
from core.utils import canonical_json, hash_data, logger


def witness_record(name: str, witness: IsoWitness) -> Dict[str, Any]:
    """Witness as a list of [from, to] element-name pairs"""
    return {
        'name': name,
        'source': witness.source.label,
        'target': witness.target.label,
        'pairs': [list(pair) for pair in witness.pairs()],
    }


@dataclass
class AnalysisReport:
    subject: Dict[str, Any]
    command: str
    tool_version: str
    result: Dict[str, Any] = field(default_factory=dict)
    witnesses: List[Dict[str, Any]] = field(default_factory=list)
    diagnostics: List[str] = field(default_factory=list)
    exit_hint: int = 0

    @property
    def subject_digest(self) -> str:
        return hash_data(canonical_json(self.subject, indent=None))

    def add_witness(self, name: str, witness: IsoWitness) -> None:
        self.witnesses.append(witness_record(name, witness))

    def as_dict(self) -> Dict[str, Any]:
        return {
            'tool_version': self.tool_version,
            'subject': self.subject,
            'subject_digest': self.subject_digest,
            'command': self.command,
            'result': self.result,
            'witnesses': self.witnesses,
            'diagnostics': self.diagnostics,
            'exit_hint': self.exit_hint,
        }

    def to_json(self) -> str:
        return canonical_json(self.as_dict()) + '\n'

    def to_text(self) -> str:
        lines = [
            f"MV Completion Lab {self.tool_version}",
            f"subject: {canonical_json(self.subject, indent=None)}",
            f"command: {self.command}",
            "result:",
        ]
        for key in sorted(self.result):
            lines.append(f"  {key}: {_plain(self.result[key])}")
        if self.witnesses:
            lines.append("witnesses:")
            for record in self.witnesses:
                lines.append(f"  {record['name']}: {record['source']} -> {record['target']}")
                lines.extend(f"    {a} ↦ {b}" for a, b in record['pairs'])
        if self.diagnostics:
            lines.append("diagnostics:")
            lines.extend(f"  - {d}" for d in self.diagnostics)
        lines.append(f"exit: {self.exit_hint}")
        return '\n'.join(lines) + '\n'

    def render(self, output: str) -> str:
        return self.to_json() if output == 'json' else self.to_text()


def _plain(value: Any) -> str:
    if isinstance(value, str):
        return value
    return canonical_json(value, indent=None)


def reverify_witnesses(report_json: str, live: Mapping[str, IsoWitness]) -> int:
    """
    Read the witnesses back out of a rendered report, rebuild each map by
    element name over the algebras it was computed on, and verify it again.
    Returns the number of witnesses checked.
    """
    records = json.loads(report_json)['witnesses']
    for record in records:
        original = live.get(record['name'])
        if original is None:
            raise HomomorphismError(f"Witness {record['name']!r} has no algebras to check against")
        source, target = original.source, original.target
        try:
            mapping = [0] * source.size
            for a, b in record['pairs']:
                mapping[source.lookup(a)] = target.lookup(b)
            if len(record['pairs']) != source.size:
                raise HomomorphismError(f"Witness {record['name']!r} does not cover {source.label}")
            IsoWitness.from_bijection(Homomorphism(source, target, tuple(mapping)))
        except InvalidArgumentError as e:
            raise HomomorphismError(f"Witness {record['name']!r} does not round-trip: {e}")
    logger(f"Re-verified {len(records)} witness(es)", 'debug')
    return len(records)
