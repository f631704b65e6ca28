"""Bundled link corpus (``data/links.json``) and link-argument resolution."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import ParseError
from .linkdiag import LinkDiagram, parse_link


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    pd: str | None = None
    braid: str | None = None
    expected: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not (self.pd or self.braid):
            raise ParseError(f"corpus entry {self.name!r} has neither a PD code nor a braid")

    def diagram(self, prefer: str = "pd") -> LinkDiagram:
        text = self.pd if (prefer == "pd" and self.pd) or not self.braid else self.braid
        return parse_link(text)


def load_corpus(path: str | Path | None = None) -> dict[str, CorpusEntry]:
    if path is None:
        text = resources.files("surgerykit").joinpath("data/links.json").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"corpus is not valid JSON: {exc}") from None
    items = raw["links"] if isinstance(raw, dict) else raw
    out = {}
    for item in items:
        entry = CorpusEntry(item["name"], item.get("pd"), item.get("braid"), item.get("expected", {}))
        out[entry.name] = entry
    return out


def resolve_link(spec: str, corpus: dict[str, CorpusEntry] | None = None,
                 prefer: str = "pd") -> LinkDiagram:
    """A corpus name or literal ``PD[...]`` / ``BR[...]`` text."""
    corpus = load_corpus() if corpus is None else corpus
    if spec in corpus:
        return corpus[spec].diagram(prefer)
    return parse_link(spec)
