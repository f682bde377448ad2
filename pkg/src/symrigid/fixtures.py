"""Bundled example graphs with their partitions and expected values.

Fixtures live as JSON files in ``symrigid/fixtures``; the environment
variable ``SYMRIGID_FIXTURE_DIR`` overrides the directory.  Each file holds
a gain graph, named candidate partitions, and an ``expected`` block whose
entries carry a provenance tag (``reference`` for values stated alongside
the source figures, ``derived`` for values computed and frozen here).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .gain_graph import GainGraph

FIXTURE_NAMES = ("fig1b", "fig2a", "fig2b", "fig3", "fig4")

ENV_DIR = "SYMRIGID_FIXTURE_DIR"


@dataclass(frozen=True)
class Fixture:
    name: str
    description: str
    graph: GainGraph
    partitions: dict
    expected: dict

    def partition(self, name: str) -> tuple:
        return tuple(frozenset(part) for part in self.partitions[name])

    def expect(self, key: str):
        return self.expected[key]["value"]


def fixture_dir() -> Path | None:
    override = os.environ.get(ENV_DIR)
    return Path(override) if override else None


def fixture_path(name: str) -> Path:
    if name.endswith(".json"):
        name = name[: -len(".json")]
    override = fixture_dir()
    if override is not None:
        return override / f"{name}.json"
    return Path(str(resources.files("symrigid").joinpath("fixtures", f"{name}.json")))


def load_fixture(name: str) -> Fixture:
    path = fixture_path(name)
    data = json.loads(path.read_text(encoding="utf-8"))
    return Fixture(
        name=data["name"],
        description=data.get("description", ""),
        graph=GainGraph.from_json(data),
        partitions=data.get("partitions", {}),
        expected=data.get("expected", {}),
    )


def load_all() -> dict:
    return {name: load_fixture(name) for name in FIXTURE_NAMES}
