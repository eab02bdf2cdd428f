"""In-memory form of a model file."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .params import Parameters


@dataclass
class ChunkDef:
    id: str
    kind: str
    slots: dict = field(default_factory=dict)


@dataclass
class Model:
    parameters: Parameters = field(default_factory=Parameters)
    chunks: list = field(default_factory=list)
    productions: list = field(default_factory=list)
    goal: Optional[str] = None

    def production(self, name: str):
        for p in self.productions:
            if p.name == name:
                return p
        raise KeyError(name)

    def chunk(self, chunk_id: str) -> ChunkDef:
        for c in self.chunks:
            if c.id == chunk_id:
                return c
        raise KeyError(chunk_id)
