"""Trace events and their line-oriented text form.

One event per line: ``time<TAB>kind<TAB>key=value key=value ...``. Slot
values are keyed ``slot.<name>``, variable bindings ``var.<name>``; the
``chunks`` field is a comma-separated id list.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import TraceFormatError
from .values import format_value, parse_literal

EVENT_KINDS = ("Matched", "Fired", "ChunkWritten", "GoalPushed", "GoalPopped",
               "ExternalAction", "Halted")
_LIST_KEYS = {"chunks"}
_TEXT_KEYS = {"production", "goal", "chunk", "kind", "action", "reason", "op"}


@dataclass
class TraceEvent:
    time: float
    kind: str
    payload: dict = field(default_factory=dict)

    def slots(self, prefix="slot.") -> dict:
        return {k[len(prefix):]: v for k, v in self.payload.items() if k.startswith(prefix)}

    @property
    def bindings(self) -> dict:
        return self.slots("var.")

    def to_line(self) -> str:
        parts = []
        for key, value in self.payload.items():
            if key in _LIST_KEYS:
                text = ",".join(value)
            else:
                text = format_value(value)
            parts.append(f"{key}={text}")
        return f"{self.time:.6f}\t{self.kind}\t{' '.join(parts)}"

    @classmethod
    def from_line(cls, line: str, lineno: int = 0) -> "TraceEvent":
        fields_ = line.rstrip("\n").split("\t")
        if len(fields_) != 3:
            raise TraceFormatError(f"line {lineno}: expected 3 tab-separated fields")
        time_text, kind, payload_text = fields_
        try:
            time = float(time_text)
        except ValueError:
            raise TraceFormatError(f"line {lineno}: bad time {time_text!r}") from None
        if kind not in EVENT_KINDS:
            raise TraceFormatError(f"line {lineno}: unknown event kind {kind!r}")
        payload = {}
        for item in payload_text.split():
            key, sep, text = item.partition("=")
            if not sep or not key:
                raise TraceFormatError(f"line {lineno}: bad payload item {item!r}")
            if key in _LIST_KEYS:
                payload[key] = [t for t in text.split(",") if t]
            elif key in _TEXT_KEYS:
                payload[key] = text
            else:
                try:
                    payload[key] = parse_literal(text)
                except ValueError as exc:
                    raise TraceFormatError(f"line {lineno}: {exc}") from None
        return cls(time, kind, payload)


class Trace(list):
    """Ordered list of :class:`TraceEvent`."""

    def of_kind(self, kind: str) -> list:
        return [e for e in self if e.kind == kind]

    def fired(self) -> list:
        return [e.payload["production"] for e in self if e.kind == "Fired"]

    def to_text(self) -> str:
        return "".join(e.to_line() + "\n" for e in self)

    @classmethod
    def from_text(cls, text: str) -> "Trace":
        out = cls()
        for n, line in enumerate(text.splitlines(), 1):
            if line.strip():
                out.append(TraceEvent.from_line(line, n))
        return out
