"""Append-only event journal.

One serialized event per line in a UTF-8 text file. Sequence numbers are
gapless 0..n-1; an append whose sequence does not equal the current
length signals an engine bug, not a user error.
"""

from pathlib import Path
from typing import Iterator

from sftlock.errors import InternalConsistencyError
from sftlock.events import Event


class Journal:
    def __init__(self, events: list[Event] | None = None):
        self.entries: list[Event] = []
        for event in events or []:
            self.append(event)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Event]:
        return iter(self.entries)

    def append(self, event: Event) -> int:
        if event.sequence != len(self.entries):
            raise InternalConsistencyError(
                f"journal append out of order: expected sequence "
                f"{len(self.entries)}, got {event.sequence}"
            )
        self.entries.append(event)
        return event.sequence

    def lines(self) -> list[str]:
        return [event.to_json_line() for event in self.entries]

    def dump(self) -> str:
        return "".join(line + "\n" for line in self.lines())

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.dump(), encoding="utf-8")

    @classmethod
    def from_lines(cls, lines: list[str]) -> "Journal":
        journal = cls()
        sequence = 0
        for line in lines:
            if not line.strip():
                continue
            journal.append(Event.from_json_line(line, expected_sequence=sequence))
            sequence += 1
        return journal

    @classmethod
    def load(cls, path: str | Path) -> "Journal":
        text = Path(path).read_text(encoding="utf-8")
        return cls.from_lines(text.splitlines())
