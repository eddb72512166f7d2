"""
Command registry.

Each handler module owns a ``Router`` and registers its commands on it with
``@router.command(...)``; ``homnr.main`` includes the routers, builds the
argument parser from them and dispatches a ``JobSpec`` to the matching
command through the middlewares.

A command is two callables:

- ``load(job) -> data``  parses the input files into service objects and
  records their dimensions under ``data["dims"]`` for the dimension guard;
- ``handler(job, data) -> Outcome``  runs the computation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from homnr.utils.ledger import ledger_entries

Data = Dict[str, Any]


@dataclass(frozen=True)
class JobSpec:
    command: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    options: Dict[str, Any] = field(default_factory=dict)

    def option(self, name: str, default: Any = None) -> Any:
        value = self.options.get(name)
        return default if value is None else value


@dataclass(frozen=True)
class Outcome:
    payload: Dict[str, Any]
    ok: bool = True


@dataclass(frozen=True)
class Report:
    command: str
    status: str
    payload: Dict[str, Any]
    convention_ledger: List[Dict[str, str]] = field(default_factory=ledger_entries)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "status": self.status,
            "payload": self.payload,
            "convention_ledger": self.convention_ledger,
        }


# flags and argparse keyword arguments of one option
Argument = Tuple[Tuple[str, ...], Dict[str, Any]]


def arg(*flags: str, **kwargs: Any) -> Argument:
    return flags, kwargs


@dataclass(frozen=True)
class Command:
    name: str
    help: str
    load: Callable[[JobSpec], Data]
    handler: Callable[[JobSpec, Data], Outcome]
    arguments: Tuple[Argument, ...] = ()
    inputs: Tuple[str, ...] = ()          # dests that name input files


class Router:
    def __init__(self, name: str) -> None:
        self.name = name
        self.commands: Dict[str, Command] = {}

    def command(self, name: str, *, help: str, load: Callable[[JobSpec], Data],
                arguments: Sequence[Argument] = (), inputs: Sequence[str] = ()):
        def register(handler: Callable[[JobSpec, Data], Outcome]) -> Callable[[JobSpec, Data], Outcome]:
            if name in self.commands:
                raise ValueError(f"command {name!r} registered twice on router {self.name!r}")
            self.commands[name] = Command(name, help, load, handler, tuple(arguments), tuple(inputs))
            return handler
        return register

    def get(self, name: str) -> Optional[Command]:
        return self.commands.get(name)
