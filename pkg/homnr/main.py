"""
Command line initialisation.

Creates the dispatcher, registers all routers and middlewares, parses the
arguments into a ``JobSpec``, runs it and prints the report on stdout.
Logs go to stderr (and to LOG_FILE when set).
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import config
from homnr.handlers import bracket, cohomology, deform, extension, fixtures, verify
from homnr.handlers.router import Command, JobSpec, Report, Router
from homnr.middlewares.dim_guard import DimGuardMiddleware
from homnr.middlewares.errors import EXIT_INPUT, ErrorBoundaryMiddleware
from homnr.utils.helpers import dump_json, render_text

logger = logging.getLogger(__name__)

OUTPUTS = ("json", "text")


def setup_logging(level: Optional[str] = None) -> None:
    fmt = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s"
    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if config.LOG_FILE:
        log_file = Path(config.LOG_FILE)
        log_file.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_file, encoding="utf-8"))
    logging.basicConfig(
        level=getattr(logging, (level or config.LOG_LEVEL).upper(), logging.INFO),
        format=fmt,
        handlers=handlers,
        force=True,
    )
    # Silence noisy libraries
    logging.getLogger("sympy").setLevel(logging.WARNING)


class Dispatcher:
    def __init__(self) -> None:
        self.commands: Dict[str, Command] = {}
        self.guard    = DimGuardMiddleware()
        self.boundary = ErrorBoundaryMiddleware()

    def include_router(self, router: Router) -> None:
        for name, command in router.commands.items():
            if name in self.commands:
                raise ValueError(f"command {name!r} registered by two routers")
            self.commands[name] = command

    def run(self, job: JobSpec) -> Tuple[Report, int]:
        command = self.commands.get(job.command)
        if command is None:
            return Report(job.command, "fail", {"error": f"unknown command {job.command!r}",
                                                "field": "command"}), EXIT_INPUT

        def guarded(job: JobSpec, data: dict):
            data.update(command.load(job))
            return self.guard(command.handler, job, data)

        return self.boundary(guarded, job, {})

    def build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog="homnr",
            description="Exact computations with finite-dimensional Hom-algebras.",
        )
        parser.add_argument("--output", choices=OUTPUTS, default=None,
                            help=f"report format (default: {config.DEFAULT_OUTPUT})")
        parser.add_argument("--log-level", dest="log_level", default=None, help="override LOG_LEVEL")
        sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
        for name in sorted(self.commands):
            command = self.commands[name]
            p = sub.add_parser(name, help=command.help, description=command.help)
            for flags, kwargs in command.arguments:
                p.add_argument(*flags, **kwargs)
        return parser


def create_dispatcher() -> Dispatcher:
    dp = Dispatcher()

    # ── Routers ────────────────────────────────────────────────────────────
    dp.include_router(verify.router)
    dp.include_router(bracket.router)
    dp.include_router(cohomology.router)
    dp.include_router(deform.router)
    dp.include_router(extension.router)
    dp.include_router(fixtures.router)

    return dp


def job_from_args(dp: Dispatcher, args: argparse.Namespace) -> JobSpec:
    command = dp.commands[args.command]
    values = {k: v for k, v in vars(args).items() if k not in ("command", "output", "log_level")}
    inputs = {k: values.pop(k) for k in command.inputs if k in values}
    return JobSpec(args.command, inputs, values)


def render(report: Report, output: str) -> str:
    if output == "text":
        head = f"command  {report.command}\nstatus   {report.status}\n"
        return head + render_text(report.payload)
    return dump_json(report.to_dict())


def main(argv: Optional[Sequence[str]] = None) -> int:
    dp = create_dispatcher()
    parser = dp.build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)

    setup_logging(args.log_level)
    output = args.output or config.DEFAULT_OUTPUT
    if output not in OUTPUTS:
        logger.error("DEFAULT_OUTPUT=%r is not one of %s", output, ", ".join(OUTPUTS))
        return EXIT_INPUT

    job = job_from_args(dp, args)
    logger.debug("running %s with inputs %s", job.command, sorted(job.inputs))
    report, code = dp.run(job)
    sys.stdout.write(render(report, output))
    return code


def run(argv: Optional[List[str]] = None) -> None:
    sys.exit(main(argv))
