"""`emit-fixtures` – write the built-in fixture algebras as JSON files."""
from __future__ import annotations

import logging
from pathlib import Path

from config import FIXTURES_PATH
from homnr.codec.models import FIXTURES, fixture_filename, fixture_names
from homnr.errors import InputError
from homnr.handlers.router import Data, JobSpec, Outcome, Router, arg
from homnr.utils.helpers import dump_json

logger = logging.getLogger(__name__)
router = Router(name="fixtures")


def emit_fixtures(directory: Path) -> list:
    """Write every fixture to ``directory``; output is byte-identical across runs."""
    try:
        directory.mkdir(parents=True, exist_ok=True)
        written = []
        for name in fixture_names():
            path = directory / fixture_filename(name)
            path.write_text(dump_json(FIXTURES[name]), encoding="utf-8")
            written.append(path.name)
    except OSError as exc:
        raise InputError(f"cannot write fixtures to {directory}: {exc.strerror or exc}", field="dir") from None
    logger.info("wrote %d fixtures to %s", len(written), directory)
    return written


def load(job: JobSpec) -> Data:
    return {}


@router.command(
    "emit-fixtures",
    help="write the fixture algebras as JSON files",
    load=load,
    arguments=(arg("--dir", dest="dir", help="target directory (default: FIXTURES_PATH)"),),
)
def handle_emit_fixtures(job: JobSpec, data: Data) -> Outcome:
    directory = Path(job.option("dir") or FIXTURES_PATH)
    return Outcome({"dir": str(directory), "files": emit_fixtures(directory)})
