"""Sequence cross-checks: b-file fixtures, parser, manifest, optional fetch.

Bundled fixtures live in the package's fixtures/ directory as standard
b-files ("index value" per line). Which preset maps to which fixture, under
which parameter assignment and index shift, is declared in
fixtures/manifest.txt: one line per preset-to-fixture pairing, never
inferred. The HTTP fetcher is an explicit opt-in for the CLI; the test
suite never touches the network.
"""

from __future__ import annotations

import os
import urllib.error
import urllib.request
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from .engine import evaluate, evaluate_memoized, is_markov
from .errors import BFileParseError, FetchError, FixtureNotFoundError, PreconditionError

OEIS_BASE_URL_ENV = "OEIS_BASE_URL"
DEFAULT_BASE_URL = "https://oeis.org"


@dataclass(frozen=True)
class BFileEntry:
    index: int
    value: int


def normalize_a_number(a_number: Union[str, int]) -> str:
    """Return the canonical 'A000000' form."""
    if isinstance(a_number, int):
        number = a_number
    else:
        text = a_number.strip()
        if text.upper().startswith("A"):
            text = text[1:]
        if not text.isdigit():
            raise PreconditionError(f"bad sequence id {a_number!r}")
        number = int(text)
    return f"A{number:06d}"


def bfile_name(a_number: Union[str, int]) -> str:
    return "b" + normalize_a_number(a_number)[1:] + ".txt"


def fixtures_dir() -> Path:
    return Path(__file__).resolve().parent / "fixtures"


def parse_bfile(text: str) -> List[BFileEntry]:
    """Parse b-file lines; '#' lines and blanks are ignored.

    Raises BFileParseError with the 1-based line number on a malformed line
    or a non-increasing index.
    """
    entries: List[BFileEntry] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise BFileParseError(f"line {lineno}: expected 'index value', got {raw!r}")
        try:
            index, value = int(fields[0]), int(fields[1])
        except ValueError:
            raise BFileParseError(f"line {lineno}: non-integer field in {raw!r}") from None
        if entries and index <= entries[-1].index:
            raise BFileParseError(
                f"line {lineno}: index {index} not above previous {entries[-1].index}"
            )
        entries.append(BFileEntry(index, value))
    return entries


def serialize_bfile(entries: List[BFileEntry]) -> str:
    """Canonical text form; comment-free fixtures round-trip byte-identically."""
    return "".join(f"{e.index} {e.value}\n" for e in entries)


def load_fixture(a_number: Union[str, int], directory: Optional[Path] = None) -> List[BFileEntry]:
    directory = Path(directory) if directory is not None else fixtures_dir()
    path = directory / bfile_name(a_number)
    if not path.is_file():
        raise FixtureNotFoundError(f"no bundled fixture {path.name} in {directory}")
    return parse_bfile(path.read_text(encoding="ascii"))


def fetch(
    a_number: Union[str, int],
    base_url: Optional[str] = None,
    timeout: float = 30.0,
) -> List[BFileEntry]:
    """Download and parse the remote b-file. Opt-in only; tests never call this."""
    canon = normalize_a_number(a_number)
    base = base_url or os.environ.get(OEIS_BASE_URL_ENV) or DEFAULT_BASE_URL
    url = f"{base}/{canon}/{bfile_name(canon)}"
    try:
        with urllib.request.urlopen(url, timeout=timeout) as response:
            text = response.read().decode("utf-8")
    except (urllib.error.URLError, OSError, ValueError) as exc:
        raise FetchError(f"failed to fetch {url}: {exc}") from exc
    return parse_bfile(text)


@dataclass(frozen=True)
class ManifestRow:
    preset: str
    a_number: str
    vary: str
    start: int
    shift: int
    fixed: Dict[str, Any]


def parse_manifest(text: str) -> List[ManifestRow]:
    """One row per line: '<preset> <A-number> vary=<p> from=<i> shift=<i> [k=v...]'.

    Fixed-parameter values are integers, except f=1:2:3 (colon-separated
    table) and init=... (kept as a spec string).
    """
    rows: List[ManifestRow] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) < 2:
            raise BFileParseError(f"manifest line {lineno}: too few fields in {raw!r}")
        preset, a_number = fields[0], normalize_a_number(fields[1])
        vary = "n"
        start = 0
        shift = 0
        fixed: Dict[str, Any] = {}
        for token in fields[2:]:
            if "=" not in token:
                raise BFileParseError(f"manifest line {lineno}: bad token {token!r}")
            key, value = token.split("=", 1)
            if key == "vary":
                vary = value
            elif key == "from":
                start = int(value)
            elif key == "shift":
                shift = int(value)
            elif key == "f":
                fixed["f"] = tuple(int(v) for v in value.split(":"))
            elif key == "init":
                fixed["init"] = value
            else:
                try:
                    fixed[key] = int(value)
                except ValueError:
                    raise BFileParseError(
                        f"manifest line {lineno}: non-integer value in {token!r}"
                    ) from None
        rows.append(ManifestRow(preset, a_number, vary, start, shift, fixed))
    return rows


def load_manifest(directory: Optional[Path] = None) -> List[ManifestRow]:
    directory = Path(directory) if directory is not None else fixtures_dir()
    path = directory / "manifest.txt"
    if not path.is_file():
        raise FixtureNotFoundError(f"no manifest.txt in {directory}")
    return parse_manifest(path.read_text(encoding="ascii"))


@dataclass(frozen=True)
class PrefixCheckLine:
    vary_value: int
    engine_value: int
    fixture_value: Optional[int]  # None: fixture too short at this index

    @property
    def ok(self) -> bool:
        return self.fixture_value is not None and self.engine_value == self.fixture_value


@dataclass(frozen=True)
class PrefixCheckReport:
    preset: str
    a_number: str
    vary: str
    fixed: Dict[str, Any]
    lines: Tuple[PrefixCheckLine, ...]

    @property
    def ok(self) -> bool:
        return all(line.ok for line in self.lines)

    @property
    def summary(self) -> str:
        good = sum(1 for line in self.lines if line.ok)
        return f"{self.preset} vs {self.a_number}: {good}/{len(self.lines)} match"


def check_preset_prefix(
    preset_name: str,
    count: int,
    directory: Optional[Path] = None,
    entries_by_sequence: Optional[Dict[str, List[BFileEntry]]] = None,
) -> List[PrefixCheckReport]:
    """Compare a preset's prefix against its declared fixture(s).

    Mismatches are report content, not exceptions. entries_by_sequence
    overrides fixture loading (the CLI's --online path passes fetched data).
    """
    from . import presets  # deferred: presets uses fixtures for two expected()s

    rows = [row for row in load_manifest(directory) if row.preset == preset_name]
    if not rows:
        raise PreconditionError(f"no manifest rows declare a fixture for preset {preset_name!r}")
    reports = []
    for row in rows:
        if entries_by_sequence is not None and row.a_number in entries_by_sequence:
            entries = entries_by_sequence[row.a_number]
        else:
            entries = load_fixture(row.a_number, directory)
        by_index = {e.index: e.value for e in entries}
        lines = []
        for step in range(count):
            vary_value = row.start + step
            params = dict(row.fixed)
            params[row.vary] = vary_value
            program = presets.build(row.preset, params)
            value = evaluate_memoized(program) if is_markov(program) else evaluate(program)
            lines.append(
                PrefixCheckLine(
                    vary_value=vary_value,
                    engine_value=value,
                    fixture_value=by_index.get(vary_value + row.shift),
                )
            )
        reports.append(
            PrefixCheckReport(
                preset=row.preset,
                a_number=row.a_number,
                vary=row.vary,
                fixed=row.fixed,
                lines=tuple(lines),
            )
        )
    return reports
