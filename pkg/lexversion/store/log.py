"""Append-only event log

One JSON object per line: a header record naming the format version, then
one entry per bootstrap or amendment. Entries hold the input documents, not
graph deltas; the graph is always the fold of the entries.
"""
import contextlib
import dataclasses
import datetime
import enum
import fcntl
import hashlib
import json
import logging
import os
from pathlib import Path
from typing import Iterable, List, Optional, Union

import tqdm

import lexversion


logger = logging.getLogger(__name__)


###############################################################################
# Constants
###############################################################################


# Value of the format field of the header record
FORMAT = 'lexversion-log'


###############################################################################
# Log entries
###############################################################################


class EntryKind(enum.Enum):

    BOOTSTRAP = 'Bootstrap'
    AMENDMENT = 'Amendment'


@dataclasses.dataclass(frozen=True)
class LogEntry:
    """One committed input document"""

    seq: int
    kind: EntryKind
    payload: dict
    recorded_at: str
    checksum: str

    @classmethod
    def from_dict(cls, item):
        return cls(
            seq=item['seq'],
            kind=EntryKind(item['kind']),
            payload=item['payload'],
            recorded_at=item['recorded_at'],
            checksum=item['checksum'])

    def to_dict(self):
        return {
            'seq': self.seq,
            'kind': self.kind.value,
            'recorded_at': self.recorded_at,
            'checksum': self.checksum,
            'payload': self.payload}


def checksum(payload: dict) -> str:
    """Content hash of the canonical JSON form of a payload"""
    text = json.dumps(
        payload,
        sort_keys=True,
        separators=(',', ':'),
        ensure_ascii=False)
    return 'sha256:' + hashlib.sha256(text.encode('utf-8')).hexdigest()


def to_payload(kind: EntryKind, document, concept=None) -> dict:
    """Log payload of a norm document or amendment script

    Arguments
        kind
            The entry kind
        document
            A NormDocument for a bootstrap, an AmendmentScript otherwise
        concept
            Urn of the amended norm; defaults to the one the script names
    """
    if kind == EntryKind.BOOTSTRAP:
        return document.to_dict()
    concept = concept or document.concept
    if concept is None:
        raise lexversion.InvalidScript(
            'script does not name the amended norm concept')
    return {'concept': str(concept), 'script': document.to_dict()}


###############################################################################
# Reading and writing
###############################################################################


def create(path: Union[str, Path]) -> Path:
    """Create an empty log holding only the header record"""
    path = Path(path)
    if path.exists():
        raise lexversion.LogFormatError(path, 0, 'log already exists')
    path.parent.mkdir(exist_ok=True, parents=True)
    with open(path, 'x', encoding='utf-8') as file:
        file.write(_header() + '\n')
    logger.info(f'Created event log {path}')
    return path


def append(
    path: Union[str, Path],
    kind: Union[EntryKind, str],
    payload: dict
) -> LogEntry:
    """Commit one entry at the end of a log

    Arguments
        path
            The log file
        kind
            Whether the payload bootstraps a norm or amends one
        payload
            The input document in its file representation

    Returns
        The committed entry
    """
    path = Path(path)
    kind = EntryKind(kind)
    if not path.exists():
        raise lexversion.LogFormatError(path, 0, 'log does not exist')
    with open(path, 'r+', encoding='utf-8') as file, _locked(
        file, fcntl.LOCK_EX
    ):
        entries = _parse(path, file)
        entry = LogEntry(
            seq=entries[-1].seq + 1 if entries else 1,
            kind=kind,
            payload=payload,
            recorded_at=datetime.datetime.now(
                datetime.timezone.utc).isoformat(timespec='seconds'),
            checksum=checksum(payload))
        file.seek(0, os.SEEK_END)
        file.write(_line(entry) + '\n')
        file.flush()
        os.fsync(file.fileno())
    logger.info(f'Appended {kind.value} entry {entry.seq} to {path}')
    return entry


def load(path: Union[str, Path]) -> List[LogEntry]:
    """Read and verify every entry of a log"""
    path = Path(path)
    try:
        with open(path, encoding='utf-8') as file, _locked(
            file, fcntl.LOCK_SH
        ):
            entries = _parse(path, file)
    except FileNotFoundError:
        raise lexversion.LogFormatError(path, 0, 'log does not exist')
    verify(entries)
    return entries


def save(entries: Iterable[LogEntry], path: Union[str, Path]):
    """Write entries to a new log file, replacing any file at path"""
    path = Path(path)
    path.parent.mkdir(exist_ok=True, parents=True)
    temporary = path.with_name(f'.{path.name}.tmp')
    with open(temporary, 'w', encoding='utf-8') as file:
        file.write(_header() + '\n')
        for entry in entries:
            file.write(_line(entry) + '\n')
    os.replace(temporary, path)


def verify(entries: Iterable[LogEntry]):
    """Check sequence numbers and checksums"""
    for expected, entry in enumerate(entries, 1):
        if entry.seq != expected:
            raise lexversion.OutOfOrderSeq(entry.seq, expected)
        actual = checksum(entry.payload)
        if actual != entry.checksum:
            raise lexversion.ChecksumMismatch(
                entry.seq, entry.checksum, actual)


###############################################################################
# Replay
###############################################################################


def replay(
    log: Union[str, Path, List[LogEntry]],
    upto: Optional[int] = None,
    cache: Optional[bool] = None
) -> 'lexversion.TemporalGraph':
    """Fold the entries of a log into a graph

    Arguments
        log
            A log file or its entries
        upto
            Last sequence number to replay; defaults to the whole log
        cache
            Whether to read and write graph snapshots; defaults to
            lexversion.SNAPSHOT_CACHE

    Returns
        The graph as of the last replayed entry
    """
    entries = load(log) if isinstance(log, (str, Path)) else list(log)
    verify(entries)
    if upto is not None:
        entries = entries[:upto]
    if cache is None:
        cache = lexversion.SNAPSHOT_CACHE

    # Maybe reuse a snapshot
    key = lexversion.store.snapshot.key(entries) if cache and entries \
        else None
    if key is not None:
        g = lexversion.store.snapshot.load(key)
        if g is not None:
            logger.info(f'Loaded snapshot {key}')
            return g

    g = lexversion.TemporalGraph()
    for entry in tqdm.tqdm(
        entries,
        desc='Replaying event log',
        dynamic_ncols=True,
        disable=len(entries) <= lexversion.PROGRESS_THRESHOLD
    ):
        logger.debug(f'Replaying {entry.kind.value} entry {entry.seq}')
        try:
            g = apply(g, entry)
        except lexversion.LexversionError as error:
            raise lexversion.ReplayFailure(entry.seq, error)

    if key is not None:
        lexversion.store.snapshot.save(key, g)
        logger.info(f'Saved snapshot {key}')

    return g


def apply(g, entry: LogEntry):
    """Apply one log entry to a graph"""
    if entry.kind == EntryKind.BOOTSTRAP:
        document = lexversion.NormDocument.from_dict(entry.payload)
        return lexversion.bootstrap_norm(
            g,
            document.concept,
            document.enacted,
            document.components,
            form=document.form,
            nature=document.nature,
            actors=document.actors)
    if not isinstance(entry.payload, dict) or 'concept' not in entry.payload:
        raise lexversion.InvalidScript('amendment entry names no concept')
    g, _ = lexversion.apply_amendment(
        g,
        lexversion.parse_urn(entry.payload['concept']),
        lexversion.AmendmentScript.from_dict(entry.payload.get('script')))
    return g


###############################################################################
# Utilities
###############################################################################


def _header():
    return json.dumps(
        {'format': FORMAT, 'version': lexversion.LOG_FORMAT_VERSION})


def _line(entry):
    return json.dumps(entry.to_dict(), ensure_ascii=False)


@contextlib.contextmanager
def _locked(file, operation):
    """Hold an advisory lock on an open file"""
    fcntl.flock(file.fileno(), operation)
    try:
        yield file
    finally:
        fcntl.flock(file.fileno(), fcntl.LOCK_UN)


def _parse(path, file):
    """Entries of an open log file, checking its header"""
    file.seek(0)
    entries, header = [], False
    for number, line in enumerate(file.read().splitlines(), 1):
        if not line.strip():
            continue
        try:
            item = json.loads(line)
        except json.JSONDecodeError as error:
            raise lexversion.LogFormatError(path, number, error.msg)
        if not header:
            if not isinstance(item, dict) or item.get('format') != FORMAT:
                raise lexversion.LogFormatError(
                    path, number, 'missing log header')
            if item.get('version') != lexversion.LOG_FORMAT_VERSION:
                raise lexversion.LogFormatError(
                    path,
                    number,
                    f'unsupported log format version {item.get("version")}')
            header = True
            continue
        try:
            entries.append(LogEntry.from_dict(item))
        except (KeyError, TypeError, ValueError) as error:
            raise lexversion.LogFormatError(
                path, number, f'invalid entry: {error!r}')
    if not header:
        raise lexversion.LogFormatError(path, 1, 'missing log header')
    return entries
