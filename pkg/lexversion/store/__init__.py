from .log import (
    EntryKind,
    LogEntry,
    append,
    apply,
    checksum,
    create,
    load,
    replay,
    save,
    to_payload,
    verify)
from .turtle import export_turtle, import_turtle
from . import snapshot
