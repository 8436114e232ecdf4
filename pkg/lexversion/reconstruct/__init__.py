from .core import (
    Change,
    ChangeRecord,
    DocumentNode,
    DocumentTree,
    diff,
    history,
    provenance,
    reconstruct_text,
    resolve_version)
from . import render
