from .core import AmendmentReport, apply_amendment, bootstrap_norm
from .script import (
    AmendmentScript,
    ComponentSpec,
    Instruction,
    Instrument,
    NormDocument,
    Operation,
    Position)
