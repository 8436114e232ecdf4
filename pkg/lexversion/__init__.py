###############################################################################
# Configuration
###############################################################################


# Default configuration parameters to be modified
from .config import defaults

# Modify configuration
import yapecs
yapecs.configure('lexversion', defaults)

# Import configuration parameters
from .config.defaults import *
from .config.static import *


###############################################################################
# Module imports
###############################################################################


from .exceptions import *
from .identifiers import (
    ComponentPath,
    PathSegment,
    Urn,
    format_urn,
    parse_path,
    parse_urn,
    strip_to_concept,
    with_component,
    with_language,
    with_version)
from .model import (
    Edge,
    EdgeKind,
    EventLevel,
    ExpressionKind,
    ExpressionNode,
    LegislativeEvent,
    Status,
    TemporalGraph,
    ValidityInterval,
    Violation,
    WorkKind,
    WorkNode,
    validate)
from .events import (
    AmendmentReport,
    AmendmentScript,
    Instruction,
    NormDocument,
    apply_amendment,
    bootstrap_norm)
from .reconstruct import (
    ChangeRecord,
    DocumentNode,
    DocumentTree,
    diff,
    history,
    provenance,
    reconstruct_text,
    resolve_version)
from . import cli
from . import data
from . import evaluate
from . import load
from . import model
from . import events
from . import reconstruct
from . import store
