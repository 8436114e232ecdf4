from .core import (
    Edge,
    EdgeKind,
    EventLevel,
    ExpressionKind,
    ExpressionNode,
    LegislativeEvent,
    Status,
    ValidityInterval,
    Violation,
    WorkKind,
    WorkNode)
from .graph import (
    TemporalGraph,
    add_edge,
    add_event,
    add_expression,
    add_work,
    close_version,
    remove_edge,
    remove_node)
from .validate import validate
