import bisect
import dataclasses
from typing import Optional, Union

from pyrsistent import PMap, PSet, PVector, pmap, pset, pvector

import lexversion
from lexversion.model.core import (
    Edge,
    EdgeKind,
    EventLevel,
    ExpressionNode,
    LEGAL_ENDPOINTS,
    LegislativeEvent,
    MACRO_EVENT,
    MICRO_EVENT,
    Status,
    ValidityInterval,
    WorkNode)


###############################################################################
# Temporal graph
###############################################################################


@dataclasses.dataclass(frozen=True)
class TemporalGraph:
    """Immutable typed-edge graph of works, expressions and events

    Every mutator returns a new graph sharing structure with the old one.
    Nodes are keyed by their canonical urn string, events by their id.
    """

    works: PMap = dataclasses.field(default_factory=pmap)
    expressions: PMap = dataclasses.field(default_factory=pmap)
    events: PMap = dataclasses.field(default_factory=pmap)
    edges: PSet = dataclasses.field(default_factory=pset)

    # Edges by endpoint
    outgoing: PMap = dataclasses.field(default_factory=pmap)
    incoming: PMap = dataclasses.field(default_factory=pmap)

    # Concept key -> member version keys by ascending version date
    timelines: PMap = dataclasses.field(default_factory=pmap)

    def __contains__(self, key):
        key = str(key)
        return (
            key in self.works or
            key in self.expressions or
            key in self.events)

    def __len__(self):
        return len(self.works) + len(self.expressions) + len(self.events)

    def node(self, key):
        """The work, expression or event stored under key"""
        key = str(key)
        for table in (self.works, self.expressions, self.events):
            if key in table:
                return table[key]
        return None

    def kind_of(self, key):
        """Endpoint kind used by edge legality checks"""
        node = self.node(key)
        if node is None:
            return None
        if isinstance(node, LegislativeEvent):
            return MACRO_EVENT if node.level == EventLevel.MACRO \
                else MICRO_EVENT
        return node.kind

    def out(self, key, kind: Optional[EdgeKind] = None):
        """Outgoing edges of key in canonical order"""
        edges = self.outgoing.get(str(key), pset())
        if kind is not None:
            edges = [edge for edge in edges if edge.kind == kind]
        return sorted(edges, key=Edge.sort_key)

    def into(self, key, kind: Optional[EdgeKind] = None):
        """Incoming edges of key in canonical order"""
        edges = self.incoming.get(str(key), pset())
        if kind is not None:
            edges = [edge for edge in edges if edge.kind == kind]
        return sorted(edges, key=Edge.sort_key)

    def children(self, key, kind=EdgeKind.HAS_PART):
        """Child keys of key by ascending ordinal"""
        return [
            edge.target for edge in sorted(
                self.out(key, kind),
                key=lambda edge: (edge.ordinal, edge.target))]

    def versions(self, concept) -> PVector:
        """Member version keys of a concept by ascending version date"""
        return self.timelines.get(str(concept), pvector())

    def version_at(self, concept, date) -> Optional[WorkNode]:
        """The member version of concept whose validity contains date"""
        timeline = self.versions(concept)
        index = bisect.bisect_right(
            timeline,
            date,
            key=lambda key: self.works[key].validity.start) - 1
        if index < 0:
            return None
        version = self.works[timeline[index]]
        return version if date in version.validity else None

    def realisations(self, work) -> dict:
        """Language -> expression realising work"""
        return {
            self.expressions[edge.target].language:
                self.expressions[edge.target]
            for edge in self.out(work, EdgeKind.REALISED_IN)}


###############################################################################
# Mutators
###############################################################################


def add_work(g: TemporalGraph, w: WorkNode) -> TemporalGraph:
    """Add an F1 Work"""
    if w.key in g:
        raise lexversion.DuplicateUrn(w.key)
    return dataclasses.replace(g, works=g.works.set(w.key, w))


def add_expression(g: TemporalGraph, e: ExpressionNode) -> TemporalGraph:
    """Add an F2 Expression"""
    if e.key in g:
        raise lexversion.DuplicateUrn(e.key)
    return dataclasses.replace(
        g, expressions=g.expressions.set(e.key, e))


def add_edge(
    g: TemporalGraph,
    source: Union[str, 'lexversion.Urn'],
    kind: EdgeKind,
    target: Union[str, 'lexversion.Urn'],
    qualifier: Optional[str] = None,
    ordinal: Optional[int] = None
) -> TemporalGraph:
    """Add a typed edge between two existing nodes

    Arguments
        g
            The graph to extend
        source
            Urn or event id of the source node
        kind
            The edge kind
        target
            Urn or event id of the target node
        qualifier
            DerivativeOf type, e.g. TemporalSuccession
        ordinal
            Sibling position of HasPart and HasComponent edges

    Returns
        The extended graph; adding an identical edge again is a no-op
    """
    edge = Edge(str(source), kind, str(target), qualifier, ordinal)
    from_kind, to_kind = g.kind_of(edge.source), g.kind_of(edge.target)
    if from_kind is None:
        raise lexversion.UnknownEndpoint(edge.source)
    if to_kind is None:
        raise lexversion.UnknownEndpoint(edge.target)
    if (from_kind, to_kind) not in LEGAL_ENDPOINTS[kind]:
        raise lexversion.IllegalEdgeKind(
            getattr(from_kind, 'value', from_kind),
            kind.value,
            getattr(to_kind, 'value', to_kind))
    if edge in g.edges:
        return g
    return _insert(g, edge)


def add_event(g: TemporalGraph, event: LegislativeEvent) -> TemporalGraph:
    """Add an event together with the edges its references imply"""
    if event.key in g:
        raise lexversion.DuplicateUrn(event.key)
    g = dataclasses.replace(g, events=g.events.set(event.key, event))
    for urn in event.modified:
        g = add_edge(g, event.key, EdgeKind.MODIFIED, urn)
    for urn in event.created:
        g = add_edge(g, event.key, EdgeKind.CREATED, urn)
    for child in event.children:
        g = add_edge(g, event.key, EdgeKind.CONSISTS_OF, child)
    if event.instruction is not None:
        g = add_edge(g, event.key, EdgeKind.USED, event.instruction)
    return g


def close_version(
    g: TemporalGraph,
    urn: Union[str, 'lexversion.Urn'],
    end,
    status: Status = Status.SUPERSEDED
) -> TemporalGraph:
    """Close the open validity interval of a version at end"""
    key = str(urn)
    if key not in g.works:
        raise lexversion.UnknownVersion(key)
    version = g.works[key]
    if version.validity is None or version.validity.end is not None:
        raise lexversion.InvalidNode(key, 'validity is not open')
    closed = dataclasses.replace(
        version,
        validity=ValidityInterval(version.validity.start, end),
        status=status)
    return dataclasses.replace(g, works=g.works.set(key, closed))


def remove_edge(g: TemporalGraph, edge: Edge) -> TemporalGraph:
    """Remove one edge"""
    if edge not in g.edges:
        return g
    outgoing = g.outgoing[edge.source].remove(edge)
    incoming = g.incoming[edge.target].remove(edge)
    g = dataclasses.replace(
        g,
        edges=g.edges.remove(edge),
        outgoing=g.outgoing.set(edge.source, outgoing),
        incoming=g.incoming.set(edge.target, incoming))
    if edge.kind == EdgeKind.MEMBER_OF:
        timeline = g.timelines[edge.target]
        timeline = timeline.delete(timeline.index(edge.source))
        g = dataclasses.replace(
            g, timelines=g.timelines.set(edge.target, timeline))
    return g


def remove_node(g: TemporalGraph, key) -> TemporalGraph:
    """Remove a node and every edge touching it"""
    key = str(key)
    for edge in g.out(key) + g.into(key):
        g = remove_edge(g, edge)
    return dataclasses.replace(
        g,
        works=g.works.discard(key),
        expressions=g.expressions.discard(key),
        events=g.events.discard(key),
        outgoing=g.outgoing.discard(key),
        incoming=g.incoming.discard(key),
        timelines=g.timelines.discard(key))


###############################################################################
# Utilities
###############################################################################


def _insert(g, edge):
    """Add a legal, new edge and maintain the indexes"""
    outgoing = g.outgoing.get(edge.source, pset()).add(edge)
    incoming = g.incoming.get(edge.target, pset()).add(edge)
    g = dataclasses.replace(
        g,
        edges=g.edges.add(edge),
        outgoing=g.outgoing.set(edge.source, outgoing),
        incoming=g.incoming.set(edge.target, incoming))

    # Keep member versions sorted by version date
    if edge.kind == EdgeKind.MEMBER_OF:
        timeline = g.timelines.get(edge.target, pvector())
        if edge.source not in timeline:
            date = g.works[edge.source].urn.version_date
            index = bisect.bisect_right(
                timeline,
                date,
                key=lambda key: g.works[key].urn.version_date)
            timeline = timeline[:index].append(edge.source).extend(
                timeline[index:])
            g = dataclasses.replace(
                g, timelines=g.timelines.set(edge.target, timeline))

    return g
