import dataclasses
import datetime
import enum
from typing import Iterator, List, Optional, Tuple, Union

import lexversion
from lexversion.model import (
    EdgeKind,
    EventLevel,
    Status,
    TemporalGraph,
    WorkKind,
    WorkNode)


###############################################################################
# Reconstructed documents
###############################################################################


@dataclasses.dataclass(frozen=True)
class DocumentNode:
    """A component as it read on some date

    The root node of a whole norm has neither path nor text.
    """

    path: Optional['lexversion.ComponentPath']
    text: Optional[str]
    ordinal: int
    status: Status
    version: 'lexversion.Urn'
    children: Tuple['DocumentNode', ...] = ()

    def to_dict(self):
        return {
            'path': None if self.path is None else str(self.path),
            'ordinal': self.ordinal,
            'status': self.status.value,
            'version': str(self.version),
            'text': self.text,
            'children': [child.to_dict() for child in self.children]}


@dataclasses.dataclass(frozen=True)
class DocumentTree:
    """Point-in-time text of a norm or of one of its components"""

    root: DocumentNode
    language: str
    as_of: datetime.date
    tv_urn: 'lexversion.Urn'

    def nodes(self) -> Iterator[Tuple[int, DocumentNode]]:
        """Depth-first (depth, node) pairs, skipping a path-less root"""
        stack = [(0, self.root)] if self.root.path is not None else [
            (0, child) for child in reversed(self.root.children)]
        while stack:
            depth, node = stack.pop()
            yield depth, node
            stack.extend(
                (depth + 1, child) for child in reversed(node.children))

    def to_dict(self):
        return {
            'tv_urn': str(self.tv_urn),
            'as_of': self.as_of.isoformat(),
            'language': self.language,
            'root': self.root.to_dict()}


###############################################################################
# Change records
###############################################################################


class Change(enum.Enum):

    ADDED = 'Added'
    TEXT_CHANGED = 'TextChanged'
    REPEALED = 'Repealed'


@dataclasses.dataclass(frozen=True)
class ChangeRecord:
    """How, when and why a version came to be"""

    path: Optional['lexversion.ComponentPath']
    change: Change
    from_ctv: Optional['lexversion.Urn']
    to_ctv: 'lexversion.Urn'
    micro_event: Optional[str]
    instruction: Optional['lexversion.Urn']
    macro_event: str
    nature: str
    actors: Tuple[str, ...]
    date: datetime.date

    def to_dict(self):
        return {
            'path': None if self.path is None else str(self.path),
            'change': self.change.value,
            'from_ctv': (
                None if self.from_ctv is None
                else str(self.from_ctv)),
            'to_ctv': str(self.to_ctv),
            'micro_event': self.micro_event,
            'instruction': (
                None if self.instruction is None else str(self.instruction)),
            'macro_event': self.macro_event,
            'nature': self.nature,
            'actors': list(self.actors),
            'date': self.date.isoformat()}


###############################################################################
# Point-in-time queries
###############################################################################


def resolve_version(
    g: TemporalGraph,
    concept: Union[str, 'lexversion.Urn'],
    at: datetime.date
) -> WorkNode:
    """The version of a norm or component in force on a date

    Arguments
        g
            The graph to query
        concept
            Urn of a norm concept or component concept
        at
            The date; versions are valid from their start date inclusive
            to their end date exclusive

    Returns
        The version whose validity contains at
    """
    key = _concept_key(g, concept)
    timeline = g.versions(key)
    if not timeline:
        raise lexversion.UnknownConcept(key)
    first = g.works[timeline[0]].validity.start
    version = g.version_at(key, at)
    if version is None:
        raise lexversion.NotYetEnacted(key, at, first)
    return version


def reconstruct_text(
    g: TemporalGraph,
    concept: Union[str, 'lexversion.Urn'],
    at: datetime.date,
    language: str
) -> DocumentTree:
    """Reassemble the text of a norm or component as it read on a date

    Arguments
        g
            The graph to query
        concept
            Urn of a norm concept or component concept
        at
            The date to reconstruct
        language
            Language code of the text

    Returns
        The component tree with the text in force at that date
    """
    key = _concept_key(g, concept)
    root_version = resolve_version(g, key, at)
    norm = lexversion.strip_to_concept(root_version.urn)
    tv = root_version if root_version.urn.component_path is None \
        else resolve_version(g, norm, at)
    if language not in g.realisations(tv.key):
        raise lexversion.MissingLanguage(str(norm), language, at)

    if root_version.urn.component_path is None:
        root = DocumentNode(
            path=None,
            text=None,
            ordinal=0,
            status=Status.IN_FORCE,
            version=root_version.urn,
            children=_assemble_parts(g, key, at, language))
    else:
        parents = g.into(key, EdgeKind.HAS_PART)
        root = _assemble(
            g,
            key,
            root_version,
            parents[0].ordinal if parents else 0,
            at,
            language)

    return DocumentTree(root, language, at, tv.urn)


def history(
    g: TemporalGraph,
    concept: Union[str, 'lexversion.Urn']
) -> List[Tuple[WorkNode, str]]:
    """Every version of a norm or component with the event that created it

    Arguments
        g
            The graph to query
        concept
            Urn of a norm concept or component concept; version and
            expression urns refer to their concept

    Returns
        (version, event id) pairs by ascending version date
    """
    key = _concept_key(g, concept)
    timeline = g.versions(key)
    if not timeline:
        raise lexversion.UnknownConcept(key)

    # Follow the succession chain back from the newest version
    chain, version = [], timeline[-1]
    while version is not None:
        chain.append(g.works[version])
        predecessors = g.out(version, EdgeKind.DERIVATIVE_OF)
        version = predecessors[0].target if predecessors else None
    chain.reverse()

    return [(work, _creator(g, work.key)) for work in chain]


def diff(
    g: TemporalGraph,
    concept: Union[str, 'lexversion.Urn'],
    d1: datetime.date,
    d2: datetime.date
) -> List[ChangeRecord]:
    """What changed in a norm between two dates

    Arguments
        g
            The graph to query
        concept
            Urn of a norm concept or component concept
        d1
            The earlier date
        d2
            The later date

    Returns
        One record per component whose version differs, in document order
    """
    if d1 >= d2:
        raise lexversion.InvalidDateRange(d1, d2)
    key = _concept_key(g, concept)
    resolve_version(g, key, d1)

    components = [key] if g.works[key].kind == WorkKind.COMPONENT_CONCEPT \
        else []
    stack = list(reversed(g.children(key)))
    while stack:
        component = stack.pop()
        components.append(component)
        stack.extend(reversed(g.children(component)))

    records = []
    for component in components:
        before = g.version_at(component, d1)
        after = g.version_at(component, d2)
        if after is None or (before is not None and before.key == after.key):
            continue
        records.append(
            _record(g, after, None if before is None else before.urn))
    return records


def provenance(
    g: TemporalGraph,
    version: Union[str, 'lexversion.Urn']
) -> ChangeRecord:
    """The event, instruction and predecessor behind one version

    Arguments
        g
            The graph to query
        version
            Urn of a temporal version or component temporal version

    Returns
        The change that created the version
    """
    key = str(version)
    work = g.works.get(key)
    if work is None or not work.kind.is_version:
        raise lexversion.UnknownVersion(key)
    predecessors = g.out(key, EdgeKind.DERIVATIVE_OF)
    return _record(
        g,
        work,
        g.works[predecessors[0].target].urn if predecessors else None)


###############################################################################
# Utilities
###############################################################################


def _assemble(g, component, version, ordinal, at, language):
    """Document node of one component and its parts in force at a date"""
    expressions = g.realisations(version.key)
    if language in expressions:
        text = expressions[language].content
    elif version.status == Status.REPEALED:
        text = ''
    else:
        raise lexversion.MissingLanguage(
            str(version.urn.component_path), language, at)
    return DocumentNode(
        path=version.urn.component_path,
        text=text,
        ordinal=ordinal,
        status=(
            Status.REPEALED if version.status == Status.REPEALED
            else Status.IN_FORCE),
        version=version.urn,
        children=_assemble_parts(g, component, at, language))


def _assemble_parts(g, parent, at, language):
    """Document nodes of the parts of parent in force at a date"""
    nodes = []
    for edge in sorted(
        g.out(parent, EdgeKind.HAS_PART),
        key=lambda edge: (edge.ordinal, edge.target)
    ):
        version = g.version_at(edge.target, at)

        # Not added yet
        if version is None:
            continue

        nodes.append(
            _assemble(g, edge.target, version, edge.ordinal, at, language))
    return tuple(nodes)


def _concept_key(g, urn):
    """Key of the concept urn refers to"""
    if isinstance(urn, str):
        urn = lexversion.parse_urn(urn)
    key = str(lexversion.identifiers.strip_to_component_concept(urn))
    work = g.works.get(key)
    if work is None or not work.kind.is_concept:
        raise lexversion.UnknownConcept(key)
    return key


def _creator(g, key):
    """Id of the event that created a version"""
    return _source_event(g, key, EdgeKind.CREATED, 'no creating event')


def _source_event(g, key, kind, reason):
    """Id of the event at the source of the first kind edge into key"""
    edges = g.into(key, kind)
    if not edges or edges[0].source not in g.events:
        raise lexversion.InvalidNode(key, reason)
    return edges[0].source


def _record(g, version, predecessor):
    """Change record of the event that created version"""
    event = g.events[_creator(g, version.key)]
    if event.level == EventLevel.MICRO:
        macro = g.events[_source_event(
            g, event.id, EdgeKind.CONSISTS_OF, 'no enclosing macro event')]
        micro, instruction = event.id, event.instruction
    else:
        macro, micro, instruction = event, None, None

    if predecessor is None:
        change = Change.ADDED
    elif version.status == Status.REPEALED:
        change = Change.REPEALED
    else:
        change = Change.TEXT_CHANGED

    return ChangeRecord(
        path=version.urn.component_path,
        change=change,
        from_ctv=predecessor,
        to_ctv=version.urn,
        micro_event=micro,
        instruction=(
            None if instruction is None
            else lexversion.parse_urn(str(instruction))),
        macro_event=macro.id,
        nature=macro.nature,
        actors=macro.actors,
        date=macro.time_span)
