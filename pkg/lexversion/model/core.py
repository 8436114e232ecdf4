import dataclasses
import datetime
import enum
from typing import Optional, Tuple

import lexversion


###############################################################################
# Vocabulary
###############################################################################


class WorkKind(enum.Enum):
    """F1 Work roles"""

    NORM_CONCEPT = 'NormConcept'
    TEMPORAL_VERSION = 'TemporalVersion'
    COMPONENT_CONCEPT = 'ComponentConcept'
    COMPONENT_TEMPORAL_VERSION = 'ComponentTemporalVersion'
    AMENDMENT_INSTRUMENT = 'AmendmentInstrument'

    @property
    def is_concept(self):
        return self in CONCEPT_KINDS

    @property
    def is_version(self):
        return self in VERSION_KINDS


class ExpressionKind(enum.Enum):
    """F2 Expression roles"""

    LANGUAGE_VERSION = 'LanguageVersion'
    COMPONENT_LANGUAGE_VERSION = 'ComponentLanguageVersion'


class Status(enum.Enum):
    """Legal status of a version"""

    IN_FORCE = 'InForce'
    SUPERSEDED = 'Superseded'
    REPEALED = 'Repealed'


class EventLevel(enum.Enum):

    MACRO = 'Macro'
    MICRO = 'Micro'


class EdgeKind(enum.Enum):
    """Typed relations between nodes"""

    # R10 is member of: version -> concept
    MEMBER_OF = 'MemberOf'

    # R2 is derivative of: version -> preceding version
    DERIVATIVE_OF = 'DerivativeOf'

    # R3 is realised in: work -> expression
    REALISED_IN = 'RealisedIn'

    # R67 has part: concept -> component concept
    HAS_PART = 'HasPart'

    # R5 has component: expression -> component expression
    HAS_COMPONENT = 'HasComponent'

    # R76 is derivative of: translation -> source expression
    TRANSLATION_DERIVATIVE_OF = 'TranslationDerivativeOf'

    # P31 has modified: event -> version whose validity it closed
    MODIFIED = 'Modified'

    # R16 created: event -> version
    CREATED = 'Created'

    # P9 consists of: macro event -> micro event
    CONSISTS_OF = 'ConsistsOf'

    # Amending provision used by a micro event
    USED = 'Used'


CONCEPT_KINDS = frozenset({
    WorkKind.NORM_CONCEPT,
    WorkKind.COMPONENT_CONCEPT,
    WorkKind.AMENDMENT_INSTRUMENT})

VERSION_KINDS = frozenset({
    WorkKind.TEMPORAL_VERSION,
    WorkKind.COMPONENT_TEMPORAL_VERSION})

# Endpoint kinds of events as they appear in edge legality checks
MACRO_EVENT = 'MacroEvent'
MICRO_EVENT = 'MicroEvent'

# Legal (source kind, target kind) pairs per edge kind
LEGAL_ENDPOINTS = {
    EdgeKind.MEMBER_OF: {
        (WorkKind.TEMPORAL_VERSION, WorkKind.NORM_CONCEPT),
        (WorkKind.TEMPORAL_VERSION, WorkKind.AMENDMENT_INSTRUMENT),
        (WorkKind.COMPONENT_TEMPORAL_VERSION, WorkKind.COMPONENT_CONCEPT)},
    EdgeKind.DERIVATIVE_OF: {
        (WorkKind.TEMPORAL_VERSION, WorkKind.TEMPORAL_VERSION),
        (
            WorkKind.COMPONENT_TEMPORAL_VERSION,
            WorkKind.COMPONENT_TEMPORAL_VERSION)},
    EdgeKind.REALISED_IN: {
        (WorkKind.TEMPORAL_VERSION, ExpressionKind.LANGUAGE_VERSION),
        (
            WorkKind.COMPONENT_TEMPORAL_VERSION,
            ExpressionKind.COMPONENT_LANGUAGE_VERSION)},
    EdgeKind.HAS_PART: {
        (WorkKind.NORM_CONCEPT, WorkKind.COMPONENT_CONCEPT),
        (WorkKind.AMENDMENT_INSTRUMENT, WorkKind.COMPONENT_CONCEPT),
        (WorkKind.COMPONENT_CONCEPT, WorkKind.COMPONENT_CONCEPT)},
    EdgeKind.HAS_COMPONENT: {
        (
            ExpressionKind.LANGUAGE_VERSION,
            ExpressionKind.COMPONENT_LANGUAGE_VERSION),
        (
            ExpressionKind.COMPONENT_LANGUAGE_VERSION,
            ExpressionKind.COMPONENT_LANGUAGE_VERSION)},
    EdgeKind.TRANSLATION_DERIVATIVE_OF: {
        (ExpressionKind.LANGUAGE_VERSION, ExpressionKind.LANGUAGE_VERSION),
        (
            ExpressionKind.COMPONENT_LANGUAGE_VERSION,
            ExpressionKind.COMPONENT_LANGUAGE_VERSION)},
    EdgeKind.MODIFIED: {
        (event, version)
        for event in (MACRO_EVENT, MICRO_EVENT)
        for version in VERSION_KINDS},
    EdgeKind.CREATED: {
        (event, version)
        for event in (MACRO_EVENT, MICRO_EVENT)
        for version in VERSION_KINDS},
    EdgeKind.CONSISTS_OF: {(MACRO_EVENT, MICRO_EVENT)},
    EdgeKind.USED: {(MICRO_EVENT, WorkKind.COMPONENT_TEMPORAL_VERSION)}}

# Edge kinds that carry a sibling ordinal
ORDERED_EDGES = frozenset({EdgeKind.HAS_PART, EdgeKind.HAS_COMPONENT})


###############################################################################
# Nodes
###############################################################################


@dataclasses.dataclass(frozen=True)
class ValidityInterval:
    """Half-open date range [start, end); an absent end is open-ended"""

    start: datetime.date
    end: Optional[datetime.date] = None

    def __post_init__(self):
        if self.end is not None and self.end <= self.start:
            raise ValueError(
                f'validity end {self.end} is not after start {self.start}')

    def __contains__(self, date):
        return self.start <= date and (self.end is None or date < self.end)

    def overlaps(self, other: 'ValidityInterval') -> bool:
        return (
            (other.end is None or self.start < other.end) and
            (self.end is None or other.start < self.end))


@dataclasses.dataclass(frozen=True)
class WorkNode:
    """An F1 Work"""

    urn: 'lexversion.Urn'
    kind: WorkKind
    validity: Optional[ValidityInterval] = None
    status: Optional[Status] = None

    def __post_init__(self):
        urn = self.urn
        if urn.language is not None:
            raise lexversion.InvalidNode(urn, 'works carry no language')
        if self.kind.is_concept:
            if urn.version_date is not None:
                raise lexversion.InvalidNode(
                    urn, f'{self.kind.value} urn has a version date')
            if self.validity is not None or self.status is not None:
                raise lexversion.InvalidNode(
                    urn, f'{self.kind.value} has no validity or status')
        else:
            if urn.version_date is None:
                raise lexversion.InvalidNode(
                    urn, f'{self.kind.value} urn lacks a version date')
            if self.validity is None or self.status is None:
                raise lexversion.InvalidNode(
                    urn, f'{self.kind.value} requires validity and status')
            if self.validity.start != urn.version_date:
                raise lexversion.InvalidNode(
                    urn,
                    f'validity starts {self.validity.start}, '
                    f'urn is dated {urn.version_date}')
        is_component = self.kind in (
            WorkKind.COMPONENT_CONCEPT,
            WorkKind.COMPONENT_TEMPORAL_VERSION)
        if is_component != (urn.component_path is not None):
            raise lexversion.InvalidNode(
                urn,
                f'{self.kind.value} urn '
                f'{"lacks" if is_component else "has"} a component path')

    @property
    def key(self):
        return str(self.urn)


@dataclasses.dataclass(frozen=True)
class ExpressionNode:
    """An F2 Expression"""

    urn: 'lexversion.Urn'
    kind: ExpressionKind
    language: str
    content: Optional[str] = None

    def __post_init__(self):
        urn = self.urn
        if urn.version_date is None or urn.language is None:
            raise lexversion.InvalidNode(
                urn, 'expression urn needs a version date and a language')
        if self.language != urn.language:
            raise lexversion.InvalidNode(
                urn, f'language {self.language} differs from urn language')
        is_component = self.kind == ExpressionKind.COMPONENT_LANGUAGE_VERSION
        if is_component != (urn.component_path is not None):
            raise lexversion.InvalidNode(
                urn,
                f'{self.kind.value} urn '
                f'{"lacks" if is_component else "has"} a component path')
        if is_component and self.content is None:
            raise lexversion.InvalidNode(
                urn, 'component language version requires content')

    @property
    def key(self):
        return str(self.urn)


@dataclasses.dataclass(frozen=True)
class LegislativeEvent:
    """An F27 Work Creation (and E11 Modification)

    Reference lists are kept sorted so that equal events compare equal
    regardless of construction order.
    """

    id: str
    level: EventLevel
    nature: str
    actors: Tuple[str, ...]
    time_span: datetime.date
    modified: Tuple['lexversion.Urn', ...] = ()
    created: Tuple['lexversion.Urn', ...] = ()
    children: Tuple[str, ...] = ()
    instruction: Optional['lexversion.Urn'] = None

    def __post_init__(self):
        object.__setattr__(self, 'actors', tuple(sorted(set(self.actors))))
        object.__setattr__(
            self, 'modified', tuple(sorted(self.modified, key=str)))
        object.__setattr__(
            self, 'created', tuple(sorted(self.created, key=str)))
        object.__setattr__(self, 'children', tuple(sorted(self.children)))
        if self.level == EventLevel.MICRO:
            if len(self.created) != 1 or len(self.modified) > 1:
                raise lexversion.InvalidNode(
                    self.id,
                    'micro event must create exactly one version and '
                    'modify at most one')
            if self.children:
                raise lexversion.InvalidNode(
                    self.id, 'micro event has no children')
        elif self.instruction is not None:
            raise lexversion.InvalidNode(
                self.id, 'macro event uses no instruction')

    @property
    def key(self):
        return self.id


###############################################################################
# Edges
###############################################################################


@dataclasses.dataclass(frozen=True)
class Edge:
    """Directed typed edge between two node keys"""

    source: str
    kind: EdgeKind
    target: str
    qualifier: Optional[str] = None
    ordinal: Optional[int] = None

    def __post_init__(self):
        if self.kind in ORDERED_EDGES:
            if (
                isinstance(self.ordinal, bool) or
                not isinstance(self.ordinal, int) or
                self.ordinal < 1
            ):
                raise lexversion.InvalidEdge(
                    self.source,
                    self.kind.value,
                    self.target,
                    f'ordinal must be a positive integer, '
                    f'not {self.ordinal!r}')
        elif self.ordinal is not None:
            raise lexversion.InvalidEdge(
                self.source,
                self.kind.value,
                self.target,
                'only HasPart and HasComponent carry an ordinal')
        if (
            self.qualifier is not None and
            self.kind != EdgeKind.DERIVATIVE_OF
        ):
            raise lexversion.InvalidEdge(
                self.source,
                self.kind.value,
                self.target,
                'only DerivativeOf carries a qualifier')

    def sort_key(self):
        return (
            self.source,
            self.kind.value,
            self.ordinal or 0,
            self.target,
            self.qualifier or '')


###############################################################################
# Validation results
###############################################################################


@dataclasses.dataclass(frozen=True)
class Violation:
    """A broken structural rule"""

    rule: str
    urns: Tuple[str, ...]
    message: str

    def __str__(self):
        return f'{self.rule}: {self.message}'
