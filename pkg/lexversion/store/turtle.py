"""RDF Turtle export and import

Works, expressions and events become F1, F2 and F27 resources named by
their urn or event id. Every edge becomes one triple. Edges carrying an
ordinal or a qualifier are also reified as rdf:Statement resources so that
import restores them exactly. Validity intervals are E52 time-span
resources attached with P4.
"""
import datetime
import hashlib
import re

import rdflib
from rdflib import RDF, XSD, Literal, Namespace, URIRef
from rdflib.exceptions import UniquenessError
from rdflib.namespace import NamespaceManager
from rdflib.plugins.parsers.notation3 import BadSyntax

import lexversion
from lexversion.model import (
    Edge,
    EdgeKind,
    EventLevel,
    ExpressionKind,
    ExpressionNode,
    LegislativeEvent,
    Status,
    TemporalGraph,
    ValidityInterval,
    WorkKind,
    WorkNode,
    add_edge,
    add_event,
    add_expression,
    add_work)


###############################################################################
# Constants
###############################################################################


# Edge kinds that are stored as event fields
EVENT_EDGES = (
    EdgeKind.MODIFIED,
    EdgeKind.CREATED,
    EdgeKind.CONSISTS_OF,
    EdgeKind.USED)

# Edge kinds whose triples are always reified
REIFIED_EDGES = (EdgeKind.HAS_PART, EdgeKind.HAS_COMPONENT)

# Literal datatype of each attribute value type
LITERAL_DATATYPES = {
    str: None,
    int: XSD.integer,
    datetime.date: XSD.date}

# First line of every export
HEADER = re.compile(r'# lexversion turtle format (\d+)')


###############################################################################
# Export
###############################################################################


def export_turtle(g: TemporalGraph, check: bool = True) -> str:
    """Serialize a graph as canonically ordered Turtle

    Arguments
        g
            The graph to export
        check
            Whether to refuse graphs that break a structural rule

    Returns
        Turtle text; identical graphs export identical text
    """
    if check:
        violations = lexversion.validate(g)
        if violations:
            raise lexversion.InvalidGraph(violations)
    vocabulary = Vocabulary()
    namespaces = vocabulary.namespace_manager()
    rows = sorted(
        tuple(term.n3(namespaces) for term in triple)
        for triple in triples(g, vocabulary))
    lines = [
        f'# lexversion turtle format {lexversion.TURTLE_FORMAT_VERSION}']
    lines.extend(
        f'@prefix {prefix}: <{namespace}> .'
        for prefix, namespace in sorted(vocabulary.prefixes.items()))
    lines.extend(' '.join(row) + ' .' for row in rows)
    return '\n'.join(lines) + '\n'


def triples(g: TemporalGraph, vocabulary=None):
    """Every RDF triple of a graph, unordered"""
    v = vocabulary or Vocabulary()

    for key, work in g.works.items():
        subject = URIRef(key)
        yield subject, RDF.type, v.lrmoo.F1_Work
        yield subject, v.lex.kind, Literal(work.kind.value)
        if work.kind.is_version:
            span = URIRef(f'{key}#validity')
            yield subject, v.lex.status, Literal(work.status.value)
            yield subject, v.time_span, span
            yield span, RDF.type, v.crm['E52_Time-Span']
            yield span, v.begin, Literal(work.validity.start)
            if work.validity.end is not None:
                yield span, v.end, Literal(work.validity.end)

    for key, expression in g.expressions.items():
        subject = URIRef(key)
        yield subject, RDF.type, v.lrmoo.F2_Expression
        yield subject, v.lex.kind, Literal(expression.kind.value)
        yield subject, v.crm.P72_has_language, Literal(expression.language)
        if expression.content is not None:
            yield (
                subject,
                v.crm.P190_has_symbolic_content,
                Literal(expression.content))

    for key, event in g.events.items():
        subject = URIRef(key)
        yield subject, RDF.type, v.lrmoo.F27_Work_Creation
        yield subject, v.lex.level, Literal(event.level.value)
        yield subject, v.crm.P2_has_type, Literal(event.nature)
        for actor in event.actors:
            yield subject, v.crm.P14_carried_out_by, Literal(actor)
        yield subject, v.time_span, Literal(event.time_span)

    for edge in g.edges:
        source, target = URIRef(edge.source), URIRef(edge.target)
        predicate = v.predicates[edge.kind]
        yield source, predicate, target
        if edge.ordinal is None and edge.qualifier is None:
            continue
        statement = URIRef(_statement(edge))
        yield statement, RDF.type, RDF.Statement
        yield statement, RDF.subject, source
        yield statement, RDF.predicate, predicate
        yield statement, RDF.object, target
        if edge.ordinal is not None:
            yield statement, v.lex.ordinal, Literal(edge.ordinal)
        if edge.qualifier is not None:
            yield statement, v.lex.qualifier, Literal(edge.qualifier)


###############################################################################
# Import
###############################################################################


def import_turtle(text: str) -> TemporalGraph:
    """Rebuild a graph from its Turtle export"""
    match = HEADER.match(text)
    if match and int(match.group(1)) != lexversion.TURTLE_FORMAT_VERSION:
        raise lexversion.TurtleParseError(
            1, f'unsupported turtle format version {match.group(1)}')
    rdf = rdflib.Graph()
    try:
        rdf.parse(data=text, format='turtle')
    except BadSyntax as error:
        raise lexversion.TurtleParseError(
            getattr(error, 'lines', None), str(error))

    v = Vocabulary()
    kinds = {predicate: kind for kind, predicate in v.predicates.items()}
    for predicate in set(rdf.predicates()):
        if predicate not in kinds and predicate not in v.attributes:
            raise lexversion.UnknownVocabularyTerm(str(predicate))
    types = {}
    for subject, term in rdf.subject_objects(RDF.type):
        if term not in v.classes:
            raise lexversion.UnknownVocabularyTerm(str(term))
        types[subject] = term

    # Well-formed triples can still describe an impossible graph
    try:
        return _graph(rdf, v, types, kinds)
    except (lexversion.TurtleParseError, lexversion.UnknownVocabularyTerm):
        raise
    except (lexversion.LexversionError, TypeError, ValueError) as error:
        raise lexversion.TurtleParseError(None, str(error))


def _graph(rdf, v, types, kinds):
    """Rebuild a graph from parsed and vocabulary-checked triples"""
    g = TemporalGraph()
    for subject in sorted(s for s, t in types.items() if t == v.classes[0]):
        g = add_work(g, _work(rdf, v, subject))
    for subject in sorted(s for s, t in types.items() if t == v.classes[1]):
        g = add_expression(g, _expression(rdf, v, subject))

    # Reified edges, then plain edges no statement describes
    edges, described = [], set()
    for statement in (s for s, t in types.items() if t == RDF.Statement):
        predicate = _node(rdf, statement, RDF.predicate)
        if predicate not in kinds:
            raise lexversion.UnknownVocabularyTerm(str(predicate))
        source = _node(rdf, statement, RDF.subject)
        target = _node(rdf, statement, RDF.object)
        edges.append(Edge(
            str(source),
            kinds[predicate],
            str(target),
            _literal(rdf, statement, v.lex.qualifier, str, required=False),
            _literal(rdf, statement, v.lex.ordinal, int, required=False)))
        described.add((source, predicate, target))
    references = {}
    for source, predicate, target in rdf:
        kind = kinds.get(predicate)
        if kind is None or (source, predicate, target) in described:
            continue
        if kind in EVENT_EDGES:
            references.setdefault((str(source), kind), []).append(str(target))
        elif kind in REIFIED_EDGES:
            raise lexversion.TurtleParseError(
                None, f'{kind.value} edge from {source} has no ordinal')
        else:
            edges.append(Edge(str(source), kind, str(target)))
    for edge in sorted(edges, key=Edge.sort_key):
        g = add_edge(
            g,
            edge.source,
            edge.kind,
            edge.target,
            qualifier=edge.qualifier,
            ordinal=edge.ordinal)

    # Micro events before the macro events that consist of them
    events = [
        _event(rdf, v, subject, references)
        for subject in sorted(
            s for s, t in types.items() if t == v.classes[2])]
    for event in sorted(
        events,
        key=lambda event: (event.level != EventLevel.MICRO, event.id)
    ):
        g = add_event(g, event)

    return g


###############################################################################
# Vocabulary
###############################################################################


class Vocabulary:
    """RDF terms under the configured namespaces"""

    def __init__(self):
        self.lrmoo = Namespace(lexversion.LRMOO_NAMESPACE)
        self.crm = Namespace(lexversion.CRM_NAMESPACE)
        self.lex = Namespace(lexversion.LEX_NAMESPACE)
        self.prefixes = {
            'crm': str(self.crm),
            'lex': str(self.lex),
            'lrmoo': str(self.lrmoo),
            'rdf': str(RDF),
            'xsd': str(XSD)}

        # P4, P82a and P82b
        self.time_span = self.crm['P4_has_time-span']
        self.begin = self.crm['P82a_begin_of_the_begin']
        self.end = self.crm['P82b_end_of_the_end']

        self.predicates = {
            EdgeKind.MEMBER_OF: self.lrmoo.R10_is_member_of,
            EdgeKind.DERIVATIVE_OF: self.lrmoo.R2_is_derivative_of,
            EdgeKind.REALISED_IN: self.lrmoo.R3_is_realised_in,
            EdgeKind.HAS_PART: self.lrmoo.R67_has_part,
            EdgeKind.HAS_COMPONENT: self.lrmoo.R5_has_component,
            EdgeKind.TRANSLATION_DERIVATIVE_OF:
                self.lrmoo.R76_is_derivative_of,
            EdgeKind.MODIFIED: self.crm.P31_has_modified,
            EdgeKind.CREATED: self.lrmoo.R16_created,
            EdgeKind.CONSISTS_OF: self.crm.P9_consists_of,
            EdgeKind.USED: self.crm.P16_used_specific_object}

        # Works, expressions, events, then auxiliary classes
        self.classes = (
            self.lrmoo.F1_Work,
            self.lrmoo.F2_Expression,
            self.lrmoo.F27_Work_Creation,
            self.crm['E52_Time-Span'],
            RDF.Statement)

        self.attributes = {
            RDF.type,
            RDF.subject,
            RDF.predicate,
            RDF.object,
            self.lex.kind,
            self.lex.status,
            self.lex.level,
            self.lex.ordinal,
            self.lex.qualifier,
            self.time_span,
            self.begin,
            self.end,
            self.crm.P72_has_language,
            self.crm.P190_has_symbolic_content,
            self.crm.P2_has_type,
            self.crm.P14_carried_out_by}

    def namespace_manager(self):
        namespaces = NamespaceManager(rdflib.Graph())
        for prefix, namespace in self.prefixes.items():
            namespaces.bind(prefix, namespace, override=True, replace=True)
        return namespaces


###############################################################################
# Utilities
###############################################################################


def _enum(cls, value):
    """Enum member of a literal, rejecting unknown terms"""
    try:
        return cls(str(value))
    except ValueError:
        raise lexversion.UnknownVocabularyTerm(str(value))


def _event(rdf, v, subject, references):
    key = str(subject)

    def urns(kind):
        return tuple(
            lexversion.parse_urn(target)
            for target in references.get((key, kind), ()))

    instruction = urns(EdgeKind.USED)
    return LegislativeEvent(
        id=key,
        level=_enum(EventLevel, _literal(rdf, subject, v.lex.level, str)),
        nature=_literal(rdf, subject, v.crm.P2_has_type, str),
        actors=tuple(
            str(actor)
            for actor in rdf.objects(subject, v.crm.P14_carried_out_by)),
        time_span=_literal(rdf, subject, v.time_span, datetime.date),
        modified=urns(EdgeKind.MODIFIED),
        created=urns(EdgeKind.CREATED),
        children=tuple(references.get((key, EdgeKind.CONSISTS_OF), ())),
        instruction=instruction[0] if instruction else None)


def _expression(rdf, v, subject):
    return ExpressionNode(
        urn=lexversion.parse_urn(str(subject)),
        kind=_enum(ExpressionKind, _literal(rdf, subject, v.lex.kind, str)),
        language=_literal(rdf, subject, v.crm.P72_has_language, str),
        content=_literal(
            rdf,
            subject,
            v.crm.P190_has_symbolic_content,
            str,
            required=False))


def _literal(rdf, subject, predicate, kind, required=True):
    """Python value of the single literal a subject has for a predicate

    Arguments
        rdf
            The parsed rdflib graph
        subject
            The resource to read
        predicate
            The attribute to read
        kind
            Expected python type: str, int or datetime.date
        required
            Whether a missing value is an error

    Returns
        The value, or None if it is absent and not required
    """
    term = _value(rdf, subject, predicate, required)
    if term is None:
        return None
    datatype = LITERAL_DATATYPES[kind]
    if not isinstance(term, Literal) or term.datatype != datatype or (
        kind is str and term.language is not None
    ):
        raise lexversion.TurtleParseError(
            None, f'{predicate} of {subject} is not a {kind.__name__}')
    value = str(term) if kind is str else term.toPython()
    if not isinstance(value, kind) or isinstance(value, bool):
        raise lexversion.TurtleParseError(
            None, f'{predicate} of {subject} is not a valid {kind.__name__}')
    return value


def _node(rdf, subject, predicate):
    """The single resource a subject points to through a predicate"""
    term = _value(rdf, subject, predicate, True)
    if not isinstance(term, URIRef):
        raise lexversion.TurtleParseError(
            None, f'{predicate} of {subject} is not a resource')
    return term


def _statement(edge):
    """Deterministic name of the statement reifying an edge"""
    digest = hashlib.sha256(
        f'{edge.target}|{edge.ordinal}|{edge.qualifier}'.encode('utf-8'))
    return f'{edge.source}#{edge.kind.value}-{digest.hexdigest()[:16]}'


def _value(rdf, subject, predicate, required):
    try:
        term = rdf.value(subject, predicate, any=False)
    except UniquenessError:
        raise lexversion.TurtleParseError(
            None, f'{subject} has more than one {predicate}')
    if term is None and required:
        raise lexversion.TurtleParseError(None, f'{subject} lacks {predicate}')
    return term


def _work(rdf, v, subject):
    kind = _enum(WorkKind, _literal(rdf, subject, v.lex.kind, str))
    urn = lexversion.parse_urn(str(subject))
    if kind.is_concept:
        return WorkNode(urn, kind)
    span = _node(rdf, subject, v.time_span)
    return WorkNode(
        urn,
        kind,
        ValidityInterval(
            _literal(rdf, span, v.begin, datetime.date),
            _literal(rdf, span, v.end, datetime.date, required=False)),
        _enum(Status, _literal(rdf, subject, v.lex.status, str)))
