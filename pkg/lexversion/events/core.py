import dataclasses
import datetime
from typing import Optional, Sequence, Tuple, Union

import lexversion
from lexversion.events.script import (
    AmendmentScript,
    ComponentSpec,
    Operation)
from lexversion.model import (
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
    add_work,
    close_version)


###############################################################################
# Amendment report
###############################################################################


@dataclasses.dataclass(frozen=True)
class AmendmentReport:
    """What one applied amendment produced

    created and superseded align with the script instructions; superseded
    is None for an added component.
    """

    macro_event: str
    micro_events: Tuple[str, ...]
    created: Tuple['lexversion.Urn', ...]
    superseded: Tuple[Optional['lexversion.Urn'], ...]
    new_version: 'lexversion.Urn'
    instrument: 'lexversion.Urn'

    def to_dict(self):
        return {
            'macro_event': self.macro_event,
            'micro_events': list(self.micro_events),
            'created': [str(urn) for urn in self.created],
            'superseded': [
                None if urn is None else str(urn)
                for urn in self.superseded],
            'new_version': str(self.new_version),
            'instrument': str(self.instrument)}


###############################################################################
# Bootstrap
###############################################################################


def bootstrap_norm(
    g: TemporalGraph,
    concept: Union[str, 'lexversion.Urn'],
    enacted: datetime.date,
    components: Sequence[ComponentSpec],
    form: Optional[str] = None,
    nature: Optional[str] = None,
    actors: Sequence[str] = ()
) -> TemporalGraph:
    """Record a norm as enacted

    Arguments
        g
            The graph to extend
        concept
            Concept urn of the new norm
        enacted
            Date of enactment; the date of the first version
        components
            Top-level components, each with its children
        form
            Expression form token of the texts
        nature
            Nature of the creation event
        actors
            Agents who carried out the creation

    Returns
        The graph with the norm, its first version and its creation event
    """
    concept = _concept_urn(concept)
    form = form or lexversion.DEFAULT_FORM
    nature = nature or lexversion.DEFAULT_CREATION_NATURE
    if str(concept) in g:
        raise lexversion.DuplicateUrn(str(concept))
    if not components:
        raise lexversion.EmptyComponentTree(str(concept))
    languages = _languages(components)
    if not languages:
        raise lexversion.InvalidScript(
            f'norm {concept} has no text in any language')

    # Norm and its first version
    version = lexversion.with_version(concept, enacted)
    g = add_work(g, WorkNode(concept, WorkKind.NORM_CONCEPT))
    g = _add_version(
        g, concept, version, WorkKind.TEMPORAL_VERSION, Status.IN_FORCE)
    expressions = {}
    for language in languages:
        g, expressions[language] = _add_expression(
            g, version, form, language, None)

    # Component tree, depth first
    created = [version]
    stack = [
        (concept, expressions, ordinal, spec)
        for ordinal, spec in reversed(list(enumerate(components, 1)))]
    while stack:
        parent, parent_expressions, ordinal, spec = stack.pop()
        texts = dict(spec.text) if spec.text is not None \
            else {language: '' for language in languages}
        if set(texts) != set(languages):
            raise lexversion.LanguageMismatch(
                str(spec.path), texts.keys(), languages)

        component = lexversion.with_component(concept, spec.path)
        component_version = lexversion.with_component(version, spec.path)
        g = add_work(g, WorkNode(component, WorkKind.COMPONENT_CONCEPT))
        g = add_edge(
            g, parent, EdgeKind.HAS_PART, component, ordinal=ordinal)
        g = _add_version(
            g,
            component,
            component_version,
            WorkKind.COMPONENT_TEMPORAL_VERSION,
            Status.IN_FORCE)
        component_expressions = {}
        for language in languages:
            g, key = _add_expression(
                g, component_version, form, language, texts[language])
            component_expressions[language] = key
            g = add_edge(
                g,
                parent_expressions[language],
                EdgeKind.HAS_COMPONENT,
                key,
                ordinal=ordinal)
        created.append(component_version)

        stack.extend(
            (component, component_expressions, child_ordinal, child)
            for child_ordinal, child in reversed(
                list(enumerate(spec.children, 1))))

    return add_event(g, LegislativeEvent(
        id=f'{version}#event',
        level=EventLevel.MACRO,
        nature=nature,
        actors=tuple(actors),
        time_span=enacted,
        created=tuple(created)))


###############################################################################
# Amendment
###############################################################################


def apply_amendment(
    g: TemporalGraph,
    concept: Union[str, 'lexversion.Urn'],
    script: AmendmentScript
) -> Tuple[TemporalGraph, AmendmentReport]:
    """Apply an amendment script to the current version of a norm

    Arguments
        g
            The graph holding the norm
        concept
            Concept urn of the amended norm
        script
            The amendment to apply

    Returns
        graph
            The graph with the new versions and the amending events
        report
            What the amendment created and superseded
    """
    concept = _concept_urn(concept)
    norm = g.works.get(str(concept))
    if norm is None or norm.kind != WorkKind.NORM_CONCEPT:
        raise lexversion.UnknownConcept(str(concept))
    current = g.works[g.versions(concept)[-1]]
    effective = script.effective_date
    if effective <= current.validity.start:
        raise lexversion.EffectiveDateNotAfterCurrent(
            str(concept), effective, current.validity.start)
    current_expressions = g.realisations(current.key)
    languages = sorted(current_expressions)
    form = current_expressions[languages[0]].urn.form

    # Amending instrument and its provisions
    g, instrument_version, provisions = _add_instrument(g, script, languages)

    # Next version of the norm
    version = lexversion.with_version(concept, effective)
    g = close_version(g, current.key, effective)
    g = _add_version(
        g, concept, version, WorkKind.TEMPORAL_VERSION, Status.IN_FORCE)
    g = add_edge(
        g,
        version,
        EdgeKind.DERIVATIVE_OF,
        current.key,
        qualifier=lexversion.TEMPORAL_SUCCESSION)
    for language in languages:
        g, _ = _add_expression(g, version, form, language, None)

    # One micro event per instruction
    micro_events, created, superseded, changed = [], [], [], []
    for instruction, provision in zip(script.instructions, provisions):
        g, new, prior = _apply_instruction(
            g, concept, version, form, languages, instruction)
        event = LegislativeEvent(
            id=f'{provision}#event',
            level=EventLevel.MICRO,
            nature=script.instrument.nature,
            actors=script.instrument.actors,
            time_span=effective,
            modified=() if prior is None else (prior,),
            created=(new,),
            instruction=provision)
        g = add_event(g, event)
        micro_events.append(event.id)
        created.append(new)
        superseded.append(prior)
        changed.append(lexversion.with_component(concept, instruction.target))

    # Mirror the component tree in the new expressions
    g = _link_parts(g, concept, version, effective)
    for component in changed:
        parent = g.into(component, EdgeKind.HAS_PART)[0]
        if g.works[parent.source].kind == WorkKind.COMPONENT_CONCEPT:
            g = _link(
                g,
                g.version_at(parent.source, effective).key,
                component,
                parent.ordinal,
                effective)
        g = _link_parts(
            g,
            component,
            g.version_at(component, effective).key,
            effective)

    macro = LegislativeEvent(
        id=f'{instrument_version}#event',
        level=EventLevel.MACRO,
        nature=script.instrument.nature,
        actors=script.instrument.actors,
        time_span=effective,
        modified=(current.urn,),
        created=(version, instrument_version, *provisions),
        children=tuple(micro_events))
    g = add_event(g, macro)

    return g, AmendmentReport(
        macro_event=macro.id,
        micro_events=tuple(micro_events),
        created=tuple(created),
        superseded=tuple(superseded),
        new_version=version,
        instrument=script.instrument.urn)


###############################################################################
# Instructions
###############################################################################


def _apply_instruction(g, concept, version, form, languages, instruction):
    """Create the new component version one instruction asks for

    Returns
        The graph, the new component version urn and the superseded one
    """
    effective = version.version_date
    component = lexversion.with_component(concept, instruction.target)
    new = lexversion.with_component(version, instruction.target)

    if instruction.op == Operation.ADD_COMPONENT:
        g = _add_component(
            g, concept, component, languages, instruction, effective)
        g = _add_version(
            g,
            component,
            new,
            WorkKind.COMPONENT_TEMPORAL_VERSION,
            Status.IN_FORCE)
        for language, text in sorted(instruction.new_text.items()):
            g, _ = _add_expression(g, new, form, language, text)
        return g, new, None

    prior = g.version_at(component, effective) \
        if str(component) in g.works else None
    if prior is None or prior.status == Status.REPEALED:
        raise lexversion.UnknownTarget(str(instruction.target), effective)
    prior_expressions = g.realisations(prior.key)

    if instruction.op == Operation.REPLACE_TEXT:
        if not set(instruction.new_text) <= set(prior_expressions):
            raise lexversion.LanguageMismatch(
                str(instruction.target),
                instruction.new_text.keys(),
                prior_expressions.keys())
        status, texts = Status.IN_FORCE, dict(instruction.new_text)
    else:
        status = Status.REPEALED
        texts = {language: '' for language in prior_expressions}

    g = close_version(g, prior.key, effective)
    g = _add_version(
        g, component, new, WorkKind.COMPONENT_TEMPORAL_VERSION, status)
    g = add_edge(
        g,
        new,
        EdgeKind.DERIVATIVE_OF,
        prior.key,
        qualifier=lexversion.TEMPORAL_SUCCESSION)
    for language, text in sorted(texts.items()):
        g, _ = _add_expression(g, new, form, language, text)
    return g, new, prior.urn


def _add_component(g, concept, component, languages, instruction, date):
    """Insert the concept of an added component under its parent"""
    target = instruction.target
    position = instruction.position
    parent_path = position.parent if position is not None else target.parent
    parent = concept if parent_path is None \
        else lexversion.with_component(concept, parent_path)
    siblings = g.out(parent, EdgeKind.HAS_PART)
    ordinal = position.ordinal if position is not None else 1 + max(
        (edge.ordinal for edge in siblings), default=0)

    if str(component) in g.works:
        raise lexversion.DuplicateComponent(
            str(target), parent_path, ordinal, 'component already exists')
    if any(edge.ordinal == ordinal for edge in siblings):
        raise lexversion.DuplicateComponent(
            str(target), parent_path, ordinal, 'ordinal already taken')
    if not set(instruction.new_text) <= set(languages):
        raise lexversion.LanguageMismatch(
            str(target), instruction.new_text.keys(), languages)

    # The parent must be in force when the component is added
    if parent_path is not None:
        parent_version = g.version_at(parent, date) \
            if str(parent) in g.works else None
        if parent_version is None or parent_version.status == Status.REPEALED:
            raise lexversion.UnknownTarget(
                str(parent_path), date, 'parent not in force')

    g = add_work(g, WorkNode(component, WorkKind.COMPONENT_CONCEPT))
    return add_edge(g, parent, EdgeKind.HAS_PART, component, ordinal=ordinal)


def _add_instrument(g, script, languages):
    """Add the amending instrument, its version and one work per provision

    Returns
        The graph, the instrument version urn and the provision version urns
    """
    instrument = script.instrument
    concept = instrument.urn
    if str(concept) in g:
        raise lexversion.DuplicateUrn(str(concept))
    text = dict(instrument.text or {})
    languages = sorted(set(languages) | set(text))

    version = lexversion.with_version(concept, instrument.date)
    g = add_work(g, WorkNode(concept, WorkKind.AMENDMENT_INSTRUMENT))
    g = _add_version(
        g, concept, version, WorkKind.TEMPORAL_VERSION, Status.IN_FORCE)
    expressions = {}
    for language in languages:
        g, expressions[language] = _add_expression(
            g, version, instrument.form, language, text.get(language))

    provisions = []
    for ordinal, instruction in enumerate(script.instructions, 1):
        provision = lexversion.with_component(
            concept, instruction.provision_path)
        provision_version = lexversion.with_component(
            version, instruction.provision_path)
        g = add_work(g, WorkNode(provision, WorkKind.COMPONENT_CONCEPT))
        g = add_edge(g, concept, EdgeKind.HAS_PART, provision, ordinal=ordinal)
        g = _add_version(
            g,
            provision,
            provision_version,
            WorkKind.COMPONENT_TEMPORAL_VERSION,
            Status.IN_FORCE)
        for language in languages:
            g, key = _add_expression(
                g,
                provision_version,
                instrument.form,
                language,
                instruction.provision_content(language))
            g = add_edge(
                g,
                expressions[language],
                EdgeKind.HAS_COMPONENT,
                key,
                ordinal=ordinal)
        provisions.append(provision_version)

    return g, version, provisions


###############################################################################
# Utilities
###############################################################################


def _add_expression(g, version, form, language, content):
    """Realise a version in one language

    Returns
        The graph and the key of the new expression
    """
    urn = lexversion.with_language(version, form, language)
    kind = ExpressionKind.LANGUAGE_VERSION if urn.component_path is None \
        else ExpressionKind.COMPONENT_LANGUAGE_VERSION
    g = add_expression(g, ExpressionNode(urn, kind, language, content))
    return add_edge(g, version, EdgeKind.REALISED_IN, urn), str(urn)


def _add_version(g, concept, version, kind, status):
    """Add an open-ended version and make it a member of its concept"""
    g = add_work(g, WorkNode(
        version,
        kind,
        ValidityInterval(version.version_date),
        status))
    return add_edge(g, version, EdgeKind.MEMBER_OF, concept)


def _concept_urn(urn):
    """Parse and check a norm concept urn"""
    if isinstance(urn, str):
        urn = lexversion.parse_urn(urn)
    if urn != lexversion.strip_to_concept(urn):
        raise lexversion.UnknownConcept(str(urn))
    return urn


def _languages(components):
    """Sorted languages used anywhere in a component tree"""
    languages, stack = set(), list(components)
    while stack:
        spec = stack.pop()
        languages.update(spec.text or ())
        stack.extend(spec.children)
    return sorted(languages)


def _link(g, parent_version, component, ordinal, date):
    """Compose the expressions of parent_version with those of component"""
    version = g.version_at(component, date)
    if version is None:
        return g
    parent_expressions = g.realisations(parent_version)
    expressions = g.realisations(version.key)
    for language in sorted(parent_expressions.keys() & expressions.keys()):
        g = add_edge(
            g,
            parent_expressions[language].key,
            EdgeKind.HAS_COMPONENT,
            expressions[language].key,
            ordinal=ordinal)
    return g


def _link_parts(g, parent, parent_version, date):
    """Compose parent_version with every part of parent in force at date"""
    for edge in g.out(parent, EdgeKind.HAS_PART):
        g = _link(g, parent_version, edge.target, edge.ordinal, date)
    return g
