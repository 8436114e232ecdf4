import collections
from typing import List

import lexversion
from lexversion.model.core import (
    EdgeKind,
    EventLevel,
    Status,
    Violation,
    WorkKind)


###############################################################################
# Validate
###############################################################################


def validate(g) -> List[Violation]:
    """Check every structural rule of a temporal graph

    Arguments
        g
            The graph to check

    Returns
        The violations found, empty if the graph is well-formed
    """
    violations = []
    for check in (
        _membership,
        _chains,
        _realisations,
        _ordinals,
        _parallel_hierarchy,
        _events,
        _provenance
    ):
        violations.extend(check(g))
    return violations


###############################################################################
# Rules
###############################################################################


def _membership(g):
    """Versions belong to their own concept; components hang off one parent"""
    for key, work in sorted(g.works.items()):
        if work.kind.is_version:
            concepts = [edge.target for edge in g.out(key, EdgeKind.MEMBER_OF)]
            expected = str(
                lexversion.identifiers.strip_to_component_concept(work.urn))
            if concepts != [expected]:
                yield Violation(
                    'MembershipMismatch',
                    (key, *concepts),
                    f'{key} must be member of exactly {expected}')

        elif work.kind == WorkKind.COMPONENT_CONCEPT:
            parents = [edge.source for edge in g.into(key, EdgeKind.HAS_PART)]
            if len(parents) != 1:
                yield Violation(
                    'OrphanComponent',
                    (key, *parents),
                    f'{key} has {len(parents)} parents')
            elif str(lexversion.strip_to_concept(
                g.works[parents[0]].urn
            )) != str(lexversion.strip_to_concept(work.urn)):
                yield Violation(
                    'OrphanComponent',
                    (key, parents[0]),
                    f'{key} is a part of another norm {parents[0]}')

        if work.kind.is_concept and not g.versions(key):
            yield Violation(
                'MissingVersion', (key,), f'{key} has no versions')


def _chains(g):
    """Versions of a concept form one succession chain that partitions time"""
    for concept, timeline in sorted(g.timelines.items()):
        if not timeline:
            continue
        members = set(timeline)

        # One predecessor per version, namely the previous one by date
        for index, key in enumerate(timeline):
            derivations = g.out(key, EdgeKind.DERIVATIVE_OF)
            predecessors = [edge.target for edge in derivations]
            expected = [] if index == 0 else [timeline[index - 1]]
            if predecessors != expected or any(
                target not in members for target in predecessors
            ):
                yield Violation(
                    'ChainNotLinear',
                    (key, *predecessors),
                    f'{key} must derive from '
                    f'{expected[0] if expected else "nothing"}, '
                    f'found {", ".join(predecessors) or "nothing"}')
            for edge in derivations:
                if edge.qualifier != lexversion.TEMPORAL_SUCCESSION:
                    yield Violation(
                        'MissingSuccessionType',
                        (key, edge.target),
                        f'derivation {key} -> {edge.target} is typed '
                        f'{edge.qualifier!r}')

        # Contiguous, disjoint validity intervals
        versions = [g.works[key] for key in timeline]
        for previous, current in zip(versions, versions[1:]):
            end = previous.validity.end
            keys = (str(previous.urn), str(current.urn))
            if end is None or end > current.validity.start:
                yield Violation(
                    'OverlappingValidity',
                    keys,
                    f'{keys[0]} is still valid when {keys[1]} starts')
            elif end < current.validity.start:
                yield Violation(
                    'ValidityGap',
                    keys,
                    f'nothing of {concept} is valid '
                    f'from {end} to {current.validity.start}')
            if previous.status != Status.SUPERSEDED:
                yield Violation(
                    'StatusMismatch',
                    keys[:1],
                    f'{keys[0]} has a successor but is '
                    f'{previous.status.value}')

        # Only the newest version is open-ended
        newest = versions[-1]
        if newest.validity.end is not None or newest.status not in (
            Status.IN_FORCE,
            Status.REPEALED
        ):
            yield Violation(
                'StatusMismatch',
                (str(newest.urn),),
                f'newest version {newest.urn} must be open-ended and in '
                f'force or repealed')


def _realisations(g):
    """Every version is realised once per language; expressions realise one"""
    for key, work in sorted(g.works.items()):
        if not work.kind.is_version:
            continue
        edges = g.out(key, EdgeKind.REALISED_IN)
        if not edges:
            yield Violation(
                'MissingRealisation', (key,), f'{key} has no expression')
        languages = collections.Counter(
            g.expressions[edge.target].language for edge in edges)
        for language, count in sorted(languages.items()):
            if count > 1:
                yield Violation(
                    'DuplicateLanguage',
                    (key,),
                    f'{key} is realised {count} times in {language}')
        for edge in edges:
            expected = lexversion.identifiers.strip_language(
                g.expressions[edge.target].urn)
            if str(expected) != key:
                yield Violation(
                    'RealisationMismatch',
                    (key, edge.target),
                    f'{edge.target} cannot realise {key}')

    for key in sorted(g.expressions):
        works = [edge.source for edge in g.into(key, EdgeKind.REALISED_IN)]
        if len(works) != 1:
            yield Violation(
                'RealisationCount',
                (key, *works),
                f'{key} realises {len(works)} versions')


def _ordinals(g):
    """Sibling ordinals are unique under one parent"""
    for key in sorted(g.works):
        ordinals = collections.defaultdict(list)
        for edge in g.out(key, EdgeKind.HAS_PART):
            ordinals[edge.ordinal].append(edge.target)
        for ordinal, children in sorted(ordinals.items()):
            if len(children) > 1:
                yield Violation(
                    'DuplicateOrdinal',
                    (key, *children),
                    f'{len(children)} parts of {key} share ordinal {ordinal}')

    # Successive versions of one child component may share an ordinal
    for key in sorted(g.expressions):
        ordinals = collections.defaultdict(set)
        for edge in g.out(key, EdgeKind.HAS_COMPONENT):
            ordinals[edge.ordinal].add(_concept_of_expression(g, edge.target))
        for ordinal, concepts in sorted(ordinals.items()):
            if len(concepts) > 1:
                yield Violation(
                    'DuplicateOrdinal',
                    (key, *sorted(concepts)),
                    f'components of {key} from {len(concepts)} different '
                    f'concepts share ordinal {ordinal}')


def _parallel_hierarchy(g):
    """Expression composition mirrors work composition at every date"""
    expected = set()
    for key in sorted(g.works):
        for part in g.out(key, EdgeKind.HAS_PART):
            children = [g.works[child] for child in g.versions(part.target)]
            for parent_key in g.versions(key):
                parent = g.works[parent_key]
                parent_expressions = g.realisations(parent_key)
                for child in children:
                    if not parent.validity.overlaps(child.validity):
                        continue
                    child_expressions = g.realisations(child.key)
                    for language in sorted(
                        parent_expressions.keys() & child_expressions.keys()
                    ):
                        source = parent_expressions[language].key
                        target = child_expressions[language].key
                        expected.add((source, target, part.ordinal))

    actual = {
        (edge.source, edge.target, edge.ordinal)
        for edge in g.edges if edge.kind == EdgeKind.HAS_COMPONENT}
    for source, target, ordinal in sorted(expected - actual):
        yield Violation(
            'ParallelHierarchy',
            (source, target),
            f'{source} must have component {target} at ordinal {ordinal}')
    for source, target, ordinal in sorted(actual - expected):
        yield Violation(
            'ParallelHierarchy',
            (source, target),
            f'{source} has component {target} at ordinal {ordinal} '
            'without a matching work composition')


def _events(g):
    """Events agree with their edges and micro events are well placed"""
    for key, event in sorted(g.events.items()):
        for kind, references in (
            (EdgeKind.MODIFIED, event.modified),
            (EdgeKind.CREATED, event.created),
            (EdgeKind.CONSISTS_OF, event.children),
            (
                EdgeKind.USED,
                () if event.instruction is None else (event.instruction,))
        ):
            targets = {edge.target for edge in g.out(key, kind)}
            if targets != {str(reference) for reference in references}:
                yield Violation(
                    'EventEdgeMismatch',
                    (key,),
                    f'{kind.value} edges of {key} disagree with the event')

        if event.level != EventLevel.MICRO:
            continue
        parents = [edge.source for edge in g.into(key, EdgeKind.CONSISTS_OF)]
        if len(parents) != 1:
            yield Violation(
                'OrphanMicroEvent',
                (key, *parents),
                f'micro event {key} belongs to {len(parents)} macro events')
        elif g.events[parents[0]].time_span != event.time_span:
            yield Violation(
                'ConcurrencyViolation',
                (key, parents[0]),
                f'micro event {key} happens on {event.time_span}, its macro '
                f'event on {g.events[parents[0]].time_span}')
        instructions = g.out(key, EdgeKind.USED)
        if len(instructions) != 1:
            yield Violation(
                'MissingInstruction',
                (key,),
                f'micro event {key} uses {len(instructions)} instructions')
        else:
            instrument = g.works.get(str(lexversion.strip_to_concept(
                g.works[instructions[0].target].urn)))
            if (
                instrument is None or
                instrument.kind != WorkKind.AMENDMENT_INSTRUMENT
            ):
                yield Violation(
                    'InstructionMismatch',
                    (key, instructions[0].target),
                    f'{instructions[0].target} is not a provision of an '
                    'amendment instrument')


def _provenance(g):
    """Every version is created by one event that closed its predecessor"""
    for key, work in sorted(g.works.items()):
        if not work.kind.is_version:
            continue
        creators = [edge.source for edge in g.into(key, EdgeKind.CREATED)]
        if len(creators) != 1:
            yield Violation(
                'CreationCount',
                (key, *creators),
                f'{key} is created by {len(creators)} events')
            continue
        event = g.events[creators[0]]

        # Instruments are enacted after their own date
        norm = g.works.get(str(lexversion.strip_to_concept(work.urn)))
        if norm is None or norm.kind != WorkKind.NORM_CONCEPT:
            continue

        if event.time_span != work.validity.start:
            yield Violation(
                'CreationDateMismatch',
                (key, event.id),
                f'{key} starts {work.validity.start} but {event.id} happens '
                f'on {event.time_span}')

        predecessors = [
            edge.target for edge in g.out(key, EdgeKind.DERIVATIVE_OF)]
        modified = sorted(str(urn) for urn in event.modified)
        is_component = work.kind == WorkKind.COMPONENT_TEMPORAL_VERSION
        if predecessors and modified != predecessors:
            yield Violation(
                'ProvenanceMismatch',
                (key, event.id),
                f'{event.id} created {key} but modified '
                f'{", ".join(modified) or "nothing"} instead of '
                f'{predecessors[0]}')
        if is_component and predecessors and event.level != EventLevel.MICRO:
            yield Violation(
                'ProvenanceIncomplete',
                (key, event.id),
                f'{key} was amended by a macro event instead of a micro event')

    # Whatever an event modified has been closed
    for edge in sorted(
        (edge for edge in g.edges if edge.kind == EdgeKind.MODIFIED),
        key=lambda edge: edge.sort_key()
    ):
        if g.works[edge.target].validity.end is None:
            yield Violation(
                'ModifiedOpenVersion',
                (edge.source, edge.target),
                f'{edge.source} modified {edge.target} without closing it')


###############################################################################
# Utilities
###############################################################################


def _concept_of_expression(g, key):
    """Concept key of the work realised by an expression"""
    works = g.into(key, EdgeKind.REALISED_IN)
    if not works:
        return key
    return str(lexversion.identifiers.strip_to_component_concept(
        g.works[works[0].source].urn))
