import dataclasses
import datetime
import enum
from typing import Optional, Tuple

from pyrsistent import PMap, pmap

import lexversion


###############################################################################
# Amendment scripts
###############################################################################


class Operation(enum.Enum):
    """What an instruction does to its target component"""

    REPLACE_TEXT = 'ReplaceText'
    ADD_COMPONENT = 'AddComponent'
    REPEAL = 'Repeal'


@dataclasses.dataclass(frozen=True)
class Position:
    """Where an added component goes; a parent of None is the norm itself"""

    parent: Optional['lexversion.ComponentPath']
    ordinal: int


@dataclasses.dataclass(frozen=True)
class Instruction:
    """One amending provision in structured form"""

    op: Operation
    target: 'lexversion.ComponentPath'
    provision_path: 'lexversion.ComponentPath'
    new_text: Optional[PMap] = None
    position: Optional[Position] = None
    provision_text: Optional[PMap] = None

    def __post_init__(self):
        if self.op == Operation.REPEAL:
            if self.new_text is not None or self.position is not None:
                raise lexversion.InvalidScript(
                    f'Repeal of {self.target} carries neither new_text nor '
                    'position')
        else:
            if not self.new_text:
                raise lexversion.InvalidScript(
                    f'{self.op.value} of {self.target} requires new_text')
            if self.op == Operation.REPLACE_TEXT and self.position is not None:
                raise lexversion.InvalidScript(
                    f'ReplaceText of {self.target} carries no position')
        if self.position is not None and (
            self.position.parent is not None and
            not self.target.is_within(self.position.parent)
        ):
            raise lexversion.InvalidScript(
                f'{self.target} does not lie within {self.position.parent}')

    @classmethod
    def from_dict(cls, item):
        """Build an instruction from its file representation"""
        if not isinstance(item, dict):
            raise lexversion.InvalidScript('instruction must be a mapping')
        try:
            op = Operation(item.get('op'))
        except (TypeError, ValueError):
            raise lexversion.InvalidScript(
                f'unknown instruction op {item.get("op")!r}')
        target = _path(_required(item, 'target'))
        position = None
        if item.get('position') is not None:
            if not isinstance(item['position'], dict):
                raise lexversion.InvalidScript(
                    f'position of {target} is not a mapping')
            parent = item['position'].get('parent')
            position = Position(
                None if parent in (None, '') else _path(parent),
                _ordinal(item['position'].get('ordinal')))
        return cls(
            op=op,
            target=target,
            provision_path=_path(_required(item, 'provision_path')),
            new_text=_texts(item.get('new_text')),
            position=position,
            provision_text=_texts(item.get('provision_text')))

    def to_dict(self):
        """File representation"""
        item = {
            'op': self.op.value,
            'target': str(self.target),
            'provision_path': str(self.provision_path)}
        if self.new_text is not None:
            item['new_text'] = dict(sorted(self.new_text.items()))
        if self.position is not None:
            item['position'] = {
                'parent': (
                    None if self.position.parent is None
                    else str(self.position.parent)),
                'ordinal': self.position.ordinal}
        if self.provision_text is not None:
            item['provision_text'] = dict(sorted(self.provision_text.items()))
        return item

    def provision_content(self, language):
        """Text of the amending provision in one language"""
        if self.provision_text is not None:
            return self.provision_text.get(language, '')
        if self.new_text is not None:
            return self.new_text.get(language, '')
        return ''


@dataclasses.dataclass(frozen=True)
class Instrument:
    """Descriptor of the amending norm"""

    jurisdiction: str
    authority: str
    doctype: str
    date: datetime.date
    id: str
    title: str = ''
    actors: Tuple[str, ...] = ()
    nature: str = 'Amendment'
    form: str = dataclasses.field(
        default_factory=lambda: lexversion.DEFAULT_FORM)
    text: Optional[PMap] = None

    def __post_init__(self):
        object.__setattr__(self, 'actors', tuple(self.actors))

    @property
    def urn(self):
        """Concept urn of the instrument"""
        return lexversion.Urn(
            self.jurisdiction,
            self.authority,
            self.doctype,
            self.date,
            self.id)

    @classmethod
    def from_dict(cls, item):
        if not isinstance(item, dict):
            raise lexversion.InvalidScript('instrument must be a mapping')
        fields = {
            'jurisdiction': str(_required(item, 'jurisdiction')),
            'authority': str(_required(item, 'authority')),
            'doctype': str(_required(item, 'doctype')),
            'date': _date(_required(item, 'date'), 'instrument.date'),
            'id': str(_required(item, 'id')),
            'title': str(item.get('title') or ''),
            'actors': _actors(item.get('actors')),
            'nature': str(item.get('nature') or 'Amendment'),
            'text': _texts(item.get('text'))}
        if item.get('form'):
            fields['form'] = str(item['form'])
        instrument = cls(**fields)
        try:
            instrument.urn
        except lexversion.MalformedUrn as error:
            raise lexversion.InvalidScript(f'instrument: {error}')
        return instrument

    def to_dict(self):
        item = {
            'jurisdiction': self.jurisdiction,
            'authority': self.authority,
            'doctype': self.doctype,
            'date': self.date.isoformat(),
            'id': self.id,
            'title': self.title,
            'actors': list(self.actors),
            'nature': self.nature,
            'form': self.form}
        if self.text is not None:
            item['text'] = dict(sorted(self.text.items()))
        return item


@dataclasses.dataclass(frozen=True)
class AmendmentScript:
    """Structured counterpart of an amending act"""

    instrument: Instrument
    effective_date: datetime.date
    instructions: Tuple[Instruction, ...]
    concept: Optional['lexversion.Urn'] = None

    def __post_init__(self):
        object.__setattr__(self, 'instructions', tuple(self.instructions))
        if not self.instructions:
            raise lexversion.InvalidScript('script has no instructions')
        if self.effective_date < self.instrument.date:
            raise lexversion.InvalidScript(
                f'effective date {self.effective_date} precedes instrument '
                f'date {self.instrument.date}')
        for name in ('target', 'provision_path'):
            seen = set()
            for instruction in self.instructions:
                value = getattr(instruction, name)
                if value in seen:
                    raise lexversion.InvalidScript(
                        f'{name} {value} appears in more than one instruction')
                seen.add(value)

    @classmethod
    def from_dict(cls, item):
        """Build a script from its file representation"""
        if not isinstance(item, dict):
            raise lexversion.InvalidScript('script must be a mapping')
        instructions = item.get('instructions') or []
        if not isinstance(instructions, list):
            raise lexversion.InvalidScript('instructions must be a list')
        return cls(
            instrument=Instrument.from_dict(_required(item, 'instrument')),
            effective_date=_date(
                _required(item, 'effective_date'), 'effective_date'),
            instructions=tuple(
                Instruction.from_dict(instruction)
                for instruction in instructions),
            concept=_urn(item.get('concept')))

    def to_dict(self):
        item = {}
        if self.concept is not None:
            item['concept'] = str(self.concept)
        item['instrument'] = self.instrument.to_dict()
        item['effective_date'] = self.effective_date.isoformat()
        item['instructions'] = [
            instruction.to_dict() for instruction in self.instructions]
        return item


###############################################################################
# Norm documents
###############################################################################


@dataclasses.dataclass(frozen=True)
class ComponentSpec:
    """A component of a norm at enactment"""

    path: 'lexversion.ComponentPath'
    text: Optional[PMap] = None
    children: Tuple['ComponentSpec', ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'children', tuple(self.children))
        for child in self.children:
            if not child.path.is_within(self.path):
                raise lexversion.InvalidScript(
                    f'{child.path} does not lie within {self.path}')

    @classmethod
    def from_dict(cls, item):
        if not isinstance(item, dict):
            raise lexversion.InvalidScript('component must be a mapping')
        children = item.get('children') or []
        if not isinstance(children, list):
            raise lexversion.InvalidScript('children must be a list')
        return cls(
            path=_path(_required(item, 'path')),
            text=_texts(item.get('text')),
            children=tuple(cls.from_dict(child) for child in children))

    def to_dict(self):
        item = {'path': str(self.path)}
        if self.text is not None:
            item['text'] = dict(sorted(self.text.items()))
        if self.children:
            item['children'] = [child.to_dict() for child in self.children]
        return item


@dataclasses.dataclass(frozen=True)
class NormDocument:
    """Input of bootstrap_norm: a norm as enacted"""

    concept: 'lexversion.Urn'
    enacted: datetime.date
    components: Tuple[ComponentSpec, ...]
    title: str = ''
    nature: str = dataclasses.field(
        default_factory=lambda: lexversion.DEFAULT_CREATION_NATURE)
    actors: Tuple[str, ...] = ()
    form: str = dataclasses.field(
        default_factory=lambda: lexversion.DEFAULT_FORM)

    def __post_init__(self):
        object.__setattr__(self, 'components', tuple(self.components))
        object.__setattr__(self, 'actors', tuple(self.actors))

    @classmethod
    def from_dict(cls, item):
        """Build a norm document from its file representation"""
        if not isinstance(item, dict):
            raise lexversion.InvalidScript('norm document must be a mapping')
        components = item.get('components') or []
        if not isinstance(components, list):
            raise lexversion.InvalidScript('components must be a list')
        fields = {
            'concept': _urn(_required(item, 'concept')),
            'enacted': _date(_required(item, 'enacted'), 'enacted'),
            'components': tuple(
                ComponentSpec.from_dict(component)
                for component in components),
            'title': str(item.get('title') or ''),
            'actors': _actors(item.get('actors'))}
        if item.get('nature'):
            fields['nature'] = str(item['nature'])
        if item.get('form'):
            fields['form'] = str(item['form'])
        return cls(**fields)

    def to_dict(self):
        return {
            'concept': str(self.concept),
            'enacted': self.enacted.isoformat(),
            'title': self.title,
            'nature': self.nature,
            'actors': list(self.actors),
            'form': self.form,
            'components': [
                component.to_dict() for component in self.components]}


###############################################################################
# Utilities
###############################################################################


def _actors(value):
    if value is None:
        return ()
    if not isinstance(value, list):
        raise lexversion.InvalidScript('actors must be a list')
    return tuple(str(actor) for actor in value)


def _date(value, name):
    try:
        return lexversion.identifiers.parse_date(value)
    except ValueError as error:
        raise lexversion.InvalidScript(f'{name}: {error}')


def _ordinal(value):
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise lexversion.InvalidScript(
            f'ordinal must be a positive integer, not {value!r}')
    return value


def _path(value):
    try:
        return lexversion.parse_path(str(value))
    except lexversion.MalformedUrn as error:
        raise lexversion.InvalidScript(str(error))


def _required(item, key):
    if not isinstance(item, dict) or item.get(key) is None:
        raise lexversion.InvalidScript(f'missing required key {key!r}')
    return item[key]


def _texts(value):
    """Language -> verbatim text"""
    if value is None:
        return None
    if not isinstance(value, dict):
        raise lexversion.InvalidScript('text must map languages to text')
    for language, text in value.items():
        if not isinstance(language, str) or not isinstance(text, str):
            raise lexversion.InvalidScript(
                f'text for {language!r} must be a string')
        if not lexversion.identifiers.LANGUAGE.fullmatch(language):
            raise lexversion.InvalidScript(f'invalid language {language!r}')
    return pmap(value)


def _urn(value):
    if value is None:
        return None
    try:
        return lexversion.parse_urn(str(value))
    except lexversion.MalformedUrn as error:
        raise lexversion.InvalidScript(str(error))
