"""LexML-style URNs

Grammar::

    urn:lex:J:A:D:YYYY-MM-DD;ID[@YYYY-MM-DD][~FORM;LANG][!PATH]
    PATH = SEG(_SEG)*
    SEG  = [a-z]+[0-9]*

Input is lowercase only and carries no percent-encoding.
"""
import dataclasses
import datetime
import re
from typing import Optional, Tuple, Union

import lexversion


###############################################################################
# Constants
###############################################################################


# Every urn starts with this namespace prefix
PREFIX = 'urn:lex:'

# Suffix markers in their mandatory order
MARKERS = '@~!'

# Lexical rules
TOKEN = re.compile(r'[a-z0-9]+')
DOTTED = re.compile(r'[a-z0-9]+(?:\.[a-z0-9]+)*')
DATE = re.compile(r'[0-9]{4}-[0-9]{2}-[0-9]{2}')
LANGUAGE = re.compile(r'[a-z]{2,3}(?:-[a-z0-9]{2,8})*')
SEGMENT = re.compile(r'([a-z]+)([1-9][0-9]*)?')
PATH = re.compile(
    r'[a-z]+(?:[1-9][0-9]*)?(?:_[a-z]+(?:[1-9][0-9]*)?)*')


###############################################################################
# Component paths
###############################################################################


@dataclasses.dataclass(frozen=True)
class PathSegment:
    """One step of a component path, e.g. art6 or cpt"""

    kind: str
    index: Optional[int] = None

    def __post_init__(self):
        if not isinstance(self.kind, str) or not re.fullmatch(
            r'[a-z]+', self.kind
        ):
            raise ValueError(f'invalid segment kind {self.kind!r}')
        if self.index is not None and (
            isinstance(self.index, bool) or
            not isinstance(self.index, int) or
            self.index < 1
        ):
            raise ValueError(f'invalid segment index {self.index!r}')

    def __str__(self):
        return self.kind if self.index is None else f'{self.kind}{self.index}'


@dataclasses.dataclass(frozen=True)
class ComponentPath:
    """Position of a component inside a norm, e.g. art6_cpt"""

    segments: Tuple[PathSegment, ...]

    def __post_init__(self):
        object.__setattr__(self, 'segments', tuple(self.segments))
        if not self.segments:
            raise ValueError('component path must not be empty')
        for segment in self.segments:
            if not isinstance(segment, PathSegment):
                raise ValueError(f'invalid path segment {segment!r}')

    def __str__(self):
        return '_'.join(str(segment) for segment in self.segments)

    def __len__(self):
        return len(self.segments)

    @property
    def parent(self) -> Optional['ComponentPath']:
        """The enclosing path, or None for a top-level component"""
        if len(self.segments) == 1:
            return None
        return ComponentPath(self.segments[:-1])

    def is_within(self, other: 'ComponentPath') -> bool:
        """Whether this path lies strictly below other"""
        return (
            len(self.segments) > len(other.segments) and
            self.segments[:len(other.segments)] == other.segments)


def parse_path(text: str) -> ComponentPath:
    """Parse the canonical '_'-joined form of a component path"""
    if isinstance(text, ComponentPath):
        return text
    if not isinstance(text, str) or not text:
        raise lexversion.MalformedUrn(text, 0, 'empty component path')
    match = PATH.match(text)
    if match is None:
        raise lexversion.MalformedUrn(text, 0, 'expected component path')
    if match.end() != len(text):
        raise lexversion.MalformedUrn(
            text,
            match.end(),
            f'unexpected character {text[match.end()]!r} in component path')
    return _segments(text)


###############################################################################
# Urns
###############################################################################


@dataclasses.dataclass(frozen=True)
class Urn:
    """Structured LexML urn

    Concept urns carry only the base; version urns add version_date;
    expression urns add form and language; component urns add a path.
    """

    jurisdiction: str
    authority: str
    doctype: str
    base_date: datetime.date
    base_id: str
    version_date: Optional[datetime.date] = None
    form: Optional[str] = None
    language: Optional[str] = None
    component_path: Optional[ComponentPath] = None

    def __post_init__(self):
        for name, pattern in (
            ('jurisdiction', TOKEN),
            ('authority', TOKEN),
            ('doctype', DOTTED),
            ('base_id', TOKEN)
        ):
            value = getattr(self, name)
            if not isinstance(value, str) or not pattern.fullmatch(value):
                raise lexversion.MalformedUrn(
                    repr(self), None, f'invalid {name} {value!r}')
        for name in ('base_date', 'version_date'):
            value = getattr(self, name)
            if value is None and name == 'version_date':
                continue
            if (
                not isinstance(value, datetime.date) or
                isinstance(value, datetime.datetime)
            ):
                raise lexversion.MalformedUrn(
                    repr(self), None, f'invalid {name} {value!r}')
        if (self.form is None) != (self.language is None):
            raise lexversion.MalformedUrn(
                repr(self), None, 'form and language must appear together')
        if self.form is not None and not DOTTED.fullmatch(self.form):
            raise lexversion.MalformedUrn(
                repr(self), None, f'invalid form {self.form!r}')
        if self.language is not None and not LANGUAGE.fullmatch(
            self.language
        ):
            raise lexversion.MalformedUrn(
                repr(self), None, f'invalid language {self.language!r}')
        if (
            self.version_date is not None and
            self.version_date < self.base_date
        ):
            raise lexversion.MalformedUrn(
                repr(self),
                None,
                f'version date {self.version_date} precedes '
                f'base date {self.base_date}')
        if self.component_path is not None and not isinstance(
            self.component_path, ComponentPath
        ):
            raise lexversion.MalformedUrn(
                repr(self),
                None,
                f'invalid component path {self.component_path!r}')

    def __str__(self):
        return format_urn(self)


def parse_urn(text: str) -> Urn:
    """Parse a urn string

    Arguments
        text
            The urn, e.g. urn:lex:br:federal:constituicao:1988-10-05;1988

    Returns
        The structured urn

    Raises
        MalformedUrn
            With the offending position and reason
    """
    if not isinstance(text, str) or not text.startswith(PREFIX):
        raise lexversion.MalformedUrn(text, 0, "missing 'urn:lex:' prefix")
    scanner = _Scanner(text, len(PREFIX))

    # Base
    jurisdiction = scanner.match(TOKEN, 'jurisdiction')
    scanner.literal(':')
    authority = scanner.match(TOKEN, 'authority')
    scanner.literal(':')
    doctype = scanner.match(DOTTED, 'document type')
    scanner.literal(':')
    base_date = scanner.date('base date')
    scanner.literal(';')
    base_id = scanner.match(TOKEN, 'identifier')

    # Optional suffixes, each at most once and in marker order
    fields = {}
    rank = 0
    while not scanner.done():
        position, marker = scanner.position, scanner.peek()
        if marker not in MARKERS:
            raise lexversion.MalformedUrn(
                text, position, f'unexpected character {marker!r}')
        if MARKERS.index(marker) + 1 <= rank:
            raise lexversion.MalformedUrn(
                text,
                position,
                f'segment {marker!r} out of order '
                "(base, then '@', then '~', then '!')")
        rank = MARKERS.index(marker) + 1
        scanner.advance()

        if marker == '@':
            fields['version_date'] = scanner.date('version date')
            if fields['version_date'] < base_date:
                raise lexversion.MalformedUrn(
                    text, position, 'version date precedes base date')

        elif marker == '~':
            fields['form'] = scanner.match(DOTTED, 'form')
            if scanner.peek() != ';':
                raise lexversion.MalformedUrn(
                    text, scanner.position, "form without ';language'")
            scanner.advance()
            fields['language'] = scanner.match(LANGUAGE, 'language')

        else:
            fields['component_path'] = _segments(
                scanner.match(PATH, 'component path'))

    return Urn(
        jurisdiction=jurisdiction,
        authority=authority,
        doctype=doctype,
        base_date=base_date,
        base_id=base_id,
        **fields)


def format_urn(urn: Urn) -> str:
    """Canonical string form of a urn"""
    text = (
        f'{PREFIX}{urn.jurisdiction}:{urn.authority}:{urn.doctype}:'
        f'{urn.base_date.isoformat()};{urn.base_id}')
    if urn.version_date is not None:
        text += f'@{urn.version_date.isoformat()}'
    if urn.language is not None:
        text += f'~{urn.form};{urn.language}'
    if urn.component_path is not None:
        text += f'!{urn.component_path}'
    return text


def parse_date(value: Union[str, datetime.date]) -> datetime.date:
    """Parse a strict ISO YYYY-MM-DD calendar date"""
    if isinstance(value, datetime.datetime):
        raise ValueError(f'expected a date, not a timestamp: {value}')
    if isinstance(value, datetime.date):
        return value
    if not isinstance(value, str) or not DATE.fullmatch(value):
        raise ValueError(f'invalid date {value!r} (expected YYYY-MM-DD)')
    return datetime.date.fromisoformat(value)


###############################################################################
# Navigation between identifier levels
###############################################################################


def with_version(urn: Urn, date: datetime.date) -> Urn:
    """Urn of the version of urn dated date"""
    if date < urn.base_date:
        raise lexversion.MalformedUrn(
            str(urn),
            None,
            f'version date {date} precedes base date {urn.base_date}')
    return dataclasses.replace(urn, version_date=date)


def with_language(urn: Urn, form: str, lang: str) -> Urn:
    """Urn of the expression of urn in the given form and language"""
    return dataclasses.replace(urn, form=form, language=lang)


def with_component(
    urn: Urn,
    path: Union[ComponentPath, str]
) -> Urn:
    """Urn of the component of urn at path"""
    return dataclasses.replace(urn, component_path=parse_path(path))


def strip_to_concept(urn: Urn) -> Urn:
    """Urn of the norm concept that urn belongs to"""
    return dataclasses.replace(
        urn,
        version_date=None,
        form=None,
        language=None,
        component_path=None)


def strip_to_component_concept(urn: Urn) -> Urn:
    """Urn of the concept (norm or component) that urn belongs to"""
    return dataclasses.replace(
        urn,
        version_date=None,
        form=None,
        language=None)


def strip_language(urn: Urn) -> Urn:
    """Urn of the work that the expression urn realises"""
    return dataclasses.replace(urn, form=None, language=None)


###############################################################################
# Utilities
###############################################################################


class _Scanner:
    """Left-to-right cursor over a urn string"""

    def __init__(self, text, position):
        self.text = text
        self.position = position

    def advance(self):
        self.position += 1

    def date(self, what):
        position = self.position
        value = self.match(DATE, what)
        try:
            return datetime.date.fromisoformat(value)
        except ValueError:
            raise lexversion.MalformedUrn(
                self.text, position, f'invalid {what} {value!r}')

    def done(self):
        return self.position >= len(self.text)

    def literal(self, character):
        if self.peek() != character:
            found = 'end of input' if self.done() else repr(self.peek())
            raise lexversion.MalformedUrn(
                self.text,
                self.position,
                f'expected {character!r}, found {found}')
        self.advance()

    def match(self, pattern, what):
        match = pattern.match(self.text, self.position)
        if match is None:
            reason = (
                f'empty {what}' if self.peek() in ':;@~!_' or self.done()
                else f'expected {what}')
            raise lexversion.MalformedUrn(self.text, self.position, reason)
        self.position = match.end()
        return match.group()

    def peek(self):
        return self.text[self.position] if not self.done() else ''


def _segments(text):
    """Split a validated path string into a ComponentPath"""
    segments = []
    for piece in text.split('_'):
        kind, index = SEGMENT.fullmatch(piece).groups()
        segments.append(
            PathSegment(kind, None if index is None else int(index)))
    return ComponentPath(tuple(segments))
