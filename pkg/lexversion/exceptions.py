###############################################################################
# Base error
###############################################################################


class LexversionError(Exception):
    """Base class of every domain error raised by lexversion"""


###############################################################################
# Identifier errors
###############################################################################


class MalformedUrn(LexversionError):

    def __init__(self, text, position, reason):
        self.text = text
        self.position = position
        self.reason = reason
        where = '' if position is None else f' at position {position}'
        super().__init__(f'malformed urn {text!r}{where}: {reason}')


###############################################################################
# Graph errors
###############################################################################


class DuplicateUrn(LexversionError):

    def __init__(self, urn):
        self.urn = urn
        super().__init__(f'duplicate urn {urn}')


class UnknownEndpoint(LexversionError):

    def __init__(self, endpoint):
        self.endpoint = endpoint
        super().__init__(f'unknown edge endpoint {endpoint}')


class IllegalEdgeKind(LexversionError):

    def __init__(self, from_kind, kind, to_kind):
        self.from_kind = from_kind
        self.kind = kind
        self.to_kind = to_kind
        super().__init__(
            f'illegal edge {kind} from {from_kind} to {to_kind}')


class InvalidNode(LexversionError):

    def __init__(self, urn, reason):
        self.urn = urn
        self.reason = reason
        super().__init__(f'invalid node {urn}: {reason}')


class InvalidEdge(LexversionError):

    def __init__(self, source, kind, target, reason):
        self.source = source
        self.kind = kind
        self.target = target
        self.reason = reason
        super().__init__(
            f'invalid {kind} edge from {source} to {target}: {reason}')


###############################################################################
# Amendment errors
###############################################################################


class InvalidScript(LexversionError):

    def __init__(self, reason):
        self.reason = reason
        super().__init__(f'invalid script: {reason}')


class UnknownTarget(LexversionError):

    def __init__(self, path, date, reason='no component in force'):
        self.path = path
        self.date = date
        self.reason = reason
        super().__init__(f'unknown target {path} on {date}: {reason}')


class EffectiveDateNotAfterCurrent(LexversionError):

    def __init__(self, concept, effective_date, current_start):
        self.concept = concept
        self.effective_date = effective_date
        self.current_start = current_start
        super().__init__(
            f'effective date {effective_date} of amendment to {concept} is '
            f'not after the start {current_start} of its current version')


class DuplicateComponent(LexversionError):

    def __init__(self, path, parent, ordinal, reason):
        self.path = path
        self.parent = parent
        self.ordinal = ordinal
        self.reason = reason
        super().__init__(
            f'cannot add component {path} under {parent or "<root>"} '
            f'at ordinal {ordinal}: {reason}')


class LanguageMismatch(LexversionError):

    def __init__(self, path, languages, allowed):
        self.path = path
        self.languages = sorted(languages)
        self.allowed = sorted(allowed)
        super().__init__(
            f'languages {", ".join(self.languages)} of {path} are not among '
            f'the available languages {", ".join(self.allowed) or "<none>"}')


class EmptyComponentTree(LexversionError):

    def __init__(self, concept):
        self.concept = concept
        super().__init__(f'norm {concept} has no components')


###############################################################################
# Query errors
###############################################################################


class UnknownConcept(LexversionError):

    def __init__(self, urn):
        self.urn = urn
        super().__init__(f'unknown concept {urn}')


class UnknownVersion(LexversionError):

    def __init__(self, urn):
        self.urn = urn
        super().__init__(f'unknown version {urn}')


class NotYetEnacted(LexversionError):

    def __init__(self, urn, date, enacted):
        self.urn = urn
        self.date = date
        self.enacted = enacted
        super().__init__(
            f'{urn} was not enacted on {date} (first version {enacted})')


class MissingLanguage(LexversionError):

    def __init__(self, path, language, date):
        self.path = path
        self.language = language
        self.date = date
        super().__init__(
            f'no {language} text for {path} in force on {date}')


class InvalidDateRange(LexversionError):

    def __init__(self, start, end):
        self.start = start
        self.end = end
        super().__init__(f'date {start} is not before {end}')


###############################################################################
# Storage errors
###############################################################################


class LogFormatError(LexversionError):

    def __init__(self, path, line, reason):
        self.path = path
        self.line = line
        self.reason = reason
        super().__init__(f'{path}:{line}: {reason}')


class ChecksumMismatch(LexversionError):

    def __init__(self, seq, expected, actual):
        self.seq = seq
        self.expected = expected
        self.actual = actual
        super().__init__(
            f'checksum mismatch in log entry {seq}: '
            f'recorded {expected}, computed {actual}')


class OutOfOrderSeq(LexversionError):

    def __init__(self, seq, expected):
        self.seq = seq
        self.expected = expected
        super().__init__(f'log entry {seq} found where {expected} expected')


class ReplayFailure(LexversionError):

    def __init__(self, seq, error):
        self.seq = seq
        self.error = error
        super().__init__(f'replay failed at log entry {seq}: {error}')


class InvalidGraph(LexversionError):

    def __init__(self, violations):
        self.violations = list(violations)
        summary = '; '.join(str(v) for v in self.violations[:3])
        super().__init__(
            f'graph has {len(self.violations)} violations: {summary}')


class TurtleParseError(LexversionError):

    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f'turtle parse error at line {line}: {reason}')


class UnknownVocabularyTerm(LexversionError):

    def __init__(self, term):
        self.term = term
        super().__init__(f'unknown vocabulary term {term}')
