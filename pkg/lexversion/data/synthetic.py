"""Random but reproducible amendment histories"""
import datetime
import random

import lexversion


###############################################################################
# Constants
###############################################################################


# Enactment date of every synthetic norm
ENACTED = datetime.date(2001, 1, 1)

# Vocabulary of synthetic provisions
WORDS = [
    'a', 'lei', 'dispor', 'sobre', 'o', 'regime', 'dos', 'servidores',
    'municípios', 'estados', 'prazo', 'de', 'trinta', 'dias', 'contado',
    'da', 'publicação', 'vedada', 'competência', 'união', 'fiscalização',
    'orçamento', 'receita', 'tributo', 'garantido', 'direito', 'ao',
    'trabalho', 'na', 'forma', 'regulamento', 'ressalvado', 'disposto']


###############################################################################
# Generate histories
###############################################################################


def history(seed, components=None, amendments=None, languages=None):
    """Generate a bootstrap and a sequence of valid amendments

    Arguments
        seed
            Seed of the generator; equal seeds give equal histories
        components
            Number of components at enactment
        amendments
            Number of amendments
        languages
            Languages of every text

    Returns
        (EntryKind, payload) pairs in log order
    """
    rng = random.Random(seed)
    components = components or lexversion.SYNTHETIC_COMPONENTS
    amendments = lexversion.MIN_AMENDMENTS if amendments is None \
        else amendments
    languages = sorted(languages or lexversion.SYNTHETIC_LANGUAGES)
    concept = f'urn:lex:br:federal:lei:{ENACTED.isoformat()};{abs(seed)}'
    state = _State()

    # Enacted norm
    specs, article = [], 0
    while len(state.status) < components:
        article += 1
        path = f'art{article}'
        state.add(path, None)
        spec = {
            'path': path,
            'text': {language: f'Art. {article}' for language in languages},
            'children': []}
        for child in ['cpt'] + [
            f'par{index}' for index in range(1, rng.randint(0, 2) + 1)
        ]:
            if len(state.status) >= components:
                break
            state.add(f'{path}_{child}', path)
            spec['children'].append({
                'path': f'{path}_{child}',
                'text': _texts(rng, languages)})
        specs.append(spec)
    norm = {
        'concept': concept,
        'enacted': ENACTED.isoformat(),
        'title': f'Lei sintética {abs(seed)}',
        'nature': lexversion.DEFAULT_CREATION_NATURE,
        'actors': ['Congresso Nacional'],
        'form': lexversion.DEFAULT_FORM,
        'components': specs}
    entries = [(lexversion.store.EntryKind.BOOTSTRAP, norm)]

    # Amendments on strictly increasing dates
    date = ENACTED
    for index in range(1, amendments + 1):
        date += datetime.timedelta(days=rng.randint(1, 400))
        script = _amendment(rng, state, languages, seed, index, date)
        entries.append((
            lexversion.store.EntryKind.AMENDMENT,
            {'concept': concept, 'script': script}))

    return entries


def entries(seed, components=None, amendments=None, languages=None):
    """Generate a history as verified log entries"""
    return entries_from(history(seed, components, amendments, languages))


def entries_from(payloads):
    """Log entries of (EntryKind, payload) pairs, dated by their content"""
    result = []
    for seq, (kind, payload) in enumerate(payloads, 1):
        date = payload.get('enacted') or payload['script']['effective_date']
        result.append(lexversion.store.LogEntry(
            seq=seq,
            kind=kind,
            payload=payload,
            recorded_at=f'{date}T00:00:00+00:00',
            checksum=lexversion.store.checksum(payload)))
    return result


def query_dates(rng, payloads, count):
    """Random dates from enactment to a year after the last amendment"""
    dates = [
        lexversion.identifiers.parse_date(
            payload.get('enacted') or payload['script']['effective_date'])
        for _, payload in payloads]
    start, end = dates[0], dates[-1] + datetime.timedelta(days=365)
    span = (end - start).days

    # Always include every change date
    result = sorted(dates)
    while len(result) < count:
        result.append(start + datetime.timedelta(days=rng.randint(0, span)))
    return result[:count]


###############################################################################
# Utilities
###############################################################################


class _State:
    """What the generator knows about the norm it is amending"""

    def __init__(self):
        self.status = {}
        self.parent = {}
        self.ordinals = {None: 0}
        self.articles = 0
        self.paragraphs = {}

    def add(self, path, parent, ordinal=None):
        self.status[path] = 'InForce'
        self.parent[path] = parent
        self.ordinals[path] = 0
        self.ordinals[parent] = ordinal or self.ordinals[parent] + 1
        if parent is None:
            self.articles += 1
            self.paragraphs[path] = 0
        elif '_par' in path:
            self.paragraphs[parent] += 1


def _amendment(rng, state, languages, seed, index, date):
    """One amendment script in its file representation"""
    weights = lexversion.INSTRUCTION_WEIGHTS
    operations, touched, instructions = list(weights), set(), []
    for number in range(1, rng.randint(1, lexversion.MAX_INSTRUCTIONS) + 1):
        operation = rng.choices(
            operations, weights=[weights[op] for op in operations])[0]
        in_force = sorted(
            path for path, status in state.status.items()
            if status == 'InForce' and path not in touched)
        if not in_force:
            operation = 'AddComponent'
        instruction = {'op': operation, 'provision_path': f'art{number}'}

        if operation == 'AddComponent':
            parents = [None] + [
                path for path in in_force if state.parent[path] is None]
            parent = rng.choice(parents)
            if parent is None:
                target = f'art{state.articles + 1}'
            else:
                target = f'{parent}_par{state.paragraphs[parent] + 1}'
            ordinal = None
            if rng.random() < .3:
                ordinal = state.ordinals[parent] + rng.randint(1, 3)
                instruction['position'] = {
                    'parent': parent,
                    'ordinal': ordinal}
            state.add(target, parent, ordinal)
            instruction['new_text'] = _texts(rng, languages)

        else:
            target = rng.choice(in_force)
            if operation == 'Repeal':
                state.status[target] = 'Repealed'
            else:
                instruction['new_text'] = _texts(rng, languages)

        instruction['target'] = target
        touched.add(target)
        instructions.append(instruction)

    return {
        'instrument': {
            'jurisdiction': 'br',
            'authority': 'federal',
            'doctype': 'lei',
            'date': (
                date - datetime.timedelta(days=rng.randint(0, 30))
            ).isoformat(),
            'id': f'{abs(seed)}n{index}',
            'title': f'Lei de alteração {index}',
            'actors': ['Congresso Nacional'],
            'nature': 'Amendment'},
        'effective_date': date.isoformat(),
        'instructions': instructions}


def _sentence(rng):
    words = [rng.choice(WORDS) for _ in range(rng.randint(4, 16))]
    text = ' '.join(words).capitalize() + '.'

    # Occasional control characters exercise escaping
    if rng.random() < .05:
        text += '\n' + _sentence(rng)
    if rng.random() < .02:
        text = text.replace(' ', '\t', 1)
    return text


def _texts(rng, languages):
    """The same provision in every language"""
    text = _sentence(rng)
    return {
        language: text if position == 0 else f'[{language}] {text}'
        for position, language in enumerate(languages)}
