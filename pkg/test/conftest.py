import datetime

import pytest
from pyrsistent import pmap

import lexversion


###############################################################################
# Constants
###############################################################################


CONCEPT = 'urn:lex:br:federal:constituicao:1988-10-05;1988'

EC26_INSTRUCTION = (
    'urn:lex:br:federal:emenda.constitucional:2000-02-14;26@2000-02-14'
    '!art1_cpt_alt1_art6')


###############################################################################
# Pytest fixtures
###############################################################################


@pytest.fixture(scope='session')
def documents():
    """The bundled constitution and its amendment scripts"""
    return lexversion.load.fixture()


@pytest.fixture(scope='session')
def payloads(documents):
    """Log payloads of the bundled constitution"""
    norm, scripts = documents
    bootstrap = lexversion.store.EntryKind.BOOTSTRAP
    amendment = lexversion.store.EntryKind.AMENDMENT
    return [(bootstrap, lexversion.store.to_payload(bootstrap, norm))] + [
        (amendment, lexversion.store.to_payload(amendment, script))
        for script in scripts]


@pytest.fixture(scope='session')
def constitution(payloads):
    """The bundled constitution after both amendments"""
    return lexversion.store.replay(
        lexversion.data.synthetic.entries_from(payloads), cache=False)


@pytest.fixture(scope='session')
def enacted(documents):
    """The bundled constitution as promulgated"""
    norm, _ = documents
    return lexversion.bootstrap_norm(
        lexversion.TemporalGraph(),
        norm.concept,
        norm.enacted,
        norm.components,
        nature=norm.nature,
        actors=norm.actors)


@pytest.fixture
def log(tmp_path, payloads):
    """An event log holding the bundled constitution"""
    path = lexversion.store.create(tmp_path / 'events.jsonl')
    for kind, payload in payloads:
        lexversion.store.append(path, kind, payload)
    return path


@pytest.fixture(autouse=True)
def cache_dir(tmp_path, monkeypatch):
    """Keep snapshots out of the repository"""
    monkeypatch.setattr(lexversion, 'CACHE_DIR', tmp_path / 'cache')
    monkeypatch.setattr(lexversion, 'EVAL_DIR', tmp_path / 'eval')


###############################################################################
# Utilities
###############################################################################


def norm(components, concept='urn:lex:br:federal:lei:2010-05-01;7'):
    """A small norm enacted on its base date

    Arguments
        components
            Path -> text in Portuguese, top-level paths only
    """
    concept = lexversion.parse_urn(concept)
    return lexversion.bootstrap_norm(
        lexversion.TemporalGraph(),
        concept,
        concept.base_date,
        [
            lexversion.events.ComponentSpec(
                lexversion.parse_path(path), pmap({'pt': text}))
            for path, text in components.items()],
        actors=('Congresso Nacional',))


def script(
    instructions,
    effective,
    instrument_id='1',
    instrument_date=None
):
    """An amendment script by an ordinary law"""
    effective = lexversion.identifiers.parse_date(effective)
    return lexversion.AmendmentScript.from_dict({
        'instrument': {
            'jurisdiction': 'br',
            'authority': 'federal',
            'doctype': 'lei',
            'date': (instrument_date or effective).isoformat(),
            'id': instrument_id,
            'actors': ['Congresso Nacional']},
        'effective_date': effective.isoformat(),
        'instructions': [
            {'provision_path': f'art{index}', **instruction}
            for index, instruction in enumerate(instructions, 1)]})


def date(text):
    return datetime.date.fromisoformat(text)
