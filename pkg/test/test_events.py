import datetime

import pytest
from pyrsistent import pmap

import lexversion
from lexversion.model import EdgeKind, EventLevel, Status, WorkKind

from conftest import CONCEPT, EC26_INSTRUCTION, date, norm, script


###############################################################################
# Test bootstrap
###############################################################################


def test_bootstrap_urns(enacted):
    assert f'{CONCEPT}@1988-10-05!art6_cpt' in enacted.works
    assert f'{CONCEPT}@1988-10-05~texto;pt!art6_cpt' in enacted.expressions
    assert enacted.works[CONCEPT].kind == WorkKind.NORM_CONCEPT
    assert enacted.works[f'{CONCEPT}!art6_cpt'].kind == \
        WorkKind.COMPONENT_CONCEPT


def test_bootstrap_single_component():
    g = norm({'art1': 'Esta lei entra em vigor na data de sua publicação.'})
    concepts = [w for w in g.works.values() if w.kind.is_concept]
    versions = [w for w in g.works.values() if w.kind.is_version]
    assert sorted(w.kind.value for w in concepts) == [
        'ComponentConcept', 'NormConcept']
    assert sorted(w.kind.value for w in versions) == [
        'ComponentTemporalVersion', 'TemporalVersion']
    clvs = [
        e for e in g.expressions.values()
        if e.urn.component_path is not None]
    assert len(clvs) == 1
    assert clvs[0].content == \
        'Esta lei entra em vigor na data de sua publicação.'
    assert len(g.events) == 1
    assert lexversion.validate(g) == []


def test_bootstrap_is_valid(enacted):
    assert lexversion.validate(enacted) == []


def test_bootstrap_event(enacted):
    event = enacted.events[f'{CONCEPT}@1988-10-05#event']
    assert event.level == EventLevel.MACRO
    assert event.nature == 'Promulgation'
    assert event.actors == ('Assembleia Nacional Constituinte',)
    assert event.time_span == datetime.date(1988, 10, 5)
    assert event.modified == ()
    assert len(event.created) == 10


def test_bootstrap_duplicate(enacted, documents):
    document, _ = documents
    with pytest.raises(lexversion.DuplicateUrn):
        lexversion.bootstrap_norm(
            enacted, document.concept, document.enacted, document.components)


def test_bootstrap_empty():
    with pytest.raises(lexversion.EmptyComponentTree):
        lexversion.bootstrap_norm(
            lexversion.TemporalGraph(),
            CONCEPT,
            datetime.date(1988, 10, 5),
            [])


def test_bootstrap_language_mismatch():
    components = [
        lexversion.events.ComponentSpec(
            lexversion.parse_path('art1'), pmap({'pt': 'a', 'en': 'a'})),
        lexversion.events.ComponentSpec(
            lexversion.parse_path('art2'), pmap({'pt': 'b'}))]
    with pytest.raises(lexversion.LanguageMismatch) as info:
        lexversion.bootstrap_norm(
            lexversion.TemporalGraph(),
            'urn:lex:br:federal:lei:2010-05-01;7',
            datetime.date(2010, 5, 1),
            components)
    assert info.value.path == 'art2'


###############################################################################
# Test amendment
###############################################################################


def test_ec1(constitution):
    tv1 = f'{CONCEPT}@1992-03-31'
    assert tv1 in constitution.works
    assert f'{CONCEPT}@1992-03-31~texto;pt' in constitution.expressions
    edge, = constitution.out(tv1, EdgeKind.DERIVATIVE_OF)
    assert edge.target == f'{CONCEPT}@1988-10-05'
    assert edge.qualifier == lexversion.TEMPORAL_SUCCESSION


def test_ec26(constitution):
    ctv1 = f'{CONCEPT}@2000-02-14!art6_cpt'
    assert f'{CONCEPT}@2000-02-14' in constitution.works
    assert ctv1 in constitution.works
    assert 'moradia' in constitution.expressions[
        f'{CONCEPT}@2000-02-14~texto;pt!art6_cpt'].content

    micro = constitution.events[f'{EC26_INSTRUCTION}#event']
    assert micro.level == EventLevel.MICRO
    assert [str(urn) for urn in micro.created] == [ctv1]
    assert [str(urn) for urn in micro.modified] == [
        f'{CONCEPT}@1988-10-05!art6_cpt']
    used, = constitution.out(micro.id, EdgeKind.USED)
    assert used.target == EC26_INSTRUCTION


def test_fixture_urns(constitution):
    for urn in (
        CONCEPT,
        f'{CONCEPT}!art6_cpt',
        f'{CONCEPT}@1988-10-05',
        f'{CONCEPT}@1988-10-05!art6_cpt',
        f'{CONCEPT}@1988-10-05~texto;pt',
        f'{CONCEPT}@1988-10-05~texto;pt!art6_cpt',
        f'{CONCEPT}@1992-03-31',
        f'{CONCEPT}@1992-03-31~texto;pt',
        f'{CONCEPT}@2000-02-14!art6_cpt',
        f'{CONCEPT}@2000-02-14~texto;pt!art6_cpt',
        EC26_INSTRUCTION
    ):
        assert urn in constitution, urn


def test_instrument(constitution):
    instrument = 'urn:lex:br:federal:emenda.constitucional:2000-02-14;26'
    assert constitution.works[instrument].kind == \
        WorkKind.AMENDMENT_INSTRUMENT
    provision = constitution.expressions[
        f'{instrument}@2000-02-14~texto;pt!art1_cpt_alt1_art6']
    assert provision.content.startswith('"Art. 6º')
    macro = constitution.events[f'{instrument}@2000-02-14#event']
    assert macro.children == (f'{EC26_INSTRUCTION}#event',)
    assert f'{instrument}@2000-02-14' in {str(urn) for urn in macro.created}
    assert [str(urn) for urn in macro.modified] == [f'{CONCEPT}@1992-03-31']


def test_report():
    g = norm({'art1': 'Texto original.', 'art2': 'Outro texto.'})
    g, report = lexversion.apply_amendment(
        g,
        'urn:lex:br:federal:lei:2010-05-01;7',
        script(
            [
                {'op': 'ReplaceText', 'target': 'art1',
                 'new_text': {'pt': 'Texto novo.'}},
                {'op': 'AddComponent', 'target': 'art3',
                 'new_text': {'pt': 'Artigo acrescentado.'}}],
            '2012-01-01'))
    assert str(report.new_version) == \
        'urn:lex:br:federal:lei:2010-05-01;7@2012-01-01'
    assert [str(urn) for urn in report.created] == [
        'urn:lex:br:federal:lei:2010-05-01;7@2012-01-01!art1',
        'urn:lex:br:federal:lei:2010-05-01;7@2012-01-01!art3']
    assert str(report.superseded[0]) == \
        'urn:lex:br:federal:lei:2010-05-01;7@2010-05-01!art1'
    assert report.superseded[1] is None
    assert len(report.micro_events) == 2
    assert lexversion.validate(g) == []


def test_unchanged_components_keep_their_version():
    g = norm({'art1': 'Um.', 'art2': 'Dois.'})
    g, _ = lexversion.apply_amendment(
        g,
        'urn:lex:br:federal:lei:2010-05-01;7',
        script(
            [{'op': 'ReplaceText', 'target': 'art1',
              'new_text': {'pt': 'Um, alterado.'}}],
            '2012-01-01'))
    versions = g.versions('urn:lex:br:federal:lei:2010-05-01;7!art2')
    assert list(versions) == [
        'urn:lex:br:federal:lei:2010-05-01;7@2010-05-01!art2']


def test_repeal():
    g = norm({'art1': 'Um.', 'art2': 'Dois.'})
    g, report = lexversion.apply_amendment(
        g,
        'urn:lex:br:federal:lei:2010-05-01;7',
        script([{'op': 'Repeal', 'target': 'art2'}], '2012-01-01'))
    repealed = g.works[str(report.created[0])]
    assert repealed.status == Status.REPEALED
    assert repealed.validity.end is None
    assert g.works[str(report.superseded[0])].status == Status.SUPERSEDED
    assert lexversion.validate(g) == []

    # Nothing can amend a repealed component
    with pytest.raises(lexversion.UnknownTarget):
        lexversion.apply_amendment(
            g,
            'urn:lex:br:federal:lei:2010-05-01;7',
            script(
                [{'op': 'ReplaceText', 'target': 'art2',
                  'new_text': {'pt': 'Volta.'}}],
                '2013-01-01',
                instrument_id='2'))


def test_add_component_position():
    concept = 'urn:lex:br:federal:lei:2010-05-01;7'
    g = norm({'art1': 'Um.', 'art2': 'Dois.'})
    g, _ = lexversion.apply_amendment(g, concept, script(
        [{'op': 'AddComponent', 'target': 'art1_par1',
          'new_text': {'pt': 'Parágrafo.'}}],
        '2012-01-01'))
    edge, = g.into(f'{concept}!art1_par1', EdgeKind.HAS_PART)
    assert edge.source == f'{concept}!art1'
    assert edge.ordinal == 1

    g, _ = lexversion.apply_amendment(g, concept, script(
        [{'op': 'AddComponent', 'target': 'art5',
          'position': {'parent': None, 'ordinal': 5},
          'new_text': {'pt': 'Cinco.'}}],
        '2013-01-01',
        instrument_id='2'))
    assert g.children(concept)[-1] == f'{concept}!art5'
    assert g.into(f'{concept}!art5', EdgeKind.HAS_PART)[0].ordinal == 5
    assert lexversion.validate(g) == []


@pytest.mark.parametrize('instruction,error', [
    ({'op': 'ReplaceText', 'target': 'art9', 'new_text': {'pt': 'x'}},
     lexversion.UnknownTarget),
    ({'op': 'Repeal', 'target': 'art1_cpt'}, lexversion.UnknownTarget),
    ({'op': 'AddComponent', 'target': 'art2', 'new_text': {'pt': 'x'}},
     lexversion.DuplicateComponent),
    ({'op': 'AddComponent', 'target': 'art3',
      'position': {'parent': None, 'ordinal': 1}, 'new_text': {'pt': 'x'}},
     lexversion.DuplicateComponent),
    ({'op': 'AddComponent', 'target': 'art9_par1', 'new_text': {'pt': 'x'}},
     lexversion.UnknownTarget),
    ({'op': 'ReplaceText', 'target': 'art1', 'new_text': {'en': 'x'}},
     lexversion.LanguageMismatch),
    ({'op': 'AddComponent', 'target': 'art3', 'new_text': {'en': 'x'}},
     lexversion.LanguageMismatch),
])
def test_amendment_errors(instruction, error):
    g = norm({'art1': 'Um.', 'art2': 'Dois.'})
    with pytest.raises(error):
        lexversion.apply_amendment(
            g,
            'urn:lex:br:federal:lei:2010-05-01;7',
            script([instruction], '2012-01-01'))


def test_effective_date_must_follow_current(constitution):
    _, scripts = lexversion.load.fixture()
    with pytest.raises(lexversion.EffectiveDateNotAfterCurrent) as info:
        lexversion.apply_amendment(constitution, CONCEPT, scripts[0])
    assert info.value.current_start == date('2000-02-14')


def test_effective_date_equal_to_current():
    g = norm({'art1': 'Um.'})
    with pytest.raises(lexversion.EffectiveDateNotAfterCurrent):
        lexversion.apply_amendment(
            g,
            'urn:lex:br:federal:lei:2010-05-01;7',
            script(
                [{'op': 'Repeal', 'target': 'art1'}],
                '2010-05-01'))


def test_instrument_reuse():
    concept = 'urn:lex:br:federal:lei:2010-05-01;7'
    g = norm({'art1': 'Um.', 'art2': 'Dois.'})
    g, _ = lexversion.apply_amendment(g, concept, script(
        [{'op': 'Repeal', 'target': 'art1'}],
        '2012-01-01'))
    with pytest.raises(lexversion.DuplicateUrn):
        lexversion.apply_amendment(g, concept, script(
            [{'op': 'Repeal', 'target': 'art2'}],
            '2013-01-01',
            instrument_date=date('2012-01-01')))


def test_unknown_concept():
    g = norm({'art1': 'Um.'})
    with pytest.raises(lexversion.UnknownConcept):
        lexversion.apply_amendment(
            g,
            'urn:lex:br:federal:lei:2010-05-01;8',
            script([{'op': 'Repeal', 'target': 'art1'}], '2012-01-01'))


def test_failed_amendment_leaves_graph_untouched():
    g = norm({'art1': 'Um.'})
    before = g
    with pytest.raises(lexversion.UnknownTarget):
        lexversion.apply_amendment(
            g,
            'urn:lex:br:federal:lei:2010-05-01;7',
            script(
                [
                    {'op': 'Repeal', 'target': 'art1'},
                    {'op': 'Repeal', 'target': 'art2'}],
                '2012-01-01'))
    assert g == before
    assert lexversion.validate(g) == []


###############################################################################
# Test scripts
###############################################################################


@pytest.mark.parametrize('item,reason', [
    ({'instructions': []}, 'no instructions'),
    ({'effective_date': '1999-01-01'}, 'precedes instrument date'),
    ({'instructions': [
        {'op': 'Repeal', 'target': 'art1', 'provision_path': 'art1'},
        {'op': 'Repeal', 'target': 'art1', 'provision_path': 'art2'}]},
     'more than one instruction'),
    ({'instructions': [
        {'op': 'ReplaceText', 'target': 'art1', 'provision_path': 'art1'}]},
     'requires new_text'),
    ({'instructions': [
        {'op': 'Repeal', 'target': 'art1', 'provision_path': 'art1',
         'new_text': {'pt': 'x'}}]},
     'neither new_text nor position'),
    ({'instructions': [
        {'op': 'Amend', 'target': 'art1', 'provision_path': 'art1'}]},
     'unknown instruction op'),
    ({'instructions': [
        {'op': 'AddComponent', 'target': 'art1_par1',
         'provision_path': 'art1', 'new_text': {'pt': 'x'},
         'position': {'parent': 'art2', 'ordinal': 1}}]},
     'does not lie within'),
    ({'instructions': [
        {'op': 'AddComponent', 'target': 'art3',
         'provision_path': 'art1', 'new_text': {'pt': 'x'},
         'position': {'parent': None, 'ordinal': 0}}]},
     'positive integer'),
    ({'instructions': [
        {'op': 'AddComponent', 'target': 'art3',
         'provision_path': 'art1', 'new_text': {'pt': 'x'},
         'position': 3}]},
     'not a mapping'),
    ({'instructions': [
        {'op': 'AddComponent', 'target': 'art3',
         'provision_path': 'art1', 'new_text': {'pt': 'x'},
         'position': [1]}]},
     'not a mapping'),
    ({'instructions': [3]}, 'instruction must be a mapping'),
    ({'instructions': [['Repeal', 'art1']]}, 'instruction must be a mapping'),
    ({'effective_date': '2000-02-30'}, 'effective_date'),
])
def test_invalid_scripts(item, reason):
    base = {
        'instrument': {
            'jurisdiction': 'br',
            'authority': 'federal',
            'doctype': 'lei',
            'date': '2000-01-01',
            'id': '1'},
        'effective_date': '2000-01-01',
        'instructions': [
            {'op': 'Repeal', 'target': 'art1', 'provision_path': 'art1'}]}
    with pytest.raises(lexversion.InvalidScript) as info:
        lexversion.AmendmentScript.from_dict({**base, **item})
    assert reason in info.value.reason


def test_script_round_trip(documents):
    _, scripts = documents
    for item in scripts:
        assert lexversion.AmendmentScript.from_dict(item.to_dict()) == item


###############################################################################
# Test generated histories
###############################################################################


@pytest.mark.parametrize('seed', range(1, 11))
def test_generated_histories_are_valid(seed):
    payloads = lexversion.data.synthetic.history(seed, amendments=30)
    g = lexversion.store.replay(
        lexversion.data.synthetic.entries_from(payloads), cache=False)
    assert lexversion.validate(g) == []

    # Micro event targets are exactly what changed
    concept = payloads[0][1]['concept']
    assert lexversion.evaluate.equivalence(g, concept) == []


def test_long_history_is_valid():
    g = lexversion.store.replay(
        lexversion.data.synthetic.entries(101, amendments=100), cache=False)
    assert lexversion.validate(g) == []
