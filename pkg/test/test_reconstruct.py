import datetime
import json
import random

import pytest
from pyrsistent import pmap

import lexversion
from lexversion.model import EdgeKind, Status
from lexversion.reconstruct import Change

from conftest import CONCEPT, EC26_INSTRUCTION, date, norm, script


###############################################################################
# Test version resolution
###############################################################################


@pytest.mark.parametrize('concept,at,expected', [
    (CONCEPT, '1990-01-01', f'{CONCEPT}@1988-10-05'),
    (CONCEPT, '1992-03-31', f'{CONCEPT}@1992-03-31'),
    (CONCEPT, '1992-03-30', f'{CONCEPT}@1988-10-05'),
    (f'{CONCEPT}!art6_cpt', '1999-12-31', f'{CONCEPT}@1988-10-05!art6_cpt'),
    (f'{CONCEPT}!art6_cpt', '2000-02-14', f'{CONCEPT}@2000-02-14!art6_cpt'),
])
def test_resolve_version(constitution, concept, at, expected):
    version = lexversion.resolve_version(constitution, concept, date(at))
    assert version.key == expected


def test_resolve_before_enactment(constitution):
    with pytest.raises(lexversion.NotYetEnacted) as info:
        lexversion.resolve_version(constitution, CONCEPT, date('1988-10-04'))
    assert info.value.enacted == date('1988-10-05')


def test_resolve_unknown(constitution):
    with pytest.raises(lexversion.UnknownConcept):
        lexversion.resolve_version(
            constitution, f'{CONCEPT}!art200', date('2000-01-01'))


###############################################################################
# Test reconstruction
###############################################################################


def test_housing_right(constitution):
    before = _texts(lexversion.reconstruct_text(
        constitution, CONCEPT, date('1999-12-31'), 'pt'))
    after = _texts(lexversion.reconstruct_text(
        constitution, CONCEPT, date('2000-02-14'), 'pt'))
    assert 'moradia' not in before['art6_cpt']
    assert 'o trabalho, a moradia, o lazer' in after['art6_cpt']
    assert before['art29_cpt'] == after['art29_cpt']
    assert list(before) == list(after) == [
        'art1',
        'art1_cpt',
        'art6',
        'art6_cpt',
        'art27',
        'art27_cpt',
        'art27_par2',
        'art29',
        'art29_cpt']


def test_tree_metadata(constitution):
    tree = lexversion.reconstruct_text(
        constitution, CONCEPT, date('1995-06-01'), 'pt')
    assert str(tree.tv_urn) == f'{CONCEPT}@1992-03-31'
    assert tree.as_of == date('1995-06-01')
    assert tree.language == 'pt'
    assert tree.root.path is None
    assert [node.ordinal for node in tree.root.children] == [1, 2, 3, 4]


def test_reconstruct_component(constitution):
    tree = lexversion.reconstruct_text(
        constitution, f'{CONCEPT}!art27', date('1992-03-31'), 'pt')
    assert str(tree.root.path) == 'art27'
    assert tree.root.ordinal == 3
    paths = [str(node.path) for _, node in tree.nodes()]
    assert paths == ['art27', 'art27_cpt', 'art27_par2']
    assert 'setenta e cinco por cento' in tree.root.children[1].text
    assert str(tree.tv_urn) == f'{CONCEPT}@1992-03-31'


def test_single_component():
    g = norm({'art1': 'Texto único.'})
    for at in ('2010-05-01', '2050-01-01'):
        tree = lexversion.reconstruct_text(
            g, 'urn:lex:br:federal:lei:2010-05-01;7', date(at), 'pt')
        node, = tree.root.children
        assert node.text == 'Texto único.'
        assert node.children == ()


def test_missing_language(constitution):
    with pytest.raises(lexversion.MissingLanguage) as info:
        lexversion.reconstruct_text(
            constitution, CONCEPT, date('2000-02-14'), 'en')
    assert info.value.language == 'en'


def test_not_yet_added():
    concept = 'urn:lex:br:federal:lei:2010-05-01;7'
    g = norm({'art1': 'Um.'})
    g, _ = lexversion.apply_amendment(g, concept, script(
        [{'op': 'AddComponent', 'target': 'art2',
          'new_text': {'pt': 'Dois.'}}],
        '2012-01-01'))
    assert list(_texts(lexversion.reconstruct_text(
        g, concept, date('2011-12-31'), 'pt'))) == ['art1']
    assert list(_texts(lexversion.reconstruct_text(
        g, concept, date('2012-01-01'), 'pt'))) == ['art1', 'art2']


def test_repealed_components_are_marked():
    concept = 'urn:lex:br:federal:lei:2010-05-01;7'
    g = norm({'art1': 'Um.', 'art2': 'Dois.'})
    g, _ = lexversion.apply_amendment(g, concept, script(
        [{'op': 'Repeal', 'target': 'art1'}],
        '2012-01-01'))
    tree = lexversion.reconstruct_text(g, concept, date('2012-01-01'), 'pt')
    first, second = tree.root.children
    assert first.status == Status.REPEALED
    assert first.text == ''
    assert second.status == Status.IN_FORCE
    assert lexversion.reconstruct.render.document(tree) == \
        'art1\tRepealed\t\nart2\tInForce\tDois.\n'


def test_multilingual():
    concept = lexversion.parse_urn('urn:lex:ca:federal:lei:1982-04-17;11')
    g = lexversion.bootstrap_norm(
        lexversion.TemporalGraph(),
        concept,
        concept.base_date,
        [lexversion.events.ComponentSpec(
            lexversion.parse_path('art2'),
            pmap({
                'en': 'Everyone has the following fundamental freedoms.',
                'fr': 'Chacun a les libertés fondamentales suivantes.'}))])
    english = lexversion.reconstruct_text(
        g, concept, concept.base_date, 'en')
    french = lexversion.reconstruct_text(
        g, concept, concept.base_date, 'fr')
    assert english.root.children[0].text.startswith('Everyone')
    assert french.root.children[0].text.startswith('Chacun')
    assert lexversion.validate(g) == []


###############################################################################
# Test against linear replay
###############################################################################


@pytest.mark.parametrize('seed', range(50))
def test_matches_linear_replay(seed):
    rng = random.Random(lexversion.RANDOM_SEED + seed)
    language = lexversion.SYNTHETIC_LANGUAGES[0]
    payloads = lexversion.data.synthetic.history(
        seed + 1,
        amendments=rng.randint(
            lexversion.MIN_AMENDMENTS, lexversion.MAX_AMENDMENTS))
    g = lexversion.store.replay(
        lexversion.data.synthetic.entries_from(payloads), cache=False)
    concept = payloads[0][1]['concept']

    dates = lexversion.data.synthetic.query_dates(
        rng, payloads, lexversion.QUERIES_PER_HISTORY)
    dates.append(lexversion.data.synthetic.ENACTED - datetime.timedelta(1))
    for at in dates:
        expected = lexversion.evaluate.oracle.reconstruct(
            payloads, at, language)
        if expected is None:
            with pytest.raises(lexversion.NotYetEnacted):
                lexversion.reconstruct_text(g, concept, at, language)
            continue
        tree = lexversion.reconstruct_text(g, concept, at, language)
        assert lexversion.reconstruct.render.document(tree) == expected, \
            f'seed {seed + 1} differs on {at}'


def test_matches_linear_replay_multilingual():
    rng = random.Random(lexversion.RANDOM_SEED)
    payloads = lexversion.data.synthetic.history(
        7, amendments=20, languages=['pt', 'en'])
    g = lexversion.store.replay(
        lexversion.data.synthetic.entries_from(payloads), cache=False)
    concept = payloads[0][1]['concept']
    for at in lexversion.data.synthetic.query_dates(rng, payloads, 50):
        for language in ('pt', 'en'):
            tree = lexversion.reconstruct_text(g, concept, at, language)
            assert lexversion.reconstruct.render.document(tree) == \
                lexversion.evaluate.oracle.reconstruct(payloads, at, language)


@pytest.mark.parametrize('seed', range(1, 9))
def test_amendments_leave_the_past_alone(seed):
    """Text before an amendment takes effect is unchanged by applying it"""
    rng = random.Random(seed)
    payloads = lexversion.data.synthetic.history(seed, amendments=10)
    entries = lexversion.data.synthetic.entries_from(payloads)
    concept = payloads[0][1]['concept']
    dates = lexversion.data.synthetic.query_dates(rng, payloads, 30)
    language = lexversion.SYNTHETIC_LANGUAGES[0]
    before = lexversion.store.replay(entries, upto=1, cache=False)
    for upto in range(2, len(entries) + 1):
        after = lexversion.store.replay(entries, upto=upto, cache=False)
        effective = date(payloads[upto - 1][1]['script']['effective_date'])
        for at in [effective - datetime.timedelta(1)] + [
            at for at in dates if at < effective
        ]:
            old = lexversion.reconstruct_text(before, concept, at, language)
            new = lexversion.reconstruct_text(after, concept, at, language)
            assert new.to_dict() == old.to_dict()
        before = after


###############################################################################
# Test history
###############################################################################


def test_history(constitution):
    entries = lexversion.history(constitution, f'{CONCEPT}!art6_cpt')
    assert [(version.key, event) for version, event in entries] == [
        (f'{CONCEPT}@1988-10-05!art6_cpt', f'{CONCEPT}@1988-10-05#event'),
        (f'{CONCEPT}@2000-02-14!art6_cpt', f'{EC26_INSTRUCTION}#event')]


def test_history_of_norm(constitution):
    entries = lexversion.history(constitution, CONCEPT)
    assert [version.key for version, _ in entries] == [
        f'{CONCEPT}@1988-10-05',
        f'{CONCEPT}@1992-03-31',
        f'{CONCEPT}@2000-02-14']
    assert [version.status for version, _ in entries] == [
        Status.SUPERSEDED, Status.SUPERSEDED, Status.IN_FORCE]


def test_history_of_version_urn(constitution):
    assert lexversion.history(
        constitution, f'{CONCEPT}@2000-02-14~texto;pt!art6_cpt') == \
        lexversion.history(constitution, f'{CONCEPT}!art6_cpt')


@pytest.mark.parametrize('seed', range(1, 9))
def test_history_counts_versions(seed):
    """A component has one version at enactment and one per instruction"""
    payloads = lexversion.data.synthetic.history(seed, amendments=15)
    g = lexversion.store.replay(
        lexversion.data.synthetic.entries_from(payloads), cache=False)
    concept = payloads[0][1]['concept']

    expected = {}
    stack = list(payloads[0][1]['components'])
    while stack:
        spec = stack.pop()
        expected[spec['path']] = 1
        stack.extend(spec.get('children', []))
    for _, payload in payloads[1:]:
        for instruction in payload['script']['instructions']:
            target = instruction['target']
            expected[target] = expected.get(target, 0) + 1

    for path, count in expected.items():
        assert len(lexversion.history(g, f'{concept}!{path}')) == count, \
            f'seed {seed} {path}'
    assert len(lexversion.history(g, concept)) == len(payloads)


def test_history_fresh_norm():
    g = norm({'art1': 'Um.'})
    entries = lexversion.history(g, 'urn:lex:br:federal:lei:2010-05-01;7')
    assert len(entries) == 1


###############################################################################
# Test diff
###############################################################################


def test_diff_housing_right(constitution):
    record, = lexversion.diff(
        constitution, CONCEPT, date('1999-12-31'), date('2000-02-14'))
    assert str(record.path) == 'art6_cpt'
    assert record.change == Change.TEXT_CHANGED
    assert str(record.instruction) == EC26_INSTRUCTION
    assert str(record.from_ctv) == f'{CONCEPT}@1988-10-05!art6_cpt'
    assert str(record.to_ctv) == f'{CONCEPT}@2000-02-14!art6_cpt'
    assert record.date == date('2000-02-14')
    assert record.nature == 'Amendment'


def test_change_record_fields(constitution):
    record, = lexversion.diff(
        constitution, CONCEPT, date('1999-12-31'), date('2000-02-14'))
    item = json.loads(
        lexversion.reconstruct.render.change(record, 'structured'))
    assert list(item) == [
        'path',
        'change',
        'from_ctv',
        'to_ctv',
        'micro_event',
        'instruction',
        'macro_event',
        'nature',
        'actors',
        'date']
    assert item['from_ctv'] == f'{CONCEPT}@1988-10-05!art6_cpt'
    assert item['to_ctv'] == f'{CONCEPT}@2000-02-14!art6_cpt'


def test_diff_without_change(constitution):
    assert lexversion.diff(
        constitution, CONCEPT, date('1993-01-01'), date('1993-01-02')) == []


def test_diff_invalid_range(constitution):
    with pytest.raises(lexversion.InvalidDateRange):
        lexversion.diff(
            constitution, CONCEPT, date('2000-02-14'), date('2000-02-14'))


def test_diff_whole_history(constitution):
    records = lexversion.diff(
        constitution, CONCEPT, date('1990-01-01'), date('2020-01-01'))
    assert [str(record.path) for record in records] == [
        'art6_cpt', 'art27_par2']


@pytest.mark.parametrize('seed', range(1, 6))
def test_diff_composes(seed):
    """Changes over a range are the last changes of its sub-ranges"""
    rng = random.Random(seed)
    payloads = lexversion.data.synthetic.history(seed, amendments=25)
    g = lexversion.store.replay(
        lexversion.data.synthetic.entries_from(payloads), cache=False)
    concept = payloads[0][1]['concept']
    dates = sorted(set(lexversion.data.synthetic.query_dates(
        rng, payloads, 40)))
    for _ in range(20):
        d1, d2, d3 = sorted(rng.sample(dates, 3))
        whole = {
            str(record.path): record.to_ctv
            for record in lexversion.diff(g, concept, d1, d3)}
        parts = {
            str(record.path): record.to_ctv
            for record in lexversion.diff(g, concept, d1, d2)}
        parts.update({
            str(record.path): record.to_ctv
            for record in lexversion.diff(g, concept, d2, d3)})

        # A component changed and changed back still has a new version
        assert whole == parts


###############################################################################
# Test provenance
###############################################################################


def test_provenance_of_amended_component(constitution):
    record = lexversion.provenance(
        constitution, f'{CONCEPT}@2000-02-14!art6_cpt')
    assert record.micro_event == f'{EC26_INSTRUCTION}#event'
    assert str(record.instruction) == EC26_INSTRUCTION
    assert record.date == date('2000-02-14')
    assert record.actors == (
        'Mesa da Câmara dos Deputados', 'Mesa do Senado Federal')


def test_provenance_of_enacted_component(constitution):
    record = lexversion.provenance(
        constitution, f'{CONCEPT}@1988-10-05!art6_cpt')
    assert record.from_ctv is None
    assert record.micro_event is None
    assert record.instruction is None
    assert record.macro_event == f'{CONCEPT}@1988-10-05#event'
    assert record.change == Change.ADDED


def test_provenance_unknown_version(constitution):
    with pytest.raises(lexversion.UnknownVersion):
        lexversion.provenance(constitution, f'{CONCEPT}@1995-01-01')
    with pytest.raises(lexversion.UnknownVersion):
        lexversion.provenance(constitution, CONCEPT)


@pytest.mark.parametrize('kind,key', [
    (EdgeKind.CREATED, f'{CONCEPT}@2000-02-14!art6_cpt'),
    (EdgeKind.CONSISTS_OF, f'{EC26_INSTRUCTION}#event'),
])
def test_provenance_without_event_edge(constitution, kind, key):
    g = constitution
    for edge in g.into(key, kind):
        g = lexversion.model.remove_edge(g, edge)
    with pytest.raises(lexversion.InvalidNode):
        lexversion.provenance(g, f'{CONCEPT}@2000-02-14!art6_cpt')
    with pytest.raises(lexversion.InvalidNode):
        lexversion.history(g, f'{CONCEPT}!art6_cpt')
    with pytest.raises(lexversion.InvalidNode):
        lexversion.diff(g, CONCEPT, date('1999-12-31'), date('2000-02-14'))


@pytest.mark.parametrize('seed', range(1, 4))
def test_every_amended_version_has_provenance(seed):
    payloads = lexversion.data.synthetic.history(seed, amendments=40)
    g = lexversion.store.replay(
        lexversion.data.synthetic.entries_from(payloads), cache=False)
    concept = payloads[0][1]['concept']
    for key, work in g.works.items():
        if (
            work.urn.component_path is None or
            str(lexversion.strip_to_concept(work.urn)) != concept or
            not work.kind.is_version
        ):
            continue
        record = lexversion.provenance(g, key)
        if work.validity.start == lexversion.data.synthetic.ENACTED:
            assert record.micro_event is None
        else:
            assert record.micro_event is not None
            assert record.instruction is not None


###############################################################################
# Test rendering
###############################################################################


def test_flat_escaping():
    g = norm({'art1': 'Linha um\nlinha\tdois \\ fim'})
    tree = lexversion.reconstruct_text(
        g, 'urn:lex:br:federal:lei:2010-05-01;7', date('2011-01-01'), 'pt')
    assert lexversion.reconstruct.render.document(tree) == \
        'art1\tInForce\tLinha um\\nlinha\\tdois \\\\ fim\n'


def test_structured_rendering(constitution):
    tree = lexversion.reconstruct_text(
        constitution, f'{CONCEPT}!art6_cpt', date('2000-02-14'), 'pt')
    text = lexversion.reconstruct.render.document(tree, 'structured')
    assert text.startswith('{\n    "tv_urn": ')
    assert 'a moradia' in text


def test_tree_rendering(constitution):
    tree = lexversion.reconstruct_text(
        constitution, f'{CONCEPT}!art6', date('1999-12-31'), 'pt')
    lines = lexversion.reconstruct.render.document(tree, 'tree').splitlines()
    assert lines[0] == f'{CONCEPT}@1992-03-31 (pt, 1999-12-31)'
    assert lines[1] == '  art6'
    assert lines[2] == '      Art. 6º'
    assert lines[3] == '    art6_cpt'


###############################################################################
# Utilities
###############################################################################


def _texts(tree):
    """Path -> text of every node in document order"""
    return {str(node.path): node.text for _, node in tree.nodes()}
