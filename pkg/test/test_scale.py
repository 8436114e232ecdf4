import datetime
import time

import pytest

import lexversion


###############################################################################
# Pytest fixtures
###############################################################################


@pytest.fixture(scope='module')
def large():
    """A norm of 250 components after 120 amendments"""
    payloads = lexversion.data.synthetic.history(
        11, components=250, amendments=120)
    g = lexversion.store.replay(
        lexversion.data.synthetic.entries_from(payloads), cache=False)
    return g, payloads[0][1]['concept']


###############################################################################
# Test query latency
###############################################################################


def test_large_history_is_valid(large):
    g, concept = large
    assert len(g.versions(concept)) == 121
    assert lexversion.validate(g) == []


def test_reconstruct_latency(large):
    g, concept = large
    date = lexversion.data.synthetic.ENACTED + datetime.timedelta(days=4000)
    assert _fastest(
        lambda: lexversion.reconstruct_text(g, concept, date, 'pt')) < .1


def test_history_latency(large):
    g, concept = large
    assert len(lexversion.history(g, concept)) == 121
    assert _fastest(lambda: lexversion.history(g, concept)) < .01


###############################################################################
# Utilities
###############################################################################


def _fastest(function, repeats=5):
    """Best wall-clock seconds of several calls"""
    seconds = []
    for _ in range(repeats):
        start = time.perf_counter()
        function()
        seconds.append(time.perf_counter() - start)
    return min(seconds)
