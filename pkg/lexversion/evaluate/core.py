import json
import logging
import random
import time

import tqdm

import lexversion


logger = logging.getLogger(__name__)


###############################################################################
# Evaluate
###############################################################################


def histories(count=None, queries=None, seed=None):
    """Compare indexed reconstruction with linear replay on random histories

    Arguments
        count
            Number of synthetic histories
        queries
            Number of query dates per history
        seed
            Seed of the generator

    Returns
        The aggregate metrics, also saved to EVAL_DIR / CONFIG
    """
    count = count or lexversion.EVALUATION_HISTORIES
    queries = queries or lexversion.QUERIES_PER_HISTORY
    rng = random.Random(lexversion.RANDOM_SEED if seed is None else seed)
    language = sorted(lexversion.SYNTHETIC_LANGUAGES)[0]

    metrics = lexversion.evaluate.Metrics()
    for _ in tqdm.tqdm(
        range(count),
        desc=f'Evaluating {lexversion.CONFIG}',
        dynamic_ncols=True
    ):
        payloads = lexversion.data.synthetic.history(
            rng.randrange(1, 2 ** 31),
            amendments=rng.randint(
                lexversion.MIN_AMENDMENTS,
                lexversion.MAX_AMENDMENTS))
        g = lexversion.store.replay(
            lexversion.data.synthetic.entries_from(payloads), cache=False)
        concept = payloads[0][1]['concept']

        results = []
        for date in lexversion.data.synthetic.query_dates(
            rng, payloads, queries
        ):
            start = time.perf_counter()
            tree = lexversion.reconstruct_text(g, concept, date, language)
            indexed = lexversion.reconstruct.render.document(tree)
            seconds = time.perf_counter() - start
            oracle = lexversion.evaluate.oracle.reconstruct(
                payloads, date, language)
            results.append((date, indexed, oracle, seconds))
        metrics.update(g, concept, results)

    results = metrics()
    logger.info(json.dumps(results))

    # Save to disk
    directory = lexversion.EVAL_DIR / lexversion.CONFIG
    directory.mkdir(exist_ok=True, parents=True)
    with open(directory / 'histories.json', 'w') as file:
        json.dump(results, file, indent=4)

    return results


def equivalence(g, concept):
    """Amendments whose diff differs from the targets of their micro events

    Arguments
        g
            The graph holding the norm
        concept
            Urn of the norm

    Returns
        Ids of the offending macro events
    """
    concept = str(concept)
    timeline = g.versions(concept)
    mismatches = []
    for previous, current in zip(timeline, timeline[1:]):
        creations = g.into(current, lexversion.EdgeKind.CREATED)
        if not creations or creations[0].source not in g.events:
            raise lexversion.InvalidNode(current, 'no creating event')
        macro = g.events[creations[0].source]
        targets = {
            str(g.events[micro].created[0].component_path)
            for micro in macro.children}
        changed = {
            str(record.path) for record in lexversion.diff(
                g,
                concept,
                g.works[previous].validity.start,
                g.works[current].validity.start)}
        if targets != changed:
            mismatches.append(macro.id)
    return mismatches
