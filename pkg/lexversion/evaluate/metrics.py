import numpy as np

import lexversion


###############################################################################
# Aggregate history metric state
###############################################################################


class Metrics:

    def __init__(self):
        self.metrics = [
            ReplayAgreement(),
            Violations(),
            EventDiffEquivalence(),
            Latency()]

    def __call__(self):
        results = {}
        for metric in self.metrics:
            results.update(metric())
        return results

    def reset(self):
        for metric in self.metrics:
            metric.reset()

    def update(self, g, concept, queries):
        """Update with one replayed history

        Arguments
            g
                The replayed graph
            concept
                Urn of the synthetic norm
            queries
                (date, indexed text, oracle text, seconds) per query
        """
        for metric in self.metrics:
            metric.update(g, concept, queries)


###############################################################################
# History metrics
###############################################################################


class ReplayAgreement:
    """Share of queries where indexed reconstruction matches the oracle"""

    def __init__(self):
        self.reset()

    def __call__(self):
        return {
            'replay/queries': self.count,
            'replay/mismatches': self.mismatches,
            'replay/agreement': (
                1. if self.count == 0
                else 1. - self.mismatches / self.count)}

    def reset(self):
        self.count = 0
        self.mismatches = 0

    def update(self, g, concept, queries):
        for _, indexed, oracle, _ in queries:
            self.count += 1
            self.mismatches += indexed != oracle


class Violations:

    def __init__(self):
        self.reset()

    def __call__(self):
        return {
            'validate/histories': self.count,
            'validate/violations': self.violations,
            'validate/invalid': self.invalid}

    def reset(self):
        self.count = 0
        self.violations = 0
        self.invalid = 0

    def update(self, g, concept, queries):
        violations = lexversion.validate(g)
        self.count += 1
        self.violations += len(violations)
        self.invalid += bool(violations)


class EventDiffEquivalence:
    """Amendments whose micro event targets equal the diff they cause"""

    def __init__(self):
        self.reset()

    def __call__(self):
        return {
            'events/amendments': self.count,
            'events/mismatches': self.mismatches}

    def reset(self):
        self.count = 0
        self.mismatches = 0

    def update(self, g, concept, queries):
        self.count += len(g.versions(concept)) - 1
        self.mismatches += len(lexversion.evaluate.equivalence(g, concept))


class Latency:
    """Reconstruction latency percentiles in milliseconds"""

    def __init__(self):
        self.reset()

    def __call__(self):
        if not self.seconds:
            return {}
        milliseconds = 1000. * np.array(self.seconds)
        return {
            'latency/p50': float(np.percentile(milliseconds, 50)),
            'latency/p95': float(np.percentile(milliseconds, 95)),
            'latency/max': float(milliseconds.max())}

    def reset(self):
        self.seconds = []

    def update(self, g, concept, queries):
        self.seconds.extend(seconds for *_, seconds in queries)
