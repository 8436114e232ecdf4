import yapecs

import lexversion


###############################################################################
# Entry point
###############################################################################


def parse_args():
    """Parse command-line arguments"""
    parser = yapecs.ArgumentParser(
        description='Check indexed reconstruction against linear replay')
    parser.add_argument(
        '--count',
        type=int,
        default=lexversion.EVALUATION_HISTORIES,
        help='The number of synthetic histories to evaluate')
    parser.add_argument(
        '--queries',
        type=int,
        default=lexversion.QUERIES_PER_HISTORY,
        help='The number of query dates per history')
    parser.add_argument(
        '--seed',
        type=int,
        default=lexversion.RANDOM_SEED,
        help='The seed of the history generator')
    return parser.parse_args()


lexversion.evaluate.histories(**vars(parse_args()))
