MODULE = 'lexversion'

# Configuration name
CONFIG = 'quick'

# Number of synthetic histories to evaluate
EVALUATION_HISTORIES = 5

# Number of amendments per synthetic history
MAX_AMENDMENTS = 20

# Number of query dates per history
QUERIES_PER_HISTORY = 20
