MODULE = 'lexversion'

# Configuration name
CONFIG = 'scale'

# Number of components of a synthetic norm at enactment
SYNTHETIC_COMPONENTS = 250

# Number of synthetic histories to evaluate
EVALUATION_HISTORIES = 10

# Number of amendments per synthetic history
MIN_AMENDMENTS = 100
MAX_AMENDMENTS = 120

# Languages of synthetic texts
SYNTHETIC_LANGUAGES = ['pt', 'en']
