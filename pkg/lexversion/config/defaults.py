from pathlib import Path


###############################################################################
# Metadata
###############################################################################


# Configuration name
CONFIG = 'lexversion'


###############################################################################
# Identifier parameters
###############################################################################


# Expression form token used when a file does not name one
DEFAULT_FORM = 'texto'

# Language used by the command line when --lang is not given
DEFAULT_LANGUAGE = 'pt'

# Event nature recorded for the creation of a norm
DEFAULT_CREATION_NATURE = 'Promulgation'

# Qualifier of the derivation edge between successive versions
TEMPORAL_SUCCESSION = 'TemporalSuccession'


###############################################################################
# Command-line parameters
###############################################################################


# Default output format.
# One of ['flat', 'tree', 'structured'].
OUTPUT_FORMAT = 'flat'

# Environment variable holding the event log path
LOG_ENV_VAR = 'LEXVERSION_LOG'


###############################################################################
# Storage parameters
###############################################################################


# Version of the event log file format
LOG_FORMAT_VERSION = 1

# Version of the Turtle export format
TURTLE_FORMAT_VERSION = 1

# Whether replay reads and writes folded-graph snapshots
SNAPSHOT_CACHE = False

# Minimum number of log entries before replay shows a progress bar
PROGRESS_THRESHOLD = 100


###############################################################################
# RDF vocabulary
###############################################################################


# LRMoo namespace (F-classes and R-properties)
LRMOO_NAMESPACE = 'http://iflastandards.info/ns/lrm/lrmoo/'

# CIDOC CRM namespace (E-classes and P-properties)
CRM_NAMESPACE = 'http://www.cidoc-crm.org/cidoc-crm/'

# Namespace for attributes the two ontologies do not cover
LEX_NAMESPACE = 'https://w3id.org/lexversion/vocab#'


###############################################################################
# Directories
###############################################################################


# Root location for saving outputs
ROOT_DIR = Path(__file__).parent.parent.parent

# Location of assets bundled with the pip release
ASSETS_DIR = Path(__file__).parent.parent / 'assets'

# Location of folded-graph snapshots
CACHE_DIR = ROOT_DIR / 'data' / 'cache'

# Location to save evaluation artifacts
EVAL_DIR = ROOT_DIR / 'eval'


###############################################################################
# Synthetic history parameters
###############################################################################


# Seed for all random number generators
RANDOM_SEED = 1234

# Number of components in a synthetic norm at enactment
SYNTHETIC_COMPONENTS = 30

# Languages of a synthetic norm
SYNTHETIC_LANGUAGES = ['pt']

# Maximum number of instructions in one synthetic amendment
MAX_INSTRUCTIONS = 4

# Relative frequency of each instruction kind
INSTRUCTION_WEIGHTS = {'ReplaceText': 6, 'AddComponent': 2, 'Repeal': 1}


###############################################################################
# Evaluation parameters
###############################################################################


# Number of synthetic histories to evaluate
EVALUATION_HISTORIES = 50

# Minimum number of amendments in an evaluated history
MIN_AMENDMENTS = 5

# Maximum number of amendments in an evaluated history
MAX_AMENDMENTS = 100

# Number of random query dates per history
QUERIES_PER_HISTORY = 200
