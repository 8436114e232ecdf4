"""Config parameters whose values depend on other config parameters"""
import lexversion


###############################################################################
# Directories
###############################################################################


# Location of the bundled constitution fixture
FIXTURES_DIR = lexversion.ASSETS_DIR / 'fixtures'

# Constitution bootstrap file
FIXTURE_NORM_FILE = FIXTURES_DIR / 'constituicao.yaml'

# Amendment scripts of the fixture, in enactment order
FIXTURE_SCRIPT_FILES = [
    FIXTURES_DIR / 'ec1-1992.yaml',
    FIXTURES_DIR / 'ec26-2000.yaml']
