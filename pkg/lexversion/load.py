from pathlib import Path

import yaml

import lexversion


###############################################################################
# Loading utilities
###############################################################################


def fixture():
    """Load the bundled constitution and its amendment scripts

    Returns
        norm
            The NormDocument of the constitution as enacted
        scripts
            The AmendmentScripts in order of effective date
    """
    return (
        norm(lexversion.FIXTURE_NORM_FILE),
        [script(file) for file in lexversion.FIXTURE_SCRIPT_FILES])


def norm(file):
    """Load a norm document from disk"""
    return lexversion.NormDocument.from_dict(yaml_file(file))


def script(file):
    """Load an amendment script from disk"""
    return lexversion.AmendmentScript.from_dict(yaml_file(file))


def yaml_file(file):
    """Load a YAML document, reporting unreadable files as invalid input"""
    path = Path(file)
    try:
        # PyYAML decodes the bytes itself and reports bad encodings
        with open(path, 'rb') as handle:
            return yaml.safe_load(handle)
    except OSError as error:
        raise lexversion.InvalidScript(
            f'cannot read {path}: {error.strerror}')
    except yaml.YAMLError as error:
        raise lexversion.InvalidScript(f'{path} is not valid YAML: {error}')
