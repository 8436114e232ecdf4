"""Cache of folded graphs

A snapshot is only ever used when its key, derived from the checksums of
every replayed entry, matches. Snapshots are never authoritative.
"""
import hashlib
import os
import pickle
import warnings
from typing import Optional

import lexversion


###############################################################################
# Snapshot cache
###############################################################################


def key(entries) -> str:
    """Cache key of a log prefix: chained checksum digest and last seq"""
    digest = hashlib.sha256()
    for entry in entries:
        digest.update(entry.checksum.encode('utf-8'))
    return f'{digest.hexdigest()}-{entries[-1].seq}'


def load(key: str) -> Optional['lexversion.TemporalGraph']:
    """Load a snapshot, or None if there is no usable one"""
    file = path(key)
    if not file.exists():
        return None
    try:
        with open(file, 'rb') as handle:
            g = pickle.load(handle)
    except (
        OSError,
        EOFError,
        AttributeError,
        pickle.UnpicklingError
    ) as error:
        warnings.warn(f'Ignoring unreadable snapshot {file}: {error}')
        return None
    if not isinstance(g, lexversion.TemporalGraph):
        warnings.warn(f'Ignoring snapshot {file} holding no graph')
        return None
    return g


def path(key: str):
    """Snapshot file of a cache key"""
    return lexversion.CACHE_DIR / f'{key}.pkl'


def save(key: str, g: 'lexversion.TemporalGraph'):
    """Save a snapshot"""
    file = path(key)
    file.parent.mkdir(exist_ok=True, parents=True)
    temporary = file.with_name(f'.{file.name}.tmp')
    with open(temporary, 'wb') as handle:
        pickle.dump(g, handle)
    os.replace(temporary, file)
