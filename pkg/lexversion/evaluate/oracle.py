"""Reference reconstruction by linear replay

Rebuilds the text of a norm on a date from the raw log payloads alone,
without the temporal graph, and renders it in the flat format.
"""
import datetime


###############################################################################
# Replay oracle
###############################################################################


def reconstruct(payloads, at, language):
    """Flat text of a norm on a date

    Arguments
        payloads
            (EntryKind, payload) pairs of one norm in log order
        at
            The date to reconstruct
        language
            Language code of the text

    Returns
        The flat rendering, or None if the norm was not yet enacted
    """
    (_, norm), amendments = payloads[0], payloads[1:]
    if at < _date(norm['enacted']):
        return None

    # Path -> [ordinal, status, texts, child paths]
    nodes, roots = {}, []
    for ordinal, spec in enumerate(norm['components'], 1):
        _enact(nodes, roots, spec, ordinal)

    for _, payload in amendments:
        script = payload['script']
        if _date(script['effective_date']) > at:
            break
        for instruction in script['instructions']:
            target = instruction['target']
            if instruction['op'] == 'ReplaceText':
                nodes[target][2] = dict(instruction['new_text'])
            elif instruction['op'] == 'Repeal':
                nodes[target][1] = 'Repealed'
                nodes[target][2] = None
            else:
                position = instruction.get('position') or {}
                parent = position.get('parent') if position \
                    else _parent(target)
                siblings = roots if parent is None else nodes[parent][3]
                ordinal = position.get('ordinal') or 1 + max(
                    (nodes[sibling][0] for sibling in siblings), default=0)
                nodes[target] = [
                    ordinal, 'InForce', dict(instruction['new_text']), []]
                siblings.append(target)

    lines = []
    stack = list(reversed(_ordered(nodes, roots)))
    while stack:
        path = stack.pop()
        _, status, texts, children = nodes[path]
        text = '' if texts is None else texts[language]
        text = text.replace('\\', '\\\\').replace('\t', '\\t').replace(
            '\n', '\\n')
        lines.append(f'{path}\t{status}\t{text}\n')
        stack.extend(reversed(_ordered(nodes, children)))
    return ''.join(lines)


###############################################################################
# Utilities
###############################################################################


def _date(value):
    if isinstance(value, datetime.date):
        return value
    return datetime.date.fromisoformat(value)


def _enact(nodes, siblings, spec, ordinal):
    texts = spec.get('text')
    nodes[spec['path']] = [ordinal, 'InForce', texts, []]
    siblings.append(spec['path'])
    for child_ordinal, child in enumerate(spec.get('children') or [], 1):
        _enact(nodes, nodes[spec['path']][3], child, child_ordinal)


def _ordered(nodes, paths):
    return sorted(paths, key=lambda path: (nodes[path][0], path))


def _parent(path):
    return path.rsplit('_', 1)[0] if '_' in path else None
