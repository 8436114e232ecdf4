import json
import textwrap

import lexversion


###############################################################################
# Render query results
###############################################################################


def document(tree, fmt='flat'):
    """Render a reconstructed document

    Arguments
        tree
            The DocumentTree to render
        fmt
            One of ['flat', 'tree', 'structured']

    Returns
        The rendered text, ending in a newline unless empty
    """
    if fmt == 'structured':
        return structured(tree.to_dict())
    if fmt == 'tree':
        lines = [f'{tree.tv_urn} ({tree.language}, {tree.as_of})']
        for depth, node in tree.nodes():
            indent = '  ' * (depth + 1)
            marker = ' [Repealed]' if \
                node.status == lexversion.Status.REPEALED else ''
            lines.append(f'{indent}{node.path}{marker}')
            if node.text:
                lines.append(textwrap.indent(
                    node.text, indent + '    ', lambda _: True))
        return '\n'.join(lines) + '\n'
    return ''.join(
        f'{node.path}\t{node.status.value}\t{escape(node.text)}\n'
        for _, node in tree.nodes())


def history(entries, fmt='flat'):
    """Render (version, event id) pairs"""
    rows = [
        {
            'version': str(version.urn),
            'start': version.validity.start.isoformat(),
            'end': (
                None if version.validity.end is None
                else version.validity.end.isoformat()),
            'status': version.status.value,
            'event': event}
        for version, event in entries]
    if fmt == 'structured':
        return structured(rows)
    if fmt == 'tree':
        return ''.join(
            f'{row["version"]}\n'
            f'    valid {row["start"]} to {row["end"] or "now"}, '
            f'{row["status"]}\n'
            f'    created by {row["event"]}\n'
            for row in rows)
    return ''.join(
        f'{row["version"]}\t{row["start"]}\t{row["end"] or "-"}\t'
        f'{row["status"]}\t{row["event"]}\n'
        for row in rows)


def changes(records, fmt='flat'):
    """Render change records"""
    if fmt == 'structured':
        return structured([record.to_dict() for record in records])
    return ''.join(change(record, fmt) for record in records)


def change(record, fmt='flat'):
    """Render one change record"""
    item = record.to_dict()
    if fmt == 'structured':
        return structured(item)
    if fmt == 'tree':
        lines = [f'{item["path"] or item["to_ctv"]}: {item["change"]}']
        for key in (
            'from_ctv',
            'to_ctv',
            'micro_event',
            'instruction',
            'macro_event',
            'nature',
            'date'
        ):
            lines.append(f'    {key}: {item[key] or "-"}')
        lines.append(f'    actors: {", ".join(item["actors"]) or "-"}')
        return '\n'.join(lines) + '\n'
    return '\t'.join([
        item['path'] or '-',
        item['change'],
        item['from_ctv'] or '-',
        item['to_ctv'],
        item['micro_event'] or '-',
        item['instruction'] or '-',
        item['date']]) + '\n'


def structured(value):
    """JSON rendering shared by every query"""
    return json.dumps(value, indent=4, ensure_ascii=False) + '\n'


###############################################################################
# Utilities
###############################################################################


def escape(text):
    """Escape text for a single tab-separated line"""
    return (text or '').replace('\\', '\\\\').replace(
        '\t', '\\t').replace('\n', '\\n')
