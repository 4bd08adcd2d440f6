"""Graphviz rendering of a public view.

Only what the public view carries reaches the output: snode ids, owners
(as cluster names) and public tags.
"""

from __future__ import annotations

from secretaries.models import PublicView

TEMPLATE = """graph "public" {
%s
}
"""


def _quote(text: str) -> str:
    return '"%s"' % text.replace("\\", "\\\\").replace('"', '\\"')


def export_dot(view: PublicView) -> str:
    lines = []
    for user in sorted(view.users):
        lines.append("  subgraph %s {" % _quote(f"cluster_{user}"))
        lines.append("    label=%s;" % _quote(user))
        for snode in view.snodes_of(user):
            lines.append("    %s [label=%s];" % (_quote(snode), _quote(view.snodes[snode][1])))
        lines.append("  }")
    for edge in sorted(view.edges):
        lines.append("  %s -- %s;" % (_quote(edge.a), _quote(edge.b)))
    if not lines:
        return 'graph "public" {\n}\n'
    return TEMPLATE % "\n".join(lines)
