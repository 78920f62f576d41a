"""DOT and TikZ renderings (best effort; the graphs are stored abstractly).

Hyperedges and multi-endpoint diagonals are routed through auxiliary
junction nodes; diagonals are dashed, matching the drawing convention of
the source figures.  Layout is left to the renderer.
"""

from .symbolic import render_var, yvar_key


def _weight_text(edge):
    if edge.wset is None:
        return ''
    text = render_var(yvar_key(edge.wset))
    return text + '^2' if edge.squared else text


def graph_to_dot(graph, name='snakegraph'):
    lines = ['graph %s {' % name, '  node [shape=circle];']
    for n in sorted(graph.nodes.values(), key=lambda n: n.id):
        extra = ''
        if (n.a, n.b) != (1, 0):
            extra = r'\n%d+%d' % (n.a, n.b)
        lines.append('  n%d [label="%s%s"];' % (n.id, n.label, extra))
    for e in sorted(graph.edges.values(), key=lambda e: e.id):
        label = _weight_text(e)
        if len(e.nodes) == 2:
            a, b = e.nodes
            lines.append('  n%d -- n%d [label="%s"];' % (a, b, label))
        else:
            j = 'je%d' % e.id
            lines.append('  %s [shape=point, label="", xlabel="%s"];'
                         % (j, label))
            for nid in e.nodes:
                lines.append('  %s -- n%d;' % (j, nid))
    for d in sorted(graph.diagonals.values(), key=lambda d: d.id):
        label = render_var(yvar_key(d.label))
        if len(d.nodes) == 2:
            a, b = d.nodes
            lines.append('  n%d -- n%d [style=dashed, label="%s"];'
                         % (a, b, label))
        else:
            j = 'jd%d' % d.id
            lines.append('  %s [shape=point, label="", xlabel="%s"];'
                         % (j, label))
            for nid in d.nodes:
                lines.append('  %s -- n%d [style=dashed];' % (j, nid))
    lines.append('}')
    return '\n'.join(lines)


def graph_to_tikz(graph):
    lines = [r'\begin{tikzpicture}[every node/.style={inner sep=1pt}]']
    count = len(graph.nodes)
    for i, n in enumerate(sorted(graph.nodes.values(), key=lambda n: n.id)):
        angle = 360.0 * i / max(count, 1)
        lines.append(r'  \node (n%d) at (%0.3f:%d0pt) {$%s$};'
                     % (n.id, angle, 2 + len(graph.nodes) // 4, n.label))
    for e in sorted(graph.edges.values(), key=lambda e: e.id):
        label = _weight_text(e)
        if len(e.nodes) == 2:
            a, b = e.nodes
            lines.append(r'  \draw (n%d) -- node[above,font=\tiny]{%s} (n%d);'
                         % (a, label, b))
        else:
            j = 'e%d' % e.id
            lines.append(r'  \coordinate (%s) at (barycentric cs:%s);'
                         % (j, ','.join('n%d=1' % nid for nid in e.nodes)))
            for nid in e.nodes:
                lines.append(r'  \draw (%s) -- (n%d);' % (j, nid))
            lines.append(r'  \node[font=\tiny] at (%s) {%s};' % (j, label))
    for d in sorted(graph.diagonals.values(), key=lambda d: d.id):
        label = render_var(yvar_key(d.label))
        if len(d.nodes) == 2:
            a, b = d.nodes
            lines.append(r'  \draw[dashed] (n%d) -- node[above,font=\tiny]{%s} (n%d);'
                         % (a, label, b))
        else:
            j = 'd%d' % d.id
            lines.append(r'  \coordinate (%s) at (barycentric cs:%s);'
                         % (j, ','.join('n%d=1' % nid for nid in d.nodes)))
            for nid in d.nodes:
                lines.append(r'  \draw[dashed] (%s) -- (n%d);' % (j, nid))
            lines.append(r'  \node[font=\tiny] at (%s) {%s};' % (j, label))
    lines.append(r'\end{tikzpicture}')
    return '\n'.join(lines)


def tpath_to_tikz(alpha):
    lines = [r'\begin{tikzpicture}[every node/.style={inner sep=1pt}]']
    ordered = sorted(alpha.nodes)
    for i, nid in enumerate(ordered):
        label, _ = alpha.nodes[nid]
        lines.append(r'  \node (n%d) at (%d, %d) {$%s$};'
                     % (nid, i % 6 * 2, i // 6 * 2, label))
    for c in sorted(alpha.connections.values(), key=lambda c: c.id):
        style = 'dashed' if c.parity == 'even' else 'solid'
        ids = list(c.endpoints)
        if len(ids) == 2:
            lines.append(r'  \draw[%s] (n%d) -- (n%d);' % (style, *ids))
        else:
            j = 'c%d' % c.id
            lines.append(r'  \coordinate (%s) at (barycentric cs:%s);'
                         % (j, ','.join('n%d=1' % nid for nid in ids)))
            for nid in ids:
                lines.append(r'  \draw[%s] (%s) -- (n%d);' % (style, j, nid))
    lines.append(r'\end{tikzpicture}')
    return '\n'.join(lines)


def polygon_to_tikz(polygon, triangulation, gamma=None):
    n = len(polygon)
    lines = [r'\begin{tikzpicture}']
    for i, v in enumerate(polygon.vertices):
        lines.append(r'  \node (p%d) at (%0.1f:2cm) {$%s$};'
                     % (i, 360.0 * i / n, v))
    idx = polygon.index
    for arc in sorted(polygon.boundary | triangulation.internal,
                      key=lambda a: sorted(idx[v] for v in a)):
        u, w = sorted(arc, key=idx.get)
        lines.append(r'  \draw (p%d) -- (p%d);' % (idx[u], idx[w]))
    if gamma is not None:
        lines.append(r'  \draw[dashed] (p%d) -- (p%d);'
                     % (idx[gamma[0]], idx[gamma[1]]))
    lines.append(r'\end{tikzpicture}')
    return '\n'.join(lines)
