"""JSON schemas: context input, graph dumps, matching listings.

The context schema is
``{"vertices": [int], "edges": [[int, int]], "nested_collection": [[int]]}``;
validation failures render as a machine-readable list of violation records.
"""

import json

from .trees import ClusterContext, Tree, validate_nested_collection


def context_to_json(ctx):
    return {
        'vertices': sorted(ctx.tree.vertices),
        'edges': sorted(sorted(e) for e in ctx.tree.edges),
        'nested_collection': sorted((sorted(s) for s in ctx.collection),
                                    key=lambda s: (len(s), s)),
    }


def tree_from_json(data):
    return Tree(data['vertices'], [tuple(e) for e in data['edges']])


def context_from_json(data):
    tree = tree_from_json(data)
    return ClusterContext(tree, [frozenset(s)
                                 for s in data['nested_collection']])


def validation_to_json(tree, family):
    report = validate_nested_collection(tree, family)
    return report.to_json()


def graph_to_json(graph):
    return {
        'owner_set': sorted(graph.owner),
        'nodes': [{'id': n.id, 'label': n.label,
                   'valence': [n.a, n.b],
                   'v_opt': n.is_v_opt, 'v_fix': n.is_v_fix}
                  for n in sorted(graph.nodes.values(), key=lambda n: n.id)],
        'edges': [{'id': e.id, 'nodes': list(e.nodes),
                   'weight_set': sorted(e.wset) if e.wset is not None else None,
                   'squared': e.squared, 'kind': e.kind,
                   'origin': e.origin}
                  for e in sorted(graph.edges.values(), key=lambda e: e.id)],
        'diagonals': [{'id': d.id, 'nodes': list(d.nodes),
                       'label': sorted(d.label)}
                      for d in sorted(graph.diagonals.values(),
                                      key=lambda d: d.id)],
    }


def matchings_to_json(graph, matching_list):
    from .matchings import weight
    return [{'edges': list(p), 'weight': str(weight(graph, p, check=False))}
            for p in matching_list]


def dumps(payload):
    return json.dumps(payload, indent=2, sort_keys=True)
