"""Graphviz DOT rendering of models."""

from __future__ import annotations

from .models import KripkeModel, Model, bits


def _quote(s: str) -> str:
    return '"{}"'.format(s.replace("\\", "\\\\").replace('"', r"\""))


def _label(m: Model, i: int) -> str:
    true = [a for a, mask in sorted(m.val.items()) if mask >> i & 1]
    return f"{m.states[i]} {{{', '.join(true)}}}"


def to_dot(m: Model, name: str = "model") -> str:
    """DOT digraph for a model.

    Kripke models become plain state graphs. Neighborhood models become
    bipartite graphs: each distinct neighborhood is a box node, with a solid
    edge from every state owning it and dashed edges to its members.
    """
    lines = [f"digraph {_quote(name)} {{"]
    for i, s in enumerate(m.states):
        lines.append(f"  {_quote(s)} [shape=ellipse, label={_quote(_label(m, i))}];")
    if isinstance(m, KripkeModel):
        for i, s in enumerate(m.states):
            for j in bits(m.succ[i]):
                lines.append(f"  {_quote(s)} -> {_quote(m.states[j])};")
    else:
        ids: dict[int, str] = {}
        for i in range(m.n):
            for x in m.family(i):
                if x not in ids:
                    node = f"N{len(ids)}"
                    ids[x] = node
                    members = ",".join(m.names_of(x))
                    lines.append(f"  {node} [shape=box, label={_quote('{' + members + '}')}];")
                    for t in m.names_of(x):
                        lines.append(f"  {node} -> {_quote(t)} [style=dashed];")
                lines.append(f"  {_quote(m.states[i])} -> {ids[x]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
