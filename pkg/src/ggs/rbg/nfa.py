"""Thompson construction and epsilon elimination for rule patterns.

Edge labels are small tuples:
  ("eps",)
  ("shift", direction_index)
  ("on", frozenset of piece ids)
  ("set", piece_id)
  ("assign", ((var_name, value), ...))
  ("switch", player_index)   -- pass control
  ("keep",)                  -- end of semi-move, same mover
  ("check", positive, sub_nfa, pure)
"""

from __future__ import annotations

from dataclasses import dataclass

from . import ast

EPS = ("eps",)


@dataclass
class Nfa:
    edges: list  # edges[node] = list of (label, target)
    start: int
    accept: int
    # Nodes from which the accept node is epsilon-reachable; filled by
    # eliminate_epsilon (before that, only the accept node itself).
    accepting: frozenset = frozenset()

    @property
    def node_count(self) -> int:
        return len(self.edges)


class _Builder:
    def __init__(self, resolver):
        self.edges: list[list] = []
        self.resolve = resolver

    def node(self) -> int:
        self.edges.append([])
        return len(self.edges) - 1

    def edge(self, a: int, label, b: int):
        self.edges[a].append((label, b))

    def build(self, pat: ast.Pattern) -> tuple[int, int]:
        if isinstance(pat, ast.Concat):
            start, acc = self.build(pat.parts[0])
            for part in pat.parts[1:]:
                s2, a2 = self.build(part)
                self.edge(acc, EPS, s2)
                acc = a2
            return start, acc
        if isinstance(pat, ast.Alt):
            s, t = self.node(), self.node()
            for part in pat.parts:
                cs, ca = self.build(part)
                self.edge(s, EPS, cs)
                self.edge(ca, EPS, t)
            return s, t
        if isinstance(pat, ast.Star):
            s, t = self.node(), self.node()
            cs, ca = self.build(pat.child)
            self.edge(s, EPS, cs)
            self.edge(s, EPS, t)
            self.edge(ca, EPS, cs)
            self.edge(ca, EPS, t)
            return s, t
        # leaves
        s, t = self.node(), self.node()
        self.edge(s, self.resolve(pat), t)
        return s, t


def build_nfa(pattern: ast.Pattern, context) -> Nfa:
    """Thompson automaton over a macro-free pattern.

    ``context`` supplies name resolution: direction_index(name),
    piece_id(name), player_index(name).
    """

    def resolve(pat: ast.Pattern):
        if isinstance(pat, ast.Name):
            return ("shift", context.direction_index(pat.name))
        if isinstance(pat, ast.Shift):
            return ("shift", pat.direction)
        if isinstance(pat, ast.On):
            return ("on", frozenset(context.piece_id(n) for n in pat.names))
        if isinstance(pat, ast.SetHere):
            return ("set", context.piece_id(pat.name))
        if isinstance(pat, ast.AssignVars):
            return ("assign", tuple(pat.assigns))
        if isinstance(pat, ast.SwitchTo):
            return ("switch", context.player_index(pat.name))
        if isinstance(pat, ast.SwitchKeep):
            return ("keep",)
        if isinstance(pat, ast.Check):
            sub = build_nfa(pat.child, context)
            return ("check", pat.positive, sub, not ast.contains_mutation(pat.child))
        raise TypeError(f"cannot build NFA from {pat!r}")

    builder = _Builder(resolve)
    start, accept = builder.build(pattern)
    return Nfa(builder.edges, start, accept, frozenset([accept]))


def _eps_closure(nfa: Nfa, node: int) -> set[int]:
    seen = {node}
    stack = [node]
    while stack:
        for label, target in nfa.edges[stack.pop()]:
            if label is EPS or label == EPS:
                if target not in seen:
                    seen.add(target)
                    stack.append(target)
    return seen


def eliminate_epsilon(nfa: Nfa) -> Nfa:
    """Equivalent automaton with no epsilon edges (same node ids).

    Lookahead sub-automata are eliminated recursively.  Acceptance becomes
    a node set: every node whose closure contained the accept node.
    """
    closures = [_eps_closure(nfa, n) for n in range(nfa.node_count)]
    accepting = frozenset(
        n for n in range(nfa.node_count) if nfa.accept in closures[n]
    )
    sub_cache: dict[int, Nfa] = {}

    def convert(label):
        if label[0] != "check":
            return label
        sub = label[2]
        if id(sub) not in sub_cache:
            sub_cache[id(sub)] = eliminate_epsilon(sub)
        return ("check", label[1], sub_cache[id(sub)], label[3])

    new_edges: list[list] = []
    for n in range(nfa.node_count):
        out = []
        seen = set()
        for m in closures[n]:
            for label, target in nfa.edges[m]:
                if label == EPS:
                    continue
                key = (label[0], label[1] if len(label) > 1 else None,
                       id(label[2]) if label[0] == "check" else None, target)
                if key not in seen:
                    seen.add(key)
                    out.append((convert(label), target))
        new_edges.append(out)
    return Nfa(new_edges, nfa.start, nfa.accept, accepting)
