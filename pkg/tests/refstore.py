"""Naive reference model for the value-tree store.

Built from plain nested lists and dicts (a node is a two-slot list of
scalar and child table) with its own alias expansion that detects cycles
by depth rather than by name tracking. Kept deliberately independent of
joliet.valuetree so randomized scripts can arbitrate between the two.
"""

from __future__ import annotations

# path atom: (name, index_or_None); index may be any int, negatives fault


class RefError(Exception):
    def __init__(self, kind: str) -> None:
        super().__init__(kind)
        self.kind = kind


def _new_node() -> list:
    return [None, {}]


class RefStore:
    def __init__(self) -> None:
        self.roots: dict[str, list] = {}
        self.aliases: dict[str, list] = {}

    def bind_alias(self, name: str, target: list) -> None:
        self.aliases[name] = list(target)

    def resolve(self, path: list, depth: int = 0) -> list:
        if depth > len(self.aliases) + 1:
            raise RefError("AliasCycle")
        name, index = path[0]
        if name in self.aliases:
            steps = self.resolve(self.aliases[name], depth + 1)
            if index is not None:
                steps = steps[:-1] + [(steps[-1][0], self._check(index))]
        else:
            steps = [(name, 0 if index is None else self._check(index))]
        for seg_name, seg_index in path[1:]:
            steps.append((seg_name,
                          0 if seg_index is None else self._check(seg_index)))
        return steps

    @staticmethod
    def _check(index: int) -> int:
        if index < 0:
            raise RefError("NegativeIndex")
        return index

    def write(self, path: list, value) -> None:
        steps = self.resolve(path)
        name, index = steps[0]
        nodes = self.roots.setdefault(name, [])
        while len(nodes) <= index:
            nodes.append(_new_node())
        node = nodes[index]
        for seg_name, seg_index in steps[1:]:
            nodes = node[1].setdefault(seg_name, [])
            while len(nodes) <= seg_index:
                nodes.append(_new_node())
            node = nodes[seg_index]
        node[0] = value

    def _node_at(self, steps: list):
        node = None
        for i, (name, index) in enumerate(steps):
            table = self.roots if i == 0 else (node[1] if node else {})
            nodes = table.get(name)
            if nodes is None or index >= len(nodes):
                return None
            node = nodes[index]
        return node

    def read(self, path: list):
        node = self._node_at(self.resolve(path))
        if node is None:
            raise RefError("MissingNode")
        if node[0] is None:
            raise RefError("UndefinedValue")
        return node[0]

    def count(self, path: list) -> int:
        steps = self.resolve(path)
        name, _ = steps[-1]
        if len(steps) == 1:
            return len(self.roots.get(name, ()))
        parent = self._node_at(steps[:-1])
        if parent is None:
            return 0
        return len(parent[1].get(name, ()))
