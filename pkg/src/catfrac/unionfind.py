"""Disjoint-set forest over dense integer indices."""

from __future__ import annotations


class DisjointSet:
    """Union by rank with path compression."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> bool:
        ri, rj = self.find(i), self.find(j)
        if ri == rj:
            return False
        if self.rank[ri] < self.rank[rj]:
            ri, rj = rj, ri
        self.parent[rj] = ri
        if self.rank[ri] == self.rank[rj]:
            self.rank[ri] += 1
        return True

    def groups(self) -> list[list[int]]:
        """Classes as sorted member lists, ordered by smallest member."""
        acc: dict[int, list[int]] = {}
        for i in range(len(self.parent)):
            acc.setdefault(self.find(i), []).append(i)
        return sorted((sorted(g) for g in acc.values()), key=lambda g: g[0])
