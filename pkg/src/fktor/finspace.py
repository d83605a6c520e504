"""Finite topological spaces and their locally closed subsets.

Spaces are stored by their full open-set family; the specialization
preorder, connectivity and locally closed subsets are all derived from it.
Subsets are rendered as sorted label concatenations ("124"), matching the
usual notation for these spaces.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, Iterable, Optional, Sequence


class SpaceError(Exception):
    pass


Subset = FrozenSet[str]


def label(points: Iterable[str]) -> str:
    return "".join(sorted(points))


class FiniteSpace:
    """A finite topological space given by its open sets."""

    def __init__(self, points: Sequence[str], opens: Iterable[Iterable[str]],
                 name: Optional[str] = None):
        self.points = tuple(sorted(points))
        pset = frozenset(self.points)
        fam = {frozenset(o) for o in opens}
        for o in fam:
            if not o <= pset:
                raise SpaceError(f"open set {sorted(o)} not contained in the point set")
        if frozenset() not in fam or pset not in fam:
            raise SpaceError("opens must contain the empty set and the full space")
        for a, b in combinations(fam, 2):
            if a | b not in fam:
                raise SpaceError(f"opens not closed under union: {label(a)} | {label(b)}")
            if a & b not in fam:
                raise SpaceError(f"opens not closed under intersection: {label(a)} & {label(b)}")
        self.opens = frozenset(fam)
        self.name = name
        self._min_open = {p: frozenset.intersection(*[o for o in fam if p in o])
                          for p in self.points}

    # -- basic structure ---------------------------------------------------

    def min_open(self, p: str) -> Subset:
        return self._min_open[p]

    def is_t0(self) -> bool:
        return len({self._min_open[p] for p in self.points}) == len(self.points)

    def specializes(self, x: str, y: str) -> bool:
        """True iff every open set containing x also contains y."""
        return y in self._min_open[x]

    def closure(self, s: Iterable[str]) -> Subset:
        ss = frozenset(s)
        return frozenset(p for p in self.points if self._min_open[p] & ss)

    # -- relative topology ---------------------------------------------------

    def is_open_in(self, a: Iterable[str], y: Iterable[str]) -> bool:
        """a is relatively open in y (both subsets of the space)."""
        aa, yy = frozenset(a), frozenset(y)
        if not aa <= yy:
            return False
        return all(self._min_open[p] & yy <= aa for p in aa)

    def is_closed_in(self, a: Iterable[str], y: Iterable[str]) -> bool:
        aa, yy = frozenset(a), frozenset(y)
        return aa <= yy and self.is_open_in(yy - aa, yy)

    def relative_opens(self, y: Iterable[str]) -> list:
        yy = frozenset(y)
        return sorted({o & yy for o in self.opens}, key=lambda s: (len(s), label(s)))

    def is_locally_closed(self, s: Iterable[str]) -> bool:
        ss = frozenset(s)
        return self.is_open_in(ss, self.closure(ss))

    def components(self, s: Iterable[str]) -> list:
        """Connected components of the subspace s, from its induced topology."""
        ss = sorted(frozenset(s))
        if not ss:
            return []
        parent = {p: p for p in ss}

        def find(p):
            while parent[p] != p:
                parent[p] = parent[parent[p]]
                p = parent[p]
            return p

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        sset = frozenset(ss)
        for p in ss:
            for q in self._min_open[p] & sset:
                union(p, q)
        groups = {}
        for p in ss:
            groups.setdefault(find(p), []).append(p)
        return sorted((frozenset(g) for g in groups.values()),
                      key=lambda c: label(c))

    def is_connected(self, s: Iterable[str]) -> bool:
        return len(self.components(s)) == 1

    def __repr__(self):
        nm = self.name or "space"
        return f"FiniteSpace({nm}, points={''.join(self.points)})"


@dataclass(frozen=True)
class LCSubset:
    """A locally closed subset with an open-pair witness Y = U \\ V, V ⊆ U."""
    value: Subset
    witness_u: Subset
    witness_v: Subset

    def __post_init__(self):
        if not self.witness_v <= self.witness_u:
            raise SpaceError("witness must satisfy V ⊆ U")
        if self.witness_u - self.witness_v != self.value:
            raise SpaceError("witness does not reproduce the subset")

    @property
    def label(self) -> str:
        return label(self.value)


def lc_subsets(X: FiniteSpace, connected_only: bool = False) -> list:
    """All locally closed subsets as differences of open pairs.

    With connected_only, exactly LC(X)*: nonempty and connected in the
    subspace topology.
    """
    seen = {}
    for u in X.opens:
        for v in X.opens:
            if v <= u:
                y = u - v
                if y not in seen:
                    seen[y] = LCSubset(y, u, v)
    out = []
    for y, lc in seen.items():
        if connected_only and (not y or not X.is_connected(y)):
            continue
        out.append(lc)
    return sorted(out, key=lambda lc: (len(lc.value), lc.label))


def open_pairs(X: FiniteSpace, Y: Iterable[str]) -> list:
    """All pairs (U, Y∖U) with U relatively open in the locally closed Y."""
    yy = frozenset(Y)
    if not X.is_locally_closed(yy):
        raise SpaceError(f"{label(yy)} is not locally closed")
    return [(u, yy - u) for u in X.relative_opens(yy)]


# ---------------------------------------------------------------------------
# Specialization order, accordions
# ---------------------------------------------------------------------------

def hasse_edges(X: FiniteSpace) -> list:
    """Cover relations of the specialization partial order (T0 spaces)."""
    if not X.is_t0():
        raise SpaceError("Hasse diagram requires a T0 space")
    lt = {(x, y) for x in X.points for y in X.points
          if x != y and X.specializes(x, y)}
    covers = []
    for (x, y) in lt:
        if not any((x, z) in lt and (z, y) in lt for z in X.points
                   if z not in (x, y)):
            covers.append((x, y))
    return sorted(covers)


def is_accordion_union(X: FiniteSpace) -> bool:
    """True iff every connected component's Hasse diagram is a simple path."""
    edges = hasse_edges(X)
    adj = {p: set() for p in X.points}
    for x, y in edges:
        adj[x].add(y)
        adj[y].add(x)
    for comp in X.components(X.points):
        nodes = sorted(comp)
        deg = {p: len(adj[p] & comp) for p in nodes}
        ecount = sum(deg.values()) // 2
        if any(d > 2 for d in deg.values()):
            return False
        # connected (by construction of components) with max degree 2:
        # a path iff it is acyclic iff |E| = |V| - 1
        if ecount != len(nodes) - 1:
            return False
    return True


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def z_space(m: int) -> FiniteSpace:
    """(m+1) points 1..m+1; a set is open iff it contains m+1 or is empty."""
    if m < 1:
        raise SpaceError("z_space needs m >= 1")
    points = [str(i) for i in range(1, m + 2)]
    top = str(m + 1)
    rest = [str(i) for i in range(1, m + 1)]
    opens = [frozenset()]
    for k in range(m + 1):
        for sub in combinations(rest, k):
            opens.append(frozenset(sub) | {top})
    return FiniteSpace(points, opens, name=f"Z{m}")


def s_space() -> FiniteSpace:
    opens = [set(), {"4"}, {"2", "4"}, {"3", "4"}, {"2", "3", "4"},
             {"1", "2", "3", "4"}]
    return FiniteSpace(["1", "2", "3", "4"], opens, name="S")


def pseudocircle() -> FiniteSpace:
    # partial order 1<3, 1<4, 2<3, 2<4; opens are the up-sets
    opens = [set(), {"3"}, {"4"}, {"3", "4"}, {"1", "3", "4"},
             {"2", "3", "4"}, {"1", "2", "3", "4"}]
    return FiniteSpace(["1", "2", "3", "4"], opens, name="C2")


def point_space() -> FiniteSpace:
    return FiniteSpace(["1"], [set(), {"1"}], name="pt")


BUILTIN_NAMES = ("Z1", "Z2", "Z3", "Z4", "S", "C2", "pt")


def builtin_space(name: str) -> FiniteSpace:
    if name.startswith("Z") and name[1:].isdigit():
        return z_space(int(name[1:]))
    if name == "S":
        return s_space()
    if name == "C2":
        return pseudocircle()
    if name == "pt":
        return point_space()
    raise SpaceError(f"unknown builtin space {name!r}")


def space_from_json(data) -> FiniteSpace:
    if isinstance(data, str):
        data = json.loads(data)
    if isinstance(data, dict) and "builtin" in data:
        return builtin_space(data["builtin"])
    return FiniteSpace(data["points"], [frozenset(o) for o in data["opens"]],
                       name=data.get("name"))


def space_to_json(X: FiniteSpace) -> dict:
    return {
        "points": list(X.points),
        "opens": [sorted(o) for o in sorted(X.opens, key=lambda s: (len(s), label(s)))],
        **({"name": X.name} if X.name else {}),
    }
