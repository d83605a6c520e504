from itertools import combinations

import pytest

from fktor.finspace import (
    FiniteSpace, SpaceError, builtin_space, hasse_edges, is_accordion_union,
    label, lc_subsets, open_pairs, point_space, pseudocircle, s_space,
    space_from_json, space_to_json, z_space,
)


def labels(lcs):
    return [lc.label for lc in lcs]


# ---------------------------------------------------------------------------
# Builders and validation
# ---------------------------------------------------------------------------

def test_z3_opens():
    X = z_space(3)
    assert len(X.points) == 4
    for o in X.opens:
        assert not o or "4" in o
    assert len(X.opens) == 9  # all sets containing 4, plus empty


def test_s_space_opens():
    X = s_space()
    expected = {frozenset(), frozenset("4"), frozenset("24"), frozenset("34"),
                frozenset("234"), frozenset("1234")}
    assert X.opens == expected


def test_point_space():
    X = point_space()
    assert X.opens == {frozenset(), frozenset({"1"})}


def test_non_topology_rejected():
    with pytest.raises(SpaceError):
        FiniteSpace(["1", "2", "3"], [set(), {"1"}, {"2"}, {"1", "2", "3"}])


def test_non_t0_accepted_but_flagged():
    X = FiniteSpace(["1", "2"], [set(), {"1", "2"}])
    assert not X.is_t0()
    with pytest.raises(SpaceError):
        hasse_edges(X)


def test_json_round_trip():
    X = pseudocircle()
    Y = space_from_json(space_to_json(X))
    assert Y.opens == X.opens and Y.points == X.points
    assert builtin_space("Z3").opens == z_space(3).opens


# ---------------------------------------------------------------------------
# Locally closed subsets
# ---------------------------------------------------------------------------

def test_lc_star_pseudocircle_reference_list():
    got = set(labels(lc_subsets(pseudocircle(), connected_only=True)))
    assert got == {"3", "4", "134", "234", "1234", "13", "14", "23", "24",
                   "124", "123", "1", "2"}
    assert len(got) == 13


def test_lc_star_z3():
    got = set(labels(lc_subsets(z_space(3), connected_only=True)))
    assert got == {"1", "2", "3", "4", "14", "24", "34", "124", "134", "234",
                   "1234"}


def test_lc_star_s_space():
    got = set(labels(lc_subsets(s_space(), connected_only=True)))
    assert got == {"4", "24", "34", "234", "1234", "123", "12", "13",
                   "1", "2", "3"}


def test_connected_only_is_subset():
    for name in ("Z1", "Z2", "Z3", "S", "C2"):
        X = builtin_space(name)
        every = {lc.value for lc in lc_subsets(X)}
        conn = {lc.value for lc in lc_subsets(X, connected_only=True)}
        assert conn <= every


def brute_force_lc(X):
    """Oracle: S is locally closed iff S = U \\ V for opens V ⊆ U."""
    pts = list(X.points)
    out = set()
    for k in range(len(pts) + 1):
        for sub in combinations(pts, k):
            s = frozenset(sub)
            if any(v <= u and u - v == s for u in X.opens for v in X.opens):
                out.add(s)
    return out


@pytest.mark.parametrize("name", ["Z1", "Z2", "Z3", "Z4", "S", "C2"])
def test_lc_oracle_equivalence(name):
    X = builtin_space(name)
    assert {lc.value for lc in lc_subsets(X)} == brute_force_lc(X)
    for lc in lc_subsets(X):
        assert lc.witness_u - lc.witness_v == lc.value
        assert X.is_locally_closed(lc.value)


def test_witnesses_validate():
    for lc in lc_subsets(s_space(), connected_only=True):
        assert lc.witness_v <= lc.witness_u


# ---------------------------------------------------------------------------
# Open pairs
# ---------------------------------------------------------------------------

def test_open_pairs_singleton_trivial():
    X = z_space(3)
    pairs = open_pairs(X, frozenset("4"))
    assert pairs == [(frozenset(), frozenset("4")), (frozenset("4"), frozenset())]


def test_open_pairs_full_z3():
    X = z_space(3)
    us = {label(u) for u, _ in open_pairs(X, frozenset("1234"))}
    assert {"4", "14", "24", "34", "124", "134", "234"} <= us


def test_open_pairs_s_space_234():
    X = s_space()
    us = {label(u) for u, _ in open_pairs(X, frozenset("234"))}
    assert {"4", "24", "34"} <= us


def test_open_pairs_requires_locally_closed():
    with pytest.raises(SpaceError):
        open_pairs(s_space(), frozenset("14"))


# ---------------------------------------------------------------------------
# Accordions
# ---------------------------------------------------------------------------

def test_accordion_verdicts():
    assert is_accordion_union(z_space(1))
    assert is_accordion_union(z_space(2))  # path 1-3-2
    assert not is_accordion_union(z_space(3))  # star with 3 leaves
    assert not is_accordion_union(pseudocircle())  # 4-cycle
    assert not is_accordion_union(s_space())
    assert is_accordion_union(point_space())


def all_t0_spaces_on(points):
    """Enumerate all T0 topologies on a small point set (as up-set families
    of all partial orders, via reflexive transitive antisymmetric relations).
    Brute force over all relations is too big; use all DAGs on <=3 points."""
    n = len(points)
    pairs = [(a, b) for a in points for b in points if a != b]
    for mask in range(2 ** len(pairs)):
        rel = {pairs[i] for i in range(len(pairs)) if mask >> i & 1}
        # transitive closure
        closed = set(rel)
        changed = True
        while changed:
            changed = False
            for (a, b) in list(closed):
                for (c, d) in list(closed):
                    if b == c and (a, d) not in closed:
                        closed.add((a, d))
                        changed = True
        if closed != rel:
            continue  # only transitively closed relations
        if any((a, b) in rel and (b, a) in rel for (a, b) in rel):
            continue  # antisymmetry
        # opens = up-sets
        opens = []
        for k in range(n + 1):
            for sub in combinations(points, k):
                s = set(sub)
                if all(b in s for a in s for (aa, b) in rel if aa == a):
                    opens.append(s)
        yield FiniteSpace(points, opens)


def test_accordion_agrees_with_bruteforce_on_3_point_spaces():
    def brute(X):
        edges = hasse_edges(X)
        adj = {p: set() for p in X.points}
        for x, y in edges:
            adj[x].add(y)
            adj[y].add(x)
        for comp in X.components(X.points):
            nodes = sorted(comp)
            sub = {p: adj[p] & comp for p in nodes}
            m = sum(len(v) for v in sub.values()) // 2
            if m != len(nodes) - 1 or any(len(v) > 2 for v in sub.values()):
                return False
        return True

    count = 0
    for X in all_t0_spaces_on(("a", "b", "c")):
        assert is_accordion_union(X) == brute(X)
        count += 1
    assert count > 5


# ---------------------------------------------------------------------------
# Connectivity details
# ---------------------------------------------------------------------------

def test_components_of_discrete_subspace():
    X = z_space(3)
    comps = X.components(frozenset("123"))
    assert [label(c) for c in comps] == ["1", "2", "3"]


def test_s_space_12_connected_23_not():
    X = s_space()
    assert X.is_connected(frozenset("12"))
    assert not X.is_connected(frozenset("23"))


def test_z3_34_connected():
    X = z_space(3)
    assert X.is_connected(frozenset("34"))
