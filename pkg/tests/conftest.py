"""Shared helpers: random triangular block graphs and random valid modules."""

import random

from fktor.finspace import builtin_space
from fktor.graphk import BlockGraph
from fktor.ntcat import builtin_category
from fktor.ntmod import coker_module, free_module
from fktor.zexact import IntMatrix


def random_block_graph(space_name, rng, max_vertices=3, max_entry=3):
    """Random triangular block graph: edges v -> w only when the target's
    point lies in every open set around the source's point; at least two
    loops at every vertex, so condition (K) and no sinks/sources hold."""
    space = builtin_space(space_name)
    blocks = [(p, rng.randint(1, max_vertices)) for p in space.points]
    n = sum(k for _, k in blocks)
    pt = []
    for p, k in blocks:
        pt.extend([p] * k)
    A = [[0] * n for _ in range(n)]
    for v in range(n):
        for w in range(n):
            if pt[w] in space.min_open(pt[v]):
                A[v][w] = rng.randint(0, max_entry)
        A[v][v] = rng.randint(2, max(2, max_entry))
    return BlockGraph(space, blocks, IntMatrix(A))


_GRAPH_CORPUS = {}
_GRAPH_TOR3 = {}


def graph_corpus(space_name, count=20):
    """A fixed corpus of random triangular graphs per space, shared across
    test modules so Tor reports can be cached."""
    if space_name not in _GRAPH_CORPUS:
        rng = random.Random(2024 + hash(space_name) % 1000)
        _GRAPH_CORPUS[space_name] = [random_block_graph(space_name, rng)
                                     for _ in range(count)]
    return _GRAPH_CORPUS[space_name]


def graph_tor3(space_name, idx):
    """Tor report to degree 3 for the corpus graph, cached."""
    key = (space_name, idx)
    if key not in _GRAPH_TOR3:
        from fktor.graphk import fk_module
        from fktor.ntmod import tor
        G = graph_corpus(space_name)[idx]
        _GRAPH_TOR3[key] = tor(fk_module(G), 3)
    return _GRAPH_TOR3[key]


def random_valid_module(space_name, rng):
    """Random valid left module: a cokernel of a random map of free left
    modules (optionally tensored mod k), which is functorial and hence
    always valid."""
    sc = builtin_category(space_name)
    objs = sc.objects
    kind = rng.random()
    if kind < 0.25:
        return free_module(sc, rng.choice(objs), "left", shift=rng.randint(0, 1))
    n_t = rng.randint(1, 2)
    n_s = rng.randint(1, 2)
    targets = [(rng.choice(objs), rng.randint(0, 1)) for _ in range(n_t)]
    sources = [(rng.choice(objs), rng.randint(0, 1)) for _ in range(n_s)]
    t = sc.table
    mat = []
    for B, eB in targets:
        row = []
        for A, eA in sources:
            parity = (eA + eB) % 2
            basis = t.basis_elements(B, A, parity)
            if not basis or rng.random() < 0.3:
                row.append(None)
            else:
                el = basis[0]
                acc = t.zero(B, A, parity)
                for b in basis:
                    acc = t.add(acc, t.scale(b, rng.randint(-2, 2)))
                row.append(acc)
        mat.append(row)
    M = coker_module(sc, targets, sources, mat)
    if kind > 0.8:
        M = M.tensor_mod_k(rng.choice([2, 3, 4]))
    return M
