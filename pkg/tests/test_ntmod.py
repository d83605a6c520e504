import random

import pytest

from conftest import random_block_graph, random_valid_module

from fktor.graphk import fk_module
from fktor.ntcat import builtin_category
from fktor.ntmod import (
    CatalogueError, GradedModule, builtin_resolution, check_exact,
    coker_module, free_module, left_complex_underlying, m_ss,
    projective_dimension, rational_tor, resolve_simple, tor, tor_single,
    validate, validate_resolution,
)
from fktor.zexact import (AbGroupNF, GradedGroup, GradedHom, Presentation,
                          graded_direct_sum, shift)


def cat(name):
    return builtin_category(name)


def z4_module():
    """The exact module of projective dimension 2 over the five-point space,
    as the cokernel of its defining two-step presentation."""
    sc = cat("Z4")
    D = sc.designator
    f = frozenset

    def inc_el(a, b, sign=1):
        el = sc.table.eval_combo(a, D.inc(f(a), f(b)))
        return sc.table.scale(el, sign) if sign != 1 else el

    co = ["2345", "1345", "1245", "1235"]
    pairs = ["345", "245", "145", "235", "135", "125"]
    signs = [[1, -1, 0, 1, 0, 0], [-1, 0, 1, 0, -1, 0],
             [0, 1, -1, 0, 0, 1], [0, 0, 0, -1, 1, -1]]
    mat = [[(inc_el(pairs[i], co[j], signs[j][i]) if signs[j][i] else None)
            for j in range(4)] for i in range(6)]
    return sc, coker_module(sc, [(p, 0) for p in pairs], [(c, 0) for c in co], mat)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["Z3", "S", "C2"])
def test_free_modules_validate_and_are_exact(name):
    sc = cat(name)
    for Y in sc.objects:
        for side in ("left", "right"):
            M = free_module(sc, Y, side)
            assert validate(M).ok
            assert check_exact(M).ok


def test_validate_reports_broken_action():
    from fktor.zexact import GroupHom
    sc = cat("Z3")
    M = free_module(sc, "1234", "left")
    # deliberately rescale one delta action; the sum relation must now fail
    h = M.actions["d:1>4"]
    M.actions["d:1>4"] = GradedHom(
        h.degree,
        GroupHom(h.from_even.source, h.from_even.target,
                 h.from_even.matrix.scale(3)),
        GroupHom(h.from_odd.source, h.from_odd.target,
                 h.from_odd.matrix.scale(3)))
    rep = validate(M)
    assert not rep.ok
    assert any("relation" in p for p in rep.problems)


def test_fk_module_validates():
    rng = random.Random(11)
    G = random_block_graph("Z3", rng)
    assert validate(fk_module(G)).ok


def test_check_exact_flags_constructed_failure():
    # module with M(U) = Z and everything else 0 cannot be exact
    sc = cat("Z1")
    entries = {o: GradedGroup(Presentation.zero(), Presentation.zero())
               for o in sc.objects}
    entries["2"] = GradedGroup(Presentation.free(1), Presentation.zero())
    actions = {}
    for name, a in sc.presentation.arrows.items():
        actions[name] = GradedHom.zero(a.parity, entries[a.src], entries[a.dst])
    M = GradedModule(sc, "left", entries, actions)
    assert validate(M).ok
    rep = check_exact(M)
    assert not rep.ok


# ---------------------------------------------------------------------------
# m_ss
# ---------------------------------------------------------------------------

def test_m_ss_of_free_left_module_concentrated_at_Y():
    sc = cat("Z3")
    for Y in ("4", "14", "1234"):
        P = free_module(sc, Y, "left")
        ss = m_ss(P)
        for obj, g in ss.items():
            ev, od = g.even.normal_form(), g.odd.normal_form()
            if obj == Y:
                assert ev == AbGroupNF(1, ()) and od.is_trivial()
            else:
                assert ev.is_trivial() and od.is_trivial()


def test_m_ss_of_free_right_module():
    sc = cat("C2")
    Q = free_module(sc, "134", "right")
    ss = m_ss(Q)
    assert ss["134"].even.normal_form() == AbGroupNF(1, ())
    assert all(g.even.normal_form().is_trivial() for o, g in ss.items() if o != "134")


def simple_right_module(sc, Y):
    entries = {o: GradedGroup(Presentation.free(1 if o == Y else 0),
                              Presentation.zero()) for o in sc.objects}
    actions = {}
    for name, a in sc.presentation.arrows.items():
        actions[name] = GradedHom.zero(a.parity, entries[a.dst], entries[a.src])
    return GradedModule(sc, "right", entries, actions)


def test_simple_module_validates_and_m_ss_is_Z_at_Y():
    sc = cat("Z3")
    S = simple_right_module(sc, "14")
    assert validate(S).ok
    ss = m_ss(S)
    for obj, g in ss.items():
        want = AbGroupNF(1, ()) if obj == "14" else AbGroupNF(0, ())
        assert g.even.normal_form() == want
        assert g.odd.normal_form().is_trivial()


# ---------------------------------------------------------------------------
# Resolutions
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["Z3", "S", "C2"])
def test_builtin_resolutions_validate(name):
    sc = cat(name)
    for Y in sc.objects:
        res = builtin_resolution(name, Y)
        if res.periodic is not None:
            # the marker is only kept when the wrap differential validates
            probs = validate_resolution(res, len(res.levels))
            assert not probs, (Y, probs[:2])
        else:
            probs = validate_resolution(res, len(res.levels) - 1)
            assert not probs, (Y, probs[:2])


def test_z3_periodic_markers_survive_validation():
    for Y in cat("Z3").objects:
        assert builtin_resolution("Z3", Y).periodic is not None


def test_z3_resolution_shapes():
    res = builtin_resolution("Z3", "14")
    assert res.levels[0] == [("14", 0)]
    assert res.levels[1] == [("4", 0)]
    assert res.levels[2] == [("1", 1)]
    res = builtin_resolution("Z3", "1234")
    assert res.levels[1] == [("124", 0), ("134", 0), ("234", 0)]
    assert res.levels[2] == [("14", 0), ("24", 0), ("34", 0)]
    assert res.levels[3] == [("4", 0), ("1234", 1)]
    assert res.periodic == (1, 3)


def test_z4_resolution_shape():
    res = builtin_resolution("Z4", "12345")
    assert res.levels[3] == [("15", 0), ("25", 0), ("35", 0), ("45", 0),
                             ("12345", 1)]
    assert sorted(res.levels[4]) == sorted(
        [("5", 0), ("2345", 1), ("1345", 1), ("1245", 1), ("1235", 1)])
    assert sorted(res.levels[5]) == sorted(
        [(p, 1) for p in ("345", "245", "145", "235", "135", "125")])


def test_missing_catalogue_entry():
    with pytest.raises(CatalogueError):
        builtin_resolution("Z4", "12")


def test_generic_engine_one_point_space():
    sc = cat("pt")
    res = resolve_simple(sc, "1", 3)
    # Q_1 is already the whole story: all higher levels empty
    assert res.levels[1] == []
    assert res.levels[2] == []


@pytest.mark.parametrize("Y", ["1", "4", "14", "124", "1234"])
def test_generic_engine_resolutions_are_valid_z3(Y):
    sc = cat("Z3")
    res = resolve_simple(sc, Y, 4)
    assert not validate_resolution(res, 4)


def test_generic_engine_valid_on_s_and_c2():
    for name in ("S", "C2"):
        sc = cat(name)
        for Y in (sc.objects[0], sc.objects[-1]):
            res = resolve_simple(sc, Y, 3)
            assert not validate_resolution(res, 3)


def test_generic_engine_on_accordion_spaces():
    for name in ("Z1", "Z2"):
        sc = cat(name)
        for Y in sc.objects:
            res = resolve_simple(sc, Y, 3)
            assert not validate_resolution(res, 3)


# ---------------------------------------------------------------------------
# Tor
# ---------------------------------------------------------------------------

def test_tor_of_free_module_vanishes_positive_degrees():
    sc = cat("Z3")
    P = free_module(sc, "124", "left")
    rep = tor(P, 2)
    for n in (1, 2):
        assert rep.is_zero(n), rep.aggregate(n)


@pytest.mark.parametrize("name,count", [("Z3", 50), ("S", 15), ("C2", 15)])
def test_tor0_equals_m_ss_on_random_modules(name, count):
    rng = random.Random(23)
    for _ in range(count):
        M = random_valid_module(name, rng)
        rep = tor(M, 0)
        ss = m_ss(M)
        agg = graded_direct_sum([g for g in ss.values()])
        assert rep.aggregate(0)[0] == agg.even.normal_form()
        assert rep.aggregate(0)[1] == agg.odd.normal_form()


def test_tor1_z3_equals_three_term_complex_on_graph_modules():
    # aggregate Tor_1 equals the homology of the classical three-term complex
    rng = random.Random(5)
    sc = cat("Z3")
    for _ in range(6):
        G = random_block_graph("Z3", rng)
        M = fk_module(G)
        rep = tor(M, 1)
        from fktor.graphk import z3_fast_tor1
        fast = z3_fast_tor1(G)
        assert rep.aggregate(1) == (fast.group_even, fast.group_odd)


def test_engine_agreement_z3_random_modules():
    rng = random.Random(42)
    sc = cat("Z3")
    for _ in range(10):
        M = random_valid_module("Z3", rng)
        rb = tor(M, 2, engine="builtin")
        rg = tor(M, 2, engine="generic")
        for Y in sc.objects:
            for n in range(3):
                assert rb.groups[Y][n] == rg.groups[Y][n], (Y, n)


def test_engine_agreement_c2_random_modules():
    rng = random.Random(43)
    sc = cat("C2")
    for _ in range(4):
        M = random_valid_module("C2", rng)
        rb = tor(M, 2, engine="builtin")
        rg = tor(M, 2, engine="generic")
        for Y in sc.objects:
            for n in range(3):
                assert rb.groups[Y][n] == rg.groups[Y][n], (Y, n)


def test_engine_agreement_z4_catalogued_object():
    sc, M = z4_module()
    res_b = builtin_resolution("Z4", "12345")
    res_g = resolve_simple(sc, "12345", 4)
    for n in range(4):
        assert tor_single(res_b, M, n) == tor_single(res_g, M, n), n


def test_sign_robustness_delta_negation():
    # negating every odd-parity generator action gives an isomorphic module
    rng = random.Random(9)
    G = random_block_graph("Z3", rng)
    M = fk_module(G)
    flipped_actions = {}
    for name, h in M.actions.items():
        a = M.category.presentation.arrows[name]
        flipped_actions[name] = -h if a.parity == 1 else h
    M2 = GradedModule(M.category, "left", M.entries, flipped_actions)
    assert validate(M2).ok
    r1, r2 = tor(M, 2), tor(M2, 2)
    for Y in M.category.objects:
        for n in range(3):
            assert r1.groups[Y][n] == r2.groups[Y][n]


# ---------------------------------------------------------------------------
# The five-point module of projective dimension 2, and its mod-k twists
# ---------------------------------------------------------------------------

def test_z4_module_entries_and_exactness():
    sc, M = z4_module()
    assert validate(M).ok
    agg1 = graded_direct_sum([M.entries[l + "5"] for l in "1234"]
                             + [shift(M.entries["12345"])])
    assert agg1.even.normal_form().is_trivial()
    assert agg1.odd.normal_form() == AbGroupNF(3, ())
    agg2 = graded_direct_sum([M.entries[p] for p in
                              ("345", "245", "145", "235", "135", "125")])
    assert agg2.even.normal_form() == AbGroupNF(6, ())
    assert agg2.odd.normal_form().is_trivial()
    agg3 = graded_direct_sum([M.entries["5"]] +
                             [shift(M.entries[c]) for c in
                              ("2345", "1345", "1245", "1235")])
    assert agg3.odd.normal_form() == AbGroupNF(9, ())
    assert agg3.even.normal_form().is_trivial()
    assert check_exact(M).ok


def test_z4_tor2_and_projective_dimensions():
    sc, M = z4_module()
    res = builtin_resolution("Z4", "12345")
    ev, od = tor_single(res, M, 2)
    assert ev == AbGroupNF(1, ()) and od.is_trivial()
    assert projective_dimension(M, 4) == 2
    M3 = M.tensor_mod_k(3)
    ev, od = tor_single(res, M3, 2)
    assert ev == AbGroupNF(0, (3,)) and od.is_trivial()
    assert projective_dimension(M3, 4) == 3


def test_z4_mod_k_length3_resolution_is_valid():
    # 0 -> P5 -> P5 + P4 -> P4 + P3 -> P3 ->> M_k, with k = 2
    sc, M = z4_module()
    k = 2
    t = sc.table
    D = sc.designator
    f = frozenset

    def inc_el(a, b, sign=1):
        el = t.eval_combo(a, D.inc(f(a), f(b)))
        return t.scale(el, sign) if sign != 1 else el

    co = ["2345", "1345", "1245", "1235"]
    pairs = ["345", "245", "145", "235", "135", "125"]
    signs = [[1, -1, 0, 1, 0, 0], [-1, 0, 1, 0, -1, 0],
             [0, 1, -1, 0, 0, 1], [0, 0, 0, -1, 1, -1]]
    P5 = [("12345", 0)]
    P4 = [(c, 0) for c in co]
    P3 = [(p, 0) for p in pairs]
    alpha = [[inc_el(c, "12345")] for c in co]           # P5 -> P4
    beta = [[(inc_el(pairs[i], co[j], signs[j][i]) if signs[j][i] else None)
             for j in range(4)] for i in range(6)]       # P4 -> P3
    ident = lambda obj: t.identity(obj)
    kmul = lambda obj: t.scale(t.identity(obj), k)

    levels = [P3, [(c, 0) for c in co] + P3, P5 + P4, P5]
    d1 = [[(beta[i][j] if j < 4 else (kmul(pairs[i]) if pairs[i] == levels[0][i][0] and j - 4 == i else None))
           for j in range(4 + 6)] for i in range(6)]
    # d1 = (beta  k): block columns P4 then P3
    d1 = [[beta[i][j] for j in range(4)] +
          [kmul(pairs[i]) if jj == i else None for jj in range(6)]
          for i in range(6)]
    # d2 = (alpha  -k ; 0  beta): rows P4 then P3, cols P5 then P4
    d2_top = [[alpha[i][0]] + [t.scale(ident(co[i]), -k) if jj == i else None
                               for jj in range(4)] for i in range(4)]
    d2_bot = [[None] + [beta[i][j] for j in range(4)] for i in range(6)]
    d2 = d2_top + d2_bot
    # d3 = (k ; alpha): rows P5 then P4, cols P5
    d3 = [[kmul("12345")]] + [[alpha[i][0]] for i in range(4)]
    diffs = [d1, d2, d3]
    Mk = M.tensor_mod_k(k)
    # d∘d = 0 and exactness on underlying groups at every object and parity,
    # including injectivity at the left end and coker = M_k at the right
    for W in sc.objects:
        for parity in (0, 1):
            mats = left_complex_underlying(sc, levels, diffs, W, parity)
            from fktor.zexact import kernel, GroupHom, subquotient_homology
            for a, b in zip(mats, mats[1:]):
                assert (a * b).is_zero()
            # left end injective
            assert kernel(mats[-1]).cols == 0
            # exact at interior nodes
            for i in range(len(mats) - 1):
                A = Presentation.free(mats[i + 1].cols)
                B = Presentation.free(mats[i + 1].rows)
                C = Presentation.free(mats[i].rows)
                h = subquotient_homology(GroupHom(A, B, mats[i + 1]),
                                         GroupHom(B, C, mats[i]))
                assert h.group.is_trivial(), (W, parity, i)
            # cokernel of d1 is M_k(W)
            cok = Presentation(mats[0].rows, mats[0])
            assert cok.normal_form() == Mk.entries[W].part(parity).normal_form()


# ---------------------------------------------------------------------------
# Rational Tor and the hypothesis gate
# ---------------------------------------------------------------------------

def test_rational_tor_of_torsion_group_is_zero():
    rng = random.Random(3)
    G = random_block_graph("Z3", rng)
    M = fk_module(G)
    ev, od = rational_tor(M, 1)
    rep = tor(M, 1)
    agg = rep.aggregate(1)
    assert (ev, od) == (agg[0].rank, agg[1].rank)


def test_projective_dimension_of_free_module_is_zero():
    sc = cat("Z3")
    P = free_module(sc, "34", "left")
    assert projective_dimension(P, 2) == 0


def test_tensor_mod_k_requires_k_at_least_2():
    sc, M = z4_module()
    with pytest.raises(Exception):
        M.tensor_mod_k(1)


# ---------------------------------------------------------------------------
# Module JSON round trip
# ---------------------------------------------------------------------------

def test_module_json_round_trip():
    rng = random.Random(77)
    G = random_block_graph("Z3", rng)
    M = fk_module(G)
    clone = GradedModule.from_json(M.to_json())
    assert validate(clone).ok
    r1, r2 = tor(M, 1), tor(clone, 1)
    assert r1.aggregate(1) == r2.aggregate(1)


def test_coker_module_trivial_cases():
    sc = cat("Z3")
    t = sc.table
    # cokernel of the identity is the zero module
    M = coker_module(sc, [("14", 0)], [("14", 0)], [[t.identity("14")]])
    assert all(g.even.normal_form().is_trivial() and g.odd.normal_form().is_trivial()
               for g in M.entries.values())
    # cokernel of a zero map is the free target
    M2 = coker_module(sc, [("14", 0)], [("4", 0)], [[None]])
    P = free_module(sc, "14", "left")
    for obj in sc.objects:
        assert M2.entries[obj].even.normal_form() == P.entries[obj].even.normal_form()
        assert M2.entries[obj].odd.normal_form() == P.entries[obj].odd.normal_form()
