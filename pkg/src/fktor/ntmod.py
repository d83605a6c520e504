"""Modules over the transformation categories: validation, six-term
exactness, free resolutions of the simple right-modules, Tor groups and the
projective-dimension classifier.

A graded module assigns a presented Z/2-graded group to every nonempty
connected locally closed subset and a parity-matching map to every generator
arrow (covariant for left modules, contravariant for right modules).
Composite transformations act through their designated words, so the module
input surface is exactly the generator actions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .finspace import label, lc_subsets
from .ntcat import (Combo, Element, SpaceCategory, builtin_category,
                    combo_compose, nil_basis)
from .zexact import (AbGroupNF, GradedGroup, GradedHom, GroupHom, IntMatrix,
                     Presentation, block_diag, graded_direct_sum, kernel,
                     hnf_columns, shift as shift_group, solve,
                     subquotient_homology)


class ModuleError(Exception):
    pass


class HypothesisNotVerifiedError(ModuleError):
    """The nilpotency/semidirectness hypotheses could not be confirmed."""


class CatalogueError(ModuleError):
    pass


def _shifted(G: GradedGroup, eps: int) -> GradedGroup:
    return shift_group(G) if eps % 2 else G


# ---------------------------------------------------------------------------
# Graded modules
# ---------------------------------------------------------------------------

class GradedModule:
    """Module over a space's transformation category.

    entries: object label -> GradedGroup
    actions: arrow name -> GradedHom of the arrow's parity
             (left: M(src) -> M(dst); right: M(dst) -> M(src))
    """

    def __init__(self, category: SpaceCategory, variance: str,
                 entries: Dict[str, GradedGroup],
                 actions: Dict[str, GradedHom]):
        if variance not in ("left", "right"):
            raise ModuleError("variance must be 'left' or 'right'")
        self.category = category
        self.variance = variance
        self.entries = dict(entries)
        self.actions = dict(actions)
        self._element_cache: Dict[tuple, GradedHom] = {}
        for obj in category.objects:
            if obj not in self.entries:
                raise ModuleError(f"missing entry for object {obj}")

    def entry(self, obj: str) -> GradedGroup:
        return self.entries[obj]

    def _arrow_endpoints(self, arrow):
        if self.variance == "left":
            return arrow.src, arrow.dst
        return arrow.dst, arrow.src

    def action_word(self, word, src_obj: str, dst_obj: str) -> GradedHom:
        """Action of a composite word of generators, src/dst in category
        direction (the module map runs contravariantly for right modules)."""
        pres = self.category.presentation
        if self.variance == "left":
            hom = GradedHom.identity(self.entries[src_obj])
            for name in word:
                hom = self.actions[name].compose(hom)
            return hom
        hom = GradedHom.identity(self.entries[dst_obj])
        for name in reversed(word):
            hom = self.actions[name].compose(hom)
        return hom

    def action_combo(self, combo: Combo, src_obj: str, dst_obj: str,
                     parity: int) -> GradedHom:
        if self.variance == "left":
            mod_src, mod_dst = src_obj, dst_obj
        else:
            mod_src, mod_dst = dst_obj, src_obj
        total = GradedHom.zero(parity, self.entries[mod_src], self.entries[mod_dst])
        for w, c in combo.items():
            h = self.action_word(w, src_obj, dst_obj)
            if c == 1:
                total = total.add(h)
            else:
                total = total.add(GradedHom(h.degree,
                                            GroupHom(h.from_even.source, h.from_even.target,
                                                     h.from_even.matrix.scale(c)),
                                            GroupHom(h.from_odd.source, h.from_odd.target,
                                                     h.from_odd.matrix.scale(c))))
        return total

    def action_element(self, el: Element) -> GradedHom:
        key = (el.src, el.dst, el.parity, el.vec)
        hom = self._element_cache.get(key)
        if hom is None:
            combo = self.category.table.element_combo(el)
            hom = self.action_combo(combo, el.src, el.dst, el.parity)
            self._element_cache[key] = hom
        return hom

    # -- constructions -------------------------------------------------------

    def tensor_mod_k(self, k: int) -> "GradedModule":
        """Entrywise tensor with Z/k (append k·identity relations)."""
        if k < 2:
            raise ModuleError("tensor_mod_k needs k >= 2")
        new_entries = {}
        for obj, g in self.entries.items():
            def modk(P: Presentation) -> Presentation:
                return P.with_extra_relations(IntMatrix.identity(P.generators).scale(k))
            new_entries[obj] = GradedGroup(modk(g.even), modk(g.odd))
        new_actions = {}
        for name, h in self.actions.items():
            a = self.category.presentation.arrows[name]
            s, d = self._arrow_endpoints(a)
            new_actions[name] = GradedHom.build(h.degree, new_entries[s],
                                                new_entries[d],
                                                h.from_even.matrix, h.from_odd.matrix)
        return GradedModule(self.category, self.variance, new_entries, new_actions)

    # -- JSON schema -----------------------------------------------------------

    def to_json(self) -> dict:
        def pres_json(P: Presentation):
            return {"gens": P.generators, "rels": P.relations.to_lists()}

        return {
            "space": self.category.space.name,
            "variance": self.variance,
            "entries": {o: {"even": pres_json(g.even), "odd": pres_json(g.odd)}
                        for o, g in sorted(self.entries.items())},
            "actions": {n: {"evenPart": h.from_even.matrix.to_lists(),
                            "oddPart": h.from_odd.matrix.to_lists()}
                        for n, h in sorted(self.actions.items())},
        }

    @staticmethod
    def from_json(data, category: Optional[SpaceCategory] = None) -> "GradedModule":
        if isinstance(data, str):
            data = json.loads(data)
        if category is None:
            category = builtin_category(data["space"])
        variance = data.get("variance", "left")

        def pres(d):
            gens = d["gens"]
            rels = d.get("rels") or []
            if not rels:
                return Presentation(gens)
            return Presentation(gens, IntMatrix(rels, gens, len(rels[0])))

        entries = {o: GradedGroup(pres(v["even"]), pres(v["odd"]))
                   for o, v in data["entries"].items()}
        actions = {}
        for name, mats in data["actions"].items():
            arrow = category.presentation.arrows[name]
            if variance == "left":
                s, d = arrow.src, arrow.dst
            else:
                s, d = arrow.dst, arrow.src
            se, so = entries[s].even, entries[s].odd
            ev = IntMatrix(mats["evenPart"]) if mats["evenPart"] else \
                IntMatrix.zero(entries[d].part(arrow.parity).generators, se.generators)
            od = IntMatrix(mats["oddPart"]) if mats["oddPart"] else \
                IntMatrix.zero(entries[d].part(1 ^ arrow.parity).generators, so.generators)
            actions[name] = GradedHom.build(arrow.parity, entries[s], entries[d], ev, od)
        return GradedModule(category, variance, entries, actions)


# ---------------------------------------------------------------------------
# Free modules and cokernels
# ---------------------------------------------------------------------------

def free_module(sc: SpaceCategory, Y: str, side: str = "right",
                shift: int = 0) -> GradedModule:
    """The free module on Y: left P_Y(Z) = NT(Y, Z), right Q_Y(Z) = NT(Z, Y),
    optionally degree shifted."""
    t = sc.table
    entries = {}
    for Z in sc.objects:
        if side == "left":
            re, ro = t.rank.get((Y, Z, shift % 2), 0), t.rank.get((Y, Z, 1 ^ (shift % 2)), 0)
        else:
            re, ro = t.rank.get((Z, Y, shift % 2), 0), t.rank.get((Z, Y, 1 ^ (shift % 2)), 0)
        entries[Z] = GradedGroup(Presentation.free(re), Presentation.free(ro))
    actions = {}
    for name, a in sc.presentation.arrows.items():
        if side == "left":
            src, dst = a.src, a.dst
            ev = t.post.get((Y, a.src, shift % 2, name))
            od = t.post.get((Y, a.src, 1 ^ (shift % 2), name))
        else:
            src, dst = a.dst, a.src
            ev = t.pre.get((a.dst, Y, shift % 2, name))
            od = t.pre.get((a.dst, Y, 1 ^ (shift % 2), name))
        se = entries[src]
        te = entries[dst]
        if ev is None:
            ev = IntMatrix.zero(te.part(a.parity).generators, se.even.generators)
        if od is None:
            od = IntMatrix.zero(te.part(1 ^ a.parity).generators, se.odd.generators)
        actions[name] = GradedHom.build(a.parity, se, te, ev, od)
    return GradedModule(sc, "left" if side == "left" else "right", entries, actions)


def _pre_matrix_element(sc: SpaceCategory, el: Element, W: str, parity: int) -> IntMatrix:
    """Matrix of pre-composition by el: NT(el.dst, W) -> NT(el.src, W)."""
    t = sc.table
    n_in = t.rank.get((el.dst, W, parity), 0)
    n_out = t.rank.get((el.src, W, parity ^ el.parity), 0)
    out = IntMatrix.zero(n_out, n_in)
    for k, c in enumerate(el.vec):
        if not c:
            continue
        for w, coeff in t.rep_combo(el.src, el.dst, el.parity, k).items():
            M = IntMatrix.identity(n_in)
            cur_src, cur_par = el.dst, parity
            ok = True
            for name in reversed(w):
                a = sc.presentation.arrows[name]
                Mstep = t.pre.get((cur_src, W, cur_par, name))
                if Mstep is None:
                    ok = False
                    break
                M = Mstep * M
                cur_src, cur_par = a.src, cur_par ^ a.parity
            if ok:
                out = out + M.scale(c * coeff)
    return out


def _post_matrix_element(sc: SpaceCategory, el: Element, W: str, parity: int) -> IntMatrix:
    """Matrix of post-composition by el: NT(W, el.src) -> NT(W, el.dst)."""
    t = sc.table
    n_in = t.rank.get((W, el.src, parity), 0)
    n_out = t.rank.get((W, el.dst, parity ^ el.parity), 0)
    out = IntMatrix.zero(n_out, n_in)
    for k, c in enumerate(el.vec):
        if not c:
            continue
        for w, coeff in t.rep_combo(el.src, el.dst, el.parity, k).items():
            M = IntMatrix.identity(n_in)
            cur_dst, cur_par = el.src, parity
            ok = True
            for name in w:
                a = sc.presentation.arrows[name]
                Mstep = t.post.get((W, cur_dst, cur_par, name))
                if Mstep is None:
                    ok = False
                    break
                M = Mstep * M
                cur_dst, cur_par = a.dst, cur_par ^ a.parity
            if ok:
                out = out + M.scale(c * coeff)
    return out


def coker_module(sc: SpaceCategory, targets: Sequence[Tuple[str, int]],
                 sources: Sequence[Tuple[str, int]],
                 entries_matrix: Sequence[Sequence[Optional[Element]]]) -> GradedModule:
    """Objectwise cokernel of a map of free left modules
    ⊕ P_{A_j}[ε_j] -> ⊕ P_{B_i}[ε_i], with the induced actions.

    entries_matrix[i][j] is an element of NT(B_i, A_j) (the Yoneda description
    of a map P_{A_j} -> P_{B_i}), or None for a zero block.
    """
    t = sc.table
    for i, (B, eB) in enumerate(targets):
        for j, (A, eA) in enumerate(sources):
            el = entries_matrix[i][j]
            if el is None:
                continue
            if (el.src, el.dst) != (B, A):
                raise ModuleError(f"entry ({i},{j}) is not in NT({B}, {A})")
            if el.parity != (eA + eB) % 2:
                raise ModuleError(f"entry ({i},{j}) has the wrong parity")
    entries: Dict[str, GradedGroup] = {}
    for W in sc.objects:
        parts = []
        for parity in (0, 1):
            dims_t = [t.rank.get((B, W, (parity + eB) % 2), 0) for B, eB in targets]
            dims_s = [t.rank.get((A, W, (parity + eA) % 2), 0) for A, eA in sources]
            blocks = []
            for i, (B, eB) in enumerate(targets):
                row = []
                for j, (A, eA) in enumerate(sources):
                    el = entries_matrix[i][j]
                    if el is None:
                        row.append(IntMatrix.zero(dims_t[i], dims_s[j]))
                    else:
                        row.append(_pre_matrix_element(sc, el, W, (parity + eA) % 2))
                blocks.append(row)
            total_t = sum(dims_t)
            if total_t == 0:
                parts.append(Presentation.zero())
            elif sum(dims_s) == 0:
                parts.append(Presentation.free(total_t))
            else:
                parts.append(Presentation(total_t, IntMatrix.block(blocks)))
        entries[W] = GradedGroup(parts[0], parts[1])
    actions = {}
    for name, a in sc.presentation.arrows.items():
        mats = []
        for parity in (0, 1):
            blocks = []
            for (B, eB) in targets:
                pin = (parity + eB) % 2
                Mb = t.post.get((B, a.src, pin, name))
                if Mb is None:
                    Mb = IntMatrix.zero(t.rank.get((B, a.dst, pin ^ a.parity), 0),
                                        t.rank.get((B, a.src, pin), 0))
                blocks.append(Mb)
            mats.append(block_diag(blocks))
        actions[name] = GradedHom.build(a.parity, entries[a.src], entries[a.dst],
                                        mats[0], mats[1])
    return GradedModule(sc, "left", entries, actions)


# ---------------------------------------------------------------------------
# Validation and exactness
# ---------------------------------------------------------------------------

@dataclass
class ValidationReport:
    ok: bool
    problems: List[str] = field(default_factory=list)


def validate(M: GradedModule) -> ValidationReport:
    """Well-definedness of all actions and vanishing of all relations."""
    pres = M.category.presentation
    problems = []
    for name, a in pres.arrows.items():
        h = M.actions.get(name)
        if h is None:
            problems.append(f"missing action for arrow {name}")
            continue
        if h.degree != a.parity:
            problems.append(f"action of {name} has degree {h.degree}, arrow parity {a.parity}")
            continue
        if not h.is_well_defined():
            problems.append(f"action of {name} is not well defined on presentations")
    if problems:
        return ValidationReport(False, problems)
    for rel in pres.relations:
        first = next(iter(rel))
        src, dst, parity = pres.word_signature(first)
        h = M.action_combo(rel, src, dst, parity)
        if not h.is_zero_hom():
            problems.append(f"relation fails to act as zero at {src}->{dst}: {rel}")
    return ValidationReport(not problems, problems)


def module_value(M: GradedModule, subset) -> GradedGroup:
    """M on a possibly disconnected locally closed subset: the direct sum of
    the component entries (components in canonical order)."""
    comps = M.category.space.components(subset)
    return graded_direct_sum([M.entries[label(c)] for c in comps])


def _block_graded_hom(degree, sources, targets, blocks) -> GradedHom:
    """Assemble a GradedHom between graded direct sums from a grid of
    GradedHoms (or None); blocks[i][j]: sources[j] -> targets[i]."""
    src = graded_direct_sum(sources)
    tgt = graded_direct_sum(targets)
    mats = []
    for source_parity in (0, 1):
        rows = []
        for i, T in enumerate(targets):
            row = []
            for j, S in enumerate(sources):
                b = blocks[i][j]
                nrows = T.part((source_parity + degree) % 2).generators
                ncols = S.part(source_parity).generators
                if b is None:
                    row.append(IntMatrix.zero(nrows, ncols))
                else:
                    row.append(b.component(source_parity).matrix)
            rows.append(row)
        mats.append(IntMatrix.block(rows) if rows and rows[0] else
                    IntMatrix.zero(tgt.part(degree ^ source_parity).generators,
                                   src.part(source_parity).generators))
    return GradedHom.build(degree, src, tgt, mats[0], mats[1])


def six_term_maps(M: GradedModule, U, Y):
    """The three maps of the six-term cycle of the pair (U open in Y).

    For a left module: M(U) -> M(Y) -> M(Y∖U) -> M(U)[1]; for a right module
    the arrows act contravariantly and the cycle runs
    M(Y∖U) -> M(Y) -> M(U) -> M(Y∖U)[1].  Returns (f, g, h, names) with
    f, g of degree 0 and h of degree 1 closing the cycle."""
    sc = M.category
    X = sc.space
    compsU = X.components(U)
    compsY = X.components(Y)
    compsE = X.components(Y - U)

    def inc_block(C, D):
        if not C <= D:
            return None
        combo = sc.designator.inc(C, D)
        return M.action_combo(combo, label(C), label(D), 0)

    def res_block(D, E):
        if not E <= D:
            return None
        combo = sc.designator.res(D, E)
        return M.action_combo(combo, label(D), label(E), 0)

    def bnd_block(E, C):
        combo = sc.designator.bnd_block(C, E, U, Y)
        if not combo:
            return None
        return M.action_combo(combo, label(E), label(C), 1)

    eU = [M.entries[label(c)] for c in compsU]
    eY = [M.entries[label(d)] for d in compsY]
    eE = [M.entries[label(e)] for e in compsE]
    if M.variance == "left":
        f = _block_graded_hom(0, eU, eY,
                              [[inc_block(C, D) for C in compsU] for D in compsY])
        g = _block_graded_hom(0, eY, eE,
                              [[res_block(D, E) for D in compsY] for E in compsE])
        h = _block_graded_hom(1, eE, eU,
                              [[bnd_block(E, C) for E in compsE] for C in compsU])
        names = (f"M({label(U)})", f"M({label(Y)})", f"M({label(Y - U)})")
    else:
        f = _block_graded_hom(0, eE, eY,
                              [[res_block(D, E) for E in compsE] for D in compsY])
        g = _block_graded_hom(0, eY, eU,
                              [[inc_block(C, D) for D in compsY] for C in compsU])
        h = _block_graded_hom(1, eU, eE,
                              [[bnd_block(E, C) for C in compsU] for E in compsE])
        names = (f"M({label(Y - U)})", f"M({label(Y)})", f"M({label(U)})")
    return f, g, h, names


@dataclass
class ExactnessReport:
    ok: bool
    failures: List[str] = field(default_factory=list)


def check_exact(M: GradedModule) -> ExactnessReport:
    """Six-term exactness for every open pair U ⊆ Y of locally closed
    subsets.

    Only connected Y need checking: a disconnected Y splits its sequence
    into the direct sum over components.  Trivial pairs (U empty or all of
    Y) are vacuous and skipped."""
    X = M.category.space
    failures = []
    for lc in lc_subsets(X, connected_only=True):
        Y = lc.value
        for U in X.relative_opens(Y):
            if not U or U == Y:
                continue
            f, g, h, names = six_term_maps(M, U, Y)
            # the six nodes of the periodic cycle f, g, h[1], f[1], g[1], h
            maps = [
                (f"{names[1]} even", f.from_even, g.from_even),
                (f"{names[2]} even", g.from_even, h.from_even),
                (f"{names[0]} odd", h.from_even, f.from_odd),
                (f"{names[1]} odd", f.from_odd, g.from_odd),
                (f"{names[2]} odd", g.from_odd, h.from_odd),
                (f"{names[0]} even", h.from_odd, f.from_even),
            ]
            for node, fin, fout in maps:
                hom = subquotient_homology(fin, fout)
                if not hom.group.is_trivial():
                    failures.append(
                        f"pair ({label(U)} ⊆ {label(Y)}) fails at {node}: {hom.group}")
    return ExactnessReport(not failures, failures)


# ---------------------------------------------------------------------------
# M_ss
# ---------------------------------------------------------------------------

def m_ss(M: GradedModule) -> Dict[str, GradedGroup]:
    """Quotient of each entry by the images of all nil transformations."""
    sc = M.category
    nil = nil_basis(sc.table)
    out = {}
    for obj in sc.objects:
        extra_even = []
        extra_odd = []
        for src in sc.objects:
            for parity in (0, 1):
                if M.variance == "left":
                    vecs = nil.get((src, obj, parity), [])
                    mk = lambda v: Element(src, obj, parity, v)
                else:
                    vecs = nil.get((obj, src, parity), [])
                    mk = lambda v: Element(obj, src, parity, v)
                for v in vecs:
                    h = M.action_element(mk(v))
                    # columns landing in each parity of M(obj)
                    if h.degree == 0:
                        extra_even.append(h.from_even.matrix)
                        extra_odd.append(h.from_odd.matrix)
                    else:
                        extra_odd.append(h.from_even.matrix)
                        extra_even.append(h.from_odd.matrix)
        g = M.entries[obj]

        def quotient(P: Presentation, mats) -> Presentation:
            rel = P.relations
            for m in mats:
                if m.cols:
                    rel = rel.hstack(m)
            return Presentation(P.generators, rel)

        out[obj] = GradedGroup(quotient(g.even, extra_even),
                               quotient(g.odd, extra_odd))
    return out


# ---------------------------------------------------------------------------
# Free resolutions of the simple right-modules
# ---------------------------------------------------------------------------

Summand = Tuple[str, int]  # (object, shift)


class FreeResolution:
    """Resolution of the simple right-module on an object by free
    right-modules.  Levels hold formal (object, shift) summands; the
    differential d_n: L_n -> L_{n-1} is a matrix of Hom-table elements,
    entry parity = sum of the two shifts.  A periodicity marker (s0, p)
    means L_{n+p} = L_n[1] and d_{n+p} = d_n for n > s0."""

    def __init__(self, sc: SpaceCategory, Y: str,
                 levels: List[List[Summand]],
                 diffs: List[List[List[Optional[Element]]]],
                 periodic: Optional[Tuple[int, int]] = None):
        self.sc = sc
        self.Y = Y
        self.levels = levels
        self.diffs = diffs  # diffs[n-1] = matrix of d_n, rows: L_{n-1}, cols: L_n
        self.periodic = periodic

    def level(self, n: int) -> List[Summand]:
        if n < len(self.levels):
            return self.levels[n]
        if not self.periodic:
            raise CatalogueError(f"resolution of S_{self.Y} not built to level {n}")
        _, p = self.periodic
        base = self.level(n - p)
        return [(obj, (eps + 1) % 2) for obj, eps in base]

    def diff(self, n: int) -> List[List[Optional[Element]]]:
        if n - 1 < len(self.diffs):
            return self.diffs[n - 1]
        if not self.periodic:
            raise CatalogueError(f"resolution of S_{self.Y} has no d_{n}")
        _, p = self.periodic
        return self.diff(n - p)

    def underlying_diff(self, n: int, W: str, parity: int) -> IntMatrix:
        """Matrix of d_n on the underlying groups at (W, parity)."""
        sc = self.sc
        t = sc.table
        src_level = self.level(n)
        dst_level = self.level(n - 1)
        entries = self.diff(n)
        blocks = []
        for i, (B, eB) in enumerate(dst_level):
            row = []
            for j, (A, eA) in enumerate(src_level):
                el = entries[i][j]
                pin = (parity + eA) % 2
                pout = (parity + eB) % 2
                n_in = t.rank.get((W, A, pin), 0)
                n_out = t.rank.get((W, B, pout), 0)
                if el is None:
                    row.append(IntMatrix.zero(n_out, n_in))
                else:
                    row.append(_post_matrix_element(sc, el, W, pin))
            blocks.append(row)
        if not blocks or not blocks[0]:
            nrows = sum(t.rank.get((W, B, (parity + eB) % 2), 0) for B, eB in dst_level)
            ncols = sum(t.rank.get((W, A, (parity + eA) % 2), 0) for A, eA in src_level)
            return IntMatrix.zero(nrows, ncols)
        return IntMatrix.block(blocks)

    def level_dims(self, n: int, W: str, parity: int) -> int:
        t = self.sc.table
        return sum(t.rank.get((W, A, (parity + eA) % 2), 0) for A, eA in self.level(n))


def _ss_projection(sc: SpaceCategory, Y: str) -> IntMatrix:
    """Row functional on End(Y)-even picking the identity coefficient."""
    t = sc.table
    rank = t.rank[(Y, Y, 0)]
    nil = nil_basis(t)[(Y, Y, 0)]
    cols = [list(t.id_coords[Y])] + [list(v) for v in nil]
    B = IntMatrix.from_columns([tuple(c) for c in cols], rank)
    if B.rows != B.cols:
        raise ModuleError(f"End({Y}) does not split as Z·id + nil")
    x = solve(B.transpose(), tuple(1 if i == 0 else 0 for i in range(rank)))
    if x is None:
        raise ModuleError(f"End({Y}) does not split as Z·id + nil")
    return IntMatrix([list(x)], 1, rank)


def _augmentation_matrix(sc: SpaceCategory, Y: str, W: str, parity: int) -> IntMatrix:
    """Underlying matrix of Q_Y ->> S_Y at (W, parity)."""
    t = sc.table
    n = t.rank.get((W, Y, parity), 0)
    if W != Y or parity != 0:
        return IntMatrix.zero(0, n)
    return _ss_projection(sc, Y)


def resolve_simple(sc: SpaceCategory, Y: str, depth: int,
                   prescribed: Optional[List[List[Summand]]] = None,
                   prefix_diffs: Optional[List[List[List[Optional[Element]]]]] = None
                   ) -> FreeResolution:
    """Generic syzygy resolution of the simple right-module S_Y.

    Covers S_Y by Q_Y, then repeatedly covers the kernel of the last
    differential by free modules on homogeneous generators chosen minimal
    modulo the nil ideal.  With `prescribed`, each computed level is checked
    against the expected summand multiset (the catalogue shapes); with
    `prefix_diffs`, the first differentials are taken as given instead of
    recomputed.
    """
    levels: List[List[Summand]] = [[(Y, 0)]]
    diffs: List[List[List[Optional[Element]]]] = []
    res = FreeResolution(sc, Y, levels, diffs, periodic=None)
    if prefix_diffs:
        for n, d in enumerate(prefix_diffs, start=1):
            if prescribed is None or len(prescribed) <= n:
                raise CatalogueError("prefix differentials need prescribed levels")
            levels.append(list(prescribed[n]))
            diffs.append(d)
    extend_resolution(res, depth, prescribed)
    return res


def extend_resolution(res: FreeResolution, depth: int,
                      prescribed: Optional[List[List[Summand]]] = None) -> None:
    """Continue a resolution by syzygy steps until it has `depth` levels."""
    sc = res.sc
    Y = res.Y
    t = sc.table
    objs = sc.objects
    nil = nil_basis(t)
    levels = res.levels
    diffs = res.diffs

    while len(levels) <= depth:
        n = len(diffs)  # building d_{n+1}: L_{n+1} -> L_n
        # kernel of d_n (or of the augmentation for n = 0), per (W, parity)
        kernels: Dict[Tuple[str, int], IntMatrix] = {}
        for W in objs:
            for parity in (0, 1):
                if n == 0:
                    mat = _augmentation_matrix(sc, Y, W, parity)
                else:
                    mat = res.underlying_diff(n, W, parity)
                kernels[(W, parity)] = kernel(mat)
        # nil-decomposable part of the kernel module
        nildec: Dict[Tuple[str, int], List[list]] = {(W, p): []
                                                     for W in objs for p in (0, 1)}
        for (V, pv), K in kernels.items():
            if K.cols == 0:
                continue
            for W in objs:
                for pt in (0, 1):
                    basis = nil.get((W, V, pt), [])
                    if not basis:
                        continue
                    target = (W, (pv + pt) % 2)
                    for vvec in basis:
                        el = Element(W, V, pt, vvec)
                        act = _free_right_pre_action(sc, res.level(n), el, pv)
                        for j in range(K.cols):
                            img = act.apply(K.column(j))
                            if any(img):
                                nildec[target].append(list(img))
        # choose generators
        chosen: List[Tuple[str, int, tuple]] = []
        span: Dict[Tuple[str, int], "_SpanEchelon"] = {}

        def span_of(key, dim):
            s = span.get(key)
            if s is None:
                s = span[key] = _SpanEchelon(dim)
            return s

        def add_to_span(W, parity, vec):
            # right-module span closure under generator pre-composition
            queue = [(W, parity, list(vec))]
            while queue:
                W2, p2, v2 = queue.pop()
                dim = res.level_dims(n, W2, p2)
                if dim == 0 or not any(v2):
                    continue
                if not span_of((W2, p2), dim).add(v2):
                    continue
                for a in sc.presentation.by_dst.get(W2, []):
                    act = _free_right_pre_arrow(sc, res.level(n), a, p2)
                    img = act.apply(v2)
                    queue.append((a.src, p2 ^ a.parity, list(img)))

        order = sorted(objs, key=lambda o: (len(o), o))
        for W in order:
            for parity in (0, 1):
                K = kernels[(W, parity)]
                if K.cols == 0:
                    continue
                dim = K.rows
                auxiliary = _SpanEchelon(dim)
                for v in nildec[(W, parity)]:
                    auxiliary.add(v)
                for j in range(K.cols):
                    v = list(K.column(j))
                    s = span.get((W, parity))
                    if s is not None and _in_joint_span(s, auxiliary, v):
                        continue
                    if s is None and auxiliary.contains(v):
                        continue
                    chosen.append((W, parity, K.column(j)))
                    add_to_span(W, parity, v)
        # safety: ensure everything is covered by the chosen module span
        for (W, parity), K in kernels.items():
            s = span.get((W, parity))
            for j in range(K.cols):
                v = list(K.column(j))
                if (s is None and any(v)) or (s is not None and not s.contains(v)):
                    chosen.append((W, parity, K.column(j)))
                    add_to_span(W, parity, v)
                    s = span.get((W, parity))
        new_level = [(W, parity) for W, parity, _ in chosen]
        # differential entries: the components of each chosen kernel vector
        cur_level = res.level(n)
        matrix: List[List[Optional[Element]]] = [[None] * len(chosen)
                                                 for _ in cur_level]
        for col, (W, parity, vec) in enumerate(chosen):
            offset = 0
            for i, (A, eA) in enumerate(cur_level):
                r = t.rank.get((W, A, (parity + eA) % 2), 0)
                piece = vec[offset:offset + r]
                offset += r
                if any(piece):
                    matrix[i][col] = Element(W, A, (parity + eA) % 2, piece)
        if prescribed is not None and len(prescribed) > n + 1:
            want = sorted(prescribed[n + 1])
            got = sorted(new_level)
            if want != got:
                raise CatalogueError(
                    f"resolution of S_{Y} level {n + 1}: expected {want}, got {got}")
        levels.append(new_level)
        diffs.append(matrix)


class _SpanEchelon:
    __slots__ = ("n", "pivots")

    def __init__(self, n):
        self.n = n
        self.pivots: Dict[int, list] = {}

    def add(self, vec) -> bool:
        cur = list(vec)
        changed = False
        while True:
            p = next((i for i, x in enumerate(cur) if x), None)
            if p is None:
                return changed
            row = self.pivots.get(p)
            if row is None:
                self.pivots[p] = cur
                return True
            q = cur[p] // row[p]
            if q:
                cur = [a - q * b for a, b in zip(cur, row)]
            if cur[p]:
                self.pivots[p], cur = cur, row
                changed = True

    def contains(self, vec) -> bool:
        cur = list(vec)
        for p in sorted(self.pivots):
            if cur[p]:
                row = self.pivots[p]
                if cur[p] % row[p]:
                    return False
                cur = [a - (cur[p] // row[p]) * b for a, b in zip(cur, row)]
        return not any(cur)

    def basis(self):
        return [self.pivots[p] for p in sorted(self.pivots)]


def _in_joint_span(s: _SpanEchelon, aux: _SpanEchelon, vec) -> bool:
    joint = _SpanEchelon(s.n)
    for b in s.basis():
        joint.add(list(b))
    for b in aux.basis():
        joint.add(list(b))
    return joint.contains(vec)


def _free_right_pre_arrow(sc: SpaceCategory, level, a, parity: int) -> IntMatrix:
    """Pre-composition by a generator on ⊕ Q_{A_i}[ε_i] at source parity."""
    t = sc.table
    blocks = []
    for (A, eA) in level:
        pin = (parity + eA) % 2
        M = t.pre.get((a.dst, A, pin, a.name))
        if M is None:
            M = IntMatrix.zero(t.rank.get((a.src, A, pin ^ a.parity), 0),
                               t.rank.get((a.dst, A, pin), 0))
        blocks.append(M)
    return block_diag(blocks)


def _free_right_pre_action(sc: SpaceCategory, level, el: Element, parity: int) -> IntMatrix:
    blocks = []
    for (A, eA) in level:
        pin = (parity + eA) % 2
        blocks.append(_pre_matrix_element(sc, el, A, pin))
    return block_diag(blocks)


def validate_resolution(res: FreeResolution, depth: int) -> List[str]:
    """d∘d = 0 and exactness on underlying groups through the given depth,
    including correctness of the augmentation level."""
    sc = res.sc
    t = sc.table
    problems = []
    for n in range(1, depth):
        dn = res.diff(n)
        dn1 = res.diff(n + 1)
        Ln_1, Ln, Ln1 = res.level(n - 1), res.level(n), res.level(n + 1)
        for i in range(len(Ln_1)):
            for j in range(len(Ln1)):
                total = None
                for k in range(len(Ln)):
                    a, b = dn[i][k], dn1[k][j]
                    if a is None or b is None:
                        continue
                    term = t.compose(b, a)
                    total = term if total is None else t.add(total, term)
                if total is not None and not total.is_zero():
                    problems.append(f"d_{n}∘d_{n + 1} nonzero at block ({i},{j})")
    for W in sc.objects:
        for parity in (0, 1):
            aug = _augmentation_matrix(sc, res.Y, W, parity)
            d1 = res.underlying_diff(1, W, parity)
            n0 = res.level_dims(0, W, parity)
            A = Presentation.free(res.level_dims(1, W, parity))
            B = Presentation.free(n0)
            C = Presentation.free(aug.rows)
            h = subquotient_homology(GroupHom(A, B, d1), GroupHom(B, C, aug))
            if not h.group.is_trivial():
                problems.append(f"not exact under the augmentation at ({W},{parity})")
            if aug.rows:
                # the augmentation must be onto S_Y
                img = hnf_columns(aug)
                if img.cols != 1 or abs(img[0, 0]) != 1:
                    problems.append(f"augmentation not onto at ({W},{parity})")
            for n in range(1, depth):
                dn = res.underlying_diff(n, W, parity)
                dn1 = res.underlying_diff(n + 1, W, parity)
                A2 = Presentation.free(dn1.cols)
                B2 = Presentation.free(dn1.rows)
                C2 = Presentation.free(dn.rows)
                h = subquotient_homology(GroupHom(A2, B2, dn1), GroupHom(B2, C2, dn))
                if not h.group.is_trivial():
                    problems.append(f"not exact at level {n}, ({W},{parity})")
    return problems


# ---------------------------------------------------------------------------
# Built-in resolution catalogue
# ---------------------------------------------------------------------------

def _el(sc: SpaceCategory, src: str, combo: Combo, sign: int = 1) -> Element:
    el = sc.table.eval_combo(src, combo)
    return sc.table.scale(el, sign) if sign != 1 else el


def _z3_catalogue(sc: SpaceCategory):
    D = sc.designator
    f = frozenset

    def inc(a, b):
        return D.inc(f(a), f(b))

    def res(a, b):
        return D.res(f(a), f(b))

    def E(src, combo, sign=1):
        return _el(sc, src, combo, sign)

    cat = {}
    # S_{j4}: Q_j[1] -> Q_4 -> Q_{j4}, periodic
    for j in "123":
        j4 = "".join(sorted(j + "4"))
        cat[j4] = dict(
            levels=[[(j4, 0)], [("4", 0)], [(j, 1)], [(j4, 1)]],
            diffs=[
                [[E("4", inc("4", j4))]],
                [[E(j, {("d:%s>4" % j,): 1})]],
                [[E(j4, res(j4, j))]],
            ],
            periodic=(0, 3))
    # S_4: Q_1234[1] -> ⊕Q_j[1] -> Q_4, periodic
    cat["4"] = dict(
        levels=[[("4", 0)], [("1", 1), ("2", 1), ("3", 1)], [("1234", 1)], [("4", 1)]],
        diffs=[
            [[E("1", {("d:1>4",): 1}), E("2", {("d:2>4",): 1}), E("3", {("d:3>4",): 1})]],
            [[E("1234", res("1234", "1"))], [E("1234", res("1234", "2"))],
             [E("1234", res("1234", "3"))]],
            [[E("4", inc("4", "1234"))]],
        ],
        periodic=(0, 3))
    # S_j: Q_{1234∖j} -> Q_1234 -> Q_j, periodic
    for j in "123":
        comp = "".join(sorted(set("1234") - {j}))
        cat[j] = dict(
            levels=[[(j, 0)], [("1234", 0)], [(comp, 0)], [(j, 1)]],
            diffs=[
                [[E("1234", {("r:1234>%s" % j,): 1})]],
                [[E(comp, inc(comp, "1234"))]],
                [[E(j, combo_compose({("d:%s>4" % j,): 1}, inc("4", comp)))]],
            ],
            periodic=(0, 3))
    # S_{jk4}: Q_4 -> Q_{j4}⊕Q_{k4} -> Q_{jk4}, periodic (Mayer-Vietoris)
    for (j, k) in (("1", "2"), ("1", "3"), ("2", "3")):
        jk4 = "".join(sorted(j + k + "4"))
        j4, k4 = "".join(sorted(j + "4")), "".join(sorted(k + "4"))
        cat[jk4] = dict(
            levels=[[(jk4, 0)], [(j4, 0), (k4, 0)], [("4", 0)], [(jk4, 1)]],
            diffs=[
                [[E(j4, inc(j4, jk4)), E(k4, inc(k4, jk4))]],
                [[E("4", inc("4", j4))], [E("4", inc("4", k4), -1)]],
                [[E(jk4, combo_compose(res(jk4, j), {("d:%s>4" % j,): 1}))]],
            ],
            periodic=(0, 3))
    # S_1234: the four-term resolution with explicit ±i and delta entries
    d_1234_14 = combo_compose(combo_compose({("r:1234>3",): 1}, {("d:3>4",): 1}),
                              inc("4", "14"))
    d_234_4 = combo_compose(res("234", "2"), {("d:2>4",): 1})
    cat["1234"] = dict(
        levels=[[("1234", 0)],
                [("124", 0), ("134", 0), ("234", 0)],
                [("14", 0), ("24", 0), ("34", 0)],
                [("4", 0), ("1234", 1)],
                [("124", 1), ("134", 1), ("234", 1)]],
        diffs=[
            [[E("124", inc("124", "1234")), E("134", inc("134", "1234")),
              E("234", inc("234", "1234"))]],
            # rows 124,134,234; cols 14,24,34; sign pattern (i -i 0; -i 0 i; 0 i -i)
            [[E("14", inc("14", "124")), E("24", inc("24", "124"), -1), None],
             [E("14", inc("14", "134"), -1), None, E("34", inc("34", "134"))],
             [None, E("24", inc("24", "234")), E("34", inc("34", "234"), -1)]],
            # rows 14,24,34; cols 4, 1234[1]
            [[E("4", inc("4", "14")), E("1234", d_1234_14)],
             [E("4", inc("4", "24")), None],
             [E("4", inc("4", "34")), None]],
            # rows 4, 1234[1]; cols 124[1], 134[1], 234[1]; classically
            # (0 0 -d_234^4; i i i) up to sign freedom; our designated words
            # force the + sign for d∘d = 0
            [[None, None, E("234", d_234_4)],
             [E("124", inc("124", "1234")), E("134", inc("134", "1234")),
              E("234", inc("234", "1234"))]],
        ],
        periodic=(1, 3))
    return cat


def _c2_shapes():
    shapes = {}
    shapes["3"] = ([[("3", 0)], [("1", 1), ("2", 1)], [("123", 1)], [("3", 1)]], (0, 3))
    shapes["4"] = ([[("4", 0)], [("1", 1), ("2", 1)], [("124", 1)], [("4", 1)]], (0, 3))
    shapes["134"] = ([[("134", 0)], [("3", 0), ("4", 0)], [("1", 1)], [("134", 1)]], (0, 3))
    shapes["234"] = ([[("234", 0)], [("3", 0), ("4", 0)], [("2", 1)], [("234", 1)]], (0, 3))
    shapes["13"] = ([[("13", 0)], [("134", 0)], [("4", 0)], [("13", 1)]], (0, 3))
    shapes["14"] = ([[("14", 0)], [("134", 0)], [("3", 0)], [("14", 1)]], (0, 3))
    shapes["23"] = ([[("23", 0)], [("234", 0)], [("4", 0)], [("23", 1)]], (0, 3))
    shapes["24"] = ([[("24", 0)], [("234", 0)], [("3", 0)], [("24", 1)]], (0, 3))
    shapes["1234"] = ([[("1234", 0)], [("134", 0), ("234", 0)],
                       [("3", 0), ("4", 0)], [("1234", 1)]], (0, 3))
    shapes["123"] = ([[("123", 0)], [("1234", 0), ("13", 0), ("23", 0)],
                      [("134", 0), ("234", 0)], [("4", 0), ("123", 1)],
                      [("1234", 1), ("13", 1), ("23", 1)]], (1, 3))
    shapes["124"] = ([[("124", 0)], [("1234", 0), ("14", 0), ("24", 0)],
                      [("134", 0), ("234", 0)], [("3", 0), ("124", 1)],
                      [("1234", 1), ("14", 1), ("24", 1)]], (1, 3))
    shapes["1"] = ([[("1", 0)], [("123", 0), ("124", 0)],
                    [("1234", 0), ("23", 0), ("24", 0)], [("234", 0), ("1", 1)],
                    [("123", 1), ("124", 1)]], (1, 3))
    shapes["2"] = ([[("2", 0)], [("123", 0), ("124", 0)],
                    [("1234", 0), ("13", 0), ("14", 0)], [("134", 0), ("2", 1)],
                    [("123", 1), ("124", 1)]], (1, 3))
    return shapes


# object correspondence and parity shifts carrying the Z3 category to the S
# category (verified against the computed Hom ranks of both tables)
_S_PHI = {"1": "2", "2": "3", "3": "1234", "4": "123", "14": "13", "24": "12",
          "34": "4", "124": "1", "134": "24", "234": "34", "1234": "234"}
_S_SIGMA = {"1": 1, "2": 1, "3": 1, "4": 0, "14": 0, "24": 0, "34": 1,
            "124": 0, "134": 1, "234": 1, "1234": 1}


def _s_shapes():
    """Shapes for the S catalogue, transported from the Z3 shapes through the
    structural correspondence of the two categories (objects, with parity
    shifts)."""
    z3 = builtin_category("Z3")
    shapes = {}
    zcat = _z3_catalogue(z3)
    for Yz, entry in zcat.items():
        Ys = _S_PHI[Yz]
        sY = _S_SIGMA[Yz]
        levels = [[(_S_PHI[A], (e + _S_SIGMA[A] + sY) % 2) for A, e in lvl]
                  for lvl in entry["levels"]]
        shapes[Ys] = (levels, entry["periodic"])
    return shapes


def _z4_12345_entry(sc: SpaceCategory):
    f = frozenset
    D = sc.designator

    def inc(a, b):
        return D.inc(f(a), f(b))

    def E(src, combo, sign=1):
        return _el(sc, src, combo, sign)

    co = ["2345", "1345", "1245", "1235"]  # 12345∖c for c = 1,2,3,4
    pairs = ["345", "245", "145", "235", "135", "125"]  # pair objects jk5
    # the classical 4x6 sign pattern, rows = co, cols = pairs
    signs = [
        [1, -1, 0, 1, 0, 0],
        [-1, 0, 1, 0, -1, 0],
        [0, 1, -1, 0, 0, 1],
        [0, 0, 0, -1, 1, -1],
    ]
    d1 = [[E(c, inc(c, "12345")) for c in co]]
    d2 = []
    for i, c in enumerate(co):
        row = []
        for j, pr in enumerate(pairs):
            s = signs[i][j]
            row.append(E(pr, inc(pr, c), s) if s else None)
        d2.append(row)
    levels = [
        [("12345", 0)],
        [(c, 0) for c in co],
        [(p, 0) for p in pairs],
        [("15", 0), ("25", 0), ("35", 0), ("45", 0), ("12345", 1)],
        [("5", 0), ("2345", 1), ("1345", 1), ("1245", 1), ("1235", 1)],
        [(p, 1) for p in pairs],
    ]
    return dict(levels=levels, diffs=[d1, d2], periodic=(2, 3))


_RESOLUTION_CACHE: Dict[Tuple[str, str], FreeResolution] = {}


def builtin_resolution(space_name: str, Y: str) -> FreeResolution:
    """Catalogued resolution of S_Y, validated at build time.

    Differentials beyond the explicitly shipped ones are completed by the
    syzygy engine against the catalogued level shapes (the shapes are
    reference data; the completed entries are reconstructed).  The periodic
    marker is kept only when its wrap-around differential is itself
    validated; otherwise deeper levels are built by further engine steps."""
    key = (space_name, Y)
    if key in _RESOLUTION_CACHE:
        return _RESOLUTION_CACHE[key]
    sc = builtin_category(space_name)
    if space_name == "Z3":
        cat = _z3_catalogue(sc)
        if Y not in cat:
            raise CatalogueError(f"no catalogued resolution for ({space_name}, {Y})")
        e = cat[Y]
        res = FreeResolution(sc, Y, e["levels"], e["diffs"], e["periodic"])
        marker = e["periodic"]
    elif space_name in ("C2", "S"):
        shapes = _c2_shapes() if space_name == "C2" else _s_shapes()
        if Y not in shapes:
            raise CatalogueError(f"no catalogued resolution for ({space_name}, {Y})")
        levels, marker = shapes[Y]
        res = resolve_simple(sc, Y, len(levels) - 1, prescribed=levels)
    elif space_name == "Z4" and Y == "12345":
        e = _z4_12345_entry(sc)
        res = resolve_simple(sc, Y, len(e["levels"]) - 1, prescribed=e["levels"],
                             prefix_diffs=e["diffs"])
        marker = e["periodic"]
    else:
        raise CatalogueError(f"no catalogued resolution for ({space_name}, {Y})")
    problems = validate_resolution(res, len(res.levels) - 1)
    if problems:
        raise CatalogueError(f"catalogued resolution for ({space_name}, {Y}) "
                             f"failed validation: {problems[:3]}")
    # keep the periodicity marker only if the wrap-around step validates
    res.periodic = marker
    try:
        seam = validate_resolution(res, len(res.levels))
    except Exception:
        seam = ["wrap differential is not even a complex"]
    if seam:
        res.periodic = None
    _RESOLUTION_CACHE[key] = res
    return res


_GENERIC_CACHE: Dict[Tuple[str, str], FreeResolution] = {}


def resolution_for(sc: SpaceCategory, Y: str, depth: int,
                   engine: str = "auto") -> FreeResolution:
    name = sc.space.name
    if engine in ("auto", "builtin"):
        try:
            res = builtin_resolution(name, Y)
            if res.periodic is None and len(res.levels) <= depth:
                extend_resolution(res, depth)
            return res
        except CatalogueError:
            if engine == "builtin":
                raise
    key = (id(sc), Y)  # resolutions are tied to their table's basis choices
    res = _GENERIC_CACHE.get(key)
    if res is None:
        res = _GENERIC_CACHE[key] = resolve_simple(sc, Y, depth)
    elif len(res.levels) <= depth:
        extend_resolution(res, depth)
    return res


# ---------------------------------------------------------------------------
# Tor
# ---------------------------------------------------------------------------

@dataclass
class TorReport:
    """Per object and degree: the graded Tor group in normal form."""
    space: str
    groups: Dict[str, Dict[int, Tuple[AbGroupNF, AbGroupNF]]]

    def aggregate(self, n: int) -> Tuple[AbGroupNF, AbGroupNF]:
        ev_rank = od_rank = 0
        ev_tors: List[int] = []
        od_tors: List[int] = []
        for obj in self.groups:
            g = self.groups[obj].get(n)
            if g is None:
                continue
            ev_rank += g[0].rank
            od_rank += g[1].rank
            ev_tors.extend(g[0].torsion)
            od_tors.extend(g[1].torsion)
        return (_nf_from_parts(ev_rank, ev_tors), _nf_from_parts(od_rank, od_tors))

    def is_zero(self, n: int) -> bool:
        ev, od = self.aggregate(n)
        return ev.is_trivial() and od.is_trivial()

    def is_free(self, n: int) -> bool:
        ev, od = self.aggregate(n)
        return ev.is_free() and od.is_free()

    def to_json(self) -> dict:
        return {obj: {str(n): {"even": str(g[0]), "odd": str(g[1])}
                      for n, g in sorted(degs.items())}
                for obj, degs in sorted(self.groups.items())}


def _nf_from_parts(rank: int, torsions: List[int]) -> AbGroupNF:
    if not torsions:
        return AbGroupNF(rank, ())
    # merge torsion coefficients into a divisibility chain via a diagonal SNF
    mat = IntMatrix([[torsions[j] if i == j else 0 for j in range(len(torsions))]
                     for i in range(len(torsions))])
    P = Presentation(len(torsions), mat)
    nf = P.normal_form()
    return AbGroupNF(rank + nf.rank, nf.torsion)


def tensor_complex_maps(res: FreeResolution, M: GradedModule, n: int):
    """The maps d_{n+1}⊗M and d_n⊗M of the tensored complex around level n."""

    def level_group(k):
        return graded_direct_sum([_shifted(M.entries[A], e) for A, e in res.level(k)])

    def diff_hom(k):
        src_level = res.level(k)
        dst_level = res.level(k - 1)
        entries = res.diff(k)
        sources = [_shifted(M.entries[A], e) for A, e in src_level]
        targets = [_shifted(M.entries[B], e) for B, e in dst_level]
        blocks = []
        for i, (B, eB) in enumerate(dst_level):
            row = []
            for j, (A, eA) in enumerate(src_level):
                el = entries[i][j]
                if el is None:
                    row.append(None)
                else:
                    h = M.action_element(el)
                    # shift routing: as a degree-0 map of the shifted groups
                    if eA % 2 == 1:
                        h = h.shift()
                    row.append(h)
            blocks.append(row)
        return _block_graded_hom(0, sources, targets, blocks)

    return diff_hom(n + 1), (diff_hom(n) if n >= 1 else None), level_group(n)


def tor_single(res: FreeResolution, M: GradedModule, n: int) -> Tuple[AbGroupNF, AbGroupNF]:
    """Tor_n(S_Y, M) from a resolution of S_Y."""
    d_in, d_out, Gn = tensor_complex_maps(res, M, n)
    parts = []
    for parity in (0, 1):
        f = d_in.from_even if parity == 0 else d_in.from_odd
        if d_out is None:
            g = GroupHom.zero(Gn.part(parity), Presentation.zero())
        else:
            g = d_out.from_even if parity == 0 else d_out.from_odd
        h = subquotient_homology(f, g)
        parts.append(h.group)
    return parts[0], parts[1]


def tor(M: GradedModule, n: int, engine: str = "auto",
        objects: Optional[Sequence[str]] = None) -> TorReport:
    """Tor_k(S_Y, M) for all Y and k = 0..n; aggregate = Tor(NT_ss, M)."""
    sc = M.category
    groups: Dict[str, Dict[int, Tuple[AbGroupNF, AbGroupNF]]] = {}
    for Y in (objects if objects is not None else sc.objects):
        res = resolution_for(sc, Y, n + 1, engine)
        degs = {}
        for k in range(n + 1):
            degs[k] = tor_single(res, M, k)
        groups[Y] = degs
    return TorReport(sc.space.name, groups)


def rational_tor(M: GradedModule, n: int, engine: str = "auto") -> Tuple[int, int]:
    """Ranks of the rational Tor: Q is flat, so this is the rank of the
    integral Tor."""
    rep = tor(M, n, engine)
    ev, od = rep.aggregate(n)
    return ev.rank, od.rank


def projective_dimension(M: GradedModule, max_n: int,
                         engine: str = "auto") -> Optional[int]:
    """Smallest n with Tor_n free and Tor_{n+1} = 0, or None beyond max_n.

    Refuses (HypothesisNotVerifiedError) unless the nilpotency and
    semidirectness hypotheses hold for the space."""
    sc = M.category
    chk = _ideal_flags(sc)
    if not (chk.nilpotent and chk.semidirect):
        raise HypothesisNotVerifiedError(
            f"nil/ss hypotheses not verified for {sc.space.name}")
    rep = tor(M, max_n + 1, engine)
    for n in range(max_n + 1):
        if rep.is_free(n) and rep.is_zero(n + 1):
            return n
    return None


_IDEAL_FLAG_CACHE: Dict[str, object] = {}


def _ideal_flags(sc: SpaceCategory):
    from .ntcat import ideal_checks
    name = sc.space.name
    if name not in _IDEAL_FLAG_CACHE:
        _IDEAL_FLAG_CACHE[name] = ideal_checks(sc.table)
    return _IDEAL_FLAG_CACHE[name]


# ---------------------------------------------------------------------------
# Left-module free complexes (for validating explicit resolutions of modules)
# ---------------------------------------------------------------------------

def left_complex_underlying(sc: SpaceCategory, levels: List[List[Summand]],
                            diffs: List[List[List[Optional[Element]]]],
                            W: str, parity: int) -> List[IntMatrix]:
    """Underlying matrices at (W, parity) of a complex of free left modules
    ... -> ⊕P_A[ε] -> ⊕P_B[ε'] (diffs[k]: levels[k+1] -> levels[k]).

    Matrix entry for a map P_A -> P_B is an element of NT(B, A) acting by
    pre-composition."""
    t = sc.table
    out = []
    for k, mat in enumerate(diffs):
        dst_level, src_level = levels[k], levels[k + 1]
        blocks = []
        for i, (B, eB) in enumerate(dst_level):
            row = []
            for j, (A, eA) in enumerate(src_level):
                el = mat[i][j]
                pin = (parity + eA) % 2
                if el is None:
                    row.append(IntMatrix.zero(t.rank.get((B, W, (parity + eB) % 2), 0),
                                              t.rank.get((A, W, pin), 0)))
                else:
                    row.append(_pre_matrix_element(sc, el, W, pin))
            blocks.append(row)
        if blocks and blocks[0]:
            out.append(IntMatrix.block(blocks))
        else:
            nrows = sum(t.rank.get((B, W, (parity + eB) % 2), 0) for B, eB in dst_level)
            ncols = sum(t.rank.get((A, W, (parity + eA) % 2), 0) for A, eA in src_level)
            out.append(IntMatrix.zero(nrows, ncols))
    return out
