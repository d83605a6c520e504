"""Exact linear algebra over the integers.

Everything here is arbitrary precision: matrices are tuples of tuples of
Python ints, groups are finitely generated abelian groups given by
presentations, and all normal forms come from the Smith normal form with
explicit unimodular transforms.  No floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class ZExactError(Exception):
    pass


class CompositionNonZeroError(ZExactError):
    """Raised when a would-be complex has a nonzero composite."""


# ---------------------------------------------------------------------------
# Integer matrices
# ---------------------------------------------------------------------------

class IntMatrix:
    """Immutable integer matrix, row major."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable[int]], rows: Optional[int] = None,
                 cols: Optional[int] = None):
        d = tuple(tuple(int(x) for x in row) for row in data)
        if rows is None:
            rows = len(d)
        if cols is None:
            cols = len(d[0]) if d else 0
        if len(d) != rows or any(len(r) != cols for r in d):
            raise ZExactError("ragged or mis-sized matrix data")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", d)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("IntMatrix is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix([[0] * cols for _ in range(rows)], rows, cols)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def from_columns(cols: Sequence[Sequence[int]], nrows: Optional[int] = None) -> "IntMatrix":
        if not cols:
            if nrows is None:
                raise ZExactError("from_columns needs nrows for an empty column list")
            return IntMatrix.zero(nrows, 0)
        n = len(cols[0])
        return IntMatrix([[c[i] for c in cols] for i in range(n)], n, len(cols))

    # -- basic queries -----------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.data == other.data \
            and self.rows == other.rows and self.cols == other.cols

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, {list(map(list, self.data))})"

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i) -> tuple:
        return self.data[i]

    def column(self, j) -> tuple:
        return tuple(self.data[i][j] for i in range(self.rows))

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ZExactError("shape mismatch in add")
        return IntMatrix([[a + b for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self.data, other.data)],
                         self.rows, self.cols)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-x for x in row] for row in self.data],
                         self.rows, self.cols)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix([[c * x for x in row] for row in self.data],
                         self.rows, self.cols)

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ZExactError(f"shape mismatch in mul: {self.cols} vs {other.rows}")
        if self.cols == 0 or other.cols == 0 or self.rows == 0:
            return IntMatrix.zero(self.rows, other.cols)
        ot = list(zip(*other.data))
        return IntMatrix([[sum(a * b for a, b in zip(row, col)) for col in ot]
                          for row in self.data], self.rows, other.cols)

    def apply(self, vec: Sequence[int]) -> tuple:
        if len(vec) != self.cols:
            raise ZExactError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.data)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(list(zip(*self.data)) if self.data else [[] for _ in range(self.cols)],
                         self.cols, self.rows)

    # -- assembly ----------------------------------------------------------

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ZExactError("hstack row mismatch")
        return IntMatrix([r1 + r2 for r1, r2 in zip(self.data, other.data)],
                         self.rows, self.cols + other.cols)

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise ZExactError("vstack col mismatch")
        return IntMatrix(self.data + other.data, self.rows + other.rows, self.cols)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix([[self.data[i][j] for j in col_idx] for i in row_idx],
                         len(row_idx), len(col_idx))

    @staticmethod
    def block(rows_of_blocks: Sequence[Sequence["IntMatrix"]]) -> "IntMatrix":
        strips = []
        for brow in rows_of_blocks:
            strip = brow[0]
            for b in brow[1:]:
                strip = strip.hstack(b)
            strips.append(strip)
        out = strips[0]
        for s in strips[1:]:
            out = out.vstack(s)
        return out

    def to_lists(self) -> list:
        return [list(row) for row in self.data]


def block_diag(blocks: Sequence[IntMatrix]) -> IntMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[0] * cols for _ in range(rows)]
    i0 = j0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[i0 + i][j0 + j] = b.data[i][j]
        i0 += b.rows
        j0 += b.cols
    return IntMatrix(out, rows, cols)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SmithForm:
    """U * A * V = S with U, V unimodular and S diagonal, d1 | d2 | ..."""
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    def diagonal(self) -> list:
        return [self.S.data[i][i] for i in range(min(self.S.rows, self.S.cols))]

    def rank(self) -> int:
        return sum(1 for d in self.diagonal() if d != 0)


def smith(A: IntMatrix) -> SmithForm:
    """Smith normal form with transforms.

    Pivots are chosen with minimal absolute value to keep intermediate
    entries small; divisibility of the diagonal is enforced at the end.
    """
    m, n = A.rows, A.cols
    M = [list(row) for row in A.data]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        if i != j:
            M[i], M[j] = M[j], M[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for r in M:
                r[i], r[j] = r[j], r[i]
            for r in V:
                r[i], r[j] = r[j], r[i]

    def add_row(src, dst, q):
        # row[dst] += q*row[src]
        Ms, Md = M[src], M[dst]
        for jj in range(n):
            Md[jj] += q * Ms[jj]
        Us, Ud = U[src], U[dst]
        for jj in range(m):
            Ud[jj] += q * Us[jj]

    def add_col(src, dst, q):
        for r in M:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    def negate_row(i):
        M[i] = [-x for x in M[i]]
        U[i] = [-x for x in U[i]]

    k = 0
    limit = min(m, n)
    while k < limit:
        # minimal-absolute-value nonzero pivot in the trailing block
        piv = None
        best = None
        for i in range(k, m):
            for j in range(k, n):
                v = abs(M[i][j])
                if v and (best is None or v < best):
                    best, piv = v, (i, j)
                    if v == 1:
                        break
            if best == 1:
                break
        if piv is None:
            break
        swap_rows(k, piv[0])
        swap_cols(k, piv[1])
        while True:
            for i in range(k + 1, m):
                if M[i][k]:
                    add_row(k, i, -(M[i][k] // M[k][k]))
            pending = [i for i in range(k + 1, m) if M[i][k]]
            if pending:
                # remainder smaller than pivot; promote it
                i = min(pending, key=lambda r: abs(M[r][k]))
                swap_rows(k, i)
                continue
            for j in range(k + 1, n):
                if M[k][j]:
                    add_col(k, j, -(M[k][j] // M[k][k]))
            pending = [j for j in range(k + 1, n) if M[k][j]]
            if pending:
                j = min(pending, key=lambda c: abs(M[k][c]))
                swap_cols(k, j)
                continue
            break
        k += 1

    # nonnegative diagonal
    for i in range(limit):
        if M[i][i] < 0:
            negate_row(i)
    # enforce divisibility d_i | d_{i+1}
    changed = True
    while changed:
        changed = False
        for i in range(limit - 1):
            a, b = M[i][i], M[i + 1][i + 1]
            if a and b % a != 0:
                # fold the next pivot into position i and rediagonalise 2x2
                add_col(i + 1, i, 1)
                # now column i has entries a (row i) and b (row i+1)
                while M[i + 1][i]:
                    q = M[i][i] // M[i + 1][i] if M[i + 1][i] else 0
                    if abs(M[i][i]) >= abs(M[i + 1][i]):
                        add_row(i + 1, i, -(M[i][i] // M[i + 1][i]))
                    swap_rows(i, i + 1)
                # clear the fill-in in row i / column i+1
                if M[i][i]:
                    add_col(i, i + 1, -(M[i][i + 1] // M[i][i]))
                if M[i][i] < 0:
                    negate_row(i)
                if M[i + 1][i + 1] < 0:
                    negate_row(i + 1)
                changed = True
    return SmithForm(IntMatrix(U, m, m), IntMatrix(M, m, n), IntMatrix(V, n, n))


def det(A: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    if A.rows != A.cols:
        raise ZExactError("det of non-square matrix")
    n = A.rows
    if n == 0:
        return 1
    M = [list(row) for row in A.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def kernel(A: IntMatrix) -> IntMatrix:
    """Columns form a lattice basis of ker(A) = {x : A x = 0}."""
    sf = smith(A)
    r = sf.rank()
    cols = [sf.V.column(j) for j in range(r, A.cols)]
    return hnf_columns(IntMatrix.from_columns(cols, A.cols)) if cols \
        else IntMatrix.zero(A.cols, 0)


def solve(A: IntMatrix, b: Sequence[int]) -> Optional[tuple]:
    """One integer solution x of A x = b, or None."""
    if len(b) != A.rows:
        raise ZExactError("rhs length mismatch")
    sf = smith(A)
    c = sf.U.apply(b)
    y = [0] * A.cols
    diag = sf.diagonal()
    for i in range(A.rows):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d != 0:
                return None
            y[i] = c[i] // d
    return sf.V.apply(y)


def in_column_span(A: IntMatrix, b: Sequence[int]) -> bool:
    return solve(A, b) is not None


def _hnf_rows(rows: list, width: int) -> list:
    """Canonical Hermite basis (row style) of the lattice spanned by rows."""
    basis = {}  # pivot column -> row (list)

    def first_nz(r):
        for i, x in enumerate(r):
            if x:
                return i
        return None

    for r0 in rows:
        cur = list(r0)
        while True:
            p = first_nz(cur)
            if p is None:
                break
            if p not in basis:
                basis[p] = cur
                break
            b = basis[p]
            q = cur[p] // b[p]
            cur = [x - q * y for x, y in zip(cur, b)]
            if cur[p]:
                # b[p] did not divide: swap roles and continue Euclid
                basis[p], cur = cur, b
    out = [basis[p] for p in sorted(basis)]
    for r in out:
        p = first_nz(r)
        if r[p] < 0:
            r[:] = [-x for x in r]
    # reduce entries above each pivot into [0, pivot)
    pivots = [(first_nz(r), r) for r in out]
    for j in range(len(out)):
        pj, rj = pivots[j]
        for i in range(j):
            ri = pivots[i][1]
            if ri[pj]:
                q = ri[pj] // rj[pj]
                ri[:] = [x - q * y for x, y in zip(ri, rj)]
    return out


def hnf_columns(A: IntMatrix) -> IntMatrix:
    """Canonical basis of the column lattice of A (Hermite form).

    Zero columns are dropped; equal lattices yield equal matrices.
    """
    rows = _hnf_rows([list(A.column(j)) for j in range(A.cols)], A.rows)
    return IntMatrix.from_columns([tuple(r) for r in rows], A.rows)


def lattice_rank(A: IntMatrix) -> int:
    return smith(A).rank()


# ---------------------------------------------------------------------------
# Presented abelian groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AbGroupNF:
    """Canonical form Z^rank + Z/d1 + Z/d2 + ... with 1 < d1 | d2 | ..."""
    rank: int
    torsion: tuple

    def __post_init__(self):
        for i, d in enumerate(self.torsion):
            if d <= 1:
                raise ZExactError("torsion entries must exceed 1")
            if i and d % self.torsion[i - 1] != 0:
                raise ZExactError("torsion divisibility chain violated")

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def is_free(self) -> bool:
        return not self.torsion

    def __str__(self):
        parts = []
        if self.rank:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


class Presentation:
    """Abelian group Z^generators / column span of the relation matrix."""

    __slots__ = ("generators", "relations", "_nf_cache")

    def __init__(self, generators: int, relations: Optional[IntMatrix] = None):
        if relations is None:
            relations = IntMatrix.zero(generators, 0)
        if relations.rows != generators:
            raise ZExactError("relation matrix must have one row per generator")
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "relations", relations)
        object.__setattr__(self, "_nf_cache", None)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Presentation is immutable")

    def __repr__(self):
        return f"Presentation({self.generators} gens, {self.relations.cols} rels)"

    @staticmethod
    def free(n: int) -> "Presentation":
        return Presentation(n)

    @staticmethod
    def zero() -> "Presentation":
        return Presentation(0)

    def with_extra_relations(self, extra: IntMatrix) -> "Presentation":
        return Presentation(self.generators, self.relations.hstack(extra))

    def _smith(self) -> SmithForm:
        cache = self._nf_cache
        if cache is None:
            cache = smith(self.relations)
            object.__setattr__(self, "_nf_cache", cache)
        return cache

    def normal_form(self) -> AbGroupNF:
        sf = self._smith()
        diag = sf.diagonal()
        rank = self.generators - sum(1 for d in diag if d != 0)
        torsion = tuple(d for d in diag if d > 1)
        return AbGroupNF(rank, torsion)

    def class_vector(self, v: Sequence[int]) -> tuple:
        """Canonical coordinates of the class of v: torsion coords mod d,
        then free coords."""
        if len(v) != self.generators:
            raise ZExactError("vector length mismatch")
        sf = self._smith()
        y = sf.U.apply(v)
        diag = sf.diagonal()
        tors = []
        free = []
        for i in range(self.generators):
            d = diag[i] if i < len(diag) else 0
            if d == 0:
                free.append(y[i])
            elif d > 1:
                tors.append(y[i] % d)
        return tuple(tors) + tuple(free)

    def is_zero_class(self, v: Sequence[int]) -> bool:
        return all(c == 0 for c in self.class_vector(v))


def normal_form(P: Presentation) -> AbGroupNF:
    return P.normal_form()


@dataclass(frozen=True)
class GroupHom:
    """Hom of presented groups, given by a matrix on generators."""
    source: Presentation
    target: Presentation
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.rows != self.target.generators or \
           self.matrix.cols != self.source.generators:
            raise ZExactError("hom matrix shape mismatch")

    def is_well_defined(self) -> bool:
        R = self.source.relations
        for j in range(R.cols):
            img = self.matrix.apply(R.column(j))
            if not in_column_span(self.target.relations, img):
                return False
        return True

    def is_zero_hom(self) -> bool:
        for j in range(self.matrix.cols):
            if not in_column_span(self.target.relations, self.matrix.column(j)):
                return False
        return True

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self after other."""
        if other.target.generators != self.source.generators:
            raise ZExactError("compose shape mismatch")
        return GroupHom(other.source, self.target, self.matrix * other.matrix)

    def __neg__(self):
        return GroupHom(self.source, self.target, -self.matrix)

    def add(self, other: "GroupHom") -> "GroupHom":
        return GroupHom(self.source, self.target, self.matrix + other.matrix)

    @staticmethod
    def zero(source: Presentation, target: Presentation) -> "GroupHom":
        return GroupHom(source, target, IntMatrix.zero(target.generators, source.generators))

    @staticmethod
    def identity(P: Presentation) -> "GroupHom":
        return GroupHom(P, P, IntMatrix.identity(P.generators))


@dataclass(frozen=True)
class HomologyResult:
    group: AbGroupNF
    # presentation of ker(g)/im(f) in terms of a kernel lattice basis
    lattice_basis: IntMatrix      # columns: basis of the lifted cycle lattice
    quotient: Presentation        # ker/im presented on that basis

    def class_of(self, v: Sequence[int]) -> tuple:
        """Canonical class of an element of the middle group given by a
        coordinate vector in its generators.  The vector must be a cycle."""
        coords = solve(self.lattice_basis, v)
        if coords is None:
            raise ZExactError("element is not a cycle")
        return self.quotient.class_vector(coords)

    def is_generator(self, v: Sequence[int]) -> bool:
        """True if the class of v generates the homology group."""
        nf = self.group
        cls = self.class_of(v)
        if nf.rank == 1 and not nf.torsion:
            return abs(cls[0]) == 1
        if nf.rank == 0 and len(nf.torsion) == 1:
            from math import gcd
            return gcd(cls[0], nf.torsion[0]) == 1
        raise ZExactError("is_generator only supported for cyclic homology")


def subquotient_homology(f: GroupHom, g: GroupHom) -> HomologyResult:
    """Homology ker(g)/im(f) at the middle presented group.

    Requires g∘f = 0 as maps of presented groups.
    """
    if f.target is not g.source and f.target.generators != g.source.generators:
        raise ZExactError("homology maps not composable")
    if not g.compose(f).is_zero_hom():
        raise CompositionNonZeroError("g∘f is not zero on presentations")
    B = g.source
    n = B.generators
    # lattice of cycles: x with g(x) in the relation span of C
    stacked = g.matrix.hstack(g.target.relations)
    K = kernel(stacked)
    cyc = hnf_columns(K.submatrix(range(n), range(K.cols)))
    # boundaries: images of f plus relations of B
    bound = f.matrix.hstack(B.relations)
    rel_cols = []
    for j in range(bound.cols):
        col = bound.column(j)
        coords = solve(cyc, col)
        if coords is None:
            raise ZExactError("boundary not contained in cycles")
        rel_cols.append(coords)
    quotient = Presentation(cyc.cols, IntMatrix.from_columns(rel_cols, cyc.cols))
    return HomologyResult(quotient.normal_form(), cyc, quotient)


# ---------------------------------------------------------------------------
# Z/2-graded groups and homs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GradedGroup:
    even: Presentation
    odd: Presentation

    @staticmethod
    def zero() -> "GradedGroup":
        return GradedGroup(Presentation.zero(), Presentation.zero())

    def part(self, parity: int) -> Presentation:
        return self.even if parity % 2 == 0 else self.odd

    def normal_form(self) -> tuple:
        return (self.even.normal_form(), self.odd.normal_form())

    def is_trivial(self) -> bool:
        nf = self.normal_form()
        return nf[0].is_trivial() and nf[1].is_trivial()


def shift(G: GradedGroup) -> GradedGroup:
    """Degree shift [1]: swaps the two parities."""
    return GradedGroup(G.odd, G.even)


def graded_direct_sum(groups: Sequence[GradedGroup]) -> GradedGroup:
    ev_g = sum(g.even.generators for g in groups)
    od_g = sum(g.odd.generators for g in groups)
    ev_r = block_diag([g.even.relations for g in groups]) if groups else IntMatrix.zero(0, 0)
    od_r = block_diag([g.odd.relations for g in groups]) if groups else IntMatrix.zero(0, 0)
    return GradedGroup(Presentation(ev_g, ev_r), Presentation(od_g, od_r))


@dataclass(frozen=True)
class GradedHom:
    """Parity respecting map of graded groups.

    degree 0: from_even: even->even, from_odd: odd->odd
    degree 1: from_even: even->odd,  from_odd: odd->even
    """
    degree: int
    from_even: GroupHom
    from_odd: GroupHom

    def __post_init__(self):
        if self.degree not in (0, 1):
            raise ZExactError("degree must be 0 or 1")

    @staticmethod
    def build(degree: int, source: GradedGroup, target: GradedGroup,
              even_part: IntMatrix, odd_part: IntMatrix) -> "GradedHom":
        if degree == 0:
            return GradedHom(0, GroupHom(source.even, target.even, even_part),
                             GroupHom(source.odd, target.odd, odd_part))
        return GradedHom(1, GroupHom(source.even, target.odd, even_part),
                         GroupHom(source.odd, target.even, odd_part))

    @staticmethod
    def zero(degree: int, source: GradedGroup, target: GradedGroup) -> "GradedHom":
        ev_t = target.even if degree == 0 else target.odd
        od_t = target.odd if degree == 0 else target.even
        return GradedHom(degree, GroupHom.zero(source.even, ev_t),
                         GroupHom.zero(source.odd, od_t))

    @staticmethod
    def identity(G: GradedGroup) -> "GradedHom":
        return GradedHom(0, GroupHom.identity(G.even), GroupHom.identity(G.odd))

    def source(self) -> GradedGroup:
        return GradedGroup(self.from_even.source, self.from_odd.source)

    def is_well_defined(self) -> bool:
        return self.from_even.is_well_defined() and self.from_odd.is_well_defined()

    def is_zero_hom(self) -> bool:
        return self.from_even.is_zero_hom() and self.from_odd.is_zero_hom()

    def compose(self, other: "GradedHom") -> "GradedHom":
        """self after other; parities route through the intermediate group."""
        if other.degree == 0:
            fe = self.from_even.compose(other.from_even)
            fo = self.from_odd.compose(other.from_odd)
        else:
            fe = self.from_odd.compose(other.from_even)
            fo = self.from_even.compose(other.from_odd)
        deg = (self.degree + other.degree) % 2
        return GradedHom(deg, fe, fo)

    def add(self, other: "GradedHom") -> "GradedHom":
        if self.degree != other.degree:
            raise ZExactError("parity mismatch in sum of graded homs")
        return GradedHom(self.degree, self.from_even.add(other.from_even),
                         self.from_odd.add(other.from_odd))

    def __neg__(self):
        return GradedHom(self.degree, -self.from_even, -self.from_odd)

    def shift(self) -> "GradedHom":
        """The same map between the shifted groups."""
        return GradedHom(self.degree, self.from_odd, self.from_even)

    def component(self, source_parity: int) -> GroupHom:
        return self.from_even if source_parity % 2 == 0 else self.from_odd


def format_group(nf: AbGroupNF) -> str:
    return str(nf)
