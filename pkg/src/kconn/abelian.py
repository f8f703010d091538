"""Exact linear algebra over Z.

Smith normal form, presented abelian groups, kernels and cokernels, and the
invariant-factor canonical form that every other module reports its answers
in.  All arithmetic uses Python's arbitrary-precision integers; nothing is
ever rounded.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd, lcm, prod


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (x, y, g) with x*a + y*b == g == gcd(a, b) and g >= 0."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


class IntegerMatrix:
    """Immutable dense matrix of arbitrary-precision integers."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, cols: int | None = None):
        data = tuple(tuple(int(v) for v in row) for row in entries)
        if data:
            width = len(data[0])
            if any(len(row) != width for row in data):
                raise ValueError("rows have unequal lengths")
            if cols is not None and cols != width:
                raise ValueError("explicit column count disagrees with rows")
        else:
            width = 0 if cols is None else cols
        if width < 0:
            raise ValueError("negative column count")
        self.entries = data
        self.rows = len(data)
        self.cols = width

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, values, rows: int | None = None, cols: int | None = None) -> "IntegerMatrix":
        vals = list(values)
        m = len(vals) if rows is None else rows
        n = len(vals) if cols is None else cols
        ent = [[0] * n for _ in range(m)]
        for i, v in enumerate(vals):
            ent[i][i] = v
        return cls(ent, cols=n)

    def __eq__(self, other):
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.cols == other.cols and self.entries == other.entries

    def __hash__(self):
        return hash((self.cols, self.entries))

    def __repr__(self):
        return f"IntegerMatrix({[list(r) for r in self.entries]!r})"

    def __getitem__(self, key):
        i, j = key
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def __mul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        out = []
        for i in range(self.rows):
            srow = self.entries[i]
            out.append(
                [
                    sum(srow[k] * other.entries[k][j] for k in range(self.cols))
                    for j in range(other.cols)
                ]
            )
        return IntegerMatrix(out, cols=other.cols)

    def is_diagonal(self) -> bool:
        return all(
            v == 0
            for i, row in enumerate(self.entries)
            for j, v in enumerate(row)
            if i != j
        )

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


@dataclass(frozen=True)
class FgAbelianGroup:
    """Canonical form of a finitely generated abelian group.

    ``free_rank`` copies of Z plus cyclic parts Z/d_1 + ... + Z/d_k where the
    invariant factors satisfy 1 < d_1 | d_2 | ... | d_k.  The pair is a
    complete isomorphism invariant, so equality of instances is isomorphism.
    """

    free_rank: int
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        factors = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", factors)
        for d in factors:
            if d <= 1:
                raise ValueError("invariant factors must exceed 1")
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")

    @classmethod
    def trivial(cls) -> "FgAbelianGroup":
        return cls(0, ())

    @classmethod
    def free(cls, rank: int) -> "FgAbelianGroup":
        return cls(rank, ())

    @classmethod
    def cyclic(cls, n: int) -> "FgAbelianGroup":
        if n == 0:
            return cls(1, ())
        n = abs(n)
        return cls(0, ()) if n == 1 else cls(0, (n,))

    @classmethod
    def from_cyclic_orders(cls, free_rank: int, orders) -> "FgAbelianGroup":
        """Canonicalise an arbitrary list of cyclic orders (0 meaning Z)."""
        by_prime: dict[int, list[int]] = {}
        rank = free_rank
        for d in orders:
            d = abs(int(d))
            if d == 0:
                rank += 1
                continue
            if d == 1:
                continue
            for p, e in _factorize(d).items():
                by_prime.setdefault(p, []).append(e)
        if not by_prime:
            return cls(rank, ())
        for exps in by_prime.values():
            exps.sort(reverse=True)
        width = max(len(v) for v in by_prime.values())
        factors = []
        for slot in range(width):
            d = prod(p ** exps[slot] for p, exps in by_prime.items() if slot < len(exps))
            factors.append(d)
        factors.reverse()
        return cls(rank, tuple(factors))

    def direct_sum(self, *others: "FgAbelianGroup") -> "FgAbelianGroup":
        rank = self.free_rank + sum(g.free_rank for g in others)
        orders = list(self.invariant_factors)
        for g in others:
            orders.extend(g.invariant_factors)
        return FgAbelianGroup.from_cyclic_orders(rank, orders)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        return prod(self.invariant_factors) if self.invariant_factors else 1

    def elementary_rank(self, p: int) -> int | None:
        """Dimension over Z/p when the group is an elementary abelian p-group."""
        if self.free_rank:
            return None
        if any(d != p for d in self.invariant_factors):
            return None
        return len(self.invariant_factors)

    def to_json_dict(self) -> dict:
        return {"rank": self.free_rank, "invariants": list(self.invariant_factors)}

    def __str__(self) -> str:
        return render_group(self)


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def groups_isomorphic(g: FgAbelianGroup, h: FgAbelianGroup) -> bool:
    """Canonical forms are complete invariants, so this is just equality."""
    return g == h


# --- rendering and parsing -------------------------------------------------

def render_group(g: FgAbelianGroup) -> str:
    """Human rendering, largest factors first, e.g. ``Z^2 + Z/8 + (Z/2)^3``
    written with the direct-sum sign: ``Z/8 ⊕ Z/2``."""
    if g.is_trivial():
        return "0"
    parts = []
    if g.free_rank == 1:
        parts.append("Z")
    elif g.free_rank > 1:
        parts.append(f"Z^{g.free_rank}")
    run_val, run_len = None, 0
    for d in reversed(g.invariant_factors):
        if d == run_val:
            run_len += 1
            continue
        if run_val is not None:
            parts.append(_render_run(run_val, run_len))
        run_val, run_len = d, 1
    if run_val is not None:
        parts.append(_render_run(run_val, run_len))
    return " ⊕ ".join(parts)


def _render_run(d: int, count: int) -> str:
    return f"Z/{d}" if count == 1 else f"(Z/{d})^{count}"


_TOKEN = re.compile(
    r"^(?:Z(?:\^(?P<rank>\d+))?|Z/(?P<mod>\d+)|\(Z/(?P<bmod>\d+)\)\^(?P<bexp>\d+))$"
)


def parse_group(text: str) -> FgAbelianGroup:
    """Parse the rendering produced by :func:`render_group`."""
    text = text.strip()
    if text == "0":
        return FgAbelianGroup.trivial()
    rank = 0
    orders: list[int] = []
    for token in re.split(r"\s*⊕\s*", text):
        m = _TOKEN.match(token.strip())
        if not m:
            raise ValueError(f"cannot parse group term {token!r}")
        if m.group("mod"):
            orders.append(int(m.group("mod")))
        elif m.group("bmod"):
            orders.extend([int(m.group("bmod"))] * int(m.group("bexp")))
        else:
            rank += int(m.group("rank") or 1)
    return FgAbelianGroup.from_cyclic_orders(rank, orders)


# --- Smith normal form -----------------------------------------------------

def smith_normal_form(mat: IntegerMatrix) -> tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """Return (D, U, V) with U*mat*V == D, D diagonal with d1 | d2 | ...,
    all entries >= 0 and U, V unimodular."""
    d, u, v, _ = _snf_transforms(mat, want_vinv=False)
    return d, u, v


def _snf_transforms(mat: IntegerMatrix, want_vinv: bool):
    a = mat.to_lists()
    m, n = mat.rows, mat.cols
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    vinv = [[1 if i == j else 0 for j in range(n)] for i in range(n)] if want_vinv else None

    def row_sub(i, j, q):  # row_i -= q * row_j
        ai, aj = a[i], a[j]
        ui, uj = u[i], u[j]
        for k in range(n):
            ai[k] -= q * aj[k]
        for k in range(m):
            ui[k] -= q * uj[k]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    def col_sub(j, i, q):  # col_j -= q * col_i
        for row in a:
            row[j] -= q * row[i]
        for row in v:
            row[j] -= q * row[i]
        if vinv is not None:  # inverse op: row_i += q * row_j
            vi, vj = vinv[i], vinv[j]
            for k in range(n):
                vi[k] += q * vj[k]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        if vinv is not None:
            vinv[i], vinv[j] = vinv[j], vinv[i]

    def find_pivot(t):
        best = None
        where = None
        for i in range(t, m):
            ai = a[i]
            for j in range(t, n):
                val = ai[j]
                if val:
                    val = -val if val < 0 else val
                    if best is None or val < best:
                        best, where = val, (i, j)
                        if val == 1:
                            return where
        return where

    def clear_at(t):
        # Minimal-absolute-value pivoting; loop until row t and column t are
        # clear outside the pivot.
        while True:
            where = find_pivot(t)
            if where is None:
                return False
            if where != (t, t):
                if where[0] != t:
                    row_swap(t, where[0])
                if where[1] != t:
                    col_swap(t, where[1])
            if a[t][t] < 0:
                row_neg(t)
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                x = a[i][t]
                if x:
                    q = x // piv
                    if q:
                        row_sub(i, t, q)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                x = a[t][j]
                if x:
                    q = x // piv
                    if q:
                        col_sub(j, t, q)
                    if a[t][j]:
                        dirty = True
            if not dirty:
                return True

    rank = 0
    for t in range(min(m, n)):
        if not clear_at(t):
            break
        rank += 1

    def clear_block(i):
        # Rediagonalise the 2x2 block at rows/cols {i, i+1}; every other entry
        # in these two rows and columns is zero, so the work stays local.
        while True:
            cells = [
                (abs(a[r][c]), r, c)
                for r in (i, i + 1)
                for c in (i, i + 1)
                if a[r][c]
            ]
            if not cells:
                return
            _, r0, c0 = min(cells)
            if r0 != i:
                row_swap(i, r0)
            if c0 != i:
                col_swap(i, c0)
            if a[i][i] < 0:
                row_neg(i)
            piv = a[i][i]
            dirty = False
            x = a[i + 1][i]
            if x:
                q = x // piv
                if q:
                    row_sub(i + 1, i, q)
                if a[i + 1][i]:
                    dirty = True
            x = a[i][i + 1]
            if x:
                q = x // piv
                if q:
                    col_sub(i + 1, i, q)
                if a[i][i + 1]:
                    dirty = True
            if not dirty:
                return

    # Enforce the divisibility chain by merging adjacent diagonal entries.
    for i in range(rank):
        if a[i][i] < 0:
            row_neg(i)
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            di, dj = a[i][i], a[i + 1][i + 1]
            if dj % di:
                # bring d_{i+1} alongside d_i and rediagonalise the block
                col_sub(i, i + 1, -1)
                clear_block(i)
                if a[i][i] < 0:
                    row_neg(i)
                if a[i + 1][i + 1] < 0:
                    row_neg(i + 1)
                changed = True

    return (
        IntegerMatrix(a, cols=n),
        IntegerMatrix(u, cols=m),
        IntegerMatrix(v, cols=n),
        IntegerMatrix(vinv, cols=n) if want_vinv else None,
    )


# --- invariant factors of a row lattice (fast path, no transforms) ---------

def _chain_normalize(values: list[int]) -> list[int]:
    vals = [abs(x) for x in values if x]
    changed = True
    while changed:
        changed = False
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                if vals[j] % vals[i]:
                    g = gcd(vals[i], vals[j])
                    vals[i], vals[j] = g, vals[i] // g * vals[j]
                    changed = True
    vals.sort()
    return vals


def _dense_invariants(a: list[list[int]]) -> list[int]:
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        best, where = None, None
        for i in range(t, m):
            for j in range(t, n):
                val = a[i][j]
                if val:
                    val = -val if val < 0 else val
                    if best is None or val < best:
                        best, where = val, (i, j)
                        if val == 1:
                            break
            if best == 1:
                break
        if where is None:
            break
        i0, j0 = where
        if i0 != t:
            a[t], a[i0] = a[i0], a[t]
        if j0 != t:
            for row in a:
                row[t], row[j0] = row[j0], row[t]
        while True:
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                x = a[i][t]
                if x:
                    q = x // piv
                    ai, at = a[i], a[t]
                    for k in range(t, n):
                        ai[k] -= q * at[k]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(t + 1, n):
                x = a[t][j]
                if x:
                    q = x // piv
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
                        break
            if not dirty:
                break
        diag.append(abs(a[t][t]))
        t += 1
    return _chain_normalize(diag)


def _invariant_factors(sparse_rows, ncols: int) -> tuple[int, list[int]]:
    """(rank, invariant factors > 1) of the lattice spanned by the rows.

    Rows are dicts column -> nonzero value.  Unimodular pivots are peeled off
    sparsely before the dense residue is diagonalised.
    """
    rows: dict[int, dict[int, int]] = {}
    col_index: dict[int, set[int]] = {}
    next_id = 0

    def insert(row: dict[int, int]):
        nonlocal next_id
        rid = next_id
        next_id += 1
        rows[rid] = row
        for c in row:
            col_index.setdefault(c, set()).add(rid)
        return rid

    def update(rid: int, col: int, val: int):
        row = rows[rid]
        if val:
            if col not in row:
                col_index.setdefault(col, set()).add(rid)
            row[col] = val
        elif col in row:
            del row[col]
            col_index[col].discard(rid)

    for r in sparse_rows:
        r = {c: v for c, v in r.items() if v}
        if r:
            insert(r)

    unit_rank = 0
    # Peel unimodular pivots: clearing their column needs row operations only,
    # and clearing their row afterwards is a column operation that touches no
    # other row.
    while True:
        pivot = None
        for rid in sorted(rows):
            row = rows[rid]
            for c in sorted(row):
                if row[c] in (1, -1):
                    pivot = (rid, c)
                    break
            if pivot:
                break
        if not pivot:
            break
        rid, c = pivot
        prow = rows[rid]
        sign = prow[c]
        for other in sorted(col_index.get(c, ())):
            if other == rid:
                continue
            q = rows[other][c] * sign
            for cc, vv in list(prow.items()):
                update(other, cc, rows[other].get(cc, 0) - q * vv)
        for cc in list(prow):
            col_index[cc].discard(rid)
        del rows[rid]
        unit_rank += 1

    if not rows:
        return unit_rank, []

    used_cols = sorted({c for row in rows.values() for c in row})
    col_pos = {c: k for k, c in enumerate(used_cols)}
    dense = []
    for rid in sorted(rows):
        row = [0] * len(used_cols)
        for c, v in rows[rid].items():
            row[col_pos[c]] = v
        dense.append(row)
    factors = _dense_invariants(dense)
    rank = unit_rank + len(factors)
    return rank, [d for d in factors if d > 1]


def cokernel_group(generators: int, relations: IntegerMatrix) -> FgAbelianGroup:
    """Canonical form of Z^generators modulo the row lattice of ``relations``."""
    if relations.cols != generators:
        raise ValueError("relation matrix width must equal the generator count")
    sparse = ({j: v for j, v in enumerate(row) if v} for row in relations.entries)
    rank, factors = _invariant_factors(sparse, generators)
    return FgAbelianGroup(generators - rank, tuple(factors))


# --- lattice utilities ------------------------------------------------------

def _echelon(rows, ncols: int) -> list[list[int]]:
    """Integer row echelon of the lattice spanned by ``rows``; the output rows
    have strictly increasing leading columns and span the same lattice."""
    pivots: dict[int, list[int]] = {}
    for row in rows:
        r = list(row)
        while True:
            j = next((k for k, x in enumerate(r) if x), None)
            if j is None:
                break
            if j not in pivots:
                if r[j] < 0:
                    r = [-x for x in r]
                pivots[j] = r
                break
            p = pivots[j]
            aa, bb = p[j], r[j]
            if bb % aa == 0:
                q = bb // aa
                for k in range(j, ncols):
                    r[k] -= q * p[k]
            else:
                x, y, g = _xgcd(aa, bb)
                ka, kb = aa // g, bb // g
                for k in range(j, ncols):
                    pk, rk = p[k], r[k]
                    p[k] = x * pk + y * rk
                    r[k] = ka * rk - kb * pk
    return [pivots[j] for j in sorted(pivots)]


def _leading(row) -> int | None:
    return next((k for k, x in enumerate(row) if x), None)


def lattice_member(echelon_rows: list[list[int]], vec) -> bool:
    """Membership of ``vec`` in the lattice given by echelon rows."""
    return _solve_against_echelon(echelon_rows, vec) is not None


def _solve_against_echelon(echelon_rows, vec) -> list[int] | None:
    r = list(vec)
    coeffs = [0] * len(echelon_rows)
    lead = {_leading(row): idx for idx, row in enumerate(echelon_rows)}
    while True:
        j = _leading(r)
        if j is None:
            return coeffs
        idx = lead.get(j)
        if idx is None:
            return None
        p = echelon_rows[idx]
        if r[j] % p[j]:
            return None
        q = r[j] // p[j]
        for k in range(j, len(r)):
            r[k] -= q * p[k]
        coeffs[idx] += q


def left_nullspace(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis of the left-nullspace lattice {z : z * M == 0} where M has the
    given rows.  Computed by echelonising the augmented rows [M | I]."""
    m = len(rows)
    aug = []
    for i, row in enumerate(rows):
        tail = [0] * m
        tail[i] = 1
        aug.append(list(row) + tail)
    ech = _echelon(aug, ncols + m)
    out = []
    for row in ech:
        j = _leading(row)
        if j is not None and j >= ncols:
            out.append(row[ncols:])
    return out


def quotient_group(sup_rows: list[list[int]], sub_rows, ambient: int) -> FgAbelianGroup:
    """Canonical form of (lattice spanned by sup_rows) / (lattice spanned by
    sub_rows); the sublattice must be contained in the big one."""
    basis = _echelon(sup_rows, ambient)
    if not basis:
        if any(any(row) for row in sub_rows):
            raise ValueError("sublattice is not contained in the ambient lattice")
        return FgAbelianGroup.trivial()
    coeff_rows = []
    for row in sub_rows:
        coeffs = _solve_against_echelon(basis, row)
        if coeffs is None:
            raise ValueError("sublattice is not contained in the ambient lattice")
        coeff_rows.append(coeffs)
    return cokernel_group(len(basis), IntegerMatrix(coeff_rows, cols=len(basis)))


# --- presented groups and maps between them ---------------------------------

@dataclass(frozen=True)
class GroupPresentation:
    """Z^n_gens modulo the rows of ``relations``."""

    n_gens: int
    relations: IntegerMatrix

    def __post_init__(self):
        if self.relations.cols != self.n_gens:
            raise ValueError("relation width must equal generator count")

    def group(self) -> FgAbelianGroup:
        return cokernel_group(self.n_gens, self.relations)

    def direct_sum(self, other: "GroupPresentation") -> "GroupPresentation":
        n = self.n_gens + other.n_gens
        rows = [list(r) + [0] * other.n_gens for r in self.relations.entries]
        rows += [[0] * self.n_gens + list(r) for r in other.relations.entries]
        return GroupPresentation(n, IntegerMatrix(rows, cols=n))


@dataclass(frozen=True)
class SimplifiedPresentation:
    """A minimal presentation together with the coordinate changes.

    ``to_min`` maps old coordinates to minimal ones (row vector times matrix)
    and ``from_min`` lifts a minimal generator back to old coordinates.
    """

    presentation: GroupPresentation
    to_min: IntegerMatrix
    from_min: IntegerMatrix


def simplify_presentation(pres: GroupPresentation) -> SimplifiedPresentation:
    n = pres.n_gens
    if pres.relations.rows == 0:
        ident = IntegerMatrix.identity(n)
        return SimplifiedPresentation(pres, ident, ident)
    d, _, v, vinv = _snf_transforms(pres.relations, want_vinv=True)
    diag = [d[i, i] for i in range(min(d.rows, d.cols))]
    keep = [j for j in range(n) if j >= len(diag) or diag[j] != 1]
    rel_rows = []
    for pos, j in enumerate(keep):
        if j < len(diag) and diag[j] > 1:
            row = [0] * len(keep)
            row[pos] = diag[j]
            rel_rows.append(row)
    to_min = IntegerMatrix([[v[i, j] for j in keep] for i in range(n)], cols=len(keep))
    from_min = IntegerMatrix([vinv.row(j) for j in keep], cols=n)
    mini = GroupPresentation(len(keep), IntegerMatrix(rel_rows, cols=len(keep)))
    return SimplifiedPresentation(mini, to_min, from_min)


@dataclass(frozen=True)
class AbelianGroupMap:
    """Homomorphism between presented groups, given on generators.

    Row i of ``images`` is the image of source generator i written in target
    generators.  Construction verifies that every source relation lands in
    the relation lattice of the target, i.e. that the map is well defined.
    """

    source: GroupPresentation
    target: GroupPresentation
    images: IntegerMatrix

    def __post_init__(self):
        if self.images.rows != self.source.n_gens or self.images.cols != self.target.n_gens:
            raise ValueError("image matrix shape must be n_source x n_target")
        ech = _echelon([list(r) for r in self.target.relations.entries], self.target.n_gens)
        for rel in self.source.relations.entries:
            vec = _apply_row(rel, self.images)
            if not lattice_member(ech, vec):
                raise ValueError("images do not respect the source relations")


def _apply_row(row, mat: IntegerMatrix) -> list[int]:
    out = [0] * mat.cols
    for i, c in enumerate(row):
        if c:
            mrow = mat.entries[i]
            for j in range(mat.cols):
                out[j] += c * mrow[j]
    return out


def kernel_generators(f: AbelianGroupMap) -> list[list[int]]:
    """Lifts (in source generators) of a generating set of ker(f)."""
    ns, nt = f.source.n_gens, f.target.n_gens
    stacked = [list(r) for r in f.images.entries]
    stacked += [list(r) for r in f.target.relations.entries]
    null = left_nullspace(stacked, nt)
    gens = [row[:ns] for row in null]
    return _echelon(gens, ns)


def kernel_of_map(f: AbelianGroupMap) -> FgAbelianGroup:
    """Canonical form of the kernel, computed by pulling the target relation
    lattice back through the lift to free covers."""
    gens = kernel_generators(f)
    sub = [list(r) for r in f.source.relations.entries]
    return quotient_group(gens, sub, f.source.n_gens)


def element_order(pres: GroupPresentation, vec) -> int | None:
    """Order of the class of ``vec`` in the presented group (None = infinite)."""
    if len(vec) != pres.n_gens:
        raise ValueError("vector length must equal generator count")
    if pres.relations.rows == 0:
        return 1 if not any(vec) else None
    d, _, v, _ = _snf_transforms(pres.relations, want_vinv=False)
    w = _apply_row(vec, v)  # w = vec * V
    diag = [d[i, i] for i in range(min(d.rows, d.cols))]
    order = 1
    for j in range(pres.n_gens):
        dj = diag[j] if j < len(diag) else 0
        if dj == 0:
            if w[j]:
                return None
        else:
            order = lcm(order, dj // gcd(dj, w[j] % dj))
    return order
