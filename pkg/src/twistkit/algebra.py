"""Finite-dimensional nonassociative algebras by structure constants.

An algebra is a field, a dimension n and an n*n*n tensor with
e_i e_j = sum_k table[i][j][k] e_k.  Elements are coordinate vectors.
Algebras are immutable after construction; all operations are pure.
"""

from __future__ import annotations

from .errors import DimensionError, SingularMapError
from .linalg import (Matrix, basis_vector, format_vector, in_span, stack,
                     vec_eq, vec_is_zero, vec_sub, zero_vector)

DENSE_DIM_CAP = 16


class Algebra:
    def __init__(self, field, table, unit=None, label="", norm=None):
        self.field = field
        self.dim = len(table)
        if self.dim < 1:
            raise DimensionError("algebra dimension must be >= 1")
        if self.dim > DENSE_DIM_CAP:
            raise DimensionError(f"dimension cap is {DENSE_DIM_CAP}, got {self.dim}")
        self.table = [[list(cell) for cell in row] for row in table]
        for row in self.table:
            if len(row) != self.dim or any(len(cell) != self.dim for cell in row):
                raise DimensionError("structure tensor is not n*n*n")
        self.label = label
        self.norm = norm
        self.unit = None
        if unit is not None:
            unit = list(unit)
            if not self.is_unit(unit):
                raise DimensionError("declared unit is not a two-sided identity")
            self.unit = unit
        self._left_basis_mats = None
        self._right_basis_mats = None

    def __repr__(self):
        return f"Algebra({self.label or '?'}, dim={self.dim} over {self.field!r})"

    def zero(self):
        return zero_vector(self.field, self.dim)

    def basis(self, i):
        return basis_vector(self.field, self.dim, i)

    def scalar_vec(self, c):
        """The vector c * 1_A; requires a unit."""
        if self.unit is None:
            raise DimensionError("algebra has no unit")
        c = self.field.element(c)
        return [c * u for u in self.unit]

    def multiply(self, x, y):
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionError("vector length mismatch")
        out = zero_vector(self.field, self.dim)
        for i, xi in enumerate(x):
            if not xi:
                continue
            ti = self.table[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, t in enumerate(ti[j]):
                    if t:
                        out[k] = out[k] + c * t
        return out

    def _basis_mats(self, side):
        """Left/right multiplication matrices of all basis vectors (cached)."""
        cached = self._left_basis_mats if side == "left" else self._right_basis_mats
        if cached is not None:
            return cached
        mats = []
        for i in range(self.dim):
            if side == "left":
                cols = [self.table[i][j] for j in range(self.dim)]
            else:
                cols = [self.table[j][i] for j in range(self.dim)]
            mats.append(Matrix.from_columns(self.field, cols))
        if side == "left":
            self._left_basis_mats = mats
        else:
            self._right_basis_mats = mats
        return mats

    def left_mul_matrix(self, a) -> Matrix:
        """Matrix of x -> a*x in the fixed basis."""
        mats = self._basis_mats("left")
        rows = [[self.field.zero()] * self.dim for _ in range(self.dim)]
        for i, ai in enumerate(a):
            if not ai:
                continue
            for r in range(self.dim):
                mrow = mats[i].rows[r]
                row = rows[r]
                for cidx in range(self.dim):
                    if mrow[cidx]:
                        row[cidx] = row[cidx] + ai * mrow[cidx]
        return Matrix(self.field, rows)

    def right_mul_matrix(self, a) -> Matrix:
        """Matrix of x -> x*a in the fixed basis."""
        mats = self._basis_mats("right")
        rows = [[self.field.zero()] * self.dim for _ in range(self.dim)]
        for i, ai in enumerate(a):
            if not ai:
                continue
            for r in range(self.dim):
                mrow = mats[i].rows[r]
                row = rows[r]
                for cidx in range(self.dim):
                    if mrow[cidx]:
                        row[cidx] = row[cidx] + ai * mrow[cidx]
        return Matrix(self.field, rows)

    def is_unit(self, e) -> bool:
        for j in range(self.dim):
            ej = self.basis(j)
            if not vec_eq(self.multiply(e, ej), ej):
                return False
            if not vec_eq(self.multiply(ej, e), ej):
                return False
        return True

    def find_unit(self):
        """Solve e*e_j = e_j and e_j*e = e_j for all j; the two-sided unit is
        unique when it exists, None otherwise."""
        rows = []
        rhs = []
        for j in range(self.dim):
            # sum_i e_i (e_i e_j) = e_j : row block indexed by (j, k)
            for k in range(self.dim):
                rows.append([self.table[i][j][k] for i in range(self.dim)])
                rhs.append(self.field.one() if j == k else self.field.zero())
            for k in range(self.dim):
                rows.append([self.table[j][i][k] for i in range(self.dim)])
                rhs.append(self.field.one() if j == k else self.field.zero())
        sol, _ = Matrix(self.field, rows).solve(rhs)
        if sol is None or not self.is_unit(sol):
            return None
        return sol

    def with_unit_found(self):
        """Return self with the unit slot populated if one exists."""
        if self.unit is not None:
            return self
        e = self.find_unit()
        if e is not None:
            self.unit = e
        return self

    def element_from_string(self, text):
        """Parse a coordinate vector like "[1,0,-13/9,0]" (entries in the
        scalar textual encoding)."""
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise DimensionError(f"bad vector literal {text!r}")
        parts = _split_top_level(body[1:-1])
        if len(parts) != self.dim:
            raise DimensionError(f"expected {self.dim} coordinates, got {len(parts)}")
        return [self.field.parse(p) for p in parts]


def _split_top_level(body):
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if cur or parts:
        parts.append("".join(cur))
    return [p.strip() for p in parts]


def commutator(alg: Algebra, x, y):
    """[x,y] = xy - yx."""
    return vec_sub(alg.multiply(x, y), alg.multiply(y, x))


def associator(alg: Algebra, x, y, z):
    """[x,y,z] = (xy)z - x(yz)."""
    return vec_sub(alg.multiply(alg.multiply(x, y), z),
                   alg.multiply(x, alg.multiply(y, z)))


def nucleus(alg: Algebra, side="all"):
    """Basis of the requested nucleus: exact nullspace of the stacked linear
    conditions [x,A,A]=0 (left), [A,x,A]=0 (middle), [A,A,x]=0 (right), their
    intersection ("all"), or the center ("center": all + commutators)."""
    n = alg.dim
    blocks = []

    def rows_for(slot):
        rows = []
        for j in range(n):
            ej = alg.basis(j)
            for k in range(n):
                ek = alg.basis(k)
                cols = []
                for i in range(n):
                    ei = alg.basis(i)
                    args = {"left": (ei, ej, ek), "middle": (ej, ei, ek),
                            "right": (ej, ek, ei)}[slot]
                    cols.append(associator(alg, *args))
                for comp in range(n):
                    rows.append([cols[i][comp] for i in range(n)])
        return rows

    sides = {"left": ["left"], "middle": ["middle"], "right": ["right"],
             "all": ["left", "middle", "right"],
             "center": ["left", "middle", "right"]}
    if side not in sides:
        raise DimensionError(f"unknown nucleus side {side!r}")
    for slot in sides[side]:
        blocks.append(rows_for(slot))
    if side == "center":
        rows = []
        for j in range(n):
            ej = alg.basis(j)
            cols = [commutator(alg, alg.basis(i), ej) for i in range(n)]
            for comp in range(n):
                rows.append([cols[i][comp] for i in range(n)])
        blocks.append(rows)
    system = stack(alg.field, blocks)
    return system.nullspace()


def center(alg: Algebra):
    return nucleus(alg, side="center")


def isotope(alg: Algebra, f: Matrix, g: Matrix, h: Matrix | None = None) -> Algebra:
    """The algebra with product h(f(x) * g(y)) for invertible f, g, h."""
    n = alg.dim
    h = h if h is not None else Matrix.identity(alg.field, n)
    for name, m in (("f", f), ("g", g), ("h", h)):
        if not m.is_invertible():
            raise SingularMapError(f"isotope map {name} is singular")
    fcols = f.columns()
    gcols = g.columns()
    table = [[h.apply(alg.multiply(fcols[i], gcols[j])) for j in range(n)]
             for i in range(n)]
    out = Algebra(alg.field, table, label=f"{alg.label}^(f,g,h)" if alg.label else "")
    return out.with_unit_found()


def opposite(alg: Algebra) -> Algebra:
    """Same space, product x.y = yx (tensor with i, j transposed)."""
    n = alg.dim
    table = [[alg.table[j][i] for j in range(n)] for i in range(n)]
    return Algebra(alg.field, table, unit=alg.unit,
                   label=f"{alg.label}^op" if alg.label else "")


def subspace_contains(alg: Algebra, basis, vec) -> bool:
    return in_span(basis, vec, alg.field) is not None


def tensor_eq(a: Algebra, b: Algebra) -> bool:
    if a.dim != b.dim or a.field != b.field:
        return False
    return all(vec_eq(a.table[i][j], b.table[i][j])
               for i in range(a.dim) for j in range(a.dim))


def first_tensor_mismatch(a: Algebra, b: Algebra):
    """First basis pair where the two products differ, or None."""
    for i in range(a.dim):
        for j in range(a.dim):
            if not vec_eq(a.table[i][j], b.table[i][j]):
                return (i, j)
    return None


def vanishes_outside(alg: Algebra, coords) -> bool:
    """True when products of basis vectors indexed by `coords` have zero
    components outside `coords` (subalgebra-closure on a coordinate block)."""
    inside = set(coords)
    for i in coords:
        for j in coords:
            for k in range(alg.dim):
                if k not in inside and alg.table[i][j][k]:
                    return False
    return True


def zero_divisor_pairs_count(alg: Algebra) -> int:
    """Number of ordered nonzero pairs multiplying to zero (finite fields,
    small dimensions only; used by isotopy-invariance checks)."""
    order = alg.field.order()
    if order is None or order**alg.dim > 2**12:
        raise DimensionError("zero divisor count is capped to tiny algebras")
    from itertools import product
    elems = list(alg.field.elements())
    count = 0
    vectors = [list(v) for v in product(elems, repeat=alg.dim)]
    nonzero = [v for v in vectors if any(v)]
    for x in nonzero:
        lx = alg.left_mul_matrix(x)
        if lx.det():
            continue
        for y in nonzero:
            if vec_is_zero(lx.apply(y)):
                count += 1
    return count


def describe_vector(x) -> str:
    return format_vector(x)
