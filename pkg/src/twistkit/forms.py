"""Multiplicative forms of degree d and their verification machinery.

A form is carried either as a Gram matrix (degree 2), as the determinant of a
left-multiplication representation (degree n), as the determinant of the
representation over a commutative subfield block (cyclic algebras), or as an
explicit polynomial evaluator.

Anisotropy is never decided by a general algorithm: it travels as a
certificate ("positive-definite", "field-norm", "division-certified") and
absent a certificate downstream division guarantees are refused.
"""

from __future__ import annotations

import random
from itertools import combinations, product

from .errors import DimensionError, HypothesisError, SingularMapError
from .linalg import Matrix, basis_vector, vec_add, zero_vector

CERT_POSITIVE_DEFINITE = "positive-definite"
CERT_FIELD_NORM = "field-norm"
CERT_DIVISION = "division-certified"
CERT_UNKNOWN = "unknown"

EXHAUSTIVE_CAP = 2**20
RANDOM_SAMPLES = 100


class NormForm:
    """A homogeneous degree-d form N on an n-dimensional space over a field."""

    def __init__(self, field, dim, degree, kind, certificate=CERT_UNKNOWN, **data):
        self.field = field
        self.dim = dim
        self.degree = degree
        self.kind = kind
        self.certificate = certificate
        self.data = data
        self._gram_cache = data.get("gram")

    # -- constructors --

    @classmethod
    def gram_form(cls, field, gram, certificate=CERT_UNKNOWN):
        n = len(gram)
        rows = [[field.element(v) for v in row] for row in gram]
        for i in range(n):
            for j in range(n):
                if rows[i][j] != rows[j][i]:
                    raise DimensionError("gram matrix must be symmetric")
        return cls(field, n, 2, "gram", certificate, gram=Matrix(field, rows))

    @classmethod
    def regrep_form(cls, algebra, certificate=CERT_UNKNOWN):
        """det of left multiplication; degree = dim of the algebra.  For a
        field extension viewed as an algebra this is the field norm."""
        return cls(algebra.field, algebra.dim, algebra.dim, "regrep",
                   certificate, algebra=algebra)

    @classmethod
    def cyclic_form(cls, kalg, sigma, d, certificate=CERT_UNKNOWN):
        """Reduced norm of the crossed product on (+) K u^j with u^n = d and
        u x = sigma(x) u: the determinant over K of left multiplication on
        the right-K-basis {u^j}.  Degree n on an n^2-dimensional space."""
        n = kalg.dim
        return cls(kalg.field, n * n, n, "cyclic", certificate,
                   kalg=kalg, sigma=sigma, d=kalg.field.element(d))

    @classmethod
    def poly_form(cls, field, dim, degree, func, certificate=CERT_UNKNOWN):
        return cls(field, dim, degree, "poly", certificate, func=func)

    # -- evaluation --

    def evaluate(self, x):
        if len(x) != self.dim:
            raise DimensionError(f"form on dim {self.dim}, got vector of {len(x)}")
        if self.kind == "gram":
            g = self.data["gram"]
            acc = self.field.zero()
            for i, xi in enumerate(x):
                if not xi:
                    continue
                row = g.rows[i]
                for j, xj in enumerate(x):
                    if xj and row[j]:
                        acc = acc + xi * row[j] * xj
            return acc
        if self.kind == "regrep":
            return self.data["algebra"].left_mul_matrix(x).det()
        if self.kind == "cyclic":
            return self._cyclic_eval(x)
        if self.kind == "poly":
            return self.data["func"](x)
        raise DimensionError(f"unknown form kind {self.kind}")

    __call__ = evaluate

    def _cyclic_eval(self, x):
        kalg = self.data["kalg"]
        sigma = self.data["sigma"]
        d = self.data["d"]
        n = kalg.dim
        # coordinate slices: kappa_j in K with x = sum_j kappa_j u^j
        kappas = [x[j * n:(j + 1) * n] for j in range(n)]
        sig_pows = [Matrix.identity(self.field, n)]
        for _ in range(n - 1):
            sig_pows.append(sigma @ sig_pows[-1])
        # left multiplication in the right-K-basis {u^m}:
        # kappa_j u^j u^k = d^q u^m sigma^{-m}(kappa_j), m=(j+k)%n, q=(j+k)//n
        rows = []
        for m in range(n):
            row = []
            for k in range(n):
                j = (m - k) % n
                entry = sig_pows[(n - m) % n].apply(kappas[j])
                if j + k >= n:
                    entry = [d * v for v in entry]
                row.append(entry)
            rows.append(row)
        det = _det_over_ring(kalg, rows)
        assert not any(det[1:]), "cyclic norm left the base field"
        return det[0]

    # -- polarization --

    def polarize(self, *vs):
        """The symmetric d-linear form from the alternating subset-sum

            theta(v_1..v_d) = sum over nonempty S of (-1)^(d-|S|) N(sum_{i in S} v_i),

        valid when char(F) = 0 or > d."""
        d = self.degree
        if len(vs) != d:
            raise DimensionError(f"polarization of a degree-{d} form takes {d} arguments")
        if 0 < self.field.characteristic <= d:
            raise HypothesisError("polarization needs char 0 or char > degree")
        acc = self.field.zero()
        for l in range(1, d + 1):
            sign = (-1) ** (d - l)
            for subset in combinations(range(d), l):
                s = zero_vector(self.field, self.dim)
                for i in subset:
                    s = vec_add(s, vs[i])
                val = self.evaluate(s)
                acc = acc + val if sign > 0 else acc - val
        return acc

    def gram(self) -> Matrix:
        """Gram matrix of a degree-2 form (derived from the evaluator when not
        stored; needs char != 2): N(x) = x^T G x with G symmetric."""
        if self.degree != 2:
            raise DimensionError("gram() is only defined for degree-2 forms")
        if self._gram_cache is not None:
            return self._gram_cache
        if self.field.characteristic == 2:
            raise HypothesisError("cannot derive a gram matrix in characteristic 2")
        n = self.dim
        half = self.field.element(2).inverse()
        g = [[None] * n for _ in range(n)]
        for i in range(n):
            ei = basis_vector(self.field, n, i)
            g[i][i] = self.evaluate(ei)
            for j in range(i + 1, n):
                ej = basis_vector(self.field, n, j)
                theta = self.polarize(ei, ej)
                g[i][j] = g[j][i] = half * theta
        self._gram_cache = Matrix(self.field, g)
        return self._gram_cache


class Polarization:
    """Callable wrapper for the full polarization of a form."""

    def __init__(self, form: NormForm):
        self.form = form
        self.arity = form.degree

    def __call__(self, *vs):
        return self.form.polarize(*vs)


def _det_over_ring(kalg, rows):
    """Determinant of a matrix with entries in a commutative algebra, by
    cofactor expansion along the first row.  Entries are coordinate vectors."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = zero_vector(kalg.field, kalg.dim)
    for j in range(n):
        if not any(rows[0][j]):
            continue
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = kalg.multiply(rows[0][j], _det_over_ring(kalg, minor))
        if j % 2:
            term = [-v for v in term]
        acc = vec_add(acc, term)
    return acc


# -- deterministic evaluation grids over Q --

def determining_points(field, dim, degree):
    """Integer points whose values pin down a degree-d form exactly.

    Degree 2: e_i and e_i + e_j (diagonal plus polarization).  Higher degree:
    all vectors of support <= d with nonzero entries in 1..d (grid
    interpolation determines a polynomial of degree <= d per variable).
    """
    pts = []
    if degree == 2:
        for i in range(dim):
            pts.append(basis_vector(field, dim, i))
        for i in range(dim):
            for j in range(i + 1, dim):
                v = zero_vector(field, dim)
                v[i] = field.one()
                v[j] = field.one()
                pts.append(v)
        return pts
    for support_size in range(1, min(degree, dim) + 1):
        for support in combinations(range(dim), support_size):
            for values in product(range(1, degree + 1), repeat=support_size):
                v = zero_vector(field, dim)
                for pos, val in zip(support, values):
                    v[pos] = field.element(val)
                pts.append(v)
    return pts


def similarity_grid(field, dim, degree):
    """All 0..d-valued coordinate tuples of support <= d+1."""
    pts = []
    for support_size in range(1, min(degree + 1, dim) + 1):
        for support in combinations(range(dim), support_size):
            for values in product(range(1, degree + 1), repeat=support_size):
                v = zero_vector(field, dim)
                for pos, val in zip(support, values):
                    v[pos] = field.element(val)
                pts.append(v)
    return pts


def _random_points(field, dim, count, seed):
    rng = random.Random(seed)
    return [[field.element(rng.randint(-9, 9)) for _ in range(dim)] for _ in range(count)]


def _all_vectors(field, dim):
    elems = list(field.elements())
    for tup in product(elems, repeat=dim):
        yield list(tup)


def verify_similarity(norm: NormForm, f: Matrix, seed=0):
    """Exact similarity factor a with N(f(x)) = a N(x) for all x, or None.

    Degree 2 (char != 2): checked on Gram matrices, F^T G F = a G.  Degree-n
    forms: exhaustive over finite fields; over Q checked on the deterministic
    grid plus seeded random integer points.
    """
    if not f.is_invertible():
        raise SingularMapError("similarity candidate is singular")
    if norm.degree == 2 and norm.field.characteristic != 2:
        g = norm.gram()
        m = f.transpose() @ g @ f
        alpha = None
        for i in range(norm.dim):
            for j in range(norm.dim):
                if g.rows[i][j]:
                    alpha = m.rows[i][j] / g.rows[i][j]
                    break
            if alpha is not None:
                break
        if alpha is None:
            return None
        return alpha if m == g.scale(alpha) else None
    if norm.field.order() is not None:
        if norm.field.order() ** norm.dim > EXHAUSTIVE_CAP:
            raise DimensionError("similarity exhaustion cap exceeded")
        samples = _all_vectors(norm.field, norm.dim)
    else:
        samples = (similarity_grid(norm.field, norm.dim, norm.degree)
                   + _random_points(norm.field, norm.dim, RANDOM_SAMPLES, seed))
    alpha = None
    pending = []
    for x in samples:
        nx = norm.evaluate(x)
        nfx = norm.evaluate(f.apply(x))
        if not nx:
            if alpha is None:
                pending.append(nfx)
            elif nfx:
                return None
            continue
        if alpha is None:
            alpha = nfx / nx
            if not alpha or any(pending):
                return None
            pending = None
        if nfx != alpha * nx:
            return None
    return alpha


def verify_multiplicative(alg, norm: NormForm, seed=0) -> bool:
    """Exact check of N(xy) = N(x) N(y): exhaustive over finite fields,
    deterministic grid pairs plus seeded random pairs over Q."""
    if alg.dim != norm.dim or alg.field != norm.field:
        raise DimensionError("norm does not match the algebra")
    if alg.field.order() is not None:
        if alg.field.order() ** (2 * alg.dim) > EXHAUSTIVE_CAP:
            raise DimensionError("multiplicativity exhaustion cap exceeded")
        xs = list(_all_vectors(alg.field, alg.dim))
        pairs = ((x, y) for x in xs for y in xs)
    else:
        grid = determining_points(alg.field, alg.dim, norm.degree)
        rng_pts = _random_points(alg.field, alg.dim, 2 * RANDOM_SAMPLES, seed)
        pairs = [(x, y) for x in grid for y in grid]
        pairs += [(rng_pts[2 * i], rng_pts[2 * i + 1]) for i in range(RANDOM_SAMPLES)]
    for x, y in pairs:
        if norm.evaluate(alg.multiply(x, y)) != norm.evaluate(x) * norm.evaluate(y):
            return False
    return True


def is_positive_definite(gram: Matrix) -> bool:
    """Sylvester criterion with exact leading principal minors (Q only)."""
    if gram.field.characteristic != 0:
        raise HypothesisError("positive definiteness is a rational-field notion here")
    n = gram.nrows
    for k in range(1, n + 1):
        sub = Matrix(gram.field, [row[:k] for row in gram.rows[:k]])
        if not (sub.det().payload > 0):
            return False
    return True
