"""Exact Gaussian-rational arithmetic and the dense linear algebra under it.

Everything downstream runs over Q(i): complex numbers whose real and
imaginary parts are `fractions.Fraction` values.  Equality is exact
everywhere; the package has no notion of tolerance.

Three layers live here:

* `Scalar`, the field element;
* `Matrix` and plain tuple vectors, with exact elimination, solving and
  null spaces;
* `Subspace` (canonical reduced-echelon bases) with sums, intersections,
  and quotients equipped with deterministic sections.
"""

from __future__ import annotations

from fractions import Fraction


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError("cannot interpret %r as a rational number" % (x,))


class Scalar:
    """A Gaussian rational re + im*i with exact Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, *a):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def promote(cls, x):
        if isinstance(x, Scalar):
            return x
        return cls(_frac(x))

    def __add__(self, other):
        other = Scalar.promote(other)
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = Scalar.promote(other)
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return Scalar.promote(other) - self

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __mul__(self, other):
        other = Scalar.promote(other)
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Scalar.promote(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.promote(other) / self

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return Scalar(self.re / n, -self.im / n)

    def conjugate(self):
        return Scalar(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_zero(self):
        return not self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return "Scalar(%s)" % str(self)

    def __str__(self):
        # compact human form: "0", "3/5", "i", "-2i", "1+2i", "1-1/2i"
        if not self.im:
            return str(self.re)
        if not self.re:
            return _imag_str(self.im)
        sign = "+" if self.im > 0 else "-"
        return "%s%s%s" % (self.re, sign, _imag_str(abs(self.im)).lstrip("+"))

    @classmethod
    def parse(cls, text):
        """Parse the forms produced by __str__ plus bare rationals."""
        s = text.strip().replace(" ", "")
        if not s:
            raise ValueError("empty scalar literal")
        if "i" not in s:
            return cls(Fraction(s))
        body = s[:-1] if s.endswith("i") else None
        if body is None:
            raise ValueError("trailing characters after i in %r" % text)
        # split off a real part if one precedes the imaginary term
        for k in range(len(body) - 1, 0, -1):
            if body[k] in "+-" and body[k - 1] not in "+-/":
                re_part, im_part = body[:k], body[k:]
                break
        else:
            re_part, im_part = "", body
        if im_part in ("", "+"):
            im = Fraction(1)
        elif im_part == "-":
            im = Fraction(-1)
        else:
            im = Fraction(im_part)
        re = Fraction(re_part) if re_part else Fraction(0)
        return cls(re, im)


def _imag_str(f):
    if f == 1:
        return "i"
    if f == -1:
        return "-i"
    return "%si" % f


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def sc(re=0, im=0):
    """Shorthand constructor used pervasively in tests and fixtures."""
    return Scalar(re, im)


# ---------------------------------------------------------------------------
# vectors are plain tuples of Scalar


def vec(*entries):
    return tuple(Scalar.promote(e) for e in entries)


def zero_vec(n):
    return (ZERO,) * n


def unit_vec(n, k):
    return tuple(ONE if j == k else ZERO for j in range(n))


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(c, u):
    c = Scalar.promote(c)
    return tuple(c * a for a in u)


def vec_conj(u):
    return tuple(a.conjugate() for a in u)


def vec_is_zero(u):
    return all(not a for a in u)


class Matrix:
    """Dense matrix of Scalar entries; shape-checked exact arithmetic."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, cols=None):
        entries = tuple(tuple(Scalar.promote(e) for e in row) for row in entries)
        rows = len(entries)
        if rows:
            width = len(entries[0])
            if cols is not None and cols != width:
                raise ValueError("explicit column count contradicts entries")
            cols = width
        elif cols is None:
            cols = 0
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged rows")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, *a):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows, cols):
        return cls([[ZERO] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def from_columns(cls, columns, rows=None):
        if not columns:
            if rows is None:
                raise ValueError("empty column list needs an explicit row count")
            return cls.zero(rows, 0)
        n = len(columns[0])
        return cls([[columns[j][i] for j in range(len(columns))] for i in range(n)])

    def column(self, j):
        return tuple(self.entries[i][j] for i in range(self.rows))

    def row(self, i):
        return self.entries[i]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "Matrix(%d x %d)" % (self.rows, self.cols)

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        return Matrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ],
            cols=self.cols,
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Matrix([[-a for a in row] for row in self.entries], cols=self.cols)

    def scale(self, c):
        c = Scalar.promote(c)
        return Matrix([[c * a for a in row] for row in self.entries], cols=self.cols)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return Matrix.zero(self.rows, other.cols)
        ocols = other.cols
        out = []
        for i in range(self.rows):
            ri = self.entries[i]
            orow = [ZERO] * ocols
            for k in range(self.cols):
                a = ri[k]
                if not a:
                    continue
                brow = other.entries[k]
                orow = [x + a * b for x, b in zip(orow, brow)]
            out.append(orow)
        return Matrix(out)

    def apply(self, v):
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        out = [ZERO] * self.rows
        for j, x in enumerate(v):
            if not x:
                continue
            for i in range(self.rows):
                a = self.entries[i][j]
                if a:
                    out[i] = out[i] + a * x
        return tuple(out)

    def transpose(self):
        return Matrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def conjugate(self):
        return Matrix(
            [[a.conjugate() for a in row] for row in self.entries], cols=self.cols
        )

    def is_zero(self):
        return all(not a for row in self.entries for a in row)

    def rank(self):
        return len(rref(list(self.entries))[1])

    def inverse(self):
        if self.rows != self.cols:
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        aug = [list(self.entries[i]) + list(Matrix.identity(n).entries[i]) for i in range(n)]
        reduced, pivots = rref(aug)
        if len(pivots) != n or any(p >= n for p in pivots):
            raise ValueError("matrix is singular")
        return Matrix([row[n:] for row in reduced])


def rref(rows):
    """Reduced row echelon form.  Returns (rows, pivot column list)."""
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for k in range(r, nrows):
            if rows[k][c]:
                pivot = k
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [inv * a for a in rows[r]]
        for k in range(nrows):
            if k != r and rows[k][c]:
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return [tuple(row) for row in rows], pivots


def solve_linear(A, b):
    """Solve A x = b exactly.

    Returns (particular, kernel_basis) or None when inconsistent.  The
    kernel basis spans the full null space of A.
    """
    if A.rows != len(b):
        raise ValueError("right-hand side length mismatch")
    n = A.cols
    aug = [list(A.entries[i]) + [b[i]] for i in range(A.rows)]
    reduced, pivots = rref(aug)
    if n in pivots:
        return None
    particular = [ZERO] * n
    for r, c in enumerate(pivots):
        particular[c] = reduced[r][n]
    kernel = _kernel_from_rref(reduced, pivots, n)
    return tuple(particular), kernel


def nullspace(A):
    reduced, pivots = rref(list(A.entries))
    return _kernel_from_rref(reduced, pivots, A.cols)


def _kernel_from_rref(reduced, pivots, n):
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for r, c in enumerate(pivots):
            v[c] = -reduced[r][f]
        basis.append(tuple(v))
    return basis


class Subspace:
    """Subspace of Q(i)^n held as a canonical reduced-echelon basis."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim, vectors):
        vectors = [tuple(Scalar.promote(e) for e in v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError("vector length differs from ambient dimension")
        if vectors:
            reduced, pivots = rref(vectors)
            basis = tuple(reduced[: len(pivots)])
        else:
            basis = ()
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, *a):
        raise AttributeError("Subspace is immutable")

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, v):
        if len(v) != self.ambient_dim:
            raise ValueError("vector length differs from ambient dimension")
        v = list(v)
        for row in self.basis:
            c = next((j for j, a in enumerate(row) if a), None)
            if c is not None and v[c]:
                f = v[c]
                v = [a - f * b for a, b in zip(v, row)]
        return all(not a for a in v)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return "Subspace(dim %d in %d)" % (self.dim, self.ambient_dim)

    def is_zero(self):
        return not self.basis

    def sum(self, other):
        self._check_ambient(other)
        return Subspace(self.ambient_dim, list(self.basis) + list(other.basis))

    def intersect(self, other):
        """Exact intersection via the kernel of the stacked generator map.

        Writing U = span(u_k), V = span(v_l), a vector lies in both spans
        iff sum x_k u_k - sum y_l v_l = 0 has a solution; the u-part of
        each kernel vector spans the intersection.
        """
        self._check_ambient(other)
        if not self.basis or not other.basis:
            return Subspace(self.ambient_dim, [])
        cols = [list(v) for v in self.basis] + [list(v) for v in other.basis]
        A = Matrix.from_columns([tuple(c) for c in cols])
        vectors = []
        for kv in nullspace(A):
            w = zero_vec(self.ambient_dim)
            for x, u in zip(kv[: len(self.basis)], self.basis):
                if x:
                    w = vec_add(w, vec_scale(x, u))
            if not vec_is_zero(w):
                vectors.append(w)
        return Subspace(self.ambient_dim, vectors)

    def _check_ambient(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")


class QuotientSpace:
    """Quotient of Q(i)^n by a subspace, with a deterministic section.

    The complement of the subspace is completed from standard basis
    vectors greedily, smallest index first, so the projection and section
    matrices are reproducible.  projection o section is the identity on
    the quotient and the kernel of the projection is exactly the subspace.
    """

    __slots__ = ("ambient_dim", "subspace", "dim", "projection", "section",
                 "complement_indices")

    def __init__(self, ambient_dim, subspace):
        if subspace.ambient_dim != ambient_dim:
            raise ValueError("subspace lives in a different ambient space")
        k = subspace.dim
        q = ambient_dim - k
        chosen = []
        current = list(subspace.basis)
        for idx in range(ambient_dim):
            if len(chosen) == q:
                break
            cand = unit_vec(ambient_dim, idx)
            if not Subspace(ambient_dim, current).contains(cand):
                chosen.append(idx)
                current.append(cand)
        assert len(chosen) == q
        columns = [tuple(v) for v in subspace.basis] + [
            unit_vec(ambient_dim, idx) for idx in chosen
        ]
        if ambient_dim:
            M = Matrix.from_columns(columns, rows=ambient_dim)
            Minv = M.inverse()
            projection = Matrix(
                [Minv.entries[k + i] for i in range(q)], cols=ambient_dim
            )
        else:
            projection = Matrix.zero(0, 0)
        section = Matrix.from_columns(
            [unit_vec(ambient_dim, idx) for idx in chosen], rows=ambient_dim
        )
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "subspace", subspace)
        object.__setattr__(self, "dim", q)
        object.__setattr__(self, "projection", projection)
        object.__setattr__(self, "section", section)
        object.__setattr__(self, "complement_indices", tuple(chosen))

    def __setattr__(self, *a):
        raise AttributeError("QuotientSpace is immutable")

    def project(self, v):
        return self.projection.apply(v)

    def lift(self, x):
        return self.section.apply(x)


def quotient_with_section(ambient_dim, subspace):
    return QuotientSpace(ambient_dim, subspace)
