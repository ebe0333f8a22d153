"""Dense exact matrices over Q, Q[x...] or Q(x...).

Entries are duck-typed: anything with ring arithmetic works, and the two
instantiations used throughout are gmpy2 rationals and RationalFunction.
Determinants use fraction-free (Bareiss) elimination, whose interior
divisions are exact in any integral domain; a cofactor expansion is kept as
an independent cross-check oracle for small sizes.  Solving, kernels and
inverses use ordinary exact Gaussian elimination (field entries).
"""

from .scalars import QQ


class Matrix:
    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows):
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged rows")

    @classmethod
    def from_rows(cls, rows):
        return cls(rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def shape(self):
        return (self.nrows, self.ncols)

    def is_square(self):
        return self.nrows == self.ncols

    def copy_rows(self):
        return [list(r) for r in self.rows]

    def transpose(self):
        return Matrix([[self.rows[i][j] for i in range(self.nrows)]
                       for j in range(self.ncols)])

    def column(self, j):
        return [self.rows[i][j] for i in range(self.nrows)]

    def _zero(self):
        return self.rows[0][0] * 0

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape() == other.shape() and all(
            self.rows[i][j] == other.rows[i][j]
            for i in range(self.nrows)
            for j in range(self.ncols)
        )

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.rows))

    def __add__(self, other):
        if self.shape() != other.shape():
            raise ValueError("shape mismatch in matrix addition")
        return Matrix([[a + b for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other):
        if self.shape() != other.shape():
            raise ValueError("shape mismatch in matrix subtraction")
        return Matrix([[a - b for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.rows])

    def scale(self, c):
        return Matrix([[a * c for a in r] for r in self.rows])

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return self.scale(other)
        if self.ncols != other.nrows:
            raise ValueError(
                "shape mismatch in matrix product: %s * %s"
                % (self.shape(), other.shape())
            )
        bt = other.transpose().rows
        out = []
        for row in self.rows:
            out.append([_dot(row, col) for col in bt])
        return Matrix(out)

    def __rmul__(self, other):
        return self.scale(other)

    def trace(self):
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        t = self.rows[0][0]
        for i in range(1, self.nrows):
            t = t + self.rows[i][i]
        return t

    def diagonal(self):
        return [self.rows[i][i] for i in range(min(self.nrows, self.ncols))]

    def __repr__(self):
        return "Matrix(%s)" % (self.rows,)


def _dot(u, v):
    acc = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        acc = acc + a * b
    return acc


def identity_matrix(n, one=None, zero=None):
    if one is None:
        one = QQ(1)
    if zero is None:
        zero = one * 0
    return Matrix([[one if i == j else zero for j in range(n)] for i in range(n)])


def zero_matrix(nrows, ncols, zero=None):
    if zero is None:
        zero = QQ(0)
    return Matrix([[zero for _ in range(ncols)] for _ in range(nrows)])


def matrix_from_function(nrows, ncols, fn):
    return Matrix([[fn(i, j) for j in range(ncols)] for i in range(nrows)])


# -- determinants -------------------------------------------------------------

def det_bareiss(mat):
    """Fraction-free determinant.  All interior divisions are exact."""
    if not mat.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = mat.nrows
    if n == 0:
        return QQ(1)
    a = mat.copy_rows()
    zero = mat._zero()
    sign = 1
    prev = None
    for k in range(n - 1):
        if a[k][k] == zero:
            for i in range(k + 1, n):
                if a[i][k] != zero:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                val = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                if prev is not None:
                    val = val / prev
                a[i][j] = val
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def det_cofactor(mat):
    """Cofactor-expansion determinant; independent oracle for small sizes."""
    if not mat.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = mat.nrows
    rows = mat.rows
    if n == 0:
        return QQ(1)

    def rec(row_ids, col_ids):
        if len(row_ids) == 1:
            return rows[row_ids[0]][col_ids[0]]
        i = row_ids[0]
        rest = row_ids[1:]
        acc = None
        for pos, j in enumerate(col_ids):
            sub_cols = col_ids[:pos] + col_ids[pos + 1:]
            term = rows[i][j] * rec(rest, sub_cols)
            if pos % 2 == 1:
                term = -term
            acc = term if acc is None else acc + term
        return acc

    return rec(list(range(n)), list(range(n)))


def minor(mat, row_ids, col_ids):
    """Determinant of the submatrix with the given (sorted) rows/columns."""
    if len(row_ids) != len(col_ids):
        raise ValueError("minor needs equally many rows and columns")
    sub = Matrix([[mat.rows[i][j] for j in col_ids] for i in row_ids])
    return det_bareiss(sub)


# -- Gaussian elimination (field entries) --------------------------------------

def _rref(rows, ncols):
    """In-place reduced row echelon form; returns pivot column list."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][c]
        if pv != 1:
            rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rank(mat):
    rows = mat.copy_rows()
    return len(_rref(rows, mat.ncols))


def kernel_basis(mat, one=None):
    """Basis of the right kernel, as a list of column vectors (lists)."""
    if one is None:
        one = QQ(1)
    zero = one * 0
    rows = mat.copy_rows()
    pivots = _rref(rows, mat.ncols)
    pivot_set = set(pivots)
    free = [c for c in range(mat.ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [zero] * mat.ncols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(v)
    return basis


def solve_affine(mat, rhs, one=None):
    """Solve mat * u = rhs exactly.

    Returns (particular solution, kernel basis) or None when inconsistent.
    """
    if one is None:
        one = QQ(1)
    zero = one * 0
    nrows, ncols = mat.nrows, mat.ncols
    rows = [list(mat.rows[i]) + [rhs[i]] for i in range(nrows)]
    pivots = _rref(rows, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    particular = [zero] * ncols
    for r, pc in enumerate(pivots):
        particular[pc] = rows[r][ncols]
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(v)
    return particular, basis


def inverse(mat):
    if not mat.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = mat.nrows
    if n == 0:
        return mat
    sample = mat.rows[0][0]
    one = sample ** 0
    zero = one * 0
    rows = [list(mat.rows[i]) + [one if i == j else zero for j in range(n)]
            for i in range(n)]
    pivots = _rref(rows, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return Matrix([r[n:] for r in rows])


def char_poly_coeffs(mat):
    """Coefficients [c_0, ..., c_n] of det(t*I - mat), c_n = 1.

    Faddeev-LeVerrier recursion; requires field entries containing Q.
    """
    if not mat.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = mat.nrows
    coeffs = [None] * (n + 1)
    coeffs[n] = QQ(1)
    m = identity_matrix(n)
    for k in range(1, n + 1):
        mk = mat * m
        c = -(mk.trace()) / QQ(k)
        coeffs[n - k] = c
        m = mk + identity_matrix(n).scale(c)
    return coeffs
