"""Small exact dense matrices over Q(sqrt2) or its complexification."""

from .scalar import Scalar, CScalar, ZERO, ONE, as_scalar


def _coerce(v):
    if isinstance(v, (Scalar, CScalar)):
        return v
    return as_scalar(v)


class Mat:
    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        data = [[_coerce(v) for v in row] for row in data]
        self.rows = len(data)
        self.cols = len(data[0]) if data else 0
        if any(len(r) != self.cols for r in data):
            raise ValueError("ragged matrix")
        self.data = data

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols):
        n = len(cols[0])
        return cls([[c[i] for c in cols] for i in range(n)])

    @classmethod
    def block(cls, blocks):
        """Assemble from a 2D list of Mats (row heights/col widths must agree)."""
        out = []
        for brow in blocks:
            h = brow[0].rows
            for i in range(h):
                row = []
                for b in brow:
                    row.extend(b.data[i])
                out.append(row)
        return cls(out)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i):
        return list(self.data[i])

    def col(self, j):
        return [r[j] for r in self.data]

    def submatrix(self, rows, cols):
        return Mat([[self.data[i][j] for j in cols] for i in rows])

    @property
    def T(self):
        return Mat([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def __add__(self, other):
        self._same_shape(other)
        return Mat([[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __sub__(self, other):
        self._same_shape(other)
        return Mat([[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __neg__(self):
        return Mat([[-a for a in r] for r in self.data])

    def scale(self, c):
        return Mat([[a * c for a in r] for r in self.data])

    def __matmul__(self, other):
        if isinstance(other, Mat):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            ocols = [other.col(j) for j in range(other.cols)]
            return Mat([[_dot(r, c) for c in ocols] for r in self.data])
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return [_dot(r, vec) for r in self.data]

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    @property
    def shape(self):
        return (self.rows, self.cols)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r, s in zip(self.data, other.data) for a, b in zip(r, s)
        )

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.data))

    def is_zero(self):
        return not any(v for r in self.data for v in r)

    def is_symmetric(self):
        return self.rows == self.cols and self == self.T

    def is_skew(self):
        return self.rows == self.cols and self == -self.T

    def trace(self):
        return sum((self.data[i][i] for i in range(min(self.shape))), ZERO)

    def nonzero_entries(self):
        return [(i, j, v) for i, r in enumerate(self.data) for j, v in enumerate(r) if v]

    def to_float(self):
        return [[complex(v) if isinstance(v, CScalar) else float(v) for v in r] for r in self.data]

    def to_json(self):
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[_entry_json(v) for v in r] for r in self.data],
        }

    def __repr__(self):
        body = "\n".join("  [" + ", ".join(str(v) for v in r) + "]" for r in self.data)
        return f"Mat({self.rows}x{self.cols}\n{body})"


def _entry_json(v):
    if isinstance(v, CScalar):
        return {"re": v.re.to_json(), "im": v.im.to_json()}
    return v.to_json()


def _dot(a, b):
    total = ZERO
    for x, y in zip(a, b):
        if x and y:
            total = x * y + total
    return total


def dot(a, b):
    return _dot(a, b)


def rank(M):
    """Exact rank by fraction-free (Bareiss) elimination.

    Works over Q(sqrt2) and its complexification; all divisions are exact
    divisions by the previous pivot.
    """
    a = [list(r) for r in M.data]
    nr, nc = M.rows, M.cols
    prev = ONE
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, nr):
            f = a[i][c]
            row_i = a[i]
            row_r = a[r]
            for j in range(c + 1, nc):
                v = p * row_i[j] - f * row_r[j]
                row_i[j] = v / prev if v else ZERO
            row_i[c] = ZERO
        prev = p
        r += 1
        if r == nr:
            break
    return r


def nullity(M):
    if M.rows != M.cols:
        raise ValueError("nullity expects a square matrix")
    return M.cols - rank(M)


def gram(vectors):
    return Mat([[_dot(u, v) for v in vectors] for u in vectors])


def nullspace(M):
    """Exact kernel basis from the reduced row echelon form."""
    a = [list(r) for r in M.data]
    nr, nc = M.rows, M.cols
    pivots = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = ONE / a[r][c]
        a[r] = [v * inv if v else v for v in a[r]]
        for i in range(nr):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y if y else x for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * nc
        v[fc] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fc]
        basis.append(v)
    return basis
