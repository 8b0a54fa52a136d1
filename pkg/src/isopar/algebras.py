"""Quaternions, octonions and Clifford systems.

Octonions use the Cayley-Dickson doubling

    (a, b)(c, d) = (ac - conj(d) b,  d a + b conj(c))

of quaternion pairs over the basis e1..e8 = (1, i, j, k, l, il, jl, kl).
This particular table is the one pinned down by the worked 9x9 and 8x8
matrices of the {6,9} example: with it the upper 8x8 block of A_alpha is
right multiplication by -e_alpha and the third-form matrices have
(i, j)-entry <e_mu, (e2 e_j) e_i>.  No sign flips or relabelings are
needed on top of the textbook table.
"""

from dataclasses import dataclass, field

from .linalg import Mat
from .scalar import ZERO, ONE, as_scalar


class Quaternion:
    __slots__ = ("coeffs",)

    def __init__(self, *coeffs):
        if len(coeffs) == 1:
            coeffs = tuple(coeffs[0])
        if len(coeffs) != 4:
            raise ValueError("a quaternion has four coefficients")
        self.coeffs = tuple(as_scalar(c) for c in coeffs)

    @classmethod
    def basis(cls, i):
        return cls(*[ONE if k == i else ZERO for k in range(4)])

    def __add__(self, other):
        return Quaternion(*[a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return Quaternion(*[a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return Quaternion(*[-a for a in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Quaternion):
            return Quaternion(*[a * other for a in self.coeffs])
        a0, a1, a2, a3 = self.coeffs
        b0, b1, b2, b3 = other.coeffs
        return Quaternion(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    def __rmul__(self, c):
        return Quaternion(*[c * a for a in self.coeffs])

    def conj(self):
        a0, a1, a2, a3 = self.coeffs
        return Quaternion(a0, -a1, -a2, -a3)

    def norm2(self):
        return sum((a * a for a in self.coeffs), ZERO)

    def __eq__(self, other):
        return isinstance(other, Quaternion) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "Quaternion(" + ", ".join(str(c) for c in self.coeffs) + ")"


class Octonion:
    __slots__ = ("coeffs",)

    def __init__(self, *coeffs):
        if len(coeffs) == 1:
            coeffs = tuple(coeffs[0])
        if len(coeffs) != 8:
            raise ValueError("an octonion has eight coefficients")
        self.coeffs = tuple(as_scalar(c) for c in coeffs)

    @classmethod
    def basis(cls, i):
        """e_i for i in 1..8 (e1 is the unit)."""
        if not 1 <= i <= 8:
            raise IndexError(f"octonion basis index {i} out of range 1..8")
        return cls(*[ONE if k == i - 1 else ZERO for k in range(8)])

    def halves(self):
        return Quaternion(*self.coeffs[:4]), Quaternion(*self.coeffs[4:])

    @classmethod
    def from_halves(cls, a, b):
        return cls(*(a.coeffs + b.coeffs))

    def __add__(self, other):
        return Octonion(*[a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return Octonion(*[a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return Octonion(*[-a for a in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Octonion):
            return Octonion(*[a * other for a in self.coeffs])
        return oct_mul(self, other)

    def __rmul__(self, c):
        return Octonion(*[c * a for a in self.coeffs])

    def conj(self):
        return Octonion(self.coeffs[0], *[-a for a in self.coeffs[1:]])

    def norm2(self):
        return sum((a * a for a in self.coeffs), ZERO)

    def __eq__(self, other):
        return isinstance(other, Octonion) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "Octonion(" + ", ".join(str(c) for c in self.coeffs) + ")"


def oct_mul(a, b):
    p, q = a.halves()
    r, s = b.halves()
    return Octonion.from_halves(p * r - s.conj() * q, s * p + q * r.conj())


def right_mult_matrix(i):
    """8x8 matrix M with M @ coords(x) = coords(x * e_i), i in 2..8."""
    if not 2 <= i <= 8:
        raise IndexError(f"right multiplication index {i} out of range 2..8")
    e = Octonion.basis(i)
    cols = [list((Octonion.basis(k) * e).coeffs) for k in range(1, 9)]
    return Mat.from_columns(cols)


def quaternion_right_mult_matrix(q):
    """4x4 matrix of X -> X q over the basis 1, i, j, k."""
    cols = [list((Quaternion.basis(k) * q).coeffs) for k in range(4)]
    return Mat.from_columns(cols)


def octonion_right_mult_matrix(o):
    cols = [list((Octonion.basis(k) * o).coeffs) for k in range(1, 9)]
    return Mat.from_columns(cols)


def build_c8_rep():
    """Eight anticommuting complex structures on R^16 built from octonions."""
    zero8 = Mat.zeros(8, 8)
    eye8 = Mat.identity(8)
    mats = []
    for i in range(2, 9):
        J = right_mult_matrix(i)
        mats.append(Mat.block([[J, zero8], [zero8, -J]]))
    mats.append(Mat.block([[zero8, eye8], [-eye8, zero8]]))
    return mats


@dataclass(frozen=True)
class CliffordSystem:
    dim: int
    mats: tuple = field(default_factory=tuple)

    @property
    def m(self):
        return len(self.mats) - 1


def build_clifford_system():
    """P0..P9 on R^32 = R^16 + R^16.

    P0 (c, d) = (c, -d), P1 (c, d) = (d, c), P_{1+i} (c, d) = (Ji d, -Ji c).
    """
    eye = Mat.identity(16)
    zero = Mat.zeros(16, 16)
    mats = [Mat.block([[eye, zero], [zero, -eye]]), Mat.block([[zero, eye], [eye, zero]])]
    for J in build_c8_rep():
        mats.append(Mat.block([[zero, J], [-J, zero]]))
    return CliffordSystem(dim=32, mats=tuple(mats))


@dataclass
class CliffordReport:
    ok: bool
    failure: tuple = None  # (i, j) of the first failing pair, or (i,) for a single matrix
    reason: str = ""


def verify_clifford(system):
    """Check symmetry, P_i^2 = I and P_i P_j + P_j P_i = 0 for i != j."""
    mats = list(system.mats)
    if not mats:
        return CliffordReport(True)
    n = mats[0].rows
    eye = Mat.identity(n)
    zero = Mat.zeros(n, n)
    for i, P in enumerate(mats):
        if P.shape != (n, n):
            return CliffordReport(False, (i,), "wrong shape")
        if not P.is_symmetric():
            return CliffordReport(False, (i,), "not symmetric")
    for i in range(len(mats)):
        for j in range(i, len(mats)):
            s = mats[i] @ mats[j] + mats[j] @ mats[i]
            want = eye.scale(2) if i == j else zero
            if s != want:
                reason = "P_i^2 != I" if i == j else "P_i P_j + P_j P_i != 0"
                return CliffordReport(False, (i, j), reason)
    return CliffordReport(True)


def anticommute_report(mats, square):
    """First (i, j) where M_i M_j + M_j M_i != 2*square*delta_ij*I, else None."""
    n = mats[0].rows
    eye = Mat.identity(n)
    for i in range(len(mats)):
        for j in range(i, len(mats)):
            s = mats[i] @ mats[j] + mats[j] @ mats[i]
            want = eye.scale(2 * square) if i == j else Mat.zeros(n, n)
            if s != want:
                return (i, j)
    return None
