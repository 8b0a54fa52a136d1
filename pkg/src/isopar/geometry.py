"""The two explicit Cartan-Muenzner polynomials and their adapted frames.

Conventions: ``F`` is normalised so that ``M+ = F^{-1}(1)`` is the focal
manifold of smaller codimension ``m1 + 1``.  A frame lists the base point
``x``, the normals ``n_0..n_m1`` and orthonormal bases of the ``+1``,
``-1`` and ``0`` eigenspaces of the shape operator in direction ``n_0``.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
import itertools

from .algebras import build_clifford_system, verify_clifford
from .linalg import Mat, gram, dot
from .polyring import MPoly, norm_sq
from .scalar import ZERO, ONE, INV_SQRT2


class ExampleId(str, Enum):
    H45 = "H45"
    FKM69 = "FKM69"

    @classmethod
    def parse(cls, s):
        key = s.strip().upper()
        aliases = {"H45": cls.H45, "FKM69": cls.FKM69}
        if key not in aliases:
            raise ValueError(f"unknown example {s!r} (expected h45 or fkm69)")
        return aliases[key]


@dataclass(frozen=True)
class AdaptedFrame:
    ambient_dim: int
    x: tuple
    normals: tuple
    eplus: tuple
    eminus: tuple
    ezero: tuple
    m1: int
    m2: int
    # index labels for the normal directions n_1.. and the E0 basis
    normal_labels: tuple = field(default=None)
    zero_labels: tuple = field(default=None)

    def __post_init__(self):
        if len(self.normals) != self.m1 + 1:
            raise ValueError("need m1 + 1 normal vectors")
        if len(self.eplus) != self.m2 or len(self.eminus) != self.m2:
            raise ValueError("E+ and E- must have m2 vectors each")
        if len(self.ezero) != self.m1:
            raise ValueError("E0 must have m1 vectors")
        if self.normal_labels is None:
            object.__setattr__(self, "normal_labels", tuple(range(1, self.m1 + 1)))
        if self.zero_labels is None:
            object.__setattr__(self, "zero_labels", tuple(range(1, self.m1 + 1)))

    @property
    def tangent_dim(self):
        return self.m1 + 2 * self.m2

    def vectors(self):
        """All frame vectors in expansion-variable order: x, E+, E-, E0, normals."""
        return [self.x, *self.eplus, *self.eminus, *self.ezero, *self.normals]

    def variable_names(self):
        return ["t"] + self.tangent_names() + self.normal_names()

    def tangent_names(self):
        return (
            [f"x{i}" for i in range(1, self.m2 + 1)]
            + [f"y{i}" for i in range(1, self.m2 + 1)]
            + [f"z{p}" for p in self.zero_labels]
        )

    def normal_names(self):
        return ["w0"] + [f"w{a}" for a in self.normal_labels]

    def substitution_rows(self):
        """rows[i][j] = i-th ambient coordinate of the j-th frame vector."""
        vecs = self.vectors()
        return [[v[i] for v in vecs] for i in range(self.ambient_dim)]

    def gram(self):
        return gram(self.vectors())

    def is_orthonormal(self):
        vecs = self.vectors()
        if len(vecs) != self.ambient_dim:
            return False
        return self.gram() == Mat.identity(self.ambient_dim)

    def to_json(self):
        def vec(v):
            return [c.to_json() for c in v]

        return {
            "ambient_dim": self.ambient_dim,
            "m1": self.m1,
            "m2": self.m2,
            "x": vec(self.x),
            "normals": [vec(v) for v in self.normals],
            "eplus": [vec(v) for v in self.eplus],
            "eminus": [vec(v) for v in self.eminus],
            "ezero": [vec(v) for v in self.ezero],
            "normal_labels": list(self.normal_labels),
            "zero_labels": list(self.zero_labels),
        }


def _vadd(u, v, cu=ONE, cv=ONE):
    return tuple(cu * a + cv * b for a, b in zip(u, v))


def _unit(n, i, c=ONE):
    v = [ZERO] * n
    v[i] = c
    return tuple(v)


# ---------------------------------------------------------------------------
# the {4,5} example on so(5, C)

PAIRS_5 = tuple((i, j) for i in range(1, 6) for j in range(i + 1, 6))


def h45_coord(kind, i, j):
    """Index of x_ij (kind 'x') or y_ij (kind 'y') among the 20 coordinates."""
    if i > j:
        i, j = j, i
    k = PAIRS_5.index((i, j))
    return k if kind == "x" else 10 + k


@lru_cache(maxsize=None)
def build_F_45():
    """-5/4 sum|Z_i|^4 + 3/2 sum_{i<j}|Z_i|^2|Z_j|^2 - 4 sum_{i<j}|<Z_i,Z_j>|^2.

    Z is complex skew-symmetric with a_ij = x_ij + sqrt(-1) y_ij, the Z_i
    are its rows and <,> is the Hermitian product sum_k a_ik conj(a_jk).
    """
    n = 20
    V = MPoly.variables(n)
    zero = MPoly.zero(n)

    def entry(i, j):
        if i == j:
            return zero, zero
        re, im = V[h45_coord("x", i, j)], V[h45_coord("y", i, j)]
        return (re, im) if i < j else (-re, -im)

    Z = [[entry(i, j) for j in range(1, 6)] for i in range(1, 6)]
    row_norm = [sum((re * re + im * im for re, im in row), zero) for row in Z]
    F = zero
    for i in range(5):
        F = F + (row_norm[i] * row_norm[i]).scale(Fraction(-5, 4))
    for i, j in itertools.combinations(range(5), 2):
        F = F + (row_norm[i] * row_norm[j]).scale(Fraction(3, 2))
        re, im = zero, zero
        for k in range(5):
            a, b = Z[i][k]
            c, d = Z[j][k]
            # (a + ib) * conj(c + id)
            re = re + a * c + b * d
            im = im + b * c - a * d
        F = F - (re * re + im * im).scale(4)
    return F


# old coordinate -> [(new coordinate, coefficient)]; new coordinates are
# t, w0..w4 (normal), z1..z4 (E0), x1..x5 (E+), y1..y5 (E-).
_H45_DICTIONARY = (
    (("x", 1, 2), (("t", 1), ("w0", 1))),
    (("x", 3, 4), (("t", 1), ("w0", -1))),
    (("x", 1, 3), (("w3", 1), ("z4", -1))),
    (("x", 2, 4), (("w3", 1), ("z4", 1))),
    (("y", 1, 3), (("z3", -1), ("w4", -1))),
    (("y", 2, 4), (("z3", -1), ("w4", 1))),
    (("x", 1, 4), (("z2", 1), ("w1", -1))),
    (("x", 2, 3), (("z2", 1), ("w1", 1))),
    (("y", 1, 4), (("w2", 1), ("z1", 1))),
    (("y", 2, 3), (("w2", 1), ("z1", -1))),
)
# E+ and E- coordinates are single ambient coordinates.  The source lists
# y_35 for both x2 and y2; y2 = y_15 is the choice that reproduces the
# second fundamental form exactly.
_H45_PLUS = (("x", 3, 5), ("y", 3, 5), ("x", 4, 5), ("y", 4, 5), ("y", 3, 4))
_H45_MINUS = (("x", 1, 5), ("y", 1, 5), ("x", 2, 5), ("y", 2, 5), ("y", 1, 2))


@lru_cache(maxsize=None)
def frame_45():
    n = 20
    cols = {}
    for (kind, i, j), combo in _H45_DICTIONARY:
        for name, c in combo:
            v = list(cols.get(name, (ZERO,) * n))
            v[h45_coord(kind, i, j)] = INV_SQRT2 * c
            cols[name] = tuple(v)
    for k, (kind, i, j) in enumerate(_H45_PLUS, start=1):
        cols[f"x{k}"] = _unit(n, h45_coord(kind, i, j))
    for k, (kind, i, j) in enumerate(_H45_MINUS, start=1):
        cols[f"y{k}"] = _unit(n, h45_coord(kind, i, j))
    return AdaptedFrame(
        ambient_dim=n,
        x=cols["t"],
        normals=tuple(cols[f"w{a}"] for a in range(5)),
        eplus=tuple(cols[f"x{k}"] for k in range(1, 6)),
        eminus=tuple(cols[f"y{k}"] for k in range(1, 6)),
        ezero=tuple(cols[f"z{p}"] for p in range(1, 5)),
        m1=4,
        m2=5,
    )


# ---------------------------------------------------------------------------
# the {6,9} example of OT-FKM type


@lru_cache(maxsize=None)
def clifford_system_69():
    return build_clifford_system()


def _quadratic_form(P):
    n = P.rows
    terms = {}
    for i in range(n):
        for j in range(n):
            v = P[i, j]
            if v:
                e = [0] * n
                e[i] += 1
                e[j] += 1
                e = tuple(e)
                terms[e] = terms.get(e, ZERO) + v
    return MPoly(n, terms)


def build_F_fkm(system):
    """-(|x|^4 - 2 sum <P_i x, x>^2).

    The raw OT-FKM quartic has its Clifford side at level +1; negating it
    puts the codimension m1+1 = 7 focal manifold at F = 1 for the {6,9}
    system (the Laplacian comes out as +24|x|^2 instead of -24|x|^2).
    """
    rep = verify_clifford(system)
    if not rep.ok:
        raise ValueError(f"not a Clifford system: {rep.reason} at {rep.failure}")
    n = system.dim
    r2 = norm_sq(n)
    F = r2 * r2
    for P in system.mats:
        q = _quadratic_form(P)
        F = F - (q * q).scale(2)
    return -F


@lru_cache(maxsize=None)
def build_F_69():
    return build_F_fkm(clifford_system_69())


def stiefel_point():
    """(zeta, eta) = ((e2/sqrt2, 0), (0, e1/sqrt2)) in R^16 x R^16."""
    v = [ZERO] * 32
    v[1] = INV_SQRT2
    v[16 + 8] = INV_SQRT2
    return tuple(v)


def stiefel_check(point, system=None):
    """Clifford-Stiefel membership: |zeta| = |eta| = 1/sqrt2, zeta _|_ eta,
    J_i(zeta) _|_ eta for the eight complex structures (11 conditions)."""
    from .algebras import build_c8_rep

    point = tuple(point)
    if len(point) != 32:
        return False
    zeta, eta = point[:16], point[16:]
    half = ONE / 2
    conds = [dot(zeta, zeta) == half, dot(eta, eta) == half, not dot(zeta, eta)]
    for J in build_c8_rep():
        conds.append(not dot(J @ list(zeta), eta))
    return all(conds)


@lru_cache(maxsize=None)
def frame_69():
    """Adapted frame at ((e2, 0), 0) on M+, the dual of the Stiefel point.

    Normals: n0 = (0, (0, e1)) and h_alpha = (0, (0, e_alpha)), alpha = 3..8.
    E+ : f_a = P_a(zeta, eta), a = 1..9.   E- : g_p = P_p P_0 (zeta, eta).
    E0 : k_mu = ((-e_mu, 0), 0), mu = 3..8.
    Signs: k_mu carries a minus so that <P9 h_alpha, k_mu> = -delta, and f9, g9
    are negated so the E+ x E0 block keeps its +1/sqrt2 entries.
    """
    system = clifford_system_69()
    P = system.mats
    v = stiefel_point()
    n = 32
    x = tuple(_vadd(v, P[0] @ list(v), INV_SQRT2, INV_SQRT2))
    n0 = tuple(_vadd(v, P[0] @ list(v), INV_SQRT2, -INV_SQRT2))
    hs = [_unit(n, 24 + a - 1) for a in range(3, 9)]
    fs = [tuple(P[a] @ list(v)) for a in range(1, 10)]
    p0v = P[0] @ list(v)
    gs = [tuple(P[p] @ p0v) for p in range(1, 10)]
    fs[8] = tuple(-c for c in fs[8])
    gs[8] = tuple(-c for c in gs[8])
    ks = [_unit(n, mu - 1, -ONE) for mu in range(3, 9)]
    return AdaptedFrame(
        ambient_dim=n,
        x=x,
        normals=tuple([n0] + hs),
        eplus=tuple(fs),
        eminus=tuple(gs),
        ezero=tuple(ks),
        m1=6,
        m2=9,
        normal_labels=tuple(range(3, 9)),
        zero_labels=tuple(range(3, 9)),
    )


def dual_frame(frame):
    """Frame at x* = (x + n0)/sqrt2 on the opposite focal manifold.

    n0* = (x - n0)/sqrt2; the old E+ vectors become the remaining normals,
    E+* = span(n1..n_m1), E-* = E0, E0* = E-.  Applying it twice returns the
    original frame.  The opposite focal manifold is the level 1 set of -F.
    """
    x = _vadd(frame.x, frame.normals[0], INV_SQRT2, INV_SQRT2)
    n0 = _vadd(frame.x, frame.normals[0], INV_SQRT2, -INV_SQRT2)
    return AdaptedFrame(
        ambient_dim=frame.ambient_dim,
        x=x,
        normals=(n0, *frame.eplus),
        eplus=tuple(frame.normals[1:]),
        eminus=tuple(frame.ezero),
        ezero=tuple(frame.eminus),
        m1=frame.m2,
        m2=frame.m1,
        normal_labels=tuple(range(1, frame.m2 + 1)),
        zero_labels=tuple(range(1, frame.m2 + 1)),
    )


def example_F(example):
    example = ExampleId(example)
    return build_F_45() if example is ExampleId.H45 else build_F_69()


def example_frame(example):
    example = ExampleId(example)
    return frame_45() if example is ExampleId.H45 else frame_69()


def example_multiplicities(example):
    example = ExampleId(example)
    return (4, 5) if example is ExampleId.H45 else (6, 9)
