"""Complex pencils c_0 S_0 + ... + c_k S_k of shape operators.

r_lambda is taken as m1 + m2 - dim ker(pencil) at nongeneric lambda, i.e. at
coefficient vectors c = alpha + i beta with <alpha, beta> = 0, |alpha| = |beta|.
"""

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .linalg import Mat, nullity as exact_nullity, rank as exact_rank
from .scalar import CScalar, Scalar, ZERO

FLOAT_RTOL = 1e-9


def _as_exact(v):
    if isinstance(v, (Scalar, CScalar)):
        return v
    if isinstance(v, complex):
        raise TypeError("use floating mode for float coefficients")
    return Scalar.coerce(v)


def pencil_matrix(c, blocks):
    """Exact sum c_a S_a (c_0 pairs with S_0, c_1 with the first normal, ...)."""
    c = list(c)
    if len(c) > blocks.m1 + 1:
        raise ValueError(f"{len(c)} coefficients for {blocks.m1 + 1} shape operators")
    if not c:
        raise ValueError("empty coefficient vector")
    n = blocks.S[0].rows
    out = [[CScalar() for _ in range(n)] for _ in range(n)]
    for ca, S in zip(c, blocks.S):
        ca = _as_exact(ca)
        if not ca:
            continue
        for i, j, v in S.nonzero_entries():
            out[i][j] = out[i][j] + ca * v
    return Mat(out)


def pencil_array(c, blocks):
    """Floating version of pencil_matrix as a complex numpy array."""
    c = np.asarray(c, dtype=complex)
    if c.ndim != 1 or len(c) > blocks.m1 + 1:
        raise ValueError(f"{c.size} coefficients for {blocks.m1 + 1} shape operators")
    stack = _float_stack(blocks)[: len(c)]
    return np.tensordot(c, stack, axes=1)


_STACKS = {}


def _float_stack(blocks):
    key = id(blocks)
    hit = _STACKS.get(key)
    if hit is None or hit[0] is not blocks:
        hit = (blocks, np.array([S.to_float() for S in blocks.S], dtype=float))
        _STACKS[key] = hit
    return hit[1]


def nullity(M, mode="exact", rtol=FLOAT_RTOL):
    if mode == "exact":
        if not isinstance(M, Mat):
            raise TypeError("exact mode needs an exact Mat")
        return exact_nullity(M)
    if mode != "floating":
        raise ValueError(f"unknown mode {mode!r}")
    arr = np.array(M.to_float(), dtype=complex) if isinstance(M, Mat) else np.asarray(M, dtype=complex)
    if arr.shape[0] != arr.shape[1]:
        raise ValueError("nullity expects a square matrix")
    sv = np.linalg.svd(arr, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return arr.shape[0]
    return int(np.sum(sv <= rtol * sv[0]))


@dataclass
class PencilSample:
    c: np.ndarray
    tau: complex = None
    nullity: int = None
    r_lambda: int = None

    @property
    def alpha(self):
        return self.c.real

    @property
    def beta(self):
        return self.c.imag

    def is_nongeneric(self, tol=FLOAT_RTOL):
        a, b = self.alpha, self.beta
        scale = max(float(a @ a), float(b @ b), 1.0)
        return abs(float(a @ b)) <= tol * scale and abs(float(a @ a - b @ b)) <= tol * scale


def sample_hyperquadric(k, n, seed, max_retries=100):
    """n points c = alpha + i beta in C^{k+1} with alpha _|_ beta and |alpha| = |beta|.

    With n0 = alpha/|alpha| and n1 = beta/|beta| the pencil is
    |alpha| (S_{n0} + i S_{n1}), so tau = i in the Gram-Schmidt frame.
    """
    if k < 1:
        raise ValueError("the hyperquadric needs k >= 1")
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        for _attempt in range(max_retries):
            alpha = rng.standard_normal(k + 1)
            beta = rng.standard_normal(k + 1)
            beta = beta - (beta @ alpha) / (alpha @ alpha) * alpha
            nb = np.linalg.norm(beta)
            if nb > 1e-8:
                break
        else:
            raise RuntimeError("degenerate hyperquadric draws")
        beta = beta * (np.linalg.norm(alpha) / nb)
        # one more projection pass keeps <alpha, beta> at rounding level
        beta = beta - (beta @ alpha) / (alpha @ alpha) * alpha
        beta = beta * (np.linalg.norm(alpha) / np.linalg.norm(beta))
        out.append(PencilSample(c=alpha + 1j * beta, tau=1j))
    return out


@dataclass
class ScanReport:
    m1: int
    m2: int
    k: int
    n_samples: int
    seed: int
    histogram: dict
    violations: list

    @property
    def ok(self):
        return not self.violations

    def to_json(self):
        return {
            "m1": self.m1,
            "m2": self.m2,
            "k": self.k,
            "n_samples": self.n_samples,
            "seed": self.seed,
            "histogram": {str(r): n for r, n in sorted(self.histogram.items())},
            "violations": list(self.violations),
        }


def r_lambda_scan(blocks, samples, seed=None, rtol=FLOAT_RTOL):
    """Fill in nullity and r_lambda per sample; histogram over r values."""
    m1, m2 = blocks.m1, blocks.m2
    counts = Counter()
    violations = []
    k = 0
    for idx, s in enumerate(samples):
        k = max(k, len(s.c) - 1)
        if not s.is_nongeneric():
            violations.append({"sample": idx, "reason": "generic coefficient vector"})
            continue
        s.nullity = nullity(pencil_array(s.c, blocks), mode="floating", rtol=rtol)
        s.r_lambda = m1 + m2 - s.nullity
        counts[s.r_lambda] += 1
        if s.r_lambda not in (0, 1):
            violations.append({"sample": idx, "reason": f"r_lambda = {s.r_lambda}"})
    return ScanReport(m1, m2, k, len(samples), seed, dict(counts), violations)


def structured_lambda(blocks, a_index=1, sign=1):
    """The exact pencil S_0 + (sign) i S_a, lambda = [1 : +-i : 0 : ...]."""
    c = [CScalar(1)] + [CScalar()] * blocks.m1
    c[a_index] = CScalar(0, sign)
    return pencil_matrix(c, blocks)


def jacobian_rank(polys, point):
    """Exact rank of the Jacobian of ``polys`` at a rational point."""
    rows = [[p.diff(i).evaluate(point) for i in range(p.nvars)] for p in polys]
    return exact_rank(Mat(rows))


def kernel_structure_ok(blocks, a_index=1, sign=1):
    """Kernel vectors (x, y, z) of S_0 + sign*i*S_a, with tau = sign*i.

    With U the upper (m2-1) block of A_a and y1' = U y1 the kernel obeys
    x1 = -tau y1' and y1' = tau x1 (U = I for H45, so there y1' = y1).
    """
    from .linalg import nullspace

    M = structured_lambda(blocks, a_index, sign)
    m2 = blocks.m2
    r = m2 - 1
    tau = CScalar(0, sign)
    A = blocks.A[a_index]
    U = A.submatrix(list(range(r)), list(range(r)))
    kernel = nullspace(M)
    if len(kernel) != blocks.m1 + blocks.m2 - 1:
        return False
    for v in kernel:
        x1, y1 = v[:r], v[m2:m2 + r]
        y1r = U @ y1
        for xi, yi in zip(x1, y1r):
            if xi != -tau * yi or yi != tau * xi:
                return False
    return True
