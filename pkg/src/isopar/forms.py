"""Second and third fundamental forms of M+ from the Ozeki-Takeuchi expansion.

At a frame point x with unit normals n_a and tangent coordinates
y = (x_alpha, y_mu, z_p),

    F(t x + y + w) = t^4 + (2|y|^2 - 6|w|^2) t^2 + 8 sum p_a w_a t
                     + |y|^4 - 6|y|^2|w|^2 + |w|^4 - 2 sum p_a^2
                     - 8 sum q^a w_a + 2 sum <grad p_a, grad p_b> w_a w_b.

p_a are the second fundamental forms and q^a the third.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import Mat
from .polyring import MPoly, grad_inner, norm_sq, subst_linear
from .scalar import ZERO, ONE, Scalar


class OTExpansionError(ValueError):
    """The substituted polynomial disagrees with the expansion shape.

    ``strata`` lists (t-degree, w-degree) pairs where coefficients differ.
    """

    def __init__(self, message, strata=()):
        super().__init__(message)
        self.strata = tuple(strata)


class ShapeBlockError(ValueError):
    def __init__(self, message, normal=None, entry=None):
        super().__init__(message)
        self.normal = normal
        self.entry = entry


@dataclass
class SecondThirdForms:
    m1: int
    m2: int
    p: list  # p_0..p_m1 over the m1 + 2 m2 tangent variables
    q: list  # q^0..q^m1
    residual_ok: bool
    tangent_names: list
    normal_labels: tuple
    zero_labels: tuple
    residual_strata: tuple = ()
    expanded: MPoly = field(default=None, repr=False)

    @property
    def tangent_dim(self):
        return self.m1 + 2 * self.m2

    def p_by_label(self, label):
        return self.p[self.normal_labels.index(label) + 1]

    def q_by_label(self, label):
        return self.q[self.normal_labels.index(label) + 1]

    def tangent_index(self, kind, label):
        """Index of x_label / y_label / z_label among tangent variables."""
        if kind == "x":
            return label - 1
        if kind == "y":
            return self.m2 + label - 1
        if kind == "z":
            return 2 * self.m2 + self.zero_labels.index(label)
        raise ValueError(kind)


def _single(n, i):
    e = [0] * n
    e[i] = 1
    return tuple(e)


def ot_expand(F, frame):
    """Substitute F(t x + sum y_i e_i + sum w_a n_a) and read off p_a, q^a."""
    if not frame.is_orthonormal():
        raise ValueError("frame is not orthonormal")
    if F.nvars != frame.ambient_dim:
        raise ValueError("frame and polynomial live in different dimensions")
    N = frame.ambient_dim
    ntan = frame.tangent_dim
    k = frame.m1 + 1
    tan = list(range(1, 1 + ntan))
    wi = list(range(1 + ntan, N))
    G = subst_linear(F, frame.substitution_rows(), N)
    lead = G.coeff((4,) + (0,) * (N - 1))
    if lead != ONE:
        raise OTExpansionError(f"F(x) = {lead}, expected 1 at the base point", [(4, 0)])

    parts = G.collect([0] + wi)
    zero_t = MPoly.zero(ntan)
    p, q = [], []
    for a in range(k):
        key1 = (1,) + _single(k, a)
        key0 = (0,) + _single(k, a)
        p.append(parts[key1].restrict(tan).scale(Fraction(1, 8)) if key1 in parts else zero_t)
        q.append(parts[key0].restrict(tan).scale(Fraction(-1, 8)) if key0 in parts else zero_t)

    expected = _rebuild(p, q, N, tan, wi)
    diff = G - expected
    bad = sorted({(e[0], sum(e[i] for i in wi)) for e in diff.terms})
    if any(s[0] > 0 for s in bad):
        raise OTExpansionError(
            "expansion mismatch in strata " + ", ".join(f"t^{a} w-degree {b}" for a, b in bad),
            bad,
        )
    return SecondThirdForms(
        m1=frame.m1,
        m2=frame.m2,
        p=p,
        q=q,
        residual_ok=not bad,
        tangent_names=frame.tangent_names(),
        normal_labels=tuple(frame.normal_labels),
        zero_labels=tuple(frame.zero_labels),
        residual_strata=tuple(bad),
        expanded=G,
    )


def _rebuild(p, q, N, tan, wi):
    t = MPoly.var(N, 0)
    w = [MPoly.var(N, i) for i in wi]
    y2 = norm_sq(N, tan)
    w2 = norm_sq(N, wi)
    P = [pa.embed(tan, N) for pa in p]
    Q = [qa.embed(tan, N) for qa in q]
    out = t ** 4 + (y2.scale(2) - w2.scale(6)) * t * t
    lin = MPoly.zero(N)
    for pa, wa in zip(P, w):
        lin = lin + pa * wa
    out = out + (lin * t).scale(8)
    out = out + y2 * y2 - (y2 * w2).scale(6) + w2 * w2
    for pa in P:
        out = out - (pa * pa).scale(2)
    for qa, wa in zip(Q, w):
        out = out - (qa * wa).scale(8)
    for a in range(len(p)):
        for b in range(len(p)):
            gab = grad_inner(p[a], p[b]).embed(tan, N)
            if gab:
                out = out + (gab * w[a] * w[b]).scale(2)
    return out


# ---------------------------------------------------------------------------
# shape operators


def shape_matrix(poly):
    """Symmetric S with poly(u) = u^T S u (poly must be a quadratic form)."""
    n = poly.nvars
    S = [[ZERO] * n for _ in range(n)]
    for exp, c in poly.terms.items():
        idx = [i for i, e in enumerate(exp) for _ in range(e)]
        if len(idx) != 2:
            raise ValueError("not a quadratic form")
        i, j = idx
        if i == j:
            S[i][i] = c
        else:
            S[i][j] = c / 2
            S[j][i] = c / 2
    return Mat(S)


@dataclass
class ShapeBlocks:
    """Block form of the shape operators S_0..S_m1 in the frame.

    S_0 = diag(I, -I, 0); for a >= 1, S_a = [[0, A, B], [A^T, 0, C], [B^T, C^T, 0]]
    with A: E+ x E-, B: E+ x E0, C: E- x E0.
    """

    m1: int
    m2: int
    S: list
    A: list  # A[0] is unused (None); A[a] for a = 1..m1
    B: list
    C: list
    normal_labels: tuple
    zero_labels: tuple

    def index(self, label):
        return self.normal_labels.index(label) + 1

    def block(self, name, label):
        return getattr(self, name)[self.index(label)]


def shape_blocks(forms):
    m1, m2 = forms.m1, forms.m2
    X = list(range(m2))
    Y = list(range(m2, 2 * m2))
    Z = list(range(2 * m2, 2 * m2 + m1))
    S = [shape_matrix(pa) if pa else Mat.zeros(forms.tangent_dim, forms.tangent_dim) for pa in forms.p]
    n = forms.tangent_dim
    S0_want = Mat([[(ONE if i < m2 else -ONE) if i == j and i < 2 * m2 else ZERO for j in range(n)] for i in range(n)])
    if S[0] != S0_want:
        bad = next((i, j) for i in range(n) for j in range(n) if S[0][i, j] != S0_want[i, j])
        raise ShapeBlockError(f"S_0 is not diag(I, -I, 0): entry {bad}", normal=0, entry=bad)
    A, B, C = [None], [None], [None]
    for a in range(1, m1 + 1):
        Sa = S[a]
        for block in (X, Y, Z):
            for i in block:
                for j in block:
                    if Sa[i, j]:
                        raise ShapeBlockError(
                            f"S_{forms.normal_labels[a - 1]} has entry {Sa[i, j]} at {(i, j)} outside the block pattern",
                            normal=a,
                            entry=(i, j),
                        )
        A.append(Sa.submatrix(X, Y))
        B.append(Sa.submatrix(X, Z))
        C.append(Sa.submatrix(Y, Z))
    return ShapeBlocks(m1, m2, S, A, B, C, forms.normal_labels, forms.zero_labels)


# ---------------------------------------------------------------------------
# third fundamental form


@dataclass
class ThirdFormTensor:
    """T^p_{alpha mu} = S^p_{alpha mu} read off from q^0.

    ``full[p]`` is the m2 x m2 matrix over all alpha, mu; ``T[p]`` drops the
    last index, which is identically zero.
    """

    m1: int
    m2: int
    zero_labels: tuple
    full: dict
    T: dict
    q0: MPoly = field(default=None, repr=False)


class ThirdFormError(ValueError):
    pass


def third_form_tensor(forms):
    m1, m2 = forms.m1, forms.m2
    q0 = forms.q[0]
    full = {p: [[ZERO] * m2 for _ in range(m2)] for p in forms.zero_labels}
    zpos = {2 * m2 + i: p for i, p in enumerate(forms.zero_labels)}
    for exp, c in q0.terms.items():
        idx = [i for i, e in enumerate(exp) for _ in range(e)]
        xs = [i for i in idx if i < m2]
        ys = [i - m2 for i in idx if m2 <= i < 2 * m2]
        zs = [zpos[i] for i in idx if i >= 2 * m2]
        if not (len(xs) == len(ys) == len(zs) == 1):
            names = "*".join(forms.tangent_names[i] for i in idx)
            raise ThirdFormError(f"q^0 has a term {names} outside the x*y*z pattern")
        full[zs[0]][xs[0]][ys[0]] = c * Fraction(-1, 2)
    full = {p: Mat(M) for p, M in full.items()}
    last = m2 - 1
    for p, M in full.items():
        if any(M[last, j] for j in range(m2)) or any(M[i, last] for i in range(m2)):
            raise ThirdFormError(f"T^{p} has nonzero entries in the excluded index {m2}")
    red = list(range(m2 - 1))
    T = {p: M.submatrix(red, red) for p, M in full.items()}
    return ThirdFormTensor(m1, m2, tuple(forms.zero_labels), full, T, q0)


# ---------------------------------------------------------------------------
# identity suites


def _first_bad(pairs):
    """First index whose residual matrix is nonzero, or None."""
    for idx, M in pairs:
        if not M.is_zero():
            return idx
    return None


def _verdict(bad, what):
    if bad is None:
        return True, what
    return False, f"{what}: first failure at {bad}"


def upper_block(M, size):
    r = list(range(size))
    return M.submatrix(r, r)


def block_identity_suite(blocks, designated=None, report=None):
    """The six block-identity families plus the quaternion/Clifford and rank-1 checks.

    ``designated`` is the normal label whose (A, B, C) plays the distinguished
    role; it defaults to the first normal label (1 for H45, 3 for FKM69).
    """
    from .report import Report

    rep = report if report is not None else Report("blocks")
    labels = blocks.normal_labels
    d = labels[0] if designated is None else designated
    di = blocks.index(d)
    A, B, C = blocks.A[di], blocks.B[di], blocks.C[di]
    others = [blocks.index(j) for j in labels if j != d]
    lab = lambda j: labels[j - 1]
    m2 = blocks.m2
    Am, Bm, Cm = blocks.A, blocks.B, blocks.C

    def fam1():
        return _verdict(_first_bad(
            (lab(j), Am[j] @ A.T + A @ Am[j].T + (Bm[j] @ B.T + B @ Bm[j].T).scale(2)) for j in others
        ), f"A_j A^t + A A_j^t + 2B_j B^t + 2B B_j^t = 0 for j != {d}")

    def fam2():
        return _verdict(_first_bad(
            (lab(j), Am[j] @ A.T + A @ Am[j].T + (Cm[j] @ C.T + C @ Cm[j].T).scale(2)) for j in others
        ), f"A_j A^t + A A_j^t + 2C_j C^t + 2C C_j^t = 0 for j != {d}")

    def fam3():
        def sym_part(j):
            M = Am[j] @ C @ B.T + Bm[j] @ C.T @ A.T + A @ Cm[j] @ B.T
            return M + M.T
        return _verdict(_first_bad((lab(j), sym_part(j)) for j in others),
                        "A_j C B^t + B_j C^t A^t + A C_j B^t skew-symmetric")

    def fam4():
        eye = Mat.identity(m2)
        return _verdict(_first_bad(
            (lab(j), Am[j] @ Am[j].T + (Bm[j] @ Bm[j].T).scale(2) - eye) for j in range(1, blocks.m1 + 1)
        ), "A_j A_j^t + 2B_j B_j^t = I")

    def fam5():
        pairs = []
        for j in range(1, blocks.m1 + 1):
            for k in range(j + 1, blocks.m1 + 1):
                M = Am[j] @ Am[k].T + Am[k] @ Am[j].T + (Bm[j] @ Bm[k].T + Bm[k] @ Bm[j].T).scale(2)
                pairs.append(((lab(j), lab(k)), M))
        return _verdict(_first_bad(pairs), "A_j A_k^t + A_k A_j^t + 2B_j B_k^t + 2B_k B_j^t = 0 (j != k)")

    def fam6():
        return _verdict(_first_bad(
            (lab(j), Bm[j].T @ B + B.T @ Bm[j] - Cm[j].T @ C - C.T @ Cm[j]) for j in others
        ), "B_j^t B + B^t B_j = C_j^t C + C^t C_j")

    for name, fn in (("family1", fam1), ("family2", fam2), ("family3", fam3),
                     ("family4", fam4), ("family5", fam5), ("family6", fam6)):
        rep.run(f"blocks.{name}", fn)

    rep.run("blocks.symmetric", lambda: (all(S.is_symmetric() for S in blocks.S), "assembled S_a symmetric"))
    _upper_clifford_checks(blocks, rep)
    rep.run("blocks.rank1", lambda: _rank_one(blocks))
    return rep


def _upper_clifford_checks(blocks, rep):
    from .algebras import anticommute_report

    size = blocks.m2 - 1
    U = [upper_block(blocks.A[a], size) for a in range(1, blocks.m1 + 1)]
    labels = blocks.normal_labels
    eye = Mat.identity(size)
    if U[0] == eye:
        # A_1 = I and the remaining blocks are the imaginary units
        imag, imag_labels = U[1:], labels[1:]
    else:
        imag, imag_labels = U, labels

    def cliff():
        bad = anticommute_report(imag, -1)
        if bad is None:
            return True, f"upper blocks of A_{imag_labels[0]}..A_{imag_labels[-1]} generate C_{len(imag)}"
        return False, f"anticommutation fails at {(imag_labels[bad[0]], imag_labels[bad[1]])}"

    rep.run("blocks.upper_clifford", cliff)
    if len(imag) == 3:
        rep.run("blocks.quaternion", lambda: (
            imag[0] @ imag[1] == -imag[2],
            f"A_{imag_labels[0]} A_{imag_labels[1]} = -A_{imag_labels[2]} on upper blocks",
        ))
    if U[0] != eye and len(U) > 2:
        gens = [-(U[0] @ Uj) for Uj in U[1:]]

        def c5():
            bad = anticommute_report(gens, -1)
            if bad is None:
                return True, f"-A_{labels[0]} A_j generate C_{len(gens)}"
            return False, f"fails at {(labels[bad[0] + 1], labels[bad[1] + 1])}"

        rep.run("blocks.derived_clifford", c5)


def _rank_one(blocks):
    k = blocks.m1
    c = MPoly.variables(k)
    rows, cols = blocks.m2, blocks.m1
    M = [[MPoly.zero(k) for _ in range(cols)] for _ in range(rows)]
    for a in range(1, k + 1):
        for i, j, v in blocks.B[a].nonzero_entries():
            M[i][j] = M[i][j] + c[a - 1].scale(v)
    if all(not e for r in M for e in r):
        return False, "sum c_a B_a vanishes identically"
    for i1 in range(rows):
        for i2 in range(i1 + 1, rows):
            for j1 in range(cols):
                for j2 in range(j1 + 1, cols):
                    minor = M[i1][j1] * M[i2][j2] - M[i1][j2] * M[i2][j1]
                    if minor:
                        return False, f"2x2 minor rows {(i1, i2)} cols {(j1, j2)} is {minor.to_str()}"
    return True, "all 2x2 minors of sum c_a B_a vanish identically"


def third_form_suite(T, report=None):
    """Orthogonality and skew-symmetry of the T^p."""
    from .report import Report

    rep = report if report is not None else Report("thirdform")
    n = T.m2 - 1
    eye = Mat.identity(n)

    def orth():
        bad = [p for p, M in T.T.items() if M.T @ M != eye]
        return not bad, "T^p orthogonal" if not bad else f"not orthogonal: {bad}"

    def excluded():
        last = T.m2 - 1
        bad = [p for p, M in T.full.items()
               if any(M[last, j] or M[j, last] for j in range(T.m2))]
        return not bad, f"index {T.m2} row/column of T^p vanish" if not bad else f"nonzero at {bad}"

    rep.run("thirdform.orthogonal", orth)
    rep.run("thirdform.excluded_index", excluded)
    return rep


def _sym_to_idx(labels):
    return {p: i for i, p in enumerate(labels)}


def mirror_check(blocks, T, report=None):
    from .report import Report

    rep = report if report is not None else Report("mirror")
    labels = T.zero_labels
    zi = _sym_to_idx(blocks.zero_labels)
    m1, m2 = blocks.m1, blocks.m2
    half = Fraction(1, 2)

    def run(which):
        # S^a_{p alpha} lives in B (E+ x E0), S^a_{p mu} in C (E- x E0)
        side = blocks.B if which == 1 else blocks.C
        for p in labels:
            for q in labels:
                Tp, Tq = T.full[p], T.full[q]
                if which == 2:
                    Tp, Tq = Tp.T, Tq.T
                for al in range(m2):
                    for be in range(m2):
                        s = ZERO
                        for a in range(1, m1 + 1):
                            M = side[a]
                            s = s + M[al, zi[p]] * M[be, zi[q]] + M[al, zi[q]] * M[be, zi[p]]
                        for mu in range(m2):
                            s = s + (Tp[al, mu] * Tq[be, mu] + Tq[al, mu] * Tp[be, mu]) * half
                        want = ONE if (p == q and al == be) else ZERO
                        if s != want:
                            return False, f"(p, q, i, j) = {(p, q, al + 1, be + 1)}: got {s}"
        n = len(labels) ** 2 * m2 ** 2
        return True, f"{n} index tuples"

    rep.run("mirror.alpha", lambda: run(1))
    rep.run("mirror.mu", lambda: run(2))
    return rep


def gradient_identity_residual(forms, a, b, self_pair=False, cache=None):
    """8<grad q^a, grad q^b> minus the right-hand side of the gradient identity.

    With ``self_pair=True`` and a != b the first term uses <grad p_a, grad p_a>
    literally; otherwise <grad p_a, grad p_b>.
    """
    p, q = forms.p, forms.q
    n = forms.tangent_dim
    cache = {} if cache is None else cache
    if "G" not in cache:
        G = MPoly.zero(n)
        for pc in p:
            G = G + pc * pc
        cache["G"] = G
        cache["y2"] = norm_sq(n)
    G, y2 = cache["G"], cache["y2"]

    def gpp(i, j):
        key = (min(i, j), max(i, j))
        if key not in cache:
            cache[key] = grad_inner(p[i], p[j])
        return cache[key]

    k = len(p)
    lhs = grad_inner(q[a], q[b]).scale(8)
    first = gpp(a, a) if (self_pair and a != b) else gpp(a, b)
    rhs = (first * y2 - p[a] * p[b]).scale(8) + grad_inner(gpp(a, b), G)
    if a == b:
        rhs = rhs - G.scale(24)
    tail = MPoly.zero(n)
    for c in range(k):
        tail = tail + gpp(a, c) * gpp(b, c)
    rhs = rhs - tail.scale(2)
    return lhs - rhs


def pq_gradient_suite(forms, report=None):
    from .report import Report

    rep = report if report is not None else Report("pq")
    k = len(forms.p)
    cache = {}

    def pq():
        s = MPoly.zero(forms.tangent_dim)
        for pa, qa in zip(forms.p, forms.q):
            s = s + pa * qa
        return s.is_zero(), "sum p_a q^a = 0" if not s else f"{len(s)} residual terms"

    def same(diag):
        pairs = [(a, a) for a in range(k)] if diag else [(a, b) for a in range(k) for b in range(a + 1, k)]
        for a, b in pairs:
            r = gradient_identity_residual(forms, a, b, cache=cache)
            if r:
                return False, f"pair {(a, b)}: {len(r)} residual terms"
        return True, f"{len(pairs)} index pairs"

    rep.run("pq.sum", pq)
    rep.run("pq.same_diagonal", lambda: same(True))
    rep.run("pq.same_offdiagonal", lambda: same(False))
    return rep


# ---------------------------------------------------------------------------
# the circle product


def _algebra_for(T):
    from .algebras import Quaternion, Octonion

    n = T.m2 - 1
    if n == 4:
        return Quaternion
    if n == 8:
        return Octonion
    raise ValueError(f"no division algebra of dimension {n}")


def circ(T, X, Y):
    """X o Y = sum_p <T^p Y, X> e_p as coordinates in the algebra."""
    n = T.m2 - 1
    out = [ZERO] * n
    for p, M in T.T.items():
        s = ZERO
        for i, xi in enumerate(X):
            if not xi:
                continue
            for j, yj in enumerate(Y):
                if yj and M[i, j]:
                    s = s + xi * M[i, j] * yj
        out[p - 1] = s
    return out


def _inner(u, v):
    return sum((a * b for a, b in zip(u, v)), ZERO)


def _random_rational(rng):
    return Scalar(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))


def circ_suite(T, seed=0, draws=20, report=None):
    import random
    from .report import Report

    rep = report if report is not None else Report("circ", seed)
    alg = _algebra_for(T)
    n = T.m2 - 1
    labels = list(T.zero_labels)
    basis = [[ONE if k == i else ZERO for k in range(n)] for i in range(n)]
    zbasis = [basis[p - 1] for p in labels]
    rng = random.Random(seed)

    def mul(a, b):
        return list((alg(*a) * alg(*b)).coeffs)

    def rand_y():
        return [_random_rational(rng) for _ in range(n)]

    def rand_z():
        v = [ZERO] * n
        for p in labels:
            v[p - 1] = _random_rational(rng)
        return v

    def useful():
        # <X o Y, e_p> read off q^0 directly: -1/2 d q^0 / d z_p at (X, Y)
        m2 = T.m2
        q0 = T.q0
        zpos = {p: 2 * m2 + i for i, p in enumerate(labels)}
        for p in labels:
            dq = q0.diff(zpos[p])
            for i in range(n):
                for j in range(n):
                    pt = [ZERO] * q0.nvars
                    pt[i] = ONE
                    pt[m2 + j] = ONE
                    lhs = dq.evaluate(pt) * Fraction(-1, 2)
                    rhs = _inner(T.T[p] @ basis[j], basis[i])
                    if lhs != rhs:
                        return False, f"p={p}, X=e{i + 1}, Y=e{j + 1}"
        return True, f"{len(labels) * n * n} basis pairs"

    def yz(Y, Z):
        return _inner(circ(T, mul(Y, Z), Y), Z)

    def yz_check():
        for i, Y in enumerate(basis):
            for p, Z in zip(labels, zbasis):
                if yz(Y, Z):
                    return False, f"Y=e{i + 1}, Z=e{p}"
        for _ in range(draws):
            Y, Z = rand_y(), rand_z()
            if yz(Y, Z):
                return False, f"random draw Y={[str(c) for c in Y]}"
        return True, f"{n * len(labels)} basis pairs, {draws} random draws"

    def symm_y(Y1, Y2, Z):
        return _inner(circ(T, mul(Y1, Z), Y2), Z) + _inner(circ(T, mul(Y2, Z), Y1), Z)

    def symm_z(Y, Z1, Z2):
        return _inner(circ(T, mul(Y, Z1), Y), Z2) + _inner(circ(T, mul(Y, Z2), Y), Z1)

    def symm_check(kind):
        for i, U in enumerate(basis):
            for j, V in enumerate(basis if kind == "y" else zbasis):
                for k, W in enumerate(zbasis):
                    val = symm_y(U, V, W) if kind == "y" else symm_z(U, V, W)
                    if val:
                        return False, f"basis triple {(i, j, k)}"
        for _ in range(draws):
            if kind == "y":
                val = symm_y(rand_y(), rand_y(), rand_z())
            else:
                val = symm_z(rand_y(), rand_z(), rand_z())
            if val:
                return False, "random draw"
        return True, f"basis triples and {draws} random draws"

    rep.run("circ.useful", useful)
    rep.run("circ.yz", yz_check)
    rep.run("circ.symm_y", lambda: symm_check("y"))
    rep.run("circ.symm_z", lambda: symm_check("z"))
    if n == 8:
        mats = [T.T[p] for p in labels]

        def skew():
            bad = [p for p in labels if not T.T[p].is_skew()]
            return not bad, "T^p skew-symmetric" if not bad else f"not skew: {bad}"

        def zero_corner():
            bad = [p for p in labels if any(T.T[p][i, j] for i in range(2) for j in range(2))]
            return not bad, "upper-left 2x2 blocks vanish" if not bad else f"nonzero: {bad}"

        def anti():
            for a in range(len(mats)):
                for b in range(a + 1, len(mats)):
                    if not (mats[a] @ mats[b] + mats[b] @ mats[a]).is_zero():
                        return False, f"T^{labels[a]} T^{labels[b]} + T^{labels[b]} T^{labels[a]} != 0"
            return True, "T^i T^j = -T^j T^i for i != j"

        rep.run("circ.skew", skew)
        rep.run("circ.zero_block", zero_corner)
        rep.run("circ.anticommute", anti)
    return rep


# ---------------------------------------------------------------------------
# structural display of q^a and duality


def structural_q(forms, blocks, T, a_label):
    """q^a rebuilt from T and A alone:

    sqrt2 (x_last - y_last) sum T^a x y + sum U x x z + sum V y y z.
    """
    from .scalar import SQRT2

    m2 = forms.m2
    n = forms.tangent_dim
    V = MPoly.variables(n)
    r = m2 - 1
    half = Fraction(1, 2)
    Aa = blocks.block("A", a_label)
    Ta = T.full[a_label]
    acc = MPoly.zero(n)
    for al in range(r):
        for mu in range(r):
            if Ta[al, mu]:
                acc = acc + (V[al] * V[m2 + mu]).scale(Ta[al, mu])
    out = ((V[r] - V[m2 + r]) * acc).scale(SQRT2)
    for i, p in enumerate(forms.zero_labels):
        z = V[2 * m2 + i]
        Tp = T.full[p]
        for al in range(r):
            for be in range(r):
                U = sum((Tp[al, mu] * Aa[be, mu] + Tp[be, mu] * Aa[al, mu] for mu in range(r)), ZERO) * half
                if U:
                    out = out + (V[al] * V[be] * z).scale(U)
                W = -sum((Tp[x, al] * Aa[x, be] + Tp[x, be] * Aa[x, al] for x in range(r)), ZERO) * half
                if W:
                    out = out + (V[m2 + al] * V[m2 + be] * z).scale(W)
    return out


def structural_suite(forms, blocks, T, report=None):
    from .report import Report

    rep = report if report is not None else Report("thirdform")

    def run():
        for a in forms.normal_labels:
            d = forms.q_by_label(a) - structural_q(forms, blocks, T, a)
            if d:
                return False, f"q^{a} differs in {len(d)} terms"
        return True, f"q^a for a in {list(forms.normal_labels)} match U/V recomputation"

    rep.run("thirdform.structural_uv", run)
    return rep


def duality_relations(primal_blocks, primal_T, dual_blocks):
    """Compare the dual frame's blocks with primal data.

    A*_alpha = -sqrt2 (S^a_{p alpha}), B*_alpha = -(S^a_{alpha mu})/sqrt2,
    C*_alpha = -(S^p_{alpha mu})/sqrt2 (upper index = row).
    Returns the first mismatch as (block, alpha) or None.
    """
    from .scalar import SQRT2, INV_SQRT2

    pb, T = primal_blocks, primal_T
    m1, m2 = pb.m1, pb.m2
    for al in range(1, m2 + 1):
        di = dual_blocks.index(al)
        As = Mat([[-SQRT2 * pb.B[a][al - 1, pi] for pi in range(m1)] for a in range(1, m1 + 1)])
        Bs = Mat([[-INV_SQRT2 * pb.A[a][al - 1, mu] for mu in range(m2)] for a in range(1, m1 + 1)])
        Cs = Mat([[-INV_SQRT2 * T.full[p][al - 1, mu] for mu in range(m2)] for p in pb.zero_labels])
        for name, want in (("A", As), ("B", Bs), ("C", Cs)):
            if getattr(dual_blocks, name)[di] != want:
                return (name, al)
    return None
