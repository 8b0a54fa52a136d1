"""Named verification suites run by the command-line driver."""

from functools import lru_cache
import random

from .forms import (
    block_identity_suite, circ_suite, duality_relations, mirror_check, ot_expand,
    pq_gradient_suite, shape_blocks, structural_suite, third_form_suite, third_form_tensor,
)
from .geometry import (
    ExampleId, clifford_system_69, dual_frame, example_F, example_frame,
    example_multiplicities, stiefel_point, stiefel_check,
)
from .linalg import dot
from .pencil import (
    jacobian_rank, kernel_structure_ok, nullity, pencil_matrix, r_lambda_scan,
    sample_hyperquadric, structured_lambda,
)
from .polyring import verify_cm
from .report import Report
from .scalar import Scalar, ONE, ZERO
from fractions import Fraction

SUITES = ("cm", "frames", "blocks", "mirror", "thirdform", "pq", "circ", "pencil")
N_PENCIL_SAMPLES = 1000


@lru_cache(maxsize=None)
def forms_for(example):
    return ot_expand(example_F(example), example_frame(example))


@lru_cache(maxsize=None)
def blocks_for(example):
    return shape_blocks(forms_for(example))


@lru_cache(maxsize=None)
def tensor_for(example):
    return third_form_tensor(forms_for(example))


@lru_cache(maxsize=None)
def dual_data(example):
    frame = dual_frame(example_frame(example))
    forms = ot_expand(-example_F(example), frame)
    return frame, forms, shape_blocks(forms)


class _Prefixed:
    """Adapter so suite helpers write check ids under an example prefix."""

    def __init__(self, report, prefix):
        self.report = report
        self.prefix = prefix

    def run(self, check_id, fn):
        return self.report.run(f"{self.prefix}.{check_id}", fn)


def _cm(ex, rep):
    m1, m2 = example_multiplicities(ex)
    res = {}

    def get():
        if not res:
            res["r"] = verify_cm(example_F(ex), 4, m1, m2)
        return res["r"]

    rep.run("cm.gradient", lambda: (get().grad_ok, f"|grad F|^2 - 16|x|^6 has {get().grad_residual_terms} terms"))
    rep.run("cm.laplacian", lambda: (
        get().laplacian_ok,
        f"Delta F - {(m2 - m1) * 8}|x|^2 has {get().laplacian_residual_terms} terms",
    ))


def _frames(ex, rep):
    F = example_F(ex)
    frame = example_frame(ex)
    rep.run("frames.orthonormal", lambda: (frame.is_orthonormal(), f"{frame.ambient_dim} frame vectors"))
    rep.run("frames.base_point", lambda: (F.evaluate(frame.x) == ONE, "F(x) = 1"))
    rep.run("frames.expansion", lambda: (forms_for(ex).residual_ok, "t^0 remainder matches the expansion"))
    rep.run("frames.eigenspaces", lambda: (blocks_for(ex) is not None, "S_0 = diag(I, -I, 0), block pattern respected"))
    if ex is ExampleId.FKM69:
        P = clifford_system_69().mats
        pt = stiefel_point()
        rep.run("frames.stiefel", lambda: (stiefel_check(pt) and F.evaluate(pt) == -ONE, "(zeta, eta) on M-, F = -1"))

        def eq_p():
            hs = frame.normals[1:]
            ks = frame.ezero
            for i in range(1, 10):
                for a, h in zip(frame.normal_labels, hs):
                    Ph = P[i] @ list(h)
                    for mu, k in zip(frame.zero_labels, ks):
                        want = -ONE if (i == 9 and a == mu) else ZERO
                        if dot(Ph, k) != want:
                            return False, f"<P_{i} h_{a}, k_{mu}>"
            return True, "<P_9 h_a, k_mu> = -delta, other P_i orthogonal"

        rep.run("frames.clifford_normals", eq_p)

    def dual():
        d = dual_frame(frame)
        dd = dual_frame(d)
        ok = d.is_orthonormal() and F.evaluate(d.x) == -ONE and dd.vectors() == frame.vectors()
        return ok, "dual frame orthonormal, F(x*) = -1, involutive"

    rep.run("frames.dual", dual)

    def duality():
        _, dforms, dblocks = dual_data(ex)
        if not dforms.residual_ok:
            return False, "dual expansion residual"
        bad = duality_relations(blocks_for(ex), tensor_for(ex), dblocks)
        return bad is None, "A*, B*, C* match primal S data" if bad is None else f"mismatch {bad}"

    rep.run("frames.duality", duality)


def _pencil(ex, rep, seed):
    blocks = blocks_for(ex)
    m1, m2 = blocks.m1, blocks.m2
    rep.run("pencil.nullity_S0", lambda: (nullity(pencil_matrix([1], blocks)) == m1, f"dim ker S_0 = {m1}"))

    def structured():
        vals = [nullity(structured_lambda(blocks, a, s)) for a in range(1, m1 + 1) for s in (1, -1)]
        want = m1 + m2 - 1
        return all(v == want for v in vals), f"dim ker(S_0 +- i S_a) = {want} for every a (exact)"

    rep.run("pencil.structured", structured)

    def agree():
        M = structured_lambda(blocks)
        a, b = nullity(M), nullity(M, "floating")
        return a == b, f"exact {a}, floating {b}"

    rep.run("pencil.exact_vs_floating", agree)
    rep.run("pencil.kernel_structure", lambda: (
        all(kernel_structure_ok(blocks, a, s) for a in range(1, m1 + 1) for s in (1, -1)),
        "kernel solves x1 = -tau y1, y1 = tau x1 in the rotated E- basis",
    ))

    def scan():
        samples = sample_hyperquadric(m1, N_PENCIL_SAMPLES, seed)
        res = r_lambda_scan(blocks, samples, seed)
        hist = {str(k): v for k, v in sorted(res.histogram.items())}
        return res.ok and res.histogram == {1: N_PENCIL_SAMPLES}, f"histogram {hist}"

    rep.run("pencil.scan", scan)

    def jac():
        forms = forms_for(ex)
        rng = random.Random(seed)
        n = forms.tangent_dim
        worst = 0
        for _ in range(50):
            pt = [Scalar(Fraction(rng.randint(-5, 5), rng.randint(1, 5))) for _ in range(n)]
            worst = max(worst, jacobian_rank(forms.p, pt))
        return worst <= m1 + 1, f"max Jacobian rank of p_0..p_{m1} over 50 points = {worst}"

    rep.run("pencil.jacobian_rank", jac)


def _run_one(name, ex, rep, seed):
    pre = _Prefixed(rep, ex.value.lower())
    if name == "cm":
        _cm(ex, pre)
    elif name == "frames":
        _frames(ex, pre)
    elif name == "blocks":
        block_identity_suite(blocks_for(ex), report=pre)
    elif name == "mirror":
        mirror_check(blocks_for(ex), tensor_for(ex), report=pre)
    elif name == "thirdform":
        third_form_suite(tensor_for(ex), report=pre)
        structural_suite(forms_for(ex), blocks_for(ex), tensor_for(ex), report=pre)
    elif name == "pq":
        pq_gradient_suite(forms_for(ex), report=pre)
    elif name == "circ":
        circ_suite(tensor_for(ex), seed=seed, report=pre)
    elif name == "pencil":
        _pencil(ex, pre, seed)
    else:
        raise ValueError(f"unknown suite {name!r}")


def parse_examples(example):
    if example is None or str(example).lower() == "both":
        return [ExampleId.H45, ExampleId.FKM69]
    if isinstance(example, ExampleId):
        return [example]
    return [ExampleId.parse(example)]


def run_suite(name, example="both", seed=0):
    if name != "all" and name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    examples = parse_examples(example)
    rep = Report(name, seed)
    names = SUITES if name == "all" else (name,)
    for ex in examples:
        for n in names:
            _run_one(n, ex, rep, seed)
    return rep
