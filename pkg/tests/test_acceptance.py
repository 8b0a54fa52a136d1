"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import json
import random
import time

from acceptance_log import criterion
from displays import A45, A69, B45, B69, T45, T69, h45_q0, h45_second_forms
from isopar.forms import (
    block_identity_suite, circ_suite, duality_relations, mirror_check, pq_gradient_suite,
    structural_q, third_form_suite,
)
from isopar.geometry import ExampleId, build_F_45, build_F_69
from isopar.pencil import nullity, pencil_matrix, r_lambda_scan, sample_hyperquadric, structured_lambda
from isopar.polyring import finite_difference_grad, grad, norm_sq, rel_error, verify_cm
from isopar.report import strip_timing
from isopar.suites import blocks_for, dual_data, forms_for, run_suite, tensor_for

H45, FKM69 = ExampleId.H45, ExampleId.FKM69


def test_criterion_1_muenzner_identities():
    with criterion(1, "Cartan-Muenzner identities exact for F45 and F69 within time budget"):
        t0 = time.perf_counter()
        r45 = verify_cm(build_F_45(), 4, 4, 5)
        t45 = time.perf_counter() - t0
        assert r45.ok and r45.residual_terms == 0
        assert r45.laplacian == norm_sq(20).scale(8)
        assert t45 < 30
        t0 = time.perf_counter()
        r69 = verify_cm(build_F_69(), 4, 6, 9)
        t69 = time.perf_counter() - t0
        assert r69.ok and r69.residual_terms == 0
        assert r69.laplacian == norm_sq(32).scale(24)
        assert t69 < 300


def test_criterion_2_second_form_fidelity():
    with criterion(2, "second fundamental forms and A/B/C blocks match the displays exactly"):
        f45 = forms_for(H45)
        assert f45.p == h45_second_forms()
        b45 = blocks_for(H45)
        for a in range(1, 5):
            assert b45.A[a] == A45[a] and b45.B[a] == B45[a] and b45.C[a] == B45[a]
        assert forms_for(FKM69).residual_ok
        b69 = blocks_for(FKM69)
        for a in range(3, 9):
            assert b69.block("A", a) == A69[a]
            assert b69.block("B", a) == B69[a]
            assert b69.block("C", a) == B69[a]


def test_criterion_3_third_form_fidelity():
    with criterion(3, "q0 and the third-form matrices match the displays; excluded index vanishes"):
        assert forms_for(H45).q[0] == h45_q0()
        t45, t69 = tensor_for(H45), tensor_for(FKM69)
        assert all(t45.T[p] == T45[p] for p in range(1, 5))
        assert all(t69.T[p] == T69[p] for p in range(3, 9))
        for t in (t45, t69):
            rep = third_form_suite(t)
            assert rep.passed, rep.to_text()


def test_criterion_4_identity_suites():
    with criterion(4, "block, Clifford, mirror, orthogonality and circle-product identities exact"):
        for ex in (H45, FKM69):
            b, t = blocks_for(ex), tensor_for(ex)
            for rep in (block_identity_suite(b), mirror_check(b, t), third_form_suite(t), circ_suite(t, seed=0)):
                assert rep.passed, rep.to_text()
        ids = {c.id for c in block_identity_suite(blocks_for(H45)).checks}
        assert "blocks.quaternion" in ids
        ids = {c.id for c in block_identity_suite(blocks_for(FKM69)).checks}
        assert "blocks.derived_clifford" in ids
        ids = {c.id for c in circ_suite(tensor_for(FKM69)).checks}
        assert {"circ.skew", "circ.zero_block", "circ.anticommute"} <= ids


def test_criterion_5_pq_and_gradient_identities():
    with criterion(5, "sum p_a q^a = 0 and both gradient identities for all index pairs"):
        t0 = time.perf_counter()
        for ex in (H45, FKM69):
            rep = pq_gradient_suite(forms_for(ex))
            assert rep.passed, rep.to_text()
        assert time.perf_counter() - t0 < 600


def test_criterion_6_duality():
    with criterion(6, "dual frame blocks satisfy the three duality relations"):
        _, dforms, dblocks = dual_data(H45)
        assert dforms.residual_ok
        assert duality_relations(blocks_for(H45), tensor_for(H45), dblocks) is None


def test_criterion_7_pencil_calibration():
    with criterion(7, "pencil nullities exact and 1000-sample scans give {1: 1000}"):
        for ex, want in ((H45, 8), (FKM69, 14)):
            b = blocks_for(ex)
            assert nullity(pencil_matrix([1], b)) == b.m1
            assert nullity(structured_lambda(b)) == want == b.m1 + b.m2 - 1
            t0 = time.perf_counter()
            res = r_lambda_scan(b, sample_hyperquadric(b.m1, 1000, 0), 0)
            assert time.perf_counter() - t0 < 60
            assert res.histogram == {1: 1000} and not res.violations


def test_criterion_8_determinism():
    with criterion(8, "same suite and seed give identical JSON reports"):
        for name in ("pencil", "circ", "frames"):
            a = run_suite(name, "both", 42).to_json()
            b = run_suite(name, "both", 42).to_json()
            assert json.dumps(strip_timing(a), sort_keys=True) == json.dumps(strip_timing(b), sort_keys=True)
            assert run_suite(name, "both", 42).dumps(timing=False) == run_suite(name, "both", 42).dumps(timing=False)


def test_criterion_9_oracle_cross_checks():
    with criterion(9, "symbolic gradients match finite differences; U/V recomputation matches q^a"):
        rng = random.Random(2024)
        polys = [build_F_45(), build_F_69()]
        for ex in (H45, FKM69):
            f = forms_for(ex)
            polys += [p for p in f.p] + [q for q in f.q if q]
        for F in polys:
            G = grad(F)
            for _ in range(5):
                pt = [rng.uniform(-1, 1) for _ in range(F.nvars)]
                assert rel_error([g.evaluate_float(pt) for g in G], finite_difference_grad(F, pt)) < 1e-9
        for ex in (H45, FKM69):
            f, b, t = forms_for(ex), blocks_for(ex), tensor_for(ex)
            for a in f.normal_labels:
                assert f.q_by_label(a) == structural_q(f, b, t, a)
