"""Injection families, operator builds, classification, intertwining, fuzzing."""
import numpy as np
import pytest

from submaj.demos import quadratic_family, triangular_constant_row, triangular_family
from submaj.matrices import classify_matrix, vonneumann_complete
from submaj.preservers import (
    Injection,
    InjectionFamily,
    PreserverSpec,
    TruncatedOperator,
    apply_Th,
    apply_injection_operator,
    build_preserver,
    classify_preserver_l1,
    classify_preserver_lp,
    construct_S,
    empirical_preservation_check,
    identity_injection,
    injection_matrix,
    validate_family,
)
from submaj.relations import check_weak_majorize
from submaj.sampling import random_doubly_substochastic, random_injection_family
from submaj.vectors import NonNegVector, p_norm

V = NonNegVector.of


class TestInjection:
    def test_rejects_duplicates(self):
        with pytest.raises(ValueError, match="distinct"):
            Injection((1, 2, 2))

    def test_rejects_non_positive(self):
        with pytest.raises(ValueError, match="positive"):
            Injection((0, 1))

    def test_identity_application(self):
        f = V(1, 2, 3)
        assert apply_injection_operator(identity_injection(3), f).values.tolist() == [1, 2, 3]

    def test_shift_as_injection(self):
        theta = Injection((2, 3, 4))  # j -> j + 1
        out = apply_injection_operator(theta, V(1, 2, 3))
        assert out.values.tolist() == [0, 1, 2, 3]

    def test_quadratic_member_placement(self):
        theta = quadratic_family(1, 3).members[0]  # images (2, 3, 5)
        out = apply_injection_operator(theta, V(1, 2, 3))
        assert out.values.tolist() == [0, 1, 2, 0, 3]

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="mismatch"):
            apply_injection_operator(identity_injection(3), V(1, 2))

    @pytest.mark.parametrize("p", [1.0, 2.0, 3.7])
    def test_norm_preserved(self, p):
        rng = np.random.default_rng(31)
        for _ in range(20):
            n = int(rng.integers(1, 10))
            targets = rng.choice(40, size=n, replace=False) + 1
            theta = Injection(tuple(int(t) for t in targets))
            f = NonNegVector(rng.uniform(0, 2, n))
            assert p_norm(apply_injection_operator(theta, f), p) == pytest.approx(
                p_norm(f, p), rel=1e-12
            )


class TestFamilyValidation:
    def test_quadratic_family_disjoint(self):
        verdict = validate_family(quadratic_family(2, 4))
        assert verdict.valid and verdict.collision is None

    def test_identity_twice_collides(self):
        verdict = validate_family(InjectionFamily((identity_injection(3), identity_injection(3))))
        assert not verdict.valid
        assert tuple(verdict.collision) == (1, 1, 2, 1)

    def test_single_member_always_valid(self):
        assert validate_family(InjectionFamily((Injection((4, 9, 1)),))).valid

    def test_family_requires_common_domain(self):
        with pytest.raises(ValueError, match="domain"):
            InjectionFamily((identity_injection(2), identity_injection(3)))


class TestPreserverSpec:
    def test_weight_count_must_match(self):
        with pytest.raises(ValueError, match="weight"):
            PreserverSpec(p=2.0, weights=(0.5,), family=quadratic_family(2, 3))

    def test_rejects_negative_weight(self):
        with pytest.raises(ValueError, match="nonnegative"):
            PreserverSpec(p=2.0, weights=(-0.5, 1.0), family=quadratic_family(2, 3))

    def test_rejects_small_p(self):
        with pytest.raises(ValueError, match="p >= 1"):
            PreserverSpec(p=0.5, weights=(1.0,), family=quadratic_family(1, 3))

    def test_constant_row_only_for_p_one(self):
        h = V(1, 0, 0)
        with pytest.raises(ValueError, match="p = 1"):
            PreserverSpec(p=2.0, weights=(1.0,), family=quadratic_family(1, 3), constant_row=h)

    def test_constant_row_support_must_avoid_images(self):
        h = np.zeros(6)
        h[1] = 0.4  # index 2 is the first quadratic image
        with pytest.raises(ValueError, match="avoid"):
            PreserverSpec(p=1.0, weights=(1.0,), family=quadratic_family(1, 3),
                          constant_row=NonNegVector(h))

    def test_json_round_trip(self):
        h = np.zeros(8)
        h[0] = 0.25
        spec = PreserverSpec(p=1.0, weights=(0.5, 0.25), family=quadratic_family(2, 3),
                             constant_row=NonNegVector(h))
        back = PreserverSpec.from_json_dict(spec.to_json_dict())
        assert back.p == 1.0
        assert back.weights == (0.5, 0.25)
        assert [m.mapping for m in back.family.members] == [m.mapping for m in spec.family.members]
        assert np.array_equal(back.constant_row.values, spec.constant_row.values)


class TestTruncatedOperator:
    def test_rejects_entries_outside_window(self):
        with pytest.raises(ValueError, match="window"):
            TruncatedOperator(rows=2, cols=2, entries={(3, 1): 1.0})

    def test_rejects_non_positive_entries(self):
        with pytest.raises(ValueError, match="positive"):
            TruncatedOperator(rows=2, cols=2, entries={(1, 1): 0.0})

    def test_apply_matches_dense(self):
        t = TruncatedOperator(rows=3, cols=2, entries={(1, 1): 0.5, (3, 2): 2.0})
        f = V(2, 1)
        assert np.array_equal(t.apply(f).values, t.to_dense() @ f.values)

    def test_apply_dimension_mismatch(self):
        t = TruncatedOperator(rows=2, cols=2, entries={(1, 1): 1.0})
        with pytest.raises(ValueError, match="mismatch"):
            t.apply(V(1, 2, 3))

    def test_json_round_trip(self):
        t = TruncatedOperator(rows=3, cols=2, entries={(1, 2): 0.5, (3, 1): 1.5})
        back = TruncatedOperator.from_json_dict(t.to_json_dict())
        assert back.entries == t.entries and back.rows == 3 and back.cols == 2


class TestBuildPreserver:
    def test_empty_spec_builds_zero_operator(self):
        spec = PreserverSpec(p=1.0, weights=(), family=InjectionFamily(()))
        t = build_preserver(spec, rows=3, cols=2)
        assert t.entries == {}
        assert np.array_equal(t.to_dense(), np.zeros((3, 2)))

    def test_zero_weights_leave_no_entries(self):
        spec = PreserverSpec(p=2.0, weights=(0.0,), family=quadratic_family(1, 3))
        assert build_preserver(spec, rows=8, cols=3).entries == {}

    def test_columns_capped_by_domain(self):
        spec = PreserverSpec(p=2.0, weights=(1.0,), family=quadratic_family(1, 3))
        with pytest.raises(ValueError, match="domain"):
            build_preserver(spec, rows=8, cols=4)


class TestApplyTh:
    def test_formula(self):
        assert apply_Th(V(1, 0), V(2, 3)).values.tolist() == [5, 0]

    def test_zero_input(self):
        assert apply_Th(V(1, 2), V(0, 0)).values.tolist() == [0, 0]

    def test_first_coordinate_scales_total(self):
        a = 0.3
        h = NonNegVector(np.array([a, 0, 0, 0, 0, 0]))
        f = V(0.1, 0.2, 0.3, 0.4, 0.5)
        out = apply_Th(h, f)
        assert out.values[0] == pytest.approx(a * f.values.sum())
        assert np.all(out.values[1:] == 0)


class TestDisjointAdditivity:
    def test_one_norm_scales_by_total_weight(self):
        # Disjoint images make the weighted copies of f non-overlapping, so
        # the built operator multiplies the 1-norm by the weight total.
        rng = np.random.default_rng(32)
        for _ in range(20):
            members = int(rng.integers(1, 5))
            domain = int(rng.integers(1, 7))
            family = random_injection_family(rng, members, domain, truncate=members * domain + 10)
            weights = tuple(float(w) for w in rng.uniform(0.0, 2.0, members))
            spec = PreserverSpec(p=1.0, weights=weights, family=family)
            rows = max(family.union_image())
            t = build_preserver(spec, rows=rows, cols=domain)
            f = NonNegVector(rng.uniform(0, 1, domain))
            assert p_norm(t.apply(f), 1) == pytest.approx(sum(weights) * p_norm(f, 1), abs=1e-12)


class TestClassifiers:
    def test_built_operator_accepted_lp(self):
        spec = PreserverSpec(p=2.0, weights=(0.5, 0.2), family=quadratic_family(2, 3))
        rows = max(spec.family.union_image())
        assert classify_preserver_lp(build_preserver(spec, rows, 3)).accepted

    def test_shift_as_single_injection_accepted(self):
        # Right shift = P_theta with theta(j) = j + 1; rows cover every image.
        t = injection_matrix(Injection((2, 3, 4, 5)), rows=5, cols=4)
        assert classify_preserver_lp(t).accepted

    def test_row_with_two_positives_rejected(self):
        t = TruncatedOperator(rows=2, cols=2, entries={(1, 1): 1.0, (1, 2): 0.5})
        verdict = classify_preserver_lp(t)
        assert not verdict.accepted and "row 1" in verdict.reason

    def test_l1_accepts_constant_row_build(self):
        h = np.zeros(16)
        h[0] = 0.7
        spec = PreserverSpec(p=1.0, weights=(0.5, 0.25, 0.125, 0.0625, 0.03125),
                             family=quadratic_family(5, 5), constant_row=NonNegVector(h))
        rows = max(spec.family.union_image())
        assert classify_preserver_l1(build_preserver(spec, rows, 5)).accepted

    def test_l1_accepts_interleaved_constant_rows(self):
        spec = PreserverSpec(p=1.0, weights=(0.5, 0.25, 0.125, 0.0625, 0.03125),
                             family=triangular_family(5, 5),
                             constant_row=triangular_constant_row((0.9, 0.8, 0.7, 0.6), 16))
        rows = max(spec.family.union_image())
        t = build_preserver(spec, rows, 5)
        assert classify_preserver_l1(t).accepted
        for j in range(1, 6):  # constant rows land at 2, 5, 9, 14 in every column
            assert t.entries[(2, j)] == 0.9 and t.entries[(14, j)] == 0.6

    def test_l1_rejects_uneven_row(self):
        t = TruncatedOperator(rows=1, cols=3, entries={(1, 1): 0.4, (1, 2): 0.4, (1, 3): 0.9})
        verdict = classify_preserver_l1(t)
        assert not verdict.accepted and "row 1" in verdict.reason

    def test_lp_rejects_column_multiset_mismatch(self):
        t = TruncatedOperator(rows=4, cols=2, entries={(1, 1): 0.5, (2, 2): 0.75})
        verdict = classify_preserver_lp(t)
        assert not verdict.accepted and "multiset" in verdict.reason

    def test_corruption_flips_verdict(self):
        spec = PreserverSpec(p=2.0, weights=(0.5, 0.2), family=quadratic_family(2, 3))
        rows = max(spec.family.union_image())
        t = build_preserver(spec, rows, 3)
        assert classify_preserver_lp(t).accepted
        corrupted = dict(t.entries)
        corrupted[(1, 1)] = 0.33  # row 1 is empty in the build; a stray positive breaks columns
        assert not classify_preserver_lp(
            TruncatedOperator(rows=rows, cols=3, entries=corrupted)
        ).accepted

    def test_weight_limit_still_classifies(self):
        # Geometric weight sequences converging entrywise keep the verdict.
        base = np.array([0.5, 0.25, 0.125])
        for m in range(1, 13):
            lam = tuple(base + 2.0**-m)
            spec = PreserverSpec(p=2.0, weights=lam, family=quadratic_family(3, 4))
            rows = max(spec.family.union_image())
            assert classify_preserver_lp(build_preserver(spec, rows, 4)).accepted
        spec = PreserverSpec(p=2.0, weights=tuple(base), family=quadratic_family(3, 4))
        rows = max(spec.family.union_image())
        assert classify_preserver_lp(build_preserver(spec, rows, 4)).accepted


class TestConstructS:
    def test_identity_family_reproduces_base(self):
        rng = np.random.default_rng(33)
        d = random_doubly_substochastic(rng, 3)
        cert = vonneumann_complete(d)
        s = construct_S(cert, InjectionFamily((identity_injection(3),)), a=0.42)
        assert np.max(np.abs(s.to_dense() - d.data)) <= 1e-12

    def test_offset_injection_places_block_and_diagonal(self):
        d = classify_matrix([[0.5, 0.5], [0.5, 0.5]])
        cert = vonneumann_complete(d)
        family = InjectionFamily((Injection((3, 4)),))  # j -> j + 2
        s = construct_S(cert, family, a=0.5, truncate=4).to_dense()
        assert np.max(np.abs(s[2:, 2:] - d.data)) <= 1e-12
        assert s[0, 0] == 0.5 and s[1, 1] == 0.5
        assert s[0, 1] == 0 and s[2, 0] == 0

    def test_equal_norms_pin_outside_diagonal_to_one(self):
        # a = 1 - |f|/|g| collapses to 0 when the norms agree.
        d = classify_matrix([[1.0]])
        cert = vonneumann_complete(d)
        s = construct_S(cert, InjectionFamily((Injection((2,)),)), a=0.0, truncate=3).to_dense()
        assert s[0, 0] == 1.0 and s[2, 2] == 1.0 and s[1, 1] == 1.0

    def test_intertwining_identity_random(self):
        rng = np.random.default_rng(34)
        for _ in range(25):
            m = int(rng.integers(1, 6))
            members = int(rng.integers(1, 4))
            n = int(rng.integers(members * m, members * m + 20))
            family = random_injection_family(rng, members, m, n)
            cert = vonneumann_complete(random_doubly_substochastic(rng, m))
            s = construct_S(cert, family, float(rng.uniform()), truncate=n)
            s_dense = s.to_dense()
            for member in family.members:
                p_theta = injection_matrix(member, rows=n, cols=m).to_dense()
                gap = np.max(np.abs(p_theta @ cert.base.data - s_dense @ p_theta))
                assert gap <= 1e-12

    def test_rejects_bad_a(self):
        cert = vonneumann_complete(classify_matrix([[1.0]]))
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            construct_S(cert, InjectionFamily((identity_injection(1),)), a=1.5)

    def test_rejects_image_outside_truncation(self):
        cert = vonneumann_complete(classify_matrix([[1.0]]))
        with pytest.raises(ValueError, match="truncation"):
            construct_S(cert, InjectionFamily((Injection((5,)),)), truncate=3)


class TestEmpiricalPreservation:
    def test_identity_spec_always_passes(self):
        spec = PreserverSpec(p=2.0, weights=(1.0,), family=InjectionFamily((identity_injection(6),)))
        report = empirical_preservation_check(spec, trials=40, n=6, seed=1)
        assert report.all_passed and report.failures == 0

    def test_quadratic_family_passes(self):
        spec = PreserverSpec(p=1.0, weights=(0.5, 0.25, 0.125), family=quadratic_family(3, 10))
        report = empirical_preservation_check(spec, trials=100, n=10, seed=2)
        assert report.all_passed

    def test_deterministic_for_fixed_seed(self):
        spec = PreserverSpec(p=2.0, weights=(0.7, 0.2), family=quadratic_family(2, 8))
        r1 = empirical_preservation_check(spec, trials=25, n=8, seed=9)
        r2 = empirical_preservation_check(spec, trials=25, n=8, seed=9)
        assert r1.passes == r2.passes == 25

    def test_adversarial_operator_has_concrete_counterexample(self):
        # A row with two distinct positives is rejected by classification and
        # genuinely breaks preservation on a permuted pair.
        t = TruncatedOperator(rows=2, cols=2, entries={(1, 1): 1.0, (1, 2): 0.5})
        assert not classify_preserver_lp(t).accepted
        f, g = V(1, 0), V(0, 1)  # f is a permutation of g, so f sub g holds
        assert not check_weak_majorize(t.apply(f), t.apply(g), with_witness=False).holds
