import numpy as np
import pytest

from wolfopt import cec2014
from wolfopt.cec2014 import (
    COMPOSITION_SPECS,
    FUNCTION_IDS,
    HYBRID_SPECS,
    KERNELS,
    SIMPLE_SPECS,
    HybridFunction,
    MissingSuiteFileError,
    NonOrthogonalMatrixError,
    SimpleFunction,
    SuiteDataError,
    composition_weights,
    function_bias,
    generate_suite,
    hybrid_chunk_sizes,
    load_suite,
    load_or_generate,
    random_rotation,
    save_suite,
)

DIM = 10
SEED = 2014


@pytest.fixture(scope="module")
def suite():
    return generate_suite(SEED, DIM)


def member_optimum(fn):
    return fn.members[0].shift if hasattr(fn, "members") else fn.shift


class TestKernels:
    @pytest.mark.parametrize("name", sorted(KERNELS))
    def test_zero_at_canonical_optimum(self, name):
        kernel = KERNELS[name]
        if name in ("rosenbrock", "griewank_rosenbrock"):
            z = np.ones(6)
        elif name in ("happycat", "hgbat"):
            z = -np.ones(6)
        else:
            z = np.zeros(6)
        value = float(kernel.fn(z))
        # The modified Schwefel optimum sits a hair above zero analytically.
        tol = 2e-4 if name == "mod_schwefel" else 1e-10
        assert abs(value) < tol

    @pytest.mark.parametrize("name", sorted(KERNELS))
    def test_nonnegative_on_probes(self, name):
        rng = np.random.default_rng(hash(name) % 2**32)
        z = rng.uniform(-120, 120, size=(4000, 8))
        values = KERNELS[name].fn(z)
        assert np.all(values >= -1e-9)

    def test_rastrigin_value(self):
        # One full cosine period away from the optimum in one coordinate.
        assert float(KERNELS["rastrigin"].fn(np.array([1.0, 0.0]))) == pytest.approx(1.0)

    def test_ackley_near_zero_at_origin(self):
        assert abs(float(KERNELS["ackley"].fn(np.zeros(10)))) < 1e-12


class TestTransforms:
    def test_identity_transform_equals_kernel(self, suite):
        rng = np.random.default_rng(0)
        kernel = KERNELS["rastrigin"]
        fn = SimpleFunction(8, kernel, np.zeros(DIM), np.eye(DIM), 0.0)
        x = rng.uniform(-100, 100, size=(32, DIM))
        np.testing.assert_allclose(fn(x), kernel.fn(kernel.scale * x), rtol=1e-12)

    def test_rastrigin_row_anchor(self, suite):
        fn = suite.functions[8]
        assert float(fn(fn.shift)) == pytest.approx(800.0, abs=1e-9)

    def test_elliptic_row_anchor(self, suite):
        fn = suite.functions[1]
        assert float(fn(fn.shift)) == pytest.approx(100.0, abs=1e-9)

    def test_anchoring_all_functions(self, suite):
        for func_id in FUNCTION_IDS:
            fn = suite.functions[func_id]
            value = float(fn(member_optimum(fn)))
            bias = function_bias(func_id)
            assert abs(value - bias) / bias < 1e-6, f"f{func_id}: {value}"

    def test_probe_lower_bound(self, suite):
        rng = np.random.default_rng(99)
        x = rng.uniform(-100, 100, size=(2000, DIM))
        for func_id in FUNCTION_IDS:
            values = suite.functions[func_id](x)
            assert np.all(values >= function_bias(func_id) - 1e-6), f"f{func_id}"


class TestHybrids:
    def test_chunk_sizes_ceil_rule(self):
        assert hybrid_chunk_sizes(10, (0.3, 0.3, 0.4)) == [3, 3, 4]

    def test_chunk_sizes_partition_dim(self):
        for func_id, (_, props) in HYBRID_SPECS.items():
            for dim in (10, 30, 50, 100):
                sizes = hybrid_chunk_sizes(dim, props)
                assert sum(sizes) == dim and all(s > 0 for s in sizes)

    def test_empty_chunk_rejected(self):
        with pytest.raises(SuiteDataError):
            hybrid_chunk_sizes(2, (0.1, 0.2, 0.2, 0.2, 0.3))

    def test_hybrid_anchor(self, suite):
        fn = suite.functions[17]
        assert float(fn(fn.shift)) == pytest.approx(1700.0, rel=1e-7)

    def test_every_dimension_used_once(self, suite):
        fn = suite.functions[19]
        assert sorted(fn.permutation.tolist()) == list(range(DIM))
        assert sum(r.shape[0] for r in fn.chunk_rotations) == DIM

    def test_single_chunk_hybrid_equals_simple(self):
        rng = np.random.default_rng(3)
        shift = rng.uniform(-80, 80, DIM)
        rot = random_rotation(rng, DIM)
        kernel = KERNELS["rastrigin"]
        hybrid = HybridFunction(8, (kernel,), shift, np.arange(DIM), (rot,), 800.0)
        simple = SimpleFunction(8, kernel, shift, rot, 800.0)
        x = rng.uniform(-100, 100, size=(16, DIM))
        np.testing.assert_allclose(hybrid(x), simple(x), rtol=1e-12)


class TestCompositionWeights:
    def test_singularity_takes_all(self):
        shifts = np.arange(50, dtype=float).reshape(5, 10)
        sigmas = np.array([10.0, 20, 30, 40, 50])
        w = composition_weights(shifts[2].copy(), shifts, sigmas)
        np.testing.assert_array_equal(w, [0.0, 0.0, 1.0, 0.0, 0.0])

    def test_normalized(self):
        rng = np.random.default_rng(5)
        shifts = rng.uniform(-80, 80, size=(5, 10))
        sigmas = np.array([10.0, 20, 30, 40, 50])
        x = rng.uniform(-100, 100, size=(64, 10))
        w = composition_weights(x, shifts, sigmas)
        assert np.all(w >= 0)
        np.testing.assert_allclose(w.sum(axis=-1), 1.0, atol=1e-12)

    def test_equidistant_members_share_equally(self):
        shifts = np.array([[1.0, 0.0], [-1.0, 0.0]])
        sigmas = np.array([10.0, 10.0])
        w = composition_weights(np.array([0.0, 5.0]), shifts, sigmas)
        np.testing.assert_allclose(w, [0.5, 0.5], atol=1e-12)


class TestCompositions:
    def test_anchor_at_member_one(self, suite):
        fn = suite.functions[23]
        assert float(fn(fn.members[0].shift)) == pytest.approx(2300.0, rel=1e-9)

    def test_single_member_composition(self):
        rng = np.random.default_rng(7)
        suite_fn = generate_suite(SEED, DIM).functions[23]
        member = suite_fn.members[0]
        single = cec2014.CompositionFunction(
            23, (member,), np.array([2.0]), np.array([10.0]), np.array([0.0]), 2300.0
        )
        x = rng.uniform(-100, 100, size=(16, DIM))
        np.testing.assert_allclose(single(x), 2.0 * member.rebased(x) + 2300.0, rtol=1e-12)

    def test_value_is_convex_combination(self, suite):
        rng = np.random.default_rng(8)
        fn = suite.functions[24]
        x = rng.uniform(-100, 100, size=(32, DIM))
        contributions = np.stack(
            [lam * m.rebased(x) + b
             for m, lam, b in zip(fn.members, fn.lambdas, fn.member_biases)],
            axis=-1,
        )
        values = fn(x) - fn.bias
        assert np.all(values >= contributions.min(axis=-1) - 1e-9)
        assert np.all(values <= contributions.max(axis=-1) + 1e-9)


class TestGenerator:
    def test_deterministic(self):
        a = generate_suite(SEED, DIM)
        b = generate_suite(SEED, DIM)
        rng = np.random.default_rng(1)
        x = rng.uniform(-100, 100, size=(8, DIM))
        for func_id in FUNCTION_IDS:
            np.testing.assert_array_equal(a.functions[func_id](x), b.functions[func_id](x))

    def test_seeds_differ(self):
        a = generate_suite(1, DIM)
        b = generate_suite(2, DIM)
        assert np.any(a.functions[1].shift != b.functions[1].shift)

    def test_rotations_orthogonal(self, suite):
        for func_id in (1, 9, 13):
            m = suite.functions[func_id].rotation
            assert np.max(np.abs(m.T @ m - np.eye(DIM))) < 1e-10

    def test_shifts_strictly_inside_bounds(self, suite):
        for func_id in FUNCTION_IDS:
            fn = suite.functions[func_id]
            shifts = [m.shift for m in fn.members] if hasattr(fn, "members") else [fn.shift]
            for o in shifts:
                assert np.all(np.abs(o) <= 80.0)

    def test_nonstandard_dim_flagged(self):
        s = generate_suite(SEED, 12)
        assert "nonstandard" in s.source

    def test_problem_metadata(self, suite):
        p = suite.problem(7)
        assert p.name == "cec14-f7" and p.known_fmin == 700.0
        assert p.bounds.lower[0] == -100.0 and p.bounds.upper[0] == 100.0


class TestSuiteFile:
    def test_round_trip(self, suite, tmp_path):
        path = tmp_path / "suite.txt"
        save_suite(suite, path)
        loaded = load_suite(path, DIM)
        rng = np.random.default_rng(2)
        x = rng.uniform(-100, 100, size=(8, DIM))
        for func_id in FUNCTION_IDS:
            np.testing.assert_allclose(
                loaded.functions[func_id](x), suite.functions[func_id](x), rtol=1e-12
            )

    def test_missing_file(self, tmp_path):
        with pytest.raises(MissingSuiteFileError):
            load_suite(tmp_path / "absent.txt")

    def test_non_orthogonal_matrix_names_function(self, suite, tmp_path):
        path = tmp_path / "suite.txt"
        save_suite(suite, path)
        lines = path.read_text().splitlines()
        # Corrupt the first rotation row of f1 (header, shift, rot:, row).
        start = lines.index("cec14 10 1")
        row = start + 3
        lines[row] = " ".join(str(2.0 * float(v)) for v in lines[row].split())
        path.write_text("\n".join(lines) + "\n")
        with pytest.raises(NonOrthogonalMatrixError, match="f1"):
            load_suite(path)

    def test_dimension_mismatch(self, suite, tmp_path):
        path = tmp_path / "suite.txt"
        save_suite(suite, path)
        with pytest.raises(SuiteDataError):
            load_suite(path, dim=30)

    def test_truncated_file(self, suite, tmp_path):
        path = tmp_path / "suite.txt"
        save_suite(suite, path)
        head = path.read_text().splitlines()[:40]
        path.write_text("\n".join(head) + "\n")
        with pytest.raises(SuiteDataError):
            load_suite(path)

    def test_fallback_to_generator(self, tmp_path):
        s = load_or_generate(tmp_path / "absent.txt", SEED, DIM)
        assert s.dim == DIM
        with pytest.raises(MissingSuiteFileError):
            load_or_generate(tmp_path / "absent.txt", None, DIM)
