import numpy as np

from fastdec_utils.codes import alamouti_code, assemble, pam_constellation, silver_code
from fastdec_utils.decoder import (
    DecodeResult,
    SimConfig,
    candidate_grid,
    fast_decode,
    frobenius_metric,
    metric_decomposition_gap,
    ml_brute,
    search_size,
    simulate,
)
from fastdec_utils.exceptions import (
    LatticeRankError,
    MatrixShapeError,
    PartitionError,
    SearchLimitError,
)
from fastdec_utils.lattice import gaussian_matrix, sample_channel
from fastdec_utils.mograph import GroupPartition
from fastdec_utils.testing import BaseTest
from fastdec_utils.utils.rng import make_rng

SILVER_PARTITION = GroupPartition(((0,), (1,), (2,), (3,)), (4, 5, 6, 7))
ALAMOUTI_PARTITION = GroupPartition(((0,), (1,), (2,), (3,)))


class MLDecoderTests(BaseTest):
    """
    Tests the exhaustive decoder and its helpers.
    """

    def setUp(self):
        self.constellation = pam_constellation(4)
        self.basis = alamouti_code()
        self.H = sample_channel(2, seed=3).H

    def test_candidate_grid_is_lexicographic(self):
        values = np.array([-1.0, 1.0])
        grid = candidate_grid(values, 2)
        np.testing.assert_array_equal(grid, [[-1, -1], [-1, 1], [1, -1], [1, 1]])
        np.testing.assert_array_equal(candidate_grid(values, 2, 1, 3), grid[1:3])
        self.assertEqual(candidate_grid(values, 0).shape, (1, 0))

    def test_search_size(self):
        self.assertEqual(search_size(self.constellation, silver_code()), 65536)
        with self.assertRaises(SearchLimitError) as ctx:
            search_size(self.constellation, silver_code(), cap=1000)
        self.assertEqual(ctx.exception.size, 65536)

    def test_noiseless_decoding(self):
        s = np.array([3.0, -1.0, 1.0, -3.0])
        Y = self.H @ assemble(self.basis, s)
        result = ml_brute(Y, self.H, self.basis, self.constellation)
        np.testing.assert_array_equal(result.symbols, s)
        self.assertEqual(result.metric_evals, 256)
        self.assertAlmostEqual(result.metric, 0.0, places=9)
        self.assertAlmostEqual(frobenius_metric(Y, self.H, self.basis, s), 0.0, places=9)

    def test_invalid_channels(self):
        Y = np.eye(2)
        with self.assertRaises(MatrixShapeError):
            ml_brute(np.eye(3), self.H, self.basis, self.constellation)
        with self.assertRaises(LatticeRankError):
            ml_brute(Y, np.zeros((2, 2)), self.basis, self.constellation)

    def test_metric_decomposition(self):
        rng = make_rng(0, 0)
        s = rng.choice(self.constellation.as_array(), size=8)
        basis = silver_code()
        Y = self.H @ assemble(basis, s) + gaussian_matrix(rng, (2, 2), 0.5)
        self.assertLess(metric_decomposition_gap(Y, self.H, basis, s), 1e-9)

    def test_negative_metric(self):
        with self.assertRaises(ValueError):
            DecodeResult(symbols=np.zeros(2), metric=-1.0, metric_evals=1)


class FastDecoderTests(BaseTest):
    """
    Tests the conditioned decoder against the exhaustive one.
    """

    def setUp(self):
        self.constellation = pam_constellation(4)

    def test_alamouti_single_symbol_groups(self):
        basis = alamouti_code()
        H = sample_channel(2, seed=8).H
        rng = make_rng(8, 1)
        s = rng.choice(self.constellation.as_array(), size=4)
        Y = H @ assemble(basis, s) + gaussian_matrix(rng, (2, 2), 0.1)
        fast = fast_decode(Y, H, basis, ALAMOUTI_PARTITION, self.constellation)
        brute = ml_brute(Y, H, basis, self.constellation)
        np.testing.assert_array_equal(fast.symbols, brute.symbols)
        self.assertEqual(fast.metric_evals, 17)

    def test_silver_agrees_with_brute_force(self):
        basis = silver_code()
        for trial in range(5):
            H = sample_channel(2, seed=21, stream=2 * trial).H
            rng = make_rng(21, 2 * trial + 1)
            s = rng.choice(self.constellation.as_array(), size=8)
            Y = H @ assemble(basis, s) + gaussian_matrix(rng, (2, 2), 0.1)
            with self.subTest(trial=trial):
                fast = fast_decode(Y, H, basis, SILVER_PARTITION, self.constellation)
                brute = ml_brute(Y, H, basis, self.constellation)
                np.testing.assert_array_equal(fast.symbols, brute.symbols)
                self.assertAlmostEqual(fast.metric, brute.metric, places=8)
                self.assertEqual((brute.metric_evals, fast.metric_evals), (65536, 4352))

    def test_rejects_conflicting_partition(self):
        basis = silver_code()
        H = sample_channel(2, seed=2).H
        partition = GroupPartition(((0, 1, 2, 3), (4, 5, 6, 7)))
        with self.assertRaises(PartitionError):
            fast_decode(np.eye(2), H, basis, partition, self.constellation)


class SimulationTests(BaseTest):
    """
    Tests the Monte-Carlo comparison of both decoders.
    """

    def test_config(self):
        config = SimConfig(trials=3, noise_variances=(0.1, 0.0, 0.1), seed=0,
                           constellation=pam_constellation(2))
        self.assertEqual(config.noise_variances, (0.1, 0.0))
        self.assertEqual(config.noise_variance, 0.1)
        for kwargs in ({"trials": 0}, {"noise_variances": (-1.0,)}, {"noise_variances": ()},
                       {"processes": 0}):
            params = dict(trials=3, noise_variances=(0.0,), seed=0,
                          constellation=pam_constellation(2))
            params.update(kwargs)
            with self.subTest(**{key: str(value) for key, value in kwargs.items()}):
                with self.assertRaises(ValueError):
                    SimConfig(**params)

    def test_silver_decoders_agree(self):
        config = SimConfig(trials=200, noise_variances=(0.0, 0.1), seed=2024,
                           constellation=pam_constellation(4))
        result = simulate(silver_code(), SILVER_PARTITION, config)
        self.assertEqual(len(result.trials), 400)
        self.assertTrue(result.trials["agree"].all())
        summary = result.summary
        self.assertEqual(list(summary["n0"]), [0.0, 0.1])
        self.assertEqual(list(summary["mean_evals_brute"]), [65536.0, 65536.0])
        self.assertEqual(list(summary["mean_evals_fast"]), [4352.0, 4352.0])
        self.assertEqual(summary["ser"].iloc[0], 0.0)
        doc = result.to_dict()
        self.assertEqual(doc["exponent"], 5)
        self.assertEqual(doc["agreement_rate"], 1.0)
        self.assertNotIn("wall_clock_seconds", doc)

    def test_workers_do_not_change_results(self):
        params = dict(trials=6, noise_variances=(0.5,), seed=1, constellation=pam_constellation(2))
        single = simulate(alamouti_code(), ALAMOUTI_PARTITION, SimConfig(**params))
        pooled = simulate(alamouti_code(), ALAMOUTI_PARTITION, SimConfig(processes=2, **params))
        self.assertTableEqual(single.trials, pooled.trials, sort_by=["n0", "trial"])

    def test_timing(self):
        config = SimConfig(trials=2, noise_variances=(0.0,), seed=0,
                           constellation=pam_constellation(2), timing=True)
        doc = simulate(alamouti_code(), ALAMOUTI_PARTITION, config).to_dict()
        self.assertIn("wall_clock_seconds", doc)

    def test_search_cap(self):
        config = SimConfig(trials=1, noise_variances=(0.0,), seed=0,
                           constellation=pam_constellation(16))
        with self.assertRaises(SearchLimitError):
            simulate(silver_code(), SILVER_PARTITION, config)


class DecoderExamplesTests(BaseTest):
    """
    Small cases with known answers.
    """

    def test_binary_alamouti_evaluations(self):
        basis = alamouti_code()
        H = sample_channel(2, seed=6).H
        result = ml_brute(np.eye(2), H, basis, pam_constellation(2))
        self.assertEqual(result.metric_evals, 16)

    def test_minimum_is_below_the_transmitted_metric(self):
        basis = silver_code()
        constellation = pam_constellation(4)
        rng = make_rng(30, 1)
        H = sample_channel(2, seed=30).H
        s = rng.choice(constellation.as_array(), size=8)
        Y = H @ assemble(basis, s) + gaussian_matrix(rng, (2, 2), 1.0)
        result = ml_brute(Y, H, basis, constellation)
        self.assertLessEqual(
            frobenius_metric(Y, H, basis, result.symbols),
            frobenius_metric(Y, H, basis, s) + 1e-9,
        )

    def test_error_rate_falls_with_noise(self):
        config = SimConfig(trials=100, noise_variances=(1.0, 0.1, 0.01), seed=5,
                           constellation=pam_constellation(4))
        summary = simulate(alamouti_code(), ALAMOUTI_PARTITION, config).summary
        ser = list(summary["ser"])
        self.assertGreaterEqual(ser[0], ser[1])
        self.assertGreaterEqual(ser[1], ser[2])
        self.assertTrue((summary["agreement_rate"] == 1.0).all())
