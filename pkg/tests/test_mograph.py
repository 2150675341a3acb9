import os
import tempfile

import numpy as np

from fastdec_utils.codes import alamouti_code, family_code, silver_code
from fastdec_utils.exceptions import CodeFormatError, PartitionError, VerificationError
from fastdec_utils.mograph import (
    ComplexityReport,
    ConflictGraph,
    GroupPartition,
    PartitionSearch,
    analyze_code,
    brute_force_partition,
    conflict_graph,
    g_group,
    load_partition,
    mutually_orthogonal,
    normalize_to_anticommuting,
    optimal_partition,
    random_graph,
    save_partition,
    verify_theorem_bounds,
)
from fastdec_utils.construct import mutually_orthogonal_family_exact, skew_hermitian_family
from fastdec_utils.matcore import anticommute, is_skew_hermitian
from fastdec_utils.testing import BaseTest
from fastdec_utils.utils.rng import make_rng

SILVER_PARTITION = GroupPartition(((0,), (1,), (2,), (3,)), (4, 5, 6, 7))


def path_graph(v):
    return ConflictGraph.from_edges(v, [(u, u + 1) for u in range(v - 1)])


class ConflictGraphTests(BaseTest):
    """
    Tests mutual orthogonality and the conflict graph.
    """

    def test_mutually_orthogonal(self):
        identity = np.eye(2)
        self.assertTrue(mutually_orthogonal(identity, 1j * np.diag([1, -1])))
        self.assertFalse(mutually_orthogonal(identity, np.diag([1, -1])))

    def test_alamouti_graph_is_empty(self):
        graph = conflict_graph(alamouti_code())
        self.assertEqual(graph.v, 4)
        self.assertEqual(graph.edges, [])

    def test_silver_graph(self):
        """
        The Alamouti half and the second half are each pairwise
        mutually orthogonal; every conflict joins the two halves.
        """
        graph = conflict_graph(silver_code())
        self.assertGreater(len(graph.edges), 0)
        for a, b in graph.edges:
            self.assertLess(a, 4)
            self.assertGreaterEqual(b, 4)
        self.assertIsNone(g_group(graph))

    def test_vertex_connectivity(self):
        cycle = ConflictGraph.from_edges(6, [(u, (u + 1) % 6) for u in range(6)])
        self.assertEqual(cycle.vertex_connectivity(range(6)), 2)
        self.assertEqual(cycle.vertex_connectivity([0, 1, 2]), 1)
        self.assertEqual(ConflictGraph.complete(4).vertex_connectivity(range(4)), 3)

    def test_components(self):
        graph = path_graph(3)
        self.assertEqual(graph.components(), [[0, 1, 2]])
        self.assertEqual(graph.components([1]), [[0], [2]])
        self.assertEqual(graph.degree(1), 2)

    def test_invalid_adjacency(self):
        with self.assertRaises(ValueError):
            ConflictGraph(2, np.array([[False, True], [False, False]]))
        with self.assertRaises(ValueError):
            ConflictGraph.from_edges(3, [(1, 1)])

    def test_random_graph(self):
        first = random_graph(8, 0.5, seed=3)
        second = random_graph(8, 0.5, seed=3)
        np.testing.assert_array_equal(first.adjacency, second.adjacency)
        self.assertEqual(random_graph(6, 0.0, seed=1).edges, [])
        self.assertEqual(len(random_graph(6, 1.0, seed=1).edges), 15)
        with self.assertRaises(ValueError):
            random_graph(4, 1.5, seed=1)


class GroupPartitionTests(BaseTest):
    """
    Tests the partition model and its JSON form.
    """

    def test_properties(self):
        partition = GroupPartition(((3, 1), (0,)), (2,))
        self.assertEqual(partition.groups, ((1, 3), (0,)))
        self.assertEqual(partition.sizes, (2, 1))
        self.assertEqual(partition.exponent, 3)
        self.assertEqual(partition.k, 1)
        self.assertEqual(partition.permutation, (1, 3, 0, 2))
        self.assertTrue(partition.covers(4))
        self.assertFalse(partition.covers(5))

    def test_invalid_partitions(self):
        with self.assertRaises(PartitionError):
            GroupPartition(((0, 1), (1, 2)))
        with self.assertRaises(PartitionError):
            GroupPartition(((0,), ()))
        with self.assertRaises(PartitionError):
            GroupPartition(())

    def test_fast_evaluations(self):
        self.assertEqual(SILVER_PARTITION.fast_evaluations(4), 4352)

    def test_empty_remainder_keeps_its_evaluation(self):
        singletons = GroupPartition(((0,), (1,), (2,), (3,)))
        self.assertEqual(singletons.remainder_size, 0)
        self.assertEqual(singletons.fast_evaluations(4), 17)
        self.assertEqual(singletons.fast_evaluations(2), 9)

    def test_validate_against_conflicts(self):
        graph = conflict_graph(silver_code())
        SILVER_PARTITION.validate_against(graph)
        a, b = graph.edges[0]
        rest = tuple(u for u in range(8) if u not in (a, b))
        with self.assertRaises(PartitionError):
            GroupPartition(((a,), (b,)), rest).validate_against(graph)
        with self.assertRaises(PartitionError):
            GroupPartition(((0,), (1,))).validate_against(graph)

    def test_dict_is_one_based(self):
        doc = SILVER_PARTITION.to_dict()
        self.assertEqual(doc, {"groups": [[1], [2], [3], [4]], "remainder": [5, 6, 7, 8]})
        self.assertEqual(GroupPartition.from_dict(doc), SILVER_PARTITION)

    def test_from_dict_errors(self):
        for doc in ([], {"remainder": [1]}, {"groups": [[1], [1]]}, {"groups": [["x"]]}):
            with self.subTest(doc=doc):
                with self.assertRaises(CodeFormatError):
                    GroupPartition.from_dict(doc)

    def test_save_and_load(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "partition.json")
            save_partition(SILVER_PARTITION, path)
            self.assertEqual(load_partition(path), SILVER_PARTITION)


class PartitionSearchTests(BaseTest):
    """
    Tests the optimal partition search against known graphs
    and against exhaustive enumeration.
    """

    def test_empty_graph(self):
        report = optimal_partition(ConflictGraph.empty(4))
        self.assertEqual(report.exponent, 1)
        self.assertEqual(report.partition, GroupPartition(((0,), (1,), (2,), (3,))))
        self.assertEqual(report.g_group, 4)

    def test_complete_graph(self):
        report = optimal_partition(ConflictGraph.complete(4))
        self.assertFalse(report.fast_decodable)
        self.assertEqual(report.exponent, 4)
        self.assertIsNone(report.g_group)
        self.assertIsNone(report.to_dict()["partition"])

    def test_path(self):
        report = optimal_partition(path_graph(3))
        self.assertEqual(report.exponent, 2)
        self.assertEqual(report.partition, GroupPartition(((0,), (2,)), (1,)))

    def test_star(self):
        star = ConflictGraph.from_edges(5, [(0, leaf) for leaf in range(1, 5)])
        report = optimal_partition(star)
        self.assertEqual(report.exponent, 2)
        self.assertEqual(report.partition.remainder, (0,))
        self.assertEqual(report.g, 4)

    def test_two_components(self):
        graph = ConflictGraph.from_edges(4, [(0, 1), (2, 3)])
        report = optimal_partition(graph)
        self.assertEqual(report.exponent, 2)
        self.assertEqual(report.partition, GroupPartition(((0, 1), (2, 3))))
        self.assertEqual(report.g_group, 2)

    def test_ties_go_to_the_smallest_sorted_remainder(self):
        """
        W = (4,) and W = (0, 1, 3) both reach exponent 4; the sorted
        sequence (0, 1, 3) comes first even though it is larger.
        """
        graph = ConflictGraph.from_edges(6, [(0, 2), (0, 4), (1, 4), (1, 5), (2, 3), (3, 4)])
        report = optimal_partition(graph)
        self.assertEqual(report.exponent, 4)
        self.assertEqual(report.partition, GroupPartition(((2,), (4,), (5,)), (0, 1, 3)))
        self.assertEqual(brute_force_partition(graph).partition, report.partition)

    def test_matches_enumeration(self):
        for index in range(200):
            rng = np.random.default_rng(index)
            v = int(rng.integers(2, 11))
            graph = random_graph(v, float(rng.uniform(0.1, 0.9)), seed=index)
            with self.subTest(graph=index, v=v):
                searched = optimal_partition(graph)
                exhaustive = brute_force_partition(graph)
                self.assertEqual(searched.exponent, exhaustive.exponent)
                self.assertEqual(searched.partition, exhaustive.partition)

    def test_dense_graphs_match_enumeration(self):
        for seed, (v, edge_prob) in enumerate([(12, 0.5), (12, 0.7), (13, 0.6), (13, 0.8)]):
            graph = random_graph(v, edge_prob, seed=100 + seed)
            with self.subTest(v=v, edge_prob=edge_prob):
                searched = optimal_partition(graph)
                exhaustive = brute_force_partition(graph)
                self.assertEqual(searched.exponent, exhaustive.exponent)
                self.assertEqual(searched.partition, exhaustive.partition)

    def test_removal_lower_bounds(self):
        cycle = ConflictGraph.from_edges(6, [(u, (u + 1) % 6) for u in range(6)])
        self.assertEqual(PartitionSearch(cycle).needed([0b111111], 5), 2)
        self.assertEqual(PartitionSearch(path_graph(6)).needed([0b111111], 1), 3)
        triangles = ConflictGraph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        search = PartitionSearch(triangles)
        self.assertEqual(search.needed([0b000111, 0b111000], 1), 4)
        self.assertEqual(search.needed([0b000111, 0b111000], 3), 0)
        self.assertIsNone(search.needed([0b000111], 1))
        self.assertIsNone(search.needed([], 1))

    def test_adding_an_edge_never_lowers_the_exponent(self):
        graph = random_graph(7, 0.3, seed=11)
        base = optimal_partition(graph).exponent
        for a in range(7):
            for b in range(a + 1, 7):
                if not graph.has_edge(a, b):
                    self.assertGreaterEqual(optimal_partition(graph.with_edge(a, b)).exponent, base)

    def test_large_graphs_are_heuristic(self):
        report = optimal_partition(ConflictGraph.empty(30))
        self.assertTrue(report.heuristic)
        self.assertEqual(report.exponent, 1)
        report = optimal_partition(path_graph(5), exact_limit=3)
        self.assertTrue(report.heuristic)
        self.assertTrue(report.fast_decodable)
        self.assertGreaterEqual(report.exponent, brute_force_partition(path_graph(5)).exponent)


class NormalizationTests(BaseTest):
    """
    Tests the map of a mutually orthogonal family to an anticommuting one.
    """

    def test_numeric_family(self):
        normalized = normalize_to_anticommuting(alamouti_code().matrices)
        self.assertEqual(len(normalized), 3)
        for A in normalized:
            self.assertTrue(is_skew_hermitian(A))
        self.assertTrue(anticommute(normalized[0], normalized[1]))

    def test_randomized_families(self):
        """
        M A_i U stays mutually orthogonal for invertible M and unitary U,
        so every such family must normalize cleanly.
        """
        rng = make_rng(31, 0)
        for base in (alamouti_code().matrices, family_code(1).matrices):
            n = base[0].shape[0]
            for trial in range(20):
                M = 3 * np.eye(n) + 0.5 * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
                U, _ = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
                family = [M @ A @ U for A in base]
                with self.subTest(n=n, trial=trial):
                    normalized = normalize_to_anticommuting(family, tol=1e-8)
                    self.assertEqual(len(normalized), len(base) - 1)
                    for A in normalized:
                        self.assertTrue(is_skew_hermitian(A, 1e-8))
                    for i in range(len(normalized)):
                        for j in range(i + 1, len(normalized)):
                            self.assertTrue(anticommute(normalized[i], normalized[j], 1e-8))

    def test_exact_family(self):
        family = mutually_orthogonal_family_exact(1)
        normalized = normalize_to_anticommuting(family)
        skew = skew_hermitian_family(1)
        self.assertEqual(len(normalized), len(skew))
        for N, S in zip(normalized, skew):
            self.assertTrue(N.equals(S))

    def test_rejects_non_orthogonal_family(self):
        with self.assertRaises(VerificationError):
            normalize_to_anticommuting([np.eye(2), np.diag([1.0, -1.0])])
        self.assertEqual(normalize_to_anticommuting([np.eye(2)]), [])


class AnalyzeCodeTests(BaseTest):
    """
    Tests the full analysis of the built-in codes.
    """

    def test_alamouti(self):
        report = analyze_code(alamouti_code(), division=True)
        self.assertEqual(report.exponent, 1)
        self.assertEqual(report.g_group, 4)
        self.assertEqual(report.g, 4)
        self.assertTrue(report.all_checks_pass)
        names = set(report.checks_frame["name"])
        self.assertIn("division_groups_le_4", names)
        self.assertIn("normalized_representatives_skew_hermitian", names)

    def test_silver(self):
        report = analyze_code(silver_code())
        self.assertEqual(report.exponent, 5)
        self.assertIsNone(report.g_group)
        self.assertTrue(report.fast_decodable)
        self.assertTrue(report.all_checks_pass)
        names = [check.name for check in report.bound_checks]
        self.assertIn("full_rate_exponent_ge_n2_plus_1", names)
        self.assertIn("full_rate_no_g_group", names)

    def test_family_code(self):
        report = analyze_code(family_code(1))
        self.assertEqual(report.exponent, 1)
        self.assertEqual(report.g_group, 6)
        self.assertTrue(report.all_checks_pass)

    def test_violated_bound_is_reported(self):
        partition = GroupPartition(tuple((u,) for u in range(5)))
        report = ComplexityReport(v=5, exponent=1, partition=partition, g_group=5)
        checks = {check.name: check for check in verify_theorem_bounds(report, n=2, l=2)}
        self.assertFalse(checks["groups_le_n2"].passed)
        self.assertTrue(checks["groups_total_le_n2_plus_k"].passed)

    def test_report_exponent_range(self):
        with self.assertRaises(ValueError):
            ComplexityReport(v=3, exponent=4)
