"""
Testes unitários para o modelo de nulling por compressão (SNM)
Author: Gabriel Demetrios Lafis
Year: 2025
"""

import unittest
import sys
import os
import math
from unittest.mock import patch

import numpy as np

# Adicionar o diretório src ao path para importar os módulos
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.errors import GeometryError, NullingError
from src.geometry import ArrayConfig, PolarPoint
from src.field_engine import PhaseMatrix, Scenario
from src.focusing import focus_matrix
from src.nulling import (
    ZONE_ORDER,
    GeneticOptimizer,
    NullSpec,
    NullingProblem,
    RandomSearchOptimizer,
    SearchBounds,
    SolutionStatus,
    ZoneFields,
    ZoneGeometry,
    ZoneName,
    aligned_zone_model,
    baseline_spec,
    build_zone_model,
    constraints_from_fields,
    depth_from_fields,
    focal_points,
    null_depth,
    null_matrix,
    snm_constraints,
    solve_snm
)


class TestNullSpec(unittest.TestCase):
    """Testes para NullSpec e pontos focais"""

    def setUp(self):
        self.center = PolarPoint.from_degrees(1.6, 0.0)
        self.spec = NullSpec(self.center, (0.2, 0.3, math.radians(10), math.radians(12)))

    def test_default_weights(self):
        """Testa pesos iguais por padrão"""
        self.assertEqual(self.spec.weights, (0.25, 0.25, 0.25, 0.25))

    def test_invalid_weights(self):
        """Testa pesos que não somam 1 ou negativos"""
        with self.assertRaises(NullingError):
            NullSpec(self.center, (0.2, 0.2, 0.1, 0.1), (0.5, 0.5, 0.5, 0.0))
        with self.assertRaises(NullingError):
            NullSpec(self.center, (0.2, 0.2, 0.1, 0.1), (1.5, -0.5, 0.0, 0.0))

    def test_invalid_offsets(self):
        """Testa deslocamentos não positivos"""
        with self.assertRaises(NullingError):
            NullSpec(self.center, (0.0, 0.2, 0.1, 0.1))

    def test_center_out_of_plane(self):
        """Testa centro fora do plano xoz"""
        with self.assertRaises(NullingError):
            NullSpec(PolarPoint(1.6, 0.0, 0.1), (0.2, 0.2, 0.1, 0.1))

    def test_from_genes_normalizes(self):
        """Testa a normalização dos genes de peso (C1)"""
        spec = NullSpec.from_genes(self.center, [0.2, 0.2, 0.1, 0.1, 2.0, 2.0, 0.0, 0.0])
        self.assertEqual(spec.weights, (0.5, 0.5, 0.0, 0.0))
        spec = NullSpec.from_genes(self.center, [0.2, 0.2, 0.1, 0.1, 0.0, 0.0, 0.0, 0.0])
        self.assertEqual(spec.weights, (0.25, 0.25, 0.25, 0.25))
        np.testing.assert_allclose(spec.genes()[:4], [0.2, 0.2, 0.1, 0.1])

    def test_focal_points(self):
        """Testa as quatro posições focais"""
        front, back, left, right = focal_points(self.spec)
        self.assertAlmostEqual(front.r, 1.4)
        self.assertAlmostEqual(back.r, 1.9)
        self.assertAlmostEqual(left.theta, -math.radians(10))
        self.assertAlmostEqual(right.theta, math.radians(12))
        self.assertEqual(left.r, 1.6)

    def test_front_point_behind_array(self):
        """Testa ponto focal frontal com r ≤ 0"""
        spec = NullSpec(PolarPoint(0.3, 0.0), (0.5, 0.1, 0.1, 0.1))
        with self.assertRaises(GeometryError):
            focal_points(spec)

    def test_to_dict(self):
        """Testa o resumo serializável"""
        d = self.spec.to_dict()
        self.assertAlmostEqual(d["offsets"]["left_deg"], 10.0)
        self.assertEqual(set(d["weights"]), {z.value for z in ZONE_ORDER})


class TestZoneModel(unittest.TestCase):
    """Testes para o modelo de zonas"""

    def setUp(self):
        self.center = PolarPoint.from_degrees(1.6, 0.0)
        self.zones = build_zone_model(self.center)

    def test_sample_counts(self):
        """Testa a contagem de pontos de Bob e de Eve"""
        self.assertEqual(len(self.zones.bob_points()), 4 * 9)
        self.assertEqual(len(self.zones.eve_points()), 4 * 2 * 9)
        self.assertEqual(self.zones.sample_count(), 4 * 3 * 9)

    def test_zone_directions(self):
        """Testa que a zona frontal fica entre o arranjo e o centro"""
        front = self.zones.zones[ZoneName.FRONT]
        back = self.zones.zones[ZoneName.BACK]
        left = self.zones.zones[ZoneName.LEFT]
        self.assertTrue(all(p.r <= 1.6 for p in front.high_gain))
        self.assertTrue(all(p.r >= 1.6 for p in back.outer))
        self.assertTrue(all(p.theta <= 0 for p in left.high_gain))
        self.assertAlmostEqual(front.nulling[0].r, 1.6)

    def test_subzone_ordering(self):
        """Testa nulling [0, ρ] < alto ganho [d−h, d+h] < externa [d+h, 2d]"""
        back = self.zones.zones[ZoneName.BACK]
        self.assertAlmostEqual(max(p.r for p in back.nulling), 1.65)
        self.assertAlmostEqual(min(p.r for p in back.high_gain), 1.75)
        self.assertAlmostEqual(max(p.r for p in back.high_gain), 1.85)
        self.assertAlmostEqual(max(p.r for p in back.outer), 2.0)

    def test_invalid_geometry(self):
        """Testa geometria de zonas inválida"""
        with self.assertRaises(NullingError):
            build_zone_model(PolarPoint(0.3, 0.0))
        with self.assertRaises(NullingError):
            build_zone_model(self.center, ZoneGeometry(nominal_dr=0.0))
        with self.assertRaises(NullingError):
            build_zone_model(self.center, ZoneGeometry(samples=0))
        with self.assertRaises(NullingError):
            build_zone_model(self.center, offsets=(0.2, 0.2, 0.1))

    def test_baseline_spec(self):
        """Testa a especificação de linha de base"""
        spec = baseline_spec(self.center)
        self.assertEqual(spec.offsets[:2], (0.2, 0.2))
        self.assertAlmostEqual(spec.offsets[2], math.radians(10))


class TestAlignedZones(unittest.TestCase):
    """Testes para zonas centradas nos pontos focais de cada candidato"""

    def setUp(self):
        self.center = PolarPoint.from_degrees(1.6, 0.0)
        self.spec = NullSpec(self.center, (0.6, 0.3, math.radians(20), math.radians(6)))
        self.zones = aligned_zone_model(self.spec)

    def test_high_gain_centered_on_focal_points(self):
        """Testa a banda de alto ganho centrada em cada ponto focal"""
        front, back, left, right = focal_points(self.spec)
        z = self.zones.zones
        self.assertAlmostEqual(z[ZoneName.FRONT].high_gain[4].r, front.r)
        self.assertAlmostEqual(z[ZoneName.BACK].high_gain[4].r, back.r)
        self.assertAlmostEqual(z[ZoneName.LEFT].high_gain[4].theta, left.theta)
        self.assertAlmostEqual(z[ZoneName.RIGHT].high_gain[4].theta, right.theta)
        self.assertAlmostEqual(min(p.r for p in z[ZoneName.FRONT].high_gain), 1.6 - 0.65)
        self.assertAlmostEqual(max(p.r for p in z[ZoneName.FRONT].high_gain), 1.6 - 0.55)

    def test_outer_extends_to_twice_offset(self):
        """Testa a subzona externa até 2d, ou d + 2h para deslocamentos curtos"""
        z = self.zones.zones
        self.assertAlmostEqual(min(p.r for p in z[ZoneName.FRONT].outer), 1.6 - 1.2)
        self.assertAlmostEqual(max(p.r for p in z[ZoneName.BACK].outer), 1.6 + 0.6)
        self.assertAlmostEqual(max(p.theta for p in z[ZoneName.RIGHT].outer), math.radians(12))

    def test_high_gain_clamped_at_null_radius(self):
        """Testa a banda de alto ganho sem invadir a subzona de nulling"""
        spec = NullSpec(self.center, (0.07, 0.07, math.radians(3), math.radians(3)))
        z = aligned_zone_model(spec).zones
        back = z[ZoneName.BACK]
        self.assertAlmostEqual(min(p.r for p in back.high_gain), 1.65)
        self.assertEqual(back.transition, [])
        self.assertAlmostEqual(max(p.r for p in back.outer), 1.6 + 0.07 + 0.1)

    def test_nulling_subzone_independent_of_offsets(self):
        """Testa que os pontos de Bob não dependem dos deslocamentos"""
        nominal = build_zone_model(self.center)
        self.assertEqual([(p.r, p.theta) for p in self.zones.bob_points()],
                         [(p.r, p.theta) for p in nominal.bob_points()])

    def test_far_front_offset_rejected(self):
        """Testa subzona externa frontal que atravessaria o arranjo"""
        spec = NullSpec(PolarPoint(1.0, 0.0), (0.55, 0.2, 0.1, 0.1))
        with self.assertRaises(NullingError):
            aligned_zone_model(spec)


class TestNullingFields(unittest.TestCase):
    """Testes para matriz de nulling, profundidade e restrições"""

    def setUp(self):
        self.cfg = ArrayConfig(rows=8, cols=16, dx=0.0278, dy=0.0278, frequency=5.8e9)
        self.scn = Scenario(self.cfg, PolarPoint.from_degrees(0.5, 0.0))
        self.center = PolarPoint.from_degrees(1.0, 0.0)
        self.zones = build_zone_model(self.center)

    def test_single_weight_equals_focus(self):
        """Testa que peso unitário em um ponto focal reproduz a focalização nele"""
        spec = NullSpec(self.center, (0.2, 0.2, 0.1, 0.1), (1.0, 0.0, 0.0, 0.0))
        front = focal_points(spec)[0]
        self.assertEqual(null_matrix(self.scn, spec), focus_matrix(self.scn, front))

    def test_degenerate_weights(self):
        """Testa soma ponderada nula em um elemento"""
        spec = NullSpec(self.center, (0.2, 0.2, 0.1, 0.1), (0.5, 0.5, 0.0, 0.0))
        shape = (self.cfg.rows, self.cfg.cols)
        with patch("src.nulling.ideal_focus_phases", side_effect=[np.zeros(shape), np.full(shape, math.pi)]):
            with self.assertRaises(NullingError) as ctx:
                null_matrix(self.scn, spec)
        self.assertIn("(1, 1)", str(ctx.exception))

    def test_depth_and_constraints(self):
        """Testa profundidade por zona e registro de viabilidade"""
        matrix = null_matrix(self.scn, baseline_spec(self.center))
        report = null_depth(self.scn, matrix, self.zones)
        self.assertEqual(set(report.per_zone), set(ZONE_ORDER))
        self.assertAlmostEqual(report.objective, sum(report.per_zone.values()))
        self.assertTrue(all(v >= 0 for v in report.per_zone.values()))
        feas = snm_constraints(self.scn, matrix, self.zones)
        self.assertEqual(set(feas.c2), set(ZONE_ORDER))
        self.assertIsInstance(feas.feasible, bool)

    def test_problem_fitness_of_degenerate_genes(self):
        """Testa fitness alta para candidato que atravessa o arranjo"""
        problem = NullingProblem(self.scn, self.zones, self.center)
        fitness, feasible = problem.fitness(np.array([5.0, 0.2, 0.1, 0.1, 1, 1, 1, 1]))
        self.assertEqual(fitness, 1e6)
        self.assertFalse(feasible)

    def test_problem_zones_follow_candidate(self):
        """Testa zonas por candidato e zonas fixas quando fornecidas"""
        spec = NullSpec(self.center, (0.15, 0.25, math.radians(8), math.radians(12)), (0.3, 0.2, 0.25, 0.25))
        aligned = NullingProblem(self.scn, center=self.center)
        front = aligned.zones_for(spec).zones[ZoneName.FRONT]
        self.assertAlmostEqual(front.high_gain[4].r, focal_points(spec)[0].r)
        fixed = NullingProblem(self.scn, self.zones, self.center)
        self.assertIs(fixed.zones_for(spec), self.zones)

    def test_evaluate_in_candidate_zones(self):
        """Testa que a avaliação usa as zonas dos pontos focais do candidato"""
        spec = NullSpec(self.center, (0.15, 0.25, math.radians(8), math.radians(12)), (0.3, 0.2, 0.25, 0.25))
        matrix, depth, feas = NullingProblem(self.scn, center=self.center).evaluate(spec)
        zones = aligned_zone_model(spec)
        self.assertAlmostEqual(depth.objective, null_depth(self.scn, matrix, zones).objective, places=12)
        self.assertEqual(feas.feasible, snm_constraints(self.scn, matrix, zones).feasible)


class TestConstraintLogic(unittest.TestCase):
    """Testes das restrições C2/C3 com amplitudes sintéticas"""

    def _fields(self, high_peaks, outer_peak=0.5):
        nulling = {z: np.array([0.1, 0.1]) for z in ZONE_ORDER}
        high = {z: np.array([0.5, p]) for z, p in zip(ZONE_ORDER, high_peaks)}
        outer = {z: np.array([outer_peak]) for z in ZONE_ORDER}
        return ZoneFields(nulling, high, outer)

    def test_feasible(self):
        """Testa picos equilibrados e acima da subzona externa"""
        feas = constraints_from_fields(self._fields([1.0, 1.04, 0.96, 1.0]))
        self.assertTrue(feas.feasible)
        self.assertEqual(feas.penalty_units, 0.0)

    def test_c2_violation(self):
        """Testa pico externo acima do pico de alto ganho"""
        feas = constraints_from_fields(self._fields([1.0, 1.0, 1.0, 1.0], outer_peak=1.2))
        self.assertFalse(all(feas.c2.values()))
        self.assertGreater(feas.c2_violation, 0.0)

    def test_c3_violation(self):
        """Testa picos desequilibrados"""
        feas = constraints_from_fields(self._fields([1.0, 1.5, 1.0, 1.0]))
        self.assertFalse(feas.c3)
        self.assertFalse(feas.feasible)

    def test_depth_ratio(self):
        """Testa a razão média nulling / alto ganho"""
        report = depth_from_fields(self._fields([1.5, 1.5, 1.5, 1.5]))
        self.assertAlmostEqual(report.per_zone[ZoneName.FRONT], 0.1)
        self.assertAlmostEqual(report.objective, 0.4)

    def test_zero_high_gain(self):
        """Testa campo nulo na subzona de alto ganho"""
        zf = self._fields([0.0, 1.0, 1.0, 1.0])
        zf.high_gain[ZoneName.FRONT] = np.zeros(2)
        with self.assertRaises(NullingError):
            depth_from_fields(zf)


class TestOptimizers(unittest.TestCase):
    """Testes para os otimizadores"""

    def setUp(self):
        self.bounds = SearchBounds()

    def test_seed_genes_first(self):
        """Testa que a semente ocupa o início da população inicial"""
        seed = np.array([0.2, 0.2, 0.17, 0.17, 0.25, 0.25, 0.25, 0.25])
        opt = GeneticOptimizer(self.bounds.lower(), self.bounds.upper(), population=10, seed_genes=seed)
        genes = opt.propose(np.random.default_rng(0))
        self.assertEqual(genes.shape, (10, 8))
        np.testing.assert_allclose(genes[0], seed)

    def test_offspring_within_bounds(self):
        """Testa que a prole respeita os limites e preserva a elite"""
        opt = GeneticOptimizer(self.bounds.lower(), self.bounds.upper(), population=12)
        rng = np.random.default_rng(1)
        genes = opt.propose(rng)
        fitness = np.arange(12, dtype=float)
        opt.tell(genes, fitness)
        nxt = opt.propose(rng)
        self.assertTrue(np.all(nxt >= self.bounds.lower()) and np.all(nxt <= self.bounds.upper()))
        np.testing.assert_array_equal(nxt[0], genes[0])

    def test_random_search(self):
        """Testa a busca aleatória"""
        opt = RandomSearchOptimizer(self.bounds.lower(), self.bounds.upper(), population=5)
        genes = opt.propose(np.random.default_rng(2))
        opt.tell(genes, np.zeros(5))
        self.assertEqual(opt.propose(np.random.default_rng(3)).shape, (5, 8))


class TestSolveSnm(unittest.TestCase):
    """Testes para a busca SNM"""

    def setUp(self):
        self.cfg = ArrayConfig(rows=8, cols=16, dx=0.0278, dy=0.0278, frequency=5.8e9)
        self.scn = Scenario(self.cfg, PolarPoint.from_degrees(0.5, 0.0))
        self.center = PolarPoint.from_degrees(1.0, 0.0)

    def test_deterministic(self):
        """Testa reprodutibilidade bit a bit com a mesma semente"""
        a = solve_snm(self.scn, self.center, budget=3, seed=7, population=8, verbose=False)
        b = solve_snm(self.scn, self.center, budget=3, seed=7, population=8, verbose=False)
        self.assertEqual(a.matrix, b.matrix)
        np.testing.assert_array_equal(a.spec.genes(), b.spec.genes())
        self.assertEqual(a.history, b.history)

    def test_parallel_matches_serial(self):
        """Testa que workers não alteram o resultado"""
        a = solve_snm(self.scn, self.center, budget=2, seed=3, population=8, verbose=False)
        b = solve_snm(self.scn, self.center, budget=2, seed=3, population=8, workers=4, verbose=False)
        self.assertEqual(a.matrix, b.matrix)

    def test_budget_accounting(self):
        """Testa histórico, gerações e avaliações"""
        sol = solve_snm(self.scn, self.center, budget=4, seed=1, population=6, verbose=False)
        self.assertEqual(len(sol.history), sol.generations)
        self.assertLessEqual(sol.generations, 4)
        self.assertEqual(sol.evaluations, 6 * sol.generations)
        self.assertIsInstance(sol.matrix, PhaseMatrix)
        self.assertIn(sol.status, (SolutionStatus.FEASIBLE, SolutionStatus.INFEASIBLE))
        self.assertEqual(sol.summary()["seed"], 1)

    def test_solution_zones_follow_chosen_spec(self):
        """Testa que a solução carrega as zonas dos seus próprios pontos focais"""
        sol = solve_snm(self.scn, self.center, budget=3, seed=5, population=8, verbose=False)
        expected = aligned_zone_model(sol.spec)
        self.assertEqual([(p.r, p.theta) for p in sol.zones.eve_points()],
                         [(p.r, p.theta) for p in expected.eve_points()])
        self.assertAlmostEqual(sol.depth, null_depth(self.scn, sol.matrix, sol.zones).objective, places=12)

    def test_fixed_zones_kept(self):
        """Testa que zonas fornecidas explicitamente não são substituídas"""
        zones = build_zone_model(self.center)
        sol = solve_snm(self.scn, self.center, zones, budget=2, seed=5, population=6, verbose=False)
        self.assertIs(sol.zones, zones)

    def test_history_non_increasing_best(self):
        """Testa que a elite mantém a melhor fitness por geração"""
        sol = solve_snm(self.scn, self.center, budget=5, seed=2, population=8, verbose=False)
        self.assertTrue(all(b <= a + 1e-12 for a, b in zip(sol.history, sol.history[1:])))

    def test_invalid_arguments(self):
        """Testa orçamento inválido e centro em campo distante"""
        with self.assertRaises(NullingError):
            solve_snm(self.scn, self.center, budget=0, verbose=False)
        with self.assertRaises(NullingError):
            solve_snm(self.scn, PolarPoint(50.0, 0.0), budget=1, verbose=False)

    def test_unknown_optimizer(self):
        """Testa nome de otimizador desconhecido"""
        with self.assertRaises(NullingError):
            solve_snm(self.scn, self.center, budget=1, optimizer="anneal", verbose=False)


if __name__ == '__main__':
    unittest.main(verbosity=2)
