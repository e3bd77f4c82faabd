"""
Testes unitários para quantização e motor de campo
Author: Gabriel Demetrios Lafis
Year: 2025
"""

import unittest
import sys
import os
import cmath
import math

import numpy as np

# Adicionar o diretório src ao path para importar os módulos
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.errors import GeometryError, QuantizationError
from src.geometry import ArrayConfig, CartesianPoint, PolarPoint, polar_to_cartesian
from src.field_engine import (
    FieldKernel,
    PhaseMatrix,
    Scenario,
    compute_field,
    compute_field_grid,
    quantize_2bit,
    quantize_code,
    quantize_complex,
    scenario_hash
)


def brute_force_field(cfg, feed, codes, target):
    """Avaliador independente: laço explícito sobre os elementos"""
    k = 2 * math.pi * cfg.frequency / 299_792_458.0
    values = {0: 1, 1: 1j, 2: -1, 3: -1j}
    total = 0j
    bound = 0.0
    for m in range(cfg.rows):
        for n in range(cfg.cols):
            ex = (n + 1 - (cfg.cols + 1) / 2) * cfg.dx
            ey = (m + 1 - (cfg.rows + 1) / 2) * cfg.dy
            rf = math.dist((ex, ey, 0.0), (feed.x, feed.y, feed.z))
            rr = math.dist((ex, ey, 0.0), (target.x, target.y, target.z))
            total += values[int(codes[m][n])] / (rf * rr) * cmath.exp(-1j * k * (rf + rr))
            bound += 1 / (rf * rr)
    return total, bound


class TestQuantization(unittest.TestCase):
    """Testes para a regra de quantização de 2 bits"""

    def test_boundary_table(self):
        """Testa as fronteiras com limite inferior inclusivo"""
        pi = math.pi
        cases = [
            (0.0, 1), (-pi / 4, 1), (pi / 4, 1j), (pi / 2, 1j), (3 * pi / 4, -1),
            (pi, -1), (5 * pi / 4, -1j), (3 * pi / 2, -1j), (7 * pi / 4 - 1e-6, -1j),
            (7 * pi / 4, 1), (2 * pi + pi / 4, 1j), (-3 * pi / 4, -1j), (-2 * pi, 1),
            (2 * pi + 3 * pi / 4, -1), (2 * pi - pi / 4, 1),
        ]
        for phase, expected in cases:
            with self.subTest(phase=phase):
                self.assertEqual(quantize_2bit(phase), expected)

    def test_just_below_boundary(self):
        """Testa fases logo abaixo de uma fronteira, que ficam no intervalo inferior"""
        pi = math.pi
        cases = [
            (7 * pi / 4 - 1e-12, -1j), (pi / 4 - 1e-12, 1), (3 * pi / 4 - 1e-12, 1j),
            (5 * pi / 4 - 1e-12, -1), (-pi / 4 - 1e-12, -1j),
        ]
        for phase, expected in cases:
            with self.subTest(phase=phase):
                self.assertEqual(quantize_2bit(phase), expected)

    def test_vectorized_codes(self):
        """Testa a versão vetorizada"""
        codes = quantize_code(np.array([0.0, math.pi / 2, math.pi, -math.pi / 2]))
        np.testing.assert_array_equal(codes, [0, 1, 2, 3])

    def test_non_finite_phase(self):
        """Testa fase não finita"""
        with self.assertRaises(QuantizationError):
            quantize_2bit(float("nan"))
        with self.assertRaises(QuantizationError):
            quantize_2bit(float("inf"))

    def test_quantize_complex(self):
        """Testa quantização pelo argumento"""
        self.assertEqual(quantize_complex(1 + 0.1j), 1)
        self.assertEqual(quantize_complex(-0.2 + 1j), 1j)
        self.assertEqual(quantize_complex(-1 - 0.5j), -1)
        with self.assertRaises(QuantizationError):
            quantize_complex(0j)


class TestPhaseMatrix(unittest.TestCase):
    """Testes para PhaseMatrix"""

    def setUp(self):
        self.matrix = PhaseMatrix(np.array([[0, 1], [2, 3]]))

    def test_values(self):
        """Testa o mapeamento código → valor"""
        np.testing.assert_array_equal(self.matrix.values, [[1, 1j], [-1, -1j]])

    def test_read_only(self):
        """Testa imutabilidade dos códigos"""
        with self.assertRaises(ValueError):
            self.matrix.codes[0, 0] = 1

    def test_rotated(self):
        """Testa o fator global j^code"""
        np.testing.assert_array_equal(self.matrix.rotated(1).codes, [[1, 2], [3, 0]])

    def test_text_round_trip(self):
        """Testa a serialização textual"""
        self.assertEqual(PhaseMatrix.from_text(self.matrix.to_text()), self.matrix)

    def test_invalid_codes(self):
        """Testa códigos fora de 0..3"""
        with self.assertRaises(QuantizationError):
            PhaseMatrix(np.array([[0, 4]]))
        with self.assertRaises(QuantizationError):
            PhaseMatrix(np.array([0, 1]))

    def test_from_values(self):
        """Testa construção a partir de valores complexos"""
        m = PhaseMatrix.from_values(np.array([[1, 1j], [-1, -1j]]))
        self.assertEqual(m, self.matrix)


class TestFieldEngine(unittest.TestCase):
    """Testes para o modelo de campo"""

    def setUp(self):
        self.cfg = ArrayConfig(rows=4, cols=4, dx=0.0278, dy=0.0278, frequency=5.8e9)
        self.scn = Scenario(self.cfg, PolarPoint.from_degrees(0.8, 0.0))

    def test_single_element(self):
        """Testa o campo de um único elemento com valor analítico"""
        cfg = ArrayConfig(rows=1, cols=1, dx=0.01, dy=0.01, frequency=1e9)
        scn = Scenario(cfg, CartesianPoint(0.0, 0.0, 1.0))
        e = compute_field(scn, PhaseMatrix.uniform(cfg, 0), CartesianPoint(0.0, 0.0, 2.0))
        expected = cmath.exp(-1j * cfg.wavenumber * 3.0) / 2.0
        self.assertAlmostEqual(abs(e - expected), 0.0, places=12)

    def test_brute_force_oracle(self):
        """Testa 20 cenários aleatórios contra o avaliador por laço explícito"""
        rng = np.random.default_rng(2025)
        for trial in range(20):
            rows, cols = (int(v) for v in rng.integers(1, 5, size=2))
            cfg = ArrayConfig(rows, cols, float(rng.uniform(0.01, 0.05)), float(rng.uniform(0.01, 0.05)),
                              float(rng.uniform(1e9, 10e9)))
            feed = polar_to_cartesian(PolarPoint(float(rng.uniform(0.3, 1.5)), float(rng.uniform(-1, 1))))
            scn = Scenario(cfg, feed)
            codes = rng.integers(0, 4, size=(rows, cols))
            target = polar_to_cartesian(PolarPoint(float(rng.uniform(0.5, 3.0)), float(rng.uniform(-1.2, 1.2))))
            with self.subTest(trial=trial):
                e = compute_field(scn, PhaseMatrix(codes), target)
                expected, bound = brute_force_field(cfg, feed, codes, target)
                self.assertLessEqual(abs(e - expected), 1e-12 * bound)

    def test_rotation_is_global_factor(self):
        """Testa que rotacionar a matriz multiplica o campo por j^code"""
        matrix = PhaseMatrix(np.random.default_rng(1).integers(0, 4, size=(4, 4)))
        target = PolarPoint.from_degrees(1.2, 15.0)
        e = compute_field(self.scn, matrix, target)
        e_rot = compute_field(self.scn, matrix.rotated(1), target)
        self.assertAlmostEqual(abs(e_rot - 1j * e), 0.0, places=12)

    def test_coincident_target(self):
        """Testa alvo coincidente com um elemento"""
        cfg = ArrayConfig(rows=1, cols=1, dx=0.01, dy=0.01, frequency=1e9)
        scn = Scenario(cfg, CartesianPoint(0.0, 0.0, 1.0))
        with self.assertRaises(GeometryError):
            compute_field(scn, PhaseMatrix.uniform(cfg), CartesianPoint(0.0, 0.0, 0.0))

    def test_feed_in_array_plane(self):
        """Testa alimentador no plano z = 0"""
        with self.assertRaises(GeometryError):
            Scenario(self.cfg, CartesianPoint(0.1, 0.0, 0.0))

    def test_shape_mismatch(self):
        """Testa matriz incompatível com o arranjo"""
        with self.assertRaises(GeometryError):
            compute_field(self.scn, PhaseMatrix(np.zeros((2, 2))), PolarPoint(1.0, 0.0))

    def test_grid_order_independent_of_workers(self):
        """Testa que o resultado da grade não depende do número de workers"""
        matrix = PhaseMatrix(np.random.default_rng(3).integers(0, 4, size=(4, 4)))
        grid = [PolarPoint.from_degrees(r, t) for r in (1.0, 1.5, 2.0) for t in range(-60, 61, 10)]
        serial = compute_field_grid(self.scn, matrix, grid, workers=1, chunk_size=7)
        parallel = compute_field_grid(self.scn, matrix, grid, workers=4, chunk_size=7)
        self.assertEqual(serial, parallel)
        self.assertEqual(len(serial), len(grid))
        self.assertAlmostEqual(abs(serial[5] - compute_field(self.scn, matrix, grid[5])), 0.0, places=12)

    def test_empty_grid(self):
        """Testa grade vazia"""
        self.assertEqual(compute_field_grid(self.scn, PhaseMatrix.uniform(self.cfg), []), [])

    def test_kernel_amplitude_bound(self):
        """Testa |E| ≤ Σ 1/(r_feed·r_reflect)"""
        points = [PolarPoint.from_degrees(1.0, t) for t in (-30, 0, 30)]
        kernel = FieldKernel(self.scn, points)
        fields = kernel.fields(PhaseMatrix.uniform(self.cfg))
        self.assertTrue(np.all(np.abs(fields) <= kernel.amplitude_bound() + 1e-15))
        self.assertEqual(len(kernel), 3)

    def test_scenario_hash(self):
        """Testa determinismo e sensibilidade do hash de cenário"""
        m = PhaseMatrix.uniform(self.cfg)
        self.assertEqual(scenario_hash(self.scn, m), scenario_hash(self.scn, m))
        self.assertNotEqual(scenario_hash(self.scn, m), scenario_hash(self.scn, m.rotated(1)))


if __name__ == '__main__':
    unittest.main(verbosity=2)
