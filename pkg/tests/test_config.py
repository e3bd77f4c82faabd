"""
Testes unitários para presets e arquivos de configuração
Author: Gabriel Demetrios Lafis
Year: 2025
"""

import unittest
import sys
import os
import math
import tempfile
from dataclasses import replace

# Adicionar o diretório src ao path para importar os módulos
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.errors import ConfigError
from src.config import (
    COMPACT,
    PROTOTYPE,
    SweepGrid,
    dump_config,
    get_preset,
    load_config,
    read_config_file
)


class TestSweepGrid(unittest.TestCase):
    """Testes para a grade de varredura"""

    def test_prototype_grid(self):
        """Testa a grade grossa mais a refinada sem duplicatas (239 pontos)"""
        grid = PROTOTYPE.sweep
        self.assertEqual(len(grid.radii()), 11)
        self.assertEqual(len(grid.angles()), 19)
        self.assertEqual(len(grid), 239)

    def test_points_sorted(self):
        """Testa ordenação por (r, theta)"""
        points = PROTOTYPE.sweep.points()
        self.assertEqual(points, sorted(points))
        self.assertIn((1.5, 5.0), points)
        self.assertEqual(points[0], (1.0, -90.0))
        self.assertEqual(points[-1], (3.0, 90.0))

    def test_polar_points(self):
        """Testa a conversão para PolarPoint"""
        grid = SweepGrid(1.0, 1.2, 0.2, -10.0, 10.0, 10.0)
        polar = grid.polar_points()
        self.assertEqual(len(polar), 6)
        self.assertAlmostEqual(polar[0].theta, math.radians(-10.0))

    def test_invalid_grid(self):
        """Testa passos e faixas inválidos"""
        with self.assertRaises(ConfigError):
            SweepGrid(1.0, 2.0, 0.0, -10.0, 10.0, 5.0)
        with self.assertRaises(ConfigError):
            SweepGrid(2.0, 1.0, 0.1, -10.0, 10.0, 5.0)
        with self.assertRaises(ConfigError):
            SweepGrid(0.0, 1.0, 0.1, -10.0, 10.0, 5.0)


class TestPresets(unittest.TestCase):
    """Testes para os presets de cenário"""

    def test_prototype(self):
        """Testa os parâmetros do protótipo"""
        self.assertEqual((PROTOTYPE.array.rows, PROTOTYPE.array.cols), (14, 56))
        self.assertEqual(PROTOTYPE.link.modulation, "8PSK")
        self.assertAlmostEqual(PROTOTYPE.effective_evm0, 0.251)
        self.assertIsNone(PROTOTYPE.ratio)
        self.assertIsNone(COMPACT.ratio)
        self.assertEqual(PROTOTYPE.link.pilot_interval, 0)

    def test_alias(self):
        """Testa o alias do preset de referência"""
        self.assertIs(get_preset("paper"), PROTOTYPE)
        self.assertIs(get_preset("compact"), COMPACT)
        with self.assertRaises(ConfigError):
            get_preset("huge")

    def test_invalid_preset_values(self):
        """Testa evm0 e razão inválidos"""
        with self.assertRaises(ConfigError):
            replace(COMPACT, evm0=0.0)
        with self.assertRaises(ConfigError):
            replace(COMPACT, ratio=0)


class TestConfigFile(unittest.TestCase):
    """Testes para o formato INI"""

    def test_round_trip(self):
        """Testa dump → load reproduzindo o preset"""
        for preset in (PROTOTYPE, COMPACT):
            with self.subTest(preset=preset.name):
                self.assertEqual(load_config(dump_config(preset)), preset)

    def test_sections(self):
        """Testa as seções do arquivo gerado"""
        text = dump_config(COMPACT)
        for section in ("[preset]", "[array]", "[scenario]", "[link]", "[slm]", "[nulling]", "[sweep]"):
            self.assertIn(section, text)

    def test_overlay(self):
        """Testa sobreposição parcial sobre o preset indicado"""
        preset = load_config("[preset]\nname = compact\n\n[link]\nmodulation = qpsk\nsnr_db = 20\n\n"
                             "[scenario]\nbob_theta_deg = 10\n")
        self.assertEqual(preset.array, COMPACT.array)
        self.assertEqual(preset.link.modulation, "QPSK")
        self.assertEqual(preset.link.snr_db, 20.0)
        self.assertAlmostEqual(preset.bob.theta, math.radians(10.0))
        self.assertAlmostEqual(preset.effective_evm0, 0.316)

    def test_fixed_ratio_overlay(self):
        """Testa razão fixa no INI e razão vazia voltando aos limites"""
        self.assertEqual(load_config("[preset]\nname = compact\n\n[slm]\nratio = 20\n").ratio, 20)
        self.assertIsNone(load_config("[slm]\nratio =\n").ratio)
        fixed = replace(COMPACT, ratio=20)
        self.assertIsNone(load_config("[slm]\nratio =\n", base=fixed).ratio)

    def test_default_base_is_prototype(self):
        """Testa preset base padrão"""
        self.assertEqual(load_config("[slm]\nevm0 = 0.2\n").array, PROTOTYPE.array)

    def test_unknown_section_and_key(self):
        """Testa seção e chave desconhecidas"""
        with self.assertRaises(ConfigError):
            load_config("[metrics]\nport = 80\n")
        with self.assertRaises(ConfigError):
            load_config("[link]\nbaud = 10\n")

    def test_invalid_values(self):
        """Testa valores inválidos"""
        for text in ("[array]\nrows = many\n", "[array]\nrows = 0\n", "[link]\nmodulation = OOK\n",
                     "[slm]\nratio = 0\n", "[sweep]\nr_step = -1\n", "not an ini"):
            with self.subTest(text=text):
                with self.assertRaises(ConfigError):
                    load_config(text)

    def test_read_file(self):
        """Testa leitura de arquivo e arquivo ausente"""
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "compact.ini")
            with open(path, "w", encoding="utf-8") as f:
                f.write(dump_config(COMPACT))
            self.assertEqual(read_config_file(path), COMPACT)
            with self.assertRaises(ConfigError):
                read_config_file(os.path.join(tmp, "missing.ini"))

    def test_sample_file(self):
        """Testa o arquivo de exemplo em data/"""
        path = os.path.join(os.path.dirname(__file__), '..', 'data', 'prototype.ini')
        self.assertEqual(read_config_file(path), PROTOTYPE)


if __name__ == '__main__':
    unittest.main(verbosity=2)
