"""
Secure Location Modulation - Geometria do Arranjo
Author: Gabriel Demetrios Lafis
Year: 2025

Este módulo define a geometria do arranjo RIS, os sistemas de coordenadas
(polar e cartesiano), os comprimentos de percurso e a fronteira entre campo
próximo e campo distante (2L²/λ).

Convenção de eixos:
- O arranjo fica no plano xoy, centrado na origem O, com boresight em +z.
- O eixo x acompanha as colunas (n = 1..N, lado largo do arranjo) e o eixo y
  acompanha as linhas (m = 1..M).
- Coordenadas polares (r, theta, phi): theta é o azimute no plano xoz medido
  a partir de +z, phi é a elevação (0 em todos os cenários do plano xoz):
      x = r·sin(theta)·cos(phi),  y = r·sin(phi),  z = r·cos(theta)·cos(phi)
"""

from dataclasses import dataclass
from typing import Tuple
import math

import numpy as np

try:
    from .errors import GeometryError
except ImportError:
    from errors import GeometryError


SPEED_OF_LIGHT = 299_792_458.0  # m/s


@dataclass(frozen=True)
class ArrayConfig:
    """Geometria e portadora do arranjo RIS (M linhas × N colunas)"""
    rows: int  # M
    cols: int  # N
    dx: float  # passo entre colunas (m)
    dy: float  # passo entre linhas (m)
    frequency: float  # Hz

    def __post_init__(self):
        if int(self.rows) != self.rows or self.rows < 1:
            raise GeometryError(f"rows deve ser inteiro positivo (recebido {self.rows})")
        if int(self.cols) != self.cols or self.cols < 1:
            raise GeometryError(f"cols deve ser inteiro positivo (recebido {self.cols})")
        if not (self.dx > 0 and self.dy > 0):
            raise GeometryError(f"Passos dx, dy devem ser positivos (recebido {self.dx}, {self.dy})")
        if not self.frequency > 0:
            raise GeometryError(f"Frequência deve ser positiva (recebido {self.frequency})")

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.frequency

    @property
    def wavenumber(self) -> float:
        return 2.0 * math.pi / self.wavelength

    @property
    def width(self) -> float:
        """Largura da abertura (N·dx)"""
        return self.cols * self.dx

    @property
    def height(self) -> float:
        """Altura da abertura (M·dy)"""
        return self.rows * self.dy

    @property
    def diagonal(self) -> float:
        return math.hypot(self.width, self.height)

    @property
    def element_count(self) -> int:
        return self.rows * self.cols


@dataclass(frozen=True)
class CartesianPoint:
    """Ponto em coordenadas cartesianas (m)"""
    x: float
    y: float
    z: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x, self.y, self.z)):
            raise GeometryError(f"Coordenadas devem ser finitas (recebido {self.x}, {self.y}, {self.z})")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


@dataclass(frozen=True)
class PolarPoint:
    """Ponto em coordenadas polares: r (m), theta e phi (rad)"""
    r: float
    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.r) and self.r > 0):
            raise GeometryError(f"Raio deve ser positivo e finito (recebido {self.r})")
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise GeometryError("Ângulos devem ser finitos")

    @classmethod
    def from_degrees(cls, r: float, theta_deg: float, phi_deg: float = 0.0) -> "PolarPoint":
        return cls(r, math.radians(theta_deg), math.radians(phi_deg))

    @property
    def theta_deg(self) -> float:
        return math.degrees(self.theta)


def element_position(cfg: ArrayConfig, m: int, n: int) -> CartesianPoint:
    """
    Retorna o centro da célula (m, n), com índices de 1 a M e de 1 a N.

    Raises:
        GeometryError: índice fora da faixa
    """
    if not (1 <= m <= cfg.rows) or not (1 <= n <= cfg.cols):
        raise GeometryError(f"Elemento ({m}, {n}) fora do arranjo {cfg.rows}×{cfg.cols}")
    x = (n - (cfg.cols + 1) / 2.0) * cfg.dx
    y = (m - (cfg.rows + 1) / 2.0) * cfg.dy
    return CartesianPoint(x, y, 0.0)


def element_grid(cfg: ArrayConfig) -> Tuple[np.ndarray, np.ndarray]:
    """Coordenadas x, y de todos os elementos, matrizes (M, N)"""
    n = np.arange(1, cfg.cols + 1, dtype=float)
    m = np.arange(1, cfg.rows + 1, dtype=float)
    xs = (n - (cfg.cols + 1) / 2.0) * cfg.dx
    ys = (m - (cfg.rows + 1) / 2.0) * cfg.dy
    x, y = np.meshgrid(xs, ys)
    return x, y


def polar_to_cartesian(p: PolarPoint) -> CartesianPoint:
    cos_phi = math.cos(p.phi)
    return CartesianPoint(
        p.r * math.sin(p.theta) * cos_phi,
        p.r * math.sin(p.phi),
        p.r * math.cos(p.theta) * cos_phi,
    )


def path_length(a: CartesianPoint, b: CartesianPoint) -> float:
    return math.sqrt((a.x - b.x) ** 2 + (a.y - b.y) ** 2 + (a.z - b.z) ** 2)


def fraunhofer_distance(cfg: ArrayConfig) -> float:
    """
    Distância crítica 2L²/λ entre campo próximo e campo distante.

    L é a diagonal completa da abertura.
    """
    return 2.0 * cfg.diagonal ** 2 / cfg.wavelength


def is_near_field(cfg: ArrayConfig, p: PolarPoint) -> bool:
    return p.r < fraunhofer_distance(cfg)
