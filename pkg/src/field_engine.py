"""
Secure Location Modulation - Motor de Campo
Author: Gabriel Demetrios Lafis
Year: 2025

Este módulo implementa a quantização de fase de 2 bits e o modelo de campo
próximo por óptica de raios:

    E(r) = Σ Γ_mn / (r_feed_mn · r_reflect_mn) · exp(-j·(2π/λ)·(r_feed_mn + r_reflect_mn))

Todas as amplitudes de reflexão são fixadas em 1; uma matriz de fase guarda
apenas o código de cada elemento (0..3 ↔ 1, j, -1, -j).
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Union
import hashlib
import math

import numpy as np

try:
    from .errors import GeometryError, QuantizationError
    from .geometry import (ArrayConfig, CartesianPoint, PolarPoint, element_grid,
                           polar_to_cartesian)
except ImportError:
    from errors import GeometryError, QuantizationError
    from geometry import (ArrayConfig, CartesianPoint, PolarPoint, element_grid,
                          polar_to_cartesian)


# Valores complexos dos quatro estados, indexados pelo código
STATE_VALUES = np.array([1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j])

# Tolerância, em ulps do valor em meios-quartos de volta, para fronteiras de quantização
_BOUNDARY_ULPS = 8

Point = Union[CartesianPoint, PolarPoint]


def quantize_code(ideal_phase) -> np.ndarray:
    """
    Quantiza fases ideais (rad) nos códigos 0..3 pela regra de 2 bits.

    Intervalos semiabertos com limite inferior inclusivo:
    [-π/4, π/4) → 0, [π/4, 3π/4) → 1, [3π/4, 5π/4) → 2, restante → 3.

    Uma fase a até `_BOUNDARY_ULPS` ulps de uma fronteira conta como a
    própria fronteira, para que valores como 3π/4 ou 2π + π/4, já
    arredondados em ponto flutuante, caiam no intervalo que denotam.
    Fora dessa folga a comparação é exata.
    """
    phase = np.asarray(ideal_phase, dtype=float)
    if not np.all(np.isfinite(phase)):
        raise QuantizationError("Fase não finita não pode ser quantizada")
    quarters = phase / (np.pi / 2.0)
    halves = 2.0 * quarters
    nearest = np.round(halves)
    # fronteiras em ±π/4 + kπ/2 caem em meios-quartos ímpares
    tolerance = _BOUNDARY_ULPS * np.spacing(np.maximum(np.abs(halves), 1.0))
    quarters = np.where(np.abs(halves - nearest) <= tolerance, nearest / 2.0, quarters)
    return np.mod(np.floor(quarters + 0.5), 4).astype(np.int8)


def quantize_2bit(ideal_phase: float) -> complex:
    """Retorna o valor de reflexão em {1, j, -1, -j} para uma fase ideal"""
    return complex(STATE_VALUES[int(quantize_code(ideal_phase))])


def quantize_complex(c: complex) -> complex:
    """
    Quantiza o argumento de um número complexo.

    Raises:
        QuantizationError: c = 0 (argumento indefinido)
    """
    if c == 0:
        raise QuantizationError("Argumento de 0 é indefinido; vetor de pesos degenerado")
    return quantize_2bit(math.atan2(c.imag, c.real))


def quantize_complex_codes(values: np.ndarray) -> np.ndarray:
    values = np.asarray(values, dtype=complex)
    if np.any(values == 0):
        raise QuantizationError("Argumento de 0 é indefinido; vetor de pesos degenerado")
    return quantize_code(np.angle(values))


@dataclass(frozen=True, eq=False)
class PhaseMatrix:
    """Matriz de fase espacial quantizada: códigos (M, N) em 0..3"""
    codes: np.ndarray

    def __post_init__(self):
        codes = np.array(self.codes, dtype=np.int8, copy=True)
        if codes.ndim != 2 or codes.size == 0:
            raise QuantizationError(f"Matriz de fase deve ser 2D e não vazia (shape {codes.shape})")
        if np.any((codes < 0) | (codes > 3)):
            raise QuantizationError("Códigos de fase devem estar em {0, 1, 2, 3}")
        codes.setflags(write=False)
        object.__setattr__(self, "codes", codes)

    @classmethod
    def from_values(cls, values: np.ndarray) -> "PhaseMatrix":
        """Constrói a partir de valores complexos já pertencentes a {1, j, -1, -j}"""
        return cls(quantize_complex_codes(values))

    @classmethod
    def uniform(cls, cfg: ArrayConfig, code: int = 0) -> "PhaseMatrix":
        return cls(np.full((cfg.rows, cfg.cols), code, dtype=np.int8))

    @property
    def shape(self):
        return self.codes.shape

    @property
    def values(self) -> np.ndarray:
        return STATE_VALUES[self.codes]

    @property
    def phases(self) -> np.ndarray:
        return self.codes.astype(float) * (np.pi / 2.0)

    def rotated(self, code: int) -> "PhaseMatrix":
        """Aplica um fator de fase global j^code a todos os elementos"""
        return PhaseMatrix(np.mod(self.codes + code, 4))

    def __eq__(self, other) -> bool:
        return isinstance(other, PhaseMatrix) and np.array_equal(self.codes, other.codes)

    def __hash__(self) -> int:
        return hash(self.codes.tobytes())

    def digest(self) -> str:
        return hashlib.sha256(self.codes.tobytes() + str(self.shape).encode()).hexdigest()[:16]

    def to_text(self) -> str:
        return "\n".join(",".join(str(int(c)) for c in row) for row in self.codes) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "PhaseMatrix":
        rows = [line for line in text.strip().splitlines() if line.strip()]
        return cls(np.array([[int(v) for v in row.split(",")] for row in rows]))


@dataclass(frozen=True, eq=False)
class Scenario:
    """Arranjo + posição do alimentador (Alice)"""
    cfg: ArrayConfig
    feed: CartesianPoint
    element_x: np.ndarray = field(init=False, repr=False)
    element_y: np.ndarray = field(init=False, repr=False)
    feed_distance: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if isinstance(self.feed, PolarPoint):
            object.__setattr__(self, "feed", polar_to_cartesian(self.feed))
        if self.feed.z == 0:
            raise GeometryError("O alimentador não pode estar no plano do arranjo (z = 0)")
        x, y = element_grid(self.cfg)
        rf = np.sqrt((x - self.feed.x) ** 2 + (y - self.feed.y) ** 2 + self.feed.z ** 2)
        for arr in (x, y, rf):
            arr.setflags(write=False)
        object.__setattr__(self, "element_x", x)
        object.__setattr__(self, "element_y", y)
        object.__setattr__(self, "feed_distance", rf)

    @property
    def feed_reference(self) -> float:
        """Distância do alimentador ao centro O do arranjo"""
        return math.sqrt(self.feed.x ** 2 + self.feed.y ** 2 + self.feed.z ** 2)

    def reflect_distance(self, target: CartesianPoint) -> np.ndarray:
        return np.sqrt((self.element_x - target.x) ** 2 + (self.element_y - target.y) ** 2 + target.z ** 2)

    def check_shape(self, matrix: PhaseMatrix) -> None:
        if matrix.shape != (self.cfg.rows, self.cfg.cols):
            raise GeometryError(
                f"Matriz {matrix.shape} incompatível com o arranjo {self.cfg.rows}×{self.cfg.cols}")


def as_cartesian(p: Point) -> CartesianPoint:
    return polar_to_cartesian(p) if isinstance(p, PolarPoint) else p


def scenario_hash(scn: Scenario, *matrices: PhaseMatrix) -> str:
    """Resumo determinístico de um cenário (e das matrizes associadas)"""
    c = scn.cfg
    parts = [f"{c.rows}x{c.cols}", repr(c.dx), repr(c.dy), repr(c.frequency),
             repr(scn.feed.x), repr(scn.feed.y), repr(scn.feed.z)]
    parts.extend(m.digest() for m in matrices)
    return hashlib.sha256("|".join(parts).encode()).hexdigest()[:16]


class FieldKernel:
    """
    Matriz de propagação pré-calculada para um conjunto fixo de pontos.

    G[p, e] = exp(-jk(r_feed_e + r_reflect_pe)) / (r_feed_e · r_reflect_pe), de modo
    que o campo de qualquer matriz de fase nos pontos é G @ Γ.
    """

    def __init__(self, scn: Scenario, targets: Sequence[Point]):
        self.scenario = scn
        self.targets = [as_cartesian(t) for t in targets]
        k = scn.cfg.wavenumber
        ex = scn.element_x.ravel()
        ey = scn.element_y.ravel()
        rf = scn.feed_distance.ravel()
        if self.targets:
            pts = np.array([[t.x, t.y, t.z] for t in self.targets], dtype=float)
            rr = np.sqrt((ex[None, :] - pts[:, 0:1]) ** 2 + (ey[None, :] - pts[:, 1:2]) ** 2
                         + pts[:, 2:3] ** 2)
        else:
            rr = np.zeros((0, ex.size))
        if np.any(rr == 0):
            bad = int(np.argwhere(np.any(rr == 0, axis=1))[0, 0])
            raise GeometryError(f"Ponto alvo {self.targets[bad]} coincide com um elemento do arranjo")
        self.reflect_distance = rr
        self.matrix = np.exp(-1j * k * (rf[None, :] + rr)) / (rf[None, :] * rr)

    def __len__(self) -> int:
        return len(self.targets)

    def fields(self, refl: PhaseMatrix) -> np.ndarray:
        self.scenario.check_shape(refl)
        return self.matrix @ refl.values.ravel()

    def fields_many(self, values: np.ndarray) -> np.ndarray:
        """Campos para várias matrizes de reflexão complexas, shape (B, M·N) → (B, P)"""
        return np.asarray(values).reshape(len(values), -1) @ self.matrix.T

    def amplitude_bound(self) -> np.ndarray:
        """Σ 1/(r_feed·r_reflect) por ponto (limite da desigualdade triangular)"""
        return np.abs(self.matrix).sum(axis=1)


def compute_field(scn: Scenario, refl: PhaseMatrix, target: Point) -> complex:
    """
    Campo normalizado em um ponto do espaço.

    Raises:
        GeometryError: alvo coincide com um elemento
    """
    return complex(FieldKernel(scn, [target]).fields(refl)[0])


def compute_field_grid(scn: Scenario, refl: PhaseMatrix, grid: Iterable[Point],
                       workers: int = 1, chunk_size: int = 256) -> List[complex]:
    """
    Avalia o campo em uma lista de pontos, em paralelo por blocos.

    A ordem de saída é a ordem da grade, independente do número de workers.
    """
    points = list(grid)
    if not points:
        return []
    scn.check_shape(refl)
    chunks = [points[i:i + chunk_size] for i in range(0, len(points), chunk_size)]

    def _evaluate(chunk):
        return FieldKernel(scn, chunk).fields(refl)

    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_evaluate, chunks))
    else:
        results = [_evaluate(c) for c in chunks]
    return [complex(v) for block in results for v in block]
