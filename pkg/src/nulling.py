"""
Secure Location Modulation - Modelo de Nulling por Compressão (SNM)
Author: Gabriel Demetrios Lafis
Year: 2025

Este módulo gera um nulo profundo no centro c comprimindo quatro pontos focais
ao seu redor (frente, trás, esquerda, direita). A matriz de nulling é a soma
ponderada dos coeficientes de focalização de cada ponto focal, quantizada:

    Γ_mn = Q( Σ_q w_q · exp(j·φ_mnq) )

O vetor de busca tem apenas 8 dimensões: 4 deslocamentos d = [Δr_f, Δr_b,
Δθ_l, Δθ_r] e 4 pesos w. A profundidade de nulo (objetivo) é a soma, nas
quatro zonas principais, da razão entre o |E| médio na subzona de nulling e o
|E| médio na subzona de alto ganho, sujeita a:

- C1: w_q ≥ 0, Σ w = 1 (garantido pela codificação)
- C2: pico na subzona de alto ganho ≥ pico na subzona externa, por zona
- C3: razões entre picos de alto ganho das zonas em [α1, α2] = [0.9, 1.1]

A busca é feita por um algoritmo genético semeado (ou outro otimizador com a
mesma interface propose/tell).
"""

from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union
import math

import numpy as np

try:
    from .errors import GeometryError, NullingError, QuantizationError
    from .geometry import PolarPoint, fraunhofer_distance
    from .field_engine import FieldKernel, PhaseMatrix, Scenario, quantize_complex_codes
    from .focusing import ideal_focus_phases
except ImportError:
    from errors import GeometryError, NullingError, QuantizationError
    from geometry import PolarPoint, fraunhofer_distance
    from field_engine import FieldKernel, PhaseMatrix, Scenario, quantize_complex_codes
    from focusing import ideal_focus_phases


PEAK_BALANCE = (0.9, 1.1)  # (α1, α2)
PENALTY_WEIGHT = 10.0
DEGENERATE_FITNESS = 1e6
GENE_COUNT = 8


class ZoneName(Enum):
    """Zonas principais ao redor do centro do nulo"""
    FRONT = "front"  # em direção ao arranjo (r menor)
    BACK = "back"    # afastando-se do arranjo (r maior)
    LEFT = "left"    # θ menor
    RIGHT = "right"  # θ maior


class SolutionStatus(Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"


ZONE_ORDER = (ZoneName.FRONT, ZoneName.BACK, ZoneName.LEFT, ZoneName.RIGHT)


@dataclass(frozen=True)
class NullSpec:
    """Centro do nulo, deslocamentos focais e pesos"""
    center: PolarPoint
    offsets: Tuple[float, float, float, float]  # Δr_f (m), Δr_b (m), Δθ_l (rad), Δθ_r (rad)
    weights: Tuple[float, float, float, float] = (0.25, 0.25, 0.25, 0.25)

    def __post_init__(self):
        offsets = tuple(float(v) for v in self.offsets)
        weights = tuple(float(v) for v in self.weights)
        if len(offsets) != 4 or len(weights) != 4:
            raise NullingError("NullSpec requer exatamente 4 deslocamentos e 4 pesos")
        if not all(math.isfinite(v) and v > 0 for v in offsets):
            raise NullingError(f"Deslocamentos devem ser positivos (recebido {offsets})")
        if not all(math.isfinite(v) and v >= 0 for v in weights):
            raise NullingError(f"Pesos devem ser não negativos (recebido {weights})")
        if abs(sum(weights) - 1.0) > 1e-9:
            raise NullingError(f"Pesos devem somar 1 (soma {sum(weights)})")
        if self.center.phi != 0:
            raise NullingError("Nulling restrito ao plano xoz (phi = 0)")
        object.__setattr__(self, "offsets", offsets)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def from_genes(cls, center: PolarPoint, genes: Sequence[float]) -> "NullSpec":
        """Decodifica o vetor de 8 genes; os pesos são normalizados (C1)"""
        genes = np.asarray(genes, dtype=float)
        raw = np.clip(genes[4:], 0.0, None)
        total = raw.sum()
        weights = raw / total if total > 0 else np.full(4, 0.25)
        return cls(center, tuple(genes[:4]), tuple(weights))

    def genes(self) -> np.ndarray:
        return np.array(self.offsets + self.weights, dtype=float)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "center": {"r_m": self.center.r, "theta_deg": math.degrees(self.center.theta)},
            "offsets": {
                "front_m": self.offsets[0],
                "back_m": self.offsets[1],
                "left_deg": math.degrees(self.offsets[2]),
                "right_deg": math.degrees(self.offsets[3]),
            },
            "weights": dict(zip([z.value for z in ZONE_ORDER], self.weights)),
        }


@dataclass
class MainZone:
    """Subzonas de uma zona principal, ordenadas a partir do centro"""
    nulling: List[PolarPoint]
    transition: List[PolarPoint]  # carregada, mas sem restrição
    high_gain: List[PolarPoint]
    outer: List[PolarPoint]


@dataclass
class ZoneModel:
    """Pontos de amostragem das quatro zonas principais"""
    zones: Dict[ZoneName, MainZone]

    def __post_init__(self):
        for name in ZONE_ORDER:
            if name not in self.zones:
                raise NullingError(f"Zona {name.value} ausente no modelo de zonas")
            zone = self.zones[name]
            if not zone.nulling or not zone.high_gain:
                raise NullingError(f"Zona {name.value}: subzonas de nulling e alto ganho não podem ser vazias")
            for p in zone.nulling + zone.transition + zone.high_gain + zone.outer:
                if p.phi != 0:
                    raise NullingError("Pontos de amostragem devem estar no plano xoz")

    def eve_points(self) -> List[PolarPoint]:
        """Pontos de Eve: subzonas de alto ganho e externas"""
        return [p for name in ZONE_ORDER for p in self.zones[name].high_gain + self.zones[name].outer]

    def bob_points(self) -> List[PolarPoint]:
        """Pontos de Bob: subzonas de nulling"""
        return [p for name in ZONE_ORDER for p in self.zones[name].nulling]

    def sample_count(self) -> int:
        return sum(len(z.nulling) + len(z.high_gain) + len(z.outer) for z in self.zones.values())


@dataclass(frozen=True)
class ZoneGeometry:
    """Parâmetros do modelo de zonas padrão"""
    nominal_dr: float = 0.2
    nominal_dtheta: float = math.radians(10.0)
    null_radius: float = 0.05
    null_angle: float = math.radians(2.0)
    band_radius: float = 0.05
    band_angle: float = math.radians(2.0)
    samples: int = 9


@dataclass(frozen=True)
class SearchBounds:
    """Limites de busca dos deslocamentos"""
    dr: Tuple[float, float] = (0.05, 0.6)
    dtheta: Tuple[float, float] = (math.radians(2.0), math.radians(25.0))

    def lower(self) -> np.ndarray:
        return np.array([self.dr[0], self.dr[0], self.dtheta[0], self.dtheta[0], 0.0, 0.0, 0.0, 0.0])

    def upper(self) -> np.ndarray:
        return np.array([self.dr[1], self.dr[1], self.dtheta[1], self.dtheta[1], 1.0, 1.0, 1.0, 1.0])


def _segment(start: float, stop: float, samples: int) -> np.ndarray:
    return np.linspace(start, stop, samples)


def _outer_end(offset: float, band: float) -> float:
    return max(2.0 * offset, offset + 2.0 * band)


def build_zone_model(center: PolarPoint, geometry: Optional[ZoneGeometry] = None,
                     offsets: Optional[Sequence[float]] = None) -> ZoneModel:
    """
    Constrói o modelo de zonas ao longo de cada eixo a partir do centro.

    `offsets` = (Δr_f, Δr_b, Δθ_l, Δθ_r) posiciona cada zona no seu ponto
    focal; sem ele valem os deslocamentos nominais da geometria. Por eixo,
    com deslocamento d, raio de nulo ρ e meia-banda h:
    nulling [0, ρ], transição [ρ, d − h], alto ganho [max(d − h, ρ), d + h],
    externa [d + h, max(2d, d + 2h)].

    Raises:
        NullingError: amostragem ou deslocamentos inválidos, ou subzona
            externa frontal atravessando o arranjo
    """
    g = geometry or ZoneGeometry()
    if g.samples < 1:
        raise NullingError("samples deve ser ≥ 1")
    if offsets is None:
        offsets = (g.nominal_dr, g.nominal_dr, g.nominal_dtheta, g.nominal_dtheta)
    offsets = tuple(float(v) for v in offsets)
    if len(offsets) != 4 or not all(math.isfinite(v) and v > 0 for v in offsets):
        raise NullingError(f"Deslocamentos das zonas devem ser 4 valores positivos (recebido {offsets})")
    dr_f, dr_b, dt_l, dt_r = offsets
    if center.r - _outer_end(dr_f, g.band_radius) <= 0:
        raise NullingError("Subzona externa frontal atravessaria o arranjo (r ≤ 0)")

    def _profile(offset, rho, band):
        low = max(offset - band, rho)
        nulling = _segment(0.0, rho, g.samples)
        transition = _segment(rho, low, g.samples) if low > rho else np.array([])
        high = _segment(low, offset + band, g.samples)
        outer = _segment(offset + band, _outer_end(offset, band), g.samples)
        return nulling, transition, high, outer

    r_c, t_c = center.r, center.theta

    def _radial(sign, offset):
        segments = _profile(offset, g.null_radius, g.band_radius)
        return MainZone(*[[PolarPoint(r_c + sign * d, t_c) for d in seg] for seg in segments])

    def _angular(sign, offset):
        segments = _profile(offset, g.null_angle, g.band_angle)
        return MainZone(*[[PolarPoint(r_c, t_c + sign * d) for d in seg] for seg in segments])

    return ZoneModel({
        ZoneName.FRONT: _radial(-1.0, dr_f),
        ZoneName.BACK: _radial(+1.0, dr_b),
        ZoneName.LEFT: _angular(-1.0, dt_l),
        ZoneName.RIGHT: _angular(+1.0, dt_r),
    })


def aligned_zone_model(spec: NullSpec, geometry: Optional[ZoneGeometry] = None) -> ZoneModel:
    """Zonas centradas nos pontos focais de `spec`"""
    return build_zone_model(spec.center, geometry, spec.offsets)


def baseline_spec(center: PolarPoint, geometry: Optional[ZoneGeometry] = None) -> NullSpec:
    """Pesos iguais e deslocamentos nominais (linha de base de comparação)"""
    g = geometry or ZoneGeometry()
    return NullSpec(center, (g.nominal_dr, g.nominal_dr, g.nominal_dtheta, g.nominal_dtheta))


def focal_points(spec: NullSpec) -> Tuple[PolarPoint, PolarPoint, PolarPoint, PolarPoint]:
    """
    Posições dos quatro pontos focais (frente, trás, esquerda, direita).

    Raises:
        GeometryError: r_c − Δr_f ≤ 0
    """
    c = spec.center
    dr_f, dr_b, dt_l, dt_r = spec.offsets
    if c.r - dr_f <= 0:
        raise GeometryError(f"Ponto focal frontal fora do semiespaço (r = {c.r - dr_f})")
    return (
        PolarPoint(c.r - dr_f, c.theta),
        PolarPoint(c.r + dr_b, c.theta),
        PolarPoint(c.r, c.theta - dt_l),
        PolarPoint(c.r, c.theta + dt_r),
    )


def null_values(scn: Scenario, spec: NullSpec) -> np.ndarray:
    """Soma ponderada não quantizada Σ_q w_q·exp(jφ_mnq), matriz (M, N)"""
    total = np.zeros((scn.cfg.rows, scn.cfg.cols), dtype=complex)
    for w, p in zip(spec.weights, focal_points(spec)):
        if w > 0:
            total += w * np.exp(1j * ideal_focus_phases(scn, p))
    return total


def null_matrix(scn: Scenario, spec: NullSpec) -> PhaseMatrix:
    """
    Matriz de nulling Φn.

    Raises:
        NullingError: soma ponderada nula em algum elemento
    """
    total = null_values(scn, spec)
    degenerate = np.abs(total) <= 1e-12 * sum(spec.weights)
    if np.any(degenerate):
        m, n = (int(v) + 1 for v in np.argwhere(degenerate)[0])
        raise NullingError(f"Soma ponderada nula no elemento ({m}, {n}); pesos degenerados")
    try:
        return PhaseMatrix(quantize_complex_codes(total))
    except QuantizationError as e:
        raise NullingError(str(e)) from e


@dataclass
class ZoneFields:
    """|E| nas subzonas de cada zona principal"""
    nulling: Dict[ZoneName, np.ndarray]
    high_gain: Dict[ZoneName, np.ndarray]
    outer: Dict[ZoneName, np.ndarray]


@dataclass
class DepthReport:
    per_zone: Dict[ZoneName, float]
    objective: float


@dataclass
class Feasibility:
    """Satisfação das restrições C2 (posição do pico) e C3 (equilíbrio de picos)"""
    c2: Dict[ZoneName, bool]
    c3: bool
    c2_violation: float = 0.0
    c3_violation: float = 0.0

    @property
    def feasible(self) -> bool:
        return all(self.c2.values()) and self.c3

    @property
    def penalty_units(self) -> float:
        return self.c2_violation + self.c3_violation

    def to_dict(self) -> Dict[str, Any]:
        return {
            "c2": {k.value: v for k, v in self.c2.items()},
            "c3": self.c3,
            "feasible": self.feasible,
        }


def depth_from_fields(zf: ZoneFields) -> DepthReport:
    """
    Profundidade de nulo a partir das amplitudes amostradas.

    Raises:
        NullingError: campo médio nulo na subzona de alto ganho
    """
    per_zone = {}
    for name in ZONE_ORDER:
        high_mean = float(np.mean(np.abs(zf.high_gain[name])))
        if high_mean == 0:
            raise NullingError(f"Campo médio nulo na subzona de alto ganho da zona {name.value}")
        per_zone[name] = float(np.mean(np.abs(zf.nulling[name]))) / high_mean
    return DepthReport(per_zone, float(sum(per_zone.values())))


def constraints_from_fields(zf: ZoneFields, balance: Tuple[float, float] = PEAK_BALANCE) -> Feasibility:
    lo, hi = balance
    c2: Dict[ZoneName, bool] = {}
    c2_violation = 0.0
    peaks = {}
    for name in ZONE_ORDER:
        high_peak = float(np.max(np.abs(zf.high_gain[name])))
        outer = zf.outer.get(name)
        outer_peak = float(np.max(np.abs(outer))) if outer is not None and len(outer) else 0.0
        peaks[name] = high_peak
        c2[name] = high_peak >= outer_peak
        if not c2[name]:
            c2_violation += outer_peak / high_peak - 1.0 if high_peak > 0 else 1.0
    c3 = True
    c3_violation = 0.0
    for a, b in combinations(ZONE_ORDER, 2):
        pa, pb = peaks[a], peaks[b]
        if pa == 0 or pb == 0:
            c3 = c3 and pa == pb
            c3_violation += 0.0 if pa == pb else 1.0
            continue
        for ratio in (pa / pb, pb / pa):
            if not lo <= ratio <= hi:
                c3 = False
                c3_violation += max(0.0, lo - ratio) + max(0.0, ratio - hi)
    return Feasibility(c2, c3, c2_violation, c3_violation)


class ZoneSampler:
    """Núcleo de campo pré-calculado para as subzonas de um modelo de zonas"""

    def __init__(self, scn: Scenario, zones: ZoneModel):
        self.zones = zones
        points: List[PolarPoint] = []
        self._slices: Dict[Tuple[ZoneName, str], slice] = {}
        for name in ZONE_ORDER:
            zone = zones.zones[name]
            for kind in ("nulling", "high_gain", "outer"):
                pts = getattr(zone, kind)
                self._slices[(name, kind)] = slice(len(points), len(points) + len(pts))
                points.extend(pts)
        self.kernel = FieldKernel(scn, points)

    def zone_fields(self, matrix: PhaseMatrix) -> ZoneFields:
        amplitudes = np.abs(self.kernel.fields(matrix))
        split = {kind: {name: amplitudes[self._slices[(name, kind)]] for name in ZONE_ORDER}
                 for kind in ("nulling", "high_gain", "outer")}
        return ZoneFields(split["nulling"], split["high_gain"], split["outer"])


class NullingProblem:
    """
    Problema SNM. Sem `zones`, cada candidato é avaliado nas zonas centradas
    nos seus próprios pontos focais; com `zones`, o modelo fica fixo e o
    núcleo de campo é calculado uma única vez.
    """

    def __init__(self, scn: Scenario, zones: Optional[ZoneModel] = None,
                 center: Optional[PolarPoint] = None, balance: Tuple[float, float] = PEAK_BALANCE,
                 geometry: Optional[ZoneGeometry] = None):
        self.scenario = scn
        self.zones = zones
        self.center = center
        self.balance = balance
        self.geometry = geometry or ZoneGeometry()
        self._fixed = ZoneSampler(scn, zones) if zones is not None else None

    def zones_for(self, spec: NullSpec) -> ZoneModel:
        return self.zones if self.zones is not None else aligned_zone_model(spec, self.geometry)

    def sampler(self, spec: NullSpec) -> ZoneSampler:
        if self._fixed is not None:
            return self._fixed
        return ZoneSampler(self.scenario, self.zones_for(spec))

    def evaluate(self, spec: NullSpec) -> Tuple[PhaseMatrix, DepthReport, Feasibility]:
        matrix = null_matrix(self.scenario, spec)
        zf = self.sampler(spec).zone_fields(matrix)
        return matrix, depth_from_fields(zf), constraints_from_fields(zf, self.balance)

    def fitness(self, genes: np.ndarray) -> Tuple[float, bool]:
        """Objetivo + penalidade estática; candidatos degenerados recebem fitness alta"""
        try:
            spec = NullSpec.from_genes(self.center, genes)
            _, depth, feas = self.evaluate(spec)
        except (NullingError, GeometryError):
            return DEGENERATE_FITNESS, False
        return depth.objective + PENALTY_WEIGHT * feas.penalty_units, feas.feasible


def null_depth(scn: Scenario, matrix: PhaseMatrix, zones: ZoneModel) -> DepthReport:
    """Profundidade de nulo por zona e objetivo total"""
    return depth_from_fields(ZoneSampler(scn, zones).zone_fields(matrix))


def snm_constraints(scn: Scenario, matrix: PhaseMatrix, zones: ZoneModel) -> Feasibility:
    return constraints_from_fields(ZoneSampler(scn, zones).zone_fields(matrix))


class Optimizer(ABC):
    """Interface propose/tell dos otimizadores do SNM"""

    def __init__(self, lower: np.ndarray, upper: np.ndarray, population: int = 64,
                 seed_genes: Optional[np.ndarray] = None):
        if population < 1:
            raise NullingError("population deve ser ≥ 1")
        self.lower = np.asarray(lower, dtype=float)
        self.upper = np.asarray(upper, dtype=float)
        self.population = population
        self.seed_genes = None if seed_genes is None else np.atleast_2d(np.asarray(seed_genes, dtype=float))
        self._genes: Optional[np.ndarray] = None
        self._fitness: Optional[np.ndarray] = None

    def _initial(self, rng: np.random.Generator) -> np.ndarray:
        genes = self.lower + rng.random((self.population, self.lower.size)) * (self.upper - self.lower)
        if self.seed_genes is not None:
            k = min(len(self.seed_genes), self.population)
            genes[:k] = np.clip(self.seed_genes[:k], self.lower, self.upper)
        return genes

    @abstractmethod
    def propose(self, rng: np.random.Generator) -> np.ndarray:
        """Retorna a próxima população de genes (P, 8)"""

    def tell(self, genes: np.ndarray, fitness: np.ndarray) -> None:
        self._genes = np.asarray(genes, dtype=float)
        self._fitness = np.nan_to_num(np.asarray(fitness, dtype=float), nan=DEGENERATE_FITNESS,
                                      posinf=DEGENERATE_FITNESS)


class GeneticOptimizer(Optimizer):
    """
    Algoritmo genético: seleção por torneio, crossover uniforme, mutação
    gaussiana por gene (σ = fração da faixa do gene) e elitismo.
    """

    def __init__(self, lower, upper, population: int = 64, tournament: int = 3,
                 crossover: float = 0.9, mutation_sigma: float = 0.1, mutation_rate: float = 0.25,
                 elitism: int = 2, seed_genes: Optional[np.ndarray] = None):
        super().__init__(lower, upper, population, seed_genes)
        self.tournament = tournament
        self.crossover = crossover
        self.mutation_sigma = mutation_sigma
        self.mutation_rate = mutation_rate
        self.elitism = min(elitism, population)

    def _select(self, rng: np.random.Generator) -> int:
        idx = rng.integers(0, len(self._genes), size=self.tournament)
        return int(idx[np.argmin(self._fitness[idx])])

    def propose(self, rng: np.random.Generator) -> np.ndarray:
        if self._genes is None:
            return self._initial(rng)
        order = np.argsort(self._fitness, kind="stable")
        nxt = [self._genes[i].copy() for i in order[:self.elitism]]
        span = self.upper - self.lower
        while len(nxt) < self.population:
            a = self._genes[self._select(rng)]
            b = self._genes[self._select(rng)]
            if rng.random() < self.crossover:
                child = np.where(rng.random(a.size) < 0.5, a, b)
            else:
                child = a.copy()
            mutate = rng.random(a.size) < self.mutation_rate
            child = child + mutate * rng.normal(0.0, 1.0, a.size) * self.mutation_sigma * span
            nxt.append(np.clip(child, self.lower, self.upper))
        return np.array(nxt)


class RandomSearchOptimizer(Optimizer):
    """Amostragem uniforme a cada geração (referência para benchmark)"""

    def propose(self, rng: np.random.Generator) -> np.ndarray:
        if self._genes is None:
            return self._initial(rng)
        return self.lower + rng.random((self.population, self.lower.size)) * (self.upper - self.lower)


OPTIMIZERS = {
    "ga": GeneticOptimizer,
    "random": RandomSearchOptimizer,
}


@dataclass
class SnmSolution:
    """Resultado do SNM: especificação ótima, matriz Φn, profundidade e viabilidade"""
    spec: NullSpec
    matrix: PhaseMatrix
    depth: float
    per_zone: Dict[ZoneName, float]
    feasibility: Feasibility
    status: SolutionStatus
    history: List[float] = field(default_factory=list)
    generations: int = 0
    evaluations: int = 0
    seed: Optional[int] = None
    zones: Optional[ZoneModel] = None  # zonas em que a solução foi avaliada
    solved_at: datetime = field(default_factory=datetime.now)

    @property
    def feasible(self) -> bool:
        return self.status == SolutionStatus.FEASIBLE

    def zone_model(self, geometry: Optional[ZoneGeometry] = None) -> ZoneModel:
        """Zonas da avaliação ou, na falta delas, as centradas nos pontos focais"""
        return self.zones if self.zones is not None else aligned_zone_model(self.spec, geometry)

    def summary(self) -> Dict[str, Any]:
        return {
            "status": self.status.value,
            "objective": self.depth,
            "per_zone": {k.value: v for k, v in self.per_zone.items()},
            "constraints": self.feasibility.to_dict(),
            "spec": self.spec.to_dict(),
            "generations": self.generations,
            "evaluations": self.evaluations,
            "seed": self.seed,
            "matrix_digest": self.matrix.digest(),
        }


def null_contrast_db(scn: Scenario, solution: SnmSolution) -> float:
    """Quanto o |E| no centro fica abaixo da média dos quatro pontos focais (dB)"""
    points = [solution.spec.center, *focal_points(solution.spec)]
    e = np.abs(FieldKernel(scn, points).fields(solution.matrix))
    if e[0] == 0:
        return math.inf
    return 20.0 * math.log10(float(np.mean(e[1:])) / float(e[0]))


def _make_optimizer(optimizer: Union[str, Optimizer], bounds: SearchBounds, population: int,
                    seed_genes: np.ndarray) -> Optimizer:
    if isinstance(optimizer, Optimizer):
        return optimizer
    if optimizer not in OPTIMIZERS:
        raise NullingError(f"Otimizador desconhecido: {optimizer} (opções: {sorted(OPTIMIZERS)})")
    return OPTIMIZERS[optimizer](bounds.lower(), bounds.upper(), population=population,
                                 seed_genes=seed_genes)


def solve_snm(scn: Scenario, center: PolarPoint, zones: Optional[ZoneModel] = None,
              budget: int = 200, seed: int = 0, *, population: int = 64,
              optimizer: Union[str, Optimizer] = "ga", bounds: Optional[SearchBounds] = None,
              geometry: Optional[ZoneGeometry] = None, stagnation: int = 30,
              workers: int = 1, verbose: bool = True) -> SnmSolution:
    """
    Resolve o SNM por busca evolutiva semeada.

    Sem `zones`, cada candidato é avaliado nas zonas centradas nos seus
    pontos focais (`geometry` define raios, bandas e amostragem).

    O orçamento conta gerações, incluindo a população inicial. A busca para
    também após `stagnation` gerações sem melhora estrita da melhor fitness.
    Retorna o melhor candidato viável; sem candidato viável, retorna o melhor
    candidato penalizado com status INFEASIBLE.

    Raises:
        NullingError: centro fora do campo próximo ou orçamento < 1
    """
    if budget < 1:
        raise NullingError("budget deve ser ≥ 1")
    limit = fraunhofer_distance(scn.cfg)
    if center.r >= limit:
        raise NullingError(f"Centro r = {center.r} m fora do campo próximo ({limit:.2f} m)")
    bounds = bounds or SearchBounds()
    problem = NullingProblem(scn, zones, center, geometry=geometry)
    base = baseline_spec(center, geometry)
    opt = _make_optimizer(optimizer, bounds, population, base.genes())
    rng = np.random.default_rng(seed)

    history: List[float] = []
    best_feasible: Optional[Tuple[float, np.ndarray]] = None
    best_any: Optional[Tuple[float, np.ndarray]] = None
    evaluations = 0
    stale = 0
    generation = 0

    executor = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for generation in range(1, budget + 1):
            genes = opt.propose(rng)
            if executor is not None:
                results = list(executor.map(problem.fitness, genes))
            else:
                results = [problem.fitness(g) for g in genes]
            fitness = np.array([r[0] for r in results])
            feasible = np.array([r[1] for r in results])
            opt.tell(genes, fitness)
            evaluations += len(genes)

            improved = False
            i_any = int(np.argmin(fitness))
            if best_any is None or fitness[i_any] < best_any[0]:
                best_any = (float(fitness[i_any]), genes[i_any].copy())
                improved = True
            if feasible.any():
                masked = np.where(feasible, fitness, np.inf)
                i_feas = int(np.argmin(masked))
                if best_feasible is None or masked[i_feas] < best_feasible[0]:
                    best_feasible = (float(masked[i_feas]), genes[i_feas].copy())
            history.append(float(fitness.min()))

            stale = 0 if improved else stale + 1
            if stale >= stagnation:
                break
    finally:
        if executor is not None:
            executor.shutdown()

    chosen = best_feasible if best_feasible is not None else best_any
    spec = NullSpec.from_genes(center, chosen[1])
    status = SolutionStatus.FEASIBLE if best_feasible is not None else SolutionStatus.INFEASIBLE
    try:
        matrix, depth, feas = problem.evaluate(spec)
    except (NullingError, GeometryError):
        # apenas candidatos degenerados em todo o orçamento
        spec = base
        matrix, depth, feas = problem.evaluate(spec)
        status = SolutionStatus.FEASIBLE if feas.feasible else SolutionStatus.INFEASIBLE

    solution = SnmSolution(spec, matrix, depth.objective, depth.per_zone, feas, status,
                           history, generation, evaluations, seed, problem.zones_for(spec))
    if verbose:
        marker = "✓" if solution.feasible else "⚠️"
        print(f"{marker} SNM concluído: objetivo {solution.depth:.4f}, status {status.value}, "
              f"{generation} gerações, {evaluations} avaliações (seed {seed})")
    return solution
