"""
Secure Location Modulation - Focalização de Feixe
Author: Gabriel Demetrios Lafis
Year: 2025

Este módulo sintetiza a matriz de fase espacial de focalização por compensação
de fase de onda esférica e fornece o campo de referência E_ref usado no
cálculo de EVM.

    φ_mn = (2π/λ)·(r_feed_mn + r_reflect_mn − r0_feed − r0_reflect)

onde os termos r0 são medidos a partir do centro O do arranjo. A fase ideal
é quantizada diretamente, sem deslocamento de centralização dos intervalos.
"""

from typing import Union
import math

import numpy as np

try:
    from .errors import GeometryError
    from .geometry import CartesianPoint, PolarPoint, element_position, path_length
    from .field_engine import (PhaseMatrix, Scenario, as_cartesian, compute_field,
                               quantize_code)
except ImportError:
    from errors import GeometryError
    from geometry import CartesianPoint, PolarPoint, element_position, path_length
    from field_engine import (PhaseMatrix, Scenario, as_cartesian, compute_field,
                              quantize_code)


Point = Union[CartesianPoint, PolarPoint]

_ORIGIN = CartesianPoint(0.0, 0.0, 0.0)


def ideal_focus_phase(scn: Scenario, focus: Point, m: int, n: int) -> float:
    """
    Fase de compensação ideal (rad, não quantizada) do elemento (m, n).

    Raises:
        GeometryError: índice fora da faixa ou foco coincidente com o elemento
    """
    focus = as_cartesian(focus)
    p = element_position(scn.cfg, m, n)
    r_reflect = path_length(p, focus)
    if r_reflect == 0:
        raise GeometryError(f"Foco {focus} coincide com o elemento ({m}, {n})")
    r_feed = path_length(p, scn.feed)
    r0 = path_length(_ORIGIN, scn.feed) + path_length(_ORIGIN, focus)
    return scn.cfg.wavenumber * (r_feed + r_reflect - r0)


def ideal_focus_phases(scn: Scenario, focus: Point) -> np.ndarray:
    """Fases ideais de todos os elementos, matriz (M, N)"""
    focus = as_cartesian(focus)
    rr = scn.reflect_distance(focus)
    if np.any(rr == 0):
        raise GeometryError(f"Foco {focus} coincide com um elemento do arranjo")
    r0 = scn.feed_reference + math.sqrt(focus.x ** 2 + focus.y ** 2 + focus.z ** 2)
    return scn.cfg.wavenumber * (scn.feed_distance + rr - r0)


def focus_matrix(scn: Scenario, focus: Point) -> PhaseMatrix:
    """Matriz de fase de focalização Φf (quantizada em 2 bits)"""
    return PhaseMatrix(quantize_code(ideal_focus_phases(scn, focus)))


def ideal_focus_values(scn: Scenario, focus: Point) -> np.ndarray:
    """Coeficientes de reflexão não quantizados exp(jφ)"""
    return np.exp(1j * ideal_focus_phases(scn, focus))


def reference_field(scn: Scenario, focus: Point, target: Point) -> complex:
    """Campo de referência ideal E_ref no alvo sob a matriz de focalização"""
    return compute_field(scn, focus_matrix(scn, focus), target)


def focus_gain(scn: Scenario, focus: Point) -> float:
    """
    Razão |E(foco)| quantizado / |E(foco)| ideal.

    Com fases ideais todos os termos chegam em fase e |E| = Σ 1/(r_feed·r_reflect).
    """
    focus = as_cartesian(focus)
    rr = scn.reflect_distance(focus)
    ideal = float(np.sum(1.0 / (scn.feed_distance * rr)))
    return abs(compute_field(scn, focus_matrix(scn, focus), focus)) / ideal
