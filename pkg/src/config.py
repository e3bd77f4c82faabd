"""
Secure Location Modulation - Configuração e Presets
Author: Gabriel Demetrios Lafis
Year: 2025

Este módulo define os presets de cenário (arranjo, alimentador, Bob, enlace,
limiar EVM0, nulling e grade de varredura) e o formato de arquivo INI que os
serializa. Precedência: preset < arquivo de configuração < flags da CLI.
"""

from configparser import ConfigParser, Error as ConfigParserError
from dataclasses import dataclass, field, replace
from io import StringIO
from typing import Dict, List, Optional, Tuple
import math

try:
    from .errors import ConfigError, SlmError
    from .geometry import ArrayConfig, PolarPoint
    from .field_engine import Scenario
    from .nulling import ZoneGeometry
    from .temporal import DEFAULT_EVM0
    from .link_sim import LinkConfig
except ImportError:
    from errors import ConfigError, SlmError
    from geometry import ArrayConfig, PolarPoint
    from field_engine import Scenario
    from nulling import ZoneGeometry
    from temporal import DEFAULT_EVM0
    from link_sim import LinkConfig


def _axis(start: float, stop: float, step: float) -> List[float]:
    count = int(round((stop - start) / step)) + 1
    return [round(start + i * step, 9) for i in range(count)]


@dataclass(frozen=True)
class SweepGrid:
    """Grade polar (r em m, theta em graus) com sub-grade refinada opcional"""
    r_min: float
    r_max: float
    r_step: float
    theta_min_deg: float
    theta_max_deg: float
    theta_step_deg: float
    refined: Optional["SweepGrid"] = None

    def __post_init__(self):
        if not (self.r_step > 0 and self.theta_step_deg > 0):
            raise ConfigError("Passos da grade devem ser positivos")
        if not (self.r_max > self.r_min and self.theta_max_deg > self.theta_min_deg):
            raise ConfigError("Faixas da grade devem ser não degeneradas (max > min)")
        if self.r_min <= 0:
            raise ConfigError("r_min deve ser positivo")

    def radii(self) -> List[float]:
        return _axis(self.r_min, self.r_max, self.r_step)

    def angles(self) -> List[float]:
        return _axis(self.theta_min_deg, self.theta_max_deg, self.theta_step_deg)

    def points(self) -> List[Tuple[float, float]]:
        """Pontos (r, theta_deg) sem duplicatas, ordenados por (r, theta)"""
        unique: Dict[Tuple[int, int], Tuple[float, float]] = {}
        grids = [self] + ([self.refined] if self.refined is not None else [])
        for grid in grids:
            for r in grid.radii():
                for t in grid.angles():
                    unique.setdefault((round(r * 1e6), round(t * 1e6)), (r, t))
        return [unique[k] for k in sorted(unique)]

    def polar_points(self) -> List[PolarPoint]:
        return [PolarPoint.from_degrees(r, t) for r, t in self.points()]

    def __len__(self) -> int:
        return len(self.points())


@dataclass(frozen=True)
class NullingSettings:
    generations: int = 200
    population: int = 64
    geometry: ZoneGeometry = field(default_factory=ZoneGeometry)

    def __post_init__(self):
        if self.generations < 1 or self.population < 2:
            raise ConfigError("generations ≥ 1 e population ≥ 2 são obrigatórios")


@dataclass(frozen=True)
class ScenarioPreset:
    """Conjunto nomeado de todos os parâmetros de um experimento"""
    name: str
    array: ArrayConfig
    feed: PolarPoint
    bob: PolarPoint
    link: LinkConfig
    sweep: SweepGrid
    nulling: NullingSettings = field(default_factory=NullingSettings)
    evm0: Optional[float] = None
    ratio: Optional[int] = None
    library_count: int = 32
    library_length: int = 64

    def __post_init__(self):
        if self.evm0 is not None and not self.evm0 > 0:
            raise ConfigError(f"evm0 deve ser positivo (recebido {self.evm0})")
        if self.ratio is not None and (int(self.ratio) != self.ratio or self.ratio < 1):
            raise ConfigError(f"ratio deve ser inteiro ≥ 1 (recebido {self.ratio})")
        if self.library_count < 1 or self.library_length < 2:
            raise ConfigError("library_count ≥ 1 e library_length ≥ 2 são obrigatórios")

    @property
    def effective_evm0(self) -> float:
        if self.evm0 is not None:
            return self.evm0
        return DEFAULT_EVM0[self.link.modulation.upper()]

    def scenario(self) -> Scenario:
        return Scenario(self.array, self.feed)


PROTOTYPE = ScenarioPreset(
    name="prototype",
    array=ArrayConfig(rows=14, cols=56, dx=0.0278, dy=0.0278, frequency=5.8e9),
    feed=PolarPoint.from_degrees(0.8, 0.0),
    bob=PolarPoint.from_degrees(1.6, 0.0),
    link=LinkConfig(modulation="8PSK", symbol_rate=125e3, slot_width=2e-6, snr_db=30.0,
                    tracking_window=50, data_bits=1_000_000),
    sweep=SweepGrid(1.0, 3.0, 0.2, -90.0, 90.0, 10.0,
                    refined=SweepGrid(1.4, 1.8, 0.1, -20.0, 20.0, 5.0)),
)

COMPACT = ScenarioPreset(
    name="compact",
    array=ArrayConfig(rows=8, cols=16, dx=0.0278, dy=0.0278, frequency=5.8e9),
    feed=PolarPoint.from_degrees(0.5, 0.0),
    bob=PolarPoint.from_degrees(1.0, 0.0),
    link=LinkConfig(modulation="8PSK", symbol_rate=125e3, slot_width=2e-6, snr_db=30.0,
                    tracking_window=50, data_bits=30_000),
    sweep=SweepGrid(0.6, 1.4, 0.2, -40.0, 40.0, 20.0),
    nulling=NullingSettings(generations=40, population=24),
    library_count=8,
    library_length=32,
)

PRESETS: Dict[str, ScenarioPreset] = {p.name: p for p in (PROTOTYPE, COMPACT)}
PRESET_ALIASES = {"paper": "prototype"}

# chaves em que um valor vazio significa "não definido"
_OPTIONAL_KEYS = {("slm", "evm0"), ("slm", "ratio")}
_REFINED_KEYS = {"refined_r_min", "refined_r_max", "refined_r_step",
                 "refined_theta_min_deg", "refined_theta_max_deg", "refined_theta_step_deg"}


def get_preset(name: str) -> ScenarioPreset:
    """
    Raises:
        ConfigError: preset desconhecido
    """
    key = PRESET_ALIASES.get(name, name)
    if key not in PRESETS:
        known = ", ".join(sorted(list(PRESETS) + list(PRESET_ALIASES)))
        raise ConfigError(f"Preset desconhecido '{name}' (disponíveis: {known})")
    return PRESETS[key]


def _sections(p: ScenarioPreset) -> Dict[str, Dict[str, str]]:
    g = p.nulling.geometry
    s = p.sweep
    sweep = {
        "r_min": repr(s.r_min), "r_max": repr(s.r_max), "r_step": repr(s.r_step),
        "theta_min_deg": repr(s.theta_min_deg), "theta_max_deg": repr(s.theta_max_deg),
        "theta_step_deg": repr(s.theta_step_deg),
    }
    if s.refined is not None:
        f = s.refined
        sweep.update({
            "refined_r_min": repr(f.r_min), "refined_r_max": repr(f.r_max),
            "refined_r_step": repr(f.r_step), "refined_theta_min_deg": repr(f.theta_min_deg),
            "refined_theta_max_deg": repr(f.theta_max_deg),
            "refined_theta_step_deg": repr(f.theta_step_deg),
        })
    return {
        "preset": {"name": p.name},
        "array": {"rows": str(p.array.rows), "cols": str(p.array.cols), "dx": repr(p.array.dx),
                  "dy": repr(p.array.dy), "frequency": repr(p.array.frequency)},
        "scenario": {"feed_r": repr(p.feed.r), "feed_theta_deg": repr(p.feed.theta_deg),
                     "bob_r": repr(p.bob.r), "bob_theta_deg": repr(p.bob.theta_deg)},
        "link": {"modulation": p.link.modulation, "symbol_rate": repr(p.link.symbol_rate),
                 "slot_width": repr(p.link.slot_width), "snr_db": repr(p.link.snr_db),
                 "eve_noise_offset_db": repr(p.link.eve_noise_offset_db),
                 "tracking_window": str(p.link.tracking_window),
                 "pilot_interval": str(p.link.pilot_interval), "data_bits": str(p.link.data_bits)},
        "slm": {"evm0": "" if p.evm0 is None else repr(p.evm0),
                "ratio": "" if p.ratio is None else str(p.ratio),
                "library_count": str(p.library_count), "library_length": str(p.library_length)},
        "nulling": {"generations": str(p.nulling.generations), "population": str(p.nulling.population),
                    "nominal_dr": repr(g.nominal_dr),
                    "nominal_dtheta_deg": repr(math.degrees(g.nominal_dtheta)),
                    "null_radius": repr(g.null_radius), "null_angle_deg": repr(math.degrees(g.null_angle)),
                    "band_radius": repr(g.band_radius), "band_angle_deg": repr(math.degrees(g.band_angle)),
                    "samples": str(g.samples)},
        "sweep": sweep,
    }


def dump_config(preset: ScenarioPreset) -> str:
    """Serializa um preset no formato INI"""
    parser = ConfigParser(interpolation=None)
    for section, values in _sections(preset).items():
        parser[section] = values
    out = StringIO()
    parser.write(out)
    return out.getvalue()


def _angle(value: float, reference: float) -> float:
    """Converte graus para rad mantendo o valor original quando ida e volta coincidem"""
    return reference if math.degrees(reference) == value else math.radians(value)


def load_config(text: str, base: Optional[ScenarioPreset] = None) -> ScenarioPreset:
    """
    Sobrepõe as chaves presentes no texto INI ao preset base (o indicado em
    [preset] name, ou prototype).

    Raises:
        ConfigError: seção ou chave desconhecida, valor inválido
    """
    parser = ConfigParser(interpolation=None)
    try:
        parser.read_string(text)
    except ConfigParserError as e:
        raise ConfigError(f"Arquivo de configuração malformado: {e}") from e

    if base is None:
        base = get_preset(parser.get("preset", "name", fallback="prototype"))
    known = _sections(base)
    for section in parser.sections():
        if section not in known:
            raise ConfigError(f"Seção desconhecida [{section}]")
        for key in parser[section]:
            if key not in known[section] and not (section == "sweep" and key in _REFINED_KEYS):
                raise ConfigError(f"Chave desconhecida '{key}' em [{section}]")

    def get(section: str, key: str, default, cast):
        if not parser.has_option(section, key):
            return default
        raw = parser.get(section, key).strip()
        if raw == "" and (default is None or (section, key) in _OPTIONAL_KEYS):
            return None
        try:
            return cast(raw)
        except ValueError as e:
            raise ConfigError(f"Valor inválido para [{section}] {key}: '{raw}'") from e

    try:
        a = base.array
        array = ArrayConfig(get("array", "rows", a.rows, int), get("array", "cols", a.cols, int),
                            get("array", "dx", a.dx, float), get("array", "dy", a.dy, float),
                            get("array", "frequency", a.frequency, float))
        feed = PolarPoint(get("scenario", "feed_r", base.feed.r, float),
                          _angle(get("scenario", "feed_theta_deg", base.feed.theta_deg, float), base.feed.theta))
        bob = PolarPoint(get("scenario", "bob_r", base.bob.r, float),
                         _angle(get("scenario", "bob_theta_deg", base.bob.theta_deg, float), base.bob.theta))
        lk = base.link
        link = replace(
            lk,
            modulation=get("link", "modulation", lk.modulation, str).upper(),
            symbol_rate=get("link", "symbol_rate", lk.symbol_rate, float),
            slot_width=get("link", "slot_width", lk.slot_width, float),
            snr_db=get("link", "snr_db", lk.snr_db, float),
            eve_noise_offset_db=get("link", "eve_noise_offset_db", lk.eve_noise_offset_db, float),
            tracking_window=get("link", "tracking_window", lk.tracking_window, int),
            pilot_interval=get("link", "pilot_interval", lk.pilot_interval, int),
            data_bits=get("link", "data_bits", lk.data_bits, int),
        )
        g = base.nulling.geometry
        geometry = ZoneGeometry(
            nominal_dr=get("nulling", "nominal_dr", g.nominal_dr, float),
            nominal_dtheta=_angle(get("nulling", "nominal_dtheta_deg", math.degrees(g.nominal_dtheta), float),
                                  g.nominal_dtheta),
            null_radius=get("nulling", "null_radius", g.null_radius, float),
            null_angle=_angle(get("nulling", "null_angle_deg", math.degrees(g.null_angle), float), g.null_angle),
            band_radius=get("nulling", "band_radius", g.band_radius, float),
            band_angle=_angle(get("nulling", "band_angle_deg", math.degrees(g.band_angle), float), g.band_angle),
            samples=get("nulling", "samples", g.samples, int),
        )
        nulling = NullingSettings(get("nulling", "generations", base.nulling.generations, int),
                                  get("nulling", "population", base.nulling.population, int), geometry)
        s = base.sweep
        refined = s.refined
        refined_keys = [k for k in parser["sweep"] if k.startswith("refined_")] \
            if parser.has_section("sweep") else []
        if refined_keys:
            r0 = refined or s
            refined = SweepGrid(
                get("sweep", "refined_r_min", r0.r_min, float), get("sweep", "refined_r_max", r0.r_max, float),
                get("sweep", "refined_r_step", r0.r_step, float),
                get("sweep", "refined_theta_min_deg", r0.theta_min_deg, float),
                get("sweep", "refined_theta_max_deg", r0.theta_max_deg, float),
                get("sweep", "refined_theta_step_deg", r0.theta_step_deg, float))
        sweep = SweepGrid(
            get("sweep", "r_min", s.r_min, float), get("sweep", "r_max", s.r_max, float),
            get("sweep", "r_step", s.r_step, float), get("sweep", "theta_min_deg", s.theta_min_deg, float),
            get("sweep", "theta_max_deg", s.theta_max_deg, float),
            get("sweep", "theta_step_deg", s.theta_step_deg, float), refined)
        return ScenarioPreset(
            name=get("preset", "name", base.name, str),
            array=array, feed=feed, bob=bob, link=link, sweep=sweep, nulling=nulling,
            evm0=get("slm", "evm0", base.evm0, float),
            ratio=get("slm", "ratio", base.ratio, int),
            library_count=get("slm", "library_count", base.library_count, int),
            library_length=get("slm", "library_length", base.library_length, int),
        )
    except ConfigError:
        raise
    except (SlmError, KeyError) as e:
        raise ConfigError(f"Configuração inválida: {e}") from e


def read_config_file(path: str, base: Optional[ScenarioPreset] = None) -> ScenarioPreset:
    """
    Raises:
        ConfigError: arquivo inexistente ou ilegível
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            return load_config(f.read(), base)
    except OSError as e:
        raise ConfigError(f"Não foi possível ler {path}: {e}") from e
