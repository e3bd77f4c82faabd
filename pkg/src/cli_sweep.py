"""
Secure Location Modulation - CLI e Varreduras
Author: Gabriel Demetrios Lafis
Year: 2025

Este módulo é a superfície de uso do simulador: subcomandos para síntese de
matrizes, construção de biblioteca, varreduras espaciais (EVM, BER, campo),
simulação de enlace e os experimentos de ablação, τ, razão e modulação.

Todas as saídas tabulares são CSV com cabeçalho `r_m,theta_deg,metric,value,seed`,
ordenadas por (r, theta), com quebras de linha LF. Códigos de saída:
0 sucesso, 1 erro de configuração/uso, 2 otimização inviável.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple
import argparse
import csv
import json
import math
import sys

import numpy as np

try:
    from .errors import ConfigError, InfeasibleSolutionError, SlmError
    from .geometry import PolarPoint, fraunhofer_distance
    from .field_engine import STATE_VALUES, FieldKernel, PhaseMatrix, compute_field_grid
    from .focusing import focus_gain, focus_matrix
    from .nulling import ZONE_ORDER, null_contrast_db, solve_snm
    from .temporal import (DEFAULT_EVM0, FOCUS, REFERENCE_FLOOR, SlmStream, SlotProgram,
                           save_library, slm_pipeline)
    from .link_sim import LinkConfig, LinkResult, link_bits, run_link, secrecy_capacity
    from .config import (PRESET_ALIASES, PRESETS, ScenarioPreset, dump_config,
                         get_preset, read_config_file)
except ImportError:
    from errors import ConfigError, InfeasibleSolutionError, SlmError
    from geometry import PolarPoint, fraunhofer_distance
    from field_engine import STATE_VALUES, FieldKernel, PhaseMatrix, compute_field_grid
    from focusing import focus_gain, focus_matrix
    from nulling import ZONE_ORDER, null_contrast_db, solve_snm
    from temporal import (DEFAULT_EVM0, FOCUS, REFERENCE_FLOOR, SlmStream, SlotProgram,
                          save_library, slm_pipeline)
    from link_sim import LinkConfig, LinkResult, link_bits, run_link, secrecy_capacity
    from config import (PRESET_ALIASES, PRESETS, ScenarioPreset, dump_config,
                        get_preset, read_config_file)


CSV_HEADER = ["r_m", "theta_deg", "metric", "value", "seed"]

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_INFEASIBLE = 2


class AblationMode(Enum):
    """Configurações do experimento de necessidade do ruído"""
    RIS_OFF = "ris-off"        # matriz uniforme, sem focalização
    FOCUS_ONLY = "focus-only"  # Φf com sequência constante
    FULL_SLM = "slm"           # focalização + nulling intercalados


@dataclass(frozen=True)
class HeatmapRow:
    r_m: float
    theta_deg: float
    metric: str
    value: float
    seed: Optional[int]


def _fmt(value: float) -> str:
    return repr(float(value))


def write_heatmap_csv(rows: Iterable[HeatmapRow], path: str) -> int:
    """
    Escreve as linhas ordenadas por (r, theta) (ordenação estável).

    Returns:
        Número de linhas de dados escritas
    """
    ordered = sorted(rows, key=lambda row: (row.r_m, row.theta_deg))
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in ordered:
            writer.writerow([_fmt(row.r_m), _fmt(row.theta_deg), row.metric, _fmt(row.value),
                             "" if row.seed is None else str(row.seed)])
    return len(ordered)


def secure_area(rows: Sequence[HeatmapRow], threshold: float, bob: Tuple[float, float],
                metric: str = "ber") -> Optional[Dict[str, Any]]:
    """
    Região segura: pontos da grade com métrica abaixo do limiar conectados ao
    ponto da grade mais próximo de Bob (vizinhança ao longo de r e de theta).
    Retorna a caixa (r, theta) da região, ou None se Bob não estiver abaixo do limiar.
    """
    values = {(row.r_m, row.theta_deg): row.value for row in rows if row.metric == metric}
    if not values:
        return None
    start = min(values, key=lambda p: (abs(p[0] - bob[0]), abs(p[1] - bob[1])))
    if not values[start] < threshold:
        return None

    by_theta: Dict[float, List[float]] = {}
    by_r: Dict[float, List[float]] = {}
    for r, t in values:
        by_theta.setdefault(t, []).append(r)
        by_r.setdefault(r, []).append(t)
    for axis in list(by_theta.values()) + list(by_r.values()):
        axis.sort()

    def neighbours(p):
        r, t = p
        rs, ts = by_theta[t], by_r[r]
        i, j = rs.index(r), ts.index(t)
        for k in (i - 1, i + 1):
            if 0 <= k < len(rs):
                yield rs[k], t
        for k in (j - 1, j + 1):
            if 0 <= k < len(ts):
                yield r, ts[k]

    region = {start}
    frontier = [start]
    while frontier:
        p = frontier.pop()
        for q in neighbours(p):
            if q not in region and values[q] < threshold:
                region.add(q)
                frontier.append(q)
    rs = [p[0] for p in region]
    ts = [p[1] for p in region]
    return {"r_min": min(rs), "r_max": max(rs), "theta_min_deg": min(ts),
            "theta_max_deg": max(ts), "points": len(region)}


def _ordered_map(fn: Callable, items: Sequence, workers: int) -> List:
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(fn, items))
    return [fn(item) for item in items]


def _parse_ratios(text: str) -> List[int]:
    """'1..9' ou '1,2,5'"""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"lista de razões inválida: '{text}'") from e
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError("razões devem ser inteiros ≥ 1")
    return values


def _parse_floats(text: str) -> List[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"lista numérica inválida: '{text}'") from e
    if not values or min(values) <= 0:
        raise argparse.ArgumentTypeError("valores devem ser positivos")
    return values


def _parse_names(text: str) -> List[str]:
    return [v.strip().upper() for v in text.split(",") if v.strip()]


class SlmArgumentParser(argparse.ArgumentParser):
    """Erros de uso saem com código 1"""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"✗ {message}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


def _common(p: argparse.ArgumentParser, seeded: bool) -> None:
    p.add_argument("--preset", default="prototype", help="prototype (alias paper) ou compact")
    p.add_argument("--config", help="Arquivo INI que sobrepõe o preset")
    if seeded:
        p.add_argument("--seed", type=int, required=True, help="Semente mestre (obrigatória)")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--generations", type=int, help="Orçamento do SNM (gerações)")
        p.add_argument("--population", type=int)
        p.add_argument("--modulation")
        p.add_argument("--snr-db", type=float)
        p.add_argument("--eve-noise-offset-db", type=float)
        p.add_argument("--slot-width", type=float, help="τ em segundos")
        p.add_argument("--data-bits", type=int)
        p.add_argument("--tracking-window", type=int)
        p.add_argument("--pilot-interval", type=int)
        p.add_argument("--evm0", type=float)
        ratio = p.add_mutually_exclusive_group()
        ratio.add_argument("--ratio", type=int,
                           help="Razão K_focus/K_null fixa; usa só as sequências cujos limites a contêm")
        ratio.add_argument("--bound-ratios", action="store_true",
                           help="Sorteia razões dentro dos limites (padrão; anula a razão do --config)")
        p.add_argument("--library-count", type=int)
        p.add_argument("--library-length", type=int)
    p.add_argument("--bob-r", type=float)
    p.add_argument("--bob-theta", type=float, help="graus")


def build_parser() -> argparse.ArgumentParser:
    parser = SlmArgumentParser(prog="ris-slm", description="Simulador de Secure Location Modulation")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="Geometria, fronteira de campo próximo e presets")
    _common(p, seeded=False)
    p.add_argument("--dump-config", action="store_true", help="Imprime o preset em formato INI")

    p = sub.add_parser("synth-focus", help="Sintetiza Φf para Bob")
    _common(p, seeded=False)
    p.add_argument("--out", default="focus_matrix.csv")

    for name, default, help_text in (
            ("synth-null", "null_matrix.csv", "Resolve o SNM centrado em Bob"),
            ("build-library", "library.txt", "Constrói a biblioteca de sequências perturbadas"),
            ("sweep-evm", "sweep_evm.csv", "EVM do programa intercalado na grade"),
            ("sweep-ber", "sweep_ber.csv", "BER na grade"),
            ("sweep-field", "sweep_field.csv", "|E|² (dB) de Φf e Φn na grade"),
            ("simulate-link", "constellation.csv", "Enlace em um ponto, com constelação"),
            ("ablation", "ablation.csv", "RIS desligada / só focalização / SLM completo"),
            ("sweep-tau", "sweep_tau.csv", "BER de Eve por largura de slot"),
            ("sweep-ratio", "sweep_ratio.csv", "BER de Eve por razão de slots"),
            ("sweep-modulation", "sweep_modulation.csv", "BER por esquema de modulação")):
        p = sub.add_parser(name, help=help_text)
        _common(p, seeded=True)
        p.add_argument("--out", default=default)
        if name == "sweep-ber":
            p.add_argument("--secure-threshold", type=float, default=1e-3)
        elif name == "simulate-link":
            p.add_argument("--target-r", type=float)
            p.add_argument("--target-theta", type=float, help="graus")
        elif name == "sweep-tau":
            p.add_argument("--taus", type=_parse_floats,
                           default=[2e-6, 8e-6, 8e-5, 8e-4, 2e-3, 2e-2, 4e-2])
        elif name == "sweep-ratio":
            p.add_argument("--ratios", type=_parse_ratios, default=list(range(1, 10)))
        elif name == "sweep-modulation":
            p.add_argument("--modulations", type=_parse_names, default=["BPSK", "QPSK", "8PSK", "16QAM"])
    return parser


def resolve_preset(args: argparse.Namespace) -> ScenarioPreset:
    """preset < arquivo de configuração < flags"""
    preset = get_preset(args.preset)
    if args.config:
        preset = read_config_file(args.config, base=preset)
    try:
        link_overrides = {
            key: getattr(args, attr)
            for key, attr in (("modulation", "modulation"), ("snr_db", "snr_db"),
                              ("eve_noise_offset_db", "eve_noise_offset_db"),
                              ("slot_width", "slot_width"), ("data_bits", "data_bits"),
                              ("tracking_window", "tracking_window"),
                              ("pilot_interval", "pilot_interval"))
            if getattr(args, attr, None) is not None
        }
        if "modulation" in link_overrides:
            link_overrides["modulation"] = link_overrides["modulation"].upper()
        if link_overrides:
            preset = replace(preset, link=replace(preset.link, **link_overrides))
        if args.bob_r is not None or args.bob_theta is not None:
            r = preset.bob.r if args.bob_r is None else args.bob_r
            t = preset.bob.theta_deg if args.bob_theta is None else args.bob_theta
            preset = replace(preset, bob=PolarPoint.from_degrees(r, t))
        nulling = {k: getattr(args, k) for k in ("generations", "population")
                   if getattr(args, k, None) is not None}
        if nulling:
            preset = replace(preset, nulling=replace(preset.nulling, **nulling))
        slm = {k: getattr(args, k) for k in ("evm0", "ratio", "library_count", "library_length")
               if getattr(args, k, None) is not None}
        if getattr(args, "bound_ratios", False):
            slm["ratio"] = None
        if slm:
            preset = replace(preset, **slm)
    except ConfigError:
        raise
    except SlmError as e:
        raise ConfigError(f"Parâmetro inválido: {e}") from e
    if getattr(args, "workers", 1) < 1:
        raise ConfigError("--workers deve ser ≥ 1")
    return preset


def _link_config(preset: ScenarioPreset, seed: int, **overrides) -> LinkConfig:
    return replace(preset.link, seed=seed, **overrides)


def _pipeline(preset: ScenarioPreset, args, evm0: Optional[float] = None, fixed_ratio="preset",
              solution=None, verbose: bool = True) -> SlmStream:
    return slm_pipeline(
        preset.scenario(), preset.bob, preset.effective_evm0 if evm0 is None else evm0, args.seed,
        geometry=preset.nulling.geometry, generations=preset.nulling.generations,
        population=preset.nulling.population, library_count=preset.library_count,
        library_length=preset.library_length, slot_width=preset.link.slot_width,
        fixed_ratio=preset.ratio if fixed_ratio == "preset" else fixed_ratio,
        solution=solution, workers=args.workers, verbose=verbose)


class PointLinks:
    """Enlaces em um conjunto de pontos compartilhando bits, slots e piso de ruído"""

    def __init__(self, preset: ScenarioPreset, focus_m: PhaseMatrix, null_m: PhaseMatrix,
                 cfg: LinkConfig, workers: int = 1):
        self.preset = preset
        self.scn = preset.scenario()
        self.focus_m = focus_m
        self.null_m = null_m
        self.cfg = cfg
        self.workers = workers
        self.bits = link_bits(cfg)
        # piso de ruído absoluto definido pelo campo de focalização em Bob
        self.noise_reference = complex(FieldKernel(self.scn, [preset.bob]).fields(
            focus_matrix(self.scn, preset.bob))[0])

    def slots_for(self, program) -> Any:
        """Um SlotProgram é repetido; um SlmStream é materializado uma vez para todos os pontos"""
        if isinstance(program, SlotProgram):
            return program
        n_symbols = self.bits.size // self.cfg.scheme.bits_per_symbol
        return program.slots(self.cfg.slots_needed(n_symbols))

    def run(self, points: Sequence[PolarPoint], program) -> List[LinkResult]:
        slots = self.slots_for(program)
        bob = self.preset.bob

        def _one(item):
            index, p = item
            is_bob = (round(p.r, 9), round(p.theta_deg, 9)) == (round(bob.r, 9), round(bob.theta_deg, 9))
            return run_link(self.scn, slots, self.focus_m, self.null_m, p, self.cfg,
                            noise_reference=self.noise_reference,
                            noise_offset_db=0.0 if is_bob else self.cfg.eve_noise_offset_db,
                            point_index=index, bits=self.bits)

        return _ordered_map(_one, list(enumerate(points)), self.workers)


def _mean_ber(results: Sequence[LinkResult]) -> float:
    return float(np.mean([r.ber for r in results]))


def _bob_row(preset: ScenarioPreset, metric: str, value: float, seed: int) -> HeatmapRow:
    return HeatmapRow(preset.bob.r, round(preset.bob.theta_deg, 9), metric, value, seed)


def cmd_info(args, preset: ScenarioPreset) -> int:
    cfg = preset.array
    info = {
        "preset": preset.name,
        "array": f"{cfg.rows}×{cfg.cols}",
        "pitch_mm": [cfg.dx * 1e3, cfg.dy * 1e3],
        "frequency_ghz": cfg.frequency / 1e9,
        "wavelength_mm": cfg.wavelength * 1e3,
        "near_field_boundary_m": fraunhofer_distance(cfg),
        "feed": {"r_m": preset.feed.r, "theta_deg": preset.feed.theta_deg},
        "bob": {"r_m": preset.bob.r, "theta_deg": preset.bob.theta_deg},
        "modulation": preset.link.modulation,
        "evm0": preset.effective_evm0,
        "ratio": preset.ratio,
        "grid_points": len(preset.sweep),
        "presets": sorted(PRESETS),
        "aliases": dict(PRESET_ALIASES),
    }
    if args.dump_config:
        print(dump_config(preset), end="")
    else:
        print(f"ℹ️ Arranjo {cfg.rows}×{cfg.cols}, λ = {cfg.wavelength * 1e3:.1f} mm, "
              f"fronteira de campo próximo = {fraunhofer_distance(cfg):.1f} m")
        print(json.dumps(info, indent=2, ensure_ascii=False))
    return EXIT_OK


def cmd_synth_focus(args, preset: ScenarioPreset) -> int:
    scn = preset.scenario()
    matrix = focus_matrix(scn, preset.bob)
    with open(args.out, "w", encoding="utf-8", newline="\n") as f:
        f.write(matrix.to_text())
    print(f"✓ Φf para ({preset.bob.r} m, {preset.bob.theta_deg:.1f}°) salva em {args.out} "
          f"(digest {matrix.digest()}, ganho de quantização {focus_gain(scn, preset.bob):.3f})")
    return EXIT_OK


def cmd_synth_null(args, preset: ScenarioPreset) -> int:
    scn = preset.scenario()
    solution = solve_snm(scn, preset.bob, budget=preset.nulling.generations, seed=args.seed,
                         population=preset.nulling.population, geometry=preset.nulling.geometry,
                         workers=args.workers)
    summary = solution.summary()
    summary["null_contrast_db"] = null_contrast_db(scn, solution)
    print(json.dumps(summary, indent=2, ensure_ascii=False))
    if not solution.feasible:
        raise InfeasibleSolutionError("SNM sem candidato viável", solution)
    with open(args.out, "w", encoding="utf-8", newline="\n") as f:
        f.write(solution.matrix.to_text())
    print(f"✓ Φn salva em {args.out}")
    return EXIT_OK


def cmd_build_library(args, preset: ScenarioPreset) -> int:
    stream = _pipeline(preset, args)
    save_library(stream.library, args.out)
    print(json.dumps(stream.summary(), indent=2, ensure_ascii=False))
    print(f"✓ Biblioteca salva em {args.out}")
    return EXIT_OK


def cmd_sweep_evm(args, preset: ScenarioPreset) -> int:
    stream = _pipeline(preset, args)
    points = preset.sweep.polar_points()
    kernel = FieldKernel(preset.scenario(), points)
    e_ref = kernel.fields(stream.focus_matrix)
    e_null = kernel.fields(stream.null_matrix)
    ratio = preset.ratio or max((max(r) for r in stream.ratios.values() if r), default=1)
    selectors = stream.slots(sum(len(e.sequence) for e in stream.library.entries) * (ratio + 1))
    null_factors = STATE_VALUES[selectors[selectors != FOCUS]]
    peak = abs(complex(FieldKernel(preset.scenario(), [preset.bob]).fields(stream.focus_matrix)[0]))

    def _evm(i):
        if abs(e_ref[i]) <= REFERENCE_FLOOR * peak:
            return float("nan")
        err = np.sum(np.abs(null_factors * e_null[i] - e_ref[i]) ** 2)
        return math.sqrt(float(err) / (selectors.size * abs(e_ref[i]) ** 2))

    values = _ordered_map(_evm, list(range(len(points))), args.workers)
    rows = [HeatmapRow(r, t, "evm", v, args.seed) for (r, t), v in zip(preset.sweep.points(), values)]
    n = write_heatmap_csv(rows, args.out)
    print(f"✓ {n} pontos de EVM salvos em {args.out}")
    return EXIT_OK


def cmd_sweep_ber(args, preset: ScenarioPreset) -> int:
    stream = _pipeline(preset, args)
    links = PointLinks(preset, stream.focus_matrix, stream.null_matrix,
                       _link_config(preset, args.seed), args.workers)
    results = links.run(preset.sweep.polar_points(), stream)
    rows = [HeatmapRow(r, t, "ber", res.ber, args.seed)
            for (r, t), res in zip(preset.sweep.points(), results)]
    n = write_heatmap_csv(rows, args.out)
    print(f"✓ {n} pontos de BER salvos em {args.out}")
    area = secure_area(rows, args.secure_threshold, (preset.bob.r, preset.bob.theta_deg))
    if area is None:
        print(f"⚠️ BER em Bob acima do limiar {args.secure_threshold:g}")
    else:
        print(f"ℹ️ Área segura (BER < {args.secure_threshold:g}): {json.dumps(area)}")
    return EXIT_OK


def cmd_sweep_field(args, preset: ScenarioPreset) -> int:
    stream = _pipeline(preset, args)
    scn = preset.scenario()
    fields = {}
    for label, matrix in (("focus_power_db", stream.focus_matrix), ("null_power_db", stream.null_matrix)):
        fields[label] = np.array(compute_field_grid(scn, matrix, preset.sweep.polar_points(),
                                                    workers=args.workers))
    peak = abs(complex(FieldKernel(scn, [preset.bob]).fields(stream.focus_matrix)[0]))
    rows = []
    for i, (r, t) in enumerate(preset.sweep.points()):
        for label, values in fields.items():
            magnitude = abs(values[i])
            db = 20.0 * math.log10(magnitude / peak) if magnitude > 0 else float("-inf")
            rows.append(HeatmapRow(r, t, label, db, args.seed))
    n = write_heatmap_csv(rows, args.out)
    print(f"✓ {n} linhas de potência salvas em {args.out}")
    return EXIT_OK


def cmd_simulate_link(args, preset: ScenarioPreset) -> int:
    stream = _pipeline(preset, args)
    target = preset.bob
    if args.target_r is not None or args.target_theta is not None:
        target = PolarPoint.from_degrees(preset.bob.r if args.target_r is None else args.target_r,
                                         preset.bob.theta_deg if args.target_theta is None
                                         else args.target_theta)
    links = PointLinks(preset, stream.focus_matrix, stream.null_matrix,
                       _link_config(preset, args.seed), args.workers)
    bob_result = links.run([preset.bob], stream)[0]
    result = bob_result
    if target != preset.bob:
        result = links.run([target], stream)[0]
        if math.isfinite(bob_result.snr_measured) and math.isfinite(result.snr_measured):
            result.secrecy_bits = secrecy_capacity(bob_result.snr_measured, result.snr_measured)
    with open(args.out, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["index", "i", "q"])
        samples = result.rx_constellation
        if samples.ndim == 2:
            # BFSK: amostra do tom dominante
            samples = samples[np.arange(len(samples)), np.argmax(np.abs(samples), axis=1)]
        for k, s in enumerate(samples):
            writer.writerow([k, _fmt(s.real), _fmt(s.imag)])
    summary = result.summary()
    summary["target"] = {"r_m": target.r, "theta_deg": target.theta_deg}
    print(json.dumps(summary, indent=2, ensure_ascii=False))
    print(f"✓ Constelação salva em {args.out}")
    return EXIT_OK


def _zone_rows(preset: ScenarioPreset, links: PointLinks, program, zones, tag: str,
               seed: int) -> List[HeatmapRow]:
    """BER médio por subzona de cada zona principal, mais Bob e média de Eve"""
    groups: List[Tuple[str, List[PolarPoint]]] = [("bob", [preset.bob])]
    for name in ZONE_ORDER:
        zone = zones.zones[name]
        groups.append((f"{name.value}.nulling", zone.nulling))
        groups.append((f"{name.value}.high_gain", zone.high_gain))
        if zone.outer:
            groups.append((f"{name.value}.outer", zone.outer))
    points = [p for _, pts in groups for p in pts]
    results = links.run(points, program)
    rows, eve, offset = [], [], 0
    for label, pts in groups:
        chunk = results[offset:offset + len(pts)]
        offset += len(pts)
        rows.append(_bob_row(preset, f"{tag}.{label}_ber", _mean_ber(chunk), seed))
        if label.endswith(("high_gain", "outer")):
            eve.extend(chunk)
    rows.append(_bob_row(preset, f"{tag}.eve_mean_ber", _mean_ber(eve), seed))
    return rows


def cmd_ablation(args, preset: ScenarioPreset) -> int:
    stream = _pipeline(preset, args)
    cfg = _link_config(preset, args.seed)
    off = PhaseMatrix.uniform(preset.array, 0)
    constant = SlotProgram.focus_only(1)
    setups = {
        AblationMode.RIS_OFF: (off, off, constant),
        AblationMode.FOCUS_ONLY: (stream.focus_matrix, stream.focus_matrix, constant),
        AblationMode.FULL_SLM: (stream.focus_matrix, stream.null_matrix, stream),
    }
    rows = []
    for mode, (focus_m, null_m, program) in setups.items():
        links = PointLinks(preset, focus_m, null_m, cfg, args.workers)
        mode_rows = _zone_rows(preset, links, program, stream.zones, f"ablation[mode={mode.value}]", args.seed)
        rows.extend(mode_rows)
        eve = next(r for r in mode_rows if r.metric.endswith("eve_mean_ber"))
        bob = next(r for r in mode_rows if r.metric.endswith(".bob_ber"))
        print(f"ℹ️ {mode.value}: BER Bob {bob.value:.3e}, BER média Eve {eve.value:.3f}")
    n = write_heatmap_csv(rows, args.out)
    print(f"✓ {n} linhas de ablação salvas em {args.out}")
    return EXIT_OK


def _eve_and_bob(preset: ScenarioPreset, stream: SlmStream, cfg: LinkConfig, workers: int,
                 program=None) -> Tuple[float, float]:
    links = PointLinks(preset, stream.focus_matrix, stream.null_matrix, cfg, workers)
    program = stream if program is None else program
    eve = _mean_ber(links.run(stream.zones.eve_points(), program))
    bob = links.run([preset.bob], program)[0].ber
    return eve, bob


def cmd_sweep_tau(args, preset: ScenarioPreset) -> int:
    stream = _pipeline(preset, args)
    rows = []
    for tau in args.taus:
        cfg = _link_config(preset, args.seed, slot_width=tau)
        eve, bob = _eve_and_bob(preset, stream, cfg, args.workers)
        rows.append(_bob_row(preset, f"eve_mean_ber[tau={tau!r}]", eve, args.seed))
        print(f"ℹ️ τ = {tau:g} s: BER média Eve {eve:.3f}, BER Bob {bob:.3e}")
    n = write_heatmap_csv(rows, args.out)
    print(f"✓ {n} linhas salvas em {args.out}")
    return EXIT_OK


def cmd_sweep_ratio(args, preset: ScenarioPreset) -> int:
    stream = _pipeline(preset, args)
    cfg = _link_config(preset, args.seed)
    rows = []
    for ratio in args.ratios:
        fixed = SlmStream(stream.scenario, stream.bob, stream.evm0, stream.focus_matrix, stream.solution,
                          stream.library, stream.zones, stream.stream_seed, fixed_ratio=ratio,
                          allow_out_of_bounds=True)
        eve, bob = _eve_and_bob(preset, fixed, cfg, args.workers)
        rows.append(_bob_row(preset, f"eve_mean_ber[ratio={ratio}]", eve, args.seed))
        print(f"ℹ️ razão {ratio}: BER média Eve {eve:.3f}, BER Bob {bob:.3e}")
    bounds = {i: r for i, r in stream.ratios.items() if r}
    if bounds:
        print(f"ℹ️ Faixa de razões válidas pela biblioteca: "
              f"{min(min(r) for r in bounds.values())}..{max(max(r) for r in bounds.values())}")
    n = write_heatmap_csv(rows, args.out)
    print(f"✓ {n} linhas salvas em {args.out}")
    return EXIT_OK


def cmd_sweep_modulation(args, preset: ScenarioPreset) -> int:
    base = _pipeline(preset, args)
    rows = []
    for name in args.modulations:
        cfg = _link_config(preset, args.seed, modulation=name)
        evm0 = preset.evm0 if preset.evm0 is not None else DEFAULT_EVM0[name]
        stream = _pipeline(preset, args, evm0=evm0, solution=base.solution, verbose=False)
        eve, bob = _eve_and_bob(preset, stream, cfg, args.workers)
        rows.append(_bob_row(preset, f"eve_mean_ber[modulation={name}]", eve, args.seed))
        rows.append(_bob_row(preset, f"bob_ber[modulation={name}]", bob, args.seed))
        print(f"ℹ️ {name}: BER média Eve {eve:.3f}, BER Bob {bob:.3e}")
    n = write_heatmap_csv(rows, args.out)
    print(f"✓ {n} linhas salvas em {args.out}")
    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace, ScenarioPreset], int]] = {
    "info": cmd_info,
    "synth-focus": cmd_synth_focus,
    "synth-null": cmd_synth_null,
    "build-library": cmd_build_library,
    "sweep-evm": cmd_sweep_evm,
    "sweep-ber": cmd_sweep_ber,
    "sweep-field": cmd_sweep_field,
    "simulate-link": cmd_simulate_link,
    "ablation": cmd_ablation,
    "sweep-tau": cmd_sweep_tau,
    "sweep-ratio": cmd_sweep_ratio,
    "sweep-modulation": cmd_sweep_modulation,
}


def run_subcommand(argv: Optional[Sequence[str]] = None) -> int:
    """Executa um subcomando e retorna o código de saída"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        preset = resolve_preset(args)
        return COMMANDS[args.command](args, preset)
    except InfeasibleSolutionError as e:
        print(f"✗ Otimização inviável: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (SlmError, OSError) as e:
        print(f"✗ {e}", file=sys.stderr)
        return EXIT_CONFIG


def main() -> None:
    sys.exit(run_subcommand(sys.argv[1:]))


if __name__ == "__main__":
    main()
