"""
Secure Location Modulation - Sequências Temporais
Author: Gabriel Demetrios Lafis
Year: 2025

Este módulo trata do domínio do tempo: sequências de fase globais por slot
(constante, perturbada, intercalada), a álgebra de EVM, o critério fechado
de validação de uma sequência perturbada básica, os limites da razão de
slots K_focus/K_null e a biblioteca de sequências básicas.

Cada slot multiplica todo o arranjo por um fator R_k ∈ {1, j, -1, -j}: a
distribuição espacial de energia não muda, apenas a rotação da constelação.
Um programa de slots intercala slots de focalização (Φf) com slots de
nulling rotacionados (R_k·Φn):

    EVM_inter = sqrt(K_null / (K_focus + K_null)) · EVM_null

pois os slots de focalização coincidem com a referência e não contribuem
com erro.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Sequence, Union
import math

import numpy as np

try:
    from .errors import (EvmError, GeometryError, InfeasibleSolutionError, LibraryError,
                         SlmError)
    from .geometry import PolarPoint, is_near_field
    from .field_engine import (STATE_VALUES, FieldKernel, PhaseMatrix, Scenario,
                               scenario_hash)
    from .focusing import focus_matrix as synthesize_focus
    from .nulling import SnmSolution, ZoneGeometry, ZoneModel, solve_snm
except ImportError:
    from errors import (EvmError, GeometryError, InfeasibleSolutionError, LibraryError,
                        SlmError)
    from geometry import PolarPoint, is_near_field
    from field_engine import (STATE_VALUES, FieldKernel, PhaseMatrix, Scenario,
                              scenario_hash)
    from focusing import focus_matrix as synthesize_focus
    from nulling import SnmSolution, ZoneGeometry, ZoneModel, solve_snm


SLOT_CHARS = "1JMK"  # 1, j, -1, -j
FOCUS = -1  # seletor de slot de focalização
CANDIDATE_BATCH = 256
REFERENCE_FLOOR = 1e-6  # fração de |E_ref| no foco abaixo da qual o ponto é excluído

# Limiares EVM0 padrão (frações); 8PSK, ASK e FSK não constam do 802.11
DEFAULT_EVM0 = {
    "BPSK": 0.562,
    "QPSK": 0.316,
    "8PSK": 0.251,
    "16QAM": 0.158,
    "64QAM": 0.079,
    "2ASK": 0.562,
    "4ASK": 0.316,
    "BFSK": 0.562,
}


class SequenceKind(Enum):
    """Tipos de sequência de fase temporal"""
    CONSTANT = "constant"        # R_k ≡ 1
    PERTURBED = "perturbed"      # R_k aleatório em {1, j, -1, -j}
    INTERLEAVED = "interleaved"  # focalização + perturbada


def _codes(values) -> np.ndarray:
    codes = np.array(values, dtype=np.int8, copy=True).ravel()
    codes.setflags(write=False)
    return codes


@dataclass(frozen=True, eq=False)
class PhaseSequence:
    """Sequência de fatores de fase globais, um código (0..3) por slot"""
    codes: np.ndarray
    slot_width: float = 2e-6  # τ (s)
    kind: SequenceKind = SequenceKind.PERTURBED

    def __post_init__(self):
        codes = _codes(self.codes)
        if codes.size == 0:
            raise SlmError("Sequência de fase não pode ser vazia")
        if np.any((codes < 0) | (codes > 3)):
            raise SlmError("Códigos de slot devem estar em {0, 1, 2, 3}")
        if not self.slot_width > 0:
            raise SlmError(f"Largura de slot deve ser positiva (recebido {self.slot_width})")
        if self.kind == SequenceKind.CONSTANT and np.any(codes != 0):
            raise SlmError("Sequência constante requer R_k ≡ 1 em todos os slots")
        object.__setattr__(self, "codes", codes)

    @classmethod
    def constant(cls, length: int, slot_width: float = 2e-6) -> "PhaseSequence":
        return cls(np.zeros(length, dtype=np.int8), slot_width, SequenceKind.CONSTANT)

    @property
    def factors(self) -> np.ndarray:
        return STATE_VALUES[self.codes]

    def __len__(self) -> int:
        return int(self.codes.size)

    def __eq__(self, other) -> bool:
        return (isinstance(other, PhaseSequence) and self.kind == other.kind
                and self.slot_width == other.slot_width and np.array_equal(self.codes, other.codes))

    def __hash__(self) -> int:
        return hash((self.codes.tobytes(), self.slot_width, self.kind))

    def to_text(self) -> str:
        return "".join(SLOT_CHARS[c] for c in self.codes)

    @classmethod
    def from_text(cls, text: str, slot_width: float = 2e-6,
                  kind: SequenceKind = SequenceKind.PERTURBED) -> "PhaseSequence":
        try:
            codes = [SLOT_CHARS.index(ch) for ch in text.strip()]
        except ValueError as e:
            raise LibraryError(f"Caractere de slot inválido em '{text.strip()}'") from e
        return cls(np.array(codes, dtype=np.int8), slot_width, kind)


@dataclass(frozen=True, eq=False)
class SlotProgram:
    """
    Seletor de matriz de reflexão por slot: FOCUS (-1) para Φf ou um código
    0..3 para j^code·Φn.
    """
    selectors: np.ndarray
    ratio: Optional[int] = None
    entry: Optional[int] = None  # índice da sequência básica na biblioteca

    def __post_init__(self):
        sel = _codes(self.selectors)
        if sel.size == 0:
            raise SlmError("Programa de slots não pode ser vazio")
        if np.any((sel < FOCUS) | (sel > 3)):
            raise SlmError("Seletores devem estar em {-1 (foco), 0, 1, 2, 3}")
        object.__setattr__(self, "selectors", sel)

    @classmethod
    def focus_only(cls, length: int) -> "SlotProgram":
        return cls(np.full(length, FOCUS, dtype=np.int8), ratio=None)

    @property
    def k_focus(self) -> int:
        return int(np.count_nonzero(self.selectors == FOCUS))

    @property
    def k_null(self) -> int:
        return int(self.selectors.size - self.k_focus)

    @property
    def null_codes(self) -> np.ndarray:
        return self.selectors[self.selectors != FOCUS]

    def __len__(self) -> int:
        return int(self.selectors.size)

    def __eq__(self, other) -> bool:
        return (isinstance(other, SlotProgram) and self.ratio == other.ratio
                and self.entry == other.entry and np.array_equal(self.selectors, other.selectors))

    def __hash__(self) -> int:
        return hash((self.selectors.tobytes(), self.ratio, self.entry))

    def to_text(self) -> str:
        return "".join("F" if s == FOCUS else SLOT_CHARS[s] for s in self.selectors)


@dataclass
class EvmReport:
    """Estatísticas de EVM de uma sequência perturbada básica"""
    evm_bob: float
    evm_eve_mean: float
    evm0: float
    excluded_points: int = 0

    def __post_init__(self):
        if self.evm_bob < 0 or self.evm_eve_mean < 0 or self.evm0 < 0:
            raise EvmError("Valores de EVM devem ser não negativos")


@dataclass
class LibraryEntry:
    sequence: PhaseSequence
    report: EvmReport
    valid: bool


@dataclass
class SequenceLibrary:
    """Biblioteca de sequências perturbadas básicas validadas"""
    entries: List[LibraryEntry]
    seed: int
    scenario_hash: str
    evm0: float
    attempts: int = 0
    created_at: datetime = field(default_factory=datetime.now)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def acceptance_rate(self) -> float:
        return len(self.entries) / self.attempts if self.attempts else 0.0

    def summary(self) -> Dict[str, Any]:
        return {
            "entries": len(self.entries),
            "seed": self.seed,
            "scenario": self.scenario_hash,
            "evm0": self.evm0,
            "attempts": self.attempts,
            "acceptance_rate": self.acceptance_rate,
            "evm_bob_mean": float(np.mean([e.report.evm_bob for e in self.entries])) if self.entries else None,
            "evm_eve_mean": float(np.mean([e.report.evm_eve_mean for e in self.entries])) if self.entries else None,
        }


def field_sequence(scn: Scenario, matrix: PhaseMatrix, seq: PhaseSequence, target) -> np.ndarray:
    """E_k = R_k · E_matriz(alvo), um valor por slot"""
    e = FieldKernel(scn, [target]).fields(matrix)[0]
    return seq.factors * e


def evm(samples: Sequence[complex], ref: complex) -> float:
    """
    EVM (fração) das amostras em relação à referência.

    Raises:
        EvmError: referência nula ou amostras vazias
    """
    samples = np.asarray(samples, dtype=complex)
    if samples.size == 0:
        raise EvmError("EVM requer ao menos uma amostra")
    if ref == 0:
        raise EvmError("EVM indefinido para referência nula")
    return math.sqrt(float(np.sum(np.abs(samples - ref) ** 2)) / (samples.size * abs(ref) ** 2))


def evm_to_snr(evm_value: float) -> float:
    """SNR equivalente (linear): 1/EVM²"""
    if evm_value <= 0:
        raise EvmError("EVM deve ser positivo para conversão em SNR")
    return 1.0 / evm_value ** 2


def interleave(perturbed: PhaseSequence, ratio: int, entry: Optional[int] = None) -> SlotProgram:
    """
    Insere `ratio` slots de focalização antes de cada slot perturbado:
    F..F N1 F..F N2 ... (comprimento (ratio + 1)·K_null).
    """
    if int(ratio) != ratio or ratio < 1:
        raise SlmError(f"Razão de slots deve ser inteiro ≥ 1 (recebido {ratio})")
    ratio = int(ratio)
    blocks = np.full((len(perturbed), ratio + 1), FOCUS, dtype=np.int8)
    blocks[:, -1] = perturbed.codes
    return SlotProgram(blocks.ravel(), ratio=ratio, entry=entry)


def realized_fields(program: Union[SlotProgram, np.ndarray], e_focus: complex, e_null: complex) -> np.ndarray:
    """Campo realizado em cada slot de um programa"""
    sel = program.selectors if isinstance(program, SlotProgram) else np.asarray(program)
    return np.where(sel == FOCUS, e_focus, STATE_VALUES[np.mod(sel, 4)] * e_null)


def evm_interleaved_direct(scn: Scenario, program: SlotProgram, focus_matrix: PhaseMatrix,
                           null_matrix: PhaseMatrix, target, ref: Optional[complex] = None) -> float:
    """EVM calculado diretamente sobre os campos realizados do programa"""
    kernel = FieldKernel(scn, [target])
    e_focus = complex(kernel.fields(focus_matrix)[0])
    e_null = complex(kernel.fields(null_matrix)[0])
    return evm(realized_fields(program, e_focus, e_null), e_focus if ref is None else ref)


def evm_interleaved_closed(evm_null: float, k_focus: int, k_null: int) -> float:
    """Forma fechada: sqrt(K_null / (K_focus + K_null)) · EVM_null"""
    if k_focus < 0 or k_null < 1:
        raise EvmError("Requer k_focus ≥ 0 e k_null ≥ 1")
    return math.sqrt(k_null / (k_focus + k_null)) * evm_null


def ratio_bounds(evm_null_bob: float, evm_null_eve: float, evm0: float) -> List[int]:
    """
    Razões inteiras positivas no intervalo aberto
    ((EVM_bob/EVM0)² − 1, (EVM_eve/EVM0)² − 1). Lista vazia = sequência inutilizável.
    """
    if evm0 <= 0 or evm_null_eve <= 0 or evm_null_bob < 0:
        raise EvmError("ratio_bounds requer EVM0 > 0, EVM_eve > 0 e EVM_bob ≥ 0")
    lower = (evm_null_bob / evm0) ** 2 - 1.0
    upper = (evm_null_eve / evm0) ** 2 - 1.0
    start = max(1, math.floor(lower) + 1)
    stop = math.ceil(upper) - 1
    return list(range(start, stop + 1))


def validate_perturbed(evm_null_bob: float, evm_null_eve_mean: float, evm0: float) -> bool:
    """Critério fechado: EVM_eve > max(EVM_bob, EVM0)"""
    return evm_null_eve_mean > max(evm_null_bob, evm0)


def sequence_evm_stats(codes: np.ndarray, e_null: np.ndarray, e_ref: np.ndarray) -> np.ndarray:
    """EVM por ponto de uma sequência perturbada, shape (P,)"""
    factors = STATE_VALUES[np.asarray(codes)]
    diff = factors[:, None] * e_null[None, :] - e_ref[None, :]
    return np.sqrt(np.mean(np.abs(diff) ** 2, axis=0) / np.abs(e_ref) ** 2)


class _EvmContext:
    """Campos de nulling e referência nos pontos de Bob e Eve"""

    def __init__(self, scn: Scenario, focus: PolarPoint, focus_m: PhaseMatrix, null_m: PhaseMatrix,
                 eve_points: Sequence[PolarPoint], bob_points: Sequence[PolarPoint]):
        if not eve_points or not bob_points:
            raise LibraryError("Pontos de amostragem de Bob e Eve não podem ser vazios")
        peak = abs(FieldKernel(scn, [focus]).fields(focus_m)[0])
        self.excluded = 0
        self.sets = []
        for points in (bob_points, eve_points):
            kernel = FieldKernel(scn, points)
            e_ref = kernel.fields(focus_m)
            e_null = kernel.fields(null_m)
            keep = np.abs(e_ref) > REFERENCE_FLOOR * peak
            self.excluded += int(np.count_nonzero(~keep))
            if not keep.any():
                raise LibraryError("Todos os pontos de amostragem têm referência desprezível")
            self.sets.append((e_null[keep], e_ref[keep]))

    def report(self, codes: np.ndarray, evm0: float) -> EvmReport:
        (bn, br), (en, er) = self.sets
        bob = float(np.mean(sequence_evm_stats(codes, bn, br)))
        eve = float(np.mean(sequence_evm_stats(codes, en, er)))
        return EvmReport(bob, eve, evm0, self.excluded)


def _null_of(null_solution: Union[SnmSolution, PhaseMatrix]) -> PhaseMatrix:
    return null_solution.matrix if isinstance(null_solution, SnmSolution) else null_solution


def build_library(scn: Scenario, focus: PolarPoint, null_solution: Union[SnmSolution, PhaseMatrix],
                  eve_sample_points: Sequence[PolarPoint], bob_sample_points: Sequence[PolarPoint],
                  evm0: float, count: int = 32, length: int = 64, seed: int = 0, *,
                  slot_width: float = 2e-6, workers: int = 1, verbose: bool = True) -> SequenceLibrary:
    """
    Gera sequências uniformes em {1, j, -1, -j}^length (semeadas) e guarda as
    primeiras `count` que satisfazem o critério de validação, na ordem dos
    candidatos.

    Raises:
        LibraryError: nenhuma sequência aceita após 1000·count tentativas
    """
    if count < 1:
        raise LibraryError("count deve ser ≥ 1")
    if length < 2:
        raise LibraryError("length deve ser ≥ 2")
    focus_m = synthesize_focus(scn, focus)
    null_m = _null_of(null_solution)
    ctx = _EvmContext(scn, focus, focus_m, null_m, eve_sample_points, bob_sample_points)
    rng = np.random.default_rng(seed)
    max_attempts = 1000 * count
    entries: List[LibraryEntry] = []
    attempts = 0

    executor = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while len(entries) < count and attempts < max_attempts:
            batch = rng.integers(0, 4, size=(CANDIDATE_BATCH, length), dtype=np.int8)
            if executor is not None:
                reports = list(executor.map(lambda c: ctx.report(c, evm0), batch))
            else:
                reports = [ctx.report(c, evm0) for c in batch]
            for codes, report in zip(batch, reports):
                if attempts >= max_attempts:
                    break
                attempts += 1
                if validate_perturbed(report.evm_bob, report.evm_eve_mean, evm0):
                    entries.append(LibraryEntry(PhaseSequence(codes, slot_width), report, True))
                    if len(entries) == count:
                        break
    finally:
        if executor is not None:
            executor.shutdown()

    if not entries:
        raise LibraryError(
            f"Nenhuma sequência válida em {attempts} tentativas; aprofunde o nulo ou reduza EVM0 ({evm0})")
    library = SequenceLibrary(entries, seed, scenario_hash(scn, focus_m, null_m), evm0, attempts)
    if len(entries) < count:
        print(f"⚠️ Biblioteca incompleta: {len(entries)} de {count} sequências após {attempts} tentativas")
    elif verbose:
        print(f"✓ Biblioteca com {len(entries)} sequências (taxa de aceitação {library.acceptance_rate:.3f})")
    if verbose and ctx.excluded:
        print(f"ℹ️ {ctx.excluded} pontos de amostragem excluídos por referência desprezível")
    return library


def revalidate_library(library: SequenceLibrary, scn: Scenario, focus: PolarPoint,
                       null_solution: Union[SnmSolution, PhaseMatrix],
                       eve_sample_points: Sequence[PolarPoint],
                       bob_sample_points: Sequence[PolarPoint]) -> List[EvmReport]:
    """Recalcula as estatísticas de EVM de cada entrada da biblioteca"""
    ctx = _EvmContext(scn, focus, synthesize_focus(scn, focus), _null_of(null_solution),
                      eve_sample_points, bob_sample_points)
    return [ctx.report(e.sequence.codes, library.evm0) for e in library.entries]


def save_library(library: SequenceLibrary, path: str) -> None:
    """
    Formato texto, uma entrada por linha: estados (1/J/M/K), EVM_bob, EVM_eve
    e validade separados por tab. O cabeçalho carrega seed, hash do cenário e EVM0.
    """
    slot_width = library.entries[0].sequence.slot_width if library.entries else 2e-6
    lines = [f"# seed={library.seed}\tscenario={library.scenario_hash}\tevm0={library.evm0!r}"
             f"\tattempts={library.attempts}\tslot_width={slot_width!r}"]
    for e in library.entries:
        lines.append(f"{e.sequence.to_text()}\t{e.report.evm_bob!r}\t{e.report.evm_eve_mean!r}"
                     f"\t{int(e.valid)}\t{e.report.excluded_points}")
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("\n".join(lines) + "\n")


def load_library(path: str) -> SequenceLibrary:
    """
    Lê uma biblioteca salva por save_library.

    Raises:
        LibraryError: arquivo malformado
    """
    with open(path, "r", encoding="utf-8") as f:
        lines = [line.rstrip("\n") for line in f if line.strip()]
    if not lines or not lines[0].startswith("#"):
        raise LibraryError(f"Cabeçalho ausente em {path}")
    try:
        header = dict(item.split("=", 1) for item in lines[0][1:].strip().split("\t"))
        evm0 = float(header["evm0"])
        slot_width = float(header.get("slot_width", 2e-6))
        entries = []
        for line in lines[1:]:
            cols = line.split("\t")
            report = EvmReport(float(cols[1]), float(cols[2]), evm0,
                               int(cols[4]) if len(cols) > 4 else 0)
            entries.append(LibraryEntry(PhaseSequence.from_text(cols[0], slot_width), report,
                                        bool(int(cols[3]))))
        return SequenceLibrary(entries, int(header["seed"]), header["scenario"], evm0,
                               int(header.get("attempts", 0)))
    except (KeyError, IndexError, ValueError, SlmError) as e:
        raise LibraryError(f"Biblioteca malformada em {path}: {e}") from e


def library_ratios(library: SequenceLibrary, evm0: Optional[float] = None) -> Dict[int, List[int]]:
    """Razões válidas por entrada da biblioteca"""
    evm0 = library.evm0 if evm0 is None else evm0
    return {i: ratio_bounds(e.report.evm_bob, e.report.evm_eve_mean, evm0)
            for i, e in enumerate(library.entries)}


def program_stream(library: SequenceLibrary, seed: int, ratios: Optional[Dict[int, List[int]]] = None,
                   fixed_ratio: Optional[int] = None, *,
                   allow_out_of_bounds: bool = False) -> Iterator[SlotProgram]:
    """
    Fluxo ilimitado de programas: cada segmento sorteia uma entrada da
    biblioteca e uma razão dentro dos limites dessa entrada.

    Com `fixed_ratio`, só participam as entradas cujo intervalo contém a
    razão, de modo que todo segmento satisfaz a restrição de EVM. Com
    `allow_out_of_bounds`, a razão fixa vale para todas as entradas
    (varredura de razões além dos limites).

    Raises:
        SlmError: razão fixa inválida ou nenhuma entrada utilizável
    """
    bounds = ratios if ratios is not None else library_ratios(library)
    entries = range(len(library.entries))
    if fixed_ratio is not None:
        if int(fixed_ratio) != fixed_ratio or fixed_ratio < 1:
            raise SlmError(f"Razão de slots deve ser inteiro ≥ 1 (recebido {fixed_ratio})")
        fixed_ratio = int(fixed_ratio)
        choices = {i: [fixed_ratio] for i in entries
                   if allow_out_of_bounds or fixed_ratio in bounds.get(i, ())}
        if not choices:
            valid = sorted({r for i in entries for r in bounds.get(i, ())})
            span = f"{valid[0]}..{valid[-1]}" if valid else "nenhuma"
            raise SlmError(f"Razão {fixed_ratio} fora dos limites de todas as sequências "
                           f"(razões válidas: {span})")
    else:
        choices = {i: list(bounds[i]) for i in entries if bounds.get(i)}
        if not choices:
            raise SlmError("Intervalo de razão vazio para todas as sequências da biblioteca")
    usable = sorted(choices)

    def _generate():
        rng = np.random.default_rng(seed)
        while True:
            i = usable[int(rng.integers(len(usable)))]
            options = choices[i]
            ratio = options[int(rng.integers(len(options)))]
            yield interleave(library.entries[i].sequence, ratio, entry=i)

    return _generate()


def take_slots(stream: Iterator[SlotProgram], count: int) -> np.ndarray:
    """Concatena seletores do fluxo até completar `count` slots"""
    parts = []
    total = 0
    while total < count:
        program = next(stream)
        parts.append(program.selectors)
        total += len(program)
    return np.concatenate(parts)[:count]


class SlmStream:
    """
    Resultado do pipeline SLM: artefatos (Φf, solução SNM, biblioteca, razões)
    e fluxo iterável de programas de slots. Cada iteração recomeça da mesma
    semente.
    """

    def __init__(self, scenario: Scenario, bob: PolarPoint, evm0: float, focus_matrix: PhaseMatrix,
                 solution: SnmSolution, library: SequenceLibrary, zones: ZoneModel,
                 stream_seed: int, fixed_ratio: Optional[int] = None, *,
                 allow_out_of_bounds: bool = False):
        self.scenario = scenario
        self.bob = bob
        self.evm0 = evm0
        self.focus_matrix = focus_matrix
        self.solution = solution
        self.library = library
        self.zones = zones
        self.stream_seed = stream_seed
        self.fixed_ratio = fixed_ratio
        self.allow_out_of_bounds = allow_out_of_bounds
        self.ratios = library_ratios(library, evm0)
        self._log: List[Dict[str, Any]] = []
        # valida já na construção que existe ao menos uma razão utilizável
        iter(self)

    @property
    def null_matrix(self) -> PhaseMatrix:
        return self.solution.matrix

    def __iter__(self) -> Iterator[SlotProgram]:
        return program_stream(self.library, self.stream_seed, self.ratios, self.fixed_ratio,
                              allow_out_of_bounds=self.allow_out_of_bounds)

    def slots(self, count: int) -> np.ndarray:
        return take_slots(iter(self), count)

    def log(self, operation: str, params: Any = None) -> None:
        self._log.append({"timestamp": datetime.now(), "operation": operation, "params": params})

    @property
    def history(self) -> List[Dict[str, Any]]:
        return list(self._log)

    def summary(self) -> Dict[str, Any]:
        usable = {i: r for i, r in self.ratios.items() if r}
        return {
            "bob": {"r_m": self.bob.r, "theta_deg": math.degrees(self.bob.theta)},
            "evm0": self.evm0,
            "focus_digest": self.focus_matrix.digest(),
            "snm": self.solution.summary(),
            "library": self.library.summary(),
            "usable_entries": len(usable),
            "ratio_range": [min(min(r) for r in usable.values()), max(max(r) for r in usable.values())]
            if usable else None,
            "fixed_ratio": self.fixed_ratio,
            "allow_out_of_bounds": self.allow_out_of_bounds,
        }


def pipeline_seeds(seed: int) -> List[int]:
    """Sementes independentes para SNM, biblioteca e fluxo"""
    return [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(3)]


def slm_pipeline(scn: Scenario, bob: PolarPoint, evm0: float, seed: int, *,
                 zones: Optional[ZoneModel] = None, geometry: Optional[ZoneGeometry] = None,
                 generations: int = 200, population: int = 64, library_count: int = 32,
                 library_length: int = 64, slot_width: float = 2e-6,
                 fixed_ratio: Optional[int] = None, allow_out_of_bounds: bool = False,
                 solution: Optional[SnmSolution] = None, workers: int = 1,
                 verbose: bool = True) -> SlmStream:
    """
    Pipeline completo: focalização → SNM → biblioteca → limites de razão →
    fluxo de programas com troca aleatória de sequência básica e razão.

    Sem `zones`, o SNM avalia cada candidato nas zonas dos seus pontos
    focais e a biblioteca amostra Bob e Eve nas zonas da solução escolhida.

    Raises:
        GeometryError: Bob fora do campo próximo
        InfeasibleSolutionError: SNM sem solução viável
        SlmError: nenhuma razão válida, ou razão fixa fora de todos os limites
    """
    if not is_near_field(scn.cfg, bob):
        raise GeometryError(f"Bob (r = {bob.r} m) fora do campo próximo do arranjo")
    snm_seed, library_seed, stream_seed = pipeline_seeds(seed)
    focus_m = synthesize_focus(scn, bob)
    if verbose:
        print(f"✓ Matriz de focalização sintetizada para ({bob.r:.2f} m, {math.degrees(bob.theta):.1f}°)")
    if solution is None:
        solution = solve_snm(scn, bob, zones, budget=generations, seed=snm_seed,
                             population=population, geometry=geometry, workers=workers,
                             verbose=verbose)
    if not solution.feasible:
        raise InfeasibleSolutionError("SNM sem candidato viável dentro do orçamento", solution)
    zones = zones or solution.zone_model(geometry)
    library = build_library(scn, bob, solution, zones.eve_points(), zones.bob_points(), evm0,
                            library_count, library_length, library_seed, slot_width=slot_width,
                            workers=workers, verbose=verbose)
    stream = SlmStream(scn, bob, evm0, focus_m, solution, library, zones, stream_seed, fixed_ratio,
                       allow_out_of_bounds=allow_out_of_bounds)
    stream.log("focus", {"digest": focus_m.digest()})
    stream.log("snm", {"objective": solution.depth, "seed": snm_seed})
    stream.log("library", {"entries": len(library), "seed": library_seed})
    if verbose:
        usable = sum(1 for r in stream.ratios.values() if r)
        print(f"✓ Pipeline SLM pronto: {usable}/{len(library)} sequências com razão válida")
    return stream
