"""
Secure Location Modulation - Simulação de Enlace
Author: Gabriel Demetrios Lafis
Year: 2025

Este módulo implementa a simulação de enlace em banda base (Monte-Carlo):
modulação com mapeamento Gray, passagem pelo campo da RIS variante no tempo
(média ponderada no tempo dos slots que cobrem cada símbolo), ruído gaussiano
calibrado no ponto de referência, demodulação com rastreamento de canal por
blocos e métricas de segurança (BER, EVM, capacidade de sigilo).

Modelo do receptor: a primeira janela de `tracking_window` símbolos é de
pilotos e inicializa ĥ; daí em diante, cada bloco é equalizado com o ĥ do
bloco anterior e o atualiza por decisão (pilot_interval > 0 reinsere pilotos
a cada tantos blocos). Slots muito mais rápidos que a janela viram ruído não
rastreável; slots muito mais lentos são absorvidos por ĥ.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Union
import math

import numpy as np

try:
    from .errors import LinkError
    from .field_engine import FieldKernel, PhaseMatrix, Scenario
    from .temporal import SlotProgram, realized_fields, take_slots
except ImportError:
    from errors import LinkError
    from field_engine import FieldKernel, PhaseMatrix, Scenario
    from temporal import SlotProgram, realized_fields, take_slots


PICOSECOND = 1e-12
CONSTELLATION_SAMPLES = 1000  # amostras guardadas em LinkResult

SlotSource = Union[SlotProgram, Iterator[SlotProgram], np.ndarray]


@dataclass(frozen=True, eq=False)
class ModulationScheme:
    """
    Constelação com potência média unitária e rótulos Gray (inteiros, MSB
    primeiro). BFSK usa vetores de dois tons, shape (2, 2).
    """
    name: str
    bits_per_symbol: int
    points: np.ndarray
    labels: np.ndarray

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def is_fsk(self) -> bool:
        return self.points.ndim == 2

    @property
    def average_power(self) -> float:
        p = np.abs(self.points) ** 2
        return float(np.mean(p.sum(axis=1) if self.is_fsk else p))

    def point_of(self, label: int) -> np.ndarray:
        return self.points[int(np.flatnonzero(self.labels == label)[0])]


def _gray(k: np.ndarray) -> np.ndarray:
    return k ^ (k >> 1)


def _build_schemes() -> Dict[str, ModulationScheme]:
    schemes = {}
    schemes["BPSK"] = ModulationScheme("BPSK", 1, np.array([1.0 + 0j, -1.0 + 0j]), np.array([0, 1]))

    labels = np.arange(4)
    b0, b1 = labels >> 1, labels & 1
    schemes["QPSK"] = ModulationScheme(
        "QPSK", 2, ((1 - 2 * b0) + 1j * (1 - 2 * b1)) / math.sqrt(2.0), labels)

    k = np.arange(8)
    schemes["8PSK"] = ModulationScheme("8PSK", 3, np.exp(2j * np.pi * k / 8), _gray(k))

    levels = np.array([-3.0, -1.0, 1.0, 3.0])
    gray2 = _gray(np.arange(4))
    i_idx, q_idx = np.meshgrid(np.arange(4), np.arange(4), indexing="ij")
    schemes["16QAM"] = ModulationScheme(
        "16QAM", 4, ((levels[i_idx] + 1j * levels[q_idx]) / math.sqrt(10.0)).ravel(),
        ((gray2[i_idx] << 2) | gray2[q_idx]).ravel())

    # ASK unipolar (liga/desliga), potência média unitária
    schemes["2ASK"] = ModulationScheme("2ASK", 1, np.array([0.0, math.sqrt(2.0)]) + 0j, np.array([0, 1]))
    schemes["4ASK"] = ModulationScheme(
        "4ASK", 2, np.arange(4) / math.sqrt(3.5) + 0j, _gray(np.arange(4)))

    schemes["BFSK"] = ModulationScheme("BFSK", 1, np.eye(2, dtype=complex), np.array([0, 1]))
    return schemes


MODULATIONS = _build_schemes()


def modulation_scheme(name: str) -> ModulationScheme:
    """
    Raises:
        LinkError: modulação desconhecida
    """
    key = name.strip().upper()
    if key not in MODULATIONS:
        raise LinkError(f"Modulação desconhecida '{name}' (disponíveis: {', '.join(MODULATIONS)})")
    return MODULATIONS[key]


@dataclass(frozen=True)
class LinkConfig:
    """Parâmetros do enlace; snr_db = inf desliga o ruído térmico"""
    modulation: str = "8PSK"
    symbol_rate: float = 125e3  # Hz
    slot_width: float = 2e-6  # τ (s)
    snr_db: float = 30.0  # no ponto de referência (Bob)
    tracking_window: int = 50  # símbolos
    data_bits: int = 1_000_000
    seed: int = 0
    eve_noise_offset_db: float = 0.0
    pilot_interval: int = 0  # 0 = pilotos só na primeira janela

    def __post_init__(self):
        if not self.symbol_rate > 0:
            raise LinkError(f"symbol_rate deve ser positivo (recebido {self.symbol_rate})")
        if not self.slot_width > 0:
            raise LinkError(f"slot_width deve ser positivo (recebido {self.slot_width})")
        if int(self.tracking_window) != self.tracking_window or self.tracking_window < 1:
            raise LinkError(f"tracking_window deve ser inteiro ≥ 1 (recebido {self.tracking_window})")
        if int(self.pilot_interval) != self.pilot_interval or self.pilot_interval < 0:
            raise LinkError(f"pilot_interval deve ser inteiro ≥ 0 (recebido {self.pilot_interval})")
        if self.data_bits < 1:
            raise LinkError("data_bits deve ser ≥ 1")
        if math.isnan(self.snr_db) or math.isnan(self.eve_noise_offset_db):
            raise LinkError("snr_db e eve_noise_offset_db não podem ser NaN")
        modulation_scheme(self.modulation)

    @property
    def scheme(self) -> ModulationScheme:
        return modulation_scheme(self.modulation)

    @property
    def symbol_duration(self) -> float:
        return 1.0 / self.symbol_rate

    @property
    def symbol_ps(self) -> int:
        return int(round(self.symbol_duration / PICOSECOND))

    @property
    def slot_ps(self) -> int:
        return int(round(self.slot_width / PICOSECOND))

    @property
    def symbol_count(self) -> int:
        return self.data_bits // self.scheme.bits_per_symbol

    def slots_needed(self, n_symbols: int) -> int:
        return (n_symbols * self.symbol_ps) // self.slot_ps + 1


@dataclass
class DemodResult:
    bits: np.ndarray
    evm_measured: float
    equalized: np.ndarray
    channel_fallback: bool = False


@dataclass
class LinkResult:
    """Resultado do enlace em um ponto receptor"""
    ber: float
    evm_measured: float
    rx_constellation: np.ndarray
    secrecy_bits: Optional[float] = None
    bits: int = 0
    channel_fallback: bool = False
    snr_measured: float = field(default=float("nan"))

    def __post_init__(self):
        if not 0.0 <= self.ber <= 1.0:
            raise LinkError(f"BER fora de [0, 1]: {self.ber}")

    def summary(self) -> Dict:
        return {
            "ber": self.ber,
            "evm_measured": self.evm_measured,
            "snr_measured_db": 10 * math.log10(self.snr_measured) if self.snr_measured > 0 else None,
            "secrecy_bits": self.secrecy_bits,
            "bits": self.bits,
            "channel_fallback": self.channel_fallback,
        }


def modulate(bits, scheme: ModulationScheme) -> np.ndarray:
    """
    Mapeia bits (MSB primeiro) em símbolos Gray.

    Raises:
        LinkError: número de bits não divisível por bits_per_symbol
    """
    bits = np.asarray(bits, dtype=np.int64).ravel()
    b = scheme.bits_per_symbol
    if bits.size % b:
        raise LinkError(f"{bits.size} bits não divisíveis por {b} bits/símbolo ({scheme.name})")
    if np.any((bits != 0) & (bits != 1)):
        raise LinkError("Bits devem ser 0 ou 1")
    weights = 1 << np.arange(b - 1, -1, -1)
    labels = bits.reshape(-1, b) @ weights
    index_of = np.empty(scheme.size, dtype=np.int64)
    index_of[scheme.labels] = np.arange(scheme.size)
    return scheme.points[index_of[labels]]


def slot_selectors(program: SlotSource, count: int) -> np.ndarray:
    """Seletores de `count` slots; um SlotProgram isolado é repetido ciclicamente"""
    if isinstance(program, SlotProgram):
        reps = -(-count // len(program))
        return np.tile(program.selectors, reps)[:count]
    if isinstance(program, np.ndarray):
        if program.size < count:
            raise LinkError(f"Seletores insuficientes: {program.size} < {count} slots")
        return program[:count]
    return take_slots(program, count)


def slot_fields(program: SlotSource, e_focus: complex, e_null: complex, count: int) -> np.ndarray:
    """Campo no alvo em cada um dos próximos `count` slots"""
    return realized_fields(slot_selectors(program, count), e_focus, e_null)


def symbol_average(values: np.ndarray, slot_ps: int, symbol_ps: int, n_symbols: int) -> np.ndarray:
    """
    Média ponderada no tempo dos campos de slot sobre cada símbolo.
    Base de tempo inteira em picossegundos: o símbolo k ocupa
    [k·symbol_ps, (k+1)·symbol_ps).
    """
    if slot_ps <= 0 or symbol_ps <= 0:
        raise LinkError("Durações de slot e símbolo devem ser positivas")
    values = np.asarray(values)
    if symbol_ps % slot_ps == 0:
        per = symbol_ps // slot_ps
        return values[:n_symbols * per].reshape(n_symbols, per).mean(axis=1)
    starts = np.arange(n_symbols, dtype=np.int64) * symbol_ps
    if slot_ps % symbol_ps == 0:
        return values[starts // slot_ps]

    cumulative = np.concatenate(([0.0], np.cumsum(values)))

    def integral(t):
        i = t // slot_ps
        return cumulative[i] * slot_ps + values[i] * (t - i * slot_ps)

    return (integral(starts + symbol_ps) - integral(starts)) / symbol_ps


def simulate_rx(scn: Scenario, program: SlotSource, focus_matrix: PhaseMatrix, null_matrix: PhaseMatrix,
                target, symbols: np.ndarray, cfg: LinkConfig, *,
                noise_reference: Optional[complex] = None, noise_offset_db: float = 0.0,
                rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """
    Amostras recebidas: símbolo × média do campo nos slots do símbolo + ruído.

    A potência de ruído é |E_ref|²/SNR, com E_ref = `noise_reference` (campo de
    Bob) ou, se omitido, o campo de focalização no próprio alvo.
    """
    symbols = np.asarray(symbols)
    n = len(symbols)
    if n == 0:
        raise LinkError("Nenhum símbolo para transmitir")
    kernel = FieldKernel(scn, [target])
    e_focus = complex(kernel.fields(focus_matrix)[0])
    e_null = complex(kernel.fields(null_matrix)[0])
    values = slot_fields(program, e_focus, e_null, cfg.slots_needed(n))
    h = symbol_average(values, cfg.slot_ps, cfg.symbol_ps, n)
    received = symbols * (h[:, None] if symbols.ndim == 2 else h)

    if math.isinf(cfg.snr_db) and cfg.snr_db > 0:
        return received
    ref = e_focus if noise_reference is None else noise_reference
    noise_power = abs(ref) ** 2 / 10 ** (cfg.snr_db / 10) * 10 ** (noise_offset_db / 10)
    rng = rng if rng is not None else np.random.default_rng(cfg.seed)
    sigma = math.sqrt(noise_power / 2.0)
    noise = rng.normal(0.0, sigma, received.shape) + 1j * rng.normal(0.0, sigma, received.shape)
    return received + noise


def _labels_to_bits(labels: np.ndarray, b: int) -> np.ndarray:
    return ((labels[:, None] >> np.arange(b - 1, -1, -1)) & 1).ravel().astype(np.int8)


def _decide(eq: np.ndarray, scheme: ModulationScheme) -> np.ndarray:
    """Índices das decisões (distância mínima; BFSK por energia)"""
    if scheme.is_fsk:
        return np.argmax(np.abs(eq) ** 2, axis=1)
    return np.argmin(np.abs(eq[:, None] - scheme.points[None, :]), axis=1)


def _channel_ratio(received: np.ndarray, reference: np.ndarray, scheme: ModulationScheme):
    """y/s por símbolo e máscara de símbolos utilizáveis (s ≠ 0)"""
    if scheme.is_fsk:
        tone = np.argmax(np.abs(reference), axis=1)
        return received[np.arange(len(received)), tone], np.ones(len(received), dtype=bool)
    usable = reference != 0
    ratio = np.zeros(len(received), dtype=complex)
    ratio[usable] = received[usable] / reference[usable]
    return ratio, usable


def _usable_channel(h: complex) -> bool:
    return abs(h) > 0 and bool(np.isfinite(h))


def _track_channel(y: np.ndarray, scheme: ModulationScheme, window: int,
                   pilots: Optional[np.ndarray], pilot_interval: int) -> np.ndarray:
    """
    ĥ por bloco de `window` símbolos. O primeiro bloco é estimado pelos
    pilotos (ou, sem eles, pelas decisões sem equalização); cada bloco
    seguinte é equalizado com a estimativa do anterior e atualiza ĥ pelas
    próprias decisões. Com pilot_interval = k > 0, os blocos múltiplos de k
    cobertos pelos pilotos são reestimados por eles.
    """
    n = len(y)
    n_pilots = 0 if pilots is None else len(pilots)
    n_blocks = -(-n // window)
    h_blocks = np.empty(n_blocks, dtype=complex)
    h = 1.0 + 0j
    for b in range(n_blocks):
        sl = slice(b * window, min((b + 1) * window, n))
        aided = sl.stop <= n_pilots and (b == 0 or (pilot_interval > 0 and b % pilot_interval == 0))
        if aided:
            reference = pilots[sl]
        else:
            hb = h if _usable_channel(h) else 1.0
            reference = scheme.points[_decide(y[sl] / hb, scheme)]
        r, u = _channel_ratio(y[sl], reference, scheme)
        estimate = complex(np.mean(r[u])) if np.any(u) else h
        h_blocks[b] = estimate if b == 0 else h
        h = estimate
    return h_blocks


def demodulate(received, scheme: ModulationScheme, cfg: LinkConfig, *,
               pilots: Optional[np.ndarray] = None,
               transmitted: Optional[np.ndarray] = None,
               fixed_channel: Optional[complex] = None) -> DemodResult:
    """
    Equaliza por blocos, decide por distância mínima e mede o EVM.

    `pilots` são os primeiros símbolos transmitidos, conhecidos pelo
    receptor: inicializam ĥ na primeira janela e, com pilot_interval > 0,
    reestimam os blocos que cobrem. Fora deles o rastreamento é por decisão.
    `transmitted` só serve para medir o EVM; sem ele, o EVM é medido contra
    as decisões. Com `fixed_channel`, o rastreamento é desligado.

    Raises:
        LinkError: entrada vazia, pilotos além das amostras ou
            `transmitted` de tamanho diferente
    """
    y = np.asarray(received)
    n = len(y)
    if n == 0:
        raise LinkError("Nenhuma amostra recebida para demodular")
    if pilots is not None:
        pilots = np.asarray(pilots)
        if len(pilots) > n:
            raise LinkError(f"Mais pilotos ({len(pilots)}) do que amostras ({n})")
    if transmitted is not None:
        transmitted = np.asarray(transmitted)
        if len(transmitted) != n:
            raise LinkError(f"Símbolos transmitidos ({len(transmitted)}) e amostras ({n}) "
                            f"com tamanhos diferentes")
    window = int(cfg.tracking_window)
    block_of = np.arange(n) // window

    if fixed_channel is not None:
        h_blocks = np.full(-(-n // window), complex(fixed_channel))
    else:
        h_blocks = _track_channel(y, scheme, window, pilots, int(cfg.pilot_interval))

    bad = (np.abs(h_blocks) == 0) | ~np.isfinite(h_blocks)
    fallback = bool(np.any(bad))
    h_blocks = np.where(bad, 1.0 + 0j, h_blocks)
    h_sym = h_blocks[block_of]
    eq = y / (h_sym[:, None] if y.ndim == 2 else h_sym)

    idx = _decide(eq, scheme)
    decided = scheme.points[idx]
    reference = transmitted if transmitted is not None else decided
    err = np.abs(eq - reference) ** 2
    ref_power = np.abs(reference) ** 2
    if y.ndim == 2:
        err, ref_power = err.sum(axis=1), ref_power.sum(axis=1)
    mean_ref = float(np.mean(ref_power))
    evm_measured = math.sqrt(float(np.mean(err)) / mean_ref) if mean_ref > 0 else float("inf")
    bits = _labels_to_bits(scheme.labels[idx], scheme.bits_per_symbol)
    return DemodResult(bits, evm_measured, eq, fallback)


def ber(tx_bits, rx_bits) -> float:
    """
    Raises:
        LinkError: tamanhos diferentes ou vazios
    """
    tx = np.asarray(tx_bits).ravel()
    rx = np.asarray(rx_bits).ravel()
    if tx.size != rx.size:
        raise LinkError(f"Sequências de bits com tamanhos diferentes ({tx.size} vs {rx.size})")
    if tx.size == 0:
        raise LinkError("BER indefinida para sequências vazias")
    return float(np.count_nonzero(tx != rx)) / tx.size


def random_guess_ber(scheme: ModulationScheme) -> float:
    """BER esperada ao chutar símbolos uniformemente"""
    labels = scheme.labels
    xor = labels[:, None] ^ labels[None, :]
    distance = sum(int(np.sum((xor >> bit) & 1)) for bit in range(scheme.bits_per_symbol))
    return distance / (scheme.size ** 2 * scheme.bits_per_symbol)


def secrecy_capacity(snr_bob: float, snr_eve: float) -> float:
    """C_s = max(0, log2(1 + SNR_bob) − log2(1 + SNR_eve)), em bits/s/Hz"""
    if snr_bob < 0 or snr_eve < 0:
        raise LinkError("SNR deve ser não negativa")
    return max(0.0, math.log2(1.0 + snr_bob) - math.log2(1.0 + snr_eve))


def link_bits(cfg: LinkConfig) -> np.ndarray:
    """Bits de dados do enlace, determinísticos pela semente"""
    n = cfg.symbol_count * cfg.scheme.bits_per_symbol
    if n == 0:
        raise LinkError(f"data_bits ({cfg.data_bits}) menor que um símbolo {cfg.modulation}")
    return np.random.default_rng([cfg.seed, 0]).integers(0, 2, n, dtype=np.int8)


def run_link(scn: Scenario, program: SlotSource, focus_matrix: PhaseMatrix, null_matrix: PhaseMatrix,
             target, cfg: LinkConfig, *, noise_reference: Optional[complex] = None,
             noise_offset_db: float = 0.0, point_index: int = 0, snr_bob: Optional[float] = None,
             fixed_channel: Optional[complex] = None, bits: Optional[np.ndarray] = None) -> LinkResult:
    """
    Enlace completo em um ponto: modula → canal RIS + ruído → demodula → BER.

    `snr_bob` (linear) habilita a capacidade de sigilo contra a SNR medida
    neste ponto.
    """
    scheme = cfg.scheme
    bits = link_bits(cfg) if bits is None else np.asarray(bits)
    symbols = modulate(bits, scheme)
    rng = np.random.default_rng([cfg.seed, 1, point_index])
    received = simulate_rx(scn, program, focus_matrix, null_matrix, target, symbols, cfg,
                           noise_reference=noise_reference, noise_offset_db=noise_offset_db, rng=rng)
    pilots = symbols if cfg.pilot_interval else symbols[:cfg.tracking_window]
    result = demodulate(received, scheme, cfg, pilots=pilots, transmitted=symbols,
                        fixed_channel=fixed_channel)
    snr = 1.0 / result.evm_measured ** 2 if result.evm_measured > 0 else float("inf")
    secrecy = None
    if snr_bob is not None and math.isfinite(snr_bob) and math.isfinite(snr):
        secrecy = secrecy_capacity(snr_bob, snr)
    return LinkResult(
        ber=ber(bits, result.bits),
        evm_measured=result.evm_measured,
        rx_constellation=result.equalized[:CONSTELLATION_SAMPLES].copy(),
        secrecy_bits=secrecy,
        bits=int(bits.size),
        channel_fallback=result.channel_fallback,
        snr_measured=snr,
    )


def example_usage():
    """Exemplo: enlace 8PSK com RIS apenas focalizando (sequência constante)"""
    try:
        from .geometry import ArrayConfig, PolarPoint
        from .focusing import focus_matrix as synthesize_focus
    except ImportError:
        from geometry import ArrayConfig, PolarPoint
        from focusing import focus_matrix as synthesize_focus

    cfg = ArrayConfig(rows=14, cols=56, dx=0.0278, dy=0.0278, frequency=5.8e9)
    scn = Scenario(cfg, PolarPoint.from_degrees(0.8, 0.0))
    bob = PolarPoint.from_degrees(1.6, 0.0)
    focus_m = synthesize_focus(scn, bob)
    link = LinkConfig(data_bits=30_000, seed=1)
    result = run_link(scn, SlotProgram.focus_only(64), focus_m, focus_m, bob, link)
    print(f"✓ BER em Bob: {result.ber:.2e}, EVM {result.evm_measured:.4f}")
    print(f"ℹ️ BER de chute aleatório ({link.modulation}): {random_guess_ber(link.scheme):.2f}")
    return result


if __name__ == "__main__":
    example_usage()
