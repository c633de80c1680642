"""Analytic error rates and Monte Carlo simulation of coded transmission.

Every transmission is sent BPSK-modulated over a binary-input channel with
continuous output; receivers hard-detect each symbol independently, so each
acts as a binary symmetric channel with a per-bit error probability fixed by
the channel model.  A demand decoded from l transmissions is wrong exactly
when an odd number of them flip, so its error probability is
(1 - (1 - 2p)^l) / 2 and the per-instance average follows from the decoding
profile alone.

The Rayleigh model assumes the fading gain is known at the receiver
(coherent detection) with unit mean-square gain, which yields the closed
form used for the analytic cross-checks.  Simulation runs in fixed-size
trial blocks, each drawing from its own counter-keyed Philox stream, so
results are bit-identical for a given seed no matter how many worker
threads IC_THREADS allows.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .code import DecodingProfile, IndexCode, decode_paths
from .errors import EmptyProfileError, InvalidParameterError
from .graph import InformationFlowGraph

RNG_ALGORITHM = "philox4x64"
_BLOCK = 1 << 16


@dataclass(frozen=True)
class ChannelModel:
    """One of bsc (crossover p), awgn or rayleigh (Eb/N0 in dB)."""

    kind: str
    p: Optional[float] = None
    eb_n0_db: Optional[float] = None

    def __post_init__(self) -> None:
        if self.kind == "bsc":
            if self.p is None or not (0.0 <= self.p < 0.5):
                raise InvalidParameterError(f"bsc needs 0 <= p < 0.5, got {self.p}")
        elif self.kind in ("awgn", "rayleigh"):
            if self.eb_n0_db is None or not math.isfinite(self.eb_n0_db):
                raise InvalidParameterError(f"{self.kind} needs a finite Eb/N0 in dB")
        else:
            raise InvalidParameterError(f"unknown channel kind {self.kind!r}")

    def label(self) -> str:
        if self.kind == "bsc":
            return f"bsc(p={self.p})"
        return f"{self.kind}({self.eb_n0_db}dB)"


def bsc(p: float) -> ChannelModel:
    return ChannelModel("bsc", p=p)


def awgn(eb_n0_db: float) -> ChannelModel:
    return ChannelModel("awgn", eb_n0_db=eb_n0_db)


def rayleigh(eb_n0_db: float) -> ChannelModel:
    return ChannelModel("rayleigh", eb_n0_db=eb_n0_db)


def bit_error_prob(ch: ChannelModel) -> float:
    """Hard-decision per-bit error probability of the channel."""
    if ch.kind == "bsc":
        return float(ch.p)
    gamma = 10.0 ** (ch.eb_n0_db / 10.0)
    if ch.kind == "awgn":
        # Q(sqrt(2*Eb/N0)) for coherent BPSK.
        return 0.5 * math.erfc(math.sqrt(gamma))
    # Coherent BPSK over Rayleigh fading with unit mean-square gain.
    return 0.5 * (1.0 - math.sqrt(gamma / (1.0 + gamma)))


def prob_demand_error(l: int, p: float) -> float:
    """Probability that a demand decoded from l transmissions is wrong:
    the odd-flip-count mass, summed in closed form."""
    if not (0.0 <= p < 0.5):
        raise InvalidParameterError(f"need 0 <= p < 0.5, got {p}")
    if l < 1:
        raise InvalidParameterError(f"need l >= 1, got {l}")
    return 0.5 * (1.0 - (1.0 - 2.0 * p) ** l)


def analytic_pavg(profile: DecodingProfile, p: float) -> float:
    """Average demand error probability: mean of the per-demand values.

    The mean is always normalized by the demand count, so code rankings
    are unaffected by instance size.
    """
    if profile.demand_count == 0:
        raise EmptyProfileError("profile has no demands")
    return sum(prob_demand_error(d.l, p) for d in profile.per_demand) / profile.demand_count


@dataclass(frozen=True)
class SimulationResult:
    analytic_p_avg: float
    mc_estimate: float
    mc_std_err: float
    trials: int
    seed: int
    channel: str
    rng: str = RNG_ALGORITHM

    def to_dict(self) -> dict:
        return {
            "analytic_p_avg": self.analytic_p_avg,
            "mc_estimate": self.mc_estimate,
            "mc_std_err": self.mc_std_err,
            "trials": self.trials,
            "seed": self.seed,
            "channel": self.channel,
            "rng": self.rng,
        }


def _receiver_error_bits(
    rng: np.random.Generator, ch: ChannelModel, codewords: np.ndarray
) -> np.ndarray:
    """Simulate one receiver's hard detection of every transmission.

    Returns a boolean (trials, N) array marking detected-bit errors.
    codewords holds the true bits; BPSK maps bit b to symbol 1 - 2b.
    """
    trials, n_tx = codewords.shape
    if ch.kind == "bsc":
        if ch.p == 0.0:
            return np.zeros((trials, n_tx), dtype=bool)
        return rng.random((trials, n_tx)) < ch.p
    gamma = 10.0 ** (ch.eb_n0_db / 10.0)
    sigma = math.sqrt(1.0 / (2.0 * gamma))
    symbols = 1.0 - 2.0 * codewords
    noise = rng.normal(0.0, sigma, size=(trials, n_tx))
    if ch.kind == "awgn":
        received = symbols + noise
    else:
        # Known gain, E[a^2] = 1; coherent detection reduces to the sign test.
        gain = rng.rayleigh(scale=math.sqrt(0.5), size=(trials, n_tx))
        received = gain * symbols + noise
    detected = (received < 0.0).astype(np.uint8)
    return detected != codewords


def _simulate_block(
    g: InformationFlowGraph,
    code_matrix: np.ndarray,
    paths_by_receiver: dict[int, list],
    ch: ChannelModel,
    trials: int,
    seed: int,
    salt: int,
    block_index: int,
) -> tuple[int, float, float]:
    """One trial block on its own Philox stream.

    Returns (wrong demand count, sum of per-trial error fractions, sum of
    their squares) so aggregation is order-independent.
    """
    key = np.array(
        [seed & 0xFFFFFFFFFFFFFFFF, salt & 0xFFFFFFFFFFFFFFFF], dtype=np.uint64
    )
    counter = np.array([0, 0, block_index, 0], dtype=np.uint64)
    rng = np.random.Generator(np.random.Philox(key=key, counter=counter))
    n_demands = sum(len(ps) for ps in paths_by_receiver.values())
    messages = rng.integers(0, 2, size=(trials, g.n), dtype=np.uint8)
    codewords = messages @ code_matrix % 2
    wrong_per_trial = np.zeros(trials, dtype=np.int64)
    for receiver in sorted(paths_by_receiver):
        errors = _receiver_error_bits(rng, ch, codewords)
        for path in paths_by_receiver[receiver]:
            if path.l == 0:
                continue
            # Decoded bit is wrong iff an odd number of used symbols flipped;
            # the receiver's own noiseless side information never flips.
            parity = errors[:, list(path.tx_indexes)].sum(axis=1) % 2
            wrong_per_trial += parity.astype(np.int64)
    fractions = wrong_per_trial / n_demands
    return int(wrong_per_trial.sum()), float(fractions.sum()), float((fractions**2).sum())


def monte_carlo(
    g: InformationFlowGraph,
    code: IndexCode,
    ch: ChannelModel,
    trials: int,
    seed: int,
    salt: int = 0,
) -> SimulationResult:
    """Estimate the average demand error rate by direct simulation.

    Per trial: draw a uniform message vector, encode, BPSK-modulate, pass
    every symbol through each receiver's independent channel, hard-detect,
    XOR-decode every demand along its recipe, and count wrong demands.
    Deterministic for a given (seed, salt) regardless of IC_THREADS.
    """
    if trials < 1:
        raise InvalidParameterError(f"need trials >= 1, got {trials}")
    paths = decode_paths(g, code)
    profile = DecodingProfile(paths)
    analytic = analytic_pavg(profile, bit_error_prob(ch))
    paths_by_receiver: dict[int, list] = {}
    for path in paths:
        paths_by_receiver.setdefault(path.receiver, []).append(path)
    matrix = code.matrix(g.n)

    blocks = []
    start = 0
    index = 0
    while start < trials:
        size = min(_BLOCK, trials - start)
        blocks.append((size, index))
        start += size
        index += 1

    workers = max(1, int(os.environ.get("IC_THREADS", "1")))

    def run(block):
        size, block_index = block
        return _simulate_block(
            g, matrix, paths_by_receiver, ch, size, seed, salt, block_index
        )

    if workers == 1 or len(blocks) == 1:
        results = [run(b) for b in blocks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, blocks))

    wrong = sum(r[0] for r in results)
    frac_sum = sum(r[1] for r in results)
    frac_sq_sum = sum(r[2] for r in results)
    estimate = wrong / (trials * profile.demand_count)
    if trials > 1:
        variance = max(0.0, (frac_sq_sum - frac_sum**2 / trials) / (trials - 1))
    else:
        variance = 0.0
    std_err = math.sqrt(variance / trials)
    return SimulationResult(analytic, estimate, std_err, trials, seed, ch.label())


@dataclass(frozen=True)
class SweepPoint:
    code_id: str
    channel: str
    eb_n0_db: Optional[float]
    trials: int
    analytic_pavg: float
    mc_pavg: float
    std_err: float
    total_tx: int


def sweep(
    g: InformationFlowGraph,
    codes: Sequence[tuple[str, IndexCode]],
    kind: str,
    points: Sequence[float],
    trials: int,
    seed: int,
) -> list[SweepPoint]:
    """Monte Carlo sweep: one row per (code, channel point).

    ``points`` holds crossover probabilities for bsc and Eb/N0 dB values
    otherwise.  Every (code, point) cell gets its own stream salt so rows
    are independent and reproducible individually.
    """
    rows = []
    for code_index, (code_id, code) in enumerate(codes):
        profile = DecodingProfile(decode_paths(g, code))
        for point_index, value in enumerate(points):
            ch = bsc(value) if kind == "bsc" else ChannelModel(kind, eb_n0_db=value)
            salt = code_index * 1_000_003 + point_index
            res = monte_carlo(g, code, ch, trials, seed, salt=salt)
            rows.append(
                SweepPoint(
                    code_id,
                    kind,
                    None if kind == "bsc" else value,
                    trials,
                    res.analytic_p_avg,
                    res.mc_estimate,
                    res.mc_std_err,
                    profile.total_tx,
                )
            )
    return rows


def sweep_csv(rows: list[SweepPoint]) -> str:
    lines = ["code_id,channel,eb_n0_db,trials,analytic_pavg,mc_pavg,std_err,total_tx"]
    for r in rows:
        db = "" if r.eb_n0_db is None else f"{r.eb_n0_db:g}"
        lines.append(
            f"{r.code_id},{r.channel},{db},{r.trials},"
            f"{r.analytic_pavg:.8g},{r.mc_pavg:.8g},{r.std_err:.4g},{r.total_tx}"
        )
    return "\n".join(lines) + "\n"
