"""
Monte-Carlo drawings: your ticket is fixed, the N - 1 other tickets are uniform random.

Each trial draws the tier your ticket lands in, then the number of other tickets sharing
that tier from Binomial(N - 1, p_tier). Trials are grouped in chunks of `chunk_size`; chunk i
uses its own PCG64 stream, child i of SeedSequence(seed). Results therefore only depend on
(seed, chunk_size), never on the number of workers.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from lottery.errors import DomainError

RNG_ALGORITHM = "PCG64"
DEFAULT_CHUNK_SIZE = 100_000


@dataclass(frozen=True)
class SimResult:
    n_trials: int
    mean_ror: float
    var_ror: float
    std_error: float
    algorithm: str = RNG_ALGORITHM
    seed: int = None
    chunk_size: int = DEFAULT_CHUNK_SIZE


def _tier_table(config, drawing, N):
    """Probability, pot and sharing probability of each outcome of one ticket (last: losing).
    Fixed prizes are never shared: their sharing probability is 0.
    """
    probabilities, pots, share_probabilities = [], [], []
    for tier in config.tiers:
        probabilities.append(tier.probability)
        if tier.kind == "jackpot":
            pots.append(drawing.J)
            share_probabilities.append(tier.probability)
        elif tier.kind == "pari":
            pots.append(config.pari[tier.index].rate * N)
            share_probabilities.append(tier.probability)
        else:
            pots.append(config.fixed[tier.index].payout_after_tax)
            share_probabilities.append(0.0)

    probabilities.append(max(0.0, 1.0 - math.fsum(probabilities)))
    pots.append(0.0)
    share_probabilities.append(0.0)

    probabilities = np.array(probabilities)
    return probabilities / probabilities.sum(), np.array(pots), np.array(share_probabilities)


def _run_chunk(seed_sequence, size, N, table):
    """Returns (size, mean, sum of squared deviations) of the realized rates of return"""
    probabilities, pots, share_probabilities = table
    rng = np.random.Generator(np.random.PCG64(seed_sequence))

    tiers = rng.choice(len(probabilities), size=size, p=probabilities)
    others = rng.binomial(N - 1, share_probabilities[tiers])
    ror = pots[tiers] / (1 + others) - 1

    mean = math.fsum(ror) / size
    return size, mean, math.fsum((ror - mean) ** 2)


def simulate_drawings(config, drawing, n_trials, seed, chunk_size=DEFAULT_CHUNK_SIZE, workers=1):
    """Simulates `n_trials` independent drawings and aggregates the rate of return of your ticket"""
    if isinstance(n_trials, bool) or not isinstance(n_trials, int) or n_trials < 1:
        raise DomainError(f"number of trials must be a positive integer (was: {n_trials})")
    if chunk_size < 1 or workers < 1:
        raise DomainError(f"chunk size and workers must be positive (was: {chunk_size}, {workers})")
    if drawing.N != math.floor(drawing.N):
        raise DomainError(f"simulated drawings need an integer number of tickets sold (was: N={drawing.N})")

    N = int(drawing.N)
    table = _tier_table(config, drawing, N)

    sizes = [chunk_size] * (n_trials // chunk_size)
    if n_trials % chunk_size:
        sizes.append(n_trials % chunk_size)
    streams = np.random.SeedSequence(seed).spawn(len(sizes))
    logging.debug(f"simulating {n_trials} drawings of '{config.name}' in {len(sizes)} chunks, seed {seed}")

    with ThreadPoolExecutor(max_workers=workers) as executor:
        chunks = list(executor.map(lambda job: _run_chunk(job[0], job[1], N, table), zip(streams, sizes)))

    # Chan et al. pairwise combination, in chunk order
    mean = math.fsum(size * chunk_mean for size, chunk_mean, _ in chunks) / n_trials
    m2 = math.fsum(m2 + size * (chunk_mean - mean) ** 2 for size, chunk_mean, m2 in chunks)
    var = m2 / (n_trials - 1) if n_trials > 1 else 0.0

    return SimResult(
        n_trials=n_trials,
        mean_ror=mean,
        var_ror=var,
        std_error=math.sqrt(var / n_trials),
        seed=seed,
        chunk_size=chunk_size,
    )
