from __future__ import annotations

import numpy as np

from turnscope.core.joints import NUM_JOINTS
from turnscope.core.skeleton import SkeletonSequence
from turnscope.synth.params import NoiseParams


def derived_rng(*keys: int) -> np.random.Generator:
    """Generator for one item of a seeded run; ``keys`` are (seed, ..., item index)."""
    return np.random.default_rng(np.random.SeedSequence([int(k) for k in keys]))


def derive_seed(*keys: int) -> int:
    return int(np.random.SeedSequence([int(k) for k in keys]).generate_state(1, dtype=np.uint64)[0])


def add_noise(seq: SkeletonSequence, n: NoiseParams) -> SkeletonSequence:
    """Gaussian jitter on present joints, then independent per-joint dropout."""
    if n.jitter_sd == 0 and n.dropout_prob == 0:
        return seq.with_positions(seq.positions)

    rng = np.random.default_rng(n.seed)
    positions = np.array(seq.positions)
    if n.jitter_sd > 0:
        positions = positions + rng.normal(0.0, n.jitter_sd, size=positions.shape)
    if n.dropout_prob > 0:
        dropped = rng.random((seq.num_frames, NUM_JOINTS)) < n.dropout_prob
        positions[dropped] = np.nan
    return seq.with_positions(positions)
