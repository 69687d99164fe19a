"""Reproducible random number streams.

Every sampler in this package draws from an :class:`RngStream`, a thin
wrapper around ``numpy.random.Generator`` seeded through a Philox
counter-based bit generator.  Streams are identified by a ``(seed,
stream_id)`` pair: the same pair always reproduces the same draw sequence,
and distinct stream ids give statistically independent streams.  Parallel
forest updates each own one stream, which makes multi-worker runs
reproduce the single-worker trajectory exactly.
"""

from __future__ import annotations

import numpy as np

__all__ = ["RngStream"]


class RngStream:
    """A single-owner random stream keyed by (seed, stream_id)."""

    def __init__(self, seed: int, stream_id: int = 0):
        if not 0 <= int(seed) < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if int(stream_id) < 0:
            raise ValueError("stream_id must be nonnegative")
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_id,))
        self.gen = np.random.Generator(np.random.Philox(ss))

    def substream(self, stream_id: int) -> "RngStream":
        """A sibling stream with the same seed and a different id."""
        return RngStream(self.seed, stream_id)

    # Convenience passthroughs used in hot loops.
    def uniform(self, *args, **kwargs):
        return self.gen.uniform(*args, **kwargs)

    def random(self, *args, **kwargs):
        return self.gen.random(*args, **kwargs)

    def integers(self, *args, **kwargs):
        return self.gen.integers(*args, **kwargs)

    def normal(self, *args, **kwargs):
        return self.gen.normal(*args, **kwargs)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id})"
