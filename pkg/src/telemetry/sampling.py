"""Head-based trace sampling.

A trace is kept iff ``hash(sampler_seed, trace_id) / 2**64 < rate``. Because
the hash does not depend on the rate, the keep-set at a lower rate is always a
subset of the keep-set at a higher rate under the same seed.
"""

import hashlib
import struct

import numpy as np

_HASH_SPACE = 2**64


def trace_hash(trace_id: int, sampler_seed: int) -> int:
    """Unsigned 64-bit hash of (sampler_seed, trace_id)."""
    payload = struct.pack("<QQ", sampler_seed % _HASH_SPACE, trace_id % _HASH_SPACE)
    return int.from_bytes(hashlib.blake2b(payload, digest_size=8).digest(), "little")


def head_sample(trace_id: int, rate: float, sampler_seed: int) -> bool:
    """Keep/drop decision for a whole trace.

    Args:
        trace_id: Trace identifier
        rate: Keep probability in [0, 1]
        sampler_seed: Per-run sampler seed

    Returns:
        True to keep every span of the trace
    """
    if rate <= 0:
        return False
    if rate >= 1:
        return True
    return trace_hash(trace_id, sampler_seed) < int(rate * _HASH_SPACE)


def sampler_seed_for(run_seed: int) -> int:
    """Sampler seed derived from the run seed, independent of the simulation stream."""
    state = np.random.SeedSequence(entropy=run_seed, spawn_key=(0x5A3,)).generate_state(1, np.uint64)
    return int(state[0])
