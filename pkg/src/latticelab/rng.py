"""Seeded random streams.

All sampling uses numpy's PCG64 bit generator (a 128-bit LCG with a 64-bit
permuted output).  A run is identified by one integer seed; independent
sub-streams are derived by fixed integer offsets through ``SeedSequence``
spawn keys, so stream ``k`` of seed ``s`` is the same regardless of how many
other streams were drawn before it.
"""

import numpy as np


def stream(seed, offset=0):
    """Return the generator for sub-stream ``offset`` of ``seed``."""
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(offset),))
    return np.random.Generator(np.random.PCG64(ss))
