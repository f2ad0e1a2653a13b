"""Counter-based random streams.

Every random draw in fqilab comes from a Philox generator addressed by a
key (the seed) and a counter ``(block, step, stream, 0)``. Two draws that
share a key but differ in any counter field are independent, and a draw
can be reproduced without replaying anything that came before it. This
makes concurrent querying of a simulator reproducible.
"""

import numpy as np


# Stream identifiers, the third counter field
STREAM_TRANSITION = 0
STREAM_INITIAL = 1
STREAM_ACTION = 2
STREAM_PLAN = 3
STREAM_INIT = 4
STREAM_ROLLOUT = 5
STREAM_ENV = 6
STREAM_RADEMACHER = 7


def stream_rng(seed, block=0, step=0, stream=0):
    """Get a numpy Generator for the given seed and counter address.

    Parameters
    ----------
    seed : int
        Non-negative key of the stream family.
    block : int
        Index of the query batch (or chunk, trial, ...).
    step : int
        Step index h, or 0 when not applicable.
    stream : int
        One of the ``STREAM_*`` constants.
    """
    seed = int(seed)
    if seed < 0:
        raise ValueError(f"Seed must be non-negative, got {seed}.")
    counter = np.array([int(block), int(step), int(stream), 0], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=seed, counter=counter))
