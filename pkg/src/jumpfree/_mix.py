"""Stable integer hashing for seeded rules.

Python's ``hash`` is not a good fit here (salted for str, and its int-tuple
mixing is an implementation detail), so seeded rules hash through splitmix64.
"""

_MASK = (1 << 64) - 1


def splitmix64(x):
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


def _flatten(values):
    for v in values:
        if isinstance(v, (tuple, list)):
            yield from _flatten(v)
        else:
            yield int(v)


def mix(*values):
    """Hash nested tuples of ints to a 64-bit int."""
    h = 0x243F6A8885A308D3
    for v in _flatten(values):
        h = splitmix64(h ^ (v & _MASK))
    return h


def unit(*values):
    """Hash to a float in [0, 1)."""
    return (mix(*values) >> 11) / float(1 << 53)
