"""Precoders and surface configurations.

Precoders are complex vectors with unit norm. Surface configurations are
vectors of reflection phases in radians (the diagonal of the reflection
matrix). The closed-form rules accept batched channels of shape ``(..., N)``
and act on the last axis; the exhaustive oracles take a single channel.
"""

import numpy as np

from .channel import cascaded_channel

ORACLE_MAX_ELEMENTS = 20
_ORACLE_CHUNK = 1 << 15


def _sign(x):
    # sign(0) -> +1 keeps every weight at full magnitude
    return np.where(x < 0, -1.0, 1.0)


def uniform_precoder(n_elements):
    return np.full(n_elements, 1 / np.sqrt(n_elements), dtype=complex)


def egt_ideal(h):
    """Continuous-phase equal gain transmission, ``w_n = exp(-j arg h_n) / sqrt(N)``."""
    h = np.asarray(h)
    if np.any(h == 0):
        raise ValueError("undefined phase: channel has a zero entry")
    return np.exp(-1j * np.angle(h)) / np.sqrt(h.shape[-1])


def egt_one_bit(h):
    """One-bit equal gain transmission, ``w_n = sign(Re h_n) / sqrt(N)``."""
    h = np.asarray(h)
    return (_sign(h.real) / np.sqrt(h.shape[-1])).astype(complex)


def fis_matrix(n_elements):
    """Fixed surface with every element short-circuited (reflection -1)."""
    return np.full(n_elements, np.pi)


def ris_optimal(h_r, h_t):
    """Continuous RIS phases aligning every reflected term with ``-h_R h_T``."""
    g = np.asarray(h_r) * np.asarray(h_t)
    total = g.sum(axis=-1, keepdims=True)
    if np.any(g == 0) or np.any(total == 0):
        raise ValueError("undefined phase: zero cascaded term")
    return -np.angle(g) + np.angle(-total)


def ris_one_bit(h_r, h_t):
    """One-bit RIS phases in {0, pi} from the sign rule.

    Element ``n`` reflects with ``sign(Re(g_n)) * sign(Re(-sum g))`` where
    ``g_n = h_R[n] h_T[n]``.
    """
    g = np.asarray(h_r) * np.asarray(h_t)
    coeff = _sign(g.real) * _sign(-g.sum(axis=-1, keepdims=True).real)
    return np.where(coeff < 0, np.pi, 0.0)


def _sign_patterns(n, start, stop):
    """Rows ``k`` in ``[start, stop)`` as +/-1 patterns, element 0 most significant.

    Bit 0 maps to +1, so increasing ``k`` walks the patterns in lexicographic
    order with "+" before "-".
    """
    k = np.arange(start, stop, dtype=np.int64)[:, np.newaxis]
    bits = (k >> np.arange(n - 1, -1, -1, dtype=np.int64)) & 1
    return 1.0 - 2.0 * bits


def _exhaustive_argmax(n, objective, n_free):
    """Search the last ``n_free`` bits of an ``n``-bit pattern; first max wins."""
    if n > ORACLE_MAX_ELEMENTS:
        raise ValueError(f"oracle limit exceeded: N={n} > {ORACLE_MAX_ELEMENTS}")
    best_val, best_pattern = -np.inf, None
    total = 1 << n_free
    for start in range(0, total, _ORACLE_CHUNK):
        patterns = _sign_patterns(n, start, min(start + _ORACLE_CHUNK, total))
        values = objective(patterns)
        i = int(np.argmax(values))
        if values[i] > best_val:
            best_val, best_pattern = values[i], patterns[i]
    return best_pattern


def egt_exhaustive(h):
    """Globally optimal one-bit precoder by enumeration.

    A pattern and its negation give the same power, so the first element is
    pinned to +1; ties go to the lexicographically smallest pattern.
    """
    h = np.asarray(h)
    n = h.shape[-1]
    pattern = _exhaustive_argmax(n, lambda s: np.abs(s @ h) ** 2, n - 1)
    return (pattern / np.sqrt(n)).astype(complex)


def ris_one_bit_exhaustive(h_r, h_t):
    """Globally optimal one-bit RIS phases by enumeration over {0, pi}^N."""
    g = np.asarray(h_r) * np.asarray(h_t)
    n = g.shape[-1]
    total = g.sum()
    pattern = _exhaustive_argmax(n, lambda s: np.abs(s @ g - total) ** 2, n)
    return np.where(pattern < 0, np.pi, 0.0)


def precoder_power(h, w, power_w=1.0):
    """Received power ``P_T |h w|^2`` (no conjugation, ``h`` is a row vector)."""
    return power_w * np.abs(np.sum(np.asarray(h) * np.asarray(w), axis=-1)) ** 2


def surface_power(h_r, theta, h_t, power_w=1.0):
    return power_w * np.abs(cascaded_channel(h_r, theta, h_t)) ** 2


def best_of(*rules, score):
    """Combine several configuration rules, keeping the highest-scoring one.

    Each rule maps the channels to a configuration; ``score(config, *channels)``
    returns its power, reduced over the last axis. Ties keep the earliest rule.
    """

    def combined(*channels):
        candidates = [np.broadcast_to(rule(*channels), np.shape(channels[0])) for rule in rules]
        scores = np.stack([score(c, *channels) for c in candidates])
        pick = np.argmax(scores, axis=0)
        return np.choose(pick[..., np.newaxis], candidates)

    return combined
