"""Pure-Python grid kernels (fallback for the compiled ``_kernels``)."""


def forward_grid(diffs, count):
    """Successive values ``Q(0), Q(1), ...`` of an integer polynomial.

    ``diffs`` holds the forward differences ``[Q(0), dQ(0), d2Q(0), ...]``;
    each step costs ``len(diffs) - 1`` integer additions.
    """
    acc = list(diffs)
    d = len(acc) - 1
    out = [0] * count
    for i in range(count):
        out[i] = acc[0]
        for j in range(d):
            acc[j] += acc[j + 1]
    return out


def scaled_round(values, den, shift):
    """``round(v * 2**shift / den)`` for each integer ``v`` (ties upward)."""
    twice = 2 * den
    return [((v << (shift + 1)) + den) // twice for v in values]
