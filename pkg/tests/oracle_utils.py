"""Independent brute-force oracles shared by the test suite.

Everything here works by direct enumeration over observed words, never
through the induction/decomposition code paths it is used to check.
"""

from fractions import Fraction


def distinct_factors(word, length):
    """All distinct factors of the given length occurring in ``word``."""
    return {word[i:i + length] for i in range(len(word) - length + 1)}


def bispecial_factors(word, max_len):
    """Nonempty bispecial factors of an observed word, by direct extension counts.

    A factor is bispecial when it extends on the right and on the left in at
    least two ways inside the observed factor set.
    """
    out = set()
    for ln in range(1, max_len + 1):
        rights = {}
        lefts = {}
        for i in range(len(word) - ln):
            w = word[i:i + ln]
            rights.setdefault(w, set()).add(word[i + ln])
            if i > 0:
                lefts.setdefault(w, set()).add(word[i - 1])
        for w in rights:
            if len(rights[w]) >= 2 and len(lefts.get(w, ())) >= 2:
                out.add(w)
    return out


def return_words(word, block):
    """Words Z with ``block`` occurring in block+Z exactly as prefix and suffix."""
    starts = []
    pos = word.find(block)
    while pos != -1:
        starts.append(pos)
        pos = word.find(block, pos + 1)
    k = len(block)
    return {word[a + k:b + k] for a, b in zip(starts, starts[1:])
            if b + k <= len(word)}


def exhaustive_decomposition_exists(pairs):
    """Try every ordered split {1..q} = I1 | J1 | I2 directly."""
    q = len(pairs[0][0])
    counts = [0] * q
    for v, v2 in pairs:
        for t in range(q):
            if v[t] != v2[t]:
                counts[t] += 1
    prefix = [0]
    for c in counts:
        prefix.append(prefix[-1] + c)

    def heavy(lo, hi):  # 0-based [lo, hi)
        return lo >= hi or prefix[hi] - prefix[lo] >= hi - lo

    for a in range(q + 1):
        for b in range(a, q + 1):
            if prefix[b] - prefix[a] == 0 and heavy(0, a) and heavy(b, q):
                return True
    return heavy(0, q)


def monte_carlo_symdiff(shift_float, atom, n, rng):
    """Monte-Carlo estimate of |A symdiff (A - t)| for A an interval mod 1."""
    lo, hi = atom
    hits = 0
    for _ in range(n):
        x = rng.random()
        y = x + shift_float
        y -= int(y)
        if (lo <= x < hi) != (lo <= y < hi):
            hits += 1
    return hits / n
