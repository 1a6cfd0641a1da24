"""Random elementary trivial factors and products, for property checks."""
import random

from .recmat import EPSeq, RecMat, compose_banded, make_pattern


def elementary_factor(C, rng, max_shift=3, coeffs=(-2, -1, 1, 2, 3)):
    """A random trivial factor E = Id + (one entry per row of a class).

    The factor has one nonzero off-diagonal entry alpha at offset k, placed
    in every row of one residue class of one region of C's description:
    the left tail, a single middle row, or the right tail.  A class step
    requires the offset not to be a multiple of the period, which forces
    E to have a banded inverse.
    """
    F = C.field
    one = {0: 1}
    alpha = rng.choice(coeffs)
    region = rng.choice(["left", "middle", "right"])
    span = max(2, C.band + 1)
    if region == "middle":
        pos = C.start + rng.randrange(-span, (C.end - C.start) + span)
        k = rng.randint(1, max_shift)
        seq = EPSeq([make_pattern(one, F)], pos, [make_pattern({0: 1, k: alpha}, F)])
        return RecMat(seq, F)
    p = C.left_period if region == "left" else C.right_period
    p = p * rng.choice([1, 2]) if p > 1 else rng.choice([2, 3])
    r = rng.randrange(p)
    ks = [k for k in range(1, max_shift + 1) if k % p]
    k = rng.choice(ks)
    pats = [make_pattern({0: 1, k: alpha} if i == r else one, F) for i in range(p)]
    ident = [make_pattern(one, F)]
    if region == "left":
        seq = EPSeq(pats, C.start, (), ident)
    else:
        seq = EPSeq(ident, C.end, (), pats)
    return RecMat(seq, F)


def scramble(C, m, seed=None):
    """E_m ... E_1 C for random elementary trivial factors; returns (product, factors)."""
    rng = random.Random(seed)
    out = C
    factors = []
    for _ in range(m):
        E = elementary_factor(C, rng)
        factors.append(E)
        out = compose_banded(E, out, as_recmat=True)
    return out, factors
