"""Row reduction to the unique reduced equivalent matrix.

The work happens on augmented rows (pattern, rhs) so that an affine right
hand side is carried through the same row operations.

reduce() runs in two phases.  The periodic left tail is reduced first by
simultaneous steps, one residue class at a time; such a step touches one
residue class of target rows using a different residue class of pivot
rows, so it is multiplication by a trivial factor.  Then rows from the
seam onward are finalized one by one in increasing order, each eliminated
against the already final rows above it.  Once a window of final rows
repeats, up to a shift that is a multiple of the right period, every later
row repeats too, and that fixes the new right tail.
"""
import random

from .errors import (ContainmentViolated, FuelExhausted, NonPeriodicLimit,
                     NotUnitriangular, PivotZero, SeamInconsistency)
from .kernel import views
from .recmat import (EPSeq, DenseWindow, RecMat, is_reduced, make_pattern,
                     zip_seqs)

DEFAULT_FUEL = 1000
ORDERS = ("ascending", "descending", "random")


def _zero_rhs(C):
    return EPSeq([C.field.zero])


def _orderer(order, seed):
    if order not in ORDERS:
        raise ValueError(f"unknown sweep order {order!r}")
    rng = random.Random(seed)

    def arrange(xs):
        xs = list(xs)
        if order == "descending":
            xs.reverse()
        elif order == "random":
            rng.shuffle(xs)
        return xs

    def pick(xs):
        if order == "ascending":
            return min(xs)
        if order == "descending":
            return max(xs)
        return rng.choice(sorted(xs))

    return arrange, pick


def _reduce_left(left, field, fuel, arrange):
    """Reduce a purely periodic list of augmented rows in place.

    Rows are ``[dict offset -> coeff, rhs]`` indexed by residue.
    """
    p = len(left)
    for _ in range(fuel):
        changed = False
        for r in arrange(range(p)):
            pat_b, rhs_b = left[r]
            hb = max(pat_b)
            piv = pat_b[hb]
            width = max(max(row[0]) for row in left)
            for t in arrange(range(r + 1, r + width + 1)):
                if (t - r) % p == 0:
                    continue
                row = left[t % p]
                off = t - r + hb
                x = row[0].get(off)
                if not x:
                    continue
                alpha = x / piv
                pat = row[0]
                for d, c in pat_b.items():
                    k = t - r + d
                    v = pat.get(k, field.zero) - alpha * c
                    if v:
                        pat[k] = v
                    else:
                        pat.pop(k, None)
                row[1] = row[1] - alpha * rhs_b
                changed = True
        if not changed:
            return
    raise FuelExhausted(f"left tail not reduced after {fuel} passes")


def _rel(row_abs, a):
    cols, rhs = row_abs
    return (tuple(sorted((a - j, c) for j, c in cols.items())), rhs)


def _reduce_aug(seq, field, fuel=DEFAULT_FUEL, order="ascending", seed=None):
    arrange, pick = _orderer(order, seed)
    pl = len(seq.left)
    left = [[dict(pat), rhs] for pat, rhs in seq.left]
    _reduce_left(left, field, fuel, arrange)
    left_items = [(tuple(sorted(pat.items())), rhs) for pat, rhs in left]
    start, end = seq.start, seq.end
    wl = max(max(pat) for pat, _ in left)
    wr = max(pat[-1][0] for pat, _ in seq.right)

    final = {}
    pivcol = {}

    def final_row(c):
        if c < start:
            pat, rhs = left_items[c % pl]
            return {c - d: v for d, v in pat}, rhs
        return final[c]

    def pivot_row(j):
        if j in pivcol:
            return pivcol[j]
        for c in range(j, min(j + wl, start - 1) + 1):
            if c < start and c - left_items[c % pl][0][-1][0] == j:
                return c
        return None

    seen = {}
    limit = end + max(fuel, 1) * len(seq.right) + wr + 1
    a = start
    while True:
        if a > limit:
            raise NonPeriodicLimit(
                f"no repeating window of final rows up to row {limit}")
        pat, rhs = seq.at(a)
        cols = {a - d: c for d, c in pat}
        steps = 0
        while True:
            cands = [j for j in cols if j < a and pivot_row(j) is not None]
            if not cands:
                break
            steps += 1
            if steps > 10 * (len(cols) + wl + wr + 1) ** 2:
                raise FuelExhausted(f"row {a} did not settle")
            j = pick(cands)
            b = pivot_row(j)
            bcols, brhs = final_row(b)
            alpha = cols[j] / bcols[j]
            for k, v in bcols.items():
                w = cols.get(k, field.zero) - alpha * v
                if w:
                    cols[k] = w
                else:
                    cols.pop(k, None)
            rhs = rhs - alpha * brhs
        final[a] = (cols, rhs)
        pivcol[min(cols)] = a
        if a >= end:
            key = (a % len(seq.right),) + tuple(
                _rel(final_row(c), c) for c in range(a - wr, a))
            if key in seen:
                a0 = seen[key]
                period = a - a0
                rstart = max(start, a0 - wr)
                middle = [_rel(final_row(c), c) for c in range(start, rstart)]
                right = [None] * period
                for c in range(rstart, rstart + period):
                    right[c % period] = _rel(final_row(c), c)
                return EPSeq(left_items, start, middle, right).canonical()
            seen[key] = a
        a += 1


def reduce_system(C, rhs=None, fuel=DEFAULT_FUEL, order="ascending", seed=None):
    """Reduce C and carry the right hand side along: returns (C', rhs')."""
    if rhs is None:
        rhs = _zero_rhs(C)
    seq = zip_seqs(C.seq, rhs)
    out = _reduce_aug(seq, C.field, fuel, order, seed)
    mat = out.map(lambda item: item[0])
    vec = out.map(lambda item: item[1])
    return RecMat(mat.canonical(), C.field), vec.canonical()


def reduce(C, fuel=DEFAULT_FUEL, order="ascending", seed=None):
    """The unique reduced recurrence matrix with the same kernel as C."""
    return reduce_system(C, None, fuel, order, seed)[0]


def is_trivial(C, **kw):
    R = reduce(C, **kw)
    lo, hi = R.check_window()
    return all(R.shape(a) == a for a in range(lo, hi + 1))


def equivalent(C, C2, **kw):
    if C.field != C2.field:
        raise NotUnitriangular("matrices over different fields")
    return reduce(C, **kw) == reduce(C2, **kw)


def _pattern_sub(pat, pivpat, shift, alpha, field):
    acc = dict(pat)
    for d, c in pivpat:
        k = shift + d
        acc[k] = acc.get(k, field.zero) - alpha * c
    return make_pattern({k: v for k, v in acc.items() if v}, field)


def row_reduce_step(C, pivot_row, target_row):
    """Subtract a multiple of row ``pivot_row`` from row ``target_row``.

    The multiple clears the entry of the target row in the pivot column.  On
    a purely periodic matrix the step is applied to the target's whole
    residue class.  Otherwise a target in a periodic tail is handled for its
    residue class in that tail (the rows below the seam for the left tail,
    the rows from the target on for the right tail), so the result stays
    finitely described.
    """
    F = C.field
    p, t = pivot_row, target_row
    s = C.shape(p)
    x = C.entry(t, s)
    if t <= p or not x:
        raise PivotZero(f"row {t} has no entry in pivot column {s} of row {p}")
    alpha = x / C.pivot(p)
    k = t - p
    if C.is_periodic():
        # one residue class, on the whole line
        seq = C.seq.canonical()
        pl = len(seq.left)
        if k % pl == 0:
            raise SeamInconsistency("pivot and target share a residue class")
        left = list(seq.left)
        left[t % pl] = _pattern_sub(left[t % pl], left[p % pl], k, alpha, F)
        return RecMat(EPSeq(left, 0, (), left).canonical(), F)
    seq = C.seq
    if t < seq.start:
        pl = len(seq.left)
        if k % pl == 0:
            raise SeamInconsistency("pivot and target share a residue class")
        left = list(seq.left)
        left[t % pl] = _pattern_sub(left[t % pl], left[p % pl], k, alpha, F)
        return RecMat(EPSeq(left, seq.start, seq.middle, seq.right), F)
    if t < seq.end:
        mid = list(seq.middle)
        i = t - seq.start
        mid[i] = _pattern_sub(mid[i], C.row(p), k, alpha, F)
        return RecMat(EPSeq(seq.left, seq.start, mid, seq.right), F)
    pr = len(seq.right)
    if p >= seq.end and k % pr != 0:
        grown = seq.expand(seq.start, t)
        right = list(seq.right)
        right[t % pr] = _pattern_sub(right[t % pr], right[p % pr], k, alpha, F)
        return RecMat(EPSeq(grown.left, grown.start, grown.middle, right), F)
    if p >= seq.end:
        raise SeamInconsistency("pivot and target share a residue class")
    grown = seq.expand(seq.start, t + 1)
    mid = list(grown.middle)
    i = t - grown.start
    mid[i] = _pattern_sub(mid[i], C.row(p), k, alpha, F)
    return RecMat(EPSeq(grown.left, grown.start, mid, grown.right), F)


def factor_witness(C, C2, window):
    """Window of D = C2 Adj(C), checked against D C = C2.

    D is truncated to the window's columns.  The check covers the rows in
    the upper half of the window, at every column the truncated product can
    reach.  When ker(C) is contained in ker(C2), D is banded and the check
    passes once the window is wider than twice the band of D.
    """
    a, b = window
    F = C.field
    adj = views(C).adj
    D = {}
    for i in range(a, b + 1):
        for j in range(a, i + 1):
            s = F.zero
            for k in range(j, i + 1):
                x = C2.entry(i, k)
                if x:
                    s = s + x * adj.entry(k, j)
            D[i, j] = s
    mid = (a + b + 1) // 2
    for i in range(mid, b + 1):
        for j in range(a - C.band, i + 1):
            s = F.zero
            for k in range(max(a, j), i + 1):
                d = D[i, k]
                if d:
                    s = s + d * C.entry(k, j)
            if s != C2.entry(i, j):
                raise ContainmentViolated(
                    f"D*C differs from C2 at ({i}, {j}); kernel not contained")
    grid = tuple(tuple(D[i, j] if j <= i else F.zero for j in range(a, b + 1))
                 for i in range(a, b + 1))
    return DenseWindow((a, b), (a, b), grid, F)


__all__ = ["reduce", "reduce_system", "is_trivial", "equivalent",
           "row_reduce_step", "factor_witness", "is_reduced", "ORDERS"]
