"""Brute-force cross-checks that share no code with the fast paths.

Everything here works on finite windows of the infinite system and uses
plain exact elimination from ``linalg``.
"""
from .errors import NoStabilization
from .field import QQ
from .linalg import column_echelon, det, nullspace
from .recmat import DenseWindow

MARGIN_CAP = 1 << 12


def _window_basis(vectors, a, b, field):
    cols = column_echelon(vectors, b - a + 1, field)
    grid = tuple(tuple(v[i] for v in cols) for i in range(b - a + 1))
    return DenseWindow((a, b), (0, len(cols) - 1), grid, field)


def _projected(C, a, b, m):
    lo = a - m
    n = b - lo + 1
    zero = C.field.zero
    rows = []
    for r in range(lo, b + 1):
        if C.shape(r) < lo:
            continue
        v = [zero] * n
        for d, c in C.row(r):
            v[r - d - lo] = c
        rows.append(v)
    if rows:
        null = nullspace(rows, n, C.field)
    else:
        null = [[C.field.one if i == j else zero for i in range(n)] for j in range(n)]
    proj = [v[a - lo:] for v in null]
    return column_echelon(proj, b - a + 1, C.field)


def _stable(project, m, cap):
    """Double the margin until two doublings in a row leave the answer unchanged."""
    seen = [project(m)]
    while True:
        if len(seen) >= 3 and seen[-1] == seen[-2] == seen[-3]:
            return seen[-1]
        if m > cap:
            raise NoStabilization(
                f"margin {m} reached, last dims {len(seen[-2])} and {len(seen[-1])}")
        m *= 2
        seen.append(project(m))


def windowed_nullspace(C, interval, margin=None, cap=MARGIN_CAP):
    """Basis of the projection of ker(C) onto ``interval``.

    Rows reaching past the right end of the interval are dropped: their
    own diagonal variable lies outside, so they never constrain the window.
    Rows reaching left of the margin are dropped too, and the margin is
    doubled until the projection stops changing.  Across a seam the first
    margin already reaches a little way into the left tail, since
    constraints from there can take several periods to show up inside the
    window.
    """
    a, b = interval
    if margin is None:
        margin = max(C.band, 1)
        if not C.is_periodic():
            margin = max(margin, a - (C.start - 2 * (C.band + C.left_period)))
    basis = _stable(lambda m: _projected(C, a, b, m), margin, cap)
    grid = tuple(tuple(v[i] for v in basis) for i in range(b - a + 1))
    return DenseWindow((a, b), (0, len(basis) - 1), grid, C.field)


def nullspace_dim(C, interval, margin=None):
    return windowed_nullspace(C, interval, margin).ncols


def det_minor_adjugate(C, a, b):
    """Adj(C)[a, b] from the signed minor on rows [b+1, a], cols [b, a-1]."""
    if a < b:
        raise ValueError("only entries on or below the diagonal")
    n = a - b
    M = [[C.entry(b + 1 + i, b + j) for j in range(n)] for i in range(n)]
    d = det(M, C.field)
    return d if (a + b) % 2 == 0 else -d


def _constraint_rank(constraints, a, b, m, field):
    lo, hi = a - m, b + m
    n = hi - lo + 1
    zero = field.zero
    rows = []
    for con in constraints:
        idx = [i for i, c in con.items() if c]
        if not idx or min(idx) < lo or max(idx) > hi:
            continue
        v = [zero] * n
        for i, c in con.items():
            v[i - lo] = field(c)
        rows.append(v)
    if rows:
        null = nullspace(rows, n, field)
    else:
        null = [[field.one if i == j else zero for i in range(n)] for j in range(n)]
    proj = [v[a - lo:b - lo + 1] for v in null]
    return column_echelon(proj, b - a + 1, field)


def rank_from_constraints(constraints, interval, margin=1, field=QQ, cap=MARGIN_CAP):
    """dim of the projection onto ``interval`` of the common solutions.

    ``constraints`` is a list of finitely supported row vectors given as
    ``{index: coeff}`` dicts.  Only constraints inside the margin-extended
    window are used; the margin doubles until the answer is stable.  The
    list is finite, so the first margin is widened to reach every
    constraint and the answer is exact from the start.
    """
    a, b = interval
    if a > b:
        return 0
    m = max(int(margin), 1)
    idx = [i for con in constraints for i, c in con.items() if c]
    if idx:
        m = max(m, a - min(idx), max(idx) - b)
    return len(_stable(lambda k: _constraint_rank(constraints, a, b, k, field), m, cap))
