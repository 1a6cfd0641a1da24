"""Juggling combinatorics of reduced shapes.

S-balls are the orbits of a -> S(a) with more than one element.  Every
ball runs off to minus infinity; it either runs off to plus infinity as
well or tops out at an index nobody throws to.
"""
import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotReduced, RankDeficient, WindowTooSmall
from .field import QQ
from .kernel import _reduced_views, interval_rank, t_set
from .linalg import left_nullspace, rank
from .oracle import rank_from_constraints
from .recmat import RecMat, dense_window, is_reduced, make_pattern


@dataclass(frozen=True)
class Ball:
    """One S-ball: explicit ``core`` plus repeating gap cycles at each end.

    Below ``core[0]`` the members continue by subtracting the gaps of
    ``down`` cyclically.  Above ``core[-1]`` they continue by adding the
    gaps of ``up`` cyclically; ``up`` is None when the ball tops out.
    """

    core: tuple
    down: tuple
    up: tuple = None

    def members(self, lo, hi):
        out = [x for x in self.core if lo <= x <= hi]
        x = self.core[0]
        i = 0
        while x > lo:
            x -= self.down[i % len(self.down)]
            i += 1
            if x <= hi and x >= lo:
                out.append(x)
        if self.up is not None:
            x = self.core[-1]
            i = 0
            while x < hi:
                x += self.up[i % len(self.up)]
                i += 1
                if lo <= x <= hi:
                    out.append(x)
        return sorted(set(out))

    def __contains__(self, x):
        return x in self.members(x, x)

    @property
    def top(self):
        return None if self.up is not None else self.core[-1]

    def to_dict(self):
        return {"core": list(self.core), "down": list(self.down),
                "up": None if self.up is None else list(self.up)}


def _ball_from(C, t):
    pl, pr = C.left_period, C.right_period
    downs = [t]
    seen = {}
    while True:
        x = downs[-1]
        if x < C.start:
            key = x % pl
            if key in seen:
                i = seen[key]
                cyc = tuple(downs[k] - downs[k + 1] for k in range(i, len(downs) - 1))
                downs = downs[:i + 1]
                break
            seen[key] = len(downs) - 1
        downs.append(C.shape(x))
    ups = [t]
    seen = {}
    cyc_up = None
    while True:
        x = ups[-1]
        if x >= C.end:
            key = x % pr
            if key in seen:
                i = seen[key]
                cyc_up = tuple(ups[k + 1] - ups[k] for k in range(i, len(ups) - 1))
                ups = ups[:i + 1]
                break
            seen[key] = len(ups) - 1
        c = C.preimage(x)
        if c is None:
            break
        ups.append(c)
    return Ball(tuple(sorted(set(downs) | set(ups))), cyc, cyc_up)


def balls(C):
    """All S-balls of a reduced matrix, one per element of T_b past the seam."""
    _reduced_views(C)
    b = C.end + C.band
    return [_ball_from(C, t) for t in t_set(C, b).J]


def count_balls(C):
    _reduced_views(C)
    return len(t_set(C, C.end + C.band))


def average_throw(C, side="left"):
    """Average throw height over one period of a tail: sum of a - S(a) over p."""
    pats = C.seq.left if side == "left" else C.seq.right
    return Fraction(sum(p[-1][0] for p in pats), len(pats))


def balls_to_json(C):
    return json.dumps([b.to_dict() for b in balls(C)], indent=1)


def _box_points(C, rows, cols):
    a, b = rows
    c, d = cols
    pts = set()
    for i in range(max(a, c), min(b, d) + 1):
        if C.shape(i) != i:
            pts.add((i, i))
    for j in range(c, d + 1):
        s = C.shape(j)
        if s != j and a <= s <= b:
            pts.add((s, j))
    return pts


def balls_in_box(C, rows, cols):
    """Number of S-balls in the box rows x cols."""
    if not is_reduced(C):
        raise NotReduced("balls_in_box needs a reduced matrix")
    pts = _box_points(C, rows, cols)
    parent = {p: p for p in pts}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    def join(p, q):
        if p in parent and q in parent:
            parent[find(p)] = find(q)

    lo = min(rows[0], cols[0])
    hi = max(rows[1], cols[1])
    for i in range(lo, hi + C.band + 1):
        s = C.shape(i)
        if s == i:
            continue
        join((i, i), (s, i))
        join((s, i), (s, s))
    return len({find(p) for p in pts})


def box_condition(rows, cols):
    a, b = rows
    c, d = cols
    return b - c >= -1 and min(a - c, b - d) <= 0


@dataclass(frozen=True)
class BoxCheck:
    rank: int
    balls: int
    condition: bool

    @property
    def ok(self):
        if self.rank < self.balls:
            return False
        return self.rank == self.balls or not self.condition


def box_rank_check(C, rows, cols):
    v = _reduced_views(C)
    W = dense_window(v.sol, rows, cols)
    r = rank(W.to_lists(), W.ncols, C.field)
    return BoxCheck(r, balls_in_box(C, rows, cols), box_condition(rows, cols))


def rank_matrix_entry(C, a, b):
    """R[a, b] = dim of ker(C) projected to [a, b], read off the shape."""
    if not is_reduced(C):
        raise NotReduced("rank_matrix_entry needs a reduced matrix")
    return interval_rank(C, a, b)


def second_difference(R, a, b):
    """R[a,b] - R[a+1,b] - R[a,b-1] + R[a+1,b-1], with R[i,i-1] = 0, R[i+1,i-1] = -1."""
    def val(x, y):
        if y == x - 1:
            return 0
        if y == x - 2:
            return -1
        return R(x, y)
    return val(a, b) - val(a + 1, b) - val(a, b - 1) + val(a + 1, b - 1)


def defects(V, box, margin=1, field=QQ):
    """Defect positions (row, col) with a <= row <= col <= b.

    ``V`` is either a reduced RecMat, whose defects are its pivot pairs
    (S(c), c), or a list of ``{index: coeff}`` constraints, whose defects
    come from second differences of the brute-force rank matrix.
    """
    a, b = box
    if isinstance(V, RecMat):
        if not is_reduced(V):
            raise NotReduced("defects of a matrix need it reduced")
        return [(V.shape(c), c) for c in range(a, b + 1) if V.shape(c) >= a]
    memo = {}

    def R(x, y):
        if (x, y) not in memo:
            memo[x, y] = rank_from_constraints(V, (x, y), margin, field)
        return memo[x, y]

    out = []
    for y in range(a, b + 1):
        for x in range(a, y + 1):
            if second_difference(R, x, y) == -1:
                out.append((x, y))
    return out


def rank_table(V, box, margin=1, field=QQ):
    """{(x, y): R[x, y]} for a <= x <= y <= b."""
    a, b = box
    out = {}
    for x in range(a, b + 1):
        for y in range(x, b + 1):
            if isinstance(V, RecMat):
                out[x, y] = rank_matrix_entry(V, x, y)
            else:
                out[x, y] = rank_from_constraints(V, (x, y), margin, field)
    return out


def reduced_from_kernel(basis, rows=None):
    """Rebuild reduced rows from a window basis of the kernel.

    ``basis`` is a DenseWindow whose columns span the kernel projected to
    its row range.  For every column b' whose defect (S(b'), b') lies in the
    window, the unique relation supported on T_[S(b'), b'-1] plus b' is
    extracted and normalized to coefficient 1 at b'.  Returns
    ``{b': pattern}``.  ``rows`` optionally lists rows that must be found.
    """
    a, b = basis.rows
    F = basis.field
    M = basis.to_lists()
    k = basis.ncols
    memo = {}

    def R(x, y):
        if (x, y) not in memo:
            memo[x, y] = rank(M[x - a:y - a + 1], k, F) if k else 0
        return memo[x, y]

    shape = {}
    for y in range(a, b + 1):
        for x in range(y, a - 1, -1):
            if second_difference(R, x, y) == -1:
                shape[y] = x
                break
    out = {}
    for y, s in shape.items():
        hit = {shape[c] for c in range(s, y) if c in shape}
        idx = [j for j in range(s, y) if j not in hit] + [y]
        sub = [M[j - a] for j in idx]
        if k == 0:
            null = [[F.zero] * (len(idx) - 1) + [F.one]] if len(idx) == 1 else []
        else:
            null = left_nullspace(sub, F)
        if len(null) != 1 or not null[0][-1]:
            raise RankDeficient(f"no unique relation for row {y}")
        lam = null[0]
        scale = F.one / lam[-1]
        out[y] = make_pattern({y - j: c * scale for j, c in zip(idx, lam) if c}, F)
    for r in rows or ():
        if r not in out:
            raise WindowTooSmall(f"row {r} is not determined inside the window")
    return out


def matrix_from_rows(rows, left_period, right_period, field=QQ):
    """Assemble contiguous recovered rows into a RecMat.

    The first ``left_period`` rows become the left tail and the last
    ``right_period`` rows the right tail.
    """
    keys = sorted(rows)
    lo, hi = keys[0], keys[-1]
    if keys != list(range(lo, hi + 1)):
        raise WindowTooSmall("recovered rows are not contiguous")
    if hi - lo + 1 < left_period + right_period:
        raise WindowTooSmall("not enough rows for both tails")
    from .recmat import EPSeq
    left = [None] * left_period
    for x in range(lo, lo + left_period):
        left[x % left_period] = rows[x]
    right = [None] * right_period
    for x in range(hi - right_period + 1, hi + 1):
        right[x % right_period] = rows[x]
    start = lo + left_period
    middle = [rows[x] for x in range(start, hi - right_period + 1)]
    return RecMat(EPSeq(left, start, middle, right).canonical(), field)
