"""Adjugate, solution and splitting matrices, schedules and solvers.

All derived matrices are lazy views over a RecMat.  Entries are computed by
substitution: forward substitution for the adjugate, and substitution on
the upper unitriangular matrix C*P for the upper adjugate.
"""
from collections import deque
from dataclasses import dataclass

from .errors import (IndexOutOfRange, MissingInitial, NotASchedule,
                     NotReduced)
from .recmat import DenseWindow, PivotMatrix, is_reduced


class AdjView:
    """Adj(C): the lower unitriangular inverse of C."""

    kind = "adj"

    def __init__(self, C):
        self.C = C
        self.field = C.field
        self._cols = {}

    def entry(self, a, b):
        if a < b:
            return self.field.zero
        col = self._cols.get(b)
        if col is None:
            col = self._cols[b] = [self.field.one]
        C = self.C
        zero = self.field.zero
        while len(col) <= a - b:
            r = b + len(col)
            s = zero
            for d, c in C.row(r):
                j = r - d
                if d and j >= b:
                    x = col[j - b]
                    if x:
                        s = s + c * x
            col.append(-s)
        return col[a - b]

    def row_support(self, a):
        return (None, a)

    def col_support(self, b):
        return (b, None)


class CPView:
    """C*P, upper unitriangular when C is reduced."""

    kind = "cp"

    def __init__(self, C):
        self.C = C
        self.field = C.field

    def entry(self, a, b):
        C = self.C
        s = C.shape(b)
        if a < s:
            return self.field.zero
        return C.entry(a, s) / C.pivot(b)

    def row_support(self, a):
        return (a, a + self.C.band)

    def col_support(self, b):
        return (self.C.shape(b), b)


class UpperAdjView:
    """Adj(CP), the upper unitriangular inverse of C*P."""

    kind = "upper"

    def __init__(self, C):
        self.C = C
        self.field = C.field
        self._rows = {}

    def entry(self, a, b):
        if b < a:
            return self.field.zero
        row = self._rows.get(a)
        if row is None:
            row = self._rows[a] = [self.field.one]
        C = self.C
        zero = self.field.zero
        while len(row) <= b - a:
            j = a + len(row)
            s = C.shape(j)
            piv = C.pivot(j)
            acc = zero
            for c in range(max(a, s), j):
                y = row[c - a]
                if y:
                    x = C.entry(c, s)
                    if x:
                        acc = acc + y * x
            row.append(-acc / piv)
        return row[b - a]

    def row_support(self, a):
        return (a, None)

    def col_support(self, b):
        return (None, b)


class PYView:
    """P * Adj(CP)."""

    kind = "py"

    def __init__(self, C, Y):
        self.C = C
        self.Y = Y
        self.field = C.field

    def entry(self, r, b):
        c = self.C.preimage(r)
        if c is None:
            return self.field.zero
        y = self.Y.entry(c, b)
        if not y:
            return self.field.zero
        return y / self.C.entry(c, r)

    def row_support(self, r):
        c = self.C.preimage(r)
        return (r, r) if c is None else (c, None)

    def col_support(self, b):
        return (None, b)


class SolView:
    """Sol(C) = Adj(C) - P Adj(CP)."""

    kind = "sol"

    def __init__(self, adj, py):
        self.adj = adj
        self.py = py
        self.field = adj.field

    def entry(self, a, b):
        return self.adj.entry(a, b) - self.py.entry(a, b)

    def row_support(self, a):
        return (None, None)

    def col_support(self, b):
        return (None, None)


class SplView:
    """Spl(C): Adj(C) on columns >= 0, P Adj(CP) on columns < 0."""

    kind = "spl"

    def __init__(self, adj, py):
        self.adj = adj
        self.py = py
        self.field = adj.field

    def entry(self, a, b):
        if b >= 0:
            return self.adj.entry(a, b)
        return self.py.entry(a, b)

    def row_support(self, a):
        return (min(0, a), max(0, a))

    def col_support(self, b):
        return (b, None) if b >= 0 else (None, b)


class _Views:
    def __init__(self, C):
        self.C = C
        self.adj = AdjView(C)
        self.reduced = is_reduced(C)
        if self.reduced:
            self.cp = CPView(C)
            self.upper = UpperAdjView(C)
            self.py = PYView(C, self.upper)
            self.sol = SolView(self.adj, self.py)
            self.spl = SplView(self.adj, self.py)
            self.p = PivotMatrix(C)


def views(C):
    v = C.__dict__.get("_views")
    if v is None:
        v = C.__dict__["_views"] = _Views(C)
    return v


def _reduced_views(C):
    v = views(C)
    if not v.reduced:
        raise NotReduced("operation requires a reduced recurrence matrix")
    return v


def derived(C, kind):
    """Lazy view of a derived matrix: 'c', 'adj', 'cp', 'p', 'upper', 'py', 'sol', 'spl'."""
    if kind == "c":
        return C
    if kind == "adj":
        return views(C).adj
    if kind not in ("cp", "p", "upper", "py", "sol", "spl"):
        raise ValueError(f"unknown derived matrix {kind!r}")
    return getattr(_reduced_views(C), kind)


def adj_entry(C, a, b):
    return views(C).adj.entry(a, b)


def upper_adj_entry(C, a, b):
    return _reduced_views(C).upper.entry(a, b)


def py_entry(C, a, b):
    return _reduced_views(C).py.entry(a, b)


def sol_entry(C, a, b):
    return _reduced_views(C).sol.entry(a, b)


def spl_entry(C, a, b):
    return _reduced_views(C).spl.entry(a, b)


# schedules

@dataclass(frozen=True)
class Schedule:
    J: tuple
    interval: object = None  # None means all of Z

    def __len__(self):
        return len(self.J)

    def __iter__(self):
        return iter(self.J)


def t_set(C, b):
    """T_b: the largest element <= b of every S-ball."""
    _reduced_views(C)
    lo = min(C.start, b) - C.band - 1
    out = []
    for a in range(lo, b + 1):
        c = C.preimage(a)
        if c is None or c > b:
            out.append(a)
    return Schedule(tuple(out))


def interval_rank(C, a, b):
    """Number of S-balls in [a, b]: (b - a + 1) - #{c in [a, b] : S(c) >= a}."""
    if a > b:
        return 0
    return (b - a + 1) - sum(1 for c in range(a, b + 1) if C.shape(c) >= a)


def _chain(C, J, lo, hi):
    """Growing chain of intervals inside [lo, hi] certifying J, or None."""
    Jset = set(J)
    memo = {}

    def R(x, y):
        k = (x, y)
        if k not in memo:
            memo[k] = interval_rank(C, x, y)
        return memo[k]

    prefix = {}
    run = 0
    for i in range(lo - 1, hi + 1):
        if i >= lo and i in Jset:
            run += 1
        prefix[i] = run

    def count(x, y):
        return prefix[y] - prefix[x - 1]

    parent = {}
    q = deque()
    for x in range(lo, hi + 1):
        if count(x, x) == R(x, x):
            parent[(x, x)] = None
            q.append((x, x))
    while q:
        x, y = q.popleft()
        if (x, y) == (lo, hi):
            path = []
            node = (x, y)
            while node is not None:
                path.append(node)
                node = parent[node]
            return path[::-1]
        for nx, ny in ((x - 1, y), (x, y + 1)):
            if nx < lo or ny > hi or (nx, ny) in parent:
                continue
            if count(nx, ny) == R(nx, ny):
                parent[(nx, ny)] = (x, y)
                q.append((nx, ny))
    return None


def _z_window(C, J):
    pad = 2 * C.band + 2
    lo = min([C.start] + list(J)) - pad - C.left_period
    hi = max([C.end] + list(J)) + pad + C.right_period
    return lo, hi


def _schedule_path(C, J, I):
    J = sorted(set(J))
    if I is None:
        lo, hi = _z_window(C, J)
        if len(J) != interval_rank(C, lo, hi) or len(J) != len(t_set(C, hi)):
            return None
        return _chain(C, J, lo, hi)
    lo, hi = I
    if any(j < lo or j > hi for j in J):
        return None
    return _chain(C, J, lo, hi)


def is_schedule(C, J, I=None):
    """Is ``J`` an S-schedule for the interval ``I`` (None means Z)?"""
    _reduced_views(C)
    return _schedule_path(C, J, I) is not None


def _solve_left(C, x, n, hi):
    c = C.preimage(n)
    if c is None or c > hi:
        raise NotASchedule(f"no row determines x[{n}]")
    s = C.field.zero
    for d, coef in C.row(c):
        j = c - d
        if j != n:
            s = s + coef * x[j]
    return -s / C.entry(c, n)


def _solve_right(C, x, n, lo):
    if C.shape(n) < lo:
        raise NotASchedule(f"row {n} reaches outside the known values")
    s = C.field.zero
    for d, coef in C.row(n):
        if d:
            s = s + coef * x[n - d]
    return -s


def extend_solution(C, values, window):
    """The solution of Cx = 0 taking ``values`` on the schedule, on ``window``."""
    _reduced_views(C)
    F = C.field
    J = sorted(values)
    path = _schedule_path(C, J, None)
    if path is None:
        raise NotASchedule(f"{J} is not a schedule for Z")
    x = {}
    x0 = path[0][0]
    if x0 in values:
        x[x0] = F(values[x0])
    else:
        x[x0] = F.zero
    for (px, py), (nx, ny) in zip(path, path[1:]):
        if nx < px:
            n = nx
            x[n] = F(values[n]) if n in values else _solve_left(C, x, n, ny)
        else:
            n = ny
            x[n] = F(values[n]) if n in values else _solve_right(C, x, n, nx)
    lo, hi = path[-1]
    a, b = window
    while lo > a:
        lo -= 1
        x[lo] = _solve_left(C, x, lo, hi)
    while hi < b:
        hi += 1
        x[hi] = _solve_right(C, x, hi, lo)
    return [x[i] for i in range(a, b + 1)]


def kernel_basis(C, b, window):
    """Sol(C) restricted to ``window`` x T_b, columns in increasing order of T_b."""
    v = _reduced_views(C)
    T = t_set(C, b).J
    lo, hi = window
    grid = tuple(tuple(v.sol.entry(i, t) for t in T) for i in range(lo, hi + 1))
    return DenseWindow((lo, hi), (0, len(T) - 1), grid, C.field)


def solve_affine(spec, window, **reduce_kw):
    """Particular solution Spl(C') b' on ``window``, after reducing the system."""
    from .reduction import reduce_system

    C, rhs = reduce_system(spec.matrix, spec.rhs, **reduce_kw)
    v = _reduced_views(C)
    F = C.field
    out = []
    for a in range(window[0], window[1] + 1):
        s = F.zero
        for c in range(min(0, a), max(0, a) + 1):
            bc = rhs.at(c)
            if bc:
                s = s + v.spl.entry(a, c) * bc
        out.append(s)
    return out


def initial_rows(C, n):
    """Rows i in [0, n] whose equation, cut to columns >= 0, is x_i = const."""
    out = []
    for i in range(n + 1):
        if all(d == 0 or i - d < 0 for d, _ in C.row(i)):
            out.append(i)
    return out


def solve_one_sided(C, initial, n, method="adjugate"):
    """Solution x_0..x_n of the N-indexed system with the given initial values."""
    F = C.field
    init_rows = initial_rows(C, n)
    for k in initial:
        if k < 0 or k > n:
            raise IndexOutOfRange(f"index {k} outside [0, {n}]")
        if k not in init_rows:
            raise IndexOutOfRange(f"x[{k}] is not an initial variable")
    for i in init_rows:
        if i not in initial:
            raise MissingInitial(f"no value given for x[{i}]")
    if method == "recursion":
        x = []
        for i in range(n + 1):
            if i in initial:
                x.append(F(initial[i]))
                continue
            s = F.zero
            for d, c in C.row(i):
                if d and i - d >= 0:
                    s = s + c * x[i - d]
            x.append(-s)
        return x
    adj = views(C).adj
    out = []
    for a in range(n + 1):
        s = F.zero
        for i in init_rows:
            if i <= a and initial[i]:
                s = s + adj.entry(a, i) * F(initial[i])
        out.append(s)
    return out
