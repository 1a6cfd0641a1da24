"""Recurrence matrices: lower unitriangular, horizontally bounded ZxZ matrices.

A matrix is stored as an eventually periodic sequence of row patterns.  A
row pattern is a sorted tuple of ``(offset, coeff)`` pairs; the coefficient
at offset ``d`` of row ``a`` sits in column ``a - d``.  Offset 0 always
carries the coefficient 1.
"""
import json
from dataclasses import dataclass
from math import gcd

from .errors import FieldMismatch, NotUnitriangular
from .field import QQ, field_from_name


def lcm(a, b):
    return a * b // gcd(a, b)


def _divisors(n):
    return [q for q in range(1, n + 1) if n % q == 0]


def minimal_period(items):
    items = tuple(items)
    for q in _divisors(len(items)):
        if all(items[i] == items[i % q] for i in range(len(items))):
            return items[:q]
    return items


class EPSeq:
    """Eventually periodic bi-infinite sequence of hashable items.

    Index ``a < start`` reads ``left[a % len(left)]``, indices in
    ``[start, start + len(middle))`` read the middle, and later indices read
    ``right[a % len(right)]``.
    """

    __slots__ = ("left", "start", "middle", "right")

    def __init__(self, left, start=0, middle=(), right=None):
        left = tuple(left)
        right = left if right is None else tuple(right)
        if not left or not right:
            raise ValueError("tails need at least one item")
        self.left = left
        self.start = int(start)
        self.middle = tuple(middle)
        self.right = right

    @property
    def end(self):
        return self.start + len(self.middle)

    def at(self, a):
        if a < self.start:
            return self.left[a % len(self.left)]
        if a < self.end:
            return self.middle[a - self.start]
        return self.right[a % len(self.right)]

    def items(self):
        return set(self.left) | set(self.middle) | set(self.right)

    def map(self, f):
        return EPSeq([f(x) for x in self.left], self.start,
                     [f(x) for x in self.middle], [f(x) for x in self.right])

    def expand(self, lo, hi):
        """Same sequence, with the explicit middle covering at least [lo, hi)."""
        start = min(self.start, lo)
        end = max(self.end, hi)
        return EPSeq(self.left, start, [self.at(a) for a in range(start, end)],
                     self.right)

    def is_periodic(self):
        c = self.canonical()
        return not c.middle and c.left == c.right

    def canonical(self):
        left = minimal_period(self.left)
        right = minimal_period(self.right)
        if left == right and all(x == left[a % len(left)]
                                 for a, x in enumerate(self.middle, self.start)):
            return EPSeq(left, 0, (), left)
        start = self.start
        middle = list(self.middle)
        pl, pr = len(left), len(right)
        k = 0
        while True:
            if k < len(middle):
                if middle[k] == left[start % pl]:
                    k += 1
                    start += 1
                    continue
                break
            if right[start % pr] == left[start % pl] and left != right:
                start += 1
                continue
            break
        middle = middle[k:]
        while middle and middle[-1] == right[(start + len(middle) - 1) % pr]:
            middle.pop()
        return EPSeq(left, start, middle, right)

    def key(self):
        c = self.canonical()
        return (c.left, c.start, c.middle, c.right)

    def __eq__(self, other):
        return isinstance(other, EPSeq) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return (f"EPSeq(left={self.left!r}, start={self.start}, "
                f"middle={self.middle!r}, right={self.right!r})")


def zip_seqs(*seqs):
    """One EPSeq of tuples, position-wise, with common periods."""
    pl = 1
    pr = 1
    for s in seqs:
        pl = lcm(pl, len(s.left))
        pr = lcm(pr, len(s.right))
    lo = min(s.start for s in seqs)
    hi = max(s.end for s in seqs)
    left = [None] * pl
    for a in range(lo - pl, lo):
        left[a % pl] = tuple(s.at(a) for s in seqs)
    right = [None] * pr
    for a in range(hi, hi + pr):
        right[a % pr] = tuple(s.at(a) for s in seqs)
    middle = [tuple(s.at(a) for s in seqs) for a in range(lo, hi)]
    return EPSeq(left, lo, middle, right)


def make_pattern(coeffs, field=QQ):
    """Normalize ``{offset: coeff}`` (or pairs) to a row pattern tuple."""
    if isinstance(coeffs, dict):
        pairs = coeffs.items()
    else:
        pairs = coeffs
    acc = {}
    for d, c in pairs:
        d = int(d)
        if d < 0:
            raise NotUnitriangular(f"negative offset {d}")
        acc[d] = acc.get(d, field.zero) + field(c)
    if acc.get(0, field.zero) != field.one:
        raise NotUnitriangular("diagonal coefficient must be 1")
    return tuple(sorted((d, c) for d, c in acc.items() if c))


def identity_pattern(field=QQ):
    return ((0, field.one),)


class RecMat:
    """A recurrence matrix over ``field`` (QQ or GF(p))."""

    def __init__(self, seq, field=QQ):
        self.field = field
        self.seq = seq
        self._dicts = {p: dict(p) for p in seq.items()}
        self.band = max(p[-1][0] for p in self._dicts)
        self._pre = {}

    # construction helpers
    @classmethod
    def build(cls, left, start=0, middle=(), right=None, field=QQ):
        left = [make_pattern(p, field) for p in left]
        right = left if right is None else [make_pattern(p, field) for p in right]
        middle = [make_pattern(p, field) for p in middle]
        return cls(EPSeq(left, start, middle, right), field)

    @classmethod
    def periodic(cls, patterns, field=QQ):
        return cls.build(patterns, field=field)

    @classmethod
    def identity(cls, field=QQ):
        return cls.build([{0: 1}], field=field)

    # basic reads
    @property
    def start(self):
        return self.seq.start

    @property
    def end(self):
        return self.seq.end

    @property
    def left_period(self):
        return len(self.seq.left)

    @property
    def right_period(self):
        return len(self.seq.right)

    def row(self, a):
        return self.seq.at(a)

    def row_dict(self, a):
        return self._dicts[self.seq.at(a)]

    def entry(self, a, b):
        d = a - b
        if d < 0:
            return self.field.zero
        return self._dicts[self.seq.at(a)].get(d, self.field.zero)

    def maxoff(self, a):
        return self.seq.at(a)[-1][0]

    def shape(self, a):
        return a - self.seq.at(a)[-1][0]

    def pivot(self, a):
        p = self.seq.at(a)
        return p[-1][1]

    def preimage(self, r):
        """The row c with shape(c) == r, searched in [r, r + band]; None if absent."""
        if r in self._pre:
            return self._pre[r]
        found = None
        for c in range(r, r + self.band + 1):
            if self.shape(c) == r:
                found = c
                break
        self._pre[r] = found
        return found

    def row_support(self, a):
        return (a - self.maxoff(a), a)

    def col_support(self, b):
        return (b, b + self.band)

    def check_window(self):
        """Row range that exhibits every seam and one copy of each tail."""
        return (self.start - self.left_period - self.band,
                self.end + self.right_period + self.band)

    def canonical(self):
        return RecMat(self.seq.canonical(), self.field)

    def is_periodic(self):
        return self.seq.is_periodic()

    def __eq__(self, other):
        return (isinstance(other, RecMat) and self.field == other.field
                and self.seq == other.seq)

    def __hash__(self):
        return hash(self.seq)

    def __repr__(self):
        c = self.seq.canonical()
        return (f"RecMat(left={[dict(p) for p in c.left]}, start={c.start}, "
                f"middle={[dict(p) for p in c.middle]}, "
                f"right={[dict(p) for p in c.right]}, field={self.field!r})")


def entry(C, a, b):
    return C.entry(a, b)


def shape(C, a):
    return C.shape(a)


def is_reduced(C):
    lo, hi = C.check_window()
    zero = C.field.zero
    for b in range(lo, hi + 1):
        s = C.shape(b)
        for a in range(b + 1, s + C.band + 1):
            if C.entry(a, s) != zero:
                return False
    return True


class PivotMatrix:
    """P with P[S(b), b] = 1 / C[b, S(b)] and zeros elsewhere."""

    def __init__(self, C):
        self.C = C
        self.field = C.field

    def entry(self, r, b):
        if self.C.shape(b) == r:
            return self.field.one / self.C.pivot(b)
        return self.field.zero

    def row_support(self, r):
        c = self.C.preimage(r)
        return (r, r) if c is None else (c, c)

    def col_support(self, b):
        s = self.C.shape(b)
        return (s, s)


def pivot_matrix(C):
    return PivotMatrix(C)


class Product:
    """Lazy product A*B of two banded views."""

    def __init__(self, A, B):
        self.A = A
        self.B = B
        self.field = A.field
        self._cache = {}

    def entry(self, a, b):
        key = (a, b)
        if key in self._cache:
            return self._cache[key]
        lo, hi = self.A.row_support(a)
        if lo is None or hi is None:
            lo2, hi2 = self.B.col_support(b)
            lo = lo2 if lo is None else (lo if lo2 is None else max(lo, lo2))
            hi = hi2 if hi is None else (hi if hi2 is None else min(hi, hi2))
        else:
            lo2, hi2 = self.B.col_support(b)
            if lo2 is not None:
                lo = max(lo, lo2)
            if hi2 is not None:
                hi = min(hi, hi2)
        if lo is None or hi is None:
            raise ValueError("product entry is an infinite sum")
        s = self.field.zero
        for k in range(lo, hi + 1):
            x = self.A.entry(a, k)
            if x:
                s = s + x * self.B.entry(k, b)
        self._cache[key] = s
        return s

    def row_support(self, a):
        lo, hi = self.A.row_support(a)
        if lo is None or hi is None:
            return (None, None)
        los, his = [], []
        for k in range(lo, hi + 1):
            l2, h2 = self.B.row_support(k)
            los.append(l2)
            his.append(h2)
        return (None if None in los else min(los), None if None in his else max(his))

    def col_support(self, b):
        lo, hi = self.B.col_support(b)
        if lo is None or hi is None:
            return (None, None)
        los, his = [], []
        for k in range(lo, hi + 1):
            l2, h2 = self.A.col_support(k)
            los.append(l2)
            his.append(h2)
        return (None if None in los else min(los), None if None in his else max(his))


def _recmat_product(A, B):
    if A.field != B.field:
        raise FieldMismatch("operands over different fields")
    field = A.field
    w = A.band
    lo = min(A.start, B.start)
    hi = max(A.end, B.end + w)
    pl = lcm(A.left_period, B.left_period)
    pr = lcm(A.right_period, B.right_period)
    view = Product(A, B)

    def row_at(a):
        coeffs = {}
        for d in range(0, A.band + B.band + 1):
            x = view.entry(a, a - d)
            if x:
                coeffs[d] = x
        return make_pattern(coeffs, field)

    left = [None] * pl
    for a in range(lo - pl, lo):
        left[a % pl] = row_at(a)
    right = [None] * pr
    for a in range(hi, hi + pr):
        right[a % pr] = row_at(a)
    middle = [row_at(a) for a in range(lo, hi)]
    return RecMat(EPSeq(left, lo, middle, right).canonical(), field)


def compose_banded(A, B, as_recmat=False):
    """Product A*B as a lazy view, or as a RecMat when ``as_recmat``.

    With ``as_recmat`` both operands must be RecMat instances; a product of
    two recurrence matrices is again one.  A pivot matrix times anything is
    rejected because its diagonal is not all ones.
    """
    if not as_recmat:
        return Product(A, B)
    if isinstance(A, RecMat) and isinstance(B, RecMat):
        return _recmat_product(A, B)
    raise NotUnitriangular("product is not a recurrence matrix")


@dataclass(frozen=True)
class DenseWindow:
    rows: tuple
    cols: tuple
    grid: tuple
    field: object = QQ

    def __post_init__(self):
        nr = self.rows[1] - self.rows[0] + 1
        nc = self.cols[1] - self.cols[0] + 1
        if len(self.grid) != max(nr, 0) or any(len(r) != max(nc, 0) for r in self.grid):
            raise ValueError("grid does not match window ranges")

    @property
    def nrows(self):
        return len(self.grid)

    @property
    def ncols(self):
        return self.cols[1] - self.cols[0] + 1

    def at(self, a, b):
        return self.grid[a - self.rows[0]][b - self.cols[0]]

    def column(self, b):
        return [r[b - self.cols[0]] for r in self.grid]

    def to_lists(self):
        return [list(r) for r in self.grid]

    def to_csv(self):
        fmt = self.field.fmt
        head = "row," + ",".join(str(b) for b in range(self.cols[0], self.cols[1] + 1))
        lines = [head]
        for a, r in zip(range(self.rows[0], self.rows[1] + 1), self.grid):
            lines.append(str(a) + "," + ",".join(fmt(x) for x in r))
        return "\n".join(lines) + "\n"

    def to_json(self):
        fmt = self.field.fmt
        return json.dumps({
            "field": self.field.name,
            "rows": list(self.rows),
            "cols": list(self.cols),
            "grid": [[fmt(x) for x in r] for r in self.grid],
        }, indent=1)


def dense_window(M, rows, cols):
    a, b = rows
    c, d = cols
    if a > b or c > d:
        raise ValueError("empty window")
    grid = tuple(tuple(M.entry(i, j) for j in range(c, d + 1)) for i in range(a, b + 1))
    return DenseWindow((a, b), (c, d), grid, getattr(M, "field", QQ))


# JSON

def _pat_json(p, field):
    return [[d, field.fmt(c)] for d, c in p]


def _pat_from_json(rows, field):
    return make_pattern([(d, field.parse(c)) for d, c in rows], field)


def matrix_to_dict(C):
    s = C.seq.canonical()
    f = C.field
    return {
        "field": f.name,
        "leftPeriod": {"p": len(s.left), "anchor": s.start,
                       "rows": [_pat_json(p, f) for p in s.left]},
        "middle": {"start": s.start, "rows": [_pat_json(p, f) for p in s.middle]},
        "rightPeriod": {"p": len(s.right), "rows": [_pat_json(p, f) for p in s.right]},
    }


def matrix_from_dict(d):
    f = field_from_name(d.get("field", "QQ"))
    lp = d["leftPeriod"]
    rp = d.get("rightPeriod", lp)
    mid = d.get("middle", {"rows": []})
    start = mid.get("start", lp.get("anchor", 0))
    left = [_pat_from_json(r, f) for r in lp["rows"]]
    right = [_pat_from_json(r, f) for r in rp["rows"]]
    middle = [_pat_from_json(r, f) for r in mid.get("rows", [])]
    if len(left) != lp.get("p", len(left)) or len(right) != rp.get("p", len(right)):
        raise ValueError("period does not match number of rows")
    return RecMat(EPSeq(left, start, middle, right), f)


def matrix_to_json(C):
    return json.dumps(matrix_to_dict(C), indent=1)


def matrix_from_json(text):
    return matrix_from_dict(json.loads(text))
