"""Tame SL(k) friezes and the recurrence matrices they define.

A frieze with rows f_0 (all ones), f_1, ..., f_h (all ones), each of period
n, becomes the purely periodic recurrence matrix with

    C[a, a - d] = f_d[(a - ceil(d / 2)) mod n]

so row 0 of the frieze is the main diagonal and row d lies on the d-th
subdiagonal.  A k x k diamond of the frieze is then a contiguous k x k
submatrix of C whose entries all lie inside the band 0 <= a - b <= h.
"""
import json
from dataclasses import dataclass

from .errors import InvalidFrieze, ShapeError, WindowTooShort
from .field import QQ
from .linalg import det
from .recmat import RecMat, is_reduced


@dataclass(frozen=True)
class Frieze:
    k: int
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if self.k < 2:
            raise ShapeError("k must be at least 2")
        if len(rows) < 2:
            raise ShapeError("a frieze needs a top and a bottom row")
        n = len(rows[0])
        if n == 0 or any(len(r) != n for r in rows):
            raise ShapeError("rows have different periods")
        if any(x != 1 for x in rows[0]) or any(x != 1 for x in rows[-1]):
            raise ShapeError("top and bottom rows must be all ones")

    @property
    def period(self):
        return len(self.rows[0])

    @property
    def height(self):
        return len(self.rows) - 1

    def value(self, a, b):
        """Frieze entry sitting at matrix position (a, b), or 0 off the band."""
        d = a - b
        if d < 0 or d > self.height:
            return 0
        return self.rows[d][(a - (d + 1) // 2) % self.period]


def perturb(f, row, pos, delta=1):
    rows = [list(r) for r in f.rows]
    rows[row][pos % f.period] += delta
    return Frieze(f.k, rows)


def _diamond(f, a, b, size):
    return [[f.value(a + i, b + j) for j in range(size)] for i in range(size)]


def _diamonds(f, size):
    """Top-left corners (a, b) of every size x size diamond in one period."""
    h = f.height
    out = []
    for a in range(f.period):
        # a - b - (size - 1) >= 0 and a - b + (size - 1) <= h
        for d in range(size - 1, h - size + 2):
            out.append((a, a - d))
    return out


@dataclass(frozen=True)
class TameResult:
    ok: bool
    where: tuple = None  # (size, row, col, det) of the first failing diamond

    def __bool__(self):
        return self.ok


def validate_tame(f):
    for size, want in ((f.k, 1), (f.k + 1, 0)):
        for a, b in _diamonds(f, size):
            d = det(_diamond(f, a, b, size), QQ)
            if d != want:
                return TameResult(False, (size, a, b, d))
    return TameResult(True)


def frieze_to_recurrence(f, alternating=False):
    """Purely periodic recurrence matrix of period n with band height h."""
    if not validate_tame(f):
        raise InvalidFrieze("frieze is not tame")
    n = f.period
    pats = []
    for r in range(n):
        pat = {}
        for d in range(f.height + 1):
            v = f.value(r, r - d)
            if alternating and d % 2:
                v = -v
            if v:
                pat[d] = v
        pats.append(pat)
    return RecMat.periodic(pats)


def check_superperiodic(C, window, max_n):
    """Smallest (n, s) with x[i+n] = (-1)^s x[i] for every kernel basis column.

    Returns None when no n <= max_n works on the window.
    """
    from .kernel import kernel_basis
    from .reduction import reduce

    lo, hi = window
    if hi - lo + 1 < 3 * max_n:
        raise WindowTooShort(f"window needs at least {3 * max_n} entries")
    R = C if is_reduced(C) else reduce(C)
    basis = kernel_basis(R, (lo + hi) // 2, window)
    cols = [basis.column(j) for j in range(basis.cols[0], basis.cols[1] + 1)]
    if not cols:
        return (1, 0)
    m = hi - lo + 1
    for n in range(1, max_n + 1):
        for s in (0, 1):
            sg = -1 if s else 1
            if all(col[i + n] == sg * col[i] for col in cols for i in range(m - n)):
                return (n, s)
    return None


def frieze_from_text(text, k=None):
    """Rows separated by newlines, entries by whitespace; one period per row.

    A first line ``k = <int>`` sets k; otherwise k must be passed in.
    """
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.replace(" ", "").startswith("k="):
            k = int(line.split("=", 1)[1])
            continue
        rows.append([int(x) for x in line.split()])
    if k is None:
        raise ShapeError("frieze text does not give k")
    return Frieze(k, rows)


def frieze_from_json(text):
    d = json.loads(text)
    return Frieze(int(d["k"]), d["rows"])


def frieze_to_json(f):
    return json.dumps({"k": f.k, "rows": [list(r) for r in f.rows]})


EXAMPLE_SL2 = Frieze(2, (
    (1, 1, 1, 1, 1, 1, 1, 1),
    (3, 2, 2, 1, 4, 3, 1, 2),
    (5, 5, 3, 1, 3, 11, 2, 1),
    (8, 7, 1, 2, 8, 7, 1, 2),
    (3, 11, 2, 1, 5, 5, 3, 1),
    (4, 3, 1, 2, 3, 2, 2, 1),
    (1, 1, 1, 1, 1, 1, 1, 1),
))
