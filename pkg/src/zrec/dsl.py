"""Text format for recurrence systems (``.zrec`` files).

Grammar (EBNF)::

    program  = [ "mod" int ";" ] { item } ;
    item     = clause | "middle" "{" { clause } "}" ;
    clause   = var "=" expr "for" guard ";" ;
    var      = name "[" "i" [ ("+" | "-") int ] "]" ;
    expr     = [ "+" | "-" ] term { ("+" | "-") term } ;
    term     = number [ "*" var ] | var ;
    number   = int [ "/" int ] ;
    guard    = "all" "i" | cond { ( "," | "and" ) cond } ;
    cond     = "i" "%" int "==" sint
             | "i" "==" sint | "i" "<" sint | "i" ">=" sint ;
    sint     = [ "-" ] int ;

``#`` starts a comment that runs to the end of the line.  The left side
is the variable at ``i`` (any name, printed back as ``x``); the right side
may only mention the same variable at earlier indices.
Guards must cover every integer exactly once, except that a clause inside
a ``middle`` block overrides the other clauses on the rows it covers.
"""
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import lcm

from .errors import (CoverageGap, CoverageOverlap, DslFieldMismatch,
                     DslSyntaxError, DuplicateTerm, FieldMismatch,
                     ForwardReference, SelfReference, ZeroModulus)
from .field import QQ, PrimeField
from .recmat import EPSeq, RecMat, make_pattern, zip_seqs


@dataclass
class SystemSpec:
    """A recurrence matrix with an eventually periodic right hand side."""

    matrix: RecMat
    rhs: EPSeq = None
    spans: list = dc_field(default_factory=list)

    def __post_init__(self):
        if self.rhs is None:
            self.rhs = EPSeq([self.matrix.field.zero])

    @property
    def field(self):
        return self.matrix.field

    def __eq__(self, other):
        return (isinstance(other, SystemSpec) and self.matrix == other.matrix
                and self.rhs == other.rhs)


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>==|>=|[=;\[\]+\-*/%<{},])
""", re.VERBOSE)


@dataclass
class Tok:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text):
    toks = []
    line, lstart = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DslSyntaxError(f"unexpected character {text[pos]!r}",
                                 line, pos - lstart + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            lstart = m.end()
        elif kind not in ("ws", "comment"):
            toks.append(Tok(kind, m.group(), line, m.start() - lstart + 1))
        pos = m.end()
    toks.append(Tok("eof", "", line, pos - lstart + 1))
    return toks


@dataclass
class Clause:
    terms: dict       # delay -> coefficient of x[i-delay] on the right side
    const: object
    mod: int
    res: int
    lo: object        # i >= lo, or None
    hi: object        # i < hi, or None
    middle: bool
    line: int
    col: int

    def covers(self, a):
        if (a - self.res) % self.mod:
            return False
        if self.lo is not None and a < self.lo:
            return False
        if self.hi is not None and a >= self.hi:
            return False
        return True


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0
        self.field = QQ
        self.var = None

    def peek(self, k=0):
        return self.toks[self.i + k]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise DslSyntaxError(msg, tok.line, tok.col)

    def expect(self, text):
        t = self.next()
        if t.text != text:
            self.fail(f"expected {text!r}, found {t.text or 'end of input'!r}", t)
        return t

    def integer(self):
        t = self.next()
        if t.kind != "int":
            self.fail(f"expected an integer, found {t.text or 'end of input'!r}", t)
        return int(t.text)

    def signed(self):
        if self.peek().text == "-":
            self.next()
            return -self.integer()
        return self.integer()

    def program(self):
        clauses = []
        if self.peek().text == "mod":
            t = self.next()
            p = self.integer()
            if p == 0:
                raise ZeroModulus("field modulus must be nonzero", t.line, t.col)
            try:
                self.field = PrimeField(p)
            except FieldMismatch as e:
                raise DslFieldMismatch(str(e), t.line, t.col)
            if self.peek().text == ";":
                self.next()
        while self.peek().kind != "eof":
            t = self.peek()
            if t.text == "mod":
                raise DslFieldMismatch("field directive must come first", t.line, t.col)
            if t.text == "middle":
                self.next()
                self.expect("{")
                while self.peek().text != "}":
                    if self.peek().kind == "eof":
                        self.fail("unclosed middle block")
                    clauses.append(self.clause(True))
                self.expect("}")
            else:
                clauses.append(self.clause(False))
        return clauses

    def variable(self):
        t = self.next()
        if t.kind != "name":
            self.fail(f"expected a variable, found {t.text or 'end of input'!r}", t)
        if self.var is None:
            self.var = t.text
        elif t.text != self.var:
            self.fail(f"unknown variable {t.text!r}", t)
        self.expect("[")
        it = self.next()
        if it.text != "i":
            self.fail("index must be written in terms of i", it)
        off = 0
        if self.peek().text in "+-" and self.peek().kind == "op":
            sign = 1 if self.next().text == "+" else -1
            off = sign * self.integer()
        self.expect("]")
        return off, t

    def number(self):
        n = Fraction(self.integer())
        if self.peek().text == "/":
            t = self.next()
            d = self.integer()
            if d == 0:
                raise DslSyntaxError("zero denominator", t.line, t.col)
            n /= d
        return n

    def coeff(self, x, tok):
        try:
            return self.field(x)
        except FieldMismatch as e:
            raise DslFieldMismatch(str(e), tok.line, tok.col)

    def clause(self, middle):
        start = self.peek()
        off, _ = self.variable()
        if off != 0:
            self.fail("the left side must be the variable at i", start)
        self.expect("=")
        terms = {}
        const = None
        sign = 1
        first = True
        while True:
            t = self.peek()
            if t.text in ("+", "-") and t.kind == "op":
                self.next()
                sign = 1 if t.text == "+" else -1
            elif not first:
                break
            first = False
            t = self.peek()
            if t.kind == "int":
                c = self.number() * sign
                if self.peek().text == "*":
                    self.next()
                    off, vt = self.variable()
                    self._add_term(terms, off, c, vt)
                else:
                    if const is not None:
                        raise DuplicateTerm("constant term given twice", t.line, t.col)
                    const = self.coeff(c, t)
            elif t.kind == "name" and t.text not in ("for",):
                off, vt = self.variable()
                self._add_term(terms, off, Fraction(sign), vt)
            else:
                self.fail(f"expected a term, found {t.text or 'end of input'!r}", t)
            sign = 1
        self.expect("for")
        mod, res, lo, hi = self.guard()
        self.expect(";")
        if const is None:
            const = self.field.zero
        terms = {d: self.coeff(c, start) for d, c in terms.items()}
        return Clause(terms, const, mod, res, lo, hi, middle, start.line, start.col)

    def _add_term(self, terms, off, c, tok):
        if off == 0:
            raise SelfReference("right side mentions the variable at i", tok.line, tok.col)
        if off > 0:
            raise ForwardReference(f"right side mentions a later variable (i+{off})",
                                   tok.line, tok.col)
        d = -off
        if d in terms:
            raise DuplicateTerm(f"delay {d} appears twice", tok.line, tok.col)
        terms[d] = c

    def guard(self):
        if self.peek().text == "all":
            self.next()
            t = self.next()
            if t.text != "i":
                self.fail("expected 'i' after 'all'", t)
            return 1, 0, None, None
        mod, res, lo, hi = 1, 0, None, None
        seen_mod = False
        while True:
            t = self.next()
            if t.text != "i":
                self.fail("guard conditions start with 'i'", t)
            op = self.next()
            if op.text == "%":
                if seen_mod:
                    self.fail("only one residue condition per clause", op)
                seen_mod = True
                m = self.integer()
                if m == 0:
                    raise ZeroModulus("modulus zero in guard", op.line, op.col)
                self.expect("==")
                mod, res = m, self.signed() % m
            elif op.text == "==":
                n = self.signed()
                lo = n if lo is None else max(lo, n)
                hi = n + 1 if hi is None else min(hi, n + 1)
            elif op.text == "<":
                n = self.signed()
                hi = n if hi is None else min(hi, n)
            elif op.text == ">=":
                n = self.signed()
                lo = n if lo is None else max(lo, n)
            else:
                self.fail(f"unknown guard operator {op.text!r}", op)
            if self.peek().text in (",", "and"):
                self.next()
                continue
            return mod, res, lo, hi


def _assemble(clauses, field):
    bounds = [x for c in clauses for x in (c.lo, c.hi) if x is not None]
    lo = min(bounds) if bounds else 0
    hi = max(bounds) if bounds else 0
    L = 1
    for c in clauses:
        L = lcm(L, c.mod)

    def pick(a):
        mid = [c for c in clauses if c.middle and c.covers(a)]
        if len(mid) > 1:
            raise CoverageOverlap(f"row {a} is covered twice", mid[1].line, mid[1].col)
        if mid:
            return mid[0]
        out = [c for c in clauses if not c.middle and c.covers(a)]
        if not out:
            raise CoverageGap(f"no clause covers row {a}")
        if len(out) > 1:
            raise CoverageOverlap(f"row {a} is covered twice", out[1].line, out[1].col)
        return out[0]

    def row(a):
        c = pick(a)
        pat = {0: 1}
        for d, v in c.terms.items():
            pat[d] = -v
        return make_pattern(pat, field), field(c.const)

    left = [None] * L
    for a in range(lo - L, lo):
        left[a % L] = row(a)
    right = [None] * L
    for a in range(hi, hi + L):
        right[a % L] = row(a)
    middle = [row(a) for a in range(lo, hi)]
    seq = EPSeq(left, lo, middle, right)
    mat = seq.map(lambda r: r[0]).canonical()
    rhs = seq.map(lambda r: r[1]).canonical()
    return RecMat(mat, field), rhs


def parse(text):
    """Parse DSL text into a SystemSpec."""
    p = _Parser(text)
    clauses = p.program()
    if not clauses:
        raise CoverageGap("no clauses")
    mat, rhs = _assemble(clauses, p.field)
    return SystemSpec(mat, rhs, [(c.line, c.col) for c in clauses])


def parse_file(path):
    with open(path, encoding="utf-8") as f:
        return parse(f.read())


def _fmt_num(x, field):
    if field is QQ or field == QQ:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(field(x).v)


def _fmt_rhs(pat, const, field, var="x"):
    parts = []
    for d, c in pat:
        if d == 0:
            continue
        v = -c
        vs = f"{var}[i-{d}]"
        parts.append((v, vs))
    if const:
        parts.append((const, None))
    if not parts:
        return "0"
    out = ""
    for k, (v, vs) in enumerate(parts):
        if field is QQ or field == QQ:
            neg = v < 0
            mag = -v if neg else v
        else:
            neg = False
            mag = v
        num = _fmt_num(mag, field)
        if vs is None:
            body = num
        elif mag == 1:
            body = vs
        else:
            body = f"{num}*{vs}"
        if k == 0:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out


def format_spec(spec):
    """Canonical text: clauses by residue, left tail, middle block, right tail."""
    field = spec.field
    aug = zip_seqs(spec.matrix.seq, spec.rhs).canonical()
    lines = []
    if field != QQ:
        lines.append(f"mod {field.p};")

    def eq(item):
        return "x[i] = " + _fmt_rhs(item[0], item[1], field)

    if not aug.middle and aug.left == aug.right:
        p = len(aug.left)
        if p == 1:
            lines.append(f"{eq(aug.left[0])} for all i;")
        else:
            for r in range(p):
                lines.append(f"{eq(aug.left[r])} for i % {p} == {r};")
        return "\n".join(lines) + "\n"
    pl = len(aug.left)
    for r in range(pl):
        g = f"i < {aug.start}" if pl == 1 else f"i % {pl} == {r}, i < {aug.start}"
        lines.append(f"{eq(aug.left[r])} for {g};")
    if aug.middle:
        lines.append("middle {")
        for k, item in enumerate(aug.middle):
            lines.append(f"  {eq(item)} for i == {aug.start + k};")
        lines.append("}")
    pr = len(aug.right)
    for r in range(pr):
        g = f"i >= {aug.end}" if pr == 1 else f"i % {pr} == {r}, i >= {aug.end}"
        lines.append(f"{eq(aug.right[r])} for {g};")
    return "\n".join(lines) + "\n"


# short public alias
format = format_spec
