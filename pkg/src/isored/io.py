"""Text formats: rational-function expressions, matrix files, spring
network files and raster exports (CSV and PGM).

Expression grammar (whitespace is insignificant)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' uint)?
    base   := VAR | uint ['i'] | 'i' | '(' expr ')'

``VAR`` is ``l`` unless a matrix file says otherwise.  ``/`` is always the
division operator and is left associative, so ``1/2i`` means ``1/(2i)``;
the printer writes imaginary parts as ``b*i`` to stay unambiguous.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import DomainError, ParseError
from .field import GaussianRational, Poly, RatFunc

DEFAULT_VAR = "l"

# --------------------------------------------------------------------------
# expression parser


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


class _Lexer:
    def __init__(self, text: str, var: str, line: int | None):
        self.toks = []
        self.line = line
        pos = 0
        while pos < len(text):
            mo = _TOKEN.match(text, pos)
            if mo is None:  # only trailing whitespace left
                break
            if mo.group(1):
                self.toks.append(("num", mo.group(1), mo.start(1)))
            elif mo.group(2):
                word = mo.group(2)
                if word == var:
                    self.toks.append(("var", word, mo.start(2)))
                elif word == "i":
                    self.toks.append(("i", word, mo.start(2)))
                else:
                    raise ParseError(f"unknown name {word!r}", line, mo.start(2) + 1)
            else:
                ch = mo.group(3)
                if ch not in "+-*/^()":
                    raise ParseError(f"unexpected character {ch!r}", line, mo.start(3) + 1)
                self.toks.append(("op", ch, mo.start(3)))
            pos = mo.end()
        self.k = 0
        self.end = len(text)

    def peek(self):
        return self.toks[self.k] if self.k < len(self.toks) else ("eof", "", self.end)

    def next(self):
        t = self.peek()
        self.k += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self.line, tok[2] + 1)


def _imag(c: RatFunc) -> RatFunc:
    return c * RatFunc.coerce(GaussianRational(0, 1))


def _parse_expr(lx: _Lexer) -> RatFunc:
    t = lx.peek()
    sign = 1
    if t[0] == "op" and t[1] in "+-":
        lx.next()
        sign = -1 if t[1] == "-" else 1
    acc = _parse_term(lx)
    if sign < 0:
        acc = -acc
    while True:
        t = lx.peek()
        if t[0] == "op" and t[1] in "+-":
            lx.next()
            rhs = _parse_term(lx)
            acc = acc + rhs if t[1] == "+" else acc - rhs
        else:
            return acc


def _parse_term(lx: _Lexer) -> RatFunc:
    acc = _parse_factor(lx)
    while True:
        t = lx.peek()
        if t[0] == "op" and t[1] in "*/":
            lx.next()
            rhs = _parse_factor(lx)
            if t[1] == "*":
                acc = acc * rhs
            else:
                if not rhs:
                    raise lx.error("division by an expression that is identically zero", t)
                acc = acc / rhs
        else:
            return acc


def _parse_factor(lx: _Lexer) -> RatFunc:
    base = _parse_base(lx)
    t = lx.peek()
    if t[0] == "op" and t[1] == "^":
        lx.next()
        e = lx.next()
        if e[0] != "num":
            raise lx.error("expected a non-negative integer exponent", e)
        return base ** int(e[1])
    return base


def _parse_base(lx: _Lexer) -> RatFunc:
    t = lx.next()
    if t[0] == "var":
        return RatFunc.lam()
    if t[0] == "num":
        val = RatFunc.coerce(int(t[1]))
        if lx.peek()[0] == "i":
            lx.next()
            val = _imag(val)
        return val
    if t[0] == "i":
        return RatFunc.coerce(GaussianRational(0, 1))
    if t[0] == "op" and t[1] == "(":
        inner = _parse_expr(lx)
        close = lx.next()
        if not (close[0] == "op" and close[1] == ")"):
            raise lx.error("expected ')'", close)
        return inner
    if t[0] == "eof":
        raise lx.error("unexpected end of expression", t)
    raise lx.error(f"unexpected token {t[1]!r}", t)


def parse_ratfunc(text: str, var: str = DEFAULT_VAR, *, line: int | None = None) -> RatFunc:
    """Parse an expression into an exact, reduced :class:`RatFunc`."""
    lx = _Lexer(text, var, line)
    if not lx.toks:
        raise ParseError("empty expression", line, 1)
    value = _parse_expr(lx)
    t = lx.peek()
    if t[0] != "eof":
        raise lx.error(f"unexpected token {t[1]!r}", t)
    return value


# --------------------------------------------------------------------------
# printer


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fmt_coeff(c: GaussianRational) -> tuple[str, bool]:
    """Text for a coefficient and whether it is a negative real (so the sign
    can be pulled out)."""
    if not c.im:
        return _fmt_rational(abs(c.re)), c.re < 0
    if not c.re:
        return f"({_fmt_rational(c.im)}*i)", False
    sign = "+" if c.im > 0 else "-"
    return f"({_fmt_rational(c.re)}{sign}{_fmt_rational(abs(c.im))}*i)", False


def format_poly(p: Poly, var: str = DEFAULT_VAR) -> str:
    if not p.coeffs:
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        txt, neg = _fmt_coeff(c)
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if mono and txt == "1":
            body = mono
        elif mono:
            body = f"{txt}*{mono}"
        else:
            body = txt
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def _wrap(s: str, p: Poly) -> str:
    nterms = sum(1 for c in p.coeffs if c)
    return f"({s})" if nterms > 1 else s


def format_ratfunc(w: RatFunc, var: str = DEFAULT_VAR) -> str:
    num = format_poly(w.num, var)
    if w.den.is_one():
        return num
    den = format_poly(w.den, var)
    # a single negative term reads correctly as -(a/b)
    return f"{_wrap(num, w.num)}/{_wrap(den, w.den)}"


# --------------------------------------------------------------------------
# matrix files


@dataclass
class MatrixDocument:
    matrix: object
    name: str | None = None
    var: str = DEFAULT_VAR
    extras: dict = field(default_factory=dict)


def _strip_comment(line: str) -> str:
    k = line.find("#")
    return line if k < 0 else line[:k]


def _parse_header(text: str, lineno: int, magic: str) -> tuple[int, dict]:
    parts = text.split()
    if not parts or parts[0] != magic:
        raise ParseError(f"expected header '{magic} n'", lineno, 1)
    if len(parts) < 2 or not parts[1].isdigit() or int(parts[1]) < 1:
        raise ParseError("header needs a positive dimension", lineno, len(parts[0]) + 2)
    meta = {}
    for tok in parts[2:]:
        if "=" not in tok:
            raise ParseError(f"bad header field {tok!r}; use key=value", lineno)
        k, v = tok.split("=", 1)
        meta[k] = v
    return int(parts[1]), meta


def parse_matrix_text(text: str) -> MatrixDocument:
    """Parse a ``wmatrix`` document.

    Format: optional ``#`` comments and blank lines, a header line
    ``wmatrix n [name=...] [var=...]`` and then ``n`` rows of ``n`` entries
    separated by ``;``.
    """
    from .wmatrix import WMatrix

    n = None
    meta = {}
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if n is None:
            n, meta = _parse_header(line, lineno, "wmatrix")
            var = meta.get("var", DEFAULT_VAR)
            if not re.fullmatch(r"[A-Za-z_]\w*", var) or var == "i":
                raise ParseError(f"invalid variable symbol {var!r}", lineno)
            continue
        if len(rows) == n:
            raise ParseError(f"more than {n} matrix rows", lineno)
        cells = line.split(";")
        if len(cells) != n:
            raise ParseError(f"row {len(rows) + 1} has {len(cells)} entries, expected {n}", lineno)
        row = []
        offset = 0
        for cell in cells:
            try:
                row.append(parse_ratfunc(cell, var, line=lineno))
            except ParseError as exc:
                if exc.col is not None:
                    raise ParseError(str(exc).rsplit(" (", 1)[0], lineno,
                                     exc.col + offset + (len(raw) - len(raw.lstrip()))) from None
                raise
            offset += len(cell) + 1
        rows.append(row)
    if n is None:
        raise ParseError("missing 'wmatrix n' header", 1, 1)
    if len(rows) != n:
        raise ParseError(f"expected {n} matrix rows, found {len(rows)}")
    return MatrixDocument(WMatrix(rows), meta.get("name"), meta.get("var", DEFAULT_VAR))


def parse_matrix_file(path) -> MatrixDocument:
    return parse_matrix_text(Path(path).read_text(encoding="utf-8"))


def format_matrix(m, name: str | None = None, var: str = DEFAULT_VAR) -> str:
    head = f"wmatrix {m.n}"
    if name:
        head += f" name={name}"
    if var != DEFAULT_VAR:
        head += f" var={var}"
    lines = [head]
    for row in m.entries:
        lines.append("; ".join(format_ratfunc(x, var) for x in row))
    return "\n".join(lines) + "\n"


def write_matrix_file(m, path, name: str | None = None, var: str = DEFAULT_VAR) -> None:
    Path(path).write_text(format_matrix(m, name, var), encoding="utf-8")


# --------------------------------------------------------------------------
# spring network files


def parse_network_text(text: str):
    """Parse a ``springnet`` document.

    Lines after the ``springnet n`` header are ``spring i j k`` (1-based
    nodes, rational stiffness) or ``mass i m``.
    """
    from .massspring import SpringNetwork

    n = None
    springs = []
    masses = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if n is None:
            n, _ = _parse_header(line, lineno, "springnet")
            continue
        parts = line.split()
        try:
            if parts[0] == "spring" and len(parts) == 4:
                springs.append((int(parts[1]), int(parts[2]), Fraction(parts[3])))
            elif parts[0] == "mass" and len(parts) == 3:
                masses[int(parts[1])] = Fraction(parts[2])
            else:
                raise ParseError(f"unrecognised line {line!r}", lineno)
        except ValueError as exc:
            raise ParseError(f"bad number in {line!r}", lineno) from exc
    if n is None:
        raise ParseError("missing 'springnet n' header", 1, 1)
    mass_list = None
    if masses:
        mass_list = tuple(masses.get(i, Fraction(1)) for i in range(1, n + 1))
    return SpringNetwork(n, tuple(springs), mass_list)


def parse_network_file(path):
    return parse_network_text(Path(path).read_text(encoding="utf-8"))


# --------------------------------------------------------------------------
# rasters


def _fmt_float(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(float(x))


def format_raster_csv(raster) -> str:
    spec = raster.spec
    lines = [
        f"# isored raster kind={raster.kind} nx={spec.nx} ny={spec.ny} "
        f"window={_fmt_float(spec.re_min)},{_fmt_float(spec.re_max)},"
        f"{_fmt_float(spec.im_min)},{_fmt_float(spec.im_max)}",
        "re,im,value,flag",
    ]
    re_axis, im_axis = spec.axes()
    gersh = raster.kind == "gershgorin"
    for j in range(spec.ny):
        for i in range(spec.nx):
            v = raster.values[j, i]
            val = str(int(v)) if gersh else _fmt_float(v)
            lines.append(f"{_fmt_float(re_axis[i])},{_fmt_float(im_axis[j])},{val},"
                         f"{int(raster.flags[j, i])}")
    return "\n".join(lines) + "\n"


def write_raster(raster, path, format: str = "csv", window: tuple[float, float] | None = None) -> None:
    """Write a raster as CSV or as a binary 8-bit PGM image.

    CSV rows run with the imaginary part outer and the real part inner.  For
    PGM each pixel is ``255 * (log10(value) - lo) / (hi - lo)`` clamped to
    ``[0, 255]`` (``inf`` maps to 255); the top image row is the largest
    imaginary part.  Gershgorin rasters map members to 255.
    """
    path = Path(path)
    if format == "csv":
        path.write_text(format_raster_csv(raster), encoding="utf-8")
    elif format == "pgm":
        path.write_bytes(raster_to_pgm(raster, window))
    else:
        raise DomainError(f"unknown raster format {format!r}")


def raster_to_pgm(raster, window: tuple[float, float] | None = None) -> bytes:
    spec = raster.spec
    vals = np.asarray(raster.values)
    if raster.kind == "gershgorin":
        pix = np.where(vals != 0, 255, 0).astype(np.uint8)
        comment = "# gershgorin membership: 255 = inside some row region"
    else:
        lo, hi = window if window is not None else (0.0, 2.0)
        if not hi > lo:
            raise DomainError("PGM window needs lo < hi")
        v = vals.astype(float)
        with np.errstate(divide="ignore"):
            lv = np.log10(np.where(v > 0, v, 1.0))
        t = (lv - lo) / (hi - lo)
        pix = np.floor(np.clip(t, 0.0, 1.0) * 255.0 + 0.5)
        pix = np.where(v <= 0, 0, pix)
        pix = np.where(np.isinf(v), 255, pix).astype(np.uint8)
        comment = f"# log10 window lo={_fmt_float(lo)} hi={_fmt_float(hi)}"
    header = f"P5\n{comment}\n{spec.nx} {spec.ny}\n255\n".encode("ascii")
    return header + pix[::-1].tobytes()


def levels_window(levels) -> tuple[float, float]:
    """PGM log window spanning the membership thresholds ``1/eps``."""
    inv = [math.log10(1.0 / float(e)) for e in levels]
    lo, hi = min(inv), max(inv)
    if hi - lo < 1e-12:
        lo, hi = lo - 0.5, hi + 0.5
    return lo, hi


def _parse_float(s: str) -> float:
    return float(s)


def read_raster(path):
    """Read a CSV raster written by :func:`write_raster`."""
    from .regions import GridSpec, RegionRaster

    text = Path(path).read_text(encoding="utf-8").splitlines()
    meta = {}
    body = []
    for lineno, line in enumerate(text, start=1):
        if line.startswith("#"):
            for tok in line[1:].split():
                if "=" in tok:
                    k, v = tok.split("=", 1)
                    meta[k] = v
            continue
        if not line.strip():
            continue
        body.append((lineno, line))
    if not body or body[0][1].strip() != "re,im,value,flag":
        raise ParseError("missing 're,im,value,flag' header", body[0][0] if body else 1)
    rows = []
    for lineno, line in body[1:]:
        parts = line.split(",")
        if len(parts) != 4:
            raise ParseError("expected 4 comma-separated fields", lineno)
        try:
            rows.append((float(parts[0]), float(parts[1]), parts[2], int(parts[3])))
        except ValueError as exc:
            raise ParseError(f"bad number: {exc}", lineno) from exc
    re_vals = sorted({r[0] for r in rows})
    im_vals = sorted({r[1] for r in rows})
    nx, ny = len(re_vals), len(im_vals)
    if "nx" in meta and int(meta["nx"]) != nx or "ny" in meta and int(meta["ny"]) != ny:
        raise ParseError("grid size in the comment line does not match the data")
    if nx * ny != len(rows) or nx < 2 or ny < 2:
        raise ParseError("rows do not form a rectangular grid")
    if "window" in meta:
        a, b, c, d = (float(x) for x in meta["window"].split(","))
    else:
        a, b, c, d = re_vals[0], re_vals[-1], im_vals[0], im_vals[-1]
    spec = GridSpec(a, b, c, d, nx, ny)
    kind = meta.get("kind", "pseudospectrum")
    gersh = kind == "gershgorin"
    values = np.zeros((ny, nx), dtype=np.int64 if gersh else float)
    flags = np.zeros((ny, nx), dtype=bool)
    for k, (_, _, v, f) in enumerate(rows):
        j, i = divmod(k, nx)
        values[j, i] = int(v) if gersh else float(v)
        flags[j, i] = bool(f)
    return RegionRaster(spec, kind, values, flags)
