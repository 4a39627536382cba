"""Polynomial systems as tuples of supports: parsing, files and generators.

Two input formats are understood:

* polynomial text, e.g. ``vars x y; 3*x^2*y^-1 - y; x*y - 1;`` (coefficients
  are validated and only their nonzero-ness is kept), and
* support files, a JSON document ``{"format": "pretropisms-support",
  "version": 1, "dim": d, "supports": [[[...], ...], ...]}``.
"""

import json
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path

from .linalg import rank

__all__ = [
    "SystemSpec",
    "ParseError",
    "parse_polynomials",
    "format_polynomials",
    "load_support_file",
    "dump_support_file",
    "read_system",
    "gen_generic_simplices",
    "gen_cyclic",
    "gen_nbody",
    "gen_nvortex",
    "generate",
    "FAMILIES",
]

SUPPORT_FORMAT = "pretropisms-support"
SUPPORT_VERSION = 1


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


@dataclass
class SystemSpec:
    ambient_dim: int
    supports: list
    provenance: dict = field(default_factory=dict)
    variables: list = None

    def __post_init__(self):
        clean = []
        for sup in self.supports:
            pts = sorted({tuple(int(x) for x in p) for p in sup})
            if not pts:
                raise ValueError("every support needs at least one point")
            if any(len(p) != self.ambient_dim for p in pts):
                raise ValueError(
                    f"exponent vector length differs from dim {self.ambient_dim}"
                )
            clean.append(pts)
        self.supports = clean

    def __eq__(self, other):
        return (
            isinstance(other, SystemSpec)
            and self.ambient_dim == other.ambient_dim
            and self.supports == other.supports
        )

    def polytopes(self):
        from .polytope import build_polytope

        return [build_polytope(s) for s in self.supports]


# -- polynomial text -------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<number>\d+(?:\.\d*)?(?:/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*^;()])
    """,
    re.VERBOSE,
)


def _tokenize(text):
    pos = 0
    line, line_start = 1, 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            out.append((kind, m.group(), line, pos - line_start + 1))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    out.append(("eof", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok[2], tok[3])

    def expect(self, value):
        tok = self.peek()
        if tok[1] != value:
            self.fail(f"expected {value!r}, found {tok[1] or 'end of input'!r}")
        return self.take()

    def integer(self):
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        tok = self.peek()
        if tok[0] != "number" or not tok[1].isdigit():
            self.fail("expected an integer exponent")
        return sign * int(self.take()[1])

    def exponent(self):
        if self.peek()[1] == "(":
            self.take()
            k = self.integer()
            self.expect(")")
            return k
        return self.integer()

    def factor(self, mono):
        tok = self.peek()
        if tok[0] == "number":
            self.take()
            text = tok[1]
            if "/" in text:
                num, den = text.split("/")
                if int(den) == 0:
                    self.fail("zero denominator", tok)
                return Fraction(Fraction(num), int(den))
            return Fraction(text)
        if tok[0] == "name":
            self.take()
            k = 1
            if self.peek()[1] == "^":
                self.take()
                k = self.exponent()
            mono[tok[1]] = mono.get(tok[1], 0) + k
            if tok[1] not in self.first_seen:
                self.first_seen[tok[1]] = len(self.first_seen)
            return Fraction(1)
        self.fail(f"expected a number or variable, found {tok[1] or 'end of input'!r}")

    def term(self):
        mono = {}
        coef = self.factor(mono)
        while self.peek()[1] == "*":
            self.take()
            coef *= self.factor(mono)
        return coef, mono

    def polynomial(self):
        start = self.peek()
        sign = 1
        if self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
        terms = {}
        while True:
            coef, mono = self.term()
            key = tuple(sorted((v, k) for v, k in mono.items() if k))
            terms[key] = terms.get(key, 0) + sign * coef
            tok = self.peek()
            if tok[1] in "+-" and tok[0] == "op":
                sign = -1 if self.take()[1] == "-" else 1
                continue
            break
        self.expect(";")
        terms = {k: c for k, c in terms.items() if c != 0}
        if not terms:
            raise ParseError("zero polynomial (no nonzero terms)", start[2], start[3])
        return terms, start

    def parse(self):
        self.first_seen = {}
        header = None
        tok = self.peek()
        if tok[0] == "name" and tok[1] == "vars":
            self.take()
            header = []
            while self.peek()[0] == "name":
                name = self.take()
                if name[1] in header:
                    self.fail(f"variable {name[1]!r} declared twice", name)
                header.append(name[1])
            self.expect(";")
            if not header:
                self.fail("empty variable header", tok)
        polys = []
        while self.peek()[0] != "eof":
            polys.append(self.polynomial())
        if not polys:
            self.fail("no polynomials found")
        return header, polys


def parse_polynomials(text, source=None):
    """Parse polynomial text into a :class:`SystemSpec` of supports.

    Without a ``vars`` header every polynomial must use the same variables;
    their order is the order of first appearance.
    """
    parser = _Parser(text)
    header, polys = parser.parse()
    if header is None:
        first = None
        for terms, start in polys:
            used = {v for key in terms for v, _ in key}
            if first is None:
                first = used
            elif used != first:
                raise ParseError(
                    "inconsistent variable sets; declare the order with a 'vars' header",
                    start[2],
                    start[3],
                )
        names = sorted(first, key=parser.first_seen.get)
    else:
        names = header
        declared = set(names)
        for terms, start in polys:
            for key in terms:
                for v, _ in key:
                    if v not in declared:
                        raise ParseError(f"undeclared variable {v!r}", start[2], start[3])
    if not names:
        raise ParseError("system has no variables")
    index = {v: i for i, v in enumerate(names)}
    supports = []
    for terms, _ in polys:
        pts = []
        for key in terms:
            e = [0] * len(names)
            for v, k in key:
                e[index[v]] = k
            pts.append(tuple(e))
        supports.append(pts)
    prov = {"source": str(source)} if source is not None else {}
    return SystemSpec(len(names), supports, prov, list(names))


def format_polynomials(spec):
    """Polynomial text (unit coefficients) with a ``vars`` header."""
    names = spec.variables or [f"x{i}" for i in range(spec.ambient_dim)]
    lines = ["vars " + " ".join(names) + ";"]
    for sup in spec.supports:
        terms = []
        for p in sup:
            factors = []
            for name, k in zip(names, p):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}")
            terms.append("*".join(factors) or "1")
        lines.append(" + ".join(terms) + ";")
    return "\n".join(lines) + "\n"


# -- support files ---------------------------------------------------------


def dump_support_file(spec):
    """Deterministic JSON text for a support file."""
    head = {
        "format": SUPPORT_FORMAT,
        "version": SUPPORT_VERSION,
        "dim": spec.ambient_dim,
    }
    if spec.variables:
        head["variables"] = list(spec.variables)
    if spec.provenance:
        head["provenance"] = spec.provenance
    body = json.dumps(head, indent=2, sort_keys=True)[:-2]
    sups = ",\n".join(
        "    [" + ", ".join("[" + ", ".join(map(str, p)) + "]" for p in sup) + "]"
        for sup in spec.supports
    )
    return body + ',\n  "supports": [\n' + sups + "\n  ]\n}\n"


def load_support_file(text, source=None):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict) or doc.get("format", SUPPORT_FORMAT) != SUPPORT_FORMAT:
        raise ParseError("not a support file")
    if doc.get("version", SUPPORT_VERSION) != SUPPORT_VERSION:
        raise ParseError(f"unsupported support file version {doc.get('version')}")
    try:
        dim = int(doc["dim"])
        supports = [[tuple(int(x) for x in p) for p in sup] for sup in doc["supports"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed support file: {exc}") from None
    prov = dict(doc.get("provenance", {}))
    if source is not None:
        prov.setdefault("source", str(source))
    return SystemSpec(dim, supports, prov, doc.get("variables"))


# -- generators --------------------------------------------------------------


def gen_generic_simplices(n, seed=0):
    """``n - 1`` random lattice simplices in dimension ``n``.

    Coordinates are ``random.Random(seed).randint(0, 30)``; a support is
    redrawn until its ``n + 1`` points are affinely independent.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    rng = random.Random(seed)
    supports = []
    for _ in range(n - 1):
        while True:
            pts = [tuple(rng.randint(0, 30) for _ in range(n)) for _ in range(n + 1)]
            diffs = [tuple(a - b for a, b in zip(p, pts[0])) for p in pts[1:]]
            if rank(diffs) == n:
                break
        supports.append(pts)
    prov = {"generator": "simplices", "n": n, "seed": seed}
    return SystemSpec(n, supports, prov)


def gen_cyclic(n, reduced=False):
    """Supports of cyclic n-roots, or of its reduced form in ``n - 1`` variables.

    The reduced system substitutes ``x_i = y_i / y_0``, clears denominators
    and keeps the first ``n - 1`` equations in ``y_1 .. y_{n-1}``.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    supports = []
    for i in range(1, n):
        pts = []
        for j in range(n):
            e = [0] * n
            for k in range(j, j + i):
                e[k % n] += 1
            pts.append(tuple(e[1:]) if reduced else tuple(e))
        supports.append(pts)
    if reduced:
        names = [f"y{i}" for i in range(1, n)]
        prov = {"generator": "cyclic-reduced", "n": n}
        return SystemSpec(n - 1, supports, prov, names)
    supports.append([(1,) * n, (0,) * n])
    prov = {"generator": "cyclic", "n": n}
    return SystemSpec(n, supports, prov, [f"x{i}" for i in range(n)])


# Polynomials for the mechanics families are expanded with the physical
# constants kept symbolic, so a monomial is dropped only if it cancels
# identically.  A polynomial is a dict {(var exponents, const exponents): int}.


class _Poly:
    def __init__(self, nvars, nconsts, terms=None):
        self.nv = nvars
        self.nc = nconsts
        self.terms = terms or {}

    def _new(self, terms):
        return _Poly(self.nv, self.nc, {k: c for k, c in terms.items() if c})

    def var(self, i, power=1):
        e = [0] * (self.nv + self.nc)
        e[i] = power
        return self._new({tuple(e): 1})

    def const(self, i):
        return self.var(self.nv + i)

    def one(self):
        return self._new({(0,) * (self.nv + self.nc): 1})

    def __add__(self, other):
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        return self._new(t)

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        t = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                t[k] = t.get(k, 0) + c1 * c2
        return self._new(t)

    def __pow__(self, k):
        out = self.one()
        for _ in range(k):
            out = out * self
        return out

    def support(self):
        return sorted({k[: self.nv] for k in self.terms})


def _prod(polys, unit):
    out = unit
    for p in polys:
        out = out * p
    return out


def gen_nvortex(n):
    """Planar relative equilibria of ``n`` point vortices.

    Positions ``z_i`` and their conjugates ``w_i`` are independent variables;
    the vorticities and the angular velocity are generic constants.  For each
    ``i`` the equations ``sum_j G_j / (z_i - z_j) = c w_i`` and
    ``sum_j G_j / (w_i - w_j) = c z_i`` are multiplied by their denominators.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    nv, nc = 2 * n, n + 1
    P = _Poly(nv, nc)
    z = [P.var(i) for i in range(n)]
    w = [P.var(n + i) for i in range(n)]
    gamma = [P.const(j) for j in range(n)]
    omega = P.const(n)
    supports = []
    for a, b in ((z, w), (w, z)):
        for i in range(n):
            others = [k for k in range(n) if k != i]
            f = P._new({})
            for j in others:
                f = f + gamma[j] * _prod([a[i] - a[k] for k in others if k != j], P.one())
            f = f - omega * b[i] * _prod([a[i] - a[k] for k in others], P.one())
            supports.append(f.support())
    names = [f"z{i}" for i in range(1, n + 1)] + [f"w{i}" for i in range(1, n + 1)]
    prov = {"generator": "nvortex", "n": n, "formulation": "relative-equilibria-complex"}
    return SystemSpec(nv, supports, prov, names)


def gen_nbody(n):
    """Planar central configurations of ``n`` bodies.

    Variables are the positions ``z_i``, conjugates ``w_i`` and mutual
    distances ``r_ij`` (``i < j``); masses and the rotation constant are
    generic.  Equations: ``sum_i m_i (z_i - z_j) / r_ij^3 = c z_j`` and its
    conjugate, each times ``prod_i r_ij^3``, plus
    ``r_ij^2 = (z_i - z_j)(w_i - w_j)``.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    pairs = list(combinations(range(n), 2))
    pidx = {p: 2 * n + k for k, p in enumerate(pairs)}
    nv, nc = 2 * n + len(pairs), n + 1
    P = _Poly(nv, nc)
    z = [P.var(i) for i in range(n)]
    w = [P.var(n + i) for i in range(n)]
    mass = [P.const(i) for i in range(n)]
    omega = P.const(n)

    def r3(i, j):
        return P.var(pidx[(min(i, j), max(i, j))], 3)

    supports = []
    for a in (z, w):
        for j in range(n):
            others = [i for i in range(n) if i != j]
            f = P._new({})
            for i in others:
                rest = _prod([r3(k, j) for k in others if k != i], P.one())
                f = f + mass[i] * (a[i] - a[j]) * rest
            f = f - omega * a[j] * _prod([r3(k, j) for k in others], P.one())
            supports.append(f.support())
    for i, j in pairs:
        f = P.var(pidx[(i, j)], 2) - (z[i] - z[j]) * (w[i] - w[j])
        supports.append(f.support())
    names = (
        [f"z{i}" for i in range(1, n + 1)]
        + [f"w{i}" for i in range(1, n + 1)]
        + [f"r{i + 1}{j + 1}" for i, j in pairs]
    )
    prov = {"generator": "nbody", "n": n, "formulation": "central-configurations-complex"}
    return SystemSpec(nv, supports, prov, names)


FAMILIES = ("simplices", "cyclic", "cyclic-reduced", "nbody", "nvortex")


def generate(family, n, seed=0):
    if family == "simplices":
        return gen_generic_simplices(n, seed)
    if family == "cyclic":
        return gen_cyclic(n, reduced=False)
    if family == "cyclic-reduced":
        return gen_cyclic(n, reduced=True)
    if family == "nbody":
        return gen_nbody(n)
    if family == "nvortex":
        return gen_nvortex(n)
    raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


def _parse_gen_spec(text):
    # gen:<family>:n=<n>[:seed=<s>]
    parts = text.split(":")
    if len(parts) < 3:
        raise ParseError(f"malformed generator spec {text!r}")
    family = parts[1]
    params = {}
    for p in parts[2:]:
        if "=" not in p:
            raise ParseError(f"malformed generator parameter {p!r}")
        k, v = p.split("=", 1)
        try:
            params[k] = int(v)
        except ValueError:
            raise ParseError(f"generator parameter {k!r} must be an integer") from None
    if "n" not in params:
        raise ParseError("generator spec needs n=<int>")
    unknown = set(params) - {"n", "seed"}
    if unknown:
        raise ParseError(f"unknown generator parameters {sorted(unknown)}")
    return generate(family, params["n"], params.get("seed", 0))


def read_system(source, fmt=None):
    """Load a system from a path or a ``gen:family:n=..:seed=..`` spec.

    ``fmt`` is ``"poly"`` or ``"sup"``; by default it is inferred from the
    extension, falling back to sniffing for a JSON object.
    """
    source = str(source)
    if source.startswith("gen:"):
        return _parse_gen_spec(source)
    text = Path(source).read_text()
    if fmt is None:
        suffix = Path(source).suffix.lower()
        if suffix in (".sup", ".json"):
            fmt = "sup"
        elif suffix in (".poly", ".txt"):
            fmt = "poly"
        else:
            fmt = "sup" if text.lstrip().startswith("{") else "poly"
    if fmt == "sup":
        return load_support_file(text, source)
    if fmt == "poly":
        return parse_polynomials(text, source)
    raise ValueError(f"unknown input format {fmt!r}")
