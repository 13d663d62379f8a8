"""Reader and canonical printer for the ``.crn`` reaction text format.

One step per line::

    # comment
    X1 + X2 ->[k1] X2 + X3
    2 X2 ->[k2] X3
    A <=>[kf,kb] B        # two steps, forward then backward
    0 ->[kin] A           # empty complex

Species are numbered in order of first appearance. The printer emits one
irreversible step per line with single spaces and LF line endings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from crnlie.network import NetworkError, ReactionNetwork, ReactionStep, SpeciesId


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<arrow><=>|->)
  | (?P<lbrack>\[)
  | (?P<rbrack>\])
  | (?P<comma>,)
  | (?P<plus>\+)
  | (?P<number>\d+(?:\.\d*)?|\.\d+)
  | (?P<name>[A-Za-z][A-Za-z0-9_]*)
  | (?P<minus>-)
  | (?P<other>.)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    col: int


@dataclass(frozen=True)
class NetworkDocument:
    source: str
    network: ReactionNetwork
    positions: tuple[tuple[int, int], ...]  # (line, column) of each step


def _tokenize(text: str, lineno: int) -> list[_Tok]:
    toks = []
    for mt in _TOKEN.finditer(text):
        kind = mt.lastgroup
        if kind == "ws":
            continue
        toks.append(_Tok(kind, mt.group(), mt.start() + 1))
    return toks


class _LineParser:
    def __init__(self, toks: list[_Tok], lineno: int, eol_col: int):
        self.toks = toks
        self.pos = 0
        self.lineno = lineno
        self.eol_col = eol_col

    def error(self, msg: str, tok: _Tok | None = None):
        col = tok.col if tok is not None else self.eol_col
        raise ParseError(msg, self.lineno, col)

    def peek(self) -> _Tok | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self, kind: str, what: str) -> _Tok:
        tok = self.peek()
        if tok is None:
            self.error(f"expected {what}, found end of line")
        if tok.kind != kind:
            self.error(f"expected {what}, found {tok.text!r}", tok)
        self.pos += 1
        return tok

    def complex(self) -> list[tuple[int, str, _Tok]]:
        """Parse ``c1 A + c2 B`` or ``0``; returns (coefficient, name, token) triples."""
        tok = self.peek()
        if tok is not None and tok.kind == "number" and tok.text == "0":
            nxt = self.toks[self.pos + 1] if self.pos + 1 < len(self.toks) else None
            if nxt is None or nxt.kind != "name":
                self.pos += 1
                return []
        terms = []
        while True:
            terms.append(self.term())
            tok = self.peek()
            if tok is None or tok.kind != "plus":
                return terms
            self.pos += 1

    def term(self) -> tuple[int, str, _Tok]:
        tok = self.peek()
        if tok is None:
            self.error("expected species, found end of line")
        if tok.kind == "minus":
            self.error("negative coefficients are not allowed", tok)
        coeff = 1
        if tok.kind == "number":
            if not tok.text.isdigit():
                self.error(f"coefficient {tok.text!r} is not a non-negative integer", tok)
            coeff = int(tok.text)
            if coeff == 0:
                self.error("zero coefficient", tok)
            self.pos += 1
        name = self.take("name", "species name")
        return coeff, name.text, name


def _parse_lines(text: str):
    """Yield (lineno, reactant terms, arrow token, symbols, product terms)."""
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokenize(line, lineno)
        if not toks:
            continue
        for tok in toks:
            if tok.kind == "other":
                raise ParseError(f"unexpected character {tok.text!r}", lineno, tok.col)
        p = _LineParser(toks, lineno, len(line.rstrip()) + 1)
        lhs = p.complex()
        arrow = p.take("arrow", "'->' or '<=>'")
        p.take("lbrack", "'[' after arrow")
        symbols = [p.take("name", "rate symbol")]
        while (tok := p.peek()) is not None and tok.kind == "comma":
            p.pos += 1
            symbols.append(p.take("name", "rate symbol"))
        p.take("rbrack", "']'")
        if arrow.text == "->" and len(symbols) != 1:
            p.error("'->' takes exactly one rate symbol", arrow)
        if arrow.text == "<=>" and len(symbols) != 2:
            p.error("'<=>' takes two rate symbols [forward,backward]", arrow)
        rhs = p.complex()
        if (tok := p.peek()) is not None:
            p.error(f"unexpected {tok.text!r} after product complex", tok)
        yield lineno, toks[0].col, lhs, arrow, symbols, rhs


def parse_document(text: str) -> NetworkDocument:
    species: dict[str, int] = {}
    raw_steps = []  # (lhs dict, rhs dict, symbol, line, col, tok)
    seen_symbols: dict[str, int] = {}

    def index(name: str) -> int:
        if name not in species:
            species[name] = len(species)
        return species[name]

    def collect(terms) -> dict[int, int]:
        out: dict[int, int] = {}
        for coeff, name, _ in terms:
            i = index(name)
            out[i] = out.get(i, 0) + coeff
        return out

    for lineno, col, lhs, arrow, symbols, rhs in _parse_lines(text):
        left, right = collect(lhs), collect(rhs)
        pairs = [(left, right)] if arrow.text == "->" else [(left, right), (right, left)]
        for (a, b), sym_tok in zip(pairs, symbols):
            sym = sym_tok.text
            if sym in seen_symbols:
                raise ParseError(f"duplicate rate symbol {sym!r} (first used on line "
                                 f"{seen_symbols[sym]})", lineno, sym_tok.col)
            seen_symbols[sym] = lineno
            if a == b:
                raise ParseError(f"null step {sym!r}: reactant and product complexes are equal",
                                 lineno, arrow.col)
            raw_steps.append((a, b, sym, lineno, col))

    if not raw_steps:
        raise ParseError("no reaction steps", 1, 1)
    m = len(species)
    steps = []
    for a, b, sym, _, _ in raw_steps:
        steps.append(ReactionStep(tuple(a.get(i, 0) for i in range(m)),
                                  tuple(b.get(i, 0) for i in range(m)), sym))
    sp = tuple(SpeciesId(i, n) for n, i in species.items())
    try:
        net = ReactionNetwork(sp, tuple(steps))
    except NetworkError as exc:  # pragma: no cover - grammar already guarantees validity
        raise ParseError(str(exc), 1, 1) from exc
    return NetworkDocument(text, net, tuple((ln, c) for _, _, _, ln, c in raw_steps))


def parse_network(text: str) -> ReactionNetwork:
    return parse_document(text).network


def format_complex(net: ReactionNetwork, counts) -> str:
    parts = []
    for i, c in enumerate(counts):
        if c:
            name = net.species[i].name
            parts.append(name if c == 1 else f"{c} {name}")
    return " + ".join(parts) if parts else "0"


def format_step(net: ReactionNetwork, r: int) -> str:
    step = net.steps[r]
    return (f"{format_complex(net, step.reactant)} ->[{step.rate_symbol}] "
            f"{format_complex(net, step.product)}")


def print_network(net: ReactionNetwork) -> str:
    return "".join(format_step(net, r) + "\n" for r in range(net.num_steps))


def load(path) -> ReactionNetwork:
    with open(path, encoding="utf-8") as fh:
        return parse_network(fh.read())
