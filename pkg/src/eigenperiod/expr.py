"""A small language for lattices such as ``U(2)+D4^2`` or ``A2(-1)+<-2>``.

Grammar (whitespace is ignored)::

    expr := term ("+" term)*
    term := base ["(" signed-int ")"] ["^" pos-int]
    base := "U" | "A" n | "D" n | "E" n | "<" signed-int ">"

``(s)`` rescales the form, ``^k`` repeats the summand and ``<m>`` is the
rank-one lattice with Gram matrix ``(m)``. Parsing canonicalizes the term
list and builds the lattice in canonical order, so printing and reparsing
gives back the same Gram matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import IntegralLattice, direct_sum, rescale, standard_lattice


class LatticeExprError(ValueError):
    """Syntax or semantic error; ``pos`` is a 0-based offset or ``None``."""

    def __init__(self, message: str, pos: int | None = None):
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{message}{where}")
        self.pos = pos


@dataclass(frozen=True)
class Term:
    base: str  # "U", "A", "D", "E" or "<>"
    n: int  # rank for A/D/E, the Gram entry for <m>, 0 for U
    scale: int = 1
    power: int = 1

    def key(self) -> tuple:
        group = {"U": 0, "A": 1, "D": 1, "E": 1, "<>": 2}[self.base]
        rank = 2 if self.base == "U" else (1 if self.base == "<>" else self.n)
        return (group, rank, self.base, self.n, self.scale)

    def base_text(self) -> str:
        if self.base == "U":
            return "U"
        if self.base == "<>":
            return f"<{self.n}>"
        return f"{self.base}{self.n}"

    def __str__(self) -> str:
        s = self.base_text()
        if self.scale != 1:
            s += f"({self.scale})"
        if self.power != 1:
            s += f"^{self.power}"
        return s


@dataclass(frozen=True)
class LatticeExpr:
    source: str
    terms: tuple[Term, ...]

    def canonical(self) -> str:
        return "+".join(str(t) for t in self.terms)

    def lattice(self) -> IntegralLattice:
        parts = []
        for t in self.terms:
            if t.base == "<>":
                L = standard_lattice("rank1", t.n)
            elif t.base == "U":
                L = standard_lattice("U")
            else:
                L = standard_lattice(t.base, t.n)
            parts.extend([rescale(L, t.scale)] * t.power)
        return IntegralLattice(direct_sum(parts).gram, self.canonical())


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def skip(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            got = repr(self.peek()) if self.peek() else "end of input"
            raise LatticeExprError(f"expected {ch!r}, got {got}", self.i)
        self.i += 1

    def integer(self, signed: bool) -> tuple[int, int]:
        self.skip()
        start = self.i
        if signed and self.peek() in "+-" and self.peek():
            self.i += 1
            self.skip()
        digits = self.i
        while self.i < len(self.text) and self.text[self.i].isdigit():
            self.i += 1
        if self.i == digits:
            raise LatticeExprError("expected an integer", digits)
        raw = self.text[start:self.i].replace(" ", "")
        return int(raw), start


def _check_root(base: str, n: int, pos: int):
    ok = (base == "A" and n >= 1) or (base == "D" and n >= 4) or (base == "E" and n in (6, 7, 8))
    if not ok:
        raise LatticeExprError(f"unsupported root lattice {base}{n}", pos)


def _term(sc: _Scanner) -> Term:
    ch = sc.peek()
    pos = sc.i
    if ch == "U":
        sc.i += 1
        base, n = "U", 0
    elif ch in ("A", "D", "E"):
        sc.i += 1
        if not sc.text[sc.i:sc.i + 1].isdigit():
            raise LatticeExprError(f"{ch} must be followed by its rank", sc.i)
        n, _ = sc.integer(signed=False)
        _check_root(ch, n, pos)
        base = ch
    elif ch == "<":
        sc.i += 1
        n, npos = sc.integer(signed=True)
        if n == 0:
            raise LatticeExprError("<0> is degenerate", npos)
        sc.expect(">")
        base = "<>"
    else:
        got = repr(ch) if ch else "end of input"
        raise LatticeExprError(f"expected U, A, D, E or '<', got {got}", pos)
    scale = 1
    if sc.peek() == "(":
        sc.i += 1
        scale, spos = sc.integer(signed=True)
        if scale == 0:
            raise LatticeExprError("scale factor must be nonzero", spos)
        sc.expect(")")
    power = 1
    if sc.peek() == "^":
        sc.i += 1
        power, ppos = sc.integer(signed=False)
        if power < 1:
            raise LatticeExprError("power must be positive", ppos)
    if base == "<>":
        # <m>(s) is just <ms>
        base, n, scale = "<>", n * scale, 1
    return Term(base, n, scale, power)


def _canonical_terms(terms: list[Term]) -> tuple[Term, ...]:
    merged: dict[tuple, Term] = {}
    for t in terms:
        k = t.key()
        if k in merged:
            merged[k] = Term(t.base, t.n, t.scale, merged[k].power + t.power)
        else:
            merged[k] = t
    return tuple(merged[k] for k in sorted(merged))


def parse_expr(text: str) -> LatticeExpr:
    sc = _Scanner(text)
    if not sc.peek():
        raise LatticeExprError("empty expression", 0)
    terms = [_term(sc)]
    while sc.peek() == "+":
        sc.i += 1
        terms.append(_term(sc))
    if sc.peek():
        raise LatticeExprError(f"unexpected {sc.peek()!r}", sc.i)
    return LatticeExpr(text, _canonical_terms(terms))


def parse_lattice_expr(text: str) -> IntegralLattice:
    return parse_expr(text).lattice()


def canonical_form(text: str) -> str:
    return parse_expr(text).canonical()


__all__ = [
    "LatticeExpr",
    "LatticeExprError",
    "Term",
    "canonical_form",
    "parse_expr",
    "parse_lattice_expr",
]
