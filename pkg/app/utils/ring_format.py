"""Line-oriented text format for graded rings and ideals.

    ring
      field GF(32003)
      rank 2
      var x0 deg (1,0)
      var x1 deg (-2,1)
    ideal
      gen x0^2*x1 - 3*x1

``#`` starts a comment. Generators use integer coefficients and the
tokens name, ``^``, ``*``, ``+`` and ``-``.
"""

import re
from math import lcm
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from app.config import get_settings
from app.errors import InputError, RingSyntaxError
from app.models.exact import DegreeVector
from app.models.ring import CoefficientField, GradingSpec, IdealPresentation, MGPolyRing, Polynomial


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[\^*+\-]))")
_KEYWORD = re.compile(r"\S+")


class _Line:
    def __init__(self, number: int, text: str):
        self.number = number
        self.text = text

    def error(self, message: str, column: int) -> RingSyntaxError:
        return RingSyntaxError(message, self.number, column)

    def words(self) -> List[Tuple[str, int]]:
        return [(m.group(0), m.start() + 1) for m in _KEYWORD.finditer(self.text)]


def _tokenize(line: _Line, start: int) -> List[Tuple[str, str, int]]:
    tokens = []
    position = start
    text = line.text
    while position < len(text):
        if not text[position:].strip():
            break
        match = _TOKEN.match(text, position)
        if not match or match.lastgroup is None:
            column = position + len(text[position:]) - len(text[position:].lstrip()) + 1
            raise line.error(f"unexpected character {text[column - 1]!r}", column)
        tokens.append((match.lastgroup, match.group(match.lastgroup), match.start(match.lastgroup) + 1))
        position = match.end()
    return tokens


class _ExpressionParser:
    """expr := ['-'] term (('+'|'-') term)* ; term := factor ('*' factor)*"""

    def __init__(self, line: _Line, tokens: List[Tuple[str, str, int]], ring: MGPolyRing):
        self.line = line
        self.tokens = tokens
        self.ring = ring
        self.position = 0

    def _peek(self) -> Optional[Tuple[str, str, int]]:
        return self.tokens[self.position] if self.position < len(self.tokens) else None

    def _end_column(self) -> int:
        return len(self.line.text.rstrip()) + 1

    def _next(self, expected: str) -> Tuple[str, str, int]:
        token = self._peek()
        if token is None:
            raise self.line.error(f"expected {expected}, found end of line", self._end_column())
        self.position += 1
        return token

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise self.line.error("empty generator", self._end_column())
        terms: Dict[Tuple[int, ...], int] = {}
        sign = 1
        token = self._peek()
        if token[0] == "op" and token[1] in "+-":
            sign = -1 if token[1] == "-" else 1
            self.position += 1
        while True:
            coefficient, exponent = self._term()
            terms[exponent] = terms.get(exponent, 0) + sign * coefficient
            token = self._peek()
            if token is None:
                break
            if token[0] != "op" or token[1] not in "+-":
                raise self.line.error(f"expected '+' or '-', found {token[1]!r}", token[2])
            sign = -1 if token[1] == "-" else 1
            self.position += 1
        return Polynomial(self.ring.field, self.ring.nvars, tuple(terms.items()))

    def _term(self) -> Tuple[int, Tuple[int, ...]]:
        coefficient = 1
        exponent = [0] * self.ring.nvars
        while True:
            kind, value, column = self._next("a number or a variable")
            if kind == "int":
                coefficient *= int(value)
            elif kind == "name":
                if value not in self.ring.variables:
                    raise self.line.error(f"unknown variable {value!r}", column)
                index = self.ring.index(value)
                power = 1
                token = self._peek()
                if token is not None and token[1] == "^":
                    self.position += 1
                    kind, value, column = self._next("an exponent")
                    if kind != "int":
                        raise self.line.error(f"expected an exponent, found {value!r}", column)
                    power = int(value)
                exponent[index] += power
            else:
                raise self.line.error(f"expected a number or a variable, found {value!r}", column)
            token = self._peek()
            if token is None or token[1] != "*":
                return coefficient, tuple(exponent)
            self.position += 1


def _parse_degree(line: _Line, text: str, column: int, rank: int) -> DegreeVector:
    try:
        degree = DegreeVector.parse(text)
    except InputError as exc:
        raise line.error(str(exc), column) from None
    if degree.dimension != rank:
        raise line.error(f"degree {text} has {degree.dimension} entries, rank is {rank}", column)
    return degree


def parse_input(text: str) -> Tuple[MGPolyRing, Optional[IdealPresentation]]:
    """Parse a ring block and an optional ideal block."""
    field: Optional[CoefficientField] = None
    rank: Optional[int] = None
    names: List[str] = []
    degrees: List[DegreeVector] = []
    generator_lines: List[Tuple[_Line, int]] = []
    section = None
    seen_ideal = False

    for number, raw in enumerate(text.splitlines(), start=1):
        line = _Line(number, raw.split("#", 1)[0])
        words = line.words()
        if not words:
            continue
        keyword, column = words[0]
        if keyword == "ring":
            if section is not None or len(words) > 1:
                raise line.error("'ring' must be the first line and stand alone", column)
            section = "ring"
        elif keyword == "ideal":
            if section != "ring" or len(words) > 1:
                raise line.error("'ideal' must follow the ring block and stand alone", column)
            section = "ideal"
            seen_ideal = True
        elif section is None:
            raise line.error("expected 'ring'", column)
        elif section == "ring" and keyword == "field":
            if len(words) != 2:
                raise line.error("expected 'field GF(p)' or 'field QQ'", column)
            try:
                field = CoefficientField.parse(words[1][0])
            except InputError as exc:
                raise line.error(str(exc), words[1][1]) from None
        elif section == "ring" and keyword == "rank":
            if len(words) != 2 or not words[1][0].isdigit():
                raise line.error("expected 'rank <k>'", column)
            if names:
                raise line.error("'rank' must come before the variables", column)
            rank = int(words[1][0])
        elif section == "ring" and keyword == "var":
            match = re.match(r"\s*var\s+(\S+)\s+deg\s+(\(.*\))\s*$", line.text)
            if not match:
                raise line.error("expected 'var <name> deg (<q1>,...,<qk>)'", column)
            if rank is None:
                raise line.error("'rank' must be declared before the variables", column)
            name = match.group(1)
            if not re.match(r"^[A-Za-z_][A-Za-z0-9_]*$", name):
                raise line.error(f"invalid variable name {name!r}", match.start(1) + 1)
            if name in names:
                raise line.error(f"duplicate variable {name!r}", match.start(1) + 1)
            names.append(name)
            degrees.append(_parse_degree(line, match.group(2), match.start(2) + 1, rank))
        elif section == "ideal" and keyword == "gen":
            generator_lines.append((line, column + len("gen") - 1))
        else:
            raise line.error(f"unexpected {keyword!r} in the {section} block", column)

    if section is None:
        raise RingSyntaxError("empty input, expected 'ring'", 1, 1)
    if rank is None:
        raise RingSyntaxError("missing 'rank'", 1, 1)
    field = field or CoefficientField.parse(get_settings().default_field)
    ring = MGPolyRing(tuple(names), GradingSpec(rank, tuple(degrees)), field)

    generators = []
    for line, start in generator_lines:
        polynomial = _ExpressionParser(line, _tokenize(line, start), ring).parse()
        if polynomial.is_zero():
            raise line.error("generator is zero", start + 1)
        generators.append(polynomial)
    if not seen_ideal or not generators:
        return ring, None
    return ring, IdealPresentation(ring, tuple(generators))


def load_input(path: str) -> Tuple[MGPolyRing, Optional[IdealPresentation]]:
    return parse_input(Path(path).read_text(encoding="utf-8"))


def _integer_coefficients(polynomial: Polynomial) -> List[Tuple[Tuple[int, ...], int]]:
    values = [(e, polynomial.field.lift(c)) for e, c in polynomial.terms]
    denominator = 1
    for _, value in values:
        denominator = lcm(denominator, value.denominator)
    return [(e, int(value * denominator)) for e, value in values]


def format_polynomial(polynomial: Polynomial, variables: Tuple[str, ...]) -> str:
    """Terms in descending lex order; GF(p) coefficients in symmetric range.

    Over QQ denominators are cleared, which rescales the generator.
    """
    pieces = []
    for exponent, coefficient in sorted(_integer_coefficients(polynomial), key=lambda t: t[0], reverse=True):
        factors = [name if e == 1 else f"{name}^{e}" for name, e in zip(variables, exponent) if e]
        magnitude = abs(coefficient)
        if not factors:
            body = str(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(magnitude)] + factors)
        if not pieces:
            pieces.append(f"-{body}" if coefficient < 0 else body)
        else:
            pieces.append(f"- {body}" if coefficient < 0 else f"+ {body}")
    return " ".join(pieces) if pieces else "0"


def format_input(ring: MGPolyRing, ideal: Optional[IdealPresentation] = None) -> str:
    lines = ["ring", f"  field {ring.field.name}", f"  rank {ring.rank}"]
    for name, degree in zip(ring.variables, ring.grading.degrees):
        lines.append(f"  var {name} deg {degree}")
    if ideal is not None:
        lines.append("ideal")
        for generator in ideal.generators:
            lines.append(f"  gen {format_polynomial(generator, ring.variables)}")
    return "\n".join(lines) + "\n"
