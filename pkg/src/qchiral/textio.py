"""Text front end: a small expression grammar, canonical printing, reports.

Grammar (whitespace insensitive)::

    expr    := ['+'|'-'] tterm (('+'|'-') tterm)*
    tterm   := term ('(x)' term)*
    term    := factor ('*' factor)*
    factor  := '-' factor | primary ['^' ['-'] INT]
    primary := INT | INT '/' INT | 'q' | atom | '(' expr ')'
    atom    := NAME '[' INT ',' INT [';' INT ',' INT] ']' | 'Dinv' | 'Detinv'

``parse`` builds an :class:`ExprNode` tree; ``evaluate`` interprets it in a
:class:`Context` that resolves atoms to elements of some algebra.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from .scalar import ONE, Q, Scalar, as_scalar

__all__ = [
    "ParseError",
    "ExprNode",
    "Num",
    "QVar",
    "Atom",
    "Sum",
    "Prod",
    "Pow",
    "Neg",
    "TensorNode",
    "parse",
    "parse_scalar",
    "evaluate",
    "Context",
    "FreeContext",
    "algebra_context",
    "format_scalar",
    "format_element",
    "format_atom",
    "SuiteReport",
    "InstanceRecord",
    "REPORT_SCHEMA",
    "RUN_SCHEMA",
]


class ParseError(ValueError):
    def __init__(self, message: str, position: int | None = None, text: str | None = None):
        self.position = position
        self.text = text
        where = "" if position is None else f" at position {position}"
        super().__init__(f"{message}{where}")


# -- printing -------------------------------------------------------------


def _format_rational(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_monomial(c, e: int) -> str:
    """``c*q^e`` for ``c > 0``."""
    if e == 0:
        return _format_rational(c)
    qs = "q" if e == 1 else f"q^{e}"
    return qs if c == 1 else f"{_format_rational(c)}*{qs}"


def format_scalar(s: Scalar) -> str:
    s = as_scalar(s)
    if s.is_zero():
        return "0"
    parts = []
    for n, (e, c) in enumerate(s.items()):
        mono = _format_monomial(abs(c), e)
        if n == 0:
            parts.append(mono if c > 0 else f"-{mono}")
        else:
            parts.append(f" + {mono}" if c > 0 else f" - {mono}")
    return "".join(parts)


def format_atom(label) -> str:
    name = label[0]
    if len(label) == 1:
        return name
    if name == "D" and len(label) == 5:
        _, r, s, k, l = label
        return f"D[{r},{s}]" if (k, l) == (1, 2) else f"D[{r},{s};{k},{l}]"
    return f"{name}[{','.join(str(i) for i in label[1:])}]"


def _signed_coefficient(c: Scalar) -> tuple[bool, Scalar]:
    (e0, c0), = list(c.items())[:1]
    if c0 < 0:
        return True, -c
    return False, c


def format_term(c: Scalar, key_text: str) -> tuple[bool, str]:
    neg, m = _signed_coefficient(c)
    unit = key_text == "1"
    if m.is_monomial():
        ms = format_scalar(m)
        if unit:
            return neg, ms
        return neg, key_text if m == ONE else f"{ms}*{key_text}"
    ms = f"({format_scalar(m)})"
    return neg, ms if unit else f"{ms}*{key_text}"


def format_element(x) -> str:
    if x.is_zero():
        return "0"
    alg = x.algebra
    out = []
    for n, (k, c) in enumerate(x.items()):
        neg, body = format_term(c, alg.format_key(k))
        if n == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# -- AST ----------------------------------------------------------------


class ExprNode:
    pos: int = 0

    def atoms(self) -> set:
        return set()


@dataclass
class Num(ExprNode):
    value: Fraction
    pos: int = 0


@dataclass
class QVar(ExprNode):
    pos: int = 0


@dataclass
class Atom(ExprNode):
    label: tuple
    pos: int = 0

    def atoms(self):
        return {self.label}


@dataclass
class Neg(ExprNode):
    arg: ExprNode
    pos: int = 0

    def atoms(self):
        return self.arg.atoms()


@dataclass
class Sum(ExprNode):
    terms: list  # (sign, node)
    pos: int = 0

    def atoms(self):
        return set().union(*(t.atoms() for _, t in self.terms))


@dataclass
class Prod(ExprNode):
    factors: list
    pos: int = 0

    def atoms(self):
        return set().union(*(f.atoms() for f in self.factors))


@dataclass
class Pow(ExprNode):
    base: ExprNode
    exponent: int
    pos: int = 0

    def atoms(self):
        return self.base.atoms()


@dataclass
class TensorNode(ExprNode):
    legs: list
    pos: int = 0

    def atoms(self):
        return set().union(*(l.atoms() for l in self.legs))


# -- tokenizer / parser -----------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<tensor>\(x\))|(?P<rat>\d+/\d+)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()\[\],;]))"
)

_ATOM_NAMES = {"a", "g", "D", "u", "nu", "z", "xi"}
_BARE_ATOMS = {"Dinv", "Detinv"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos, text)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, offset: int = 0):
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, v, pos = self.take()
        if v != value:
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", pos, self.text)

    def error(self, msg: str):
        kind, v, pos = self.peek()
        raise ParseError(msg, pos, self.text)

    def parse(self) -> ExprNode:
        node = self.expr()
        kind, v, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {v!r}", pos, self.text)
        return node

    def expr(self) -> ExprNode:
        pos = self.peek()[2]
        terms = []
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        terms.append((sign, self.tterm()))
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
            terms.append((sign, self.tterm()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(terms, pos)

    def tterm(self) -> ExprNode:
        pos = self.peek()[2]
        legs = [self.term()]
        while self.peek()[0] == "tensor":
            self.take()
            legs.append(self.term())
        return legs[0] if len(legs) == 1 else TensorNode(legs, pos)

    def term(self) -> ExprNode:
        pos = self.peek()[2]
        factors = [self.factor()]
        while self.peek()[1] == "*" and self.peek()[0] == "op":
            self.take()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Prod(factors, pos)

    def factor(self) -> ExprNode:
        kind, v, pos = self.peek()
        if kind == "op" and v == "-":
            self.take()
            return Neg(self.factor(), pos)
        base = self.primary()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            self.take()
            neg = False
            if self.peek()[1] == "-":
                self.take()
                neg = True
            k, ev, epos = self.take()
            if k != "int":
                raise ParseError("exponent must be an integer", epos, self.text)
            e = int(ev)
            base = Pow(base, -e if neg else e, pos)
        return base

    def _int(self) -> int:
        kind, v, pos = self.take()
        if kind != "int":
            raise ParseError(f"expected an index, found {v or 'end of input'!r}", pos, self.text)
        return int(v)

    def primary(self) -> ExprNode:
        kind, v, pos = self.take()
        if kind == "int":
            return Num(Fraction(int(v)), pos)
        if kind == "rat":
            a, b = v.split("/")
            if int(b) == 0:
                raise ParseError("zero denominator", pos, self.text)
            return Num(Fraction(int(a), int(b)), pos)
        if kind == "op" and v == "(":
            node = self.expr()
            self.expect(")")
            return node
        if kind == "name":
            if v == "q":
                return QVar(pos)
            if v in _BARE_ATOMS:
                return Atom((v,), pos)
            if v in _ATOM_NAMES:
                self.expect("[")
                idx = [self._int()]
                self.expect(",")
                idx.append(self._int())
                cols = None
                if self.peek()[1] == ";":
                    if v != "D":
                        self.error("only minors take a column pair")
                    self.take()
                    k = self._int()
                    self.expect(",")
                    l = self._int()
                    cols = (k, l)
                self.expect("]")
                if v == "D":
                    return Atom(("D", idx[0], idx[1]) + (cols or (1, 2)), pos)
                return Atom((v, idx[0], idx[1]), pos)
            raise ParseError(f"unknown name {v!r}", pos, self.text)
        raise ParseError(f"unexpected {v or 'end of input'!r}", pos, self.text)


def parse(text: str) -> ExprNode:
    """Parse ``text`` into an expression tree (no index validation yet)."""
    return _Parser(text).parse()


# -- evaluation ------------------------------------------------------------


class Context:
    """Resolves atoms to elements of ``algebra``.

    ``resolve`` maps an atom label to an :class:`~qchiral.algebra.Element`
    (raising ``IndexError``/``ValueError`` for invalid labels).  ``legs``
    supplies the contexts used for the factors of ``(x)``; by default every
    leg reuses this context.
    """

    def __init__(self, algebra, resolve: Callable, legs: Sequence["Context"] | None = None):
        self.algebra = algebra
        self.resolve = resolve
        self.legs = legs

    def leg(self, i: int) -> "Context":
        if self.legs is None:
            return self
        try:
            return self.legs[i]
        except IndexError:
            raise ParseError(f"tensor expression has more than {len(self.legs)} legs") from None


class FreeContext(Context):
    """Keeps every atom formal, in a free algebra."""

    def __init__(self, free=None, parity: Callable | None = None):
        from .algebra import FreeAlgebra

        free = free or FreeAlgebra(parity)
        super().__init__(free, free.gen)


def algebra_context(algebra) -> Context:
    """Context reading the algebra's own printed atoms back.

    Matrix algebras take ``symbol[i,j]``; localizations add their inverse
    atom; tensor algebras get one such context per leg.
    """
    from .localize import LocalizedAlgebra
    from .tensor import TensorAlgebra

    if isinstance(algebra, TensorAlgebra):
        return Context(algebra, _no_atoms, [algebra_context(leg) for leg in algebra.legs])
    if isinstance(algebra, LocalizedAlgebra):
        inner = algebra_context(algebra.base)

        def resolve(label):
            if label == (algebra.inverse_label,):
                return algebra.inverse()
            return algebra.embed(inner.resolve(label))

        return Context(algebra, resolve)

    def resolve(label):
        if len(label) != 3 or label[0] != algebra.symbol:
            raise KeyError(f"{format_atom(label)} is not an atom of {algebra.name}")
        return algebra.gen(label[1], label[2])

    return Context(algebra, resolve)


def _to_element(v, ctx: Context):
    from .algebra import Element

    if isinstance(v, Element):
        return v
    return ctx.algebra.one().scale(v)


def evaluate(node: ExprNode | str, ctx):
    """Interpret an expression tree; pure-scalar expressions return a Scalar.

    ``ctx`` is a :class:`Context` or an algebra, read via :func:`algebra_context`.
    """
    if isinstance(node, str):
        node = parse(node)
    from .algebra import Algebra, Element
    from .tensor import tensor

    if isinstance(ctx, Algebra):
        ctx = algebra_context(ctx)

    def ev(n: ExprNode, c: Context):
        if isinstance(n, Num):
            return as_scalar(n.value)
        if isinstance(n, QVar):
            return Q
        if isinstance(n, Atom):
            try:
                return c.resolve(n.label)
            except (IndexError, KeyError, ValueError) as exc:
                raise ParseError(f"invalid atom {format_atom(n.label)}: {exc}", n.pos) from exc
        if isinstance(n, Neg):
            return -ev(n.arg, c)
        if isinstance(n, Sum):
            vals = [(s, ev(t, c)) for s, t in n.terms]
            if any(isinstance(v, Element) for _, v in vals):
                proto = next(v for _, v in vals if isinstance(v, Element))
                total = proto.algebra.zero()
                for s, v in vals:
                    total = total + (v if s > 0 else -v)
                return total
            total = as_scalar(0)
            for s, v in vals:
                total = total + (v if s > 0 else -v)
            return total
        if isinstance(n, Prod):
            result = ONE
            for f in n.factors:
                v = ev(f, c)
                if isinstance(result, Element) and isinstance(v, Element):
                    result = result * v
                elif isinstance(result, Element):
                    result = result.scale(v)
                elif isinstance(v, Element):
                    result = v.scale(result)
                else:
                    result = result * v
            return result
        if isinstance(n, Pow):
            b = ev(n.base, c)
            if isinstance(b, Element):
                if n.exponent < 0:
                    raise ParseError("negative powers of elements are not available; use Dinv/Detinv", n.pos)
                return b ** n.exponent
            if b.is_zero() and n.exponent < 0:
                raise ParseError("zero to a negative power", n.pos)
            if n.exponent < 0 and not b.is_monomial():
                raise ParseError("only monomials can be inverted", n.pos)
            return b ** n.exponent
        if isinstance(n, TensorNode):
            legs = [_to_element(ev(l, c.leg(i)), c.leg(i)) for i, l in enumerate(n.legs)]
            return tensor(*legs)
        raise TypeError(f"unknown node {n!r}")

    return ev(node, ctx)


def parse_scalar(text: str) -> Scalar:
    from .algebra import Element

    v = evaluate(parse(text), Context(None, _no_atoms))
    if isinstance(v, Element):
        raise ParseError("expected a scalar expression")
    return v


def _no_atoms(label):
    raise ValueError("scalar expressions cannot contain generators")


# -- reports --------------------------------------------------------------


@dataclass
class InstanceRecord:
    id: str
    lhs: str
    rhs: str
    residue: str
    passed: bool
    steps: int = 0
    elapsed: float = 0.0
    certificate: dict | None = None

    def to_json(self) -> dict:
        d = {
            "id": self.id,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residue": self.residue,
            "pass": self.passed,
            "steps": self.steps,
            "elapsed": round(self.elapsed, 6),
        }
        if self.certificate is not None:
            d["certificate"] = self.certificate
        return d


@dataclass
class SuiteReport:
    suite: str
    engine_version: str
    q: str = "symbolic"
    records: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(1 for r in self.records if r.passed)

    @property
    def failed(self) -> int:
        return len(self.records) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self) -> dict:
        d = {
            "suite": self.suite,
            "engine_version": self.engine_version,
            "q": self.q,
            "records": [r.to_json() for r in self.records],
            "summary": {"total": len(self.records), "passed": self.passed, "failed": self.failed},
        }
        if self.notes:
            d["notes"] = list(self.notes)
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False)


REPORT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "qchiral suite report",
    "type": "object",
    "required": ["suite", "engine_version", "q", "records", "summary"],
    "properties": {
        "suite": {"type": "string"},
        "engine_version": {"type": "string"},
        "q": {"type": "string"},
        "notes": {"type": "array", "items": {"type": "string"}},
        "records": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "lhs", "rhs", "residue", "pass", "steps", "elapsed"],
                "properties": {
                    "id": {"type": "string"},
                    "lhs": {"type": "string"},
                    "rhs": {"type": "string"},
                    "residue": {"type": "string"},
                    "pass": {"type": "boolean"},
                    "steps": {"type": "integer", "minimum": 0},
                    "elapsed": {"type": "number", "minimum": 0},
                    "certificate": {"type": "object"},
                },
                "additionalProperties": False,
            },
        },
        "summary": {
            "type": "object",
            "required": ["total", "passed", "failed"],
            "properties": {
                "total": {"type": "integer", "minimum": 0},
                "passed": {"type": "integer", "minimum": 0},
                "failed": {"type": "integer", "minimum": 0},
            },
        },
    },
    "additionalProperties": False,
}


RUN_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "qchiral run report",
    "type": "object",
    "required": ["engine_version", "q", "seed", "suites", "summary"],
    "properties": {
        "engine_version": {"type": "string"},
        "q": {"type": "string"},
        "seed": {"type": "integer"},
        "suites": {"type": "array", "items": REPORT_SCHEMA},
        "summary": REPORT_SCHEMA["properties"]["summary"],
    },
    "additionalProperties": False,
}
