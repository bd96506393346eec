"""Boolean formula AST, the network text format and state strings.

Network text is one definition per line::

    # comment
    a = b | (!a & c)
    b = 1

Operators bind ``!`` tighter than ``&`` tighter than ``|``. ``0`` and ``1``
are constants. Nodes are indexed in declaration order, starting at 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import NetworkParseError, StateParseError


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Not:
    child: "Formula"


@dataclass(frozen=True)
class And:
    children: tuple


@dataclass(frozen=True)
class Or:
    children: tuple


Formula = Union[Const, Var, Not, And, Or]

TRUE = Const(1)
FALSE = Const(0)


def conj(*children):
    """Build a flattened conjunction; a single child is returned as is."""
    return _nary(And, children)


def disj(*children):
    return _nary(Or, children)


def _nary(cls, children):
    flat = []
    for c in children:
        if isinstance(c, cls):
            flat.extend(c.children)
        else:
            flat.append(c)
    if not flat:
        raise ValueError(f"{cls.__name__} needs at least one child")
    if len(flat) == 1:
        return flat[0]
    return cls(tuple(flat))


def eval_formula(phi, x):
    """Evaluate ``phi`` on state ``x``.

    ``x`` is an int whose bit ``i`` holds node ``i``. It may also be a numpy
    integer array of states, in which case the result is an array of 0/1
    values (constants come back as plain ints and broadcast).
    """
    if isinstance(phi, Var):
        return (x >> phi.index) & 1
    if isinstance(phi, Const):
        return phi.value
    if isinstance(phi, Not):
        return eval_formula(phi.child, x) ^ 1
    if isinstance(phi, And):
        out = 1
        for c in phi.children:
            out = out & eval_formula(c, x)
        return out
    if isinstance(phi, Or):
        out = 0
        for c in phi.children:
            out = out | eval_formula(c, x)
        return out
    raise TypeError(f"not a formula: {phi!r}")


def support(phi):
    """Indices of the variables occurring in ``phi``, sorted."""
    seen = set()
    stack = [phi]
    while stack:
        p = stack.pop()
        if isinstance(p, Var):
            seen.add(p.index)
        elif isinstance(p, Not):
            stack.append(p.child)
        elif isinstance(p, (And, Or)):
            stack.extend(p.children)
    return tuple(sorted(seen))


def render_formula(phi, names: Sequence[str]) -> str:
    return _render(phi, names, 0)


# precedence levels: | = 1, & = 2, ! and atoms = 3
def _render(phi, names, ctx):
    if isinstance(phi, Const):
        return str(phi.value)
    if isinstance(phi, Var):
        return names[phi.index]
    if isinstance(phi, Not):
        return "!" + _render(phi.child, names, 3)
    if isinstance(phi, And):
        s = " & ".join(_render(c, names, 2) for c in phi.children)
        return f"({s})" if ctx > 2 else s
    if isinstance(phi, Or):
        s = " | ".join(_render(c, names, 1) for c in phi.children)
        return f"({s})" if ctx > 1 else s
    raise TypeError(f"not a formula: {phi!r}")


@dataclass(frozen=True)
class NetworkSpec:
    names: tuple
    formulas: tuple

    def __post_init__(self):
        if len(self.names) != len(self.formulas):
            raise ValueError("names and formulas differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate node names")
        n = len(self.names)
        for phi in self.formulas:
            for i in support(phi):
                if not 0 <= i < n:
                    raise ValueError(f"formula refers to undeclared node index {i}")

    @property
    def n(self):
        return len(self.names)

    def index(self, name):
        return self.names.index(name)


_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_.]*)|(?P<const>[01])(?![A-Za-z0-9_])|(?P<op>[!&|()=]))")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_.]*\Z")


def _tokenize(line, lineno):
    tokens = []
    pos = 0
    while True:
        while pos < len(line) and line[pos].isspace():
            pos += 1
        if pos >= len(line):
            break
        m = _TOKEN.match(line, pos)
        if m is None:
            raise NetworkParseError(f"unexpected character {line[pos]!r}", lineno, pos + 1)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), lineno, m.start(kind) + 1))
        pos = m.end()
    tokens.append(("eol", "", lineno, len(line) + 1))
    return tokens


class _ExprParser:
    def __init__(self, tokens, index):
        self.tokens = tokens
        self.pos = 0
        self.index = index

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise NetworkParseError(msg, tok[2], tok[3])

    def expect_end(self):
        tok = self.peek()
        if tok[0] != "eol":
            self.fail(f"unexpected {tok[1]!r}")

    def expr(self):
        terms = [self.term()]
        while self.peek()[1] == "|" and self.peek()[0] == "op":
            self.advance()
            terms.append(self.term())
        return disj(*terms)

    def term(self):
        factors = [self.factor()]
        while self.peek()[1] == "&" and self.peek()[0] == "op":
            self.advance()
            factors.append(self.factor())
        return conj(*factors)

    def factor(self):
        tok = self.advance()
        kind, text = tok[0], tok[1]
        if kind == "op" and text == "!":
            return Not(self.factor())
        if kind == "op" and text == "(":
            inner = self.expr()
            close = self.advance()
            if close[1] != ")" or close[0] != "op":
                self.fail("expected ')'", close)
            return inner
        if kind == "const":
            return Const(int(text))
        if kind == "ident":
            if text not in self.index:
                self.fail(f"undeclared variable {text!r}", tok)
            return Var(self.index[text])
        if kind == "eol":
            self.fail("unexpected end of line", tok)
        self.fail(f"unexpected {text!r}", tok)


def parse_network(text: str) -> NetworkSpec:
    """Parse network text into a :class:`NetworkSpec`.

    Definitions may refer to nodes declared further down.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            lines.append((lineno, body))
    if not lines:
        raise NetworkParseError("empty network")

    heads = []
    index = {}
    for lineno, body in lines:
        lhs, eq, rhs = body.partition("=")
        name = lhs.strip()
        if not eq:
            raise NetworkParseError("expected '<name> = <expr>'", lineno, 1)
        if not _IDENT.match(name) or name in ("0", "1"):
            raise NetworkParseError(f"invalid node name {name!r}", lineno, 1)
        if name in index:
            raise NetworkParseError(f"duplicate definition of {name!r}", lineno, 1)
        index[name] = len(heads)
        heads.append((lineno, name, len(lhs) + 1, rhs))

    formulas = []
    for lineno, name, offset, rhs in heads:
        tokens = _tokenize(rhs, lineno)
        tokens = [(k, t, ln, col + offset) for k, t, ln, col in tokens]
        p = _ExprParser(tokens, index)
        phi = p.expr()
        p.expect_end()
        formulas.append(phi)
    return NetworkSpec(tuple(h[1] for h in heads), tuple(formulas))


def render_network(spec: NetworkSpec) -> str:
    return "".join(
        f"{name} = {render_formula(phi, spec.names)}\n"
        for name, phi in zip(spec.names, spec.formulas)
    )


def parse_state(text: str, n: int) -> int:
    """Read a binary string; the leftmost character is node 0."""
    if len(text) != n:
        raise StateParseError(f"state {text!r} has length {len(text)}, expected {n}")
    x = 0
    for i, ch in enumerate(text):
        if ch == "1":
            x |= 1 << i
        elif ch != "0":
            raise StateParseError(f"illegal character {ch!r} in state {text!r}")
    return x


def format_state(x: int, n: int) -> str:
    return "".join("1" if (x >> i) & 1 else "0" for i in range(n))
