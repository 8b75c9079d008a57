"""Parser and evaluator for measurement-sequence expressions.

Grammar::

    expr   := term { ("|" | "v") term }
    term   := factor { "." factor }
    factor := atom | "(" expr ")"
    atom   := "[" item { "," item } "]"
    item   := IDENT | "(" IDENT { "," IDENT } ")"

``[m1,(m2,m2'),m3]`` is a coarse-grained atom and desugars to
``[m1,m2,m3] | [m1,m2',m3]``.  ``.`` is series composition (the right
operand must start where the left one ends) and ``|`` is parallel
composition.  Expressions evaluate to amplitudes through a table of link
amplitudes for adjacent outcome pairs.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Mapping, Union

from .errors import ChainMismatch, EmptyAtom, MissingLink, SeqSyntaxError
from .proc_calc import ONE, Amplitude, amp_add, amp_mul, born


@dataclass(frozen=True)
class Atom:
    outcomes: tuple

    def __post_init__(self):
        object.__setattr__(self, "outcomes", tuple(self.outcomes))
        if not self.outcomes:
            raise EmptyAtom("atom without outcomes", 0)


@dataclass(frozen=True)
class Series:
    left: "SeqExpr"
    right: "SeqExpr"


@dataclass(frozen=True)
class Parallel:
    left: "SeqExpr"
    right: "SeqExpr"


SeqExpr = Union[Atom, Series, Parallel]
AmplitudeEnv = Mapping[tuple, Amplitude]


# -- lexing -------------------------------------------------------------------

_TOKEN = re.compile(r"(?P<ident>[A-Za-z0-9_][A-Za-z0-9_']*)|(?P<punct>[\[\](),.|])|(?P<space>\s+)")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SeqSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup == "ident":
            tokens.append(("ident", m.group(), pos))
        elif m.lastgroup == "punct":
            tokens.append((m.group(), m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str):
        tok = self.tok
        if tok[0] != kind:
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            raise SeqSyntaxError(f"expected {kind!r}, found {found}", tok[2])
        return self.advance()

    def _at_parallel(self) -> bool:
        kind, text, _ = self.tok
        # 'v' is only an operator where an operator may appear
        return kind == "|" or (kind == "ident" and text == "v")

    def parse(self) -> SeqExpr:
        expr = self.expr()
        if self.tok[0] != "end":
            raise SeqSyntaxError(f"unexpected {self.tok[1]!r}", self.tok[2])
        return expr

    def expr(self) -> SeqExpr:
        node = self.term()
        while self._at_parallel():
            self.advance()
            node = Parallel(node, self.term())
        return node

    def term(self) -> SeqExpr:
        node = self.factor()
        while self.tok[0] == ".":
            self.advance()
            node = Series(node, self.factor())
        return node

    def factor(self) -> SeqExpr:
        kind, _, pos = self.tok
        if kind == "[":
            return self.atom()
        if kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "end" else repr(self.tok[1])
        raise SeqSyntaxError(f"expected '[' or '(', found {found}", pos)

    def atom(self) -> SeqExpr:
        _, _, start = self.expect("[")
        if self.tok[0] == "]":
            raise EmptyAtom("empty atom", start)
        items = [self.item()]
        while self.tok[0] == ",":
            self.advance()
            items.append(self.item())
        self.expect("]")
        alternatives = [Atom(combo) for combo in itertools.product(*items)]
        node = alternatives[0]
        for alt in alternatives[1:]:
            node = Parallel(node, alt)
        return node

    def item(self) -> tuple:
        if self.tok[0] == "(":
            _, _, start = self.advance()
            if self.tok[0] == ")":
                raise EmptyAtom("empty coarse-grained outcome", start)
            names = [self.expect("ident")[1]]
            while self.tok[0] == ",":
                self.advance()
                names.append(self.expect("ident")[1])
            self.expect(")")
            return tuple(names)
        return (self.expect("ident")[1],)


def parse(text: str) -> SeqExpr:
    """Parse an expression; coarse-grained atoms come back as ``Parallel`` trees."""
    return _Parser(text).parse()


def pretty(expr: SeqExpr) -> str:
    """Canonical text form; ``parse(pretty(e)) == e`` for every tree."""
    if isinstance(expr, Atom):
        return "[" + ",".join(expr.outcomes) + "]"
    if isinstance(expr, Series):
        left = pretty(expr.left)
        right = pretty(expr.right)
        if isinstance(expr.left, Parallel):
            left = f"({left})"
        if not isinstance(expr.right, Atom):
            right = f"({right})"
        return f"{left}.{right}"
    if isinstance(expr, Parallel):
        right = pretty(expr.right)
        if isinstance(expr.right, Parallel):
            right = f"({right})"
        return f"{pretty(expr.left)}|{right}"
    raise TypeError(f"not a sequence expression: {expr!r}")


def endpoints(expr: SeqExpr) -> tuple:
    """First and last outcome of the sequence an expression denotes."""
    if isinstance(expr, Atom):
        return expr.outcomes[0], expr.outcomes[-1]
    if isinstance(expr, Series):
        first, mid = endpoints(expr.left)
        mid2, last = endpoints(expr.right)
        if mid != mid2:
            raise ChainMismatch(f"cannot chain {pretty(expr.left)} (ends at {mid}) with "
                                f"{pretty(expr.right)} (starts at {mid2})")
        return first, last
    left, right = endpoints(expr.left), endpoints(expr.right)
    if left != right:
        raise ChainMismatch(f"parallel branches {pretty(expr.left)} and {pretty(expr.right)} "
                            f"have different endpoints {left} and {right}")
    return left


def evaluate(expr: SeqExpr, env: AmplitudeEnv) -> Amplitude:
    """Amplitude of ``expr``: links multiply along atoms and series, branches add."""
    endpoints(expr)
    return _eval(expr, env)


def _eval(expr: SeqExpr, env: AmplitudeEnv) -> Amplitude:
    if isinstance(expr, Atom):
        amp = ONE
        out = expr.outcomes
        for link in zip(out, out[1:]):
            if link not in env:
                raise MissingLink(*link)
            amp = amp_mul(amp, env[link])
        return amp
    if isinstance(expr, Series):
        return amp_mul(_eval(expr.left, env), _eval(expr.right, env))
    return amp_add(_eval(expr.left, env), _eval(expr.right, env))


def probability(expr: SeqExpr, env: AmplitudeEnv) -> float:
    return born(evaluate(expr, env))


def load_env(doc: Mapping) -> dict[tuple, Amplitude]:
    """Build an environment from ``{"m1,m2": [a1, a2], ...}``."""
    env = {}
    for key, value in doc.items():
        parts = [p.strip() for p in key.split(",")]
        if len(parts) != 2 or not all(parts):
            raise ValueError(f"link keys look like 'm1,m2', got {key!r}")
        if isinstance(value, Mapping):
            amp = Amplitude(float(value["a1"]), float(value.get("a2", 0.0)))
        else:
            a1, a2 = value
            amp = Amplitude(float(a1), float(a2))
        env[tuple(parts)] = amp
    return env
