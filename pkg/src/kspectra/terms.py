"""Terms over a signature, a small parser, and disjunctive systems.

Grammar (whitespace-insensitive)::

    disjunction := equation ("|" equation)*
    equation    := term "=" term
    term        := primary (BINOP primary)*        # left associative
    primary     := NAME | "(" SYMBOL term* ")" | "(" term ")"

``NAME`` is a nullary symbol of the signature or otherwise a variable.
``BINOP`` is the name of a binary symbol, or ``^`` which always means the
symbol named ``meet``.  Prefix form ``(meet x y)`` is what ``format_term``
emits, so ``parse_term(format_term(t)) == t``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Union

INFIX_ALIASES = {"^": "meet"}


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    symbol: str
    args: tuple = ()

    def __str__(self):
        return format_term(self)


Term = Union[Var, App]


class TermSyntaxError(ValueError):
    pass


def variables_of(t):
    out = []

    def walk(u):
        if isinstance(u, Var):
            if u.name not in out:
                out.append(u.name)
        else:
            for a in u.args:
                walk(a)

    walk(t)
    return out


def depth(t):
    if isinstance(t, Var) or not t.args:
        return 0
    return 1 + max(depth(a) for a in t.args)


def format_term(t):
    if isinstance(t, Var):
        return t.name
    if not t.args:
        return t.symbol
    return "(" + " ".join([t.symbol] + [format_term(a) for a in t.args]) + ")"


def format_equation(eq):
    return f"{format_term(eq[0])} = {format_term(eq[1])}"


_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_']*)|(\^)|([()=|,]))")


def _tokenize(text):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise TermSyntaxError(f"unexpected character {text[pos]!r} at offset {pos}")
        out.append(m.group(1) or m.group(2) or m.group(3))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text, signature):
        self.toks = _tokenize(text)
        self.i = 0
        self.arity = dict(signature.symbols)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None:
            raise TermSyntaxError("unexpected end of input")
        if expected is not None and tok != expected:
            raise TermSyntaxError(f"expected {expected!r}, got {tok!r}")
        self.i += 1
        return tok

    def binop(self, tok):
        name = INFIX_ALIASES.get(tok, tok)
        if self.arity.get(name) == 2:
            return name
        return None

    def term(self):
        left = self.primary()
        while self.peek() is not None and self.binop(self.peek()):
            op = self.binop(self.take())
            left = App(op, (left, self.primary()))
        return left

    def primary(self):
        tok = self.take()
        if tok == "(":
            head = self.peek()
            if head in self.arity and (self.arity[head] > 0 or self._closes_after_head()):
                self.take()
                args = []
                while self.peek() != ")":
                    if self.peek() is None:
                        raise TermSyntaxError("unbalanced parentheses")
                    args.append(self.term())
                self.take(")")
                if len(args) != self.arity[head]:
                    raise TermSyntaxError(
                        f"symbol {head!r} has arity {self.arity[head]}, got {len(args)} arguments"
                    )
                return App(head, tuple(args))
            inner = self.term()
            self.take(")")
            return inner
        if tok in "()=|,^":
            raise TermSyntaxError(f"unexpected token {tok!r}")
        if tok in self.arity:
            if self.arity[tok] != 0:
                raise TermSyntaxError(f"symbol {tok!r} of arity {self.arity[tok]} used as a constant")
            return App(tok)
        return Var(tok)

    def _closes_after_head(self):
        return self.i + 1 < len(self.toks) and self.toks[self.i + 1] == ")"

    def done(self):
        if self.peek() is not None:
            raise TermSyntaxError(f"trailing input at token {self.peek()!r}")


def parse_term(text, signature):
    p = _Parser(text, signature)
    t = p.term()
    p.done()
    return t


def _equation(p):
    lhs = p.term()
    p.take("=")
    return (lhs, p.term())


def parse_disjunction(text, signature):
    p = _Parser(text, signature)
    eqs = [_equation(p)]
    while p.peek() == "|":
        p.take()
        eqs.append(_equation(p))
    p.done()
    return tuple(eqs)


def parse_equation(text, signature):
    d = parse_disjunction(text, signature)
    if len(d) != 1:
        raise TermSyntaxError(f"expected a single equation, got {len(d)} disjuncts")
    return d[0]


def parse_equations(text, signature):
    """Comma-or-semicolon separated list of equations; empty text gives ()."""
    parts = [s for s in re.split(r"[;,](?![^()]*\))", text) if s.strip()]
    return tuple(parse_equation(s, signature) for s in parts)


@dataclass(frozen=True)
class DisjunctiveSystem:
    """A conjunction of clauses; each clause is a nonempty disjunction of equations."""

    clauses: tuple = ()

    def __post_init__(self):
        clauses = tuple(tuple(c) for c in self.clauses)
        for c in clauses:
            if not c:
                raise ValueError("disjunctive clause must be nonempty")
        object.__setattr__(self, "clauses", clauses)

    @classmethod
    def of_equations(cls, equations):
        return cls(tuple((eq,) for eq in equations))

    @classmethod
    def parse(cls, texts, signature):
        if isinstance(texts, str):
            texts = [s for s in texts.split(";") if s.strip()]
        return cls(tuple(parse_disjunction(s, signature) for s in texts))

    @property
    def is_equational(self):
        return all(len(c) == 1 for c in self.clauses)

    def equations(self):
        if not self.is_equational:
            raise ValueError("system has proper disjunctions")
        return tuple(c[0] for c in self.clauses)

    def variables(self):
        out = []
        for c in self.clauses:
            for p, q in c:
                for v in variables_of(p) + variables_of(q):
                    if v not in out:
                        out.append(v)
        return out

    def __and__(self, other):
        return DisjunctiveSystem(self.clauses + other.clauses)

    def __str__(self):
        return "; ".join(" | ".join(format_equation(e) for e in c) for c in self.clauses)


def all_terms(signature, variables, max_depth):
    """Every term over ``variables`` of depth at most ``max_depth``, shallow first."""
    levels = [[Var(v) for v in variables] + [App(f) for f, n in signature.symbols if n == 0]]
    seen = list(levels[0])
    for _ in range(max_depth):
        new = []
        for f, n in signature.symbols:
            if n == 0:
                continue
            for args in product(seen, repeat=n):
                if any(a in levels[-1] for a in args):
                    new.append(App(f, tuple(args)))
        levels.append(new)
        seen = seen + new
    return seen
