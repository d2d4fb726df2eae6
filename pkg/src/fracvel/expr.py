"""Function expressions: a small LL(1) language and its printer.

Grammar::

    expr    := powser | builtin
    powser  := "powser" ["-"] ":" number (";" number "," number "," number)*
    builtin := name "(" [number ("," number)*] ")"

A ``powser`` literal lists ``c0`` and then ``c,b,alpha`` triples for
``c0 + sum c (x + b)**alpha``; the optional ``-`` selects the reflected
series in ``-x + b``. Builtins are ``derham(a)``, ``derham_reparam(a,n)``,
``neidinger(a,n)``, ``counterexample_h(alpha)``, ``power(alpha)``
(optionally ``power(alpha,coef,center)``) and ``const(c)``.

Printing uses ``repr`` for floats, so ``parse(print(parse(s)))`` equals
``parse(s)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

from .errors import FracvelError, ParseError
from .fanalytic import FractionalPowerSeries
from .functions import Constant, CounterexampleH, Power
from .ifs import DeRham, IFSIterate, IFSSpec

_NUMBER = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_INT = re.compile(r"\d+")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

# builtin name -> argument roles ("number" or "integer"), optional tail
_BUILTINS: dict[str, tuple[tuple[str, ...], tuple[str, ...]]] = {
    "derham": (("number",), ()),
    "derham_reparam": (("number", "integer"), ()),
    "neidinger": (("number", "integer"), ()),
    "counterexample_h": (("number",), ()),
    "power": (("number",), ("number", "number")),
    "const": (("number",), ()),
}


@dataclass(frozen=True)
class FunctionExpr:
    source: str
    fn: Callable

    def __str__(self) -> str:
        return print_function(self)


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.pos = 0

    def fail(self, message: str, *expected: str):
        raise ParseError(message, self.pos, frozenset(expected))

    def expect(self, lit: str, role: str | None = None) -> None:
        if self.src.startswith(lit, self.pos):
            self.pos += len(lit)
        else:
            self.fail(f"expected {lit!r}", role or repr(lit))

    def at(self, lit: str) -> bool:
        return self.src.startswith(lit, self.pos)

    def number(self, role: str) -> float:
        m = _NUMBER.match(self.src, self.pos)
        if not m:
            self.fail(f"expected {role}", role)
        self.pos = m.end()
        return float(m.group())

    def integer(self, role: str) -> int:
        m = _INT.match(self.src, self.pos)
        if not m:
            self.fail(f"expected {role}", role)
        self.pos = m.end()
        return int(m.group())

    def end(self, *alternatives: str) -> None:
        if self.pos != len(self.src):
            self.fail("unexpected trailing input", "end of input", *alternatives)

    def parse(self) -> Callable:
        m = _NAME.match(self.src, self.pos)
        if not m:
            self.fail("expected a function name", "powser", *sorted(_BUILTINS))
        name = m.group()
        if name == "powser":
            self.pos = m.end()
            return self.powser()
        if name not in _BUILTINS:
            self.fail(f"unknown function {name!r}", "powser", *sorted(_BUILTINS))
        self.pos = m.end()
        return self.builtin(name)

    def powser(self) -> FractionalPowerSeries:
        sign = "plus"
        if self.at("-"):
            self.pos += 1
            sign = "minus"
        self.expect(":", "':'")
        c0 = self.number("constant")
        terms = []
        while self.at(";"):
            self.pos += 1
            c = self.number("coefficient")
            self.expect(",", "','")
            b = self.number("center")
            self.expect(",", "','")
            start = self.pos
            alpha = self.number("exponent")
            if not alpha > 0:
                self.pos = start
                self.fail("exponent must be positive", "exponent")
            terms.append((c, b, alpha))
        self.end("';'")
        return FractionalPowerSeries(c0, tuple(terms), sign)

    def builtin(self, name: str) -> Callable:
        required, optional = _BUILTINS[name]
        self.expect("(", "'('")
        open_pos = self.pos
        args: list = []
        roles = required + optional
        for i, role in enumerate(roles):
            if i >= len(required) and self.at(")"):
                break
            if i:
                self.expect(",", "','")
            args.append(self.integer("integer") if role == "integer" else self.number(role))
        self.expect(")", "')'")
        self.end()
        try:
            return _make_builtin(name, args)
        except FracvelError as exc:
            self.pos = open_pos
            self.fail(f"invalid arguments for {name}: {exc}")


def _make_builtin(name: str, args: list) -> Callable:
    if name == "derham":
        return DeRham(args[0])
    if name in ("derham_reparam", "neidinger"):
        return IFSIterate(IFSSpec(name, args[0], args[1]))
    if name == "counterexample_h":
        return CounterexampleH(args[0])
    if name == "power":
        return Power(*args)
    return Constant(args[0])


def parse_function(src: str) -> FunctionExpr:
    """Parse an expression; raises :class:`ParseError` with offset and expected tokens."""
    return FunctionExpr(src, _Parser(src).parse())


def print_function(expr: FunctionExpr | Callable) -> str:
    fn = expr.fn if isinstance(expr, FunctionExpr) else expr
    text = getattr(fn, "expr", None)
    if text is None:
        raise ValueError(f"{fn!r} has no textual form")
    return text()
