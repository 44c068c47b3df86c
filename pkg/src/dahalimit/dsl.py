"""Text syntax for operator expressions, scalars and polynomials.

Grammar (whitespace is ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | factor
    factor := atom ('^' '-'? int)?
    atom   := generator | variable | number | 'q' | 't' | '(' expr ')'

Generators are ``T1``, ``T1^-1``, ``X2``, ``Y3``, ``Yt3``, ``s1``, ``pi``,
``pit``, ``rho``, ``eps_k``, ``e2[Delta]`` and ``p3[Delta]``; variables are
``x1, x2, ...``. Scalars use the same arithmetic, so canonical scalar text
such as ``(1 - t)/(1 - q*t)`` is valid wherever a factor is.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .scalars import ONE, QQt

# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Sym:
    name: str  # 'q' or 't'


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class GenRef:
    """A generator: kind in T, X, Y, Yt, s, pi, pit, rho, eps, e, p."""

    kind: str
    index: int | None = None


@dataclass(frozen=True)
class Paren:
    body: object


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: object
    right: object


@dataclass(frozen=True)
class PowNode:
    base: object
    exp: int


DslAst = object  # any of the node classes above


class DslSyntaxError(ValueError):
    def __init__(self, message, src, pos):
        line = src.count("\n", 0, pos) + 1
        col = pos - (src.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.line, self.column = line, col


# ---------------------------------------------------------------------------
# tokenizer

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\[Delta\])|(.))")

_INDEXED = re.compile(r"^(Yt|T|X|Y|s|x|e|p|eps_)(\d+)$")


def _tokenize(src):
    toks = []
    pos = 0
    while src[pos:].strip():
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1):
            toks.append(("num", int(m.group(1)), start))
        elif m.group(2):
            toks.append(("name", m.group(2), start))
        elif m.group(3):
            toks.append(("delta", None, start))
        elif m.group(4):
            ch = m.group(4)
            if ch not in "+-*/^()":
                raise DslSyntaxError(f"unexpected character {ch!r}", src, start)
            toks.append(("op", ch, start))
        pos = m.end()
    toks.append(("end", None, len(src)))
    return toks


class _Parser:
    def __init__(self, src):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise DslSyntaxError(msg, self.src, tok[2])

    def expect_op(self, ch):
        tok = self.take()
        if tok[0] != "op" or tok[1] != ch:
            self.error(f"expected {ch!r}", tok)

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        node = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected trailing input")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            return Neg(self.unary())
        return self.factor()

    def factor(self):
        node = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.take()
                sign = -1
            tok = self.take()
            if tok[0] != "num":
                self.error("expected an integer exponent", tok)
            node = PowNode(node, sign * tok[1])
        return node

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            return Num(val)
        if kind == "op" and val == "(":
            body = self.expr()
            self.expect_op(")")
            return Paren(body)
        if kind == "name":
            return self.name(val, tok)
        if kind == "end":
            self.error("unexpected end of input", tok)
        self.error(f"unexpected {val!r}", tok)

    def name(self, val, tok):
        if val in ("q", "t"):
            return Sym(val)
        if val in ("pi", "pit", "rho"):
            return GenRef(val)
        m = _INDEXED.match(val)
        if not m:
            self.error(f"unknown generator {val!r}", tok)
        head, idx = m.group(1), int(m.group(2))
        if head == "x":
            if idx < 1:
                self.error("variable index must be positive", tok)
            return Var(idx)
        if head == "eps_":
            return GenRef("eps", idx)
        if head in ("e", "p"):
            if self.peek()[0] != "delta":
                self.error(f"{val} must be followed by [Delta]", tok)
            self.take()
            if idx < 1:
                self.error("degree must be positive", tok)
            return GenRef(head, idx)
        if idx < 1:
            self.error(f"generator index must be positive in {val!r}", tok)
        return GenRef(head, idx)


def parse_dsl(src: str) -> DslAst:
    """Parse text into a ``DslAst`` or raise ``DslSyntaxError``."""
    return _Parser(src).parse()


# ---------------------------------------------------------------------------
# printer

_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def _prec(node):
    if isinstance(node, BinOp):
        return _PREC_ADD if node.op in "+-" else _PREC_MUL
    if isinstance(node, Neg):
        return _PREC_NEG
    if isinstance(node, PowNode):
        return _PREC_POW
    return _PREC_ATOM


def _wrap(node, minprec):
    text = print_dsl(node)
    return f"({text})" if _prec(node) < minprec else text


def print_dsl(node) -> str:
    """Canonical text for an AST; parentheses are added only where needed."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Var):
        return f"x{node.index}"
    if isinstance(node, GenRef):
        if node.index is None:
            return node.kind
        if node.kind == "eps":
            return f"eps_{node.index}"
        if node.kind in ("e", "p"):
            return f"{node.kind}{node.index}[Delta]"
        return f"{node.kind}{node.index}"
    if isinstance(node, Paren):
        return f"({print_dsl(node.body)})"
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, _PREC_NEG)
    if isinstance(node, PowNode):
        return f"{_wrap(node.base, _PREC_ATOM)}^{node.exp}"
    if isinstance(node, BinOp):
        if node.op in "+-":
            return f"{_wrap(node.left, _PREC_ADD)} {node.op} {_wrap(node.right, _PREC_MUL)}"
        return f"{_wrap(node.left, _PREC_MUL)}{node.op}{_wrap(node.right, _PREC_NEG)}"
    raise TypeError(f"not a DSL node: {node!r}")


# ---------------------------------------------------------------------------
# lowering


class DslTypeError(ValueError):
    """A well-formed expression used where a different kind is needed."""


def _contains(node, kinds):
    if isinstance(node, kinds):
        return True
    if isinstance(node, (Paren,)):
        return _contains(node.body, kinds)
    if isinstance(node, Neg):
        return _contains(node.operand, kinds)
    if isinstance(node, PowNode):
        return _contains(node.base, kinds)
    if isinstance(node, BinOp):
        return _contains(node.left, kinds) or _contains(node.right, kinds)
    return False


def _scalar(node) -> QQt:
    if isinstance(node, Num):
        return QQt(node.value)
    if isinstance(node, Sym):
        return QQt.monomial(1, 0) if node.name == "q" else QQt.monomial(0, 1)
    if isinstance(node, Paren):
        return _scalar(node.body)
    if isinstance(node, Neg):
        return -_scalar(node.operand)
    if isinstance(node, PowNode):
        base = _scalar(node.base)
        if node.exp < 0:
            if not base:
                raise ZeroDivisionError("zero to a negative power")
            return base.inverse() ** (-node.exp)
        return base ** node.exp
    if isinstance(node, BinOp):
        a, b = _scalar(node.left), _scalar(node.right)
        if node.op == "/":
            if not b:
                raise ZeroDivisionError("division by zero")
            return a / b
        return {"+": a + b, "-": a - b, "*": a * b}[node.op]
    raise DslTypeError(f"{print_dsl(node)!r} is not a scalar")


def parse_scalar(text) -> QQt:
    node = parse_dsl(text)
    if _contains(node, (Var, GenRef)):
        raise DslTypeError(f"{text!r} is not a scalar expression")
    return _scalar(node)


def _poly(node, n):
    from .polyring import Poly

    if not _contains(node, (Var, GenRef)):
        return Poly.one(n).scale(_scalar(node))
    if isinstance(node, Var):
        if node.index > n:
            raise DslTypeError(f"x{node.index} does not exist with {n} variables")
        return Poly.var(node.index, n)
    if isinstance(node, GenRef):
        raise DslTypeError(f"operator {print_dsl(node)!r} inside a polynomial")
    if isinstance(node, Paren):
        return _poly(node.body, n)
    if isinstance(node, Neg):
        return -_poly(node.operand, n)
    if isinstance(node, PowNode):
        if node.exp < 0:
            raise DslTypeError("negative powers of polynomials are not allowed")
        return _poly(node.base, n) ** node.exp
    if node.op == "/":
        if _contains(node.right, (Var, GenRef)):
            raise DslTypeError("can only divide a polynomial by a scalar")
        return _poly(node.left, n).scale(ONE / _scalar(node.right))
    a, b = _poly(node.left, n), _poly(node.right, n)
    return {"+": a + b, "-": a - b, "*": a * b}[node.op]


def parse_poly(text, n):
    """A ``Poly`` in ``n`` variables from text like ``x1^2*x2 + (1 - t)*x3``."""
    node = parse_dsl(text)
    if _contains(node, (GenRef,)):
        raise DslTypeError(f"{text!r} contains operators, not a polynomial")
    return _poly(node, n)


_GEN_NAMES = {"T": "T", "X": "X", "Y": "Y", "Yt": "Ytilde", "s": "S",
              "pi": "Pi", "pit": "PiTilde", "rho": "Rho", "eps": "Eps"}


def lower(node, delta_mode=None):
    """Lower an AST to a ``hecke.OpExpr``.

    ``delta_mode`` decides what ``e_r[Delta]`` and ``p_m[Delta]`` mean:
    ``"psi"`` gives the level operator ``Psi``; ``("restricted", k)`` gives the
    closed-form restriction of ``e_r[Delta]`` to ``x_1...x_k P(k)`` with its
    limit prefactors, and ``("restricted", k, n)`` the same with the exact
    level-``n`` prefactors. Without a mode these generators are rejected.
    """
    from . import hecke as H

    if not _contains(node, (GenRef, Var)):
        return H.Scalar(_scalar(node))
    if isinstance(node, Var):
        raise DslTypeError(f"variable x{node.index} inside an operator expression")
    if isinstance(node, GenRef):
        if node.kind in ("e", "p"):
            return _lower_delta(node, delta_mode)
        return H.Gen(_GEN_NAMES[node.kind], node.index)
    if isinstance(node, Paren):
        return lower(node.body, delta_mode)
    if isinstance(node, Neg):
        return H.Scaled(QQt(-1), lower(node.operand, delta_mode))
    if isinstance(node, PowNode):
        base = lower(node.base, delta_mode)
        if node.exp == -1 and isinstance(base, H.Gen) and base.name == "T":
            return H.Gen("Tinv", base.index)
        if node.exp < 0:
            raise DslTypeError("only T_i may be inverted")
        return H.Pow(base, node.exp)
    left_scalar = not _contains(node.left, (GenRef, Var))
    right_scalar = not _contains(node.right, (GenRef, Var))
    if node.op == "/":
        if not right_scalar:
            raise DslTypeError("can only divide an operator by a scalar")
        return H.Scaled(ONE / _scalar(node.right), lower(node.left, delta_mode))
    if node.op == "*":
        if left_scalar:
            return H.Scaled(_scalar(node.left), lower(node.right, delta_mode))
        if right_scalar:
            return H.Scaled(_scalar(node.right), lower(node.left, delta_mode))
        return H.Prod((lower(node.left, delta_mode), lower(node.right, delta_mode)))
    a, b = lower(node.left, delta_mode), lower(node.right, delta_mode)
    if node.op == "+":
        return H.Sum((a, b))
    return H.Sum((a, H.Scaled(QQt(-1), b)))


def _lower_delta(node, mode):
    from . import hecke as H
    from .symfun import SymSpec

    if mode is None:
        raise DslTypeError(
            f"{print_dsl(node)} needs an explicit mode: --psi or --at-level N --restricted K")
    if mode == "psi":
        return H.Psi(SymSpec(node.kind, (node.index,)))
    kind, k, *level = mode
    if kind != "restricted":
        raise DslTypeError(f"unknown Delta mode {mode!r}")
    if node.kind != "e":
        raise DslTypeError("the closed-form restriction exists for e_r[Delta] only")
    from .delta import finite_scalar, restricted_delta

    formula = restricted_delta(k, node.index)
    if not level:
        return formula.opexpr()
    # exact level-n prefactors, so the result matches Psi on x_1...x_k P(k)
    items = tuple(H.Scaled(finite_scalar(level[0], k, term.s), term.opexpr())
                  for term in formula.terms)
    return items[0] if len(items) == 1 else H.Sum(items)


def parse_opexpr(text, delta_mode=None):
    return lower(parse_dsl(text), delta_mode)


# ---------------------------------------------------------------------------
# OpExpr -> text


def _scalar_ast(c):
    node = parse_dsl(str(c))
    return node if _prec(node) == _PREC_ATOM else Paren(node)


def _prepend_factor(head, node):
    """``head*node`` with a product ``node`` flattened into one left-assoc chain."""
    if isinstance(node, BinOp) and node.op == "*":
        return BinOp("*", _prepend_factor(head, node.left), node.right)
    return BinOp("*", head, node)


def opexpr_ast(e):
    """AST for an ``OpExpr`` (inverse of ``lower`` up to scalar placement)."""
    from . import hecke as H

    if isinstance(e, H.Gen):
        rev = {v: k for k, v in _GEN_NAMES.items()}
        if e.name == "Tinv":
            return PowNode(GenRef("T", e.index), -1)
        return GenRef(rev[e.name], e.index)
    if isinstance(e, H.Scalar):
        return parse_dsl(str(e.value))
    if isinstance(e, H.Scaled):
        inner = opexpr_ast(e.expr)
        if e.coeff == QQt(-1):
            return Neg(inner)
        if e.coeff == ONE:
            return inner
        return _prepend_factor(_scalar_ast(e.coeff), inner)
    if isinstance(e, H.Sum):
        items = [opexpr_ast(x) for x in e.items]
        if not items:
            return Num(0)
        node = items[0]
        for item in items[1:]:
            node = BinOp("+", node, item)
        return node
    if isinstance(e, H.Prod):
        items = [opexpr_ast(x) for x in e.factors]
        node = items[0]
        for item in items[1:]:
            node = BinOp("*", node, item)
        return node
    if isinstance(e, H.Pow):
        return PowNode(opexpr_ast(e.base), e.exp)
    if isinstance(e, H.Psi):
        spec = e.spec
        if len(spec.index) != 1:
            raise ValueError("only single-part Delta specs have a text form")
        return GenRef(spec.basis, spec.index[0])
    raise TypeError(f"not an operator expression: {e!r}")


def print_opexpr(e) -> str:
    return print_dsl(opexpr_ast(e))
