"""
eta/theta 表达式 DSL

语法（LL(1)，空白无意义，不允许隐式乘法）：
    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | factor
    factor := atom ['^' ['-'] uint]
    atom   := ident '(' 'q' ['^' uint] ')' | rational | '(' expr ')'
    rational := uint ['/' uint]
    ident  := eta | theta2 | theta3 | theta4 | L

有理数字面量 p/q 是原子，优先于除法。错误携带 UTF-8 字节偏移。
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction

from app.infra.errors import (
    DomainError,
    ExprSyntaxError,
    InvalidMultiplierError,
    TruncationError,
)
from app.infra.qseries import FormalSeries, eisenstein_L, eta, theta
from app.models import FUNCTION_KINDS, ExprAst, NodeKind

logger = logging.getLogger(__name__)

MAX_PAD_ROUNDS = 8

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<number>\d+(?:\.\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^()])"
    r"|(?P<bad>.)"
)


# ============== 词法 ==============

@dataclass(frozen=True)
class Token:
    kind: str  # number | ident | op | end
    text: str
    offset: int  # UTF-8 字节偏移


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    byte_offset = 0
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        chunk = m.group()
        if kind == "bad":
            raise ExprSyntaxError(f"unexpected character {chunk!r}", byte_offset)
        if kind != "ws":
            tokens.append(Token(kind, chunk, byte_offset))
        byte_offset += len(chunk.encode("utf-8"))
    tokens.append(Token("end", "", byte_offset))
    return tokens


# ============== 语法 ==============

class _Parser:
    """递归下降解析器"""

    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, ahead: int = 1) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.current
        self.pos += 1
        return tok

    def at_op(self, *ops: str) -> bool:
        return self.current.kind == "op" and self.current.text in ops

    def expect_op(self, op: str) -> Token:
        if not self.at_op(op):
            raise ExprSyntaxError(f"expected {op!r}, found {self.describe(self.current)}", self.current.offset)
        return self.advance()

    @staticmethod
    def describe(tok: Token) -> str:
        return "end of input" if tok.kind == "end" else repr(tok.text)

    def expect_uint(self, what: str) -> tuple[int, Token]:
        tok = self.current
        if tok.kind != "number":
            raise ExprSyntaxError(f"expected {what}, found {self.describe(tok)}", tok.offset)
        if "." in tok.text:
            raise ExprSyntaxError(f"{what} must be an integer, found {tok.text!r}", tok.offset)
        self.advance()
        return int(tok.text), tok

    # expr := term (('+' | '-') term)*
    def parse_expr(self) -> ExprAst:
        node = self.parse_term()
        while self.at_op("+", "-"):
            kind = NodeKind.ADD if self.advance().text == "+" else NodeKind.SUB
            node = ExprAst.binary(kind, node, self.parse_term())
        return node

    # term := unary (('*' | '/') unary)*
    def parse_term(self) -> ExprAst:
        node = self.parse_unary()
        while self.at_op("*", "/"):
            kind = NodeKind.MUL if self.advance().text == "*" else NodeKind.DIV
            node = ExprAst.binary(kind, node, self.parse_unary())
        return node

    def parse_unary(self) -> ExprAst:
        if self.at_op("-"):
            self.advance()
            return ExprAst.neg(self.parse_unary())
        return self.parse_factor()

    def parse_factor(self) -> ExprAst:
        base = self.parse_atom()
        if not self.at_op("^"):
            return base
        self.advance()
        negative = False
        if self.at_op("-"):
            self.advance()
            negative = True
        tok = self.current
        if tok.kind != "number":
            raise ExprSyntaxError(f"non-integer exponent: found {self.describe(tok)}", tok.offset)
        if "." in tok.text:
            raise ExprSyntaxError("non-integer exponent", tok.offset)
        exponent, _ = self.expect_uint("exponent")
        return ExprAst.power(base, -exponent if negative else exponent)

    def parse_atom(self) -> ExprAst:
        tok = self.current
        if tok.kind == "number":
            num, _ = self.expect_uint("rational literal")
            if self.at_op("/") and self.peek().kind == "number":
                self.advance()
                den, den_tok = self.expect_uint("denominator")
                if den == 0:
                    raise ExprSyntaxError("zero denominator", den_tok.offset)
                return ExprAst.const(Fraction(num, den))
            return ExprAst.const(num)
        if tok.kind == "ident":
            return self.parse_call()
        if self.at_op("("):
            self.advance()
            node = self.parse_expr()
            self.expect_op(")")
            return node
        raise ExprSyntaxError(f"unexpected {self.describe(tok)}", tok.offset)

    def parse_call(self) -> ExprAst:
        name_tok = self.advance()
        kind = FUNCTION_KINDS.get(name_tok.text)
        if kind is None:
            raise ExprSyntaxError(f"unknown function {name_tok.text!r}", name_tok.offset)
        self.expect_op("(")
        arg = self.current
        if arg.kind != "ident" or arg.text != "q":
            raise ExprSyntaxError(f"expected 'q', found {self.describe(arg)}", arg.offset)
        self.advance()
        k = 1
        if self.at_op("^"):
            self.advance()
            k, k_tok = self.expect_uint("multiplier")
            if k < 1:
                raise InvalidMultiplierError(k, k_tok.offset)
        self.expect_op(")")
        return ExprAst.func(kind, k)


def parse(text: str) -> ExprAst:
    """
    解析 DSL 文本

    Raises:
        ExprSyntaxError: 语法错误（含字节偏移）
        InvalidMultiplierError: q^0
    """
    parser = _Parser(text)
    node = parser.parse_expr()
    if parser.current.kind != "end":
        raise ExprSyntaxError(f"unexpected {parser.describe(parser.current)}", parser.current.offset)
    return node


# ============== 打印 ==============

_LEVEL = {
    NodeKind.ADD: 1,
    NodeKind.SUB: 1,
    NodeKind.MUL: 2,
    NodeKind.DIV: 2,
    NodeKind.NEG: 3,
    NodeKind.POW: 4,
}
_SYMBOL = {NodeKind.ADD: "+", NodeKind.SUB: "-", NodeKind.MUL: "*", NodeKind.DIV: "/"}


def _level(node: ExprAst) -> int:
    if node.kind == NodeKind.RATIONAL and node.value is not None and node.value < 0:
        return 3
    return _LEVEL.get(node.kind, 5)


def _wrap(node: ExprAst, min_level: int) -> str:
    text = to_text(node)
    return f"({text})" if _level(node) < min_level else text


def to_text(node: ExprAst) -> str:
    """规范化打印；parse(to_text(parse(t))) == parse(t)"""
    match node.kind:
        case NodeKind.RATIONAL:
            v = node.value
            text = str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
            return f"-{text.lstrip('-')}" if v < 0 else text
        case NodeKind.POW:
            return f"{_wrap(node.args[0], 5)}^{node.exponent}"
        case NodeKind.NEG:
            return f"-{_wrap(node.args[0], 3)}"
        case NodeKind.ADD | NodeKind.SUB | NodeKind.MUL | NodeKind.DIV:
            left, right = node.args
            level = _LEVEL[node.kind]
            left_text = _wrap(left, level)
            right_text = _wrap(right, level + 1)
            # "3 / 4" 会被读成有理数字面量 3/4
            if node.kind == NodeKind.DIV and right_text[0].isdigit():
                right_text = f"({right_text})"
            return f"{left_text} {_SYMBOL[node.kind]} {right_text}"
        case _:
            arg = "q" if node.multiplier == 1 else f"q^{node.multiplier}"
            return f"{node.kind.value}({arg})"


# ============== 求值 ==============

def _evaluate(node: ExprAst, order24: int) -> FormalSeries:
    match node.kind:
        case NodeKind.ETA:
            return eta(node.multiplier, order24)
        case NodeKind.THETA2 | NodeKind.THETA3 | NodeKind.THETA4:
            return theta(int(node.kind.value[-1]), node.multiplier, order24)
        case NodeKind.EISENSTEIN_L:
            return eisenstein_L(-(-order24 // 24) * 24, node.multiplier)
        case NodeKind.RATIONAL:
            return FormalSeries.constant(node.value, order24)
        case NodeKind.MUL:
            return _evaluate(node.args[0], order24) * _evaluate(node.args[1], order24)
        case NodeKind.DIV:
            return _evaluate(node.args[0], order24) / _evaluate(node.args[1], order24)
        case NodeKind.ADD:
            return _evaluate(node.args[0], order24) + _evaluate(node.args[1], order24)
        case NodeKind.SUB:
            return _evaluate(node.args[0], order24) - _evaluate(node.args[1], order24)
        case NodeKind.NEG:
            return -_evaluate(node.args[0], order24)
        case NodeKind.POW:
            return _evaluate(node.args[0], order24) ** node.exponent
    raise DomainError(f"unknown node kind {node.kind}")


def eval_expr(ast: ExprAst, order: int) -> FormalSeries:
    """
    表达式求值为截断到 order（q^{1/24} 单位）的精确级数

    除法 / 负幂会损失精度（倒数精度 = P - 2v），输入按缺口加宽后重算。

    Raises:
        NonInvertibleSeriesError: 分母级数不可逆
        TruncationError: 多轮加宽后仍达不到 order
    """
    if order < 1:
        raise DomainError(f"order must be >= 1, got {order}")
    pad = 0
    for attempt in range(MAX_PAD_ROUNDS):
        result = _evaluate(ast, order + pad)
        if result.order24 >= order:
            return result.truncate(order)
        deficit = order - result.order24
        logger.debug(f"eval_expr attempt {attempt}: reached {result.order24}, widening by {deficit}")
        pad += deficit
    raise TruncationError(f"order overflow: could not reach order {order} after {MAX_PAD_ROUNDS} widenings")


def expand(text: str, order: int) -> FormalSeries:
    """parse + eval_expr"""
    return eval_expr(parse(text), order)
