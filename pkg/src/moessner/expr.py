"""Closed expression AST for summation bounds and bodies.

Expressions are evaluated against (params, level, history) where history is
the tuple of enclosing index values (i_1, ..., i_{level-1}). Bounds for level
k see history of length k-1; the body of a depth-d program is evaluated at
level d+1 so Prev means the innermost index.

The AST is closed and serializable (node dicts tagged by constructor name)
so programs can be printed, stored, and handed to the CLI. Custom is the one
escape hatch for arbitrary Python functions and is excluded from
serialization on purpose.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable, Dict, Mapping, Tuple, Union

from .errors import ParameterError, ValidationError

PARAM_NAMES = ("x", "n", "a", "d", "k")

Params = Mapping[str, Any]  # values: int, or tuple of ints under "f"


@dataclass(frozen=True)
class Lit:
    value: int


@dataclass(frozen=True)
class Param:
    name: str

    def __post_init__(self) -> None:
        if self.name not in PARAM_NAMES:
            raise ValidationError(
                f"unknown parameter {self.name!r}; use one of {PARAM_NAMES} or Table for f"
            )


@dataclass(frozen=True)
class Level:
    """The current level number (1 for the outermost sum)."""


@dataclass(frozen=True)
class Prev:
    """The immediately enclosing index i_{level-1}."""


@dataclass(frozen=True)
class Hist:
    """An explicit enclosing index i_j (1-based, j < level)."""

    index: int


@dataclass(frozen=True)
class SumHist:
    """i_1 + ... + i_{level-1}; 0 at level 1."""


@dataclass(frozen=True)
class ProdHist:
    """i_1 * ... * i_{level-1}; 1 at level 1."""


@dataclass(frozen=True)
class Table:
    """Lookup into the table parameter f at a computed index."""

    index: "Expr"


@dataclass(frozen=True)
class Add:
    lhs: "Expr"
    rhs: "Expr"


@dataclass(frozen=True)
class Sub:
    lhs: "Expr"
    rhs: "Expr"


@dataclass(frozen=True)
class Mul:
    lhs: "Expr"
    rhs: "Expr"


@dataclass(frozen=True)
class FloorDiv:
    """Floor division by a strictly positive integer constant."""

    num: "Expr"
    div: int

    def __post_init__(self) -> None:
        if not isinstance(self.div, int) or isinstance(self.div, bool) or self.div <= 0:
            raise ValidationError(f"floor-division divisor must be a positive literal, got {self.div!r}")


@dataclass(frozen=True)
class IfZero:
    """then-branch if cond evaluates to 0, else-branch otherwise."""

    cond: "Expr"
    then: "Expr"
    orelse: "Expr"


@dataclass(frozen=True)
class Custom:
    """Escape hatch: an arbitrary function of (params, level, history).

    Not serializable and not displayable beyond its label.
    """

    fn: Callable[[Params, int, Tuple[int, ...]], int]
    label: str = "custom"


Expr = Union[Lit, Param, Level, Prev, Hist, SumHist, ProdHist, Table, Add, Sub, Mul, FloorDiv, IfZero, Custom]


def eval_expr(expr: Expr, params: Params, level: int, history: Tuple[int, ...]) -> int:
    """Evaluate in signed arithmetic (bounds may go negative)."""
    if isinstance(expr, Lit):
        return expr.value
    if isinstance(expr, Param):
        try:
            return params[expr.name]
        except KeyError:
            raise ParameterError(f"missing parameter {expr.name!r}") from None
    if isinstance(expr, Level):
        return level
    if isinstance(expr, Prev):
        return history[-1]
    if isinstance(expr, Hist):
        return history[expr.index - 1]
    if isinstance(expr, SumHist):
        return sum(history)
    if isinstance(expr, ProdHist):
        acc = 1
        for v in history:
            acc *= v
        return acc
    if isinstance(expr, Table):
        idx = eval_expr(expr.index, params, level, history)
        table = params.get("f")
        if table is None:
            raise ParameterError("missing table parameter 'f'")
        if not 0 <= idx < len(table):
            raise ParameterError(f"table index {idx} outside f of length {len(table)}")
        return table[idx]
    if isinstance(expr, Add):
        return eval_expr(expr.lhs, params, level, history) + eval_expr(expr.rhs, params, level, history)
    if isinstance(expr, Sub):
        return eval_expr(expr.lhs, params, level, history) - eval_expr(expr.rhs, params, level, history)
    if isinstance(expr, Mul):
        return eval_expr(expr.lhs, params, level, history) * eval_expr(expr.rhs, params, level, history)
    if isinstance(expr, FloorDiv):
        num = eval_expr(expr.num, params, level, history)
        return num // expr.div
    if isinstance(expr, IfZero):
        if eval_expr(expr.cond, params, level, history) == 0:
            return eval_expr(expr.then, params, level, history)
        return eval_expr(expr.orelse, params, level, history)
    if isinstance(expr, Custom):
        return expr.fn(params, level, history)
    raise ValidationError(f"not an expression node: {expr!r}")


def compile_expr(expr: Expr, params: Params, level: int) -> Callable[[Any], int]:
    """Build a closure over a history sequence, baking in params and level.

    Behaves exactly like eval_expr(expr, params, level, history) but pays the
    node dispatch once instead of per call. The returned closure accepts any
    sequence of enclosing index values (the evaluators pass a mutable list and
    only rely on its contents at call time). Missing-parameter errors stay
    lazy: they fire when the node is reached, like the interpreter.
    """
    if isinstance(expr, Lit):
        c = expr.value
        return lambda h: c
    if isinstance(expr, Param):
        name = expr.name
        if name in params:
            v = params[name]
            return lambda h: v

        def missing(h: Any) -> int:
            raise ParameterError(f"missing parameter {name!r}")

        return missing
    if isinstance(expr, Level):
        return lambda h: level
    if isinstance(expr, Prev):
        return lambda h: h[-1]
    if isinstance(expr, Hist):
        j = expr.index - 1
        return lambda h: h[j]
    if isinstance(expr, SumHist):
        return lambda h: sum(h)
    if isinstance(expr, ProdHist):
        return lambda h: math.prod(h)
    if isinstance(expr, Table):
        ix_fn = compile_expr(expr.index, params, level)
        table = params.get("f")
        if table is None:

            def no_table(h: Any) -> int:
                raise ParameterError("missing table parameter 'f'")

            return no_table
        tlen = len(table)

        def lookup(h: Any) -> int:
            i = ix_fn(h)
            if not 0 <= i < tlen:
                raise ParameterError(f"table index {i} outside f of length {tlen}")
            return table[i]

        return lookup
    if isinstance(expr, Add):
        lf = compile_expr(expr.lhs, params, level)
        rf = compile_expr(expr.rhs, params, level)
        return lambda h: lf(h) + rf(h)
    if isinstance(expr, Sub):
        lf = compile_expr(expr.lhs, params, level)
        rf = compile_expr(expr.rhs, params, level)
        return lambda h: lf(h) - rf(h)
    if isinstance(expr, Mul):
        lf = compile_expr(expr.lhs, params, level)
        rf = compile_expr(expr.rhs, params, level)
        return lambda h: lf(h) * rf(h)
    if isinstance(expr, FloorDiv):
        nf = compile_expr(expr.num, params, level)
        d = expr.div
        return lambda h: nf(h) // d
    if isinstance(expr, IfZero):
        cf = compile_expr(expr.cond, params, level)
        tf = compile_expr(expr.then, params, level)
        of = compile_expr(expr.orelse, params, level)
        return lambda h: tf(h) if cf(h) == 0 else of(h)
    if isinstance(expr, Custom):
        fn = expr.fn
        # Custom callables were promised a tuple; don't leak the mutable list
        return lambda h: fn(params, level, tuple(h))
    raise ValidationError(f"not an expression node: {expr!r}")


def eval_expr_counted(expr: Expr, params: Params, level: int, history: Tuple[int, ...]) -> Tuple[int, int]:
    """(value, additions performed). Only Add nodes cost; branches not taken cost nothing."""
    if isinstance(expr, Add):
        lv, la = eval_expr_counted(expr.lhs, params, level, history)
        rv, ra = eval_expr_counted(expr.rhs, params, level, history)
        return lv + rv, la + ra + 1
    if isinstance(expr, Sub):
        lv, la = eval_expr_counted(expr.lhs, params, level, history)
        rv, ra = eval_expr_counted(expr.rhs, params, level, history)
        return lv - rv, la + ra
    if isinstance(expr, Mul):
        lv, la = eval_expr_counted(expr.lhs, params, level, history)
        rv, ra = eval_expr_counted(expr.rhs, params, level, history)
        return lv * rv, la + ra
    if isinstance(expr, FloorDiv):
        nv, na = eval_expr_counted(expr.num, params, level, history)
        return nv // expr.div, na
    if isinstance(expr, IfZero):
        cv, ca = eval_expr_counted(expr.cond, params, level, history)
        bv, ba = eval_expr_counted(expr.then if cv == 0 else expr.orelse, params, level, history)
        return bv, ca + ba
    if isinstance(expr, Table):
        # index arithmetic is addressing, not data: not counted
        return eval_expr(expr, params, level, history), 0
    return eval_expr(expr, params, level, history), 0


def validate_expr(expr: Expr, level: int, *, role: str) -> None:
    """Structural checks for an expression used at the given level.

    History references must stay strictly below the level; divisor
    positivity is re-checked in case a node was built by deserialization
    tricks. Raises ValidationError.
    """
    if isinstance(expr, (Lit, Param, Level, SumHist, ProdHist, Custom)):
        if isinstance(expr, Lit) and not isinstance(expr.value, int):
            raise ValidationError(f"literal must be an int, got {expr.value!r}")
        return
    if isinstance(expr, Prev):
        if level < 2:
            raise ValidationError(f"{role}: Prev is undefined at level 1 (no enclosing index)")
        return
    if isinstance(expr, Hist):
        if not 1 <= expr.index <= level - 1:
            raise ValidationError(
                f"{role}: Hist({expr.index}) out of range at level {level} (valid: 1..{level - 1})"
            )
        return
    if isinstance(expr, Table):
        validate_expr(expr.index, level, role=role)
        return
    if isinstance(expr, (Add, Sub, Mul)):
        validate_expr(expr.lhs, level, role=role)
        validate_expr(expr.rhs, level, role=role)
        return
    if isinstance(expr, FloorDiv):
        if expr.div <= 0:
            raise ValidationError(f"{role}: floor-division divisor must be positive")
        validate_expr(expr.num, level, role=role)
        return
    if isinstance(expr, IfZero):
        validate_expr(expr.cond, level, role=role)
        validate_expr(expr.then, level, role=role)
        validate_expr(expr.orelse, level, role=role)
        return
    raise ValidationError(f"{role}: not an expression node: {expr!r}")


def expr_references(expr: Expr) -> Dict[str, Any]:
    """Collect what the expression reads: param names, history usage, table usage.

    Returns {"params": set, "table": bool, "prev": bool, "hist": set of ints,
    "sum_hist": bool, "prod_hist": bool, "level": bool, "custom": bool}.
    """
    out: Dict[str, Any] = {
        "params": set(),
        "table": False,
        "prev": False,
        "hist": set(),
        "sum_hist": False,
        "prod_hist": False,
        "level": False,
        "custom": False,
    }

    def walk(e: Expr) -> None:
        if isinstance(e, Param):
            out["params"].add(e.name)
        elif isinstance(e, Level):
            out["level"] = True
        elif isinstance(e, Prev):
            out["prev"] = True
        elif isinstance(e, Hist):
            out["hist"].add(e.index)
        elif isinstance(e, SumHist):
            out["sum_hist"] = True
        elif isinstance(e, ProdHist):
            out["prod_hist"] = True
        elif isinstance(e, Table):
            out["table"] = True
            walk(e.index)
        elif isinstance(e, (Add, Sub, Mul)):
            walk(e.lhs)
            walk(e.rhs)
        elif isinstance(e, FloorDiv):
            walk(e.num)
        elif isinstance(e, IfZero):
            walk(e.cond)
            walk(e.then)
            walk(e.orelse)
        elif isinstance(e, Custom):
            out["custom"] = True

    walk(expr)
    return out


def expr_to_dict(expr: Expr) -> Dict[str, Any]:
    if isinstance(expr, Lit):
        return {"node": "Lit", "value": expr.value}
    if isinstance(expr, Param):
        return {"node": "Param", "name": expr.name}
    if isinstance(expr, Level):
        return {"node": "Level"}
    if isinstance(expr, Prev):
        return {"node": "Prev"}
    if isinstance(expr, Hist):
        return {"node": "Hist", "index": expr.index}
    if isinstance(expr, SumHist):
        return {"node": "SumHist"}
    if isinstance(expr, ProdHist):
        return {"node": "ProdHist"}
    if isinstance(expr, Table):
        return {"node": "Table", "index": expr_to_dict(expr.index)}
    if isinstance(expr, Add):
        return {"node": "Add", "lhs": expr_to_dict(expr.lhs), "rhs": expr_to_dict(expr.rhs)}
    if isinstance(expr, Sub):
        return {"node": "Sub", "lhs": expr_to_dict(expr.lhs), "rhs": expr_to_dict(expr.rhs)}
    if isinstance(expr, Mul):
        return {"node": "Mul", "lhs": expr_to_dict(expr.lhs), "rhs": expr_to_dict(expr.rhs)}
    if isinstance(expr, FloorDiv):
        return {"node": "FloorDiv", "num": expr_to_dict(expr.num), "div": expr.div}
    if isinstance(expr, IfZero):
        return {
            "node": "IfZero",
            "cond": expr_to_dict(expr.cond),
            "then": expr_to_dict(expr.then),
            "else": expr_to_dict(expr.orelse),
        }
    if isinstance(expr, Custom):
        raise ValidationError("Custom expressions are not serializable")
    raise ValidationError(f"not an expression node: {expr!r}")


def expr_from_dict(data: Dict[str, Any]) -> Expr:
    if not isinstance(data, dict) or "node" not in data:
        raise ValidationError(f"expression dict needs a 'node' tag: {data!r}")
    tag = data["node"]
    try:
        if tag == "Lit":
            return Lit(data["value"])
        if tag == "Param":
            return Param(data["name"])
        if tag == "Level":
            return Level()
        if tag == "Prev":
            return Prev()
        if tag == "Hist":
            return Hist(data["index"])
        if tag == "SumHist":
            return SumHist()
        if tag == "ProdHist":
            return ProdHist()
        if tag == "Table":
            return Table(expr_from_dict(data["index"]))
        if tag == "Add":
            return Add(expr_from_dict(data["lhs"]), expr_from_dict(data["rhs"]))
        if tag == "Sub":
            return Sub(expr_from_dict(data["lhs"]), expr_from_dict(data["rhs"]))
        if tag == "Mul":
            return Mul(expr_from_dict(data["lhs"]), expr_from_dict(data["rhs"]))
        if tag == "FloorDiv":
            return FloorDiv(expr_from_dict(data["num"]), data["div"])
        if tag == "IfZero":
            return IfZero(expr_from_dict(data["cond"]), expr_from_dict(data["then"]), expr_from_dict(data["else"]))
    except KeyError as exc:
        raise ValidationError(f"{tag} node is missing field {exc}") from None
    raise ValidationError(f"unknown expression node tag {tag!r}")


# precedence levels for rendering: 1 add/sub, 2 mul/div, 3 atoms
def render_expr(expr: Expr, level: int) -> str:
    """Deterministic text form with the level's index names (i1, i2, ...)."""

    def hist_names() -> list:
        return [f"i{j}" for j in range(1, level)]

    def go(e: Expr) -> Tuple[str, int]:
        if isinstance(e, Lit):
            return str(e.value), 3
        if isinstance(e, Param):
            return e.name, 3
        if isinstance(e, Level):
            return "level", 3
        if isinstance(e, Prev):
            return f"i{level - 1}", 3
        if isinstance(e, Hist):
            return f"i{e.index}", 3
        if isinstance(e, SumHist):
            names = hist_names()
            return ("+".join(names), 1) if names else ("0", 3)
        if isinstance(e, ProdHist):
            names = hist_names()
            return ("*".join(names), 2) if names else ("1", 3)
        if isinstance(e, Table):
            inner, _ = go(e.index)
            return f"f[{inner}]", 3
        if isinstance(e, Add):
            return binop(e.lhs, "+", e.rhs, 1), 1
        if isinstance(e, Sub):
            return binop(e.lhs, "-", e.rhs, 1), 1
        if isinstance(e, Mul):
            return binop(e.lhs, "*", e.rhs, 2), 2
        if isinstance(e, FloorDiv):
            num, p = go(e.num)
            if p < 2:
                num = f"({num})"
            return f"{num}/{e.div}", 2
        if isinstance(e, IfZero):
            c, _ = go(e.cond)
            t, _ = go(e.then)
            o, _ = go(e.orelse)
            return f"if0({c},{t},{o})", 3
        if isinstance(e, Custom):
            return f"<{e.label}>", 3
        raise ValidationError(f"not an expression node: {e!r}")

    def binop(lhs: Expr, op: str, rhs: Expr, prec: int) -> str:
        ls, lp = go(lhs)
        rs, rp = go(rhs)
        if lp < prec:
            ls = f"({ls})"
        # right operand needs parens at equal precedence too: a-(b+c), a*(b*c) stay explicit
        if rp <= prec and not (op == "+" and rp == 1):
            rs = f"({rs})"
        return f"{ls}{op}{rs}"

    text, _ = go(expr)
    return text
