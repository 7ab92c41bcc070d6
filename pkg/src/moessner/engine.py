"""Nested bounded summations with history-dependent bounds.

A SummationProgram is a chain of levels, outermost first. Level k sums its
index i_k from a lower bound (0 or 1) to a bound expression that may read
the enclosing indices i_1..i_{k-1}; the body is evaluated on the full index
history. Empty sums (bound below the lower bound) are 0 by convention, which
several presets rely on to terminate chains whose bounds go negative.

Three evaluators:
  evaluate          plain value, iterative over an explicit level stack
  evaluate_counting value plus exact addition/leaf tallies
  evaluate_memoized value via dense per-level tables; requires is_markov
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Tuple

from .errors import DomainError, ParameterError, PreconditionError, ValidationError
from .expr import (
    Expr,
    Lit,
    compile_expr,
    eval_expr,
    eval_expr_counted,
    expr_from_dict,
    expr_references,
    expr_to_dict,
    render_expr,
    validate_expr,
)

ALLOWED_PARAM_KEYS = {"x", "n", "a", "d", "k", "f"}


@dataclass(frozen=True)
class LevelSpec:
    lower: int
    bound: Expr

    def __post_init__(self) -> None:
        if self.lower not in (0, 1):
            raise ValidationError(f"level lower bound must be 0 or 1, got {self.lower!r}")


@dataclass(frozen=True)
class EvalReport:
    value: int
    additions: int
    leaves: int


@dataclass(frozen=True)
class SummationProgram:
    depth: int
    levels: Tuple[LevelSpec, ...]
    body: Expr
    params: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "levels", tuple(self.levels))
        if self.depth != len(self.levels):
            raise ValidationError(
                f"depth {self.depth} does not match {len(self.levels)} level specs"
            )


def normalize_params(params: Mapping[str, Any]) -> Dict[str, Any]:
    """Check names and types; returns a plain dict with f as a tuple."""
    out: Dict[str, Any] = {}
    for key, value in params.items():
        if key not in ALLOWED_PARAM_KEYS:
            raise ParameterError(f"unknown parameter {key!r} (allowed: {sorted(ALLOWED_PARAM_KEYS)})")
        if key == "f":
            entries = tuple(value)
            for entry in entries:
                if not isinstance(entry, int) or isinstance(entry, bool) or entry < 0:
                    raise ParameterError(f"table entries must be naturals, got {entry!r}")
            out["f"] = entries
        else:
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise ParameterError(f"parameter {key}={value!r} must be a natural number")
            out[key] = value
    return out


def validate(program: SummationProgram) -> None:
    """Structural and parameter checks; raises ValidationError/ParameterError."""
    referenced: set = set()
    needs_table = False
    for k, spec in enumerate(program.levels, start=1):
        validate_expr(spec.bound, k, role=f"level {k} bound")
        refs = expr_references(spec.bound)
        referenced |= refs["params"]
        needs_table = needs_table or refs["table"]
    validate_expr(program.body, program.depth + 1, role="body")
    refs = expr_references(program.body)
    referenced |= refs["params"]
    needs_table = needs_table or refs["table"]

    params = normalize_params(program.params)
    missing = referenced - set(params)
    if missing:
        raise ParameterError(f"missing parameters: {sorted(missing)}")
    if needs_table and "f" not in params:
        raise ParameterError("program reads the table parameter 'f' but none was given")


def _body_guarded(program: SummationProgram, history: Tuple[int, ...]) -> int:
    value = eval_expr(program.body, program.params, program.depth + 1, history)
    if value < 0:
        raise DomainError(f"body evaluated to {value} at history {history}")
    return value


def evaluate(program: SummationProgram) -> int:
    """The value of the nested sum, depth-first, empty-sum convention."""
    validate(program)
    depth = program.depth
    if depth == 0:
        return _body_guarded(program, ())

    params = program.params
    body = program.body
    body_const = body.value if isinstance(body, Lit) else None
    if body_const is not None and body_const < 0:
        raise DomainError(f"body evaluated to {body_const} at history ()")
    body_fn = None if body_const is not None else compile_expr(body, params, depth + 1)
    # compiled once per call; the closures read idx in place, no tuple copies
    bound_fns = [compile_expr(spec.bound, params, k) for k, spec in enumerate(program.levels, 1)]
    lowers = [spec.lower for spec in program.levels]

    total = 0
    idx: List[int] = []
    hi_stack: List[int] = []
    while True:
        # open levels downward until innermost, or until an empty sum cuts off
        cut = False
        opened = len(idx)
        while opened < depth:
            lo = lowers[opened]
            hi = bound_fns[opened](idx)
            if hi < lo:
                cut = True
                break
            idx.append(lo)
            hi_stack.append(hi)
            opened += 1
        if not cut:
            lo_inner = idx[-1]
            hi_inner = hi_stack[-1]
            if body_const is not None:
                total += (hi_inner - lo_inner + 1) * body_const
            else:
                for i in range(lo_inner, hi_inner + 1):
                    idx[-1] = i
                    value = body_fn(idx)
                    if value < 0:
                        raise DomainError(f"body evaluated to {value} at history {tuple(idx)}")
                    total += value
            idx.pop()
            hi_stack.pop()
        # advance the deepest open level; pop the exhausted ones
        while idx and idx[-1] >= hi_stack[-1]:
            idx.pop()
            hi_stack.pop()
        if not idx:
            return total
        idx[-1] += 1


def evaluate_counting(program: SummationProgram) -> EvalReport:
    """Same traversal as evaluate, with exact operation accounting.

    Each materialized sum of m >= 1 terms costs m - 1 additions (empty sums
    cost nothing); additions inside body evaluations are counted per leaf;
    bound arithmetic is never counted. leaves is the number of body
    evaluations.
    """
    validate(program)
    depth = program.depth
    params = program.params
    if depth == 0:
        value, adds = eval_expr_counted(program.body, params, 1, ())
        if value < 0:
            raise DomainError(f"body evaluated to {value} at history ()")
        return EvalReport(value=value, additions=adds, leaves=1)

    body = program.body
    body_const = body.value if isinstance(body, Lit) else None
    if body_const is not None and body_const < 0:
        raise DomainError(f"body evaluated to {body_const} at history ()")

    bound_fns = [compile_expr(spec.bound, params, k) for k, spec in enumerate(program.levels, 1)]
    lowers = [spec.lower for spec in program.levels]

    total = 0
    additions = 0
    leaves = 0
    idx: List[int] = []
    hi_stack: List[int] = []
    while True:
        cut = False
        opened = len(idx)
        while opened < depth:
            lo = lowers[opened]
            hi = bound_fns[opened](idx)
            if hi < lo:
                cut = True
                break
            additions += hi - lo  # this sum folds hi-lo+1 terms
            idx.append(lo)
            hi_stack.append(hi)
            opened += 1
        if not cut:
            lo_inner = idx[-1]
            hi_inner = hi_stack[-1]
            terms = hi_inner - lo_inner + 1
            if body_const is not None:
                total += terms * body_const
                leaves += terms
            else:
                for i in range(lo_inner, hi_inner + 1):
                    idx[-1] = i
                    value, adds = eval_expr_counted(body, params, depth + 1, tuple(idx))
                    if value < 0:
                        raise DomainError(f"body evaluated to {value} at history {tuple(idx)}")
                    total += value
                    additions += adds
                    leaves += 1
            idx.pop()
            hi_stack.pop()
        while idx and idx[-1] >= hi_stack[-1]:
            idx.pop()
            hi_stack.pop()
        if not idx:
            return EvalReport(value=total, additions=additions, leaves=leaves)
        idx[-1] += 1


def is_markov(program: SummationProgram) -> bool:
    """True iff memoization on (level, previous index) is sound.

    Bounds may read at most the immediately enclosing index (Prev, or the
    equivalent explicit Hist(level-1)), the level number, and parameters.
    The body may read at most the innermost index and parameters. Custom
    nodes are opaque, hence never Markov.
    """
    for k, spec in enumerate(program.levels, start=1):
        refs = expr_references(spec.bound)
        if refs["custom"] or refs["sum_hist"] or refs["prod_hist"]:
            return False
        if refs["hist"] - {k - 1}:
            return False
        if refs["prev"] and k == 1:
            return False
    refs = expr_references(program.body)
    if refs["custom"] or refs["sum_hist"] or refs["prod_hist"]:
        return False
    if refs["hist"] - {program.depth}:
        return False
    if refs["prev"] and program.depth == 0:
        return False
    return True


def evaluate_memoized(program: SummationProgram) -> int:
    """evaluate(program) via dense per-level value tables.

    For a Markov program the sub-sum below level k depends only on i_{k-1},
    and the reachable values of each index form one contiguous range, so
    every distinct sub-sum is computed once from running prefix sums.
    """
    validate(program)
    if not is_markov(program):
        raise PreconditionError(
            "memoized evaluation requires a Markov program "
            "(bounds read at most the previous index; body at most the innermost)"
        )
    depth = program.depth
    params = program.params
    if depth == 0:
        return _body_guarded(program, ())

    def bound_of(level: int, prev: int) -> int:
        # Markov: only the last history slot is ever read
        history = (0,) * (level - 2) + (prev,) if level >= 2 else ()
        return eval_expr(program.levels[level - 1].bound, params, level, history)

    # forward pass: contiguous reachable range per level
    lo1 = program.levels[0].lower
    b1 = bound_of(1, 0)
    if b1 < lo1:
        return 0
    ranges: List[Tuple[int, int]] = [(lo1, b1)]
    for k in range(2, depth + 1):
        plo, phi = ranges[-1]
        lo = program.levels[k - 1].lower
        hi = None
        for v in range(plo, phi + 1):
            b = bound_of(k, v)
            if b >= lo and (hi is None or b > hi):
                hi = b
        if hi is None:
            return 0  # level k is empty under every reachable parent
        ranges.append((lo, hi))

    # backward pass: table of sub-sum values per possible previous index
    lo_d, hi_d = ranges[depth - 1]
    table = []
    for v in range(lo_d, hi_d + 1):
        history = (0,) * (depth - 1) + (v,)
        value = eval_expr(program.body, params, depth + 1, history)
        if value < 0:
            raise DomainError(f"body evaluated to {value} at history {history}")
        table.append(value)
    for k in range(depth, 1, -1):
        lo_k, hi_k = ranges[k - 1]
        prefix = [0]
        acc = 0
        for value in table:
            acc += value
            prefix.append(acc)
        plo, phi = ranges[k - 2]
        table = []
        for v in range(plo, phi + 1):
            b = bound_of(k, v)
            table.append(prefix[b - lo_k + 1] if b >= lo_k else 0)
    return sum(table)


def unfold_display(program: SummationProgram) -> str:
    """Human-readable rendering: one sum(...) per level, then the body."""
    parts = []
    for k, spec in enumerate(program.levels, start=1):
        parts.append(f"sum(i{k}={spec.lower}..{render_expr(spec.bound, k)})")
    parts.append(render_expr(program.body, program.depth + 1))
    return " ".join(parts)


def program_to_dict(program: SummationProgram) -> Dict[str, Any]:
    params: Dict[str, Any] = {}
    for key, value in normalize_params(program.params).items():
        params[key] = list(value) if key == "f" else value
    return {
        "depth": program.depth,
        "levels": [
            {"lower": spec.lower, "bound": expr_to_dict(spec.bound)} for spec in program.levels
        ],
        "body": expr_to_dict(program.body),
        "params": params,
    }


def program_from_dict(data: Mapping[str, Any]) -> SummationProgram:
    try:
        depth = data["depth"]
        levels = tuple(
            LevelSpec(lower=entry["lower"], bound=expr_from_dict(entry["bound"]))
            for entry in data["levels"]
        )
        body = expr_from_dict(data["body"])
        params = normalize_params(data.get("params", {}))
    except KeyError as exc:
        raise ValidationError(f"program dict is missing field {exc}") from None
    program = SummationProgram(depth=depth, levels=levels, body=body, params=params)
    validate(program)
    return program


def program_to_json(program: SummationProgram) -> str:
    return json.dumps(program_to_dict(program), sort_keys=True)


def program_from_json(text: str) -> SummationProgram:
    return program_from_dict(json.loads(text))
