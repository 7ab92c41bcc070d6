"""Additive generation of integer sequences via nested summations.

The package has two faces: a row process (repeatedly drop every p-th entry,
then take prefix sums) and an equivalent family of nested-summation
programs whose bounds depend on enclosing indices. Presets package the
named sequences; oracles provide independent closed forms and recurrences
to verify them against.
"""

from .counting import (
    CountingNat,
    backward_difference,
    log_add_power_prefix,
    log_add_power_prefix_counted,
    prefix_sum,
    sigma,
    sigma_counted,
    times_halving,
)
from .elision import drop_index, is_dropped, keep_index, splice_index, stair
from .engine import (
    EvalReport,
    LevelSpec,
    SummationProgram,
    evaluate,
    evaluate_counting,
    evaluate_memoized,
    is_markov,
    program_from_dict,
    program_from_json,
    program_to_dict,
    program_to_json,
    unfold_display,
    validate,
)
from .errors import (
    BFileParseError,
    ConsistencyError,
    DomainError,
    FetchError,
    FixtureNotFoundError,
    MoessnerError,
    ParameterError,
    PreconditionError,
    ValidationError,
)
from .expr import (
    Add,
    Custom,
    Expr,
    FloorDiv,
    Hist,
    IfZero,
    Level,
    Lit,
    Mul,
    Param,
    Prev,
    ProdHist,
    Sub,
    SumHist,
    Table,
    eval_expr,
    expr_from_dict,
    expr_to_dict,
    render_expr,
    validate_expr,
)
from .inverse import check_roundtrip, inverse_step, run_inverse, seed
from .oeis import (
    BFileEntry,
    check_preset_prefix,
    fetch,
    load_fixture,
    load_manifest,
    parse_bfile,
    parse_manifest,
    serialize_bfile,
)
from .oracles import (
    binomial,
    catalan,
    catalan_closed,
    catalan_convolved,
    euler_zigzag,
    factorial,
    fibonacci,
    fuss_catalan,
    long2_closed,
    multifactorial,
    multiset,
    polygonal_closed,
    pow_fast,
    product_table,
)
from .polygonal import (
    quotient_sum,
    quotient_sum_shifted,
    verify_block_split,
    verify_double_reindex,
)
from .presets import PresetInfo, PresetInstance, build, catalog, expected, instantiate, preset_names
from .process import (
    ProcessStep,
    ProcessTrace,
    dp_power,
    drop_every,
    forward_intermediate,
    iteration_count,
    naive_power,
    prefix_sums,
    required_length,
    run_process,
)
from .rules import InitRule, fold_bound, keep_bound, parse_fold_rule

__version__ = "0.1.0"

__all__ = [
    "Add",
    "BFileEntry",
    "BFileParseError",
    "ConsistencyError",
    "CountingNat",
    "Custom",
    "DomainError",
    "EvalReport",
    "Expr",
    "FetchError",
    "FixtureNotFoundError",
    "FloorDiv",
    "Hist",
    "IfZero",
    "InitRule",
    "Level",
    "LevelSpec",
    "Lit",
    "MoessnerError",
    "Mul",
    "Param",
    "ParameterError",
    "PreconditionError",
    "PresetInfo",
    "PresetInstance",
    "Prev",
    "ProcessStep",
    "ProcessTrace",
    "ProdHist",
    "Sub",
    "SumHist",
    "SummationProgram",
    "Table",
    "ValidationError",
    "backward_difference",
    "binomial",
    "build",
    "catalan",
    "catalan_closed",
    "catalan_convolved",
    "catalog",
    "check_preset_prefix",
    "check_roundtrip",
    "dp_power",
    "drop_every",
    "drop_index",
    "euler_zigzag",
    "eval_expr",
    "evaluate",
    "evaluate_counting",
    "evaluate_memoized",
    "expected",
    "expr_from_dict",
    "expr_to_dict",
    "factorial",
    "fetch",
    "fibonacci",
    "fold_bound",
    "forward_intermediate",
    "fuss_catalan",
    "instantiate",
    "inverse_step",
    "is_dropped",
    "is_markov",
    "iteration_count",
    "keep_bound",
    "keep_index",
    "load_fixture",
    "load_manifest",
    "log_add_power_prefix",
    "log_add_power_prefix_counted",
    "long2_closed",
    "multifactorial",
    "multiset",
    "naive_power",
    "parse_bfile",
    "parse_fold_rule",
    "parse_manifest",
    "polygonal_closed",
    "pow_fast",
    "prefix_sum",
    "prefix_sums",
    "preset_names",
    "product_table",
    "program_from_dict",
    "program_from_json",
    "program_to_dict",
    "program_to_json",
    "quotient_sum",
    "quotient_sum_shifted",
    "render_expr",
    "required_length",
    "run_inverse",
    "run_process",
    "seed",
    "serialize_bfile",
    "sigma",
    "sigma_counted",
    "splice_index",
    "stair",
    "times_halving",
    "unfold_display",
    "validate",
    "validate_expr",
    "verify_block_split",
    "verify_double_reindex",
]
