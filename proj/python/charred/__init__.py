"""Characteristic-curve reduction solver for two classes of second-order
nonlinear PDEs: grid solving, blow-up detection, verification, and plotting."""

from ._charred import (
    ExpressionError,
    ProblemError,
    VerifyError,
    classify,
    describe_reduction,
    diff_expr,
    estimate_blowup_time,
    eval_expr,
    list_examples,
    real_root_k,
    render_svg,
    solve,
    verify,
)

__all__ = [
    "ExpressionError",
    "ProblemError",
    "VerifyError",
    "classify",
    "describe_reduction",
    "diff_expr",
    "estimate_blowup_time",
    "eval_expr",
    "list_examples",
    "real_root_k",
    "render_svg",
    "solve",
    "verify",
]
