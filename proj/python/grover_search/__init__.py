"""Grover search ground-truth toolkit: simulation, QASM codec, corpus and
evaluation utilities backed by the C++ core."""

from ._grover import (
    Instance,
    analytic,
    build_prompt,
    compress_qasm,
    emit_qasm,
    evaluate,
    expand_qasm,
    format_answer,
    generate_corpus_file,
    infidelity,
    marked_infidelity,
    optimal_iterations,
    parse_model_answer,
    parse_qasm,
    run_qasm,
    sample,
    search_accuracy,
    simulate,
    top_k_answer,
    uniform_baseline,
)

__all__ = [
    "Instance",
    "analytic",
    "build_prompt",
    "compress_qasm",
    "emit_qasm",
    "evaluate",
    "expand_qasm",
    "format_answer",
    "generate_corpus_file",
    "infidelity",
    "marked_infidelity",
    "optimal_iterations",
    "parse_model_answer",
    "parse_qasm",
    "run_qasm",
    "sample",
    "search_accuracy",
    "simulate",
    "top_k_answer",
    "uniform_baseline",
]
