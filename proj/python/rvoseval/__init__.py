"""Evaluation toolkit for long-term referring video object segmentation."""

from ._core import (
    EmptyVideo,
    Error,
    InvalidArgument,
    MalformedRle,
    MissingBoxes,
    MissingPrediction,
    ParseError,
    SchemaViolation,
    SequenceMismatch,
    ShapeMismatch,
    dataset_stats,
    decompose,
    estimate_motion,
    evaluate_expression,
    evaluate_run,
    rle_decode,
    rle_encode,
    validate_manifest,
)

__all__ = [
    "EmptyVideo",
    "Error",
    "InvalidArgument",
    "MalformedRle",
    "MissingBoxes",
    "MissingPrediction",
    "ParseError",
    "SchemaViolation",
    "SequenceMismatch",
    "ShapeMismatch",
    "dataset_stats",
    "decompose",
    "estimate_motion",
    "evaluate_expression",
    "evaluate_run",
    "rle_decode",
    "rle_encode",
    "validate_manifest",
]
