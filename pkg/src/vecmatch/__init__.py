"""Template matching via 1-D column-sum projection, with full-search SAD/NCC
baselines, pyramid-accelerated variants, brute-force oracles, and a benchmark
harness."""

from .image import (
    BoundsError,
    ColorImage,
    GrayImage,
    MalformedHeaderError,
    PnmError,
    Rect,
    TruncatedPayloadError,
    UnsupportedFormatError,
    UnsupportedMaxvalError,
    crop,
    decode_pnm,
    encode_pgm,
    encode_ppm,
    to_gray,
)
from .matchers import (
    ALGORITHMS,
    DegenerateTemplateError,
    ImagePyramid,
    MatchResult,
    NoCandidateError,
    PyramidDepthError,
    ScoreMap,
    TemplateSizeError,
    build_pyramid,
    match_full_ncc,
    match_full_sad,
    match_projected,
    match_pyramid,
    run_algorithm,
    score_map_only,
)
from .projection import (
    ColumnSumTable,
    VectorMetric,
    build_column_sum_table,
    project_template,
    vec_distance,
    window_column_sums,
)

__all__ = [
    "ALGORITHMS",
    "BoundsError",
    "ColorImage",
    "ColumnSumTable",
    "DegenerateTemplateError",
    "GrayImage",
    "ImagePyramid",
    "MalformedHeaderError",
    "MatchResult",
    "NoCandidateError",
    "PnmError",
    "PyramidDepthError",
    "Rect",
    "ScoreMap",
    "TemplateSizeError",
    "TruncatedPayloadError",
    "UnsupportedFormatError",
    "UnsupportedMaxvalError",
    "VectorMetric",
    "build_column_sum_table",
    "build_pyramid",
    "crop",
    "decode_pnm",
    "encode_pgm",
    "encode_ppm",
    "match_full_ncc",
    "match_full_sad",
    "match_projected",
    "match_pyramid",
    "project_template",
    "run_algorithm",
    "score_map_only",
    "to_gray",
    "vec_distance",
    "window_column_sums",
]

__version__ = "0.1.0"
