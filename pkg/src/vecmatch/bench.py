"""Benchmark harness: crop templates of varying sizes from a reference, run
the matching algorithms, record correctness and median wall time, emit CSV."""

from __future__ import annotations

import csv
import io
import statistics
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .image import ColorImage, GrayImage, Rect, crop, decode_pnm, to_gray
from .matchers import ALGORITHMS, run_algorithm

DEFAULT_SIZES = (25, 50, 100, 150, 200)

CSV_HEADER = (
    "reference_id",
    "algorithm",
    "template_h",
    "template_w",
    "true_row",
    "true_col",
    "found_row",
    "found_col",
    "correct",
    "score",
    "elapsed_ns",
    "repetitions",
)


@dataclass(frozen=True)
class BenchRecord:
    reference_id: str
    algorithm: str
    template_h: int
    template_w: int
    true_row: int
    true_col: int
    found_row: int
    found_col: int
    correct: bool
    score: float
    elapsed_ns: int
    repetitions: int


@dataclass(frozen=True)
class BenchPlan:
    """One benchmark run: which reference, template sizes, positions, algorithms.

    `positions` is "centered", "edge" (crop at the 0,0 corner), or an explicit
    list of (row, col) pairs, one per size.
    """

    reference: str | Path
    sizes: Sequence[int] = DEFAULT_SIZES
    positions: str | Sequence[tuple[int, int]] = "centered"
    algorithms: Sequence[str] = ALGORITHMS
    repetitions: int = 3
    color_mode: str = "luma"
    reference_id: str | None = None
    pyramid_levels: int | None = None
    pyramid_radius: int = 2


def load_reference(plan: BenchPlan) -> GrayImage:
    img = decode_pnm(Path(plan.reference).read_bytes())
    if isinstance(img, ColorImage):
        img = to_gray(img, plan.color_mode)
    return img


def _resolve(plan: BenchPlan, image: GrayImage) -> list[tuple[int, int, int, int]]:
    """Clip sizes to the image and pair each with its crop position."""
    out = []
    sizes = [min(sz, image.height, image.width) for sz in plan.sizes]
    if isinstance(plan.positions, str):
        if plan.positions == "centered":
            pos = [((image.height - sz) // 2, (image.width - sz) // 2) for sz in sizes]
        elif plan.positions == "edge":
            pos = [(0, 0)] * len(sizes)
        else:
            raise ValueError(f"unknown positions value {plan.positions!r}")
    else:
        pos = list(plan.positions)
        if len(pos) != len(sizes):
            raise ValueError(
                f"{len(pos)} positions given for {len(sizes)} template sizes"
            )
    for sz, (r, c) in zip(sizes, pos):
        out.append((sz, sz, r, c))
    return out


def run_plan(plan: BenchPlan) -> list[BenchRecord]:
    """One record per (size x algorithm); timing is the median of repetitions
    of the full match call, preprocessing (tables, pyramids) included."""
    if plan.repetitions < 1:
        raise ValueError("repetitions must be at least 1")
    for name in plan.algorithms:
        if name not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {name!r}; expected one of {ALGORITHMS}")
    image = load_reference(plan)
    ref_id = plan.reference_id or Path(plan.reference).stem
    records = []
    for h, w, top, left in _resolve(plan, image):
        template = crop(image, Rect(top=top, left=left, height=h, width=w))
        for name in plan.algorithms:
            timings = []
            for _ in range(plan.repetitions):
                result = run_algorithm(
                    name, image, template,
                    levels=plan.pyramid_levels, radius=plan.pyramid_radius,
                )
                timings.append(result.elapsed_ns)
            records.append(
                BenchRecord(
                    reference_id=ref_id,
                    algorithm=name,
                    template_h=h,
                    template_w=w,
                    true_row=top,
                    true_col=left,
                    found_row=result.row,
                    found_col=result.col,
                    correct=(result.row, result.col) == (top, left),
                    score=result.score,
                    elapsed_ns=int(statistics.median(timings)),
                    repetitions=plan.repetitions,
                )
            )
    return records


def emit_csv(records: Sequence[BenchRecord]) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow(
            [
                r.reference_id,
                r.algorithm,
                r.template_h,
                r.template_w,
                r.true_row,
                r.true_col,
                r.found_row,
                r.found_col,
                "true" if r.correct else "false",
                repr(float(r.score)) if isinstance(r.score, float) else r.score,
                r.elapsed_ns,
                r.repetitions,
            ]
        )
    return buf.getvalue().encode("utf-8")


def parse_csv(data: bytes) -> list[BenchRecord]:
    """Inverse of emit_csv; round-trips every record field-for-field."""
    rows = list(csv.reader(io.StringIO(data.decode("utf-8"))))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise ValueError("missing or unexpected CSV header")
    out = []
    for row in rows[1:]:
        out.append(
            BenchRecord(
                reference_id=row[0],
                algorithm=row[1],
                template_h=int(row[2]),
                template_w=int(row[3]),
                true_row=int(row[4]),
                true_col=int(row[5]),
                found_row=int(row[6]),
                found_col=int(row[7]),
                correct=row[8] == "true",
                score=float(row[9]) if "." in row[9] or "e" in row[9] else int(row[9]),
                elapsed_ns=int(row[10]),
                repetitions=int(row[11]),
            )
        )
    return out
