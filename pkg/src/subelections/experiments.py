"""Similarity matrices, timing sweeps and identical-vote statistics over
pairs of sampled elections."""

from __future__ import annotations

import csv
import math
import os
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Sequence, TextIO

import numpy as np

from .core import Election, most_frequent_vote_count
from .cultures import CultureSpec, format_model, parse_model, sample_votes
from .ilp import build_ilp, write_lp
from .iso import max_common_voter_subelection, max_common_voter_subelection_value

DEFAULT_MODELS = (
    "id",
    "ic",
    "urn(alpha=0.1)",
    "urn(alpha=0.5)",
    "mallows(normphi=1/3)",
    "mallows(normphi=2/3)",
    "1d",
    "walsh",
    "conitzer",
)
TIMING_MODELS = ("ic", "id", "walsh", "conitzer", "mallows(normphi=0.5)", "1d")


def canonical_model(text: str) -> str:
    return format_model(*parse_model(text))


def _stream(seed: int, *keys) -> np.random.Generator:
    words = [seed & 0xFFFFFFFF, seed >> 32 & 0xFFFFFFFF]
    for key in keys:
        words.append(zlib.crc32(key.encode()) if isinstance(key, str) else int(key))
    return np.random.default_rng(np.random.SeedSequence(words))


def sample_model(model: str, m: int, n: int, rng: np.random.Generator) -> Election:
    kind, param = parse_model(model)
    return Election(m, sample_votes(kind, m, n, param, rng))


def sample_pair(model_a: str, model_b: str, m: int, n: int, seed: int, index: int) -> tuple[Election, Election]:
    """The ``index``-th election pair of a cell. Streams depend on the sorted
    model names, so (A, B) and (B, A) draw the same pair."""
    a, b = canonical_model(model_a), canonical_model(model_b)
    lo, hi = sorted((a, b))
    e_lo = sample_model(lo, m, n, _stream(seed, lo, hi, index, 0))
    e_hi = sample_model(hi, m, n, _stream(seed, lo, hi, index, 1))
    return (e_lo, e_hi) if a == lo else (e_hi, e_lo)


@dataclass(frozen=True)
class SimilarityMatrix:
    models: tuple[str, ...]
    m: int
    n: int
    pairs: int
    mean: np.ndarray
    std: np.ndarray

    def cell(self, a: str, b: str) -> tuple[float, float]:
        i, j = self.models.index(canonical_model(a)), self.models.index(canonical_model(b))
        return float(self.mean[i, j]), float(self.std[i, j])


def _cell_task(args) -> list[int]:
    a, b, m, n, pairs, seed, export_dir = args
    values = []
    for p in range(pairs):
        e1, e2 = sample_pair(a, b, m, n, seed, p)
        if export_dir is not None:
            name = f"{_slug(a)}__{_slug(b)}__m{m}_n{n}_{p:04d}.lp"
            with open(os.path.join(export_dir, name), "w", encoding="utf-8", newline="\n") as fh:
                write_lp(build_ilp(e1, e2), fh)
        value = max_common_voter_subelection_value(e1, e2)
        if not 1 <= value <= n:
            raise AssertionError(f"matched voters {value} outside [1, {n}]")
        values.append(value)
    return values


def _slug(model: str) -> str:
    return "".join(ch if ch.isalnum() else "_" for ch in model).strip("_")


def _run_tasks(fn, tasks, jobs: int):
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks))


def run_similarity_matrix(
    models: Sequence[str] = DEFAULT_MODELS,
    m: int = 10,
    n: int = 50,
    pairs: int = 100,
    seed: int = 0,
    solver: str = "poly",
    jobs: int = 1,
    export_dir: str | None = None,
) -> SimilarityMatrix:
    """Mean and population standard deviation of the matched-voter fraction
    for every unordered pair of models.

    ``solver="ilp-export"`` additionally writes each pair's integer program
    to ``export_dir``; the reported values still come from the polynomial
    algorithm.
    """
    if pairs < 1:
        raise ValueError("pairs must be positive")
    if solver not in ("poly", "ilp-export"):
        raise ValueError(f"unknown solver {solver!r}")
    if solver == "ilp-export":
        if export_dir is None:
            raise ValueError("ilp-export needs an export directory")
        os.makedirs(export_dir, exist_ok=True)
    else:
        export_dir = None
    roster = tuple(canonical_model(x) for x in models)
    if len(set(roster)) != len(roster):
        raise ValueError("duplicate model in roster")
    cells = list(combinations_with_replacement(range(len(roster)), 2))
    tasks = [(roster[i], roster[j], m, n, pairs, seed, export_dir) for i, j in cells]
    results = _run_tasks(_cell_task, tasks, jobs)

    k = len(roster)
    mean = np.zeros((k, k))
    std = np.zeros((k, k))
    for (i, j), values in zip(cells, results):
        # integer totals keep e.g. an all-ones cell at exactly 1/n
        mean[i, j] = mean[j, i] = sum(values) / (len(values) * n)
        std[i, j] = std[j, i] = float(np.std(values)) / n
    return SimilarityMatrix(roster, m, n, pairs, mean, std)


def identical_votes_stat(spec: CultureSpec, samples: int) -> tuple[float, float]:
    """Mean and population std of the most frequent vote's share, over
    ``samples`` elections drawn with seeds derived from ``spec.seed``."""
    if samples < 1:
        raise ValueError("samples must be positive")
    shares = []
    for s in range(samples):
        rng = _stream(spec.seed, spec.model, s)
        e = Election(spec.m, sample_votes(spec.kind, spec.m, spec.n, spec.param, rng))
        shares.append(most_frequent_vote_count(e) / spec.n)
    return float(np.mean(shares)), float(np.std(shares))


@dataclass(frozen=True)
class TimingRow:
    model: str
    m: int
    n: int
    pairs: int
    mean_seconds: float


def _timing_task(args) -> TimingRow:
    model, m, n, pairs, seed = args
    total = 0.0
    for p in range(pairs):
        e1, e2 = sample_pair(model, model, m, n, seed, p)
        start = time.perf_counter()
        max_common_voter_subelection(e1, e2)
        total += time.perf_counter() - start
    return TimingRow(model, m, n, pairs, total / pairs)


def run_timing(
    models: Sequence[str] = TIMING_MODELS,
    sizes: Sequence[int] = tuple(range(5, 55, 5)),
    vary: str = "n",
    fixed: int = 10,
    pairs: int = 50,
    seed: int = 0,
    jobs: int = 1,
) -> list[TimingRow]:
    """Mean solve time (witness included, sampling excluded) per model and size.

    ``vary="n"`` sweeps the voter count with ``fixed`` candidates;
    ``vary="m"`` sweeps the candidate count with ``fixed`` voters.
    """
    if vary not in ("n", "m"):
        raise ValueError("vary must be 'n' or 'm'")
    tasks = []
    for model in models:
        model = canonical_model(model)
        for size in sizes:
            m, n = (fixed, size) if vary == "n" else (size, fixed)
            tasks.append((model, m, n, pairs, seed))
    return _run_tasks(_timing_task, tasks, jobs)


CSV_FIELDS = ("model_a", "model_b", "m", "n", "pairs", "mean", "stddev")


def write_matrix_csv(matrix: SimilarityMatrix, sink: TextIO) -> None:
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for i, a in enumerate(matrix.models):
        for j, b in enumerate(matrix.models):
            writer.writerow(
                [a, b, matrix.m, matrix.n, matrix.pairs, f"{matrix.mean[i, j]:.6f}", f"{matrix.std[i, j]:.6f}"]
            )


def write_timing_csv(rows: Sequence[TimingRow], sink: TextIO) -> None:
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(("model", "m", "n", "pairs", "mean_seconds"))
    for r in rows:
        writer.writerow((r.model, r.m, r.n, r.pairs, f"{r.mean_seconds:.6f}"))


def _shade(value: float) -> str:
    # white (0) to dark blue (1)
    t = min(max(value, 0.0), 1.0)
    r = round(255 - t * (255 - 31))
    g = round(255 - t * (255 - 73))
    b = round(255 - t * (255 - 125))
    return f"#{r:02x}{g:02x}{b:02x}"


def render_svg_heatmap(matrix: SimilarityMatrix, sink: TextIO | None = None, cell: int = 56) -> str:
    """Heatmap with the rounded mean percentage large in each cell's top-left
    and the rounded standard deviation small in its bottom-right."""
    k = len(matrix.models)
    margin = 130
    size = margin + k * cell + 10
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}" font-family="sans-serif">',
        f'<title>matched voters, m={matrix.m}, n={matrix.n}, pairs={matrix.pairs}</title>',
    ]
    for i, name in enumerate(matrix.models):
        y = margin + i * cell + cell / 2
        out.append(f'<text x="{margin - 6}" y="{y:.1f}" font-size="11" text-anchor="end" '
                   f'dominant-baseline="middle">{_escape(name)}</text>')
        x = margin + i * cell + cell / 2
        out.append(f'<text x="{x:.1f}" y="{margin - 6}" font-size="11" text-anchor="start" '
                   f'transform="rotate(-60 {x:.1f} {margin - 6})">{_escape(name)}</text>')
    for i in range(k):
        for j in range(k):
            mean, std = matrix.mean[i, j], matrix.std[i, j]
            x, y = margin + j * cell, margin + i * cell
            ink = "#ffffff" if mean > 0.55 else "#000000"
            out.append(f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" '
                       f'fill="{_shade(mean)}" stroke="#808080" stroke-width="0.5"/>')
            out.append(f'<text x="{x + 5}" y="{y + 20}" font-size="17" fill="{ink}">'
                       f'{_round_half_up(100 * mean)}</text>')
            out.append(f'<text x="{x + cell - 5}" y="{y + cell - 6}" font-size="10" '
                       f'text-anchor="end" fill="{ink}">{_round_half_up(100 * std)}</text>')
    out.append("</svg>")
    text = "\n".join(out) + "\n"
    if sink is not None:
        sink.write(text)
    return text


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
