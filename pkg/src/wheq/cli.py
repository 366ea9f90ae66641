"""Command-line interface: enhance, benchmark, curve.

benchmark distorts each corpus image itself at the graded contrast levels
and scores every method on the image's quantized V plane, so runs are
self-contained (no reference dataset needed). All outputs are deterministic
for fixed inputs and flags; the time_ms CSV column is the only field that
varies between runs.
"""

from __future__ import annotations

import argparse
import re
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .baselines import LEVEL_NAMES, DistortionLevel, clahe_lite, contrast_distort, global_he
from .eme import EmeParams, compute_eme
from .errors import WheqError
from .image_core import LEVELS, load_image, quantize_channel, rgb_to_hsv, save_image
from .pipeline import EnhanceConfig, GammaGrid, enhance_image, enhance_plane
from .threshold import EntropyParams
from .tonemap import curve_to_csv

IMAGE_SUFFIXES = (".png", ".ppm", ".pgm")

METHOD_NAMES = ("original", "he", "clahe", "proposed")

CSV_HEADER = "image,level,method,eme,gamma,threshold,time_ms"


@dataclass(frozen=True)
class BenchmarkRow:
    image: str
    level: str
    method: str
    eme: float
    gamma: float | None
    threshold: int | None
    time_ms: float

    def to_csv(self) -> str:
        gamma = "" if self.gamma is None else f"{self.gamma:g}"
        threshold = "" if self.threshold is None else str(self.threshold)
        return (f"{self.image},{self.level},{self.method},"
                f"{self.eme:.12g},{gamma},{threshold},{self.time_ms:.3f}")


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, WheqError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--gamma-grid", default=None, metavar="G1,G2,...",
                        help="comma-separated gamma candidates in (0,1], default 0.1..1.0")
    shared.add_argument("--block-size", default="8x8", metavar="WxH",
                        help="EME block size (default 8x8)")
    shared.add_argument("--alpha", type=float, default=1e-6,
                        help="entropy score division guard (default 1e-6)")
    shared.add_argument("--beta", type=float, default=1.0,
                        help="entropy score log guard, >= 1 (default 1)")
    shared.add_argument("--min-segment-mass", type=float, default=0.01,
                        help="minimum pixel fraction per histogram segment (default 0.01)")
    shared.add_argument("--channels", choices=("v", "sv"), default="sv",
                        help="enhance value only, or saturation and value (default sv)")
    shared.add_argument("--upper-map", choices=("printed", "symmetric"), default="printed",
                        help="upper tone-map offset form (default printed)")

    parser = argparse.ArgumentParser(
        prog="wheq",
        description="Weighted histogram equalization with entropy-scored "
                    "thresholding and contrast-optimized gamma selection.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_enh = sub.add_parser("enhance", parents=[shared],
                           help="enhance one image and write the result")
    p_enh.add_argument("input", help="input image (PNG, PPM, or PGM)")
    p_enh.add_argument("-o", "--output", required=True, help="output image path")
    p_enh.set_defaults(func=cmd_enhance)

    p_bench = sub.add_parser("benchmark", parents=[shared],
                             help="distort a corpus, run all methods, write a CSV")
    p_bench.add_argument("corpus", help="directory of input images")
    p_bench.add_argument("-o", "--output", required=True, help="output CSV path")
    p_bench.add_argument("--tiles", default="8x8", metavar="TXxTY",
                         help="CLAHE tile grid (default 8x8)")
    p_bench.add_argument("--clip", type=float, default=0.01,
                         help="CLAHE clip fraction of tile pixels (default 0.01)")
    p_bench.add_argument("--levels", choices=LEVEL_NAMES + ("all",), default="all",
                         help="distortion level(s) to run (default all)")
    p_bench.set_defaults(func=cmd_benchmark)

    p_curve = sub.add_parser("curve", parents=[shared],
                             help="write the optimal V-channel tone curve as CSV")
    p_curve.add_argument("input", help="input image (PNG, PPM, or PGM)")
    p_curve.add_argument("-o", "--output", required=True, help="output CSV path")
    p_curve.set_defaults(func=cmd_curve)
    return parser


def _config_from_args(args) -> EnhanceConfig:
    block_w, block_h = _parse_pair(args.block_size, "--block-size")
    if args.gamma_grid is None:
        grid = GammaGrid(tuple(i / 10 for i in range(1, 11)))
    else:
        grid = GammaGrid(tuple(float(tok) for tok in args.gamma_grid.split(",") if tok))
    return EnhanceConfig(
        gamma_grid=grid,
        entropy=EntropyParams(alpha=args.alpha, beta=args.beta,
                              min_segment_mass=args.min_segment_mass),
        eme=EmeParams(block_w=block_w, block_h=block_h),
        channels=args.channels,
        upper_map_form=args.upper_map,
    )


def _parse_pair(text: str, flag: str) -> tuple[int, int]:
    match = re.fullmatch(r"(\d+)x(\d+)", text.strip().lower())
    if not match:
        raise ValueError(f"{flag} expects WxH, got {text!r}")
    return int(match.group(1)), int(match.group(2))


def cmd_enhance(args) -> int:
    cfg = _config_from_args(args)
    img = load_image(args.input)
    out, report = enhance_image(img, cfg)
    save_image(args.output, out)
    for name, rep in report.channels.items():
        if rep.fallback:
            print(f"{name}: fallback (degenerate plane), eme={rep.eme_before:.6g}")
        else:
            print(f"{name}: t={rep.threshold} x0={rep.x0} "
                  f"omega_l={rep.omega_l:.4f} omega_u={rep.omega_u:.4f} "
                  f"gamma={rep.gamma:g} eme {rep.eme_before:.6g} -> {rep.eme_after:.6g}")
    print(f"wrote {args.output} ({report.wall_time_ms:.1f} ms)")
    return 0


def cmd_curve(args) -> int:
    cfg = _config_from_args(args)
    img = load_image(args.input)
    v_plane = quantize_channel(rgb_to_hsv(img)[..., 2], LEVELS)
    _, report = enhance_plane(v_plane, cfg, channel="v")
    Path(args.output).write_text(curve_to_csv(report.curve), encoding="ascii")
    if report.fallback:
        print(f"wrote identity curve (fallback) to {args.output}")
    else:
        print(f"wrote curve (t={report.threshold}, gamma={report.gamma:g}) to {args.output}")
    return 0


def cmd_benchmark(args) -> int:
    cfg = _config_from_args(args)
    tiles = _parse_pair(args.tiles, "--tiles")
    levels = LEVEL_NAMES if args.levels == "all" else (args.levels,)
    paths = sorted(p for p in Path(args.corpus).iterdir()
                   if p.suffix.lower() in IMAGE_SUFFIXES)
    if not paths:
        print(f"error: no images found in {args.corpus}", file=sys.stderr)
        return 1

    rows: list[BenchmarkRow] = []
    decoded = 0
    for path in paths:
        try:
            img = load_image(path)
        except (OSError, WheqError) as exc:
            print(f"warning: skipping {path.name}: {exc}", file=sys.stderr)
            continue
        decoded += 1
        rows.extend(benchmark_image(_sanitize_name(path.stem), img, levels,
                                    cfg, tiles, args.clip))
    if decoded == 0:
        print("error: no decodable images in corpus", file=sys.stderr)
        return 1

    rows.sort(key=_row_order)
    text = "\n".join([CSV_HEADER] + [row.to_csv() for row in rows]) + "\n"
    Path(args.output).write_text(text, encoding="ascii")
    print(f"wrote {len(rows)} rows for {decoded} image(s) to {args.output}")
    return 0


def benchmark_image(name: str, img: np.ndarray, level_names, cfg: EnhanceConfig,
                    tiles: tuple[int, int], clip: float) -> list[BenchmarkRow]:
    """All (level, method) rows for one image, scored on its V plane."""
    v_plane = quantize_channel(rgb_to_hsv(img)[..., 2], LEVELS)
    rows = []
    for level_name in level_names:
        level = DistortionLevel.from_name(level_name)
        distorted = contrast_distort(v_plane, level, levels=LEVELS)
        rows.append(_row(name, level_name, "original", distorted, 0.0, cfg.eme))

        start = time.perf_counter()
        he_out = global_he(distorted, levels=LEVELS)
        rows.append(_row(name, level_name, "he", he_out,
                         (time.perf_counter() - start) * 1000.0, cfg.eme))

        start = time.perf_counter()
        clahe_out = clahe_lite(distorted, tiles=tiles, clip=clip, levels=LEVELS)
        rows.append(_row(name, level_name, "clahe", clahe_out,
                         (time.perf_counter() - start) * 1000.0, cfg.eme))

        start = time.perf_counter()
        proposed_out, report = enhance_plane(distorted, cfg, channel="v")
        elapsed = (time.perf_counter() - start) * 1000.0
        rows.append(BenchmarkRow(
            image=name, level=level_name, method="proposed",
            eme=compute_eme(proposed_out, cfg.eme).value,
            gamma=report.gamma, threshold=report.threshold, time_ms=elapsed,
        ))
    return rows


def _row(name, level_name, method, plane, elapsed_ms, eme_params) -> BenchmarkRow:
    return BenchmarkRow(
        image=name, level=level_name, method=method,
        eme=compute_eme(plane, eme_params).value,
        gamma=None, threshold=None, time_ms=elapsed_ms,
    )


def _row_order(row: BenchmarkRow):
    return (row.image, LEVEL_NAMES.index(row.level), METHOD_NAMES.index(row.method))


def _sanitize_name(stem: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]", "_", stem)


if __name__ == "__main__":
    sys.exit(main())
