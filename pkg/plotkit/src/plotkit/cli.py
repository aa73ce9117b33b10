"""`plot <figure> --in DIR --out FILE` command-line interface."""
from __future__ import annotations

import argparse
import sys

from .figures import FIGURES, FigureSpec, PlotkitError, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot", description="Render ctchaos experiment figures from CSV outputs"
    )
    parser.add_argument("figure", choices=FIGURES)
    parser.add_argument("--in", dest="in_path", required=True,
                        help="experiment output directory or CSV file")
    parser.add_argument("--out", dest="out_path", required=True,
                        help="image file to write (.png, .svg, .pdf)")
    parser.add_argument("--no-guide-lines", action="store_true",
                        help="drop the Poisson / Wigner-Dyson guide lines")
    parser.add_argument("--mean-only", action="store_true",
                        help="hide per-instance OTOC traces")
    parser.add_argument("--dpi", type=int, default=150)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = FigureSpec(
            figure=args.figure,
            in_path=args.in_path,
            out_path=args.out_path,
            guide_lines=not args.no_guide_lines,
            per_instance=not args.mean_only,
            dpi=args.dpi,
        )
        path = render(spec)
    except PlotkitError as error:
        print(f"plot error: {error}", file=sys.stderr)
        return 1
    print(path)
    return 0


def entry() -> None:
    raise SystemExit(main())
