"""`plot <kind> --in <csv> --out <image> [--title ...]` front end."""

from __future__ import annotations

import argparse
import sys

from .render import KINDS, EmptyInput, FigureSpec, SchemaMismatch, render

# accept the capitalized kind names as well as the lowercase ones
_ALIASES = {"Heatmap": "heatmap", "Curve": "curve",
            "Bifurcation": "bifurcation", "OrbitTrace": "orbittrace"}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="plot",
                                 description="render zhangmap CSVs as figures")
    ap.add_argument("kind", choices=tuple(KINDS) + tuple(_ALIASES))
    ap.add_argument("--in", dest="input_csv", required=True)
    ap.add_argument("--out", dest="output_image", required=True)
    ap.add_argument("--title", default="")
    ap.add_argument("--xlabel", default="")
    ap.add_argument("--ylabel", default="")
    return ap


def dispatch(argv: list[str]) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    spec = FigureSpec(kind=_ALIASES.get(args.kind, args.kind),
                      input_csv=args.input_csv,
                      output_image=args.output_image,
                      title=args.title, xlabel=args.xlabel,
                      ylabel=args.ylabel)
    try:
        render(spec)
    except (SchemaMismatch, EmptyInput) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
