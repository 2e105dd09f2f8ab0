"""render-figs: turn simulator CSV exports into SVG figure panels.

    render-figs --data DIR --fig {fig3a|fig3b|fig3c|fig3d|fig4c|fig4e|fig4f|fig4g|all} --out DIR

Expects one subdirectory per figure under --data (as written by the shipped
simulator configs).  Exit codes: 0 ok, 1 rendering failure (bad schema or
empty input), 2 usage error or missing input file.
"""

from __future__ import annotations

import argparse
import sys

from .errors import RenderError
from .figures import FIGURES, render, spec_for


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="render-figs", description=__doc__)
    parser.add_argument("--data", required=True, help="directory with per-figure data")
    parser.add_argument("--fig", required=True, choices=sorted(FIGURES) + ["all"])
    parser.add_argument("--out", required=True, help="output directory for SVG files")
    args = parser.parse_args(argv)

    figure_ids = sorted(FIGURES) if args.fig == "all" else [args.fig]
    try:
        for figure_id in figure_ids:
            path = render(spec_for(figure_id, args.data, args.out))
            print(path)
    except FileNotFoundError as exc:
        print(f"error: missing input file: {exc}", file=sys.stderr)
        return 2
    except RenderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
