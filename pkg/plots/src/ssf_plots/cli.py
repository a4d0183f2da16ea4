"""ssf-plots: offline SVG rendering of ssf-lab artifacts.

Exit codes: 0 success, 2 schema/configuration error.
"""

from __future__ import annotations

import argparse
import sys

from .errors import PlotError
from .render import PlotJob, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ssf-plots",
        description="render ssf-lab output files as deterministic SVG",
    )
    parser.add_argument("--kind", required=True,
                        choices=("xi_curve", "mu_heatmap", "det_trace",
                                 "phase_flow"))
    parser.add_argument("--in", dest="inputs", required=True, nargs="+")
    parser.add_argument("--out", required=True)
    parser.add_argument("--width", type=int, default=720)
    parser.add_argument("--height", type=int, default=440)
    args = parser.parse_args(argv)
    job = PlotJob(kind=args.kind, inputs=args.inputs, output=args.out,
                  width=args.width, height=args.height)
    try:
        render(job)
    except (PlotError, OSError, ValueError) as exc:
        print(f"ssf-plots: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
