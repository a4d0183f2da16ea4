"""The four render kinds.

Step data is drawn with exact horizontal and vertical segments; nothing
is ever interpolated across a jump.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import EmptyInput
from .readers import read_det_trace, read_mu, read_phase_trace, read_records
from .svg import CURVE_COLORS, Canvas, Frame, integer_color

TWO_PI = 2 * math.pi


@dataclass
class PlotJob:
    kind: str
    inputs: list
    output: str
    width: int = 720
    height: int = 440
    style: dict = field(default_factory=dict)


def render(job: PlotJob) -> bytes:
    """Render the job and write the SVG; returns the bytes written."""
    kinds = {
        "xi_curve": render_xi_curve,
        "mu_heatmap": render_mu_heatmap,
        "det_trace": render_det_trace,
        "phase_flow": render_phase_flow,
    }
    if job.kind not in kinds:
        raise ValueError(f"unknown plot kind {job.kind!r}")
    data = kinds[job.kind](job)
    with open(job.output, "wb") as fh:
        fh.write(data)
    return data


def render_xi_curve(job: PlotJob) -> bytes:
    records = read_records(job.inputs[0])
    series = ("xi_det", "xi_mu", "xi_index")
    xs = [r["lambda"] for r in records]
    ys = [v for r in records for k in series
          if (v := r[k]) is not None]
    oracle = [(r["lambda"], r["xi_oracle"]) for r in records
              if r["xi_oracle"] is not None]
    ys += [v for _, v in oracle]
    if not ys:
        raise EmptyInput("records carry no shift-function values")
    pad = 0.05 * (max(ys) - min(ys) or 1.0)
    canvas = Canvas(job.width, job.height)
    frame = Frame(canvas, (min(xs), max(xs)), (min(ys) - pad, max(ys) + pad))
    frame.draw_frame("lambda", "xi")
    for k, name in enumerate(series):
        pts = [(frame.px(r["lambda"]), frame.py(r[name]))
               for r in records if r[name] is not None]
        canvas.polyline(pts, stroke=CURVE_COLORS[k])
        canvas.text(frame.right - 8, frame.top + 14 + 13 * k, name,
                    anchor="end", fill=CURVE_COLORS[k])
    for lam, v in oracle:
        canvas.circle(frame.px(lam), frame.py(v), 2.5, fill="#444444")
    return canvas.to_bytes()


def _step_intervals(row):
    """Constancy intervals (lo, hi, value) of a serialized step function."""
    jumps = sorted((j["theta"], j["m"]) for j in row["jumps"])
    value = row["tail"] + sum(m for _, m in jumps)
    lo = 0.0
    out = []
    for theta, m in jumps:
        out.append((lo, theta, value))
        value -= m
        lo = theta
    out.append((lo, TWO_PI, row["tail"]))
    return out


def render_mu_heatmap(job: PlotJob) -> bytes:
    rows = read_mu(job.inputs)
    lams = [r["lambda"] for r in rows]
    canvas = Canvas(job.width, job.height)
    lo = min(lams)
    hi = max(lams) if len(lams) > 1 else lams[0] + 1.0
    frame = Frame(canvas, (0.0, TWO_PI), (lo, hi))
    band = (frame.bottom - frame.top) / max(len(rows), 1)
    for i, row in enumerate(rows):
        y_top = frame.bottom - (i + 1) * band
        for a, b, v in _step_intervals(row):
            canvas.rect(frame.px(a), y_top, frame.px(b) - frame.px(a), band,
                        integer_color(v))
        for jump in row["jumps"]:
            x = frame.px(jump["theta"])
            canvas.line(x, y_top, x, y_top + band, stroke="#000000", width=0.6)
    frame.draw_frame("theta", "lambda")
    values = {v for r in rows for _, _, v in _step_intervals(r)}
    for k, v in enumerate(sorted(values)):
        x = frame.left + 14 + 52 * k
        canvas.rect(x, frame.top - 16, 12, 10, integer_color(v))
        canvas.text(x + 16, frame.top - 7, str(v), size=10)
    return canvas.to_bytes()


def render_det_trace(job: PlotJob) -> bytes:
    rows = read_det_trace(job.inputs[0])
    pos = [(y, arg) for y, _, _, arg in rows if y > 0]
    boundary = [arg for y, _, _, arg in rows if y == 0.0]
    if not pos:
        raise EmptyInput("trace has no off-axis rows")
    logs = [math.log10(y) for y, _ in pos]
    args = [a for _, a in pos] + boundary
    pad = 0.05 * (max(args) - min(args) or 1.0)
    canvas = Canvas(job.width, job.height)
    frame = Frame(canvas, (min(logs) - 0.5, max(logs)),
                  (min(args) - pad, max(args) + pad))
    frame.draw_frame("log10 y", "arg d")
    canvas.polyline([(frame.px(lg), frame.py(a)) for lg, a in zip(logs, [a for _, a in pos])],
                    stroke=CURVE_COLORS[0])
    if boundary:
        # the boundary value sits at y = 0: mark it at the left edge
        canvas.circle(frame.px(min(logs) - 0.5), frame.py(boundary[-1]), 3.5,
                      fill=CURVE_COLORS[1])
        canvas.text(frame.left + 6, frame.py(boundary[-1]) - 6,
                    f"boundary arg = {boundary[-1]:.6f}", size=10)
    return canvas.to_bytes()


def render_phase_flow(job: PlotJob) -> bytes:
    rows = read_phase_trace(job.inputs)
    canvas = Canvas(job.width, job.height)
    frame = Frame(canvas, (0.0, 1.0), (0.0, TWO_PI))
    frame.draw_frame("t", "eigenphase")
    for t, phases in rows:
        for p in phases:
            canvas.circle(frame.px(t), frame.py(p), 1.6, fill=CURVE_COLORS[0])
    return canvas.to_bytes()
