"""Figure builders: one per reproduced panel, plus the FigureSpec plumbing.

Every figure is an SVG whose plotted series live in polylines (pixel
coordinates) inside an axes group carrying the data ranges, so the rendered
values can be read back exactly; heatmap cells carry their winding number as
a data attribute.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

from .errors import EmptyInput
from .io import floats, read_table
from .svg import Axes, Canvas, ticks

W_COLORS = {0: "#5778a4", 1: "#e49444", 2: "#d1615d"}
BOUNDARY_COLOR = "#1d1d1d"
SERIES_COLOR = "#2a6f97"
PREDICTION_COLOR = "#c44536"
FIDELITY_COLOR = "#3a7d44"


@dataclass(frozen=True)
class FigureSpec:
    """One renderable panel: inputs, output path, and axis overrides.

    xlabel/ylabel and yrange override the builder defaults when set; axis
    extents otherwise follow the data.
    """

    figure_id: str
    inputs: dict[str, str]
    output: str
    xlabel: str | None = None
    ylabel: str | None = None
    yrange: tuple[float, float] | None = None

    def validate(self) -> None:
        for path in self.inputs.values():
            if not os.path.isfile(path):
                raise FileNotFoundError(path)


def _lerp_color(a: str, b: str, f: float) -> str:
    f = min(1.0, max(0.0, f))
    av = [int(a[i : i + 2], 16) for i in (1, 3, 5)]
    bv = [int(b[i : i + 2], 16) for i in (1, 3, 5)]
    return "#" + "".join(f"{round(x + f * (y - x)):02x}" for x, y in zip(av, bv))


def _trace_axes(canvas: Canvas, spec: FigureSpec, t, ymax, title) -> Axes:
    ymin = -0.25
    if spec.yrange is not None:
        ymin, ymax = spec.yrange
    ax = Axes(canvas, left=70, top=40, right=620, bottom=420,
              xmin=0.0, xmax=max(t), ymin=ymin, ymax=ymax)
    canvas.open_group("axes", ax.attrs())
    ax.frame(spec.xlabel or "t (1/g0)", spec.ylabel or "phase / pi",
             ticks(0, max(t)), ticks(ymin, ymax), title)
    return ax


def _inset_q_trajectory(canvas: Canvas, ax: Axes, qtraj: dict) -> None:
    re = floats(qtraj, "re_q")
    im = floats(qtraj, "im_q")
    span = max(max(map(abs, re)), max(map(abs, im)), 1e-12) * 1.15
    left = ax.right - 150
    top = ax.top + 12
    inset = Axes(canvas, left=left, top=top, right=left + 138, bottom=top + 138,
                 xmin=-span, xmax=span, ymin=-span, ymax=span)
    canvas.open_group("inset", inset.attrs())
    canvas.rect(inset.left, inset.top, 138, 138, fill="#fafafa", stroke="#999999")
    canvas.line(inset.x(-span), inset.y(0), inset.x(span), inset.y(0),
                stroke="#cccccc", width=0.7)
    canvas.line(inset.x(0), inset.y(-span), inset.x(0), inset.y(span),
                stroke="#cccccc", width=0.7)
    canvas.polyline([inset.pt(x, y) for x, y in zip(re, im)], stroke="#555555",
                    width=1.0, cls="series-qtraj")
    canvas.circle(inset.x(0), inset.y(0), 2.2, fill="#c44536", cls="origin")
    canvas.text(inset.left + 69, inset.bottom + 12, "q(k)", size=10)
    canvas.close_group()


def render_trace(spec: FigureSpec) -> str:
    trace = read_table(spec.inputs["trace"], ("t", "delta_phi", "adiabatic_prediction"))
    qtraj = read_table(spec.inputs["qtraj"], ("k", "re_q", "im_q"))
    t = floats(trace, "t")
    dphi = [v / math.pi for v in floats(trace, "delta_phi")]
    pred = [v / math.pi for v in floats(trace, "adiabatic_prediction")]

    canvas = Canvas()
    ymax = max(1.1, max(dphi) * 1.12, max(pred) * 1.12)
    ax = _trace_axes(canvas, spec, t, ymax, f"{spec.figure_id}: geometric phase accumulation")
    for level in (1.0, 2.0):
        if level < ymax:
            canvas.line(ax.x(0), ax.y(level), ax.x(max(t)), ax.y(level),
                        stroke="#bbbbbb", width=0.7, dash="4 3")
    canvas.polyline([ax.pt(x, y) for x, y in zip(t, pred)], stroke=PREDICTION_COLOR,
                    width=1.2, cls="series-prediction", dash="6 3")
    canvas.polyline([ax.pt(x, y) for x, y in zip(t, dphi)], stroke=SERIES_COLOR,
                    width=1.8, cls="series-delta-phi")
    canvas.close_group()
    _inset_q_trajectory(canvas, ax, qtraj)
    canvas.text(88, 52, "measured", size=11, anchor="start", cls="legend-measured")
    canvas.line(140, 48.5, 160, 48.5, stroke=SERIES_COLOR, width=1.8)
    canvas.text(170, 52, "adiabatic prediction", size=11, anchor="start",
                cls="legend-prediction")
    canvas.line(275, 48.5, 295, 48.5, stroke=PREDICTION_COLOR, width=1.2, dash="6 3")
    return canvas.render()


def render_time_sweep(spec: FigureSpec) -> str:
    table = read_table(spec.inputs["sweep"],
                       ("T", "delta_phi_over_pi", "min_fidelity", "status"))
    rows = [
        (float(T), float(d), float(f))
        for T, d, f, s in zip(table["T"], table["delta_phi_over_pi"],
                              table["min_fidelity"], table["status"])
        if s == "ok"
    ]
    if not rows:
        raise EmptyInput(spec.inputs["sweep"])
    t = [r[0] for r in rows]

    canvas = Canvas()
    ax = Axes(canvas, left=70, top=40, right=620, bottom=420,
              xmin=min(t), xmax=max(t), ymin=0.0, ymax=1.05)
    canvas.open_group("axes", ax.attrs())
    ax.frame(spec.xlabel or "T (1/g0)",
             spec.ylabel or "endpoint phase / pi   and   min fidelity",
             ticks(min(t), max(t)), ticks(0, 1.05),
             f"{spec.figure_id}: adiabaticity versus sweep time")
    canvas.polyline([ax.pt(r[0], r[1]) for r in rows], stroke=SERIES_COLOR,
                    width=1.8, cls="series-delta-phi")
    canvas.polyline([ax.pt(r[0], r[2]) for r in rows], stroke=FIDELITY_COLOR,
                    width=1.5, cls="series-fidelity", dash="5 3")
    for r in rows:
        canvas.circle(ax.x(r[0]), ax.y(r[1]), 3.0, fill=SERIES_COLOR)
    canvas.close_group()
    canvas.text(88, 52, "endpoint phase / pi", size=11, anchor="start")
    canvas.line(200, 48.5, 220, 48.5, stroke=SERIES_COLOR, width=1.8)
    canvas.text(240, 52, "min fidelity", size=11, anchor="start")
    canvas.line(310, 48.5, 330, 48.5, stroke=FIDELITY_COLOR, width=1.5, dash="5 3")
    return canvas.render()


def _heatmap(canvas: Canvas, ax: Axes, xs, ys, color_of, cls="cell"):
    """Uniform-grid cells centered on their sample coordinates."""
    dx = (xs[1] - xs[0]) if len(xs) > 1 else (ax.xmax - ax.xmin)
    dy = (ys[1] - ys[0]) if len(ys) > 1 else (ax.ymax - ax.ymin)
    for i, xv in enumerate(xs):
        for j, yv in enumerate(ys):
            fill, extra = color_of(i, j)
            x0 = ax.x(xv - dx / 2)
            y0 = ax.y(yv + dy / 2)
            w = ax.x(xv + dx / 2) - x0
            h = ax.y(yv - dy / 2) - y0
            canvas.add(
                f'<rect class="{cls}" x="{x0:.2f}" y="{y0:.2f}" '
                f'width="{w:.2f}" height="{h:.2f}" fill="{fill}"{extra}/>'
            )


def render_coupling_plane(spec: FigureSpec) -> str:
    table = read_table(spec.inputs["sweep"], ("w", "v", "delta_phi_over_pi", "status"))
    ws = sorted({float(x) for x in table["w"]})
    vs = sorted({float(x) for x in table["v"]})
    values = {}
    for w, v, d, s in zip(table["w"], table["v"], table["delta_phi_over_pi"],
                          table["status"]):
        values[(float(w), float(v))] = float(d) if s == "ok" else None

    canvas = Canvas()
    pad_x = (ws[1] - ws[0]) / 2 if len(ws) > 1 else 0.5
    pad_y = (vs[1] - vs[0]) / 2 if len(vs) > 1 else 0.5
    ax = Axes(canvas, left=70, top=40, right=560, bottom=420,
              xmin=ws[0] - pad_x, xmax=ws[-1] + pad_x,
              ymin=vs[0] - pad_y, ymax=vs[-1] + pad_y)
    canvas.open_group("axes", ax.attrs())

    def color_of(i, j):
        val = values.get((ws[i], vs[j]))
        if val is None:
            return BOUNDARY_COLOR, ' data-phi="failed"'
        return _lerp_color("#f4f0e8", "#e49444", val), f' data-phi="{val:.4f}"'

    _heatmap(canvas, ax, ws, vs, color_of)
    ax.frame(spec.xlabel or "w (g0)", spec.ylabel or "v (g0)",
             ticks(ws[0], ws[-1]), ticks(vs[0], vs[-1]),
             f"{spec.figure_id}: endpoint phase over the coupling plane")
    for (w, v) in ((1.0, 5.0), (5.0, 1.0)):
        if ws[0] <= w <= ws[-1] and vs[0] <= v <= vs[-1]:
            canvas.star(ax.x(w), ax.y(v), 7.0, fill="#2f9e44")
    canvas.close_group()
    # color key
    for i in range(11):
        canvas.rect(586, 380 - 30 * i, 16, 30, fill=_lerp_color("#f4f0e8", "#e49444", i / 10))
    canvas.text(594, 420, "0", size=10)
    canvas.text(594, 72, "1", size=10)
    canvas.text(594, 46, "phase/pi", size=9)
    return canvas.render()


def render_phase_diagram(spec: FigureSpec) -> str:
    table = read_table(spec.inputs["phase_diagram"],
                       ("v_over_w", "J_over_w", "W_or_boundary"))
    vs = sorted({float(x) for x in table["v_over_w"]})
    Js = sorted({float(x) for x in table["J_over_w"]})
    cells = {}
    for v, J, label in zip(table["v_over_w"], table["J_over_w"],
                           table["W_or_boundary"]):
        cells[(float(v), float(J))] = label

    canvas = Canvas()
    pad_x = (vs[1] - vs[0]) / 2 if len(vs) > 1 else 0.5
    pad_y = (Js[1] - Js[0]) / 2 if len(Js) > 1 else 0.5
    ax = Axes(canvas, left=70, top=40, right=560, bottom=420,
              xmin=vs[0] - pad_x, xmax=vs[-1] + pad_x,
              ymin=Js[0] - pad_y, ymax=Js[-1] + pad_y)
    canvas.open_group("axes", ax.attrs())

    def color_of(i, j):
        label = cells[(vs[i], Js[j])]
        if label == "boundary":
            return BOUNDARY_COLOR, ' data-w="boundary"'
        return W_COLORS[int(label)], f' data-w="{int(label)}"'

    _heatmap(canvas, ax, vs, Js, color_of)
    ax.frame(spec.xlabel or "v / w", spec.ylabel or "J / w",
             ticks(vs[0], vs[-1]), ticks(Js[0], Js[-1]),
             f"{spec.figure_id}: winding-number map")
    for (v, J) in ((0.25, 0.25), (4.0, 1.0), (1.0, 4.0)):
        if vs[0] <= v <= vs[-1] and Js[0] <= J <= Js[-1]:
            canvas.star(ax.x(v), ax.y(J), 7.0, fill="#d62828")
    canvas.close_group()
    for idx, (W, color) in enumerate(sorted(W_COLORS.items())):
        y = 60 + 22 * idx
        canvas.rect(578, y - 10, 14, 14, fill=color)
        canvas.text(598, y + 1, f"W = {W}", size=11, anchor="start")
    return canvas.render()


FIGURES: dict[str, tuple[tuple[str, ...], str]] = {
    # figure id -> (input file names under data/<figure-id>/, builder name)
    "fig3a": (("sweep.csv",), "time_sweep"),
    "fig3b": (("sweep.csv",), "coupling_plane"),
    "fig3c": (("trace.csv", "qtraj.csv"), "trace"),
    "fig3d": (("trace.csv", "qtraj.csv"), "trace"),
    "fig4c": (("phase_diagram.csv",), "phase_diagram"),
    "fig4e": (("trace.csv", "qtraj.csv"), "trace"),
    "fig4f": (("trace.csv", "qtraj.csv"), "trace"),
    "fig4g": (("trace.csv", "qtraj.csv"), "trace"),
}

_BUILDERS = {
    "trace": render_trace,
    "time_sweep": render_time_sweep,
    "coupling_plane": render_coupling_plane,
    "phase_diagram": render_phase_diagram,
}


def spec_for(figure_id: str, data_dir: str, out_dir: str) -> FigureSpec:
    if figure_id not in FIGURES:
        raise KeyError(f"unknown figure {figure_id!r}")
    files, _ = FIGURES[figure_id]
    inputs = {
        os.path.splitext(name)[0]: os.path.join(data_dir, figure_id, name)
        for name in files
    }
    return FigureSpec(
        figure_id=figure_id,
        inputs=inputs,
        output=os.path.join(out_dir, f"{figure_id}.svg"),
    )


def render(spec: FigureSpec) -> str:
    """Validate inputs, build the SVG, write it; returns the output path."""
    spec.validate()
    _, builder = FIGURES[spec.figure_id]
    svg = _BUILDERS[builder](spec)
    os.makedirs(os.path.dirname(spec.output) or ".", exist_ok=True)
    with open(spec.output, "w", newline="\n") as fh:
        fh.write(svg)
    return spec.output
