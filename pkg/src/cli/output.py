"""
Deterministic JSON, CSV and SVG writers. Every document starts with the same
header: tool name, version, configuration echo and profile hash.
"""

import csv
import io
import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from src import __version__
from src.cli.models import RunConfig
from src.config.settings import Tolerances

TOOL = "reinhardt-curvature"

plt.rcParams["svg.hashsalt"] = TOOL
plt.rcParams["svg.fonttype"] = "none"


def canonical_json(obj: Any, indent: Optional[int] = 2) -> str:
    """Key-sorted JSON; floats keep their shortest round-trip repr."""
    separators = (",", ": ") if indent else (",", ":")
    return json.dumps(obj, sort_keys=True, indent=indent, separators=separators, ensure_ascii=False)


def header(config: RunConfig, tolerances: Tolerances, profile_hash: Optional[str]) -> Dict[str, Any]:
    return {
        "tool": TOOL,
        "version": __version__,
        "config": config.model_dump(mode="json"),
        "tolerances": tolerances.model_dump(),
        "profile_hash": profile_hash,
    }


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")


def write_json(document: Dict[str, Any], head: Dict[str, Any], out: Optional[Path]) -> None:
    _emit(canonical_json({"header": head, **document}) + "\n", out)


def format_number(value: Any) -> str:
    if isinstance(value, (bool, str)):
        return str(value)
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".17g")


def write_csv(columns: Sequence[str], rows: Sequence[Sequence[Any]], head: Dict[str, Any], out: Optional[Path]) -> None:
    """CSV with the header as '#'-prefixed JSON lines above the column row."""
    buffer = io.StringIO()
    for key in sorted(head):
        buffer.write(f"# {key}: {canonical_json(head[key], indent=None)}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_number(v) for v in row])
    _emit(buffer.getvalue(), out)


def write_svg(draw: Callable[[plt.Figure], None], head: Dict[str, Any], out: Optional[Path]) -> None:
    """
    Render a static 800×600 SVG through the Agg backend.

    The full header goes into the SVG metadata description as canonical JSON.
    The metadata date is dropped and the id salt is fixed, so equal inputs
    give byte-identical files.
    """
    fig = plt.figure(figsize=(8, 6), dpi=100)
    try:
        draw(fig)
        fig.suptitle(f"{TOOL} {head['version']} · {head['config']['command']} · {str(head['profile_hash'])[:12]}", fontsize=9)
        buffer = io.StringIO()
        fig.savefig(
            buffer,
            format="svg",
            metadata={"Date": None, "Description": canonical_json(head, indent=None)},
        )
    finally:
        plt.close(fig)
    _emit(buffer.getvalue(), out)


def scatter_panels(series: List[Dict[str, Any]]) -> Callable[[plt.Figure], None]:
    """
    Draw one scatter or line panel per entry of series.

    Each entry holds x, y, xlabel, ylabel and an optional style ("scatter" or "line").
    """

    def draw(fig: plt.Figure) -> None:
        axes = fig.subplots(1, len(series))
        axes = axes if len(series) > 1 else [axes]
        for ax, s in zip(axes, series):
            if s.get("style", "scatter") == "line":
                for label, y in s["y"].items():
                    ax.plot(s["x"], y, linewidth=1.0, label=label)
                ax.legend(fontsize=7)
            else:
                ax.scatter(s["x"], s["y"], s=6)
            ax.set_xlabel(s["xlabel"])
            ax.set_ylabel(s["ylabel"])
            ax.grid(True, linewidth=0.3)
        fig.tight_layout(rect=(0, 0, 1, 0.95))

    return draw
