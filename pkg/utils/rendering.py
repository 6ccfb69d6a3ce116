"""
rendering.py

Pictures and tables of systems of fans: SVG drawings of rank-2 systems (rays plus one
shaded sector per maximal cone) and a textual face-lattice summary for every rank.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
# fixed ids keep the SVG output byte-stable
matplotlib.rcParams["svg.hashsalt"] = "conical-prevariety"
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402
from loguru import logger  # noqa: E402
from matplotlib.collections import PatchCollection  # noqa: E402
from matplotlib.patches import Polygon  # noqa: E402

from constants import SVG_CONE_ALPHA, SVG_FIGURE_SIZE, SVG_RAY_LENGTH  # noqa: E402
from errors import DimensionMismatch  # noqa: E402
from prevariety.cones import Cone, cone_dim, face_lattice  # noqa: E402
from prevariety.fans import SystemOfFans  # noqa: E402


def log_table(table: pd.DataFrame, title: str, level: str = "INFO") -> None:
    if table.empty:
        logger.log(level, f"{title}: (empty)")
        return
    logger.log(level, f"{title}:\n{table.to_string(index=False)}")


def _unit(v) -> tuple[float, float]:
    length = (v[0] ** 2 + v[1] ** 2) ** 0.5
    return (SVG_RAY_LENGTH * v[0] / length, SVG_RAY_LENGTH * v[1] / length)


def _sector(cone: Cone) -> list[tuple[float, float]]:
    """Polygon outline of a 2-dimensional cone cut off at the ray length."""
    a, b = (_unit(g) for g in cone.generators)
    return [(0.0, 0.0), a, (a[0] + b[0], a[1] + b[1]), b]


def render_fan_svg(s: SystemOfFans, path: Path) -> Path:
    if s.ambient_rank != 2:
        raise DimensionMismatch(f"SVG rendering needs ambient rank 2, got {s.ambient_rank}")
    fig, ax = plt.subplots(figsize=SVG_FIGURE_SIZE)
    patches = [Polygon(_sector(c.cone), closed=True) for c in s.maximal_cones if cone_dim(c.cone) == 2]
    ax.add_collection(PatchCollection(patches, alpha=SVG_CONE_ALPHA, edgecolor="none"))

    drawn = set()
    for labelled in s.maximal_cones:
        for g in labelled.cone.generators:
            if g in drawn:
                continue
            drawn.add(g)
            x, y = _unit(g)
            ax.plot([0, x], [0, y], color="black", linewidth=1.5)
            ax.annotate(str(list(g)), (x, y), textcoords="offset points", xytext=(4, 4), fontsize=8)
        if labelled.cone.generators:
            cx = sum(_unit(g)[0] for g in labelled.cone.generators) / 2
            cy = sum(_unit(g)[1] for g in labelled.cone.generators) / 2
            ax.annotate(labelled.label, (cx, cy), ha="center", fontsize=9)

    limit = 1.3 * SVG_RAY_LENGTH
    ax.set_xlim(-limit, limit)
    ax.set_ylim(-limit, limit)
    ax.set_aspect("equal")
    ax.axhline(0, color="grey", linewidth=0.3)
    ax.axvline(0, color="grey", linewidth=0.3)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    logger.info(f"wrote {path}")
    return path


def face_lattice_summary(s: SystemOfFans) -> pd.DataFrame:
    rows = [
        {"cone": labelled.label, "dim": cone_dim(face), "face": str(face)}
        for labelled in s.maximal_cones
        for face in face_lattice(labelled.cone)
    ]
    return pd.DataFrame(rows, columns=["cone", "dim", "face"])
