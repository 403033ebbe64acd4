"""Report directories: a JSON payload, CSV tables and PNG figures."""

from __future__ import annotations

import csv
import json
from collections.abc import Callable, Mapping, Sequence
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STATUS_COLORS = {"verified": "tab:green", "falsified": "tab:red", "inconclusive": "tab:orange"}


class ReportWriter:
    def __init__(self, directory: str | Path):
        self.dir = Path(directory)
        self.dir.mkdir(parents=True, exist_ok=True)
        self.written: list[Path] = []

    def json(self, name: str, payload: object) -> Path:
        path = self.dir / name
        path.write_text(json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n")
        self.written.append(path)
        return path

    def csv(self, name: str, rows: Sequence[Mapping[str, object]]) -> Path:
        path = self.dir / name
        fields: list[str] = []
        for row in rows:
            fields += [k for k in row if k not in fields]
        with path.open("w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=fields)
            writer.writeheader()
            writer.writerows(rows)
        self.written.append(path)
        return path

    def figure(self, name: str, draw: Callable[[plt.Axes], None], size: tuple[float, float] = (7, 4)) -> Path:
        path = self.dir / name
        fig, ax = plt.subplots(figsize=size)
        try:
            draw(ax)
            fig.tight_layout()
            fig.savefig(path, dpi=110)
        finally:
            plt.close(fig)
        self.written.append(path)
        return path


def draw_runtimes(names: Sequence[str], runtimes: Sequence[float], statuses: Sequence[str]) -> Callable:
    def draw(ax: plt.Axes) -> None:
        ys = range(len(names))
        ax.barh(list(ys), list(runtimes), color=[STATUS_COLORS.get(s, "grey") for s in statuses])
        ax.set_yticks(list(ys))
        ax.set_yticklabels(names, fontsize=6)
        ax.invert_yaxis()
        ax.set_xlabel("runtime (s)")
        ax.set_title("check runtimes by status")

    return draw


def draw_hilbert(series: Mapping[str, Sequence[int] | None]) -> Callable:
    def draw(ax: plt.Axes) -> None:
        for label, values in series.items():
            if values is not None:
                ax.plot(range(len(values)), values, marker="o", label=label)
        ax.set_xlabel("degree q")
        ax.set_ylabel("dimension")
        ax.set_title("Hilbert functions")
        ax.legend()

    return draw


def draw_profile(profile: Mapping[str, int], facets: set[str]) -> Callable:
    def draw(ax: plt.Axes) -> None:
        keys = list(profile)
        ax.bar(range(len(keys)), [profile[k] for k in keys],
               color=["tab:blue" if k in facets else "tab:grey" for k in keys])
        ax.set_xticks(range(len(keys)))
        ax.set_xticklabels(keys, rotation=90, fontsize=6)
        ax.axhline(0, color="black", linewidth=0.5)
        ax.set_ylabel("ord")
        ax.set_title("order along each bracket (facets in blue)")

    return draw


def draw_support(matrix: Sequence[Sequence[bool]], labels: Sequence[str]) -> Callable:
    def draw(ax: plt.Axes) -> None:
        ax.imshow([[1 if x else 0 for x in row] for row in matrix], cmap="Greys", vmin=0, vmax=1)
        ax.set_xticks(range(len(labels)))
        ax.set_yticks(range(len(labels)))
        ax.set_xticklabels(labels, rotation=90, fontsize=7)
        ax.set_yticklabels(labels, fontsize=7)
        ax.set_title("nonzero Gram entries")

    return draw


def draw_vectors(vectors: Mapping[str, Sequence[int]]) -> Callable:
    def draw(ax: plt.Axes) -> None:
        width = 0.8 / max(1, len(vectors))
        for k, (label, values) in enumerate(vectors.items()):
            ax.bar([i + k * width for i in range(len(values))], values, width=width, label=label)
        ax.set_xlabel("index")
        ax.set_title("combinatorial vectors")
        ax.legend()

    return draw
