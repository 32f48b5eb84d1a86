"""SVG renderings of the regenerated figure data; byte-stable across runs"""
import logging
import os
from typing import Dict, Sequence

import matplotlib

matplotlib.use('Agg')

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

logger = logging.getLogger(__name__)

SVG_RC = {
    'svg.hashsalt': 'sq-toolkit',
    'svg.fonttype': 'none',
    'path.simplify': False,
}


def _save(fig, path: str) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    fig.savefig(path, format='svg', metadata={'Date': None})
    plt.close(fig)
    logger.debug(f"Wrote SVG {path}")
    return path


def line_plot(path: str, x: np.ndarray, series: Dict[str, np.ndarray], title: str,
              xlabel: str, ylabel: str) -> str:
    with plt.rc_context(SVG_RC):
        fig, ax = plt.subplots(figsize=(6.4, 4.0))
        for name, values in series.items():
            ax.plot(x, values, label=name, linewidth=1.0)
        ax.set_title(title)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        if len(series) > 1:
            ax.legend()
        fig.tight_layout()
        return _save(fig, path)


def bar_plot(path: str, categories: Sequence[str], values: Sequence[float], title: str, ylabel: str) -> str:
    with plt.rc_context(SVG_RC):
        fig, ax = plt.subplots(figsize=(6.4, 4.0))
        ax.bar(np.arange(len(values)), values, tick_label=list(categories))
        ax.set_title(title)
        ax.set_ylabel(ylabel)
        fig.tight_layout()
        return _save(fig, path)


def scatter_plot(path: str, points: np.ndarray, labels: Sequence[str], title: str,
                 xlabel: str, ylabel: str) -> str:
    labels = np.asarray(labels)
    with plt.rc_context(SVG_RC):
        fig, ax = plt.subplots(figsize=(5.0, 5.0))
        for label in sorted(set(labels.tolist())):
            mask = labels == label
            ax.scatter(points[mask, 0], points[mask, 1], s=12, label=label)
        ax.set_title(title)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        ax.legend()
        fig.tight_layout()
        return _save(fig, path)


def confusion_plot(path: str, confusion: np.ndarray, classes: Sequence[str], title: str) -> str:
    with plt.rc_context(SVG_RC):
        fig, ax = plt.subplots(figsize=(5.0, 4.5))
        ax.imshow(confusion, cmap='Blues')
        ax.set_xticks(np.arange(len(classes)), labels=list(classes))
        ax.set_yticks(np.arange(len(classes)), labels=list(classes))
        ax.set_xlabel('predicted')
        ax.set_ylabel('true')
        for (i, j), count in np.ndenumerate(confusion):
            ax.text(j, i, str(int(count)), ha='center', va='center')
        ax.set_title(title)
        fig.tight_layout()
        return _save(fig, path)
