#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Plots.py

Optional PNG charts of dataset histograms. matplotlib is imported on first use only.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

import logging

import numpy as np

logger = logging.getLogger(__name__)


def plot_histograms(histograms: dict, path: str, title: str = None):
    """
    Draw one bar chart per named Histogram into a single PNG.

    Args:
        histograms (dict): name -> objectives.metrics.Histogram.
        path (str): Output PNG path.
        title (str): Figure title.
    """
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    count = max(len(histograms), 1)
    figure, axes = plt.subplots(count, 1, figsize=(6, 2.5 * count), squeeze=False)
    for axis, (name, hist) in zip(axes[:, 0], histograms.items()):
        widths = np.diff(hist.edges)
        axis.bar(hist.edges[:-1], hist.counts, width=widths, align="edge", edgecolor="black")
        axis.set_title(name)
        axis.set_ylabel("count")
    if title:
        figure.suptitle(title)
    figure.tight_layout()
    figure.savefig(path)
    plt.close(figure)
    logger.debug("Saved %d histograms to %s", len(histograms), path)
