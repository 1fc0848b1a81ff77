"""Matplotlib renderings of the CSV outputs (Agg backend, files only)."""

from __future__ import annotations

import os
import tempfile

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

FIGURE_FORMATS = ("svg", "png")

# Fixed metadata keeps SVG output byte-for-byte reproducible.
_METADATA = {"svg": {"Date": None}, "png": {"Software": None}}


def save_figure(fig, path, fmt):
    """Write ``fig`` to ``path`` atomically (temp file in the same directory,
    then rename)."""
    if fmt not in FIGURE_FORMATS:
        raise ValueError(f"figure format must be one of {FIGURE_FORMATS}")
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, suffix="." + fmt)
    try:
        with os.fdopen(fd, "wb") as fh:
            fig.savefig(fh, format=fmt, metadata=_METADATA[fmt],
                        bbox_inches="tight")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    finally:
        plt.close(fig)


def _axes(title, xlabel, ylabel):
    plt.rcParams["svg.hashsalt"] = "quadlab"
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.set_title(title)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.grid(True, which="both", alpha=0.3)
    return fig, ax


def rule_figure(rule):
    fig, ax = _axes(f"{rule.family.value}, n = {rule.n}", "node", "weight")
    w = rule.weights
    ax.vlines(rule.nodes, 0, w, lw=0.8)
    ax.plot(rule.nodes, w, "o", ms=3)
    if np.any(w < 0):
        ax.set_yscale("symlog", linthresh=1.0)
    ax.axhline(0, color="k", lw=0.5)
    return fig


def table_figure(table):
    fig, ax = _axes(f"{table.family.value}, n = {table.n}", "k",
                    "|E_n(T_k)|")
    ks = np.array([k for k, _ in table.rows])
    err = np.array([e for _, e in table.rows])
    pos = err > 0
    ax.semilogy(ks[pos], err[pos], "o-", ms=4, label="T_k")
    if table.monomial_rows:
        em = np.array([e for _, e in table.monomial_rows])
        ax.semilogy(ks[em > 0], em[em > 0], "s--", ms=4, label="x^k")
        ax.legend()
    return fig


def convergence_figure(record):
    fig, ax = _axes(f"{record.family.value} on {record.integrand_id}", "n",
                    "|I_n - I|")
    ns, err = record.ns, record.errors
    pos = err > 0
    ax.semilogy(ns[pos], err[pos], ".", ms=5)
    fit = record.fit
    if fit is not None:
        xs = np.linspace(ns.min(), ns.max(), 200)
        ys = np.exp(fit.intercept + fit.slope * fit.model.abscissa(xs))
        ax.semilogy(xs, ys, "-", lw=0.8,
                    label=f"{fit.model.value}: C = {fit.rate:.4g}, "
                          f"R^2 = {fit.r_squared:.3f}")
        ax.legend()
    return fig


def cubature_figure(ss, ratios, asymptotic):
    fig, ax = _axes("total / Euclidean coefficient count", "s", "ratio")
    ax.semilogy(ss, ratios, "o-", ms=4, label="exact formula")
    ax.semilogy(ss, asymptotic, "--", label="large-s asymptote")
    ax.legend()
    return fig


def decomposition_figure(decomp):
    fig, ax = _axes(f"Clenshaw-Curtis error terms, n = {decomp.n}", "j",
                    "magnitude")
    j = np.array([t[0] for t in decomp.terms])
    for col, label in ((1, "|a_j|"), (2, "|E_n(T_j)|"), (3, "|a_j E_n(T_j)|")):
        v = np.abs([t[col] for t in decomp.terms])
        ax.semilogy(j[v > 0], v[v > 0], ".-", ms=3, label=label)
    ax.legend()
    return fig
