"""Figures written next to the delimited output of the zeros and
free-energy commands.  Only the Agg backend is used, so no display is needed."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .analysis import FreeEnergyEstimate, RootReport  # noqa: E402


def zeros_figure(report: RootReport, path: str) -> str:
    fig, ax = plt.subplots(figsize=(6, 4.5))
    re = [z[0] for z in report.roots]
    im = [z[1] for z in report.roots]
    ax.scatter(re, im, s=8, color="black")
    real = [z[0] for z in report.roots if z[1] == 0]
    ax.scatter(real, [0] * len(real), s=18, color="tab:red", label=f"{len(real)} real")
    ax.axhline(0, color="grey", lw=0.5)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_title(f"zeros of p_{report.n} ({len(report.roots)} total)")
    ax.legend(loc="upper left")
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path


def free_energy_figure(est: FreeEnergyEstimate, path: str) -> str:
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ns = range(1, len(est.f_sequence) + 1)
    for parity, colour in ((0, "tab:blue"), (1, "tab:orange")):
        pts = [(1 / n, f) for n, f in zip(ns, est.f_sequence) if n % 2 == parity]
        ax.plot(*zip(*pts), "o-", color=colour, ms=4, label="even n" if parity == 0 else "odd n")
    ax.axhline(est.conjectured, color="black", ls="--", lw=1, label="log g(zeta)")
    ax.axhline(est.extrapolated, color="tab:green", ls=":", lw=1, label="extrapolated")
    ax.set_xlim(left=0)
    ax.set_xlabel("1/n")
    ax.set_ylabel("log p_n(zeta) / n^2")
    ax.set_title(f"zeta = {est.zeta}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path
