"""Efficiency-vs-alpha grids for the published figures, as CSV and PNG.

Figure 2 is the isomagnetic cycle, figure 3 the isoenergetic one, and
figure 4 repeats both with the field reversed.  Each panel pair splits on
gamma (0.1 left, 0.5 right); colour encodes n_phi0 and line style theta*eta.
"""

from __future__ import annotations

from pathlib import Path

from .core import Orientation
from .sweep import SweepConfig, SweepRow, emit_csv, run_sweep

N_PHI0 = (4.0, 10.0, 100.0)
THETA_ETA = (0.0, 0.1, 0.5)
GAMMA = (0.1, 0.5)

FIGURES = {
    2: (("isomagnetic", Orientation.POSITIVE),),
    3: (("isoenergetic", Orientation.POSITIVE),),
    4: (("isomagnetic", Orientation.REVERSED), ("isoenergetic", Orientation.REVERSED)),
}

_COLORS = {4.0: "black", 10.0: "tab:blue", 100.0: "tab:red"}
_STYLES = {0.0: "-", 0.1: "--", 0.5: ":"}


def figure_config(cycle: str, orientation: Orientation, alpha_count: int = 200) -> SweepConfig:
    return SweepConfig(
        cycle=cycle,
        n_phi0=N_PHI0,
        theta_eta=THETA_ETA,
        gamma=GAMMA,
        orientation=orientation,
        alpha_min=1.0,
        alpha_max=3.0,
        alpha_count=alpha_count,
    ).validate()


def render(rows: list[SweepRow], path: Path, title: str) -> Path:
    """Two-panel efficiency plot of one sweep."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 2, figsize=(10, 4), sharey=True)
    for ax, gamma in zip(axes, GAMMA):
        for n in N_PHI0:
            for te in THETA_ETA:
                pts = [
                    (r.alpha, r.efficiency)
                    for r in rows
                    if r.gamma == gamma and r.n_phi0 == n and r.theta_eta == te and r.status == "ok"
                ]
                if not pts:
                    continue
                xs, ys = zip(*pts)
                label = rf"$N_\Phi$={n:g}, $\theta\eta$={te:g}"
                ax.plot(xs, ys, color=_COLORS[n], linestyle=_STYLES[te], linewidth=1.2, label=label)
        ax.set_title(rf"$\gamma$ = {gamma:g}")
        ax.set_xlabel(r"$\alpha$")
        ax.grid(alpha=0.3)
    axes[0].set_ylabel("efficiency")
    axes[1].legend(fontsize=7, ncol=1, loc="lower right")
    fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def write_figure(fig_id: int, out_dir: str | Path, jobs: int = 1, plot: bool = True) -> list[Path]:
    """Regenerate every sweep behind figure ``fig_id``; returns written paths."""
    if fig_id not in FIGURES:
        raise ValueError(f"unknown figure {fig_id}; choose from {sorted(FIGURES)}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for cycle, orientation in FIGURES[fig_id]:
        rows = run_sweep(figure_config(cycle, orientation), jobs=jobs)
        stem = out / f"figure{fig_id}_{cycle}_{orientation.value}"
        csv_path = stem.with_suffix(".csv")
        emit_csv(rows, csv_path)
        written.append(csv_path)
        if plot:
            written.append(render(rows, stem.with_suffix(".png"), f"{cycle} cycle, {orientation.value} field"))
    return written
