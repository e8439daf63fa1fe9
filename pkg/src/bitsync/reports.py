"""Figure rendering for run traces and parameter sweeps.

matplotlib is imported lazily with the Agg backend so headless use (and users
who never ask for figures) never touch a display.
"""
from __future__ import annotations

from typing import Sequence

from .checker import SweepRow, Transcript
from .receiver import TRACE_COLUMNS, Z_NAMES


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def _parse_rows(tr: Transcript) -> dict[str, list]:
    cols: dict[str, list] = {name: [] for name in TRACE_COLUMNS}
    for row in tr.rows:
        for name, cell in zip(TRACE_COLUMNS, row.split(",")):
            cols[name].append(cell)
    return cols


def plot_trace(tr: Transcript, path: str) -> None:
    """Render the sampled bit, voted bit, counter, automaton state and the
    strobe/byte-done pulses of one run as stacked step plots."""
    plt = _pyplot()
    cols = _parse_rows(tr)
    cycles = [int(x) for x in cols["cycle"]]
    fig, axes = plt.subplots(5, 1, sharex=True, figsize=(12, 9))

    axes[0].step(cycles, [int(x) for x in cols["inp"]], where="post")
    axes[0].set_ylabel("inp")
    axes[0].set_yticks([0, 1])

    axes[1].step(cycles, [int(x) for x in cols["v"]], where="post")
    axes[1].set_ylabel("v")
    axes[1].set_yticks([0, 1])

    axes[2].step(cycles, [int(x) for x in cols["cnt"]], where="post")
    axes[2].set_ylabel("cnt")

    z_index = {name: i for i, name in enumerate(Z_NAMES)}
    axes[3].step(cycles, [z_index[x] for x in cols["z"]], where="post")
    axes[3].set_ylabel("state")
    axes[3].set_yticks(range(len(Z_NAMES)))
    axes[3].set_yticklabels(Z_NAMES, fontsize=6)

    strobes = [c for c, s in zip(cycles, cols["strobe"]) if s == "1"]
    dones = [c for c, s in zip(cycles, cols["rb_we"]) if s == "1"]
    axes[4].vlines(strobes, 0, 1, label="strobe")
    axes[4].vlines(dones, 0, 2, colors="red", label="byte done")
    if tr.nus:
        axes[4].vlines(list(tr.nus), 0, 2, colors="green", linestyles="dotted",
                       label="byte mark")
    axes[4].set_ylabel("pulses")
    axes[4].set_xlabel("receiver cycle")
    axes[4].legend(loc="upper right", fontsize=7)

    fig.suptitle(
        f"sender ratio {tr.sender_clock.ratio}, receiver ratio "
        f"{tr.receiver_clock.ratio}, phase {tr.receiver_clock.phase}",
        fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_sweep(rows: Sequence[SweepRow], path: str) -> None:
    """Render sweep outcomes as a bar chart keyed by (reset, strobe)."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(8, 4))
    labels = [f"({r.reset_value},{r.strobe_value})\nd={r.diff}" for r in rows]
    heights = [1] * len(rows)
    colors = ["tab:green" if r.passed else "tab:red" for r in rows]
    ax.bar(range(len(rows)), heights, color=colors, tick_label=labels)
    ax.set_yticks([])
    ax.set_xlabel("(reset, strobe)")
    ax.set_title("counter parameter sweep: green = PASS, red = FAIL")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
