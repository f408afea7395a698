"""Figure rendering for rwlab tables.

A separate consumer of the CLI's delimited output: ``rwlab-plot FILE...``
reads each table, picks a layout from its recorded name, and writes a PNG
next to the input file (same stem).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .tables import Table, read_table


def _col(table: Table, name: str) -> list:
    idx = table.columns.index(name)
    return [row[idx] for row in table.rows]


def plot_table(table: Table, out_path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    kind = table.name
    if kind == "rcm-tail":
        ax.loglog(_col(table, "r"), _col(table, "r4_P"), "o-")
        ax.set_xlabel("r")
        ax.set_ylabel(r"$r^4\,P(r)$")
        slope = table.meta.get("slope", "?")
        ax.set_title(f"connection-probability tail certificate (slope {slope})")
    elif kind == "rcm-delta-eff":
        ax.semilogx(_col(table, "r"), _col(table, "estimate"), "o-")
        ax.axhline(2.0, color="gray", lw=0.8, ls="--")
        ax.set_xlabel("r")
        ax.set_ylabel("effective decay exponent")
        ax.set_title(f"finite-r decay exponent ({table.meta.get('regime', '')})")
    elif kind == "rewire-tail":
        ax.semilogx(_col(table, "threshold"), _col(table, "scaled_tail"), "o-")
        ax.set_xlabel("threshold t")
        ax.set_ylabel(r"$3^j\,\hat P(U > 500\cdot 3^j)$")
        ax.set_title(f"rewired weight tail (fitted C = {table.meta.get('fitted_constant', '?')})")
    elif kind == "flow-stages":
        ax.semilogy(_col(table, "k"), _col(table, "stage_energy"), "o-", label="stage energy")
        ax.semilogy(_col(table, "k"), _col(table, "cumulative"), "s--", label="cumulative")
        ax.set_xlabel("stage k")
        ax.set_ylabel("energy")
        ax.legend()
        ax.set_title("box-chain flow energies")
    elif kind == "walk-simulate":
        ax.loglog(_col(table, "checkpoint"), _col(table, "return_prob"), "o-")
        ax.set_xlabel("time")
        ax.set_ylabel("return probability")
        ax.set_title("empirical return probabilities")
    elif kind == "edge-loads":
        rows = [r for r in table.rows if r[1] != "sup"]
        ax.semilogy([f"{r[0][:4]}/{r[1]}" for r in rows], [max(r[3], 0.5) for r in rows], "o",
                    label="count")
        ax.semilogy([f"{r[0][:4]}/{r[1]}" for r in rows], [r[4] for r in rows], "_",
                    markersize=12, label="bound")
        ax.set_ylabel("edges above threshold")
        ax.tick_params(axis="x", rotation=60)
        ax.legend()
        ax.set_title("load-threshold counts vs bounds")
    elif kind == "domination":
        ax.plot(_col(table, "baseline"), _col(table, "estimate"), "o")
        lim = max(max(_col(table, "baseline")), max(_col(table, "estimate"))) * 1.05
        ax.plot([0, lim], [0, lim], "--", color="gray", lw=0.8)
        ax.set_xlabel("deterministic C_eff")
        ax.set_ylabel("E[C_eff(random weights)]")
        ax.set_title("conductance domination")
    elif kind == "rewire-compare":
        ax.semilogy(_col(table, "realization"), _col(table, "rewired_c_eff"), "o-",
                    label="rewired")
        ax.semilogy(_col(table, "realization"), _col(table, "long_range_c_eff"), "s--",
                    label="long-range")
        ax.set_xlabel("realization")
        ax.set_ylabel("C_eff")
        ax.legend()
        ax.set_title("conductivity comparison")
    else:
        # generic fallback: first column against the rest
        xs = _col(table, table.columns[0])
        for name in table.columns[1:]:
            ys = _col(table, name)
            if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in ys):
                ax.plot(xs, ys, "o-", label=name)
        ax.set_xlabel(table.columns[0])
        ax.legend()
        ax.set_title(kind or out_path.stem)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)


def main(argv: list[str] | None = None) -> int:
    p = argparse.ArgumentParser(prog="rwlab-plot",
                                description="render rwlab tables to PNG files")
    p.add_argument("files", nargs="+", help="table files written by the rwlab CLI")
    p.add_argument("--outdir", default=None, help="directory for figures (default: per input)")
    args = p.parse_args(sys.argv[1:] if argv is None else argv)
    for f in args.files:
        path = Path(f)
        table = read_table(path.read_text(encoding="utf-8"))
        out = Path(args.outdir) / f"{path.stem}.png" if args.outdir else path.with_suffix(".png")
        out.parent.mkdir(parents=True, exist_ok=True)
        plot_table(table, out)
        print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
