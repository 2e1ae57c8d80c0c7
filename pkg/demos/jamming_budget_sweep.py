"""Sweep the receiver's jamming budget and watch the design regimes.

For each budget P_b_max the solver finds the largest covert transmit power
(the warden's error pinned to 1 - epsilon) and the resulting outage.  Three
regimes show up along the axis:

  OK            -- the covert constraint binds; a design exists
  INFEASIBLE    -- jamming is too strong to hide against yet too weak to
                   blind the warden outright; no power binds the constraint
  NON_BINDING   -- jamming alone already blinds the warden; covertness stops
                   limiting the link and the solver reports a power ceiling

Run:  python3 demos/jamming_budget_sweep.py
Writes jamming_budget_sweep.png next to this file.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from covertfd import CovertConstraint, optimal_pbmax, sweep_pbmax, unit_params

PARAMS = unit_params(lambda_bw=0.8)
CC = CovertConstraint(epsilon=0.2, tau=2.0)
OUT = pathlib.Path(__file__).with_name("jamming_budget_sweep.png")


def main():
    grid = np.concatenate([np.linspace(0.05, 0.85, 17), np.linspace(1.0, 2.0, 3)])
    points = sweep_pbmax(PARAMS, CC, grid)

    print(f"{'p_b_max':>8} {'p_a_opt':>10} {'p_out':>10} {'status'}")
    for pt in points:
        pa = f"{pt.p_a_opt:.4f}" if pt.feasible else "--"
        po = f"{pt.p_out:.5f}" if pt.feasible else "--"
        print(f"{pt.p_b_max:8.3f} {pa:>10} {po:>10} {pt.status}")

    feas = [pt for pt in points if pt.feasible]
    best = optimal_pbmax(PARAMS, CC, grid)
    print(
        f"\nlowest outage {best.p_out_opt:.5f} at p_b_max={best.p_b_max_opt:.4f} "
        f"(p_a={best.p_a_opt:.4f})"
    )
    print(
        "note: over the whole feasible band the outage only grows with the "
        "jamming budget, so the best budget is the smallest one swept"
    )

    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
    xs = [pt.p_b_max for pt in feas]
    ax1.plot(xs, [pt.p_a_opt for pt in feas], "o-")
    ax1.set_ylabel("largest covert power p_a")
    ax2.plot(xs, [pt.p_out for pt in feas], "o-", color="tab:orange")
    ax2.plot([best.p_b_max_opt], [best.p_out_opt], "k*", ms=14)
    ax2.set_ylabel("outage at that power")
    ax2.set_xlabel("jamming budget p_b_max")
    lo = max(pt.p_b_max for pt in feas)
    hi = min(pt.p_b_max for pt in points if not pt.feasible)
    for ax in (ax1, ax2):
        ax.axvspan(0.5 * (lo + hi), float(grid[-1]), color="red", alpha=0.08)
    ax1.set_title("Covert design across jamming budgets (shaded: infeasible)")
    fig.tight_layout()
    fig.savefig(OUT, dpi=150)
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
