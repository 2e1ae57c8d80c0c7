"""Walk the warden's detection-error landscape over the threshold.

The radiometer compares its average received power to a threshold tau.
Below the jamming-only floor rho_1 the warden is blind (error sum exactly
1); between rho_1 and the combined level rho_2 detection never misses but
still false-alarms; above rho_2 both error types trade off and the sum
can dip through a minimum before climbing back toward 1.

Run:  python3 demos/threshold_landscape.py
Writes threshold_landscape.png next to this file.
"""

import pathlib
import warnings

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from covertfd import (
    ClampWarning,
    NoInteriorMinWarning,
    PowerConfig,
    detection_error,
    optimal_threshold,
    thresholds,
    unit_params,
)

POWERS = PowerConfig(p_a=5.0, p_b_max=1.0)
OUT = pathlib.Path(__file__).with_name("threshold_landscape.png")


def xi_curve(params, taus):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ClampWarning)
        return np.array([detection_error(float(t), params, POWERS).xi for t in taus])


def main():
    fig, axes = plt.subplots(1, 2, figsize=(10, 4), sharey=True)

    # Short frames keep the averaging noisy: the error sum bottoms out at an
    # interior threshold.  Long frames sharpen the statistic until the best
    # threshold slides out to the search boundary.
    for ax, n_uses in zip(axes, (20, 1000)):
        params = unit_params(lambda_bw=0.8, n_uses=n_uses)
        levels = thresholds(params, POWERS)
        hi = 50.0 * levels.rho2
        taus = np.linspace(0.2 * levels.rho1, hi, 1500)
        xi = xi_curve(params, taus)

        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NoInteriorMinWarning)
            tau_star, xi_min = optimal_threshold(params, POWERS, search_hi=hi)

        ax.plot(taus, xi, lw=1.5)
        ax.axvline(levels.rho1, color="gray", ls=":", label="rho_1 (blind floor)")
        ax.axvline(levels.rho2, color="gray", ls="--", label="rho_2 (both-on level)")
        ax.plot([tau_star], [xi_min], "r*", ms=12, label="warden's best threshold")
        ax.set_xlabel("threshold tau")
        ax.set_title(f"n_uses = {n_uses}")
        ax.legend(fontsize=8)

        print(
            f"n_uses={n_uses:5d}: rho_1={levels.rho1:.4f}  rho_2={levels.rho2:.4f}  "
            f"tau*={tau_star:.4f}  xi_min={xi_min:.4f}"
        )

    axes[0].set_ylabel("false alarm + miss rate")
    fig.suptitle("Detection-error sum vs radiometer threshold")
    fig.tight_layout()
    fig.savefig(OUT, dpi=150)
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
