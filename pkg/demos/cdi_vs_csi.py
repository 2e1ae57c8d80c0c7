"""Statistical channel knowledge vs exact channel knowledge at the warden.

Two ways to pick the covert transmit power:

  * blind design -- only channel statistics are available, the power is set
    once so the warden's average error stays at 1 - epsilon;
  * known-channel design -- each channel draw is observed, the power rides
    the instantaneous covertness limit, and outage is averaged over draws.

Knowing the channels makes the warden stronger, so the known-channel power
is usually smaller and the outage larger.  Looser covertness (bigger
epsilon) buys outage back.

Run:  python3 demos/cdi_vs_csi.py
Writes cdi_vs_csi.png next to this file.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from covertfd import (
    CovertConstraint,
    PowerConfig,
    csi_expected_outage,
    optimal_pa,
    outage_probability,
    unit_params,
)

PARAMS = unit_params(lambda_bw=0.5)
CC = CovertConstraint(epsilon=0.3, tau=3.0)
N_SAMPLES = 20_000
OUT = pathlib.Path(__file__).with_name("cdi_vs_csi.png")


def main():
    pbms = np.linspace(0.25, 2.0, 8)

    blind = []
    for pbm in pbms:
        p_a, _ = optimal_pa(float(pbm), PARAMS, CC)
        blind.append(outage_probability(PARAMS, PowerConfig(p_a=p_a, p_b_max=float(pbm))))

    known = [
        csi_expected_outage(PARAMS, float(p), CC.epsilon, n_samples=N_SAMPLES, seed=42)
        for p in pbms
    ]
    known_loose = [
        csi_expected_outage(PARAMS, float(p), 0.6, n_samples=N_SAMPLES, seed=42)
        for p in pbms
    ]

    print(f"{'p_b_max':>8} {'blind':>9} {'known':>9} {'known(eps=0.6)':>15}")
    for pbm, b, k, kl in zip(pbms, blind, known, known_loose):
        print(f"{pbm:8.2f} {b:9.4f} {k.mean:9.4f} {kl.mean:15.4f}")

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(pbms, blind, "o-", label="blind design (statistics only)")
    ax.errorbar(
        pbms,
        [k.mean for k in known],
        yerr=[2 * k.std_err for k in known],
        fmt="s-",
        label=f"known channels, eps={CC.epsilon}",
    )
    ax.errorbar(
        pbms,
        [k.mean for k in known_loose],
        yerr=[2 * k.std_err for k in known_loose],
        fmt="^-",
        label="known channels, eps=0.6",
    )
    ax.set_xlabel("jamming budget p_b_max")
    ax.set_ylabel("receiver outage")
    ax.set_title("Outage under the covert constraint: who knows the channels?")
    ax.legend()
    fig.tight_layout()
    fig.savefig(OUT, dpi=150)
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
