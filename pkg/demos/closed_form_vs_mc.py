"""Closed forms against brute-force simulation, with error bars.

Every released number has a sampling twin here: the radiometer's false-alarm
and miss rates, the receiver outage, and the order-statistic mean behind the
blind-detection floor.  The miss-rate comparison uses the raw (unclamped)
form plus the simulated clipping bias -- that identity holds exactly, while
the clamped value only matches where the raw form stays nonnegative.

Run:  python3 demos/closed_form_vs_mc.py
Writes closed_form_vs_mc.png next to this file.
"""

import pathlib
import warnings

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from covertfd import (
    OrderStatSpec,
    PowerConfig,
    estimate_far_mdr,
    estimate_min_exp_mean,
    estimate_outage,
    estimate_p2_clipping_bias,
    far,
    mdr_raw,
    outage_probability,
    unit_params,
)

PARAMS = unit_params()
POWERS = PowerConfig(p_a=5.0, p_b_max=1.0)
N_TRIALS = 200_000
OUT = pathlib.Path(__file__).with_name("closed_form_vs_mc.png")


def main():
    taus = np.linspace(0.6, 3.6, 7)

    far_emp, far_err, mdr_emp, mdr_err, far_cl, mdr_cl = [], [], [], [], [], []
    for i, tau in enumerate(taus):
        tau = float(tau)
        fe, me = estimate_far_mdr(tau, PARAMS, POWERS, n_trials=N_TRIALS, seed=100 + i)
        be = estimate_p2_clipping_bias(tau, PARAMS, POWERS, n_trials=N_TRIALS, seed=100 + i)
        far_emp.append(fe.mean)
        far_err.append(2 * fe.std_err)
        mdr_emp.append(me.mean)
        mdr_err.append(2 * np.hypot(me.std_err, be.std_err))
        far_cl.append(far(tau, PARAMS, POWERS))
        mdr_cl.append(mdr_raw(tau, PARAMS, POWERS) + be.mean)
        z_f = abs(fe.mean - far_cl[-1]) / fe.std_err
        z_m = abs(me.mean - mdr_cl[-1]) / np.hypot(me.std_err, be.std_err)
        print(f"tau={tau:.2f}: false-alarm z={z_f:5.2f}  miss(raw+bias) z={z_m:5.2f}")

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    ax1.errorbar(taus, far_emp, yerr=far_err, fmt="o", label="simulated")
    ax1.plot(taus, far_cl, "-", label="closed form")
    ax1.set_xlabel("threshold tau")
    ax1.set_ylabel("false-alarm rate")
    ax1.legend()
    ax2.errorbar(taus, mdr_emp, yerr=mdr_err, fmt="o", label="simulated")
    ax2.plot(taus, mdr_cl, "-", label="raw closed form + clipping bias")
    ax2.set_xlabel("threshold tau")
    ax2.set_ylabel("miss rate")
    ax2.legend()
    fig.suptitle(f"Radiometer error rates, {N_TRIALS} trials, 2-sigma bars")
    fig.tight_layout()
    fig.savefig(OUT, dpi=150)
    print(f"wrote {OUT}")

    print()
    for p_a, pbm in ((5.0, 1.0), (2.0, 3.0), (5.0, 1e-9)):
        pw = PowerConfig(p_a=p_a, p_b_max=pbm)
        est = estimate_outage(PARAMS, pw, n_trials=N_TRIALS, seed=7)
        closed = outage_probability(PARAMS, pw)
        print(
            f"outage  p_a={p_a:<4} p_b_max={pbm:<6}: closed {closed:.5f}  "
            f"simulated {est.mean:.5f} +/- {est.std_err:.5f}"
        )

    spec = OrderStatSpec(n=1000, rate_param=1.0 / PARAMS.lambda_bw)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        est = estimate_min_exp_mean(spec, n_trials=50_000, seed=3)
    print(
        f"min of {spec.n} exponential gains: exact mean "
        f"{PARAMS.lambda_bw / spec.n:.6f}  simulated {est.mean:.6f} "
        f"+/- {est.std_err:.6f}"
    )


if __name__ == "__main__":
    main()
