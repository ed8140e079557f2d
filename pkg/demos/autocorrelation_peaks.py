"""
Autocorrelation |A(t)|^2 over one revival period and its fractional peaks.

Every local maximum of the overlap with the initial state sits at a
rational fraction r/s of the revival time, where the packet reassembles
into s (or s/2) copies of itself.  The script locates the highest peaks on
a dense grid and labels them with the nearest small fraction.

Run with: python3 demos/autocorrelation_peaks.py
Writes demos/output/autocorrelation_peaks.png
"""

import math
import os
from fractions import Fraction

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from ptrevival.coherent import docs_coeffs
from ptrevival.dynamics import autocorrelation
from ptrevival.eigensystem import SptParams

OUT_DIR = os.path.join(os.path.dirname(__file__), "output")


def local_maxima(values):
    inner = (values[1:-1] > values[:-2]) & (values[1:-1] > values[2:])
    return 1 + np.nonzero(inner)[0]


def main():
    well = SptParams(alpha=2.0, rho=10.0)
    cs = docs_coeffs(0.8, well)
    taus = np.linspace(0.0, 1.0, 8193)
    mag2 = np.abs(autocorrelation(cs, taus).values) ** 2

    peaks = local_maxima(mag2)
    top = peaks[np.argsort(mag2[peaks])[::-1][:8]]
    print("highest fractional-revival peaks:")
    for idx in np.sort(top):
        frac = Fraction(taus[idx]).limit_denominator(12)
        print(f"  t/t_rev = {taus[idx]:.4f} ~ {str(frac):>5s}   "
              f"|A|^2 = {mag2[idx]:.4f}")

    fig, ax = plt.subplots(figsize=(9, 4))
    ax.plot(taus, mag2, lw=0.8)
    for idx in top:
        frac = Fraction(taus[idx]).limit_denominator(12)
        ax.annotate(str(frac), (taus[idx], mag2[idx]),
                    textcoords="offset points", xytext=(0, 4), ha="center")
    ax.set_xlabel(r"$t / t_{rev}$")
    ax.set_ylabel(r"$|A(t)|^2$")
    ax.set_title("autocorrelation of the displaced packet (beta = 0.8, rho = 10)")
    os.makedirs(OUT_DIR, exist_ok=True)
    path = os.path.join(OUT_DIR, "autocorrelation_peaks.png")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
