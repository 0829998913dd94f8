"""Writes the stand-in charge form-factor datasets in data/formfactors.

The measured He4 and Ca40 cross sections are not bundled. These files are
built from smooth textbook parametrizations with the right charge radius,
sampled on a typical momentum-transfer range, with 5% errors. They are good
enough for testing the fitting machinery and the SRC-vs-HO ordering, not for
quoting chi^2 values.
"""
import argparse
import pathlib

import numpy as np


def he4(q):
    # Frosch-type form: (1 - (a^2 q^2)^6) exp(-b^2 q^2)
    a, b = 0.316, 0.681
    return np.abs((1.0 - (a * a * q * q) ** 6) * np.exp(-b * b * q * q))


def three_param_fermi(q, c, z, w):
    # charge density (1 + w r^2/c^2) / (1 + exp((r - c)/z)), transformed numerically
    r = np.linspace(0.0, 20.0, 4001)
    rho = (1.0 + w * r * r / (c * c)) / (1.0 + np.exp((r - c) / z))
    norm = np.trapezoid(rho * r * r, r)
    qr = np.outer(q, r)
    j0 = np.sinc(qr / np.pi)
    return np.abs(np.trapezoid(j0 * rho * r * r, r, axis=1) / norm)


def ca40(q):
    # three-parameter Fermi fit to the measured charge density, rms about 3.48 fm
    return three_param_fermi(q, 3.766, 0.586, -0.161)


DATASETS = {
    "He4": (he4, np.arange(0.4, 4.01, 0.2),
            "pseudo-data from the Frosch-type parametrization (1-(a^2 q^2)^6) exp(-b^2 q^2), "
            "a=0.316 fm, b=0.681 fm; 5% errors"),
    "Ca40": (ca40, np.arange(0.3, 3.01, 0.15),
             "pseudo-data from a three-parameter Fermi charge density, c=3.766 fm, "
             "z=0.586 fm, w=-0.161; 5% errors"),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data" / "formfactors"))
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, (fn, q, source) in DATASETS.items():
        v = fn(q)
        sigma = np.maximum(0.05 * v, 1e-4)
        with open(out / f"{name}.csv", "w") as fh:
            fh.write(f"# source: {source}\n")
            fh.write("# generated by tools/make_pseudodata.py\n")
            fh.write("q,fch,sigma\n")
            for qi, vi, si in zip(q, v, sigma):
                fh.write(f"{qi:.3f},{vi:.6e},{si:.3e}\n")


if __name__ == "__main__":
    main()
