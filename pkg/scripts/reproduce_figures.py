"""Write the region rasters behind the figures as CSV + PGM.

    python3 scripts/reproduce_figures.py [--out figures] [--grid 200]
"""
import argparse
import time
from pathlib import Path

from isored import io
from isored.massspring import SpringNetwork, frequency_response
from isored.reduction import isospectral_reduce, reduce_spectral_inverse
from isored.regions import (
    GridSpec,
    check_inclusion,
    gershgorin_raster,
    pseudoresonance_raster,
    pseudospectrum_raster,
)

DATA = Path(__file__).resolve().parent.parent / "data"
EPS = (1.0, 10 ** -0.5, 0.1)


def load(name):
    return io.parse_matrix_file(DATA / name).matrix


def save(raster, out, stem, window=None):
    io.write_raster(raster, out / f"{stem}.csv", "csv")
    io.write_raster(raster, out / f"{stem}.pgm", "pgm", window)
    print(f"  wrote {stem}.csv/.pgm")


def gershgorin_figures(out, n):
    m = load("inv_lambda_bidiag_4x4.wm")
    rs = reduce_spectral_inverse(m, [1, 2, 3])
    for tag, spec in (("wide", GridSpec(-2.5, 2.5, -1.5, 1.5, n, n)),
                      ("tight", GridSpec(-2.0, 2.0, -1.0, 1.0, n, n))):
        outer = gershgorin_raster(m, spec, use_spectral_inverse=True)
        inner = gershgorin_raster(rs, spec)
        save(outer, out, f"gersh_specinv_{tag}")
        save(inner, out, f"gersh_reduced_specinv_{tag}")
        print(f"  {tag}: {check_inclusion(inner, outer).summary()}")


def six_node_figures(out, n):
    m = load("six_node_01.wm")
    r = isospectral_reduce(m, [1, 2])
    spec = GridSpec(-2, 3, -2, 2, n, n)
    window = io.levels_window(EPS)
    rasters = {"six_node_pseudospec": pseudospectrum_raster(m, spec),
               "six_node_reduced_pseudospec": pseudospectrum_raster(r, spec),
               "six_node_reduced_pseudores": pseudoresonance_raster(r, spec)}
    for stem, raster in rasters.items():
        save(raster, out, stem, window)


def spring_figures(out, n):
    net = SpringNetwork.path(4)
    spec = GridSpec(-1, 5, -2, 2, n, n)
    window = io.levels_window(EPS)
    chain = ([1, 2, 3, 4], [1, 2, 4], [1, 4], [1])
    rasters = []
    for b in chain:
        raster = pseudospectrum_raster(frequency_response(net, b), spec)
        save(raster, out, "spring_pseudospec_" + "".join(map(str, b)), window)
        rasters.append(raster)
    for outer, inner in zip(rasters, rasters[1:]):
        for eps in EPS:
            print(f"  {check_inclusion(inner, outer, eps).summary()}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="figures")
    ap.add_argument("--grid", type=int, default=200)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for label, fn in (("gershgorin", gershgorin_figures), ("six-node", six_node_figures),
                      ("spring chain", spring_figures)):
        t0 = time.perf_counter()
        print(label)
        fn(out, args.grid)
        print(f"  {time.perf_counter() - t0:.2f} s")


if __name__ == "__main__":
    main()
