"""Residual table for the scaling-function identities over a parameter grid."""

import argparse
from dataclasses import dataclass

from voronoi_maps import scaling


@dataclass
class Config:
    ab: tuple = scaling.DEFAULT_GRID_AB
    mus: tuple = (0.1, 1.0, 4.0)


def run(cfg: Config):
    rows = scaling.pde_grid(cfg.ab)
    print(f"pde grid points: {len(rows)}, max residual {max(r['residual'] for r in rows):.3e}")
    for a in cfg.ab:
        for b in cfg.ab:
            if a == b:
                continue
            prim = max(scaling.primitive_residual(k / 10, a, b) for k in range(1, 10))
            kc = scaling.K_constant_numeric(a, b)
            print(f"a={a:g} b={b:g}: primitive {prim:.2e}, K const {kc:.15f} "
                  f"(expected {scaling.K_expansion_constant(a, b):.15f})")
    for mu in cfg.mus:
        c = scaling.contour_value(mu)
        print(f"mu={mu:g}: contour {c.total:.15g} closed {c.closed_form:.15g}")
    fi = scaling.first_integral_check()
    print(f"first integral: relative difference {fi.relative_difference:.3e}")


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--ab", type=float, nargs="+", default=list(Config.ab))
    p.add_argument("--mu", type=float, nargs="+", default=list(Config.mus))
    a = p.parse_args()
    run(Config(tuple(a.ab), tuple(a.mu)))


if __name__ == "__main__":
    main()
