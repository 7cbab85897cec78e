"""Gap between the discrete R_s profile and r(S, a), at s = floor(S/eps) and at s = S/eps - 3/2."""

import argparse
from dataclasses import dataclass

import mpmath

from voronoi_maps.scaling import R_closed_numeric, local_bridge, r_fn, x_at_scaling_point


@dataclass
class Config:
    S_values: tuple = (0.5, 1.0, 2.0, 4.0)
    eps_values: tuple = (0.04, 0.02, 0.01, 0.005)
    a: float = 1.0


def run(cfg: Config):
    print("S,eps,s,gap_floor,gap_floor_over_eps,gap_centred")
    for S in cfg.S_values:
        for eps in cfg.eps_values:
            bp = local_bridge(eps, S, cfg.a)
            with mpmath.workdps(40):
                E = mpmath.mpf(eps)
                x = x_at_scaling_point(E, mpmath.mpf(cfg.a))
                centred = (R_closed_numeric(mpmath.mpf(S) / E - mpmath.mpf(3) / 2, x) - 2) / E ** 2
                gc = float(abs(centred - r_fn(mpmath.mpf(S), mpmath.mpf(cfg.a))))
            print(f"{S:g},{eps:g},{bp.s},{bp.gap:.6g},{bp.gap / eps:.6g},{gc:.3e}")


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--S", type=float, nargs="+", default=list(Config.S_values))
    p.add_argument("--eps", type=float, nargs="+", default=list(Config.eps_values))
    p.add_argument("--a", type=float, default=1.0)
    a = p.parse_args()
    run(Config(tuple(a.S), tuple(a.eps), a.a))


if __name__ == "__main__":
    main()
