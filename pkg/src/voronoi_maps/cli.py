"""Command-line reports.

Exit codes: 0 success, 1 a verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import enumerate_oracle as oracle
from . import maps, recursions, scaling, voronoi_law

SCHEMA_VERSION = 1

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    order: int | None = None
    smax: int | None = None
    N: int | None = None
    E_max: int = 5
    mu: list = field(default_factory=lambda: [0.0, 0.5, 1.0, 2.0])
    grid: str = "default"
    backend: str = "exact"
    variant: str = "all"
    format: str = "csv"
    output: str | None = None
    target: str | None = None

    def __post_init__(self):
        if self.command in ("verify", "oracle") and self.backend != "exact":
            raise InputError(f"the {self.command} command requires the exact backend")


# --------------------------------------------------------------------------
# rendering
# --------------------------------------------------------------------------


def fmt_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError("non-finite value in report")
    return f"{x:.17g}"


def fmt_exact(x) -> str:
    return str(Fraction(x)) if not isinstance(x, float) else fmt_float(x)


def dump_json(obj) -> str:
    """Deterministic JSON with 17-significant-digit floats; ``None`` dict values are dropped."""
    if isinstance(obj, dict):
        items = [f"{dump_json(str(k))}:{dump_json(v)}" for k, v in obj.items() if v is not None]
        return "{" + ",".join(items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dump_json(v) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, Fraction):
        return dump_json(str(obj))
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    raise TypeError(f"cannot render {type(obj).__name__}")


def render_csv(schema: str, columns: list[str], rows: list[list], meta: dict | None = None,
               trailer: dict | None = None) -> str:
    lines = [f"# schema: {schema} v{SCHEMA_VERSION}"]
    for k, v in (meta or {}).items():
        lines.append(f"# {k}: {v}")
    lines.append(",".join(columns))
    for r in rows:
        lines.append(",".join(fmt_float(c) if isinstance(c, float) else str(c) for c in r))
    for k, v in (trailer or {}).items():
        lines.append(f"# {k}: {v}")
    return "\n".join(lines) + "\n"


def _emit(text: str, cfg: RunConfig):
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_law(cfg: RunConfig) -> int:
    N = cfg.N
    if N is None or N < 1:
        raise InputError("law needs --n >= 1")
    backend = cfg.backend
    law = voronoi_law.law_table(N, cfg.variant, backend)
    rep = voronoi_law.uniformity_report(N, law=law)
    rows = []
    for p, (w, P) in enumerate(zip(law.weights, law.probabilities)):
        rows.append([p, fmt_exact(Fraction(p, 2)), fmt_exact(w), float(P),
                     (2 * N + 1) * float(P) - 1.0])
    summary = {
        "window_p": f"{rep.window[0]}-{rep.window[1]}",
        "max_deviation": rep.max_deviation,
        "mean_deviation": rep.mean_deviation,
    }
    meta = {"N": N, "variant": cfg.variant, "backend": backend,
            "normalization": fmt_exact(law.normalization)}
    cols = ["p", "n", "weight", "probability", "scaled_deviation"]
    if cfg.format == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": "law", **meta,
               "rows": [dict(zip(cols, r)) for r in rows], "summary": summary}
        _emit(dump_json(doc) + "\n", cfg)
    else:
        _emit(render_csv("voronoi-maps/law", cols, rows, meta,
                         {f"summary_{k}": fmt_float(v) if isinstance(v, float) else v
                          for k, v in summary.items()}), cfg)
    return EXIT_OK


def cmd_mgf(cfg: RunConfig) -> int:
    N = cfg.N
    if N is None or N < 1:
        raise InputError("mgf needs --n >= 1")
    law = voronoi_law.law_table(N, cfg.variant, cfg.backend)
    rows = []
    for mu in cfg.mu:
        e = math.fsum(math.exp(mu * p / (2 * N)) * float(P) for p, P in enumerate(law.probabilities))
        lim = voronoi_law.mgf_limit(mu)
        rows.append([float(mu), e, lim, abs(e - lim) / lim])
    cols = ["mu", "E_N", "limit", "relative_gap"]
    meta = {"N": N, "variant": cfg.variant, "backend": cfg.backend}
    if cfg.format == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": "mgf", **meta,
               "rows": [dict(zip(cols, r)) for r in rows]}
        _emit(dump_json(doc) + "\n", cfg)
    else:
        _emit(render_csv("voronoi-maps/mgf", cols, rows, meta), cfg)
    return EXIT_OK


def cmd_oracle(cfg: RunConfig) -> int:
    rows = []
    for E in range(1, cfg.E_max + 1):
        for (i, j), w in sorted(oracle.oracle_strata(E).items()):
            rows.append([E, i, j, str(w)])
    cols = ["area", "u_power", "v_power", "weight"]
    meta = {"E_max": cfg.E_max}
    if cfg.format == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": "oracle", **meta,
               "rows": [dict(zip(cols, r)) for r in rows]}
        _emit(dump_json(doc) + "\n", cfg)
    else:
        _emit(render_csv("voronoi-maps/oracle", cols, rows, meta), cfg)
    return EXIT_OK


# verification -------------------------------------------------------------


class _Checks:
    def __init__(self):
        self.items = []
        self.counterexample = None

    def add(self, name: str, ok: bool, residual=None, tolerance=None, counterexample=None):
        self.items.append({"check": name, "pass": bool(ok), "residual": residual,
                           "tolerance": tolerance})
        if not ok and self.counterexample is None:
            self.counterexample = {"check": name, **(counterexample or {})}

    @property
    def ok(self) -> bool:
        return all(i["pass"] for i in self.items)


def _verify_recursions(cfg: RunConfig, ch: _Checks):
    K = cfg.order if cfg.order is not None else 12
    smax = cfg.smax if cfg.smax is not None else K + 1
    rt = recursions.solve_R(smax, K)
    bad = [s for s, r in enumerate(recursions.recursion_residual_R(rt), start=1) if any(r.coeffs)]
    ch.add("R recursion residual", not bad, residual=len(bad), tolerance=0,
           counterexample={"s": bad[0]} if bad else None)
    neg = [s for s in range(smax + 1) if any(c < 0 for c in rt[s].coeffs)]
    ch.add("R coefficients non-negative", not neg, counterexample={"s": neg[0]} if neg else None)
    xt = recursions.solve_X(smax, 2 * K)
    bad = []
    for s in range(1, smax):
        for d in recursions.OFFSETS:
            t = s + d
            if 1 <= t < smax and not recursions.recursion_residual_X(xt, s, t).is_zero():
                bad.append((s, t))
    ch.add("X recursion residual", not bad, residual=len(bad), tolerance=0,
           counterexample={"s": bad[0][0], "t": bad[0][1]} if bad else None)
    unstable = [s for s in range(K + 1, smax + 1) if xt[s, s] != xt.stabilized]
    ch.add("X stabilises beyond K", not unstable,
           counterexample={"s": unstable[0]} if unstable else None)
    neg = [k for k, v in xt.entries.items() if any(c < 0 for c in v.terms().values())]
    ch.add("X coefficients non-negative", not neg,
           counterexample={"s": neg[0][0], "t": neg[0][1]} if neg else None)


def _verify_closed_forms(cfg: RunConfig, ch: _Checks):
    K = cfg.order if cfg.order is not None else 20
    rt = recursions.solve_R(K + 1, K)
    for s in range(1, 9):
        ok = recursions.closed_R(s, K) == rt[s]
        ch.add(f"closed R_{s}", ok, counterexample={"s": s, "order": K})
    ok = recursions.closed_R_infinity(K) == rt.stabilized
    ch.add("closed R_inf", ok)
    Kx = cfg.order if cfg.order is not None else 14
    xt = recursions.solve_X(Kx + 1, 2 * Kx)
    for s in range(0, 7):
        for d in recursions.OFFSETS:
            t = s + d
            if 0 <= t <= 6:
                ok = xt[s, t].diagonal() == recursions.closed_X_diag(s, t, Kx)
                ch.add(f"closed X_{s},{t}", ok, counterexample={"s": s, "t": t, "order": Kx})
    ok = voronoi_law.F_series(2 * Kx).series.diagonal() == voronoi_law.F_diag_closed(Kx)
    ch.add("closed F(g,g)", ok)


def _verify_oracle(cfg: RunConfig, ch: _Checks):
    E = cfg.E_max
    F = voronoi_law.F_series(2 * E).series
    for area in range(1, E + 1):
        got = oracle.oracle_strata(area)
        exp = {(i, j): c for (i, j), c in F.terms().items() if i + j == 2 * area}
        ok = {k: Fraction(v) for k, v in got.items()} == {k: Fraction(v) for k, v in exp.items()}
        ch.add(f"oracle stratum area={area}", ok,
               counterexample={"area": area,
                               "oracle": {f"{i},{j}": str(v) for (i, j), v in sorted(got.items())},
                               "series": {f"{i},{j}": str(v) for (i, j), v in sorted(exp.items())}})


def _verify_parity(cfg: RunConfig, ch: _Checks):
    E = cfg.E_max
    ev, od = oracle.oracle_parity_split(E)
    Fe = voronoi_law.F_series(2 * E, "even").series
    Fo = voronoi_law.F_series(2 * E, "odd").series
    Fa = voronoi_law.F_series(2 * E, "all").series
    ch.add("even + odd = all", (Fe + Fo) == Fa)
    ch.add("oracle even part", ev == Fe)
    ch.add("oracle odd part", od == Fo)


def _verify_bijections(cfg: RunConfig, ch: _Checks):
    for E in range(1, cfg.E_max + 1):
        for code, t in oracle.unrooted_classes(E).items():
            problem = bijection_problems(t)
            if problem:
                ch.add(f"bijections E={E}", False,
                       counterexample={"problem": problem, "iltfm": maps.to_payload(t)})
                return
        ch.add(f"bijections E={E}", True)


def bijection_problems(t: maps.IltFM) -> str | None:
    """First failed invariant of the bijection round trip on ``t``, or ``None``."""
    q = maps.miermont_inverse(t)
    if q.map.n_faces != t.n_edges:
        return "face count differs from edge count"
    if maps.iltfm_code(maps.miermont_forward(q)) != maps.iltfm_code(t):
        return "forward(inverse(t)) != t"
    fresh = maps.BipointedQuad(maps.PlanarMap(q.map.alpha, q.map.sigma), q.v1, q.v2)
    q2 = maps.miermont_inverse(maps.miermont_forward(fresh))
    if maps.quad_code(q2) != maps.quad_code(q):
        return "inverse(forward(q)) != q"
    kind, s = maps.parity_classify(t)
    if maps.distances(q.map, q.v1)[q.v2] != 2 * s:
        return "d(v1, v2) != 2 s"
    ab = maps.ambjorn_budd(q)
    if ab.map.n_edges != t.n_edges:
        return "AB image has the wrong edge count"
    d1 = maps.distances(ab.map, ab.v1)
    d2 = maps.distances(ab.map, ab.v2)
    if list(ab.map.labels) != [min(x, y) for x, y in zip(d1, d2)]:
        return "AB labels differ from min-distance labels"
    if (d1[ab.v2] % 2 == 1) != (kind == "odd"):
        return "parity mismatch"
    if not maps.check_rebound(q).ok:
        return "rebound violation"
    return None


def _verify_scaling(cfg: RunConfig, ch: _Checks):
    if cfg.grid != "default":
        raise InputError("only --grid default is available")
    rows = scaling.pde_grid()
    worst = max(rows, key=lambda r: r["residual"])
    ch.add("PDE residual", worst["residual"] < 1e-8, residual=worst["residual"], tolerance=1e-8,
           counterexample=worst)
    prim = max(
        (scaling.primitive_residual(k / 10, a, b), k / 10, a, b)
        for k in range(1, 10) for a in scaling.DEFAULT_GRID_AB for b in scaling.DEFAULT_GRID_AB
    )
    ch.add("primitive identity", prim[0] < 1e-5, residual=prim[0], tolerance=1e-5,
           counterexample={"sigma": prim[1], "a": prim[2], "b": prim[3]})
    ch.add("K(0) = 0", scaling.K_fn(0.0, 1.0, 1.3) == 0)
    gap = max(abs(scaling.K_constant_numeric(a, b) - scaling.singularity_coefficient(a, b))
              for a, b in ((1.0, 1.3), (0.7, 1.3), (1.3, 0.7)))
    ch.add("K expansion constant", gap < 1e-12, residual=gap, tolerance=1e-12)
    cgap = max(abs(c.total - c.closed_form) / c.closed_form
               for c in map(scaling.contour_value, (0.1, 1.0, 4.0)))
    ch.add("contour total", cgap < 1e-8, residual=cgap, tolerance=1e-8)
    fi = scaling.first_integral_check(1e-3, 1.0, 1.3)
    ch.add("first integral", fi.relative_difference < 1e-6, residual=fi.relative_difference,
           tolerance=1e-6)


VERIFIERS = {
    "recursions": _verify_recursions,
    "closed-forms": _verify_closed_forms,
    "oracle": _verify_oracle,
    "parity": _verify_parity,
    "bijections": _verify_bijections,
    "scaling": _verify_scaling,
}


def cmd_verify(cfg: RunConfig) -> int:
    ch = _Checks()
    VERIFIERS[cfg.target](cfg, ch)
    doc = {"schema_version": SCHEMA_VERSION, "command": "verify", "target": cfg.target,
           "pass": ch.ok, "checks": ch.items, "counterexample": ch.counterexample}
    _emit(dump_json(doc) + "\n", cfg)
    return EXIT_OK if ch.ok else EXIT_FAIL


def cmd_bijection(cfg: RunConfig, demo: str | None, input_path: str | None,
                  round_trip: bool) -> int:
    if demo:
        if demo != "path3":
            raise InputError(f"unknown demo {demo!r}")
        q = maps.path3()
    elif input_path:
        with open(input_path, encoding="utf-8") as fh:
            text = fh.read()
        obj = maps.parse(text)
        if isinstance(obj, maps.IltFM):
            diags = obj.check()
            if diags:
                raise InputError("; ".join(diags))
            q = maps.miermont_inverse(obj)
        elif isinstance(obj, maps.BipointedQuad):
            q = obj
        else:
            raise InputError("input must be a bipointed_quad or an iltfm document")
    else:
        raise InputError("bijection needs --demo or --input")
    diags = maps.BipointedQuad(q.map, q.v1, q.v2).check()
    if diags:
        raise InputError("; ".join(diags))
    q = maps.label_bipointed(maps.BipointedQuad(maps.PlanarMap(q.map.alpha, q.map.sigma),
                                                q.v1, q.v2))
    t = maps.miermont_forward(q)
    ab = maps.ambjorn_budd(q)
    a1, a2 = maps.voronoi_areas(t)
    kind, s = maps.parity_classify(t)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "bijection",
        "quad": maps.to_payload(q),
        "iltfm": maps.to_payload(t),
        "ambjorn_budd": maps.to_payload(ab),
        "areas": [str(a1), str(a2)],
        "parity": kind,
        "min_loop_label": s,
        "delta_v1_v2": maps.distances(ab.map, ab.v1)[ab.v2],
    }
    ok = True
    if round_trip:
        back = maps.miermont_inverse(t)
        ok = maps.quad_code(back) == maps.quad_code(q)
        doc["identity"] = ok
    _emit(dump_json(doc) + "\n", cfg)
    return EXIT_OK if ok else EXIT_FAIL


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="voronoi-maps",
                                description="Exact Voronoi-cell laws for bi-pointed planar maps.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--output", "-o", default=None)
        sp.add_argument("--backend", choices=("exact", "float"), default="exact")

    law = sub.add_parser("law", help="exact area law at total area N")
    law.add_argument("--n", type=int, required=True)
    law.add_argument("--variant", choices=voronoi_law.VARIANTS, default="all")
    common(law)

    mgf = sub.add_parser("mgf", help="moment generating function against its limit")
    mgf.add_argument("--n", type=int, required=True)
    mgf.add_argument("--mu", type=float, nargs="+", default=[0.0, 0.5, 1.0, 2.0])
    mgf.add_argument("--variant", choices=voronoi_law.VARIANTS, default="all")
    common(mgf)

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("target", choices=sorted(VERIFIERS))
    ver.add_argument("--order", type=int, default=None)
    ver.add_argument("--smax", type=int, default=None)
    ver.add_argument("--edges", type=int, default=4)
    ver.add_argument("--grid", default="default")
    common(ver)

    bij = sub.add_parser("bijection", help="run both bijections on a map")
    src = bij.add_mutually_exclusive_group(required=True)
    src.add_argument("--demo", choices=("path3",))
    src.add_argument("--input")
    bij.add_argument("--round-trip", action="store_true")
    common(bij)

    orc = sub.add_parser("oracle", help="brute-force weights per area")
    orc.add_argument("--edges", type=int, default=4)
    common(orc)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            order=getattr(args, "order", None),
            smax=getattr(args, "smax", None),
            N=getattr(args, "n", None),
            E_max=getattr(args, "edges", 5),
            mu=getattr(args, "mu", [0.0]),
            grid=getattr(args, "grid", "default"),
            backend=args.backend,
            variant=getattr(args, "variant", "all"),
            format=args.format,
            output=args.output,
            target=getattr(args, "target", None),
        )
        if args.command == "law":
            return cmd_law(cfg)
        if args.command == "mgf":
            return cmd_mgf(cfg)
        if args.command == "verify":
            return cmd_verify(cfg)
        if args.command == "oracle":
            return cmd_oracle(cfg)
        return cmd_bijection(cfg, args.demo, args.input, args.round_trip)
    except (InputError, maps.MapDomainError, recursions.ConfigurationError,
            scaling.ScalingDomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
