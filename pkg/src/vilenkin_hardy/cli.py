"""Command line: constant lookup, verification runs and parameter sweeps.

Exit codes: 0 success, 2 invalid configuration (nothing is written), 3 a
verification verdict failed (the manifest is still written).
"""

import argparse
import itertools
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import constants as K
from ._numeric import close, default_precision, precision, to_real
from .errors import VilenkinHardyError
from .geometry import ShellGeometry
from .groups.models import make_model
from .reporting import RunManifest, render

EXIT_OK, EXIT_CONFIG, EXIT_FAILED = 0, 2, 3

THEOREM_NAMES = {
    "hardy-strong": K.HARDY_STRONG, "adjoint-strong": K.ADJOINT_STRONG, "hardy-weak": K.HARDY_WEAK,
    "hardy-weak-l1": K.HARDY_WEAK_L1, "adjoint-weak": K.ADJOINT_WEAK, "adjoint-weak-l1": K.ADJOINT_WEAK_L1,
    "hlp": K.HLP,
}
SHARPNESS_CHECKS = {
    "hardy-sharpness": K.HARDY_STRONG, "adjoint-sharpness": K.ADJOINT_STRONG, "hlp-sharpness": K.HLP,
    "hardy-weak": K.HARDY_WEAK, "adjoint-weak": K.ADJOINT_WEAK, "hardy-weak-l1": K.HARDY_WEAK_L1,
    "adjoint-weak-l1": K.ADJOINT_WEAK_L1,
}
MC_CHECKS = {"mc-kernel": "equal_shell_kernel", "mc-convolution": "radial_convolution_value",
             "mc-riesz": "riesz_value"}
OTHER_CHECKS = ("weighted", "weighted-necessity", "functional", "radialization", "laplacian-desk")
CHECKS = tuple(SHARPNESS_CHECKS) + tuple(MC_CHECKS) + OTHER_CHECKS
PARAM_NAMES = ("r", "s", "alpha", "beta", "delta", "a", "b", "lam", "tau", "theta")


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    """Everything a run depends on; validated before anything executes."""

    subcommand: str
    name: str = ""
    geometry: dict = field(default_factory=dict)
    model: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)
    precision: int = 200
    seed: int = 0
    format: str = "json"
    output: str = None


# ------------------------------------------------------------ parsing


def _rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _add_common(p):
    p.add_argument("--precision", type=int, default=None, help="binary precision in bits (default: env or 200)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")
    p.add_argument("--seed", type=int, default=0)


def _add_geometry(p):
    p.add_argument("--base", type=_rational, default=None, help="shell ratio base (kappa or q)")
    p.add_argument("--q", type=_rational, default=None, help="residue field size; alias of --base")
    p.add_argument("--Q", type=int, default=1, help="homogeneous dimension")


def _add_params(p):
    for n in PARAM_NAMES:
        p.add_argument(f"--{n}", type=_rational, default=None)


def _add_model(p):
    p.add_argument("--model", default=None, help="qp, heisenberg, engel or unitriangular")
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--d", type=int, default=None, help="dimension parameter (d for Q_p^d and H_d, m for T_m)")


def build_parser():
    ap = argparse.ArgumentParser(prog="vilenkin-hardy", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="subcommand", required=True)

    c = sub.add_parser("constants", help="evaluate a closed-form constant")
    c.add_argument("--theorem", required=True, choices=sorted(THEOREM_NAMES))
    _add_geometry(c)
    _add_params(c)
    _add_common(c)

    v = sub.add_parser("verify", help="run a verification and write a manifest")
    v.add_argument("name", choices=CHECKS)
    _add_geometry(v)
    _add_params(v)
    _add_model(v)
    v.add_argument("--n-max", type=int, default=20)
    v.add_argument("--direction", choices=("ball", "complement", "compact"), default="ball")
    v.add_argument("--unbalanced", action="store_true", help="shift alpha off the balance line (necessity run)")
    v.add_argument("--alpha-shift", type=_rational, default=Fraction(1, 2))
    v.add_argument("--kind", default="hls", help="functional inequality kind")
    v.add_argument("--form", choices=("riesz", "vt"), default="riesz")
    v.add_argument("--samples", type=int, default=100_000)
    v.add_argument("--k", type=int, default=0, help="shell index for Monte-Carlo checks")
    v.add_argument("--members", type=int, default=None)
    _add_common(v)

    s = sub.add_parser("sweep", help="tabulate a constant over a parameter grid")
    s.add_argument("--theorem", required=True, choices=sorted(THEOREM_NAMES))
    _add_geometry(s)
    _add_params(s)
    s.add_argument("--grid", action="append", default=[],
                   help="NAME=v1,v2,... or NAME=lo:hi:n (n evenly spaced points); repeatable, product order")
    s.add_argument("--check", choices=("none", "reparam"), default="none",
                   help="reparam: compare each row with the base=q^Q, Q=1 evaluation")
    s.add_argument("--jobs", type=int, default=1)
    _add_common(s)
    return ap


def parse_grid(specs):
    """[(name, [values])] from NAME=v1,v2 or NAME=lo:hi:n."""
    out = []
    for spec in specs:
        if "=" not in spec:
            raise ConfigError(f"grid entry {spec!r} is not NAME=VALUES")
        name, _, rhs = spec.partition("=")
        name = name.strip()
        if name not in PARAM_NAMES + ("base", "q", "Q"):
            raise ConfigError(f"unknown grid parameter {name!r}")
        rhs = rhs.strip()
        try:
            if not rhs:
                vals = []
            elif rhs.count(":") == 2:
                lo, hi, n = rhs.split(":")
                lo, hi, n = Fraction(lo), Fraction(hi), int(n)
                if n < 0:
                    raise ValueError
                vals = [lo] if n == 1 else [lo + (hi - lo) * i / (n - 1) for i in range(n)]
            else:
                vals = [Fraction(v) for v in rhs.split(",")]
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"cannot parse grid values in {spec!r}")
        out.append((name, vals))
    return out


def _geometry_spec(ns):
    base = ns.base if ns.base is not None else ns.q
    if ns.base is not None and ns.q is not None and ns.base != ns.q:
        raise ConfigError("--base and --q disagree")
    return {"base": base if base is not None else Fraction(2), "Q": ns.Q}


def _params(ns):
    return {n: getattr(ns, n) for n in PARAM_NAMES if getattr(ns, n) is not None}


def config_from_args(ns):
    bits = ns.precision if ns.precision is not None else default_precision()
    if bits < 53:
        raise ConfigError("--precision must be at least 53 bits")
    cfg = RunConfig(subcommand=ns.subcommand, precision=bits, seed=ns.seed, format=ns.format, output=ns.output)
    if ns.subcommand in ("constants", "sweep"):
        cfg.name = ns.theorem
        cfg.geometry = _geometry_spec(ns)
        cfg.params = _params(ns)
        if ns.subcommand == "sweep":
            cfg.options = {"grid": ns.grid, "check": ns.check, "jobs": ns.jobs}
        return cfg
    cfg.name = ns.name
    cfg.geometry = _geometry_spec(ns)
    cfg.params = _params(ns)
    cfg.options = {"n_max": ns.n_max, "direction": ns.direction, "unbalanced": ns.unbalanced,
                   "alpha_shift": ns.alpha_shift, "kind": ns.kind, "form": ns.form, "samples": ns.samples,
                   "k": ns.k, "members": ns.members}
    if ns.name in MC_CHECKS or ns.name in ("radialization", "laplacian-desk"):
        defaults = {"mc": ("heisenberg", 3), "radialization": ("qp", 2), "laplacian-desk": ("heisenberg", 3)}
        kind, p = defaults["mc" if ns.name in MC_CHECKS else ns.name]
        d = ns.d if ns.d is not None else (2 if ns.name == "radialization" and ns.model in (None, "qp") else None)
        cfg.model = {"kind": ns.model or kind, "p": ns.p or p, "d": d}
    return cfg


# ------------------------------------------------------------ planning (validation happens here)


def _geometry(cfg):
    return ShellGeometry(to_real(cfg.geometry["base"]), cfg.geometry["Q"])


def _with_defaults(params, **defaults):
    out = dict(defaults)
    out.update(params)
    return out


def plan_constants(cfg):
    geom = _geometry(cfg)
    theorem = THEOREM_NAMES[cfg.name]
    params = _with_defaults(cfg.params, delta=0)
    K.evaluate(theorem, geom, params)  # raises on a violated hypothesis
    return lambda: [K.evaluate(theorem, geom, params)]


def _model(cfg):
    m = cfg.model
    return make_model(m["kind"], m["p"], m["d"])


def plan_verify(cfg):
    """Validate the configuration and return a thunk producing the reports."""
    from . import verify as V
    from .verify import weighted as W

    name, opt = cfg.name, cfg.options
    if name in SHARPNESS_CHECKS:
        geom = _geometry(cfg)
        theorem = SHARPNESS_CHECKS[name]
        r = cfg.params.get("r", Fraction(2))
        params = _with_defaults(cfg.params, r=r, s=r, alpha=0, beta=0, delta=0)
        needed = set(K.parameter_names(theorem))
        params = {k: v for k, v in params.items() if k in needed}
        K.evaluate(theorem, geom, params)
        return lambda: [V.sharpness_study(theorem, geom, params, opt["n_max"])]
    if name in ("weighted", "weighted-necessity"):
        geom = _geometry(cfg)
        d = opt["direction"]
        defaults = {"ball": 0, "compact": Fraction(-1, 2), "complement": 2 * geom.Q}
        beta = to_real(cfg.params.get("beta", defaults[d]))
        r = to_real(cfg.params.get("r", 2))
        s = to_real(cfg.params.get("s", r))
        alpha = cfg.params.get("alpha")
        if alpha is None:
            alpha = W.balanced_alpha(geom, beta, r, s)
            if name == "weighted-necessity":
                if not opt["unbalanced"]:
                    raise ConfigError("weighted-necessity needs --unbalanced or an explicit unbalanced --alpha")
                alpha = alpha + to_real(opt["alpha_shift"])
        alpha = to_real(alpha)
        mode = "necessity" if name == "weighted-necessity" else "sufficiency"
        W.check_hypotheses(geom, d, alpha, beta, r, s, balanced=(mode == "sufficiency"))
        if mode == "necessity" and W.balance_defect(geom, alpha, beta, r, s) == 0:
            raise ConfigError("necessity run needs unbalanced parameters")
        return lambda: [V.weighted_inequality_check(d, geom, alpha, beta, r, s, mode=mode)]
    if name == "functional":
        from .verify import functional as F

        geom = _geometry(cfg)
        kind = opt["kind"].replace("-", "_")
        params = dict(cfg.params)
        if kind == "hardy_sobolev":
            params["form"] = opt["form"]
        F.validate(kind, geom, params)
        return lambda: [V.functional_inequality_check(kind, geom, params)]
    model = _model(cfg)
    if name in MC_CHECKS:
        from .verify.montecarlo import MIN_SAMPLES

        if opt["samples"] < MIN_SAMPLES:
            raise ConfigError(f"--samples must be >= {MIN_SAMPLES}")
        if opt["k"] < 0:
            raise ConfigError("--k must be >= 0")
        return lambda: [V.mc_cross_check(model, MC_CHECKS[name], opt["k"], opt["samples"], cfg.seed)]
    if name == "radialization":
        r = cfg.params.get("r", 2)
        alpha = cfg.params.get("alpha", 0)
        delta = cfg.params.get("delta", 0)
        K.hardy_strong_constant(model.geometry(), to_real(r), to_real(alpha), to_real(delta))
        members = opt["members"] or 100
        return lambda: [V.radialization_check(model, r, alpha, delta, members, cfg.seed)]
    # laplacian-desk
    from .verify import functional as F

    geom = model.geometry()
    params = _with_defaults(cfg.params, a=1, b=1, r=2, s=3)
    F.validate("hardy_sobolev", geom, {**params, "form": "vt"})
    members = opt["members"] or 4
    return lambda: [V.laplacian_desk_check(model, params["a"], params["b"], params["r"], params["s"],
                                           members, cfg.seed)]


def _sweep_row(theorem, geom_spec, params, check, index, keys):
    row = {"row": index, "theorem": theorem}
    for k in keys:
        row[k] = geom_spec["base"] if k in ("base", "q") else params.get(k, geom_spec.get(k))
    try:
        geom = ShellGeometry(to_real(geom_spec["base"]), int(geom_spec["Q"]))
        res = K.evaluate(theorem, geom, params)
        row["value"] = res.value
        row["ok"] = True
        row["error"] = ""
        if check == "reparam":
            g2, p2 = K.graded_to_vilenkin(theorem, to_real(geom_spec["base"]), int(geom_spec["Q"]), params)
            row["check"] = bool(close(res.value, K.evaluate(theorem, g2, p2).value))
            row["ok"] = row["check"]
        else:
            row["check"] = ""
    except VilenkinHardyError as e:
        row.update(value=None, ok=False, check="", error=str(e))
    return row


def plan_sweep(cfg):
    theorem = THEOREM_NAMES[cfg.name]
    grid = parse_grid(cfg.options["grid"])
    keys = [n for n, _ in grid]
    if len(set(keys)) != len(keys):
        raise ConfigError("a grid parameter is repeated")
    _geometry(cfg)
    base_params = _with_defaults(cfg.params, delta=0)
    rows = []
    combos = itertools.product(*[vals for _, vals in grid]) if grid else iter(())
    for i, combo in enumerate(combos):
        params = dict(base_params)
        geom_spec = dict(cfg.geometry)
        for k, v in zip(keys, combo):
            if k in ("base", "q"):
                geom_spec["base"] = v
            elif k == "Q":
                if v.denominator != 1:
                    raise ConfigError("Q must be an integer")
                geom_spec["Q"] = int(v)
            else:
                params[k] = v
        rows.append((geom_spec, params, i))
    cfg.options["grid_keys"] = keys
    check, jobs, bits = cfg.options["check"], max(1, int(cfg.options["jobs"])), cfg.precision

    def one(item):
        geom_spec, params, i = item
        with precision(bits):  # worker threads start from gmpy2's default context
            return _sweep_row(theorem, geom_spec, params, check, i, keys)

    def run():
        if jobs == 1:
            return [one(it) for it in rows]
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(one, rows))

    return run


# ------------------------------------------------------------ main


def _emit(text, output):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(cfg):
    """Validate, execute and serialize; returns the exit code."""
    planners = {"constants": plan_constants, "verify": plan_verify, "sweep": plan_sweep}
    with precision(cfg.precision):
        try:
            thunk = planners[cfg.subcommand](cfg)
        except (ConfigError, VilenkinHardyError, ValueError) as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_CONFIG
        results = thunk()
        if cfg.subcommand == "verify":
            passed = all(r.passed for r in results)
        elif cfg.subcommand == "sweep":
            passed = True  # per-row violations are data, not failures
        else:
            passed = True
        echo = asdict(cfg)
        if cfg.subcommand == "sweep":
            echo["grid_keys"] = cfg.options["grid_keys"]
        manifest = RunManifest.build(echo, results, passed, kind=cfg.subcommand)
        _emit(render(manifest, cfg.format), cfg.output)
        if cfg.subcommand == "verify":
            for r in results:
                print(r.summary(), file=sys.stderr)
    return EXIT_OK if passed else EXIT_FAILED


def main(argv=None):
    ap = build_parser()
    ns = ap.parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
