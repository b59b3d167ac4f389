"""Command line front end.

Reads symbol files, orchestrates the exact and asymptotic computations,
and emits machine-readable tables.  Exit codes: 0 success, 1 usage or
validation problem, 2 a numerical check failed.  Output is deterministic
for a fixed configuration and seed: floats are printed as decimal
strings at full working precision next to a rounded display column.
"""

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

import numpy as np
from mpmath import mp, mpf
from mpmath.libmp import repr_dps

from . import asym
from .ensembles import (check_identities, exact_average_opuc, exact_average_th,
                        gap_generating, occupancy_distribution)
from .mc import counting_stats, sample_ensemble
from .moments import compute_moments
from .opuc import szego_recursion
from .special import abs2_barnes_g, constants, log_barnes_g
from .symbols import (EnsembleLabel, FHSymbol, GapSymbol, SymbolError,
                      ZERO_POTENTIAL, load_symbol)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2

# Fixed threshold for agreement of the two exact routes; failures are a
# numerical-check condition, not a tolerance knob.
ROUTE_TOL = mpf("1e-9")

COMMANDS = ("moments", "compare", "identities", "gap", "occupancy", "mc",
            "constants")
GRID_COMMANDS = ("moments", "compare", "identities", "gap", "occupancy", "mc")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    symbol_path: str = None
    n_list: tuple = ()
    label: EnsembleLabel = None
    precision_bits: int = 256
    tol: object = None
    seed: int = 0
    output: str = "csv"
    e_const_variant: str = "as_printed"
    t0: object = None
    s: object = None
    samples: int = 100
    envelope: bool = False
    out: str = None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _make_parser():
    p = _Parser(prog="orthank", add_help=True)
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", help="JSON config file; flags override its keys")
    p.add_argument("--symbol", help="symbol JSON file")
    p.add_argument("--n", help="comma separated list of orders, e.g. 8,16,32")
    p.add_argument("--label", help="ensemble label: 0+, 2-, 1+ or 1-")
    p.add_argument("--precision-bits", type=int, dest="precision_bits")
    p.add_argument("--tol", help="moment quadrature tolerance")
    p.add_argument("--seed", type=int)
    p.add_argument("--output", choices=("csv", "json"))
    p.add_argument("--e-const-variant", choices=("as_printed", "alpha_end"),
                   dest="e_const_variant")
    p.add_argument("--t0", help="arc angle; accepts decimals or forms like pi/2")
    p.add_argument("--s", help="thinning parameter in [0,1]")
    p.add_argument("--samples", type=int)
    p.add_argument("--envelope", action="store_true", default=None,
                   help="compare against the bounded-ratio envelope predictions")
    p.add_argument("--out", help="write output to this file instead of stdout")
    return p


def _parse_real(value, what):
    if isinstance(value, (int, float)):
        return mpf(value)
    text = str(value).strip().lower().replace(" ", "").replace("*", "")
    try:
        if "pi" in text:
            head, _, tail = text.partition("pi")
            if head in ("", "+", "-"):
                head += "1"
            out = mpf(head) * mp.pi
            if tail.startswith("/"):
                out /= mpf(tail[1:])
            elif tail:
                raise ValueError(tail)
            return out
        return mpf(text)
    except (ValueError, TypeError):
        raise UsageError("cannot parse %s value %r" % (what, value))


def _parse_n_list(value):
    if value is None:
        return ()
    if isinstance(value, (list, tuple)):
        items = value
    else:
        items = [piece for piece in str(value).split(",") if piece.strip()]
    try:
        ns = tuple(int(x) for x in items)
    except (ValueError, TypeError):
        raise UsageError("cannot parse order list %r" % (value,))
    if any(n < 1 for n in ns):
        raise UsageError("orders must be positive")
    return ns


def _build_config(args):
    base = {}
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                base = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError("cannot read config %s: %s" % (args.config, exc))
        if not isinstance(base, dict):
            raise UsageError("config file must hold a JSON object")

    def pick(flag, key, default=None):
        if flag is not None:
            return flag
        return base.get(key, default)

    cfg = RunConfig(command=args.command)
    cfg.symbol_path = pick(args.symbol, "symbol")
    cfg.n_list = _parse_n_list(pick(args.n, "n"))
    label = pick(args.label, "label")
    if label is not None:
        try:
            cfg.label = EnsembleLabel.parse(label)
        except SymbolError as exc:
            raise UsageError(str(exc))
    cfg.precision_bits = int(pick(args.precision_bits, "precision_bits", 256))
    if cfg.precision_bits < 53:
        raise UsageError("precision_bits must be at least 53")
    with mp.workprec(cfg.precision_bits):
        tol = pick(args.tol, "tol")
        cfg.tol = _parse_real(tol, "tol") if tol is not None else None
        t0 = pick(args.t0, "t0")
        cfg.t0 = _parse_real(t0, "t0") if t0 is not None else None
        s = pick(args.s, "s")
        cfg.s = _parse_real(s, "s") if s is not None else None
    cfg.seed = int(pick(args.seed, "seed", 0))
    cfg.output = pick(args.output, "output", "csv")
    if cfg.output not in ("csv", "json"):
        raise UsageError("output must be csv or json")
    cfg.e_const_variant = pick(args.e_const_variant, "e_const_variant",
                               "as_printed")
    if cfg.e_const_variant not in ("as_printed", "alpha_end"):
        raise UsageError("e_const_variant must be as_printed or alpha_end")
    cfg.samples = int(pick(args.samples, "samples", 100))
    cfg.envelope = bool(pick(args.envelope, "envelope", False))
    cfg.out = pick(args.out, "out")
    if cfg.command in GRID_COMMANDS and not cfg.n_list:
        raise UsageError("command %r needs --n" % cfg.command)
    return cfg


def _full(x):
    return mp.nstr(mpf(x), repr_dps(mp.prec))


def _disp(x):
    return mp.nstr(mpf(x), 10)


def _emit(columns, rows, cfg):
    if cfg.output == "json":
        text = json.dumps([{c: row[c] for c in columns} for row in rows],
                          indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([row[c] for c in columns])
        text = buf.getvalue()
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _require(cfg, **fields):
    for name, ok in fields.items():
        if not ok:
            raise UsageError("command %r needs --%s" % (cfg.command, name))


def _load_symbol(cfg):
    _require(cfg, symbol=cfg.symbol_path is not None)
    return load_symbol(cfg.symbol_path, cfg.precision_bits)


def _potential_for_gap(cfg):
    """V for the gap commands; t0 and s default from a gap symbol file."""
    t0, s = cfg.t0, cfg.s
    V = ZERO_POTENTIAL
    if cfg.symbol_path is not None:
        sym = load_symbol(cfg.symbol_path, cfg.precision_bits)
        if isinstance(sym, GapSymbol):
            V = sym.potential
            t0 = sym.t0 if t0 is None else t0
            s = sym.s if s is None else s
        elif isinstance(sym, FHSymbol) and sym.m == 0 and sym.alpha0 == 0 \
                and sym.alpha_end == 0:
            V = sym.potential
        else:
            raise UsageError(
                "gap commands accept a gap symbol or a plain potential"
            )
    if t0 is None:
        raise UsageError("command %r needs --t0" % cfg.command)
    return V, t0, (mpf(0) if s is None else s)


def cmd_moments(cfg):
    sym = _load_symbol(cfg)
    M = 2 * max(cfg.n_list)
    ms = compute_moments(sym, M, tol=cfg.tol, precision_bits=cfg.precision_bits)
    rows = [
        {"m": str(m), "value": _full(ms[m]), "display": _disp(ms[m])}
        for m in range(M + 1)
    ]
    if cfg.out is None:
        ext = ".moments.json" if cfg.output == "json" else ".moments.csv"
        cfg.out = cfg.symbol_path + ext
        sys.stderr.write("wrote %d moments to %s\n" % (M + 1, cfg.out))
    _emit(("m", "value", "display"), rows, cfg)
    return EXIT_OK


def cmd_identities(cfg):
    sym = _load_symbol(cfg)
    M = 2 * max(cfg.n_list) + 2
    ms = compute_moments(sym, M, tol=cfg.tol, precision_bits=cfg.precision_bits)
    rows = []
    worst = mpf(0)
    for n in cfg.n_list:
        report = check_identities(ms, n, precision_bits=cfg.precision_bits)
        for name in sorted(report.residuals):
            resid = report.residuals[name]
            worst = max(worst, resid)
            rows.append({
                "n": str(n),
                "identity": name,
                "residual": _full(resid),
                "display": _disp(resid),
            })
    _emit(("n", "identity", "residual", "display"), rows, cfg)
    return EXIT_OK if worst < ROUTE_TOL else EXIT_NUMERICAL


def cmd_gap(cfg):
    _require(cfg, label=cfg.label is not None)
    V, t0, s = _potential_for_gap(cfg)
    rows = []
    for n in cfg.n_list:
        avg = gap_generating(cfg.label, n, t0, s, V=V,
                             precision_bits=cfg.precision_bits, tol=cfg.tol)
        rows.append({
            "label": str(cfg.label),
            "n": str(n),
            "t0": _full(t0),
            "s": _full(s),
            "log_exact": _full(avg.log_value.log_abs),
            "route": avg.route,
            "display": _disp(avg.log_value.log_abs),
        })
    _emit(("label", "n", "t0", "s", "log_exact", "route", "display"), rows, cfg)
    return EXIT_OK


def cmd_occupancy(cfg):
    _require(cfg, label=cfg.label is not None)
    V, t0, _ = _potential_for_gap(cfg)
    if V.coeffs:
        raise UsageError("occupancy is defined for the plain arc symbol only")
    rows = []
    for n in cfg.n_list:
        probs = occupancy_distribution(cfg.label, n, t0,
                                       precision_bits=cfg.precision_bits)
        for m, prob in enumerate(probs):
            rows.append({
                "label": str(cfg.label),
                "n": str(n),
                "t0": _full(t0),
                "m": str(m),
                "probability": _full(prob),
                "display": _disp(prob),
            })
    _emit(("label", "n", "t0", "m", "probability", "display"), rows, cfg)
    return EXIT_OK


def cmd_mc(cfg):
    _require(cfg, label=cfg.label is not None)
    t0 = cfg.t0 if cfg.t0 is not None else mp.pi / 2
    rng = np.random.default_rng(cfg.seed)
    rows = []
    for n in cfg.n_list:
        for _ in range(cfg.samples):
            sample = sample_ensemble(cfg.label, n, rng)
            stats = counting_stats(sample)
            rows.append({
                "label": str(cfg.label),
                "n": str(n),
                "seed": str(cfg.seed),
                "max_angle_dev": "%.17g" % stats.max_angle_dev,
                "sup_count_dev": "%.17g" % stats.sup_count_dev,
                "gap_indicator": "1" if sample.angles[0] >= float(t0) else "0",
            })
    _emit(("label", "n", "seed", "max_angle_dev", "sup_count_dev",
           "gap_indicator"), rows, cfg)
    return EXIT_OK


def cmd_constants(cfg):
    cs = constants()
    spots = [
        ("zeta_prime_minus_one", cs.zeta_prime_m1,
         "1/12 minus the log of the Glaisher constant"),
        ("log_glaisher", cs.log_glaisher,
         "library Glaisher constant, logarithm"),
        ("log_barnes_g_5_5", log_barnes_g(mpf("5.5")),
         "asymptotic series after recurrence shift"),
        ("abs2_barnes_g_jump_half", abs2_barnes_g(mpf(0), mpf("0.5")),
         "squared modulus of Barnes G at 1 + i/2"),
    ]
    rows = [
        {"name": name, "value": _full(value), "display": _disp(value),
         "note": note}
        for name, value, note in spots
    ]
    _emit(("name", "value", "display", "note"), rows, cfg)
    return EXIT_OK


def _predict(sym, n, label, cfg):
    if isinstance(sym, GapSymbol):
        return asym.orth_gap_asym(sym, n, label)
    if cfg.envelope:
        return asym.orth_fh_envelope(sym, n, label)
    return asym.orth_fh_asym(sym, n, label, variant=cfg.e_const_variant)


def cmd_compare(cfg):
    _require(cfg, label=cfg.label is not None)
    sym = _load_symbol(cfg)
    n_max = max(cfg.n_list)
    ms = compute_moments(sym, 2 * n_max, tol=cfg.tol,
                         precision_bits=cfg.precision_bits)
    state = szego_recursion(ms, 2 * n_max, cfg.precision_bits)
    rows = []
    deviations = []
    for n in sorted(cfg.n_list):
        th = exact_average_th(ms, n, cfg.label)
        op = exact_average_opuc(ms, n, cfg.label, state)
        route_gap = abs(mp.expm1(th.log_value.log_abs - op.log_value.log_abs))
        if route_gap > ROUTE_TOL:
            sys.stderr.write(
                "route disagreement at n=%d: relative %s\n"
                % (n, mp.nstr(route_gap, 6))
            )
            return EXIT_NUMERICAL
        pred = _predict(sym, n, cfg.label, cfg)
        ratio = mp.exp(th.log_value.log_abs - pred.log_value)
        if not pred.envelope:
            deviations.append(abs(ratio - 1))
        rows.append({
            "label": str(cfg.label),
            "n": str(n),
            "log_exact_th": _full(th.log_value.log_abs),
            "log_exact_opuc": _full(op.log_value.log_abs),
            "log_pred": _full(pred.log_value),
            "ratio": _full(ratio),
            "ratio_display": _disp(ratio),
            "error_order": pred.error_order,
            "envelope": "1" if pred.envelope else "0",
        })
    _emit(("label", "n", "log_exact_th", "log_exact_opuc", "log_pred",
           "ratio", "ratio_display", "error_order", "envelope"), rows, cfg)
    for prev, cur in zip(deviations, deviations[1:]):
        if cur > prev * mpf("1.2") + mpf("1e-12"):
            return EXIT_NUMERICAL
    return EXIT_OK


_DISPATCH = {
    "moments": cmd_moments,
    "compare": cmd_compare,
    "identities": cmd_identities,
    "gap": cmd_gap,
    "occupancy": cmd_occupancy,
    "mc": cmd_mc,
    "constants": cmd_constants,
}


def run(argv=None):
    try:
        args = _make_parser().parse_args(argv)
        cfg = _build_config(args)
    except UsageError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_USAGE
    try:
        with mp.workprec(cfg.precision_bits):
            return _DISPATCH[cfg.command](cfg)
    except UsageError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_USAGE
    except (SymbolError, OSError, json.JSONDecodeError, ValueError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_USAGE
    except ArithmeticError as exc:
        sys.stderr.write("numerical check failed: %s\n" % exc)
        return EXIT_NUMERICAL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
