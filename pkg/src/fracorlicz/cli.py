"""Command-line front end: ``fracorlicz <subcommand> ...``."""

from __future__ import annotations

import argparse
import dataclasses
import glob
import json
import math
import os
import sys

import numpy as np

from .experiments import EXPERIMENTS, ExperimentError, _clean, run_experiment
from .functions import luxemburg_norm, read_csv
from .hardy import (
    StepFunction,
    intersection_target,
    kernel_conjugate_norm,
    linf_target,
    orlicz_target_norm,
    reduction_constant_estimate,
    spike_trials,
)
from .regime import classify_growth
from .seminorm import ModularConfig, _gradient, fractional_seminorm, gagliardo_modular
from .targets import build_targets, orlicz_lorentz_target, orlicz_target
from .young import SpaceParams, YoungFunction, conjugate, tabulate


def _load_json(text_or_path):
    if text_or_path is None:
        return None
    if os.path.exists(text_or_path):
        with open(text_or_path) as fh:
            return json.load(fh)
    return json.loads(text_or_path)


def _young(args):
    if args.young is None:
        raise SystemExit("--young is required")
    return YoungFunction.from_dict(_load_json(args.young))


def _space(args):
    return SpaceParams(args.n, args.s)


def _emit(args, name, doc, tables=None):
    text = json.dumps(_clean(doc), sort_keys=True, indent=2) + "\n"
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, f"{name}.json"), "w") as fh:
            fh.write(text)
        for tname, (header, rows) in (tables or {}).items():
            np.savetxt(os.path.join(args.out, f"{name}-{tname}.csv"), np.asarray(rows, float),
                       delimiter=",", header=",".join(header), comments="", fmt="%.17g")
    sys.stdout.write(text)
    return 0


def _sampled(A: YoungFunction, points=241):
    t = np.logspace(-6, 6, points)
    return (["t", "value"], np.column_stack([t, A(t)]))


# ---------------------------------------------------------------------------
# subcommands


def cmd_classify(args):
    return _emit(args, "classify", classify_growth(_young(args), _space(args)).to_dict())


def cmd_conjugate(args):
    At = conjugate(_young(args))
    return _emit(args, "conjugate", At.to_dict(), {"sampled": _sampled(tabulate(At))})


def cmd_target_orlicz(args):
    A_ns = orlicz_target(_young(args), _space(args))
    return _emit(args, "target-orlicz", A_ns.to_dict(), {"sampled": _sampled(A_ns)})


def cmd_target_ri(args):
    A_hat = orlicz_lorentz_target(_young(args), _space(args))
    return _emit(args, "target-ri", A_hat.to_dict(), {"sampled": _sampled(A_hat)})


def cmd_luxemburg(args):
    u = read_csv(args.function)
    return _emit(args, "luxemburg", {"norm": luxemburg_norm(_young(args), u)})


def cmd_seminorm(args):
    cfg = ModularConfig.from_dict(_load_json(args.config) or {})
    if args.seed is not None:
        cfg = dataclasses.replace(cfg, seed=args.seed)
    if args.jobs is not None:
        cfg = dataclasses.replace(cfg, jobs=args.jobs)
    p, A, u = _space(args), _young(args), read_csv(args.function)
    w = _gradient(u) if p.int_part == 1 else u
    res = gagliardo_modular(w, p.frac_part, A, 1.0, cfg)
    doc = {"modular": res.value, "method": res.method, "error_estimate": res.stderr,
           "seminorm": fractional_seminorm(u, p, A, cfg)}
    return _emit(args, "seminorm", doc)


def _trials(args, A):
    if args.trials:
        files = sorted(glob.glob(os.path.join(args.trials, "*.csv")))
        if not files:
            raise SystemExit(f"no CSV trials in {args.trials}")
        return [StepFunction.coerce(read_csv(f)) for f in files]
    # default family: indicators at several scales and unit-norm spikes
    ind = [StepFunction.indicator(r) for r in np.logspace(-4, 4, 17)]
    return ind + spike_trials(A, np.logspace(0, 8, 17))


def cmd_hardy_check(args):
    p, A = _space(args), _young(args)
    target = args.target
    if target == "linf":
        norm = linf_target()
    elif target.startswith("orlicz:"):
        norm = orlicz_target_norm(YoungFunction.from_dict(_load_json(target[len("orlicz:"):])))
    elif target == "intersection":
        norm = intersection_target(build_targets(A, p).A_hat, p)
    else:
        raise SystemExit("--target must be linf, orlicz:<json> or intersection")
    est = reduction_constant_estimate(A, p, norm, _trials(args, A))
    upper = 2 * kernel_conjugate_norm(A, p).value if target == "linf" else math.nan
    doc = {"estimate": est["estimate"], "trials_used": est["trials_used"], "upper_bound": upper,
           "target": target}
    return _emit(args, "hardy-check", doc)


def cmd_verify(args):
    cfg = _load_json(args.config) or {}
    if args.seed is not None:
        cfg["seed"] = args.seed
    if args.jobs is not None:
        cfg["jobs"] = args.jobs
    names = sorted(EXPERIMENTS) if args.experiment == "all" else [args.experiment]
    ok = True
    for name in names:
        rep = run_experiment(name, cfg.get(name, cfg) if args.experiment == "all" else cfg)
        if args.out:
            rep.write(args.out)
        failed = [a.name for a in rep.assertions if not a.passed]
        status = "PASS" if rep.passed else "FAIL"
        print(f"{status} {name}: {len(rep.assertions) - len(failed)}/{len(rep.assertions)} assertions")
        for f in failed:
            print(f"  failed: {f}")
        ok &= rep.passed
    return 0 if ok else 1


# ---------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file or inline JSON")
    common.add_argument("--out", help="directory for JSON/CSV outputs")
    common.add_argument("--jobs", type=int, default=None)
    common.add_argument("--seed", type=int, default=None)

    young = argparse.ArgumentParser(add_help=False)
    young.add_argument("--young", help="Young-function JSON (file or inline)")

    space = argparse.ArgumentParser(add_help=False)
    space.add_argument("--n", type=int, default=1)
    space.add_argument("--s", type=float, default=0.5)

    ap = argparse.ArgumentParser(prog="fracorlicz", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[common, young, space]).set_defaults(fn=cmd_classify)
    sub.add_parser("conjugate", parents=[common, young]).set_defaults(fn=cmd_conjugate)
    sub.add_parser("target-orlicz", parents=[common, young, space]).set_defaults(fn=cmd_target_orlicz)
    sub.add_parser("target-ri", parents=[common, young, space]).set_defaults(fn=cmd_target_ri)
    lx = sub.add_parser("luxemburg", parents=[common, young])
    lx.add_argument("--function", required=True, help="sampled-function CSV")
    lx.set_defaults(fn=cmd_luxemburg)
    sn = sub.add_parser("seminorm", parents=[common, young, space])
    sn.add_argument("--function", required=True, help="sampled-function CSV")
    sn.set_defaults(fn=cmd_seminorm)
    hc = sub.add_parser("hardy-check", parents=[common, young, space])
    hc.add_argument("--target", default="linf")
    hc.add_argument("--trials", help="directory of half-line CSV trials")
    hc.set_defaults(fn=cmd_hardy_check)
    vf = sub.add_parser("verify", parents=[common])
    vf.add_argument("--experiment", required=True, choices=sorted(EXPERIMENTS) + ["all"])
    vf.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, KeyError, TypeError, ExperimentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
