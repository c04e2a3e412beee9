"""Command-line front end: build, verify, analyze, certify, export.

Exit codes: 0 all checks pass, 1 a check failed, 2 invalid configuration,
3 unsupported (family, l) combination or weight outside the classification
range (the message names the violated constraint).
"""

import argparse
import json
import sys
from dataclasses import dataclass

from . import analysis, tower
from .bases import ShapeError
from .build import (ConstraintError, ModuleSpec, build, from_json_dict,
                    to_json_dict)
from .cyclotomic import InvalidOrderError, UnsupportedDenominatorError
from .oracle import OracleUnavailableError, closed_form_generators, generators_equal

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_UNSUPPORTED = 3


@dataclass
class JobConfig:
    command: str
    family: str = None
    n: int = 0
    k: int = 1
    lam: tuple = ()
    l: int = 3
    out: str = "-"
    infile: str = None
    seed: int = 0
    threads: int = None
    d_variant: str = "standard"
    oracle: bool = True
    timings: bool = False
    level: int = None

    def spec(self):
        return ModuleSpec(self.family, self.n, self.k, self.lam, self.l,
                          d_variant=self.d_variant)


def _parse_lambda(text):
    if text is None or text == "":
        return ()
    return tuple(int(x) for x in text.split(","))


def _add_spec_args(p, need_lambda=True):
    p.add_argument("--family", required=True, choices=["A", "B", "C", "D", "G"])
    p.add_argument("--rank", "-n", type=int, required=True, dest="n")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--lambda", dest="lam", default="" if not need_lambda else None,
                   required=need_lambda, help="comma-separated integer weights")
    p.add_argument("--l", type=int, required=True, help="odd root-of-unity order")
    p.add_argument("--d-variant", default="standard",
                   choices=["standard", "printed", "swapped"])


def _add_common(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--timings", action="store_true")


def make_parser():
    ap = argparse.ArgumentParser(prog="nilquant")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build generator matrices and write JSON")
    _add_spec_args(p)
    _add_common(p)
    p.add_argument("--out", default="-")

    p = sub.add_parser("verify", help="check all defining relations (+oracle diff)")
    _add_spec_args(p, need_lambda=False)
    _add_common(p)
    p.add_argument("--in", dest="infile", default=None,
                   help="verify a generator JSON file instead of building")
    p.add_argument("--no-oracle", dest="oracle", action="store_false")

    for name, help_ in [("primitive", "dimension and basis of the primitive space"),
                        ("closure", "dimension of the submodule generated by v0"),
                        ("character", "weight multiplicities of the submodule"),
                        ("certify", "full irreducibility certification")]:
        p = sub.add_parser(name, help=help_)
        _add_spec_args(p)
        _add_common(p)

    p = sub.add_parser("print-rho", help="pretty-print one level of the tower")
    p.add_argument("--family", required=True, choices=["A", "B", "C", "D", "G"])
    p.add_argument("--rank", "-n", type=int, required=True, dest="n")
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--d-variant", default="standard",
                   choices=["standard", "printed", "swapped"])
    return ap


def _emit(doc, cfg, stream=None):
    stream = stream or sys.stdout
    stream.write(json.dumps(doc, sort_keys=True, indent=1))
    stream.write("\n")


def _reports_doc(cfg, reports):
    return {
        "spec": {"family": cfg.family, "n": cfg.n, "k": cfg.k,
                 "lambda": list(cfg.lam), "l": cfg.l},
        "ok": all(r.passed for r in reports),
        "reports": [r.to_dict(cfg.timings) for r in reports],
    }


def run(argv=None):
    ap = make_parser()
    ns = ap.parse_args(argv)
    cfg = JobConfig(command=ns.command)
    for key in vars(ns):
        if hasattr(cfg, key):
            setattr(cfg, key, getattr(ns, key))
    if getattr(ns, "lam", None) is not None:
        try:
            cfg.lam = _parse_lambda(ns.lam)
        except ValueError:
            print("error: --lambda must be comma-separated integers", file=sys.stderr)
            return EXIT_USAGE
    try:
        return _run_command(cfg)
    except (ConstraintError, InvalidOrderError, UnsupportedDenominatorError) as exc:
        print("unsupported configuration: %s" % exc, file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (ShapeError, ValueError) as exc:
        print("invalid configuration: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


def _run_command(cfg):
    if cfg.command == "print-rho":
        levels = [cfg.level] if cfg.level else list(range(cfg.n, 0, -1))
        for lv in levels:
            print("level %d:" % lv)
            print(tower.format_table(cfg.family, lv, cfg.d_variant))
        return EXIT_OK

    if cfg.command == "build":
        gens = build(cfg.spec())
        doc = to_json_dict(gens)
        if cfg.out == "-":
            _emit(doc, cfg)
        else:
            with open(cfg.out, "w") as fh:
                _emit(doc, cfg, fh)
        return EXIT_OK

    if cfg.command == "verify":
        if cfg.infile:
            with open(cfg.infile) as fh:
                gens = from_json_dict(json.load(fh))
            cfg.family = gens.spec.family
            cfg.n, cfg.k = gens.spec.n, gens.spec.k
            cfg.lam, cfg.l = gens.spec.lam, gens.spec.l
        else:
            gens = build(cfg.spec())
        reports = analysis.verify_defining_relations(gens, cfg.threads)
        if cfg.oracle and cfg.family in ("B", "G"):
            oracle = closed_form_generators(gens.spec)
            w = generators_equal(gens, oracle)
            reports.append(analysis.Report("oracle_equality",
                                           "fail" if w else "pass", w))
        _emit(_reports_doc(cfg, reports), cfg)
        return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL

    gens = build(cfg.spec())

    if cfg.command == "primitive":
        P = analysis.primitive_space(gens)
        ok = P.rank == 1
        doc = _reports_doc(cfg, [analysis.Report(
            "primitive_space", "pass" if ok else "fail",
            {"dim_P": P.rank, "pivots": P.pivots()[:8]})])
        _emit(doc, cfg)
        return EXIT_OK if ok else EXIT_FAIL

    if cfg.command == "closure":
        dim, _ = analysis.submodule_closure(gens)
        _emit(_reports_doc(cfg, [analysis.Report("closure", "pass",
                                                 {"dim_L": dim})]), cfg)
        return EXIT_OK

    if cfg.command == "character":
        _, L = analysis.submodule_closure(gens)
        table = analysis.character(gens, L)
        doc = _reports_doc(cfg, [analysis.Report("character", "pass", {
            "dim_L": L.rank,
            "weights": [{"weight": list(kk), "multiplicity": m}
                        for kk, m in sorted(table.items())]})])
        _emit(doc, cfg)
        return EXIT_OK

    if cfg.command == "certify":
        if any(not (0 <= x <= cfg.l - 1) for x in cfg.lam):
            raise ConstraintError(
                "certification requires lambda in Z_l (0..%d), got %s"
                % (cfg.l - 1, list(cfg.lam)))
        reports = analysis.certify_irreducible(gens, threads=cfg.threads,
                                               seed=cfg.seed)
        _emit(_reports_doc(cfg, reports), cfg)
        return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL

    raise ShapeError("unknown command %r" % (cfg.command,))


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
