"""``chainpoly`` command line: ``build``, ``verify`` and ``zeros``.

Exit status is 0 when everything checked passes, 1 when a check fails and
2 for usage or parameter errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .exact import as_q, format_q
from .properties import ZEROS_CSV_COLUMNS, inner_product_grid, zeros_csv_rows, zeros_report
from .qpoly import QPoly
from .suites import SUITES, make_family, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# default families for ``verify`` when --family is not given
DEFAULTS = {
    "jordan": dict(N=3, alpha="1/2", sigmas=("1", "1/3")),
    "diag": dict(N=3, alpha="1/2", sigmas=("1/3", "2")),
}


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    family: str
    N: int
    alpha: Fraction
    sigmas: tuple = ()
    nmax: int = 12
    order: int = 20
    refine_width: Fraction = Fraction(1, 2**40)
    output_format: str = "json"
    output_path: str | None = None

    @classmethod
    def parse(cls, family, N, alpha, sigmas, nmax=12, order=20, refine_width="1/1099511627776",
              output_format="json", output_path=None, need_moments=False) -> RunConfig:
        if family not in ("jordan", "diag"):
            raise UsageError(f"family must be jordan or diag, got {family!r}")
        try:
            a = as_q(alpha)
            sig = tuple(as_q(s) for s in sigmas)
            width = as_q(refine_width)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise UsageError(f"bad rational: {exc}") from None
        if N < 1:
            raise UsageError("N must be >= 1")
        if len(sig) > N - 1:
            raise UsageError(f"N={N} takes at most {N - 1} --sigma values, got {len(sig)}")
        if nmax < 0 or order < 1:
            raise UsageError("nmax must be >= 0 and order >= 1")
        if width <= 0:
            raise UsageError("refine width must be positive")
        if need_moments and a <= -1:
            raise UsageError(f"alpha must be > -1 for moment-based checks, got {format_q(a)}")
        return cls(family, N, a, sig, nmax, order, width, output_format, output_path)

    def family_obj(self):
        return make_family(self.family, self.N, self.alpha, self.sigmas)

    def header(self) -> dict:
        return {
            "family": self.family,
            "N": self.N,
            "alpha": format_q(self.alpha),
            "sigmas": [format_q(s) for s in self.sigmas],
        }


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


# ------------------------------------------------------------------- build


def build_table(cfg: RunConfig) -> dict:
    fam = cfg.family_obj()
    table = {f"{n},{ell}": fam.omega(n, ell).to_strings() for n, ell in fam.entries(cfg.nmax)}
    return {**cfg.header(), "nmax": cfg.nmax, "table": table}


def load_table(doc: dict) -> dict:
    """Inverse of :func:`build_table`'s ``table`` field: ``{(n, ell): QPoly}``."""
    out = {}
    for key, coeffs in doc["table"].items():
        n, ell = (int(x) for x in key.split(","))
        out[(n, ell)] = QPoly.from_strings(coeffs)
    return out


def cmd_build(cfg: RunConfig) -> int:
    _emit(_dump_json(build_table(cfg)), cfg.output_path)
    return EXIT_OK


# ------------------------------------------------------------------ verify


def verify_document(cfg_list: list[RunConfig], suite: str, seed: int = 0) -> dict:
    names = SUITES if suite == "all" else (suite,)
    runs = []
    for cfg in cfg_list:
        fam = cfg.family_obj()
        reports = []
        for name in names:
            for rep in run_suite(name, fam, nmax=cfg.nmax, seed=seed, order=cfg.order):
                d = rep.to_dict()
                d["suite"] = name
                reports.append(d)
        runs.append({**cfg.header(), "nmax": cfg.nmax, "order": cfg.order,
                     "passed": all(r["passed"] for r in reports), "reports": reports})
    return {"suite": suite, "passed": all(r["passed"] for r in runs), "runs": runs}


def _summary(doc: dict) -> str:
    lines = []
    for run in doc["runs"]:
        for rep in run["reports"]:
            mark = "PASS" if rep["passed"] else "FAIL"
            lines.append(f"{mark} {run['family']:6s} {rep['suite']:8s} {rep['title']} "
                         f"({rep['n_checks']} checks, {rep['n_failed']} failed)")
    return "\n".join(lines) + "\n"


def cmd_verify(cfg_list: list[RunConfig], suite: str, seed: int = 0) -> int:
    doc = verify_document(cfg_list, suite, seed)
    path = cfg_list[0].output_path
    _emit(_dump_json(doc), path)
    if path not in (None, "-"):
        sys.stderr.write(_summary(doc))
    return EXIT_OK if doc["passed"] else EXIT_FAIL


# ------------------------------------------------------------------- zeros


def cmd_zeros(cfg: RunConfig, n: int) -> int:
    fam = cfg.family_obj()
    rep = zeros_report(fam, n, cfg.refine_width)
    rows = zeros_csv_rows(fam, n, rep)
    if cfg.output_format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=ZEROS_CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        _emit(buf.getvalue(), cfg.output_path)
    else:
        _emit(_dump_json({**cfg.header(), "n": n, "report": rep.to_dict(), "rows": rows}),
              cfg.output_path)
    return EXIT_OK if rep.all_real else EXIT_FAIL


def cmd_inner(cfg: RunConfig) -> int:
    fam = cfg.family_obj()
    _emit(_dump_json({**cfg.header(), "grid": inner_product_grid(fam, cfg.nmax)}), cfg.output_path)
    return EXIT_OK


# ------------------------------------------------------------------ parser


def _common(p: argparse.ArgumentParser, family_required=True, defaults=None):
    defaults = defaults or {}
    p.add_argument("--family", choices=("jordan", "diag"), required=family_required,
                   default=defaults.get("family"))
    p.add_argument("--N", type=int, default=defaults.get("N"), help="number of chains")
    p.add_argument("--alpha", default=defaults.get("alpha"), help='rational, e.g. "1/2"')
    p.add_argument("--sigma", action="append", default=None,
                   help="seed constant of the next chain; repeat for more chains")
    p.add_argument("--nmax", type=int, default=defaults.get("nmax", 12))
    p.add_argument("--order", type=int, default=20, help="series order for generating functions")
    p.add_argument("--output", "-o", default=None, help="output file (default: stdout)")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chainpoly", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="write the omega table as JSON")
    _common(b, defaults={"N": 2, "alpha": "0", "nmax": 8})

    v = sub.add_parser("verify", help="run a verification suite")
    _common(v, family_required=False)
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--seed", type=int, default=0, help="seed for random sl(2) probes")

    z = sub.add_parser("zeros", help="certified real zeros of omega_{n,1}")
    _common(z, defaults={"N": 2, "alpha": "0"})
    z.add_argument("--n", type=int, required=True)
    z.add_argument("--refine-width", default="1/1099511627776")
    z.add_argument("--format", choices=("csv", "json"), default="csv")

    ip = sub.add_parser("inner", help="grid of exact pairings <q_m, omega_{n,1}> as JSON")
    _common(ip, defaults={"N": 2, "alpha": "0", "nmax": 8})
    return parser


def _configs(args, need_moments=False) -> list[RunConfig]:
    fams = [args.family] if args.family else ["jordan", "diag"]
    out = []
    for family in fams:
        d = DEFAULTS[family]
        N = args.N if args.N is not None else d["N"]
        alpha = args.alpha if args.alpha is not None else d["alpha"]
        if args.sigma is not None:
            sigmas = args.sigma
        elif args.N is None:
            sigmas = d["sigmas"]
        else:
            sigmas = ()
        out.append(RunConfig.parse(
            family, N, alpha, sigmas, nmax=args.nmax, order=args.order,
            refine_width=getattr(args, "refine_width", "1/1099511627776"),
            output_format=getattr(args, "format", "json"), output_path=args.output,
            need_moments=need_moments,
        ))
    return out


_VALUE_FLAGS = ("--alpha", "--sigma", "--refine-width")


def _glue_negative_rationals(argv: list[str]) -> list[str]:
    """Turn ``--sigma -1/4`` into ``--sigma=-1/4``.

    argparse only recognises plain negative numbers as values, not ``-p/q``.
    """
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if tok in _VALUE_FLAGS and nxt and nxt[:1] == "-" and nxt[1:2].isdigit():
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = make_parser()
    argv = _glue_negative_rationals(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        if args.command == "build":
            return cmd_build(_configs(args)[0])
        if args.command == "verify":
            need = args.suite in ("biorth", "all")
            return cmd_verify(_configs(args, need_moments=need), args.suite, args.seed)
        if args.command == "zeros":
            if args.n < 1:
                raise UsageError("--n must be >= 1")
            return cmd_zeros(_configs(args)[0], args.n)
        if args.command == "inner":
            return cmd_inner(_configs(args, need_moments=True)[0])
    except UsageError as exc:
        sys.stderr.write(f"chainpoly: error: {exc}\n")
        return EXIT_USAGE
    except (ValueError, ArithmeticError) as exc:
        sys.stderr.write(f"chainpoly: error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"chainpoly: I/O error: {exc}\n")
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
