"""Command-line front end.

    superber ber --in matrix.json
    superber canon --m 1 --n 1
    superber btilde --m 1 --n 1 [--star] [--out b.json]
    superber verify all --m 1 --n 1 [--out report.json]

Exit codes: 0 success, 1 usage or parse error, 2 domain error, 3 failed verification.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .berezin import build_btilde, build_btilde_star
from .canonical import (alpha, build_g, build_h_prime, enumerate_canonical, star_prime, zeta,
                        zeta_prime)
from .errors import ParseError, SuperberError
from .formats import dumps, matrix_from_struct, tensor_to_struct
from .grassmann import DEFAULT_GENERATORS, to_struct, to_text
from .supermatrix import berezinian
from .supertensor import to_text as tensor_text
from .verify import SUITES, VerifyConfig, report_text, run_suite

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_FAILED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    command: str
    m: int = 1
    n: int = 1
    num_generators: int = DEFAULT_GENERATORS
    seed: int = 0
    trials: int = 20
    extended: bool = False
    input_path: str | None = None
    output_path: str | None = None
    format: str | None = None

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise UsageError("--m and --n must be nonnegative")
        if self.trials < 1:
            raise UsageError("--trials must be at least 1")
        if self.num_generators < 0:
            raise UsageError("--gens must be nonnegative")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, default=1)
    common.add_argument("--n", type=int, default=1)
    common.add_argument("--gens", type=int, default=DEFAULT_GENERATORS,
                        help="number of Grassmann generators (default 4)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=20)
    common.add_argument("--extended", action="store_true", help="include the (2|2) theorem checks")
    common.add_argument("--in", dest="input_path", metavar="PATH")
    common.add_argument("--out", dest="output_path", metavar="PATH")
    common.add_argument("--format", choices=("text", "structured"))

    parser = _Parser(prog="superber", description="Berezinian tensors of GL(m|n), exactly.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("ber", parents=[common], help="Berezinian of a matrix file")
    canon = sub.add_parser("canon", parents=[common], help="canonical pairs and their constants")
    canon.add_argument("--tensors", action="store_true", help="also dump h', g, g*', h*'")
    bt = sub.add_parser("btilde", parents=[common], help="emit btilde or btilde_star")
    bt.add_argument("--star", action="store_true")
    ver = sub.add_parser("verify", parents=[common], help="run a verification suite")
    ver.add_argument("suite", choices=SUITES + ("all",))
    return parser


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output_path:
        Path(cfg.output_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _read_input(cfg: RunConfig) -> str:
    if cfg.input_path in (None, "-"):
        return sys.stdin.read()
    try:
        return Path(cfg.input_path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {cfg.input_path}: {exc.strerror}") from exc


def cmd_ber(cfg: RunConfig) -> int:
    try:
        obj = json.loads(_read_input(cfg))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if isinstance(obj, dict) and "gens" not in obj:
        obj = dict(obj, gens=cfg.num_generators)
    a = matrix_from_struct(obj)
    ber = berezinian(a, "checked")
    if cfg.format == "structured":
        _emit(cfg, dumps({"m": a.m, "n": a.n, "berezinian": to_struct(ber)}))
    else:
        _emit(cfg, to_text(ber) + "\n")
    return EXIT_OK


def canon_rows(m: int, n: int, num_generators: int, tensors: bool = False) -> list[dict]:
    rows = []
    for p in enumerate_canonical(m, n):
        row = {"index": p.index, "choice": p.bits, "kappa_h": p.kappa_h, "kappa_g": p.kappa_g,
               "rho": p.rho, "alpha": str(alpha(p)), "zeta": str(zeta(p)),
               "zeta_prime": str(zeta_prime(p))}
        if tensors:
            row["h_prime"] = tensor_to_struct(build_h_prime(p, num_generators))
            row["g"] = tensor_to_struct(build_g(p, num_generators))
            row["g_star_prime"] = tensor_to_struct(star_prime(p, "g", num_generators))
            row["h_star_prime"] = tensor_to_struct(star_prime(p, "h", num_generators))
        rows.append(row)
    return rows


def cmd_canon(cfg: RunConfig, tensors: bool = False) -> int:
    rows = canon_rows(cfg.m, cfg.n, cfg.num_generators, tensors)
    if cfg.format == "structured":
        _emit(cfg, dumps({"m": cfg.m, "n": cfg.n, "pairs": rows}))
        return EXIT_OK
    keys = ("index", "choice", "kappa_h", "kappa_g", "rho", "alpha", "zeta", "zeta_prime")
    lines = ["\t".join(keys)]
    for p, row in zip(enumerate_canonical(cfg.m, cfg.n), rows):
        lines.append("\t".join(str(row[k]) for k in keys))
        if tensors:
            g = cfg.num_generators
            lines.append(f"  h' = {tensor_text(build_h_prime(p, g))}")
            lines.append(f"  g = {tensor_text(build_g(p, g))}")
            lines.append(f"  g*' = {tensor_text(star_prime(p, 'g', g))}")
            lines.append(f"  h*' = {tensor_text(star_prime(p, 'h', g))}")
    _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_btilde(cfg: RunConfig, star: bool = False) -> int:
    build = build_btilde_star if star else build_btilde
    t = build(cfg.m, cfg.n, cfg.num_generators).body
    if cfg.format == "text":
        _emit(cfg, tensor_text(t) + "\n")
    else:
        _emit(cfg, dumps(tensor_to_struct(t)))
    return EXIT_OK


def cmd_verify(cfg: RunConfig, suite: str) -> int:
    vc = VerifyConfig(cfg.m, cfg.n, cfg.num_generators, cfg.seed, cfg.trials, cfg.extended)
    report = run_suite(suite, vc)
    if cfg.output_path:
        Path(cfg.output_path).write_text(dumps(report), encoding="utf-8")
    if cfg.format == "structured" and not cfg.output_path:
        sys.stdout.write(dumps(report))
    else:
        sys.stdout.write(report_text(report))
    return EXIT_OK if report["pass"] else EXIT_FAILED


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig(args.command, args.m, args.n, args.gens, args.seed, args.trials,
                        args.extended, args.input_path, args.output_path, args.format)
        if args.command == "ber":
            return cmd_ber(cfg)
        if args.command == "canon":
            return cmd_canon(cfg, args.tensors)
        if args.command == "btilde":
            return cmd_btilde(cfg, args.star)
        return cmd_verify(cfg, args.suite)
    except (UsageError, ParseError) as exc:
        print(f"superber: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SuperberError as exc:
        print(f"superber: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
