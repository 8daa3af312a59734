"""Command-line front end.

    hurwitzq compute --r 1 --q 1 --genus 0 --mu 2
    hurwitzq table --r 2 --q 1 --max-degree 4 --genus 1 --out csv
    hurwitzq verify --check all --r 1 --q 1 --order 30
    hurwitzq verify quantum --r 2 --q 3 --order 30 --raw

Records are JSON lines (or CSV for ``compute``/``table``); rationals are
always strings.  Exit codes: 0 success, 1 internal error, 2 invalid
parameters, 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, TextIO

from . import fock
from .hurwitz import HurwitzParamError, HurwitzParams, connected_hurwitz, triple_path_agreement, valid_params
from .partitions import PartitionError, parse_partition
from .quantum import (
    monomial_grid,
    operators_agree,
    quantum_operator,
    quantum_operator_raw,
    semiclassical_check,
    verify_annihilation,
    verify_recurrence,
)
from .report import CheckResult
from .spectral import SpectralFamily, omega01_match, verify_spectral_equation

log = logging.getLogger("hurwitzq")

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID, EXIT_FAILED = 0, 1, 2, 3
CHECKS = ("spectral", "quantum", "recurrence", "semiclassical", "commutators", "oracle")
CSV_COLUMNS = ("r", "q", "g", "mu", "m", "value")


@dataclass
class RunConfig:
    command: str
    r: int = 1
    q: int = 1
    genus: int = 0
    mu: str = ""
    order: int = 30
    max_degree: int = 6
    max_m: int = 4
    z_order: int = 5
    check: str = "all"
    raw: bool = False
    out: str = "json"
    jobs: int = 1


def emit_records(records: Iterable[Dict[str, object]], fmt: str, stream: TextIO) -> None:
    if fmt == "csv":
        writer = csv.writer(stream, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for rec in records:
            writer.writerow([rec[c] for c in CSV_COLUMNS])
    else:
        for rec in records:
            stream.write(json.dumps(rec) + "\n")


def _compute_record(params: HurwitzParams) -> Dict[str, object]:
    return connected_hurwitz(params).to_record()


def cmd_compute(cfg: RunConfig, stream: Optional[TextIO] = None) -> int:
    stream = stream or sys.stdout
    try:
        params = HurwitzParams(cfg.r, cfg.q, cfg.genus, parse_partition(cfg.mu))
    except (HurwitzParamError, PartitionError) as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    emit_records([_compute_record(params)], cfg.out, stream)
    return EXIT_OK


def cmd_table(cfg: RunConfig, stream: Optional[TextIO] = None) -> int:
    stream = stream or sys.stdout
    try:
        params = list(valid_params(cfg.r, cfg.q, cfg.max_degree, cfg.genus))
    except HurwitzParamError as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if cfg.jobs > 1 and len(params) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            records = list(pool.map(_compute_record, params))
    else:
        records = [_compute_record(p) for p in params]
    emit_records(records, cfg.out, stream)
    return EXIT_OK


def run_checks(cfg: RunConfig) -> List[CheckResult]:
    r, q, N = cfg.r, cfg.q, cfg.order
    selected = CHECKS if cfg.check == "all" else (cfg.check,)
    results: List[CheckResult] = []
    for name in selected:
        log.info("running %s", name)
        if name == "spectral":
            family = SpectralFamily(r, q, N)
            results.append(verify_spectral_equation(family))
            results.append(omega01_match(family, 4, method="character"))
        elif name == "quantum":
            forms = (True,) if cfg.raw else (False, True)
            for raw in forms:
                results.append(verify_annihilation(r, q, N, raw=raw))
            agree = operators_agree(quantum_operator(r, q), quantum_operator_raw(r, q), monomial_grid(15, half=True))
            agree.info.update({"r": r, "q": q})
            results.append(agree)
        elif name == "recurrence":
            results.append(verify_recurrence(r, q, 20))
        elif name == "semiclassical":
            results.append(semiclassical_check(r, q, N, raw=cfg.raw))
        elif name == "commutators":
            states = fock.states_up_to(cfg.max_degree)
            bound = 3
            for k in range(-bound, bound + 1):
                for l in range(-bound, bound + 1):
                    res = fock.verify_commutator(k, l, cfg.z_order, states)
                    if not res:
                        results.append(res)
                        break
                else:
                    continue
                break
            else:
                results.append(CheckResult("commutator", True, info={"k_l_bound": bound, "energy": cfg.max_degree, "z_order": cfg.z_order}))
            results.append(fock.verify_e0_vacuum(10))
        elif name == "oracle":
            results.append(triple_path_agreement(r, q, cfg.max_degree, cfg.max_m))
    return results


def cmd_verify(cfg: RunConfig, stream: Optional[TextIO] = None) -> int:
    stream = stream or sys.stdout
    if cfg.check not in CHECKS + ("all",):
        print(f"invalid parameters: unknown check {cfg.check!r}", file=sys.stderr)
        return EXIT_INVALID
    try:
        SpectralFamily(cfg.r, cfg.q, cfg.order)
    except ValueError as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    results = run_checks(cfg)
    for res in results:
        stream.write(json.dumps(res.to_json()) + "\n")
    ok = all(results)
    stream.write(json.dumps({"summary": cfg.check, "pass": ok}) + "\n")
    return EXIT_OK if ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hurwitzq", description=__doc__.split("\n\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def family_args(p):
        p.add_argument("--r", type=int, default=1)
        p.add_argument("--q", type=int, default=1)

    p = sub.add_parser("compute", help="one connected Hurwitz number")
    family_args(p)
    p.add_argument("--genus", type=int, default=0)
    p.add_argument("--mu", required=True, help="comma-separated parts, e.g. 3,1,1")
    p.add_argument("--out", choices=("json", "csv"), default="json")

    p = sub.add_parser("table", help="all valid (g, mu) up to a degree bound")
    family_args(p)
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--genus", type=int, default=1, help="maximum genus")
    p.add_argument("--out", choices=("json", "csv"), default="json")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("verify", help="run verification suites")
    family_args(p)
    p.add_argument("suite", nargs="?", choices=CHECKS + ("all",), help="same as --check")
    p.add_argument("--check", choices=CHECKS + ("all",), default=None)
    p.add_argument("--order", type=int, default=30)
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--max-m", type=int, default=4)
    p.add_argument("--z-order", type=int, default=5)
    p.add_argument("--raw", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command, r=args.r, q=args.q)
    for name in ("genus", "mu", "order", "max_degree", "max_m", "z_order", "raw", "out", "jobs"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if args.command == "verify":
        cfg.check = args.check or args.suite or "all"
    return cfg


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    cfg = config_from_args(args)
    commands = {"compute": cmd_compute, "table": cmd_table, "verify": cmd_verify}
    try:
        return commands[cfg.command](cfg)
    except Exception:
        log.exception("internal error")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
