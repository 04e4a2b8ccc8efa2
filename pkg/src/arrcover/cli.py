"""Command line: ``arrcover <subcommand> <job.json> [flags]``.

Subcommands
-----------
analyze   full report per cover degree N
bound     Betti bound only
certify   torsion-freeness certificate only
divisor   Alexander polynomial divisibility over Q or F_p
lemma     rank sweep of C_N^k - I
milnor    all-ones character with N = n
oracle    Schreier rewriting cross-check

Exit codes: 0 success, 1 bad input, 2 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from . import jobs
from .arrangement import ArrangementError, CharacterError, HypothesisError
from .cover import InconsistencyError
from .fox import InvalidCharacter
from .schreier import DisconnectedCover

EXIT_OK, EXIT_INPUT, EXIT_INCONSISTENT = 0, 1, 2


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")

    job_flags = argparse.ArgumentParser(add_help=False)
    job_flags.add_argument("file", help="job document (JSON)")
    job_flags.add_argument("--n", type=_int_list, metavar="LIST", help="cover degrees, e.g. 2,3,4")
    job_flags.add_argument("--primes", type=_int_list, metavar="LIST",
                           help="field characteristics to report (0 = rationals)")
    job_flags.add_argument("--integral", action=argparse.BooleanOptionalAction, default=None,
                           help="compute integral homology (torsion)")
    job_flags.add_argument("--oracle", action=argparse.BooleanOptionalAction, default=None,
                           help="cross-check with Schreier rewriting")
    job_flags.add_argument("--force", action="store_true", help="ignore the size guards")

    parser = argparse.ArgumentParser(prog="arrcover", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in [("analyze", "full report"), ("bound", "Betti bound"),
                           ("certify", "torsion-freeness certificate"), ("milnor", "Milnor fiber job"),
                           ("oracle", "Schreier cross-check")]:
        sub.add_parser(name, parents=[common, job_flags], help=helptext)
    d = sub.add_parser("divisor", parents=[common, job_flags], help="divisibility check")
    d.add_argument("--char", type=int, default=0, help="field characteristic (default 0)")
    lem = sub.add_parser("lemma", parents=[common], help="rank sweep of C_N^k - I")
    lem.add_argument("--max-n", type=int, default=24)
    lem.add_argument("--chars", type=_int_list, default=[0, 2, 3, 5, 7])
    return parser


def load_job(args: argparse.Namespace) -> jobs.JobSpec:
    with open(args.file) as fh:
        doc = json.load(fh)
    job = jobs.parse_jobspec(doc)
    if args.command == "milnor":
        job = jobs.milnor_job(job)
    changes = {}
    if args.n is not None:
        changes["N_list"] = tuple(args.n)
    if args.primes is not None:
        changes["primes"] = tuple(args.primes)
    if args.integral is not None:
        changes["integral"] = args.integral
    if args.oracle is not None:
        changes["oracle"] = args.oracle
    if changes:
        job = replace(job, **changes)
        jobs.check_job(job)
    jobs.check_size(job, args.force)
    return job


# text rendering ---------------------------------------------------------------


def _fmt_pairs(pairs) -> str:
    if not pairs:
        return "0"
    out = []
    for e, c in pairs:
        mono = "1" if e == 0 else ("t" if e == 1 else f"t^{e}")
        if mono == "1":
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        elif c == -1:
            out.append(f"-{mono}")
        else:
            out.append(f"{c}*{mono}")
    return " + ".join(out).replace("+ -", "- ")


def _fmt_group(free: int, torsion) -> str:
    parts = [f"Z^{free}"] if free else []
    parts += [f"Z/{d}" for d in torsion]
    return " + ".join(parts) or "0"


def _render_header(report: dict) -> list[str]:
    A, chi = report["arrangement"], report["character"]
    mode = chi["mode"] if chi["mode"] == "integral" else f"mod {chi['mode']['modN']}"
    return [
        f"arrangement: n={A['n']}, s={A['s']}, m={tuple(A['multiplicities'])}",
        f"character:   eps={chi['eps']}, eps_i={tuple(chi['epsilon_i'])}, {mode}",
    ]


def _render_certificate(cert: dict, indent: str = "  ") -> list[str]:
    line = f"{indent}certificate: {cert['verdict']}"
    if cert["rank"] is not None:
        line += f" (H_1 = Z^{cert['rank']})"
    lines = [line]
    for h in cert["hypotheses"]:
        lines.append(f"{indent}  [{'ok' if h['pass'] else 'fails'}] {h['hypothesis']}")
    return lines


def _render_divisor(div: dict | None, indent: str = "") -> list[str]:
    if div is None:
        return [f"{indent}divisor: hypotheses not met"]
    return [
        f"{indent}Alexander polynomial over {div['field']}: {_fmt_pairs(div['alexander'])}",
        f"{indent}divisor polynomial: {_fmt_pairs(div['poly'])}",
        f"{indent}divides: {'yes' if div['divides'] else 'NO'}",
    ]


def render_text(command: str, report: dict) -> str:
    if command == "lemma":
        lines = [f"lemma sweep: N <= {report['max_n']}, characteristics {report['chars']}, "
                 f"{report['checks']} checks, {len(report['failures'])} failures"]
        for f in report["failures"]:
            lines.append(f"  N={f['N']} k={f['k']} char={f['char']}: rank {f['rank']}, expected {f['expected']}")
        return "\n".join(lines) + "\n"
    lines = _render_header(report)
    if "williams_bound" in report:
        lines.append(f"Williams bound for b_1 of the Milnor fiber: {report['williams_bound']}")
    if command == "divisor":
        lines += _render_divisor(report["divisor"])
        for h in report.get("divisor_hypotheses", []):
            lines.append(f"  [{'ok' if h['pass'] else 'fails'}] {h['hypothesis']}")
        return "\n".join(lines) + "\n"
    for row in report["results"]:
        lines.append(f"N={row['N']}:")
        if "bound" in row:
            b = row["bound"]
            lines.append(f"  Betti bound: {b if b is not None else 'n/a (eps = 1 fails)'}")
        if "certificate" in row:
            lines += _render_certificate(row["certificate"])
        if "x_cover" in row:
            xc = row["x_cover"]
            if isinstance(xc, str):
                lines.append(f"  H_1 of boundary cover: {xc}")
            else:
                betti = ", ".join(f"b({'Q' if p == '0' else 'F' + p})={v}"
                                  for p, v in sorted(xc["betti"].items(), key=lambda kv: int(kv[0])))
                lines.append(f"  H_1 of boundary cover: {_fmt_group(xc['free_rank'], xc['torsion'])}"
                             + (f"  [{betti}]" if betti else ""))
        if "oracle" in row:
            lines.append(f"  Schreier oracle: {row['oracle']}")
        if "oracle_agrees" in row and row["oracle_agrees"] is not None:
            lines.append(f"  oracle agrees: {'yes' if row['oracle_agrees'] else 'NO'}")
        if row.get("divisor") is not None:
            lines += _render_divisor(row["divisor"], "  ")
    return "\n".join(lines) + "\n"


def execute(args: argparse.Namespace) -> dict:
    if args.command == "lemma":
        return jobs.run_lemma(args.max_n, tuple(args.chars))
    job = load_job(args)
    if args.command == "analyze":
        return jobs.run(job)
    if args.command == "milnor":
        return jobs.run_milnor(job)
    if args.command == "bound":
        return jobs.run_bound(job)
    if args.command == "certify":
        return jobs.run_certify(job)
    if args.command == "divisor":
        if args.char != 0 and not jobs.is_prime(args.char):
            raise jobs.JobSpecError("--char", f"field characteristic must be 0 or prime, got {args.char}")
        return jobs.run_divisor(job, args.char)
    if args.command == "oracle":
        return jobs.run_oracle(job)
    raise ValueError(f"unknown command {args.command}")


def emit(args: argparse.Namespace, report: dict) -> None:
    if args.json == "-":
        sys.stdout.write(jobs.dumps(report))
        return
    sys.stdout.write(render_text(args.command, report))
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(jobs.dumps(report))


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = execute(args)
    except InconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (jobs.JobSpecError, ArrangementError, CharacterError, HypothesisError,
            InvalidCharacter, DisconnectedCover) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read job: {exc}", file=sys.stderr)
        return EXIT_INPUT
    emit(args, report)
    if args.command == "lemma" and report["failures"]:
        return EXIT_INCONSISTENT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
