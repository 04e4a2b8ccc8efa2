"""Job documents (JSON in, JSON out) and the analyses behind the command line."""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Any

from .arrangement import (ArrangementCharacter, CharacterError, HypothesisError,
                          MarkedArrangement, boundary_presentation,
                          character_from_weights, divisor_hypotheses, milnor_character,
                          presentation_character, validate_arrangement)
from .cover import (InconsistencyError, betti_bound, certify, divisor_check, h1_cover)
from .intlinalg import as_field, is_prime, lemma_rank, gcd_mod
from .schreier import oracle_h1

N_CAP = 64
SIZE_GUARD = 4096
DEFAULT_PRIMES = (0, 2, 3, 5)
DEFAULT_INTEGRAL_NS = (2, 3, 4, 5, 6)


class JobSpecError(ValueError):
    """Bad input document; ``field`` is a path such as ``points[1].weights``."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class GuardError(JobSpecError):
    pass


@dataclass(frozen=True)
class JobSpec:
    arrangement: MarkedArrangement
    character: ArrangementCharacter
    N_list: tuple[int, ...]
    primes: tuple[int, ...] = DEFAULT_PRIMES
    integral: bool = True
    oracle: bool = True
    milnor: bool = False


def _int(doc: dict, key: str, path: str) -> int:
    if key not in doc:
        raise JobSpecError(path, "missing required field")
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise JobSpecError(path, f"expected an integer, got {v!r}")
    return v


def _int_list(v: Any, path: str) -> list[int]:
    if not isinstance(v, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in v):
        raise JobSpecError(path, f"expected a list of integers, got {v!r}")
    return list(v)


def _parse_mode(v: Any):
    if v == "integral":
        return "integral"
    if isinstance(v, dict) and set(v) == {"modN"}:
        N = v["modN"]
        if isinstance(N, bool) or not isinstance(N, int) or N < 1:
            raise JobSpecError("mode.modN", f"expected a positive integer, got {N!r}")
        return N
    raise JobSpecError("mode", f'expected "integral" or {{"modN": int}}, got {v!r}')


def parse_jobspec(doc: Any) -> JobSpec:
    if not isinstance(doc, dict):
        raise JobSpecError("$", "document must be a JSON object")
    known = {"n", "alpha", "points", "mode", "milnor", "N_list", "primes", "integral", "oracle"}
    extra = sorted(set(doc) - known)
    if extra:
        raise JobSpecError(extra[0], "unknown field")
    n = _int(doc, "n", "n")
    milnor = doc.get("milnor", False)
    if not isinstance(milnor, bool):
        raise JobSpecError("milnor", f"expected a boolean, got {milnor!r}")
    points = doc.get("points")
    if not isinstance(points, list) or not points:
        raise JobSpecError("points", "expected a nonempty list of points")
    ms, weights = [], []
    for i, pt in enumerate(points):
        if not isinstance(pt, dict):
            raise JobSpecError(f"points[{i}]", "expected an object")
        m = _int(pt, "m", f"points[{i}].m")
        ms.append(m)
        if "weights" in pt:
            weights.append(_int_list(pt["weights"], f"points[{i}].weights"))
        elif milnor:
            weights.append([1] * (m - 1))
        else:
            raise JobSpecError(f"points[{i}].weights", "missing required field")
    A = MarkedArrangement(n, tuple(ms))
    verdict = validate_arrangement(A)
    if not verdict:
        raise JobSpecError(verdict.field or "points", verdict.reason)

    if milnor:
        if "alpha" in doc and doc["alpha"] != 1:
            raise JobSpecError("alpha", "a Milnor job sends every meridian to 1")
        if any(w != 1 for ws in weights for w in ws):
            raise JobSpecError("points", "a Milnor job sends every meridian to 1")
        if "mode" in doc and _parse_mode(doc["mode"]) != n:
            raise JobSpecError("mode", f'a Milnor job uses {{"modN": {n}}}')
        chi = milnor_character(A)
    else:
        eps = _int(doc, "alpha", "alpha")
        mode = _parse_mode(doc.get("mode", "integral"))
        try:
            chi = character_from_weights(A, eps, weights, mode)
        except CharacterError as exc:
            raise JobSpecError(exc.field, str(exc)) from None

    if "N_list" in doc:
        Ns = _int_list(doc["N_list"], "N_list")
    elif chi.modulus is not None:
        Ns = [chi.modulus]
    else:
        Ns = list(DEFAULT_INTEGRAL_NS)
    primes = _int_list(doc.get("primes", list(DEFAULT_PRIMES)), "primes")
    flags = {}
    for key in ("integral", "oracle"):
        v = doc.get(key, True)
        if not isinstance(v, bool):
            raise JobSpecError(key, f"expected a boolean, got {v!r}")
        flags[key] = v
    job = JobSpec(A, chi, tuple(Ns), tuple(primes), flags["integral"], flags["oracle"], milnor)
    check_job(job)
    return job


def check_job(job: JobSpec) -> None:
    for k, N in enumerate(job.N_list):
        if N < 1:
            raise JobSpecError(f"N_list[{k}]", f"cover degree must be >= 1, got {N}")
        mod = job.character.modulus
        if mod is not None and mod % N:
            raise JobSpecError(f"N_list[{k}]", f"N={N} does not divide the character modulus {mod}")
    for k, p in enumerate(job.primes):
        if p != 0 and not is_prime(p):
            raise JobSpecError(f"primes[{k}]", f"field characteristic must be 0 or prime, got {p}")


def check_size(job: JobSpec, force: bool = False) -> None:
    if force:
        return
    for k, N in enumerate(job.N_list):
        if N > N_CAP:
            raise GuardError(f"N_list[{k}]", f"N={N} exceeds the cap {N_CAP} (use --force)")
        if job.arrangement.n * N > SIZE_GUARD:
            raise GuardError(f"N_list[{k}]", f"n*N={job.arrangement.n * N} exceeds {SIZE_GUARD} (use --force)")


def serialize_jobspec(job: JobSpec) -> dict:
    chi = job.character
    return {
        "n": job.arrangement.n,
        "alpha": chi.eps,
        "points": [{"m": m, "weights": list(ws)}
                   for m, ws in zip(job.arrangement.multiplicities, chi.point_weights)],
        "mode": "integral" if chi.modulus is None else {"modN": chi.modulus},
        "milnor": job.milnor,
        "N_list": list(job.N_list),
        "primes": list(job.primes),
        "integral": job.integral,
        "oracle": job.oracle,
    }


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


# analyses -------------------------------------------------------------------


def _header(job: JobSpec) -> dict:
    A, chi = job.arrangement, job.character
    return {
        "arrangement": {"n": A.n, "s": A.s, "multiplicities": list(A.multiplicities)},
        "character": {
            "eps": chi.eps,
            "epsilon_i": list(chi.epsilon_i),
            "weights": [list(ws) for ws in chi.point_weights],
            "mode": "integral" if chi.modulus is None else {"modN": chi.modulus},
        },
    }


def _bound_or_none(job: JobSpec, N: int) -> int | None:
    try:
        return betti_bound(job.arrangement, job.character, N)
    except HypothesisError:
        return None


def divisor_report(job: JobSpec, p: int = 0) -> dict | None:
    A, chi = job.arrangement, job.character
    if not all(ok for _, ok in divisor_hypotheses(A, chi)):
        return None
    res = divisor_check(A, chi, p)
    return {
        "field": as_field(p).label,
        "poly": res.divisor.to_pairs(),
        "alexander": res.delta.to_pairs(),
        "factors": [f.to_pairs() for f in res.alexander.factors],
        "divides": res.divides,
    }


def _x_cover(job: JobSpec, N: int):
    A, chi = job.arrangement, job.character
    P = boundary_presentation(A)
    c = presentation_character(A, chi)
    fields = sorted(set(job.primes) | ({0} if job.integral else set()))
    rep = h1_cover(P, c, N, fields, job.integral)
    return P, c, rep


def analyze_one(job: JobSpec, N: int, divisor: dict | None) -> dict:
    A, chi = job.arrangement, job.character
    P, c, rep = _x_cover(job, N)
    bound = _bound_or_none(job, N)
    if bound is not None:
        # the cover of the boundary manifold attains the bound exactly
        for p in job.primes:
            if rep.field_betti[p] != bound:
                raise InconsistencyError(
                    f"N={N}: Betti number of the boundary cover over {as_field(p).label} is "
                    f"{rep.field_betti[p]}, expected {bound}")
    oracle_agrees = None
    if job.oracle and job.integral and rep.connected:
        orc = oracle_h1(P, c, N, job.primes)
        oracle_agrees = orc.same_group(rep)
        if not oracle_agrees:
            raise InconsistencyError(
                f"N={N}: Schreier oracle gives {orc.describe()}, chain complex gives {rep.describe()}")
    return {
        "N": N,
        "bound": bound,
        "certificate": certify(A, chi, N).to_json(),
        "x_cover": {
            "free_rank": rep.free_rank,
            "torsion": list(rep.torsion),
            "betti": {str(p): rep.field_betti[p] for p in job.primes},
            "connected": rep.connected,
        },
        "divisor": divisor,
        "oracle_agrees": oracle_agrees,
    }


def run(job: JobSpec) -> dict:
    report = _header(job)
    divisor = divisor_report(job, 0)
    report["results"] = [analyze_one(job, N, divisor) for N in job.N_list]
    return report


def run_bound(job: JobSpec) -> dict:
    report = _header(job)
    report["results"] = [{"N": N, "bound": _bound_or_none(job, N)} for N in job.N_list]
    return report


def run_certify(job: JobSpec) -> dict:
    report = _header(job)
    report["results"] = [{"N": N, "certificate": certify(job.arrangement, job.character, N).to_json()}
                         for N in job.N_list]
    return report


def run_divisor(job: JobSpec, p: int = 0) -> dict:
    report = _header(job)
    report["divisor"] = divisor_report(job, p)
    if report["divisor"] is None:
        report["divisor_hypotheses"] = [{"hypothesis": h, "pass": ok}
                                        for h, ok in divisor_hypotheses(job.arrangement, job.character)]
    return report


def run_oracle(job: JobSpec) -> dict:
    report = _header(job)
    rows = []
    for N in job.N_list:
        P, c, rep = _x_cover(replace(job, integral=True), N)
        if not rep.connected:
            rows.append({"N": N, "oracle_agrees": None, "x_cover": rep.describe()})
            continue
        orc = oracle_h1(P, c, N, job.primes)
        agree = orc.same_group(rep)
        rows.append({"N": N, "oracle_agrees": agree, "x_cover": rep.describe(), "oracle": orc.describe()})
        if not agree:
            report["results"] = rows
            raise InconsistencyError(
                f"N={N}: Schreier oracle gives {orc.describe()}, chain complex gives {rep.describe()}")
    report["results"] = rows
    return report


def milnor_job(job: JobSpec) -> JobSpec:
    A = job.arrangement
    N_list = job.N_list if job.milnor else (A.n,)
    return replace(job, character=milnor_character(A), N_list=N_list, milnor=True)


def run_milnor(job: JobSpec) -> dict:
    job = milnor_job(job)
    report = run(job)
    A = job.arrangement
    report["williams_bound"] = (A.n - 1) + sum((m - 2) * (gcd_mod(m, A.n) - 1) for m in A.multiplicities)
    return report


def run_lemma(max_n: int = 24, chars=(0, 2, 3, 5, 7)) -> dict:
    import math

    failures = []
    checks = 0
    for N in range(1, max_n + 1):
        for k in range(0, 2 * N + 1):
            expected = N - math.gcd(k % N, N)
            for p in chars:
                checks += 1
                got = lemma_rank(N, k, p)
                if got != expected:
                    failures.append({"N": N, "k": k, "char": p, "rank": got, "expected": expected})
    return {"max_n": max_n, "chars": list(chars), "checks": checks, "failures": failures}
