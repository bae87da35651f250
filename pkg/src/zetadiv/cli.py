"""Command-line front end.

    zetadiv divide --config CURVE.cfg [--verify] [--no-checks] [--json]
    zetadiv torsion --config CURVE.cfg [--json]
    zetadiv gaps N D A [--json]              (A: comma-separated residues a_1..a_{d-1})
    zetadiv intersect N D [--json]
    zetadiv selfcheck N D Q [--trials T] [--seed S] [--json]

Exit codes: 0 success, 1 bad input, 2 an internal identity failed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import traceback
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError, InputError, InternalInvariantViolation, ZetadivError


# --- config ----------------------------------------------------------------------

CONFIG_KEYS = ("p", "ext", "n", "d", "alphas", "point", "roots")


@dataclass
class CurveConfig:
    p: int
    ext: tuple | None
    n: int
    d: int
    alphas: list
    point: tuple
    roots: list | None

    def field(self):
        from .ff import GF

        return GF(self.p, self.ext)

    def curve(self):
        from .curve import Curve

        F = self.field()
        return Curve(self.n, self.d, [F.parse(a) for a in self.alphas], F)


def _parse_int(key: str, text: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ConfigError(f"ConfigError: {key} must be an integer, got {text!r}") from None


def _split(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _parse_ext(p: int, text: str) -> tuple:
    text = text.strip()
    if "t" in text:
        from .ff import GF, UniPoly

        # a polynomial in t: evaluate in F_p[t] by reading it as an element of a big enough dummy
        coeffs: dict[int, int] = {}
        for term in text.replace("-", "+-").split("+"):
            term = term.strip().replace(" ", "")
            if not term:
                continue
            sign = -1 if term.startswith("-") else 1
            term = term.lstrip("-")
            if "t" in term:
                c, _, e = term.partition("t")
                c = c.rstrip("*") or "1"
                e = e.lstrip("^") or "1"
                coeffs[int(e)] = coeffs.get(int(e), 0) + sign * int(c)
            else:
                coeffs[0] = coeffs.get(0, 0) + sign * int(term)
        deg = max(coeffs)
        return tuple(coeffs.get(i, 0) % p for i in range(deg + 1))
    return tuple(_parse_int("ext", v) % p for v in _split(text))


def parse_config(text: str) -> CurveConfig:
    """Parse ``key = value`` lines; ``#`` starts a comment; lists are comma-separated."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"ConfigError: line {lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in CONFIG_KEYS:
            raise ConfigError(f"ConfigError: line {lineno}: unknown key {key!r}")
        if key in raw:
            raise ConfigError(f"ConfigError: line {lineno}: duplicate key {key!r}")
        raw[key] = value.strip()
    for key in ("p", "n", "d", "alphas", "point"):
        if key not in raw:
            raise ConfigError(f"ConfigError: missing key {key!r}")
    p = _parse_int("p", raw["p"])
    ext = _parse_ext(p, raw["ext"]) if raw.get("ext") else None
    point = _split(raw["point"].strip("()"))
    if len(point) != 2:
        raise ConfigError("ConfigError: point must be 'x, y'")
    cfg = CurveConfig(
        p=p,
        ext=ext,
        n=_parse_int("n", raw["n"]),
        d=_parse_int("d", raw["d"]),
        alphas=_split(raw["alphas"]),
        point=tuple(point),
        roots=_split(raw["roots"]) if raw.get("roots") else None,
    )
    if len(cfg.alphas) != cfg.d:
        raise ConfigError(f"ConfigError: expected {cfg.d} alphas, got {len(cfg.alphas)}")
    return cfg


def load_config(path: str) -> CurveConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"ConfigError: cannot read {path}: {e.strerror}") from None
    return parse_config(text)


# --- reports -----------------------------------------------------------------------


def flatten(report: dict, prefix: str = "") -> dict[str, str]:
    """Dotted keys, string values: the common content of the text and JSON renderings."""
    out: dict[str, str] = {}
    for k, v in report.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(flatten(v, key + "."))
        elif isinstance(v, str):
            out[key] = v
        else:
            out[key] = json.dumps(v)
    return out


def render_text(report: dict) -> str:
    return "".join(f"{k}: {v}\n" for k, v in flatten(report).items())


def parse_text(text: str) -> dict[str, str]:
    out = {}
    for line in text.splitlines():
        if line:
            k, _, v = line.partition(": ")
            out[k] = v
    return out


def render(report: dict, as_json: bool) -> str:
    if as_json:
        return json.dumps(report, indent=2) + "\n"
    return render_text(report)


# --- commands ------------------------------------------------------------------------


def cmd_divide(cfg: CurveConfig, verify: bool = False, checks: bool = True) -> dict:
    from .curve import INF, Divisor
    from .divide import choose_roots, divide_point
    from .jac import is_principal

    curve = cfg.curve()
    F = curve.field
    P = curve.place(F.parse(cfg.point[0]), F.parse(cfg.point[1]))
    roots = [F.parse(r) for r in cfg.roots] if cfg.roots else choose_roots(curve, P).roots
    cert = divide_point(curve, P, roots, verify=checks)
    report = {"command": "divide", "internal_checks": checks}
    report.update(cert.to_record())
    if verify:
        L = cert.field
        CL = curve.base_change(L)
        zeta = L.embed(curve.require_zeta())
        target = cert.D - cert.D.zeta_act(zeta) - Divisor.of(P, field=L) + Divisor.of(INF)
        res = is_principal(CL, target)
        if not res:
            raise InternalInvariantViolation("oracle: (1 - zeta) D - (P - INF) is not principal")
        report["oracle"] = {
            "principal": True,
            "witness_numerator": [str(c) for c in res.numerator.u],
            "witness_denominator": [str(c) for c in res.denominator.u],
        }
    return report


def cmd_torsion(cfg: CurveConfig) -> dict:
    from .jac import torsion_enumerate

    curve = cfg.curve()
    rows = [{"a": list(c.a), "divisor": str(c.divisor())} for c in torsion_enumerate(curve.n, curve.d)]
    return {"command": "torsion", "n": curve.n, "d": curve.d, "classes": len(rows), "rows": rows}


def cmd_gaps(n: int, d: int, a) -> dict:
    from .gaps import gap_set, weight_from_series

    prof = gap_set(n, d, a)
    rec = {"command": "gaps", "n": n, "d": d, "genus": prof.genus}
    rec.update(prof.to_record())
    rec["weight_from_series"] = weight_from_series(n, d, a)
    return rec


def cmd_intersect(n: int, d: int) -> dict:
    from .gaps import all_classes, closed_form_total, gap_set, intersection_multiplicity

    rows = []
    total = 0
    for a in all_classes(n, d):
        prof = gap_set(n, d, a)
        mult = intersection_multiplicity(n, d, a)
        total += mult.value
        rows.append({**prof.to_record(), "i": mult.value, "on_theta": mult.on_theta})
    closed = closed_form_total(n, d)
    return {
        "command": "intersect",
        "n": n,
        "d": d,
        "multiplicity_source": "i(D) = |lambda_D|, the gap-partition weight",
        "rows": rows,
        "total": total,
        "closed_form": str(closed),
        "ok": total == closed,
    }


def _intersect_text(rep: dict) -> str:
    lines = [f"# n = {rep['n']}, d = {rep['d']}; {rep['multiplicity_source']}", "a\tgaps\tlambda\t|lambda|"]
    for r in rep["rows"]:
        lines.append(
            "({})\t{{{}}}\t({})\t{}".format(
                ",".join(map(str, r["a"])), ",".join(map(str, r["gaps"])), ",".join(map(str, r["partition"])), r["i"]
            )
        )
    lines.append(f"TOTAL = {rep['total']} (closed form: {rep['closed_form']}) {'OK' if rep['ok'] else 'FAIL'}")
    return "\n".join(lines) + "\n"


def _torsion_text(rep: dict) -> str:
    lines = [f"# n = {rep['n']}, d = {rep['d']}: {rep['classes']} classes", "a\tdivisor"]
    for r in rep["rows"]:
        lines.append("({})\t{}".format(",".join(map(str, r["a"])), r["divisor"]))
    return "\n".join(lines) + "\n"


def _field_of_order(q: int):
    from .ff import GF, is_prime

    for p in range(2, q + 1):
        if q % p == 0:
            break
    k, m = 0, q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1 or not is_prime(p):
        raise InputError(f"{q} is not a prime power")
    return GF(p).extension(k)


def cmd_selfcheck(n: int, d: int, q: int, trials: int, seed: int) -> tuple[dict, int]:
    from .checks import INSTANCE_CHECKS, STATIC_CHECKS, random_instance
    from .errors import NoRootOfUnity
    from .gaps import _check

    _check(n, d)
    F = _field_of_order(q)
    if (F.order - 1) % n:
        raise NoRootOfUnity(f"NoRootOfUnity: {n} does not divide {q} - 1")
    results = {name: [0, 0] for name, _ in STATIC_CHECKS + INSTANCE_CHECKS}
    first_failure = None
    for name, fn in STATIC_CHECKS:
        try:
            fn(n, d)
            results[name][0] += 1
        except InternalInvariantViolation as e:
            results[name][1] += 1
            first_failure = first_failure or {"check": name, "trial": None, "seed": seed, "message": str(e)}
    for t in range(trials):
        trial_seed = seed * 1_000_003 + t
        rng = random.Random(trial_seed)
        inst = random_instance(n, d, F, rng, ramified=(t % 3 == 2))
        for name, fn in INSTANCE_CHECKS:
            try:
                fn(inst, rng)
                results[name][0] += 1
            except InternalInvariantViolation as e:
                results[name][1] += 1
                if first_failure is None:
                    first_failure = {"check": name, "trial": t, "seed": trial_seed, "message": str(e)}
    report = {
        "command": "selfcheck",
        "n": n,
        "d": d,
        "q": q,
        "trials": trials,
        "seed": seed,
        "results": {name: {"pass": p, "fail": f} for name, (p, f) in results.items()},
        "ok": first_failure is None,
    }
    if first_failure:
        report["first_failure"] = first_failure
    return report, 0 if first_failure is None else 2


def _selfcheck_text(rep: dict) -> str:
    lines = [f"# selfcheck n={rep['n']} d={rep['d']} q={rep['q']} trials={rep['trials']} seed={rep['seed']}"]
    width = max(len(k) for k in rep["results"])
    for name, r in rep["results"].items():
        lines.append(f"{name:<{width}}  pass {r['pass']:>3}  fail {r['fail']:>3}")
    if rep.get("first_failure"):
        f = rep["first_failure"]
        lines.append(f"FIRST FAILURE: {f['check']} (trial {f['trial']}, reproduce with seed {f['seed']}): {f['message']}")
    lines.append("ALL PASS" if rep["ok"] else "FAIL")
    return "\n".join(lines) + "\n"


# --- entry point ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="zetadiv", description="Division by 1 - zeta on superelliptic curves.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("divide", help="divide a point by 1 - zeta and print the certificate")
    p.add_argument("--config", required=True)
    p.add_argument("--verify", action="store_true", help="also confirm the result with the Riemann-Roch oracle")
    p.add_argument("--no-checks", action="store_true", help="skip the internal identity checks")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("torsion", help="list the (1 - zeta)-torsion classes")
    p.add_argument("--config", required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("gaps", help="gap set and weight of one torsion class")
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.add_argument("a", help="residues a_1..a_{d-1}, comma-separated")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("intersect", help="intersection multiplicities of every torsion class")
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("selfcheck", help="run the property suite on random instances")
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    return ap


def _parse_residues(text: str) -> tuple:
    try:
        return tuple(int(v) for v in _split(text))
    except ValueError:
        raise InputError(f"InvalidResidue: cannot parse {text!r}") from None


def run(argv=None, out=sys.stdout, err=sys.stderr) -> int:
    args = build_parser().parse_args(argv)
    code = 0
    try:
        if args.cmd == "divide":
            rep = cmd_divide(load_config(args.config), verify=args.verify, checks=not args.no_checks)
            text = render(rep, args.json)
        elif args.cmd == "torsion":
            rep = cmd_torsion(load_config(args.config))
            text = render(rep, True) if args.json else _torsion_text(rep)
        elif args.cmd == "gaps":
            rep = cmd_gaps(args.n, args.d, _parse_residues(args.a))
            text = render(rep, args.json)
        elif args.cmd == "intersect":
            rep = cmd_intersect(args.n, args.d)
            text = render(rep, True) if args.json else _intersect_text(rep)
            code = 0 if rep["ok"] else 2
        else:
            rep, code = cmd_selfcheck(args.n, args.d, args.q, args.trials, args.seed)
            text = render(rep, True) if args.json else _selfcheck_text(rep)
    except InputError as e:
        print(f"error: {_describe(e)}", file=err)
        return 1
    except InternalInvariantViolation as e:
        print(f"invariant violated: {_describe(e)}", file=err)
        return 2
    except ZetadivError as e:  # pragma: no cover - every error is one of the two kinds above
        traceback.print_exc(file=err)
        return 2
    out.write(text)
    return code


def _describe(e: Exception) -> str:
    name = type(e).__name__
    msg = str(e)
    return msg if msg.startswith(name) else f"{name}: {msg}"


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
