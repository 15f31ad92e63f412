"""Command line interface: ``worstfair {analyze,exact,verify,gen}``.

Exit codes: 0 success, 1 audit failure, 2 input error, 3 size caps exceeded.
With ``--json`` the machine report (JSON lines) goes to stdout and the
human report to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .algorithms import biased_orientation, cover_of_orientation, reverse_greedy
from .bounds import audit_information_lemmas, audit_is_game, audit_reverse_greedy
from .exact import (
    MAX_PLAYERS,
    MAX_TOTAL,
    CapsExceeded,
    decide_fairness,
    enumerate_covers,
    extremal_covers,
    worst_case_fairness,
)
from .games import GameFormatError, ISGame, game_to_dict, load_game, shapley_general, shapley_is
from .generate import GeneratorConfig, random_is_game
from .infomeasures import Distribution, normalize, renyi_divergence, renyi_entropy, uniform

EXIT_OK, EXIT_AUDIT, EXIT_INPUT, EXIT_CAPS = 0, 1, 2, 3


class InputError(Exception):
    pass


class Reporter:
    def __init__(self, json_mode: bool):
        self.json_mode = json_mode

    def say(self, text: str = ""):
        print(text, file=sys.stderr if self.json_mode else sys.stdout)

    def emit(self, record: dict):
        if self.json_mode:
            print(json.dumps(record, ensure_ascii=False))


def _fmt(x: float) -> str:
    return "inf" if math.isinf(x) else f"{x:.6f}"


def _jnum(x: float):
    return "inf" if math.isinf(x) else round(x, 12)


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _vec(xs) -> str:
    return "(" + ", ".join(_frac(Fraction(x)) for x in xs) + ")"


def _positive_real(text: str) -> float:
    try:
        val = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (val > 0) or not math.isfinite(val):
        raise argparse.ArgumentTypeError(f"lambda must be a finite real > 0, got {text}")
    return val


def _lambda_grid(text: str) -> list[float]:
    return [_positive_real(t) for t in text.split(",") if t.strip()]


def _load(path: str):
    try:
        return load_game(path)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except (OSError, GameFormatError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _shapley(g):
    return shapley_is(g) if isinstance(g, ISGame) else shapley_general(g)


def _baseline(g, choice: str) -> tuple[str, Distribution]:
    if choice == "uniform":
        return "uniform", uniform(g.n)
    if choice == "shapley":
        return "shapley", normalize(_shapley(g))
    try:
        data = json.loads(Path(choice).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise InputError(f"baseline is neither uniform, shapley nor an existing file: {choice}") from None
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"bad baseline file {choice}: {exc}") from None
    if isinstance(data, dict):
        data = [data.get(p) for p in g.players]
    if not isinstance(data, list) or len(data) != g.n or not all(isinstance(x, (int, float)) for x in data):
        raise InputError(f"baseline must list one nonnegative number per player ({g.n})")
    try:
        dist = normalize(data)
    except ValueError as exc:
        raise InputError(f"bad baseline: {exc}") from None
    if min(dist.probs) <= 0:
        raise InputError("baseline must be positive for every player")
    return choice, dist


def _caps(args) -> dict:
    return {"max_players": args.max_players, "max_total": args.max_total}


def cmd_analyze(args, out: Reporter) -> int:
    g = _load(args.path)
    lam = args.lam
    name, q = _baseline(g, args.baseline)
    vn = g.value(g.grand)
    sh = _shapley(g)
    rg, trace = reverse_greedy(g)
    players = list(g.players)
    out.say(f"players: {', '.join(players)}")
    out.say(f"v(N) = {vn}")
    out.say(f"Shapley value: {_vec(sh)}")
    out.say(f"baseline ({name}): {_vec_float(q.probs)}")
    out.emit({"record": "game", "players": players, "v_N": vn, "shapley": [_frac(x) for x in sh],
              "baseline": name, "baseline_probs": [_jnum(p) for p in q.probs], "lambda": lam})
    rows = [("RG", rg)]
    out.say(f"ReverseGreedy cover: {_vec(rg)}")
    out.say("  order: " + " ".join(f"{players[i]}(+{d})" for i, d in zip(trace.order, trace.deltas)))
    out.emit({"record": "reverse_greedy", "cover": list(rg), "order": [players[i] for i in trace.order],
              "deltas": list(trace.deltas)})
    if isinstance(g, ISGame):
        bi = cover_of_orientation(g, biased_orientation(g))
        rows.append(("BI", bi))
        out.say(f"biased orientation cover: {_vec(bi)}")
    for label, cover in rows:
        d = normalize(cover)
        h = renyi_entropy(d, lam)
        div = renyi_divergence(d, q, lam)
        out.say(f"{label}: H_{lam:g} = {_fmt(h)}  D_{lam:g}(. || {name}) = {_fmt(div)}")
        out.emit({"record": "measure", "cover_of": label, "cover": list(cover), "lambda": lam,
                  "entropy": _jnum(h), "divergence": _jnum(div), "baseline": name})
    return EXIT_OK


def _vec_float(ps) -> str:
    return "(" + ", ".join(_fmt(p) for p in ps) + ")"


def cmd_exact(args, out: Reporter) -> int:
    g = _load(args.path)
    lam = args.lam
    name, q = _baseline(g, args.baseline)
    covers = enumerate_covers(g, threads=args.threads, **_caps(args))
    ext = extremal_covers(g, covers)
    res = worst_case_fairness(g, q, lam, covers=covers)
    out.say(f"{len(covers)} covers, {len(ext)} extremal, Fair={_fmt(res.value)}")
    out.say(f"baseline: {name}, lambda: {lam:g}")
    out.say("argmax " + " ".join(_vec(c) for c in res.argmax_covers))
    out.emit({"record": "exact", "covers": len(covers), "extremal": len(ext),
              "extremal_covers": [list(c) for c in ext], "lambda": lam, "baseline": name,
              "fair": _jnum(res.value), "argmax": [list(c) for c in res.argmax_covers]})
    if args.eta is not None:
        yes = decide_fairness(g, q, lam, args.eta, covers=covers)
        out.say(f"Fair >= {args.eta:g}? {'YES' if yes else 'NO'}")
        out.emit({"record": "decision", "eta": args.eta, "answer": yes})
    return EXIT_OK


def _verify_instances(args):
    if args.path:
        return [(args.path, _load(args.path))]
    try:
        GeneratorConfig(args.n, args.p, args.wmax, args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.n > args.max_players:
        raise CapsExceeded(f"--n {args.n} exceeds the enumeration cap of {args.max_players} (raise --max-players)")
    rng = random.Random(args.seed)
    out = []
    draws = 0
    # instances whose total weight is above --max-total are redrawn
    while len(out) < args.count:
        draws += 1
        if draws > 100 * args.count:
            raise CapsExceeded("generated instances keep exceeding --max-total; lower --wmax or --p")
        cfg = GeneratorConfig(args.n, args.p, args.wmax, rng.getrandbits(63))
        g, _ = random_is_game(cfg)
        if g.total_weight <= args.max_total:
            out.append((f"random-{args.seed}-{len(out)}", g))
    return out


def cmd_verify(args, out: Reporter) -> int:
    if not args.path and not args.random:
        raise InputError("verify needs an instance path or --random")
    instances = _verify_instances(args)
    reports = []
    for ident, g in instances:
        covers = enumerate_covers(g, threads=args.threads, **_caps(args))
        for lam in args.lambdas:
            reports.append(audit_reverse_greedy(g, lam, instance=ident, covers=covers))
            if isinstance(g, ISGame):
                reports.append(audit_is_game(g, lam, instance=ident, covers=covers))
    reports.append(audit_information_lemmas(args.seed, args.trials))
    failures = []
    total = 0
    for rep in reports:
        for rec in rep.records():
            out.emit(rec)
        total += len(rep.checks)
        for note in rep.notes:
            if "skipped" in note:
                out.say(f"note [{rep.instance} lambda={rep.lam}]: {note}")
        for c in rep.failures():
            failures.append((rep, c))
    for rep, c in failures:
        out.say(f"FAIL {c.name} on {rep.instance} lambda={rep.lam}: lhs={_fmt(c.lhs)} rhs={_fmt(c.rhs)} "
                f"slack={c.slack:.3e}")
    out.say(f"{total - len(failures)}/{total} inequalities hold over {len(instances)} instance(s)")
    return EXIT_AUDIT if failures else EXIT_OK


def cmd_gen(args, out: Reporter) -> int:
    try:
        cfg = GeneratorConfig(args.n, args.p, args.wmax, args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    g, notes = random_is_game(cfg)
    data = game_to_dict(g)
    data["meta"] = {"generator": "gnp", "n": cfg.n, "edge_prob": cfg.edge_prob, "w_max": cfg.w_max,
                    "seed": cfg.seed, "repairs": notes}
    print(json.dumps(data, ensure_ascii=False))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="worstfair", description="Worst-case fairness of TU cooperative games.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON lines on stdout, human report on stderr")
    common.add_argument("--threads", type=int, default=1, help="worker processes for cover enumeration")
    common.add_argument("--max-players", type=int, default=MAX_PLAYERS)
    common.add_argument("--max-total", type=int, default=MAX_TOTAL)

    p = sub.add_parser("analyze", parents=[common], help="Shapley, ReverseGreedy and biased covers")
    p.add_argument("path")
    p.add_argument("--lambda", dest="lam", type=_positive_real, default=1.0)
    p.add_argument("--baseline", default="uniform", help="uniform, shapley, or a JSON file of weights")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("exact", parents=[common], help="enumerate covers and compute Fair_lambda")
    p.add_argument("path")
    p.add_argument("--lambda", dest="lam", type=_positive_real, default=1.0)
    p.add_argument("--baseline", default="uniform")
    p.add_argument("--eta", type=float, default=None, help="decide whether Fair_lambda >= eta")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("verify", parents=[common], help="audit the proved inequalities")
    p.add_argument("path", nargs="?")
    p.add_argument("--random", action="store_true", help="audit generated IS games instead of a file")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--p", type=float, default=0.6)
    p.add_argument("--wmax", type=int, default=4)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--lambdas", type=_lambda_grid, default=[0.5, 1.0, 2.0])
    p.add_argument("--trials", type=int, default=1000, help="random trials for the information lemmas")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="print a random IS game instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--wmax", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Reporter(getattr(args, "json", False))
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapsExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPS
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
