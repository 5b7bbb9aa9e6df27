"""Command-line entry point.

Exit codes: 0 success, 1 analysis failure (violation, counterexample, non-apt
word), 2 usage, parse or validation error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import cipher as cph
from .complexity import big_o_witness, complexity_prefix, complexity_up, growth
from .invariance import (DEFAULT_OUTPUTS, check_invariance, closure_sample,
                         compare_complication, non_boolean_witness, oracle_from_name, orbit)
from .machine import (MachineValidationError, NotAptError, load_machine, series,
                      transform_stream, transform_up)
from .sweeps import SweepConfig, run_sweep
from .wordspec import WordSpecError, parse_word
from .words import UPWord, expand, split_letters, up_stream


class UsageError(Exception):
    pass


def _emit(obj, fmt: str, text_lines=None):
    if fmt == "json":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        for line in (text_lines if text_lines is not None else _flatten(obj)):
            print(line)


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}{k}.")
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        val = ",".join(map(str, obj)) if isinstance(obj, list) else obj
        yield f"{prefix[:-1]}: {val}"


def _up(text: str) -> UPWord:
    w = parse_word(text)
    if not isinstance(w, UPWord):
        raise UsageError(f"{text!r} is not an ultimately periodic word")
    return w


def _outputs(values):
    return tuple(split_letters(v) for v in values) if values else DEFAULT_OUTPUTS


# -- verbs ---------------------------------------------------------------------

def cmd_transform(args) -> int:
    m = load_machine(args.machine)
    x = parse_word(args.word)
    if args.prefix is not None:
        if isinstance(x, UPWord):
            x = up_stream(x)
        y = expand(transform_stream(m, x), args.prefix)
        _emit({"prefix": list(y.letters)}, args.format, [str(y)])
        return 0
    if not isinstance(x, UPWord):
        raise UsageError("--exact needs an ultimately periodic word; use --prefix N")
    y = transform_up(m, x)
    _emit({"word": y.spec(), "anti_period": y.anti_period, "period": y.period}, args.format,
          [y.spec(), f"anti-period={y.anti_period} period={y.period}"])
    return 0


def cmd_compose(args) -> int:
    m = series(load_machine(args.first), load_machine(args.second))
    text = json.dumps(m.to_dict(), indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_complexity(args) -> int:
    x = parse_word(args.word)
    if isinstance(x, UPWord) and args.prefix is None:
        prof = complexity_up(x, args.nmax)
    else:
        if args.prefix is None:
            raise UsageError("generator words need --prefix N")
        prof = complexity_prefix(x, args.prefix, args.nmax)
    g = growth(prof)
    rows = [(n, prof[n], g[n], prof.exactness[n]) for n in range(len(prof))]
    big_o = None
    if args.against:
        big_o = big_o_witness(prof, args.against, args.nmax)
    if args.format == "json":
        obj = {"word": prof.source, "rows": [dict(zip(("n", "f", "g", "exactness"), r)) for r in rows]}
        if big_o is not None:
            obj["big_o"] = {"against": args.against, "c": big_o, "window": args.nmax}
        _emit(obj, "json")
    elif args.format == "text":
        print(f"{'n':>4} {'f(n)':>8} {'g(n)':>8}  exactness")
        for n, f, gg, e in rows:
            print(f"{n:>4} {f:>8} {gg:>8}  {e}")
        if big_o is not None:
            print(f"f(n) <= {big_o}*|{args.against}| for n <= {args.nmax} (finite window only)")
    else:
        print("n,f,g,exactness")
        for r in rows:
            print(",".join(map(str, r)))
        if big_o is not None:
            print(f"# big-O witness against {args.against}: c={big_o} on n<={args.nmax}")
    return 0


def cmd_orbit(args) -> int:
    x = _up(args.word)
    if args.reach:
        rep = compare_complication(x, _up(args.reach), args.max_states)
        _emit(rep.to_dict(), args.format, [f"verdict: {rep.verdict}",
              f"x->y within {args.max_states} states: {'yes' if rep.forward else 'no'}",
              f"y->x within {args.max_states} states: {'yes' if rep.backward else 'no'}"])
        return 0
    rep = orbit(x, args.max_states, _outputs(args.outputs))
    _emit(rep.to_dict(), args.format,
          [f"seed: {x.spec()}", f"machines examined: {rep.machines_examined}",
           f"members ({len(rep.members)}):"] + [f"  {s}" for s in rep.member_specs()])
    return 0


def cmd_invariance(args) -> int:
    seeds = [_up(s) for s in args.seed_word] if args.seed_word else None
    outputs = _outputs(args.outputs)
    o1 = oracle_from_name(args.oracle)
    if args.oracle2:
        if not args.mode:
            raise UsageError("--oracle2 needs --mode union|intersection")
        verdict = closure_sample(o1, oracle_from_name(args.oracle2), args.mode,
                                 args.max_states, seeds, outputs)
    else:
        verdict = check_invariance(o1, args.max_states, seeds, outputs)
    d = verdict.to_dict()
    lines = [f"oracle: {verdict.oracle}", f"cases: {verdict.cases}",
             f"result: {'pass' if verdict.passed else 'fail'}"]
    if not verdict.passed:
        ce = d["counterexample"]
        lines += [f"counterexample: {ce['word_in']} -> {ce['word_out']} "
                  f"(machine #{ce['machine_index']})",
                  "machine: " + json.dumps(ce["machine"], sort_keys=True),
                  f"replay: {verdict.replay}"]
    _emit(d, args.format, lines)
    return 0 if verdict.passed else 1


def cmd_witness(args) -> int:
    cps = tuple(int(c) for c in args.checkpoints.split(","))
    rep = non_boolean_witness(args.n, cps)
    d = rep.to_dict()
    lines = [f"N: {rep.N}",
             f"V1(z') = y on prefix: {rep.v1_reproduces_y}",
             f"V2(z'') = y on prefix: {rep.v2_reproduces_y}"]
    for name in ("stabilized", "recurrent"):
        r = d[name]
        if r:
            lines.append(f"{name}: factor {r['factor']} in {r['word']} counts {r['counts']} "
                         f"at {r['checkpoints']} -> {r['verdict']}")
    lines.append(f"result: {'pass' if rep.passed else 'fail'}")
    if not rep.passed:
        lines.append(f"replay: {d['replay']}")
    _emit(d, args.format, lines)
    return 0 if rep.passed else 1


def _read_bits(path) -> str:
    with open(path) as fh:
        return cph.check_bits("".join(fh.read().split()))


def cmd_cipher(args) -> int:
    key, session = cph.load_key(args.key), cph.load_session(args.session)
    if args.action in ("encrypt", "decrypt"):
        if not args.infile or not args.outfile:
            raise UsageError(f"cipher {args.action} needs --in and --out")
        text = _read_bits(args.infile)
        fn = cph.encrypt_with if args.action == "encrypt" else cph.decrypt_with
        with open(args.outfile, "w") as fh:
            fh.write(fn(key, session, text) + "\n")
        return 0
    if args.length is None:
        raise UsageError(f"cipher {args.action} needs --length")
    if args.action == "keystream":
        ks = cph.keystream(key, session, args.length - 1) if args.length > 0 else ""
        _emit({"keystream": ks}, args.format, [ks])
        return 0
    rep = cph.keystream_quality(key, session, args.length, args.nmax)
    _emit(rep.to_dict(), args.format)
    return 0


def cmd_verify_theorem(args) -> int:
    for name in ("max_states", "max_u", "max_v", "alphabet_size"):
        if getattr(args, name) < (0 if name == "max_u" else 1):
            raise UsageError(f"--{name.replace('_', '-')} out of range")
    cfg = SweepConfig(args.max_states, args.max_u, args.max_v, args.alphabet_size,
                      args.sim_len, args.nmax, not args.no_simulate, not args.no_complexity)
    rep = run_sweep(cfg)
    d = rep.to_dict()
    d.pop("seconds")
    lines = [f"cases: {rep.cases}", f"violations: {rep.violations}",
             f"  period: {len(rep.period_violations)}",
             f"  anti-period: {len(rep.anti_period_violations)}",
             f"  simulation: {len(rep.simulation_mismatches)}",
             f"  complexity quotient: {len(rep.quotient_violations)}",
             "histogram (p, |v|, smallest tau): count"]
    lines += [f"  ({p}, {lv}, {tau}): {n}" for (p, lv, tau), n in sorted(rep.histogram.items(),
                                                                          key=lambda kv: (kv[0][0], kv[0][1], kv[0][2] or 0))]
    if rep.violations:
        lines.append(f"replay: {d['replay']}")
    _emit(d, args.format, lines)
    return 1 if rep.violations else 0


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mealywords",
                                description="Mealy machines on infinite words.")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.set_defaults(fn=fn)
        return sp

    sp = verb("transform", cmd_transform, "apply a machine to a word")
    sp.add_argument("--machine", required=True)
    sp.add_argument("--word", required=True)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true", default=True)
    g.add_argument("--prefix", type=int)

    sp = verb("compose", cmd_compose, "series composition of two machine files")
    sp.add_argument("--first", required=True)
    sp.add_argument("--second", required=True)
    sp.add_argument("--out")

    sp = sub.add_parser("complexity", help="subword complexity and growth profile")
    sp.add_argument("--format", choices=("csv", "text", "json"), default="csv")
    sp.set_defaults(fn=cmd_complexity)
    sp.add_argument("--word", required=True)
    sp.add_argument("--nmax", type=int, required=True)
    sp.add_argument("--prefix", type=int)
    sp.add_argument("--against", help="comparison function for a big-O witness, e.g. n+1")

    sp = verb("orbit", cmd_orbit, "bounded orbit of an ultimately periodic word")
    sp.add_argument("--word", required=True)
    sp.add_argument("--max-states", "--maxQ", dest="max_states", type=int, required=True)
    sp.add_argument("--outputs", action="append", help="output alphabet, e.g. 0,1 (repeatable)")
    sp.add_argument("--reach", help="compare mutual reachability with this word instead")

    sp = verb("invariance", cmd_invariance, "bounded machine-invariance check of an oracle")
    sp.add_argument("--oracle", required=True)
    sp.add_argument("--oracle2")
    sp.add_argument("--mode", choices=("union", "intersection"))
    sp.add_argument("--max-states", "--maxQ", dest="max_states", type=int, required=True)
    sp.add_argument("--seed-word", action="append")
    sp.add_argument("--outputs", action="append")

    sp = verb("witness", cmd_witness, "two merged words mapped back onto Thue-Morse")
    sp.add_argument("--n", type=int, default=8192)
    sp.add_argument("--checkpoints", default="1000,10000")

    sp = verb("cipher", cmd_cipher, "keystream cipher")
    sp.add_argument("action", choices=("encrypt", "decrypt", "keystream", "quality"))
    sp.add_argument("--key", required=True)
    sp.add_argument("--session", required=True)
    sp.add_argument("--in", dest="infile")
    sp.add_argument("--out", dest="outfile")
    sp.add_argument("--length", type=int)
    sp.add_argument("--nmax", type=int, default=8)

    sp = verb("verify-theorem", cmd_verify_theorem, "exhaustive period/anti-period sweep")
    sp.add_argument("--max-states", "--maxQ", dest="max_states", type=int, default=2)
    sp.add_argument("--max-u", "--maxU", dest="max_u", type=int, default=1)
    sp.add_argument("--max-v", "--maxV", dest="max_v", type=int, default=3)
    sp.add_argument("--alphabet-size", type=int, default=2)
    sp.add_argument("--sim-len", type=int, default=200)
    sp.add_argument("--nmax", type=int, default=10)
    sp.add_argument("--no-simulate", action="store_true")
    sp.add_argument("--no-complexity", action="store_true")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else 0
    try:
        return args.fn(args)
    except NotAptError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (UsageError, WordSpecError, MachineValidationError, ValueError, KeyError,
            OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
