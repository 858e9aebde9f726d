"""hskernel run <session.json> [command ...] [--seed N] [--cases N] [--target M] [--json out.json]

Exit codes: 0 success, 1 mathematical negative, 2 usage error, 3 desk-scale cap.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from typing import List, Optional

from . import verify
from .config import DeskScaleError
from .diffop import DiffOp, OrderError, op_compose
from .graded_dual import divided_power, shuffle, theta
from .hs import HSDerivation, hs_compose, hs_of_derivation, hs_truncate, is_exponential_type, total_symbol
from .logarithmic import (
    NotLogarithmic,
    UnsupportedIdeal,
    is_log_derivation,
    is_log_hs,
    log_failures,
    obstruction_step,
    step_integrate,
)
from .session import COMMAND_ARITY, Session, SessionError, command_problems, load_session, split_ref

OK, NEGATIVE, USAGE, DESK = 0, 1, 2, 3


class UsageError(ValueError):
    pass


class Result:
    def __init__(self, command: str):
        self.command = command
        self.code = OK
        self.lines: List[str] = []
        self.data: dict = {}

    def out(self, line: str = ""):
        self.lines.extend(str(line).split("\n"))

    def text(self) -> str:
        return "\n".join([f"$ {self.command}"] + self.lines + [f"exit {self.code}"])

    def to_json(self) -> dict:
        return {"command": self.command, "exit": self.code, "report": self.lines, "data": self.data}


def _command_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hskernel run SESSION", add_help=False, exit_on_error=False)
    p.add_argument("words", nargs="*")
    p.add_argument("--seed", type=int)
    p.add_argument("--cases", type=int)
    p.add_argument("--target", type=int)
    p.add_argument("--degree", type=int)
    p.add_argument("--power", type=int)
    p.add_argument("--json", dest="json_out")
    return p


def _parse_words(tokens: List[str]) -> argparse.Namespace:
    try:
        ns, extra = _command_parser().parse_known_args(tokens)
    except argparse.ArgumentError as exc:
        raise UsageError(str(exc)) from None
    if extra:
        raise UsageError(f"unrecognized arguments: {' '.join(extra)}")
    return ns


# item lookup

def _item(session: Session, ref: str):
    name, idx = split_ref(ref)
    if name not in session.items:
        raise UsageError(f"unknown item {name!r}")
    kind, value = session.items[name]
    if idx is None:
        return kind, value
    if kind != "hs":
        raise UsageError(f"{name!r} is a {kind}, only HS derivations have components")
    if idx > value.length:
        raise UsageError(f"{name!r} has length {value.length}, no component {idx}")
    return "diffop", value.component(idx)


def _operator(session: Session, ref: str) -> DiffOp:
    kind, value = _item(session, ref)
    if kind == "poly":
        return DiffOp.mult(value)
    if kind != "diffop":
        raise UsageError(f"{ref!r} is an HS derivation; use {ref}:i for its i-th component")
    return value


def _hs(session: Session, ref: str) -> HSDerivation:
    kind, value = _item(session, ref)
    if kind == "hs":
        return value
    if kind == "diffop":
        return hs_of_derivation(value)
    raise UsageError(f"{ref!r} is a polynomial, not an HS derivation")


def _ideal(session: Session):
    if session.ideal is None:
        raise UsageError("this command needs an 'ideal' in the session")
    return session.ideal


def _degree(P: DiffOp, override: Optional[int]) -> int:
    if override is not None:
        return override
    return P.order() or 0


def _components_lines(D: HSDerivation) -> List[str]:
    return [f"D_{i} = {P}" for i, P in enumerate(D.components())]


def _hs_lines(D: HSDerivation) -> List[str]:
    return [f"{name} -> {s}" for name, s in zip(D.ring.names, D.images)]


# commands

def cmd_check_log(session, args, res):
    J = _ideal(session)
    kind, value = _item(session, args.words[0])
    if kind == "diffop":
        ok = is_log_derivation(value, J)
        res.out(f"derivation {args.words[0]}: {'logarithmic' if ok else 'NOT logarithmic'} for J = {J}")
        res.data = {"logarithmic": ok}
        res.code = OK if ok else NEGATIVE
        return
    if kind != "hs":
        raise UsageError("check-log takes a derivation or an HS derivation")
    fails = log_failures(value, J)
    ok = not fails
    res.out(f"HS derivation {args.words[0]} (length {value.length}): "
            f"{'logarithmic' if ok else 'NOT logarithmic'} for J = {J}")
    for i, g, nf in fails:
        res.out(f"  D_{i}({g}) obstruction NF: {nf}")
    res.data = {"logarithmic": ok, "failures": [[i, str(g), str(nf)] for i, g, nf in fails]}
    res.code = OK if ok else NEGATIVE


def cmd_components(session, args, res):
    D = _hs(session, args.words[0])
    for line in _components_lines(D):
        res.out(line)
    res.data = {"components": [str(P) for P in D.components()]}


def cmd_compose(session, args, res):
    a, b = args.words
    ka, _ = _item(session, a)
    kb, _ = _item(session, b)
    if ka == "hs" or kb == "hs":
        D, E = _hs(session, a), _hs(session, b)
        m = min(D.length, E.length)
        if D.length != m or E.length != m:
            res.out(f"truncating to common length {m}")
        C = hs_compose(hs_truncate(D, m), hs_truncate(E, m))
        for line in _hs_lines(C) + _components_lines(C):
            res.out(line)
        res.data = {"hs": C.to_json(), "components": [str(P) for P in C.components()]}
        return
    P = op_compose(_operator(session, a), _operator(session, b))
    res.out(f"{a} o {b} = {P}")
    res.data = {"operator": str(P)}


def cmd_total_symbol(session, args, res):
    D = _hs(session, args.words[0])
    S = total_symbol(D)
    for i, s in enumerate(S.slots):
        res.out(f"sigma_{i}(D_{i}) = {s.as_diffop()}")
    exp = is_exponential_type(S)
    res.out(f"exponential type: {'yes' if exp else 'no'}")
    res.data = {"slots": [str(s.as_diffop()) for s in S.slots], "exponential_type": exp}
    res.code = OK if exp else NEGATIVE


def cmd_theta(session, args, res):
    P = _operator(session, args.words[0])
    n = _degree(P, args.degree)
    u = theta(P, n)
    res.out(f"theta_{n}({args.words[0]})")
    res.out(u)
    res.data = {"degree": n, "values": {str(list(a)): str(v) for a, v in sorted(u.values.items())}}


def cmd_shuffle(session, args, res):
    a, b = args.words
    P, Q = _operator(session, a), _operator(session, b)
    n, m = _degree(P, None), _degree(Q, None)
    w = shuffle(theta(P, n), theta(Q, m))
    res.out(f"theta_{n}({a}) * theta_{m}({b})")
    res.out(w)
    same = theta(op_compose(P, Q), n + m) == w
    res.out(f"equals theta_{n + m}({a} o {b}): {'yes' if same else 'no'}")
    res.data = {"degree": n + m, "values": {str(list(g)): str(v) for g, v in sorted(w.values.items())},
                "matches_composition": same}
    res.code = OK if same else NEGATIVE


def cmd_divided_power(session, args, res):
    P = _operator(session, args.words[0])
    n = _degree(P, args.degree)
    i = 2 if args.power is None else args.power
    if n < 1:
        raise UsageError("divided powers need an operator of positive degree")
    rho = divided_power(theta(P, n), i)
    res.out(f"rho_{i}(theta_{n}({args.words[0]}))")
    res.out(rho)
    res.data = {"degree": rho.degree, "values": {str(list(g)): str(v) for g, v in sorted(rho.values.items())}}


def cmd_obstruction(session, args, res):
    J = _ideal(session)
    D = _hs(session, args.words[0])
    if not is_log_hs(D, J):
        i, g, nf = log_failures(D, J)[0]
        res.out(f"{args.words[0]} is not logarithmic: D_{i}({g}) obstruction NF: {nf}")
        res.data = {"ok": False, "step": D.length, "obstruction_nf": str(nf)}
        res.code = NEGATIVE
        return
    rep = obstruction_step(D, J)
    res.out(rep.render())
    res.data = {"ok": rep.ok, "step": rep.step, "obstruction_nf": str(rep.obstruction_poly),
                "correction": None if rep.correction is None else str(rep.correction)}
    res.code = OK if rep.ok else NEGATIVE


def cmd_step_integrate(session, args, res):
    J = _ideal(session)
    kind, value = _item(session, args.words[0])
    if kind == "poly":
        raise UsageError("step-integrate takes a derivation or an HS derivation")
    target = args.target if args.target is not None else 4
    trace = step_integrate(value, J, target)
    res.out(trace.render())
    res.data = {"ok": trace.ok, "target": target, "steps": [r.render() for r in trace.reports]}
    res.code = OK if trace.ok else NEGATIVE


def cmd_verify(session, args, res):
    seed = 42 if args.seed is None else args.seed
    cases = 200 if args.cases is None else args.cases
    results = verify.run_all(seed, cases)
    res.out(f"seed {seed}, {cases} cases per suite")
    res.out(verify.render_table(results))
    res.data = verify.summary_json(results)
    res.code = OK if all(r.ok for r in results) else NEGATIVE


COMMANDS = {
    "check-log": cmd_check_log,
    "components": cmd_components,
    "compose": cmd_compose,
    "total-symbol": cmd_total_symbol,
    "theta": cmd_theta,
    "shuffle": cmd_shuffle,
    "divided-power": cmd_divided_power,
    "obstruction": cmd_obstruction,
    "step-integrate": cmd_step_integrate,
    "verify-theorems": cmd_verify,
}
assert set(COMMANDS) == set(COMMAND_ARITY)


def run_command(session: Session, tokens: List[str], defaults: Optional[argparse.Namespace] = None) -> Result:
    """Run one command; flags given on the command line fill in what the command leaves unset."""
    res = Result(" ".join(shlex.quote(t) for t in tokens))
    try:
        problems = command_problems(shlex.join(tokens), session.items)
        if problems:
            raise UsageError("; ".join(problems))
        args = _parse_words(tokens)
        if defaults is not None:
            for key in ("seed", "cases", "target", "degree", "power"):
                if getattr(args, key) is None:
                    setattr(args, key, getattr(defaults, key))
        name = args.words[0]
        args.words = args.words[1:]
        COMMANDS[name](session, args, res)
    except UsageError as exc:
        res.out(f"usage error: {exc}")
        res.code = USAGE
    except DeskScaleError as exc:
        res.out(f"desk-scale limit: {exc}")
        res.code = DESK
    except (NotLogarithmic, OrderError) as exc:
        res.out(f"negative: {exc}")
        res.code = NEGATIVE
    except (UnsupportedIdeal, ValueError) as exc:
        res.out(f"usage error: {exc}")
        res.code = USAGE
    return res


def run(session: Session, tokens: Optional[List[str]] = None,
        defaults: Optional[argparse.Namespace] = None) -> List[Result]:
    """One command from ``tokens``, or the session's own command list when empty."""
    if tokens:
        return [run_command(session, tokens, defaults)]
    return [run_command(session, shlex.split(c), defaults) for c in session.commands]


def exit_code(results: List[Result]) -> int:
    return max((r.code for r in results), default=OK)


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] in ("-h", "--help"):
        print(__doc__.strip())
        return OK if argv else USAGE
    if argv[0] != "run" or len(argv) < 2:
        print(f"usage error: expected 'run <session.json> [command]', got {' '.join(argv)!r}", file=sys.stderr)
        return USAGE
    path, rest = argv[1], argv[2:]
    try:
        opts = _parse_words(rest)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE
    try:
        session = load_session(path)
    except OSError as exc:
        print(f"usage error: cannot read {path}: {exc.strerror}", file=sys.stderr)
        return USAGE
    except SessionError as exc:
        for e in exc.errors:
            print(f"{path}: {e}", file=sys.stderr)
        return USAGE
    except DeskScaleError as exc:
        print(f"desk-scale limit: {exc}", file=sys.stderr)
        return DESK

    # keep the command words, drop options that only concern the CLI itself
    tokens = []
    skip = False
    for w in rest:
        if skip:
            skip = False
        elif w == "--json":
            skip = True
        elif w.startswith("--json="):
            continue
        else:
            tokens.append(w)
    command_words = opts.words
    results = run(session, tokens if command_words else None, opts)
    print("\n\n".join(r.text() for r in results))
    code = exit_code(results)
    if opts.json_out:
        with open(opts.json_out, "w", encoding="utf-8") as fh:
            json.dump({"exit": code, "results": [r.to_json() for r in results]}, fh, indent=2)
            fh.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
