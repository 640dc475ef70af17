"""Command line front end.

    shapoval roots  INPUT
    shapoval det    INPUT --alpha 1,1
    shapoval verify INPUT [--max-height H]
    shapoval verma  INPUT --beta 1,0 --t 1 [--max-height H]
    shapoval uqg    INPUT --alpha 1,0 [--small]

The JSON report goes to stdout (or --out); a plain-text summary goes to stderr.
Exit codes: 0 ok, 1 verification mismatch, 2 hypothesis violation,
3 cap exceeded / undecided, 4 input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import yaml
from gmpy2 import mpq

from .bicharacter import Bicharacter, Weight
from .errors import InputError, ShapovalError
from .exactfield import INF, UnitValue
from .nicholsoracle import NicholsOracle
from .shapformula import (
    CARTAN_TYPES,
    SYMMETRIZERS,
    partition,
    pbw_dim,
    shapdet_formula,
    uqg_bicharacter,
    uqg_shapdet,
    weights_up_to,
)
from .u0ring import equal_up_to_unit
from .verma import lambda_on_hyperplane, radical_dim
from .weylgroupoid import Caps, all_records, check_axioms, classify, orbit, positive_roots

SCHEMA = 1
DEFAULT_MAX_HEIGHT = 6


@dataclass
class UqgBlock:
    cartan_type: str
    cartan: Tuple[Tuple[int, ...], ...]
    d: Tuple[int, ...]
    q: UnitValue


@dataclass
class ParsedInput:
    rank: int
    order: int
    chi: Bicharacter
    uqg: Optional[UqgBlock] = None
    source: str = ""
    notes: List[str] = field(default_factory=list)


# ----------------------------------------------------------------------
# parsing
# ----------------------------------------------------------------------

def _where(node) -> str:
    m = node.start_mark
    return f"line {m.line + 1}, column {m.column + 1}"


def _mapping(node, what: str) -> dict:
    if not isinstance(node, yaml.MappingNode):
        raise InputError(f"{what} must be a mapping ({_where(node)})")
    out = {}
    for k, v in node.value:
        if not isinstance(k, yaml.ScalarNode):
            raise InputError(f"bad key in {what} ({_where(k)})")
        if k.value in out:
            raise InputError(f"duplicate key {k.value!r} in {what} ({_where(k)})")
        out[k.value] = v
    return out


def _int(node, what: str) -> int:
    if not isinstance(node, yaml.ScalarNode):
        raise InputError(f"{what} must be an integer ({_where(node)})")
    try:
        return int(node.value)
    except ValueError:
        raise InputError(f"{what} must be an integer, got {node.value!r} ({_where(node)})") from None


def _seq(node, what: str) -> list:
    if not isinstance(node, yaml.SequenceNode):
        raise InputError(f"{what} must be a list ({_where(node)})")
    return node.value


def _unit(node, n_in: int, n: int, what: str) -> UnitValue:
    """Read {rat, zeta, z}; zeta is an exponent of zeta_{n_in}, rescaled to zeta_n."""
    m = _mapping(node, what)
    for key in m:
        if key not in ("rat", "zeta", "z"):
            raise InputError(f"unknown field {key!r} in {what} ({_where(m[key])})")
    rat_text = m["rat"].value if "rat" in m else "1"
    try:
        rat = Fraction(str(rat_text))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{what}: rat must be a rational, got {rat_text!r} ({_where(m['rat'])})") from None
    if rat == 0:
        raise InputError(f"{what}: entry is zero, values must lie in k^x ({_where(node)})")
    zeta = _int(m["zeta"], f"{what}.zeta") if "zeta" in m else 0
    zexp = _int(m["z"], f"{what}.z") if "z" in m else 0
    zeta = zeta * (n // n_in)
    if rat < 0:
        rat = -rat
        zeta += n // 2
    return UnitValue(mpq(rat.numerator, rat.denominator), zeta, zexp, n)


def parse_text(text: str, source: str = "<input>") -> ParsedInput:
    try:
        root = yaml.compose(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        pos = f" (line {mark.line + 1}, column {mark.column + 1})" if mark else ""
        raise InputError(f"{source}: malformed input{pos}: {getattr(exc, 'problem', exc)}") from None
    if root is None:
        raise InputError(f"{source}: empty input")
    top = _mapping(root, "input")
    for key in top:
        if key not in ("rank", "cyclotomic_order", "q", "uqg", "name", "description"):
            raise InputError(f"{source}: unknown key {key!r} ({_where(top[key])})")
    if "cyclotomic_order" not in top:
        raise InputError(f"{source}: missing cyclotomic_order ({_where(root)})")
    n_in = _int(top["cyclotomic_order"], "cyclotomic_order")
    if n_in < 1:
        raise InputError(f"{source}: cyclotomic_order must be positive ({_where(top['cyclotomic_order'])})")
    notes = []
    n = n_in if n_in % 2 == 0 else 2 * n_in
    if n != n_in:
        notes.append(f"cyclotomic order {n_in} doubled to {n}; zeta exponents doubled")
    uqg = None
    if "uqg" in top:
        ub = _mapping(top["uqg"], "uqg")
        if "cartan_type" not in ub or "q" not in ub:
            raise InputError(f"{source}: uqg block needs cartan_type and q ({_where(top['uqg'])})")
        ctype = ub["cartan_type"].value
        if ctype not in CARTAN_TYPES:
            raise InputError(f"{source}: unknown cartan_type {ctype!r} ({_where(ub['cartan_type'])})")
        cart = CARTAN_TYPES[ctype]
        d = tuple(_int(x, "uqg.d") for x in _seq(ub["d"], "uqg.d")) if "d" in ub else SYMMETRIZERS[ctype]
        if len(d) != len(cart):
            raise InputError(f"{source}: uqg.d has the wrong length ({_where(ub['d'])})")
        q = _unit(ub["q"], n_in, n, "uqg.q")
        uqg = UqgBlock(ctype, cart, d, q)
    if "q" in top:
        rows = _seq(top["q"], "q")
        rk = len(rows)
        mat = []
        for i, row in enumerate(rows):
            cells = _seq(row, f"q[{i + 1}]")
            if len(cells) != rk:
                raise InputError(f"{source}: q must be square, row {i + 1} has {len(cells)} entries ({_where(row)})")
            mat.append(tuple(_unit(c, n_in, n, f"q[{i + 1}][{j + 1}]") for j, c in enumerate(cells)))
        chi = Bicharacter(tuple(mat))
    elif uqg is not None:
        try:
            chi = uqg_bicharacter(uqg.cartan, uqg.d, uqg.q)
        except ValueError as exc:
            raise InputError(f"{source}: {exc}") from None
    else:
        raise InputError(f"{source}: need a q matrix or a uqg block ({_where(root)})")
    if "rank" in top:
        rk = _int(top["rank"], "rank")
        if rk != chi.rank:
            raise InputError(f"{source}: rank {rk} does not match the q matrix of size {chi.rank} ({_where(top['rank'])})")
    if uqg is not None and len(uqg.cartan) != chi.rank:
        raise InputError(f"{source}: uqg cartan_type rank differs from q matrix rank")
    return ParsedInput(chi.rank, n, chi, uqg, source, notes)


def parse_input(path: str) -> ParsedInput:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_text(text, path)


def parse_weight(text: str, rank: int, what: str) -> Weight:
    try:
        w = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"{what} must be comma-separated integers, got {text!r}") from None
    if len(w) != rank:
        raise InputError(f"{what} needs {rank} coordinates, got {len(w)}")
    return w


# ----------------------------------------------------------------------
# reports
# ----------------------------------------------------------------------

def _bound_json(b):
    return "inf" if b == INF else int(b)


def _one_based_pairs(d):
    return {f"{a + 1},{i + 1}": b for (a, i), b in sorted(d.items())}


def _input_json(inp: ParsedInput) -> dict:
    out = {"rank": inp.rank, "cyclotomic_order": inp.order, "q": inp.chi.to_json()}
    if inp.uqg:
        out["uqg"] = {"cartan_type": inp.uqg.cartan_type, "d": list(inp.uqg.d), "q": inp.uqg.q.to_json()}
    return out


def cmd_roots(inp: ParsedInput, args) -> Tuple[dict, List[str], int]:
    caps = _caps(args)
    klass = classify(inp.chi, caps)
    lines = [f"class: {klass}"]
    report = {"classification": klass}
    if klass in ("not_X1", "X1"):
        return report, lines, 0
    scheme = orbit(inp.chi, caps)
    records = all_records(scheme, caps)
    report["orbit"] = [
        {"id": a, "q": obj.to_json(), "q_text": str(obj),
         "cartan": [list(row) for row in scheme.cartan[a]],
         "reflections": [scheme.reflections[(a, i)] for i in range(scheme.rank)]}
        for a, obj in enumerate(scheme.objects)]
    report["root_systems"] = [
        {"object": a, "positive_roots": [list(b) for b in rec.positive_roots],
         "bounds": [_bound_json(rec.bounds[b]) for b in rec.positive_roots], "class": rec.klass}
        for a, rec in records.items()]
    violations = check_axioms(scheme, records, caps)
    report["axiom_violations"] = violations
    lines.append(f"orbit: {len(scheme.objects)} object(s)")
    for a, rec in records.items():
        roots = ", ".join(f"{list(b)} (b={_bound_json(rec.bounds[b])})" for b in rec.positive_roots)
        lines.append(f"  object {a}: {scheme.objects[a]}  roots: {roots}")
    lines.append("axioms: all pass" if not violations else "axioms: " + "; ".join(violations))
    return report, lines, 0


def _caps(args) -> Caps:
    return Caps(max_objects=args.max_objects, max_length=args.max_length)


def cmd_det(inp: ParsedInput, args) -> Tuple[dict, List[str], int]:
    alpha = parse_weight(args.alpha, inp.rank, "--alpha")
    scheme = orbit(inp.chi, _caps(args))
    rec = positive_roots(scheme, 0, _caps(args))
    fac = shapdet_formula(inp.chi, rec, alpha)
    report = {"alpha": list(alpha), "dimension": pbw_dim(rec, alpha), "factors": fac.to_json(),
              "text": str(fac)}
    return report, [f"det_{list(alpha)} = {fac}"], 0


def _max_height(args) -> int:
    if args.max_height is not None:
        return args.max_height
    env = os.environ.get("SHAPOVAL_MAX_HEIGHT")
    if env is None:
        return DEFAULT_MAX_HEIGHT
    try:
        return int(env)
    except ValueError:
        raise InputError(f"SHAPOVAL_MAX_HEIGHT must be an integer, got {env!r}") from None


def cmd_verify(inp: ParsedInput, args) -> Tuple[dict, List[str], int]:
    h = _max_height(args)
    caps = _caps(args)
    scheme = orbit(inp.chi, caps)
    rec = positive_roots(scheme, 0, caps)
    oracle = NicholsOracle(inp.chi)
    rows = []
    ok_all = True
    for alpha in weights_up_to(inp.rank, h):
        fac = shapdet_formula(inp.chi, rec, alpha)
        dim = oracle.dim(alpha)
        pdim = pbw_dim(rec, alpha)
        match = dim == pdim and equal_up_to_unit(fac.expand(), oracle.det_brute(alpha))
        ok_all &= match
        rows.append({"alpha": list(alpha), "dimension": dim, "pbw_dim": pdim, "match": match})
    lines = [f"{'ok ' if r['match'] else 'BAD'} alpha={r['alpha']} dim={r['dimension']}" for r in rows]
    lines.append("all degrees match" if ok_all else "MISMATCH")
    return {"max_height": h, "degrees": rows, "all_match": ok_all}, lines, 0 if ok_all else 1


def cmd_verma(inp: ParsedInput, args) -> Tuple[dict, List[str], int]:
    h = _max_height(args)
    caps = _caps(args)
    beta = parse_weight(args.beta, inp.rank, "--beta")
    scheme = orbit(inp.chi, caps)
    rec = positive_roots(scheme, 0, caps)
    lam = lambda_on_hyperplane(inp.chi, rec, beta, args.t)
    oracle = NicholsOracle(inp.chi)
    rows = []
    ok_all = True
    for alpha in weights_up_to(inp.rank, h):
        cor = radical_dim(inp.chi, lam, alpha, oracle).corank
        p = partition(rec, alpha, beta, args.t)
        ok_all &= cor == p
        rows.append({"alpha": list(alpha), "corank": cor, "P": p, "match": cor == p})
    lines = [f"Lambda: K={lam.to_json()['K']} L={lam.to_json()['L']}"]
    lines += [f"{'ok ' if r['match'] else 'BAD'} alpha={r['alpha']} corank={r['corank']} P={r['P']}" for r in rows]
    lines.append("all coranks match" if ok_all else "MISMATCH")
    report = {"beta": list(beta), "t": args.t, "lambda": lam.to_json(), "max_height": h,
              "degrees": rows, "all_match": ok_all}
    return report, lines, 0 if ok_all else 1


def cmd_uqg(inp: ParsedInput, args) -> Tuple[dict, List[str], int]:
    if inp.uqg is None:
        raise InputError("the uqg command needs a uqg block in the input")
    alpha = parse_weight(args.alpha, inp.rank, "--alpha")
    u = inp.uqg
    fac = uqg_shapdet(u.cartan, u.d, u.q, alpha, args.small, _caps(args))
    report = {"alpha": list(alpha), "small": bool(args.small), "factors": fac.to_json(), "text": str(fac)}
    if fac.lattice:
        report["lattice"] = [list(v) for v in fac.lattice]
    return report, [f"det_{list(alpha)} = {fac}"], 0


COMMANDS = {"roots": cmd_roots, "det": cmd_det, "verify": cmd_verify, "verma": cmd_verma, "uqg": cmd_uqg}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="shapoval", description="Weyl groupoids and Shapovalov determinants")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("input", help="input file (YAML or JSON)")
        p.add_argument("--out", help="write the JSON report here instead of stdout")
        p.add_argument("--quiet", action="store_true", help="suppress the plain-text summary")
        p.add_argument("--max-objects", type=int, default=512, help="orbit size cap")
        p.add_argument("--max-length", type=int, default=64, help="word length cap")
        return p

    common(sub.add_parser("roots", help="orbit, root systems and classification"))
    p = common(sub.add_parser("det", help="closed-form determinant factorization"))
    p.add_argument("--alpha", required=True)
    p = common(sub.add_parser("verify", help="brute-force determinant vs formula"))
    p.add_argument("--max-height", type=int, default=None)
    p = common(sub.add_parser("verma", help="radical coranks at a hyperplane weight"))
    p.add_argument("--beta", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--max-height", type=int, default=None)
    p = common(sub.add_parser("uqg", help="U_q(g) / u_q(g) specialization"))
    p.add_argument("--alpha", required=True)
    p.add_argument("--small", action="store_true")
    return ap


def run(command: str, inp: ParsedInput, args) -> Tuple[dict, List[str], int]:
    report, lines, code = COMMANDS[command](inp, args)
    full = {"schema": SCHEMA, "command": command, "input": _input_json(inp)}
    if inp.notes:
        full["notes"] = inp.notes
    full.update(report)
    return full, lines, code


def _emit(report: dict, lines: Sequence[str], args) -> None:
    text = json.dumps(report, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not args.quiet:
        for line in lines:
            print(line, file=sys.stderr)


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 4 if exc.code else 0
    try:
        inp = parse_input(args.input)
        report, lines, code = run(args.command, inp, args)
    except ShapovalError as exc:
        err = {"schema": SCHEMA, "command": args.command, "error": type(exc).__name__,
               "message": str(exc), "exit_code": exc.code}
        _emit(err, [f"error: {exc}"], args)
        return exc.code
    _emit(report, lines, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
