"""Command-line front end.

Exit codes: 0 success, 2 mathematical failure (no filtration, non-divisive data,
failed validation, non-member), 1 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .algebra.theory import DEFAULT_TRUNCATION, make_theory
from .builtins import BUILTIN_GKM, BUILTIN_GRAPHS, builtin
from .cohomology import (build_system, compute_basis, decompose, default_degree_cap,
                         is_member)
from .document import class_to_dict, data_file, parse_class, parse_document, shipped_files
from .errors import GKMError, MathError
from .gkm import GKMComplex, check_divisive, validate_axial, validate_connection
from .graphs import Filtration, SimplicialGraphComplex, filter_complex, filter_regular

log = logging.getLogger("gkmcalc")

EXIT_OK, EXIT_USAGE, EXIT_MATH = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_source(source: str) -> SimplicialGraphComplex | GKMComplex:
    """A JSON path, a shipped data file name, or ``builtin:NAME[:a,b,...]``."""
    if source.startswith("builtin:"):
        _, _, rest = source.partition(":")
        name, _, args = rest.partition(":")
        try:
            nums = tuple(int(a) for a in args.split(",") if a.strip())
        except ValueError:
            raise UsageError(f"builtin arguments must be integers: {args!r}") from None
        try:
            return builtin(name, nums)
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(str(exc).strip("'\"")) from None
    p = Path(source)
    if not p.exists():
        try:
            p = data_file(source)
        except FileNotFoundError:
            raise UsageError(f"no such file or shipped example: {source}") from None
    return parse_document(p)


def _complex(obj):
    return obj.complex if isinstance(obj, GKMComplex) else obj


def _require_gkm(obj, command):
    if not isinstance(obj, GKMComplex):
        raise UsageError(f"{command} needs GKM data (the input has no axial table)")
    return obj


def make_filtration(obj, seed: str | None) -> Filtration:
    c = _complex(obj)
    seed = seed or c.vertices[0]
    if seed not in c.vertices:
        raise UsageError(f"seed {seed!r} is not a vertex")
    if len(c.members) == 1:
        return filter_regular(c.members[0], seed)
    return filter_complex(c, seed)


def _write_out(path, payload):
    if path:
        Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def _filtration_dict(f: Filtration) -> dict:
    return {"ordering": list(f.ordering), "degrees": list(f.degrees),
            "downward": [[e.label for e in down] for down in f.downward_edges]}


def cmd_validate(args) -> int:
    obj = load_source(args.source)
    c = _complex(obj)
    print(f"complex: {len(c.vertices)} vertices, {len(c.edges)} edges, "
          f"members {', '.join(f'{m.name} (degree {m.degree})' for m in c.members)}")
    result = {"members": c.names, "ok": True}
    if not isinstance(obj, GKMComplex):
        print("structure: ok (no GKM data)")
        _write_out(args.out, result)
        return EXIT_OK
    ax = validate_axial(obj)
    conn = validate_connection(obj)
    for name, rep in (("axial function", ax), ("connection", conn)):
        print(f"{name}: {'ok' if rep.ok else 'FAILED'}")
        for v in rep.violations:
            print(f"  {v}")
    if conn.witnesses:
        print("congruence witnesses c(e, e'):")
        for (e, e1), w in sorted(conn.witnesses.items()):
            print(f"  {e.label:>8}  {e1.label:>8}  {w}")
    ok = ax.ok and conn.ok
    result.update(ok=ok, violations=[str(v) for v in ax.violations + conn.violations],
                  witnesses=[[e.label, e1.label, w] for (e, e1), w in
                             sorted(conn.witnesses.items())])
    if ok:
        try:
            f = make_filtration(obj, args.seed)
        except MathError as exc:
            print(f"divisive: unknown ({exc})")
        else:
            div = check_divisive(obj, f)
            result["divisive"] = div.ok
            print("divisive: yes" if div else
                  f"divisive: no (r~ = {div.rtilde} on {div.witness.label})")
    _write_out(args.out, result)
    return EXIT_OK if ok else EXIT_MATH


def cmd_filter(args) -> int:
    f = make_filtration(load_source(args.source), args.seed)
    for line in f.summary():
        print(line)
    print(f"sum of d_j = {sum(f.degrees)}")
    _write_out(args.out, _filtration_dict(f))
    return EXIT_OK


def _system(args, gc):
    f = make_filtration(gc, args.seed)
    theory = make_theory(args.theory, gc.torus_rank, args.trunc, args.rational)
    return build_system(gc, f, theory), f


def cmd_basis(args) -> int:
    gc = _require_gkm(load_source(args.source), "basis")
    sys_, f = _system(args, gc)
    cap = args.degree_cap if args.degree_cap is not None else default_degree_cap(sys_)
    basis = compute_basis(sys_, cap)
    print(f"theory {sys_.theory.label}, ordering {' '.join(f.ordering)}, "
          f"degrees {list(sys_.degrees)}")
    out = []
    all_ok = True
    for b in basis:
        ok = bool(is_member(sys_, b.cls))
        all_ok &= ok
        print(f"phi_{b.j} [{'member' if ok else 'NOT A MEMBER'}]")
        for line in b.cls.render():
            print(f"  {line}")
        out.append({"j": b.j, "vertex": b.vertex, "member": ok, **class_to_dict(b.cls)})
    print(f"{len(basis)} basis classes, {'all' if all_ok else 'not all'} verified by is_member")
    _write_out(args.out, {"theory": sys_.theory.label, "filtration": _filtration_dict(f),
                          "basis": out})
    return EXIT_OK if all_ok else EXIT_MATH


def cmd_member(args) -> int:
    gc = _require_gkm(load_source(args.source), "member")
    if not args.class_file:
        raise UsageError("member needs --class FILE")
    sys_, _ = _system(args, gc)
    x = parse_class(args.class_file, sys_.theory, sys_.ordering)
    res = is_member(sys_, x)
    payload = {"theory": sys_.theory.label, "member": res.ok}
    if not res:
        j, s, rem = res.witness
        print(f"not a member: e_T({j}->{s}) does not divide x_{j} - x_{s} "
              f"(remainder {rem.render()})")
        payload["witness"] = [j, s, rem.render()]
        _write_out(args.out, payload)
        return EXIT_MATH
    print("member")
    cap = args.degree_cap if args.degree_cap is not None else default_degree_cap(sys_)
    basis = compute_basis(sys_, cap)
    coeffs = decompose(sys_, basis, x, check=False)
    for b, p in zip(basis, coeffs):
        print(f"  p_{b.j} = {p.render()}")
    payload["coefficients"] = [p.render() for p in coeffs]
    _write_out(args.out, payload)
    return EXIT_OK


def filtration_dot(obj, f: Filtration, name: str = "gkm") -> str:
    """Graphviz source: vertices labelled by filtration index, downward edges bold red
    and directed from b_j to b_s."""
    c = _complex(obj)
    pos = f.position
    lines = [f'graph "{name}" {{', "  node [shape=circle];"]
    for v in f.ordering:
        lines.append(f'  "{v}" [label="{pos[v]}: {v}"];')
    down = {e.undirected: e for row in f.downward_edges for e in row}
    for e in sorted(c.edges):
        de = down.get(e)
        if de is None:
            lines.append(f'  "{e[0]}" -- "{e[1]}";')
        else:
            lines.append(f'  "{de.source}" -- "{de.target}" '
                         f'[color=red, penwidth=2, dir=forward, '
                         f'label="d{pos[de.source]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export_dot(args) -> int:
    obj = load_source(args.source)
    f = make_filtration(obj, args.seed)
    text = filtration_dot(obj, f)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    known = ", ".join(sorted(BUILTIN_GKM) + sorted(BUILTIN_GRAPHS))
    p = _Parser(prog="gkmcalc", description="GKM graph complexes: validation, filtrations, "
                "equivariant cohomology bases.",
                epilog=f"SOURCE is a JSON file, a shipped example ({', '.join(shipped_files())})"
                       f" or builtin:NAME[:a,b,...] with NAME in {known}.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_, theory=False):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("source", metavar="SOURCE")
        sp.add_argument("--seed", help="first vertex of the filtration")
        sp.add_argument("--out", help="write a JSON result (DOT text for export-dot)")
        if theory:
            sp.add_argument("--theory", type=str.upper, choices=["H", "K", "MU"], default="H")
            sp.add_argument("--trunc", type=int, default=DEFAULT_TRUNCATION,
                            help="MU truncation degree (1..3)")
            sp.add_argument("--degree-cap", type=int, help="default: 2 * max d_j")
            sp.add_argument("--rational", action="store_true",
                            help="H with rational coefficients")
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "check the structure and GKM axioms")
    add("filter", cmd_filter, "compute a filtration")
    add("basis", cmd_basis, "compute a free module basis", theory=True)
    m = add("member", cmd_member, "test membership and decompose a class", theory=True)
    m.add_argument("--class", dest="class_file", metavar="FILE",
                   help='JSON {"values": {vertex: element}}')
    add("export-dot", cmd_export_dot, "write the filtration as a Graphviz graph")
    return p


def _configure_logging():
    level = os.environ.get("GKM_LOG", "WARNING").upper()
    if level.isdigit():
        level = int(level)
    logging.basicConfig(level=level if isinstance(level, int)
                        else getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv: Sequence[str] | None = None) -> int:
    _configure_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MathError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH
    except (GKMError, UsageError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
