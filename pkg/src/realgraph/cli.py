"""Command line: reports, graphs, claim verification and generator export.

Group arguments are spec strings::

    named:<name>:<param>    cyclic, dihedral, symmetric, alternating, quaternion8
    paper:g150 | paper:h199650
    twisted:<k>             k = 2 or 4
    file:<path>             a spec file, see parse_spec

Colons and blanks are interchangeable separators, so ``named dihedral 6``
is accepted as well.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Sequence

from . import constructions as cons
from . import groupkit as gk
from . import primegraph as pg
from . import verify
from .constructions import ConstructionError, GroupSpec
from .ffield import FieldError
from .groupkit import DEFAULT_CAP, FiniteGroup, ResourceError

EXIT_OK, EXIT_CLAIM, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class SpecError(ValueError):
    def __init__(self, msg: str, line: int = 1, col: int = 1):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


# -- spec parsing --------------------------------------------------------------------------

_HEADER = re.compile(r"^(matrix|perm|semidirect)\b(.*)$")
_KV = re.compile(r"(\w+)=(\S+)")


def _int(tok: str, line: int, col: int) -> int:
    try:
        return int(tok, 0)
    except ValueError:
        raise SpecError(f"expected an integer, got {tok!r}", line, col) from None


def _parse_token_spec(text: str) -> GroupSpec:
    raw = text.strip()
    toks = [t for t in re.split(r"[:\s]+", raw) if t]
    if not toks:
        raise SpecError("empty group specification")
    col = raw.find(toks[0]) + 1
    tag = toks[0]
    if tag == "named":
        if len(toks) not in (2, 3):
            raise SpecError("expected named:<name>:<param>", 1, col)
        name = toks[1]
        if name not in cons.NAMED and name != "quaternion":
            raise SpecError(f"unknown group name {name!r}", 1, raw.find(name) + 1)
        if len(toks) == 2:
            if name != "quaternion8":
                raise SpecError(f"{name} needs a parameter", 1, raw.find(name) + 1)
            param = 8
        else:
            param = _int(toks[2], 1, raw.rfind(toks[2]) + 1)
        return GroupSpec("named", name=name, param=param)
    if tag == "paper":
        if len(toks) != 2 or toks[1] not in ("g150", "h199650"):
            raise SpecError("expected paper:g150 or paper:h199650", 1, col)
        return GroupSpec("paper_" + toks[1])
    if tag == "twisted":
        if len(toks) != 2:
            raise SpecError("expected twisted:<k>", 1, col)
        return GroupSpec("twisted", param=_int(toks[1], 1, raw.rfind(toks[1]) + 1))
    raise SpecError(f"unknown spec tag {tag!r}", 1, col)


def _header(line: str, lineno: int) -> tuple[str, dict]:
    m = _HEADER.match(line)
    if not m:
        raise SpecError(f"expected 'matrix', 'perm' or 'semidirect', got {line.split()[0]!r}", lineno, 1)
    kv = {}
    for km in _KV.finditer(m.group(2)):
        kv[km.group(1)] = _int(km.group(2), lineno, m.start(2) + km.start(2) + 1)
    return m.group(1), kv


def _parse_file_spec(text: str) -> GroupSpec:
    """Line format::

        perm n=<n>                  then one image list per line (points 0..n-1)
        matrix p=<p> n=<n>          then n rows per generator
        semidirect p=<p> n=<n>      then a matrix block giving the acting generators

    Entries are separated by blanks or commas; '#' starts a comment.
    """
    lines = []
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((no, body))
    if not lines:
        raise SpecError("empty spec file")
    no, first = lines[0]
    kind, kv = _header(first, no)
    rest = lines[1:]
    wrap = None
    if kind == "semidirect":
        wrap = kv
        if not rest:
            raise SpecError("semidirect needs a matrix block", no, len(first) + 1)
        no, first = rest[0]
        kind, kv = _header(first, no)
        if kind != "matrix":
            raise SpecError("semidirect wraps a matrix block", no, 1)
        rest = rest[1:]
    need = {"perm": ("n",), "matrix": ("p", "n")}[kind]
    for key in need:
        if key not in kv:
            raise SpecError(f"{kind} header needs {key}=", no, len(first) + 1)
    rows = []
    for lno, body in rest:
        if _HEADER.match(body):
            raise SpecError("only one block per file", lno, 1)
        rows.append([_int(t, lno, body.find(t) + 1) for t in re.split(r"[,\s]+", body) if t])
    n = kv["n"]
    for (lno, body), r in zip(rest, rows):
        if len(r) != n:
            raise SpecError(f"expected {n} entries, got {len(r)}", lno, 1)
    if kind == "perm":
        return GroupSpec("permutation", n=n, gens=tuple(tuple(r) for r in rows))
    if len(rows) % n:
        raise SpecError(f"matrix rows do not form whole {n} x {n} generators", rest[-1][0] if rest else no, 1)
    gens = tuple(tuple(tuple(r) for r in rows[i:i + n]) for i in range(0, len(rows), n))
    if wrap is None:
        return GroupSpec("matrix", n=n, p=kv["p"], gens=gens)
    if wrap.get("p") != kv["p"] or wrap.get("n") != n:
        raise SpecError("semidirect p=, n= must match the matrix block", lines[0][0], 1)
    return GroupSpec("semidirect", n=n, p=kv["p"], gens=gens)


def parse_spec(text: str) -> GroupSpec:
    """A one-line spec string or the contents of a spec file."""
    first = next((ln.strip() for ln in text.splitlines() if ln.split("#", 1)[0].strip()), "")
    if _HEADER.match(first):
        return _parse_file_spec(text)
    if "\n" in text.strip():
        raise SpecError("multi-line input must start with a matrix, perm or semidirect header")
    return _parse_token_spec(text)


def resolve(arg: str) -> GroupSpec:
    """A command-line group argument, reading file:<path> from disk."""
    if arg.startswith("file:"):
        with open(arg[5:], encoding="utf-8") as fh:
            return parse_spec(fh.read())
    return parse_spec(arg)


# -- reports and graphs --------------------------------------------------------------------

REPORT_KEYS = (
    "order", "primes", "real_orders", "real_primes", "prime_graph", "real_prime_graph",
    "components_full", "components_real", "solvable", "nilpotent", "satisfies_P", "satisfies_R",
    "center_order", "fitting_order", "o2_order", "o2prime_order", "derived_series_orders",
)


def build_report(G: FiniteGroup) -> dict:
    full, real = pg.prime_graph(G), pg.real_prime_graph(G)
    spec = pg.real_spectrum(G)
    rep = {
        "order": G.order,
        "primes": list(G.primes),
        "real_orders": list(spec.orders),
        "real_primes": list(spec.primes),
        "prime_graph": full.to_dict(),
        "real_prime_graph": real.to_dict(),
        "components_full": pg.components(full).count,
        "components_real": pg.components(real).count,
        "solvable": gk.is_solvable(G),
        "nilpotent": gk.is_nilpotent(G),
        "satisfies_P": pg.satisfies_P(G).holds,
        "satisfies_R": pg.satisfies_R(G).holds,
        "center_order": gk.center(G).order,
        "fitting_order": gk.fitting(G).order,
        "o2_order": gk.p_core(G, 2).order,
        "o2prime_order": gk.o2prime(G).order,
        "derived_series_orders": [S.order for S in gk.derived_series(G)],
    }
    assert tuple(rep) == REPORT_KEYS
    return rep


def _compact(v) -> str:
    return json.dumps(v, separators=(",", ":"), sort_keys=True)


def render_report(rep: dict, as_json: bool) -> str:
    if as_json:
        return json.dumps(rep, sort_keys=True, indent=2) + "\n"
    return "".join(f"{k}: {_compact(rep[k])}\n" for k in REPORT_KEYS)


def render_dot(g: pg.PrimeGraph) -> str:
    parts = [f"{v};" for v in g.vertices] + [f"{p} -- {q};" for p, q in g.edges]
    return "graph G { " + " ".join(parts) + " }\n"


def render_graph_json(g: pg.PrimeGraph) -> str:
    return _compact(g.to_dict()) + "\n"


# -- argument handling ----------------------------------------------------------------------


def _seed(text: str) -> int:
    try:
        return int(text, 16)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a hexadecimal seed: {text!r}") from None


def _cap(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("cap must be positive")
    return n


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=_cap, default=argparse.SUPPRESS,
                        help=f"enumeration cap in elements (default {DEFAULT_CAP})")
    common.add_argument("--seed", type=_seed, default=argparse.SUPPRESS,
                        help=f"hex seed for sampled checks (default {verify.DEFAULT_SEED:X})")
    ap = argparse.ArgumentParser(prog="realgraph", parents=[common],
                                 description="Real elements and prime graphs of finite groups.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("report", parents=[common], help="structural report of a group")
    p.add_argument("spec")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("graph", parents=[common], help="prime graph or real prime graph")
    p.add_argument("spec")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--real", dest="which", action="store_const", const="real")
    which.add_argument("--full", dest="which", action="store_const", const="full")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--dot", dest="fmt", action="store_const", const="dot")
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    p.set_defaults(fmt="dot")

    p = sub.add_parser("verify-paper", parents=[common], help="run the claim suites")
    p.add_argument("--only", default=None, help="comma separated suite or claim ids")

    p = sub.add_parser("export-gap", parents=[common], help="order and generators as text")
    p.add_argument("spec")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    cap = getattr(args, "cap", DEFAULT_CAP)
    seed = getattr(args, "seed", verify.DEFAULT_SEED)
    out = sys.stdout
    try:
        if args.command == "verify-paper":
            only = [t for t in (args.only or "").split(",") if t] or None
            _, failed = verify.run(only, out, verify.Context(seed=seed))
            return EXIT_CLAIM if failed else EXIT_OK
        spec = resolve(args.spec)
        if args.command == "export-gap":
            out.write(cons.export_gap(spec, cap))
            return EXIT_OK
        G = cons.build(spec, cap)
        if args.command == "report":
            out.write(render_report(build_report(G), args.json))
        else:
            g = pg.real_prime_graph(G) if args.which == "real" else pg.prime_graph(G)
            out.write(render_dot(g) if args.fmt == "dot" else render_graph_json(g))
        return EXIT_OK
    except ResourceError as e:
        print(f"realgraph: resource cap: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (SpecError, ConstructionError, FieldError, verify.SelectionError, OSError) as e:
        print(f"realgraph: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
