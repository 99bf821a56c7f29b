"""Command-line front end: ``tlkit <command> ...``.

Exit status: 0 success, 1 usage error, 2 domain error, 3 selftest failure.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

import numpy as np

from .chebyshev import delta, mu
from .coeff_ring import eval_at
from .diagram import FullDiagram, HalfDiagram, identity, parse_full
from .encodings import (
    convert,
    enumerate_full,
    enumerate_half,
    half_to_brackets,
    half_to_path,
    half_to_restricted,
    parse_encoding,
    to_half,
)
from .errors import ParseError, TLError
from .half_module import UVector, build_ortho_basis, inner_u
from .matrix_iso import BlockMatrix, iso, normalized_iso
from .tl_algebra import TLElement, gram, mul, tl_gen, trace

DEFAULT_CAPS = {"enumerate": 12, "convert": 64, "ortho": 8, "iso": 5, "gram": 8, "mul": 12, "cheb": 64, "selftest": 8}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# --- helpers --------------------------------------------------------------------------


def _cap(command: str, n: int, no_cap: bool) -> None:
    if no_cap:
        return
    env = os.environ.get("TLKIT_MAX_N")
    limit = int(env) if env else DEFAULT_CAPS[command]
    if n > limit:
        raise UsageError(f"n={n} exceeds the cap of {limit} for '{command}' (use --no-cap or TLKIT_MAX_N)")
    if n < 0:
        raise UsageError("n must be nonnegative")


_GEN = re.compile(r"e_?(\d+)$")


def parse_element(text: str, n: int | None = None) -> TLElement:
    """An element from shorthand (``1``, ``e2``, ``e_2``), a diagram, or element text."""
    s = text.strip()
    if s == "1" or _GEN.match(s):
        if n is None:
            raise UsageError(f"shorthand {s!r} needs --n")
        return TLElement.basis(identity(n)) if s == "1" else tl_gen(n, int(_GEN.match(s).group(1)))
    if s.startswith("n") and "[" not in s:
        return TLElement.basis(parse_full(s))
    return TLElement.parse(s, n)


def art(d: HalfDiagram | FullDiagram) -> str:
    """Arches drawn with box characters over the point indices."""
    role = d.role if isinstance(d, HalfDiagram) else d.partner
    m = len(role)
    level = [0] * m
    # an arch's level is one more than the highest arch nested inside it
    for width in range(1, m):
        for k in range(m):
            j = role[k] - 1
            if role[k] and j - k == width:
                level[k] = level[j] = 1 + max([level[t] for t in range(k + 1, j)] or [0])
    top = max(level, default=0)
    rows = []
    for row in range(top, 0, -1):
        line = [" "] * (3 * m)
        for k in range(m):
            col = 3 * k
            j = role[k] - 1
            if not role[k]:
                line[col] = "│"
            elif level[k] == row:
                if k < j:
                    line[col] = "┌"
                    for c in range(col + 1, 3 * j):
                        line[c] = "─"
                else:
                    line[col] = "┐"
            elif level[k] > row:
                line[col] = "│"
        rows.append("".join(line).rstrip())
    rows.append("".join(f"{k:<3}" for k in range(1, m + 1)).rstrip())
    return "\n".join(rows)


def _emit(args, text_lines, payload) -> None:
    if args.format == "json":
        print(json.dumps(payload, ensure_ascii=False))
    else:
        for line in text_lines:
            print(line)


def _element_json(x: TLElement) -> dict:
    return {"n": x.n, "terms": [{"coeff": str(c), "diagram": str(d)} for d, c in x.items()], "text": str(x)}


# --- commands -------------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    _cap("enumerate", args.n, args.no_cap)
    ps = [args.p] if args.p is not None else list(range(args.n // 2 + 1))
    lines, groups = [], []
    for p in ps:
        labels = enumerate_half(args.n, p)
        lines.append(f"p={p} ({len(labels)})")
        items = []
        for a in labels:
            r = half_to_restricted(a)
            lines.append(f"  {a}    {r}    {half_to_path(a)}")
            if args.art:
                lines.extend("    " + row for row in art(a).splitlines())
            items.append(
                {"half": str(a), "restricted": str(r), "path": str(half_to_path(a)), "brackets": str(half_to_brackets(a))}
            )
        groups.append({"p": p, "count": len(labels), "diagrams": items})
    _emit(args, lines, {"n": args.n, "groups": groups})
    return 0


def cmd_convert(args) -> int:
    text = args.object
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            text = json.loads(stripped)["output"]
        except (ValueError, KeyError, TypeError):
            raise ParseError("JSON input must be an object with an 'output' field") from None
    obj = parse_encoding(text)
    _cap("convert", to_half(obj).n, args.no_cap)
    out = str(convert(obj, args.to))
    _emit(args, [out], {"input": text, "to": args.to, "output": out})
    return 0


def cmd_mul(args) -> int:
    x = parse_element(args.x, args.n)
    y = parse_element(args.y, args.n)
    _cap("mul", x.n, args.no_cap)
    z = mul(x, y)
    _emit(args, [str(z)], _element_json(z))
    return 0


def cmd_trace(args) -> int:
    x = parse_element(args.x, args.n)
    _cap("mul", x.n, args.no_cap)
    t = trace(x)
    value = {"trace": str(t)}
    lines = [str(t)]
    if args.at is not None:
        v = eval_at(t, _point(args.at))
        value["at"] = args.at
        value["value"] = str(v)
        lines.append(f"at q={args.at}: {v}")
    _emit(args, lines, value)
    return 0


def cmd_gram(args) -> int:
    _cap("gram", args.n, args.no_cap)
    if args.p is None:
        labels = [str(d) for d in enumerate_full(args.n)]
        matrix = gram(args.n)
    else:
        halves = enumerate_half(args.n, args.p)
        labels = [str(a) for a in halves]
        vecs = [UVector.basis(a) for a in halves]
        matrix = [[inner_u(v, w) for w in vecs] for v in vecs]
    rows = [[str(x) for x in row] for row in matrix]
    payload = {"n": args.n, "p": args.p, "labels": labels, "matrix": rows}
    # gram always emits JSON; text mode just pretty-prints it
    if args.format == "json":
        print(json.dumps(payload, ensure_ascii=False))
    else:
        print(json.dumps(payload, ensure_ascii=False, indent=1))
    return 0


def cmd_ortho(args) -> int:
    _cap("ortho", args.n, args.no_cap)
    basis = build_ortho_basis(args.n, args.p)
    lines, vectors = [], []
    for a in basis.labels:
        v = basis.vectors[a]
        r = half_to_restricted(a)
        norm = basis.norms[a]
        lines.append(f"ξ′{r} = {v}")
        lines.append(f"  norm = {norm}")
        if args.art:
            lines.extend("    " + row for row in art(a).splitlines())
        vectors.append(
            {
                "label": str(a),
                "restricted": str(r),
                "terms": [[str(b), str(c)] for b, c in v.items()],
                "norm": str(norm),
            }
        )
    _emit(args, lines, {"n": args.n, "p": args.p, "vectors": vectors})
    return 0


def _point(text: str):
    try:
        return Fraction(text) if re.fullmatch(r"-?\d+(/\d+)?", text.strip()) else float(text)
    except ValueError:
        raise UsageError(f"bad point {text!r}") from None


def cmd_iso(args) -> int:
    _cap("iso", args.n, args.no_cap)
    x = parse_element(args.element, args.n)
    if x.n != args.n:
        raise UsageError(f"element lives in TL_{x.n}, not TL_{args.n}")
    if args.normalized:
        q0 = _point(args.at) if args.at is not None else Fraction(2)
        m = normalized_iso(x, float(q0))
    else:
        m = iso(x)
        if args.at is not None:
            q0 = _point(args.at)
            m = BlockMatrix(
                m.n,
                tuple(
                    np.array([[complex(eval_at(c, q0)) for c in row] for row in b], dtype=complex).reshape(len(b), len(b))
                    for b in m.blocks
                ),
            )
    payload = m.to_json()
    if args.format == "json":
        print(json.dumps(payload, ensure_ascii=False))
    else:
        for block in payload["blocks"]:
            print(f"p={block['p']} size={block['size']}")
            for row in block["entries"]:
                print("  " + "  ".join(_entry_text(e) for e in row))
    return 0


def _entry_text(e) -> str:
    if isinstance(e, dict):
        return f"{e['re']:+.12g}{e['im']:+.12g}i"
    return e


def cmd_cheb(args) -> int:
    _cap("cheb", args.n, args.no_cap)
    deltas = [str(delta(i)) for i in range(args.n + 1)]
    mus = [str(mu(i)) for i in range(args.n + 1)]
    lines = [f"Δ_{i} = {d}" for i, d in enumerate(deltas)]
    _emit(args, lines, {"n": args.n, "delta": deltas, "mu": mus})
    return 0


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    _cap("selftest", args.max_n, args.no_cap)
    results = run_selftest(args.max_n)
    lines = [f"{'PASS' if r.ok else 'FAIL'} {r.name}" + (f": {r.detail}" if r.detail else "") for r in results]
    payload = {"max_n": args.max_n, "results": [{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results]}
    _emit(args, lines, payload)
    return 0 if all(r.ok for r in results) else 3


# --- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--no-cap", action="store_true", help="ignore the size caps")

    parser = _Parser(prog="tlkit", description="Temperley-Lieb algebra toolkit", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=fn)
        return p

    p = add("enumerate", cmd_enumerate, "list half-diagrams on n points")
    p.add_argument("n", type=int)
    p.add_argument("p", type=int, nargs="?")
    p.add_argument("--art", action="store_true")

    p = add("convert", cmd_convert, "convert between half-diagram encodings")
    p.add_argument("object")
    p.add_argument("--to", required=True, choices=["half", "brackets", "path", "restricted"])

    p = add("mul", cmd_mul, "multiply two elements of TL_n")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--n", type=int)

    p = add("trace", cmd_trace, "trace of an element of TL_n")
    p.add_argument("x")
    p.add_argument("--n", type=int)
    p.add_argument("--at")

    p = add("gram", cmd_gram, "Gram matrix of TL_n, or of U(n;p) when p is given")
    p.add_argument("n", type=int)
    p.add_argument("p", type=int, nargs="?")

    p = add("ortho", cmd_ortho, "orthogonal basis of U(n;p)")
    p.add_argument("n", type=int)
    p.add_argument("p", type=int)
    p.add_argument("--art", action="store_true")

    p = add("iso", cmd_iso, "image of an element under the matrix isomorphism")
    p.add_argument("n", type=int)
    p.add_argument("element", nargs="?", default="1", help="1, e<i>, a diagram, or element text")
    p.add_argument("--at", help="evaluate at this value of q")
    p.add_argument("--normalized", action="store_true", help="rescale to the normalized basis (default q=2)")

    p = add("cheb", cmd_cheb, "Chebyshev polynomials Δ_0..Δ_n")
    p.add_argument("n", type=int)

    p = add("selftest", cmd_selftest, "run the invariant sweep")
    p.add_argument("max_n", type=int, nargs="?", default=4)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"tlkit: usage error: {exc}", file=sys.stderr)
        return 1
    except ParseError as exc:
        print(f"tlkit: cannot parse input: {exc}", file=sys.stderr)
        return 1
    except TLError as exc:
        print(f"tlkit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
