"""Command-line front end.

    nacyclic field-info --field Qp:5
    nacyclic ext list --field Qp:2 --m 2
    nacyclic alg division --field Qp:5 --ext sqrt:2 --a "(0,1)"
    nacyclic classify canon --field Qp:5 --ext sqrt:2 --a "(0,3)"
    nacyclic oracle verify sigma_distinct --q 2 --m 3

Every command prints a small record, as aligned text or (with --format machine)
as JSON with sorted keys and a schema_version field.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import LiteralSyntaxError, NacyclicError, UnsupportedCase

SCHEMA_VERSION = 1


# -- context builders -------------------------------------------------------------------

def _modulus(text):
    if text is None:
        return None
    try:
        return [int(x) for x in text.strip().strip("[]").split(",")]
    except ValueError:
        raise LiteralSyntaxError(f"bad modulus {text!r}", text, 0) from None


def _field(args):
    from .parse import parse_field
    if not args.field:
        raise LiteralSyntaxError("--field is required", "", 0)
    return parse_field(args.field, args.precision, _modulus(getattr(args, "modulus", None)))


def _extension(args):
    from .parse import parse_extension
    F = _field(args)
    if not args.ext:
        if args.m is None:
            raise LiteralSyntaxError("--ext or --m is required", "", 0)
        return parse_extension(f"unram:{args.m}", F)
    return parse_extension(args.ext, F, args.m)


def _algebra(args, E=None, a_text=None, j=None):
    from .nacalg import CyclicAlgebra
    from .parse import parse_ext
    E = E or _extension(args)
    a = parse_ext(a_text or args.a, E)
    return CyclicAlgebra(E, a, args.j if j is None else j, args.convention)


def _window(text):
    from .classify import Window
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise LiteralSyntaxError(f"bad window {text!r}; expected v_min,v_max,N[,D]", text, 0) from None
    if len(parts) not in (3, 4):
        raise LiteralSyntaxError(f"bad window {text!r}; expected v_min,v_max,N[,D]", text, 0)
    return Window(*parts)


def _ext_record(E) -> dict:
    rec = E.descriptor()
    rec.update({
        "modulus": [repr(c) for c in E.modulus],
        "sigma_theta": repr(E.sigma(E.gen(), 1)),
        "ramification": E.ramification,
        "class_reps": [repr(c) for c in E.class_reps],
        "minus_one_is_norm": E.minus_one_is_norm(),
    })
    return rec


# -- commands -----------------------------------------------------------------------

def cmd_field_info(args) -> dict:
    from .ffield import FqSpec, fq_generator, fq_nonresidue
    from .localfield import canonical_epsilon
    F = _field(args)
    if isinstance(F, FqSpec):
        rec = {"field": repr(F), "p": F.p, "n": F.n, "q": F.q, "modulus": list(F.modulus),
               "generator": repr(fq_generator(F))}
        if F.p != 2:
            rec["nonsquare"] = repr(fq_nonresidue(F, 2))
        return rec
    rec = {"field": repr(F), "p": F.p, "q": F.q, "residue_field": repr(F.residue),
           "kind": "p-adic" if F.is_padic else "Laurent series",
           "default_precision": F.default_precision, "uniformizer": repr(F.uniformizer()),
           "roots_of_unity_order": F.q - 1}
    if F.p == 2:
        rec["square_classes"] = ["1", "-1", "2", "-2", "3", "-3", "6", "-6"] if F.is_padic else "infinite"
    else:
        eps = canonical_epsilon(F)
        rec["epsilon"] = repr(eps)
        rec["square_classes"] = ["1", "eps", "pi", "eps*pi"]
    return rec


def cmd_ext_make(args) -> dict:
    return _ext_record(_extension(args))


def cmd_ext_list(args) -> dict:
    from .extension import enumerate_extensions
    F = _field(args)
    if args.m is None:
        raise LiteralSyntaxError("--m is required", "", 0)
    exts = enumerate_extensions(F, args.m)
    rows = []
    for E in exts:
        rec = _ext_record(E)
        if F.__class__.__name__ == "LocalFieldSpec" and F.p == 2 and F.is_padic and args.m == 2:
            rec["norm_group"] = [str(c) for c in (1, -1, 2, -2, 3, -3, 6, -6) if E.is_norm(F(c))]
        rows.append(rec)
    return {"field": repr(F), "m": args.m, "count": len(rows), "extensions": rows}


def cmd_ext_norms(args) -> dict:
    from .ffield import FqSpec
    from .parse import parse_base, parse_ext
    E = _extension(args)
    F = E.base
    rec = {"extension": E.label}
    if args.x:
        rec["norms"] = [{"x": repr(x), "norm": repr(E.norm(x))}
                        for x in (parse_ext(t, E) for t in args.x)]
    cs = [parse_base(t, F) for t in args.c] if args.c else None
    if cs is None and not args.x:
        if isinstance(F, FqSpec):
            cs = list(F.units())[:8]
        elif F.p == 2 and F.is_padic:
            cs = [F(c) for c in (1, -1, 2, -2, 3, -3, 6, -6)]
        elif F.p == 2:
            cs = [F.one(), F.uniformizer()]
        else:
            from .localfield import canonical_epsilon
            eps, pi = canonical_epsilon(F), F.uniformizer()
            cs = [F.one(), F(-1), eps, pi, eps * pi]
    if cs:
        rec["membership"] = [{"c": repr(c), "is_norm": E.is_norm(c)} for c in cs]
    return rec


def cmd_alg_mul(args) -> dict:
    from .parse import parse_alg
    A = _algebra(args)
    x, y = parse_alg(args.x, A), parse_alg(args.y, A)
    return {"algebra": repr(A), "x": repr(x), "y": repr(y), "product": repr(A.mul(x, y))}


def cmd_alg_assoc(args) -> dict:
    from .nacalg import associator
    from .parse import parse_alg
    A = _algebra(args)
    x, y, z = (parse_alg(t, A) for t in (args.x, args.y, args.z))
    return {"algebra": repr(A), "associator": repr(associator(A, x, y, z))}


def cmd_alg_nuclei(args) -> dict:
    from .nacalg import NUCLEUS_KINDS, nucleus, right_nucleus_structure
    A = _algebra(args)
    kinds = NUCLEUS_KINDS if args.which == "all" else (args.which,)
    rec = {"algebra": repr(A), "proper": A.proper}
    for k in kinds:
        basis = nucleus(A, k)
        rec[k] = {"dimension": len(basis), "basis": [repr(b) for b in basis]}
    rn = right_nucleus_structure(A, check=A.ext.is_finite_base)
    rec["right_nucleus_structure"] = {"stabilizer_order": rn.stabilizer_order, "s": rn.s,
                                      "dimension": rn.dim_over_F, "description": rn.description}
    return rec


def cmd_alg_division(args) -> dict:
    from .nacalg import is_division
    A = _algebra(args)
    r = is_division(A)
    result = "unknown" if r.result is None else r.result
    return {"algebra": repr(A), "division": result, "method": r.method, "detail": r.detail}


def cmd_alg_table(args) -> dict:
    A = _algebra(args)
    B = A.basis()
    return {"algebra": repr(A), "basis": [repr(b) for b in B],
            "table": [[repr(A.mul(x, y)) for y in B] for x in B]}


def cmd_classify_canon(args) -> dict:
    from .classify import canonical
    from .parse import parse_ext
    E = _extension(args)
    a = parse_ext(args.a, E)
    c = canonical(E, a, args.j, args.mode)
    rec = c.record()
    rec["input"] = repr(a)
    return rec


def cmd_classify_equiv(args) -> dict:
    from .classify import equivalent
    from .parse import parse_ext
    E = _extension(args)
    a, b = parse_ext(args.a, E), parse_ext(args.b, E)
    return {"extension": E.label, "a": repr(a), "b": repr(b), "equivalent": equivalent(E, a, b)}


def cmd_classify_iso(args) -> dict:
    from .classify import isomorphic
    E = _extension(args)
    A = _algebra(args, E, args.a, args.j)
    B = _algebra(args, E, args.b, args.j2 if args.j2 is not None else args.j)
    return {"A": repr(A), "B": repr(B), "isomorphic": isomorphic(A, B)}


def cmd_classify_enumerate(args) -> dict:
    from .classify import enumerate_classes, inequivalence_violations
    E = _extension(args)
    w = _window(args.window)
    en = enumerate_classes(E, w)
    rec = {"extension": E.label, "case": en.case, "count": len(en),
           "expected_count": en.expected, "elements": [repr(a) for a in en.elements]}
    if en.window is not None:
        rec["window"] = {"v_min": w.v_min, "v_max": w.v_max, "precision": w.precision, "digits": w.digits}
    if args.check:
        rec["violations"] = [list(p) for p in inequivalence_violations(E, en.elements)]
    return rec


def cmd_classify_degree4(args) -> dict:
    from .classify import degree4_types
    F = _field(args)
    types = degree4_types(F)
    return {"field": repr(F), "count": len(types), "types": types}


def cmd_oracle_verify(args) -> dict:
    from .oracle import verify_theorem
    return verify_theorem(args.theorem, {"q": args.q, "m": args.m})


def cmd_oracle_classes(args) -> dict:
    from .oracle import brute_classes
    return brute_classes(args.q, args.m).record()


# -- parser --------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, ext: bool = True, alg: bool = False):
    p.add_argument("--field", help="GF:<q>, Qp:<p> or Laurent:<q>")
    p.add_argument("--modulus", help="modulus of GF(p^n) as [c0,...,cn], low degree first")
    p.add_argument("--precision", type=int, default=None, help="default relative precision (12)")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    if ext:
        p.add_argument("--ext", help="unram:<m>, sqrt:<c>, kummer:<b>, as:<c> or tower")
        p.add_argument("--m", type=int, default=None, help="degree (kummer, unram, list)")
    if alg:
        p.add_argument("--a", required=True, help="the parameter a in K, e.g. \"(0,1)\"")
        p.add_argument("--j", type=int, default=1, help="generator sigma^j (default 1)")
        p.add_argument("--convention", choices=("petit", "printed"), default="petit")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nacyclic", description="Nonassociative cyclic algebras over finite and local fields.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("field-info", help="describe a base field")
    _common(p, ext=False)
    p.set_defaults(func=cmd_field_info)

    ext = sub.add_parser("ext", help="cyclic extensions").add_subparsers(dest="action", required=True)
    p = ext.add_parser("make", help="build one extension")
    _common(p)
    p.set_defaults(func=cmd_ext_make)
    p = ext.add_parser("list", help="all cyclic extensions of degree m (up to isomorphism)")
    _common(p)
    p.set_defaults(func=cmd_ext_list)
    p = ext.add_parser("norms", help="norms and norm-group membership")
    _common(p)
    p.add_argument("--x", action="append", help="element of K whose norm to compute (repeatable)")
    p.add_argument("--c", action="append", help="element of F to test for membership (repeatable)")
    p.set_defaults(func=cmd_ext_norms)

    alg = sub.add_parser("alg", help="algebra arithmetic and structure").add_subparsers(dest="action", required=True)
    p = alg.add_parser("mul", help="product x*y")
    _common(p, alg=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.set_defaults(func=cmd_alg_mul)
    p = alg.add_parser("assoc", help="associator [x,y,z]")
    _common(p, alg=True)
    for n in ("--x", "--y", "--z"):
        p.add_argument(n, required=True)
    p.set_defaults(func=cmd_alg_assoc)
    p = alg.add_parser("nuclei", help="nuclei and center")
    _common(p, alg=True)
    p.add_argument("--which", choices=("all", "left", "middle", "right", "nucleus", "center"), default="all")
    p.set_defaults(func=cmd_alg_nuclei)
    p = alg.add_parser("division", help="decide whether the algebra is a division algebra")
    _common(p, alg=True)
    p.set_defaults(func=cmd_alg_division)
    p = alg.add_parser("table", help="multiplication table of the basis theta^i t^s")
    _common(p, alg=True)
    p.set_defaults(func=cmd_alg_table)

    cl = sub.add_parser("classify", help="isomorphism classification").add_subparsers(dest="action", required=True)
    p = cl.add_parser("canon", help="canonical representative of the class of a")
    _common(p)
    p.add_argument("--a", required=True)
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--mode", choices=("default", "alt"), default="default")
    p.set_defaults(func=cmd_classify_canon)
    p = cl.add_parser("equiv", help="decide a ~ b")
    _common(p)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_classify_equiv)
    p = cl.add_parser("iso", help="decide (K,sigma^j,a) isomorphic to (K,sigma^j2,b)")
    _common(p)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--j2", type=int, default=None)
    p.add_argument("--convention", choices=("petit", "printed"), default="petit")
    p.set_defaults(func=cmd_classify_iso)
    p = cl.add_parser("enumerate", help="windowed list of class representatives")
    _common(p)
    p.add_argument("--window", default="-1,1,4", help="v_min,v_max,N[,D] (default -1,1,4)")
    p.add_argument("--check", action="store_true", help="also verify pairwise inequivalence")
    p.set_defaults(func=cmd_classify_enumerate)
    p = cl.add_parser("degree4", help="the algebra types of degree four")
    _common(p, ext=False)
    p.set_defaults(func=cmd_classify_degree4)

    orc = sub.add_parser("oracle", help="brute-force checks over small finite fields").add_subparsers(dest="action", required=True)
    p = orc.add_parser("verify", help="exhaustive check of one statement")
    p.add_argument("theorem", help="sigma_distinct, classify_iso, steele, nuclei or petit_division")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.set_defaults(func=cmd_oracle_verify)
    p = orc.add_parser("classes", help="class partition, brute force vs criterion")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.set_defaults(func=cmd_oracle_classes)
    return ap


# -- output ---------------------------------------------------------------------------

def _command_name(args) -> str:
    return args.verb + (f" {args.action}" if getattr(args, "action", None) else "")


def _text(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        width = max((len(str(k)) for k in value), default=0)
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines += _text(v, indent + 1)
            else:
                lines.append(f"{pad}{str(k).ljust(width)}  {_scalar(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)):
                sub = _text(v, indent + 1)
                lines.append(f"{pad}- " + sub[0].strip() if sub else f"{pad}-")
                lines += sub[1:]
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(value))
    return lines


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, (list, dict)):
        return "[]" if isinstance(v, list) else "{}"
    return str(v)


def emit(args, result: dict, out=None) -> None:
    out = out or sys.stdout
    if args.format == "machine":
        doc = {"schema_version": SCHEMA_VERSION, "command": _command_name(args), "result": result}
        out.write(json.dumps(doc, sort_keys=True, indent=2, default=str) + "\n")
    else:
        out.write("\n".join(_text(result)) + "\n")


def emit_error(args, exc: BaseException, code: int) -> None:
    fmt = getattr(args, "format", "text") if args is not None else "text"
    if fmt == "machine":
        doc = {"schema_version": SCHEMA_VERSION, "error": {"type": type(exc).__name__, "message": str(exc), "exit_code": code}}
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        sys.stderr.write(f"error ({type(exc).__name__}): {exc}\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except NacyclicError as exc:
        emit_error(args, exc, exc.exit_code)
        return exc.exit_code
    except ZeroDivisionError as exc:
        emit_error(args, exc, 7)
        return 7
    except (ValueError, KeyError, TypeError) as exc:
        emit_error(args, exc, 1)
        return 1
    emit(args, result)
    return 0


if __name__ == "__main__":
    sys.exit(main())
