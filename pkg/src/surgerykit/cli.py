"""``surgerykit`` command line.

Every subcommand prints one JSON object on stdout.  Exit codes: 0 ok,
2 parse error, 3 invariant violation, 4 resource limit.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .alexander import alexander_polynomial, link_variables
from .corpus import load_corpus, resolve_link
from .errors import ParseError, SurgeryKitError
from .forms import (IntForm, direct_sum, handle_slide, invariants, name_standard,
                    stably_equivalent)
from .groups import (BINARY_ICOSAHEDRAL, coset_enumerate, conjugacy_classes, default_max_cosets,
                     element_order, evaluate_word, format_word, is_conjugate, normally_generates,
                     parse_presentation, parse_word)
from .laurent import parse_laurent
from .linkdiag import (apply_three_strand_twist, delta_class, format_braid, format_link,
                       link_from_braid, linking_matrix, parity_vector)
from .surgery import (SWValue, classify_link_surgery, e1_fibersum_check, knot_surgery_sw,
                      link_surgery_sw, scharlemann_verdict)


def _link(args, prefer="pd"):
    return resolve_link(args.link, load_corpus(args.corpus), prefer)


def cmd_classify(args):
    d = _link(args)
    return {"input": args.link, "components": d.n_components,
            "parity_vector": list(parity_vector(d).bits),
            "manifold": str(classify_link_surgery(d))}


def cmd_alexander(args):
    d = _link(args)
    p = alexander_polynomial(d, column=args.column, raw=args.raw)
    return {"input": args.link, "variables": list(p.variables), "raw": args.raw,
            "polynomial": str(p)}


def cmd_linking(args):
    d = _link(args)
    return {"input": args.link, "components": d.n_components, "linking_matrix": linking_matrix(d)}


def cmd_parity(args):
    d = _link(args)
    bits, count = delta_class(d)
    return {"input": args.link, "parity_vector": list(parity_vector(d).bits),
            "delta_class": {"sorted_parity": list(bits), "class_count": count}}


def cmd_twist(args):
    d = _link(args, prefer="braid")
    if not d.is_braid:
        raise ParseError("three-strand twists act on braid closures; give BR[s: ...]")
    b2 = apply_three_strand_twist(d.source, args.position, args.strand, args.sign)
    d2 = link_from_braid(b2)
    return {"input": format_link(d), "braid": format_braid(b2),
            "parity_before": list(parity_vector(d).bits),
            "parity_after": list(parity_vector(d2).bits),
            "manifold_before": str(classify_link_surgery(d)),
            "manifold_after": str(classify_link_surgery(d2))}


def cmd_group(args):
    pres = parse_presentation(args.presentation) if args.presentation else BINARY_ICOSAHEDRAL
    g = coset_enumerate(pres, args.max_cosets or default_max_cosets())
    q = args.query
    if q == "order":
        return {"presentation": str(pres), "order": g.order}
    if q == "classes":
        classes = conjugacy_classes(g)
        return {"presentation": str(pres), "order": g.order, "class_count": len(classes),
                "classes": [{"representative": format_word(g.words[c[0]]), "size": len(c),
                             "order": element_order(g, c[0]),
                             "normal_generator": normally_generates(g, c[0])} for c in classes]}
    words = [parse_word(w, pres.generators) for w in args.words]
    if q == "conjugate":
        if len(words) != 2:
            raise ParseError("'conjugate' takes two words")
        return {"words": args.words, "conjugate": is_conjugate(g, *words)}
    if q == "order-of":
        if len(words) != 1:
            raise ParseError("'order-of' takes one word")
        e = evaluate_word(g, words[0])
        return {"word": args.words[0], "order": element_order(g, e),
                "normal_generator": normally_generates(g, e)}
    raise ParseError(f"unknown group query {q!r}")


def _form(text: str) -> IntForm:
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    return IntForm.from_json(text)


def _inv_json(q):
    i = invariants(q)
    return {"rank": i.rank, "signature": i.signature, "parity": i.parity,
            "unimodular": i.unimodular, "definiteness": i.definiteness}


def cmd_forms(args):
    op = args.op
    if op == "e1":
        return {"manifold": str(e1_fibersum_check())}
    forms = [_form(m) for m in args.matrices]
    need = {"invariants": 1, "name": 1, "slide": 1, "sum": 2, "equivalent": 2}[op]
    if len(forms) != need:
        raise ParseError(f"'{op}' takes {need} matrix argument(s)")
    if op == "invariants":
        return _inv_json(forms[0])
    if op == "name":
        return {"manifold": str(name_standard(forms[0]))}
    if op == "slide":
        q = handle_slide(forms[0], args.i, args.j, args.sign)
        return {"form": q.to_json(), "invariants": _inv_json(q)}
    if op == "sum":
        q = direct_sum(*forms)
        return {"form": q.to_json(), "invariants": _inv_json(q)}
    return {"equivalent": stably_equivalent(*forms)}


def cmd_sw(args):
    if args.kind == "knot":
        if len(args.polys) != 2:
            raise ParseError("'sw knot' takes BASE and DELTA")
        delta = parse_laurent(args.polys[1])
        base = parse_laurent(args.polys[0], delta.variables)
        return {"sw": str(knot_surgery_sw(SWValue(base), delta))}
    if not args.polys:
        raise ParseError("'sw link' takes DELTA and one factor per component")
    delta_text, factors = args.polys[0], args.polys[1:]
    delta = parse_laurent(delta_text, link_variables(len(factors)))
    fs = [SWValue(parse_laurent(f, ("t",))) for f in factors]
    return {"sw": str(link_surgery_sw(delta, fs))}


def cmd_scharlemann(args):
    w = parse_word(args.word, BINARY_ICOSAHEDRAL.generators)
    out = {"epsilon": args.epsilon, "word": args.word}
    out.update(scharlemann_verdict(args.epsilon, w).to_json())
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="surgerykit", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    out = p.add_mutually_exclusive_group()
    out.add_argument("--json", dest="pretty", action="store_false", help="compact JSON (default)")
    out.add_argument("--pretty", dest="pretty", action="store_true", help="indented JSON")
    p.set_defaults(pretty=False)
    p.add_argument("--corpus", default=None, help="link corpus JSON overriding the bundled one")
    sub = p.add_subparsers(dest="command", required=True)

    for name, fn, helptext in (
        ("classify", cmd_classify, "diffeomorphism type of the link surgery A_L"),
        ("alexander", cmd_alexander, "normalized Alexander polynomial"),
        ("linking", cmd_linking, "pairwise linking numbers"),
        ("parity", cmd_parity, "linking parity vector and delta-move class"),
    ):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("link", help="corpus name, PD[...] or BR[s: ...]")
        s.set_defaults(func=fn)
        if name == "alexander":
            s.add_argument("--raw", action="store_true", help="minor gcd before normalization")
            s.add_argument("--column", type=int, default=0, help="Alexander-matrix column to delete")

    s = sub.add_parser("twist", help="insert a three-strand full twist into a braid")
    s.add_argument("link")
    s.add_argument("--position", type=int, default=0)
    s.add_argument("--strand", type=int, default=1)
    s.add_argument("--sign", type=int, choices=(1, -1), default=1)
    s.set_defaults(func=cmd_twist)

    s = sub.add_parser("group", help="queries on a finitely presented (finite) group")
    s.add_argument("query", choices=("order", "classes", "conjugate", "order-of"))
    s.add_argument("words", nargs="*")
    s.add_argument("--presentation", default=None, help="'< x, y | ... >' (default: binary icosahedral)")
    s.add_argument("--max-cosets", type=int, default=None)
    s.set_defaults(func=cmd_group)

    s = sub.add_parser("forms", help="integer symmetric bilinear forms")
    s.add_argument("op", choices=("invariants", "name", "slide", "sum", "equivalent", "e1"))
    s.add_argument("matrices", nargs="*", help='{"n": k, "rows": [...]} or @file.json')
    s.add_argument("--i", type=int, default=0)
    s.add_argument("--j", type=int, default=1)
    s.add_argument("--sign", type=int, choices=(1, -1), default=1)
    s.set_defaults(func=cmd_forms)

    s = sub.add_parser("sw", help="Seiberg-Witten product formulas")
    s.add_argument("kind", choices=("knot", "link"))
    s.add_argument("polys", nargs="*", help="knot: BASE DELTA; link: DELTA FACTOR...")
    s.set_defaults(func=cmd_sw)

    s = sub.add_parser("scharlemann", help="known type of B^eps(z) over the (-1)-surgered trefoil")
    s.add_argument("epsilon", type=int, choices=(0, 1))
    s.add_argument("word", help="word in x, y")
    s.set_defaults(func=cmd_scharlemann)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except SurgeryKitError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return exc.exit_code
    except (OSError, ValueError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2
    print(json.dumps(result, indent=2 if args.pretty else None))
    return 0


if __name__ == "__main__":
    sys.exit(main())
