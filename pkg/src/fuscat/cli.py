"""Command line interface.

Exit codes: 0 the property holds (or both verdicts agree), 1 it fails, 2 usage
or input error, 3 a size cap was hit or the answer is incomplete.
"""

from __future__ import annotations

import argparse
import json
import sys

from .automorphisms import check_k, compute_aut, inner_automorphisms
from .axioms import alperin_condition, is_frobenius, normalizer_category, sylow_condition
from .catalog import catalog_run, describe
from .config import DEFAULT
from .errors import CapExceeded, FuscatError, IncompleteMap, NotFullyKNormalized, ParseError, ValidationError
from .io import Codec, load_category, render_report
from .linfusion import alperin_decompose, essential_subgroups, factorization_components
from .morphism import Morphism, compose, extend_from_generators
from .pcategory import is_divisible

OK, FAIL, USAGE, INCOMPLETE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def _yn(b) -> str:
    return "yes" if b else "no"


def _config(args):
    changes = {}
    if getattr(args, "hom_cap", None) is not None:
        changes["hom_cap"] = args.hom_cap
    if getattr(args, "max_aut_subgroups", None) is not None:
        changes["aut_subgroup_cap"] = args.max_aut_subgroups
    if getattr(args, "reduced_k", False):
        changes["reduced_k"] = True
    return DEFAULT.with_(**changes)


def _elements(text: str) -> list:
    return [t for t in text.replace(" ", "").split(",") if t]


def _pairs(text: str) -> list:
    out = []
    for item in _elements(text):
        a, sep, b = item.partition(":")
        if not sep:
            raise ValidationError("--map", f"{item!r} is not of the form a:b")
        out.append((a, b))
    return out


def _map_on(codec: Codec, domain, codomain, text: str, key: str) -> Morphism:
    gen_images = {}
    for a, b in _pairs(text):
        x, y = codec.decode(a, key), codec.decode(b, key)
        if x not in domain:
            raise ValidationError(key, f"{a} is not in the domain")
        gen_images[x] = y
    return extend_from_generators(domain, codomain, gen_images)


def _report(label, outcome, codec) -> int:
    print(f"{label}: {_yn(outcome.holds)}" + ("" if outcome.complete else " (INCOMPLETE)"))
    if not outcome.holds:
        print(f"witness: {describe(outcome.witness, codec.encode)}")
        return FAIL
    return OK if outcome.complete else INCOMPLETE


def cmd_check(args) -> int:
    F, codec = load_category(args.file, _config(args))
    if args.divisible:
        ok, w = is_divisible(F)
        print(f"DIVISIBLE: {_yn(ok)}")
        if not ok:
            print(f"witness: {w.kind} {describe(w.phi, codec.encode)} {describe(w.psi, codec.encode)}")
        return OK if ok else FAIL
    if args.sylow:
        return _report("SYLOW", sylow_condition(F), codec)
    if args.frobenius:
        return _report("FROBENIUS", is_frobenius(F, _config(args)), codec)
    return _report("ALPERIN", alperin_condition(F), codec)


def cmd_essentials(args) -> int:
    F, codec = load_category(args.file, _config(args))
    rows = []
    for Q in essential_subgroups(F):
        rows.append({
            "subgroup": [codec.encode(x) for x in Q.elements],
            "order": Q.order,
            "aut_order": F.aut_group(Q).order,
            "components": len(factorization_components(F, Q)),
        })
    if args.json:
        print(json.dumps({"essentials": rows}, sort_keys=True))
    else:
        print(f"ESSENTIALS: {len(rows)}")
        for r in rows:
            elems = ",".join(map(str, r["subgroup"]))
            print(f"<{elems}> order={r['order']} |F(Q)|={r['aut_order']} components={r['components']}")
    return OK


def cmd_decompose(args) -> int:
    F, codec = load_category(args.file, _config(args))
    R = codec.subgroup(_elements(args.domain), "--domain")
    psi = _map_on(codec, R, F.P, args.map, "--map")
    if psi not in F.hom(F.P, R):
        print("not a morphism of the category")
        return FAIL
    chain = alperin_decompose(F, psi)
    lab = codec.encode
    for i, ln in enumerate(chain.links):
        print(f"link {i}: U={describe(ln.U, lab)} sigma={describe(ln.sigma, lab)} nu={describe(ln.nu, lab)}")
    ok = chain.verify()
    print(f"VERIFIED: {_yn(ok)}")
    return OK if ok else FAIL


def _k_from_text(codec: Codec, Q, text: str, config) -> frozenset:
    if text == "full":
        return compute_aut(Q, config.aut_cap).as_set()
    if text == "trivial":
        return frozenset([Morphism.identity(Q)])
    if text == "inner":
        return inner_automorphisms(Q)
    if text.startswith("gens:"):
        gens = [_map_on(codec, Q, Q, part, "--k") for part in text[5:].split(";") if part.strip()]
        K = {Morphism.identity(Q)}
        frontier = list(K)
        while frontier:
            a = frontier.pop()
            for g in gens:
                b = compose(g, a)
                if b not in K:
                    K.add(b)
                    frontier.append(b)
        return check_k(Q, K)
    raise ValidationError("--k", f"unknown K {text!r}")


def cmd_normalizer(args) -> int:
    config = _config(args)
    F, codec = load_category(args.file, config)
    Q = codec.subgroup(_elements(args.subgroup), "--subgroup")
    if not Q.issubset(F.P):
        raise ValidationError("--subgroup", "not a subgroup of P")
    K = _k_from_text(codec, Q, args.k, config)
    try:
        N = normalizer_category(F, Q, K)
    except NotFullyKNormalized as exc:
        print(f"NOT FULLY K-NORMALIZED: {exc}")
        return FAIL
    print(f"P' = {describe(N.P, codec.encode)}")
    print(f"morphisms: {N.total_morphisms()}")
    return _report("FROBENIUS", is_frobenius(N, config), codec)


def cmd_verify(args) -> int:
    from .verify import verify_equivalence

    F, codec = load_category(args.file, _config(args))
    v = verify_equivalence(F, _config(args))
    for label, out in (("FROBENIUS", v.frobenius_direct), ("SYLOW+ALPERIN", v.sylow_alperin)):
        print(f"{label}: {_yn(out.holds)}")
        if not out.holds:
            print(f"  witness: {describe(out.witness, codec.encode)}")
    print(f"AGREEMENT: {_yn(v.agreement)}" + ("" if v.complete else " (INCOMPLETE)"))
    if not v.complete:
        return INCOMPLETE
    return OK if v.agreement else FAIL


def cmd_catalog(args) -> int:
    report = catalog_run(_config(args), seed=args.seed, n_random=args.n_random,
                         include_optional=args.include_optional)
    sys.stdout.write(render_report(report.as_dict(), as_json=args.json))
    return OK if report.all_agree else FAIL


def build_parser() -> argparse.ArgumentParser:
    caps = argparse.ArgumentParser(add_help=False)
    caps.add_argument("--hom-cap", type=int, help="maximum number of isomorphisms in a closure")
    caps.add_argument("--max-aut-subgroups", type=int, help="largest |Aut(Q)| whose subgroups are enumerated")
    caps.add_argument("--reduced-k", action="store_true", help="use a reduced K family past the cap")

    ap = _Parser(prog="fuscat", description="Decide axioms of divisible P-categories.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", parents=[caps], help="check one property")
    c.add_argument("file")
    g = c.add_mutually_exclusive_group(required=True)
    for flag in ("--divisible", "--sylow", "--frobenius", "--alperin"):
        g.add_argument(flag, action="store_true")
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("essentials", parents=[caps], help="list essential subgroups")
    e.add_argument("file")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_essentials)

    d = sub.add_parser("decompose", parents=[caps], help="Alperin decomposition of a morphism into P")
    d.add_argument("file")
    d.add_argument("--domain", required=True, help="comma separated generators of the domain")
    d.add_argument("--map", required=True, help="comma separated a:b pairs on generators")
    d.set_defaults(func=cmd_decompose)

    n = sub.add_parser("normalizer", parents=[caps], help="build a normalizer subcategory")
    n.add_argument("file")
    n.add_argument("--subgroup", required=True)
    n.add_argument("--k", default="full", help="full, trivial, inner or gens:a:b,c:d;...")
    n.set_defaults(func=cmd_normalizer)

    v = sub.add_parser("verify-equivalence", parents=[caps], help="compare the two Frobenius characterizations")
    v.add_argument("file")
    v.set_defaults(func=cmd_verify)

    cat = sub.add_parser("catalog", help="built-in catalog")
    cat_sub = cat.add_subparsers(dest="action", required=True, parser_class=_Parser)
    run = cat_sub.add_parser("run", parents=[caps])
    run.add_argument("--seed", type=int, default=42)
    run.add_argument("--n-random", type=int, default=25)
    run.add_argument("--include-optional", action="store_true")
    run.add_argument("--json", action="store_true")
    run.set_defaults(func=cmd_catalog)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"INCOMPLETE: {exc}", file=sys.stderr)
        return INCOMPLETE
    except (ParseError, ValidationError, IncompleteMap) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except FuscatError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
