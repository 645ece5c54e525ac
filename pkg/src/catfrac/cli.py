"""Command-line surface.

Exit status: 0 on success, 1 on a domain or validation failure, 2 on a
usage error.  All reports are stable, line-oriented key/value text; the
same strings the test-suite parses.
"""

from __future__ import annotations

import argparse
import sys

from . import fileio
from .core import DomainError, validate_category
from .denominators import AxiomError
from .fraction import (
    build_fraction_category,
    compose_fractions,
    fraction_dot,
    fraction_instance,
)
from .instances import NAMED, as_instance, from_instance, make_named
from .three_arrows import (
    fraction_equivalence,
    is_normal,
    normalise,
    parse_three_arrow,
)
from .calculus import equal_by_3x3


def _load(path: str):
    inst = fileio.load(path)
    return inst, from_instance(inst)


def cmd_validate(args) -> int:
    inst, dd = _load(args.file)
    report = validate_category(dd.base)
    for violation in report:
        print(violation)
    extra = 0
    for which, ids in (
        ("denominators", inst.denominators),
        ("s_denominators", inst.s_denominators),
        ("t_denominators", inst.t_denominators),
    ):
        for f in ids:
            if f not in dd.base.mor_index:
                print(f"unknown-id: ({which}, {f})")
                extra += 1
    if report or extra:
        return 1
    print(f"valid: {dd.base.n_objects} objects, {dd.base.n_morphisms} morphisms")
    return 0


def cmd_axioms(args) -> int:
    _, dd = _load(args.file)
    cert = dd.certificate()
    for line in cert.lines():
        print(line)
    if args.witness and cert.ok:
        for fac in cert.fac.witnesses.values():
            m = dd.base.morphisms
            print(f"(Fac) witness {m[fac.d]} = {m[fac.i]} ; {m[fac.p]}")
    return 0 if cert.ok else 1


def cmd_localise(args) -> int:
    _, dd = _load(args.file)
    fc = build_fraction_category(dd)
    fileio.dump(fraction_instance(fc), args.output)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as handle:
            handle.write(fraction_dot(fc))
    print(
        f"classes: {len(fc.partition)} over {dd.base.n_objects} objects "
        f"-> {args.output}"
    )
    return 0


def cmd_equal(args) -> int:
    _, dd = _load(args.file)
    cert = dd.certificate()
    if not cert.ok:
        raise AxiomError(cert.failed_axioms())
    left = parse_three_arrow(dd, args.left)
    right = parse_three_arrow(dd, args.right)
    results = {}
    if args.method in ("oracle", "both"):
        part = fraction_equivalence(dd)
        results["oracle"] = part.same_class(left, right)
    if args.method in ("3x3", "both"):
        verdict, witness = equal_by_3x3(dd, left, right)
        results["3x3"] = verdict
        if args.witness and witness is not None:
            print(f"witness {witness.ids(dd)}")
    if args.method == "both" and results["oracle"] != results["3x3"]:
        print(
            f"DIVERGENCE oracle={results['oracle']} 3x3={results['3x3']}",
            file=sys.stderr,
        )
        return 1
    print("equal" if all(results.values()) else "not equal")
    return 0


def cmd_compose(args) -> int:
    _, dd = _load(args.file)
    fc = build_fraction_category(dd)
    left = parse_three_arrow(dd, args.left)
    right = parse_three_arrow(dd, args.right)
    gi = compose_fractions(
        dd, fc.partition, left, right, strict=(args.mode == "strict")
    )
    cid = fc.partition.class_ids[gi]
    print(f"{cid}: {fc.partition.representative(gi).ids(dd)}")
    return 0


def cmd_normalise(args) -> int:
    _, dd = _load(args.file)
    if not dd.certificate().ok:
        raise AxiomError(dd.certificate().failed_axioms())
    t = parse_three_arrow(dd, args.arrow)
    result = normalise(dd, t)
    assert is_normal(dd, result)
    print(result.ids(dd))
    return 0


def _suite_axioms(inst, dd) -> list[str]:
    lines = dd.certificate().lines()
    return lines


def _suite_theorem(inst, dd) -> list[str]:
    if not dd.certificate().ok:
        return ["theorem SKIP (structure axioms fail)"]
    part = fraction_equivalence(dd)
    checked = diverged = 0
    for gi in range(len(part)):
        for t1 in part.members(gi):
            for t2 in part.arrows:
                if (
                    part.arrow_index[t2] < part.arrow_index[t1]
                ):
                    continue
                from .three_arrows import source_of, target_of

                if source_of(dd, t1) != source_of(dd, t2) or target_of(
                    dd, t1
                ) != target_of(dd, t2):
                    continue
                verdict, _ = equal_by_3x3(dd, t1, t2)
                checked += 1
                if verdict != part.same_class(t1, t2):
                    diverged += 1
    status = "PASS" if diverged == 0 else "FAIL"
    return [f"theorem {status} pairs={checked} divergences={diverged}"]


def _suite_transport(inst, dd) -> list[str]:
    from .transport import (
        AdditionTables,
        CoproductData,
        ProductData,
        check_localisation_preserves_coproducts,
        check_localisation_preserves_products,
        sum_formula_check,
        validate_coproducts,
        validate_products,
    )

    lines = []
    fc = None
    if inst.initial is not None and inst.coproducts is not None:
        cp = CoproductData.from_instance_entries(inst.initial, inst.coproducts)
        bad = validate_coproducts(dd.base, cp)
        lines.append(f"coproducts-valid {'PASS' if not bad else 'FAIL'}")
        if not bad:
            fc = build_fraction_category(dd)
            bad = check_localisation_preserves_coproducts(fc, cp)
            lines.append(
                f"coproducts-preserved {'PASS' if not bad else 'FAIL'}"
            )
    else:
        lines.append("coproducts-valid SKIP (no coproduct data)")
    if inst.terminal is not None and inst.products is not None:
        pd = ProductData.from_instance_entries(inst.terminal, inst.products)
        bad = validate_products(dd.base, pd)
        lines.append(f"products-valid {'PASS' if not bad else 'FAIL'}")
        if not bad:
            fc = fc or build_fraction_category(dd)
            bad = check_localisation_preserves_products(fc, pd)
            lines.append(f"products-preserved {'PASS' if not bad else 'FAIL'}")
    else:
        lines.append("products-valid SKIP (no product data)")
    if inst.addition is not None:
        add = AdditionTables.from_instance_entries(inst.addition)
        fc = fc or build_fraction_category(dd)
        bad = sum_formula_check(fc, add)
        lines.append(f"sum-formula {'PASS' if not bad else 'FAIL'}")
    return lines


def cmd_check(args) -> int:
    inst, dd = _load(args.file)
    lines: list[str] = []
    if args.suite in ("axioms", "all"):
        lines += _suite_axioms(inst, dd)
    if args.suite in ("theorem", "all"):
        lines += _suite_theorem(inst, dd)
    if args.suite in ("transport", "all"):
        lines += _suite_transport(inst, dd)
    for line in lines:
        print(line)
    return 0 if all(" FAIL" not in line for line in lines) else 1


def cmd_instance(args) -> int:
    dd = make_named(args.name)
    fileio.dump(as_instance(dd, with_structure=True), args.output)
    print(f"{args.name} -> {args.output}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catfrac",
        description="Localisation of finite categories by three-arrow fractions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the category laws of a file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("axioms", help="check the denominator-structure axioms")
    p.add_argument("file")
    p.add_argument("--witness", action="store_true")
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("localise", help="build and write the fraction category")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--dot")
    p.set_defaults(func=cmd_localise)

    p = sub.add_parser("equal", help="decide equality of two three-arrows")
    p.add_argument("file")
    p.add_argument("--left", required=True, metavar="b,f,a")
    p.add_argument("--right", required=True, metavar="b,f,a")
    p.add_argument("--witness", action="store_true")
    p.add_argument(
        "--method", choices=("oracle", "3x3", "both"), default="oracle"
    )
    p.set_defaults(func=cmd_equal)

    p = sub.add_parser("compose", help="compose two three-arrows")
    p.add_argument("file")
    p.add_argument("--left", required=True, metavar="b,f,a")
    p.add_argument("--right", required=True, metavar="b,f,a")
    p.add_argument("--mode", choices=("strict", "lax"), default="strict")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("normalise", help="normalise a three-arrow")
    p.add_argument("file")
    p.add_argument("--arrow", required=True, metavar="b,f,a")
    p.set_defaults(func=cmd_normalise)

    p = sub.add_parser("check", help="run a verification suite")
    p.add_argument("file")
    p.add_argument(
        "--suite",
        choices=("axioms", "theorem", "transport", "all"),
        default="all",
    )
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("instance", help="emit a built-in instance")
    p.add_argument("name", choices=NAMED)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_instance)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (DomainError, AxiomError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
