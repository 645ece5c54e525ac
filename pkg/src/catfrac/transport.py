"""Transport of finite (co)products and hom-addition to the fraction side.

Chosen coproducts are supplied as a table (pair of objects -> coproduct
object with embeddings) plus an initial object; products dually.  The
checks here verify the universal properties in the base, decide closure
of D under the induced morphism (co)products by both available routes,
and confirm that localising preserves the whole structure, embedding by
embedding, including the shared-leg induced-morphism formula.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import DomainError, FinCategory, Violation
from .denominators import DenominatorData
from .fraction import FractionCategory
from .three_arrows import ThreeArrow, common_denominator


@dataclass
class CoproductData:
    """Chosen initial object and pairwise coproducts (object, emb1, emb2)."""

    initial: str
    pairwise: dict[tuple[str, str], tuple[str, str, str]]

    @staticmethod
    def from_instance_entries(initial: str, entries: list[dict]) -> "CoproductData":
        return CoproductData(
            initial,
            {
                (e["of"][0], e["of"][1]): (e["object"], e["emb"][0], e["emb"][1])
                for e in entries
            },
        )


@dataclass
class ProductData:
    terminal: str
    pairwise: dict[tuple[str, str], tuple[str, str, str]]

    @staticmethod
    def from_instance_entries(terminal: str, entries: list[dict]) -> "ProductData":
        return ProductData(
            terminal,
            {
                (e["of"][0], e["of"][1]): (e["object"], e["proj"][0], e["proj"][1])
                for e in entries
            },
        )


def _unique_mediators(cat: FinCategory, c: int, e1: int, e2: int, f1: int, f2: int):
    """All u: c -> tgt(f1) with comp(e1, u) == f1 and comp(e2, u) == f2."""
    return [
        u
        for u in cat.hom(c, cat.itgt[f1])
        if cat.icomp[(e1, u)] == f1 and cat.icomp[(e2, u)] == f2
    ]


def validate_coproducts(cat: FinCategory, cp: CoproductData) -> list[Violation]:
    """Exhaustive universal-property check; empty report iff valid."""
    report: list[Violation] = []
    if cp.initial not in cat.obj_index:
        return [Violation("unknown-initial", (cp.initial,))]
    i0 = cat.obj_index[cp.initial]
    for x in range(cat.n_objects):
        if len(cat.hom(i0, x)) != 1:
            report.append(Violation("initial-not-unique", (cp.initial, cat.objects[x])))
    for x1 in cat.objects:
        for x2 in cat.objects:
            entry = cp.pairwise.get((x1, x2))
            if entry is None:
                report.append(Violation("missing-coproduct", (x1, x2)))
                continue
            cobj, emb1, emb2 = entry
            c = cat.obj_index[cobj]
            e1, e2 = cat.mor_index[emb1], cat.mor_index[emb2]
            if cat.isrc[e1] != cat.obj_index[x1] or cat.itgt[e1] != c:
                report.append(Violation("embedding-endpoints", (x1, x2, emb1)))
                continue
            if cat.isrc[e2] != cat.obj_index[x2] or cat.itgt[e2] != c:
                report.append(Violation("embedding-endpoints", (x1, x2, emb2)))
                continue
            for y in range(cat.n_objects):
                for f1 in cat.hom(cat.obj_index[x1], y):
                    for f2 in cat.hom(cat.obj_index[x2], y):
                        if len(_unique_mediators(cat, c, e1, e2, f1, f2)) != 1:
                            report.append(
                                Violation(
                                    "coproduct-universal-property",
                                    (x1, x2, cat.morphisms[f1], cat.morphisms[f2]),
                                )
                            )
    return report


def validate_products(cat: FinCategory, pd: ProductData) -> list[Violation]:
    report: list[Violation] = []
    if pd.terminal not in cat.obj_index:
        return [Violation("unknown-terminal", (pd.terminal,))]
    t0 = cat.obj_index[pd.terminal]
    for x in range(cat.n_objects):
        if len(cat.hom(x, t0)) != 1:
            report.append(
                Violation("terminal-not-unique", (pd.terminal, cat.objects[x]))
            )
    for y1 in cat.objects:
        for y2 in cat.objects:
            entry = pd.pairwise.get((y1, y2))
            if entry is None:
                report.append(Violation("missing-product", (y1, y2)))
                continue
            pobj, pr1, pr2 = entry
            p = cat.obj_index[pobj]
            q1, q2 = cat.mor_index[pr1], cat.mor_index[pr2]
            if cat.isrc[q1] != p or cat.itgt[q1] != cat.obj_index[y1]:
                report.append(Violation("projection-endpoints", (y1, y2, pr1)))
                continue
            if cat.isrc[q2] != p or cat.itgt[q2] != cat.obj_index[y2]:
                report.append(Violation("projection-endpoints", (y1, y2, pr2)))
                continue
            for x in range(cat.n_objects):
                for f1 in cat.hom(x, cat.obj_index[y1]):
                    for f2 in cat.hom(x, cat.obj_index[y2]):
                        mediators = [
                            u
                            for u in cat.hom(x, p)
                            if cat.icomp[(u, q1)] == f1 and cat.icomp[(u, q2)] == f2
                        ]
                        if len(mediators) != 1:
                            report.append(
                                Violation(
                                    "product-universal-property",
                                    (y1, y2, cat.morphisms[f1], cat.morphisms[f2]),
                                )
                            )
    return report


def coproduct_induced(cat: FinCategory, cp: CoproductData, x1: str, x2: str,
                      f1: int, f2: int) -> int:
    cobj, emb1, emb2 = cp.pairwise[(x1, x2)]
    mediators = _unique_mediators(
        cat,
        cat.obj_index[cobj],
        cat.mor_index[emb1],
        cat.mor_index[emb2],
        f1,
        f2,
    )
    if len(mediators) != 1:
        raise DomainError(f"no unique mediator out of {x1} + {x2}")
    return mediators[0]


def coproduct_of_morphisms(cat: FinCategory, cp: CoproductData,
                           d: int, e: int) -> int:
    """d + e, the induced morphism between the chosen coproducts."""
    x1, x2 = cat.objects[cat.isrc[d]], cat.objects[cat.isrc[e]]
    y1, y2 = cat.objects[cat.itgt[d]], cat.objects[cat.itgt[e]]
    _, emb1, emb2 = cp.pairwise[(y1, y2)]
    return coproduct_induced(
        cat, cp, x1, x2,
        cat.icomp[(d, cat.mor_index[emb1])],
        cat.icomp[(e, cat.mor_index[emb2])],
    )


def product_induced(cat: FinCategory, pd: ProductData, y1: str, y2: str,
                    f1: int, f2: int) -> int:
    pobj, pr1, pr2 = pd.pairwise[(y1, y2)]
    p = cat.obj_index[pobj]
    q1, q2 = cat.mor_index[pr1], cat.mor_index[pr2]
    mediators = [
        u
        for u in cat.hom(cat.isrc[f1], p)
        if cat.icomp[(u, q1)] == f1 and cat.icomp[(u, q2)] == f2
    ]
    if len(mediators) != 1:
        raise DomainError(f"no unique mediator into {y1} x {y2}")
    return mediators[0]


def product_of_morphisms(cat: FinCategory, pd: ProductData, d: int, e: int) -> int:
    x1, x2 = cat.objects[cat.isrc[d]], cat.objects[cat.isrc[e]]
    _, pr1, pr2 = pd.pairwise[(x1, x2)]
    return product_induced(
        cat, pd,
        cat.objects[cat.itgt[d]], cat.objects[cat.itgt[e]],
        cat.icomp[(cat.mor_index[pr1], d)],
        cat.icomp[(cat.mor_index[pr2], e)],
    )


def denominators_closed_under_coproducts(
    dd: DenominatorData, cp: CoproductData
) -> tuple[bool, tuple[str, str] | None]:
    """Closure of D under morphism coproducts.

    Decided directly over D x D, and again by the shortcut (S x S and
    T x T suffice, since d + e factors through i + j followed by p + q);
    the two routes must agree.
    """
    cat = dd.base
    direct, witness = True, None
    for d in dd.den_sorted:
        for e in dd.den_sorted:
            if coproduct_of_morphisms(cat, cp, d, e) not in dd.iden:
                direct, witness = False, (cat.morphisms[d], cat.morphisms[e])
                break
        if not direct:
            break
    shortcut = all(
        coproduct_of_morphisms(cat, cp, i, j) in dd.iden
        for i in dd.s_sorted
        for j in dd.s_sorted
    ) and all(
        coproduct_of_morphisms(cat, cp, p, q) in dd.iden
        for p in dd.t_sorted
        for q in dd.t_sorted
    )
    assert direct == shortcut, "closure routes disagree"
    return direct, witness


def denominators_closed_under_products(
    dd: DenominatorData, pd: ProductData
) -> tuple[bool, tuple[str, str] | None]:
    cat = dd.base
    direct, witness = True, None
    for d in dd.den_sorted:
        for e in dd.den_sorted:
            if product_of_morphisms(cat, pd, d, e) not in dd.iden:
                direct, witness = False, (cat.morphisms[d], cat.morphisms[e])
                break
        if not direct:
            break
    shortcut = all(
        product_of_morphisms(cat, pd, i, j) in dd.iden
        for i in dd.s_sorted
        for j in dd.s_sorted
    ) and all(
        product_of_morphisms(cat, pd, p, q) in dd.iden
        for p in dd.t_sorted
        for q in dd.t_sorted
    )
    assert direct == shortcut, "closure routes disagree"
    return direct, witness


def check_localisation_preserves_coproducts(
    fc: FractionCategory, cp: CoproductData
) -> list[Violation]:
    """Initial object, pairwise coproducts and the induced-class formula.

    The localised initial object must stay initial; each localised
    coproduct must satisfy the universal property against localised
    embeddings; and for every pair of classes with a common target the
    mediator must equal the class of (b1 + b2, induced middle, shared a),
    computed on shared-leg representatives.
    """
    dd, cat, fr = fc.dd, fc.dd.base, fc.as_category
    report: list[Violation] = []
    closed, wit = denominators_closed_under_coproducts(dd, cp)
    if not closed:
        raise DomainError(f"denominators not closed under coproducts: {wit}")
    loc = fc.localisation.mor_map
    i0 = fr.obj_index[cp.initial]
    for x in range(fr.n_objects):
        hom = fr.hom(i0, x)
        if len(hom) != 1:
            report.append(
                Violation("fraction-initial", (cp.initial, fr.objects[x]))
            )
        else:
            base_unique = cat.hom(cat.obj_index[cp.initial], x)[0]
            if fr.morphisms[hom[0]] != loc[cat.morphisms[base_unique]]:
                report.append(
                    Violation(
                        "fraction-initial-map", (cp.initial, fr.objects[x])
                    )
                )
    part = fc.partition
    for x1 in cat.objects:
        for x2 in cat.objects:
            cobj, emb1, emb2 = cp.pairwise[(x1, x2)]
            le1, le2 = loc[emb1], loc[emb2]
            c = fr.obj_index[cobj]
            for y in range(fr.n_objects):
                for phi1 in fr.hom(fr.obj_index[x1], y):
                    for phi2 in fr.hom(fr.obj_index[x2], y):
                        mediators = [
                            u
                            for u in fr.hom(c, y)
                            if fr.icomp[(fr.mor_index[le1], u)] == phi1
                            and fr.icomp[(fr.mor_index[le2], u)] == phi2
                        ]
                        if len(mediators) != 1:
                            report.append(
                                Violation(
                                    "fraction-coproduct",
                                    (
                                        x1,
                                        x2,
                                        fr.morphisms[phi1],
                                        fr.morphisms[phi2],
                                    ),
                                )
                            )
                            continue
                        # shared-leg representatives realise the mediator
                        t1 = part.representative(
                            part.group_of_id(fr.morphisms[phi1])
                        )
                        t2 = part.representative(
                            part.group_of_id(fr.morphisms[phi2])
                        )
                        s1, s2 = common_denominator(dd, t1, t2, "target")
                        assert s1.a == s2.a
                        bsum = coproduct_of_morphisms(cat, cp, s1.b, s2.b)
                        middle = coproduct_induced(
                            cat,
                            cp,
                            cat.objects[cat.isrc[s1.f]],
                            cat.objects[cat.isrc[s2.f]],
                            s1.f,
                            s2.f,
                        )
                        formula = part.class_id(ThreeArrow(bsum, middle, s1.a))
                        if formula != fr.morphisms[mediators[0]]:
                            report.append(
                                Violation(
                                    "induced-class-formula",
                                    (
                                        x1,
                                        x2,
                                        fr.morphisms[phi1],
                                        fr.morphisms[phi2],
                                        formula,
                                    ),
                                )
                            )
    return report


def check_localisation_preserves_products(
    fc: FractionCategory, pd: ProductData
) -> list[Violation]:
    """Exact dual of the coproduct check (terminal, pairwise, formula)."""
    dd, cat, fr = fc.dd, fc.dd.base, fc.as_category
    report: list[Violation] = []
    closed, wit = denominators_closed_under_products(dd, pd)
    if not closed:
        raise DomainError(f"denominators not closed under products: {wit}")
    loc = fc.localisation.mor_map
    t0 = fr.obj_index[pd.terminal]
    for x in range(fr.n_objects):
        hom = fr.hom(x, t0)
        if len(hom) != 1:
            report.append(
                Violation("fraction-terminal", (pd.terminal, fr.objects[x]))
            )
        else:
            base_unique = cat.hom(x, cat.obj_index[pd.terminal])[0]
            if fr.morphisms[hom[0]] != loc[cat.morphisms[base_unique]]:
                report.append(
                    Violation("fraction-terminal-map", (pd.terminal, fr.objects[x]))
                )
    part = fc.partition
    for y1 in cat.objects:
        for y2 in cat.objects:
            pobj, pr1, pr2 = pd.pairwise[(y1, y2)]
            lp1, lp2 = loc[pr1], loc[pr2]
            p = fr.obj_index[pobj]
            for x in range(fr.n_objects):
                for phi1 in fr.hom(x, fr.obj_index[y1]):
                    for phi2 in fr.hom(x, fr.obj_index[y2]):
                        mediators = [
                            u
                            for u in fr.hom(x, p)
                            if fr.icomp[(u, fr.mor_index[lp1])] == phi1
                            and fr.icomp[(u, fr.mor_index[lp2])] == phi2
                        ]
                        if len(mediators) != 1:
                            report.append(
                                Violation(
                                    "fraction-product",
                                    (y1, y2, fr.morphisms[phi1], fr.morphisms[phi2]),
                                )
                            )
                            continue
                        t1 = part.representative(
                            part.group_of_id(fr.morphisms[phi1])
                        )
                        t2 = part.representative(
                            part.group_of_id(fr.morphisms[phi2])
                        )
                        s1, s2 = common_denominator(dd, t1, t2, "source")
                        assert s1.b == s2.b
                        asum = product_of_morphisms(cat, pd, s1.a, s2.a)
                        middle = product_induced(
                            cat,
                            pd,
                            cat.objects[cat.itgt[s1.f]],
                            cat.objects[cat.itgt[s2.f]],
                            s1.f,
                            s2.f,
                        )
                        formula = part.class_id(ThreeArrow(s1.b, middle, asum))
                        if formula != fr.morphisms[mediators[0]]:
                            report.append(
                                Violation(
                                    "induced-class-formula-product",
                                    (
                                        y1,
                                        y2,
                                        fr.morphisms[phi1],
                                        fr.morphisms[phi2],
                                        formula,
                                    ),
                                )
                            )
    return report


@dataclass
class AdditionTables:
    """Hom-wise commutative-monoid addition, from the instance file.

    ``zero[(x, y)]`` names the additive unit of hom(x, y) and
    ``plus[(f, g)]`` the sum of two parallel morphisms.
    """

    zero: dict[tuple[str, str], str]
    plus: dict[tuple[str, str], str]

    @staticmethod
    def from_instance_entries(entries: list[dict]) -> "AdditionTables":
        zero = {(e["src"], e["tgt"]): e["zero"] for e in entries}
        plus = {}
        for e in entries:
            for lhs, rhs, total in e["table"]:
                plus[(lhs, rhs)] = total
        return AdditionTables(zero, plus)


def validate_addition(cat: FinCategory, add: AdditionTables) -> list[Violation]:
    """Commutative-monoid laws per hom-set plus bilinearity over composition."""
    report: list[Violation] = []
    homs: dict[tuple[str, str], list[str]] = {}
    for f in cat.morphisms:
        homs.setdefault((cat.src_of(f), cat.tgt_of(f)), []).append(f)
    for key, members in homs.items():
        z = add.zero.get(key)
        if z is None or z not in members:
            report.append(Violation("missing-zero", key))
            continue
        for f in members:
            for g in members:
                s = add.plus.get((f, g))
                if s is None or s not in members:
                    report.append(Violation("missing-sum", (f, g)))
                    continue
                if add.plus.get((g, f)) != s:
                    report.append(Violation("not-commutative", (f, g)))
            if add.plus.get((f, z)) != f:
                report.append(Violation("zero-law", (f,)))
            for g in members:
                for h in members:
                    lhs = add.plus.get((add.plus[(f, g)], h))
                    rhs = add.plus.get((f, add.plus[(g, h)]))
                    if lhs != rhs:
                        report.append(Violation("not-associative", (f, g, h)))
    if report:
        return report
    for f in cat.morphisms:
        for g in cat.morphisms:
            if cat.tgt_of(f) != cat.src_of(g):
                continue
            for g2 in homs[(cat.src_of(g), cat.tgt_of(g))]:
                lhs = cat.compose(f, add.plus[(g, g2)])
                rhs = add.plus[(cat.compose(f, g), cat.compose(f, g2))]
                if lhs != rhs:
                    report.append(Violation("left-bilinearity", (f, g, g2)))
            for f2 in homs[(cat.src_of(f), cat.tgt_of(f))]:
                lhs = cat.compose(add.plus[(f, f2)], g)
                rhs = add.plus[(cat.compose(f, g), cat.compose(f2, g))]
                if lhs != rhs:
                    report.append(Violation("right-bilinearity", (f, f2, g)))
    return report


def sum_formula_check(fc: FractionCategory, add: AdditionTables) -> list[Violation]:
    """[b/f/a] + [b/g/a] == [b/(f+g)/a] and well-definedness of the
    transported addition over all shared-leg representative pairs."""
    dd, cat = fc.dd, fc.dd.base
    bad = validate_addition(cat, add)
    if bad:
        raise DomainError(f"addition tables invalid: {bad[0]}")
    report: list[Violation] = []
    part = fc.partition
    arrows = part.arrows
    class_sum: dict[tuple[int, int], int] = {}
    for t1 in arrows:
        for t2 in arrows:
            if t1.b != t2.b or t1.a != t2.a:
                continue
            f_plus_g = cat.mor_index[
                add.plus[(cat.morphisms[t1.f], cat.morphisms[t2.f])]
            ]
            total = part.class_index(ThreeArrow(t1.b, f_plus_g, t1.a))
            key = (part.class_index(t1), part.class_index(t2))
            if key in class_sum and class_sum[key] != total:
                report.append(
                    Violation(
                        "sum-not-well-defined",
                        (t1.ids(dd), t2.ids(dd), part.class_ids[total]),
                    )
                )
            class_sum[key] = total
    return report
