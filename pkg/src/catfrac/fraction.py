"""The fraction category: classes of three-arrows with composition.

Composing [b1/f1/a1] and [b2/f2/a2] (strict mode) replays the
construction behind well-definedness: factor the denominator b2 a1 into
an S-part j and a T-part q, pull f1 back against q, push f2 out along j,
and read off (q1 b1, f1' f2', a2 j1).  Lax mode instead searches the
index-smallest arbitrary commuting squares with denominator sides; both
modes land in the same class, which the verification sweeps check
exhaustively.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    DomainError,
    FinCategory,
    FunctorTable,
    find_inverse,
    validate_category,
    validate_functor,
)
from .denominators import DenominatorData, is_multiplicative, is_two_of_six, require_uni_fractionable
from .fileio import Instance
from .three_arrows import (
    FractionPartition,
    ThreeArrow,
    check_three_arrow,
    common_denominator,
    fraction_equivalence,
    identity_arrow,
    is_normal,
    normalise,
    source_of,
    target_of,
)


def strict_composite(
    dd: DenominatorData, t1: ThreeArrow, t2: ThreeArrow
) -> ThreeArrow:
    """One strict-mode composite representative, from the cached witnesses."""
    cert = dd.certificate()
    cat = dd.base
    b2a1 = cat.icomp[(t2.b, t1.a)]
    fac = cert.fac.witnesses[b2a1]
    f1p, q1 = cert.wu.pullbacks[(fac.p, t1.f)].completion
    f2p, j1 = cert.wu.pushouts[(fac.i, t2.f)].completion
    return ThreeArrow(
        cat.icomp[(q1, t1.b)],
        cat.icomp[(f1p, f2p)],
        cat.icomp[(t2.a, j1)],
    )


def strict_composites_all(dd: DenominatorData, t1: ThreeArrow, t2: ThreeArrow):
    """Every strict-mode composite over all valid witness choices.

    Sweeps all (j, q) factorisations of b2 a1 and all weakly universal
    completions on both sides; used by the choice-independence check.
    """
    from .denominators import is_weak_pullback, is_weak_pushout

    cat = dd.base
    b2a1 = cat.icomp[(t2.b, t1.a)]
    for j in dd.s_sorted:
        if cat.isrc[j] != cat.isrc[b2a1]:
            continue
        for q in dd.t_sorted:
            if (
                cat.isrc[q] != cat.itgt[j]
                or cat.itgt[q] != cat.itgt[b2a1]
                or cat.icomp[(j, q)] != b2a1
            ):
                continue
            for f1p in cat.by_tgt[cat.isrc[q]]:
                for q1 in cat.by_tgt[cat.isrc[t1.f]]:
                    if (
                        q1 not in dd.it
                        or cat.isrc[q1] != cat.isrc[f1p]
                        or cat.icomp[(f1p, q)] != cat.icomp[(q1, t1.f)]
                        or not is_weak_pullback(cat, (q, t1.f, f1p, q1))
                    ):
                        continue
                    for f2p in cat.by_src[cat.itgt[j]]:
                        for j1 in cat.by_src[cat.itgt[t2.f]]:
                            if (
                                j1 not in dd.is_
                                or cat.itgt[j1] != cat.itgt[f2p]
                                or cat.icomp[(j, f2p)] != cat.icomp[(t2.f, j1)]
                                or not is_weak_pushout(cat, (j, t2.f, f2p, j1))
                            ):
                                continue
                            yield ThreeArrow(
                                cat.icomp[(q1, t1.b)],
                                cat.icomp[(f1p, f2p)],
                                cat.icomp[(t2.a, j1)],
                            )


def lax_composite(
    dd: DenominatorData, t1: ThreeArrow, t2: ThreeArrow
) -> ThreeArrow:
    """Index-smallest composite via arbitrary commuting denominator squares."""
    for t in lax_composites_all(dd, t1, t2):
        return t
    raise AssertionError("no commuting completion on a certified structure")


def lax_composites_all(dd: DenominatorData, t1: ThreeArrow, t2: ThreeArrow):
    """Every lax-mode composite: b2 a1 = d e, g1 e = e1 f1, d g2 = f2 d1
    with d, e, d1, e1 denominators and arbitrary middles g1, g2."""
    cat = dd.base
    b2a1 = cat.icomp[(t2.b, t1.a)]
    for d in dd.den_sorted:
        if cat.isrc[d] != cat.isrc[b2a1]:
            continue
        for e in dd.den_sorted:
            if (
                cat.isrc[e] != cat.itgt[d]
                or cat.itgt[e] != cat.itgt[b2a1]
                or cat.icomp[(d, e)] != b2a1
            ):
                continue
            for e1 in dd.den_sorted:
                if cat.itgt[e1] != cat.isrc[t1.f]:
                    continue
                e1f1 = cat.icomp[(e1, t1.f)]
                for g1 in cat.by_src[cat.isrc[e1]]:
                    if cat.itgt[g1] != cat.isrc[e] or cat.icomp[(g1, e)] != e1f1:
                        continue
                    for d1 in dd.den_sorted:
                        if cat.isrc[d1] != cat.itgt[t2.f]:
                            continue
                        f2d1 = cat.icomp[(t2.f, d1)]
                        for g2 in cat.by_src[cat.itgt[d]]:
                            if (
                                cat.itgt[g2] != cat.itgt[d1]
                                or cat.icomp[(d, g2)] != f2d1
                            ):
                                continue
                            yield ThreeArrow(
                                cat.icomp[(e1, t1.b)],
                                cat.icomp[(g1, g2)],
                                cat.icomp[(t2.a, d1)],
                            )


def compose_fractions(
    dd: DenominatorData,
    part: FractionPartition,
    t1: ThreeArrow,
    t2: ThreeArrow,
    strict: bool = True,
) -> int:
    """Class index of [t1][t2]; requires target(t1) == source(t2)."""
    if target_of(dd, t1) != source_of(dd, t2):
        raise DomainError(
            f"not composable: {t1.ids(dd)} ends at a different object "
            f"than {t2.ids(dd)} starts"
        )
    rep = strict_composite(dd, t1, t2) if strict else lax_composite(dd, t1, t2)
    return part.class_index(rep)


class FractionCategory:
    """The quotient category of the three-arrow graph, fully tabulated."""

    def __init__(
        self,
        dd: DenominatorData,
        part: FractionPartition,
        as_category: FinCategory,
        localisation: FunctorTable,
    ):
        self.dd = dd
        self.partition = part
        self.as_category = as_category
        self.localisation = localisation

    def class_id(self, t: ThreeArrow) -> str:
        return self.partition.class_id(t)

    def compose_ids(self, c1: str, c2: str) -> str:
        return self.as_category.compose(c1, c2)


def build_fraction_category(dd: DenominatorData) -> FractionCategory:
    """Assemble the fraction category over a certified structure.

    The composition table is computed once per composable class pair from
    the index-smallest representatives in strict mode; identities are the
    classes of (1, 1, 1).
    """
    require_uni_fractionable(dd)
    cat = dd.base
    part = fraction_equivalence(dd)
    n = len(part)
    src = {}
    tgt = {}
    for gi in range(n):
        rep = part.representative(gi)
        src[part.class_ids[gi]] = cat.objects[source_of(dd, rep)]
        tgt[part.class_ids[gi]] = cat.objects[target_of(dd, rep)]
    identity = {
        cat.objects[x]: part.class_ids[part.class_index(identity_arrow(dd, x))]
        for x in range(cat.n_objects)
    }
    comp: dict[tuple[str, str], str] = {}
    for g1 in range(n):
        rep1 = part.representative(g1)
        for g2 in range(n):
            rep2 = part.representative(g2)
            if target_of(dd, rep1) != source_of(dd, rep2):
                continue
            g = compose_fractions(dd, part, rep1, rep2, strict=True)
            comp[(part.class_ids[g1], part.class_ids[g2])] = part.class_ids[g]
    # the fraction category only depends on (base, D), so it is named after
    # the base, not after the S/T-carrying structure
    as_category = FinCategory(
        f"Fr({cat.name})", list(cat.objects), list(part.class_ids), src, tgt,
        identity, comp,
    )
    loc = FunctorTable(
        cat,
        as_category,
        {x: x for x in cat.objects},
        {
            f: part.class_ids[
                part.class_index(
                    ThreeArrow(
                        cat.iidentity[cat.isrc[i]], i, cat.iidentity[cat.itgt[i]]
                    )
                )
            ]
            for i, f in enumerate(cat.morphisms)
        },
    )
    return FractionCategory(dd, part, as_category, loc)


def inverse_of_denominator(fc: FractionCategory, d: str) -> str:
    """Class of (d, 1, 1); checked equal to (1, 1, d) and two-sided inverse
    of the localised morphism."""
    dd, cat = fc.dd, fc.dd.base
    i = cat.mor_index[d]
    if i not in dd.iden:
        raise DomainError(f"{d!r} is not a denominator")
    e_src, e_tgt = cat.iidentity[cat.isrc[i]], cat.iidentity[cat.itgt[i]]
    left = fc.partition.class_id(ThreeArrow(i, e_src, e_src))
    right = fc.partition.class_id(ThreeArrow(e_tgt, e_tgt, i))
    assert left == right, "the two inverse spellings drifted apart"
    loc = fc.localisation.mor_map[d]
    fr = fc.as_category
    assert fr.compose(loc, left) == fr.identity_of(cat.src_of(d))
    assert fr.compose(left, loc) == fr.identity_of(cat.tgt_of(d))
    return left


def invert_class(fc: FractionCategory, t: ThreeArrow) -> str:
    """Inverse class of [t] for t with a denominator middle.

    Factors the middle as d1 d2 (S then T, cached), Ore-completes d1
    against b and d2 against a, and returns [d2c / ac bc / d1c].
    """
    dd, cat = fc.dd, fc.dd.base
    cert = dd.certificate()
    check_three_arrow(dd, t)
    if t.f not in dd.iden:
        raise DomainError("middle component is not a denominator")
    fac = cert.fac.witnesses[t.f]
    bc, d1c = cert.wu.pushouts[(fac.i, t.b)].completion
    ac, d2c = cert.wu.pullbacks[(fac.p, t.a)].completion
    inv = ThreeArrow(d2c, cat.icomp[(ac, bc)], d1c)
    cid = fc.partition.class_id(inv)
    own = fc.class_id(t)
    fr = fc.as_category
    assert fr.compose(own, cid) == fr.identity_of(
        cat.objects[source_of(dd, t)]
    )
    assert fr.compose(cid, own) == fr.identity_of(
        cat.objects[target_of(dd, t)]
    )
    return cid


def _target_inverse(target: FinCategory, f: str) -> str:
    inv = find_inverse(target, f)
    if inv is None:
        raise DomainError(f"image {f!r} is not invertible in the target")
    return inv


def induced_functor(
    fc: FractionCategory, fun: FunctorTable, check_inverts: bool = True
) -> FunctorTable:
    """The unique functor out of the fraction category extending ``fun``.

    On a class of (b, f, a) the value is F(b)^-1 F(f) F(a)^-1 computed in
    the target; representative-independence and factorisation through the
    localisation are asserted.
    """
    dd = fc.dd
    if validate_functor(fun):
        raise DomainError("input is not a functor")
    if check_inverts:
        for d in dd.den_sorted:
            _target_inverse(fun.target, fun.mor_map[dd.base.morphisms[d]])
    tgt = fun.target

    def value(t: ThreeArrow) -> str:
        m = dd.base.morphisms
        fb_inv = _target_inverse(tgt, fun.mor_map[m[t.b]])
        fa_inv = _target_inverse(tgt, fun.mor_map[m[t.a]])
        return tgt.compose(tgt.compose(fb_inv, fun.mor_map[m[t.f]]), fa_inv)

    mor_map = {}
    for gi, cid in enumerate(fc.partition.class_ids):
        images = {value(t) for t in fc.partition.members(gi)}
        assert len(images) == 1, f"class {cid} has representative-dependent image"
        mor_map[cid] = images.pop()
    hat = FunctorTable(
        fc.as_category,
        tgt,
        {x: fun.obj_map[x] for x in fc.as_category.objects},
        mor_map,
    )
    assert not validate_functor(hat)
    comp = fc.localisation.compose_with(hat)
    assert comp.obj_map == fun.obj_map and comp.mor_map == fun.mor_map
    return hat


def induced_transformation(
    fc: FractionCategory,
    fun_f: FunctorTable,
    fun_g: FunctorTable,
    alpha: dict[str, str],
) -> dict[str, str]:
    """Lift a transformation along the localisation: same components.

    ``alpha`` maps each base object to a target morphism F X -> G X;
    naturality is required on the base and asserted against every class.
    """
    dd, tgt = fc.dd, fun_f.target
    cat = dd.base
    for f in cat.morphisms:
        lhs = tgt.compose(fun_f.mor_map[f], alpha[cat.tgt_of(f)])
        rhs = tgt.compose(alpha[cat.src_of(f)], fun_g.mor_map[f])
        if lhs != rhs:
            raise DomainError(f"input transformation not natural at {f!r}")
    hat_f = induced_functor(fc, fun_f)
    hat_g = induced_functor(fc, fun_g)
    hat = dict(alpha)
    fr = fc.as_category
    for cid in fr.morphisms:
        x, y = fr.src_of(cid), fr.tgt_of(cid)
        assert tgt.compose(hat_f.mor_map[cid], hat[y]) == tgt.compose(
            hat[x], hat_g.mor_map[cid]
        ), f"lifted transformation not natural at {cid}"
    return hat


def induced_functor_on_fractions(
    fun: FunctorTable, fc_src: FractionCategory, fc_tgt: FractionCategory
) -> FunctorTable:
    """Componentwise image functor between fraction categories.

    Requires ``fun`` to preserve denominators; asserts representative
    independence, functoriality and compatibility with both localisations.
    """
    dsrc, dtgt = fc_src.dd, fc_tgt.dd
    if validate_functor(fun):
        raise DomainError("input is not a functor")
    msrc = dsrc.base.morphisms
    for d in dsrc.den_sorted:
        if fun.target.mor_index[fun.mor_map[msrc[d]]] not in dtgt.iden:
            raise DomainError(f"denominator {msrc[d]!r} not preserved")

    def image(t: ThreeArrow) -> ThreeArrow:
        mi = fun.target.mor_index
        return ThreeArrow(
            mi[fun.mor_map[msrc[t.b]]],
            mi[fun.mor_map[msrc[t.f]]],
            mi[fun.mor_map[msrc[t.a]]],
        )

    mor_map = {}
    for gi, cid in enumerate(fc_src.partition.class_ids):
        images = {fc_tgt.class_id(image(t)) for t in fc_src.partition.members(gi)}
        assert len(images) == 1, f"class {cid} has representative-dependent image"
        mor_map[cid] = images.pop()
    fr_fun = FunctorTable(
        fc_src.as_category,
        fc_tgt.as_category,
        {x: fun.obj_map[x] for x in fc_src.as_category.objects},
        mor_map,
    )
    assert not validate_functor(fr_fun)
    lhs = fun.compose_with(fc_tgt.localisation)
    rhs = fc_src.localisation.compose_with(fr_fun)
    assert lhs.obj_map == rhs.obj_map and lhs.mor_map == rhs.mor_map
    return fr_fun


def classify_isomorphisms(fc: FractionCategory) -> set[str]:
    """Invertible classes, straight from the composition table.

    On a weakly saturated base this must coincide with the classes whose
    middle is a denominator, which is asserted.
    """
    from .core import isomorphisms

    isos = isomorphisms(fc.as_category)
    dd = fc.dd
    if is_multiplicative(dd, "D")[0] and is_two_of_six(dd)[0]:
        by_middle = {
            fc.partition.class_ids[gi]
            for gi in range(len(fc.partition))
            if fc.partition.representative(gi).f in dd.iden
        }
        assert isos == by_middle, "isomorphisms differ from denominator-middles"
    return isos


def is_saturated(fc: FractionCategory) -> bool:
    """Whether every base morphism with invertible image lies in D.

    Cross-checked against the ladder: for a certified structure this is
    equivalent to weak saturation.
    """
    from .core import isomorphisms

    dd = fc.dd
    isos = isomorphisms(fc.as_category)
    saturated = all(
        fc.localisation.mor_map[f] not in isos
        or dd.base.mor_index[f] in dd.iden
        for f in dd.base.morphisms
    )
    ladder = is_multiplicative(dd, "D")[0] and is_two_of_six(dd)[0]
    assert saturated == ladder, "saturation disagrees with weak saturation"
    return saturated


def st_independence_check(dd1: DenominatorData, dd2: DenominatorData) -> bool:
    """Whether two structures on the same (base, D) localise identically."""
    if not dd1.base.table_equal(dd2.base) or dd1.iden != dd2.iden:
        raise DomainError("structures do not share base and denominators")
    fc1 = build_fraction_category(dd1)
    fc2 = build_fraction_category(dd2)
    return (
        fc1.partition.groups == fc2.partition.groups
        and fc1.as_category.table_equal(fc2.as_category)
        and fc1.localisation.mor_map == fc2.localisation.mor_map
    )


def full_subcategory(dd: DenominatorData, objects: list[str]) -> DenominatorData:
    """The full subcategory on ``objects`` with restricted D, S, T."""
    cat = dd.base
    keep_obj = [x for x in cat.objects if x in set(objects)]
    keep = [
        f
        for f in cat.morphisms
        if cat.src_of(f) in set(objects) and cat.tgt_of(f) in set(objects)
    ]
    keep_set = set(keep)
    sub = FinCategory(
        f"{dd.name}|{','.join(keep_obj)}",
        keep_obj,
        keep,
        {f: cat.src_of(f) for f in keep},
        {f: cat.tgt_of(f) for f in keep},
        {x: cat.identity_of(x) for x in keep_obj},
        {
            (f, g): cat.compose(f, g)
            for f in keep
            for g in keep
            if cat.tgt_of(f) == cat.src_of(g)
        },
    )
    assert all(cat.compose(f, g) in keep_set for f in keep for g in keep
               if cat.tgt_of(f) == cat.src_of(g))
    mor = cat.morphisms
    return DenominatorData(
        sub,
        [mor[i] for i in dd.den_sorted if mor[i] in keep_set],
        [mor[i] for i in dd.s_sorted if mor[i] in keep_set],
        [mor[i] for i in dd.t_sorted if mor[i] in keep_set],
        name=sub.name,
    )


@dataclass
class SubcategoryReport:
    variant: str
    sub_uni_fractionable: bool
    hypothesis_ok: bool
    hypothesis_failures: list[str]
    full: bool
    faithful: bool
    dense: bool

    @property
    def equivalence(self) -> bool:
        return self.full and self.faithful and self.dense

    def lines(self) -> list[str]:
        out = [
            f"subcategory-uni-fractionable "
            f"{'PASS' if self.sub_uni_fractionable else 'FAIL'}",
            f"hypothesis({self.variant}) {'PASS' if self.hypothesis_ok else 'FAIL'}",
        ]
        out += [f"  {msg}" for msg in self.hypothesis_failures]
        out += [
            f"full {'PASS' if self.full else 'FAIL'}",
            f"faithful {'PASS' if self.faithful else 'FAIL'}",
            f"dense {'PASS' if self.dense else 'FAIL'}",
            f"equivalence {'PASS' if self.equivalence else 'FAIL'}",
        ]
        return out


def subcategory_equivalence(
    dd: DenominatorData, objects: list[str], variant: str
) -> SubcategoryReport:
    """Check the resolution hypothesis for a full subcategory and then test
    the induced comparison functor for being full, faithful and dense.

    The equivalence is decided exhaustively on the two finished fraction
    categories whether or not the hypothesis holds; a failed hypothesis is
    reported rather than fatal.
    """
    if variant not in ("s-resolution", "t-resolution"):
        raise DomainError(f"unknown variant {variant!r}")
    if not objects:
        raise DomainError("object subset must be nonempty")
    cat = dd.base
    inside = set(objects)
    failures: list[str] = []
    for x in cat.objects:
        if variant == "s-resolution":
            hit = any(
                cat.morphisms[d]
                for d in dd.den_sorted
                if cat.objects[cat.itgt[d]] == x and cat.objects[cat.isrc[d]] in inside
            )
            if not hit:
                failures.append(f"no denominator into {x} from the subcategory")
        else:
            hit = any(
                cat.morphisms[d]
                for d in dd.den_sorted
                if cat.objects[cat.isrc[d]] == x and cat.objects[cat.itgt[d]] in inside
            )
            if not hit:
                failures.append(f"no denominator out of {x} into the subcategory")
    if variant == "s-resolution":
        for i in dd.s_sorted:
            if cat.objects[cat.isrc[i]] in inside and cat.objects[cat.itgt[i]] not in inside:
                failures.append(
                    f"S-denominator {cat.morphisms[i]} leaves the subcategory"
                )
    else:
        for p in dd.t_sorted:
            if cat.objects[cat.itgt[p]] in inside and cat.objects[cat.isrc[p]] not in inside:
                failures.append(
                    f"T-denominator {cat.morphisms[p]} enters from outside"
                )

    sub = full_subcategory(dd, objects)
    sub_ok = sub.certificate().ok
    if not sub_ok:
        return SubcategoryReport(
            variant, False, not failures, failures, False, False, False
        )
    fc_sub = build_fraction_category(sub)
    fc_all = build_fraction_category(dd)
    inclusion = FunctorTable(
        sub.base,
        dd.base,
        {x: x for x in sub.base.objects},
        {f: f for f in sub.base.morphisms},
    )
    fr_inc = induced_functor_on_fractions(inclusion, fc_sub, fc_all)

    full = True
    faithful = True
    fr_all, fr_sub = fc_all.as_category, fc_sub.as_category
    for u in sub.base.objects:
        for v in sub.base.objects:
            sub_hom = fr_sub.hom(fr_sub.obj_index[u], fr_sub.obj_index[v])
            images = [
                fr_inc.mor_map[fr_sub.morphisms[c]] for c in sub_hom
            ]
            big_hom = {
                fr_all.morphisms[c]
                for c in fr_all.hom(fr_all.obj_index[u], fr_all.obj_index[v])
            }
            if set(images) != big_hom:
                full = False
            if len(set(images)) != len(images):
                faithful = False
    from .core import isomorphisms

    isos = isomorphisms(fr_all)
    dense = True
    for x in fr_all.objects:
        ok = any(
            fr_all.morphisms[c] in isos
            for u in inside
            for c in fr_all.hom(fr_all.obj_index[u], fr_all.obj_index[x])
        )
        if not ok:
            dense = False
    return SubcategoryReport(
        variant, True, not failures, failures, full, faithful, dense
    )


def fraction_instance(fc: FractionCategory) -> Instance:
    """File-format document for a built fraction category.

    The emitted denominator structure is the isomorphism classes (with
    S = T = D), which is closed and saturated, so the output reloads as a
    valid structure.  ``classes`` lists every member of each class and
    ``localisation`` maps base morphisms to their classes.
    """
    from .core import isomorphisms

    isos = sorted(
        isomorphisms(fc.as_category), key=lambda c: fc.as_category.mor_index[c]
    )
    classes = {
        cid: [t.ids(fc.dd) for t in fc.partition.members(gi)]
        for gi, cid in enumerate(fc.partition.class_ids)
    }
    return Instance(
        category=fc.as_category,
        denominators=isos,
        s_denominators=isos,
        t_denominators=isos,
        classes=classes,
        localisation={
            f: fc.localisation.mor_map[f] for f in fc.dd.base.morphisms
        },
    )


def fraction_dot(fc: FractionCategory) -> str:
    """Graphviz rendering: objects as nodes, classes as labelled edges."""
    lines = [f'digraph "{fc.as_category.name}" {{']
    for x in fc.as_category.objects:
        lines.append(f'  "{x}";')
    for gi, cid in enumerate(fc.partition.class_ids):
        rep = fc.partition.representative(gi)
        s = fc.dd.base.objects[source_of(fc.dd, rep)]
        t = fc.dd.base.objects[target_of(fc.dd, rep)]
        lines.append(f'  "{s}" -> "{t}" [label="{cid}: {rep.ids(fc.dd)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
