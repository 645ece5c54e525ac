"""Three-arrow diagrams and fraction equality.

A three-arrow (b, f, a) is the diagram

    X <=b= X~ --f--> Y~ <=a= Y        (b, a denominators)

read as "invert b, apply f, invert a"; its source is tgt(b) and its
target is src(a).  Fraction equality is the congruence generated by
composing c into the right leg ((b, f, a) ~ (b, fc, ac) when ac stays a
denominator) and c into the left leg ((b, f, a) ~ (cb, cf, a) when cb
stays one).  Its classes are the morphisms of the fraction category.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import DomainError
from .denominators import DenominatorData
from .unionfind import DisjointSet


@dataclass(frozen=True, order=True)
class ThreeArrow:
    """Morphism indices (b, f, a); ordering is index-lexicographic."""

    b: int
    f: int
    a: int

    def ids(self, dd: DenominatorData) -> str:
        m = dd.base.morphisms
        return f"{m[self.b]},{m[self.f]},{m[self.a]}"


def parse_three_arrow(dd: DenominatorData, text: str) -> ThreeArrow:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise DomainError(f"expected 'b,f,a', got {text!r}")
    for p in parts:
        if p not in dd.base.mor_index:
            raise DomainError(f"unknown morphism id {p!r}")
    t = ThreeArrow(*(dd.base.mor_index[p] for p in parts))
    check_three_arrow(dd, t)
    return t


def check_three_arrow(dd: DenominatorData, t: ThreeArrow) -> None:
    cat = dd.base
    if t.b not in dd.iden or t.a not in dd.iden:
        raise DomainError(f"{t.ids(dd)}: outer components must be denominators")
    if cat.isrc[t.b] != cat.isrc[t.f] or cat.itgt[t.a] != cat.itgt[t.f]:
        raise DomainError(f"{t.ids(dd)}: endpoint mismatch")


def source_of(dd: DenominatorData, t: ThreeArrow) -> int:
    return dd.base.itgt[t.b]


def target_of(dd: DenominatorData, t: ThreeArrow) -> int:
    return dd.base.isrc[t.a]


def identity_arrow(dd: DenominatorData, x: int) -> ThreeArrow:
    e = dd.base.iidentity[x]
    return ThreeArrow(e, e, e)


def enumerate_three_arrows(dd: DenominatorData) -> list[ThreeArrow]:
    """All (b, f, a) with b, a in D and matching endpoints, index order."""
    cat = dd.base
    out = []
    for b in range(cat.n_morphisms):
        if b not in dd.iden:
            continue
        for f in cat.by_src[cat.isrc[b]]:
            for a in cat.by_tgt[cat.itgt[f]]:
                if a in dd.iden:
                    out.append(ThreeArrow(b, f, a))
    out.sort()
    return out


def fraction_generators(
    dd: DenominatorData, variant: str = "two-sided"
) -> list[tuple[ThreeArrow, ThreeArrow]]:
    """Generating pairs for fraction equality.

    "two-sided" emits the right-leg moves (b, f, a) ~ (b, fc, ac) for all
    c with ac in D and the left-leg moves (b, f, a) ~ (cb, cf, a) for all
    c with cb in D.  "one-step" emits the single combined family: t is
    related to t2 when morphisms c, c2 exist with b == comp(c2, b2),
    comp(f, c) == comp(c2, f2) and comp(a, c) == a2.  Both families
    generate the same closure; the one-step family is kept for the
    cross-check only.
    """
    cat = dd.base
    arrows = enumerate_three_arrows(dd)
    if variant == "two-sided":
        pairs = []
        for t in arrows:
            for c in cat.by_src[cat.itgt[t.f]]:
                ac = cat.icomp[(t.a, c)]
                if ac in dd.iden:
                    # semi-saturatedness makes c itself a denominator
                    assert c in dd.iden, "2-of-3 failed during generator sweep"
                    pairs.append(
                        (t, ThreeArrow(t.b, cat.icomp[(t.f, c)], ac))
                    )
            for c in cat.by_tgt[cat.isrc[t.f]]:
                cb = cat.icomp[(c, t.b)]
                if cb in dd.iden:
                    assert c in dd.iden, "2-of-3 failed during generator sweep"
                    pairs.append(
                        (t, ThreeArrow(cb, cat.icomp[(c, t.f)], t.a))
                    )
        return pairs
    if variant == "one-step":
        # pairs (t, t2) with c, c2 solving b = c2 b2, f c = c2 f2, a c = a2
        pairs = []
        by_right: dict[tuple[int, int], list[int]] = {}
        for x in range(cat.n_morphisms):
            for c in cat.by_src[cat.itgt[x]]:
                by_right.setdefault((c, cat.icomp[(x, c)]), []).append(x)
        for t2 in arrows:
            for c2 in cat.by_tgt[cat.isrc[t2.b]]:
                b = cat.icomp[(c2, t2.b)]
                if b not in dd.iden:
                    continue
                w = cat.icomp[(c2, t2.f)]
                for c in cat.by_tgt[cat.itgt[t2.f]]:
                    for f in by_right.get((c, w), []):
                        if cat.isrc[f] != cat.isrc[c2]:
                            continue
                        for a in by_right.get((c, t2.a), []):
                            if a in dd.iden:
                                pairs.append((ThreeArrow(b, f, a), t2))
        return pairs
    raise DomainError(f"unknown generator variant {variant!r}")


class FractionPartition:
    """Classes of three-arrows under fraction equality.

    Class ids are "q" + index of the smallest member in enumeration
    order, which keeps references stable across runs.
    """

    def __init__(self, dd: DenominatorData, variant: str = "two-sided"):
        self.dd = dd
        self.arrows = enumerate_three_arrows(dd)
        self.arrow_index = {t: i for i, t in enumerate(self.arrows)}
        ds = DisjointSet(len(self.arrows))
        for t1, t2 in fraction_generators(dd, variant):
            ds.union(self.arrow_index[t1], self.arrow_index[t2])
        self.groups = ds.groups()
        self.class_of_arrow = {}
        self.class_ids = []
        for gi, group in enumerate(self.groups):
            cid = f"q{group[0]}"
            self.class_ids.append(cid)
            for member in group:
                self.class_of_arrow[member] = gi
        self._id_to_group = {cid: gi for gi, cid in enumerate(self.class_ids)}

    def class_index(self, t: ThreeArrow) -> int:
        i = self.arrow_index.get(t)
        if i is None:
            raise DomainError(f"not an enumerated three-arrow: {t}")
        return self.class_of_arrow[i]

    def class_id(self, t: ThreeArrow) -> str:
        return self.class_ids[self.class_index(t)]

    def members(self, gi: int) -> list[ThreeArrow]:
        return [self.arrows[i] for i in self.groups[gi]]

    def representative(self, gi: int) -> ThreeArrow:
        return self.arrows[self.groups[gi][0]]

    def group_of_id(self, cid: str) -> int:
        if cid not in self._id_to_group:
            raise DomainError(f"unknown class id {cid!r}")
        return self._id_to_group[cid]

    def same_class(self, t1: ThreeArrow, t2: ThreeArrow) -> bool:
        return self.class_index(t1) == self.class_index(t2)

    def __len__(self) -> int:
        return len(self.groups)


@lru_cache(maxsize=None)
def fraction_equivalence(dd: DenominatorData, variant: str = "two-sided"):
    """The (cached) partition of the three-arrows of ``dd``."""
    return FractionPartition(dd, variant)


def is_denominator_class(
    dd: DenominatorData, part: FractionPartition, t: ThreeArrow
) -> bool:
    """Whether the middle component lies in D (a class invariant)."""
    part.class_index(t)
    return t.f in dd.iden


def normalise(dd: DenominatorData, t: ThreeArrow) -> ThreeArrow:
    """A normal three-arrow (T-denominator, f, S-denominator) fraction
    equal to ``t``, computed by the normalisation recipe:

      factor b = i p;  push f out along i to (f1, i1);  factor the
      denominator a i1 = j q;  pull f1 back against q to (f2, q1);
      the result is (q1 p, f2, j).

    All four steps use the cached axiom witnesses, so the output is
    deterministic; only its class, not its spelling, is the contract.
    """
    cert = dd.certificate()
    check_three_arrow(dd, t)
    cat = dd.base
    try:
        fac_b = cert.fac.witnesses[t.b]
        f1, i1 = cert.wu.pushouts[(fac_b.i, t.f)].completion
        ai1 = cat.icomp[(t.a, i1)]
        fac_ai = cert.fac.witnesses[ai1]
        f2, q1 = cert.wu.pullbacks[(fac_ai.p, f1)].completion
    except KeyError as exc:  # cannot happen once the certificate is ok
        raise AssertionError(f"witness cache miss: {exc}") from exc
    return ThreeArrow(cat.icomp[(q1, fac_b.p)], f2, fac_ai.i)


def is_normal(dd: DenominatorData, t: ThreeArrow) -> bool:
    return t.b in dd.it and t.a in dd.is_


def common_denominator(
    dd: DenominatorData, t1: ThreeArrow, t2: ThreeArrow, mode: str
) -> tuple[ThreeArrow, ThreeArrow]:
    """Normal replacements of t1, t2 sharing legs as demanded by ``mode``.

    "source": both outputs share the T-denominator leg; "target": both
    share the S-denominator leg; "parallel": both.  Built by normalising
    and then completing the T- and/or S-sides with cached Ore squares.
    """
    cert = dd.certificate()
    cat = dd.base
    n1, n2 = normalise(dd, t1), normalise(dd, t2)
    if mode not in ("source", "target", "parallel"):
        raise DomainError(f"unknown mode {mode!r}")
    share_p = mode in ("source", "parallel")
    share_i = mode in ("target", "parallel")
    if share_p and source_of(dd, t1) != source_of(dd, t2):
        raise DomainError("sources differ")
    if share_i and target_of(dd, t1) != target_of(dd, t2):
        raise DomainError("targets differ")
    b1, f1, a1 = n1.b, n1.f, n1.a
    b2, f2, a2 = n2.b, n2.f, n2.a
    if share_p:
        # complete the two T-legs over their common target; the witness for
        # key (n2.b, n1.b) satisfies comp(cf, n2.b) == comp(cp, n1.b), cp in T
        cf, cp = cert.wu.pullbacks[(n2.b, n1.b)].completion
        b1, b2 = cat.icomp[(cp, n1.b)], cat.icomp[(cf, n2.b)]
        assert b1 == b2
        f1, f2 = cat.icomp[(cp, f1)], cat.icomp[(cf, f2)]
    if share_i:
        i2c, i1c = cert.wu.pushouts[(n1.a, n2.a)].completion
        a1, a2 = cat.icomp[(n1.a, i2c)], cat.icomp[(n2.a, i1c)]
        assert a1 == a2
        f1, f2 = cat.icomp[(f1, i2c)], cat.icomp[(f2, i1c)]
    return ThreeArrow(b1, f1, a1), ThreeArrow(b2, f2, a2)
