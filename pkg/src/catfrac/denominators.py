"""Denominator structures and their axioms.

A :class:`DenominatorData` fixes three morphism subsets D ⊇ S, T of a base
category.  The checkers below decide, with explicit witnesses:

  * the saturation ladder for D (multiplicative / semi-saturated via the
    2-out-of-3 closure / weakly saturated via 2-out-of-6),
  * weakly universal Ore completions along S on the pushout side and along
    T on the pullback side,
  * factorisation of every member of D as an S-member followed by a
    T-member,

and bundle the lot into a single structure report.  Completions and
factorisations found by the sweeps are cached (index-smallest choice per
key, written once) because the downstream constructions replay them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import DomainError, FinCategory, FunctorTable, Violation

LADDER = ("none", "multiplicative", "semi-saturated", "weakly-saturated")


class DenominatorData:
    """A base category with subsets D, S, T of morphism ids.

    Construction resolves ids only; every axiom is checked by the
    functions below, never assumed, so defective structures can be
    represented and reported on.  The axiom certificate is computed on
    first use and then reused (written once, read-only afterwards).
    """

    def __init__(
        self,
        base: FinCategory,
        denominators: list[str],
        s_denominators: list[str] | None = None,
        t_denominators: list[str] | None = None,
        name: str | None = None,
    ):
        self.base = base
        self.name = name or base.name
        for f in list(denominators) + list(s_denominators or []) + list(
            t_denominators or []
        ):
            if f not in base.mor_index:
                raise DomainError(f"unknown morphism id {f!r}")
        mi = base.mor_index
        self.iden = frozenset(mi[f] for f in denominators)
        self.is_ = frozenset(
            mi[f] for f in (denominators if s_denominators is None else s_denominators)
        )
        self.it = frozenset(
            mi[f] for f in (denominators if t_denominators is None else t_denominators)
        )
        self.den_sorted = tuple(sorted(self.iden))
        self.s_sorted = tuple(sorted(self.is_))
        self.t_sorted = tuple(sorted(self.it))
        self._certificate: AxiomCertificate | None = None

    def subset(self, which: str) -> frozenset[int]:
        return {"D": self.iden, "S": self.is_, "T": self.it}[which]

    def dump_ids(self, indices) -> list[str]:
        return [self.base.morphisms[i] for i in sorted(indices)]

    @property
    def denominator_ids(self) -> list[str]:
        return self.dump_ids(self.iden)

    @property
    def s_ids(self) -> list[str]:
        return self.dump_ids(self.is_)

    @property
    def t_ids(self) -> list[str]:
        return self.dump_ids(self.it)

    def certificate(self) -> "AxiomCertificate":
        """Axiom report incl. witness caches; computed once, then reused."""
        if self._certificate is None:
            self._certificate = check_uni_fractionable(self)
        return self._certificate


@dataclass(frozen=True)
class OreWitness:
    """A completion square from a (WU) search.

    ``kind`` is "pushout-side" (given i in S and f with a common source,
    completion (f2, i2) with i2 in S, comp(i, f2) == comp(f, i2)) or
    "pullback-side" (given p in T and f with a common target, completion
    (f2, p2) with p2 in T, comp(f2, p) == comp(p2, f)).  Corners are
    object indices in diagram order (shared, tip of given pair, tip of f,
    completion corner).
    """

    kind: str
    given: tuple[int, int]
    completion: tuple[int, int]
    corners: tuple[int, int, int, int]


@dataclass(frozen=True)
class FactorisationWitness:
    d: int
    i: int
    p: int


def is_multiplicative(dd: DenominatorData, which: str = "D"):
    """(identities + closure under composition) for the chosen subset."""
    cat, sub = dd.base, dd.subset(which)
    for x in range(cat.n_objects):
        if cat.iidentity[x] not in sub:
            return False, ("identity", cat.objects[x])
    for i in sorted(sub):
        for j in sorted(sub):
            if cat.composable(i, j) and cat.icomp[(i, j)] not in sub:
                return False, ("composition", cat.morphisms[i], cat.morphisms[j])
    return True, None


def is_two_of_three(dd: DenominatorData):
    """If two of f, g, fg lie in D, so does the third."""
    cat, den = dd.base, dd.iden
    for i in range(cat.n_morphisms):
        for j in cat.by_src[cat.itgt[i]]:
            k = cat.icomp[(i, j)]
            members = (i in den) + (j in den) + (k in den)
            if members == 2:
                return False, (cat.morphisms[i], cat.morphisms[j], cat.morphisms[k])
    return True, None


def is_two_of_six(dd: DenominatorData):
    """If fg and gh lie in D, then f, g, h and fgh all lie in D."""
    cat, den = dd.base, dd.iden
    for i in range(cat.n_morphisms):
        for j in cat.by_src[cat.itgt[i]]:
            ij = cat.icomp[(i, j)]
            for k in cat.by_src[cat.itgt[j]]:
                if ij in den and cat.icomp[(j, k)] in den:
                    ijk = cat.icomp[(ij, k)]
                    if not (i in den and j in den and k in den and ijk in den):
                        return False, (
                            cat.morphisms[i],
                            cat.morphisms[j],
                            cat.morphisms[k],
                        )
    return True, None


def classify_saturation(dd: DenominatorData) -> str:
    """Highest ladder level for D; "saturated" is a post-localisation notion."""
    if not is_multiplicative(dd, "D")[0]:
        return "none"
    if is_two_of_six(dd)[0]:
        return "weakly-saturated"
    if is_two_of_three(dd)[0]:
        return "semi-saturated"
    return "multiplicative"


def is_weak_pushout(cat: FinCategory, square: tuple[int, int, int, int]) -> bool:
    """Weak pushout: the pushout property without uniqueness of mediators.

    ``square = (i, f, f2, i2)`` with comp(i, f2) == comp(f, i2); for every
    cocone (u, v) with comp(i, u) == comp(f, v) some mediator w must give
    comp(f2, w) == u and comp(i2, w) == v.  Brute force over all cocones
    and all mediator candidates.
    """
    i, f, f2, i2 = square
    if cat.isrc[i] != cat.isrc[f]:
        raise DomainError("square sides do not share a source")
    if (
        cat.isrc[f2] != cat.itgt[i]
        or cat.isrc[i2] != cat.itgt[f]
        or cat.itgt[f2] != cat.itgt[i2]
        or cat.icomp[(i, f2)] != cat.icomp[(f, i2)]
    ):
        raise DomainError("square does not commute")
    peak = cat.itgt[f2]
    for u in cat.by_src[cat.itgt[i]]:
        for v in cat.by_src[cat.itgt[f]]:
            if cat.itgt[u] != cat.itgt[v] or cat.icomp[(i, u)] != cat.icomp[(f, v)]:
                continue
            for w in cat.hom(peak, cat.itgt[u]):
                if cat.icomp[(f2, w)] == u and cat.icomp[(i2, w)] == v:
                    break
            else:
                return False
    return True


def is_weak_pullback(cat: FinCategory, square: tuple[int, int, int, int]) -> bool:
    """Dual of :func:`is_weak_pushout`.

    ``square = (p, f, f2, p2)`` with comp(f2, p) == comp(p2, f); every cone
    (u, v) with comp(u, p) == comp(v, f) must factor through the corner.
    """
    p, f, f2, p2 = square
    if cat.itgt[p] != cat.itgt[f]:
        raise DomainError("square sides do not share a target")
    if (
        cat.itgt[f2] != cat.isrc[p]
        or cat.itgt[p2] != cat.isrc[f]
        or cat.isrc[f2] != cat.isrc[p2]
        or cat.icomp[(f2, p)] != cat.icomp[(p2, f)]
    ):
        raise DomainError("square does not commute")
    corner = cat.isrc[f2]
    for u in cat.by_tgt[cat.isrc[p]]:
        for v in cat.by_tgt[cat.isrc[f]]:
            if cat.isrc[u] != cat.isrc[v] or cat.icomp[(u, p)] != cat.icomp[(v, f)]:
                continue
            for w in cat.hom(cat.isrc[u], corner):
                if cat.icomp[(w, f2)] == u and cat.icomp[(w, p2)] == v:
                    break
            else:
                return False
    return True


@dataclass
class WUResult:
    ok: bool
    failures: list[tuple[str, str, str]]
    pushouts: dict[tuple[int, int], OreWitness]
    pullbacks: dict[tuple[int, int], OreWitness]


def check_WU(dd: DenominatorData) -> WUResult:
    """Search weakly universal completions for every (i in S, f) pair with a
    common source and every (p in T, f) pair with a common target.

    The index-smallest completion passing the weak universal property is
    cached per pair; the pair goes to the failure list when no candidate
    passes.
    """
    cat = dd.base
    pushouts: dict[tuple[int, int], OreWitness] = {}
    pullbacks: dict[tuple[int, int], OreWitness] = {}
    failures: list[tuple[str, str, str]] = []
    for i in dd.s_sorted:
        for f in cat.by_src[cat.isrc[i]]:
            key = (i, f)
            target = None
            for f2 in cat.by_src[cat.itgt[i]]:
                for i2 in cat.by_src[cat.itgt[f]]:
                    if i2 not in dd.is_ or cat.itgt[i2] != cat.itgt[f2]:
                        continue
                    if cat.icomp[(i, f2)] != cat.icomp[(f, i2)]:
                        continue
                    if is_weak_pushout(cat, (i, f, f2, i2)):
                        target = OreWitness(
                            "pushout-side",
                            key,
                            (f2, i2),
                            (cat.isrc[i], cat.itgt[i], cat.itgt[f], cat.itgt[f2]),
                        )
                        break
                if target:
                    break
            if target:
                pushouts[key] = target
            else:
                failures.append(
                    ("pushout-side", cat.morphisms[i], cat.morphisms[f])
                )
    for p in dd.t_sorted:
        for f in cat.by_tgt[cat.itgt[p]]:
            key = (p, f)
            target = None
            for f2 in cat.by_tgt[cat.isrc[p]]:
                for p2 in cat.by_tgt[cat.isrc[f]]:
                    if p2 not in dd.it or cat.isrc[p2] != cat.isrc[f2]:
                        continue
                    if cat.icomp[(f2, p)] != cat.icomp[(p2, f)]:
                        continue
                    if is_weak_pullback(cat, (p, f, f2, p2)):
                        target = OreWitness(
                            "pullback-side",
                            key,
                            (f2, p2),
                            (cat.itgt[p], cat.isrc[p], cat.isrc[f], cat.isrc[f2]),
                        )
                        break
                if target:
                    break
            if target:
                pullbacks[key] = target
            else:
                failures.append(
                    ("pullback-side", cat.morphisms[p], cat.morphisms[f])
                )
    return WUResult(not failures, failures, pushouts, pullbacks)


@dataclass
class FacResult:
    ok: bool
    failures: list[str]
    witnesses: dict[int, FactorisationWitness]


def check_Fac(dd: DenominatorData) -> FacResult:
    """For every d in D search i in S, p in T with comp(i, p) == d.

    The lexicographically smallest (i, p) by index is cached per d.
    """
    cat = dd.base
    witnesses: dict[int, FactorisationWitness] = {}
    failures: list[str] = []
    for d in dd.den_sorted:
        found = None
        for i in dd.s_sorted:
            if cat.isrc[i] != cat.isrc[d]:
                continue
            for p in dd.t_sorted:
                if (
                    cat.isrc[p] == cat.itgt[i]
                    and cat.itgt[p] == cat.itgt[d]
                    and cat.icomp[(i, p)] == d
                ):
                    found = FactorisationWitness(d, i, p)
                    break
            if found:
                break
        if found:
            witnesses[d] = found
        else:
            failures.append(cat.morphisms[d])
    return FacResult(not failures, failures, witnesses)


@dataclass
class AxiomCertificate:
    """Itemised uni-fractionable structure report, plus witness caches."""

    items: list[tuple[str, bool, object]] = field(default_factory=list)
    wu: WUResult | None = None
    fac: FacResult | None = None

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.items)

    def failed_axioms(self) -> list[str]:
        return [name for name, passed, _ in self.items if not passed]

    def lines(self) -> list[str]:
        out = []
        for name, passed, detail in self.items:
            line = f"{name} {'PASS' if passed else 'FAIL'}"
            if not passed and detail:
                line += f" witness {detail}"
            out.append(line)
        return out


def _format_wu_failure(fail: tuple[str, str, str]) -> str:
    side, given, f = fail
    label = "i" if side == "pushout-side" else "p"
    return f"{label}={given} f={f}"


def check_uni_fractionable(dd: DenominatorData) -> AxiomCertificate:
    """Run the whole axiom battery and collect one itemised report."""
    from .core import validate_category

    cert = AxiomCertificate()
    base_report = validate_category(dd.base)
    cert.items.append(
        ("(Base)", not base_report, str(base_report[0]) if base_report else None)
    )
    ok, wit = is_multiplicative(dd, "D")
    cert.items.append(("(Cat)", ok, " ".join(wit[1:]) if wit else None))
    ok, wit = is_two_of_three(dd)
    cert.items.append(("(2 of 3)", ok, " ".join(wit) if wit else None))
    for which in ("S", "T"):
        ok, wit = is_multiplicative(dd, which)
        cert.items.append(
            (f"({which}-mult)", ok, " ".join(wit[1:]) if wit else None)
        )
    s_sub = dd.is_ <= dd.iden
    t_sub = dd.it <= dd.iden
    cert.items.append(
        (
            "(S<=D)",
            s_sub,
            None if s_sub else " ".join(dd.dump_ids(dd.is_ - dd.iden)),
        )
    )
    cert.items.append(
        (
            "(T<=D)",
            t_sub,
            None if t_sub else " ".join(dd.dump_ids(dd.it - dd.iden)),
        )
    )
    cert.wu = check_WU(dd)
    cert.items.append(
        (
            "(WU)",
            cert.wu.ok,
            _format_wu_failure(cert.wu.failures[0]) if cert.wu.failures else None,
        )
    )
    cert.fac = check_Fac(dd)
    cert.items.append(
        ("(Fac)", cert.fac.ok, cert.fac.failures[0] if cert.fac.failures else None)
    )
    return cert


def is_uni_fractionable(dd: DenominatorData) -> tuple[bool, AxiomCertificate]:
    cert = dd.certificate()
    return cert.ok, cert


def require_uni_fractionable(dd: DenominatorData) -> AxiomCertificate:
    cert = dd.certificate()
    if not cert.ok:
        raise AxiomError(cert.failed_axioms())
    return cert


class AxiomError(ValueError):
    def __init__(self, axioms: list[str]):
        self.axioms = axioms
        super().__init__(f"structure axioms failed: {', '.join(axioms)}")


def validate_uf_morphism(
    fun: FunctorTable, source: DenominatorData, target: DenominatorData
) -> bool:
    """True iff the (valid) functor maps D into D, S into S and T into T."""
    from .core import validate_functor

    if validate_functor(fun):
        return False
    pairs = ((source.iden, target.iden), (source.is_, target.is_), (source.it, target.it))
    for src_set, tgt_set in pairs:
        for i in src_set:
            image = fun.mor_map[fun.source.morphisms[i]]
            if fun.target.mor_index[image] not in tgt_set:
                return False
    return True
