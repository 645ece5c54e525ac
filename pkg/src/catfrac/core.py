"""Finite categories, graphs and functors as explicit tables.

Everything is id-addressed: objects and morphisms are opaque strings taken
from the input, mapped once to dense indices in input order.  All
tie-breaking anywhere in the library uses that index order, which makes
every construction reproducible from the same file.

Composition is diagrammatic: ``compose(f, g)`` is "f, then g" and is
defined exactly when ``tgt(f) == src(g)``.

All types here are immutable after construction; operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product


class DomainError(ValueError):
    """A precondition on ids or endpoints was violated."""


@dataclass(frozen=True)
class Violation:
    """One broken invariant, with the offending ids."""

    code: str
    ids: tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.code}: ({', '.join(self.ids)})"


def _index(names: list[str], kind: str) -> dict[str, int]:
    idx: dict[str, int] = {}
    for i, name in enumerate(names):
        if name in idx:
            raise DomainError(f"duplicate {kind} id {name!r}")
        idx[name] = i
    return idx


class FinCategory:
    """A finite category given by a total composition table.

    The table ``comp`` maps composable pairs (in diagrammatic order) to
    their composite.  Construction only checks that all ids resolve;
    whether the tables satisfy the category laws is the business of
    :func:`validate_category`, so that defective tables can be loaded,
    inspected and reported on.
    """

    def __init__(
        self,
        name: str,
        objects: list[str],
        morphisms: list[str],
        src: dict[str, str],
        tgt: dict[str, str],
        identity: dict[str, str],
        comp: dict[tuple[str, str], str],
    ):
        self.name = name
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        self.obj_index = _index(list(objects), "object")
        self.mor_index = _index(list(morphisms), "morphism")

        def oi(x: str) -> int:
            if x not in self.obj_index:
                raise DomainError(f"unknown object id {x!r}")
            return self.obj_index[x]

        def mi(f: str) -> int:
            if f not in self.mor_index:
                raise DomainError(f"unknown morphism id {f!r}")
            return self.mor_index[f]

        self.isrc = tuple(oi(src[f]) for f in morphisms)
        self.itgt = tuple(oi(tgt[f]) for f in morphisms)
        self.iidentity = tuple(mi(identity[x]) for x in objects)
        self.icomp: dict[tuple[int, int], int] = {
            (mi(f), mi(g)): mi(h) for (f, g), h in comp.items()
        }
        # per-object morphism lists, in index order (used by every search)
        self.by_src: tuple[tuple[int, ...], ...] = tuple(
            tuple(i for i in range(len(morphisms)) if self.isrc[i] == x)
            for x in range(len(objects))
        )
        self.by_tgt: tuple[tuple[int, ...], ...] = tuple(
            tuple(i for i in range(len(morphisms)) if self.itgt[i] == x)
            for x in range(len(objects))
        )

    # -- id-level accessors ------------------------------------------------

    def src_of(self, f: str) -> str:
        return self.objects[self.isrc[self.mor_index[f]]]

    def tgt_of(self, f: str) -> str:
        return self.objects[self.itgt[self.mor_index[f]]]

    def identity_of(self, x: str) -> str:
        return self.morphisms[self.iidentity[self.obj_index[x]]]

    def compose(self, f: str, g: str) -> str:
        """Composite of f then g; DomainError on a non-composable pair."""
        i, j = self.mor_index[f], self.mor_index[g]
        if self.itgt[i] != self.isrc[j]:
            raise DomainError(
                f"non-composable pair: {f!r} ends at "
                f"{self.objects[self.itgt[i]]!r} but {g!r} starts at "
                f"{self.objects[self.isrc[j]]!r}"
            )
        k = self.icomp.get((i, j))
        if k is None:
            raise DomainError(f"missing composite for ({f!r}, {g!r})")
        return self.morphisms[k]

    # -- index-level accessors (hot paths) ---------------------------------

    def icompose(self, i: int, j: int) -> int:
        return self.icomp[(i, j)]

    def composable(self, i: int, j: int) -> bool:
        return self.itgt[i] == self.isrc[j]

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.morphisms)

    def is_identity(self, i: int) -> bool:
        return self.iidentity[self.isrc[i]] == i

    def hom(self, x: int, y: int) -> list[int]:
        return [i for i in self.by_src[x] if self.itgt[i] == y]

    def table_equal(self, other: "FinCategory") -> bool:
        """Structural equality of all tables (ids and order included)."""
        return (
            self.objects == other.objects
            and self.morphisms == other.morphisms
            and self.isrc == other.isrc
            and self.itgt == other.itgt
            and self.iidentity == other.iidentity
            and self.icomp == other.icomp
        )

    def __repr__(self) -> str:
        return (
            f"FinCategory({self.name!r}, {self.n_objects} objects, "
            f"{self.n_morphisms} morphisms)"
        )


def validate_category(cat: FinCategory) -> list[Violation]:
    """Exhaustively check the category laws; empty report iff valid."""
    report: list[Violation] = []
    n = cat.n_morphisms
    for x in range(cat.n_objects):
        e = cat.iidentity[x]
        if cat.isrc[e] != x or cat.itgt[e] != x:
            report.append(
                Violation("identity-endpoints", (cat.objects[x], cat.morphisms[e]))
            )
    for i in range(n):
        for j in range(n):
            defined = (i, j) in cat.icomp
            if cat.itgt[i] == cat.isrc[j]:
                if not defined:
                    report.append(
                        Violation(
                            "missing-composite", (cat.morphisms[i], cat.morphisms[j])
                        )
                    )
                else:
                    k = cat.icomp[(i, j)]
                    if cat.isrc[k] != cat.isrc[i] or cat.itgt[k] != cat.itgt[j]:
                        report.append(
                            Violation(
                                "composite-endpoints",
                                (cat.morphisms[i], cat.morphisms[j], cat.morphisms[k]),
                            )
                        )
            elif defined:
                report.append(
                    Violation(
                        "spurious-composite", (cat.morphisms[i], cat.morphisms[j])
                    )
                )
    if report:
        # endpoint defects make the law sweeps unreliable; report them first
        return report
    for i in range(n):
        e_s, e_t = cat.iidentity[cat.isrc[i]], cat.iidentity[cat.itgt[i]]
        if cat.icomp[(e_s, i)] != i:
            report.append(
                Violation("left-identity", (cat.morphisms[e_s], cat.morphisms[i]))
            )
        if cat.icomp[(i, e_t)] != i:
            report.append(
                Violation("right-identity", (cat.morphisms[i], cat.morphisms[e_t]))
            )
    for i in range(n):
        for j in cat.by_src[cat.itgt[i]]:
            ij = cat.icomp[(i, j)]
            for k in cat.by_src[cat.itgt[j]]:
                if cat.icomp[(ij, k)] != cat.icomp[(i, cat.icomp[(j, k)])]:
                    report.append(
                        Violation(
                            "associativity",
                            (cat.morphisms[i], cat.morphisms[j], cat.morphisms[k]),
                        )
                    )
    return report


@dataclass(frozen=True)
class FinGraph:
    """A finite oriented graph: total src/tgt maps on arrow ids."""

    objects: tuple[str, ...]
    arrows: tuple[str, ...]
    src: dict[str, str]
    tgt: dict[str, str]

    def __post_init__(self):
        for a in self.arrows:
            if a not in self.src or a not in self.tgt:
                raise DomainError(f"arrow {a!r} lacks src/tgt")
            if self.src[a] not in self.objects or self.tgt[a] not in self.objects:
                raise DomainError(f"arrow {a!r} has unknown endpoints")


@dataclass(frozen=True)
class GraphMorphism:
    obj_map: dict[str, str]
    arrow_map: dict[str, str]
    source: FinGraph
    target: FinGraph

    def is_valid(self) -> bool:
        for a in self.source.arrows:
            b = self.arrow_map.get(a)
            if b is None or b not in self.target.src:
                return False
            if self.obj_map[self.source.src[a]] != self.target.src[b]:
                return False
            if self.obj_map[self.source.tgt[a]] != self.target.tgt[b]:
                return False
        return True


class GraphCongruence:
    """An equivalence on the arrows of a graph, relating only parallels."""

    def __init__(self, base: FinGraph, classes: list[list[str]]):
        self.base = base
        seen: set[str] = set()
        for cls in classes:
            for a in cls:
                if a not in base.src:
                    raise DomainError(f"unknown arrow id {a!r}")
                if a in seen:
                    raise DomainError(f"arrow {a!r} in two classes")
                seen.add(a)
        # singletons for every arrow not mentioned
        full = [list(cls) for cls in classes if cls]
        full += [[a] for a in base.arrows if a not in seen]
        self.classes = tuple(tuple(cls) for cls in full)
        self._class_of = {a: k for k, cls in enumerate(self.classes) for a in cls}

    def related(self, a: str, b: str) -> bool:
        return self._class_of[a] == self._class_of[b]

    def check_parallel(self) -> list[Violation]:
        bad = []
        for cls in self.classes:
            a0 = cls[0]
            for a in cls[1:]:
                if (
                    self.base.src[a] != self.base.src[a0]
                    or self.base.tgt[a] != self.base.tgt[a0]
                ):
                    bad.append(Violation("non-parallel-related", (a0, a)))
        return bad


def quotient_graph(
    g: FinGraph, cong: GraphCongruence
) -> tuple[FinGraph, GraphMorphism]:
    """Quotient by a graph congruence, plus the quotient graph morphism.

    Objects are unchanged; arrows become congruence classes, named after
    their first member in arrow order; endpoints are those of any
    representative.
    """
    bad = cong.check_parallel()
    if bad:
        raise DomainError(f"not a graph congruence: {bad[0]}")
    order = {a: i for i, a in enumerate(g.arrows)}
    named = sorted(cong.classes, key=lambda cls: min(order[a] for a in cls))
    arrow_map: dict[str, str] = {}
    arrows, src, tgt = [], {}, {}
    for cls in named:
        rep = min(cls, key=lambda a: order[a])
        cid = f"[{rep}]"
        arrows.append(cid)
        src[cid] = g.src[rep]
        tgt[cid] = g.tgt[rep]
        for a in cls:
            arrow_map[a] = cid
    q = FinGraph(g.objects, tuple(arrows), src, tgt)
    return q, GraphMorphism({x: x for x in g.objects}, arrow_map, g, q)


def factor_through_quotient(
    f: GraphMorphism, cong: GraphCongruence
) -> GraphMorphism:
    """Factor a class-constant graph morphism through the quotient.

    Raises DomainError when ``f`` is not constant on congruence classes.
    """
    q, quo = quotient_graph(f.source, cong)
    arrow_map: dict[str, str] = {}
    for cls in cong.classes:
        images = {f.arrow_map[a] for a in cls}
        if len(images) != 1:
            raise DomainError(f"morphism not constant on class of {cls[0]!r}")
        arrow_map[quo.arrow_map[cls[0]]] = images.pop()
    return GraphMorphism(dict(f.obj_map), arrow_map, q, f.target)


def underlying_graph(cat: FinCategory) -> FinGraph:
    return FinGraph(
        cat.objects,
        cat.morphisms,
        {f: cat.src_of(f) for f in cat.morphisms},
        {f: cat.tgt_of(f) for f in cat.morphisms},
    )


@dataclass
class FunctorTable:
    """A functor between finite categories, as explicit object/morphism maps."""

    source: FinCategory
    target: FinCategory
    obj_map: dict[str, str]
    mor_map: dict[str, str]

    def apply_obj(self, x: str) -> str:
        return self.obj_map[x]

    def apply(self, f: str) -> str:
        return self.mor_map[f]

    def compose_with(self, other: "FunctorTable") -> "FunctorTable":
        """self then other (other applied second)."""
        if self.target is not other.source and not self.target.table_equal(
            other.source
        ):
            raise DomainError("functors not composable")
        return FunctorTable(
            self.source,
            other.target,
            {x: other.obj_map[y] for x, y in self.obj_map.items()},
            {f: other.mor_map[g] for f, g in self.mor_map.items()},
        )


def identity_functor(cat: FinCategory) -> FunctorTable:
    return FunctorTable(
        cat, cat, {x: x for x in cat.objects}, {f: f for f in cat.morphisms}
    )


def validate_functor(fun: FunctorTable) -> list[Violation]:
    """Empty report iff the tables preserve endpoints, identities, composition."""
    report: list[Violation] = []
    c, d = fun.source, fun.target
    for x in c.objects:
        if fun.obj_map.get(x) not in d.obj_index:
            report.append(Violation("object-not-mapped", (x,)))
    for f in c.morphisms:
        g = fun.mor_map.get(f)
        if g is None or g not in d.mor_index:
            report.append(Violation("morphism-not-mapped", (f,)))
    if report:
        return report
    for f in c.morphisms:
        g = fun.mor_map[f]
        if d.src_of(g) != fun.obj_map[c.src_of(f)] or d.tgt_of(g) != fun.obj_map[
            c.tgt_of(f)
        ]:
            report.append(Violation("endpoints-not-preserved", (f, g)))
    for x in c.objects:
        if fun.mor_map[c.identity_of(x)] != d.identity_of(fun.obj_map[x]):
            report.append(Violation("identity-not-preserved", (x,)))
    if report:
        return report
    for i, f in enumerate(c.morphisms):
        for j in c.by_src[c.itgt[i]]:
            g = c.morphisms[j]
            lhs = fun.mor_map[c.compose(f, g)]
            rhs = d.compose(fun.mor_map[f], fun.mor_map[g])
            if lhs != rhs:
                report.append(Violation("composition-not-preserved", (f, g)))
    return report


def find_inverse(cat: FinCategory, f: str) -> str | None:
    """Two-sided inverse of ``f`` in ``cat``, or None."""
    i = cat.mor_index[f]
    e_s, e_t = cat.iidentity[cat.isrc[i]], cat.iidentity[cat.itgt[i]]
    for j in cat.hom(cat.itgt[i], cat.isrc[i]):
        if cat.icomp[(i, j)] == e_s and cat.icomp[(j, i)] == e_t:
            return cat.morphisms[j]
    return None


def isomorphisms(cat: FinCategory) -> set[str]:
    return {f for f in cat.morphisms if find_inverse(cat, f) is not None}


def all_graph_morphisms(g: FinGraph, h: FinGraph):
    """Yield every graph morphism g -> h (desk-scale brute force)."""
    if not g.objects:
        yield GraphMorphism({}, {}, g, h)
        return
    if not h.objects:
        return
    h_arrows_by_ends: dict[tuple[str, str], list[str]] = {}
    for a in h.arrows:
        h_arrows_by_ends.setdefault((h.src[a], h.tgt[a]), []).append(a)
    for obj_choice in product(h.objects, repeat=len(g.objects)):
        obj_map = dict(zip(g.objects, obj_choice))
        pools = []
        for a in g.arrows:
            pool = h_arrows_by_ends.get((obj_map[g.src[a]], obj_map[g.tgt[a]]), [])
            if not pool:
                break
            pools.append(pool)
        else:
            for arrow_choice in product(*pools):
                yield GraphMorphism(obj_map, dict(zip(g.arrows, arrow_choice)), g, h)
            continue
