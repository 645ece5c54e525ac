"""Canonical instance files.

An instance is one JSON document with a fixed key order:

    name, objects, morphisms, identities, composition,
    denominators, s_denominators, t_denominators,
    [initial], [coproducts], [terminal], [products], [addition],
    [classes], [localisation]

The writer sorts every set-like list by morphism/object index and emits
two-space indentation, so two semantically equal instances serialise to
byte-identical documents and writer(loader(file)) == file for files the
writer produced.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .core import DomainError, FinCategory


@dataclass
class Instance:
    """A category with denominator structure, plus optional extras."""

    category: FinCategory
    denominators: list[str]
    s_denominators: list[str]
    t_denominators: list[str]
    initial: str | None = None
    coproducts: list[dict] | None = None
    terminal: str | None = None
    products: list[dict] | None = None
    addition: list[dict] | None = None
    classes: dict[str, list[str]] | None = None
    localisation: dict[str, str] | None = None


def _as_instance(doc: dict, where: str) -> Instance:
    for key in ("name", "objects", "morphisms", "identities", "composition"):
        if key not in doc:
            raise DomainError(f"{where}: missing field {key!r}")
    morphisms = [m["id"] for m in doc["morphisms"]]
    cat = FinCategory(
        doc["name"],
        list(doc["objects"]),
        morphisms,
        {m["id"]: m["src"] for m in doc["morphisms"]},
        {m["id"]: m["tgt"] for m in doc["morphisms"]},
        dict(doc["identities"]),
        {(f, g): h for f, g, h in doc["composition"]},
    )
    for key in ("denominators", "s_denominators", "t_denominators"):
        for f in doc.get(key, []):
            if f not in cat.mor_index:
                raise DomainError(f"{where}: unknown morphism id {f!r} in {key}")
    return Instance(
        category=cat,
        denominators=list(doc.get("denominators", [])),
        s_denominators=list(doc.get("s_denominators", [])),
        t_denominators=list(doc.get("t_denominators", [])),
        initial=doc.get("initial"),
        coproducts=doc.get("coproducts"),
        terminal=doc.get("terminal"),
        products=doc.get("products"),
        addition=doc.get("addition"),
        classes=doc.get("classes"),
        localisation=doc.get("localisation"),
    )


def loads(text: str, where: str = "<string>") -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"{where}: line {exc.lineno}, col {exc.colno}: {exc.msg}")
    if not isinstance(doc, dict):
        raise DomainError(f"{where}: top level must be an object")
    return _as_instance(doc, where)


def load(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as handle:
        return loads(handle.read(), where=path)


def dumps(inst: Instance) -> str:
    cat = inst.category
    mi, oi = cat.mor_index, cat.obj_index

    def mors(ids: list[str]) -> list[str]:
        return sorted(set(ids), key=lambda f: mi[f])

    doc: dict = {
        "name": cat.name,
        "objects": list(cat.objects),
        "morphisms": [
            {"id": f, "src": cat.src_of(f), "tgt": cat.tgt_of(f)}
            for f in cat.morphisms
        ],
        "identities": {x: cat.identity_of(x) for x in cat.objects},
        "composition": [
            [cat.morphisms[i], cat.morphisms[j], cat.morphisms[k]]
            for (i, j), k in sorted(cat.icomp.items())
        ],
        "denominators": mors(inst.denominators),
        "s_denominators": mors(inst.s_denominators),
        "t_denominators": mors(inst.t_denominators),
    }
    if inst.initial is not None:
        doc["initial"] = inst.initial
    if inst.coproducts is not None:
        doc["coproducts"] = sorted(
            (
                {"of": list(e["of"]), "object": e["object"], "emb": list(e["emb"])}
                for e in inst.coproducts
            ),
            key=lambda e: (oi[e["of"][0]], oi[e["of"][1]]),
        )
    if inst.terminal is not None:
        doc["terminal"] = inst.terminal
    if inst.products is not None:
        doc["products"] = sorted(
            (
                {"of": list(e["of"]), "object": e["object"], "proj": list(e["proj"])}
                for e in inst.products
            ),
            key=lambda e: (oi[e["of"][0]], oi[e["of"][1]]),
        )
    if inst.addition is not None:
        doc["addition"] = sorted(
            (
                {
                    "src": e["src"],
                    "tgt": e["tgt"],
                    "zero": e["zero"],
                    "table": sorted(
                        [list(row) for row in e["table"]],
                        key=lambda row: (mi[row[0]], mi[row[1]]),
                    ),
                }
                for e in inst.addition
            ),
            key=lambda e: (oi[e["src"]], oi[e["tgt"]]),
        )
    # classes/localisation key order is fixed by the builder (class order,
    # base morphism order); insertion order is the canonical order here
    if inst.classes is not None:
        doc["classes"] = dict(inst.classes)
    if inst.localisation is not None:
        doc["localisation"] = dict(inst.localisation)
    return json.dumps(doc, indent=2) + "\n"


def dump(inst: Instance, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps(inst))
