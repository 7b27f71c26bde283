"""JSON presentation files and canonical report output."""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Optional, Tuple

from .freealg import GeneratorSet, NCPoly, format_scalar
from .hopf import TensorPoly
from .rewrite import Presentation
from .umbrella import HopfData


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _word_literal(gens: GeneratorSet, word) -> str:
    return gens.format_word(word)


def _parse_word(gens: GeneratorSet, text: str):
    text = text.strip()
    if text == "1":
        return ()
    return tuple(gens.index(t) for t in text.split())


def presentation_to_json(p: Presentation, data: Optional[HopfData] = None) -> dict:
    gens = p.generators
    doc = {
        "generators": [{"name": g.name, "weight": g.weight} for g in gens],
        "relations": [{"pair": [i, j], "f": gens.format(f)} for (i, j), f in p.brackets.items()],
        "meta": dict(p.meta),
    }
    if data is not None:
        delta = {}
        for g, t in sorted(data.delta.items()):
            items = sorted(t.terms.items(), key=lambda kv: tuple(gens.key(w) for w in kv[0]),
                           reverse=True)
            delta[gens.names[g]] = [{"c": format_scalar(c),
                                     "factors": [_word_literal(gens, w) for w in k]}
                                    for k, c in items]
        doc["hopf"] = {
            "delta": delta,
            "counit": {gens.names[g]: format_scalar(Fraction(c)) for g, c in sorted(data.counit.items())},
            "antipode": {gens.names[g]: gens.format(f) for g, f in sorted(data.antipode.items())},
        }
    return doc


def presentation_from_json(doc: dict) -> Tuple[Presentation, Optional[HopfData]]:
    """Inverse of :func:`presentation_to_json`; raises ValueError on malformed input."""
    try:
        gens = GeneratorSet.from_pairs((g["name"], int(g["weight"])) for g in doc["generators"])
        brackets = {}
        for rel in doc.get("relations", []):
            i, j = (int(k) for k in rel["pair"])
            if (i, j) in brackets:
                raise ValueError(f"duplicate relation for pair {[i, j]}")
            brackets[(i, j)] = gens.parse(rel["f"])
        p = Presentation(gens, brackets, dict(doc.get("meta", {})))
        data = None
        if "hopf" in doc:
            h = doc["hopf"]
            n = len(gens)
            delta = {}
            for name, terms in h["delta"].items():
                t = {}
                for term in terms:
                    key = tuple(_parse_word(gens, w) for w in term["factors"])
                    t[key] = t.get(key, 0) + Fraction(term["c"])
                delta[gens.index(name)] = TensorPoly(2, t)
            counit = {gens.index(k): Fraction(v) for k, v in h.get("counit", {}).items()}
            for g in range(n):
                counit.setdefault(g, Fraction(0))
            antipode = {gens.index(k): gens.parse(v) for k, v in h["antipode"].items()}
            data = HopfData(delta, counit, antipode)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed presentation file: {exc!r}") from None
    return p, data


def content_hash(doc: dict) -> str:
    body = {k: v for k, v in doc.items() if k != "verified"}
    return hashlib.sha256(dumps(body).encode()).hexdigest()


def stamp(doc: dict, checks) -> dict:
    out = dict(doc)
    out["verified"] = {"sha256": content_hash(doc), "checks": list(checks)}
    return out


def is_stamped(doc: dict) -> bool:
    v = doc.get("verified")
    return isinstance(v, dict) and v.get("sha256") == content_hash(doc)
