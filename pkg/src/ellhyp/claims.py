"""Loader for the versioned constants file claims.json.

Every published value the package verifies (point coordinates, divisor
displays, the Rosset-Tate data, expected symbols, torsion labels, closed-form
periods) is read from that single file, so tests and the CLI cite one source
of truth.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .cyclo import CycloNum, parse_cyclo
from .ecdiv import CurvePoint, Divisor, torsion_Ef
from .ksym.ffield import E36FF, E64FF, FFElem, ff_parse
from .ksym.symbols import PolyFF


def _raw() -> dict:
    path = resources.files("ellhyp").joinpath("claims.json")
    return json.loads(path.read_text())


_CACHE: dict | None = None


def raw() -> dict:
    global _CACHE
    if _CACHE is None:
        _CACHE = _raw()
    return _CACHE


def _field(N: int):
    return E36FF if N == 36 else E64FF


def point(N: int, name: str) -> CurvePoint:
    entry = raw()["points"][str(N)][name]
    if entry == "inf":
        return CurvePoint.infinity()
    return CurvePoint(parse_cyclo(entry[0]), parse_cyclo(entry[1]))


def points(N: int) -> dict:
    return {name: point(N, name) for name in raw()["points"][str(N)]}


@dataclass(frozen=True)
class DivisorClaim:
    name: str
    function: FFElem
    divisor: Divisor
    up_to_two_torsion: bool
    note: str


def divisor_claims(N: int) -> list:
    field = _field(N)
    pts = points(N)
    out = []
    for entry in raw()["divisors"][str(N)]:
        terms = [(pts[pname], mult) for mult, pname in entry["divisor"]]
        if "torsion_mult" in entry:
            terms += [(x, entry["torsion_mult"]) for x in torsion_Ef(N)]
        out.append(DivisorClaim(
            name=entry["name"],
            function=ff_parse(field, entry["function"]),
            divisor=Divisor(terms),
            up_to_two_torsion=bool(entry.get("up_to_two_torsion", False)),
            note=entry.get("note", "")))
    return out


def rosset_tate_input():
    data = raw()["rosset_tate"]
    g0 = PolyFF(E64FF, [ff_parse(E64FF, c) for c in data["g0"]])
    g1 = PolyFF(E64FF, [ff_parse(E64FF, c) for c in data["g1"]])
    g2 = ff_parse(E64FF, data["g2"])
    expected = [(ff_parse(E64FF, f), ff_parse(E64FF, g))
                for f, g in data["expected_symbols"]]
    return g0, g1, g2, expected


def pushforward_slots():
    f, g = raw()["pushforward_e36"]
    return ff_parse(E36FF, f), ff_parse(E36FF, g)


def torsion_label_claims(N: int) -> dict:
    return {name: parse_cyclo(text)
            for name, text in raw()["torsion_labels"][str(N)].items()}


def anchor_label_point(N: int) -> str:
    return raw()["anchor_labels"][str(N)]


def period_expression(N: int) -> str:
    return raw()["periods"][str(N)]


def bloch_expectations(N: int) -> dict:
    pts = points(N)
    data = raw()["bloch"][str(N)]
    return {key: [(pts[name], mult) for mult, name in val]
            for key, val in data.items()}
