"""Golden JSON files shipped with the package.

``generate()`` recomputes every file; ``bless()`` writes them back.  Normal
runs only read and compare.
"""
from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .lattice import format_shorthand

GOLDEN_DIR = Path(__file__).with_name("golden")
NAMES = ("toric_l4.json", "toric_l5.json", "exceptional.json", "decompositions.json")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _toric(ell: int) -> dict:
    from .toric import delta_lambda, fan_json, hj_resolve

    poly = delta_lambda(ell, Fraction(1, 2))
    fan = hj_resolve(poly)
    out = fan_json(poly, fan, fan.clockwise_from((0, 1)))
    out["l"] = ell
    out["lambda"] = "1/2"
    return out


def _exceptional() -> dict:
    from .weyl import enumerate_exceptional

    return {str(k): [format_shorthand(c) for c in enumerate_exceptional(k)] for k in range(1, 9)}


def _decompositions() -> dict:
    from .decompose import lifted_contains_printed, verify_irreducibility_suite

    ok, text = lifted_contains_printed()
    return {"suite": [e.to_json() for e in verify_irreducibility_suite()],
            "lifted": {"contains_printed": ok, "decomposition": text}}


def generate() -> dict[str, dict]:
    return {"toric_l4.json": _toric(4), "toric_l5.json": _toric(5),
            "exceptional.json": _exceptional(), "decompositions.json": _decompositions()}


def load(name: str) -> dict:
    return json.loads(resources.files("hamlattice").joinpath("golden", name).read_text())


def bless(target: Path | None = None) -> list[Path]:
    target = target or GOLDEN_DIR
    target.mkdir(parents=True, exist_ok=True)
    out = []
    for name, data in generate().items():
        p = target / name
        p.write_text(dumps(data))
        out.append(p)
    return out


def compare(name: str, computed: dict) -> bool:
    return dumps(load(name)) == dumps(computed)
