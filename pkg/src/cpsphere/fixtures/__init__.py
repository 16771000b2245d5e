"""Bundled example models and a data-driven regression manifest."""
from __future__ import annotations

import json
from importlib import resources

from ..model import SphereModel, load_model

__all__ = ["fixture_path", "load_fixture", "load_manifest", "run_case", "run_manifest"]


def fixture_path(name: str):
    return resources.files(__name__).joinpath(name)


def load_fixture(name: str) -> SphereModel:
    return load_model(fixture_path(name).read_text())


def load_manifest(path=None) -> list:
    text = fixture_path("manifest.json").read_text() if path is None else open(path).read()
    return json.loads(text)["cases"]


def _actual(case: dict, m: SphereModel):
    from ..arena import comparison_table
    from ..evaluate import sat_variant
    from ..formula import parse
    from ..update import update
    from ..weights import weight_of_formula

    kind, x, u = case["kind"], case["world"], case.get("update", "d")
    if kind == "sat":
        return sat_variant(m, x, parse(case["formula"]), u, case.get("variant", "b"))
    if kind == "weight":
        return list(weight_of_formula(m, x, parse(case["formula"]), u))
    if kind == "chain":
        g = parse(f"false =>{case['cpset']} false").cpset
        out = update(m, x, g, u)
        return out.format_chain(out.chain(out.index(x)))
    if kind == "compare":
        f = parse(case["formula"])
        row = comparison_table(m, x, [(f.antecedent, f.consequent, f.cpset)])[0]
        return [row.cp, row.nc, row.ms, row.dis]
    raise ValueError(f"unknown case kind {kind!r}")


def run_case(case: dict, cache: dict | None = None) -> dict:
    cache = {} if cache is None else cache
    if case["model"] not in cache:
        cache[case["model"]] = load_fixture(case["model"])
    actual = _actual(case, cache[case["model"]])
    return {"fixture": case["name"], "model": case["model"], "world": case["world"],
            "formula": case.get("formula") or case.get("cpset"),
            "update": case.get("update", "d"), "expected": case["expected"],
            "actual": actual, "pass": actual == case["expected"]}


def run_manifest(path=None) -> list:
    cache: dict = {}
    return [run_case(c, cache) for c in load_manifest(path)]
