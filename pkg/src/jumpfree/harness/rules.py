"""Build named rules from ``{"name", "params", "seed"}`` descriptors."""
from __future__ import annotations

from .. import graph, labelers, subsetsum


class ConfigError(ValueError):
    pass


def _need_seed(desc):
    if "seed" not in desc or desc["seed"] is None:
        raise ConfigError(f"rule {desc.get('name')!r} is stochastic and needs a seed")
    return int(desc["seed"])


def _params(desc, allowed):
    params = dict(desc.get("params") or {})
    unknown = set(params) - set(allowed)
    if unknown:
        raise ConfigError(f"unknown params for {desc.get('name')!r}: {sorted(unknown)}")
    return params


def edge_rule(desc) -> graph.EdgeRule:
    name = desc.get("name")
    if name == "explicit":
        p = _params(desc, {"edges", "strict"})
        return graph.ExplicitEdges(p.get("edges", []), strict=p.get("strict", False))
    if name == "full-downward":
        p = _params(desc, {"strict"})
        return graph.FullDownward(strict=p.get("strict", False))
    if name == "seeded-random":
        p = _params(desc, {"density", "strict"})
        return graph.SeededRandomEdges(p["density"], _need_seed(desc), p.get("strict", False))
    if name == "coordinate-dominance":
        p = _params(desc, {"strict"})
        return graph.CoordinateDominance(strict=p.get("strict", False))
    raise ConfigError(f"unknown edge rule {name!r}")


def selection(desc) -> labelers.PartialSelection:
    name = desc.get("name")
    if name == "min-index":
        p = _params(desc, {"r"})
        return labelers.MinIndex(p["r"])
    if name == "fixed-index":
        p = _params(desc, {"r", "j"})
        return labelers.FixedIndex(p["r"], p["j"])
    if name == "seeded-choice":
        p = _params(desc, {"r", "q"})
        return labelers.SeededChoice(p["r"], p["q"], _need_seed(desc))
    if name == "table":
        p = _params(desc, {"r", "entries"})
        entries = {
            (tuple(e["z"]), tuple((tuple(y), n) for y, n in e["reports"])): e["index"]
            for e in p.get("entries", [])
        }
        return labelers.TableSelection(p["r"], entries)
    raise ConfigError(f"unknown selection rule {name!r}")


def rho(desc) -> labelers.MinDominantFamily:
    name = desc.get("name")
    if name == "min":
        _params(desc, set())
        return labelers.MinRho()
    if name == "max":
        _params(desc, set())
        return labelers.MaxRho()
    if name == "min-plus-offset-table":
        p = _params(desc, {"offsets", "default"})
        offsets = {tuple(x): v for x, v in p.get("offsets", [])}
        if any(v < 0 for v in offsets.values()) or p.get("default", 0) < 0:
            raise ConfigError("offsets must be nonnegative")
        return labelers.OffsetTableRho(offsets, p.get("default", 0))
    if name == "seeded":
        p = _params(desc, {"span"})
        return labelers.SeededRho(p.get("span", 8), _need_seed(desc))
    if name == "tlog-designed":
        p = _params(desc, {"t", "support"})
        return subsetsum.TLogRho(p["t"], _need_seed(desc), p.get("support"))
    raise ConfigError(f"unknown rho rule {name!r}")


def i_rule(desc) -> subsetsum.IRule:
    name = desc.get("name")
    if name == "zero":
        _params(desc, set())
        return subsetsum.ZeroI()
    if name == "table":
        p = _params(desc, {"table", "default"})
        return subsetsum.TableI({tuple(x): v for x, v in p.get("table", [])}, p.get("default", 0))
    if name == "seeded-hash-range":
        p = _params(desc, {"lo", "hi"})
        return subsetsum.SeededRangeI(p["lo"], p["hi"], _need_seed(desc))
    raise ConfigError(f"unknown I rule {name!r}")
