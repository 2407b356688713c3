"""JSON readers and writers for weight, phantom and profile files."""

from __future__ import annotations

import json
from pathlib import Path

from .core import AgmvsParams, DomainError, GmvsParams, Mechanism, OwaWeights, Profile


def _load(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise DomainError(f"{path}: expected a JSON object")
    return data


def _number_list(data: dict, key: str, path) -> list:
    values = data.get(key)
    if not isinstance(values, list):
        raise DomainError(f"{path}: field {key!r} must be a list of numbers")
    return values


def _declared_n(data: dict, path, actual: int) -> int:
    n = data.get("n", actual)
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError(f"{path}: field 'n' must be an integer")
    return n


def parse_weights(data: dict, path="<weights>") -> OwaWeights:
    values = _number_list(data, "weights", path)
    n = _declared_n(data, path, len(values))
    if n != len(values):
        raise DomainError(f"{path}: n={n} but {len(values)} weights given")
    return OwaWeights(tuple(values))


def parse_betas(data: dict, path="<betas>") -> AgmvsParams:
    values = _number_list(data, "betas", path)
    n = _declared_n(data, path, len(values) + 1)
    return AgmvsParams(tuple(values), n)


def parse_profile(data: dict, path="<profile>") -> Profile:
    return Profile(tuple(_number_list(data, "locations", path)))


def load_weights(path) -> OwaWeights:
    return parse_weights(_load(path), path)


def load_betas(path) -> AgmvsParams:
    return parse_betas(_load(path), path)


def load_profile(path) -> Profile:
    return parse_profile(_load(path), path)


def weights_to_dict(w: OwaWeights) -> dict:
    return {"n": w.n, "weights": list(w.weights)}


def betas_to_dict(p: AgmvsParams) -> dict:
    return {"n": p.n, "betas": list(p.betas)}


def profile_to_dict(x: Profile) -> dict:
    return {"locations": list(x.locations)}


def mechanism_to_dict(mech: Mechanism) -> dict:
    if mech.family == "owa":
        out = {"family": "owa", **weights_to_dict(mech.params)}
    elif mech.family == "agmvs":
        out = {"family": "agmvs", **betas_to_dict(mech.params)}
    else:
        out = {"family": "gmvs", "n": mech.n, "alphas": list(mech.params.alphas)}
    out["label"] = mech.label
    return out


def mechanism_from_dict(data: dict) -> Mechanism:
    family = data.get("family")
    label = data.get("label")
    if family == "owa":
        return Mechanism.owa(parse_weights(data), label=label)
    if family == "agmvs":
        return Mechanism.agmvs(parse_betas(data), label=label)
    if family == "gmvs":
        return Mechanism.gmvs(GmvsParams(tuple(data["alphas"]), data["n"]), label=label)
    raise DomainError(f"unknown mechanism family {family!r}")


def dump_json(obj, path=None) -> str:
    """Serialise deterministically; floats use ``repr`` so they round-trip exactly."""
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
