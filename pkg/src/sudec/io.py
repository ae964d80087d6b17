"""JSON encodings for groups, pulse sequences and code reports."""
import json
from pathlib import Path

import numpy as np

from .errors import InvalidInput
from .groups import generate_group
from .sequences import PulseSequence


def encode_matrix(m):
    """Row-major list of [re, im] pairs."""
    m = np.asarray(m, dtype=complex)
    return [[float(z.real), float(z.imag)] for z in m.ravel()]


def decode_matrix(pairs):
    arr = np.asarray(pairs, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InvalidInput("matrix entries must be [re, im] pairs")
    d = round(np.sqrt(len(arr)))
    if d * d != len(arr):
        raise InvalidInput(f"{len(arr)} entries do not form a square matrix")
    return (arr[:, 0] + 1j * arr[:, 1]).reshape(d, d)


def group_to_json(g, orientation=None):
    data = {"name": g.name, "d": g.d, "mode": g.mode, "order": g.order,
            "generators": [encode_matrix(m) for m in g.generators],
            "generator_labels": list(g.labels), "so3": bool(g.so3),
            "classes": [list(map(int, c)) for c in g.classes]}
    if orientation is not None:
        data["orientation"] = {"conjugator": encode_matrix(orientation.conjugator),
                               "weyl_perm": list(orientation.weyl_perm),
                               "description": orientation.description}
    return data


def group_from_json(data):
    gens = [decode_matrix(m) for m in data["generators"]]
    g = generate_group(gens, mode=data.get("mode", "exact"), name=data.get("name", "G"),
                       labels=data.get("generator_labels"), so3=data.get("so3", False))
    if "order" in data and g.order != data["order"]:
        raise InvalidInput(f"regenerated order {g.order} differs from stored {data['order']}")
    return g


def sequence_to_json(seq):
    return {"kind": seq.kind, "tau": seq.tau, "group": seq.group,
            "pulses": [{"label": l, "unitary": encode_matrix(u)} for l, u in seq.pulses]}


def sequence_from_json(data):
    try:
        pulses = [(p["label"], decode_matrix(p["unitary"])) for p in data["pulses"]]
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed sequence: {exc}") from exc
    if not pulses:
        raise InvalidInput("sequence has no pulses")
    return PulseSequence(pulses, float(data.get("tau", 1.0)), data.get("kind", "literal"),
                         data.get("group", {}))


def dump(obj, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=2, default=_default))
    return path


def load(path):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc


def _default(o):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.floating,)):
        return float(o)
    if isinstance(o, complex):
        return [o.real, o.imag]
    raise TypeError(f"cannot encode {type(o)}")
