"""JSON encoding of Lindblad models.

Schema::

    {
      "dim": 2,
      "duration": null,                      # optional
      "hamiltonian_terms": [
        {"operator": <operator>, "coefficient": <schedule>}, ...
      ],
      "channels": [
        {"operator": <operator>, "rate": <schedule>}, ...
      ]
    }

``<operator>`` is either ``{"real": [[...]], "imag": [[...]]}`` (``imag`` may
be omitted) or a product of embedded single-qubit operators
``{"site_operators": [{"kind": "Z", "site": 0}, ...], "n_sites": 2,
"scale": -1.0}``.

``<schedule>`` is ``{"type": "constant", "value": v}``,
``{"type": "tabulated", "times": [...], "values": [...]}`` or
``{"type": "rescaled", "inner": <schedule>, "a": a, "t_f": t_f}``.

A whole model may instead be a built-in reference
``{"builder": "tfim_dissipative", "params": {...}}``.

Serialization always writes explicit ``real``/``imag`` arrays, so
parse -> serialize -> parse is lossless.
"""
import json

import numpy as np

from . import library
from .exceptions import ParameterError
from .model import Constant, LindbladModel, Rescaled, Tabulated
from .operators import pauli, site_operator
from .rescaling import TimeRescaling


def operator_from_dict(doc):
    if "real" in doc:
        real = np.asarray(doc["real"], dtype=float)
        imag = np.asarray(doc.get("imag", np.zeros_like(real)), dtype=float)
        if real.shape != imag.shape or real.ndim != 2:
            raise ParameterError("operator real/imag parts must be matching 2-d arrays")
        return real + 1j * imag
    if "site_operators" in doc:
        n = int(doc["n_sites"])
        out = np.eye(2 ** n, dtype=complex)
        for item in doc["site_operators"]:
            out = out @ site_operator(pauli(item["kind"]), int(item["site"]), n)
        return complex(doc.get("scale", 1.0)) * out
    raise ParameterError(f"cannot decode operator from keys {sorted(doc)}")


def operator_to_dict(op):
    op = np.asarray(op, dtype=complex)
    return {"real": op.real.tolist(), "imag": op.imag.tolist()}


def schedule_from_dict(doc):
    if isinstance(doc, (int, float)):
        return Constant(doc)
    kind = doc.get("type")
    if kind == "constant":
        return Constant(doc["value"])
    if kind == "tabulated":
        return Tabulated(doc["times"], doc["values"])
    if kind == "rescaled":
        tr = TimeRescaling(doc["a"], doc["t_f"], allow_slowdown=doc.get("allow_slowdown", False))
        return Rescaled(schedule_from_dict(doc["inner"]), tr)
    raise ParameterError(f"unknown schedule type {kind!r}")


def schedule_to_dict(s):
    if isinstance(s, Constant):
        return {"type": "constant", "value": s.value}
    if isinstance(s, Tabulated):
        return {"type": "tabulated", "times": list(s.times), "values": list(s.values)}
    if isinstance(s, Rescaled) and isinstance(s.rescaling, TimeRescaling):
        out = {"type": "rescaled", "inner": schedule_to_dict(s.inner),
               "a": s.rescaling.a, "t_f": s.rescaling.t_f}
        if s.rescaling.allow_slowdown:
            out["allow_slowdown"] = True
        return out
    raise ParameterError(f"schedule {s!r} has no JSON encoding")


def model_from_dict(doc):
    """Build a :class:`LindbladModel` from a decoded JSON document."""
    if not isinstance(doc, dict):
        raise ParameterError("model document must be a JSON object")
    if "builder" in doc:
        return library.build(doc["builder"], doc.get("params"))
    try:
        terms = [(operator_from_dict(t["operator"]), schedule_from_dict(t["coefficient"]))
                 for t in doc.get("hamiltonian_terms", [])]
        chans = [(operator_from_dict(c["operator"]), schedule_from_dict(c["rate"]))
                 for c in doc.get("channels", [])]
        return LindbladModel(doc["dim"], terms, chans, duration=doc.get("duration"),
                             name=doc.get("name", ""))
    except KeyError as exc:
        raise ParameterError(f"model document missing field {exc}") from None


def model_to_dict(model):
    out = {
        "dim": model.dim,
        "hamiltonian_terms": [{"operator": operator_to_dict(t.operator),
                               "coefficient": schedule_to_dict(t.coefficient)}
                              for t in model.hamiltonian_terms],
        "channels": [{"operator": operator_to_dict(c.operator),
                      "rate": schedule_to_dict(c.rate)}
                     for c in model.channels],
    }
    if model.duration is not None:
        out["duration"] = model.duration
    if model.name:
        out["name"] = model.name
    return out


def load_model(path):
    with open(path) as fh:
        return model_from_dict(json.load(fh))


def dump_model(model, path):
    with open(path, "w") as fh:
        json.dump(model_to_dict(model), fh, indent=2, sort_keys=True)
        fh.write("\n")
