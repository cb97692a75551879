"""JSON input parsing, schema validation, and report rendering.

Complex numbers travel as [re, im] pairs. Inputs are validated against
the shipped schema before any numerics run, so malformed files fail with
a field path instead of a stack trace. Report rendering is deterministic:
sorted keys, fixed indentation, one trailing newline.
"""

import json
from importlib import resources

import jsonschema
import numpy as np

from .errors import ParseError, SchemaMismatch
from .signals import AutocorrSeq, TrigPoly
from .capacity import Constellation

_SCHEMA = json.loads(
    resources.files(__package__).joinpath("schema.json").read_text(encoding="utf-8")
)
_VALIDATORS = {}


def _validator(kind):
    if kind not in _VALIDATORS:
        doc = dict(_SCHEMA["$defs"][kind])
        doc["$defs"] = _SCHEMA["$defs"]
        _VALIDATORS[kind] = jsonschema.Draft202012Validator(doc)
    return _VALIDATORS[kind]


def load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise ParseError("cannot read %s: %s" % (path, exc)) from exc
    except json.JSONDecodeError as exc:
        raise ParseError(
            "%s is not valid JSON (line %d, column %d): %s"
            % (path, exc.lineno, exc.colno, exc.msg)
        ) from exc


def validate(obj, kind):
    errors = sorted(_validator(kind).iter_errors(obj), key=lambda e: list(e.absolute_path))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        path = ".".join(str(part) for part in err.absolute_path) or "(root)"
        raise SchemaMismatch("%s: field %s: %s" % (kind, path, err.message))


def _complex_vector(pairs):
    return np.array([complex(re, im) for re, im in pairs], dtype=complex)


def parse_signal(obj):
    validate(obj, "signal")
    m = obj["m"]
    coeffs = obj["coeffs"]
    if len(coeffs) != 2 * m + 1:
        raise SchemaMismatch(
            "signal: field coeffs: expected 2m+1 = %d entries, got %d"
            % (2 * m + 1, len(coeffs))
        )
    return TrigPoly(m=m, coeffs=_complex_vector(coeffs), period=obj.get("period", 1.0))


def parse_autocorr(obj):
    validate(obj, "autocorrelation")
    m = obj["m"]
    coeffs = obj["coeffs"]
    if len(coeffs) != 4 * m + 1:
        raise SchemaMismatch(
            "autocorrelation: field coeffs: expected 4m+1 = %d entries, got %d"
            % (4 * m + 1, len(coeffs))
        )
    return AutocorrSeq(m=m, coeffs=_complex_vector(coeffs), period=obj.get("period", 1.0))


def parse_constellation(obj):
    validate(obj, "constellation")
    m = obj["m"]
    period = obj.get("period", 1.0)
    signals, probs = [], []
    for idx, point in enumerate(obj["points"]):
        coeffs = point["coeffs"]
        if len(coeffs) != 2 * m + 1:
            raise SchemaMismatch(
                "constellation: field points.%d.coeffs: expected %d entries, got %d"
                % (idx, 2 * m + 1, len(coeffs))
            )
        signals.append(TrigPoly(m=m, coeffs=_complex_vector(coeffs), period=period))
        probs.append(point["probability"])
    total = sum(probs)
    return Constellation(signals=tuple(signals), probs=[p / total for p in probs])


def complex_pair(z):
    z = complex(z)
    return [float(z.real), float(z.imag)]


def complex_pairs(vec):
    return [complex_pair(z) for z in np.asarray(vec)]


def signal_dict(p):
    return {"m": p.m, "period": p.period, "coeffs": complex_pairs(p.coeffs)}


def autocorr_dict(s):
    return {"m": s.m, "period": s.period, "coeffs": complex_pairs(s.coeffs)}


def rootset_dict(r):
    return {
        "degree": r.degree,
        "origin_mult": r.origin_mult,
        "leading_coeff": complex_pair(r.leading_coeff),
        "circle_band": r.circle_band,
        "roots": [
            {
                "location": complex_pair(root.location),
                "multiplicity": root.multiplicity,
                "label": root.label,
                "cluster_diameter": root.diameter,
            }
            for root in r.roots
        ],
    }


def verdict_dict(v):
    return {
        "related": v.related,
        "kappa": v.kappa,
        "phase": v.phase,
        "witness": v.witness,
    }


def classset_dict(cs, report=None):
    out = {
        "m": cs.source_m,
        "period": cs.autocorr.period,
        "bound": cs.bound,
        "exact_count": cs.exact_count,
        "autocorrelation": complex_pairs(cs.autocorr.coeffs),
        "representatives": [complex_pairs(rep.coeffs) for rep in cs.representatives],
    }
    if report is not None:
        out["within_bound"] = report.passed
        out["max_residual"] = report.max_residual
        out["residuals"] = list(report.residuals)
    return out


def gap_dict(report):
    return {
        "m": report.m,
        "i_xy": report.i_xy,
        "i_xs": report.i_xs,
        "i_xz": report.i_xz,
        "h_z_given_s": report.h_z_given_s,
        "chain_residual": report.chain_residual,
        "per_dim_gap": report.per_dim_gap,
        "bound": report.bound,
        "pass": report.passed,
        "zero_dc": report.zero_dc,
    }


def render_report(payload):
    """Deterministic JSON text for a report object."""
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"
