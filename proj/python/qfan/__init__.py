"""Exact quantum-fan toolkit: python wrapper over the C++ core.

All heavy lifting happens in the compiled extension; this layer converts
between python dicts and the exact JSON wire format (rationals as "p/q"
strings, scalars as coefficient vectors, 1-based indices).
"""

import json

from . import _core

__version__ = _core.__version__

RATIONALS = {"minpoly": ["0", "1"], "interval": ["-1", "1"]}


def field(minpoly, interval):
    """Field dict from rational-string coefficients and an isolating interval."""
    return {"minpoly": [str(c) for c in minpoly], "interval": [str(t) for t in interval]}


def sqrt2_field():
    return field(["-2", "0", "1"], ["1", "2"])


def scalar(*coeffs):
    return {"coeffs": [str(c) for c in coeffs]}


def make_fan(columns, cones, virtuals=(), generator_set=None, fld=None):
    """Fan dict: columns as scalar lists, cones/virtuals with 1-based indices."""
    fld = fld or RATIONALS
    d = len(columns[0])
    norm_cols = []
    for col in columns:
        norm_cols.append([c if isinstance(c, dict) else scalar(c) for c in col])
    if generator_set is None:
        generator_set = sorted({i for cone in cones for i in cone})
    return {
        "type": "fan",
        "field": fld,
        "calibration": {
            "d": d,
            "n": len(columns),
            "columns": norm_cols,
            "virtuals": sorted(virtuals),
        },
        "generator_set": sorted(generator_set),
        "cones": [list(c) for c in cones],
    }


def make_polytope(vertices, fld=None):
    fld = fld or RATIONALS
    verts = [[c if isinstance(c, dict) else scalar(c) for c in v] for v in vertices]
    return {"type": "polytope", "field": fld, "vertices": verts}


def _call(fn, *args):
    return json.loads(fn(*args))


def validate_fan(fan):
    return _call(_core.validate_fan, json.dumps(fan))


def validate_morphism(m):
    return _call(_core.validate_morphism, json.dumps(m))


def validate_birational(m):
    return _call(_core.validate_birational, json.dumps(m))


def validate_cobordism(c):
    return _call(_core.validate_cobordism, json.dumps(c))


def blowup(fan, center, weights, natural=False, extend=False):
    return _call(_core.blowup, json.dumps(fan), list(center), json.dumps(weights), natural,
                 extend)


def exceptional_divisor(fan, center, weights, chart=0):
    return _call(_core.exceptional_divisor, json.dumps(fan), list(center),
                 json.dumps(weights), chart)


def fiber_strata(matrix, target="zero"):
    if isinstance(target, (list, tuple)):
        target = json.dumps(list(target))
    return _call(_core.fiber_strata, json.dumps(matrix), target)["strata"]


def fiber_reduced(weights, chart=1, support=()):
    return _call(_core.fiber_reduced, list(weights), chart, list(support))


def blowup_fibers_reduced(weights):
    return _core.blowup_fibers_reduced(list(weights))


def gale_transform(fan):
    return _call(_core.gale_transform, json.dumps(fan))


def s_delta(fan):
    return _call(_core.s_delta, json.dumps(fan))["patterns"]


def zigzag(fan1, fan2):
    return _call(_core.zigzag, json.dumps(fan1), json.dumps(fan2))


def rational_approximation(fan):
    return _call(_core.rational_approximation, json.dumps(fan))


def normal_fan(polytope):
    return _call(_core.normal_fan, json.dumps(polytope))


def lvm(matrix):
    return _call(_core.lvm, json.dumps(matrix))


def polytope_slice(polytope, axis, t):
    return _call(_core.polytope_slice, json.dumps(polytope), json.dumps(axis), str(t))


def classify_cobordism(polytope, p, q):
    return _call(_core.classify_cobordism, json.dumps(polytope), p, q)


def blowup_cobordism(fan, center, weights, extend=False):
    return _call(_core.blowup_cobordism, json.dumps(fan), list(center), json.dumps(weights),
                 extend)


def cobordism_index(cob):
    return _call(_core.cobordism_index, json.dumps(cob))


def catastrophe_fan(cob):
    return _call(_core.catastrophe_fan, json.dumps(cob))


def slice_family(cob, t):
    return _call(_core.slice_family, json.dumps(cob), str(t))


def render_fan_svg(fan):
    return _core.render_fan_svg(json.dumps(fan))


def render_polytope_svg(polytope):
    return _core.render_polytope_svg(json.dumps(polytope))


def cli(args):
    """Run a CLI verb in-process; returns the exit code."""
    return _core.cli([str(a) for a in args])
