"""JSON encodings of angles, decompositions, profiles, tuples and configurations.

Every non-integer number is written as a string ("p/q" or a decimal) so that
output is byte-stable across platforms.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .arith import Angle, format_real, parse_fraction
from .cijump import JumpTuple, SearchConfig
from .indexiter import IndexProfile
from .reebcount import NONDEGENERATE, Configuration, OrbitDescriptor
from .symplin import DEFAULT_N2_B, N2_KINDS, Block, Decomposition, Kind, SymplecticMatrix


def dumps(obj) -> str:
    return json.dumps(obj, indent=2)


def frac_str(x) -> str:
    return format_real(x)


# -- angles and blocks

def angle_to_json(a: Angle) -> dict:
    if a.is_rational:
        return {"rat": [a.rat.numerator, a.rat.denominator]}
    return {"irr": {"approx": a.approx, "gap": _decimal(a.gap)}}


def decimal_str(x) -> str:
    """Terminating decimals as decimal strings, anything else as p/q."""
    x = Fraction(x)
    q = x.denominator
    for f in (2, 5):
        while q % f == 0:
            q //= f
    if q != 1:
        return frac_str(x)
    digits = 0
    while (x * 10**digits).denominator != 1:
        digits += 1
    sign = "-" if x < 0 else ""
    whole, frac = divmod(abs(x.numerator) * 10**digits // x.denominator, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"


def _decimal(x: Fraction) -> str:
    # gaps are produced as short decimals; fall back to p/q otherwise
    s = str(x)
    text = f"{float(x):.3e}"
    return text if parse_fraction(text) == x else s


def angle_from_json(obj) -> Angle:
    if "rat" in obj:
        p, q = obj["rat"]
        return Angle.of(Fraction(int(p), int(q)))
    if "irr" in obj:
        irr = obj["irr"]
        return Angle.irrational(str(irr["approx"]), parse_fraction(str(irr["gap"])))
    raise ValueError(f"angle must have 'rat' or 'irr': {obj!r}")


def block_to_json(b: Block) -> dict:
    out = {"kind": b.kind.value}
    if b.angle is not None:
        out["angle"] = angle_to_json(b.angle)
    if b.kind is Kind.Hyp:
        out["k"] = b.k
    if b.kind in N2_KINDS and b.B != DEFAULT_N2_B:
        out["B"] = [[frac_str(x) for x in row] for row in b.B]
    return out


def block_from_json(obj) -> Block:
    kind = Kind(obj["kind"])
    angle = angle_from_json(obj["angle"]) if "angle" in obj else None
    kw = {}
    if kind is Kind.Hyp:
        kw["k"] = int(obj.get("k", 1))
    elif "k" in obj and int(obj["k"]) != 1:
        raise ValueError(f"{kind.value} block does not take k")
    if "B" in obj:
        kw["B"] = tuple(tuple(parse_fraction(str(x)) for x in row) for row in obj["B"])
    return Block(kind, angle=angle, **kw)


def decomposition_to_json(dec: Decomposition) -> dict:
    return {"d": dec.d, "blocks": [block_to_json(b) for b in dec.blocks]}


def decomposition_from_json(obj) -> Decomposition:
    dec = Decomposition(tuple(block_from_json(b) for b in obj["blocks"]))
    if "d" in obj and int(obj["d"]) != dec.d:
        raise ValueError(f"declared d={obj['d']} but blocks give d={dec.d}")
    return dec


def matrix_from_json(obj) -> SymplecticMatrix:
    rows = tuple(tuple(parse_fraction(str(x)) for x in row) for row in obj["entries"])
    m = SymplecticMatrix(rows)
    if "d" in obj and int(obj["d"]) != m.d:
        raise ValueError(f"declared d={obj['d']} but entries give d={m.d}")
    return m


# -- profiles

def profile_to_json(p: IndexProfile) -> dict:
    return {"decomposition": decomposition_to_json(p.dec), "base_index": p.base_index}


def profile_from_json(obj) -> IndexProfile:
    if "profile" in obj and "decomposition" not in obj:
        obj = obj["profile"]
    return IndexProfile(decomposition_from_json(obj["decomposition"]), int(obj["base_index"]))


def profiles_from_json(obj) -> list[IndexProfile]:
    """A list of profiles, or a configuration whose orbit profiles are used."""
    if isinstance(obj, dict) and "orbits" in obj:
        return [profile_from_json(o["profile"]) for o in obj["orbits"]]
    if isinstance(obj, dict) and "profiles" in obj:
        obj = obj["profiles"]
    if isinstance(obj, dict):
        return [profile_from_json(obj)]
    return [profile_from_json(p) for p in obj]


# -- jump tuples

def tuple_to_json(t: JumpTuple) -> dict:
    out = {
        "N": t.N,
        "m": list(t.m),
        "chi": list(t.chi),
        "delta_i": list(t.delta_list),
        "epsilon": frac_str(t.epsilon),
        "delta": frac_str(t.delta),
        "M_common": t.M_common,
    }
    if t.M0 is not None:
        out["M0"] = t.M0
    return out


def tuple_from_json(obj) -> JumpTuple:
    return JumpTuple(
        N=int(obj["N"]),
        m=tuple(int(x) for x in obj["m"]),
        chi=tuple(int(x) for x in obj["chi"]),
        delta_list=tuple(int(x) for x in obj["delta_i"]),
        epsilon=parse_fraction(str(obj["epsilon"])),
        M_common=int(obj.get("M_common", 1)),
        M0=int(obj["M0"]) if obj.get("M0") is not None else None,
        delta=parse_fraction(str(obj.get("delta", "1/40"))),
    )


def tuples_from_json(obj) -> list[JumpTuple]:
    if isinstance(obj, dict):
        return [tuple_from_json(obj)]
    return [tuple_from_json(t) for t in obj]


def search_config_from_json(obj, **overrides) -> SearchConfig:
    kw = {}
    if "N_max" in obj:
        kw["N_max"] = int(obj["N_max"])
    for key in ("epsilon", "delta"):
        if key in obj:
            kw[key] = parse_fraction(str(obj[key]))
    if obj.get("M0") is not None:
        kw["M0"] = int(obj["M0"])
    if "want" in obj:
        kw["want"] = int(obj["want"])
    if "workers" in obj:
        kw["workers"] = int(obj["workers"])
    kw.update({k: v for k, v in overrides.items() if v is not None})
    return SearchConfig(**kw)


# -- configurations

def orbit_to_json(x: OrbitDescriptor) -> dict:
    if x.local_homology == NONDEGENERATE:
        lh = NONDEGENERATE
    else:
        lh = {str(k): {str(deg): dim for deg, dim in sorted(row.items())}
              for k, row in sorted(x.local_homology.items())}
    return {"label": x.label, "action": decimal_str(x.action), "profile": profile_to_json(x.profile),
            "local_homology": lh}


def orbit_from_json(obj) -> OrbitDescriptor:
    lh = obj.get("local_homology", NONDEGENERATE)
    if isinstance(lh, dict):
        lh = {int(k): {int(deg): int(dim) for deg, dim in row.items()} for k, row in lh.items()}
    return OrbitDescriptor(str(obj["label"]), parse_fraction(str(obj["action"])),
                           profile_from_json(obj["profile"]), lh)


def configuration_to_json(cfg: Configuration) -> dict:
    out = {"n": cfg.ambient_n, "orbits": [orbit_to_json(x) for x in cfg.orbits]}
    if cfg.finite:
        out["finite"] = True
    return out


def configuration_from_json(obj) -> Configuration:
    return Configuration(int(obj["n"]), tuple(orbit_from_json(o) for o in obj.get("orbits", [])),
                         bool(obj.get("finite", False)))


def dump_configuration(cfg: Configuration) -> str:
    return dumps(configuration_to_json(cfg))


def load_configuration(path) -> Configuration:
    with open(path) as fh:
        return configuration_from_json(json.load(fh))
