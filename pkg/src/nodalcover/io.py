"""JSON spec files: groups, curves, representations, quotient reps.

Schemas (all matrices are row-major arrays of element strings like
"(t^2 + 1)/(t + 1)"):

group:  {"name", "table": [[...]], "labels": [...], "generators": [...]}
        or {"builtin": "cyclic"|"dihedral"|"symmetric"|"trivial", "n": int}
curve:  {"components": [{"id", "branches": [...]}],
         "nodes": [{"id", "ends": [[comp, branch], [comp, branch]]}]}
rep:    {"p", "rank", "curve": <curve|path>, "z_images": [<matrix>, ...],
         "factors": [{"group": <group|path>, "gen_images": [<matrix>, ...]}
                     or {"group": ..., "images": [<matrix per element>]}]}
fq:     {"p", "rank", "source_groups": [<group|path>, ...],
         "quotient": <group|path>, "z_to": [...], "factor_to": [[...], ...],
         "hom": [<matrix per element>] or "hom_gen_images": [<matrix>, ...]}
"""

from __future__ import annotations

import json
from pathlib import Path

from .curves import NodalCurve, pi1_presentation
from .errors import SpecParseError
from .field import FunctionField, MatrixK, rf_from_string
from .groups import (
    FiniteGroup,
    cyclic_group,
    dihedral_group,
    symmetric_group,
    trivial_group,
)
from .reps import ContinuousRep, FiniteQuotientRep, hom_from_generator_images


def _load_obj(source, base_dir: Path | None = None):
    if isinstance(source, (dict, list)):
        return source, base_dir
    path = Path(source)
    if base_dir is not None and not path.is_absolute():
        path = base_dir / path
    try:
        # nested file references resolve relative to the referencing file
        return json.loads(path.read_text()), path.resolve().parent
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecParseError(f"cannot read spec file {path}: {exc}") from exc


def matrix_from_json(field: FunctionField, rows) -> MatrixK:
    try:
        return MatrixK(field, tuple(
            tuple(rf_from_string(field, str(e)) for e in row) for row in rows))
    except Exception as exc:
        raise SpecParseError(f"bad matrix literal: {exc}") from exc


def matrix_to_json(M: MatrixK) -> list[list[str]]:
    return M.to_strings()


def load_group(source, base_dir: Path | None = None) -> FiniteGroup:
    obj, _ = _load_obj(source, base_dir)
    if not isinstance(obj, dict):
        raise SpecParseError("group spec must be an object")
    if "builtin" in obj:
        kind = obj["builtin"]
        n = int(obj.get("n", 1))
        try:
            if kind == "cyclic":
                return cyclic_group(n)
            if kind == "dihedral":
                return dihedral_group(n)
            if kind == "symmetric":
                return symmetric_group(n)
            if kind == "trivial":
                return trivial_group()
        except ValueError as exc:
            raise SpecParseError(str(exc)) from exc
        raise SpecParseError(f"unknown builtin group {kind!r}")
    try:
        if "order" in obj and int(obj["order"]) != len(obj["table"]):
            raise ValueError("declared order does not match the table size")
        return FiniteGroup.from_table(
            obj["table"],
            labels=obj.get("labels"),
            name=obj.get("name", "G"),
            generators=obj.get("generators"))
    except (KeyError, ValueError) as exc:
        raise SpecParseError(f"bad group spec: {exc}") from exc


def load_curve(source, base_dir: Path | None = None) -> NodalCurve:
    obj, _ = _load_obj(source, base_dir)
    try:
        comps = [(c["id"], tuple(c.get("branches", ()))) for c in obj["components"]]
        nodes = []
        for k, n in enumerate(obj.get("nodes", ())):
            ends = n["ends"]
            nodes.append((n.get("id", f"n{k}"),
                          (ends[0][0], ends[0][1]), (ends[1][0], ends[1][1])))
        return NodalCurve.build(comps, nodes)
    except (KeyError, IndexError, TypeError) as exc:
        raise SpecParseError(f"bad curve spec: {exc}") from exc
    except Exception as exc:
        raise SpecParseError(f"invalid curve: {exc}") from exc


def _hom_from_gen_images(field: FunctionField, G: FiniteGroup,
                         gen_mats: list[MatrixK], rank: int) -> tuple[MatrixK, ...]:
    try:
        return hom_from_generator_images(field, G, gen_mats, rank)
    except ValueError as exc:
        raise SpecParseError(str(exc)) from exc


def load_rep(source, base_dir: Path | None = None,
             prime: int | None = None) -> ContinuousRep:
    obj, base_dir = _load_obj(source, base_dir)
    try:
        p = int(obj["p"]) if prime is None else prime
        field = FunctionField(p)
        rank = int(obj["rank"])
        curve = load_curve(obj["curve"], base_dir)
        pres = pi1_presentation(curve)
        z_images = tuple(matrix_from_json(field, m) for m in obj.get("z_images", ()))
        groups = []
        homs = []
        for fac in obj["factors"]:
            G = load_group(fac["group"], base_dir)
            groups.append(G)
            if "images" in fac:
                homs.append(tuple(matrix_from_json(field, m) for m in fac["images"]))
            else:
                gens = [matrix_from_json(field, m) for m in fac["gen_images"]]
                homs.append(_hom_from_gen_images(field, G, gens, rank))
        return ContinuousRep.build(pres, field, z_images, groups, homs)
    except SpecParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecParseError(f"bad rep spec: {exc}") from exc
    except Exception as exc:
        raise SpecParseError(f"invalid rep: {exc}") from exc


def load_fq(source, curve: NodalCurve, base_dir: Path | None = None,
            prime: int | None = None) -> FiniteQuotientRep:
    obj, base_dir = _load_obj(source, base_dir)
    try:
        p = int(obj["p"]) if prime is None else prime
        field = FunctionField(p)
        rank = int(obj["rank"])
        pres = pi1_presentation(curve)
        source_groups = [load_group(g, base_dir) for g in obj["source_groups"]]
        quotient = load_group(obj["quotient"], base_dir)
        z_to = [int(x) for x in obj.get("z_to", ())]
        factor_to = [tuple(int(x) for x in m) for m in obj["factor_to"]]
        if "hom" in obj:
            hom = tuple(matrix_from_json(field, m) for m in obj["hom"])
        else:
            gens = [matrix_from_json(field, m) for m in obj["hom_gen_images"]]
            hom = _hom_from_gen_images(field, quotient, gens, rank)
        return FiniteQuotientRep.build(pres, field, source_groups, quotient,
                                       z_to, factor_to, hom)
    except SpecParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecParseError(f"bad quotient rep spec: {exc}") from exc
    except Exception as exc:
        raise SpecParseError(f"invalid quotient rep: {exc}") from exc


def dumps_report(obj) -> str:
    """Canonical JSON: sorted keys, fixed separators, so identical inputs
    yield byte-identical reports."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
