"""Batch command line: curve specs and rep specs in, certificates out.

Commands: pi1, cover, free, domain, descend, strat, square, hull, rep,
selftest.  Reports are deterministic for fixed inputs and seed; --format
json emits one canonical JSON object.  The exit code is 0 exactly when
every certificate in the report passed.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import io as spec_io
from .covering import (
    build_finite_cover,
    certify_free_action,
    cover_witness,
    fundamental_domain,
)
from .curves import betti_rank, pi1_presentation
from .descent import check_cocycle, datum_from_rep, hom_cocycle, integralize
from .errors import NodalCoverError, SpecParseError
from .field import is_prime
from .groups import parse_word
from .hopf import QuotientTower, function_hopf, tower_hull
from .reps import intertwiners
from .specialize import commuting_square_check, default_kernel_word
from .stratified import K_RELATIVE, S_RELATIVE, fdiv_from_rep, hom_fdiv, tensor_fdiv


@dataclass(frozen=True)
class RunConfig:
    prime: int
    max_len: int
    depth: int
    seed: int
    out_format: str

    def __post_init__(self):
        if not is_prime(self.prime):
            raise SpecParseError(f"--prime must be prime, got {self.prime}")
        if self.max_len < 2:
            raise SpecParseError("--max-len must be at least 2")
        if self.depth < 1:
            raise SpecParseError("--depth must be at least 1")
        if self.out_format not in ("text", "json"):
            raise SpecParseError("--format must be text or json")

    def header(self) -> dict:
        return {"prime": self.prime, "max_len": self.max_len,
                "depth": self.depth, "seed": self.seed}


def _emit(cfg: RunConfig, report: dict, ok: bool) -> int:
    report = dict(report)
    report["config"] = cfg.header()
    report["ok"] = ok
    if cfg.out_format == "json":
        print(spec_io.dumps_report(report))
    else:
        _print_text(report)
    return 0 if ok else 1


def _print_text(obj, indent: int = 0):
    pad = "  " * indent
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)):
                print(f"{pad}{k}:")
                _print_text(v, indent + 1)
            else:
                print(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                _print_text(v, indent + 1)
            else:
                print(f"{pad}- {v}")
    else:
        print(f"{pad}{obj}")


def _base_dir(path: str) -> Path:
    return Path(path).resolve().parent


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_pi1(args, cfg: RunConfig) -> int:
    curve = spec_io.load_curve(args.curve, _base_dir(args.curve))
    pres = pi1_presentation(curve)
    report = {
        "command": "pi1",
        "rank_r": pres.r,
        "betti": betti_rank(curve),
        "components": list(curve.component_ids),
        "base_component": pres.base_component,
        "spanning_tree": list(pres.spanning_tree),
        "loop_nodes": {f"z{i + 1}": nid for i, nid in enumerate(pres.loop_nodes)},
        "paths": {nid: {"sigma": list(sig_p), "tau": list(tau_p)}
                  for nid, (sig_p, tau_p) in pres.path_data},
    }
    return _emit(cfg, report, True)


def cmd_cover(args, cfg: RunConfig) -> int:
    rep = spec_io.load_rep(args.rep, _base_dir(args.rep))
    cover = build_finite_cover(rep)
    report = {
        "command": "cover",
        "fiber_size": len(cover.fiber),
        "deck_group_order": cover.deck_order,
        "connected": cover.transitive,
        "generator_actions": {name: list(perm) for name, perm in cover.actions},
    }
    return _emit(cfg, report, cover.transitive)


def cmd_free(args, cfg: RunConfig) -> int:
    rep = spec_io.load_rep(args.rep, _base_dir(args.rep))
    import random
    rng = random.Random(cfg.seed)
    rpt = certify_free_action(rep.sig, cfg.max_len, rng=rng)
    report = {
        "command": "free",
        "signature": rpt.sig_description,
        "max_len": rpt.max_len,
        "strategy": rpt.strategy,
        "kernel_words": rpt.kernel_words,
        "components": rpt.components,
        "checks": rpt.checks,
        "full_group_witnesses": list(rpt.full_group_witnesses),
        "free": rpt.passed,
    }
    return _emit(cfg, report, rpt.passed)


def cmd_domain(args, cfg: RunConfig) -> int:
    rep = spec_io.load_rep(args.rep, _base_dir(args.rep))
    sig = rep.sig
    if args.word:
        w = parse_word(sig, args.word)
    else:
        w = default_kernel_word(rep, cfg.max_len)
        if w is None:
            raise SpecParseError("no nontrivial kernel word within the bound; pass --word")
    dom = fundamental_domain(sig, w, rep.presentation)
    witnesses = []
    from .covering import enumerate_components
    for target in enumerate_components(sig, min(cfg.max_len, 4)):
        t = cover_witness(dom, target)
        witnesses.append({"target": str(target), "translate": str(t)})
    report = {
        "command": "domain",
        "word": str(w),
        "core": [str(c) for c in dom.core],
        "core_size": len(dom.core),
        "size_bound": dom.size_bound,
        "boundary": [{"node": nid, "lift": str(u), "inside": str(a), "outside": str(b)}
                     for nid, u, a, b in dom.boundary],
        "geometry": dom.geometry_note,
        "coverage_witnesses": witnesses,
    }
    return _emit(cfg, report, True)


def cmd_descend(args, cfg: RunConfig) -> int:
    rep = spec_io.load_rep(args.rep, _base_dir(args.rep))
    datum = datum_from_rep(rep)
    cert = check_cocycle(datum, min(cfg.max_len, 4))
    end_basis = hom_cocycle(datum, datum)
    lattice_report: dict = {}
    ok = cert.passed
    try:
        assignment = integralize(datum.restricted(), max_len=min(cfg.max_len, 3))
        lattice_report = {
            "orbits": len(assignment.orbit_reps),
            "components": len(assignment.components),
            "diagonal_exponents": {
                str(c): list(assignment.lattice_of(c).diagonal_exponents)
                for c in assignment.orbit_reps},
        }
    except NodalCoverError as exc:
        lattice_report = {"error": str(exc)}
        ok = False
    report = {
        "command": "descend",
        "cocycle_ok": cert.passed,
        "cocycle": {"strategy": cert.strategy, "pairs": cert.pairs_checked,
                    "max_len": cert.max_len},
        "hom_dims": {"end": len(end_basis)},
        "lattice_assignment": lattice_report,
    }
    return _emit(cfg, report, ok)


def cmd_strat(args, cfg: RunConfig) -> int:
    base = _base_dir(args.rep1)
    rep1 = spec_io.load_rep(args.rep1, base)
    mode = K_RELATIVE if args.mode == "K" else S_RELATIVE
    if args.action == "hom":
        rep2 = spec_io.load_rep(args.rep2, _base_dir(args.rep2)) if args.rep2 else rep1
        hb = hom_fdiv(fdiv_from_rep(rep1, mode, cfg.depth),
                      fdiv_from_rep(rep2, mode, cfg.depth),
                      max_len=cfg.max_len)
        report = {
            "command": "strat hom",
            "mode": hb.mode,
            "depth": hb.depth,
            "scalar_field": hb.scalar_field,
            "dimension": hb.dimension,
            "basis": [spec_io.matrix_to_json(b) for b in hb.basis],
        }
        return _emit(cfg, report, True)
    if not args.rep2:
        raise SpecParseError("strat tensor needs two rep files")
    rep2 = spec_io.load_rep(args.rep2, _base_dir(args.rep2))
    tensored, cert = tensor_fdiv(fdiv_from_rep(rep1, mode, cfg.depth),
                                 fdiv_from_rep(rep2, mode, cfg.depth))
    report = {
        "command": "strat tensor",
        "mode": mode,
        "rank": tensored.rank,
        "certificate": {"generators_checked": cert.generators_checked,
                        "passed": cert.passed},
    }
    return _emit(cfg, report, cert.passed)


def cmd_square(args, cfg: RunConfig) -> int:
    curve = spec_io.load_curve(args.curve, _base_dir(args.curve))
    fq = spec_io.load_fq(args.fq, curve, _base_dir(args.fq))
    pres = pi1_presentation(curve)
    try:
        cert = commuting_square_check(fq, pres, max_len=cfg.max_len)
        report = {
            "command": "square",
            "result": "PASS",
            "max_len": cert.max_len,
            "words_checked": cert.words_checked,
            "elements_compared": cert.elements_compared,
            "witness": spec_io.matrix_to_json(cert.witness),
            "detail": cert.detail,
        }
        return _emit(cfg, report, True)
    except NodalCoverError as exc:
        report = {"command": "square", "result": "FAIL", "reason": str(exc)}
        return _emit(cfg, report, False)


def cmd_hull(args, cfg: RunConfig) -> int:
    from .field import FunctionField

    base_field = FunctionField(cfg.prime)
    if len(args.groups) == 1 and not args.tower:
        G = spec_io.load_group(args.groups[0], _base_dir(args.groups[0]))
        algebra = function_hopf(G, base_field)
        info = algebra.verify_axioms()
        report = {
            "command": "hull",
            "group": G.name,
            "dimension": algebra.dim,
            "axiom_checks": info["checks"],
            "commutative": algebra.is_commutative(),
            "cocommutative": algebra.is_cocommutative(),
        }
        return _emit(cfg, report, True)
    groups = [spec_io.load_group(g, _base_dir(g)) for g in args.groups]
    maps = []
    for low, high in zip(groups, groups[1:]):
        if high.order % low.order:
            raise SpecParseError("tower orders must divide; give explicit maps in a file")
        maps.append([x % low.order for x in range(high.order)])
    tower = QuotientTower.build(groups, maps)
    rpt = tower_hull(tower, base_field)
    report = {
        "command": "hull",
        "tower": [G.name for G in groups],
        "dimensions": list(rpt.dimensions),
        "duals_injective": rpt.injective,
        "hopf_maps_verified": rpt.hopf_maps_verified,
    }
    return _emit(cfg, report, rpt.injective)


def cmd_rep(args, cfg: RunConfig) -> int:
    if args.action != "check":
        raise SpecParseError(f"unknown rep action {args.action!r}")
    rep = spec_io.load_rep(args.rep, _base_dir(args.rep))
    end = intertwiners(rep, rep)
    report = {
        "command": "rep check",
        "rank": rep.rank,
        "prime": rep.field.p,
        "z_generators": rep.presentation.r,
        "factor_groups": [G.name for G in rep.factor_groups],
        "intertwiner_dims": {"end": len(end)},
        "valid": True,
    }
    return _emit(cfg, report, True)


def cmd_selftest(args, cfg: RunConfig) -> int:
    from .selfcheck import run_all

    echo = print if cfg.out_format == "text" else None
    results = run_all(seed=cfg.seed, echo=echo)
    ok = all(r.passed and r.in_time for r in results)
    report = {
        "command": "selftest",
        "criteria": [{
            "criterion": r.criterion,
            "name": r.name,
            "passed": r.passed,
            "within_time_bound": r.in_time,
            "detail": r.detail,
        } for r in results],
        "all_passed": ok,
    }
    if cfg.out_format == "json":
        return _emit(cfg, report, ok)
    print(f"selftest: {'PASS' if ok else 'FAIL'} "
          f"({sum(r.passed for r in results)}/{len(results)} criteria)")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="nodalcover",
        description="Exact covering-space combinatorics and descent data for nodal curves.")
    ap.add_argument("--prime", type=int, default=3, help="coefficient characteristic")
    ap.add_argument("--max-len", type=int, default=6, dest="max_len",
                    help="word-length truncation recorded in every certificate")
    ap.add_argument("--depth", type=int, default=5, help="Frobenius chain depth")
    ap.add_argument("--seed", type=int, default=42, help="seed for randomized checks")
    ap.add_argument("--format", choices=("text", "json"), default="text",
                    dest="out_format")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pi1", help="presentation and cycle rank of a curve")
    p.add_argument("curve")
    p.set_defaults(fn=cmd_pi1)

    p = sub.add_parser("cover", help="finite cover and deck group of a rep")
    p.add_argument("rep")
    p.set_defaults(fn=cmd_cover)

    p = sub.add_parser("free", help="freeness certificate for a rep's signature")
    p.add_argument("rep")
    p.set_defaults(fn=cmd_free)

    p = sub.add_parser("domain", help="fundamental domain and witness table")
    p.add_argument("rep")
    p.add_argument("--word", help="kernel word like 'z1' (default: first one)")
    p.set_defaults(fn=cmd_domain)

    p = sub.add_parser("descend", help="cocycle check, hom dims, lattice assignment")
    p.add_argument("rep")
    p.set_defaults(fn=cmd_descend)

    p = sub.add_parser("strat", help="divided-sequence hom and tensor")
    p.add_argument("action", choices=("hom", "tensor"))
    p.add_argument("rep1")
    p.add_argument("rep2", nargs="?")
    p.add_argument("--mode", choices=("S", "K"), default="K")
    p.set_defaults(fn=cmd_strat)

    p = sub.add_parser("square", help="compare both routes to the finite twist data")
    p.add_argument("fq")
    p.add_argument("curve")
    p.set_defaults(fn=cmd_square)

    p = sub.add_parser("hull", help="function Hopf algebra / quotient tower report")
    p.add_argument("groups", nargs="+")
    p.add_argument("--tower", action="store_true",
                   help="treat the groups as a tower with reduction maps")
    p.set_defaults(fn=cmd_hull)

    p = sub.add_parser("rep", help="validate a rep spec")
    p.add_argument("action", choices=("check",))
    p.add_argument("rep")
    p.set_defaults(fn=cmd_rep)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.set_defaults(fn=cmd_selftest)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = RunConfig(args.prime, args.max_len, args.depth, args.seed,
                        args.out_format)
        return args.fn(args, cfg)
    except SpecParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NodalCoverError as exc:
        print(f"certificate failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
