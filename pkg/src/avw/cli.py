"""Command-line front end: every library operation behind a subcommand.

Commands: jacobi, module-check, catalog, simple, structure, loop-dims,
verma, singular, injectivity, witness, match, support.

Exit codes: 0 = ran and all checks passed; 1 = ran but a check found a
defect/violation; 2 = usage or configuration error.  All numbers in reports
are exact fraction strings; identical configurations (including seeds)
produce byte-identical report files.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import catalog as cat
from . import verma as vm
from . import windows as win
from .algebra import ALGEBRAS, Gen, algebra_by_name, bracket_gens, degree, element_str, in_subalgebra, jacobi_defect
from .catalog import (HVirABC, IntA, IntAB, IntB, LoopMod, ModuleSpec, T2Corrupt,
                      T2Mod, acting_algebra, label_str, spec_text)
from .errors import (AvwError, MissingParameter, SpecParseError, UnknownKind)
from .linalg import Vec

_KINDS = ("A", "A2", "B", "H", "T2", "T2corrupt", "loop")
_REQUIRED_KEYS = {
    "A": ("a", "b"),
    "A2": ("a",),
    "B": ("a",),
    "H": ("a", "b", "c"),
    "T2": ("a", "b", "c"),
    "T2corrupt": ("a", "b", "c"),
    "loop": ("lambda", "a", "b"),
}


def _parse_rational(text: str, pos: int) -> Fraction:
    if not re.fullmatch(r"-?\d+(/-?\d+)?", text):
        raise SpecParseError(f"expected a rational like 7/6 or -2, got {text!r}", pos)
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise SpecParseError("zero denominator", pos) from None


def parse_spec(text: str) -> ModuleSpec:
    """Parse the module-spec grammar ``kind ':' key '=' rational (',' ...)*``."""
    colon = text.find(":")
    if colon < 0:
        raise SpecParseError("missing ':' after the kind", len(text))
    kind = text[:colon]
    if kind not in _KINDS:
        raise UnknownKind(f"unknown kind {kind!r}; expected one of {_KINDS}", 0)
    params: Dict[str, Fraction] = {}
    pos = colon + 1
    body = text[colon + 1:]
    if not body:
        raise MissingParameter(f"kind {kind!r} needs parameters "
                               f"{_REQUIRED_KEYS[kind]}", pos)
    for part in body.split(","):
        eq = part.find("=")
        if eq < 0:
            raise SpecParseError(f"expected key=value, got {part!r}", pos)
        key, value = part[:eq], part[eq + 1:]
        if key not in _REQUIRED_KEYS[kind]:
            raise SpecParseError(f"unknown parameter {key!r} for kind {kind!r}", pos)
        if key in params:
            raise SpecParseError(f"duplicate parameter {key!r}", pos)
        params[key] = _parse_rational(value, pos + eq + 1)
        pos += len(part) + 1
    for key in _REQUIRED_KEYS[kind]:
        if key not in params:
            raise MissingParameter(f"missing parameter {key!r} for kind {kind!r}",
                                   len(text))
    if kind == "A":
        return IntAB(params["a"], params["b"])
    if kind == "A2":
        return IntA(params["a"])
    if kind == "B":
        return IntB(params["a"])
    if kind == "H":
        return HVirABC(params["a"], params["b"], params["c"])
    if kind == "T2":
        return T2Mod(params["a"], params["b"], params["c"])
    if kind == "T2corrupt":
        return T2Corrupt(params["a"], params["b"], params["c"])
    lam = params["lambda"]
    if lam.denominator != 1 or lam < 0:
        raise SpecParseError("lambda must be a nonnegative integer", colon + 1)
    return LoopMod(int(lam), params["a"], params["b"])


@dataclass(frozen=True)
class RunConfig:
    """Everything one run depends on; equal configs give identical bytes."""

    command: str
    module: Optional[str] = None
    algebra: str = "L"
    deg_range: Tuple[int, int] = (-3, 3)
    label_range: Tuple[int, int] = (-3, 3)
    window: Tuple[int, int] = (-3, 3)
    k: int = 0
    i: int = 1
    lamd: Optional[Fraction] = None
    mu: Optional[Fraction] = None
    c: Optional[Fraction] = None
    depth: int = 4
    charge: Optional[int] = None
    singular_depth: Optional[int] = None
    scramble_seed: Optional[int] = None
    out: Optional[str] = None
    emit: Optional[str] = None
    matrices: bool = False


def _range_arg(text: str) -> Tuple[int, int]:
    m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected lo..hi, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _rational_arg(text: str) -> Fraction:
    try:
        return _parse_rational(text, 0)
    except SpecParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _fs(x: Fraction) -> str:
    return str(x)


def _vec_json(spec: ModuleSpec, v: Vec) -> Dict[str, str]:
    return {label_str(spec, lab): _fs(coeff) for lab, coeff in
            sorted(v.terms.items(), key=lambda kv: label_str(spec, kv[0]))}


def _write_report(config: RunConfig, payload: dict) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_jacobi(config: RunConfig) -> int:
    alg = algebra_by_name(config.algebra)
    lo, hi = config.deg_range
    gens = list(alg.generators(lo, hi))
    defects: List[dict] = []
    anti = grading = closure = 0
    for x in gens:
        for y in gens:
            br = bracket_gens(x, y)
            if not (bracket_gens(y, x) + br).is_zero():
                anti += 1
            for g, _ in br:
                if degree(g) != degree(x) + degree(y):
                    grading += 1
            if not in_subalgebra(br, alg):
                closure += 1
    jac = 0
    for x in gens:
        for y in gens:
            for z in gens:
                dft = jacobi_defect(x, y, z)
                if not dft.is_zero():
                    jac += 1
                    if len(defects) < 10:
                        defects.append({"triple": [str(x), str(y), str(z)],
                                        "defect": element_str(dft)})
    payload = {
        "command": "jacobi",
        "algebra": alg.name,
        "range": list(config.deg_range),
        "generators": len(gens),
        "pairs": len(gens) ** 2,
        "triples": len(gens) ** 3,
        "antisymmetry_defects": anti,
        "grading_defects": grading,
        "closure_defects": closure,
        "jacobi_defects": jac,
        "defects": defects,
    }
    _write_report(config, payload)
    return 0 if not (anti or grading or closure or jac) else 1


def _module_labels(spec: ModuleSpec, lo: int, hi: int) -> list:
    if isinstance(spec, LoopMod):
        return [(k, i) for i in range(lo, hi + 1) for k in range(spec.lam + 1)]
    return list(range(lo, hi + 1))


def _cmd_module_check(config: RunConfig) -> int:
    spec = parse_spec(config.module)
    alg = acting_algebra(spec)
    lo, hi = config.deg_range
    gens = list(alg.generators(lo, hi))
    labels = _module_labels(spec, *config.label_range)
    n_defects = 0
    samples: List[dict] = []
    for x in gens:
        for y in gens:
            for lab in labels:
                dft = cat.module_defect(spec, x, y, Vec.basis(lab))
                if not dft.is_zero():
                    n_defects += 1
                    if len(samples) < 10:
                        samples.append({
                            "x": str(x), "y": str(y),
                            "vector": label_str(spec, lab),
                            "defect": _vec_json(spec, dft),
                        })
    payload = {
        "command": "module-check",
        "module": spec_text(spec),
        "deg_range": list(config.deg_range),
        "label_range": list(config.label_range),
        "generator_pairs": len(gens) ** 2,
        "basis_vectors": len(labels),
        "checks": len(gens) ** 2 * len(labels),
        "defects": n_defects,
        "defect_samples": samples,
    }
    _write_report(config, payload)
    return 0 if n_defects == 0 else 1


def _window_payload(wm: win.WindowedModule, matrices: bool) -> dict:
    p, q = wm.window
    payload: dict = {
        "window": [p, q],
        "families": sorted(wm.families),
        "dims": {str(k): wm.dim(k) for k in wm.offsets()},
        "labels": {str(k): [{"name": lab.name, "d0": _fs(lab.d0), "h0": _fs(lab.h0)}
                            for lab in wm.labels(k)] for k in wm.offsets()},
    }
    if matrices:
        blocks = {}
        for (fam, m, k), cols in sorted(wm.blocks.items()):
            key = f"{fam}[{m}] from {k}"
            blocks[key] = [[_fs(x) for x in col] if col is not None else None
                           for col in cols]
        payload["blocks"] = blocks
    return payload


def _cmd_catalog(config: RunConfig) -> int:
    spec = parse_spec(config.module)
    wm = win.from_catalog(spec, config.window)
    defects = win.bracket_consistency_defects(wm, degree_limit=2)
    payload = {
        "command": "catalog",
        "module": spec_text(spec),
        **_window_payload(wm, config.matrices),
        "bracket_consistency_defects": defects,
    }
    if isinstance(spec, LoopMod):
        rep = cat.sl2_irrep(spec.lam)
        payload["sl2_irrep"] = {
            "lambda": rep.lam,
            "e": [[_fs(x) for x in row] for row in rep.e_mat],
            "f": [[_fs(x) for x in row] for row in rep.f_mat],
            "h": [[_fs(x) for x in row] for row in rep.h_mat],
        }
    _write_report(config, payload)
    return 0 if not defects else 1


def _cmd_simple(config: RunConfig) -> int:
    spec = parse_spec(config.module)
    verdict = cat.is_simple(spec)
    _write_report(config, {
        "command": "simple",
        "module": spec_text(spec),
        "canonical": spec_text(cat.canonicalize(spec)),
        "simple": verdict.simple,
        "reason": verdict.reason,
    })
    return 0


def _cmd_structure(config: RunConfig) -> int:
    spec = parse_spec(config.module)
    rep = cat.structure_report(spec)
    _write_report(config, {
        "command": "structure",
        "module": spec_text(spec),
        "simple": rep.simple,
        "trivial_line": rep.trivial_line,
        "line_role": rep.line_role,
        "simple_subquotient": rep.simple_subquotient,
        "detail": rep.detail,
    })
    return 0


def _cmd_loop_dims(config: RunConfig) -> int:
    spec = parse_spec(config.module)
    if not isinstance(spec, LoopMod):
        raise SpecParseError("loop-dims needs a loop:... module spec", 0)
    wm = win.from_catalog(spec, config.window)
    expected = spec.lam + 1
    rows = [{"offset": k, "dim": wm.dim(k)} for k in wm.offsets()]
    violations = [r for r in rows if r["dim"] != expected]
    _write_report(config, {
        "command": "loop-dims",
        "module": spec_text(spec),
        "window": list(config.window),
        "expected_dim": expected,
        "rows": rows,
        "violations": violations,
        "support": win.support_json(wm)["support"],
    })
    return 0 if not violations else 1


def _require_hw(config: RunConfig) -> vm.HighestWeight:
    if config.lamd is None or config.mu is None or config.c is None:
        raise SpecParseError("--lamd, --mu and --c are all required", 0)
    return vm.HighestWeight(config.lamd, config.mu, config.c)


def _build_module(config: RunConfig) -> vm.TruncatedModule:
    return vm.build_verma(_require_hw(config), config.depth, config.charge)


def _cartan_check(module: vm.TruncatedModule) -> dict:
    """Verify d0/h0/C act diagonally with the graded eigenvalues on the
    shallow cells; exercised by the verma command as a live self-check."""
    checked = 0
    failures = []
    for (n, s), monos in sorted(module.cells.items()):
        if n > min(module.depth_bound, 2):
            continue
        d0, h0 = module.weight_of_cell(n, s)
        for mono in monos:
            v = Vec.basis(mono)
            if module.act(Gen("d", 0), v) != v.scaled(d0) \
                    or module.act(Gen("h", 0), v) != v.scaled(h0):
                failures.append({"cell": [n, s], "monomial": vm.mono_str(mono)})
            checked += 1
    return {"checked": checked, "failures": failures}


def _singular_section(module: vm.TruncatedModule, max_depth: int) -> list:
    return vm.singular_vectors_json(module.find_singular_vectors(max_depth))


def _cmd_verma(config: RunConfig) -> int:
    module = _build_module(config)
    if config.emit:
        with open(config.emit, "w", encoding="utf-8", newline="") as fh:
            vm.write_dims_csv(module, fh)
    sing_depth = config.singular_depth
    if sing_depth is None:
        sing_depth = max(module.depth_bound - 2, 0)
    cartan = _cartan_check(module)
    payload = {
        "command": "verma",
        "highest_weight": {"lamd": _fs(module.hw.lam_d), "mu": _fs(module.hw.mu),
                           "c": _fs(module.hw.c)},
        "depth_bound": module.depth_bound,
        "charge_bound": module.charge_bound,
        "basis_size": module.basis_size,
        "dims_csv": config.emit,
        "cartan_diagonal": cartan,
        "singular_vectors": (_singular_section(module, sing_depth)
                             if module.depth_bound >= 2 else []),
    }
    if not config.emit:
        payload["dims"] = [{"depth": n, "charge": s, "dim": dim}
                           for n, s, dim in vm.dims_rows(module)]
    _write_report(config, payload)
    return 0 if not cartan["failures"] else 1


def _cmd_singular(config: RunConfig) -> int:
    module = _build_module(config)
    sing_depth = config.singular_depth
    if sing_depth is None:
        sing_depth = max(module.depth_bound - 2, 0)
    payload = {
        "command": "singular",
        "highest_weight": {"lamd": _fs(module.hw.lam_d), "mu": _fs(module.hw.mu),
                           "c": _fs(module.hw.c)},
        "max_depth": sing_depth,
        "singular_vectors": _singular_section(module, sing_depth),
    }
    _write_report(config, payload)
    return 0


def _analysis_window(config: RunConfig) -> win.WindowedModule:
    """Shared input path: --module picks a catalog window, --lamd/--mu/--c a
    truncated highest-weight export."""
    if config.module:
        return win.from_catalog(parse_spec(config.module), config.window)
    module = _build_module(config)
    need = max(abs(config.i) + 1, 3)
    return win.from_verma(module, pad_top=need, max_degree=need)


def _cmd_injectivity(config: RunConfig) -> int:
    wm = _analysis_window(config)
    report = win.stacked_shift_injectivity(wm, config.k, config.i)
    payload = {"command": "injectivity", "module": wm.description,
               **win.injectivity_json(report)}
    _write_report(config, payload)
    return 0


def _cmd_witness(config: RunConfig) -> int:
    wm = _analysis_window(config)
    payload = {"command": "witness", "module": wm.description,
               **win.witness_json(win.submodule_witness(wm))}
    extremal: Dict[str, object] = {}
    for direction in ("highest", "lowest"):
        try:
            vecs = win.find_extremal_vectors(wm, direction)
        except AvwError as exc:
            extremal[direction] = {"not_searchable": str(exc)}
            continue
        extremal[direction] = [
            {"offset": v.offset,
             "vector": {lab.name: _fs(cf) for lab, cf in zip(v.labels, v.coefficients) if cf}}
            for v in vecs]
    payload["extremal_vectors"] = extremal
    _write_report(config, payload)
    return 0


def _cmd_match(config: RunConfig) -> int:
    wm = _analysis_window(config)
    if config.scramble_seed is not None:
        wm = win.scramble_window(wm, config.scramble_seed)
    payload = {"command": "match", "module": wm.description,
               "scramble_seed": config.scramble_seed,
               **win.match_json(win.catalog_match(wm))}
    _write_report(config, payload)
    return 0


def _cmd_support(config: RunConfig) -> int:
    wm = _analysis_window(config)
    payload = {"command": "support", "module": wm.description,
               "window": list(wm.window), **win.support_json(wm)}
    _write_report(config, payload)
    return 0


_COMMANDS = {
    "jacobi": _cmd_jacobi,
    "module-check": _cmd_module_check,
    "catalog": _cmd_catalog,
    "simple": _cmd_simple,
    "structure": _cmd_structure,
    "loop-dims": _cmd_loop_dims,
    "verma": _cmd_verma,
    "singular": _cmd_singular,
    "injectivity": _cmd_injectivity,
    "witness": _cmd_witness,
    "match": _cmd_match,
    "support": _cmd_support,
}

# which library operations each command exercises (kept in sync by tests)
OPS_BY_COMMAND = {
    "jacobi": {"bracket", "degree", "jacobi_defect", "in_subalgebra"},
    "module-check": {"act", "module_defect", "parse_spec"},
    "catalog": {"from_catalog", "act", "sl2_irrep"},
    "simple": {"is_simple"},
    "structure": {"structure_report"},
    "loop-dims": {"from_catalog", "support"},
    "verma": {"build_verma", "weight_space_dim", "pbw_straighten",
              "find_singular_vectors", "verma_act"},
    "singular": {"build_verma", "find_singular_vectors", "pbw_straighten"},
    "injectivity": {"stacked_shift_injectivity", "from_catalog"},
    "witness": {"submodule_witness", "find_extremal_vectors", "from_catalog"},
    "match": {"catalog_match", "from_catalog"},
    "support": {"support", "from_catalog"},
}
ALL_OPS = {
    "bracket", "degree", "jacobi_defect", "in_subalgebra",
    "act", "sl2_irrep", "module_defect", "is_simple", "structure_report",
    "pbw_straighten", "build_verma", "weight_space_dim", "verma_act",
    "find_singular_vectors",
    "from_catalog", "stacked_shift_injectivity", "find_extremal_vectors", "support",
    "submodule_witness", "catalog_match",
    "parse_spec", "execute",
}
OPS_BY_COMMAND["jacobi"].add("execute")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="avw",
        description="Exact workbench for the affine-Virasoro algebra of type A1")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out", help="write the JSON report to this path")

    def add_module(p, required=True):
        p.add_argument("--module", required=required,
                       help="module spec, e.g. A:a=1/2,b=1/3 or loop:lambda=1,a=0,b=0")

    def add_window(p, default="-3..3"):
        p.add_argument("--window", type=_range_arg, default=_range_arg(default),
                       help=f"inclusive offset window lo..hi (default {default})")

    def add_hw(p):
        p.add_argument("--lamd", type=_rational_arg, help="d0-eigenvalue of the highest weight")
        p.add_argument("--mu", type=_rational_arg, help="h0-eigenvalue of the highest weight")
        p.add_argument("--c", type=_rational_arg, help="central eigenvalue")
        p.add_argument("--depth", type=int, default=4, help="depth bound N (default 4)")
        p.add_argument("--charge", type=int, default=None,
                       help="charge bound S (default N+4)")

    p = sub.add_parser("jacobi", help="sweep Jacobi/antisymmetry/grading/closure")
    p.add_argument("--algebra", default="L", choices=sorted(ALGEBRAS))
    p.add_argument("--range", dest="deg_range", type=_range_arg,
                   default=_range_arg("-3..3"), help="degree range lo..hi")
    add_common(p)

    p = sub.add_parser("module-check", help="exhaustive module-axiom defect sweep")
    add_module(p)
    p.add_argument("--deg-range", dest="deg_range", type=_range_arg,
                   default=_range_arg("-3..3"))
    p.add_argument("--label-range", dest="label_range", type=_range_arg,
                   default=_range_arg("-3..3"))
    add_common(p)

    p = sub.add_parser("catalog", help="materialize a module window as matrices")
    add_module(p)
    add_window(p)
    p.add_argument("--matrices", action="store_true", help="include all blocks")
    add_common(p)

    p = sub.add_parser("simple", help="simplicity verdict with the matched criterion")
    add_module(p)
    add_common(p)

    p = sub.add_parser("structure", help="distinguished submodule/quotient report")
    add_module(p)
    add_common(p)

    p = sub.add_parser("loop-dims", help="weight-space dimensions of a loop module")
    add_module(p)
    add_window(p, "-4..4")
    add_common(p)

    p = sub.add_parser("verma", help="build a truncated highest-weight module")
    add_hw(p)
    p.add_argument("--emit", help="write the depth,charge,dim CSV to this path")
    p.add_argument("--singular-depth", dest="singular_depth", type=int, default=None)
    add_common(p)

    p = sub.add_parser("singular", help="singular vectors of a truncation")
    add_hw(p)
    p.add_argument("--max-depth", dest="singular_depth", type=int, default=None)
    add_common(p)

    p = sub.add_parser("injectivity", help="kernel of the stacked degree-shift map")
    add_module(p, required=False)
    add_hw(p)
    add_window(p, "-4..4")
    p.add_argument("--k", type=int, default=0, help="source offset")
    p.add_argument("--i", type=int, default=1, help="nonzero shift")
    add_common(p)

    p = sub.add_parser("witness", help="search for finitely-supported submodules")
    add_module(p, required=False)
    add_hw(p)
    add_window(p)
    add_common(p)

    p = sub.add_parser("match", help="identify a window as a loop module")
    add_module(p, required=False)
    add_hw(p)
    add_window(p)
    p.add_argument("--scramble-seed", dest="scramble_seed", type=int, default=None,
                   help="disguise the basis with this seed before matching")
    add_common(p)

    p = sub.add_parser("support", help="weight labels of the nonzero slices")
    add_module(p, required=False)
    add_hw(p)
    add_window(p)
    add_common(p)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = {f for f in RunConfig.__dataclass_fields__}
    chosen = {k: v for k, v in vars(args).items() if k in fields and v is not None}
    return RunConfig(**chosen)


def execute(config: RunConfig) -> int:
    """Run one command; returns the exit code and writes its reports."""
    handler = _COMMANDS.get(config.command)
    if handler is None:
        print(f"unknown command {config.command!r}", file=sys.stderr)
        return 2
    try:
        return handler(config)
    except AvwError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


# flags whose values may start with '-' (ranges, rationals, negative ints);
# argparse would misread a separate "-5..5" token as an option
_DASH_VALUE_FLAGS = {"--range", "--deg-range", "--label-range", "--window",
                     "--lamd", "--mu", "--c", "--k", "--i"}


def _merge_dash_values(argv: List[str]) -> List[str]:
    out: List[str] = []
    skip = False
    for idx, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        if tok in _DASH_VALUE_FLAGS and idx + 1 < len(argv) \
                and argv[idx + 1].startswith("-"):
            out.append(f"{tok}={argv[idx + 1]}")
            skip = True
        else:
            out.append(tok)
    return out


def main(argv: Optional[List[str]] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(_merge_dash_values(list(argv)))
    return execute(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
