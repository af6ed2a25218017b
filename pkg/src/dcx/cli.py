"""Command-line surface: TOML input files, JSON reports, exit codes.

Three subcommands:

  dcx invariants --ring R --module M      numerical invariants of a module
  dcx theorem ID --ring R --C SPEC ...    one characterization checker
  dcx corpus run                          every checker over the bundled rings

Ring, module, and complex inputs are TOML files (formats below) or
built-in names.  A ring argument is either a path or the name of a
bundled ring; module and complex arguments are paths or
builtin:residue_field, builtin:canonical, builtin:free:<n>.

Reports are JSON on standard output with top-level keys command,
inputs, results, certificates, seed, version.  Input files are
identified by content hash, never by absolute path, and keys are
sorted, so a report is byte-identical across runs given the same
inputs, seed, and version.

Exit codes: 0 computed (a report concluding that hypotheses fail is
still a computation); 1 input or validation error; 2 an inconsistency
alarm, either a checker concluding INCONSISTENT or an internal
cross-check failure; 3 a computation budget was exhausted before any
conclusion.

Certificates serialize externally as {"kind": "Exact"},
{"kind": "Periodic", "start": s, "period": p} (a geometric tail
reports "ratio" instead of "period"), or {"kind": "UpToBound", "n": N}.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

import tomli

from . import __version__
from .algebra import Algebra, RingMat, monomial_quotient, tensor_algebra, trivial_extension
from .corpus import RING_NAMES, standard_modules, window_for
from .cplx import FreeComplex, complex_from_module
from .errors import (
    EngineInconsistency,
    ParseError,
    RankBudgetExceeded,
    ValidationError,
    WindowExceeded,
)
from .exact import GF, QQ
from .fgmod import (
    canonical_module,
    free_module,
    presented_module,
    residue_field_module,
)
from .resolve import DEFAULT_RANK_BUDGET
from .verdict import (
    INCONSISTENT,
    check_anni,
    check_auslander_char,
    check_bass_criterion,
    check_grade_cm,
    check_main_equiv,
    check_module_cor,
    check_tak,
    check_type_equiv,
    cut_regular,
    explore_question,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_ALARM = 2
EXIT_BUDGET = 3

DEFAULT_SEED = 0xDC0DE

# the base ring is Artinian throughout, so the usual window formula
# 2 * krull_dim + 4 collapses to a constant
DEFAULT_CLI_WINDOW = 4

_FAT_SPEC = {
    "kind": "monomial_quotient",
    "field": "Fp",
    "p": 101,
    "vars": ["x", "y"],
    "relations": ["x^2", "x*y", "y^2"],
}


def _mono(vars_, relations):
    return {
        "kind": "monomial_quotient",
        "field": "Fp",
        "p": 101,
        "vars": list(vars_),
        "relations": list(relations),
    }


RING_FILE_SPECS = {
    "pt": _mono([], []),
    "d2": _mono(["x"], ["x^2"]),
    "d3": _mono(["x"], ["x^3"]),
    "d4": _mono(["x"], ["x^4"]),
    "ci2": _mono(["x", "y"], ["x^2", "y^2"]),
    "fat": dict(_FAT_SPEC),
    "fat3": _mono(["x", "y", "z"],
                  ["x^2", "y^2", "z^2", "x*y", "x*z", "y*z"]),
    "prod": {"kind": "tensor", "left": dict(_FAT_SPEC),
             "right": dict(_FAT_SPEC)},
    "triv": {"kind": "trivial_extension", "module": "canonical",
             "base": dict(_FAT_SPEC)},
}


# -- TOML emission (writer kept tiny: strings, ints, flat lists, sub-tables) ------


def _toml_value(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, str):
        escaped = v.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    if isinstance(v, list):
        return "[" + ", ".join(_toml_value(x) for x in v) + "]"
    raise ValidationError(f"cannot serialize {type(v).__name__} to TOML")


def _emit_table(name, table, out):
    scalars = {k: v for k, v in table.items() if not isinstance(v, dict)}
    subs = {k: v for k, v in table.items() if isinstance(v, dict)}
    out.append(f"[{name}]")
    for k in scalars:
        out.append(f"{k} = {_toml_value(scalars[k])}")
    for k in subs:
        out.append("")
        _emit_table(f"{name}.{k}", subs[k], out)


def ring_spec_toml(spec):
    """Canonical TOML text for a ring description dictionary."""
    out = []
    _emit_table("ring", spec, out)
    return "\n".join(out) + "\n"


def write_corpus_files(directory):
    """Regenerate the bundled ring files; returns the paths written."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name in RING_NAMES:
        path = directory / f"{name}.toml"
        path.write_text(ring_spec_toml(RING_FILE_SPECS[name]))
        paths.append(path)
    return paths


# -- parsing ----------------------------------------------------------------------


def _toml_load(text, what):
    try:
        return tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        raise ParseError(f"{what} is not valid TOML: {exc}") from None


def _require_table(data, key, what):
    tbl = data.get(key)
    if not isinstance(tbl, dict):
        raise ParseError(f"{what} must contain a [{key}] table")
    return tbl


def _field_of(tbl):
    fld = tbl.get("field", "Fp")
    if fld == "Q":
        return QQ
    if fld == "Fp":
        p = tbl.get("p")
        if not isinstance(p, int) or isinstance(p, bool):
            raise ParseError('field "Fp" requires an integer key p')
        return GF(p)
    raise ParseError(f'unknown field {fld!r}; expected "Fp" or "Q"')


def _string_list(tbl, key, what):
    val = tbl.get(key, [])
    if not isinstance(val, list) or any(not isinstance(x, str) for x in val):
        raise ParseError(f"{what}.{key} must be a list of strings")
    return val


def _build_ring_table(tbl):
    kind = tbl.get("kind", "monomial_quotient")
    if kind == "monomial_quotient":
        field = _field_of(tbl)
        variables = _string_list(tbl, "vars", "ring")
        relations = _string_list(tbl, "relations", "ring")
        return monomial_quotient(field, variables, relations)
    if kind == "structure_constants":
        field = _field_of(tbl)
        table = tbl.get("table")
        if not isinstance(table, list):
            raise ParseError("structure_constants requires a table array")
        return Algebra(field, table, names=tbl.get("names"))
    if kind == "tensor":
        if "left" not in tbl or "right" not in tbl:
            raise ParseError("tensor ring requires [ring.left] and [ring.right]")
        return tensor_algebra(_build_ring_table(tbl["left"]),
                              _build_ring_table(tbl["right"]))
    if kind == "trivial_extension":
        if "base" not in tbl:
            raise ParseError("trivial_extension requires [ring.base]")
        mod = tbl.get("module", "canonical")
        if mod != "canonical":
            raise ParseError(
                f"trivial_extension supports module = \"canonical\", got {mod!r}"
            )
        base = _build_ring_table(tbl["base"])
        return trivial_extension(base, base.dual_regular_action())
    raise ParseError(f"unknown ring kind {kind!r}")


def parse_ring(text):
    data = _toml_load(text, "ring file")
    return _build_ring_table(_require_table(data, "ring", "ring file"))


def _builtin_module(name, alg):
    if name == "residue_field":
        return residue_field_module(alg)
    if name == "canonical":
        return canonical_module(alg)
    if name.startswith("free:"):
        try:
            n = int(name.split(":", 1)[1])
        except ValueError:
            raise ParseError(f"bad free-module rank in builtin {name!r}") from None
        if n < 0:
            raise ParseError("free-module rank must be nonnegative")
        return free_module(alg, n)
    raise ParseError(
        f"unknown builtin {name!r}; expected residue_field, canonical, "
        f"or free:<n>"
    )


def _build_module_table(tbl, alg):
    kind = tbl.get("kind")
    if kind == "builtin":
        name = tbl.get("name")
        if not isinstance(name, str):
            raise ParseError("builtin module requires a string name")
        return _builtin_module(name, alg)
    if kind == "presentation":
        gens = tbl.get("gens")
        if not isinstance(gens, int) or isinstance(gens, bool) or gens < 0:
            raise ParseError("presentation requires a nonnegative integer gens")
        matrix = tbl.get("matrix", [])
        if not isinstance(matrix, list):
            raise ParseError("presentation matrix must be an array of rows")
        if gens == 0:
            from .fgmod import zero_module

            return zero_module(alg)
        if not matrix:
            return free_module(alg, gens)
        if len(matrix) != gens:
            raise ParseError(
                f"presentation matrix has {len(matrix)} rows for {gens} "
                f"generators"
            )
        B = RingMat.from_entries(alg, matrix)
        module, _ = presented_module(alg, B)
        return module
    raise ParseError(f"unknown module kind {kind!r}")


def parse_module(text, alg):
    data = _toml_load(text, "module file")
    return _build_module_table(_require_table(data, "module", "module file"),
                               alg)


def _build_complex_table(tbl, alg):
    kind = tbl.get("kind")
    if kind == "shifted_module":
        shift = tbl.get("shift", 0)
        if not isinstance(shift, int) or isinstance(shift, bool):
            raise ParseError("shifted_module requires an integer shift")
        mod_tbl = tbl.get("module")
        if not isinstance(mod_tbl, dict):
            raise ParseError("shifted_module requires a [complex.module] table")
        M = _build_module_table(mod_tbl, alg)
        return complex_from_module(M).shift(shift)
    if kind == "free_complex":
        degrees = tbl.get("degrees")
        ranks = tbl.get("ranks")
        if not isinstance(degrees, list) or not isinstance(ranks, list):
            raise ParseError("free_complex requires degrees and ranks arrays")
        if len(degrees) != len(ranks) or not degrees:
            raise ParseError("degrees and ranks must be nonempty and aligned")
        for i, d in enumerate(degrees):
            if d != degrees[0] - i:
                raise ParseError("degrees must descend contiguously, top first")
        diffs = tbl.get("diffs", [])
        if len(diffs) != len(degrees) - 1:
            raise ParseError(
                f"free_complex needs {len(degrees) - 1} differentials, "
                f"got {len(diffs)}"
            )
        return FreeComplex.from_data(alg, {
            "lo": degrees[-1],
            "ranks": list(reversed(ranks)),
            "diffs": list(reversed(diffs)),
        })
    raise ParseError(f"unknown complex kind {kind!r}")


def parse_complex(text, alg):
    data = _toml_load(text, "complex file")
    if "complex" in data:
        return _build_complex_table(
            _require_table(data, "complex", "complex file"), alg
        )
    # a bare module file is a complex concentrated in degree zero
    if "module" in data:
        return _build_module_table(
            _require_table(data, "module", "complex file"), alg
        )
    raise ParseError("complex file must contain a [complex] or [module] table")


# -- input resolution and hashing --------------------------------------------------


def _sha256(text):
    return hashlib.sha256(text.encode()).hexdigest()


def corpus_ring_path(name):
    return Path(__file__).parent / "corpus_data" / f"{name}.toml"


def _load_ring(spec):
    """(algebra, input record) from a bundled name or a file path."""
    if spec in RING_NAMES:
        text = corpus_ring_path(spec).read_text()
    else:
        path = Path(spec)
        if not path.is_file():
            raise ParseError(
                f"ring {spec!r} is neither a bundled ring "
                f"({', '.join(RING_NAMES)}) nor a readable file"
            )
        text = path.read_text()
    return parse_ring(text), {"source": spec, "sha256": _sha256(text)}


def _load_object(spec, alg, parser):
    """(object, input record) from builtin:... or a file path."""
    if spec.startswith("builtin:"):
        obj = _builtin_module(spec.split(":", 1)[1], alg)
        return obj, {"source": spec, "sha256": _sha256(spec)}
    path = Path(spec)
    if not path.is_file():
        raise ParseError(f"{spec!r} is neither builtin:... nor a readable file")
    text = path.read_text()
    return parser(text, alg), {"source": spec, "sha256": _sha256(text)}


# -- report assembly ---------------------------------------------------------------


def external_certificate(cert):
    if cert.kind == "exact":
        return {"kind": "Exact"}
    if cert.kind == "periodic":
        out = {"kind": "Periodic"}
        for key in ("start", "period", "ratio"):
            if key in cert.params:
                out[key] = cert.params[key]
        return out
    return {"kind": "UpToBound", "n": cert.params["bound"]}


def _external_report(rep):
    return {
        "theorem": rep.theorem_id,
        "inputs": rep.inputs,
        "conditions": [
            {
                "name": n,
                "value": v,
                "certificate": None if c is None else external_certificate(c),
            }
            for n, v, c in rep.conditions
        ],
        "conclusion": rep.conclusion,
        "detail": rep.detail,
    }


def _print_report(command, inputs, results, certificates, seed):
    report = {
        "command": command,
        "inputs": inputs,
        "results": results,
        "certificates": certificates,
        "seed": seed,
        "version": __version__,
    }
    print(json.dumps(report, sort_keys=True, indent=2))


# -- subcommands -------------------------------------------------------------------


def _cmd_invariants(args):
    alg, ring_rec = _load_ring(args.ring)
    M, mod_rec = _load_object(args.module, alg, parse_module)
    results = {
        "ring_dim": alg.dim,
        "length": M.length,
        "min_gens": M.min_gens,
        "socle_dim": M.socle_dim,
        "ann_dim": M.ann_dim,
        "free": M.is_free,
    }
    if M.dim:
        results["depth"] = 0
        results["krull_dim"] = 0
        results["type"] = M.socle_dim
    _print_report(
        "invariants",
        {"ring": ring_rec, "module": mod_rec},
        results,
        [{"kind": "Exact"}],
        args.seed,
    )
    return EXIT_OK


_CHECKERS = {
    "anni": check_anni,
    "bass_criterion": check_bass_criterion,
    "type_equiv": check_type_equiv,
    "tak": check_tak,
    "module_cor": check_module_cor,
    "grade_cm": check_grade_cm,
    "main_equiv": check_main_equiv,
    "auslander_char": check_auslander_char,
    "cut_regular": cut_regular,
    "q_bass": explore_question,
    "q_amp": explore_question,
}

_NEEDS_X = {"grade_cm", "main_equiv"}
_NEEDS_M = {"tak", "cut_regular"}
_TAKES_POOL = {"type_equiv", "module_cor", "auslander_char", "q_amp"}


def _cmd_theorem(args):
    alg, ring_rec = _load_ring(args.ring)
    C, c_rec = _load_object(args.C, alg, parse_complex)
    inputs = {"ring": ring_rec, "C": c_rec}
    window = args.window if args.window is not None else DEFAULT_CLI_WINDOW
    kw = {"window": window, "rank_budget": args.rank_budget}
    tid = args.theorem_id
    call = [C]

    if tid in _NEEDS_X:
        if args.X is None:
            raise ParseError(f"theorem {tid} requires --X")
        X, x_rec = _load_object(args.X, alg, parse_complex)
        inputs["X"] = x_rec
        call.append(X)
    if tid in _NEEDS_M:
        if args.M is None:
            raise ParseError(f"theorem {tid} requires --M")
        M, m_rec = _load_object(args.M, alg, parse_module)
        inputs["M"] = m_rec
        call.append(M)
    if tid == "cut_regular":
        xs = [alg.element(s) for s in args.xs or []]
        inputs["xs"] = {"source": ",".join(args.xs or []),
                        "sha256": _sha256(",".join(args.xs or []))}
        call.append(xs)
    if tid in _TAKES_POOL:
        pool = []
        for i, spec in enumerate(args.pool or []):
            P, p_rec = _load_object(spec, alg, parse_module)
            inputs[f"pool[{i}]"] = p_rec
            pool.append((spec, P))
        if tid == "q_amp":
            kw["pool"] = pool
        else:
            call.append(pool)

    checker = _CHECKERS[tid]
    if tid in ("q_bass", "q_amp"):
        rep = checker(tid, *call, **kw)
    else:
        rep = checker(*call, **kw)

    ext = _external_report(rep)
    _print_report(
        f"theorem {tid}",
        inputs,
        ext,
        [external_certificate(rep.certificate())],
        args.seed,
    )
    return EXIT_ALARM if rep.conclusion == INCONSISTENT else EXIT_OK


def _corpus_cell_reports(alg, window, rank_budget, C):
    """All checker reports for one (ring, coefficient) cell."""
    kw = {"window": window, "rank_budget": rank_budget}
    k = residue_field_module(alg)
    C0 = C
    xs = []
    if alg.local.max_ideal.cols:
        xs = [alg.local.max_ideal.col(0)]
    return {
        "anni": check_anni(C, **kw),
        "bass_criterion": check_bass_criterion(C, **kw),
        "type_equiv": check_type_equiv(C, **kw),
        "tak": check_tak(C, C0, **kw),
        "module_cor": check_module_cor(C, **kw),
        "grade_cm": check_grade_cm(C, C0, **kw),
        "main_equiv": check_main_equiv(C, C0, **kw),
        "auslander_char": check_auslander_char(C, **kw),
        "cut_regular": cut_regular(C, C0, xs, **kw),
        "q_bass": explore_question("q_bass", C, **kw),
        "q_amp": explore_question("q_amp", C, pool=[("k", k)], **kw),
    }


def _cmd_corpus(args):
    if args.corpus_action != "run":
        raise ParseError(f"unknown corpus action {args.corpus_action!r}")
    results = {}
    certificates = []
    inputs = {}
    inconsistent = 0
    for name in RING_NAMES:
        text = corpus_ring_path(name).read_text()
        alg = parse_ring(text)
        inputs[name] = {"source": name, "sha256": _sha256(text)}
        window = args.window if args.window is not None else window_for(name)
        mods = standard_modules(alg, name)
        cells = {"ring": mods["ring"], "canonical": mods["canonical"]}
        if "mixed_left" in mods:
            cells["mixed_left"] = mods["mixed_left"]
        ring_results = {}
        for label in sorted(cells):
            reports = _corpus_cell_reports(
                alg, window, args.rank_budget, cells[label]
            )
            cell = {}
            for tid in sorted(reports):
                rep = reports[tid]
                ext = _external_report(rep)
                cert = external_certificate(rep.certificate())
                cell[tid] = {
                    "conclusion": rep.conclusion,
                    "certificate": cert,
                    "conditions": ext["conditions"],
                }
                certificates.append(cert)
                if rep.conclusion == INCONSISTENT:
                    inconsistent += 1
            ring_results[label] = cell
        results[name] = ring_results
    results["summary"] = {
        "rings": len(RING_NAMES),
        "cells": sum(
            len(v) for rk, v in results.items() if rk != "summary"
        ),
        "inconsistent": inconsistent,
    }
    _print_report("corpus run", inputs, results, certificates, args.seed)
    return EXIT_ALARM if inconsistent else EXIT_OK


# -- entry point -------------------------------------------------------------------


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="dcx",
        description="Exact homological invariants of Artinian local algebras.",
    )
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--window", type=int, default=None,
                       help="homological degrees to certify (default 4)")
        p.add_argument("--rank-budget", type=int, default=DEFAULT_RANK_BUDGET,
                       help="total free-rank budget for resolutions")
        p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED,
                       help="recorded in the report for reproducibility")

    inv = sub.add_parser("invariants", help="numerical invariants of a module")
    inv.add_argument("--ring", required=True)
    inv.add_argument("--module", required=True)
    common(inv)

    thm = sub.add_parser("theorem", help="run one characterization checker")
    thm.add_argument("theorem_id", choices=sorted(_CHECKERS))
    thm.add_argument("--ring", required=True)
    thm.add_argument("--C", required=True,
                     help="coefficient module or complex")
    thm.add_argument("--X", default=None, help="witness complex")
    thm.add_argument("--M", default=None, help="witness module")
    thm.add_argument("--pool", action="append", default=None,
                     help="extra pool module (repeatable)")
    thm.add_argument("--xs", action="append", default=None,
                     help="ring element for cut_regular (repeatable)")
    common(thm)

    cor = sub.add_parser("corpus", help="operations on the bundled rings")
    cor.add_argument("corpus_action", choices=["run"])
    common(cor)
    return ap


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "invariants":
            return _cmd_invariants(args)
        if args.command == "theorem":
            return _cmd_theorem(args)
        return _cmd_corpus(args)
    except (WindowExceeded, RankBudgetExceeded) as exc:
        print(json.dumps({"error": str(exc), "exit": EXIT_BUDGET},
                         sort_keys=True, indent=2), file=sys.stderr)
        return EXIT_BUDGET
    except EngineInconsistency as exc:
        print(json.dumps({"error": str(exc), "exit": EXIT_ALARM},
                         sort_keys=True, indent=2), file=sys.stderr)
        return EXIT_ALARM
    except ValidationError as exc:
        print(json.dumps({"error": str(exc), "exit": EXIT_INPUT},
                         sort_keys=True, indent=2), file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
