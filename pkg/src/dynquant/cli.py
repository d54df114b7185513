"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 unsupported combination of type, mode and command.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .linalg import RationalMatrix
from .reports import CheckReport
from .repn import Representation, parse_rep_spec, split_top_level
from .rootdata import NotReduced, RootDatum, UnsupportedType, WeylWord, build_root_datum
from .scalars import CLASSICAL, MODES, QUANTUM

log = logging.getLogger("dynquant")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_UNSUPPORTED = 0, 1, 2, 3
FORMATS = ("json", "plain", "latex")
COMMANDS = ("fusion", "fusion-oracle", "rmatrix", "dybe-check", "cocycle-check", "weyl", "zhelobenko",
            "ev-compare", "projector", "hc", "presentation", "selftest")
CONFIG_KEYS = ("type", "mode", "reps", "rep", "word", "format", "height", "variant", "criteria", "out")


class ConfigError(ValueError):
    pass


class Unsupported(Exception):
    pass


def conventions(datum: RootDatum, mode: str) -> dict:
    out = {
        "root_datum": datum.name,
        "mode": mode,
        "weights": "fundamental-weight coordinates; alpha_i is column i of the Cartan matrix",
        "tensor_basis": "lexicographic, first factor major",
        "matrices": "act on column vectors; entries keyed 'row,col'",
        "dot_action": "w·λ = w(λ+ρ) - ρ",
        "dynamical_R": "flip variant τ ∘ J21^-1 σ J (equal to σ^-1 J21^-1 σ J in classical mode)",
    }
    if mode == QUANTUM:
        out.update({
            "coproduct": "Δ(E)=E⊗1+K⊗E, Δ(F)=F⊗K^-1+1⊗F, Δ(K)=K⊗K",
            "D": datum.D,
            "q_variables": "v = q^(1/D), u_i = q^(λ_i)",
            "quantum_integer": "[n] = (q^n - q^-n)/(q - q^-1)",
            "braiding": "σ = Θ ∘ Π ∘ τ, Π = q^-(wt, wt)",
        })
    else:
        out.update({"coproduct": "Δ(x)=x⊗1+1⊗x", "D": datum.D})
    return out


# configuration

def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dynquant", description="Exact dynamical quantum group computations.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--type", dest="type", help="root datum type: A1, A2, B2, G2, An")
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--reps", help="comma-separated representation specs, e.g. 'irrep(2),irrep(3)'")
    p.add_argument("--rep", help="a single representation spec, e.g. 'vector'")
    p.add_argument("--word", help="Weyl group word, e.g. '1' or '121'")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--height", type=int, help="Verma truncation height override")
    p.add_argument("--variant", choices=("definition", "flip"), help="dynamical R-matrix variant")
    p.add_argument("--criteria", help="selftest: comma-separated criterion numbers")
    p.add_argument("--config", help="TOML or JSON file with the same keys; flags win")
    p.add_argument("--out", help="write the primary output to this file")
    return p


def _load_config(path: str) -> dict:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    try:
        if path.endswith(".json"):
            data = json.loads(raw.decode("utf-8"))
        else:
            if sys.version_info >= (3, 11):
                import tomllib
            else:
                import tomli as tomllib
            data = tomllib.loads(raw.decode("utf-8"))
    except ValueError as exc:
        raise ConfigError(f"cannot parse config {path!r}: {exc}") from exc
    unknown = set(data) - set(CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return data


def resolve_config(args: argparse.Namespace) -> dict:
    cfg = {"type": "A1", "mode": CLASSICAL, "format": "json"}
    if args.config:
        cfg.update(_load_config(args.config))
    for key in CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    cfg["command"] = args.command
    if cfg["mode"] not in MODES:
        raise ConfigError(f"unknown mode {cfg['mode']!r}")
    if cfg["format"] not in FORMATS:
        raise ConfigError(f"unknown format {cfg['format']!r}")
    return cfg


def _datum(cfg: dict) -> RootDatum:
    return build_root_datum(str(cfg["type"]))


def _reps(cfg: dict, datum: RootDatum, count: Optional[int] = None) -> List[Representation]:
    text = cfg.get("reps")
    if text is None and cfg.get("rep") is not None:
        text = cfg["rep"]
    if text is None:
        raise ConfigError("--reps is required")
    specs = text if isinstance(text, list) else split_top_level(str(text))
    if count is not None and len(specs) != count:
        raise ConfigError(f"expected {count} representations, got {len(specs)}")
    try:
        return [parse_rep_spec(s, datum, cfg["mode"]) for s in specs]
    except UnsupportedType:
        raise
    except (ValueError, KeyError) as exc:
        raise ConfigError(str(exc)) from exc


def _rep(cfg: dict, datum: RootDatum) -> Representation:
    if cfg.get("rep") is None and cfg.get("reps") is None:
        raise ConfigError("--rep is required")
    return _reps({**cfg, "reps": cfg.get("rep", cfg.get("reps"))}, datum, 1)[0]


def _word(cfg: dict, datum: RootDatum) -> WeylWord:
    text = str(cfg.get("word", "1"))
    try:
        w = WeylWord.parse(text)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if any(not 1 <= i <= datum.rank for i in w.letters):
        raise ConfigError(f"word {text!r} uses letters outside 1..{datum.rank}")
    return w


# commands: each returns (payload, report or None)

Payload = Tuple[dict, Optional[CheckReport]]


def _matrix(M: RationalMatrix, style: str) -> dict:
    return M.to_json(style)


def cmd_fusion(cfg: dict, style: str) -> Payload:
    from .fusion import check_fusion_structure, fusion_matrix
    datum = _datum(cfg)
    V, W = _reps(cfg, datum, 2)
    J = fusion_matrix(V, W)
    return {"reps": [V.name, W.name], "matrix": _matrix(J, style)}, check_fusion_structure(J, V, W)


def cmd_fusion_oracle(cfg: dict, style: str) -> Payload:
    from .fusion import conjugate_by_swap, fusion_matrix, fusion_via_intertwiners
    datum = _datum(cfg)
    V, W = _reps(cfg, datum, 2)
    J = fusion_matrix(V, W)
    EV = fusion_via_intertwiners(W, V)
    report = CheckReport(f"fusion oracle ({V.name}, {W.name})")
    report.compare("J_{V,W} = τ J^EV_{W,V} τ", J, conjugate_by_swap(EV, V, W))
    return {"reps": [V.name, W.name], "matrix": _matrix(J, style),
            "oracle_matrix_WV": _matrix(EV, style)}, report


def cmd_rmatrix(cfg: dict, style: str) -> Payload:
    from .rmatrix import dynamical_R
    datum = _datum(cfg)
    V, W = _reps(cfg, datum, 2)
    variant = cfg.get("variant", "flip")
    R = dynamical_R(V, W, variant=variant)
    return {"reps": [V.name, W.name], "variant": variant, "matrix": _matrix(R, style)}, None


def cmd_dybe(cfg: dict, style: str) -> Payload:
    from .rmatrix import dybe_check
    datum = _datum(cfg)
    reps = _reps(cfg, datum, 3)
    report = dybe_check(*reps, variant=cfg.get("variant", "flip"))
    return {"reps": [R.name for R in reps]}, report


def cmd_cocycle(cfg: dict, style: str) -> Payload:
    from .fusion import shifted_cocycle_check
    datum = _datum(cfg)
    reps = _reps(cfg, datum, 3)
    return {"reps": [R.name for R in reps]}, shifted_cocycle_check(*reps)


def _require_reduced(datum: RootDatum, w: WeylWord) -> None:
    if not datum.is_reduced(w):
        raise ConfigError(f"word {w} is not reduced")


def cmd_weyl(cfg: dict, style: str) -> Payload:
    from .weyl import dynamical_weyl_A, weight_map_check
    datum = _datum(cfg)
    V = _rep(cfg, datum)
    w = _word(cfg, datum)
    _require_reduced(datum, w)
    A = dynamical_weyl_A(w, V)
    report = CheckReport(f"dynamical Weyl matrix {w} on {V.name}")
    report.add("maps V[μ] into V[w(μ)]", weight_map_check(A))
    return {"rep": V.name, "word": str(w), "matrix": _matrix(A.matrix, style)}, report


def _vector_json(V: Representation, vec: dict, style: str) -> Dict[str, str]:
    out = {}
    for (v, word), x in sorted(vec.items()):
        f = "".join(f"F{j + 1}" for j in word) or "1"
        out[f"{V.labels[v]} ⊗ {f}x"] = x.format(style)
    return out


def cmd_zhelobenko(cfg: dict, style: str) -> Payload:
    from .weyl import hw_basis, is_highest_weight, zhelobenko_braid_check, zhelobenko_word
    datum = _datum(cfg)
    V = _rep(cfg, datum)
    w = _word(cfg, datum)
    report = CheckReport(f"Zhelobenko operator {w} on {V.name}")
    images = []
    for v, lift in enumerate(hw_basis(V)):
        img = zhelobenko_word(w, V, lift)
        report.add(f"image of the lift of {V.labels[v]} is highest weight", is_highest_weight(V, img))
        images.append({"vector": V.labels[v], "lift": _vector_json(V, lift, style),
                       "image": _vector_json(V, img, style)})
    if datum.rank >= 2 and V.mode == CLASSICAL:
        report.merge(zhelobenko_braid_check(V))
    return {"rep": V.name, "word": str(w), "images": images}, report


def cmd_ev_compare(cfg: dict, style: str) -> Payload:
    from .weyl import ev_compare, ev_factor
    datum = _datum(cfg)
    V = _rep(cfg, datum)
    w = _word(cfg, datum)
    _require_reduced(datum, w)
    A_ev, report = ev_compare(w, V)
    return {"rep": V.name, "word": str(w), "factor": _matrix(ev_factor(w, V), style),
            "matrix": _matrix(A_ev, style)}, report


def cmd_projector(cfg: dict, style: str) -> Payload:
    from .verma import required_height, truncated_verma, verify_projector
    datum = _datum(cfg)
    V = _rep(cfg, datum)
    height = int(cfg.get("height") or max(4, required_height(V)))
    rep = verify_projector(V, truncated_verma(datum, V.mode, height))
    report = CheckReport(f"extremal projector on {V.name} ⊗ M, height {height}")
    for name, ok, detail in rep.checks:
        report.add(name, ok, detail)
    return {"rep": V.name, "height": height, "method": rep.method}, report


def cmd_hc(cfg: dict, style: str) -> Payload:
    from .verma import NotCentral, harish_chandra, sl2_casimir
    datum = _datum(cfg)
    if datum.name != "A1" or cfg["mode"] != CLASSICAL:
        raise Unsupported("hc is implemented for the classical sl2 Casimir")
    F = datum.field(CLASSICAL)
    height = int(cfg.get("height") or 4)
    report = CheckReport("Harish-Chandra image of the sl2 Casimir")
    try:
        hc = harish_chandra(sl2_casimir(F), datum, CLASSICAL, height)
    except NotCentral as exc:
        report.add(f"C acts by one scalar on all basis vectors up to height {height}", False, str(exc))
        return {"element": "C = ef + fe + h^2/2", "hc": None}, report
    report.add(f"C acts by one scalar on all basis vectors up to height {height}", True)
    report.add("invariant under λ -> -λ-2", datum.dot_substitute(WeylWord((1,)), hc) == hc)
    return {"element": "C = ef + fe + h^2/2", "hc": hc.format(style)}, report


def cmd_presentation(cfg: dict, style: str) -> Payload:
    from .bialgebroid import emit_presentation, presentation_report
    datum = _datum(cfg)
    reps = _reps(cfg, datum)
    pres = emit_presentation(reps)
    return {"presentation": pres.to_json(style)}, presentation_report(pres, reps)


def cmd_selftest(cfg: dict, style: str) -> Payload:
    from .acceptance import run_all
    numbers = None
    if cfg.get("criteria"):
        try:
            numbers = [int(x) for x in str(cfg["criteria"]).split(",")]
        except ValueError as exc:
            raise ConfigError(f"bad criteria list {cfg['criteria']!r}") from exc
    results = run_all(numbers, echo=lambda line: log.info(line))
    report = CheckReport("acceptance suite")
    for r in results:
        report.add(r.line(), r.ok, "; ".join(f"{c.name}: {c.detail}" for c in r.cases if not c.ok))
    return {"criteria": [r.to_json() for r in results]}, report


HANDLERS: Dict[str, Callable[[dict, str], Payload]] = {
    "fusion": cmd_fusion, "fusion-oracle": cmd_fusion_oracle, "rmatrix": cmd_rmatrix, "dybe-check": cmd_dybe,
    "cocycle-check": cmd_cocycle, "weyl": cmd_weyl, "zhelobenko": cmd_zhelobenko, "ev-compare": cmd_ev_compare,
    "projector": cmd_projector, "hc": cmd_hc, "presentation": cmd_presentation, "selftest": cmd_selftest,
}


# rendering

def _render_text(payload: dict) -> str:
    lines = []
    for key, value in payload.items():
        if isinstance(value, dict) and "entries" in value and "rows" in value:
            lines.append(f"{key}:")
            for pos, text in value["entries"].items():
                i, j = (int(x) for x in pos.split(","))
                lines.append(f"  [{value['rows'][i]} <- {value['cols'][j]}] {text}")
        elif key == "report" and value:
            lines.append(f"{value['title']}: {'PASS' if value['ok'] else 'FAIL'}")
            for c in value["checks"]:
                lines.append(f"  {'ok  ' if c['ok'] else 'FAIL'} {c['check']}" + (f": {c['detail']}" if c["detail"] else ""))
        elif key == "conventions":
            lines.append("conventions: " + "; ".join(f"{k}={v}" for k, v in value.items()))
        else:
            lines.append(f"{key}: {json.dumps(value, sort_keys=True, ensure_ascii=False)}")
    return "\n".join(lines) + "\n"


def run(argv: Sequence[str]) -> Tuple[int, str]:
    """Run one job; returns (exit status, primary output text)."""
    try:
        args = _parser().parse_args(list(argv))
    except SystemExit as exc:
        return (EXIT_OK if exc.code == 0 else EXIT_CONFIG), ""
    try:
        cfg = resolve_config(args)
        style = "plain" if cfg["format"] == "json" else cfg["format"]
        datum = _datum(cfg)
        payload, report = HANDLERS[cfg["command"]](cfg, style)
    except ConfigError as exc:
        return EXIT_CONFIG, _error_output("config", str(exc))
    except (UnsupportedType, Unsupported, NotImplementedError) as exc:
        return EXIT_UNSUPPORTED, _error_output("unsupported", str(exc))
    except NotReduced as exc:
        return EXIT_CONFIG, _error_output("config", str(exc))
    except ValueError as exc:
        return EXIT_CONFIG, _error_output("config", str(exc))
    out = {"command": cfg["command"], "conventions": conventions(datum, cfg["mode"])}
    out.update(payload)
    out["report"] = report.to_json() if report is not None else None
    code = EXIT_OK if report is None or report.ok else EXIT_FAIL
    if cfg["format"] == "json":
        text = json.dumps(out, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    else:
        text = _render_text(out)
    if cfg.get("out"):
        with open(cfg["out"], "w", encoding="utf-8") as fh:
            fh.write(text)
        return code, ""
    return code, text


def _error_output(kind: str, message: str) -> str:
    return json.dumps({"error": kind, "message": message}, sort_keys=True, ensure_ascii=False) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    level = os.environ.get("DYNQUANT_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(message)s", stream=sys.stderr)
    code, text = run(sys.argv[1:] if argv is None else argv)
    if text:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
