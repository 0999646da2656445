"""Command-line front end: JSON map descriptions in, JSON reports out.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import selftest
from .exceptions import BosKernelError, NotSymplectic
from .linspace import DEFAULT_TOL, RealLinearMap, omega_residual
from .metaplectic import (
    ANTISYMPLECTIC,
    SYMPLECTIC,
    anti_kernel,
    coherent_element_closed,
    coherent_element_truncated,
    coherent_tail_bound,
    metaplectic_kernel,
    pack,
    shale_constant,
    verify_anti_intertwine,
    verify_intertwine,
)
from .symalg import MAX_TRUNCATION

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

# closed form vs truncated pairing is accepted below this floor even when the tail bound is smaller
ELEMENT_FLOOR = 1e-8


class InputError(Exception):
    pass


@dataclass
class WorkspaceConfig:
    dimension: int | None
    truncation: int
    tolerance: float = DEFAULT_TOL

    def __post_init__(self):
        if self.dimension is not None and self.dimension < 1:
            raise InputError("dimension must be a positive integer")
        if not 1 <= self.truncation <= MAX_TRUNCATION:
            raise InputError(f"truncation must be in [1, {MAX_TRUNCATION}]")
        if not self.tolerance > 0:
            raise InputError("tolerance must be positive")


@dataclass
class MapSpec:
    g: RealLinearMap
    kind: str
    extra: dict


# -- JSON helpers ------------------------------------------------------------


def encode_complex(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def decode_complex(obj) -> complex:
    if isinstance(obj, dict):
        try:
            return complex(float(obj["re"]), float(obj.get("im", 0.0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad complex number {obj!r}") from exc
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        return complex(obj)
    raise InputError(f"bad complex number {obj!r}")


def encode_matrix(M) -> list:
    return [[encode_complex(z) for z in row] for row in np.asarray(M)]


def decode_matrix(rows, name: str) -> np.ndarray:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputError(f"{name} must be a non-empty list of rows")
    M = np.array([[decode_complex(z) for z in row] for row in rows], dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InputError(f"{name} must be square, got shape {M.shape}")
    return M


def decode_vector(items, name: str, d: int) -> np.ndarray:
    if not isinstance(items, list):
        raise InputError(f"{name} must be a list")
    v = np.array([decode_complex(z) for z in items], dtype=complex)
    if v.shape != (d,):
        raise InputError(f"{name} must have {d} entries")
    return v


def index_key(alpha_beta, d: int) -> str:
    ab = [int(a) for a in alpha_beta]
    return ",".join(map(str, ab[:d])) + ";" + ",".join(map(str, ab[d:]))


def parse_map_spec(doc, cfg: WorkspaceConfig) -> MapSpec:
    if not isinstance(doc, dict):
        raise InputError("input must be a JSON object")
    for key in ("C", "A"):
        if key not in doc:
            raise InputError(f"missing field {key!r}")
    C = decode_matrix(doc["C"], "C")
    A = decode_matrix(doc["A"], "A")
    if C.shape != A.shape:
        raise InputError("C and A must have the same shape")
    if cfg.dimension is not None and C.shape[0] != cfg.dimension:
        raise InputError(f"map has dimension {C.shape[0]}, --dim says {cfg.dimension}")
    kind = doc.get("kind", SYMPLECTIC)
    if kind not in (SYMPLECTIC, ANTISYMPLECTIC):
        raise InputError(f"kind must be {SYMPLECTIC!r} or {ANTISYMPLECTIC!r}")
    return MapSpec(RealLinearMap(C, A), kind, doc)


# -- commands ----------------------------------------------------------------


def cmd_check(spec: MapSpec, cfg: WorkspaceConfig) -> tuple[dict, int]:
    g = spec.g
    sign = +1 if spec.kind == SYMPLECTIC else -1
    report = {
        "command": "check",
        "kind": spec.kind,
        "dimension": g.dim,
        "tolerance": cfg.tolerance,
        "truncation": cfg.truncation,
        "omega_residual": omega_residual(g, sign),
    }
    try:
        p = pack(g, spec.kind, cfg.tolerance)
    except (NotSymplectic, BosKernelError) as exc:
        report["ok"] = False
        report["error"] = str(exc)
        return report, EXIT_FAIL
    report.update(
        {
            "Z_g": encode_matrix(p.Z_g.M),
            "symmetry_residual": p.Z_g.symmetry_residual(),
            "spectral_norm": p.Z_g.norm(),
            "identity_residuals": p.identity_residuals,
            "ok": True,
        }
    )
    return report, EXIT_OK


def _packed(spec: MapSpec, cfg: WorkspaceConfig, report: dict):
    try:
        return pack(spec.g, spec.kind, cfg.tolerance)
    except BosKernelError as exc:
        report["ok"] = False
        report["error"] = str(exc)
        return None


def cmd_kernel(spec: MapSpec, cfg: WorkspaceConfig) -> tuple[dict, int]:
    report = {
        "command": "kernel",
        "kind": spec.kind,
        "dimension": spec.g.dim,
        "tolerance": cfg.tolerance,
        "truncation": cfg.truncation,
    }
    p = _packed(spec, cfg, report)
    if p is None:
        return report, EXIT_FAIL
    N = cfg.truncation
    if spec.kind == SYMPLECTIC:
        u = metaplectic_kernel(p, N)
        residual = verify_intertwine(p, u)
        report["shale_constant"] = shale_constant(p)
    else:
        u = anti_kernel(p, N)
        residual = verify_anti_intertwine(p, u)
        report["anti_shale_constant"] = shale_constant(p)
    report["intertwine_residual"] = residual
    report["entries"] = {
        index_key(ab, p.d): encode_complex(val)
        for ab, val in zip(u.table.basis.exps, u.table.values)
    }
    report["ok"] = residual <= cfg.tolerance
    return report, EXIT_OK if report["ok"] else EXIT_FAIL


def cmd_element(spec: MapSpec, cfg: WorkspaceConfig) -> tuple[dict, int]:
    d = spec.g.dim
    x = decode_vector(spec.extra.get("x", [0] * d), "x", d)
    y = decode_vector(spec.extra.get("y", [0] * d), "y", d)
    report = {
        "command": "element",
        "kind": spec.kind,
        "dimension": d,
        "tolerance": cfg.tolerance,
        "truncation": cfg.truncation,
        "x": [encode_complex(z) for z in x],
        "y": [encode_complex(z) for z in y],
    }
    if spec.kind != SYMPLECTIC:
        raise InputError("element needs a symplectic map")
    p = _packed(spec, cfg, report)
    if p is None:
        return report, EXIT_FAIL
    closed = coherent_element_closed(p, x, y)
    trunc = coherent_element_truncated(p, x, y, cfg.truncation)
    diff = abs(closed - trunc)
    tail = coherent_tail_bound(x, y, cfg.truncation)
    report.update(
        {
            "closed_form": encode_complex(closed),
            "truncated_pairing": encode_complex(trunc),
            "abs_difference": diff,
            "tail_bound": tail,
            "ok": diff <= max(ELEMENT_FLOOR, tail),
        }
    )
    return report, EXIT_OK if report["ok"] else EXIT_FAIL


def cmd_selftest(cfg: WorkspaceConfig, seed: int, force_fail: bool) -> tuple[dict, int]:
    d = cfg.dimension or 1
    results = selftest.run(d, cfg.truncation, seed, cfg.tolerance, force_fail=force_fail)
    ok = all(r["pass"] for r in results)
    report = {
        "command": "selftest",
        "dimension": d,
        "truncation": cfg.truncation,
        "tolerance": cfg.tolerance,
        "seed": seed,
        "force_fail": force_fail,
        "invariants": results,
        "failed": [r["name"] for r in results if not r["pass"]],
        "ok": ok,
    }
    return report, EXIT_OK if ok else EXIT_FAIL


# -- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim", type=int, default=None, help="dimension d of V")
    common.add_argument("--trunc", type=int, default=8, help="truncation degree N (<= 30)")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="verification tolerance")
    common.add_argument("--seed", type=int, default=1, help="seed for selftest")
    common.add_argument("--input", default=None, help="input JSON file (default: stdin)")
    common.add_argument("--output", default=None, help="output JSON file (default: stdout)")

    parser = argparse.ArgumentParser(prog="boskernel", description=__doc__, parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="check (anti)symplecticity and Z_g")
    sub.add_parser("kernel", parents=[common], help="metaplectic kernel table")
    sub.add_parser("element", parents=[common], help="coherent-state matrix element")
    st = sub.add_parser("selftest", parents=[common], help="run the invariant suite")
    st.add_argument("--force-fail", action="store_true", help="perturb Z symmetry (negative control)")
    return parser


def _read_input(path):
    try:
        text = open(path).read() if path else sys.stdin.read()
    except OSError as exc:
        raise InputError(str(exc)) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc


def _write_output(report: dict, path) -> None:
    text = json.dumps(report, indent=2, sort_keys=True, default=_json_default)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _json_default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = WorkspaceConfig(args.dim, args.trunc, args.tol)
        if args.command == "selftest":
            report, code = cmd_selftest(cfg, args.seed, args.force_fail)
        else:
            spec = parse_map_spec(_read_input(args.input), cfg)
            handler = {"check": cmd_check, "kernel": cmd_kernel, "element": cmd_element}
            report, code = handler[args.command](spec, cfg)
    except InputError as exc:
        _write_output({"command": args.command, "ok": False, "input_error": str(exc)}, args.output)
        return EXIT_INPUT
    _write_output(report, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
