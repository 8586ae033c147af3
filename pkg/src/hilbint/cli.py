"""Command line front end.

Subcommands print JSON (or one line per check for ``verify``) on stdout.
Exit codes: 0 success, 1 verification failure, 2 input error, 3 internal
invariant breach.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import checks
from . import integral_ops as ops
from .exact_linalg import SingularMatrixError, det, format_rational
from .fock import FockState, FrobeniusModel
from .symfunc import IntegralityError, monomial_gram

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3

CEILING_ENV = "HILBINT_MAX_N"
DEFAULT_CEILING = 12


class InputError(ValueError):
    """Bad user input: unparsable file, invalid surface, bound over the ceiling."""


@dataclass(frozen=True)
class SurfaceSpec:
    name: str
    gram: tuple[tuple[int, ...], ...]
    exceptional_slot: int | None = None

    @property
    def mid_rank(self) -> int:
        return len(self.gram)

    def model(self) -> FrobeniusModel:
        return FrobeniusModel(self.name, self.gram)

    def to_json(self) -> dict:
        data = {"name": self.name, "mid_rank": self.mid_rank, "gram": [list(r) for r in self.gram]}
        if self.exceptional_slot is not None:
            data["exceptional_slot"] = self.exceptional_slot
        return data


PRESET_SURFACES = {
    "P2": SurfaceSpec("P2", ((1,),)),
    "P1xP1": SurfaceSpec("P1xP1", ((0, 1), (1, 0))),
    "P2-blown-up": SurfaceSpec("P2-blown-up", ((1, 0), (0, -1)), 2),
}


def _as_int(x) -> int:
    if isinstance(x, bool):
        raise InputError(f"gram entry {x!r} is not an integer")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            value = Fraction(x)
        except ValueError:
            raise InputError(f"gram entry {x!r} is not a rational") from None
        if value.denominator == 1:
            return int(value)
    raise InputError(f"gram entry {x!r} is not an integer")


def surface_from_json(data) -> SurfaceSpec:
    if not isinstance(data, dict) or "gram" not in data:
        raise InputError("surface file must be a JSON object with a 'gram' field")
    gram = data["gram"]
    if not isinstance(gram, list) or any(not isinstance(r, list) for r in gram):
        raise InputError("'gram' must be a list of rows")
    k = len(gram)
    if any(len(r) != k for r in gram):
        raise InputError(f"'gram' must be square, got {k} rows of lengths {[len(r) for r in gram]}")
    g = tuple(tuple(_as_int(x) for x in r) for r in gram)
    if any(g[i][j] != g[j][i] for i in range(k) for j in range(i)):
        raise InputError("gram matrix is not symmetric")
    if "mid_rank" in data and data["mid_rank"] != k:
        raise InputError(f"mid_rank {data['mid_rank']} does not match gram size {k}")
    slot = data.get("exceptional_slot")
    if slot is not None:
        if not isinstance(slot, int) or not 1 <= slot <= k:
            raise InputError(f"exceptional_slot must be an integer in 1..{k}")
        if g[slot - 1][slot - 1] != -1:
            raise InputError(f"exceptional slot {slot} must have self-pairing -1")
        if any(g[slot - 1][j] for j in range(k) if j != slot - 1):
            raise InputError(f"exceptional slot {slot} must be orthogonal to the other classes")
    return SurfaceSpec(str(data.get("name", "surface")), g, slot)


def load_surface(path_or_name: str) -> SurfaceSpec:
    """Resolve a preset name or read a surface JSON file."""
    if path_or_name in PRESET_SURFACES:
        return PRESET_SURFACES[path_or_name]
    path = Path(path_or_name)
    if not path.exists():
        raise InputError(f"no preset or file named {path_or_name!r} (presets: {', '.join(PRESET_SURFACES)})")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"cannot parse surface file {path}: {exc}") from None
    return surface_from_json(data)


def _ceiling(args) -> int:
    if getattr(args, "ceiling", None) is not None:
        return args.ceiling
    return int(os.environ.get(CEILING_ENV, DEFAULT_CEILING))


def _guard(value: int, args, what: str = "n") -> int:
    if value < 0:
        raise InputError(f"{what} must be nonnegative")
    limit = _ceiling(args)
    if value > limit:
        raise InputError(
            f"{what}={value} exceeds the ceiling {limit}; raise it with --ceiling or {CEILING_ENV}"
        )
    return value


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=False))


def _gram(model: FrobeniusModel, n: int, sector: str):
    if sector == "mid":
        return ops.mid_gram(n, model)
    if sector == "full":
        return ops.full_gram(n, model)
    if sector == "monomial":
        return monomial_gram(n)
    raise InputError(f"unknown sector {sector!r}")


def cmd_basis(args) -> int:
    surface = load_surface(args.surface)
    n = _guard(args.n, args)
    manifest = ops.full_basis(n, surface.model(), with_det=True)
    _emit(manifest.to_json())
    return EXIT_OK


def cmd_gram(args) -> int:
    surface = load_surface(args.surface)
    n = _guard(args.n, args)
    _emit(_gram(surface.model(), n, args.sector).to_json())
    return EXIT_OK


def cmd_det(args) -> int:
    surface = load_surface(args.surface)
    n = _guard(args.n, args)
    print(format_rational(det(_gram(surface.model(), n, args.sector))))
    return EXIT_OK


def cmd_chern(args) -> int:
    surface = load_surface(args.surface)
    n = _guard(args.n, args)
    if args.i < 0:
        raise InputError("i must be nonnegative")
    state, coords = ops.chern_expansion(n, args.i, surface.model())
    _emit({"state": state.to_json(), "coordinates": coords})
    return EXIT_OK


def _component_json(key, comp: FockState) -> dict:
    names = ("lambda", "mu", "nu")
    out = {name: list(p) for name, p in zip(names, key)}
    out["state"] = comp.to_json()
    return out


def cmd_decompose(args) -> int:
    surface = load_surface(args.surface)
    model = surface.model()
    try:
        data = json.loads(Path(args.state).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read state file {args.state}: {exc}") from None
    try:
        state = FockState.from_json(data, model)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"invalid state file {args.state}: {exc}") from None
    if len(state.degrees()) > 1:
        raise InputError("state must be homogeneous")
    mode = args.mode or ("blowup" if surface.exceptional_slot else "sector")
    if mode == "blowup":
        if surface.exceptional_slot is None:
            raise InputError(f"surface {surface.name} has no exceptional_slot")
        comps = ops.blowup_decompose(state, surface.exceptional_slot)
    else:
        comps = ops.sector_decompose(state)
    _emit({
        "model": model.name,
        "mode": mode,
        "components": [_component_json(key, comp) for key, comp in comps.items()],
    })
    return EXIT_OK


VERIFY_DEFAULTS = {
    "pieri": {"max_n": 5, "max_i": 4},
    "split": {"max_n": 5},
    "negate": {"max_n": 6},
    "unimod": {"max_n": 4},
    "forgotten": {"max_n": 10},
    "detTn": {"max_n": 8},
    "sympower": {"max_n": 4, "max_k": 3, "samples": 3, "seed": 0},
    "mugram": {"max_n": 4, "max_k": 2, "samples": 3, "seed": 0},
    "combid": {"max_n": 30, "max_k": 10},
    "blowup": {"max_n": 3, "samples": 4, "seed": 0},
    "lattice": {"max_n": 3, "max_lam": 2},
}
# combid is pure binomial arithmetic and ignores the ceiling
UNGUARDED = {"combid"}


def cmd_verify(args) -> int:
    names = list(VERIFY_DEFAULTS) if "all" in args.checks else args.checks
    unknown = [c for c in names if c not in checks.CHECKS]
    if unknown:
        raise InputError(f"unknown check(s): {', '.join(unknown)}; choose from {', '.join(checks.CHECKS)} or all")
    model = load_surface(args.surface).model() if args.surface else None
    all_ok = True
    for name in names:
        kwargs = dict(VERIFY_DEFAULTS[name])
        for opt in ("max_n", "max_k", "max_i", "max_lam", "samples", "seed"):
            value = getattr(args, opt)
            if value is not None and opt in kwargs:
                kwargs[opt] = value
        if name not in UNGUARDED:
            _guard(kwargs["max_n"], args, "max-n")
        if model is not None and name in ("pieri", "split", "negate", "unimod", "lattice", "blowup"):
            kwargs["model"] = model
        if name == "blowup" and model is not None:
            surface = load_surface(args.surface)
            if surface.exceptional_slot is None:
                raise InputError(f"surface {surface.name} has no exceptional_slot for the blowup check")
            kwargs["slot"] = surface.exceptional_slot
        result = checks.CHECKS[name](**kwargs)
        print(result.line(), flush=True)
        all_ok &= result.passed
    return EXIT_OK if all_ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hilbint", description=__doc__.splitlines()[0])
    parser.add_argument("--ceiling", type=int, default=None,
                        help=f"largest accepted degree bound (default {DEFAULT_CEILING} or ${CEILING_ENV})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="integral basis manifest with Gram determinant")
    p.add_argument("--surface", required=True, help="preset name or surface JSON file")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_basis)

    for name, func, helptext in (("gram", cmd_gram, "Gram matrix"), ("det", cmd_det, "Gram determinant")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--surface", required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--sector", choices=("mid", "full", "monomial"), default="full")
        p.set_defaults(func=func)

    p = sub.add_parser("chern", help="Chern class c_i of the tautological bundle O^[n]")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--surface", default="P2")
    p.set_defaults(func=cmd_chern)

    p = sub.add_parser("decompose", help="sector or blow-up decomposition of a state file")
    p.add_argument("--surface", required=True)
    p.add_argument("--state", required=True, help="FockState JSON file")
    p.add_argument("--mode", choices=("sector", "blowup"), default=None)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="run bounded identity and theorem checks")
    p.add_argument("checks", nargs="+", help=f"{', '.join(checks.CHECKS)} or all")
    p.add_argument("--surface", default=None, help="override the default model for model-dependent checks")
    p.add_argument("--max-n", dest="max_n", type=int)
    p.add_argument("--max-k", dest="max_k", type=int)
    p.add_argument("--max-i", dest="max_i", type=int)
    p.add_argument("--max-lam", dest="max_lam", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (IntegralityError, ops.DecompositionError, SingularMatrixError) as exc:
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
