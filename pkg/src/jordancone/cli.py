"""Command-line front end.

Exit codes: 0 on success (and on a passing verify run), 1 when a
computation raises a domain error or a verify run records a failure,
2 on usage or fixture-parse problems.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from .algebra import Element, VOperator, jb_norm, jordan_product, trace_form, unit
from .errors import JordanConeError, ParseError
from .fixtures import parse_algebra_label, parse_fixture
from .herm import aut_component, lift_automorphism
from .isotopes import homotope, isotope_isomorphic
from .spectral import spectral_decompose
from .structure import (go_decompose, pierce_decompose, str_decompose,
                        str_residual, u_positive_decompose)
from .verify import run_suite


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jordancone",
        description="spectral and structure-group computations in "
                    "finite-dimensional formally real Jordan algebras")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="emit machine-readable JSON on stdout")
    common.add_argument("--tol", type=float, default=None,
                        help="override the working tolerance")
    fix = argparse.ArgumentParser(add_help=False)
    fix.add_argument("--fixture", required=True,
                     help="path to a fixture JSON file")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common, fix],
                       help="eigenvalues of a fixture element")
    p.add_argument("--element", default=None)

    p = sub.add_parser("upositive", parents=[common, fix],
                       help="factor x = v o eps with v positive, eps a central symmetry")
    p.add_argument("--element", default=None)

    p = sub.add_parser("pierce", parents=[common, fix],
                       help="Peirce projections of an idempotent")
    p.add_argument("--element", default=None)

    p = sub.add_parser("isotope", parents=[common, fix],
                       help="isotope unit and isomorphism test at a fixture element")
    p.add_argument("--element", default=None)

    p = sub.add_parser("decompose-str", parents=[common, fix],
                       help="polar-type factorization g = U_v S_p k")
    p.add_argument("--operator", default=None)

    p = sub.add_parser("decompose-go", parents=[common, fix],
                       help="cone-group factorization g = U_y k")
    p.add_argument("--operator", default=None)

    p = sub.add_parser("lift-aut", parents=[common, fix],
                       help="lift an automorphism to an implementing matrix")
    p.add_argument("--operator", default=None)
    p.add_argument("--xi", type=int, default=0,
                   help="index of the basis vector used as the anchor line")

    p = sub.add_parser("verify", parents=[common],
                       help="run the seeded identity suite")
    p.add_argument("--algebra", default=None,
                   help="algebra label such as sym:3 or sym:2+herm:2")
    p.add_argument("--fixture", default=None,
                   help="take the algebra (and default seed) from a fixture")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--trials", type=int, default=10)
    return parser


def _pick(table: dict, requested: str | None, what: str, flag: str):
    if requested is not None:
        if requested not in table:
            raise ParseError(f"no {what} named {requested!r} in fixture")
        return requested, table[requested]
    if len(table) == 1:
        name = next(iter(table))
        return name, table[name]
    raise ParseError(f"fixture holds {len(table)} {what}s; pass {flag}")


def _vec(x: Element) -> list[float]:
    return [float(c) for c in x.coords]


def _mat(M: np.ndarray):
    if np.iscomplexobj(M):
        return {"real": M.real.tolist(), "imag": M.imag.tolist()}
    return M.tolist()


def _emit(args, payload: dict, human: list[str]) -> None:
    if args.json:
        import json
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(human) + "\n")


def _read_fixture(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_fixture(fh.read())


def _load(args):
    fixture = _read_fixture(args.fixture)
    return fixture, fixture.algebra


def _cmd_spectrum(args) -> int:
    fixture, alg = _load(args)
    name, x = _pick(fixture.elements, args.element, "element", "--element")
    sd = spectral_decompose(x)
    mults = [int(round(trace_form(e, unit(alg)))) for e in sd.frame]
    _emit(args, {"command": "spectrum", "algebra": alg.label(), "element": name,
                 "eigenvalues": [float(v) for v in sd.eigenvalues],
                 "multiplicities": mults},
          [f"algebra      {alg.label()}",
           f"element      {name}"] +
          [f"eigenvalue   {v:.12g}  (multiplicity {m})"
           for v, m in zip(sd.eigenvalues, mults)])
    return 0


def _cmd_upositive(args) -> int:
    fixture, alg = _load(args)
    name, x = _pick(fixture.elements, args.element, "element", "--element")
    v, eps = u_positive_decompose(x, args.tol)
    residual = jb_norm(jordan_product(v, eps) - x)
    _emit(args, {"command": "upositive", "algebra": alg.label(), "element": name,
                 "positive": True, "v": _vec(v), "eps": _vec(eps),
                 "residual": residual},
          [f"algebra    {alg.label()}",
           f"element    {name}",
           "sigma(U_x) is positive",
           f"v          {np.array2string(v.coords, precision=6)}",
           f"eps        {np.array2string(eps.coords, precision=6)}",
           f"residual   {residual:.3e}"])
    return 0


def _cmd_pierce(args) -> int:
    fixture, alg = _load(args)
    name, p = _pick(fixture.elements, args.element, "element", "--element")
    pd = pierce_decompose(p, args.tol)
    _emit(args, {"command": "pierce", "algebra": alg.label(), "element": name,
                 "dims": list(pd.dims), "P1": _mat(pd.P1.matrix),
                 "P0": _mat(pd.P0.matrix), "Phalf": _mat(pd.Phalf.matrix)},
          [f"algebra   {alg.label()}",
           f"element   {name}",
           f"dims      J1={pd.dims[0]}  J0={pd.dims[1]}  J1/2={pd.dims[2]}"])
    return 0


def _cmd_isotope(args) -> int:
    fixture, alg = _load(args)
    name, u = _pick(fixture.elements, args.element, "element", "--element")
    h = homotope(u)
    iso, witness = (False, None)
    if h.unit_u is not None:
        iso, witness = isotope_isomorphic(u, args.tol)
    payload = {"command": "isotope", "algebra": alg.label(), "element": name,
               "invertible": h.unit_u is not None,
               "isotope_unit": None if h.unit_u is None else _vec(h.unit_u),
               "isomorphic_to_base": bool(iso),
               "witness": None if witness is None else _mat(witness.matrix)}
    human = [f"algebra      {alg.label()}",
             f"element      {name}",
             f"invertible   {h.unit_u is not None}"]
    if h.unit_u is not None:
        human.append(f"isotope unit {np.array2string(h.unit_u.coords, precision=6)}")
        human.append(f"isomorphic   {bool(iso)}")
    _emit(args, payload, human)
    return 0


def _operator(fixture, alg, args) -> tuple[str, VOperator]:
    return _pick(fixture.operators, args.operator, "operator", "--operator")


def _cmd_decompose_str(args) -> int:
    fixture, alg = _load(args)
    name, g = _operator(fixture, alg, args)
    dec = str_decompose(g, args.tol)
    _emit(args, {"command": "decompose-str", "algebra": alg.label(),
                 "operator": name, "v": _vec(dec.v), "p": _vec(dec.p),
                 "k": _mat(dec.k.matrix), "residual": dec.residual,
                 "involutive": dec.is_involutive()},
          [f"algebra     {alg.label()}",
           f"operator    {name}",
           f"v           {np.array2string(dec.v.coords, precision=6)}",
           f"p           {np.array2string(dec.p.coords, precision=6)}",
           f"residual    {dec.residual:.3e}",
           f"involutive  {dec.is_involutive()}"])
    return 0


def _cmd_decompose_go(args) -> int:
    fixture, alg = _load(args)
    name, g = _operator(fixture, alg, args)
    y, k = go_decompose(g, args.tol)
    _emit(args, {"command": "decompose-go", "algebra": alg.label(),
                 "operator": name, "y": _vec(y), "k": _mat(k.matrix),
                 "automorphism_residual": str_residual(k)},
          [f"algebra   {alg.label()}",
           f"operator  {name}",
           f"y         {np.array2string(y.coords, precision=6)}",
           f"k residual {str_residual(k):.3e}"])
    return 0


def _cmd_lift_aut(args) -> int:
    fixture, alg = _load(args)
    name, k = _operator(fixture, alg, args)
    component = aut_component(k, args.tol)
    lift = lift_automorphism(k, args.xi, args.tol)
    _emit(args, {"command": "lift-aut", "algebra": alg.label(),
                 "operator": name, "component": component.value,
                 "xi_index": lift.xi_index, "Z": _mat(lift.Z),
                 "W": _mat(lift.W), "s": _mat(lift.s)},
          [f"algebra    {alg.label()}",
           f"operator   {name}",
           f"component  {component.value}",
           f"|Z|        {np.linalg.norm(lift.Z, 2):.6g}"])
    return 0


def _cmd_verify(args) -> int:
    seed = args.seed
    if args.fixture is not None:
        fixture = _read_fixture(args.fixture)
        alg = fixture.algebra
        if seed is None:
            seed = fixture.seed
    elif args.algebra is not None:
        alg = parse_algebra_label(args.algebra)
    else:
        raise ParseError("verify needs --algebra or --fixture")
    if seed is None:
        seed = 0
    report = run_suite(alg, seed=seed, trials=args.trials, tol=args.tol)
    if args.json:
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.table() + "\n")
    print(f"wall time {report.wall_time:.2f}s", file=sys.stderr)
    return 0 if report.passed else 1


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "upositive": _cmd_upositive,
    "pierce": _cmd_pierce,
    "isotope": _cmd_isotope,
    "decompose-str": _cmd_decompose_str,
    "decompose-go": _cmd_decompose_go,
    "lift-aut": _cmd_lift_aut,
    "verify": _cmd_verify,
}


def cli_dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else 2
    try:
        return _COMMANDS[args.command](args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except JordanConeError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()
