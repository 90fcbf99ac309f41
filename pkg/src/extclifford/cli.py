"""Command-line interface.  Output is JSON; exit codes are 0 ok, 1 failed check, 2 bad input."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from .clifford import CliffordError, SympMatrix, symplectic_unitary, trace_closed_form, weyl_expansion
from .cyclo import CycloError, CycloMatrix, CycloScalar, make_ring_for
from .gf import FieldError, GaloisField, field_for_dimension, set_conway_override
from .mub import (
    INF,
    MubError,
    classify_cycling,
    cycling_index,
    is_cycling,
    is_half_cycling,
    label_of_u,
    mub_bases,
    mub_labels,
    mub_orbits,
    symplectic_mub_action,
    u_of_label,
    x_of_u,
    ExtLabel,
)
from .sic import SicError, sic_subspace_bases, type1_sic_basis, verify_table3
from .spectra import SpectralError, classify, eigen_data, eigenspace_dims, matrix_roots, order, type3_row
from .verify import DEFAULT_SAMPLES, SUITES, run_all, run_suite

__all__ = ["CommandResult", "run", "render", "main", "build_parser"]

DOMAIN_ERRORS = (FieldError, CliffordError, CycloError, SpectralError, SicError, MubError)


@dataclass
class CommandResult:
    status: str          # "ok", "fail" or "error"
    payload: dict
    exit_code: int
    fmt: str = "json"


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# serialisation helpers

def _scalar(z: CycloScalar) -> dict:
    c = z.to_complex()
    return {"exact": str(z), "float": [round(c.real, 12) + 0.0, round(c.imag, 12) + 0.0]}


def _matrix(A: CycloMatrix) -> dict:
    r, c = A.shape
    C = A.to_complex()
    exact = [[str(A.entry(i, j)) for j in range(c)] for i in range(r)]
    floats = [[[round(C[i, j].real, 12) + 0.0, round(C[i, j].imag, 12) + 0.0] for j in range(c)] for i in range(r)]
    return {"exact": exact, "float": floats}


def _vector(v: CycloMatrix) -> dict:
    m = _matrix(v)
    return {"exact": [row[0] for row in m["exact"]], "float": [row[0] for row in m["float"]]}


def _mu(mu) -> int | str:
    return "inf" if mu is INF else int(mu)


def _sym(F: SympMatrix) -> list[int]:
    return F.signed()


# ---------------------------------------------------------------------------
# argument parsing

def _field(d: int) -> GaloisField:
    if d % 2 == 0:
        raise UsageError(f"d must be odd, got {d}")
    return field_for_dimension(d)


def _parse_F(f: GaloisField, text: str) -> SympMatrix:
    try:
        vals = [int(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"matrix must be four comma-separated integers, got {text!r}") from None
    return SympMatrix.from_ints(f, vals)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="extclifford", description=__doc__)
    ap.add_argument("--conway-table", metavar="PATH", help="modulus override file")
    ap.add_argument("--format", choices=["json", "pretty"], default="json")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", help="field descriptor")
    p.add_argument("--d", type=int, required=True)

    p = sub.add_parser("op", help="U_F in the standard basis")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--F", required=True)

    p = sub.add_parser("order", help="type, eigenvalues and order of F")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--F", required=True)

    p = sub.add_parser("roots", help="all G with G^s = F")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--F", required=True)
    p.add_argument("--s", type=int, required=True)

    p = sub.add_parser("eigs", help="eigenspace dimensions of U_F")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--F", required=True)

    p = sub.add_parser("sic", help="eigenbases of the order-3 unitary in prime dimension")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--d", type=int)
    g.add_argument("--table3", action="store_true")

    p = sub.add_parser("mub", help="mutually unbiased bases")
    p.add_argument("--d", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--table", action="store_true")
    g.add_argument("--cycle-class", action="store_true")
    g.add_argument("--act", metavar="F")

    p = sub.add_parser("label", help="extension-field labels of phase points")
    p.add_argument("--d", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--r", type=int)
    g.add_argument("--u", help="u1,u2")

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=0)
    return ap


# ---------------------------------------------------------------------------
# subcommands

def cmd_field(args) -> dict:
    f = _field(args.d)
    ext = f.extension
    head = min(f.d - 1, 16)
    return {
        "d": f.d, "p": f.p, "n": f.n,
        "modulus": list(f.modulus),
        "theta": f.theta,
        "theta_powers": [int(f.exp(k)) for k in range(head)],
        "nonresidue": f.nonresidue(),
        "sqrt_minus_one": f.sqrt_minus_one(),
        "extension": {"modulus": list(ext.modulus2), "theta_bar": ext.theta_bar, "eta": ext.eta},
    }


def cmd_op(args) -> dict:
    f = _field(args.d)
    F = _parse_F(f, args.F)
    ring = make_ring_for(f)
    U = symplectic_unitary(F, ring)
    out = {"d": f.d, "F": _sym(F), "det": F.det, "antiunitary": U.antiunitary, "ring": ring.M,
           "matrix": _matrix(U.matrix)}
    if F.det == 1:
        out["trace"] = _scalar(trace_closed_form(F, ring))
        out["weyl"] = [{"u": list(u), **_scalar(c)} for u, c in sorted(weyl_expansion(F, ring).items())]
    return out


def cmd_order(args) -> dict:
    f = _field(args.d)
    F = _parse_F(f, args.F)
    kind = classify(F)
    out: dict = {"d": f.d, "F": _sym(F), "det": F.det, "type": kind}
    if kind == 3:
        row = type3_row(F)
        out.update(trace_class=row.trace, offdiag=row.offdiag)
    else:
        data = eigen_data(F)
        out.update(eigenvalues=list(data.eigenvalues), r=data.r)
    out["order"] = order(F)
    return out


def cmd_roots(args) -> dict:
    f = _field(args.d)
    F = _parse_F(f, args.F)
    if args.s < 1:
        raise UsageError("--s must be positive")
    roots = matrix_roots(F, args.s)
    return {"d": f.d, "F": _sym(F), "s": args.s, "count": len(roots), "roots": [_sym(G) for G in roots]}


def cmd_eigs(args) -> dict:
    f = _field(args.d)
    F = _parse_F(f, args.F)
    if F.det != 1:
        raise UsageError("eigenspaces are defined for symplectic F only")
    return {"d": f.d, "F": _sym(F), "order": order(F), "dims": eigenspace_dims(F)}


def _report(rep) -> dict:
    return {
        "d": rep.d, "branch": rep.branch, "m": rep.m, "G": _sym(rep.G), "F": _sym(rep.F),
        "subspace_dims": list(rep.subspace_dims), "per_r_dims": rep.per_r_dims,
        "checks": rep.checks, "ok": rep.ok,
        "eigenvectors": [{"label": lab, "vector": [[round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0] for z in v]}
                         for lab, v in rep.eigenvectors],
    }


def cmd_sic(args) -> tuple[dict, bool]:
    if args.table3:
        rows = verify_table3()
        body = [{"d": e.d, "G": list(e.G), "power_is_zauner": e.power_is_zauner,
                 "order": e.order, "expected_order": e.expected_order, "ok": e.ok} for e in rows]
        ok = all(e.ok for e in rows)
        return {"table3": body, "ok": ok}, ok
    d = args.d
    if d % 6 == 1:
        rep = type1_sic_basis(d)
    elif d % 6 == 5:
        rep = sic_subspace_bases(d)
    else:
        raise UsageError(f"d must be a prime >= 5, got {d}")
    return _report(rep), rep.ok


def cmd_mub(args) -> dict:
    f = _field(args.d)
    if args.table:
        bases = mub_bases(f)
        return {"d": f.d, "bases": [
            {"mu": _mu(mu), "vectors": [{"x": x, **_vector(B.column(x))} for x in range(f.d)]}
            for mu, B in bases.items()]}
    if args.cycle_class:
        s = classify_cycling(f)
        return {"d": f.d, "elements": s.total,
                "cycling": {"symplectic": s.cycling[1], "antisymplectic": s.cycling[-1]},
                "half_cycling": {"symplectic": s.half_cycling[1], "antisymplectic": s.half_cycling[-1]},
                "trace_criteria_agree": s.ok}
    F = _parse_F(f, args.act)
    ring = make_ring_for(f)
    action = []
    for mu in mub_labels(f):
        for x in range(f.d):
            ph, mu2, x2 = symplectic_mub_action(F, mu, x, ring)
            action.append({"mu": _mu(mu), "x": x, "mu_image": _mu(mu2), "x_image": x2, "phase": str(ph)})
    return {"d": f.d, "F": _sym(F), "det": F.det,
            "orbits": [[_mu(m) for m in c] for c in mub_orbits(F)],
            "cycling_index": cycling_index(F), "is_cycling": is_cycling(F),
            "is_half_cycling": is_half_cycling(F), "action": action}


def cmd_label(args) -> dict:
    f = _field(args.d)
    if args.r is not None:
        lab = ExtLabel(args.r % (f.d * f.d - 1) if args.r < 0 else args.r, f.d)
        u = u_of_label(f, lab.r)
    else:
        try:
            u = tuple(f.code(int(v)) for v in args.u.split(","))
        except ValueError:
            raise UsageError(f"--u must be two comma-separated integers, got {args.u!r}") from None
        if len(u) != 2:
            raise UsageError("--u needs exactly two entries")
        lab = ExtLabel(label_of_u(f, u), f.d)
    return {"d": f.d, "r": lab.r, "s": lab.s, "t": lab.t, "u": list(u), "x": x_of_u(f, u)}


def cmd_verify(args) -> tuple[dict, bool]:
    f = _field(args.d)
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    if args.suite == "all":
        results = run_all(f, args.samples, args.seed)
    else:
        results = [run_suite(args.suite, f, args.samples, args.seed)]
    ok = all(r.passed for r in results)
    return {"d": f.d, "passed": ok, "suites": [r.as_dict() for r in results]}, ok


COMMANDS = {
    "field": cmd_field, "op": cmd_op, "order": cmd_order, "roots": cmd_roots, "eigs": cmd_eigs,
    "sic": cmd_sic, "mub": cmd_mub, "label": cmd_label, "verify": cmd_verify,
}


_VALUE_FLAGS = ("--F", "--act", "--u")


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    """Rewrite ``--F -1,0,0,-1`` as ``--F=-1,0,0,-1`` so argparse does not read a flag."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and nxt[1:2].isdigit():
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
        else:
            out.append(tok)
    return out


def run(argv: Sequence[str] | None = None) -> CommandResult:
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_negative_values(sys.argv[1:] if argv is None else argv))
    except SystemExit as exc:
        code = 0 if exc.code in (0, None) else 2
        return CommandResult("ok" if code == 0 else "error", {}, code)
    try:
        set_conway_override(args.conway_table)
        out = COMMANDS[args.command](args)
    except (UsageError, *DOMAIN_ERRORS) as exc:
        return CommandResult("error", {"error": type(exc).__name__, "message": str(exc)}, 2, args.format)
    finally:
        if args.conway_table:
            set_conway_override(None)
    if isinstance(out, tuple):
        payload, ok = out
        return CommandResult("ok" if ok else "fail", payload, 0 if ok else 1, args.format)
    return CommandResult("ok", out, 0, args.format)


def render(res: CommandResult) -> str:
    doc = {"status": res.status, **res.payload}
    if res.fmt == "pretty":
        return json.dumps(doc, indent=2)
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def main(argv: Sequence[str] | None = None) -> int:
    res = run(sys.argv[1:] if argv is None else argv)
    if res.payload:
        print(render(res), file=sys.stderr if res.exit_code == 2 else sys.stdout)
    return res.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
