"""Command-line interface.

    tistates gen --n 3 --format json [--full]
    tistates classify --n 6 [--bits 100100]
    tistates energies --n 6 --h h0,h1,h2 --format table [--check] [--fill] [--table2]
    tistates spectrum --n 4 --h h0+h1
    tistates scan --n 3 --phis=-2pi/3,0,2pi/3 [--units 100]
    tistates decompose --state state.json | --bits 100
    tistates witness --n 3 --h h0 [--werner-p 0.4]
    tistates verify --n 6

Exit status: 0 success, 1 domain error (JSON on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from . import hamiltonian as ham
from .errors import TIStatesError
from .hilbert import StateVector
from .necklace import BitConfig, enumerate_orbits, orbit_of, orbits_to_json, partition_classes
from .tables import COLUMNS, TABLE2_FOOTNOTE, check_table1, emit_table1, emit_table2
from .tibasis import basis_to_json, decompose, is_ti, state_from_unit
from .verify import run_checks
from .witness import werner_two_qubit_report, witness_report_json

SCHEMA_VERSION = "1"


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tistates", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, help_text, need_n=True):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--n", type=int, required=need_n)
        sp.add_argument("--format", choices=("json", "csv", "table"), default="json")
        return sp

    g = verb("gen", "complete translation-eigenstate basis")
    g.add_argument("--full", action="store_true", help="include dense amplitudes")

    c = verb("classify", "orbits and classes")
    c.add_argument("--bits", help="also report the orbit and class of this string")

    e = verb("energies", "ZZ energy table for N in 3..6 (per orbit otherwise)")
    e.add_argument("--h", default="h0,h1,h2", help="comma-separated columns from h0,h1,h2")
    e.add_argument("--check", action="store_true", help="compare with the printed values")
    e.add_argument("--fill", action="store_true", help="compute cells the printed table leaves blank")
    e.add_argument("--table2", action="store_true", help="global-flip table instead")

    s = verb("spectrum", "full spectrum with degeneracies")
    s.add_argument("--h", required=True, help='e.g. "h0+h1" or "hprime:2pi/3"')

    sc = verb("scan", "hprime(phi) energies over chosen basis states")
    sc.add_argument("--phis", required=True, help="comma-separated angles; use --phis=-2pi/3,...")
    sc.add_argument("--units", help="comma-separated cyclic units (default: single excitation)")

    d = verb("decompose", "coefficients of a state on the basis", need_n=False)
    src = d.add_mutually_exclusive_group(required=True)
    src.add_argument("--state", help="state JSON file ({'n', 'amplitudes'}), '-' for stdin")
    src.add_argument("--bits", help="computational basis state, e.g. 100")
    d.add_argument("--all", action="store_true", help="list zero coefficients too")

    w = verb("witness", "energy indicator values and counterexamples")
    w.add_argument("--h", default="h0", help="single ZZ term: h0, h1 or h2")
    w.add_argument("--werner-p", type=float, help="add the two-qubit Werner comparison at this p")

    verb("verify", "run the invariant self-checks")
    return p


def _fmt_complex(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _cmd_gen(a):
    payload = basis_to_json(a.n, full=a.full)
    rows = [[s["unit"], s["m"], s["period"], *s["eigenvalue"]] for s in payload["states"]]
    return payload, (["unit", "m", "period", "eig_re", "eig_im"], rows)


def _cmd_classify(a):
    payload = orbits_to_json(a.n)
    classes = partition_classes(a.n)
    payload["classes"] = [{"label": c.label, "units": c.units} for c in classes]
    if a.bits:
        b = BitConfig.from_string(a.bits)
        if b.n_sites != a.n:
            raise UsageError(f"--bits has length {b.n_sites}, expected --n {a.n}")
        o = orbit_of(b)
        label = next(c.label for c in classes if o.representative.bits in c.orbit_reps)
        payload["query"] = {"bits": a.bits, **o.to_json(), "class": label}
    rows = [[c["label"], " ".join(c["units"])] for c in payload["classes"]]
    return payload, (["class", "units"], rows)


def _cmd_energies(a):
    if a.table2:
        rows2 = emit_table2(a.n)
        payload = {"n": a.n, "rows": rows2, "footnote": TABLE2_FOOTNOTE}
        return payload, (["state", "h0", "abs_h0", "hnl"],
                         [[r["state"], r["h0"], r["abs_h0"], r["hnl"]] for r in rows2])
    cols = [c.strip() for c in a.h.split(",") if c.strip()]
    for c in cols:
        if c not in COLUMNS:
            raise UsageError(f"--h accepts only {', '.join(COLUMNS)}; got {c!r}")
    if 3 <= a.n <= 6:
        table = emit_table1([a.n], fill=a.fill)
        rows = [
            {"group": r.label, "units": list(r.units), **{c: r.cells[c] for c in cols}}
            for r in table[a.n]
        ]
        payload = {"n": a.n, "columns": cols, "rows": rows}
        if a.check:
            problems = check_table1(table)
            payload["check"] = {"passed": not problems, "mismatches": problems}
    else:
        if a.check:
            raise TIStatesError(f"--check needs N in 3..6, got {a.n}", module="cli")
        specs = {"h0": ham.h0, "h1": ham.h1, "h2": ham.h2}
        rows = []
        for o in enumerate_orbits(a.n):
            st = state_from_unit(o.unit, 0)
            rows.append({"group": o.unit, "units": [o.unit],
                         **{c: ham.basis_state_expectation(specs[c](a.n), st) for c in cols}})
        payload = {"n": a.n, "columns": cols, "rows": rows}
    return payload, (["group", *cols], [[r["group"], *[r[c] for c in cols]] for r in rows])


def _cmd_spectrum(a):
    if a.n > ham.DIAG_MAX_SITES:
        raise TIStatesError(f"spectrum supports N <= {ham.DIAG_MAX_SITES}", module="hamiltonian")
    spec = ham.parse_spec(a.h, a.n)
    rep = ham.diagonalize(spec)
    payload = {"hamiltonian": spec.label, "n": a.n, **rep.to_json()}
    return payload, (["value", "multiplicity"], [[v, m] for v, m in rep.degeneracies])


def _cmd_scan(a):
    phis = [ham.parse_angle(x) for x in a.phis.split(",") if x.strip()]
    units = a.units.split(",") if a.units else ["0" * (a.n - 1) + "1"]
    states = []
    for u in units:
        u = u.strip()
        if len(u) != a.n:
            raise UsageError(f"unit {u!r} does not have {a.n} sites")
        o = orbit_of(BitConfig.from_string(u))
        states.extend(state_from_unit(o.unit, m) for m in range(o.period))
    rows = ham.chirality_scan(a.n, states, phis)
    labels = [s.label for s in states]
    payload = {
        "n": a.n,
        "states": labels,
        "rows": [
            {"phi": r.phi, "energies": r.energies, "argmin": list(r.argmin), "tie": r.tie,
             "margin": r.margin}
            for r in rows
        ],
    }
    table_rows = [[r.phi, *[r.energies[k] for k in labels], " ".join(r.argmin)] for r in rows]
    return payload, (["phi", *labels, "argmin"], table_rows)


def _load_state(path: str) -> StateVector:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return StateVector.from_json(text)


def _cmd_decompose(a):
    psi = _load_state(a.state) if a.state else StateVector.basis(a.bits)
    if a.n is not None and a.n != psi.n_sites:
        raise UsageError(f"--n {a.n} does not match the state (N={psi.n_sites})")
    psi = psi.normalized()
    dec = decompose(psi)
    coeffs = dec.coefficients if a.all else dec.nonzero()
    ti, c = is_ti(psi)
    payload = {
        "n": psi.n_sites,
        "coefficients": [
            {"state": f"{u}:{m}", "value": _fmt_complex(v)} for (u, m), v in coeffs.items()
        ],
        "residual_norm": dec.residual_norm,
        "is_ti": ti,
        "eigenvalue": _fmt_complex(c) if c is not None else None,
    }
    rows = [[e["state"], *e["value"], abs(complex(*e["value"]))] for e in payload["coefficients"]]
    return payload, (["state", "re", "im", "abs"], rows)


def _cmd_witness(a):
    spec = ham.parse_spec(a.h, a.n)
    payload = witness_report_json(a.n, spec)
    if a.werner_p is not None:
        payload["werner_two_qubit"] = werner_two_qubit_report(a.werner_p)
    rows = [[e["state"], e["w_ent"], e["verdict"]] for e in payload["entries"]]
    return payload, (["state", "w_ent", "verdict"], rows)


def _cmd_verify(a):
    results = run_checks(a.n)
    passed = sum(r.passed for r in results)
    payload = {
        "n": a.n,
        "passed": passed,
        "total": len(results),
        "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
    }
    return payload, (["check", "passed", "detail"], [[r.name, r.passed, r.detail] for r in results])


COMMANDS = {
    "gen": _cmd_gen,
    "classify": _cmd_classify,
    "energies": _cmd_energies,
    "spectrum": _cmd_spectrum,
    "scan": _cmd_scan,
    "decompose": _cmd_decompose,
    "witness": _cmd_witness,
    "verify": _cmd_verify,
}


def _cell(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, float):
        return f"{v:.12g}" if abs(v) > 1e-12 else "0"
    return str(v)


def _render(fmt: str, envelope: dict, table: tuple[list[str], list[list]]) -> str:
    if fmt == "json":
        return json.dumps(envelope, indent=2)
    header, rows = table
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([[_cell(v) for v in row] for row in rows])
        return buf.getvalue().rstrip("\n")
    cells = [header] + [[_cell(v) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    options = {k: v for k, v in vars(args).items() if k not in ("verb", "n", "format")}
    command = {"verb": args.verb, "n": args.n, "options": options}
    start = time.perf_counter()
    try:
        payload, table = COMMANDS[args.verb](args)
    except UsageError as exc:
        parser.print_usage(stderr)
        print(f"tistates {args.verb}: error: {exc}", file=stderr)
        return 2
    except (TIStatesError, ValueError, OSError) as exc:
        module = getattr(exc, "module", "cli")
        err = {"error": type(exc).__name__, "module": module, "message": str(exc)}
        print(json.dumps(err), file=stderr)
        return 1
    envelope = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "payload": payload,
        "elapsed_ms": int((time.perf_counter() - start) * 1000),
    }
    print(_render(args.format, envelope, table), file=stdout)
    if args.verb == "verify" and payload["passed"] != payload["total"]:
        return 1
    if args.verb == "energies" and "check" in payload and not payload["check"]["passed"]:
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
