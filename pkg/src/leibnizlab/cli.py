"""Command-line front end.

Exit codes: 0 when every requested audit passes, 2 on an audit mismatch
(the offending rows are printed), 1 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import astuple, dataclass, fields
from fractions import Fraction

from . import algebra as core
from .algebra import Algebra
from .automorphism import (NondegeneracyError, aut_count_audit, build_aut, check_automorphism,
                           params_from_dict)
from .catalog import (FAMILIES, AdmissibilityError, FamilySpec, admissible_grid, build,
                      expected_char_seq, identify, make_spec, validate_family)
from .linalg import Matrix
from .localaut import (certify_probes, default_probes, dims_exceed, localaut_dim_audit,
                       localaut_pattern, witness_local_not_global)


class UsageError(Exception):
    pass


def _default_seed() -> int:
    env = os.environ.get("LEIBNIZLAB_SEED")
    if env is None:
        return 42
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"LEIBNIZLAB_SEED must be an integer, got {env!r}")


def _write_json(path, obj):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as err:
        raise UsageError(f"cannot read {path}: {err.strerror}")
    except json.JSONDecodeError as err:
        raise UsageError(f"{path} is not valid JSON: {err}")


def _spec(args) -> FamilySpec:
    try:
        return FamilySpec(args.family, args.n, args.k)
    except AdmissibilityError as err:
        raise UsageError(str(err))


def _families(text: str):
    fams = tuple(f.strip() for f in text.split(",") if f.strip())
    bad = [f for f in fams if f not in FAMILIES]
    if bad or not fams:
        raise UsageError(f"unknown families {bad}; choose from {','.join(FAMILIES)}")
    return fams


def _grid(text: str):
    out = {"nmax": 20, "kmax": 3}
    for part in text.split(","):
        key, _, val = part.partition("=")
        if key.strip() not in out or not val.strip().isdigit():
            raise UsageError(f"bad grid item {part!r}; expected nmax=N,kmax=K")
        out[key.strip()] = int(val)
    return out["nmax"], out["kmax"]


def _load_algebra(path) -> Algebra:
    try:
        return Algebra.from_json(_read_json(path))
    except (KeyError, TypeError, ValueError) as err:
        raise UsageError(f"{path} is not an algebra table: {err}")


# -- subcommands --------------------------------------------------------------

def cmd_catalog(args) -> int:
    _write_json(args.out, build(_spec(args)).to_json())
    return 0


def cmd_analyze(args) -> int:
    a = _load_algebra(args.algebra)
    bad = core.leibniz_violations(a)
    if bad:
        print(f"Leibniz identity fails on {len(bad)} basis triples:")
        for i, j, k, _ in bad[:50]:
            print(f"  ({a.basis_names[i]}, {a.basis_names[j]}, {a.basis_names[k]})")
        return 2
    lc = core.series(a, "lower-central")
    dr = core.series(a, "derived")
    print(f"dim {a.dim}; Leibniz identity holds")
    print(f"lower central dims {list(lc.subspace_dims)} nilindex {lc.index}")
    print(f"derived dims {list(dr.subspace_dims)} index {dr.index}")
    witness = core.non_lie_witness(a)
    if witness is None:
        print("bracket is skew-symmetric (Lie)")
    else:
        u, v = (a.basis_names[i] for i in witness)
        print(f"non-Lie witness: [{u},{u}] != 0" if u == v else
              f"non-Lie witness: [{u},{v}] + [{v},{u}] != 0")
    out = {"dim": a.dim, "leibniz": True, "lower_central": list(lc.subspace_dims),
           "nilindex": lc.index, "derived": list(dr.subspace_dims)}
    status = 0
    if lc.terminates:
        out["graded_dims"] = core.graded_dims(a)
        print(f"graded dims {out['graded_dims']}")
        seq, _ = core.char_seq_estimate(a, sample_count=args.samples, seed=args.seed)
        out["char_seq_lower_bound"] = list(seq.blocks)
        print(f"characteristic sequence >= {seq}")
    spec = identify(a)
    if spec is not None:
        rep = validate_family(a, spec)
        out["family"] = spec.label()
        out["family_ok"] = rep.ok
        print(f"identified as {spec.label()}: {'ok' if rep.ok else '; '.join(rep.failures())}")
        if not rep.ok:
            status = 2
    if args.json:
        _write_json(args.json, out)
    return status


def cmd_aut_build(args) -> int:
    spec = _spec(args)
    obj = _read_json(args.params) if args.params else {}
    try:
        p = params_from_dict(spec, obj)
        aut = build_aut(spec, p)
    except NondegeneracyError as err:
        print(f"{spec.label()}: {err}")
        return 2
    except (KeyError, TypeError, ValueError) as err:
        raise UsageError(f"bad params: {err}")
    _write_json(args.out, aut.m.to_json())
    if args.check:
        viol = check_automorphism(build(spec), aut.m)
        if viol is not None:
            print(f"not an automorphism: {viol.describe(build(spec))}", file=sys.stderr)
            return 2
        print("automorphism check passed", file=sys.stderr)
    return 0


def cmd_localaut_pattern(args) -> int:
    _write_json(args.out, localaut_pattern(_spec(args)).to_json())
    return 0


def cmd_localaut_certify(args) -> int:
    a = _load_algebra(args.algebra)
    spec = identify(a)
    if spec is None:
        raise UsageError("algebra is not one of mu1, mu2, mu3 in the standard basis")
    try:
        delta = Matrix.from_json(_read_json(args.delta))
    except (KeyError, TypeError, ValueError) as err:
        raise UsageError(f"bad delta matrix: {err}")
    if (delta.rows, delta.cols) != (spec.n, spec.n):
        raise UsageError(f"delta must be {spec.n}x{spec.n}")
    if args.probes == "default":
        probes = default_probes(spec, args.seed)
    else:
        raw = _read_json(args.probes)
        probes = [(f"x{i}", [Fraction(str(v)) for v in vec]) for i, vec in enumerate(raw)]
    report = certify_probes(spec, delta, probes, seed=args.seed, workers=args.workers)
    print(f"{spec.label()}: {report.summary()}")
    for r in report.failures[:20]:
        print(f"  {r.label}: {r.status} ({r.case}) {r.reason}")
    if args.report:
        _write_json(args.report, report.to_json())
    return 0 if report.all_certified else 2


def cmd_localaut_audit(args) -> int:
    nmax, kmax = _grid(args.grid)
    rows = []
    for fam, n, k in admissible_grid(_families(args.families), nmax, kmax):
        aud = localaut_dim_audit(make_spec(fam, n, k))
        rows.append((fam, n, k, aud.computed, aud.remark, aud.equal))
    header = ("family", "n", "k", "localaut_dim_computed", "localaut_dim_remark", "equal")
    _write_csv(args.csv, header, rows)
    bad = [r for r in rows if not r[-1]]
    for r in bad:
        print("mismatch:", ",".join(map(str, r)))
    return 2 if bad else 0


@dataclass
class SweepRow:
    family: str
    n: int
    k: int
    aut_dim_computed: int
    aut_dim_remark: int
    localaut_dim_computed: int
    localaut_dim_remark: int
    leibniz_ok: bool
    charseq_ok: bool
    witness_ok: bool

    @property
    def ok(self) -> bool:
        return (self.aut_dim_computed == self.aut_dim_remark
                and self.localaut_dim_computed == self.localaut_dim_remark
                and self.leibniz_ok and self.charseq_ok and self.witness_ok)


def sweep_row(fam: str, n: int, k: int, seed: int) -> SweepRow:
    """One grid point.  ``witness_ok`` is the mu1 example check for mu1 and the
    strict dimension inequality for mu2 and mu3."""
    spec = make_spec(fam, n, k)
    a = build(spec)
    aut = aut_count_audit(spec)
    loc = localaut_dim_audit(spec)
    cs = core.char_seq_at(a, a.basis_vector(spec.e(1)))
    if fam == "mu1":
        witness = witness_local_not_global(spec, seed=seed).ok and dims_exceed(spec)
    else:
        witness = dims_exceed(spec)
    return SweepRow(fam, n, k, aut.computed, aut.remark, loc.computed, loc.remark,
                    not core.leibniz_violations(a), cs == expected_char_seq(spec), witness)


def _sweep_job(args):
    return sweep_row(*args)


def _fmt_cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _write_csv(path, header, rows):
    fh = sys.stdout if path in (None, "-") else open(path, "w", newline="")
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_fmt_cell(v) for v in r])
    finally:
        if fh is not sys.stdout:
            fh.close()


def cmd_sweep(args) -> int:
    jobs = [(fam, n, k, args.seed)
            for fam, n, k in admissible_grid(_families(args.families), args.nmax, args.kmax)]
    if args.workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(args.workers) as pool:
            rows = list(pool.map(_sweep_job, jobs))
    else:
        rows = [_sweep_job(j) for j in jobs]
    _write_csv(args.csv, [f.name for f in fields(SweepRow)], [astuple(r) for r in rows])
    bad = [r for r in rows if not r.ok]
    for r in bad:
        print("mismatch:", ",".join(_fmt_cell(v) for v in astuple(r)), file=sys.stderr)
    return 2 if bad else 0


def cmd_witness(args) -> int:
    spec = _spec(args)
    if spec.family != "mu1":
        raise UsageError("the witness example is defined for mu1")
    rep = witness_local_not_global(spec, seed=args.seed, workers=args.workers)
    print(f"{spec.label()} example matrix:")
    print(rep.phi.pretty())
    pair = rep.violation_pair()
    print(f"multiplicativity violation at {pair}" if pair else "no violation found")
    print(rep.probes.summary())
    if args.report:
        _write_json(args.report, rep.to_json())
    return 0 if rep.ok else 2


# -- parser -------------------------------------------------------------------

def _add_spec(p):
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)


def build_parser(seed: int) -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="leibnizlab",
                                 description="p-filiform Leibniz algebras mu1, mu2, mu3")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="emit the structure constants of a family member")
    _add_spec(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("analyze", help="identity check, series, characteristic sequence")
    p.add_argument("--algebra", required=True)
    p.add_argument("--json")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=seed)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("aut", help="automorphism matrices")
    asub = p.add_subparsers(dest="aut_command", required=True)
    q = asub.add_parser("build", help="matrix from parameters")
    _add_spec(q)
    q.add_argument("--params")
    q.add_argument("--check", action="store_true")
    q.add_argument("--out")
    q.set_defaults(func=cmd_aut_build)

    p = sub.add_parser("localaut", help="local-automorphism patterns and certificates")
    lsub = p.add_subparsers(dest="localaut_command", required=True)
    q = lsub.add_parser("pattern")
    _add_spec(q)
    q.add_argument("--out")
    q.set_defaults(func=cmd_localaut_pattern)
    q = lsub.add_parser("certify")
    q.add_argument("--algebra", required=True)
    q.add_argument("--delta", required=True)
    q.add_argument("--probes", default="default", help="'default' or a JSON list of vectors")
    q.add_argument("--seed", type=int, default=seed)
    q.add_argument("--report")
    q.add_argument("--workers", type=int, default=1)
    q.set_defaults(func=cmd_localaut_certify)
    q = lsub.add_parser("audit")
    q.add_argument("--grid", default="nmax=20,kmax=3")
    q.add_argument("--families", default=",".join(FAMILIES))
    q.add_argument("--csv")
    q.set_defaults(func=cmd_localaut_audit)

    p = sub.add_parser("sweep", help="all audits over the admissible grid")
    p.add_argument("--families", default=",".join(FAMILIES))
    p.add_argument("--nmax", type=int, default=20)
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--csv")
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("witness", help="a local automorphism that is not an automorphism")
    _add_spec(p)
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--report")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_witness)
    return ap


def main(argv=None) -> int:
    try:
        parser = build_parser(_default_seed())
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
