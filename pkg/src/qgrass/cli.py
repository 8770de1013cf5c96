"""Batch command-line front end: exact JSON, CSV and DOT reports.

Exit status is 0 iff every embedded check passes, 1 on a failed check (with a
JSON diagnostic on stderr), 2 on a configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import derham, omega, scalars, structure
from .superindex import Shape, e0_e, e0_e_closed, enumerate_graded, graded_dim_formula, k_count

COMMANDS = ("identities", "dims", "relations", "socle", "loewy", "net", "derham", "poincare")


class ConfigError(ValueError):
    pass


class Result:
    def __init__(self, payload, ok, header=None, rows=None, dot=None):
        self.payload = payload
        self.ok = ok
        self.header = header
        self.rows = rows
        self.dot = dot


def _shape(cfg) -> Shape:
    if cfg.m is None or cfg.n is None:
        raise ConfigError("--m and --n are required")
    try:
        return Shape(cfg.m, cfg.n, cfg.ell, cfg.r, cfg.order)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _degrees(cfg, shape: Shape, default_all: bool = False) -> list:
    if cfg.all_s or (cfg.s is None and default_all):
        return list(range(shape.top + 1))
    if cfg.s is None:
        raise ConfigError("give --s or --all-s")
    if not 0 <= cfg.s <= shape.top:
        raise ConfigError(f"--s must lie in [0, {shape.top}]")
    return [cfg.s]


def cmd_identities(cfg) -> Result:
    try:
        spec = scalars.RootSpec(cfg.ell, cfg.order)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    top = cfg.max_s
    fam = {}

    def tally(name, ok):
        p, f = fam.get(name, (0, 0))
        fam[name] = (p + ok, f + (not ok))

    tally("char_q", scalars.char_q(spec) == spec.ell)
    for s in range(top + 1):
        for r in range(s + 1):
            tally("pascal", scalars.pascal_check(s, r, spec))
            tally("digit_factorization", scalars.digit_factorization_check(s, r, spec))
        if s >= spec.ell:
            tally("binom_ell", scalars.binom_ell_check(s, spec))
    families = [{"family": k, "passed": p, "failed": f} for k, (p, f) in fam.items()]
    ok = all(f == 0 for _, f in fam.values())
    payload = {"spec": spec.to_json(), "max_s": top, "families": families, "ok": ok}
    rows = [[x["family"], x["passed"], x["failed"]] for x in families]
    return Result(payload, ok, ["family", "passed", "failed"], rows)


def cmd_dims(cfg) -> Result:
    shape = _shape(cfg)
    rows, out = [], []
    ok = True
    for s in _degrees(cfg, shape, default_all=True):
        enum = len(enumerate_graded(shape, s))
        formula = graded_dim_formula(shape, s)
        E0, E = e0_e(shape, s)
        closed = e0_e_closed(shape, s) == (E0, E)
        ok &= enum == formula and closed
        out.append({"s": s, "enumerated": enum, "formula": formula, "E0": E0, "E": E,
                    "closed_form_E0_E": closed})
        rows.append([s, enum, formula, E0, E, closed])
    payload = {"shape": shape.to_json(), "degrees": out}
    if cfg.all_s or cfg.s is None:
        total = sum(x["enumerated"] for x in out)
        payload["total"] = total
        payload["expected_total"] = shape.total_dim
        ok &= total == shape.total_dim
    payload["ok"] = ok
    return Result(payload, ok, ["s", "enumerated", "formula", "E0", "E", "closed_form_E0_E"], rows)


def cmd_relations(cfg) -> Result:
    shape = _shape(cfg)
    reports = [omega.relations_check(omega.action_matrices(omega.graded_piece(shape, s)))
               for s in _degrees(cfg, shape, default_all=True)]
    ok = all(r.ok for r in reports)
    rows = [[r.s, sum(r.checked.values()), len(r.failures), r.ok] for r in reports]
    payload = {"shape": shape.to_json(), "ok": ok, "degrees": [r.to_json() for r in reports]}
    return Result(payload, ok, ["s", "checked", "failures", "ok"], rows)


def cmd_socle(cfg) -> Result:
    shape = _shape(cfg)
    certs, rows = [], []
    ok = True
    for s in _degrees(cfg, shape):
        E0, _ = e0_e(shape, s)
        try:
            cert = structure.socle_certify(shape, s)
            entry = cert.to_json()
            entry["expected_summands"] = k_count(shape, E0)
            good = len(cert.summands) == entry["expected_summands"]
        except structure.CertificationError as exc:
            entry = {"s": s, "certified": False, "error": str(exc)}
            good = False
        entry["ok"] = good
        ok &= good
        certs.append(entry)
        rows.append([s, entry.get("dim", ""), len(entry.get("summands", [])), good])
    payload = {"shape": shape.to_json(), "ok": ok, "degrees": certs}
    return Result(payload, ok, ["s", "socle_dim", "summands", "ok"], rows)


def cmd_loewy(cfg) -> Result:
    shape = _shape(cfg)
    reps, rows = [], []
    ok = True
    for s in _degrees(cfg, shape):
        filt = structure.edeg_filtration(shape, s)
        entry = filt.to_json()
        entry["primitive"] = structure.primitive_check(shape, s)
        if cfg.certify:
            passed, certs = structure.socle_filtration_check(shape, s)
            entry["socle_filtration"] = passed
            entry["certificates"] = [c.to_json() for c in certs]
        good = filt.ok and entry["primitive"] and entry.get("socle_filtration", True)
        entry["ok"] = good
        ok &= good
        reps.append(entry)
        rows.append([s, filt.E0, filt.E, filt.loewy_length,
                     " ".join(map(str, filt.layer_dims)), good])
    payload = {"shape": shape.to_json(), "ok": ok, "degrees": reps}
    return Result(payload, ok, ["s", "E0", "E", "loewy_length", "layer_dims", "ok"], rows)


def cmd_net(cfg) -> Result:
    shape = _shape(cfg)
    degrees = _degrees(cfg, shape)
    nets = [structure.inclusion_net(shape, s) for s in degrees]
    ok = all(n.checks["edges_match_componentwise_order"]
             and n.checks["same_grade_mutually_non_included"] for n in nets)
    rows = [[n.s, len(n.vertices), len(n.edges)] for n in nets]
    dot = "".join(n.to_dot() for n in nets)
    payload = {"shape": shape.to_json(), "ok": ok, "degrees": [n.to_json() for n in nets]}
    return Result(payload, ok, ["s", "vertices", "edges"], rows, dot)


def cmd_derham(cfg) -> Result:
    shape = _shape(cfg)
    table = derham.cohomology(shape)
    passed, witnesses = derham.complex_check(shape)
    dims_ok, dims_fail = derham.block_dims_check(shape)
    payload = table.to_json()
    payload["d_squared_zero"] = passed
    payload["d_squared_witnesses"] = witnesses
    payload["block_dims"] = dims_ok
    payload["block_dim_failures"] = dims_fail
    ok = table.ok and passed and dims_ok
    payload["ok"] = ok
    rows = [[r.s, r.dim_forms, r.rank_d, r.dim_h, r.expected, r.n_critical_weights]
            for r in table.rows]
    header = ["s", "dim_forms", "rank_d", "dim_H", "expected_binom", "critical_weights"]
    return Result(payload, ok, header, rows)


def parse_weight(text: str, m: int, n: int) -> derham.SuperWeight:
    """'1,0|1' -> even (1,0), odd (1,)."""
    try:
        even, _, odd = text.partition("|")
        ev = tuple(int(x) for x in even.split(",") if x.strip())
        od = tuple(int(x) for x in odd.split(",") if x.strip())
    except ValueError as exc:
        raise ConfigError(f"bad weight {text!r}") from exc
    if len(ev) != m or len(od) != n or min(ev + (0,)) < 0 or any(v not in (0, 1) for v in od):
        raise ConfigError(f"weight {text!r} must have {m} even entries >= 0 and {n} odd bits")
    return derham.SuperWeight(ev, od)


def cmd_poincare(cfg) -> Result:
    if cfg.m is None or cfg.n is None:
        raise ConfigError("--m and --n are required")
    if cfg.weight:
        weights = [parse_weight(w, cfg.m, cfg.n) for w in cfg.weight]
    else:
        weights = derham.random_weights(cfg.m, cfg.n, cfg.random, cfg.seed)
    if any(w.is_zero() for w in weights):
        raise ConfigError("the zero weight is excluded")
    try:
        reps = [derham.poincare_check(cfg.m, cfg.n, cfg.ell, w, cfg.order) for w in weights]
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    ok = all(r.exact and r.same_as_untruncated for r in reps)
    rows = [[str(r.weight), r.r, " ".join(map(str, r.dims)), " ".join(map(str, r.ranks)),
             r.exact and r.same_as_untruncated] for r in reps]
    payload = {"m": cfg.m, "n": cfg.n, "ell": cfg.ell, "order": cfg.order or cfg.ell,
               "ok": ok, "weights": [r.to_json() for r in reps]}
    return Result(payload, ok, ["weight", "r", "dims", "ranks", "exact"], rows)


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


def render(res: Result, fmt: str, command: str) -> str:
    if fmt == "json":
        return json.dumps(res.payload, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(res.header)
        w.writerows(res.rows)
        return buf.getvalue()
    if res.dot is None:
        raise ConfigError(f"--format dot is only available for net, not {command}")
    return res.dot


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qgrass", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--ell", type=int, default=3)
    p.add_argument("--order", type=int, default=0, help="order of q: ell (default) or 2*ell")
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--s", type=int)
    p.add_argument("--all-s", action="store_true")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--format", choices=("json", "csv", "dot"), default="json")
    p.add_argument("--max-s", type=int, default=30, help="identities: largest top index")
    p.add_argument("--certify", action="store_true", help="loewy: certify every socle layer")
    p.add_argument("--weight", action="append", help="poincare: weight like '1,0|1' (repeatable)")
    p.add_argument("--random", type=int, default=25, help="poincare: number of random weights")
    p.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    cfg = parser.parse_args(argv)
    try:
        res = HANDLERS[cfg.command](cfg)
        text = render(res, cfg.format, cfg.command)
    except ConfigError as exc:
        parser.print_usage(sys.stderr)
        print(f"qgrass: error: {exc}", file=sys.stderr)
        return 2
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not res.ok:
        print(json.dumps({"command": cfg.command, "ok": False, "report": res.payload}),
              file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
