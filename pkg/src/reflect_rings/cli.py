"""Command line driver.

One executable, one subcommand per capability, JSON on standard output.
The output contract is deliberately rigid:

* every number is rendered as a decimal string (Fractions print as
  "num/den"), so nothing is lost to floating point on the way out;
* the document is ``{"schema", "command", "data", "status", "wall_time"}``
  with fixed key insertion order, and everything inside ``data`` is
  deterministic, so identical inputs give byte-identical bytes.  Wall
  time sits outside the data block.  The one caveat is ``verify-all``,
  whose --budget can skip trailing checks on a slow machine; with a
  budget large enough to run everything its data block is stable too;
* ``--pretty`` switches to a human table, ``--format csv`` is accepted
  where the output is a coefficient table (shintani, subring-zeta);
* exit 0 when every assertion passed, 1 when a checked identity failed
  (details in "violations"), 2 for usage errors including bad
  mathematical parameters;
* sweeps accept ``--resume PATH`` and checkpoint one row per parameter,
  so a killed run continues instead of starting over;
* the environment variable REFLECT_RINGS_THREADS caps the worker pool
  used for per-parameter sweep items; results are merged in parameter
  order, so the cap never changes output;
* ``--seed`` feeds only the randomized pair selection in verify-all's
  discriminant-reduction check.  Counting commands never consume it.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .classgroup import (
    class_group,
    cross_check_maps,
    genus_check,
    is_fundamental,
    scholz_check,
    scholz_sweep,
)
from .cubic import (
    TRACED3,
    LocalCondition,
    check_cubic_ON,
    check_disc_reduction,
    enumerate_cubics,
    h,
    h3,
    shintani_coeffs,
)
from .errors import BadInput, BadParams, ReflectRingsError
from .forms import SPLITTING_TAGS, BinaryForm, MonicCubic
from .localfourier import (
    SUBRING_TYPES,
    SubringParams,
    fixture_ring,
    fourier,
    make_filtered_group,
    ring_disc,
    subring_oracle,
    subring_series,
    traced_subring_count,
)
from .quad import check_quadratic_ON, enumerate_quadratics, qcounts
from .quartic import (
    _matches_condition,
    check_BQ,
    count_quartics,
    count_symmetric_matrices,
    quartic_classes,
    search_boxes,
    symmetric_matrices,
)

SCHEMA = "reflect-rings/1"

_COND_FLAGS = {
    "indef": "indefinite",
    "posdef": "pos_def",
    "negdef": "neg_def",
    "fourreal": "four_real_roots",
}


# ---------------------------------------------------------------------------
# output plumbing


def _encode(value):
    """Numbers to decimal strings, recursively.  Booleans stay booleans."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, Fraction)):
        return str(value)
    if isinstance(value, str):
        return value
    if isinstance(value, dict):
        return {key: _encode(val) for key, val in value.items()}
    if isinstance(value, (list, tuple)):
        return [_encode(val) for val in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _cell(value) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, separators=(",", ":"))
    return str(value)


def _pretty_table(rows: list, out) -> None:
    columns = list(rows[0].keys())
    grid = [[_cell(row.get(col)) for col in columns] for row in rows]
    widths = [
        max(len(col), max(len(line[i]) for line in grid))
        for i, col in enumerate(columns)
    ]
    out.write("  " + "  ".join(col.ljust(widths[i]) for i, col in enumerate(columns)).rstrip() + "\n")
    for line in grid:
        out.write("  " + "  ".join(line[i].ljust(widths[i]) for i in range(len(columns))).rstrip() + "\n")


def _pretty_block(data: dict, out, indent: str = "") -> None:
    for key, value in data.items():
        if isinstance(value, dict) and value:
            out.write(f"{indent}{key}:\n")
            _pretty_block(value, out, indent + "  ")
        elif isinstance(value, list) and value and all(isinstance(r, dict) for r in value):
            out.write(f"{indent}{key}: ({len(value)} rows)\n")
            _pretty_table(value, out)
        else:
            out.write(f"{indent}{key}: {_cell(value)}\n")


def _emit(args, command: str, data: dict, status: str, started: float) -> int:
    doc = {
        "schema": SCHEMA,
        "command": command,
        "data": _encode(data),
        "status": status,
        "wall_time": f"{time.monotonic() - started:.3f}",
    }
    out = sys.stdout
    if getattr(args, "pretty", False):
        out.write(f"{command}  [{SCHEMA}]\n")
        _pretty_block(doc["data"], out)
        out.write(f"status: {status}\n")
        out.write(f"wall_time: {doc['wall_time']}s\n")
    else:
        out.write(json.dumps(doc, separators=(",", ":")) + "\n")
    return 1 if status == "fail" else 0


def _emit_csv(header: tuple, rows: list) -> int:
    out = sys.stdout
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(str(x) for x in row) + "\n")
    return 0


# ---------------------------------------------------------------------------
# sweep plumbing: checkpoints and the worker pool


def _thread_cap() -> int:
    raw = os.environ.get("REFLECT_RINGS_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


class _Checkpoint:
    """One JSON state file per sweep, keyed by command and range.

    Rows are stored already encoded, so a resumed run reassembles the
    exact bytes a straight run would have produced.  A state file
    written by a different sweep is ignored and overwritten.
    """

    def __init__(self, path: str | None, key: str):
        self.path = path
        self.key = key
        self.rows: dict = {}
        if path and os.path.exists(path):
            try:
                with open(path, encoding="utf-8") as fh:
                    blob = json.load(fh)
            except (OSError, ValueError) as err:
                raise BadInput(f"cannot read state file {path}: {err}")
            if isinstance(blob, dict) and blob.get("key") == key:
                self.rows = blob.get("rows", {})

    def get(self, param):
        return self.rows.get(str(param))

    def put(self, param, row) -> None:
        self.rows[str(param)] = row
        if self.path:
            tmp = self.path + ".tmp"
            with open(tmp, "w", encoding="utf-8") as fh:
                json.dump({"key": self.key, "rows": self.rows}, fh)
            os.replace(tmp, self.path)


def _sweep_rows(params: list, compute, checkpoint: _Checkpoint) -> list:
    """Encoded row per parameter, in parameter order, pooled when asked."""
    missing = [p for p in params if checkpoint.get(p) is None]
    cap = _thread_cap()
    if cap > 1 and len(missing) > 1:
        with ThreadPoolExecutor(max_workers=cap) as pool:
            for param, row in zip(missing, pool.map(compute, missing)):
                checkpoint.put(param, row)
    else:
        for param in missing:
            checkpoint.put(param, compute(param))
    return [checkpoint.get(p) for p in params]


# ---------------------------------------------------------------------------
# argument parsing helpers


def _csv_ints(text: str, expected: int, flag: str) -> tuple:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != expected:
        raise BadInput(f"{flag} needs {expected} comma-separated integers")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise BadInput(f"{flag} needs {expected} comma-separated integers")


def _resolvent(text: str) -> MonicCubic:
    """g0,g1,g2 with the constant coefficient first."""
    g0, g1, g2 = _csv_ints(text, 3, "--resolvent")
    return MonicCubic(g2, g1, g0)


def _cubic_form(text: str) -> BinaryForm:
    """c0,c1,c2,c3 leading coefficient first: c0 x^3 + c1 x^2 y + ..."""
    return BinaryForm(_csv_ints(text, 4, "--cubic"))


def _local_conditions(args) -> tuple:
    conds = []
    if getattr(args, "traced", False):
        conds.append(TRACED3)
    for spec_text in args.split or ():
        head, sep, tag = spec_text.partition(":")
        if not sep or tag not in SPLITTING_TAGS:
            tags = ", ".join(SPLITTING_TAGS)
            raise BadInput(f"--split wants P:TYPE with TYPE one of {tags}")
        try:
            p = int(head)
        except ValueError:
            raise BadInput("--split wants P:TYPE with P an integer prime")
        conds.append(LocalCondition.splitting(p, tag))
    for p in args.marked_root or ():
        conds.append(LocalCondition.marked_root(p))
    return tuple(conds)


def _cond_text(cond: LocalCondition) -> str:
    if cond.kind == "traced3":
        return "traced3"
    if cond.kind == "splitting":
        return f"split {cond.p}:{cond.tag}"
    return f"marked-root {cond.p}"


# ---------------------------------------------------------------------------
# counting subcommands


def _cmd_quad_superdisc(args, started):
    classes = enumerate_quadratics(args.invariant)
    q, q2, qp, q2p = qcounts(args.invariant)
    chosen = [
        qc
        for qc in classes
        if (not args.even_b or qc.even_b) and (not args.real or qc.real_roots)
    ]
    chosen.sort(key=lambda qc: (abs(qc.a), qc.a, qc.b))
    data = {
        "invariant": args.invariant,
        "filters": {"even_b": bool(args.even_b), "real_roots": bool(args.real)},
        "classes": [{"a": qc.a, "b": qc.b, "c": qc.c} for qc in chosen],
        "selected_count": len(chosen),
        "q": q,
        "q2": q2,
        "qplus": qp,
        "q2plus": q2p,
    }
    return _emit(args, "quad-superdisc", data, "ok", started)


def _cmd_cubic_count(args, started):
    conds = _local_conditions(args)
    rows = []
    total = Fraction(0)
    for cls in enumerate_cubics(args.disc):
        w = 1
        for cond in conds:
            w *= cond.weight(cls.rep)
            if w == 0:
                break
        if not w:
            continue
        weight = Fraction(w, cls.stab)
        total += weight
        rows.append({"coeffs": list(cls.rep.coeffs), "stab": cls.stab, "weight": weight})
    data = {
        "D": args.disc,
        "conditions": [_cond_text(c) for c in conds],
        "classes": rows,
        "h": total,
    }
    return _emit(args, "cubic-count", data, "ok", started)


def _cmd_shintani(args, started):
    sign = 1 if args.sign == "+" else -1
    coeffs = shintani_coeffs(sign, args.max, traced=args.traced)
    pairs = sorted(coeffs.items())
    if args.format == "csv":
        return _emit_csv(("n", "h"), pairs)
    data = {
        "sign": args.sign,
        "traced": bool(args.traced),
        "max": args.max,
        "table": [{"n": n, "h": value} for n, value in pairs],
    }
    return _emit(args, "shintani", data, "ok", started)


def _cmd_quartic_count(args, started):
    g = _resolvent(args.resolvent)
    cond = _COND_FLAGS[args.cond] if args.cond else "any"
    total = count_quartics(g, cond)
    rows = [
        {"coeffs": list(qc.rep.coeffs), "stab": qc.stab}
        for qc in quartic_classes(g)
        if _matches_condition(qc.rep.coeffs, cond)
    ]
    data = {
        "resolvent": str(g),
        "condition": cond,
        "count": total,
        "classes": rows,
    }
    return _emit(args, "quartic-count", data, "ok", started)


def _cmd_symmat_count(args, started):
    g = _resolvent(args.charpoly)
    mats = symmetric_matrices(g)
    data = {
        "charpoly": str(g),
        "count": count_symmetric_matrices(g),
        "matrices": [[list(row) for row in mat] for mat in mats],
    }
    return _emit(args, "symmat-count", data, "ok", started)


def _cmd_box_search(args, started):
    form = _cubic_form(args.cubic)
    if args.bound < 1:
        raise BadInput("--bound must be at least 1")
    pairs = search_boxes(form, args.bound, even_diagonal=args.even_diagonal)
    rows = []
    weighted = Fraction(0)
    for pair in pairs:
        weight = Fraction(1, pair.stab)
        weighted += weight
        rows.append(
            {
                "a": [list(r) for r in pair.a],
                "b": [list(r) for r in pair.b],
                "stab": pair.stab,
                "weight": weight,
            }
        )
    data = {
        "cubic": list(form.coeffs),
        "bound": args.bound,
        "even_diagonal": bool(args.even_diagonal),
        "classes": rows,
        "count": len(rows),
        "weighted_count": weighted,
    }
    return _emit(args, "box-search", data, "ok", started)


def _cmd_subring_zeta(args, started):
    t = 1 if args.traced else 0
    rows = subring_series(args.sigma, args.d0, args.q, t, args.terms)
    if args.format == "csv":
        return _emit_csv(("d", "count"), rows)
    data = {
        "sigma": args.sigma,
        "d0": args.d0,
        "q": args.q,
        "traced": bool(args.traced),
        "terms": args.terms,
        "table": [{"d": d, "count": c} for d, c in rows],
    }
    return _emit(args, "subring-zeta", data, "ok", started)


def _cmd_subring_oracle(args, started):
    try:
        with open(args.ring, encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, ValueError) as err:
        raise BadInput(f"cannot read ring file {args.ring}: {err}")
    count = subring_oracle(raw, args.p, args.k, args.t)
    data = {
        "structure_constants": raw,
        "p": args.p,
        "k": args.k,
        "t": args.t,
        "count": count,
    }
    return _emit(args, "subring-oracle", data, "ok", started)


def _cmd_classgroup(args, started):
    group = class_group(args.disc)
    data = {
        "D": group.disc,
        "h": group.h,
        "three_torsion": group.three_torsion,
        "elements": [[f.a, f.b, f.c] for f in group.elements],
    }
    return _emit(args, "classgroup", data, "ok", started)


# ---------------------------------------------------------------------------
# identity sweeps


def _cmd_quad_on_check(args, started):
    if args.max < 1:
        raise BadInput("--max must be at least 1")

    def one(n: int) -> dict:
        q, _, qp, _ = qcounts(n)
        _, q2, _, q2p = qcounts(4 * n)
        return _encode(
            {
                "n": n,
                "q2plus_4n": q2p,
                "q_n": q,
                "q2_4n": q2,
                "two_qplus_n": 2 * qp,
                "ok": q2p == q and q2 == 2 * qp,
            }
        )

    params = [s * m for m in range(1, args.max + 1) for s in (1, -1)]
    checkpoint = _Checkpoint(args.resume, f"quad-on-check:{args.max}")
    rows = _sweep_rows(params, one, checkpoint)
    violations = [row for row in rows if not row["ok"]]
    data = {
        "identity_name": "quadratic reflection",
        "parameter_range": f"0 < |n| <= {args.max}",
        "checked_count": 2 * len(rows),
        "violations": violations,
        "table": rows,
    }
    return _emit(args, "quad-on-check", data, "pass" if not violations else "fail", started)


def _cmd_cubic_on_check(args, started):
    if args.max < 1:
        raise BadInput("--max must be at least 1")

    def one(D: int) -> dict:
        lhs = h3(-27 * D)
        rhs = 3 * h(D) if D > 0 else h(D)
        return _encode({"D": D, "h3_reflected": lhs, "target": rhs, "ok": lhs == rhs})

    params = [s * m for m in range(1, args.max + 1) for s in (1, -1)]
    checkpoint = _Checkpoint(args.resume, f"cubic-on-check:{args.max}")
    rows = _sweep_rows(params, one, checkpoint)
    violations = [row for row in rows if not row["ok"]]
    data = {
        "identity_name": "cubic reflection",
        "parameter_range": f"0 < |D| <= {args.max}",
        "checked_count": len(rows),
        "violations": violations,
        "table": rows,
    }
    return _emit(args, "cubic-on-check", data, "pass" if not violations else "fail", started)


def _cmd_bq_check(args, started):
    report = check_BQ(_resolvent(args.resolvent))
    return _emit(args, "bq-check", report, report["status"], started)


def _cmd_fourier_level(args, started):
    group = make_filtered_group(args.p, args.f, args.e, args.h0)
    if not 0 <= args.i <= args.e:
        raise BadParams(f"--i must lie between 0 and e = {args.e}")
    transformed = fourier(group.level_indicator(args.i), group)
    scale = group.level_scale(args.i)
    mirror = group.level_indicator(args.e - args.i)
    expected = tuple(scale * v for v in mirror.table)
    matches = transformed.table == expected
    data = {
        "p": args.p,
        "f": args.f,
        "e": args.e,
        "h0": args.h0,
        "level": args.i,
        "mirror_level": args.e - args.i,
        "scale": scale,
        "group_order": len(group.elements()),
        "matches": matches,
        "violations": [] if matches else [{"level": args.i}],
    }
    return _emit(args, "fourier-level", data, "pass" if matches else "fail", started)


def _cmd_scholz_check(args, started):
    if args.max < 1:
        raise BadInput("--max must be at least 1")

    def one(D: int) -> dict:
        report = scholz_sweep_row(D)
        return _encode(report)

    params = [
        D
        for D in range(-args.max, args.max + 1)
        if D != 0 and D % 3 != 0 and is_fundamental(D)
    ]
    checkpoint = _Checkpoint(args.resume, f"scholz-check:{args.max}")
    rows = _sweep_rows(params, one, checkpoint)
    violations = []
    for row in rows:
        for tag in ("maximal_to_order_ok", "order_to_maximal_ok", "cross_ok"):
            if not row[tag]:
                violations.append({"D": row["D"], "check": tag})
    data = {
        "identity_name": "mirror 3-torsion",
        "parameter_range": f"fundamental D, 3 not dividing D, |D| <= {args.max}",
        "checked_count": len(rows),
        "violations": violations,
        "table": rows,
    }
    return _emit(args, "scholz-check", data, "pass" if not violations else "fail", started)


def scholz_sweep_row(D: int) -> dict:
    """Single-discriminant row matching scholz_sweep's table entries."""
    rep = scholz_check(D)
    cross = cross_check_maps(D)
    return {
        "D": D,
        "torsion": rep["torsion"],
        "maximal_to_order_ok": rep["maximal_to_order_ok"],
        "order_to_maximal_ok": rep["order_to_maximal_ok"],
        "ratios": cross["ratios"],
        "cross_ok": cross["status"] == "pass",
    }


# ---------------------------------------------------------------------------
# verify-all: the whole fixture suite under a time budget

G_ONE_REAL = MonicCubic(0, -1, -1)  # y^3 - y - 1
G_SPLIT = MonicCubic(0, -1, 0)  # y^3 - y
G_THREE_REAL = MonicCubic(0, -4, -1)  # y^3 - 4y - 1
G_MIXED = MonicCubic(-2, -3, 6)  # (y - 2)(y^2 - 3)
G_IMAG = MonicCubic(0, 1, 0)  # y^3 + y

BQ_FIXTURES = (G_ONE_REAL, G_SPLIT, G_THREE_REAL, G_MIXED, G_IMAG)


def _check_quad_fixtures():
    expected = {
        (15, "q"): 5,
        (15, "qplus"): 4,
        (60, "q"): 18,
        (60, "q2"): 8,
        (60, "qplus"): 13,
        (60, "q2plus"): 5,
        (240, "q2plus"): 18,
        (240, "q2"): 26,
    }
    bad = []
    for invariant in (15, 60, 240):
        q, q2, qp, q2p = qcounts(invariant)
        got = {"q": q, "q2": q2, "qplus": qp, "q2plus": q2p}
        for (inv, name), want in expected.items():
            if inv == invariant and got[name] != want:
                bad.append(f"{name}({inv}) = {got[name]} wanted {want}")
    return not bad, "; ".join(bad) or "8 pinned counts"


def _check_quad_reflection():
    report = check_quadratic_ON(60)
    return report["status"] == "pass", f"{report['checked_count']} identities"


def _check_cubic_fixtures():
    bad = []
    if h(1) != Fraction(1, 6):
        bad.append(f"h(1) = {h(1)}")
    if h(-27) != 1:
        bad.append(f"h(-27) = {h(-27)}")
    if h3(-27) != Fraction(1, 2):
        bad.append(f"h3(-27) = {h3(-27)}")
    return not bad, "; ".join(bad) or "h(1), h(-27), h3(-27)"


def _check_cubic_reflection():
    report = check_cubic_ON(20)
    return report["status"] == "pass", f"{report['checked_count']} identities"


def _check_shintani_termwise():
    plus = shintani_coeffs(1, 12)
    minus = shintani_coeffs(-1, 12)
    tplus = shintani_coeffs(1, 12, traced=True)
    tminus = shintani_coeffs(-1, 12, traced=True)
    bad = [n for n in range(1, 13) if tminus[n] != 3 * plus[n] or tplus[n] != minus[n]]
    return not bad, f"coefficients 1..12, mismatches at {bad}" if bad else "coefficients 1..12"


def _check_quartic_fixtures():
    bad = []
    if count_quartics(G_ONE_REAL) != Fraction(1, 2):
        bad.append("count(y^3-y-1)")
    triple = (
        count_quartics(G_MIXED, "indefinite"),
        count_quartics(G_MIXED, "pos_def"),
        count_quartics(G_MIXED, "neg_def"),
    )
    if triple != (Fraction(1, 2), Fraction(1, 2), Fraction(0)):
        bad.append(f"mixed resolvent triple {triple}")
    if count_symmetric_matrices(G_MIXED) != 0:
        bad.append("s of the mixed resolvent")
    if count_symmetric_matrices(G_SPLIT) != 6:
        bad.append("s(y^3-y)")
    return not bad, "; ".join(bad) or "quartic counts and symmetric-matrix counts"


def _check_bq_suite():
    bad = [str(g) for g in BQ_FIXTURES if check_BQ(g)["status"] == "fail"]
    return not bad, f"failures: {bad}" if bad else f"{len(BQ_FIXTURES)} resolvents"


def _check_box_search():
    form = BinaryForm((1, 0, -1, -1))
    doubled = BinaryForm((2, 0, -2, -2))
    plain = search_boxes(form, 2)
    evened = search_boxes(doubled, 2, even_diagonal=True)
    ok = (
        len(plain) == 2
        and len(evened) == 1
        and Fraction(1, evened[0].stab) == Fraction(1, 2)
    )
    return ok, f"{len(plain)} classes, then {len(evened)} even-diagonal"


def _check_subring_settlement():
    bad = []
    for sigma in SUBRING_TYPES:
        for p in (2, 3):
            table = fixture_ring(sigma, p)
            disc = ring_disc(table)
            d0 = 0
            while disc % p == 0:
                disc //= p
                d0 += 1
            ts = (0, 1) if p == 3 else (0,)
            for t in ts:
                for k in range(4):
                    params = SubringParams(sigma, d0, d0 + 2 * k, t, p)
                    if traced_subring_count(params) != subring_oracle(table, p, k, t):
                        bad.append((sigma, p, k, t))
    return not bad, f"mismatches {bad}" if bad else "closed form vs oracle, k <= 3"


def _check_fourier_duality():
    bad = []
    for p, f_deg, e, h0 in ((3, 1, 1, 1), (3, 1, 1, 3), (2, 1, 2, 2), (2, 2, 1, 4)):
        group = make_filtered_group(p, f_deg, e, h0)
        for i in range(e + 1):
            got = fourier(group.level_indicator(i), group)
            scale = group.level_scale(i)
            want = tuple(scale * v for v in group.level_indicator(e - i).table)
            if got.table != want:
                bad.append((p, f_deg, e, h0, i))
    return not bad, f"mismatches {bad}" if bad else "4 groups, all levels"


def _check_classgroup_pins():
    bad = []
    for D, (order, torsion) in ((-23, (3, 3)), (-4, (1, 1)), (229, (3, 3)), (-135, (6, 3))):
        group = class_group(D)
        if (group.h, group.three_torsion) != (order, torsion):
            bad.append(f"D={D}: ({group.h},{group.three_torsion})")
    return not bad, "; ".join(bad) or "4 pinned groups"


def _check_genus():
    bad = [
        D
        for D in range(-100, 101)
        if D and is_fundamental(D) and genus_check(D)["status"] != "pass"
    ]
    return not bad, f"violations at {bad}" if bad else "fundamental |D| <= 100"


def _check_scholz():
    report = scholz_sweep(200)
    detail = f"{report['checked']} discs, {len(report['violations'])} violations"
    return report["status"] == "pass", detail


def _make_disc_reduction_check(seed: int):
    def run():
        pairs = [(2, 4), (5, 25), (5, -575)]
        rng = random.Random(seed)
        while len(pairs) < 9:
            p = rng.choice((2, 5, 7))
            m = rng.randint(-800 // (p * p), 800 // (p * p))
            D = p * p * m
            if m and D % 4 in (0, 1) and (p, D) not in pairs:
                pairs.append((p, D))
        bad = [
            (p, D) for p, D in pairs if check_disc_reduction(p, D)["status"] != "pass"
        ]
        return not bad, f"violations at {bad}" if bad else f"{len(pairs)} pairs, seed {seed}"

    return run


def _cmd_verify_all(args, started):
    if args.budget <= 0:
        raise BadInput("--budget must be positive")
    checks = [
        ("quad-fixtures", _check_quad_fixtures),
        ("quad-reflection", _check_quad_reflection),
        ("cubic-fixtures", _check_cubic_fixtures),
        ("cubic-reflection", _check_cubic_reflection),
        ("shintani-termwise", _check_shintani_termwise),
        ("quartic-fixtures", _check_quartic_fixtures),
        ("bq-identities", _check_bq_suite),
        ("box-search", _check_box_search),
        ("subring-settlement", _check_subring_settlement),
        ("fourier-duality", _check_fourier_duality),
        ("classgroup-pins", _check_classgroup_pins),
        ("genus-index", _check_genus),
        ("disc-reduction", _make_disc_reduction_check(args.seed)),
        ("scholz-sweep", _check_scholz),
    ]
    rows = []
    timing = {}
    tally = {"pass": 0, "fail": 0, "skipped": 0}
    for name, run in checks:
        if time.monotonic() - started > args.budget:
            rows.append({"name": name, "status": "skipped", "detail": "budget exhausted"})
            tally["skipped"] += 1
            continue
        t0 = time.monotonic()
        ok, detail = run()
        timing[name] = f"{time.monotonic() - t0:.3f}"
        status = "pass" if ok else "fail"
        rows.append({"name": name, "status": status, "detail": detail})
        tally[status] += 1
    data = {
        "budget": f"{args.budget:g}",
        "checks": rows,
        "counts": tally,
    }
    status = "fail" if tally["fail"] else "pass"
    doc = {
        "schema": SCHEMA,
        "command": "verify-all",
        "data": _encode(data),
        "status": status,
        "timing": timing,
        "wall_time": f"{time.monotonic() - started:.3f}",
    }
    if args.pretty:
        sys.stdout.write(f"verify-all  [{SCHEMA}]\n")
        _pretty_block(doc["data"], sys.stdout)
        sys.stdout.write(f"status: {status}\n")
        sys.stdout.write(f"wall_time: {doc['wall_time']}s\n")
    else:
        sys.stdout.write(json.dumps(doc, separators=(",", ":")) + "\n")
    return 1 if status == "fail" else 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human table instead of JSON")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized property checks")

    resumable = argparse.ArgumentParser(add_help=False)
    resumable.add_argument("--resume", metavar="PATH", help="checkpoint state file for the sweep")

    parser = argparse.ArgumentParser(
        prog="reflect-rings",
        description="Exact counts of binary forms and machine checks of their reflection identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("quad-superdisc", parents=[common], help="quadratic classes with a given superdiscriminant")
    sp.add_argument("--invariant", type=int, required=True)
    sp.add_argument("--even-b", action="store_true", dest="even_b")
    sp.add_argument("--real", action="store_true")
    sp.set_defaults(run=_cmd_quad_superdisc)

    sp = sub.add_parser("quad-on-check", parents=[common, resumable], help="quadratic reflection sweep")
    sp.add_argument("--max", type=int, required=True)
    sp.set_defaults(run=_cmd_quad_on_check)

    sp = sub.add_parser("cubic-count", parents=[common], help="cubic classes of one discriminant")
    sp.add_argument("--disc", type=int, required=True)
    sp.add_argument("--traced", action="store_true")
    sp.add_argument("--split", action="append", metavar="P:TYPE")
    sp.add_argument("--marked-root", action="append", type=int, dest="marked_root", metavar="P")
    sp.set_defaults(run=_cmd_cubic_count)

    sp = sub.add_parser("cubic-on-check", parents=[common, resumable], help="cubic reflection sweep")
    sp.add_argument("--max", type=int, required=True)
    sp.set_defaults(run=_cmd_cubic_on_check)

    sp = sub.add_parser("shintani", parents=[common], help="Dirichlet coefficients of the class-number series")
    sp.add_argument("--sign", choices=("+", "-"), required=True)
    sp.add_argument("--max", type=int, required=True)
    sp.add_argument("--traced", action="store_true")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(run=_cmd_shintani)

    sp = sub.add_parser("quartic-count", parents=[common], help="quartic classes with a given resolvent")
    sp.add_argument("--resolvent", required=True, metavar="g0,g1,g2")
    sp.add_argument("--cond", choices=tuple(_COND_FLAGS))
    sp.set_defaults(run=_cmd_quartic_count)

    sp = sub.add_parser("symmat-count", parents=[common], help="symmetric matrices with a given characteristic polynomial")
    sp.add_argument("--charpoly", required=True, metavar="g0,g1,g2")
    sp.set_defaults(run=_cmd_symmat_count)

    sp = sub.add_parser("bq-check", parents=[common], help="quartic-count identities for one resolvent")
    sp.add_argument("--resolvent", required=True, metavar="g0,g1,g2")
    sp.set_defaults(run=_cmd_bq_check)

    sp = sub.add_parser("box-search", parents=[common], help="symmetric matrix pairs with a prescribed pencil determinant")
    sp.add_argument("--cubic", required=True, metavar="c0,c1,c2,c3")
    sp.add_argument("--bound", type=int, required=True)
    sp.add_argument("--even-diagonal", action="store_true", dest="even_diagonal")
    sp.set_defaults(run=_cmd_box_search)

    sp = sub.add_parser("fourier-level", parents=[common], help="transform of a level indicator on a filtered group")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--f", type=int, required=True)
    sp.add_argument("--e", type=int, required=True)
    sp.add_argument("--h0", type=int, required=True)
    sp.add_argument("--i", type=int, required=True)
    sp.set_defaults(run=_cmd_fourier_level)

    sp = sub.add_parser("subring-zeta", parents=[common], help="subring counts by discriminant valuation")
    sp.add_argument("--sigma", choices=SUBRING_TYPES, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--terms", type=int, required=True)
    sp.add_argument("--traced", action="store_true")
    sp.add_argument("--d0", type=int, default=0, help="discriminant valuation of the ambient ring (ramified types)")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(run=_cmd_subring_zeta)

    sp = sub.add_parser("subring-oracle", parents=[common], help="brute-force subring count from structure constants")
    sp.add_argument("--ring", required=True, metavar="FILE.json")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--t", type=int, default=0)
    sp.set_defaults(run=_cmd_subring_oracle)

    sp = sub.add_parser("classgroup", parents=[common], help="narrow form class group of one discriminant")
    sp.add_argument("--disc", type=int, required=True)
    sp.set_defaults(run=_cmd_classgroup)

    sp = sub.add_parser("scholz-check", parents=[common, resumable], help="mirror 3-torsion sweep")
    sp.add_argument("--max", type=int, required=True)
    sp.set_defaults(run=_cmd_scholz_check)

    sp = sub.add_parser("verify-all", parents=[common], help="full fixture suite under a time budget")
    sp.add_argument("--budget", type=float, required=True, metavar="SECONDS")
    sp.set_defaults(run=_cmd_verify_all)

    return parser


_CSV_FLAGS = ("--resolvent", "--charpoly", "--cubic")


def _glue_negative_values(argv: list) -> list:
    """Rewrite ["--cubic", "-1,0,..."] as ["--cubic=-1,0,..."].

    argparse reads a separate value token starting with "-" as another
    option, and coefficient lists begin with a sign often enough that
    demanding the "=" spelling from the user would be hostile.
    """
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _CSV_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(tok + "=" + argv[i + 1])
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_negative_values(list(sys.argv[1:] if argv is None else argv)))
    if getattr(args, "format", "json") == "csv" and args.pretty:
        parser.error("--pretty applies to the JSON format only")
    started = time.monotonic()
    try:
        return args.run(args, started)
    except ReflectRingsError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
