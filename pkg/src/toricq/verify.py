"""Predicted-versus-measured harness for the box-polytope code families.

Every row compares a closed-form prediction against a measurement made by
construction (ranks, exhaustive or bounded distance searches, containment
tests).  DISAGREE is an ordinary outcome; only internal errors are failures.
"""

from __future__ import annotations

import csv
import io
import json
import warnings
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field as dc_field

from toricq import __version__
from toricq.codes import code_from_polytope, dual_polytope_claim, evaluation_matrix, polytope_exponents, predicted_params
from toricq.css import build_family_code, family_threshold
from toricq.distance import DEFAULT_BUDGET, DEFAULT_SEED, min_weight
from toricq.field import field_of_order
from toricq.geometry import ParameterWarning, check_params

AGREE = "AGREE"
DISAGREE = "DISAGREE"
UNVERIFIED = "UNVERIFIED"

CLAIMS = {
    "DIM": "dim C_b = ((q-2)/r + 1) q/2 + b(q-1)",
    "DIST": "d(C_b) = (q-1-a)(q-1) with a = b + (q-2)/r",
    "DUAL": "C_b^perp is the code of the box at b' = (r-1)(q-2)/r - b",
    "NEST": "C_b1^perp <= C_b2 and C_b2^perp <= C_b1 whenever b1 + b2 >= (r-1)(q-2)/r",
    "CSS-K": "k = ((q-2)/r + 1) q/2 + (b1+b2)(q-1)",
    "CSS-DZ": "d_z = (q-1-min(b1,b2))(q-1)",
    "CSS-DX": "d_x = (q-1-max(b1,b2))(q-1)",
    "PURITY": "pure to d_x and d_z when b1 + b2 != (r-1)(q-2)/r",
}

CSV_COLUMNS = ("claim", "q", "r", "b", "b1", "b2", "predicted", "measured", "exact", "status", "method", "enumerated", "note")

Instance = tuple[int, ...]


def status_of(predicted, measured, exact: bool) -> str:
    if not exact:
        return UNVERIFIED
    return AGREE if predicted == measured else DISAGREE


@dataclass(frozen=True)
class ClaimRow:
    claim: str
    q: int
    r: int
    b: int | None
    b1: int | None
    b2: int | None
    predicted: int | bool
    measured: int | bool
    exact: bool
    status: str
    method: str = ""
    enumerated: int | None = None
    note: str = ""

    @classmethod
    def make(cls, claim: str, inst: Instance, predicted, measured, exact: bool, **kw) -> ClaimRow:
        q, r, *bs = inst
        b, b1, b2 = (bs[0], None, None) if len(bs) == 1 else (None, bs[0], bs[1])
        return cls(claim, q, r, b, b1, b2, predicted, measured, exact, status_of(predicted, measured, exact), **kw)

    @property
    def instance(self) -> Instance:
        if self.b is not None:
            return (self.q, self.r, self.b)
        return (self.q, self.r, self.b1, self.b2)


@dataclass
class VerificationReport:
    budget: int
    seed: int
    rows: list[ClaimRow] = dc_field(default_factory=list)
    version: str = __version__

    def fields(self) -> list[dict]:
        out = []
        for q in sorted({row.q for row in self.rows}):
            F = field_of_order(q)
            out.append({"q": q, "p": F.p, "m": F.m, "modulus": list(F.modulus), "generator": F.generator})
        return out

    def counts(self) -> dict[str, int]:
        c = {AGREE: 0, DISAGREE: 0, UNVERIFIED: 0}
        for row in self.rows:
            c[row.status] += 1
        return c


def _note_divisibility(q: int, r: int) -> str:
    return "r does not divide q" if q % r else ""


def _join(*parts: str) -> str:
    return "; ".join(p for p in parts if p)


def verify_code_claims(q: int, r: int, b: int, budget: int = DEFAULT_BUDGET, seed: int = DEFAULT_SEED) -> list[ClaimRow]:
    inst = (q, r, b)
    pred = predicted_params(q, r, b)
    field = field_of_order(q)
    U = polytope_exponents(q, r, b)
    rank = field.rank(evaluation_matrix(field, U.points))
    base = _note_divisibility(q, r)
    rows = [ClaimRow.make("DIM", inst, pred.k, rank, True, note=_join(base, f"lattice points {len(U)}"))]

    d = min_weight(code_from_polytope(q, r, b), budget, seed=seed)
    rows.append(ClaimRow.make("DIST", inst, pred.d, d.value, d.exact, method=d.method, enumerated=d.enumerated, note=base))

    if b <= family_threshold(q, r):
        claim = dual_polytope_claim(q, r, b)
        note = f"b'={claim.b_dual} claimed dim {len(claim.claimed)} exact dual dim {claim.exact_dual.k}"
        rows.append(ClaimRow.make("DUAL", inst, True, claim.agrees, True, note=_join(base, note)))
    return rows


def verify_css_claims(
    q: int, r: int, b1: int, b2: int, budget: int = DEFAULT_BUDGET, seed: int = DEFAULT_SEED
) -> list[ClaimRow]:
    inst = (q, r, b1, b2)
    res = build_family_code(q, r, b1, b2, budget, seed)
    base = _note_divisibility(q, r)
    rows = [ClaimRow.make("NEST", inst, True, res.nesting.nested, True, note=_join(base, res.nesting.describe()))]
    code = res.code
    if code is None:
        return rows
    p = res.params
    rows.append(ClaimRow.make("CSS-K", inst, p.predicted_k, code.k, True, note=_join(base, f"k1={code.k1} k2={code.k2} n={code.n}")))
    for claim, pred, meas in (("CSS-DZ", p.predicted_dz, code.d_z), ("CSS-DX", p.predicted_dx, code.d_x)):
        rows.append(ClaimRow.make(claim, inst, pred, meas.value, meas.exact, method=meas.method, enumerated=meas.enumerated, note=base))
    if p.purity_predicted:
        note = (
            f"wt(C1)={code.weight_c1.value} wt(C1-C2perp)={code.weight_c1_rel.value} "
            f"wt(C2)={code.weight_c2.value} wt(C2-C1perp)={code.weight_c2_rel.value}"
        )
        rows.append(ClaimRow.make("PURITY", inst, True, code.pure_x and code.pure_z, code.purity_exact, note=_join(base, note)))
    return rows


def verify_instance(inst: Instance, budget: int = DEFAULT_BUDGET, seed: int = DEFAULT_SEED) -> list[ClaimRow]:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ParameterWarning)
        if len(inst) == 3:
            return verify_code_claims(*inst, budget=budget, seed=seed)
        if len(inst) == 4:
            return verify_css_claims(*inst, budget=budget, seed=seed)
    raise ValueError(f"instance {inst} must have 3 or 4 entries")


def _job(args):
    inst, budget, seed = args
    return verify_instance(inst, budget, seed)


def instance_key(inst: Instance):
    return (inst[0], inst[1], len(inst), inst[2:])


def run_suite(
    instances: Iterable[Instance],
    budget: int = DEFAULT_BUDGET,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
) -> VerificationReport:
    """Verify every instance; rows are ordered by instance key, not completion."""
    insts = sorted({tuple(int(v) for v in i) for i in instances}, key=instance_key)
    jobs = [(i, budget, seed) for i in insts]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_job, jobs))
    else:
        results = [_job(j) for j in jobs]
    return VerificationReport(budget, seed, [row for rows in results for row in rows])


def admissible_r(q: int) -> list[int]:
    return [r for r in range(1, q - 1) if (q - 2) % r == 0]


def default_instances(qs: Sequence[int] = (3, 4, 5)) -> list[Instance]:
    """All (q, r, b) and all hypothesis-satisfying (q, r, b1, b2) for each q."""
    out: list[Instance] = []
    for q in qs:
        for r in admissible_r(q):
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", ParameterWarning)
                width = check_params(q, r, 0)
                top = family_threshold(q, r)
            out.extend((q, r, b) for b in range(q - 1 - width))
            out.extend((q, r, b1, b2) for b1 in range(top + 1) for b2 in range(top + 1) if b1 + b2 >= top)
    return out


def parse_config(text: str) -> list[Instance]:
    """Instances from lines ``q r b`` or ``q r b1 b2``; ``#`` starts a comment."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            vals = tuple(int(t) for t in line.split())
        except ValueError as exc:
            raise ValueError(f"line {lineno}: expected integers, got {line!r}") from exc
        if len(vals) not in (3, 4):
            raise ValueError(f"line {lineno}: expected 'q r b' or 'q r b1 b2', got {line!r}")
        out.append(vals)
    return out


# -- output -----------------------------------------------------------------------------


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def report_header(report: VerificationReport) -> list[str]:
    lines = [f"toricq {report.version} budget={report.budget} seed={report.seed}"]
    for f in report.fields():
        mod = ",".join(str(c) for c in f["modulus"])
        lines.append(f"field q={f['q']} p={f['p']} m={f['m']} modulus={mod} g={f['generator']}")
    lines.extend(f"claim {cid}: {text}" for cid, text in CLAIMS.items())
    return lines


def to_csv(report: VerificationReport) -> str:
    buf = io.StringIO()
    for line in report_header(report):
        buf.write(f"# {line}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in report.rows:
        w.writerow([_cell(getattr(row, c)) for c in CSV_COLUMNS])
    return buf.getvalue()


def to_json(report: VerificationReport) -> str:
    doc = {
        "version": report.version,
        "budget": report.budget,
        "seed": report.seed,
        "fields": report.fields(),
        "claims": CLAIMS,
        "rows": [asdict(r) for r in report.rows],
    }
    return json.dumps(doc, indent=2) + "\n"


def format_table(report: VerificationReport) -> str:
    cols = ("claim", "instance", "predicted", "measured", "exact", "status", "method")
    table = [cols]
    for row in report.rows:
        inst = ",".join(str(v) for v in row.instance)
        table.append((row.claim, f"({inst})", _cell(row.predicted), _cell(row.measured), _cell(row.exact), row.status, row.method))
    widths = [max(len(r[i]) for r in table) for i in range(len(cols))]
    lines = ["  ".join(c.ljust(wd) for c, wd in zip(r, widths)).rstrip() for r in table]
    lines.insert(1, "  ".join("-" * wd for wd in widths))
    c = report.counts()
    lines.append(f"{len(report.rows)} rows: {c[AGREE]} agree, {c[DISAGREE]} disagree, {c[UNVERIFIED]} unverified")
    return "\n".join(lines) + "\n"
