"""Input ingestion, check orchestration and report emission.

Spec files are TOML with sections `algebra`, `r_matrix`, `twist`, `gauge`,
`representation`, `rmatrix_direct` and `settings`; rationals are strings
"p" or "p/q", h-series are arrays of such strings indexed by power, and
monomials are "*"-joined generator names with optional "^k" exponents
("1" is the unit).  See README.md for the full schema.
"""

from __future__ import annotations

import argparse
import hashlib
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from time import perf_counter

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import __version__
from .errors import KernelError, SchemaError
from .scalar import DEFAULT_TRUNCATION, HSeries, parse_rational
from .liesuper import (LieSuperalgebra, RMatrix, check_gcybe_invariance,
                       coboundary_cobracket, schouten_bracket,
                       validate_cobracket, validate_superalgebra)
from .enveloping import UEAElement, pbw_normalize
from .tensor import TensorElement, outer
from .twist import (Twist, check_cocycle, check_counit_normalization,
                    cocycle_residual, counit_residual,
                    verify_gauge_equivalence, verify_quasitriangular)
from .rep import (GradedMatrix, GradedSpace, Representation, braid_matrix,
                  matrix_R, pair_parities, qybe_components, qybe_embedded,
                  validate_representation)
from .report import (Report, ReportRecord, emit_human, emit_machine,
                     parse_machine)

CHECK_GROUPS = ("algebra", "cybe", "cocycle", "hopf", "qybe", "braid", "gauge")

_NAME_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(\^(\d+))?$")


def parse_word(text, algebra) -> tuple:
    """Monomial string -> letter index sequence ("1" is the empty word)."""
    text = str(text).strip()
    if text == "1" or not text:
        return ()
    letters = []
    for part in re.split(r"[*\s]+", text):
        m = _NAME_RE.match(part)
        if not m:
            raise SchemaError(f"bad monomial factor {part!r} in {text!r}")
        idx = algebra.index(m.group(1))
        exp = int(m.group(3)) if m.group(3) else 1
        letters.extend([idx] * exp)
    return tuple(letters)


def _word_parity(algebra, letters) -> int:
    return sum(algebra.parities[i] for i in letters) % 2


@dataclass
class SpecFile:
    """Parsed, name-resolved input; truncation-dependent objects are built
    on demand so --order can override the file."""

    path: str
    raw: bytes
    settings: dict
    algebra: LieSuperalgebra | None = None
    r_matrix: RMatrix | None = None
    twist_terms: list = field(default_factory=list)
    has_twist: bool = False
    gauge_terms: list = field(default_factory=list)
    has_gauge: bool = False
    rep_data: dict | None = None
    direct_data: dict | None = None

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.raw).hexdigest()[:16]

    # -- builders ---------------------------------------------------------

    def build_twist(self, order) -> Twist:
        el = TensorElement.unit(self.algebra, 2, order)
        for power, left, right, coeff in self.twist_terms:
            if power > order:
                continue
            piece = outer(pbw_normalize(self.algebra, left, order),
                          pbw_normalize(self.algebra, right, order))
            el = el + piece.scale(HSeries.monomial(power, coeff, order))
        return Twist(el)

    def build_gauge(self, order) -> UEAElement:
        el = UEAElement.unit(self.algebra, order)
        for power, word, coeff in self.gauge_terms:
            if power > order:
                continue
            piece = pbw_normalize(self.algebra, word, order)
            el = el + piece.scale(HSeries.monomial(power, coeff, order))
        return el

    def build_representation(self, order) -> Representation:
        space = GradedSpace(self.rep_data["n_even"], self.rep_data["m_odd"])
        images = {}
        for idx, rows in self.rep_data["images"].items():
            images[idx] = GradedMatrix(
                space.parities, order,
                [[_entry_series(v, order) for v in row] for row in rows])
        return Representation(space, images, order)

    def build_direct_matrix(self, order):
        space = GradedSpace(self.direct_data["n_even"], self.direct_data["m_odd"])
        rows = self.direct_data["rows"]
        mat = GradedMatrix(
            pair_parities(space), order,
            [[_entry_series(v, order) for v in row] for row in rows])
        return space, mat


def _entry_series(value, order) -> HSeries:
    if isinstance(value, list):
        return HSeries.from_strings(value, order)
    return HSeries.constant(parse_rational(value), order)


def load_spec(path) -> SpecFile:
    """Parse and validate a spec file (names resolved, parities checked)."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from None
    try:
        data = tomllib.loads(raw.decode("utf-8"))
    except tomllib.TOMLDecodeError as exc:
        raise SchemaError(f"{path}: parse error: {exc}") from None

    settings = data.get("settings", {})
    if not isinstance(settings, dict):
        raise SchemaError("settings must be a table")
    order = settings.get("truncation_order", DEFAULT_TRUNCATION)
    if not isinstance(order, int) or order < 0:
        raise SchemaError("settings.truncation_order must be a non-negative integer")
    for name in settings.get("checks", []):
        if name != "all" and name not in CHECK_GROUPS:
            raise SchemaError(f"unknown check group {name!r}")

    spec = SpecFile(path=str(path), raw=raw, settings=settings)

    if "algebra" in data:
        alg = data["algebra"]
        basis = alg.get("basis")
        if not basis:
            raise SchemaError("algebra.basis must list [name, parity] pairs")
        try:
            pairs = [(str(n), int(p)) for n, p in basis]
        except (TypeError, ValueError):
            raise SchemaError("algebra.basis entries must be [name, parity]") from None
        names = [n for n, _ in pairs]
        index = {n: i for i, n in enumerate(names)}
        brackets = {}
        for item in alg.get("bracket", []):
            for fld in ("left", "right", "terms"):
                if fld not in item:
                    raise SchemaError(f"algebra.bracket entry missing {fld!r}")
            for side in ("left", "right"):
                if item[side] not in index:
                    raise SchemaError(
                        f"algebra.bracket references undeclared generator "
                        f"{item[side]!r}")
            key = (index[item["left"]], index[item["right"]])
            terms = []
            for t in item["terms"]:
                tgt, coeff = t
                if tgt not in index:
                    raise SchemaError(
                        f"bracket [{item['left']},{item['right']}] references "
                        f"undeclared generator {tgt!r}")
                terms.append((index[tgt], parse_rational(coeff)))
            if key in brackets:
                raise SchemaError(
                    f"duplicate bracket [{item['left']},{item['right']}]")
            brackets[key] = terms
        complete = alg.get("complete", True)
        spec.algebra = LieSuperalgebra.from_table(pairs, brackets,
                                                  default_order=order,
                                                  complete=complete)

    def need_algebra(section):
        if spec.algebra is None:
            raise SchemaError(f"section {section!r} requires an algebra section")
        return spec.algebra

    if "r_matrix" in data:
        algebra = need_algebra("r_matrix")
        terms = {}
        for left, right, coeff in data["r_matrix"].get("terms", []):
            i, j = algebra.index(str(left)), algebra.index(str(right))
            if (algebra.parities[i] + algebra.parities[j]) % 2:
                raise SchemaError(
                    f"r_matrix term {left}(x){right} is odd (parity mismatch)")
            terms[(i, j)] = terms.get((i, j), Fraction(0)) + parse_rational(coeff)
        spec.r_matrix = RMatrix(terms)

    if "twist" in data:
        algebra = need_algebra("twist")
        spec.has_twist = True
        for item in data["twist"].get("terms", []):
            power, left, right, coeff = item
            if not isinstance(power, int) or power < 1:
                raise SchemaError(f"twist term order must be >= 1, got {power!r}")
            lw = parse_word(left, algebra)
            rw = parse_word(right, algebra)
            if (_word_parity(algebra, lw) + _word_parity(algebra, rw)) % 2:
                raise SchemaError(
                    f"twist term {left}(x){right} is odd (parity mismatch)")
            spec.twist_terms.append((power, lw, rw, parse_rational(coeff)))

    if "gauge" in data:
        algebra = need_algebra("gauge")
        spec.has_gauge = True
        for item in data["gauge"].get("terms", []):
            power, word, coeff = item
            if not isinstance(power, int) or power < 1:
                raise SchemaError(f"gauge term order must be >= 1, got {power!r}")
            w = parse_word(word, algebra)
            if _word_parity(algebra, w):
                raise SchemaError(f"gauge term {word} is odd (parity mismatch)")
            spec.gauge_terms.append((power, w, parse_rational(coeff)))

    if "representation" in data:
        algebra = need_algebra("representation")
        rd = data["representation"]
        n_even, m_odd = int(rd.get("n_even", 0)), int(rd.get("m_odd", 0))
        dim = n_even + m_odd
        if dim < 1:
            raise SchemaError("representation space must have dimension >= 1")
        images = {}
        for name, rows in rd.get("images", {}).items():
            idx = algebra.index(name)
            if len(rows) != dim or any(len(r) != dim for r in rows):
                raise SchemaError(f"representation.images.{name} must be "
                                  f"{dim}x{dim}")
            for row in rows:
                for v in row:
                    _entry_series(v, 0)  # validates the literals
            images[idx] = rows
        missing = [algebra.names[i] for i in range(algebra.dim)
                   if i not in images]
        if missing:
            raise SchemaError(f"representation missing images for {missing}")
        spec.rep_data = {"n_even": n_even, "m_odd": m_odd, "images": images}

    if "rmatrix_direct" in data:
        rd = data["rmatrix_direct"]
        n_even, m_odd = int(rd.get("n_even", 0)), int(rd.get("m_odd", 0))
        dim = n_even + m_odd
        if dim < 1:
            raise SchemaError("rmatrix_direct space must have dimension >= 1")
        rows = rd.get("rows", [])
        if len(rows) != dim * dim or any(len(r) != dim * dim for r in rows):
            raise SchemaError(f"rmatrix_direct.rows must be {dim*dim}x{dim*dim}")
        for row in rows:
            for v in row:
                _entry_series(v, 0)
        spec.direct_data = {"n_even": n_even, "m_odd": m_odd, "rows": rows}

    payload = (spec.algebra is not None or spec.direct_data is not None)
    if not payload:
        raise SchemaError("no checkable payload (need algebra or rmatrix_direct)")
    return spec


# -- orchestration -----------------------------------------------------------


def run_checks(spec: SpecFile, selection=("all",), order=None,
               allow_invalid=False) -> Report:
    """Run the selected check groups in dependency order.

    Downstream groups are skipped with a reason when a group they rely on
    failed, unless --allow-invalid-twist overrides the twist gate.
    """
    if order is None:
        order = spec.settings.get("truncation_order", DEFAULT_TRUNCATION)
    if not selection or "all" in selection:
        selected = set(CHECK_GROUPS)
    else:
        selected = set(selection)
        bad = selected - set(CHECK_GROUPS)
        if bad:
            raise SchemaError(f"unknown check group(s): {sorted(bad)}")
    allow_invalid = allow_invalid or bool(
        spec.settings.get("allow_invalid_twist", False))

    report = Report(kernel=__version__, input_digest=spec.digest,
                    truncation_order=order)
    status: dict = {}

    def record(check, equation, verdict, detail="", ms=None):
        report.records.append(ReportRecord(check, equation, verdict, detail, ms))

    def timed(fn):
        t0 = perf_counter()
        out = fn()
        return out, int((perf_counter() - t0) * 1000)

    def summarize(validation):
        """Collapse a ValidationReport into (ok, first-failure detail)."""
        ok = validation.ok
        first = validation.first_failure()
        extra = len(validation.failures) - 1
        detail = ""
        if first is not None:
            detail = f"{first.name}: {first.detail}" if first.detail else first.name
            if extra > 0:
                detail += f" (+{extra} more)"
        return ok, detail

    def skip_group(group, reason):
        record(f"{group}.all", None, "skip", f"skipped: {reason}")
        status[group] = "skip"

    def deps_ok(group, deps):
        for d in deps:
            if status.get(d) == "fail" and not (allow_invalid and d == "cocycle"):
                skip_group(group, f"{d} checks failed")
                return False
        return True

    # group: algebra ---------------------------------------------------------
    if "algebra" in selected and spec.algebra is not None:
        validation, ms = timed(lambda: validate_superalgebra(spec.algebra))
        ok, detail = summarize(validation)
        record("algebra.structure", None, "pass" if ok else "fail", detail, ms)
        status["algebra"] = "pass" if ok else "fail"

    # group: cybe ------------------------------------------------------------
    if "cybe" in selected and spec.r_matrix is not None:
        if deps_ok("cybe", ["algebra"]):
            alg, r = spec.algebra, spec.r_matrix

            def run_schouten():
                s = schouten_bracket(alg, r)
                if s.is_zero():
                    return True, ""
                key, c = s.sorted_terms()[0]
                return False, f"[[r,r]] has {s.format_key(key)}: {c}"

            (ok, detail), ms = timed(run_schouten)
            record("cybe.schouten", None, "pass" if ok else "fail", detail, ms)
            ok2, ms = timed(lambda: check_gcybe_invariance(alg, r))
            record("cybe.gcybe", "eq2", "pass" if ok2 else "fail",
                   "" if ok2 else "[[r,r]] is not ad-invariant", ms)

            def run_cobracket():
                phi = coboundary_cobracket(alg, r)
                return validate_cobracket(alg, phi)

            validation, ms = timed(run_cobracket)
            ok3, detail = summarize(validation)
            record("cybe.cobracket", "eq14", "pass" if ok3 else "fail", detail, ms)
            status["cybe"] = "pass" if (ok and ok2 and ok3) else "fail"

    # group: cocycle -----------------------------------------------------------
    twist_obj = None
    if "cocycle" in selected and spec.has_twist:
        if deps_ok("cocycle", ["algebra"]):
            try:
                twist_obj, ms = timed(lambda: spec.build_twist(order))
            except KernelError as exc:
                record("cocycle.twist_valid", None, "fail", str(exc))
                status["cocycle"] = "fail"
            else:
                ok, ms = timed(lambda: check_cocycle(twist_obj))
                record("cocycle.identity", "eq32", "pass" if ok else "fail",
                       "" if ok else (cocycle_residual(twist_obj) or ""), ms)
                ok2, ms = timed(lambda: check_counit_normalization(twist_obj))
                record("cocycle.counit", "eq44", "pass" if ok2 else "fail",
                       "" if ok2 else (counit_residual(twist_obj) or ""), ms)
                status["cocycle"] = "pass" if (ok and ok2) else "fail"
    elif spec.has_twist:
        try:
            twist_obj = spec.build_twist(order)
        except KernelError:
            twist_obj = None

    # group: hopf ---------------------------------------------------------------
    if "hopf" in selected and spec.has_twist:
        if deps_ok("hopf", ["algebra", "cocycle"]):
            if twist_obj is None:
                skip_group("hopf", "twist could not be built")
            else:
                try:
                    validation = verify_quasitriangular(
                        twist_obj, allow_invalid=allow_invalid)
                except KernelError as exc:
                    record("hopf.gate", None, "fail", str(exc))
                    status["hopf"] = "fail"
                else:
                    for e in validation.entries:
                        record(e.name, e.equation, "pass" if e.ok else "fail",
                               e.detail, e.ms)
                    status["hopf"] = "pass" if validation.ok else "fail"

    # group: qybe ------------------------------------------------------------------
    qybe_matrix = None
    qybe_space = None
    if "qybe" in selected and spec.rep_data is not None and spec.has_twist:
        if deps_ok("qybe", ["algebra", "cocycle"]):
            rho = spec.build_representation(order)
            validation, ms = timed(
                lambda: validate_representation(spec.algebra, rho))
            ok, detail = summarize(validation)
            record("qybe.representation", None, "pass" if ok else "fail",
                   detail, ms)
            if not ok:
                status["qybe"] = "fail"
            elif twist_obj is None:
                skip_group("qybe", "twist could not be built")
            else:
                try:
                    qybe_matrix, ms = timed(
                        lambda: matrix_R(twist_obj, rho,
                                         allow_invalid=allow_invalid))
                except KernelError as exc:
                    record("qybe.matrix", "eq49", "fail", str(exc))
                    status["qybe"] = "fail"
                else:
                    qybe_space = rho.space
                    ok1, ms1 = timed(
                        lambda: qybe_embedded(qybe_space, qybe_matrix))
                    record("qybe.embedded", "eq49",
                           "pass" if ok1 else "fail", "", ms1)
                    ok2, ms2 = timed(
                        lambda: qybe_components(qybe_space, qybe_matrix))
                    record("qybe.component", "eq49",
                           "pass" if ok2 else "fail", "", ms2)
                    agree = ok1 == ok2
                    record("qybe.formulations_agree", "eq49",
                           "pass" if agree else "fail",
                           "" if agree else
                           "component and embedded verdicts differ")
                    status["qybe"] = "pass" if (ok1 and ok2 and agree) else "fail"
                    if not (ok1 and ok2):
                        qybe_matrix = None

    if "qybe" in selected and spec.direct_data is not None:
        space, mat = spec.build_direct_matrix(order)
        ok1, ms1 = timed(lambda: qybe_embedded(space, mat))
        record("qybe.direct_embedded", "eq49", "pass" if ok1 else "fail", "", ms1)
        ok2, ms2 = timed(lambda: qybe_components(space, mat))
        record("qybe.direct_component", "eq49", "pass" if ok2 else "fail", "", ms2)
        agree = ok1 == ok2
        record("qybe.direct_formulations_agree", "eq49",
               "pass" if agree else "fail")
        if qybe_matrix is None and ok1 and ok2:
            qybe_space, qybe_matrix = space, mat
        prior = status.get("qybe")
        this = "pass" if (ok1 and ok2 and agree) else "fail"
        status["qybe"] = this if prior in (None, "pass") else prior

    # group: braid ---------------------------------------------------------------
    if "braid" in selected and (spec.direct_data is not None
                                or (spec.rep_data is not None and spec.has_twist)):
        if deps_ok("braid", ["qybe"]):
            if qybe_matrix is None:
                skip_group("braid", "no QYBE-verified matrix available")
            else:
                (_, ok), ms = timed(
                    lambda: braid_matrix(qybe_space, qybe_matrix))
                record("braid.relation", "eq51", "pass" if ok else "fail", "", ms)
                status["braid"] = "pass" if ok else "fail"

    # group: gauge ------------------------------------------------------------------
    if "gauge" in selected and spec.has_gauge and spec.has_twist:
        if deps_ok("gauge", ["algebra", "cocycle"]):
            if twist_obj is None:
                skip_group("gauge", "twist could not be built")
            else:
                def run_gauge():
                    e = spec.build_gauge(order)
                    return verify_gauge_equivalence(twist_obj, e)

                try:
                    validation, ms = timed(run_gauge)
                except KernelError as exc:
                    record("gauge.element", None, "fail", str(exc))
                    status["gauge"] = "fail"
                else:
                    for e in validation.entries:
                        record(e.name, e.equation, "pass" if e.ok else "fail",
                               e.detail, e.ms)
                    status["gauge"] = "pass" if validation.ok else "fail"

    return report


def emit_report(report: Report, fmt: str = "human") -> str:
    if fmt == "human":
        return emit_human(report)
    if fmt == "machine":
        return emit_machine(report)
    raise SchemaError(f"unknown report format {fmt!r}")


parse_report = parse_machine


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="supertwist",
        description="Verify twist-quantization identities from a spec file.")
    sub = parser.add_subparsers(dest="command", required=True)
    ver = sub.add_parser("verify", help="run checks against a spec file")
    ver.add_argument("specfile")
    ver.add_argument("--check", action="append", default=None,
                     choices=("all",) + CHECK_GROUPS,
                     help="check group to run (repeatable; default: all)")
    ver.add_argument("--order", type=int, default=None,
                     help="truncation order override")
    ver.add_argument("--report", choices=("human", "machine"), default="human")
    ver.add_argument("--allow-invalid-twist", action="store_true",
                     help="run downstream checks even if the twist gate fails")
    args = parser.parse_args(argv)

    try:
        spec = load_spec(args.specfile)
        selection = None
        if args.check:
            selection = tuple(args.check)
        elif spec.settings.get("checks"):
            selection = tuple(spec.settings["checks"])
        else:
            selection = ("all",)
        report = run_checks(spec, selection=selection, order=args.order,
                            allow_invalid=args.allow_invalid_twist)
    except KernelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(emit_report(report, args.report))
    return report.exit_status


if __name__ == "__main__":
    sys.exit(main())
