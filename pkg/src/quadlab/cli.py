"""Command-line front end: ``quadlab <command> [options]``.

Every command writes a CSV (to ``--out`` or to stdout) and prints a one-line
summary.  With ``--format svg|png`` a figure is written next to the CSV,
under the same stem.  ``--check`` compares against the embedded targets.

Exit status: 0 on success, 2 when ``--check`` finds a mismatch, 1 on error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field

import numpy as np

from . import targets
from .classical import gauss_log10_weights
from .cubature import inefficiency_ratio, ratio_asymptotic, ratio_heuristic
from .errors import ManifestError, QuadlabError
from .exact import exactness_degree
from .experiments import (Model, build_error_table, build_rule,
                          convergence_study, error_decomposition, n_to_reach)
from .integrands import get_integrand
from .precision import working_bits
from .rules import Family, apply_rule

EXIT_OK, EXIT_ERROR, EXIT_MISMATCH = 0, 1, 2

COMMON_KEYS = {"out", "format", "check"}
COMMANDS = {
    # command: (required keys, optional keys)
    "rule": ({"family", "n"}, {"rho", "L", "inner", "integrand"}),
    "exactness": ({"family", "n"}, {"tol", "rho"}),
    "table1": (set(), {"n", "k-min", "k-max"}),
    "table2": (set(), {"n", "k-min", "k-max"}),
    "converge": ({"family", "integrand"},
                 {"n-list", "weight", "rho", "L", "inner", "model",
                  "half-width", "periodic", "tol"}),
    "cubature": ({"s"}, set()),
    "decompose": ({"n", "integrand"}, {"m"}),
}
FORMATS = ("csv", "svg", "png")


@dataclass(frozen=True)
class ExperimentManifest:
    command: str
    parameters: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ManifestError(f"unknown command {self.command!r}", "command")
        required, optional = COMMANDS[self.command]
        params = {k: v for k, v in self.parameters.items() if v is not None}
        for key in params:
            if key not in required | optional | COMMON_KEYS:
                raise ManifestError(
                    f"unknown key {key!r} for command {self.command!r}", key)
        for key in sorted(required):
            if key not in params:
                raise ManifestError(
                    f"missing required key {key!r} for {self.command!r}", key)
        fmt = params.get("format", "csv")
        if fmt not in FORMATS:
            raise ManifestError(f"format must be one of {FORMATS}", "format")
        if fmt != "csv" and not params.get("out"):
            raise ManifestError("figure formats need an output path", "out")
        object.__setattr__(self, "parameters", params)

    def get(self, key, default=None):
        return self.parameters.get(key, default)


# --------------------------------------------------------------------------
# Output
# --------------------------------------------------------------------------

def _cell(v):
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, np.integer):
        return str(int(v))
    return str(v)


def render_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def write_atomic(path, text):
    folder = os.path.dirname(os.path.abspath(path))
    os.makedirs(folder, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=folder, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


@dataclass
class Result:
    header: list
    rows: list
    summary: str
    figure: object = None           # zero-argument callable -> Figure
    mismatches: list = field(default_factory=list)
    checked: bool = False


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------

def _int(m, key, default=None):
    v = m.get(key, default)
    try:
        return int(v)
    except (TypeError, ValueError):
        raise ManifestError(f"{key} must be an integer, got {v!r}", key) from None


def _float(m, key, default=None):
    v = m.get(key, default)
    try:
        return float(v)
    except (TypeError, ValueError):
        raise ManifestError(f"{key} must be a number, got {v!r}", key) from None


def _family(m):
    try:
        return Family.parse(m.get("family"))
    except ValueError as exc:
        raise ManifestError(str(exc), "family") from None


def parse_n_list(text):
    """``"2:120"`` or ``"10:1000:10"`` (inclusive ranges) or ``"4,8,16"``."""
    text = str(text).strip()
    try:
        if ":" in text:
            parts = [int(p) for p in text.split(":")]
            if len(parts) not in (2, 3):
                raise ValueError
            start, stop = parts[0], parts[1]
            step = parts[2] if len(parts) == 3 else 1
            if step <= 0:
                raise ValueError
            return list(range(start, stop + 1, step))
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ManifestError(f"bad n-list {text!r}", "n-list") from None


def _rule_kwargs(m):
    kw = {}
    if m.get("rho") is not None:
        kw["rho"] = _float(m, "rho")
    if m.get("L") is not None:
        kw["L"] = _float(m, "L")
    if m.get("inner") is not None:
        kw["inner"] = m.get("inner")
    return kw


def cmd_rule(m):
    family, n = _family(m), _int(m, "n")
    rule = build_rule(family, n, **_rule_kwargs(m))
    rows = [(j, x, w) for j, (x, w) in enumerate(rule)]
    parts = [f"{family.value} n={n}: sum(w)={math.fsum(rule.weights)!r}"]
    res = Result(["index", "node", "weight"], rows, "",
                 lambda: _plots().rule_figure(rule))
    key = (family.value, n)
    if key in targets.WEIGHTS_BELOW or key in targets.WEIGHTS_ABOVE:
        lw = gauss_log10_weights(family, n)
        thresh = math.log10(targets.WEIGHT_THRESHOLD)
        below, above = int(np.sum(lw < thresh)), int(np.sum(lw >= thresh))
        parts.append(f"weights below 2^-52: {below}, above: {above}, "
                     f"min log10 w: {lw.min():.2f}")
        for table, got in ((targets.WEIGHTS_BELOW, below),
                           (targets.WEIGHTS_ABOVE, above),
                           (targets.MIN_WEIGHT_LOG10, lw.min())):
            if key in table:
                _compare(res, table[key], got)
    if m.get("integrand"):
        f = get_integrand(m.get("integrand"))
        value = apply_rule(rule, f)
        parts.append(f"I_n({f.name}) = {value!r}")
        if family is Family.NEWTON_COTES and f.id == "runge" \
                and n in targets.RUNGE:
            _compare(res, targets.RUNGE[n], value)
    res.summary = "; ".join(parts)
    return res


def cmd_exactness(m):
    family, n = _family(m), _int(m, "n")
    tol = _float(m, "tol", 1e-10)
    rule = build_rule(family, n, **_rule_kwargs(m))
    d = exactness_degree(rule, tol)
    res = Result(["family", "n", "degree", "tol"],
                 [(family.value, n, d, tol)],
                 f"{family.value} n={n}: exactness degree {d}")
    if family is Family.GAUSS_LEGENDRE:
        _compare(res, targets.gauss_legendre_degree(n), d)
    elif family in (Family.NEWTON_COTES, Family.CLENSHAW_CURTIS):
        res.checked = True
        if not n - 1 <= d < 2 * n - 1:
            res.mismatches.append(f"degree {d} outside [{n - 1}, {2 * n - 1})")
    return res


def _cmd_table(m, family, n_default, k_min, k_max, table, mode, monomial):
    n = _int(m, "n", n_default)
    t = build_error_table(family, n, _int(m, "k-max", k_max),
                          _int(m, "k-min", k_min), monomial=monomial)
    header = ["k", "abs_error"] + (["abs_error_monomial"] if monomial else [])
    if monomial:
        rows = [(k, e, em) for (k, e), (_, em) in zip(t.rows, t.monomial_rows)]
    else:
        rows = list(t.rows)
    res = Result(header, rows, "", lambda: _plots().table_figure(t))
    if n == n_default:
        for k, e in t.rows:
            if k in table:
                _compare(res, table[k], e, mode)
    return res, t


def cmd_table1(m):
    res, t = _cmd_table(m, Family.NEWTON_COTES, targets.TABLE1_N, 0, 38,
                        targets.TABLE1, "default", True)
    if t.n == targets.TABLE1_N:
        for k, e in t.monomial_rows:
            if k in targets.TABLE1_MONOMIAL:
                _compare(res, targets.TABLE1_MONOMIAL[k], e)
    res.summary = (f"newton-cotes n={t.n}: " + ", ".join(
        f"|E(T_{k})|={e:.6g}" for k, e in t.rows if k >= t.n))
    return res


def cmd_table2(m):
    res, t = _cmd_table(m, Family.CLENSHAW_CURTIS, targets.TABLE2_N, 0, 60,
                        targets.TABLE2, "printed", False)
    res.summary = (f"clenshaw-curtis n={t.n}: " + ", ".join(
        f"|E(T_{k})|={e:.4g}" for k, e in t.rows if k in targets.TABLE2))
    return res


def cmd_converge(m):
    family = _family(m)
    kw = _rule_kwargs(m)
    if m.get("weight"):
        kw["weight"] = m.get("weight")
    if m.get("model"):
        kw["model"] = Model.parse(m.get("model"))
    if m.get("half-width") is not None:
        kw["half_width"] = _float(m, "half-width")
    if m.get("periodic") is not None:
        kw["periodic"] = str(m.get("periodic")).lower() in ("1", "true", "yes")
    n_list = parse_n_list(m.get("n-list")) if m.get("n-list") else None
    rec = convergence_study(family, m.get("integrand"), n_list, **kw)
    tol = _float(m, "tol", 1e-8)
    rows = [(s.n, s.abs_error, s.below_floor) for s in rec.samples]
    fit = rec.fit
    fit_text = ("no fit (fewer than 3 points above floor)" if fit is None else
                f"fit {fit.model.value}: C={fit.rate:.6g}, "
                f"R^2={fit.r_squared:.4f}")
    summary = (f"{family.value} on {rec.integrand_id}: min error "
               f"{rec.errors.min():.3g}; n to reach {tol:g}: "
               f"{n_to_reach(rec, tol)}; {fit_text}")
    return Result(["n", "abs_error", "below_floor"], rows, summary,
                  lambda: _plots().convergence_figure(rec))


def _parse_s(text):
    try:
        return [int(p) for p in str(text).split(",") if p.strip()]
    except ValueError:
        raise ManifestError(f"bad dimension list {text!r}", "s") from None


def cmd_cubature(m):
    ss = _parse_s(m.get("s"))
    rows = [(s, inefficiency_ratio(s), ratio_asymptotic(s),
             ratio_heuristic(s)) for s in ss]
    res = Result(["s", "ratio", "ratio_asymptotic", "ratio_heuristic"], rows,
                 "N_total/N_euclidean: " + ", ".join(
                     f"s={s}: {r:.6g}" for s, r, _, _ in rows),
                 lambda: _plots().cubature_figure(
                     ss, [r[1] for r in rows], [r[2] for r in rows]))
    for s, r, _, _ in rows:
        if s in targets.CUBATURE_RATIO:
            _compare(res, targets.CUBATURE_RATIO[s], r)
    return res


def cmd_decompose(m):
    n = _int(m, "n")
    d = error_decomposition(n, get_integrand(m.get("integrand")),
                            _int(m, "m", 2 * n))
    res = Result(["j", "a_j", "E_n_Tj", "product"], list(d.terms),
                 f"clenshaw-curtis n={n}: partial sum {d.partial_sum!r}, "
                 f"measured {d.measured!r}, tail {d.tail:.3g}, "
                 f"{'consistent' if d.consistent else 'INCONSISTENT'}",
                 lambda: _plots().decomposition_figure(d))
    res.checked = True
    if not d.consistent:
        res.mismatches.append("partial sum and measured error differ by more "
                              f"than {d.tolerance:.3g}")
    return res


HANDLERS = {"rule": cmd_rule, "exactness": cmd_exactness,
            "table1": cmd_table1, "table2": cmd_table2,
            "converge": cmd_converge, "cubature": cmd_cubature,
            "decompose": cmd_decompose}


def _plots():
    from . import plotting
    return plotting


def _compare(res, target, measured, mode="default"):
    res.checked = True
    if not target.matches(measured, mode):
        res.mismatches.append(f"{target.key}: got {float(measured):.6g}, "
                              f"expected {target.value:g}")


# --------------------------------------------------------------------------
# Driver
# --------------------------------------------------------------------------

def run(manifest, stdout=None, stderr=None):
    """Execute a manifest; return the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        working_bits()
        res = HANDLERS[manifest.command](manifest)
        text = render_csv(res.header, res.rows)
        out = manifest.get("out")
        fmt = manifest.get("format", "csv")
        if out:
            write_atomic(out, text)
            if fmt != "csv":
                stem = os.path.splitext(out)[0]
                _plots().save_figure(res.figure(), f"{stem}.{fmt}", fmt)
            note = stdout
        else:
            stdout.write(text)
            note = stderr
        summary = res.summary
        if manifest.get("check"):
            if not res.checked:
                summary += "; check: no target for these settings"
            elif res.mismatches:
                summary += "; check FAILED: " + "; ".join(res.mismatches)
            else:
                summary += "; check passed"
        print(summary, file=note)
        if manifest.get("check") and res.mismatches:
            return EXIT_MISMATCH
        return EXIT_OK
    except ManifestError as exc:
        print(f"quadlab: usage error ({exc.key}): {exc}", file=stderr)
        return EXIT_ERROR
    except (QuadlabError, KeyError, ValueError, OSError) as exc:
        print(f"quadlab: error: {exc}", file=stderr)
        return EXIT_ERROR


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ManifestError(message)


def build_parser():
    p = _Parser(prog="quadlab",
                description="Quadrature rules, exactness, error tables and "
                            "convergence studies.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--out", help="CSV output path (default: stdout)")
        sp.add_argument("--format", default="csv", choices=FORMATS,
                        help="also render a figure next to the CSV")
        sp.add_argument("--check", action="store_true",
                        help="compare against embedded targets")
        return sp

    def rule_opts(sp):
        sp.add_argument("--rho", type=float)
        sp.add_argument("--L", type=float)
        sp.add_argument("--inner")

    sp = common(sub.add_parser("rule", help="nodes and weights"))
    sp.add_argument("--family", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--integrand", help="also apply the rule to this integrand")
    rule_opts(sp)

    sp = common(sub.add_parser("exactness", help="measured exactness degree"))
    sp.add_argument("--family", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--tol", type=float)
    sp.add_argument("--rho", type=float)

    for name, help_ in (("table1", "Newton-Cotes errors on T_k"),
                        ("table2", "Clenshaw-Curtis errors on T_k")):
        sp = common(sub.add_parser(name, help=help_))
        sp.add_argument("--n", type=int)
        sp.add_argument("--k-min", type=int, dest="k_min")
        sp.add_argument("--k-max", type=int, dest="k_max")

    sp = common(sub.add_parser("converge", help="convergence study"))
    sp.add_argument("--family", required=True)
    sp.add_argument("--integrand", required=True)
    sp.add_argument("--n-list", dest="n_list",
                    help='"a:b[:step]" inclusive, or "n1,n2,..."')
    sp.add_argument("--weight")
    sp.add_argument("--model")
    sp.add_argument("--half-width", type=float, dest="half_width")
    sp.add_argument("--periodic", choices=("true", "false"))
    sp.add_argument("--tol", type=float)
    rule_opts(sp)

    sp = common(sub.add_parser("cubature", help="coefficient-count ratios"))
    sp.add_argument("--s", required=True, help="dimension(s), comma separated")

    sp = common(sub.add_parser("decompose",
                               help="Chebyshev split of the CC error"))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--integrand", required=True)
    sp.add_argument("--m", type=int)
    return p


def manifest_from_args(ns):
    params = {k.replace("_", "-"): v for k, v in vars(ns).items()
              if k != "command"}
    if not params.get("check"):
        params.pop("check", None)
    return ExperimentManifest(ns.command, params)


def main(argv=None):
    try:
        ns = build_parser().parse_args(argv)
        manifest = manifest_from_args(ns)
    except ManifestError as exc:
        print(f"quadlab: usage error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return run(manifest)


if __name__ == "__main__":
    sys.exit(main())
