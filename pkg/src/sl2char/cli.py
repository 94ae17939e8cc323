"""Command line driver: bound sweeps, decay reports, constant tables, self-checks.

Configuration is a flat ``key = value`` file; command line flags override it.
All CSV output starts with a ``schema_version`` row and is deterministic.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import DomainError, NoSuchElement, PrecisionLoss, SL2CharError
from .exact import Surd
from .padic import FieldContext, is_prime
from .rootdata import SHIPPED_TYPES, kappa, parse_type
from .sweep import (
    ASYMPTOTIC_COLUMNS,
    RESULT_COLUMNS,
    asymptotic_gammas,
    asymptotics,
    check_filtration,
    required_precision,
    run_checks,
    sweep_bound,
)
from .tori import TorusClass, canonical_element

SCHEMA_VERSION = 1
COMMANDS = ("sweep-bound", "asymptotics", "kappa-table", "checks")
FAULTS = ("", "legendre")


class ConfigError(SL2CharError, ValueError):
    pass


# --- configuration ---------------------------------------------------------------


@dataclass
class SweepConfig:
    p: list[int] = field(default_factory=lambda: [5])
    prec: int | None = None          # None: smallest value the precision policy allows
    r_min: int = 0                   # half-units
    r_max: int | None = None         # half-units; None: command default
    gamma_depth_max: int = 8         # half-units
    classes: list[str] = field(default_factory=list)   # empty: every class
    gammas: list[str] = field(default_factory=list)    # "class@d2", asymptotics only
    seed: int = 0
    tol: float = 1e-9
    c1: float = 1.0
    samples: int = 10000
    types: list[str] = field(default_factory=lambda: list(SHIPPED_TYPES))
    inject_fault: str = ""
    out: str = "-"

    LISTS = ("p", "classes", "gammas", "types")

    def serialize(self) -> str:
        lines = []
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if f.name in self.LISTS:
                v = ",".join(str(x) for x in v)
            elif v is None:
                v = "auto"
            lines.append(f"{f.name} = {v}")
        return "\n".join(lines) + "\n"

    def r_max_for(self, command: str) -> int:
        if self.r_max is not None:
            return self.r_max
        return 12 if command == "asymptotics" else 6

    def precision_for(self, command: str) -> int:
        need = required_precision(self.r_max_for(command), max(self.gamma_depth_max, 4))
        return need if self.prec is None else self.prec

    def validate(self, command: str = "sweep-bound") -> "SweepConfig":
        if not self.p:
            raise ConfigError("field 'p': at least one prime is required")
        for p in self.p:
            if not is_prime(p):
                raise ConfigError(f"field 'p': {p} is not prime")
            if p < 5:
                raise ConfigError(f"field 'p': p={p} violates p >= 2e+3 (e = 1 over Q_p)")
        r_max = self.r_max_for(command)
        if self.r_min < 0 or r_max < self.r_min:
            raise ConfigError(f"fields 'r_min'/'r_max': empty depth range {self.r_min}..{r_max}")
        if self.gamma_depth_max < 0:
            raise ConfigError("field 'gamma_depth_max': must be >= 0")
        need = required_precision(r_max, max(self.gamma_depth_max, 4))
        if self.prec is not None and self.prec < need:
            raise ConfigError(f"field 'prec': N={self.prec} below the precision policy, need N >= {need}")
        if self.tol < 0:
            raise ConfigError("field 'tol': must be >= 0")
        if self.c1 <= 0:
            raise ConfigError("field 'c1': must be > 0")
        if self.samples < 0:
            raise ConfigError("field 'samples': must be >= 0")
        if self.inject_fault not in FAULTS:
            raise ConfigError(f"field 'inject_fault': unknown fault {self.inject_fault!r}")
        for c in self.classes:
            try:
                TorusClass.parse(c)
            except DomainError as exc:
                raise ConfigError(f"field 'classes': {exc}") from None
        for g in self.gammas:
            _parse_gamma_spec(g)
        return self

    def torus_classes(self) -> list[TorusClass] | None:
        return [TorusClass.parse(c) for c in self.classes] or None


def _parse_gamma_spec(text: str) -> tuple[TorusClass, int]:
    cls, sep, d2 = text.partition("@")
    try:
        return TorusClass.parse(cls), int(d2)
    except (DomainError, ValueError):
        raise ConfigError(f"field 'gammas': expected 'theta:eta@d2', got {text!r}") from None


def _coerce(name: str, raw: str):
    f = {f.name: f for f in dataclasses.fields(SweepConfig)}[name]
    raw = raw.strip()
    if name in SweepConfig.LISTS:
        items = [x.strip() for x in raw.split(",") if x.strip()]
        return [int(x) for x in items] if name == "p" else items
    if raw == "auto" and name in ("prec", "r_max"):
        return None
    typ = f.type if isinstance(f.type, str) else f.type.__name__
    if typ.startswith("int"):
        return int(raw)
    if typ == "float":
        return float(raw)
    return raw


def parse_config_text(text: str, source: str = "<config>") -> dict:
    """Parse ``key = value`` lines into field overrides, with line diagnostics."""
    names = {f.name for f in dataclasses.fields(SweepConfig)}
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {line!r}")
        if key not in names:
            raise ConfigError(f"{source}:{lineno}: unknown field {key!r}")
        try:
            out[key] = _coerce(key, value)
        except ValueError:
            raise ConfigError(f"{source}:{lineno}: field {key!r}: cannot parse {value.strip()!r}") from None
    return out


def load_config(path=None, overrides=None) -> SweepConfig:
    values = {}
    if path is not None:
        p = Path(path)
        try:
            text = p.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
        values.update(parse_config_text(text, str(p)))
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return SweepConfig(**values)


# --- CSV formatting ----------------------------------------------------------------


def fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, Surd):
        return str(v)
    if isinstance(v, float):
        if v != v:
            return "nan"
        return format(v, ".12g")
    return str(v)


def render_csv(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["schema_version", SCHEMA_VERSION])
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt(x) for x in row])
    return buf.getvalue()


def emit(text: str, out: str) -> None:
    if out in ("-", ""):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


# --- commands ----------------------------------------------------------------------


def _result_tuple(r) -> tuple:
    return (r.p, r.theta, r.eta, r.kind, r.sign, r.r, r.gamma_id, r.gamma_class, r.d, r.d_minus, r.d_plus,
            r.sd, r.D, r.value_kind, r.normalized_value, r.deg, r.lhs, r.rhs, r.ratio, r.passed)


def cmd_sweep_bound(cfg: SweepConfig) -> int:
    R_max = cfg.r_max_for("sweep-bound")
    N = cfg.precision_for("sweep-bound")
    rows, failures = [], 0
    margin_min = None
    for p in cfg.p:
        ctx = FieldContext(p, N)
        res, n_params, n_gammas = sweep_bound(ctx, R_max, cfg.gamma_depth_max, cfg.torus_classes(), cfg.tol,
                                              cfg.r_min)
        bad = sum(not r.passed for r in res)
        failures += bad
        margin = min((r.rhs - r.lhs for r in res), default=float("inf"))
        margin_min = margin if margin_min is None else min(margin_min, margin)
        _note(f"p={p} N={N} parameters={n_params} gammas={n_gammas} rows={len(res)} "
              f"zero={sum(r.value_kind == 'zero' for r in res)} "
              f"bounded={sum(r.value_kind == 'upper_bound' for r in res)} failures={bad} "
              f"margin={fmt(margin)}")
        rows += [_result_tuple(r) for r in res]
    emit(render_csv(RESULT_COLUMNS, rows), cfg.out)
    _note(f"summary: rows={len(rows)} failures={failures} min_margin(rhs-lhs)={fmt(margin_min)}")
    return 1 if failures else 0


def _asymptotic_targets(ctx: FieldContext, cfg: SweepConfig):
    if not cfg.gammas:
        classes = cfg.torus_classes()
        if classes and any(c.is_split for c in classes):
            _note("note: the split torus carries no parameter family; skipped")
        return asymptotic_gammas(ctx, classes=classes)
    out = []
    for spec in cfg.gammas:
        cls, d2 = _parse_gamma_spec(spec)
        if cls.is_split:
            _note(f"note: {spec}: the split torus carries no parameter family; skipped")
            continue
        try:
            out.append(canonical_element(ctx, cls, d2))
        except NoSuchElement as exc:
            _note(f"note: {spec}: {exc}; skipped")
    return out


def cmd_asymptotics(cfg: SweepConfig) -> int:
    R_max = cfg.r_max_for("asymptotics")
    N = cfg.precision_for("asymptotics")
    rows, rising = [], 0
    for p in cfg.p:
        ctx = FieldContext(p, N)
        for g in _asymptotic_targets(ctx, cfg):
            res = asymptotics(ctx, g, R_max)
            if not res:
                _note(f"warning: p={p} gamma={g.name} [{g.cls}]: r_max={Fraction(R_max, 2)} is below "
                      f"2*sd+1={2 * g.depth.sd + 1}; no rows")
                continue
            rising += sum(not r.decreasing for r in res)
            _note(f"p={p} gamma={g.name} [{g.cls}] points={len(res)} slope={fmt(res[0].slope)}")
            rows += [(r.p, r.gamma_id, r.gamma_class, r.d_plus, r.sd, r.r, r.deg, r.ratio, r.n_params,
                      r.decreasing, r.slope) for r in res]
    emit(render_csv(ASYMPTOTIC_COLUMNS, rows), cfg.out)
    _note(f"summary: rows={len(rows)} non_decreasing_steps={rising}")
    return 1 if rising else 0


KAPPA_COLUMNS = ["type", "rank", "dim", "num_pos", "h_G", "r_G", "kappa", "A", "flags"]


def cmd_kappa_table(cfg: SweepConfig) -> int:
    rows = []
    for t in cfg.types:
        try:
            rs = parse_type(t)
            bc = kappa(rs)
        except DomainError as exc:
            _note(f"notice: skipping {t!r}: {exc}")
            continue
        rows.append((rs.label, rs.rank, rs.dim, rs.num_positive, bc.h_G, bc.r_G, bc.kappa, bc.A,
                     ";".join(bc.flags)))
    emit(render_csv(KAPPA_COLUMNS, rows), cfg.out)
    return 0


def cmd_checks(cfg: SweepConfig) -> int:
    results = []
    for p in cfg.p:
        N = max(cfg.precision_for("checks"), required_precision(6, cfg.gamma_depth_max))
        ctx = FieldContext(p, N)
        results += run_checks(ctx, cfg.samples, cfg.seed, cfg.gamma_depth_max, cfg.inject_fault, cfg.tol)
    results.append(check_filtration())
    ok = True
    for r in results:
        ok &= r.passed
        status = "PASS" if r.passed else "FAIL"
        extra = f" {r.detail}" if r.detail else ""
        print(f"check={r.name} p={r.p} status={status} n={r.count} worst={fmt(r.worst)}{extra}")
    print(f"checks status={'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


HANDLERS = {"sweep-bound": cmd_sweep_bound, "asymptotics": cmd_asymptotics,
            "kappa-table": cmd_kappa_table, "checks": cmd_checks}


# --- argument parsing --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file; flags override it")
    common.add_argument("--p", help="prime or comma-separated primes")
    common.add_argument("--prec", help="p-adic precision N, or 'auto'")
    common.add_argument("--r-min", type=int, help="smallest depth, half-units")
    common.add_argument("--r-max", help="largest depth, half-units, or 'auto'")
    common.add_argument("--gamma-depth-max", type=int, help="largest element depth, half-units")
    common.add_argument("--classes", help="comma-separated classes, e.g. eps:1,pi:1,split")
    common.add_argument("--gammas", help="asymptotics elements, e.g. eps:1@2,pi:1@1")
    common.add_argument("--seed", type=int)
    common.add_argument("--tol", type=float)
    common.add_argument("--c1", type=float)
    common.add_argument("--samples", type=int, help="discriminant samples per prime (checks)")
    common.add_argument("--types", help="comma-separated root system types (kappa-table)")
    common.add_argument("--inject-fault", choices=FAULTS[1:], help="test fixture for checks")
    common.add_argument("--out", help="output path, '-' for stdout")
    common.add_argument("--dump-config", action="store_true", help="print the resolved config and exit")

    parser = argparse.ArgumentParser(prog="sl2char", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _overrides(ns: argparse.Namespace) -> dict:
    out = {}
    for key in ("p", "prec", "r_max", "classes", "gammas", "types"):
        raw = getattr(ns, key)
        if raw is not None:
            try:
                out[key] = _coerce(key, raw)
            except ValueError:
                raise ConfigError(f"flag --{key.replace('_', '-')}: cannot parse {raw!r}") from None
    for key in ("r_min", "gamma_depth_max", "seed", "tol", "c1", "samples", "inject_fault", "out"):
        if getattr(ns, key) is not None:
            out[key] = getattr(ns, key)
    return out


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = load_config(ns.config, _overrides(ns)).validate(ns.command)
        if ns.dump_config:
            sys.stdout.write(cfg.serialize())
            return 0
        return HANDLERS[ns.command](cfg)
    except ConfigError as exc:
        _note(f"config error: {exc}")
        return 2
    except PrecisionLoss as exc:
        _note(f"precision loss: {exc}")
        return 3
    except SL2CharError as exc:
        _note(f"error: {exc}")
        return 4


if __name__ == "__main__":
    sys.exit(main())
