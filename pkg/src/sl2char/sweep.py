"""Sweeps over (parameter, element) pairs and the consistency suites run by
the ``checks`` command.  Everything returns plain rows so the CLI only formats.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .characters import (
    RAMIFIED,
    UNRAMIFIED,
    character_abs,
    degree_sandwich,
    enumerate_characters,
    enumerate_parameters,
    family_max_ratio,
    formal_degree,
    formal_degree_value,
    gauss_sum,
    quotient_group,
    ramified_exp_sum,
    ramified_exp_sum_bruteforce,
    realizable_depths,
    sgn_theta,
    sgn_theta_bruteforce,
    shell_elements,
)
from .errors import NoSuchElement, PrecisionLoss
from .exact import Surd
from .filtration import sweep_index_inequalities
from .padic import FieldContext, ThetaLabel, legendre
from .rootdata import parse_type
from .tori import (
    TorusClass,
    TorusElement,
    canonical_element,
    depth_zero_elements,
    legal_classes,
    random_regular,
    weyl_discriminant,
    weyl_discriminant_adjoint,
)


def required_precision(R_max: int, gamma_d2_max: int) -> int:
    """Digits needed: the adjoint discriminant uses 2*d_plus digits, the keys of Q_R use R/2 + 1."""
    return gamma_d2_max + (R_max + 1) // 2 + 4


def gamma_representatives(ctx: FieldContext, d2_max: int, classes=None) -> list[TorusElement]:
    """Default elements per class: depth-0 residues, +-gamma_d for each realizable depth,
    and for the split torus 2, +-(1+p^m) and the non-compact p, p^2."""
    classes = legal_classes(ctx, include_split=True) if classes is None else classes
    out = []
    for cls in classes:
        if cls.is_split:
            out.append(TorusElement(cls, ctx.scalar(2), "2"))
            for d2 in range(2, d2_max + 1, 2):
                g = canonical_element(ctx, cls, d2)
                out += [g, -g]
            out.append(TorusElement(cls, ctx.scalar(ctx.p), "p"))
            out.append(TorusElement(cls, ctx.scalar(ctx.p**2), "p^2"))
            continue
        if not cls.ramified:
            out += depth_zero_elements(ctx, cls)
        for d2 in range(1, d2_max + 1):
            try:
                g = canonical_element(ctx, cls, d2)
            except NoSuchElement:
                continue
            out += [g, -g]
    return out


@dataclass(frozen=True)
class ResultRow:
    p: int
    theta: str
    eta: str
    kind: str
    sign: str
    r: Fraction
    gamma_id: str
    gamma_class: str
    d: Fraction
    d_minus: Fraction
    d_plus: Fraction
    sd: Fraction
    D: Fraction
    value_kind: str
    normalized_value: float
    deg: Surd
    lhs: float
    rhs: float
    ratio: float
    passed: bool
    case: str = ""
    exact: Surd | None = None


RESULT_COLUMNS = ["p", "theta", "eta", "kind", "sign", "r", "gamma_id", "gamma_class", "d", "d_minus",
                  "d_plus", "sd", "D", "value_kind", "normalized_value", "deg", "lhs", "rhs", "ratio", "pass"]


def sweep_bound(ctx: FieldContext, R_max: int, d2_max: int, classes=None, tol: float = 1e-9, R_min: int = 0):
    """One row per (parameter, element): D^(1/2)|Theta| against 2 + D^(1/2)."""
    params = enumerate_parameters(ctx, R_max, None if classes is None else [c for c in classes if not c.is_split])
    params = [prm for prm in params if prm.R >= R_min]
    gammas = gamma_representatives(ctx, d2_max, classes)
    q = ctx.q
    rows = []
    for g in gammas:
        dd = g.depth
        D = weyl_discriminant(g)
        Dh = Surd.qpow(-dd.d_plus2, q)
        rhs = float(2 + Dh)
        for prm in params:
            try:
                cv = character_abs(prm, g)
            except PrecisionLoss as exc:
                raise PrecisionLoss(f"{exc} at parameter {prm.label}, gamma {g.name} [{g.cls}]") from exc
            deg = formal_degree(prm)
            lhs = cv.normalized
            ratio = 0.0 if cv.kind == "zero" else cv.raw / float(deg)
            rows.append(ResultRow(q, prm.cls.theta, prm.cls.eta, prm.kind, prm.sign, prm.r, g.name,
                                  str(g.cls), dd.d, dd.d_minus, dd.d_plus, dd.sd, D, cv.kind, cv.normalized,
                                  deg, lhs, rhs, ratio, lhs <= rhs + tol, cv.case, cv.exact))
    return rows, len(params), len(gammas)


# --- asymptotics ----------------------------------------------------------------


@dataclass(frozen=True)
class AsymptoticRow:
    p: int
    gamma_id: str
    gamma_class: str
    d_plus: Fraction
    sd: Fraction
    r: Fraction
    deg: Surd
    ratio: float
    n_params: int
    decreasing: bool
    slope: float


ASYMPTOTIC_COLUMNS = ["p", "gamma_id", "gamma_class", "d_plus", "sd", "r", "deg", "ratio", "n_params",
                      "decreasing", "slope"]


def asymptotic_gammas(ctx: FieldContext, d2_values=(1, 2, 4), classes=None) -> list[TorusElement]:
    classes = legal_classes(ctx) if classes is None else [c for c in classes if not c.is_split]
    out = []
    for cls in classes:
        for d2 in d2_values:
            try:
                out.append(canonical_element(ctx, cls, d2))
            except NoSuchElement:
                continue
    return out


def asymptotics(ctx: FieldContext, g: TorusElement, R_max: int) -> list[AsymptoticRow]:
    """Max ratio |Theta|/deg over the parameters of g's own class family, for r from 2 sd + 1 up."""
    dd = g.depth
    th = g.cls.label
    kind = RAMIFIED if th.ramified else UNRAMIFIED
    Rs = [R for R in realizable_depths(th, R_max) if R >= 2 * dd.sd2 + 2]
    pts = []
    for R in Rs:
        ratio, n = family_max_ratio(ctx, g, R)
        pts.append((R, ratio, n))
    slope = float("nan")
    if len(pts) >= 2:
        x = np.array([R / 2 for R, _, _ in pts])
        y = np.array([math.log(v, ctx.q) for _, v, _ in pts])
        slope = float(np.polyfit(x, y, 1)[0])
    rows = []
    prev = None
    for R, ratio, n in pts:
        dec = prev is None or ratio < prev
        prev = ratio
        rows.append(AsymptoticRow(ctx.q, g.name, str(g.cls), dd.d_plus, dd.sd, Fraction(R, 2),
                                  formal_degree_value(kind, ctx.q, R), ratio, n, dec, slope))
    return rows


# --- checks -----------------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    p: int
    passed: bool
    count: int
    worst: float
    detail: str = ""


def _wrong_legendre(u, p):
    return 1


def check_expsum(ctx: FieldContext, R_max: int = 3, tol: float = 1e-9, fault: bool = False) -> CheckResult:
    """|A| = 1/2 for every exact-depth ramified character and shell element; direct = brute force."""
    leg = _wrong_legendre if fault else legendre
    worst, worst_diff, n = 0.0, 0.0, 0
    for th in (ThetaLabel.PI, ThetaLabel.EPS_PI):
        cls = TorusClass(th.value, "1")
        for R in range(1, R_max + 1, 2):
            shell = shell_elements(ctx, cls, R)
            for phi in enumerate_characters(ctx, th, R, exact_depth=True):
                for g in shell:
                    A = ramified_exp_sum(phi, g, leg)
                    B = ramified_exp_sum_bruteforce(phi, g)
                    worst = max(worst, abs(abs(A) - 0.5))
                    worst_diff = max(worst_diff, abs(A - B))
                    n += 1
    ok = worst <= tol and worst_diff <= 1e-12
    return CheckResult("expsum", ctx.p, ok, n, worst, f"max|A-A_bf|={worst_diff:.3g}")


def check_gauss(ctx: FieldContext, tol: float = 1e-9) -> CheckResult:
    q = ctx.q
    worst, n = 0.0, 0
    for c in range(1, q - 1):
        for a in range(1, q):
            worst = max(worst, abs(abs(gauss_sum(q, c, a)) - math.sqrt(q)))
            n += 1
    return CheckResult("gauss", q, worst <= tol, n, worst)


def check_discriminant(ctx: FieldContext, samples: int, seed: int, d2_max: int) -> CheckResult:
    rng = random.Random(seed)
    classes = legal_classes(ctx, include_split=True)
    bad = 0
    for i in range(samples):
        g = random_regular(ctx, classes[i % len(classes)], rng, d2_max)
        if weyl_discriminant(g) != weyl_discriminant_adjoint(g):
            bad += 1
    return CheckResult("discriminant", ctx.p, bad == 0, samples, float(bad))


def check_sgn(ctx: FieldContext) -> CheckResult:
    bad, n = 0, 0
    for th in ThetaLabel:
        for v in range(3):
            for u in range(1, ctx.p):
                x = ctx.scalar(u * ctx.p**v)
                bad += sgn_theta(ctx, th, x) != sgn_theta_bruteforce(ctx, th, x)
                n += 1
    return CheckResult("sgn_theta", ctx.p, bad == 0, n, float(bad))


def check_characters(ctx: FieldContext, R_max: int = 4) -> CheckResult:
    """Homomorphism on generator pairs, character counts, table versus orbit presentations."""
    bad, n = 0, 0
    for th in ThetaLabel:
        prev = 1   # the trivial group below depth 0
        for R in range(0, R_max + 1):
            G = quotient_group(ctx, th, R, "table")
            C = quotient_group(ctx, th, R, "cyclic")
            bad += G.invariants != C.invariants
            chars = enumerate_characters(ctx, th, R)
            exact = enumerate_characters(ctx, th, R, exact_depth=True)
            bad += len(chars) != G.n
            bad += len(exact) != (G.n - prev if G.n != prev else 0)
            prev = G.n
            for phi in chars[:50]:
                for i in G.generators:
                    for j in G.generators:
                        k = G.mul(i, j)
                        bad += abs(phi.value(k) - phi.value(i) * phi.value(j)) > 1e-9
                        n += 1
    return CheckResult("characters", ctx.p, bad == 0, n, float(bad))


def check_degrees(ctx: FieldContext, R_max: int = 6) -> CheckResult:
    bad, n = 0, 0
    for prm in enumerate_parameters(ctx, R_max):
        bad += not degree_sandwich(prm)[3]
        n += 1
    return CheckResult("degree_sandwich", ctx.p, bad == 0, n, float(bad))


def check_filtration(types=("A1", "A2", "C2")) -> CheckResult:
    fails, n = [], 0
    for t in types:
        f, c = sweep_index_inequalities(parse_type(t))
        fails += f
        n += c
    return CheckResult("filtration", 0, not fails, n, float(len(fails)))


def run_checks(ctx: FieldContext, samples: int = 10000, seed: int = 0, d2_max: int = 8,
               fault: str = "", tol: float = 1e-9) -> list[CheckResult]:
    return [
        check_expsum(ctx, 3, tol, fault == "legendre"),
        check_gauss(ctx, tol),
        check_discriminant(ctx, samples, seed, d2_max),
        check_sgn(ctx),
        check_characters(ctx),
        check_degrees(ctx),
    ]
