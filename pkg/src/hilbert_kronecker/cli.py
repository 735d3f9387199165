"""
Command-line front end.

    hilbert-kronecker [--disc D] [--kmax K] [--trace-bound B] [--xy-degree M]
                      [--format json|text] [--out PATH] [--config PATH] COMMAND ...

Settings resolve as flags > config file (key=value lines) > defaults.
Exit codes: 0 ok, 1 verification mismatch, 2 configuration error,
3 unsupported case.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

import click

from .arithmetic import SUPPORTED_DISCRIMINANTS, UnsupportedDiscriminant, check_disc, field_degree, zeta_table
from .kronecker import PolySeries, gamma_power, normalized_layer, product_layer
from .periods import (
    UnsupportedCase,
    admissible_rc_pairs,
    cusp_rank,
    eisenstein_layer,
    extract_cusp,
    extract_eigenform,
    in_modular_span,
    p_minus,
    p_plus,
    rc_consistency,
)
from .qseries import FourierSeries, eisenstein, scale
from .quadfield import FieldElement
from .theta import kronecker_via_theta

EXIT_OK, EXIT_MISMATCH, EXIT_CONFIG, EXIT_UNSUPPORTED = 0, 1, 2, 3

DEFAULTS = {"disc": 5, "kmax": 8, "trace_bound": 4, "xy_degree": None, "format": "json"}
_INT_KEYS = ("disc", "kmax", "trace_bound", "xy_degree", "k", "p", "q", "q_order")


class ConfigError(click.ClickException):
    exit_code = EXIT_CONFIG


@dataclass(frozen=True)
class RunConfig:
    disc: int
    kmax: int
    trace_bound: int
    xy_degree: int
    format: str
    out: Optional[str]
    extra: tuple = ()

    def get(self, key: str, default=None):
        return dict(self.extra).get(key, default)

    def header(self) -> dict:
        return {
            "field": {"disc": self.disc},
            "truncation": {"trace_bound": self.trace_bound, "kmax": self.kmax, "xy_degree": self.xy_degree},
        }


def read_config_file(path: str) -> dict[str, Any]:
    out: dict[str, Any] = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror}")
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key in _INT_KEYS:
            try:
                out[key] = int(value)
            except ValueError:
                raise ConfigError(f"{path}:{lineno}: {key} must be an integer")
        elif key == "format":
            out[key] = value
        else:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
    return out


def resolve_config(flags: dict[str, Any], config_path: Optional[str]) -> RunConfig:
    merged = dict(DEFAULTS)
    if config_path:
        merged.update(read_config_file(config_path))
    merged.update({k: v for k, v in flags.items() if v is not None})
    try:
        check_disc(merged["disc"])
    except UnsupportedDiscriminant as exc:
        raise ConfigError(str(exc))
    if merged["kmax"] < 2 or merged["kmax"] % 2:
        raise ConfigError(f"kmax must be an even integer >= 2, got {merged['kmax']}")
    if merged["trace_bound"] < 1:
        raise ConfigError(f"trace_bound must be >= 1, got {merged['trace_bound']}")
    if merged["xy_degree"] is None:
        merged["xy_degree"] = merged["kmax"]
    if merged["xy_degree"] < 0:
        raise ConfigError("xy_degree must be >= 0")
    if merged["format"] not in ("json", "text"):
        raise ConfigError(f"format must be json or text, got {merged['format']!r}")
    extra = tuple(sorted((k, v) for k, v in merged.items() if k in ("k", "p", "q", "q_order")))
    return RunConfig(
        merged["disc"], merged["kmax"], merged["trace_bound"], merged["xy_degree"], merged["format"], merged.get("out"), extra
    )


# serialization ---------------------------------------------------------------


def rat(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def elem(x: FieldElement) -> list[str]:
    return x.to_pair()


def series_json(f: FourierSeries) -> dict:
    return {
        "constant": elem(f.constant),
        "coefficients": [[nu.to_json(), elem(c)] for nu, c in f.items()],
    }


def poly_json(ps: PolySeries) -> list[dict]:
    return [{"x": list(x), "y": list(y), "series": series_json(s)} for (x, y), s in ps.items()]


def _series_text(f: FourierSeries, limit: int = 8) -> str:
    def fmt(c: FieldElement) -> str:
        if c.is_rational():
            return str(c.a)
        return f"{c.a}+{c.b}*sqrt{f.disc}"

    parts = [fmt(f.constant)] if f.constant else []
    items = f.items()
    parts += [f"{fmt(c)}*q^{nu.to_json()}" for nu, c in items[:limit]]
    if len(items) > limit:
        parts.append("...")
    return " + ".join(parts) or "0"


def emit(cfg: RunConfig, results: list[dict], text_lines: list[str]) -> None:
    if cfg.format == "json":
        doc = cfg.header()
        doc["results"] = results
        body = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        head = f"disc={cfg.disc} trace_bound={cfg.trace_bound} kmax={cfg.kmax} xy_degree={cfg.xy_degree}"
        body = "\n".join([head] + text_lines) + "\n"
    if cfg.out:
        Path(cfg.out).write_text(body)
    else:
        click.echo(body, nl=False)


def _table(rows: list[list[str]]) -> list[str]:
    if not rows:
        return []
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]


# commands --------------------------------------------------------------------


_COMMON_OPTIONS = [
    click.option("--disc", type=int, default=None, help=f"Discriminant, one of {SUPPORTED_DISCRIMINANTS}."),
    click.option("--kmax", type=int, default=None, help="Largest (even) weight / T-grade."),
    click.option("--trace-bound", type=int, default=None, help="Keep Fourier indices with trace <= this."),
    click.option("--xy-degree", type=int, default=None, help="Largest X/Y exponent kept (default kmax)."),
    click.option("--format", "fmt", type=click.Choice(["json", "text"]), default=None),
    click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write output here instead of stdout."),
    click.option("--config", "config_path", type=click.Path(), default=None, help="key=value settings file."),
]
_COMMON_NAMES = ("disc", "kmax", "trace_bound", "xy_degree", "fmt", "out", "config_path")


def common_options(fn):
    # accepted both before and after the subcommand name; the later one wins
    for opt in reversed(_COMMON_OPTIONS):
        fn = opt(fn)
    return fn


def _split_common(kwargs: dict) -> dict:
    return {name: kwargs.pop(name) for name in _COMMON_NAMES}


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@common_options
@click.pass_context
def main(ctx, **kwargs):
    """Exact Hilbert Eisenstein series, Kronecker products and period data."""
    ctx.obj = _split_common(kwargs)


def _cfg(ctx, local: dict, **override) -> RunConfig:
    opts = dict(ctx.obj)
    opts.update({k: v for k, v in local.items() if v is not None})
    flags = {
        "disc": opts["disc"],
        "kmax": opts["kmax"],
        "trace_bound": opts["trace_bound"],
        "xy_degree": opts["xy_degree"],
        "format": opts["fmt"],
        "out": opts["out"],
    }
    flags.update(override)
    return resolve_config(flags, opts["config_path"])


def _weight(cfg: RunConfig, k: Optional[int], default: Optional[int] = None) -> int:
    k = cfg.get("k", default) if k is None else k
    if k is None:
        raise ConfigError("a weight --k is required")
    if k < 2 or k % 2:
        raise ConfigError(f"k must be an even integer >= 2, got {k}")
    return k


@main.command("zeta")
@common_options
@click.pass_context
def cmd_zeta(ctx, **kwargs):
    """Table of zeta_F(1 - k) for even k <= kmax."""
    cfg = _cfg(ctx, _split_common(kwargs))
    rows = zeta_table(cfg.disc, cfg.kmax).rows()
    results = [{"k": k, "zeta_1_minus_k": rat(v)} for k, v in rows]
    emit(cfg, results, _table([["k", "zeta_F(1-k)"]] + [[str(k), str(v)] for k, v in rows]))


@main.command("eisenstein")
@common_options
@click.option("--k", type=int, default=None, help="Weight (even).")
@click.pass_context
def cmd_eisenstein(ctx, k, **kwargs):
    """q-expansion of the Eisenstein series G_k."""
    cfg = _cfg(ctx, _split_common(kwargs))
    k = _weight(cfg, k, 2)
    f = eisenstein(k, cfg.disc, cfg.trace_bound)
    results = [{"k": k, "series": series_json(f)}]
    lines = [f"G_{k} constant {f.constant.a}"] + _table(
        [["nu [m, n]", "coefficient"]] + [[str(nu.to_json()), str(c.a)] for nu, c in f.items()]
    )
    emit(cfg, results, lines)


@main.command("kronecker-expand")
@common_options
@click.option("--k", type=int, default=None, help="Only this T-grade (default: every grade 2..kmax).")
@click.option("--raw", is_flag=True, help="Report b_k itself rather than Gamma(k-1)^t b_k.")
@click.pass_context
def cmd_kronecker_expand(ctx, k, raw, **kwargs):
    """T-layers of F_tau(T, -XYT) F_tau(XT, YT)."""
    cfg = _cfg(ctx, _split_common(kwargs))
    ks = [k] if k is not None else range(2, cfg.kmax + 1)
    results, lines = [], []
    for kk in ks:
        if kk < 2:
            raise ConfigError("T-grade must be >= 2")
        layer = product_layer(kk, cfg.disc, cfg.trace_bound, cfg.xy_degree)
        if not raw:
            layer = layer.scale(gamma_power(kk, field_degree(cfg.disc)))
        results.append({"k": kk, "normalized": not raw, "monomials": poly_json(layer)})
        lines.append(f"k={kk} ({len(layer.monomials)} monomials)")
        for (x, y), s in layer.items():
            lines.append(f"  X^{list(x)} Y^{list(y)}: {_series_text(s)}")
    emit(cfg, results, lines)


def _symmetry_failures(layer: PolySeries, k: int, xy_degree: int) -> list[list]:
    # b_k(X, Y) = b_k(Y, X), and N(X)^p N(Y)^q maps to N(X)^(k-2-q) N(Y)^(k-2-p)
    # with sign (-1)^(t(p+q)); compared only where both monomials survive the cut
    bad = []
    if layer.swap_xy() != layer:
        bad.append(["swap"])
    t = layer.t
    for p in range(-1, k):
        for q in range(-1, k):
            a, b = k - 2 - q, k - 2 - p
            if max(p, q, a, b) > xy_degree:
                continue
            sign = -1 if (t * (p + q)) % 2 else 1
            if layer.norm_coefficient(a, b) != scale(layer.norm_coefficient(p, q), sign):
                bad.append([p, q])
    return bad


def verify_report(cfg: RunConfig) -> tuple[list[dict], list[str], bool]:
    results, lines, ok = [], [], True
    for k in range(2, cfg.kmax + 1, 2):
        layer = normalized_layer(k, cfg.disc, cfg.trace_bound, cfg.xy_degree)
        eis = eisenstein_layer(k, cfg.disc, cfg.trace_bound)
        eis = PolySeries(k, cfg.disc, cfg.trace_bound, {key: s for key, s in eis.monomials.items() if max(key[0] + key[1]) <= cfg.xy_degree})
        residual = layer - eis
        constant_diffs = [[list(x), list(y), elem(c)] for (x, y), c in residual.constant_terms().items()]
        entries = [
            [list(x), list(y), nu.to_json(), elem(c)] for (x, y), s in residual.items() for nu, c in s.items()
        ]
        nonparallel = sorted([list(x), list(y)] for x, y in layer.nonparallel())
        rational = layer.is_rational()
        symmetry = _symmetry_failures(layer, k, cfg.xy_degree)
        rank = cusp_rank(residual)
        # every residual coefficient must itself be a modular form; decided where generators are known
        modular = None
        spans = [in_modular_span(s, k) for _, s in residual.items()]
        if spans and None not in spans:
            modular = all(spans)
        elif not spans:
            modular = True
        # a rank-one residual must factor exactly as R(X, Y) f(tau); higher ranks are not checked
        factorization = None
        if rank == 1:
            try:
                factorization = extract_eigenform(k, cfg.disc, cfg.trace_bound, cusp=residual).factorization_exact
            except UnsupportedCase:
                factorization = False
        passed = not constant_diffs and not nonparallel and rational and not symmetry and factorization is not False and modular is not False
        ok = ok and passed
        results.append(
            {
                "k": k,
                "passed": passed,
                "eisenstein_constant_diffs": constant_diffs,
                "cusp_residual": entries,
                "cusp_rank": rank,
                "cusp_factorization_exact": factorization,
                "cusp_residual_modular": modular,
                "nonparallel_monomials": nonparallel,
                "rational": rational,
                "symmetry_failures": symmetry,
            }
        )
        lines.append(
            f"k={k:<3} {'ok      ' if passed else 'MISMATCH'} constant-diffs={len(constant_diffs)} "
            f"residual-entries={len(entries)} rank={rank} nonparallel={len(nonparallel)} "
            f"rational={'yes' if rational else 'no'} symmetry-failures={len(symmetry)}"
            + ("" if factorization is None else f" factorization={'exact' if factorization else 'FAILED'}")
            + f" modular={'unknown' if modular is None else 'yes' if modular else 'NO'}"
        )
    return results, lines, ok


@main.command("verify")
@common_options
@click.pass_context
def cmd_verify(ctx, **kwargs):
    """Compare each normalized layer with its Eisenstein part and check the structural invariants."""
    cfg = _cfg(ctx, _split_common(kwargs))
    results, lines, ok = verify_report(cfg)
    emit(cfg, results, lines)
    ctx.exit(EXIT_OK if ok else EXIT_MISMATCH)


@main.command("extract")
@common_options
@click.option("--k", type=int, default=None, help="Weight (even).")
@click.pass_context
def cmd_extract(ctx, k, **kwargs):
    """Factor the cusp part of the weight-k layer as R(X, Y) f(tau)."""
    cfg = _cfg(ctx, _split_common(kwargs))
    k = _weight(cfg, k, cfg.kmax)
    cusp = extract_cusp(k, cfg.disc, cfg.trace_bound)
    try:
        ef = extract_eigenform(k, cfg.disc, cfg.trace_bound, cusp=cusp)
    except UnsupportedCase as exc:
        emit(cfg, [{"k": k, "rank": cusp_rank(cusp), "unsupported": str(exc)}], [f"k={k} unsupported: {exc}"])
        ctx.exit(EXIT_UNSUPPORTED)
    t = field_degree(cfg.disc)
    res: dict[str, Any] = {
        "k": k,
        "rank": ef.rank,
        "eisenstein_period": {
            "p_plus": {str(n): rat(c) for n, c in sorted(p_plus(k, t).coefficients.items())},
            "p_minus": {str(n): rat(c) for n, c in sorted(p_minus(k, cfg.disc).coefficients.items())},
        },
    }
    lines = [f"k={k} rank={ef.rank}"]
    if ef.rank == 1:
        res.update(
            {
                "form": series_json(ef.form),
                "a": [rat(c.a) for _, c in ef.form.items()],
                "even": {str(n): rat(c) for n, c in sorted(ef.even.items())},
                "odd": {str(n): rat(c) for n, c in sorted(ef.odd.items())},
                "scalar": rat(ef.scalar),
                "factorization_exact": ef.factorization_exact,
            }
        )
        lines.append(f"f = {_series_text(ef.form)}")
        lines.append("even: " + ", ".join(f"X^{n}: {c}" for n, c in sorted(ef.even.items())))
        lines.append("odd:  " + ", ".join(f"Y^{n}: {c}" for n, c in sorted(ef.odd.items())))
        lines.append(f"scalar: {ef.scalar}  exact: {ef.factorization_exact}")
    emit(cfg, [res], lines)


@main.command("rc-check")
@common_options
@click.option("--k", type=int, default=None, help="Weight (even).")
@click.option("--p", "p", type=int, default=None)
@click.option("--q", "q", type=int, default=None)
@click.pass_context
def cmd_rc_check(ctx, k, p, q, **kwargs):
    """Compare N(X)^p N(Y)^q coefficients of b_k with Rankin-Cohen brackets (all admissible pairs by default)."""
    cfg = _cfg(ctx, _split_common(kwargs))
    k = _weight(cfg, k, cfg.kmax)
    p = cfg.get("p") if p is None else p
    q = cfg.get("q") if q is None else q
    if (p is None) != (q is None):
        raise ConfigError("give both --p and --q, or neither")
    pairs = [(p, q)] if p is not None else admissible_rc_pairs(k)
    layer = product_layer(k, cfg.disc, cfg.trace_bound)
    results, lines, ok = [], [], True
    for pp, qq in pairs:
        try:
            rep = rc_consistency(k, pp, qq, cfg.disc, cfg.trace_bound, layer)
        except ValueError as exc:
            raise ConfigError(str(exc))
        ok = ok and rep.zero
        results.append(
            {
                "k": k,
                "p": pp,
                "q": qq,
                "zero": rep.zero,
                "diff": series_json(rep.diff),
                "diff_equals_twisted_singular": rep.diff == rep.twisted_singular,
            }
        )
        lines.append(
            f"k={k} (p, q)=({pp}, {qq}) {'ZERO' if rep.zero else 'NONZERO'}"
            + ("" if rep.zero else f"  diff = {_series_text(rep.diff, 4)}")
        )
    emit(cfg, results, lines)
    ctx.exit(EXIT_OK if ok else EXIT_MISMATCH)


def theta_oracle_report(q_order: int, degree: int) -> tuple[bool, int, list]:
    from .kronecker import kuznetsov_expansion

    lifted = kuznetsov_expansion(1, q_order, degree)
    theta = kronecker_via_theta(q_order, degree + 1, degree + 1)
    theta = {key: c for key, c in theta.items() if sum(key) <= degree}
    mismatches = []
    keys = sorted(set(theta) | {(a[0], b[0]) for a, b in lifted})
    for key in keys:
        s = lifted.get(((key[0],), (key[1],)))
        mine = [Fraction(0)] * (q_order + 1)
        if s is not None:
            mine[0] = s.constant.a
            for nu, c in s.items():
                mine[nu.n] = c.a
        other = theta.get(key, [Fraction(0)] * (q_order + 1))
        if mine != list(other[: q_order + 1]):
            mismatches.append(list(key))
    return not mismatches, len(keys), mismatches


@main.command("theta-oracle")
@common_options
@click.option("--q-order", type=int, default=None, help="q-order of the comparison (default 8).")
@click.option("--degree", type=int, default=None, help="Total (u, v)-degree (default xy-degree, at most 8 by default).")
@click.pass_context
def cmd_theta_oracle(ctx, q_order, degree, **kwargs):
    """Compare the Kuznetsov assembly of F_tau(u, v) with the theta quotient (rational field only)."""
    local = _split_common(kwargs)
    cfg = _cfg(ctx, local, disc=local["disc"] or ctx.obj["disc"] or 1)
    if cfg.disc != 1:
        click.echo("unsupported: the theta oracle exists for the rational field (disc 1) only", err=True)
        ctx.exit(EXIT_UNSUPPORTED)
    q_order = cfg.get("q_order", 8) if q_order is None else q_order
    degree = cfg.xy_degree if degree is None else degree
    if q_order < 1 or degree < 0:
        raise ConfigError("q-order must be >= 1 and degree >= 0")
    equal, compared, mismatches = theta_oracle_report(q_order, degree)
    emit(
        cfg,
        [{"q_order": q_order, "degree": degree, "monomials": compared, "equal": equal, "mismatches": mismatches}],
        [f"{'EQUAL' if equal else 'DIFFERENT'} ({compared} monomials, q-order {q_order}, degree {degree})"],
    )
    ctx.exit(EXIT_OK if equal else EXIT_MISMATCH)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
