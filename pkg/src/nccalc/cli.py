"""Command-line workbench: ``nccalc <command> --config <name|path>``."""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass
from itertools import product

from .calculus import validate_real_metric_calculus
from .connection import curvature, grad, laplace, levi_civita, verify_pseudo_riemannian
from .config import Workbench, load_config
from .errors import ConfigError, NCCalcError, ParseError
from .expr import render_element, render_latex
from .qalgebra import AlgElement
from .submanifold import (gauss_equation_check, gauss_weingarten, induced_connection,
                          is_minimal, mean_curvature)

COMMANDS = ("validate", "levi-civita", "curvature", "laplacian", "hom-check", "embed",
            "alpha", "gauss-check", "mean-curvature", "minimal")


@dataclass
class Result:
    name: str
    value: object = None      # AlgElement, tuple of AlgElement, or None for a bare check
    status: str = "info"      # info | pass | fail
    basis: tuple = ()
    latex_name: str = ""


def _checks(report, prefix=""):
    return [Result(prefix + c.name, None, "pass" if c.passed else "fail") for c in report.checks]


def _vec(name, v, basis, latex_name="", status="info"):
    return Result(name, tuple(v), status, tuple(basis), latex_name)


# ---------------------------------------------------------------- commands

def cmd_validate(wb, args):
    out = _checks(validate_real_metric_calculus(wb.calculus, wb.metric))
    if wb.cfg.embedding is not None:
        e = wb.embedding
        out += _checks(validate_real_metric_calculus(wb.target_calculus, e.h_target), "target: ")
    return out


def _pairs(calc):
    n = calc.rank
    sym = calc.lie.is_abelian()
    return [(b, c) for b, c in product(range(n), repeat=2) if not sym or b <= c]


def _latex_basis(name):
    letter, _, idx = name.partition("_")
    return f"{letter}_{{{idx}}}" if idx else name


def cmd_levi_civita(wb, args):
    calc, conn = wb.calculus, wb.connection
    names = calc.basis_names
    out = [_vec(f"nabla_{b + 1} {names[c]}", conn.on_basis(b, c), names,
                rf"\nabla_{{{b + 1}}} {_latex_basis(names[c])}") for b, c in _pairs(calc)]
    if args.check_all:
        out += _checks(verify_pseudo_riemannian(calc, wb.metric, conn))
    return out


def cmd_curvature(wb, args):
    calc = wb.calculus
    R = curvature(wb.connection)
    n = calc.rank
    names = calc.basis_names
    return [_vec(f"R(d_{a + 1},d_{b + 1}) {names[c]}", R[(a, b, c)], names,
                 rf"R(\partial_{{{a + 1}}},\partial_{{{b + 1}}}) {_latex_basis(names[c])}")
            for a in range(n) for b in range(a + 1, n) for c in range(n)]


def cmd_laplacian(wb, args):
    exprs = args.expr or wb.cfg.laplacian
    if not exprs:
        raise ConfigError("laplacian needs an expression argument")
    out = []
    for text in exprs:
        x = wb.parse(text, where="laplacian")
        out.append(_vec(f"grad({text})", grad(wb.calculus, wb.metric, x), wb.calculus.basis_names))
        out.append(Result(f"laplace({text})", laplace(wb.connection, wb.metric, x),
                          latex_name=rf"\Delta({text})"))
    return out


def cmd_hom_check(wb, args):
    hom = wb.hom
    out = [Result("phi relations", None, "pass"), Result("psi Lie homomorphism", None, "pass"),
           Result("compatibility", None, "pass")]
    src = hom.source.algebra
    gens = ("U", "V") if src.is_torus else ("Z", "W")
    for g in gens:
        out.append(Result(f"phi({g})", hom.phi.of_letter(g)))
    tnames = hom.target.basis_names
    for i in range(hom.k):
        for a in range(hom.source.lie.dim):
            out.append(Result(f"psi(delta_{i + 1})[d_{a + 1}]",
                              hom.source.algebra.const(hom.psi[a][i])))
    for i in range(hom.k):
        out.append(_vec(f"psi_hat(Psi(delta_{i + 1}))", hom.psi_hat(hom.psi_vector(i)), tnames))
    for i in range(hom.k):
        if hom.source.rank == hom.k:
            out.append(_vec(f"psi_hat({hom.source.basis_names[i]})",
                            hom.psi_hat(hom.source.basis_vector(i)), tnames))
    return out


def cmd_embed(wb, args):
    e = wb.embedding
    tgt = e.target
    out = [Result("surjectivity certificate", None, "pass"),
           Result("complement", None, "pass")]
    if e.isometric:
        out.append(Result("orthogonal complement", None, "pass"))
    for g, pre in sorted(e.preimages.items()):
        out.append(Result(f"preimage({g})", pre))
    k = e.k
    for i, j in product(range(k), repeat=2):
        out.append(Result(f"h'({tgt.basis_names[i]},{tgt.basis_names[j]})", e.h_target.entries[i][j]))
    if args.check_all:
        from .morphism import project
        names = e.source.basis_names
        for a in range(e.source.rank):
            tang, norm = project(e, e.source.basis_vector(a))
            out.append(_vec(f"P({names[a]})", tang, names))
            out.append(_vec(f"Pi({names[a]})", norm, names))
        ic = induced_connection(e, wb.connection)
        lc = levi_civita(tgt, e.h_target)
        out.append(Result("induced connection = Levi-Civita(h')", None,
                          "pass" if ic.gamma == lc.gamma else "fail"))
        out += _checks(verify_pseudo_riemannian(tgt, e.h_target, ic), "induced: ")
    return out


def cmd_alpha(wb, args):
    e = wb.embedding
    sff = gauss_weingarten(e, wb.connection)
    names = e.source.basis_names
    k = e.k
    out = [_vec(f"alpha(delta_{i + 1},Psi(delta_{j + 1}))", sff.alpha[i][j], names,
                rf"\alpha(\delta_{{{i + 1}}},\Psi(\delta_{{{j + 1}}}))")
           for i, j in product(range(k), repeat=2)]
    for kk in range(len(e.complement)):
        for i in range(k):
            out.append(_vec(f"A_xi{kk + 1}(delta_{i + 1})", sff.A[kk][i], names,
                            rf"A_{{\xi_{{{kk + 1}}}}}(\delta_{{{i + 1}}})"))
    ic = induced_connection(e, wb.connection)
    for i, j in product(range(k), repeat=2):
        out.append(_vec(f"nabla'_{i + 1} e_{j + 1}", ic.on_basis(i, j), e.target.basis_names,
                        rf"\nabla'_{{{i + 1}}} e_{{{j + 1}}}"))
    if args.check_all:
        sym = all(sff.alpha[i][j] == sff.alpha[j][i] for i, j in product(range(k), repeat=2))
        out.append(Result("alpha symmetric", None, "pass" if sym else "fail"))
    return out


def cmd_gauss_check(wb, args):
    e = wb.embedding
    ic = induced_connection(e, wb.connection)
    rep = gauss_equation_check(e, wb.connection, ic)
    return [Result(c.name, None, "pass" if c.passed else "fail") for c in rep.checks]


def cmd_mean_curvature(wb, args):
    e = wb.embedding
    H = mean_curvature(e, gauss_weingarten(e, wb.connection))
    return [Result(f"H(xi_{k + 1})", v, latex_name=rf"H(\xi_{{{k + 1}}})")
            for k, v in enumerate(H.values)]


def cmd_minimal(wb, args):
    e = wb.embedding
    verdict = is_minimal(mean_curvature(e, gauss_weingarten(e, wb.connection)))
    out = [Result("minimal" if verdict.minimal else "not minimal", None,
                  "pass" if verdict.minimal else "fail")]
    for k, ob in verdict.obstructions:
        out.append(Result(f"obstruction(xi_{k + 1})", ob, "fail"))
    return out


HANDLERS = {
    "validate": cmd_validate, "levi-civita": cmd_levi_civita, "curvature": cmd_curvature,
    "laplacian": cmd_laplacian, "hom-check": cmd_hom_check, "embed": cmd_embed,
    "alpha": cmd_alpha, "gauss-check": cmd_gauss_check, "mean-curvature": cmd_mean_curvature,
    "minimal": cmd_minimal,
}


# ---------------------------------------------------------------- rendering

def _all_negative(body):
    """Every top-level summand of ``body`` carries a minus sign."""
    if not body.startswith("-"):
        return False
    depth = 0
    for k, ch in enumerate(body):
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        elif depth == 0 and k > 0 and ch == "+" and body[k - 1] == " ":
            return False
    return True


def _is_sum(body):
    """True when ``body`` has a top-level ``+`` or binary ``-``."""
    depth = 0
    for k, ch in enumerate(body):
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        elif depth == 0 and k > 0 and ch in "+-" and body[k - 1] == " ":
            return True
    return False


def _vector_text(v, basis, fmt):
    render = render_latex if fmt == "latex" else render_element
    parts = []
    for name, x in zip(basis, v):
        if not x:
            continue
        compound = _is_sum(render(x))
        if compound and _all_negative(render(x)):
            parts.append("- " + _vector_text([-x], [name], fmt))
            continue
        if fmt == "latex":
            body = render_latex(x)
            if compound:
                parts.append(f"+ {name}\\left({body}\\right)")
            elif body.startswith("-"):
                parts.append(f"- {name} {body[1:]}" if body != "-1" else f"- {name}")
            else:
                parts.append(f"+ {name} {body}" if body != "1" else f"+ {name}")
        else:
            body = render_element(x)
            if compound:
                parts.append(f"+ {name}*({body})")
            elif body.startswith("-"):
                parts.append(f"- {name}*{body[1:]}" if body != "-1" else f"- {name}")
            else:
                parts.append(f"+ {name}*{body}" if body != "1" else f"+ {name}")
    if not parts:
        return "0"
    out = " ".join(parts)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


def format_results(command, results, fmt, digest):
    if fmt == "json":
        rows = []
        for r in results:
            if isinstance(r.value, tuple):
                for name, x in zip(r.basis, r.value):
                    rows.append({"name": f"{r.name}[{name}]", "expression": render_element(x),
                                 "status": r.status})
            else:
                expr = render_element(r.value) if isinstance(r.value, AlgElement) else ""
                rows.append({"name": r.name, "expression": expr, "status": r.status})
        return json.dumps({"command": command, "inputs-digest": digest, "results": rows},
                          indent=2, ensure_ascii=False)
    lines = []
    for r in results:
        name = r.latex_name or r.name if fmt == "latex" else r.name
        if isinstance(r.value, tuple):
            body = _vector_text(r.value, r.basis, fmt)
        elif isinstance(r.value, AlgElement):
            body = render_latex(r.value) if fmt == "latex" else render_element(r.value)
        else:
            body = None
        mark = "" if r.status == "info" else f"[{r.status.upper()}]"
        if body is None:
            lines.append(f"{mark} {name}" if mark else name)
        else:
            sep = " &= " if fmt == "latex" else " = "
            line = f"{name}{sep}{body}"
            lines.append(f"{line}  {mark}" if mark else line)
        if fmt == "latex" and body is not None:
            lines[-1] += r" \\"
    return "\n".join(lines)


def inputs_digest(cfg, command, args):
    h = hashlib.sha256()
    for part in (cfg.digest, command, args.q or cfg.q, " ".join(args.expr or []),
                 str(bool(args.check_all))):
        h.update(part.encode())
        h.update(b"\0")
    return h.hexdigest()


def run(command, wb, args):
    """Results of one command; engine errors become a failing result."""
    try:
        return HANDLERS[command](wb, args)
    except ConfigError:
        raise
    except ParseError as exc:
        raise ConfigError(str(exc)) from exc
    except NCCalcError as exc:
        return [Result(f"error: {type(exc).__name__}: {exc}", None, "fail")]


def build_parser():
    p = argparse.ArgumentParser(prog="nccalc",
                                description="Exact noncommutative Riemannian geometry workbench.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("expr", nargs="*", help="expressions for 'laplacian'")
    p.add_argument("--config", required=True, help="config file path or builtin name")
    p.add_argument("--format", choices=("text", "latex", "json"), default="text")
    p.add_argument("--q", choices=("one", "formal"), default=None,
                   help="override the config's deformation handling")
    p.add_argument("--check-all", action="store_true",
                   help="also run the verification checks of the command")
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        cfg = load_config(args.config)
        wb = Workbench(cfg, args.q)
        results = run(args.command, wb, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    print(format_results(args.command, results, args.format,
                         inputs_digest(cfg, args.command, args)))
    return 1 if any(r.status == "fail" for r in results) else 0


if __name__ == "__main__":
    sys.exit(main())
