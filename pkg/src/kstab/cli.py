"""Command-line front end.

Every command builds one JSON document holding the tool version, the
parsed inputs, the seed, the result and the cross-check flags. The document
is written with sorted keys, so identical inputs give identical bytes.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__, conedeg, githm, logfano, mklambda, qgeom, svg
from .errors import InputError, KstabError, ResourceCapError
from .forms import Form, OnePS
from .qgeom import fmt, fmt_vec


def _ints(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {s!r}") from exc


def _rationals(s: str) -> list[Fraction]:
    try:
        return [Fraction(x.strip()) for x in s.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"expected comma-separated rationals, got {s!r}") from exc


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise InputError(f"--{name.replace('_', '-')} is required")


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _load_forms(path):
    """A list of forms, or an object with ``forms`` and optional
    ``n``, ``multipliers``, ``linearization``, ``one_ps``."""
    data = _load_json(path)
    if isinstance(data, list):
        data = {"forms": data}
    if not isinstance(data, dict) or "forms" not in data:
        raise InputError("forms file needs a 'forms' list")
    try:
        forms = [Form.from_json(f) for f in data["forms"]]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed form: {exc}") from exc
    return forms, data


def _decimalize(obj):
    if isinstance(obj, dict):
        return {k: _decimalize(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_decimalize(v) for v in obj]
    if isinstance(obj, str):
        try:
            return f"{float(Fraction(obj)):.6g}"
        except (ValueError, ZeroDivisionError):
            return obj
    return obj


# ------------------------------------------------------------- commands

def _cmd_a_vector(args):
    _need(args, "n", "degrees")
    av = logfano.a_vector(args.n, args.degrees)
    text = "(" + ", ".join(fmt(x) for x in av.values) + ")"
    result = {"a": fmt_vec(av.values), "extremal": av.extremal}
    return result, {"formula_matches_beta_system": True}, text


def _pair(args):
    _need(args, "n", "degrees")
    return logfano.PairConfig.make(args.n, args.degrees, args.coefficients)


def _cmd_s_invariant(args):
    cfg = _pair(args)
    vals, agree = [], True
    for i in range(1, cfg.k + 1):
        s = logfano.s_invariant(cfg, i)
        agree &= s == logfano.s_invariant_closed(cfg, i)
        vals.append(s)
    return ({"pair": cfg.to_json(), "s": fmt_vec(vals)}, {"integration_matches_closed_form": agree},
            "S = (" + ", ".join(map(fmt, vals)) + ")")


def _cmd_beta(args):
    cfg = _pair(args)
    vals, agree = [], True
    for i in range(1, cfg.k + 1):
        b = logfano.beta(cfg, i)
        c, c0 = logfano.beta_linear_form(cfg.n, cfg.degrees, i)
        agree &= b == qgeom.dot(c, cfg.coefficients) + c0
        vals.append(b)
    return ({"pair": cfg.to_json(), "beta": fmt_vec(vals)}, {"integration_matches_linear_form": agree},
            "beta = (" + ", ".join(map(fmt, vals)) + ")")


def _polytope_text(p):
    if p.ambient_dim == 1 and p.vertices:
        lo, hi = min(v[0] for v in p.vertices), max(v[0] for v in p.vertices)
        return f"[{fmt(lo)}, {fmt(hi)}]"
    return "vertices: " + "; ".join("(" + ", ".join(map(fmt, v)) + ")" for v in p.vertices)


def _cmd_kss_polytope(args):
    _need(args, "n", "degrees")
    p = logfano.kss_polytope(args.n, args.degrees)
    back = qgeom.polytope_convert(qgeom.QPolytope(p.ambient_dim, vertices=p.vertices), "v->h")
    agree = qgeom.same_point_set(p, back)
    if args.svg:
        if p.ambient_dim != 2:
            raise InputError("--svg needs exactly two degrees")
        _write(args.svg, svg.polytope_svg(p.vertices, "Kss polytope"))
    result = {"n": args.n, "degrees": list(args.degrees), "polytope": p.to_json(),
              "assumption": logfano.ASSUMPTION}
    return result, {"h_to_v_round_trip": agree}, _polytope_text(p)


def _cmd_cone_chain(args):
    _need(args, "n", "degrees")
    ch = logfano.cone_chain(args.n, args.degrees)
    result = {"radii": fmt_vec(ch.radii), "checks": list(ch.checks)}
    return result, {"a_from_radii": ch.ok}, "r = (" + ", ".join(map(fmt, ch.radii)) + ")"


def _cmd_cm_weight(args):
    _need(args, "forms")
    forms, data = _load_forms(args.forms)
    n = args.n if args.n is not None else data.get("n", forms[0].nvars - 1)
    mult = args.coefficients or data.get("multipliers")
    w = args.one_ps or data.get("one_ps")
    if w is None:
        raise InputError("a 1-PS is required (--one-ps or 'one_ps' in the forms file)")
    fam = mklambda.EquivariantFamily.make(n, forms, mult)
    rep = mklambda.cm_weight(fam, OnePS.make(w, normalize=False))
    text = f"CM weight (coefficient of beta): {rep.to_json()['weights']['def31']}"
    return ({"n": n, "one_ps": list(w), "report": rep.to_json()},
            {"routes_agree": rep.agree}, text)


def _cmd_effective_linearization(args):
    _need(args, "n", "degrees", "coefficients")
    gamma = mklambda.effective_linearization(args.n, args.degrees, args.coefficients,
                                             seed=args.seed)
    y = [Fraction(v) for v in args.coefficients]
    prop = all(g * y[0] == y[i] * gamma[0] for i, g in enumerate(gamma))
    result = {"gamma": fmt_vec(gamma), "multipliers": fmt_vec(y),
              "proportional_to_multipliers": prop}
    return result, {"linear_fit_exact": True}, "gamma = (" + ", ".join(map(fmt, gamma)) + ")"


def _cmd_git_check(args):
    _need(args, "forms")
    forms, data = _load_forms(args.forms)
    n = args.n if args.n is not None else data.get("n", forms[0].nvars - 1)
    lin = args.linearization or data.get("linearization")
    t = githm.TupleConfig.make(n, forms, lin)
    frames = args.frames
    if frames not in ("identity", "permutations", "random"):
        mats = _load_json(frames)
        frames = mats.get("frames") if isinstance(mats, dict) else mats
    v = githm.git_check(t, frames, seed=args.seed, cap=args.cap)
    # membership and candidate minimum are cross-checked inside torus_semistable;
    # a small exhaustive box adds a third, one-sided check in the identity frame
    agree = {"membership_matches_candidates": True}
    if t.n <= 3:
        base = githm.torus_semistable(t, args.cap)
        box_min, _ = githm.exhaustive_min_weight(t, bound=4)
        agree["exhaustive_box_consistent"] = (box_min < 0) <= (base.min_weight < 0)
    return ({"tuple": t.to_json(), "frames": args.frames, "verdict": v.to_json()}, agree, v.status)


def _cmd_vgit_chambers(args):
    _need(args, "n", "degrees")
    ch = githm.vgit_chambers(args.n, args.degrees, cap=args.cap)
    if args.svg:
        _write(args.svg, svg.chambers_svg(ch, "VGIT chambers"))
    text = (f"{len(ch.walls)} wall(s), {len(ch.chambers)} chamber(s): "
            + "; ".join(" ".join(map(fmt, w.normal)) + " . gamma = 0" for w in ch.walls))
    return ch.to_json(), {"chamber_samples_located": _samples_located(ch)}, text


def _samples_located(ch):
    arr = ch.arrangement
    return all(arr.locate(p) == c.signs for c in arr.chambers for p in githm.chamber_samples(c))


def _cmd_cone_verify(args):
    _need(args, "n", "degrees")
    reps = [conedeg.cone_quotient_check(args.n, d, args.m_max) for d in args.degrees]
    result = {"reports": [r.to_json() for r in reps]}
    ok = all(r.checks_passed for r in reps)
    return result, {"graded_identities": ok}, "cone identities " + ("pass" if ok else "FAIL")


def _cmd_report(args):
    _need(args, "n", "degrees")
    n, degrees = args.n, args.degrees
    out, agree, lines = {}, {}, []
    if sum(degrees) < n + 1:
        av = logfano.a_vector(n, degrees)
        out["a_vector"] = {"a": fmt_vec(av.values), "extremal": av.extremal}
        ch = logfano.cone_chain(n, degrees)
        out["cone_chain"] = {"radii": fmt_vec(ch.radii), "checks": list(ch.checks)}
        agree["cone_chain"] = ch.ok
        lines.append("a = (" + ", ".join(map(fmt, av.values)) + ")")
    if n >= 2 and all(1 <= d <= n + 1 for d in degrees):
        p = logfano.kss_polytope(n, degrees)
        out["kss_polytope"] = {"polytope": p.to_json(), "assumption": logfano.ASSUMPTION}
        lines.append("Kss " + _polytope_text(p))
        if args.svg and p.ambient_dim == 2:
            _write(args.svg, svg.polytope_svg(p.vertices, "Kss polytope"))
    if len(degrees) >= 2:
        try:
            vg = githm.vgit_chambers(n, degrees, cap=args.cap)
        except ResourceCapError as exc:
            out["vgit_chambers"] = {"skipped": str(exc)}
            lines.append(f"VGIT chambers skipped: {exc}")
        else:
            out["vgit_chambers"] = vg.to_json()
            agree["chamber_samples_located"] = _samples_located(vg)
            lines.append(f"{len(vg.walls)} VGIT wall(s), {len(vg.chambers)} chamber(s)")
    cones = [conedeg.cone_quotient_check(n, d, args.m_max) for d in degrees if d <= n + 1]
    out["cone_checks"] = [r.to_json() for r in cones]
    agree["cone_identities"] = all(r.checks_passed for r in cones)
    return out, agree, "\n".join(lines)


COMMANDS = {
    "a-vector": _cmd_a_vector,
    "beta": _cmd_beta,
    "s-invariant": _cmd_s_invariant,
    "kss-polytope": _cmd_kss_polytope,
    "cone-chain": _cmd_cone_chain,
    "cm-weight": _cmd_cm_weight,
    "effective-linearization": _cmd_effective_linearization,
    "git-check": _cmd_git_check,
    "vgit-chambers": _cmd_vgit_chambers,
    "cone-verify": _cmd_cone_verify,
    "report": _cmd_report,
}


def _write(path, text):
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kstab", description="Exact K-stability and GIT computations.")
    p.add_argument("--version", action="version", version=f"kstab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--n", type=int)
        s.add_argument("--degrees", type=_ints)
        s.add_argument("--coefficients", type=_rationals)
        s.add_argument("--linearization", type=_rationals)
        s.add_argument("--one-ps", type=_ints, dest="one_ps")
        s.add_argument("--forms")
        s.add_argument("--frames", default="identity")
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--cap", type=int)
        s.add_argument("--m-max", type=int, default=10, dest="m_max")
        s.add_argument("--json", help="write the full JSON document here ('-' for stdout)")
        s.add_argument("--svg")
        s.add_argument("--decimal", action="store_true",
                       help="add approximate decimals (non-authoritative)")
    return p


def _inputs(args):
    keys = ("n", "degrees", "coefficients", "linearization", "one_ps", "forms", "frames",
            "cap", "m_max")
    out = {}
    for k in keys:
        v = getattr(args, k)
        if v is None:
            continue
        out[k] = [fmt(x) if isinstance(x, Fraction) else x for x in v] if isinstance(v, list) else v
    return out


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        result, agreement, text = COMMANDS[args.command](args)
    except KstabError as exc:
        doc = {"error": str(exc), "exit_code": exc.exit_code}
        if getattr(exc, "diagnostics", None):
            doc["diagnostics"] = exc.diagnostics
        print(json.dumps(doc, sort_keys=True, default=str), file=sys.stderr)
        return exc.exit_code
    doc = {
        "tool": "kstab",
        "version": __version__,
        "command": args.command,
        "input": _inputs(args),
        "seed": args.seed,
        "result": result,
        "agreement": agreement,
    }
    if args.decimal:
        doc["decimal_approx_non_authoritative"] = _decimalize(result)
    body = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if args.json == "-":
        stdout.write(body)
    else:
        stdout.write(text + "\n")
        if args.json:
            _write(args.json, body)
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
