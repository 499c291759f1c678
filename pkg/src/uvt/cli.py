"""Command-line front end.

Every command prints a header carrying the active Omega and bounds, then its
result as text, JSON or LaTeX.  Exit status: 0 on success, 1 for parse or
constraint errors, 2 when an internal invariant check fails.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from typing import Callable, Dict, List, Optional

import jsonschema

from . import centre as C
from .algebra import QuantumGroup, UElement, render_u, star_relations
from .cartan import CartanDatum, CartanError, format_vec, from_type, parse_omega
from .freealg import words_of_degree
from .pairing import Pairing, PairingError
from .parser import ParseError, parse_element, parse_weight
from .repmod import ModuleError, default_depth, relation_defects, simple_module, verma_truncated
from .scalars import latex as latex_scalar
from .scalars import render

DEFAULT_SEED = 20240


class CheckFailed(RuntimeError):
    """An invariant that must hold did not."""


# ---------------------------------------------------------------------------
# output schema
# ---------------------------------------------------------------------------

_VEC = {"type": "array", "items": {"type": "integer"}}

ENVELOPE_SCHEMA = {
    "type": "object",
    "required": ["header", "command", "result"],
    "properties": {
        "header": {
            "type": "object",
            "required": ["type", "omega", "bounds", "star_sign", "seed"],
            "properties": {
                "type": {"type": "string"},
                "omega": {"type": "array", "items": _VEC},
                "bounds": {"type": "object"},
                "star_sign": {"enum": ["printed", "flipped"]},
                "seed": {"type": "integer"},
            },
        },
        "command": {"type": "string"},
        "result": {"type": "object"},
    },
}

RESULT_SCHEMAS: Dict[str, dict] = {
    "nf": {"type": "object", "required": ["input", "normal_form"]},
    "pair": {"type": "object", "required": ["form", "value"]},
    "comm": {"type": "object", "required": ["index", "maps"]},
    "xi": {"type": "object", "required": ["input", "xi"]},
    "z-lambda": {
        "type": "object",
        "required": ["lambda", "central", "degree", "terms", "xi", "expected_xi", "xi_matches", "weyl_invariant"],
        "properties": {"central": {"type": "boolean"}, "terms": {"type": "integer"}},
    },
    "criterion": {
        "type": "object",
        "required": ["type", "omega", "kernel_basis", "certified_elements", "window_bounds", "counterexamples"],
        "properties": {
            "kernel_basis": {"type": "array", "items": {"type": "string"}},
            "certified_elements": {
                "type": "array",
                "items": {"type": "object", "required": ["element", "degree", "central"]},
            },
            "window_bounds": {"type": "object", "required": ["eta_l1", "mu_max", "cartan_box", "searched"]},
            "counterexamples": {"type": "array"},
        },
    },
    "casimir": {"type": "object", "required": ["index", "element", "central", "forms_agree"]},
    "uji": {"type": "object", "required": ["index", "X_central", "Y_central", "Y_forms_agree", "condition_elements", "blocks"]},
    "serre-check": {"type": "object", "required": ["pairs", "ok"]},
    "star-check": {"type": "object", "required": ["sign", "conjugation", "commutators", "serre", "t_free"]},
    "module-dump": {"type": "object", "required": ["highest_weight", "weights", "dims", "actions"]},
}


def validate(doc: dict) -> None:
    jsonschema.validate(doc, ENVELOPE_SCHEMA)
    schema = RESULT_SCHEMAS.get(doc["command"])
    if schema:
        jsonschema.validate(doc["result"], schema)


# ---------------------------------------------------------------------------
# session
# ---------------------------------------------------------------------------


class Session:
    def __init__(self, datum: CartanDatum, bounds: dict, star_sign: str, fmt: str, seed: int):
        self.datum = datum
        self.bounds = bounds
        self.star_sign = star_sign
        self.format = fmt
        self.seed = seed
        self._qg: Optional[QuantumGroup] = None

    @property
    def qg(self) -> QuantumGroup:
        if self._qg is None:
            self.datum.require_symmetric()
            self._qg = QuantumGroup(self.datum)
        return self._qg

    def header(self) -> dict:
        return {
            "type": self.datum.name,
            "omega": [list(r) for r in self.datum.omega],
            "bounds": {k: v for k, v in sorted(self.bounds.items()) if v is not None},
            "star_sign": self.star_sign,
            "seed": self.seed,
        }

    def element(self, text: str) -> UElement:
        return parse_element(self.qg, text, self.star_sign)

    def weight(self, text: str):
        return parse_weight(text, self.datum.rank, self.datum.fundamental_weights)


def latex_element(text: str) -> str:
    """Turn a rendered element or scalar into LaTeX."""
    s = re.sub(r"K(\d+)'", r"K'_{\1}", text)
    s = re.sub(r"([EFK])(\d+)", r"\1_{\2}", s)
    s = re.sub(r"\^(-?\d+)", r"^{\1}", s)
    return s.replace("*", " ")


# ---------------------------------------------------------------------------
# commands; each returns (result dict, text lines, latex string or None)
# ---------------------------------------------------------------------------


def cmd_nf(s: Session, a) -> tuple:
    u = s.element(a.expr)
    out = render_u(u)
    return {"input": a.expr, "normal_form": out}, [out], latex_element(out)


def cmd_pair(s: Session, a) -> tuple:
    qg = s.qg
    x, y = s.element(a.x), s.element(a.y)
    P = Pairing(qg)
    if a.form == "skew":
        val = P.skew_pair(x, y)
    else:
        val = P.ad_form(x, y)
    out = render(val)
    return {"form": a.form, "x": a.x, "y": a.y, "value": out}, [out], latex_scalar(val)


def cmd_comm(s: Session, a) -> tuple:
    qg = s.qg
    u = s.element(a.expr)
    i = _index(s, a.index)
    try:
        m, mp = qg.commutation_maps(u, i)
    except ValueError as exc:
        raise ParseError(str(exc), 0) from None
    names = ("p", "p'") if all(not y for (y, _, _, _) in u.terms) else ("a", "a'")
    maps = {f"{names[0]}_{a.index}": render_u(m), f"{names[1]}_{a.index}": render_u(mp)}
    lines = [f"{k}(u) = {v}" for k, v in maps.items()]
    return {"index": a.index, "input": a.expr, "maps": maps}, lines, None


def cmd_xi(s: Session, a) -> tuple:
    qg = s.qg
    u = s.element(a.expr)
    for k in u.terms:
        d1, d2 = qg.key_degree(k)
        if d1 != d2:
            raise C.CentreError("xi is defined on the degree-zero part U_0 (F- and E-degrees must agree)")
    x = C.hc_xi(qg, u)
    out = C.render_cartan(x)
    return {"input": a.expr, "xi": out}, [out], latex_element(out)


def cmd_z_lambda(s: Session, a) -> tuple:
    qg = s.qg
    d = s.datum
    lam = s.weight(a.lam)
    if not (d.is_dominant(lam) and d.in_root_lattice(lam)):
        raise C.CentreError(
            f"lambda = {format_vec(lam)} is rejected: central elements z_lambda are built only for "
            "dominant weights lying in the root lattice"
        )
    cand = C.z_lambda(qg, lam)
    xi = C.hc_xi(qg, cand.element)
    expected = C.hc_image_of_trace(d, lam)
    res = {
        "lambda": format_vec(lam),
        "central": cand.certified,
        "degree": [list(x) for x in cand.degree] if cand.degree else None,
        "terms": len(cand.element.terms),
        "element": render_u(cand.element),
        "xi": C.render_cartan(xi),
        "xi_terms": len(xi.terms),
        "expected_xi": C.render_cartan(expected),
        "xi_matches": xi == expected,
        "weyl_invariant": C.is_weyl_invariant(d, xi),
    }
    if not (res["central"] and res["xi_matches"] and res["weyl_invariant"]):
        raise CheckFailed(json.dumps(res))
    lines = [
        f"lambda = {res['lambda']}",
        f"central: {res['central']}",
        f"terms: {res['terms']}",
        f"xi(z) = {res['xi']}",
        f"xi matches weight multiplicities: {res['xi_matches']}",
        f"W-invariant: {res['weyl_invariant']}",
    ]
    if a.show:
        lines.append(f"z = {res['element']}")
    return res, lines, latex_element(res["xi"])


def cmd_criterion(s: Session, a) -> tuple:
    res = C.criterion(s.qg, eta_bound=a.eta_bound, mu_max=a.mu_max, box=a.box, solve=not a.no_solve)
    for el in res["certified_elements"]:
        if not el["central"]:
            raise CheckFailed(f"{el['element']} is not central")
    for eta in s.datum.antisym_kernel():
        e = tuple(int(x) for x in eta)
        el = C._cartan_monomial(e, e)
        res.setdefault("kernel_elements", []).append(el)
    lines = [
        f"kernel basis: [{', '.join(res['kernel_basis'])}]",
        "certified:",
    ]
    lines += [f"  {c['element']}  degree {c['degree']}  central={c['central']}" for c in res["certified_elements"]]
    searched = res["window_bounds"]["searched"]
    if searched:
        nz = [x for x in searched if x["nullity"]]
        lines.append(f"window search: {len(searched)} degrees, nonzero nullity in {len(nz)}")
    lines.append(f"counterexamples: {len(res['counterexamples'])}")
    return res, lines, None


def cmd_casimir(s: Session, a) -> tuple:
    qg = s.qg
    i = _index(s, a.index)
    y = C.casimir(qg, i, "EF")
    agree = y == C.casimir(qg, i, "FE")
    central_sub = C.commutes_with_generators(qg, y, indices=[i], cartan_all=False)
    res = {"index": a.index, "element": render_u(y), "central": central_sub, "forms_agree": agree}
    if qg.rank == 1:
        res["central_in_U"] = C.is_central(qg, y)
    if not (central_sub and agree):
        raise CheckFailed(json.dumps(res))
    lines = [f"Y = {res['element']}", f"commutes with E, F, K, K' ({a.index}): {central_sub}", f"both forms agree: {agree}"]
    return res, lines, latex_element(res["element"])


def cmd_uji(s: Session, a) -> tuple:
    qg = s.qg
    i = _index(s, a.index)
    zs = []
    for text in a.z or []:
        zs.append(C.z_lambda(qg, s.weight(text)).element)
    res = C.centre_UJi_check(qg, i, box=a.box, kmax=a.kmax, zs=zs)
    blocks = []
    for tot in range(1, a.block_depth + 1):
        for gamma in _compositions(qg.rank, tot):
            blocks.append(C.annihilator_split(qg, [i], gamma))
    res["blocks"] = blocks
    if not all(b["direct_sum"] for b in blocks):
        raise CheckFailed("U_J + R_J is not a direct sum in some block")
    lines = [
        f"X = K{a.index}*K{a.index}' central in U_J: {res['X_central']}",
        f"Y central in U_J: {res['Y_central']}",
        f"Y forms agree: {res['Y_forms_agree']}",
        f"blocks checked: {len(blocks)}, all direct sums: True",
    ]
    for c in res["condition_elements"]:
        lines.append(f"  K_{c['x']} K'_{c['y']}  k={c['k']}  {c['central']}")
    for z in res["u_j_components"]:
        lines.append(f"  z: xi = xi_J(component) {z['xi_equal']}, component central in U_J {z['component_central_in_UJ']}")
    return res, lines, None


def cmd_serre_check(s: Session, a) -> tuple:
    qg = s.qg
    fa = qg.free
    pairs = []
    ok = True
    for i in range(qg.rank):
        for j in range(qg.rank):
            if i == j:
                continue
            el = fa.serre_element(i, j)
            deg = next(iter(el.degrees(qg.rank)))
            words = words_of_degree(deg)
            vanish = all(not fa.pairing(el, type(el).word(w)) for w in words)
            nf_e = not qg.from_free_e(el)
            nf_f = not qg.from_free_f(el)
            pairs.append({"i": i + 1, "j": j + 1, "radical": vanish, "E_vanishes": nf_e, "F_vanishes": nf_f})
            ok = ok and vanish and nf_e and nf_f
    res = {"pairs": pairs, "ok": ok}
    if a.modules:
        defects = {}
        for lam_text in a.modules:
            mod = simple_module(qg, s.weight(lam_text))
            defects[lam_text] = relation_defects(mod)
        res["module_defects"] = defects
        ok = ok and not any(defects.values())
        res["ok"] = ok
    if not ok:
        raise CheckFailed(json.dumps(res))
    lines = [f"({p['i']},{p['j']}): in radical {p['radical']}, E-image 0 {p['E_vanishes']}, F-image 0 {p['F_vanishes']}" for p in pairs]
    return res, lines or ["rank one: no Serre relations"], None


def cmd_star_check(s: Session, a) -> tuple:
    res = star_relations(s.qg, s.star_sign)
    if s.star_sign == "flipped" and not res["t_free"]:
        raise CheckFailed(json.dumps(res))
    lines = [f"star sign: {res['sign']}; all relations t-free: {res['t_free']}"]
    for r in res["conjugation"]:
        if not r["t_free"]:
            lines.append(f"  {r['relation']} = ({r['constant']}) * ...  t-exponents {r['t_exponents']}")
    for r in res["serre"]:
        lines.append(f"  {r['relation']}: residual {r['residual']}")
    return res, lines, None


def cmd_module_dump(s: Session, a) -> tuple:
    qg = s.qg
    lam = s.weight(a.lam)
    if a.verma:
        depth = s.bounds.get("depth") or default_depth(qg, lam)
        mod = verma_truncated(qg, lam, depth)
    else:
        if not s.datum.is_dominant(lam):
            raise ModuleError("simple modules are built for dominant integral weights")
        mod = simple_module(qg, lam)
    res = mod.to_json(render)
    lines = [f"highest weight {format_vec(lam)}, dim {mod.dim}"]
    for w, dim in zip(res["weights"], res["dims"]):
        lines.append(f"  weight ({', '.join(w)}): {dim}")
    return res, lines, None


COMMANDS: Dict[str, Callable] = {
    "nf": cmd_nf,
    "pair": cmd_pair,
    "comm": cmd_comm,
    "xi": cmd_xi,
    "z-lambda": cmd_z_lambda,
    "criterion": cmd_criterion,
    "casimir": cmd_casimir,
    "uji": cmd_uji,
    "serre-check": cmd_serre_check,
    "star-check": cmd_star_check,
    "module-dump": cmd_module_dump,
}


def _index(s: Session, i: int) -> int:
    if not 1 <= i <= s.datum.rank:
        raise ParseError(f"index {i} out of range 1..{s.datum.rank}", 0)
    return i - 1


def _compositions(rank: int, total: int) -> List[tuple]:
    if rank == 1:
        return [(total,)]
    return [(k,) + rest for k in range(total, -1, -1) for rest in _compositions(rank - 1, total - k)]


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors (exit 1); exit 2 is reserved for invariant violations
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _common(suppress: bool) -> argparse.ArgumentParser:
    # flags are accepted before or after the subcommand; the copy attached to
    # subcommands suppresses defaults so it does not overwrite earlier values
    d = (lambda x: argparse.SUPPRESS) if suppress else (lambda x: x)
    c = _Parser(add_help=False)
    c.add_argument("--type", default=d("A1"), help="A1, A2, A3, ... or custom (with --omega)")
    c.add_argument("--omega", default=d(None), help="Omega rows, e.g. '1,-1;0,1'")
    c.add_argument("--depth", type=int, default=d(None), help="truncation depth for Verma modules")
    c.add_argument("--star-sign", choices=["printed", "flipped"], default=d("flipped"))
    c.add_argument("--format", choices=["text", "json", "latex"], default=d("text"))
    c.add_argument("--seed", type=int, default=d(DEFAULT_SEED))
    return c


def build_parser() -> argparse.ArgumentParser:
    common = _common(True)
    p = _Parser(prog="uvt", description="Two-parameter quantum groups U_{v,t}", parents=[_common(False)])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, help=help_, parents=[common])

    q = add("nf", "triangular normal form of an expression")
    q.add_argument("expr")
    q = add("pair", "skew pairing or ad-invariant form of two expressions")
    q.add_argument("x")
    q.add_argument("y")
    q.add_argument("--form", choices=["skew", "ad"], default="skew")
    q = add("comm", "commutation maps against F_i (positive part) or E_i (negative part)")
    q.add_argument("expr")
    q.add_argument("--index", type=int, default=1)
    q = add("xi", "Harish-Chandra image of a degree-zero element")
    q.add_argument("expr")
    q = add("z-lambda", "central element from the quantum trace of L(lambda)")
    q.add_argument("--lambda", dest="lam", required=True, help="e.g. a, a1+a2, 2*a1, 1,1")
    q.add_argument("--show", action="store_true", help="print the element itself")
    q = add("criterion", "central elements of degree (eta, eta)")
    q.add_argument("--eta-bound", type=int, default=4)
    q.add_argument("--mu-max", type=int, default=2)
    q.add_argument("--box", type=int, default=1)
    q.add_argument("--no-solve", action="store_true")
    q = add("casimir", "the rank-one Casimir element Y")
    q.add_argument("--index", type=int, default=1)
    q = add("uji", "centre of the rank-one subalgebra U_J, J = {i}")
    q.add_argument("--index", type=int, default=1)
    q.add_argument("--box", type=int, default=1)
    q.add_argument("--kmax", type=int, default=2)
    q.add_argument("--block-depth", type=int, default=3)
    q.add_argument("--z", action="append", help="weight of a z_lambda to decompose (repeatable)")
    q = add("serre-check", "Serre elements lie in the radical and vanish in U")
    q.add_argument("--modules", action="append", help="also check relations on L(lambda) (repeatable)")
    q = add("star-check", "defining relations rewritten with the star product")
    q = add("module-dump", "weights, dimensions and action matrices")
    q.add_argument("--lambda", dest="lam", required=True)
    q.add_argument("--verma", action="store_true", help="truncated Verma module instead of L(lambda)")
    return p


def _emit(s: Session, command: str, res: dict, lines: List[str], tex: Optional[str], out) -> None:
    doc = {"header": s.header(), "command": command, "result": res}
    validate(doc)
    if s.format == "json":
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        return
    h = s.header()
    bounds = ", ".join(f"{k}={v}" for k, v in h["bounds"].items()) or "none"
    omega = "; ".join(",".join(str(x) for x in r) for r in h["omega"])
    out.write(f"# type {h['type']}  omega [{omega}]  bounds {bounds}  star-sign {h['star_sign']}  seed {h['seed']}\n")
    if s.format == "latex" and tex is not None:
        out.write(tex + "\n")
    else:
        out.write("\n".join(lines) + "\n")


def main(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    random.seed(args.seed)
    try:
        omega = parse_omega(args.omega) if args.omega else None
        datum = from_type(args.type if not omega or args.type != "A1" else "custom", omega)
        bounds = {"depth": args.depth}
        for k in ("eta_bound", "mu_max", "box", "kmax", "block_depth"):
            if hasattr(args, k):
                bounds[k] = getattr(args, k)
        s = Session(datum, bounds, args.star_sign, args.format, args.seed)
        res, lines, tex = COMMANDS[args.command](s, args)
        _emit(s, args.command, res, lines, tex, out)
        return 0
    except (ParseError, CartanError, C.CentreError, PairingError, ModuleError) as exc:
        err.write(f"error: {exc}\n")
        return 1
    except (CheckFailed, C.InvariantViolation, jsonschema.ValidationError) as exc:
        err.write(f"invariant violation: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
