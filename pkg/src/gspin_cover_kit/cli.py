"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 resource bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import asdict, dataclass
from typing import Sequence

from . import covertorus as ct
from . import exceptional as ex
from . import orbits as orb
from . import subgroups as sg
from . import suites
from .localfield import MU4_NAMES, REAL, CharacterValue, FieldElement, FieldError, LocalField, SquareClassCharacter, mu4_parse
from .orbits import PartitionError
from .rootdata import (
    Basis,
    BoundExceeded,
    RootError,
    TorusElement,
    cartan_matrix,
    coroot_coefficients,
    from_word,
    identity_weyl,
    longest_element,
    positive_roots,
    simple_roots,
    weyl_enumerate,
)

SCHEMA = "gspin-cover-kit/1"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    p: int | str = 3
    n: int = 1
    nonresidue: int | None = None
    gamma_pi: str | None = None
    valuations: tuple[int, ...] = (0, 1)
    format: str = "text"
    seed: int = 0
    suites: tuple[str, ...] = ()  # empty means all

    def field(self) -> LocalField:
        k = None if self.gamma_pi is None else mu4_parse(self.gamma_pi)
        return LocalField(self.p, self.nonresidue, k)


def _parse_p(text) -> int | str:
    if str(text).strip().lower() == REAL:
        return REAL
    try:
        return int(text)
    except ValueError as exc:
        raise UsageError(f"--p must be an odd prime or 'real', got {text!r}") from exc


def _parse_valuations(text) -> tuple[int, ...]:
    if isinstance(text, (tuple, list)):
        return tuple(int(v) for v in text)
    try:
        return tuple(int(v) for v in str(text).replace(",", " ").split())
    except ValueError as exc:
        raise UsageError(f"bad valuation list {text!r}") from exc


def read_config_file(path: str) -> dict:
    """Simple key=value file; blank lines and '#' comments are ignored."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


CONFIG_KEYS = ("p", "n", "nonresidue", "gamma_pi", "valuations", "format", "seed", "suites")


def build_config(args) -> RunConfig:
    config = getattr(args, "config", None)
    raw = read_config_file(config) if config else {}
    for key in CONFIG_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            raw[key] = val
    unknown = set(raw) - set(CONFIG_KEYS)
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    cfg = RunConfig()
    try:
        if "p" in raw:
            cfg.p = _parse_p(raw["p"])
        if "n" in raw:
            cfg.n = int(raw["n"])
        if "nonresidue" in raw:
            cfg.nonresidue = int(raw["nonresidue"])
        if "seed" in raw:
            cfg.seed = int(raw["seed"])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if "gamma_pi" in raw:
        cfg.gamma_pi = str(raw["gamma_pi"])
    if "valuations" in raw:
        cfg.valuations = _parse_valuations(raw["valuations"])
    if "format" in raw:
        if raw["format"] not in ("json", "text"):
            raise UsageError("--format must be json or text")
        cfg.format = raw["format"]
    if "n" not in raw and getattr(args, "command", None) == "verify":
        cfg.n = 3
    if "suites" in raw:
        cfg.suites = tuple(x.strip() for x in str(raw["suites"]).split(",") if x.strip())
    if cfg.n < 0:
        raise UsageError("--n must be non-negative")
    return cfg


def _torus(tokens: Sequence[str] | None, n: int, basis: str) -> TorusElement:
    if tokens is None:
        return TorusElement.identity(n, Basis(basis))
    coords = tuple(FieldElement.parse(tok) for tok in tokens)
    if len(coords) != n + 1:
        raise UsageError(f"expected {n + 1} coordinates for n={n}, got {len(coords)}")
    return TorusElement(coords, Basis(basis))


def _weyl(text: str, n: int):
    if text == "w0":
        return longest_element(n)
    if text in ("id", "1", "e"):
        return identity_weyl(n)
    try:
        word = [int(tok) for tok in text.replace(".", ",").replace("s", "").split(",") if tok]
    except ValueError as exc:
        raise UsageError(f"invalid Weyl word {text!r}; use w0, id or indices like 2,3,2") from exc
    try:
        return from_word(word, n)
    except RootError as exc:
        raise UsageError(f"invalid Weyl word {text!r}: {exc}") from exc


# -- commands ---------------------------------------------------------------


def cmd_roots(cfg: RunConfig, args) -> tuple[dict, int]:
    n = cfg.n
    roots = [
        {"root": str(a), "long": a.is_long, "length_tag": a.length_tag(n), "coroot": list(coroot_coefficients(a, n))}
        for a in positive_roots(n)
    ]
    res = {
        "n": n,
        "positive_roots": roots,
        "simple_roots": [str(a) for a in simple_roots(n)],
        "cartan_matrix": cartan_matrix(n),
    }
    if n <= 6:
        res["weyl_order"] = len(weyl_enumerate(n))
    return res, EXIT_OK


def cmd_sigma(cfg: RunConfig, args) -> tuple[dict, int]:
    F = cfg.field()
    t, t2 = _torus(args.t, cfg.n, args.basis), _torus(args.t2, cfg.n, args.basis)
    factors = ct.sigma_factors(F, t, t2)
    s = ct.sigma_torus(F, t, t2)
    comm = s * ct.sigma_torus(F, t2, t)
    return {
        "sigma": s,
        "commutator": comm,
        "factors": [{"factor": name, "value": v} for name, v in factors],
        "t_alpha": t.to(Basis.ALPHA).tokens(),
        "t2_alpha": t2.to(Basis.ALPHA).tokens(),
    }, EXIT_OK


def cmd_commutator(cfg: RunConfig, args) -> tuple[dict, int]:
    F = cfg.field()
    b, b2 = _torus(args.t, cfg.n, args.basis), _torus(args.t2, cfg.n, args.basis)
    formula = ct.commutator(F, b, b2)
    via_sigma = ct.sigma_torus(F, b, b2) * ct.sigma_torus(F, b2, b)
    code = EXIT_OK if formula == via_sigma else EXIT_FAIL
    return {"commutator": formula, "sigma_product": via_sigma, "agree": formula == via_sigma}, code


def cmd_verify_cocycle(cfg: RunConfig, args) -> tuple[dict, int]:
    F = cfg.field()
    sigma = None
    if args.fault == "flip-sigma":
        t = TorusElement.identity(cfg.n)
        sigma = ct.flipped_sigma(F, (t, t))
    if args.sample:
        rep = ct.sample_cocycle(F, cfg.n, args.sample, random.Random(cfg.seed), cfg.valuations, sigma=sigma)
    else:
        rep = ct.verify_cocycle(F, cfg.n, cfg.valuations, sigma=sigma)
    return rep.to_json(), EXIT_OK if rep.passed else EXIT_FAIL


def cmd_subgroup(cfg: RunConfig, args) -> tuple[dict, int]:
    F = cfg.field()
    n = cfg.n
    if args.action == "member":
        t = _torus(args.t, n, args.basis)
        tags = [sg.Tag(args.tag)] if args.tag else list(sg.Tag)
        return {"element": t.tokens(), "basis": t.basis.value, "member": {tag.value: sg.PREDICATES[tag](t) for tag in tags}}, EXIT_OK
    if args.action == "centralizer":
        U = sg.torus_universe(F, n, cfg.valuations)
        S = U if args.of == "torus" else sg.unit_torus(F, n)
        C = sg.brute_centralizer(F, S, n, cfg.valuations)
        pred = sg.center_torus_membership if args.of == "torus" else sg.centralizer_K_membership
        claimed = {t for t in U if pred(t)}
        agree = set(C) == claimed
        return {
            "of": args.of,
            "size": len(C),
            "universe": len(U),
            "matches_parametric_set": agree,
            "elements": [t.tokens() for t in C] if args.list else None,
        }, EXIT_OK if agree else EXIT_FAIL
    tag = sg.Tag(args.tag or "TM")
    rep = sg.is_maximal_abelian(F, sg.PREDICATES[tag], n, cfg.valuations)
    return {
        "tag": tag.value,
        "abelian": rep.abelian,
        "maximal": rep.maximal,
        "members": rep.members,
        "universe": rep.universe,
        "extension_witness": rep.extension_witness,
    }, EXIT_OK


def _eta(args) -> SquareClassCharacter:
    on_pi = {"unramified": CharacterValue(z_exp=1), "trivial": CharacterValue(), "minus": CharacterValue(zeta=2)}[args.eta]
    return SquareClassCharacter(on_pi, args.eta_u)


def cmd_chi(cfg: RunConfig, args) -> tuple[dict, int]:
    F = cfg.field()
    E = ex.ExceptionalCharacter(cfg.n, F, _eta(args))
    t = _torus(args.t, cfg.n, args.basis)
    if args.kind == "chi0":
        val = ex.chi0_eval(E, t)
    elif args.kind == "center":
        d = FieldElement.parse(args.d) if args.d else None
        val = ex.chi_center_eval(E, t, d) if d is not None else ex.chi_center_cover(E, ct.lift(t))
    else:
        val = ex.chi_prime_eval(E, t)
    return {"kind": args.kind, "value": str(val), "parts": val.to_json()}, EXIT_OK


def _unreduced(n: int, w) -> str:
    parts = []
    for a in w.inversions():
        k = ex.chi_a_alpha_exponent(n, a)
        parts.append(f"(1 - q^{k - 1})/(1 - q^{k})")
    return " * ".join(parts) if parts else "1"


def cmd_gk(cfg: RunConfig, args) -> tuple[dict, int]:
    n = cfg.n
    w = _weyl(args.w, n)
    c = ex.gk_constant(n, w)
    res = {
        "w": str(w),
        "reduced_word": list(w.reduced_word()),
        "gk": str(c),
        "gk_json": c.to_json(),
        "unreduced": _unreduced(n, w),
        "pole_order": ex.pole_order(n, w),
    }
    if w == longest_element(n):
        res["matches_closed_form"] = c == ex.gk_w0_closed_form(n)
    return res, EXIT_OK


def cmd_pole_order(cfg: RunConfig, args) -> tuple[dict, int]:
    n = cfg.n
    w = _weyl(args.w, n)
    a = ex.pole_analysis(n, w)
    return {
        "w": str(w),
        "pole_order": ex.pole_order(n, w),
        "numerator_poles": [str(r) for r in a.numerator_poles],
        "denominator_poles": [str(r) for r in a.denominator_poles],
        "exponents": a.exponents,
    }, EXIT_OK


def cmd_orbits(cfg: RunConfig, args) -> tuple[dict, int]:
    n = cfg.n
    if args.action == "list":
        out = []
        for O in orb.enumerate_orbits(n):
            out.append({"partition": list(O.parts), "label": str(O), "h": list(orb.h_orbit(O))})
        res = {"n": n, "orbits": out}
        if n >= 1:
            rep = orb.check_reduction(n)
            res.update({"O0": str(orb.O0(n)), "O1": str(orb.O1(n)), "reduction_holds": rep.holds})
        return res, EXIT_OK
    if args.action == "hasse":
        edges = [[list(a.parts), list(b.parts)] for a, b in orb.hasse_edges(n)]
        return {"n": n, "edges": edges}, EXIT_OK
    if args.action == "vorbit":
        if not args.partition:
            raise UsageError("orbits vorbit needs --partition")
        O = orb.OrthogonalPartition.parse(args.partition)
        return {
            "partition": str(O),
            "h": list(orb.h_orbit(O)),
            "j": {str(a): orb.j_alpha(O, a) for a in positive_roots(O.n)},
            "v_orbit": [str(a) for a in orb.v_orbit(O)],
        }, EXIT_OK
    if None in (args.o, args.e, args.m):
        raise UsageError("orbits stab-type needs --o, --e and --m")
    return {"o": args.o, "e": args.e, "m": args.m, "type": orb.generic_stabilizer_type(args.o, args.e, args.m)}, EXIT_OK


def cmd_verify(cfg: RunConfig, args) -> tuple[dict, int]:
    results = suites.run_all(cfg.p, cfg.n, fault=args.fault)
    if cfg.suites:
        wanted = [w.lower() for w in cfg.suites]
        results = [r for r in results if any(w in r.name.lower() for w in wanted)]
        if not results:
            raise UsageError(f"no suite matches {list(cfg.suites)}")
    summary = suites.summarize(results)
    return summary, EXIT_OK if summary["passed"] else EXIT_FAIL


COMMANDS = {
    "roots": cmd_roots,
    "sigma": cmd_sigma,
    "commutator": cmd_commutator,
    "verify-cocycle": cmd_verify_cocycle,
    "subgroup": cmd_subgroup,
    "chi": cmd_chi,
    "gk": cmd_gk,
    "pole-order": cmd_pole_order,
    "orbits": cmd_orbits,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS defaults let the flags appear before or after the subcommand
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    g = common.add_argument_group("global options")
    g.add_argument("--p", help="odd prime or 'real' (default 3)")
    g.add_argument("--n", type=int, help="rank n of GSpin(2n+1) (default 1)")
    g.add_argument("--nonresidue", type=int, help="fixed non-residue u (default: least)")
    g.add_argument("--gamma-pi", dest="gamma_pi", choices=sorted(MU4_NAMES.values()), help="Weil factor at the uniformizer")
    g.add_argument("--valuations", help="comma separated valuation range for exhaustive searches")
    g.add_argument("--format", choices=("json", "text"))
    g.add_argument("--seed", type=int, help="seed for sampled modes")
    g.add_argument("--config", help="key=value config file; flags override it")

    parser = argparse.ArgumentParser(prog="gspin-cover-kit", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("roots", parents=[common], help="root datum summary")

    for name in ("sigma", "commutator"):
        sp = sub.add_parser(name, parents=[common], help=f"{name} of two torus elements")
        sp.add_argument("--t", nargs="+", metavar="V:C", help="coordinates as valuation:class tokens")
        sp.add_argument("--t2", nargs="+", metavar="V:C")
        sp.add_argument(
            "--basis", choices=("alpha", "convenient"), default="alpha" if name == "sigma" else "convenient"
        )

    sp = sub.add_parser("verify-cocycle", parents=[common], help="exhaustive cocycle identity check")
    sp.add_argument("--fault", choices=("flip-sigma",))
    sp.add_argument("--sample", type=int, help="check this many random triples instead")

    sp = sub.add_parser("subgroup", parents=[common], help="distinguished torus subgroups")
    sp.add_argument("action", choices=("member", "centralizer", "maximal-abelian"))
    sp.add_argument("--tag", choices=[t.value for t in sg.Tag])
    sp.add_argument("--t", nargs="+", metavar="V:C")
    sp.add_argument("--basis", choices=("alpha", "convenient"), default="convenient")
    sp.add_argument("--of", choices=("torus", "unit"), default="torus")
    sp.add_argument("--list", action="store_true", help="list centralizer elements")

    sp = sub.add_parser("chi", parents=[common], help="evaluate exceptional characters")
    sp.add_argument("action", choices=("eval",))
    sp.add_argument("--kind", choices=("chi0", "center", "prime"), default="chi0")
    sp.add_argument("--t", nargs="+", metavar="V:C")
    sp.add_argument("--basis", choices=("alpha", "convenient"), default="convenient")
    sp.add_argument("--d", metavar="V:C", help="central parameter d")
    sp.add_argument("--eta", choices=("unramified", "trivial", "minus"), default="unramified")
    sp.add_argument("--eta-u", dest="eta_u", type=int, choices=(1, -1), default=1)

    for name in ("gk", "pole-order"):
        sp = sub.add_parser(name, parents=[common], help=f"{name} for a Weyl element")
        sp.add_argument("w", help="w0, id, or a reduced word such as 2,3,2")

    sp = sub.add_parser("orbits", parents=[common], help="orthogonal partitions")
    sp.add_argument("action", choices=("list", "hasse", "vorbit", "stab-type"))
    sp.add_argument("--partition", help='e.g. "3 1^2" or "3,1,1"')
    sp.add_argument("--o", type=int)
    sp.add_argument("--e", type=int)
    sp.add_argument("--m", type=int)

    sp = sub.add_parser("verify", parents=[common], help="run all exhaustive suites")
    sp.add_argument("--fault", choices=("flip-sigma",))
    sp.add_argument("--suites", help="comma separated name fragments, e.g. cocycle,orbit")
    return parser


def _render_text(command: str, result: dict) -> str:
    if command == "verify":
        lines = []
        for s in result["suites"]:
            status = "PASS" if s["passed"] else "FAIL"
            w = f" witness={s['witness']}" if s["witness"] is not None else ""
            lines.append(f"[{status}] {s['name']} ({s['checked']} checks, {s['seconds']:.2f}s){w}")
        lines.append("all suites passed" if result["passed"] else "verification FAILED")
        return "\n".join(lines)
    if command == "sigma":
        lines = [f"sigma = {result['sigma']:+d}", f"[t,t']_sigma = {result['commutator']:+d}"]
        lines += [f"  {f['factor']} = {f['value']:+d}" for f in result["factors"]]
        return "\n".join(lines)
    if command == "gk":
        lines = [f"w = {result['w']}", f"c(w,chi) = {result['unreduced']}", f"         = {result['gk']}"]
        lines.append(f"pole order = {result['pole_order']}")
        return "\n".join(lines)
    return "\n".join(f"{k}: {v}" for k, v in result.items() if v is not None)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = build_config(args)
        cfg.field()  # reject a bad field configuration for every command
        result, code = COMMANDS[args.command](cfg, args)
    except BoundExceeded as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (UsageError, FieldError, RootError, PartitionError, ex.DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.format == "json":
        payload = {"schema": SCHEMA, "command": args.command, "config": _config_json(cfg), "result": result}
        print(json.dumps(payload, indent=2, default=str))
    else:
        print(_render_text(args.command, result))
    return code


def _config_json(cfg: RunConfig) -> dict:
    d = asdict(cfg)
    d["valuations"] = list(cfg.valuations)
    return d


if __name__ == "__main__":
    sys.exit(main())
