"""Command-line front end.

Every verb maps to one library operation family; dispatch happens through a
fixed table, so unknown verbs die before any input is read.  Objects are
addressed either as files holding the JSON schemas of the owning modules or
as registry tokens of the form builtin:<name>@<ring> (modules also accept
the relative names "trivial" and "regular", resolved against the group).

Exit codes: 0 all good, 1 usage or schema problems, 2 a verification ran
and failed.  Failures always leave a machine-readable record on stdout.
With --format json the output is canonical: sorted keys, fixed separators,
byte-for-byte reproducible on the same input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

from .exact_linalg import (
    ExactLinalgError,
    GF,
    Matrix,
    QQ,
    ZZ,
    Zmod,
    ring_from_token,
)
from .hopf_core import (
    HopfAlgebraData,
    SchemaError,
    base_change,
    dual_hopf,
    dumps_canonical,
    hopf_from_json_dict,
    hopf_to_json_dict,
    verify_hopf,
)
from .schemes import (
    SubgroupData,
    as_hopf,
    build_builtin,
    builtins_over,
    constant_group_scheme,
    cyclic_table,
    mu_n,
    subgroup_from_ideal,
)
from .rep import (
    ComoduleData,
    comodule_from_json_dict,
    comodule_to_json_dict,
    induce,
    permutation_comodule,
    regular_comodule,
    regular_g_algebra,
    restrict,
    trivial_comodule,
    verify_comodule,
    verify_g_algebra,
)
from .cohomology import (
    cohomology_groups,
    cohomology_presentations,
    cup_product,
)
from .integrals import (
    ComoduleMap,
    bounded_torsion_certificate,
    dual_coinvariants,
    frobenius_isomorphism,
    left_integrals,
    power_reductivity_witness,
    trace_map,
    verify_frobenius,
    verify_trace,
)

DEFAULT_MAX_DEGREE = 6
DEFAULT_SEED = 20240914


class UsageError(Exception):
    """Bad arguments, unreadable files, malformed payloads: exit 1."""


@dataclass(frozen=True)
class Command:
    verb: str
    inputs: Tuple[str, ...]
    options: Dict[str, object]


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage problems; the contract here reserves 2 for
    # verification failures, so route parse errors through exit code 1
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# input resolution
# ---------------------------------------------------------------------------

def _read_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise UsageError(f"malformed JSON in {path}: {e}")


def _load_group(token: str):
    """A group scheme from a registry token, or a Hopf algebra from a file."""
    if token.startswith("builtin:"):
        return build_builtin(token)
    obj = _read_json(token)
    schema = obj.get("schema") if isinstance(obj, dict) else None
    if schema != "hopf-v1":
        raise UsageError(f"{token}: expected a hopf-v1 payload, got {schema!r}")
    try:
        return hopf_from_json_dict(obj)
    except SchemaError as e:
        raise UsageError(f"{token}: {e}")


def _load_module(token: str, g) -> ComoduleData:
    """Resolve a module token against a group.

    Accepts "trivial" / "regular" (over the group's own ring),
    builtin:trivial@<ring> / builtin:regular@<ring> where the ring may be a
    reduction of the group's ring, or a file with a comodule-v1 payload.
    """
    h = as_hopf(g)
    name = token
    ring = h.ring
    if token.startswith("builtin:"):
        spec = token[len("builtin:"):]
        if "@" in spec:
            name, ring_token = spec.rsplit("@", 1)
            ring = ring_from_token(ring_token)
        else:
            name = spec
    if name in ("trivial", "regular"):
        base = h if ring == h.ring else base_change(h, ring)
        if name == "trivial":
            return trivial_comodule(base)
        return regular_comodule(base)
    obj = _read_json(token)
    if not (isinstance(obj, dict) and obj.get("schema") == "comodule-v1"):
        raise UsageError(f"{token}: expected a comodule-v1 payload")
    try:
        v = comodule_from_json_dict(obj)
    except SchemaError as e:
        raise UsageError(f"{token}: {e}")
    return v


def _builtin_subgroup(token: str) -> SubgroupData:
    """Named inclusions: C2-in-C4, mu2-in-mu4, trivial-in-C2, each @<ring>."""
    spec = token
    if spec.startswith("builtin:"):
        spec = spec[len("builtin:"):]
    if "@" not in spec:
        raise UsageError(f"subgroup token needs a ring, like {token}@Z")
    name, ring_token = spec.rsplit("@", 1)
    ring = ring_from_token(ring_token)
    if name == "C2-in-C4":
        g = constant_group_scheme(cyclic_table(4), ring, name="constant-C4")
        cols = [[0, 1, 0, 0], [0, 0, 0, 1]]   # functions vanishing on {0, 2}
        gens = Matrix.from_cols(ring, 4, [[ring.normalize(x) for x in c]
                                          for c in cols])
        return subgroup_from_ideal(g, gens, name="constant-C2")
    if name == "mu2-in-mu4":
        g = mu_n(4, ring)
        gens = Matrix.from_cols(ring, 4, [[ring.normalize(-1), ring.zero(),
                                           ring.one(), ring.zero()]])
        return subgroup_from_ideal(g, gens, name="mu-2")
    if name == "trivial-in-C2":
        g = constant_group_scheme(cyclic_table(2), ring, name="constant-C2")
        gens = Matrix.from_cols(ring, 2, [[ring.zero(), ring.one()]])
        return subgroup_from_ideal(g, gens, name="trivial")
    raise UsageError(f"unknown subgroup {name!r}; know about: "
                     "C2-in-C4, mu2-in-mu4, trivial-in-C2")


def _fmt_matrix(m: Matrix) -> List[List[str]]:
    fmt = m.ring.fmt
    return [[fmt(x) for x in row] for row in m.data]


def _fmt_column(m: Matrix) -> List[str]:
    fmt = m.ring.fmt
    return [fmt(row[0]) for row in m.data]


def _columns_of(m: Matrix) -> List[Matrix]:
    return [Matrix.from_cols(m.ring, m.rows, [c]) for c in m.columns()]


def _emit(payload: dict, fmt: str, table_lines: Sequence[str]) -> None:
    if fmt == "json":
        sys.stdout.write(dumps_canonical(payload))
    else:
        for line in table_lines:
            print(line)
        if not payload.get("ok", True):
            sys.stdout.write(dumps_canonical(payload))


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------

def _cmd_verify(cmd: Command) -> int:
    reports = []
    for token in cmd.inputs:
        if token.startswith("builtin:"):
            g = build_builtin(token)
            rep = verify_hopf(as_hopf(g))
            reports.append((token, rep))
            continue
        obj = _read_json(token)
        schema = obj.get("schema") if isinstance(obj, dict) else None
        if schema == "hopf-v1":
            reports.append((token, verify_hopf(hopf_from_json_dict(obj))))
        elif schema == "comodule-v1":
            reports.append((token, verify_comodule(comodule_from_json_dict(obj))))
        else:
            raise UsageError(f"{token}: unknown schema {schema!r}")
    ok = all(r.ok for _, r in reports)
    payload = {"ok": ok,
               "reports": [dict(input=t, **r.as_dict()) for t, r in reports]}
    lines = [f"{t}: {'pass' if r.ok else 'FAIL'} "
             f"({sum(c.ok for c in r.checks)}/{len(r.checks)} checks)"
             for t, r in reports]
    _emit(payload, cmd.options["format"], lines)
    return 0 if ok else 2


def _cmd_build(cmd: Command) -> int:
    g = _load_group(cmd.inputs[0])
    payload = hopf_to_json_dict(as_hopf(g))
    sys.stdout.write(dumps_canonical(payload))
    return 0


def _cmd_cohomology(cmd: Command) -> int:
    g = _load_group(cmd.options["group"])
    v = _load_module(cmd.options["module"], g)
    nmax = cmd.options["max_degree"]
    gh = as_hopf(g)
    target = gh if v.ring == gh.ring else base_change(gh, v.ring)
    if v.hopf != target:
        raise UsageError("module is not over this group's coordinate ring")
    groups = cohomology_groups(target, v, nmax)
    degrees = []
    for n, grp in enumerate(groups):
        p = grp.presentation
        degrees.append({
            "degree": n,
            "free_rank": p.free_rank,
            "invariant_factors": list(p.invariant_factors),
            "description": p.describe(),
            "representatives": [_fmt_column(c.representative)
                                for c in grp.classes()],
        })
    payload = {"ok": True, "group": gh.name or "?", "ring": str(v.ring),
               "module": v.name or "?", "max_degree": nmax,
               "cohomology": degrees}
    lines = [f"H^{d['degree']} = {d['description']}" for d in degrees]
    _emit(payload, cmd.options["format"], lines)
    return 0


def _cmd_cup(cmd: Command) -> int:
    g = _load_group(cmd.options["group"])
    dl, il = cmd.options["left"]
    dr, ir = cmd.options["right"]
    groups = cohomology_groups(g, trivial_comodule(g), dl + dr)
    try:
        x = groups[dl].classes()[il]
        y = groups[dr].classes()[ir]
    except IndexError:
        raise UsageError("class index out of range for that degree")
    z = cup_product(g, x, y)
    target_desc = z.group.describe() if z.group is not None else "?"
    payload = {
        "ok": True,
        "left": {"degree": dl, "index": il},
        "right": {"degree": dr, "index": ir},
        "product": {"degree": z.degree,
                    "representative": _fmt_column(z.representative),
                    "group": target_desc},
    }
    lines = [f"deg {dl} class {il}  cup  deg {dr} class {ir} "
             f"-> degree {z.degree}, {target_desc}"]
    _emit(payload, cmd.options["format"], lines)
    return 0


def _cmd_induce(cmd: Command) -> int:
    sub = _builtin_subgroup(cmd.options["subgroup"])
    v = _load_module(cmd.options["module"], sub.sub)
    out = induce(v, sub)
    payload = dict(ok=True, **comodule_to_json_dict(out))
    _emit(payload, cmd.options["format"],
          [f"induced comodule rank {out.rank} over {out.hopf.name or '?'}"])
    return 0


def _cmd_restrict(cmd: Command) -> int:
    sub = _builtin_subgroup(cmd.options["subgroup"])
    v = _load_module(cmd.options["module"], sub.ambient)
    out = restrict(v, sub)
    payload = dict(ok=True, **comodule_to_json_dict(out))
    _emit(payload, cmd.options["format"],
          [f"restricted comodule rank {out.rank} over {out.hopf.name or '?'}"])
    return 0


def _cmd_integrals(cmd: Command) -> int:
    g = _load_group(cmd.inputs[0])
    h = as_hopf(g)
    ints = left_integrals(h.algebra)
    coinv = dual_coinvariants(h)
    payload = {"ok": True, "ring": str(h.ring),
               "left_integrals": [_fmt_column(c) for c in _columns_of(ints)],
               "dual_coinvariants": [_fmt_column(c) for c in _columns_of(coinv)]}
    lines = [f"left integrals: rank {ints.cols}",
             f"dual coinvariants: rank {coinv.cols}"]
    _emit(payload, cmd.options["format"], lines)
    return 0


def _cmd_frobenius(cmd: Command) -> int:
    g = _load_group(cmd.inputs[0])
    fd = frobenius_isomorphism(g)
    rep = verify_frobenius(fd)
    payload = {"ok": rep.ok, "psi": _fmt_column(fd.psi),
               "phi": _fmt_matrix(fd.phi), "norm": _fmt_column(fd.norm),
               "report": rep.as_dict()}
    lines = [f"frobenius: {'pass' if rep.ok else 'FAIL'} "
             f"({len(rep.checks)} checks)"]
    _emit(payload, cmd.options["format"], lines)
    return 0 if rep.ok else 2


def _cmd_trace(cmd: Command) -> int:
    g = _load_group(cmd.inputs[0])
    td = trace_map(g)
    rep = verify_trace(td)
    payload = {"ok": rep.ok, "trace": _fmt_matrix(td.trace),
               "report": rep.as_dict()}
    fmt = td.trace.ring.fmt
    lines = ["tr = (" + ", ".join(fmt(x) for x in td.trace.data[0]) + ")"]
    _emit(payload, cmd.options["format"], lines)
    return 0 if rep.ok else 2


def _cmd_bounded_torsion(cmd: Command) -> int:
    g = _load_group(cmd.options["group"])
    nmax = cmd.options["max_degree"]
    modules = [_load_module(tok, g)
               for tok in cmd.options["modules"].split(",")]
    cert = bounded_torsion_certificate(g, modules, nmax)
    payload = dict(cert.as_dict())
    payload["ok"] = cert.ok
    lines = [f"n = {cert.n}, degrees 1..{nmax}, "
             f"{len(cert.entries)} modules: "
             f"{'all annihilated' if cert.ok else 'VIOLATION'}"]
    _emit(payload, cmd.options["format"], lines)
    return 0 if cert.ok else 2


def _cmd_power_reductivity(cmd: Command) -> int:
    ring = ring_from_token(cmd.options["ring"])
    g = constant_group_scheme(cyclic_table(2), ring, name="constant-C2")
    m = permutation_comodule(g, [[0, 1], [1, 0]], name="swap")
    target = trivial_comodule(g)
    phi = ComoduleMap(m, target,
                      Matrix(ring, [[ring.one(), ring.one()]]))
    d = power_reductivity_witness(phi, cmd.options["dmax"])
    payload = {"ok": d is not None, "ring": str(ring),
               "dmax": cmd.options["dmax"], "witness": d}
    lines = [f"swap surjection over {ring}: "
             + (f"witness d = {d}" if d is not None
                else f"no witness <= {cmd.options['dmax']}")]
    _emit(payload, cmd.options["format"], lines)
    return 0 if d is not None else 2


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

_SUITE_RINGS = (ZZ, QQ, GF(2), GF(3), Zmod(4))


def _convolution_spot_checks(rng: random.Random, h: HopfAlgebraData,
                             rounds: int) -> bool:
    # associativity of convolution of random functionals = coassociativity,
    # checked through explicit vectors rather than the matrix identity
    ring, d = h.ring, h.dim

    def rand_row():
        return Matrix(ring, [[ring.normalize(rng.randint(-4, 4))
                              for _ in range(d)]])

    def conv(f, g):
        return f.kron(g) * h.comul

    for _ in range(rounds):
        f, g, k = rand_row(), rand_row(), rand_row()
        if conv(conv(f, g), k) != conv(f, conv(g, k)):
            return False
    return True


def _suite_axioms(seed: int) -> List[Tuple[str, bool]]:
    rng = random.Random(seed)
    items = []
    for ring in _SUITE_RINGS:
        for g in builtins_over(ring):
            h = as_hopf(g)
            label = f"{h.name or 'scheme'}@{ring}"
            items.append((f"axioms {label}", verify_hopf(h).ok))
            items.append((f"dual-axioms {label}", verify_hopf(dual_hopf(h)).ok))
            items.append((f"convolution {label}",
                          _convolution_spot_checks(rng, h, 3)))
            items.append((f"g-algebra {label}",
                          verify_g_algebra(regular_g_algebra(h)).ok))
    return items


_CLASSICAL_TABLES = {
    # classical small-group cohomology over Z, degrees 0..4
    "constant-C2": [(1, []), (0, []), (0, [2]), (0, []), (0, [2])],
    "constant-C3": [(1, []), (0, []), (0, [3]), (0, []), (0, [3])],
    "constant-C4": [(1, []), (0, []), (0, [4]), (0, []), (0, [4])],
    "constant-klein": [(1, []), (0, []), (0, [2, 2]), (0, [2]),
                       (0, [2, 2, 2])],
}


def _suite_cohomology_oracles(seed: int) -> List[Tuple[str, bool]]:
    items = []
    for name, want in _CLASSICAL_TABLES.items():
        g = build_builtin(f"builtin:{name}@Z")
        pres = cohomology_presentations(g, trivial_comodule(g), 4)
        got = [(p.free_rank, list(p.invariant_factors)) for p in pres]
        items.append((f"H^*({name}, Z)", got == want))
    for ring in (ZZ, QQ, GF(3)):
        for n in (2, 3, 4):
            g = mu_n(n, ring)
            pres = cohomology_presentations(g, trivial_comodule(g), 3)
            vanishes = all(p.is_zero for p in pres[1:])
            unitline = pres[0].free_rank == 1 and not pres[0].invariant_factors
            items.append((f"mu_{n}@{ring} acyclic", vanishes and unitline))
    return items


def _suite_torsion(seed: int) -> List[Tuple[str, bool]]:
    items = []
    for g in builtins_over(ZZ):
        mods = [trivial_comodule(g), regular_comodule(g)]
        cert = bounded_torsion_certificate(g, mods, 3)
        items.append((f"bounded torsion {as_hopf(g).name}@Z, n={cert.n}",
                      cert.ok))
    return items


def _suite_frobenius(seed: int) -> List[Tuple[str, bool]]:
    items = []
    for ring in _SUITE_RINGS:
        for g in builtins_over(ring):
            h = as_hopf(g)
            label = f"{h.name or 'scheme'}@{ring}"
            try:
                fd = frobenius_isomorphism(h)
                td = trace_map(h)
                ok = verify_frobenius(fd).ok and verify_trace(td).ok
            except ExactLinalgError:
                ok = False
            items.append((f"frobenius+trace {label}", ok))
    return items


_SUITES: Dict[str, Callable[[int], List[Tuple[str, bool]]]] = {
    "axioms": _suite_axioms,
    "cohomology-oracles": _suite_cohomology_oracles,
    "torsion": _suite_torsion,
    "frobenius": _suite_frobenius,
}


def _cmd_suite(cmd: Command) -> int:
    name = cmd.inputs[0]
    if name not in _SUITES:
        raise UsageError(f"unknown suite {name!r}; know about: "
                         + ", ".join(sorted(_SUITES)))
    items = _SUITES[name](cmd.options["seed"])
    ok = all(flag for _, flag in items)
    payload = {"ok": ok, "suite": name, "seed": cmd.options["seed"],
               "items": [{"name": n, "ok": f} for n, f in items]}
    lines = [f"{'pass' if f else 'FAIL'}  {n}" for n, f in items]
    lines.append(f"suite {name}: {sum(f for _, f in items)}/{len(items)} pass")
    _emit(payload, cmd.options["format"], lines)
    return 0 if ok else 2


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------

_DISPATCH: Dict[str, Callable[[Command], int]] = {
    "verify": _cmd_verify,
    "build": _cmd_build,
    "cohomology": _cmd_cohomology,
    "cup": _cmd_cup,
    "induce": _cmd_induce,
    "restrict": _cmd_restrict,
    "integrals": _cmd_integrals,
    "frobenius": _cmd_frobenius,
    "trace": _cmd_trace,
    "bounded-torsion": _cmd_bounded_torsion,
    "power-reductivity": _cmd_power_reductivity,
    "suite": _cmd_suite,
}


def _degree_pair(text: str) -> Tuple[int, int]:
    try:
        a, b = text.split(":")
        return int(a), int(b)
    except ValueError:
        raise UsageError(f"expected degree:index, got {text!r}")


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"),
                        default="table")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = _Parser(prog="hopfcoh", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    sp = sub.add_parser("verify", parents=[common],
                        help="axiom checks on files or builtins")
    sp.add_argument("inputs", nargs="+")

    sp = sub.add_parser("build", parents=[common],
                        help="emit the canonical JSON of an object")
    sp.add_argument("inputs", nargs=1)

    sp = sub.add_parser("cohomology", parents=[common],
                        help="H^0..H^n of a module")
    sp.add_argument("--group", required=True)
    sp.add_argument("--module", default="trivial")
    sp.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)

    sp = sub.add_parser("cup", parents=[common],
                        help="cup product of two canonical classes")
    sp.add_argument("--group", required=True)
    sp.add_argument("--left", required=True, type=_degree_pair,
                    metavar="DEG:INDEX")
    sp.add_argument("--right", required=True, type=_degree_pair,
                    metavar="DEG:INDEX")

    sp = sub.add_parser("induce", parents=[common],
                        help="induce a module along an inclusion")
    sp.add_argument("--subgroup", required=True)
    sp.add_argument("--module", default="trivial")

    sp = sub.add_parser("restrict", parents=[common],
                        help="restrict a module to a subgroup")
    sp.add_argument("--subgroup", required=True)
    sp.add_argument("--module", default="trivial")

    for verb in ("integrals", "frobenius", "trace"):
        sp = sub.add_parser(verb, parents=[common])
        sp.add_argument("inputs", nargs=1)

    sp = sub.add_parser("bounded-torsion", parents=[common],
                        help="rank-annihilates-cohomology certificate")
    sp.add_argument("--group", required=True)
    sp.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
    sp.add_argument("--modules", default="trivial,regular")

    sp = sub.add_parser("power-reductivity", parents=[common],
                        help="symmetric-power witness for the swap surjection")
    sp.add_argument("--ring", default="F2")
    sp.add_argument("--dmax", type=int, default=4)

    sp = sub.add_parser("suite", parents=[common],
                        help="bundled verification suites")
    sp.add_argument("inputs", nargs=1, metavar="name",
                    help="axioms | cohomology-oracles | torsion | frobenius")
    return p


def run(argv: Sequence[str]) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(list(argv))
        options = {k: v for k, v in vars(ns).items()
                   if k not in ("verb", "inputs")}
        cmd = Command(ns.verb, tuple(getattr(ns, "inputs", ()) or ()), options)
        return _DISPATCH[cmd.verb](cmd)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except ExactLinalgError as e:
        # a failed verification raised from the library layer
        sys.stdout.write(dumps_canonical(
            {"ok": False, "error": type(e).__name__, "detail": str(e)}))
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
