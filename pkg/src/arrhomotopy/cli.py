"""Command-line front end.  Exit codes: 0 ok, 2 hypothesis gate refused, 1 error."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .homotopy import HypothesisNotSatisfied, hilbert_M_closed_form, m_support
from .hypersolvable import find_solvable_chain
from .os_algebra import decone_os, format_polynomial
from .pipeline import GateRefusal, Options, Session, analyze, table_rows
from .quadratic import holonomy_presentation
from .registry import REGISTRY, UnknownInput, parse_input


def _emit(args, data: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=False))
    else:
        print("\n".join(lines))


def _resolve_hyperplane(session: Session, token: str) -> int:
    if token in session.labels:
        return session.labels.index(token)
    try:
        k = int(token)
    except ValueError:
        raise ValueError(f"no hyperplane named {token!r}") from None
    if not 1 <= k <= len(session.labels):
        raise ValueError(f"hyperplane index {k} out of range 1..{len(session.labels)}")
    return k - 1


def cmd_lattice(s: Session, args) -> int:
    from .arrangements import flats

    top = args.max_rank if args.max_rank is not None else s.matroid.rank
    lat = flats(s.matroid, top)
    data, lines = {}, []
    for k in range(top + 1):
        fl = [[s.labels[h] for h in f.hyperplanes] for f in lat[k]]
        data[str(k)] = fl
        lines.append(f"rank {k} ({len(fl)}): " + " ".join("{" + ",".join(f) + "}" for f in fl))
    _emit(args, {"flats": data}, lines)
    return 0


def cmd_poincare(s: Session, args) -> int:
    if args.decone is not None:
        at = _resolve_hyperplane(s, args.decone)
        dims = decone_os(s.matroid, at).dims
    else:
        dims = s.os.dims
    text = format_polynomial(dims)
    _emit(args, {"coefficients": list(dims), "polynomial": text}, [text])
    return 0


def cmd_holonomy(s: Session, args) -> int:
    pres = holonomy_presentation(s.matroid, s.labels)
    rels = pres.format()
    _emit(args, {"generators": list(pres.generators), "relations": rels},
          ["generators: " + " ".join(pres.generators)] + rels)
    return 0


def cmd_udims(s: Session, args) -> int:
    dims = s.R(s.p_max).dims
    _emit(args, {"R_dims": dims}, [f"{p}: {d}" for p, d in enumerate(dims)])
    return 0


def cmd_hypersolvable(s: Session, args) -> int:
    rep = s.hyper
    data = rep.to_json()
    lines = []
    if rep.chain is None:
        lines.append("not hypersolvable")
    else:
        ch = rep.chain
        for k, stage in enumerate(ch.stages):
            kind = "start" if k == 0 else ch.step_kinds[k - 1].value
            lines.append(f"stage {k + 1} [{kind}, rank {ch.stage_ranks[k]}]: " + " ".join(s.labels[h] for h in stage))
        lines.append("exponents: " + " ".join(map(str, ch.exponents)))
        sr = rep.singular_range
        lines.append("singular range: " + (f"({sr.c},{sr.d})" if sr else "none (supersolvable)"))
    lines.append(f"verdict: {rep.verdict.value}")
    if rep.d_values:
        lines.append("observed d values: " + " ".join(map(str, rep.d_values)))
    _emit(args, data, lines)
    return 0


def cmd_homotopy_module(s: Session, args) -> int:
    M = s.M()
    sup = m_support(M, s.hyper.verdict if s.hyper.hypersolvable else None)
    data = M.to_json()
    data["support"] = sup.to_json()
    lines = []
    if M.formal:
        lines.append("# no hypersolvability certificate: formal linear-strand homology")
    for q in range(M.q_max + 1):
        row = M.row(q)
        if any(row):
            lines.append(f"{q}: " + " ".join(map(str, row)))
    lines.append(f"# complete for p <= {M.p_complete}; support q in {list(sup.support)}; {sup.verdict.value}")
    _emit(args, data, lines)
    return 0


def cmd_useries(s: Session, args) -> int:
    U = s.U()
    rows = table_rows(U)
    lines = [f"{p}: " + " ".join(map(str, r)) for p, r in rows.items()]
    lines.append(f"# rows are p; entries are q = 0, 1, ...; complete for p <= {U.p_complete}")
    _emit(args, {"U": rows, "p_complete": U.p_complete}, lines)
    return 0


def cmd_presentation(s: Session, args) -> int:
    deform = parse_input(args.deformation) if args.deformation else None
    infinity = None
    if args.infinity is not None:
        if deform is None:
            raise ValueError("--infinity needs --deformation")
        ds = Session(deform)
        infinity = _resolve_hyperplane(ds, args.infinity)
    pres = s.presentation(deform, args.ell, infinity)
    data = pres.to_json()
    data["counts"] = pres.counts()
    c = pres.counts()
    hm = _closed_form_M(s, deform, args.ell)
    data["hilbert_M"] = {"numerator": [str(x) for x in hm.numerator],
                         "denominator": [str(x) for x in hm.denominator], "text": str(hm)}
    lines = pres.format() + [f"# h(M,t) = {hm}",
                             f"# {c['x']} x-generators, {c['y']} y-generators, {c['holonomy']} holonomy, "
                             f"{c['flag']} flag and {c['central']} centrality relations"]
    _emit(args, data, lines)
    return 0


def _closed_form_M(s: Session, deform, ell: int | None):
    """h(M,t) from the exponents of the deconed deformation."""
    ell = s.matroid.rank if ell is None else ell
    if deform is None:
        exps = [1] * (s.matroid.ground_size - 1)
    else:
        exps = list(find_solvable_chain(deform).exponents[1:])
    return hilbert_M_closed_form(exps, ell)


def cmd_pi_ranks(s: Session, args) -> int:
    res = s.pi_ranks(args.rescale, args.degree)
    lines = ["u-series: " + ", ".join(map(str, res["u_series"]))]
    lines += [f"pi_{k}(Y) ⊗ Q: {v}" for k, v in res["pi_ranks"].items()]
    _emit(args, res, lines)
    return 0


def cmd_analyze(s: Session, args) -> int:
    deform = parse_input(args.deformation) if args.deformation else None
    rep = analyze(s, deform, args.ell).to_json()
    if args.json:
        print(json.dumps(rep, indent=2))
        return 0
    lines = [f"input: {rep['input']['name']} ({rep['input']['n']} hyperplanes, rank {rep['input']['rank']})",
             f"poincare: {rep['poincare']['text']}"]
    h = rep["hypersolvable"]
    sr = h["singular_range"]
    lines.append(f"hypersolvable: {h['hypersolvable']}; exponents {h['exponents']}; "
                 f"singular range {tuple(sr) if sr else None}; verdict {h['verdict']}")
    lines.append(f"M ({rep['M']['label']}, p <= {rep['M']['p_max']}):")
    lines += [f"  {q}: " + " ".join(map(str, r)) for q, r in rep["M"]["M"].items()]
    lines.append(f"M support: {rep['support']['support']} ({rep['support']['verdict']})")
    if rep["U"]:
        lines.append(f"U (p <= {rep['U']['p_complete']}):")
        lines += [f"  {p}: " + " ".join(map(str, r)) for p, r in rep["U"]["U"].items()]
    if rep["presentation"]:
        gens = rep["presentation"]["generators"]
        lines.append(f"presentation: {len(gens)} generators, {len(rep['presentation']['relations'])} relations")
    if rep["pi"]:
        lines.append("u-series: " + ", ".join(map(str, rep["pi"]["u_series"])))
        lines += [f"pi_{k}(Y) ⊗ Q: {v}" for k, v in rep["pi"]["pi_ranks"].items()]
    for r in rep["refusals"]:
        lines.append(f"refused {r['stage']}: {r['reason']}")
    print("\n".join(lines))
    return 0


def cmd_examples(args) -> int:
    data = {k: {"kind": e.kind, "provenance": e.provenance} for k, e in REGISTRY.items()}
    data["boolean:<n>"] = {"kind": "arrangement", "provenance": "coordinate hyperplanes in C^n"}
    _emit(args, data, [f"{k:14s} {v['kind']:12s} {v['provenance']}" for k, v in data.items()])
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="JSON output")
    common.add_argument("--pmax", type=int, default=argparse.SUPPRESS, help="truncation degree p (default 4)")
    common.add_argument("--exact", action="store_true", default=argparse.SUPPRESS, help="exact rational ranks")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for the random primes")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes for ranks")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    ap = argparse.ArgumentParser(prog="arrhomotopy", parents=[common],
                                 description="Homotopy Lie algebra invariants of hyperplane arrangements")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_, with_input=True):
        p = sub.add_parser(name, parents=[common], help=help_)
        if with_input:
            p.add_argument("input", help="registry key, boolean:<n>, or input file")
        return p

    p = add("lattice", "flats by rank")
    p.add_argument("--max-rank", type=int)
    p = add("poincare", "Poincare polynomial of the OS algebra")
    p.add_argument("--decone", metavar="H", help="decone at hyperplane H (label or 1-based index)")
    add("holonomy", "holonomy Lie algebra presentation")
    add("udims", "dimensions of U(holonomy) up to --pmax")
    p = add("hypersolvable", "solvable chain, singular range and verdict")
    p.add_argument("--chains", type=int, default=0, help="enumerate up to N chains and report the d values")
    add("homotopy-module", "bigraded dimensions of M")
    add("useries", "bigraded Hilbert series of U(g)")
    p = add("presentation", "generators and relations of g for a generic slice")
    p.add_argument("--deformation", help="supersolvable deformation B (optional when 2-generic)")
    p.add_argument("--ell", type=int)
    p.add_argument("--infinity", metavar="H", help="hyperplane of B sent to infinity")
    p = add("pi-ranks", "rational homotopy ranks of the rescaled space")
    p.add_argument("--rescale", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p = add("analyze", "full report")
    p.add_argument("--rescale", type=int)
    p.add_argument("--degree", type=int)
    p.add_argument("--deformation")
    p.add_argument("--ell", type=int)
    add("examples", "list registry keys", with_input=False)
    return ap


COMMANDS = {
    "lattice": cmd_lattice, "poincare": cmd_poincare, "holonomy": cmd_holonomy, "udims": cmd_udims,
    "hypersolvable": cmd_hypersolvable, "homotopy-module": cmd_homotopy_module, "useries": cmd_useries,
    "presentation": cmd_presentation, "pi-ranks": cmd_pi_ranks, "analyze": cmd_analyze,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    for k, v in (("json", False), ("pmax", None), ("exact", False), ("seed", None), ("jobs", 1), ("verbose", False)):
        if not hasattr(args, k):
            setattr(args, k, v)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(message)s")
    try:
        if args.command == "examples":
            return cmd_examples(args)
        x = parse_input(args.input)
        opts = Options(p_max=args.pmax, exact=args.exact, seed=args.seed, jobs=args.jobs,
                       rescale=getattr(args, "rescale", None), degree=getattr(args, "degree", None),
                       chains=getattr(args, "chains", 0))
        return COMMANDS[args.command](Session(x, args.input, opts), args)
    except (GateRefusal, HypothesisNotSatisfied) as e:
        stage = getattr(e, "stage", args.command)
        reason = getattr(e, "reason", str(e))
        print(json.dumps({"refused": stage, "reason": reason}))
        return 2
    except UnknownInput as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except Exception as e:  # noqa: BLE001 - reported with exit code 1
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
