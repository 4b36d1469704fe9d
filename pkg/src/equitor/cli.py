"""Command-line interface: JSON actions in, deterministic JSON reports out.

Exit codes: 0 = computed (verdicts live in the report, never in the exit
code), 2 = invalid input, 3 = a resource cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .errors import CappedComputationError, EquitorError, InputError
from .oracles import bounded_freeness_oracle, null_fiber_dimension
from .pipeline import Analysis, Options
from .semigroup import WeightedAction

Vec = tuple[int, ...]


def parse_input(doc, where: str = "$") -> tuple[WeightedAction, Options]:
    """Validate one input document; raises InputError with a pointer."""
    if not isinstance(doc, dict):
        raise InputError(f"{where}: expected an object")

    def need(key, typ, default=None, required=False):
        if key not in doc:
            if required:
                raise InputError(f"{where}.{key}: missing")
            return default
        val = doc[key]
        if typ is int and (not isinstance(val, int) or isinstance(val, bool)):
            raise InputError(f"{where}.{key}: expected an integer")
        if typ is list and not isinstance(val, list):
            raise InputError(f"{where}.{key}: expected a list")
        return val

    n = need("ambient_dim", int, required=True)
    rank = need("torus_rank", int, required=True)
    moduli = need("torsion_moduli", list, default=[])
    weights = need("weights", list, required=True)
    congs = need("quotient_congruences", list, default=[])
    if n < 0 or rank < 0:
        raise InputError(f"{where}: dimensions must be nonnegative")
    for i, m in enumerate(moduli):
        if not isinstance(m, int) or m < 2:
            raise InputError(f"{where}.torsion_moduli[{i}]: expected an integer >= 2")
    k = rank + len(moduli)
    if len(weights) != n:
        raise InputError(f"{where}.weights: expected {n} entries (one per variable)")
    wvecs = []
    for i, w in enumerate(weights):
        if not isinstance(w, list) or len(w) != k or not all(isinstance(x, int) for x in w):
            raise InputError(f"{where}.weights[{i}]: expected a list of {k} integers")
        wvecs.append(tuple(w))
    cvecs = []
    for i, c in enumerate(congs):
        if not isinstance(c, dict) or "coeffs" not in c or "modulus" not in c:
            raise InputError(
                f"{where}.quotient_congruences[{i}]: expected an object with coeffs and modulus"
            )
        coeffs = c["coeffs"]
        m = c["modulus"]
        if (
            not isinstance(coeffs, list)
            or len(coeffs) != n
            or not all(isinstance(x, int) for x in coeffs)
        ):
            raise InputError(
                f"{where}.quotient_congruences[{i}].coeffs: expected a list of {n} integers"
            )
        if not isinstance(m, int) or m < 0:
            raise InputError(
                f"{where}.quotient_congruences[{i}].modulus: expected an integer >= 0"
            )
        cvecs.append((tuple(coeffs), m))
    opts = doc.get("options", {})
    if not isinstance(opts, dict):
        raise InputError(f"{where}.options: expected an object")
    options = Options(
        sweep_bound=int(opts.get("sweep_bound", 2)),
        wide_bound=int(opts.get("wide_bound", 3)),
        degree_cap=int(opts.get("degree_cap", 12)),
        max_candidates=int(opts.get("max_candidates", 10**6)),
        solver_norm_cap=int(opts.get("solver_norm_cap", 64)),
    )
    try:
        action = WeightedAction(
            ambient_dim=n,
            free_rank=rank,
            torsion_moduli=tuple(moduli),
            weights=tuple(wvecs),
            congruences=tuple(cvecs),
        )
    except InputError as e:
        raise InputError(f"{where}: {e}") from e
    return action, options


def echo_input(action: WeightedAction, options: Options) -> dict:
    return {
        "ambient_dim": action.ambient_dim,
        "torus_rank": action.free_rank,
        "torsion_moduli": list(action.torsion_moduli),
        "weights": [list(w) for w in action.weights],
        "quotient_congruences": [
            {"coeffs": list(c), "modulus": m} for c, m in action.congruences
        ],
        "options": {
            "sweep_bound": options.sweep_bound,
            "wide_bound": options.wide_bound,
            "degree_cap": options.degree_cap,
            "max_candidates": options.max_candidates,
            "solver_norm_cap": options.solver_norm_cap,
        },
    }


def parse_char(text: str, length: int) -> Vec:
    try:
        out = tuple(int(x.strip()) for x in text.split(","))
    except ValueError as e:
        raise InputError(f"--chi: expected comma-separated integers, got {text!r}") from e
    if len(out) != length:
        raise InputError(f"--chi: expected {length} coordinates, got {len(out)}")
    return out


def _json_safe(x):
    if isinstance(x, dict):
        return {str(k): _json_safe(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json_safe(v) for v in x]
    return x


def analyze_report(an: Analysis) -> dict:
    v = an.verdict
    red = an.reduced
    t, prov = an.exponent_with_provenance
    obs = an.obstruction
    report = {
        "stable": "yes" if an.input_stable else "no",
        "equidimensional": v.equidimensional,
        "cofree": v.cofree,
        "reductions": {
            "finite_component_quotient": an.finite_reduction_applied,
            "stability_quotient": not an.input_stable,
        },
        "cl_R": list(an.ctx.cl_R.invariant_factors),
        "cl_RG": list(an.ctx.cl_RG.invariant_factors),
        "urcl": list(red.divisor_side_factors),
        "cltilde": list(red.module_side_factors),
        "t": t,
        "t_tilde": obs.coprime_part if obs else None,
        "t_reflection": obs.reflection_part if obs else None,
        "t_provenance": prov,
        "reflection_restriction": list(an.reflection_restriction.invariant_factors),
        "obs_restriction": list(obs.restriction.invariant_factors) if obs else None,
        "qualified_basis": [list(c) for c in an.qualified.basis_chars()],
        "qualified_provenance": an.qualified.provenance,
        "sweep": {
            "bound": red.sweep_bound,
            "stable": red.sweep_stable,
            "group_certified": red.exact,
        },
        "certificates": _json_safe(v.certificates),
        "oracle_agreement": {
            "null_fiber": v.oracle_agrees,
            "null_fiber_dimension": v.null_fiber[0],
        },
    }
    return report


def run(command: str, doc, flags) -> dict:
    action, options = parse_input(doc)
    an = Analysis(action, options)
    report: dict = {"command": command, "input": echo_input(action, options)}
    if command == "analyze":
        report.update(analyze_report(an))
    elif command == "invariants":
        report.update(
            {
                "hilbert_basis": [list(h) for h in an.ctx.S.hilbert_basis],
                "invariant_hilbert_basis": [list(h) for h in an.ctx.S_G.hilbert_basis],
                "rank": an.ctx.S.rank,
                "invariant_rank": an.ctx.S_G.rank,
                "facets": [
                    {
                        "coord": P.coord,
                        "scale": P.scale,
                        "tier": an.ctx.cls.facets[P.index].tier,
                        "over": an.ctx.cls.facets[P.index].q_index,
                        "ramification": an.ctx.cls.facets[P.index].ram_index,
                    }
                    for P in an.ctx.S.facets
                ],
                "stable": "yes" if an.input_stable else "no",
            }
        )
    elif command == "class-group":
        which = flags.of or "R"
        cl = an.ctx.cl_R if which == "R" else an.ctx.cl_RG
        report.update({"of": which, "invariant_factors": list(cl.invariant_factors)})
    elif command == "dchi":
        chi = parse_char(flags.chi, action.char_length)
        D = an.ctx.char_divisor(chi)
        report.update(
            {
                "chi": list(chi),
                "coefficients": list(D.coeffs),
                "class": list(an.ctx.cl_R.class_of(D)),
                "order": an.ctx.char_class_order(chi),
                "module_order": an.ctx.module_class_order(chi),
            }
        )
    elif command == "free":
        chi = parse_char(flags.chi, action.char_length)
        free, wit = an.ctx.free_test(chi)
        report.update(
            {
                "chi": list(chi),
                "free": free,
                "witness": list(wit) if wit is not None else None,
                "oracle": bounded_freeness_oracle(
                    an.ctx.S, an.ctx.S_G, an.action, chi, options.degree_cap
                ),
            }
        )
    elif command == "obstruction":
        obs = an.obstruction
        if obs is None:
            report.update({"t": an.exponent_with_provenance[0], "obstruction": None})
        else:
            report.update(
                {
                    "t": obs.exponent,
                    "t_tilde": obs.coprime_part,
                    "t_reflection": obs.reflection_part,
                    "reflection_restriction": list(
                        obs.reflection_restriction.invariant_factors
                    ),
                    "obs_restriction": list(obs.restriction.invariant_factors),
                    "obs_annihilator": [list(c) for c in obs.obstruction.annihilator.lattice.basis],
                }
            )
    elif command == "equidim":
        if flags.oracle_only:
            dim, ok = null_fiber_dimension(an.ctx.S, an.ctx.S_G)
            report.update(
                {
                    "oracle_only": True,
                    "null_fiber_dimension": dim,
                    "expected": an.ctx.S.rank - an.ctx.S_G.rank,
                    "equidimensional": "yes" if ok else "no",
                }
            )
        else:
            v = an.verdict
            report.update(
                {
                    "equidimensional": v.equidimensional,
                    "certificates": _json_safe(v.certificates),
                    "oracle_agrees": v.oracle_agrees,
                }
            )
    elif command == "cofree":
        cap = flags.degree_cap or options.degree_cap
        an2 = Analysis(action, Options(
            sweep_bound=options.sweep_bound,
            wide_bound=options.wide_bound,
            degree_cap=cap,
            max_candidates=options.max_candidates,
            solver_norm_cap=options.solver_norm_cap,
        ))
        dec = an2.cofree_decision
        report.update(
            {
                "cofree": "yes" if dec.verdict else "no",
                "swept_characters": dec.swept_characters,
                "witness": list(dec.witness) if dec.witness is not None else None,
                "oracle_checked": dec.oracle_checked,
                "degree_cap": cap,
            }
        )
    elif command == "sweep":
        bound = flags.bound or options.sweep_bound
        from .reduced import reduced_class_groups

        red = reduced_class_groups(an.ctx, an.qualified, bound)
        report.update(
            {
                "bound": bound,
                "urcl": list(red.divisor_side_factors),
                "cltilde": list(red.module_side_factors),
                "divisor_exponent": red.divisor_exponent,
                "module_exponent": red.module_exponent,
                "sweep_stable": red.sweep_stable,
                "group_certified": red.exact,
            }
        )
    else:
        raise InputError(f"unknown command {command!r}")
    return report


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="equitor",
        description="Equidimensionality and cofreeness of diagonalizable group "
        "actions on affine semigroup rings, by exact divisor-class arithmetic.",
    )
    parser.add_argument(
        "command",
        choices=[
            "analyze",
            "invariants",
            "class-group",
            "dchi",
            "free",
            "obstruction",
            "equidim",
            "cofree",
            "sweep",
        ],
    )
    parser.add_argument("input", help="path to a JSON action description")
    parser.add_argument("--of", choices=["R", "RG"], help="ring for class-group")
    parser.add_argument("--chi", help="character as comma-separated integers")
    parser.add_argument("--degree-cap", dest="degree_cap", type=int)
    parser.add_argument("--bound", type=int)
    parser.add_argument("--oracle-only", dest="oracle_only", action="store_true")
    parser.add_argument("--pretty", action="store_true", help="indent the JSON report")
    parser.add_argument("--json", action="store_true", help="compact JSON (default)")
    parser.add_argument("--timing", action="store_true", help="include wall-clock timing")
    args = parser.parse_args(argv)

    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as e:
        print(f"error: cannot read {args.input}: {e}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as e:
        print(f"error: {args.input}: invalid JSON at line {e.lineno}: {e.msg}", file=sys.stderr)
        return 2

    if args.command in ("dchi", "free") and not args.chi:
        print("error: --chi is required for this command", file=sys.stderr)
        return 2

    started = time.monotonic()
    try:
        report = run(args.command, doc, args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except CappedComputationError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except EquitorError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1

    if args.timing:
        report["timing"] = {"seconds": round(time.monotonic() - started, 3)}
    if args.pretty:
        text = json.dumps(report, sort_keys=True, indent=2)
    else:
        text = json.dumps(report, sort_keys=True, separators=(",", ":"))
    print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
