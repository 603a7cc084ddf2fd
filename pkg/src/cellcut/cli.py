"""Command-line interface: JSON complexes in, invariants and checks out.

Input documents are JSON objects in one of two forms::

    {"simplicial_facets": [[1, 2, 3], [1, 2, 4]], "augmented": true}

    {"boundaries": [
        {"dim": 0, "cells": ["v"]},
        {"dim": 1, "cells": ["e"], "matrix": [[0]]},
        {"dim": 2, "cells": ["s1", "s2"], "matrix": [["6", "2"]]}
     ],
     "augmented": true}

Matrix entries may be integers or decimal strings; integers beyond 53 bits
are emitted as decimal strings so precision survives JSON transport.

Exit codes: 0 success / all checks pass, 1 an identity check failed,
2 input error, 3 enumeration size over the CELLCUT_MAX_FACETS cap.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
from fractions import Fraction
from itertools import combinations
from typing import Any

from . import bounds as bounds_mod
from . import cutflow as cutflow_mod
from . import forests as forests_mod
from . import lattices as lattices_mod
from .cells import CellComplex, from_simplicial_facets, reduced_homology
from .intlinalg import FiniteAbelianGroup, IntMatrix, rank

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT = 2
EXIT_CAP = 3

MAX_FACETS_ENV = "CELLCUT_MAX_FACETS"
DEFAULT_MAX_FACETS = 25

_SAFE_INT = 1 << 53


class InputError(ValueError):
    pass


class CapExceeded(RuntimeError):
    pass


def _coerce_int(x: Any, where: str) -> int:
    if isinstance(x, bool):
        raise InputError(f"{where}: booleans are not integers")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x, 10)
        except ValueError:
            raise InputError(f"{where}: {x!r} is not a decimal integer") from None
    raise InputError(f"{where}: expected an integer or decimal string")


def parse_document(doc: dict) -> CellComplex:
    """Build and validate a complex from a parsed JSON document."""
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object")
    augmented = doc.get("augmented", True)
    if not isinstance(augmented, bool):
        raise InputError("field 'augmented': expected a boolean")
    if "simplicial_facets" in doc:
        facets = doc["simplicial_facets"]
        if not isinstance(facets, list) or not facets:
            raise InputError("field 'simplicial_facets': expected a nonempty list")
        try:
            c = from_simplicial_facets(facets, augmented=augmented)
        except ValueError as e:
            raise InputError(f"field 'simplicial_facets': {e}") from None
    elif "boundaries" in doc:
        layers = doc["boundaries"]
        if not isinstance(layers, list) or not layers:
            raise InputError("field 'boundaries': expected a nonempty list")
        by_dim: dict[int, dict] = {}
        for entry in layers:
            if not isinstance(entry, dict) or "dim" not in entry:
                raise InputError("field 'boundaries': each entry needs a 'dim'")
            i = _coerce_int(entry["dim"], "field 'dim'")
            if i in by_dim:
                raise InputError(f"field 'boundaries': dimension {i} listed twice")
            by_dim[i] = entry
        d = max(by_dim)
        if sorted(by_dim) != list(range(d + 1)):
            raise InputError("field 'boundaries': dimensions must cover 0..d")
        cells = []
        mats = []
        for i in range(d + 1):
            entry = by_dim[i]
            labels = entry.get("cells")
            if not isinstance(labels, list) or not all(
                isinstance(l, str) for l in labels
            ):
                raise InputError(f"dimension {i}: 'cells' must be a list of strings")
            cells.append(labels)
            if i == 0:
                continue
            matrix = entry.get("matrix")
            if not isinstance(matrix, list):
                raise InputError(f"dimension {i}: 'matrix' must be a list of rows")
            rows = [
                [_coerce_int(x, f"dimension {i} matrix") for x in row]
                for row in matrix
            ]
            try:
                mats.append(IntMatrix(rows, shape=(len(cells[i - 1]), len(labels))))
            except ValueError as e:
                raise InputError(f"dimension {i}: {e}") from None
        try:
            c = CellComplex(cells, mats, augmented=augmented)
        except ValueError as e:
            raise InputError(str(e)) from None
    else:
        raise InputError("document needs 'simplicial_facets' or 'boundaries'")
    msg = c.validate()
    if msg is not None:
        raise InputError(msg)
    return c


def emit_document(c: CellComplex) -> dict:
    """A boundary-matrix document that parses back to the same complex."""
    layers = []
    for i in range(c.dim + 1):
        entry: dict[str, Any] = {"dim": i, "cells": list(c.cells[i])}
        if i >= 1:
            entry["matrix"] = c.boundary(i).to_rows()
        layers.append(entry)
    return {"boundaries": layers, "augmented": c.augmented}


def random_document(
    seed: int, vertices: int, dim: int, facet_prob: float, retries: int = 100
) -> dict:
    """A reproducible random subcomplex of the complete simplicial complex,
    always carrying the full codimension-one skeleton."""
    if not 1 <= vertices <= 7:
        raise InputError("vertices must be between 1 and 7")
    if not 1 <= dim <= 3:
        raise InputError("dim must be between 1 and 3")
    if not 0.0 <= facet_prob <= 1.0:
        raise InputError("facet-prob must be between 0 and 1")
    if vertices < dim + 1:
        raise InputError("too few vertices for the requested dimension")
    rng = random.Random(seed)
    labels = [str(v) for v in range(1, vertices + 1)]
    candidates = list(combinations(labels, dim + 1))
    for _ in range(retries):
        chosen = [f for f in candidates if rng.random() < facet_prob]
        if chosen:
            break
    else:
        raise InputError(
            f"no facets selected after {retries} draws (facet-prob too small)"
        )
    facets = sorted(chosen) + sorted(combinations(labels, dim))
    return {
        "simplicial_facets": [list(f) for f in facets],
        "augmented": True,
    }


def _json_safe(x: Any) -> Any:
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return x if abs(x) < _SAFE_INT else str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return "infinity" if math.isinf(x) else x
    if isinstance(x, dict):
        return {k: _json_safe(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json_safe(v) for v in x]
    return x


def _group_json(g: FiniteAbelianGroup) -> dict:
    return {
        "invariant_factors": list(g.invariant_factors),
        "free_rank": g.free_rank,
        "pretty": str(g),
    }


def _digest(c: CellComplex) -> dict:
    out = {
        "dim": c.dim,
        "cells": [len(layer) for layer in c.cells],
        "augmented": c.augmented,
    }
    if c.dim >= 1:
        out["rank"] = forests_mod.matroid_rank(c)
    return out


def _facet_cap() -> int:
    raw = os.environ.get(MAX_FACETS_ENV)
    if raw is None:
        return DEFAULT_MAX_FACETS
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{MAX_FACETS_ENV} must be an integer") from None


def _check_cap(c: CellComplex) -> None:
    cap = _facet_cap()
    if len(c.facets) > cap:
        raise CapExceeded(
            f"{len(c.facets)} facets exceed the enumeration cap of {cap} "
            f"(raise {MAX_FACETS_ENV} to override)"
        )


def _pick_forest(c: CellComplex, args) -> tuple[str, ...]:
    if args.forest:
        labels = tuple(x.strip() for x in args.forest.split(",") if x.strip())
        if not forests_mod.is_csf(c, labels):
            raise InputError(
                f"--forest {args.forest!r} is not a cellular spanning forest"
            )
        return forests_mod.canonical_facets(c, labels)
    return forests_mod.first_csf(c)


def cmd_homology(c: CellComplex, args) -> dict:
    if args.dim is not None and not -1 <= args.dim <= c.dim:
        raise InputError(f"--dim {args.dim} out of range for dimension {c.dim}")
    dims = [args.dim] if args.dim is not None else list(range(-1, c.dim + 1))
    results = {f"H{i}": _group_json(reduced_homology(c, i)) for i in dims}
    return {"homology": results}


def cmd_forests(c: CellComplex, args) -> dict:
    _check_cap(c)
    certs = [
        {"facets": list(f.facets), "torsion": f.torsion}
        for f in forests_mod.enumerate_csfs(c)
    ]
    return {"count": len(certs), "forests": certs}


def cmd_tau(c: CellComplex, args) -> dict:
    _check_cap(c)
    return {"tau": forests_mod.tau(c)}


def cmd_cutbasis(c: CellComplex, args) -> dict:
    forest = _pick_forest(c, args)
    vectors = []
    for sigma in forest:
        bond = cutflow_mod.fundamental_bond(c, forest, sigma)
        raw = cutflow_mod.uncalibrated_cut_vector(c, forest, sigma)
        cal = cutflow_mod.calibrated_cut_vector(
            c, tuple(x for x in forest if x != sigma), sigma
        )
        vectors.append(
            {
                "facet": sigma,
                "bond": list(bond.facets),
                "uncalibrated": raw.as_dict(),
                "calibrated": cal.as_dict(),
            }
        )
    return {"forest": list(forest), "mu": forests_mod.mu(c, forest), "vectors": vectors}


def cmd_flowbasis(c: CellComplex, args) -> dict:
    forest = _pick_forest(c, args)
    fset = set(forest)
    vectors = []
    for sigma in c.facets:
        if sigma in fset:
            continue
        circ = cutflow_mod.fundamental_circuit(c, forest, sigma)
        vec = cutflow_mod.flow_vector(c, circ)
        prim = cutflow_mod.calibrated_flow_vector(c, circ)
        vectors.append(
            {
                "facet": sigma,
                "circuit": list(circ.facets),
                "vector": vec.as_dict(),
                "primitive": prim.as_dict(),
            }
        )
    return {"forest": list(forest), "vectors": vectors}


def cmd_groups(c: CellComplex, args) -> dict:
    return {
        "critical": _group_json(lattices_mod.critical_group(c)),
        "cocritical": _group_json(lattices_mod.cocritical_group(c)),
        "cutflow": _group_json(lattices_mod.cutflow_group(c)),
        "cut_discriminant": _group_json(
            lattices_mod.discriminant_group(lattices_mod.cut_lattice(c))
        ),
        "flow_discriminant": _group_json(
            lattices_mod.discriminant_group(lattices_mod.flow_lattice(c))
        ),
    }


def cmd_bounds(c: CellComplex, args) -> dict:
    _check_cap(c)
    rep = bounds_mod.hermite_check(c)
    return {
        "girth": bounds_mod.girth(c),
        "connectivity": bounds_mod.connectivity(c),
        "hermite": [
            {"name": r.name, "lhs": r.lhs, "rhs": r.rhs, "status": r.status}
            for r in rep.rows
        ],
    }


def _bounded_pairs(first: list, second: list, cap: int) -> tuple[list, bool]:
    pairs = [(a, b) for a in first for b in second]
    if len(pairs) > cap:
        return pairs[:cap], True
    return pairs, False


def verify_checks(c: CellComplex, pair_cap: int = 4000) -> list[dict]:
    """The full identity battery for one complex, as check-table rows."""
    checks: list[dict] = []

    def add(name, lhs, rhs, ok):
        checks.append({"name": name, "lhs": str(lhs), "rhs": str(rhs), "pass": bool(ok)})

    rep = lattices_mod.verify_group_identities(c)
    for ch in rep.checks:
        add(ch.name, ch.lhs, ch.rhs, ch.ok)

    forest = forests_mod.first_csf(c)
    cuts = cutflow_mod.cut_basis(c, forest)
    flows = cutflow_mod.flow_basis(c, forest)
    n = len(c.facets)
    ortho = all(u.dot(v) == 0 for u in cuts for v in flows)
    add("cut basis orthogonal to flow basis", ortho, True, ortho)
    add("cut rank + flow rank = facets", len(cuts) + len(flows), n,
        len(cuts) + len(flows) == n)
    if n:
        stacked = IntMatrix.from_columns(
            [v.coeffs for v in cuts] + [v.coeffs for v in flows], rows=n
        )
        add("cut + flow bases span ambient space", rank(stacked), n, rank(stacked) == n)

    d = c.dim
    r = forests_mod.matroid_rank(c)
    m = c.n_cells(d - 1)
    facet_sets = list(combinations(range(n), r))
    row_sets = list(combinations(range(m), m - r))
    pairs, truncated = _bounded_pairs(facet_sets, row_sets, pair_cap)
    agree = 0
    for fidx, gidx in pairs:
        repd = forests_mod.check_det_is_homology(
            c,
            [c.facets[j] for j in fidx],
            [c.cells[d - 1][i] for i in gidx],
        )
        if repd.all_equal:
            agree += 1
    name = "determinant/homology conditions agree"
    if truncated:
        name += f" (first {len(pairs)} pairs)"
    add(name, f"{agree} pairs", f"{len(pairs)} pairs", agree == len(pairs))

    csfs = list(forests_mod.enumerate_csfs(c))
    gammas = list(forests_mod.enumerate_relatively_acyclic(c))
    pairs2, truncated2 = _bounded_pairs(csfs, gammas, pair_cap)
    good = 0
    for cert, gcert in pairs2:
        if forests_mod.check_relative_tor(c, cert.facets, gcert.gamma).ok:
            good += 1
    name = "relative torsion products agree"
    if truncated2:
        name += f" (first {len(pairs2)} pairs)"
    add(name, f"{good} pairs", f"{len(pairs2)} pairs", good == len(pairs2))

    tv = forests_mod.tau(c)
    det_vals = {forests_mod.tau_by_determinant(c, gcert) for gcert in gammas}
    add(
        "matrix-forest determinant equals tau for every subcomplex",
        sorted(det_vals),
        [tv],
        det_vals == {tv},
    )

    exch_total = exch_good = 0
    by_facets = {cert.facets: cert for cert in csfs}
    for cert in csfs:
        fset = set(cert.facets)
        for sigma in cert.facets:
            base = tuple(x for x in cert.facets if x != sigma)
            for rho in c.facets:
                if rho in fset and rho != sigma:
                    continue
                other = forests_mod.canonical_facets(c, base + (rho,))
                cert2 = by_facets.get(other)
                if cert2 is None:
                    continue
                exch_total += 1
                lhs = cutflow_mod.exchange_laplacian_det(c, base, sigma, rho)
                eps = 1 if rho == sigma else cutflow_mod.exchange_sign(c, base, sigma, rho)
                rhs = eps * forests_mod.mu(c, cert.facets) * cert2.torsion
                if lhs == rhs:
                    exch_good += 1
    add(
        "exchange determinant identity",
        f"{exch_good} pairs",
        f"{exch_total} pairs",
        exch_good == exch_total,
    )

    icb = lattices_mod.integral_cut_basis(c, forest)
    if icb is None:
        add("integral cut basis", "hypothesis-failure", "forest has torsion", True)
    else:
        add("integral cut basis generates the cut lattice", len(icb), r, len(icb) == r)
    ifb = lattices_mod.integral_flow_basis(c, forest)
    if ifb is None:
        add("integral flow basis", "hypothesis-failure",
            "forest homology differs from total", True)
    else:
        add(
            "integral flow basis generates the flow lattice",
            len(ifb),
            n - r,
            len(ifb) == n - r,
        )

    hrep = bounds_mod.hermite_check(c)
    for row in hrep.rows:
        if row.status == "skip":
            add(f"{row.name} [skipped]", row.lhs, row.rhs, True)
        else:
            add(row.name, row.lhs, row.rhs, row.status == "pass")
    return checks


def cmd_verify(c: CellComplex, args) -> dict:
    _check_cap(c)
    checks = verify_checks(c)
    return {"checks": checks}


COMMANDS = {
    "homology": cmd_homology,
    "forests": cmd_forests,
    "tau": cmd_tau,
    "cutbasis": cmd_cutbasis,
    "flowbasis": cmd_flowbasis,
    "groups": cmd_groups,
    "bounds": cmd_bounds,
    "verify": cmd_verify,
}


def _render_text(report: dict, out) -> None:
    digest = report["complex"]
    print(f"# {report['command']}: dim {digest['dim']}, cells {digest['cells']}", file=out)
    results = report.get("results", {})
    checks = report.get("checks", [])

    def walk(obj, indent=0):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)) and v and not _is_scalar_list(v):
                    print(f"{pad}{k}:", file=out)
                    walk(v, indent + 1)
                else:
                    print(f"{pad}{k}: {v}", file=out)
        elif isinstance(obj, list):
            for v in obj:
                if isinstance(v, (dict, list)):
                    walk(v, indent)
                    print(f"{pad}-", file=out)
                else:
                    print(f"{pad}- {v}", file=out)

    def _is_scalar_list(v):
        return isinstance(v, list) and all(
            not isinstance(x, (dict, list)) for x in v
        )

    walk(results)
    for ch in checks:
        mark = "pass" if ch["pass"] else "FAIL"
        print(f"[{mark}] {ch['name']}: {ch['lhs']} vs {ch['rhs']}", file=out)
    if checks:
        print(
            f"{sum(1 for ch in checks if ch['pass'])}/{len(checks)} checks passed",
            file=out,
        )


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cellcut",
        description="Cut/flow lattices, critical groups, and forest invariants "
        "of finite cell complexes",
    )
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("input", nargs="?", default="-",
                        help="input JSON file, or - for stdin")
        sp.add_argument("--json", action="store_true", help="emit a JSON report")
        sp.add_argument("--forest", default=None,
                        help="comma-separated facet labels to use as the forest")
        if name == "homology":
            sp.add_argument("--dim", type=int, default=None)
    rp = sub.add_parser("random")
    rp.add_argument("--seed", type=int, required=True)
    rp.add_argument("--vertices", type=int, default=5)
    rp.add_argument("--dim", type=int, default=2)
    rp.add_argument("--facet-prob", type=float, default=0.5)
    return p


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "random":
            doc = random_document(args.seed, args.vertices, args.dim, args.facet_prob)
            print(json.dumps(doc, sort_keys=True, separators=(",", ":")), file=out)
            return EXIT_OK
        if args.input == "-":
            text = sys.stdin.read()
            source = "<stdin>"
        else:
            try:
                with open(args.input, "r", encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as e:
                print(f"error: {e}", file=sys.stderr)
                return EXIT_INPUT
            source = args.input
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            print(f"error: {source}: line {e.lineno}: {e.msg}", file=sys.stderr)
            return EXIT_INPUT
        c = parse_document(doc)
        results = COMMANDS[args.command](c, args)
        checks = results.pop("checks", [])
        report = {
            "command": args.command,
            "complex": _digest(c),
            "results": results,
            "checks": checks,
        }
        ok = all(ch["pass"] for ch in checks)
        report["ok"] = ok
        if args.json:
            print(json.dumps(_json_safe(report), indent=2), file=out)
        else:
            _render_text(_json_safe(report), out)
        return EXIT_OK if ok else EXIT_CHECK_FAILED
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
