"""Command-line front end: ring-spec ingestion, verification suites, JSON reports.

Ring specs are JSON objects of kind "zmod", "product" or "tables".  The
verify subcommand runs named check suites in dependency order and emits a
deterministic report; a check stopped by a size guard is recorded as
skipped, never dropped.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from functools import reduce

from . import geometry, limits, localization, sheaves, spectrum
from .reports import CheckResult, failed, mask_points, passed, skipped
from .rings import (
    DEFAULT_MAX_SUBSETS,
    FiniteRing,
    RingValidationError,
    SizeGuardError,
    bits,
    complement_submonoid,
    enumerate_ideals,
    enumerate_prime_ideals,
    ideal_gen_by_prod,
    is_ideal,
    is_maximal_ideal,
    is_prime_ideal,
    mask_of,
    product_ring,
    zmod,
)

SUITES = ("ring", "topology", "sheaf", "lrs", "scheme")


class ParseError(ValueError):
    pass


class UnknownKindError(ParseError):
    pass


class BadTablesError(ParseError):
    pass


@dataclass
class RingSpec:
    kind: str
    n: int | None = None
    factors: list | None = None
    tables: dict | None = None
    raw: dict | None = None


@dataclass
class Guards:
    max_subsets: int = DEFAULT_MAX_SUBSETS
    max_sections: int = spectrum.DEFAULT_MAX_SECTIONS
    max_covers: int = sheaves.DEFAULT_MAX_COVERS

    def as_dict(self):
        return {
            "max_subsets": self.max_subsets,
            "max_sections": self.max_sections,
            "max_covers": self.max_covers,
        }


def _parse_obj(obj) -> RingSpec:
    if not isinstance(obj, dict):
        raise ParseError("ring spec must be a JSON object")
    kind = obj.get("kind")
    if kind == "zmod":
        n = obj.get("n")
        if not isinstance(n, int) or n < 1:
            raise ParseError(f"field n must be a positive integer, got {n!r}")
        return RingSpec("zmod", n=n, raw=obj)
    if kind == "product":
        factors = obj.get("factors")
        if not isinstance(factors, list) or len(factors) < 1:
            raise ParseError("field factors must be a nonempty list")
        return RingSpec("product", factors=[_parse_obj(f) for f in factors], raw=obj)
    if kind == "tables":
        size = obj.get("size")
        if not isinstance(size, int) or size < 1:
            raise BadTablesError(f"field size must be a positive integer, got {size!r}")
        for field in ("add", "mul"):
            table = obj.get(field)
            if (
                not isinstance(table, list)
                or len(table) != size
                or any(
                    not isinstance(row, list)
                    or len(row) != size
                    or any(not isinstance(e, int) for e in row)
                    for row in table
                )
            ):
                raise BadTablesError(f"field {field} must be a {size}x{size} integer table")
        for field in ("zero", "one"):
            if not isinstance(obj.get(field), int):
                raise BadTablesError(f"field {field} must be an integer")
        return RingSpec(
            "tables",
            tables={k: obj[k] for k in ("size", "add", "mul", "zero", "one")},
            raw=obj,
        )
    raise UnknownKindError(f"unknown ring spec kind {kind!r}")


def parse_ring_spec(text: str) -> RingSpec:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return _parse_obj(obj)


def build_ring(spec: RingSpec) -> FiniteRing:
    """Construct the ring; ring-axiom failures raise RingValidationError."""
    if spec.kind == "zmod":
        return zmod(spec.n)
    if spec.kind == "product":
        return reduce(product_ring, (build_ring(f) for f in spec.factors))
    t = spec.tables
    from .rings import validate_ring

    return validate_ring(t["size"], t["add"], t["mul"], t["zero"], t["one"])


def _elems(mask: int) -> list[int]:
    return list(bits(mask))


class Pipeline:
    """Lazily built verification pipeline shared across suites."""

    def __init__(self, spec: RingSpec, guards: Guards):
        self.spec = spec
        self.guards = guards
        self._cache = {}

    def ring(self) -> FiniteRing:
        if "ring" not in self._cache:
            self._cache["ring"] = build_ring(self.spec)
        return self._cache["ring"]

    def space(self) -> spectrum.SpectrumSpace:
        if "space" not in self._cache:
            self._cache["space"] = spectrum.zariski_topology(
                self.ring(), self.guards.max_subsets
            )
        return self._cache["space"]

    def sheaf(self) -> spectrum.StructureSheaf:
        if "sheaf" not in self._cache:
            self._cache["sheaf"] = spectrum.structure_sheaf(
                self.ring(), self.guards.max_subsets, self.guards.max_sections
            )
        return self._cache["sheaf"]


def ring_suite(pipe: Pipeline) -> list[CheckResult]:
    out = []
    try:
        ring = pipe.ring()
    except RingValidationError as exc:
        witness = [[v.kind, v.law, list(v.witness)] for v in exc.violations[:8]]
        out.append(failed("validate_ring", "comm_ring", witness))
        return out
    out.append(passed("validate_ring", "comm_ring", {"size": ring.size}))

    zero_only = mask_of([ring.zero])
    out.append(
        passed("ideal_zero", "ideal_0_R")
        if is_ideal(ring, zero_only)[0]
        else failed("ideal_zero", "ideal_0_R")
    )
    out.append(
        passed("ideal_full", "ideal_R_R")
        if is_ideal(ring, ring.carrier_mask)[0]
        else failed("ideal_full", "ideal_R_R")
    )
    try:
        primes = enumerate_prime_ideals(ring, pipe.guards.max_subsets)
        ideals = enumerate_ideals(ring, pipe.guards.max_subsets)
    except SizeGuardError as exc:
        out.append(skipped("enumerate_prime_ideals", "Spec", str(exc)))
        return out
    out.append(
        passed(
            "enumerate_prime_ideals", "Spec",
            {"count": len(primes), "primes": [_elems(p) for p in primes]},
        )
    )
    bad = next((p for p in primes if (p >> ring.one) & 1), None)
    out.append(
        passed("one_not_in_primes", "not_1")
        if bad is None
        else failed("one_not_in_primes", "not_1", _elems(bad))
    )
    try:
        for p in primes:
            complement_submonoid(ring, p)
        out.append(passed("complement_submonoid", "submonoid_notin"))
    except AssertionError as exc:
        out.append(failed("complement_submonoid", "submonoid_notin", str(exc)))
    bad = next(
        (
            m
            for m in ideals
            if is_maximal_ideal(ring, m, ideals) and not is_prime_ideal(ring, m)[0]
        ),
        None,
    )
    out.append(
        passed("max_ideal_is_prime", "is_pr_ideal")
        if bad is None
        else failed("max_ideal_is_prime", "is_pr_ideal", _elems(bad))
    )
    bad = None
    for a in ideals:
        for b in ideals:
            prod_set = {ring.mul[x][y] for x in bits(a) for y in bits(b)}
            inter = ring.carrier_mask
            for i in ideals:
                if all((i >> e) & 1 for e in prod_set):
                    inter &= i
            if ideal_gen_by_prod(ring, a, b) != inter:
                bad = (_elems(a), _elems(b))
                break
        if bad:
            break
    out.append(
        passed("ideal_gen_by_prod", "ideal_gen_by_prod_is_inter")
        if bad is None
        else failed("ideal_gen_by_prod", "ideal_gen_by_prod_is_inter", bad)
    )
    return out


def topology_suite(pipe: Pipeline) -> list[CheckResult]:
    from .topology import check_topological_space

    out = []
    try:
        space = pipe.space()
    except SizeGuardError as exc:
        return [skipped("zariski_topology", "is_zariski_open", str(exc))]
    opens = [mask_points(u) for u in space.topology.opens]
    out.append(passed("zariski_topology", "is_zariski_open", {"opens": opens}))
    check = check_topological_space(space.topology.carrier, space.topology.opens)
    out.append(
        passed("topological_space_axioms", "zariski_is_topological_space",
               {"union_mode": check.union_mode})
        if check.ok
        else failed("topological_space_axioms", "zariski_is_topological_space", check.witness)
    )
    ring = pipe.ring()
    v_zero = spectrum.closed_subsets(space, mask_of([ring.zero]))
    out.append(
        passed("closed_subsets_zero", "closed_subsets_zero")
        if v_zero == space.topology.carrier
        else failed("closed_subsets_zero", "closed_subsets_zero", mask_points(v_zero))
    )
    v_full = spectrum.closed_subsets(space, ring.carrier_mask)
    out.append(
        passed("closed_subsets_full", "closed_subsets_R")
        if v_full == 0
        else failed("closed_subsets_full", "closed_subsets_R", mask_points(v_full))
    )
    return out


def sheaf_suite(pipe: Pipeline) -> list[CheckResult]:
    out = []
    try:
        sheaf = pipe.sheaf()
    except SizeGuardError as exc:
        return [skipped("structure_sheaf", "sheaf_spec", str(exc))]
    sizes = {
        str(mask_points(u)): sheaf.presheaf.section_ring[u].size
        for u in sheaf.presheaf.topology.opens
    }
    out.append(passed("structure_sheaf", "sheaf_spec", {"section_ring_sizes": sizes}))
    out.extend(sheaves.check_presheaf_axioms(sheaf.presheaf))
    try:
        out.extend(sheaves.check_sheaf_axioms(sheaf.presheaf, pipe.guards.max_covers))
    except SizeGuardError as exc:
        out.append(skipped("locality", "locality", str(exc)))
        out.append(skipped("glueing", "glueing", str(exc)))
    return out


def lrs_suite(pipe: Pipeline) -> list[CheckResult]:
    out = []
    try:
        sheaf = pipe.sheaf()
    except SizeGuardError as exc:
        return [skipped("spec_locally_ringed", "spec_is_locally_ringed_space", str(exc))]
    ring = pipe.ring()
    bad = None
    for p in enumerate_prime_ideals(ring, pipe.guards.max_subsets):
        loc = localization.local_ring_at(ring, p)
        from .rings import is_local_ring

        if not is_local_ring(loc.ring)[0]:
            bad = _elems(p)
            break
    out.append(
        passed("local_ring_at_is_local", "local_ring_at_is_local")
        if bad is None
        else failed("local_ring_at_is_local", "local_ring_at_is_local", bad)
    )
    out.extend(geometry.spec_locally_ringed(ring, sheaf))
    return out


def scheme_suite(pipe: Pipeline) -> list[CheckResult]:
    out = []
    try:
        sheaf = pipe.sheaf()
    except SizeGuardError as exc:
        return [skipped("check_affine_scheme", "spec_is_affine_scheme", str(exc))]
    ring = pipe.ring()
    rs = geometry.spec_ringed_space(sheaf)
    witness_m = geometry.spec_affine_witness(sheaf)
    affine = geometry.check_affine_scheme(rs, ring, witness_m, sheaf)
    from .reports import all_passed, first_failure

    out.append(
        passed("check_affine_scheme", "spec_is_affine_scheme")
        if all_passed(affine)
        else failed(
            "check_affine_scheme", "spec_is_affine_scheme",
            (first_failure(affine).name, first_failure(affine).witness),
        )
    )
    if not all_passed(affine):
        return out
    entries = geometry.affine_to_scheme(rs, ring, witness_m, sheaf)
    report = geometry.check_scheme(rs, entries, {k: sheaf for k in range(len(entries))})
    out.append(
        passed("affine_scheme_is_scheme", "affine_scheme_is_scheme", {"entries": len(entries)})
        if all_passed(report)
        else failed(
            "affine_scheme_is_scheme", "affine_scheme_is_scheme",
            (first_failure(report).name, first_failure(report).witness),
        )
    )
    if sheaf.presheaf.topology.carrier == 0:
        out.append(
            passed("empty_scheme", "empty_scheme_is_scheme", {"entries": len(entries)})
            if all_passed(report) and not entries
            else failed("empty_scheme", "empty_scheme_is_scheme")
        )
    return out


SUITE_RUNNERS = {
    "ring": ring_suite,
    "topology": topology_suite,
    "sheaf": sheaf_suite,
    "lrs": lrs_suite,
    "scheme": scheme_suite,
}


def _json_witness(value):
    if isinstance(value, tuple):
        return [_json_witness(v) for v in value]
    if isinstance(value, list):
        return [_json_witness(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _json_witness(v) for k, v in value.items()}
    if isinstance(value, (int, str, bool)) or value is None:
        return value
    return str(value)


def run_suite(spec: RingSpec, suite: str, guards: Guards | None = None) -> dict:
    """Execute the named suite (or all of them) and assemble the JSON report."""
    guards = guards or Guards()
    names = list(SUITES) if suite == "all" else [suite]
    if any(n not in SUITE_RUNNERS for n in names):
        raise ValueError(f"unknown suite {suite!r}")
    pipe = Pipeline(spec, guards)
    suites_out = []
    timings = {}
    upstream_failed = False
    for name in names:
        start = time.perf_counter()
        if upstream_failed:
            checks = [skipped(name + "_suite", "", "upstream suite failed")]
        else:
            checks = SUITE_RUNNERS[name](pipe)
        timings[name] = int((time.perf_counter() - start) * 1000)
        suites_out.append(
            {
                "suite": name,
                "checks": [
                    {
                        "name": c.name,
                        "status": c.status,
                        "witness": _json_witness(c.witness),
                        "paper_anchor": c.anchor,
                    }
                    for c in checks
                ],
            }
        )
        if any(c.status == "fail" for c in checks):
            upstream_failed = True
    return {
        "input": spec.raw,
        "suites": suites_out,
        "timings_ms": timings,
        "guards": guards.as_dict(),
    }


def report_exit_code(report: dict) -> int:
    for suite in report["suites"]:
        for check in suite["checks"]:
            if check["status"] == "fail":
                return 1
    return 0


def _load_spec(path: str) -> RingSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_ring_spec(fh.read())


def _fraction_label(loc, class_index: int) -> str:
    r, s = loc.reps[class_index]
    return f"{r}/{s}"


def cmd_spec(args) -> int:
    spec = _load_spec(args.file)
    ring = build_ring(spec)
    primes = enumerate_prime_ideals(ring)
    print(f"ring size {ring.size}: {len(primes)} prime ideal(s)")
    for i, p in enumerate(primes):
        print(f"  point {i}: {_elems(p)}")
    return 0


def cmd_topology(args) -> int:
    spec = _load_spec(args.file)
    space = spectrum.zariski_topology(build_ring(spec))
    print(f"Spec has {len(space.points)} point(s); {len(space.topology.opens)} open(s)")
    for u in space.topology.opens:
        print(f"  open {mask_points(u)}")
    return 0


def _parse_open(arg: str) -> int:
    arg = arg.strip()
    if not arg:
        return 0
    return mask_of(int(tok) for tok in arg.split(","))


def cmd_sections(args) -> int:
    spec = _load_spec(args.file)
    sheaf = spectrum.structure_sheaf(build_ring(spec))
    u = _parse_open(args.open)
    if not sheaf.presheaf.topology.is_open(u):
        print(f"error: {mask_points(u)} is not a Zariski-open set", file=sys.stderr)
        return 2
    data = sheaf.sections[u]
    print(f"O({mask_points(u)}) has {data.ring.size} section(s)")
    for k, tup in enumerate(data.values):
        parts = ", ".join(
            f"{pt}: {_fraction_label(sheaf.stalks[pt], cls)}"
            for pt, cls in zip(data.points, tup)
        )
        print(f"  section {k}: {{{parts}}}")
    return 0


def cmd_stalk(args) -> int:
    spec = _load_spec(args.file)
    sheaf = spectrum.structure_sheaf(build_ring(spec))
    point = args.point
    if not (sheaf.presheaf.topology.carrier >> point) & 1 or point < 0:
        print(f"error: no point {point} in Spec", file=sys.stderr)
        return 2
    stalk = limits.stalk_at(sheaf.presheaf, point)
    loc = sheaf.stalks[point]
    print(f"stalk at point {point} (prime {_elems(sheaf.space.points[point])}): "
          f"{stalk.ring.size} element(s)")
    result = geometry.stalk_to_localization(
        sheaf, point, max(u for u in sheaf.presheaf.topology.opens if (u >> point) & 1)
    )
    verdict = "isomorphic" if result.ok else "NOT isomorphic"
    print(f"  {verdict} to the local ring at the prime ({result.path} map); "
          f"local ring classes: {[f'{r}/{s}' for r, s in loc.reps]}")
    return 0


def cmd_verify(args) -> int:
    spec = _load_spec(args.file)
    guards = Guards(args.max_subsets, args.max_sections, args.max_covers)
    report = run_suite(spec, args.suite, guards)
    for suite in report["suites"]:
        for check in suite["checks"]:
            print(f"[{check['status'].upper():>4}] {suite['suite']}/{check['name']}")
    text = json.dumps(report, indent=2)
    if args.report == "-":
        print(text)
    elif args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return report_exit_code(report)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="finspec",
        description="Verify spectra, Zariski topologies, structure sheaves and "
                    "scheme axioms over finite commutative rings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spec", help="enumerate the prime ideals of a ring")
    p.add_argument("file")
    p.set_defaults(func=cmd_spec)

    p = sub.add_parser("topology", help="print the Zariski topology")
    p.add_argument("file")
    p.set_defaults(func=cmd_topology)

    p = sub.add_parser("sections", help="print the section ring over an open set")
    p.add_argument("file")
    p.add_argument("--open", required=True,
                   help="comma-separated point indices (empty string for the empty set)")
    p.set_defaults(func=cmd_sections)

    p = sub.add_parser("stalk", help="print the stalk at a point")
    p.add_argument("file")
    p.add_argument("--point", type=int, required=True)
    p.set_defaults(func=cmd_stalk)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("file")
    p.add_argument("--suite", default="all", choices=list(SUITES) + ["all"])
    p.add_argument("--report", help="write the JSON report to a file ('-' for stdout)")
    p.add_argument("--max-subsets", type=int, default=DEFAULT_MAX_SUBSETS)
    p.add_argument("--max-sections", type=int, default=spectrum.DEFAULT_MAX_SECTIONS)
    p.add_argument("--max-covers", type=int, default=sheaves.DEFAULT_MAX_COVERS)
    p.set_defaults(func=cmd_verify)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RingValidationError as exc:
        print(f"error: ring axioms violated: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
