"""Command-line experiment runner.

Seven subcommands drive the library: expand, growth-curve, torus-scan,
trace-lab, lemma-check, energy, vital.  All randomness flows from one
--seed through per-stream generators derived by hashing, so identical
configs give byte-identical output files.  Every run emits exactly one
JSON manifest on stdout (and next to --out when given) echoing the
config, the wall clock, and sha256 digests of the files written.

Exit codes: 0 success, 2 configuration error, 3 budget exceeded,
4 generator construction failed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction
from random import Random
from typing import Optional

from .errors import (
    BudgetExceeded,
    GenerationFailed,
    Indeterminate,
    SlgrowthError,
)
from .energy import (
    ScalarSet,
    additive_energy,
    assemble_vital_instance,
    vital_diagnostics,
)
from .field import PrimeField
from .growth import (
    Budget,
    DEFAULT_MAX_ELEMENTS,
    ElementSet,
    GrowthReport,
    generates,
    growth_scan,
    standard_generators,
    word_ball,
)
from .matrices import SpecialLinear
from .tracelab import (
    WealthBin,
    bin_spread,
    class_tuple,
    dyadic_bins,
    f_of,
    f_relation_holds,
    lindep_check,
    popular_tuple,
    trace_tuple,
)
from .torus import TorusReport, rich_torus_scan
from .vandermonde import (
    cyclic_product_coordinates,
    elementary_symmetric,
    generalized_vandermonde_det,
    verify_vander_identity,
)
from ._version import __version__

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_BUDGET = 3
EXIT_GENERATION = 4

_STATUS_EXIT = {
    "ok": EXIT_OK,
    "config-error": EXIT_CONFIG,
    "budget-exceeded": EXIT_BUDGET,
    "generation-failed": EXIT_GENERATION,
}

SUBCOMMANDS = (
    "expand",
    "growth-curve",
    "torus-scan",
    "trace-lab",
    "lemma-check",
    "energy",
    "vital",
)


def stream_rng(seed: int, stream: str) -> Random:
    """Per-stream generator derived from the single global seed."""
    digest = hashlib.sha256(f"{seed}:{stream}".encode()).digest()
    return Random(int.from_bytes(digest[:8], "big"))


@dataclass
class ExperimentConfig:
    """Resolved run parameters; flags override config-file values."""

    n: int = 2
    p: int = 5
    p_list: Optional[list] = None
    generators: str = "standard"
    seed: int = 0
    count: int = 2
    radius: int = 2
    k_list: list = dc_field(default_factory=lambda: [2])
    delta: Fraction = Fraction(1, 2)
    budget_elems: int = DEFAULT_MAX_ELEMENTS
    budget_secs: Optional[float] = None
    out: Optional[str] = None
    format: str = "csv"
    workers: int = 1
    trials: int = 1000
    size: int = 64

    def validate(self):
        if self.generators not in ("standard", "random"):
            raise ValueError(f"unknown generator mode {self.generators!r}")
        if self.format not in ("csv", "json"):
            raise ValueError(f"unknown output format {self.format!r}")
        if self.radius < 1:
            raise ValueError("--radius must be >= 1")
        if not self.k_list or any(k < 1 for k in self.k_list):
            raise ValueError("--k radii must be a nonempty list of ints >= 1")
        if self.workers < 1:
            raise ValueError("--workers must be >= 1")
        if self.count < 1:
            raise ValueError("--count must be >= 1")
        if self.trials < 1:
            raise ValueError("--trials must be >= 1")
        if self.size < 1:
            raise ValueError("--size must be >= 1")
        if not 0 < self.delta < 1:
            raise ValueError("--delta must lie strictly between 0 and 1")
        if self.budget_elems < 1:
            raise ValueError("--budget-elems must be >= 1")
        if self.budget_secs is not None and self.budget_secs <= 0:
            raise ValueError("--budget-secs must be positive")
        for p in self.primes():
            SpecialLinear(self.n, p)  # p odd prime > n, entry width checks
        return self

    def primes(self) -> list[int]:
        return list(self.p_list) if self.p_list else [self.p]

    def budget(self) -> Budget:
        return Budget(max_elements=self.budget_elems, max_seconds=self.budget_secs)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["delta"] = str(self.delta)
        return out


@dataclass
class RunManifest:
    """One per run: config echo, status, timings, output digests."""

    version: str
    subcommand: str
    config: dict
    status: str
    wall_seconds: float
    outputs: dict
    info: dict
    error: Optional[str] = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2)


def build_generators(cfg: ExperimentConfig, space: SpecialLinear) -> ElementSet:
    """Standard pair, or seeded random elements retried until they
    generate (when the order fits the closure budget)."""
    if cfg.generators == "standard":
        return standard_generators(space)
    rng = stream_rng(cfg.seed, f"generators:{space.n}:{space.p}")
    budget = cfg.budget()
    checkable = space.order() <= budget.max_elements
    for _ in range(64):
        A = ElementSet(
            space, frozenset(space.random_element(rng) for _ in range(cfg.count))
        )
        if not checkable:
            return A
        try:
            if generates(A, budget):
                return A
        except Indeterminate:
            return A
    raise GenerationFailed(
        f"no generating {cfg.count}-set found in 64 seeded attempts"
    )


# ---------------------------------------------------------------------------
# deterministic text output


def _csv_bytes(header: list[str], rows: list[list[str]]) -> bytes:
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    return ("\n".join(lines) + "\n").encode()


def _json_bytes(payload) -> bytes:
    return (json.dumps(payload, sort_keys=True, indent=2) + "\n").encode()


def _emit(cfg: ExperimentConfig, outputs: dict, data: bytes,
          path: Optional[str] = None):
    """Write bytes to the target file (tracking its digest) or stdout."""
    target = path if path is not None else cfg.out
    if target:
        with open(target, "wb") as fh:
            fh.write(data)
        outputs[target] = hashlib.sha256(data).hexdigest()
    else:
        sys.stdout.write(data.decode())


# ---------------------------------------------------------------------------
# property suites (also driven by the acceptance tests)


def vander_identity_suite(n: int, p: int, trials: int, rng: Random) -> tuple[int, int]:
    """Random (s, i) checks of the omit-one determinant identity."""
    fld = PrimeField(p)
    passes = 0
    for _ in range(trials):
        s = tuple(rng.randrange(p) for _ in range(n))
        i = rng.randrange(n + 1)
        if verify_vander_identity(fld, s, i):
            passes += 1
    return passes, trials


def f_identity_suite(n: int, p: int, trials: int, rng: Random) -> tuple[int, int]:
    """Random (t, g) checks of the shifted-trace recursion."""
    space = SpecialLinear(n, p)
    passes = 0
    for _ in range(trials):
        t = space.random_regular_semisimple(rng)
        g = space.random_element(rng)
        if f_relation_holds(space, t, g):
            passes += 1
    return passes, trials


def kappa_conjugation_suite(n: int, p: int, trials: int, rng: Random) -> tuple[int, int]:
    """Random (g, h) checks that the invariant tuple survives conjugation."""
    space = SpecialLinear(n, p)
    passes = 0
    for _ in range(trials):
        g = space.random_element(rng)
        h = space.random_element(rng)
        conj = space.mul(space.mul(h, g), space.inv(h))
        if space.char_poly(conj) == space.char_poly(g):
            passes += 1
    return passes, trials


def lindep_suite(n: int, p: int, trials: int, rng: Random) -> tuple[int, int]:
    """Split regular witnesses: the n+1 forms must be dependent and the
    omit-one subsets independent exactly when no e_m vanishes."""
    space = SpecialLinear(n, p)
    fld = space.field
    passes = 0
    for _ in range(trials):
        t = _random_split_regular(space, rng)
        dependent_all, independent_subsets = lindep_check(space, t)
        eigs = space.split_eigenvalues(t)
        expected = all(
            elementary_symmetric(fld, eigs, m) != 0 for m in range(1, n)
        )
        if dependent_all and independent_subsets == expected:
            passes += 1
    return passes, trials


def cyclic_nonvanishing_suite(n: int, p: int, trials: int,
                              rng: Random) -> tuple[int, int]:
    """Sampled vanishing rate of the omit-one determinants built from
    cyclic window products of product-one coordinate vectors.  Returns
    (zero determinants seen, determinants evaluated)."""
    fld = PrimeField(p)
    failures = 0
    evals = 0
    for _ in range(trials):
        head = [rng.randrange(1, p) for _ in range(n - 1)]
        prod = 1
        for v in head:
            prod = (prod * v) % p
        r = head + [fld.inv(prod)]
        for length in range(1, n):
            q = cyclic_product_coordinates(fld, r, length)
            for i in range(n + 1):
                evals += 1
                if generalized_vandermonde_det(fld, q, i) == 0:
                    failures += 1
    return failures, evals


def _random_split_regular(space: SpecialLinear, rng: Random, max_tries=20_000):
    for _ in range(max_tries):
        g = space.random_element(rng)
        if space.split_eigenvalues(g) is not None:
            return g
    raise RuntimeError("no split regular element found; field too small?")


# ---------------------------------------------------------------------------
# subcommands


def _cmd_expand(cfg: ExperimentConfig, outputs: dict) -> dict:
    space = SpecialLinear(cfg.n, cfg.p)
    gens = build_generators(cfg, space)
    ball = word_ball(gens, cfg.radius, cfg.budget(), cfg.workers)
    if cfg.format == "json":
        payload = {
            "n": space.n,
            "p": space.p,
            "radius": cfg.radius,
            "count": len(ball),
            "elements": [space.encode(g).hex() for g in ball.sorted_members()],
        }
        _emit(cfg, outputs, _json_bytes(payload))
    else:
        data = ("\n".join(ball.dump_lines()) + "\n").encode()
        _emit(cfg, outputs, data)
    return {
        "ball_size": len(ball),
        "group_order": space.order(),
        "saturated": len(ball) == space.order(),
    }


def _cmd_growth_curve(cfg: ExperimentConfig, outputs: dict) -> dict:
    ks = sorted(set(cfg.k_list))
    reports = []
    for p in cfg.primes():
        space = SpecialLinear(cfg.n, p)
        gens = build_generators(cfg, space)
        A = word_ball(gens, cfg.radius, cfg.budget(), cfg.workers)
        reports.append(
            growth_scan(A, ks=ks, budget=cfg.budget(), workers=cfg.workers)
        )
    if cfg.format == "json":
        _emit(cfg, outputs, _json_bytes([rep.to_dict() for rep in reports]))
    else:
        rows = [rep.csv_row(ks) for rep in reports]
        _emit(cfg, outputs, _csv_bytes(GrowthReport.csv_header(ks), rows))
    return {
        "primes": cfg.primes(),
        "saturated": {str(rep.p): rep.saturated for rep in reports},
        "epsilon_hat": {str(rep.p): rep.epsilon_hat for rep in reports},
    }


def _cmd_torus_scan(cfg: ExperimentConfig, outputs: dict) -> dict:
    space = SpecialLinear(cfg.n, cfg.p)
    gens = build_generators(cfg, space)
    ks = sorted(set(cfg.k_list))
    reports = rich_torus_scan(gens, ks, cfg.budget(), cfg.workers)
    if cfg.format == "json":
        _emit(cfg, outputs, _json_bytes([rep.to_dict(space) for rep in reports]))
    else:
        rows = [rep.csv_row(space, ks) for rep in reports]
        _emit(cfg, outputs, _csv_bytes(TorusReport.csv_header(ks), rows))
    return {
        "tori": len(reports),
        "split_tori": sum(1 for rep in reports if rep.split),
    }


def _witnesses_for(cfg: ExperimentConfig, space: SpecialLinear,
                   source: ElementSet) -> list:
    """Split regular witnesses from the source ball, one per invariant
    tuple, in canonical order."""
    by_kappa: dict = {}
    for g in sorted(source.members):
        if space.split_eigenvalues(g) is not None:
            by_kappa.setdefault(space.char_poly(g), g)
    return [by_kappa[k] for k in sorted(by_kappa)]


def _cmd_trace_lab(cfg: ExperimentConfig, outputs: dict) -> dict:
    space = SpecialLinear(cfg.n, cfg.p)
    gens = build_generators(cfg, space)
    pool = word_ball(gens, cfg.radius, cfg.budget(), cfg.workers)
    kmax = max(cfg.k_list)
    witness_ball = word_ball(gens, kmax, cfg.budget(), cfg.workers)
    witnesses = _witnesses_for(cfg, space, witness_ball)
    bin_rows = []
    fvec_rows = []
    info: dict = {"witnesses": len(witnesses), "pool_size": len(pool)}
    per_witness = {}
    for t in witnesses:
        bins = dyadic_bins(t, pool)
        for b in bins:
            bin_rows.append(b.csv_row(space))
        fvec_rows.append(f_of(space, t).csv_row(space, t))
        t_hex = space.kappa_hex(space.char_poly(t))
        eligible = sum(len(b.members) for b in bins)
        stats = {
            "bins": len(bins),
            "eligible": eligible,
            "spread": bin_spread(bins),
        }
        if bins:
            top = popular_tuple(bins)
            stats["popular_jvec"] = list(top.jvec)
            stats["popular_size"] = len(top.members)
        n = space.n
        trace_counts = {}
        class_counts = {}
        for i in range(n + 1):
            tuples = {trace_tuple(space, g, t, i).values for g in pool.members}
            trace_counts[str(i)] = len(tuples)
            eligible_members = set()
            for b in bins:
                eligible_members.update(b.members.members)
            class_counts[str(i)] = len(
                {class_tuple(space, g, t, i).values for g in eligible_members}
            )
        stats["distinct_trace_tuples"] = trace_counts
        stats["distinct_class_tuples"] = class_counts
        per_witness[t_hex] = stats
    info["per_witness"] = per_witness
    if cfg.format == "json":
        payload = {
            "bins": [dict(zip(WealthBin.csv_header(), row)) for row in bin_rows],
            "fvectors": [
                {"t_kappa": row[0], "coefficients": row[1:]} for row in fvec_rows
            ],
            "stats": per_witness,
        }
        _emit(cfg, outputs, _json_bytes(payload))
    else:
        _emit(cfg, outputs, _csv_bytes(WealthBin.csv_header(), bin_rows))
        if cfg.out:
            fv_path = cfg.out + ".fvectors.csv"
            header = ["t_kappa"] + [f"r{k}" for k in range(space.n)]
            _emit(cfg, outputs, _csv_bytes(header, fvec_rows), path=fv_path)
    return info


def _cmd_lemma_check(cfg: ExperimentConfig, outputs: dict) -> dict:
    n, p, trials = cfg.n, cfg.p, cfg.trials
    rows = []
    results = {}
    suites = [
        ("vander-identity", vander_identity_suite),
        ("f-identity", f_identity_suite),
        ("kappa-conjugation", kappa_conjugation_suite),
        ("lindep", lindep_suite),
    ]
    for name, fn in suites:
        rng = stream_rng(cfg.seed, f"lemma:{name}:{n}:{p}")
        passes, total = fn(n, p, trials, rng)
        rows.append([name, str(n), str(p), str(total), str(passes),
                     str(total - passes)])
        results[name] = {"trials": total, "passes": passes}
    rng = stream_rng(cfg.seed, f"lemma:cyclic-nonvanishing:{n}:{p}")
    failures, evals = cyclic_nonvanishing_suite(n, p, trials, rng)
    rows.append(["cyclic-nonvanishing", str(n), str(p), str(evals),
                 str(evals - failures), str(failures)])
    results["cyclic-nonvanishing"] = {
        "determinants": evals,
        "zeros": failures,
        "zero_rate": failures / evals if evals else 0.0,
    }
    header = ["suite", "n", "p", "trials", "passes", "failures"]
    if cfg.format == "json":
        _emit(cfg, outputs, _json_bytes(results))
    else:
        _emit(cfg, outputs, _csv_bytes(header, rows))
    return results


def _cmd_energy(cfg: ExperimentConfig, outputs: dict) -> dict:
    p = cfg.p
    fld = PrimeField(p)
    rng = stream_rng(cfg.seed, f"energy:{p}")
    cap = min(cfg.size, p)
    rows = []
    all_bounds_ok = True
    for trial in range(cfg.trials):
        nx = rng.randint(1, cap)
        ny = rng.randint(1, cap)
        X = ScalarSet(fld, frozenset(rng.sample(range(p), nx)))
        Y = ScalarSet(fld, frozenset(rng.sample(range(p), ny)))
        e = additive_energy(X, Y)
        support = len({(a - b) % p for a in X.elements for b in Y.elements})
        lower = -(-((nx * ny) ** 2) // support)  # ceil division
        upper = nx * ny * min(nx, ny)
        all_bounds_ok &= lower <= e <= upper
        rows.append([str(trial), str(p), str(nx), str(ny), str(e),
                     str(support), str(lower), str(upper)])
    header = ["trial", "p", "size_x", "size_y", "energy", "support",
              "cs_lower", "upper"]
    if cfg.format == "json":
        payload = [dict(zip(header, row)) for row in rows]
        _emit(cfg, outputs, _json_bytes(payload))
    else:
        _emit(cfg, outputs, _csv_bytes(header, rows))
    return {"trials": cfg.trials, "bounds_ok": all_bounds_ok}


def _cmd_vital(cfg: ExperimentConfig, outputs: dict) -> dict:
    space = SpecialLinear(cfg.n, cfg.p)
    gens = build_generators(cfg, space)
    base = word_ball(gens, cfg.radius, cfg.budget(), cfg.workers)
    kmax = max(cfg.k_list)
    witness_ball = word_ball(base, kmax, cfg.budget(), cfg.workers)
    D = ElementSet(
        space,
        frozenset(
            t for t in witness_ball if space.split_eigenvalues(t) is not None
        ),
    )
    if not len(D):
        raise ValueError(
            "no split regular witnesses in the scanned ball; "
            "raise --k or --radius"
        )
    instance = assemble_vital_instance(
        base, D, cfg.radius, cfg.budget(), cfg.workers
    )
    report = vital_diagnostics(
        instance.X, instance.Y, instance.fibers, cfg.delta
    )
    if cfg.format == "json":
        _emit(cfg, outputs, _json_bytes(report.to_dict()))
    else:
        _emit(cfg, outputs, _csv_bytes(report.csv_header(), report.csv_rows()))
    return {
        "witnesses": len(D),
        "excluded_witnesses": len(instance.fibers.excluded_witnesses),
        "x_size": report.x_size,
        "y_size": report.y_size,
        "energy_sum": report.energy_sum,
    }


_DISPATCH = {
    "expand": _cmd_expand,
    "growth-curve": _cmd_growth_curve,
    "torus-scan": _cmd_torus_scan,
    "trace-lab": _cmd_trace_lab,
    "lemma-check": _cmd_lemma_check,
    "energy": _cmd_energy,
    "vital": _cmd_vital,
}


def run(cfg: ExperimentConfig, subcommand: str) -> RunManifest:
    """Execute one subcommand, write its outputs once, return the manifest."""
    start = time.monotonic()
    outputs: dict = {}
    info: dict = {}
    status = "ok"
    error = None
    try:
        cfg.validate()
        info = _DISPATCH[subcommand](cfg, outputs)
    except BudgetExceeded as exc:
        status, error = "budget-exceeded", str(exc)
        info = {"partial_count": exc.partial_count}
    except Indeterminate as exc:
        status, error = "budget-exceeded", str(exc)
    except GenerationFailed as exc:
        status, error = "generation-failed", str(exc)
    except (ValueError, SlgrowthError) as exc:
        status, error = "config-error", str(exc)
    manifest = RunManifest(
        version=__version__,
        subcommand=subcommand,
        config=cfg.to_dict(),
        status=status,
        wall_seconds=time.monotonic() - start,
        outputs=outputs,
        info=info,
        error=error,
    )
    if cfg.out and status == "ok":
        with open(cfg.out + ".manifest.json", "w", encoding="utf-8") as fh:
            fh.write(manifest.to_json() + "\n")
    return manifest


def _parse_int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slgrowth",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--config", help="JSON config file; flags override it")
    parser.add_argument("--n", type=int, help="matrix size (default 2)")
    parser.add_argument("--p", type=int, help="field modulus (odd prime > n)")
    parser.add_argument("--p-list", type=_parse_int_list,
                        help="comma-separated moduli for growth-curve sweeps")
    parser.add_argument("--generators", choices=("standard", "random"))
    parser.add_argument("--seed", type=int, help="global seed (default 0)")
    parser.add_argument("--count", type=int,
                        help="random generator count (default 2)")
    parser.add_argument("--radius", type=int,
                        help="word-ball radius for the working set (default 2)")
    parser.add_argument("--k", type=int, action="append", dest="k_list",
                        metavar="K", help="scan radius; repeatable")
    parser.add_argument("--delta", type=Fraction,
                        help="threshold exponent, rational in (0,1)")
    parser.add_argument("--budget-elems", type=int,
                        help=f"stored-element cap (default {DEFAULT_MAX_ELEMENTS})")
    parser.add_argument("--budget-secs", type=float,
                        help="wall-clock cap per expansion")
    parser.add_argument("--out", help="output file; stdout when omitted")
    parser.add_argument("--format", choices=("csv", "json"))
    parser.add_argument("--workers", type=int,
                        help="frontier partitions for expansion (default 1)")
    parser.add_argument("--trials", type=int,
                        help="trial count for lemma-check/energy (default 1000)")
    parser.add_argument("--size", type=int,
                        help="max sampled set size for energy (default 64)")
    return parser


_CONFIG_KEYS = {
    "n", "p", "p_list", "generators", "seed", "count", "radius", "k_list",
    "delta", "budget_elems", "budget_secs", "out", "format", "workers",
    "trials", "size",
}


def load_config(args: argparse.Namespace) -> ExperimentConfig:
    values: dict = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            loaded = json.load(fh)
        unknown = set(loaded) - _CONFIG_KEYS
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        values.update(loaded)
    for key in _CONFIG_KEYS:
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            values[key] = flag_value
    if "delta" in values:
        values["delta"] = Fraction(str(values["delta"]))
    cfg = ExperimentConfig(**values)
    cfg.validate()
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    manifest = run(cfg, args.subcommand)
    print(manifest.to_json())
    return _STATUS_EXIT.get(manifest.status, 1)


if __name__ == "__main__":
    sys.exit(main())
