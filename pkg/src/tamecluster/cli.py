"""Command line driver: build a quiver, run verification suites, write a JSON report."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import crossval
from .denom import verify_distinct_dimvectors, verify_weak_denominator, with_window_growth
from .quiver import ExchangeMatrix, QuiverError, affine_profile, builtin_quiver, load_quiver_file
from .repcat import ClusterCategory, InternalInvariantError
from .seeds import format_word, parse_word
from .subfactor import UncoveredCase, classify_subfactor

CHECKS = ("dimvec", "denom", "subfactor", "crossval")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_INTERNAL = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    quiver: str
    words: list[tuple[int, ...]] = field(default_factory=list)
    depth: int = 5
    window: int = 10
    rng_seed: int = 0
    checks: tuple[str, ...] = CHECKS
    out: str | None = None
    csv_path: str | None = None
    num_words: int = 10
    max_length: int = 6
    timings: bool = False

    def to_dict(self) -> dict:
        return {
            "quiver": self.quiver,
            "words": [format_word(w) for w in self.words],
            "depth": self.depth,
            "window": self.window,
            "rngSeed": self.rng_seed,
            "checks": list(self.checks),
            "numWords": self.num_words,
            "maxLength": self.max_length,
        }


def load_quiver(source: str) -> ExchangeMatrix:
    """A builtin name such as ``A(2,1)`` or a path to a quiver text file."""
    path = Path(source)
    if path.is_file():
        return load_quiver_file(path)
    return builtin_quiver(source)


def random_words(rng: random.Random, n: int, count: int, max_length: int) -> list[tuple[int, ...]]:
    out = []
    for _ in range(count):
        word: list[int] = []
        for _ in range(rng.randint(1, max_length)):
            word.append(rng.choice([k for k in range(1, n + 1) if not word or k != word[-1]]))
        out.append(tuple(word))
    return out


def _suite(name: str, violations: list, counts: dict, status: str | None = None, **extra) -> dict:
    return {"name": name, "status": status or ("FAIL" if violations else "PASS"),
            "counts": counts, "violations": violations, **extra}


def _grown(fn, window: int) -> tuple:
    result, used = with_window_growth(fn, window)
    extra = {}
    if used != window:
        extra = {"windowUsed": used, "advice": f"complements left window {window}; re-run with --window {2 * used}"}
    return result, extra


def run_dimvec(cat, cfg: RunConfig, words) -> tuple[dict, list[dict]]:
    rep, extra = _grown(lambda W: verify_distinct_dimvectors(cat, words, W, quiver_name=cfg.quiver), cfg.window)
    return _suite("dimvec", rep.violations, rep.counts, **extra), rep.tables


def run_denom(cat, cfg: RunConfig, words) -> tuple[list[dict], list[dict]]:
    suites, tables = [], []
    for word in dict.fromkeys([(), *words]):
        rep, extra = _grown(lambda W: verify_weak_denominator(cat, word, cfg.depth, W, cfg.quiver), cfg.window)
        suites.append(_suite(f"denom[{format_word(word)}]", rep.violations, rep.counts, **extra))
        tables += rep.tables
    return suites, tables


def run_subfactor(cat, cfg: RunConfig) -> dict:
    entries, violations = [], []
    targets = [cat.P(i) for i in range(1, cat.n + 1)] + cat.regular_rigid()
    for Z in targets:
        try:
            rep = classify_subfactor(cat, Z, cfg.window)
        except UncoveredCase as e:
            entries.append({"deleted": Z.label, "status": "UNCOVERED", "reason": str(e)})
            continue
        entry = {"deleted": Z.label}
        window = cfg.window
        # a finite subfactor may spread over more tau-steps than the window; widen before judging
        for _ in range(3):
            if rep.status == "PASS" or not Z.is_transjective:
                break
            window = max(1, 2 * window)
            rep = classify_subfactor(cat, Z, window)
        if window != cfg.window:
            entry.update(windowUsed=window, advice=f"inventory not stable at window {cfg.window}; "
                                                   f"re-run with --window {window}")
        entry.update(status=rep.status, inventorySize=len(rep.inventory),
                     predictedRanks=rep.predicted_ranks, observedRanks=rep.observed_ranks)
        entries.append(entry)
        violations += [{"deleted": Z.label, **v} for v in rep.violations]
    counts = {s: sum(e["status"] == s for e in entries) for s in ("PASS", "FAIL", "UNCOVERED")}
    return _suite("subfactor", violations, counts, entries=entries)


def run_crossval(cat, cfg: RunConfig, words) -> dict:
    counts, violations = {}, []
    max_rank = max((t.rank for t in cat.tubes), default=1)
    checks = {
        "tubeOracle": lambda: crossval.tube_oracle(cat, min(6, 2 * max_rank)),
        "homNearMouth": lambda: crossval.hom_bound_near_mouth(cat),
        "homFromTopRigid": lambda: crossval.hom_from_top_rigid(cat),
        "twoCalabiYau": lambda: crossval.two_cy_symmetry(cat, cfg.window),
        "laurent": lambda: crossval.laurent_nonnegativity(cat, cfg.depth),
    }
    for name, fn in checks.items():
        n, bad = fn()
        counts[name] = n
        violations += [{"check": name, **b} for b in bad]
    pairs, n, bad = crossval.compatibility(cat, words, cfg.window)
    counts["exchangePairs"], counts["compatibility"] = pairs, n
    violations += [{"check": "compatibility", **b} for b in bad]
    return _suite("crossval", violations, counts)


def _atomic_write(path: str, text: str) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def _csv_text(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["word", "object", "dimVector", "symbolicDen", "categoricalDen"])
    for r in rows:
        w.writerow([r["word"], r["object"]] + [" ".join(map(str, r[k])) if r.get(k) is not None else ""
                                               for k in ("dimVector", "symbolicDen", "categoricalDen")])
    return buf.getvalue()


def run(cfg: RunConfig) -> tuple[int, dict]:
    try:
        B = load_quiver(cfg.quiver)
    except QuiverError as e:
        raise ConfigError(str(e)) from e
    if not (B.is_acyclic() and B.is_connected()):
        raise ConfigError("quiver must be connected and acyclic")
    try:
        affine_profile(B)
    except QuiverError as e:
        raise ConfigError(str(e)) from e
    for w in cfg.words:
        if any(not 1 <= k <= B.n for k in w):
            raise ConfigError(f"word {format_word(w)} uses a vertex outside 1..{B.n}")
    rng = random.Random(cfg.rng_seed)
    cat = ClusterCategory(B, rng=rng)
    words = cfg.words or random_words(rng, B.n, cfg.num_words, cfg.max_length)

    suites, tables = [], []
    for check in cfg.checks:
        start = time.perf_counter()
        if check == "dimvec":
            s, t = run_dimvec(cat, cfg, words)
            new, tables = [s], tables + t
        elif check == "denom":
            new, t = run_denom(cat, cfg, words)
            tables += t
        elif check == "subfactor":
            new = [run_subfactor(cat, cfg)]
        else:
            new = [run_crossval(cat, cfg, words)]
        elapsed = round((time.perf_counter() - start) * 1000) if cfg.timings else None
        for s in new:
            s["timingMs"] = elapsed
        suites += new

    report = {"config": {**cfg.to_dict(), "words": [format_word(w) for w in words]}, "suites": suites}
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if cfg.out:
        _atomic_write(cfg.out, text)
    if cfg.csv_path:
        _atomic_write(cfg.csv_path, _csv_text(tables))
    ok = all(s["status"] == "PASS" for s in suites)
    return (EXIT_OK if ok else EXIT_FAIL), report


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tamecluster",
                                description="Verify denominator and dimension-vector properties for tame cluster categories.")
    p.add_argument("--quiver", required=True, help="builtin name (A(p,q), D(n), E6, E7, E8) or quiver file")
    p.add_argument("--word", action="append", default=[], help="mutation word such as 1,3,2 (repeatable)")
    p.add_argument("--depth", type=int, default=5)
    p.add_argument("--window", type=int, default=10)
    p.add_argument("--rng", type=int, default=0, help="seed shared by word sampling and module construction")
    p.add_argument("--check", choices=[*CHECKS, "all"], default="all")
    p.add_argument("--num-words", type=int, default=10, help="random words drawn when no --word is given")
    p.add_argument("--max-length", type=int, default=6)
    p.add_argument("--out", help="JSON report path (printed to stdout when omitted)")
    p.add_argument("--csv", help="CSV path for dimension and denominator vector tables")
    p.add_argument("--timings", action="store_true", help="record wall-clock time per suite")
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    for name in ("depth", "window", "num_words"):
        if getattr(args, name) < 0:
            raise ConfigError(f"--{name.replace('_', '-')} must be nonnegative")
    if args.max_length < 1:
        raise ConfigError("--max-length must be positive")
    try:
        words = [parse_word(w) for w in args.word]
    except ValueError as e:
        raise ConfigError(f"bad word: {e}") from e
    return RunConfig(
        quiver=args.quiver, words=words, depth=args.depth, window=args.window, rng_seed=args.rng,
        checks=CHECKS if args.check == "all" else (args.check,), out=args.out, csv_path=args.csv,
        num_words=args.num_words, max_length=args.max_length, timings=args.timings,
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        code, report = run(cfg)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except InternalInvariantError as e:
        print(f"internal invariant violated: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    if cfg.out is None:
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        for s in report["suites"]:
            print(f"{s['name']}: {s['status']}")
    return code


if __name__ == "__main__":
    sys.exit(main())
