"""Scaling suite: run serial and parallel solvers across sizes, emit CSV + report.

Records carry (work, depth) from the solver's meter plus wall time; only
wall time is allowed to vary between reruns with the same seeds, so the
CSV minus its wall_ns column is byte-reproducible.
"""

from __future__ import annotations

import random
import re
import time
from dataclasses import dataclass, field

from . import automata, derand, do1, s5
from .circuits import eval_layered, eval_serial, random_circuit
from .meters import CostMeter

FAMILIES = ("ca", "cvp", "s5", "do1", "derand")

CSV_HEADER = "family,size,solver,seed,work,depth,wall_ns,aux"


class BenchError(ValueError):
    """A case names a family/solver/parameter the harness cannot run."""


@dataclass
class BenchCase:
    family: str
    size: int
    solver: str
    seed: int
    params: dict = field(default_factory=dict)


@dataclass
class BenchRecord:
    family: str
    size: int
    solver: str
    seed: int
    work: int
    depth: int
    wall_ns: int
    aux: dict = field(default_factory=dict)


def _random_bits(seed, n: int) -> tuple[int, ...]:
    rng = random.Random(seed)
    return tuple(rng.randint(0, 1) for _ in range(n))


def _run_ca(case: BenchCase) -> tuple[CostMeter, dict]:
    rule = int(case.params.get("rule", 110))
    width = int(case.params.get("width", 64))
    tape = _random_bits(case.seed, width)
    meter = CostMeter()
    if case.solver == "plain":
        automata.evolve(tape, rule, case.size, meter)
        return meter, {"table_size": 8}
    if case.solver.startswith("compiled-k"):
        k = int(case.solver[len("compiled-k"):])
        automata.evolve_compiled(tape, rule, case.size, k, meter)
        return meter, {"table_size": 1 << (2 * k + 1)}
    raise BenchError(f"unsupported ca solver {case.solver!r}")


def _run_cvp(case: BenchCase) -> tuple[CostMeter, dict]:
    n_inputs = int(case.params.get("n_inputs", 4))
    fanin_max = int(case.params.get("fanin_max", 3))
    mfrac = float(case.params.get("majority_fraction", 0.2))
    circuit = random_circuit(case.seed, n_inputs, case.size, fanin_max, mfrac)
    bits = _random_bits(f"bits:{case.seed}", n_inputs)
    meter = CostMeter()
    if case.solver == "serial":
        values = eval_serial(circuit, bits, meter)
    elif case.solver == "layered":
        values = eval_layered(circuit, bits, meter)
    else:
        raise BenchError(f"unsupported cvp solver {case.solver!r}")
    return meter, {"out": values[circuit.output]}


def _run_s5(case: BenchCase) -> tuple[CostMeter, dict]:
    word = s5.random_word(case.seed, case.size)
    meter = CostMeter()
    if case.solver == "serial":
        product = s5.fold_serial(word, meter)
    elif case.solver == "tree":
        product = s5.fold_tree(word, meter)
    else:
        raise BenchError(f"unsupported s5 solver {case.solver!r}")
    return meter, {"product": s5.format_perm(product)}


def _run_do1(case: BenchCase) -> tuple[CostMeter, dict]:
    n_inputs = int(case.params.get("n_inputs", 6))
    fanin_max = int(case.params.get("fanin_max", 3))
    cfg = do1.random_alt_config(case.seed, n_inputs, case.size, fanin_max)
    meter = CostMeter()
    if case.solver == "serial":
        eval_serial(cfg.circuit, cfg.bits, meter)
        return meter, {"d1": do1.depth_of_one(cfg)}
    if case.solver == "probe":
        counting = do1.CountingOracle(do1.optimal_value)
        estimate = do1.extract_depth_of_one(cfg, counting)
        # probes all happen against independent states: one parallel round
        meter.charge(counting.calls, 1 if counting.calls else 0)
        return meter, {"d1": do1.depth_of_one(cfg), "estimate": estimate, "probes": counting.calls}
    raise BenchError(f"unsupported do1 solver {case.solver!r}")


def _run_derand(case: BenchCase) -> tuple[CostMeter, dict]:
    if case.solver != "search":
        raise BenchError(f"unsupported derand solver {case.solver!r}")
    p = float(case.params.get("p", 0.3))
    vocab = int(case.params.get("vocab", 2))
    delta_all = float(case.params.get("delta_all", 0.5))
    max_attempts = int(case.params.get("max_attempts", 16))
    decider = derand.SimulatedDecider(derand.word_parity, p)
    result = derand.find_universal_seeds(
        decider, case.size, vocab, delta_all, rng_seed=case.seed, max_attempts=max_attempts
    )
    meter = CostMeter()
    # every attempt checks the full input space with k decider calls apiece
    meter.charge(result.attempts * (vocab**case.size) * result.k, result.attempts)
    return meter, {"k": result.k, "attempts": result.attempts, "found": int(result.success)}


_RUNNERS = {
    "ca": _run_ca,
    "cvp": _run_cvp,
    "s5": _run_s5,
    "do1": _run_do1,
    "derand": _run_derand,
}


def _error_slug(exc: Exception) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", f"{type(exc).__name__}_{exc}").strip("_")


def run_case(case: BenchCase) -> BenchRecord:
    """Run one case; any failure becomes an error record instead of propagating."""
    start = time.perf_counter_ns()
    try:
        runner = _RUNNERS.get(case.family)
        if runner is None:
            raise BenchError(f"unsupported family {case.family!r}")
        meter, aux = runner(case)
    except Exception as exc:
        wall = time.perf_counter_ns() - start
        return BenchRecord(case.family, case.size, case.solver, case.seed, 0, 0, wall, {"error": _error_slug(exc)})
    wall = time.perf_counter_ns() - start
    return BenchRecord(case.family, case.size, case.solver, case.seed, meter.work, meter.depth, wall, aux)


def run_suite(cases: list[BenchCase]) -> list[BenchRecord]:
    """Run every case in order; error records keep the suite going."""
    return [run_case(c) for c in cases]


def _parse_scalar(s: str):
    """Canonical-form typing: a token is an int or float only if it reads
    back to the same text, so leading-zero strings like "01234" stay str."""
    try:
        if str(int(s)) == s:
            return int(s)
    except ValueError:
        pass
    try:
        if repr(float(s)) == s:
            return float(s)
    except ValueError:
        pass
    return s


def _format_aux_value(v) -> str:
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, str) and (v.startswith('"') or _parse_scalar(v) != v):
        return f'"{v}"'  # protect strings that would read back as numbers
    return str(v)


def _parse_aux_value(s: str):
    if len(s) >= 2 and s.startswith('"') and s.endswith('"'):
        return s[1:-1]
    return _parse_scalar(s)


def emit_csv(records: list[BenchRecord]) -> str:
    """Fixed-header CSV; aux is a semicolon-joined key=value list."""
    lines = [CSV_HEADER]
    for r in records:
        aux = ";".join(f"{k}={_format_aux_value(v)}" for k, v in r.aux.items())
        lines.append(f"{r.family},{r.size},{r.solver},{r.seed},{r.work},{r.depth},{r.wall_ns},{aux}")
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list[BenchRecord]:
    """Inverse of ``emit_csv``: every non-float field round-trips exactly."""
    lines = text.splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"bad CSV header: expected {CSV_HEADER!r}")
    records = []
    for lineno, line in enumerate(lines[1:], 2):
        parts = line.split(",")
        if len(parts) != 8:
            raise ValueError(f"line {lineno}: expected 8 fields, got {len(parts)}")
        family, size, solver, seed, work, depth, wall_ns, aux_text = parts
        aux = {}
        if aux_text:
            for item in aux_text.split(";"):
                key, _, value = item.partition("=")
                aux[key] = _parse_aux_value(value)
        records.append(
            BenchRecord(family, int(size), solver, int(seed), int(work), int(depth), int(wall_ns), aux)
        )
    return records


def _extra_columns(family: str) -> list[str]:
    if family == "ca":
        return ["table_size"]
    if family == "s5":
        return ["memorization"]
    return []


def _report_cell(family: str, column: str, r: BenchRecord) -> str:
    if family == "s5" and column == "memorization":
        return f"e^({r.size} ln 120) ~ 10^{s5.memorization_log10(r.size):.1f}"
    return str(r.aux.get(column, "-"))


def emit_report(records: list[BenchRecord]) -> str:
    """Plain-text depth-vs-size tables per family, built only from record fields.

    Regenerating the report from ``parse_csv(emit_csv(records))`` yields
    byte-identical text.  Families with no records still get a section.
    """
    by_family: dict[str, list[BenchRecord]] = {fam: [] for fam in FAMILIES}
    for r in records:
        by_family.setdefault(r.family, []).append(r)
    sections = ["work/depth scaling report", ""]
    for family, rows in by_family.items():
        sections.append(f"== family {family} ==")
        if not rows:
            sections.append("(no records)")
            sections.append("")
            continue
        header = ["size", "solver", "work", "depth"] + _extra_columns(family)
        table = [header]
        for r in rows:
            if "error" in r.aux:
                table.append([str(r.size), r.solver, "ERROR", r.aux["error"]] + ["-"] * len(_extra_columns(family)))
            else:
                base = [str(r.size), r.solver, str(r.work), str(r.depth)]
                table.append(base + [_report_cell(family, col, r) for col in _extra_columns(family)])
        widths = [max(len(row[i]) for row in table) for i in range(len(header))]
        for row in table:
            sections.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
        sections.append("")
    return "\n".join(sections)


def load_suite(doc: dict) -> list[BenchCase]:
    """Build cases from a suite JSON document: {"cases": [{family, size, solver, ...}]}."""
    if "cases" not in doc or not isinstance(doc["cases"], list):
        raise ValueError("suite config needs a 'cases' array")
    cases = []
    for idx, entry in enumerate(doc["cases"]):
        try:
            cases.append(
                BenchCase(
                    family=entry["family"],
                    size=int(entry["size"]),
                    solver=entry["solver"],
                    seed=int(entry.get("seed", 0)),
                    params=dict(entry.get("params", {})),
                )
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"bad suite case #{idx}: {exc}") from None
    return cases


def default_suite() -> list[BenchCase]:
    """The standard sweep used by the experiment scripts."""
    cases: list[BenchCase] = []
    for size in (16, 32, 64):
        for solver in ("plain", "compiled-k1", "compiled-k2", "compiled-k3"):
            cases.append(BenchCase("ca", size, solver, seed=101, params={"rule": 110}))
    for size in (8, 32, 128, 512):
        for solver in ("serial", "layered"):
            cases.append(BenchCase("cvp", size, solver, seed=202))
    for size in (16, 64, 256, 1024):
        for solver in ("serial", "tree"):
            cases.append(BenchCase("s5", size, solver, seed=303))
    for size in (8, 32, 128):
        for solver in ("serial", "probe"):
            cases.append(BenchCase("do1", size, solver, seed=404))
    for size in (4, 6, 8):
        cases.append(BenchCase("derand", size, "search", seed=505, params={"p": 0.3}))
    return cases
