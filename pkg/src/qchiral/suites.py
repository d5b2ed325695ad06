"""Named verification suites and the run driver behind the CLI."""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable

from . import __version__
from .minors import RelationInstance, grassmannian
from .properties import Samples
from .textio import InstanceRecord, SuiteReport, format_atom, format_element

__all__ = ["SUITE_NAMES", "RunConfig", "RunReport", "run_suite", "run", "suite_instances", "parse_q", "reset_caches"]

SUITE_NAMES = (
    "manin-properties",
    "grassmann-cr",
    "plucker",
    "classical-plucker",
    "closure",
    "coaction",
    "coinvariants",
    "minkowski",
    "beta-iso",
    "classical-bigcell",
    "hopf-axioms",
    "cleaving",
    "coinvariant-generation",
)


def parse_q(text: str) -> Fraction | None:
    """``"symbolic"`` gives ``None``; anything else must be a nonzero rational."""
    text = text.strip()
    if text == "symbolic":
        return None
    try:
        q0 = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"q must be 'symbolic' or a rational number, got {text!r}") from None
    if q0 == 0:
        raise ValueError("q = 0 is not allowed")
    return q0


@dataclass(frozen=True)
class RunConfig:
    suites: tuple = SUITE_NAMES
    q: Fraction | None = None
    jobs: int = 1
    seed: int = 0
    samples: Samples = field(default_factory=Samples)

    @property
    def q_text(self) -> str:
        return "symbolic" if self.q is None else str(self.q)


# -- suite bodies --------------------------------------------------------------------


def _closure_instances(config: RunConfig) -> list[RelationInstance]:
    from .minors import straightening_closure, verify_cr_suites, verify_plucker_suite

    gr = grassmannian()
    entries = straightening_closure(verify_cr_suites(gr) + verify_plucker_suite(gr))
    out = []
    for e in entries:
        word = gr.free.gen(e.first) * gr.free.gen(e.second)
        name = f"{format_atom(e.first)}*{format_atom(e.second)}"
        if e.status == "uncovered":
            cert = {"machine_relation": e.machine_relation} if e.machine_relation else {"machine_relation": None}
            out.append(RelationInstance("closure", f"pair:{name}", word, word, word, 0, 0.0, "closure", cert, name,
                                        "no verified rewrite rule"))
        else:
            how = "normal order" if e.status == "normal" else e.relation
            out.append(RelationInstance("closure", f"pair:{name}", word, word, gr.free.zero(), 0, 0.0, "closure", None, name, how))
    return out


def _hopf(config: RunConfig) -> list[RelationInstance]:
    from .hopf_galois import verify_hopf_axioms

    return verify_hopf_axioms(False) + verify_hopf_axioms(True)


def _cleaving(config: RunConfig) -> list[RelationInstance]:
    from .hopf_galois import verify_cleaving

    n = config.samples.cleaving
    return verify_cleaving(n, config.seed, False) + verify_cleaving(n, config.seed, True)


def _lazy(module: str, name: str, *args) -> Callable[[RunConfig], list]:
    def body(config: RunConfig) -> list:
        import importlib

        fn = getattr(importlib.import_module(f"qchiral.{module}"), name)
        return fn(*args)

    return body


def _properties(config: RunConfig) -> list:
    from .properties import verify_engine_properties

    return verify_engine_properties(config.samples, config.seed)


def _minkowski(config: RunConfig) -> list:
    from .minkowski import verify_minkowski_cr, verify_twist_table

    return verify_twist_table() + verify_minkowski_cr()


def _coinvariants(config: RunConfig) -> list:
    from .coaction import coinvariance_check

    return coinvariance_check()


_BODIES: dict[str, Callable[[RunConfig], list]] = {
    "manin-properties": _properties,
    "grassmann-cr": _lazy("minors", "verify_cr_suites"),
    "plucker": _lazy("minors", "verify_plucker_suite"),
    "classical-plucker": _lazy("minors", "verify_classical_suite"),
    "closure": _closure_instances,
    "coaction": _lazy("coaction", "verify_coaction"),
    "coinvariants": _coinvariants,
    "minkowski": _minkowski,
    "beta-iso": _lazy("minkowski", "verify_beta_iso"),
    "classical-bigcell": _lazy("minkowski", "verify_classical_bigcell"),
    "hopf-axioms": _hopf,
    "cleaving": _cleaving,
    "coinvariant-generation": _lazy("hopf_galois", "verify_coinvariant_generation"),
}

# q-independent bookkeeping: specializing would change nothing meaningful
_SYMBOLIC_ONLY = {"closure"}


def suite_instances(name: str, config: RunConfig | None = None) -> list[RelationInstance]:
    if name not in _BODIES:
        raise KeyError(f"unknown suite {name!r}")
    return _BODIES[name](config or RunConfig())


def _record(inst: RelationInstance, q0: Fraction | None) -> InstanceRecord:
    rec = inst.record()
    if q0 is None or inst.suite in _SYMBOLIC_ONLY:
        return rec
    special = inst.residue.specialize(q0)
    cert = dict(rec.certificate or {})
    if not inst.residue.is_zero():
        cert["symbolic_residue"] = rec.residue
    return replace(rec, residue=format_element(special), passed=special.is_zero(), certificate=cert or None)


def reset_caches() -> None:
    """Empty every memo table, keeping the algebras themselves.

    Step counts measure the rewriting actually performed by a record, which
    depends on what earlier work left in the memo tables; starting each suite
    cold makes them a function of the suite alone, whatever the worker layout.
    Algebras and maps survive, so objects callers already hold stay valid.
    """
    from .algebra import clear_memos

    clear_memos()


def run_suite(name: str, config: RunConfig | None = None) -> SuiteReport:
    config = config or RunConfig()
    reset_caches()
    instances = suite_instances(name, config)
    report = SuiteReport(name, __version__, config.q_text)
    report.records = [_record(i, config.q) for i in instances]
    if config.q is not None and name not in _SYMBOLIC_ONLY:
        report.notes.append(f"residues normalized symbolically, then evaluated at q = {config.q}")
    return report


def _run_one(args) -> SuiteReport:
    name, config = args
    return run_suite(name, config)


@dataclass
class RunReport:
    config: RunConfig
    reports: list
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.reports)

    def to_json(self) -> dict:
        total = sum(len(r.records) for r in self.reports)
        passed = sum(r.passed for r in self.reports)
        return {
            "engine_version": __version__,
            "q": self.config.q_text,
            "seed": self.config.seed,
            "suites": [r.to_json() for r in self.reports],
            "summary": {"total": total, "passed": passed, "failed": total - passed},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False)

    def markdown(self) -> str:
        lines = [f"# qchiral {__version__} (q = {self.config.q_text})", "", "| suite | passed | failed |", "|---|---:|---:|"]
        for r in self.reports:
            lines.append(f"| {r.suite} | {r.passed} | {r.failed} |")
        for r in self.reports:
            bad = [rec for rec in r.records if not rec.passed]
            if not bad:
                continue
            lines += ["", f"## {r.suite}: {len(bad)} failing", ""]
            for rec in bad:
                lines.append(f"- `{rec.id}`: `{rec.lhs}` vs `{rec.rhs}`; residue `{rec.residue}`")
                if rec.certificate:
                    lines.append(f"  - certificate: `{json.dumps(rec.certificate, sort_keys=True)}`")
        return "\n".join(lines) + "\n"


def run(config: RunConfig) -> RunReport:
    """Run the selected suites; with ``jobs > 1`` suites fan out over processes."""
    t0 = time.perf_counter()
    names = list(config.suites)
    if config.jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            reports = list(pool.map(_run_one, [(n, config) for n in names]))
    else:
        reports = [run_suite(n, config) for n in names]
    return RunReport(config, reports, time.perf_counter() - t0)
