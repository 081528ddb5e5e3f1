"""Verification suites: parameter grids, task dispatch and report streaming.

A suite is a list of tasks; each task is a module-level function name plus
keyword arguments, so it can be shipped to worker processes. Reports come
back in task order regardless of completion order.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from . import expander, identities, numeric
from .index import TwoBlockIndex, two_block_grid

SUITES = ("lemmas", "finite", "gf-exact", "gf-numeric", "closed-forms", "expander", "two-one")

DEFAULT_Z = ("1/2", "1/3", "1/5", "1/7", "1/11")


@dataclass
class GridConfig:
    n_max: int | None = None
    sharp_n_max: int = 40
    c_max: int = 4
    weight_max: int = 14
    d_max: int | None = None
    a_max: int | None = None
    c_values: tuple[int, ...] | None = None
    z_samples: tuple[str, ...] = DEFAULT_Z
    terms: int = 10**6
    precision: int = 128
    tol: float | None = None
    truncations: tuple[int, ...] = (1, 2, 5, 13, 40)
    extra: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Task:
    fn: str
    kwargs: tuple

    def run(self) -> list:
        out = _TASKS[self.fn](**dict(self.kwargs))
        return out if isinstance(out, list) else [out]


def _task(fn: str, **kwargs) -> Task:
    return Task(fn, tuple(kwargs.items()))


# -- task bodies (module level so they pickle) ------------------------------


def _c4_all_n(a, c, trailing_one, n_max):
    t = TwoBlockIndex(a, c, trailing_one)
    return [identities.verify_c4(n, t) for n in range(1, n_max + 1)]


def _t1_all_n(c, z, n_max, rec_n_max, variants):
    z = [Fraction(x) for x in z]
    out = [identities.verify_t1(n, c, z) for n in range(1, n_max + 1)]
    out += [identities.check_recurrence(n, c, z) for n in range(1, rec_n_max + 1)]
    if variants:
        for trailing, forced in itertools.product((False, True), [None, *range(len(c) + 1)]):
            if not trailing and forced is None:
                continue
            out += [
                identities.verify_t1_variant(n, c, z, trailing, forced)
                for n in range(1, n_max + 1)
            ]
    return out


def _truncation(a, c, trailing_one, truncations):
    t = TwoBlockIndex(a, c, trailing_one)
    ch = expander.build_chain(t)
    comb = expander.expand_chain(ch)
    params = {"a": list(a), "c": list(c), "trailing_one": trailing_one}
    return [
        identities.CheckReport(
            "expander-truncation",
            {**params, "N": n},
            expander.evaluate_chain(ch, n),
            expander.evaluate_truncated(comb, n),
        )
        for n in truncations
    ]


def _formal(kind, a, b=None):
    if kind == "twos-three":
        t = TwoBlockIndex((a, b), (3,))
        ref = expander.twos_three_reference(a, b)
    elif kind == "twos-one":
        t = TwoBlockIndex((a, b), (1,))
        ref = expander.twos_one_reference(a, b)
    else:
        t = expander.two_one_shape(a)
        ref = expander.two_one_reference(a)
        return identities.CheckReport("two-one", {"a": list(a)}, expander.expand(t), ref)
    return identities.CheckReport(f"formal-{kind}", {"a": a, "b": b}, expander.expand(t), ref)


_TASKS = {
    "lemma21": identities.check_lemma21,
    "lemma22": identities.check_lemma22,
    "c4": _c4_all_n,
    "t1": _t1_all_n,
    "truncation": _truncation,
    "formal": _formal,
    "closed_forms": numeric.verify_closed_forms,
    "gf": numeric.verify_gf_numeric,
    "sine": numeric.verify_sine_product,
    "zagier": numeric.verify_zagier,
}


# -- grids ------------------------------------------------------------------


def lemma_tasks(n_max: int = 60, sharp_n_max: int = 40, c_max: int = 4) -> list[Task]:
    tasks = []
    for part in (1, 2):
        tasks += [_task("lemma21", n=n, l=l, part=part)
                  for n in range(1, n_max + 1) for l in range(n + 1)]
    tasks += [_task("lemma21", n=n, part=3) for n in range(2, n_max + 1)]
    tasks += [_task("lemma22", n=n, l=l, part=1)
              for n in range(1, n_max + 1) for l in range(1, n + 1)]
    tasks += [_task("lemma22", n=n, l=l, c=c, part=2)
              for n in range(1, sharp_n_max + 1) for l in range(1, n + 1)
              for c in range(c_max + 1)]
    return tasks


def finite_shapes(d_max=2, a_max=2, c_values=(1, 3, 4, 5), weight_max=14) -> list[TwoBlockIndex]:
    return two_block_grid(d_max, a_max, c_values, weight_max, convergent_only=True)


def finite_tasks(n_max=25, d_max=2, a_max=2, c_values=(1, 3, 4, 5), weight_max=14) -> list[Task]:
    return [
        _task("c4", a=t.a, c=t.c, trailing_one=t.trailing_one, n_max=n_max)
        for t in finite_shapes(d_max, a_max, c_values, weight_max)
    ]


def gf_exact_shapes(d_max=2, c_values=(1, 3, 4)) -> list[tuple[int, ...]]:
    out = []
    for d in range(d_max + 1):
        for c in itertools.product(c_values, repeat=d):
            if d >= 1 and c[0] < 3:
                continue
            out.append(c)
    return out


def gf_exact_tasks(n_max=20, d_max=2, c_values=(1, 3, 4), z_samples=DEFAULT_Z,
                   rec_n_max=15, variants=True) -> list[Task]:
    if len(z_samples) < d_max + 1:
        raise ValueError(f"need at least {d_max + 1} z samples")
    return [
        _task("t1", c=c, z=tuple(z_samples[: len(c) + 1]), n_max=n_max,
              rec_n_max=min(rec_n_max, n_max), variants=variants)
        for c in gf_exact_shapes(d_max, c_values)
    ]


GF_POINTS = (
    ("twos-threes", (0.5,)),
    ("twos-threes", (0.3, 0.2)),
    ("twos-threes", (0.3, 0.2, 0.4)),
    ("twos-ones", (0.25,)),
    ("twos-ones", (0.25, 0.25)),
    ("twos-ones", (0.25, 0.3, 0.1)),
    ("twos-ones-trailing", (0.25,)),
    ("twos-ones-trailing", (0.25, 0.25)),
    ("twos-ones-trailing", (0.25, 0.3, 0.1)),
    ("two-three-two-one", (0.2, 0.3, 0.4)),
    ("two-three-two-one-trailing", (0.3, 0.4)),
)


def gf_numeric_tasks(N=10**5, tol=1e-4, precision=128, zagier_max=3, zagier_N=None) -> list[Task]:
    tasks = [_task("gf", theorem=th, z=z, N=N, tol=tol, precision=precision)
             for th, z in GF_POINTS]
    tasks.append(_task("gf", theorem="general", z=(0.3, 0.2, 0.4), c=(3, 4), N=N,
                       tol=tol, precision=precision))
    tasks.append(_task("gf", theorem="general", z=(0.3, 0.2), c=(3,), trailing_one=True,
                       forced_block=1, N=N, tol=tol, precision=precision))
    tasks.append(_task("sine", z0=0.5, N=N, tol=tol, precision=precision))
    zN = N if zagier_N is None else zagier_N
    tasks += [_task("zagier", a=a, b=b, N=zN, tol=tol, precision=precision)
              for a in range(zagier_max + 1) for b in range(zagier_max + 1)]
    return tasks


def expander_tasks(d_max=2, a_max=2, c_values=(1, 3, 4, 5), weight_max=14,
                   truncations=(1, 2, 5, 13, 40), formal_max=4, twos_one_max=3) -> list[Task]:
    tasks = [
        _task("truncation", a=t.a, c=t.c, trailing_one=t.trailing_one, truncations=truncations)
        for t in finite_shapes(d_max, a_max, c_values, weight_max)
    ]
    tasks += [_task("formal", kind="twos-three", a=a, b=b)
              for a in range(formal_max + 1) for b in range(formal_max + 1)]
    tasks += [_task("formal", kind="twos-one", a=a, b=b)
              for a in range(1, twos_one_max + 1) for b in range(1, twos_one_max + 1)]
    return tasks


def two_one_tasks(d_max=3, a_max=2) -> list[Task]:
    tasks = []
    for d in range(1, d_max + 1):
        for a in itertools.product(range(a_max + 1), repeat=d):
            if a[0] >= 1:
                tasks.append(_task("formal", kind="two-one", a=a))
    return tasks


def build_tasks(suite: str, cfg: GridConfig) -> list[Task]:
    def pick(value, default):
        return default if value is None else value

    if suite == "lemmas":
        return lemma_tasks(pick(cfg.n_max, 60), cfg.sharp_n_max, cfg.c_max)
    if suite == "finite":
        return finite_tasks(pick(cfg.n_max, 25), pick(cfg.d_max, 2), pick(cfg.a_max, 2),
                            pick(cfg.c_values, (1, 3, 4, 5)), cfg.weight_max)
    if suite == "gf-exact":
        return gf_exact_tasks(pick(cfg.n_max, 20), pick(cfg.d_max, 2),
                              pick(cfg.c_values, (1, 3, 4)), cfg.z_samples)
    if suite == "gf-numeric":
        return gf_numeric_tasks(cfg.terms, pick(cfg.tol, 1e-4), cfg.precision,
                                pick(cfg.a_max, 3))
    if suite == "closed-forms":
        return [_task("closed_forms", max_m=pick(cfg.extra.get("max_m"), 4), N=cfg.terms,
                      precision=cfg.precision, tol=cfg.tol)]
    if suite == "expander":
        return expander_tasks(pick(cfg.d_max, 2), pick(cfg.a_max, 2),
                              pick(cfg.c_values, (1, 3, 4, 5)), cfg.weight_max, cfg.truncations)
    if suite == "two-one":
        return two_one_tasks(pick(cfg.d_max, 3), pick(cfg.a_max, 2))
    raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")


def _run(task: Task) -> list:
    return task.run()


def run_tasks(tasks: Sequence[Task], jobs: int = 1) -> Iterator:
    """Yield reports in task order; ``jobs > 1`` evaluates tasks in worker processes."""
    if jobs <= 1 or len(tasks) <= 1:
        for task in tasks:
            yield from task.run()
        return
    chunk = max(1, len(tasks) // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for reports in pool.map(_run, tasks, chunksize=chunk):
            yield from reports


def run_suite(suite: str, cfg: GridConfig | None = None, jobs: int = 1) -> Iterator:
    return run_tasks(build_tasks(suite, cfg or GridConfig()), jobs)
