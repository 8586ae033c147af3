"""Bounded verifiers for the identities and theorems, shared by the CLI and tests.

Each check takes explicit bounds and returns a :class:`CheckResult`.  Random
inputs come from ``random.Random(seed)`` so repeated runs are identical.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from . import exact_linalg as la
from . import integral_ops as ops
from . import symfunc
from .fock import FockState, FrobeniusModel, vacuum, zero
from .partitions import Partition, enumerate_multipartitions, enumerate_partitions

PRESETS = {
    "P2": FrobeniusModel("P2", ((1,),)),
    "P1xP1": FrobeniusModel("P1xP1", ((0, 1), (1, 0))),
    "P2-blown-up": FrobeniusModel("P2-blown-up", ((1, 0), (0, -1))),
}
PRESET_EXCEPTIONAL = {"P2-blown-up": 2}


@dataclass
class CheckResult:
    name: str
    bounds: dict
    passed: bool
    details: list[str] = field(default_factory=list)
    observed: dict = field(default_factory=dict)

    def line(self) -> str:
        bounds = " ".join(f"{k}={v}" for k, v in self.bounds.items())
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({'; '.join(self.details)})" if self.details else ""
        return f"{self.name} {bounds} {status}{extra}"


def check_pieri(max_n: int = 5, max_i: int = 4, model: FrobeniusModel | None = None) -> CheckResult:
    model = model or PRESETS["P1xP1"]
    failures = []
    for v in (model.alpha(1), model.alpha(1) + model.alpha(model.k)):
        for m in range(max_n + 1):
            for lam in enumerate_partitions(m):
                for i in range(1, max_i + 1):
                    if not ops.verify_pieri(lam, i, v):
                        failures.append(f"lam={list(lam)} i={i}")
    return CheckResult("pieri", {"max_n": max_n, "max_i": max_i, "model": model.name}, not failures, failures[:5])


def check_split(max_n: int = 5, model: FrobeniusModel | None = None) -> CheckResult:
    model = model or PRESETS["P1xP1"]
    v1, v2 = model.alpha(1), model.alpha(2)
    failures = [
        str(list(lam))
        for n in range(1, max_n + 1)
        for lam in enumerate_partitions(n)
        if not ops.verify_split(lam, v1, v2)
    ]
    return CheckResult("split", {"max_n": max_n, "model": model.name}, not failures, failures[:5])


def check_negate(max_n: int = 6, model: FrobeniusModel | None = None) -> CheckResult:
    model = model or PRESETS["P1xP1"]
    v = model.alpha(1)
    failures = []
    for n in range(1, max_n + 1):
        for lam in enumerate_partitions(n):
            try:
                coeffs = ops.negate_class(lam, v)
            except symfunc.IntegralityError as exc:
                failures.append(str(exc))
                continue
            if not all(isinstance(c, int) for c in coeffs.values()):
                failures.append(str(list(lam)))
    expected = {Partition((2,)): 1, Partition((1, 1)): 1}
    if max_n >= 2 and ops.negate_class((1, 1), v) != expected:
        failures.append("lam=[1,1] expansion differs from [L^(1,1)] + [L^(2)]")
    return CheckResult("negate", {"max_n": max_n}, not failures, failures[:5])


def check_unimod(max_n: int = 4, model: FrobeniusModel | None = None) -> CheckResult:
    model = model or PRESETS["P2"]
    dets = {n: ops.mid_gram_det(n, model) for n in range(1, max_n + 1)}
    failures = [f"n={n} det={d}" for n, d in dets.items() if abs(d) != 1]
    return CheckResult("unimod", {"max_n": max_n, "model": model.name}, not failures, failures[:5])


def check_forgotten(max_n: int = 10) -> CheckResult:
    failures = []
    for n in range(max_n + 1):
        for lam in enumerate_partitions(n):
            try:
                symfunc.forgotten(lam)
            except symfunc.IntegralityError:
                failures.append(str(list(lam)))
    return CheckResult("forgotten", {"max_n": max_n}, not failures, failures[:5])


def check_detTn(max_n: int = 8) -> CheckResult:
    failures = [f"n={n}" for n in range(max_n + 1) if not symfunc.verify_detTn(n)]
    failures += [f"gram n={n}" for n in range(max_n + 1) if abs(symfunc.monomial_gram_det(n)) != 1]
    return CheckResult("detTn", {"max_n": max_n}, not failures, failures[:5])


def check_sympower(max_n: int = 4, max_k: int = 3, samples: int = 3, seed: int = 0) -> CheckResult:
    failures, observed = [], {}
    for k in range(1, max_k + 1):
        for n in range(1, max_n + 1):
            c, constant = la.verify_sympower_det(k, n, samples, seed=seed)
            if not constant:
                failures.append(f"k={k} n={n} not constant")
            else:
                observed[f"c({n},{k})"] = la.format_rational(c)
    return CheckResult(
        "sympower", {"max_n": max_n, "max_k": max_k, "samples": samples, "seed": seed},
        not failures, failures[:5], observed,
    )


def check_mugram(max_n: int = 4, max_k: int = 2, samples: int = 3, seed: int = 0) -> CheckResult:
    failures = []
    for k in range(1, max_k + 1):
        for n in range(1, max_n + 1):
            for mu in enumerate_partitions(n):
                c, d, ok = la.verify_iden(k, mu, samples=samples, seed=seed)
                if not ok or d < 1:
                    failures.append(f"k={k} mu={list(mu)}")
    return CheckResult(
        "mugram", {"max_n": max_n, "max_k": max_k, "samples": samples, "seed": seed},
        not failures, failures[:5],
    )


def check_combid(max_n: int = 30, max_k: int = 10) -> CheckResult:
    failures = [
        f"n={n} k={k}"
        for n in range(max_n + 1)
        for k in range(2, max_k + 1)
        if not la.comb_identity(n, k)
    ]
    return CheckResult("combid", {"max_n": max_n, "max_k": max_k}, not failures, failures[:5])


def random_integral_state(model: FrobeniusModel, n: int, rng: random.Random, terms: int = 4) -> FockState:
    """Random integer combination of full-basis classes of degree n."""
    basis = ops.full_basis(n, model)
    state = zero(model)
    for label in rng.sample(basis.labels, min(terms, len(basis.labels))):
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        state = state + basis.classes[label] * c
    return state


def _components_integral(components: dict, model: FrobeniusModel, slot: int) -> bool:
    keep = [model.alpha(i) for i in range(1, model.k + 1) if i != slot]
    for comp in components.values():
        coords = ops.coordinates(comp, _restricted_basis(comp, model, keep))
        if any(c.denominator != 1 for c in coords):
            return False
    return True


def _restricted_basis(comp: FockState, model: FrobeniusModel, vectors) -> list[FockState]:
    d = comp.degree()
    if not vectors:
        return [vacuum(model)] if d == 0 else []
    return [ops.tuple_class(list(nus), model, vectors) for nus in enumerate_multipartitions(len(vectors), d)]


def check_blowup(max_n: int = 3, samples: int = 4, seed: int = 0, model: FrobeniusModel | None = None,
                 slot: int | None = None) -> CheckResult:
    model = model or PRESETS["P2-blown-up"]
    slot = slot or PRESET_EXCEPTIONAL.get(model.name)
    if slot is None:
        raise ValueError(f"model {model.name} has no exceptional slot")
    rng = random.Random(seed)
    failures = []
    for n in range(0, max_n + 1):
        for _ in range(samples):
            state = random_integral_state(model, n, rng)
            sectors = ops.sector_decompose(state)
            if ops.sector_recompose(sectors, model) != state:
                failures.append(f"sector round trip n={n}")
            comps = ops.blowup_decompose(state, slot)
            if ops.blowup_recompose(comps, model, slot) != state:
                failures.append(f"blow-up round trip n={n}")
            if not _components_integral(comps, model, slot):
                failures.append(f"non-integral component n={n}")
    return CheckResult(
        "blowup", {"max_n": max_n, "samples": samples, "seed": seed, "model": model.name},
        not failures, failures[:5],
    )


def check_lattice(max_n: int = 3, max_lam: int = 2, model: FrobeniusModel | None = None,
                  samples: int = 2, seed: int = 0) -> CheckResult:
    """m_{lam, alpha_i} maps integer combinations of the full basis to integer combinations."""
    model = model or PRESETS["P2"]
    rng = random.Random(seed)
    failures = []
    for n in range(0, max_n + 1):
        inputs = list(ops.full_basis(n, model).states())
        inputs += [random_integral_state(model, n, rng) for _ in range(samples)]
        for size in range(1, max_lam + 1):
            for lam in enumerate_partitions(size):
                for i in range(1, model.k + 1):
                    for state in inputs:
                        image = ops.m_operator(lam, model.alpha(i), state)
                        coords = ops.full_coordinates(image)
                        if any(c.denominator != 1 for c in coords.values()):
                            failures.append(f"n={n} lam={list(lam)} alpha_{i}")
                            break
    return CheckResult(
        "lattice", {"max_n": max_n, "max_lam": max_lam, "model": model.name}, not failures, failures[:5]
    )


CHECKS: dict[str, Callable[..., CheckResult]] = {
    "pieri": check_pieri,
    "split": check_split,
    "negate": check_negate,
    "unimod": check_unimod,
    "forgotten": check_forgotten,
    "detTn": check_detTn,
    "sympower": check_sympower,
    "mugram": check_mugram,
    "combid": check_combid,
    "blowup": check_blowup,
    "lattice": check_lattice,
}
