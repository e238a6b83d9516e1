"""Build the concrete instance and run every check against it.

:func:`run_full_verification` executes the checks in a fixed order and
collects them into a :class:`VerificationReport`.  A check that raises is
recorded as failed with the exception text as evidence; the run always
completes.  Random sampling is seeded per check (``"<seed>:<check id>"``)
so a report is a deterministic function of its seed and parameters.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from . import __version__
from .construction import (
    A,
    B,
    P_EXPANDED,
    standard_derivation,
    standard_relation,
    standard_subring,
    subring_generators,
)
from .derivations import Derivation
from .kernel import (
    InvariantError,
    claim_check,
    kernel_basis,
    kernel_membership_via_coordinates,
    kernel_span_oracle,
    obstruction_certificate,
    same_span,
    span_rank,
)
from .poly import Poly, T, X, Y
from .rings import ExtElem, ExtRingSpec, SubringSpec
from . import sampling

REPORT_SCHEMA_VERSION = 1
EXPECTED_LND_INDICES = [1, 1, 2, 2, 1]


@dataclass(frozen=True, eq=False)
class PaperInstance:
    ring: ExtRingSpec
    sub: SubringSpec
    D: Derivation
    generators: tuple[ExtElem, ...]


def make_instance(
    q: Poly | None = None, images: Mapping[str, object] | None = None
) -> PaperInstance:
    """Instance with optional overrides; nothing is checked here."""
    ring = ExtRingSpec(standard_relation() if q is None else q)
    D = standard_derivation(ring) if images is None else Derivation.from_images(ring, images)
    return PaperInstance(ring, standard_subring(), D, tuple(subring_generators(ring)))


def build_paper_instance() -> PaperInstance:
    inst = make_instance()
    if inst.ring.q != T**8 * P_EXPANDED**2 + 1:
        raise InvariantError(f"relation is {inst.ring.q}, expected T^8*P^2 + 1")
    if A**3 != B**2:
        raise InvariantError("a^3 != b^2 under a = T^2, b = T^3")
    if not inst.D.check_well_defined():
        raise InvariantError("derivation does not preserve the relation")
    if not inst.D.check_preserves_subring(inst.sub, inst.generators):
        raise InvariantError("derivation leaves the subring")
    lnd = inst.D.is_lnd(inst.generators, 10)
    if lnd.indices != EXPECTED_LND_INDICES:
        raise InvariantError(f"nilpotency indices {lnd.indices}, expected {EXPECTED_LND_INDICES}")
    return inst


# -- report types ---------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    id: str
    statement: str
    passed: bool
    evidence: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "statement": self.statement,
            "status": "pass" if self.passed else "fail",
            "evidence": self.evidence,
        }


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...]
    seed: int
    params: dict
    instance: dict

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, check_id: str) -> CheckResult:
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)

    def to_dict(self) -> dict:
        n_pass = sum(c.passed for c in self.checks)
        return {
            "schema": "lndkernel.report",
            "schema_version": REPORT_SCHEMA_VERSION,
            "engine_version": __version__,
            "seed": self.seed,
            "params": self.params,
            "instance": self.instance,
            "status": "passed" if self.passed else "failed",
            "summary": {
                "total": len(self.checks),
                "passed": n_pass,
                "failed": len(self.checks) - n_pass,
            },
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        lines = [
            f"{'PASS' if c.passed else 'FAIL'} {c.id}: {c.statement}" for c in self.checks
        ]
        d = self.to_dict()["summary"]
        lines.append(
            f"{d['passed']}/{d['total']} checks passed"
            f" (seed {self.seed}): {'OK' if self.passed else 'FAILED'}"
        )
        return "\n".join(lines) + "\n"


def _run(check_id: str, statement: str, fn: Callable[[], tuple[bool, dict]]) -> CheckResult:
    try:
        ok, evidence = fn()
    except Exception as exc:  # a crashing check is a failed check
        return CheckResult(check_id, statement, False, {"error": f"{type(exc).__name__}: {exc}"})
    return CheckResult(check_id, statement, bool(ok), evidence)


def _p_power(k: int) -> str:
    return "P" if k == 1 else f"P^{k}"


def _rng(seed: int, check_id: str) -> random.Random:
    return random.Random(f"{seed}:{check_id}")


# -- individual suites ------------------------------------------------------------

def verify_lemma_unit(inst: PaperInstance) -> list[CheckResult]:
    r, D = inst.ring, inst.D

    def unit_identity():
        u = r.z - r.elem(T**4 * X + T**5 * Y)
        v = r.z + r.elem(T**4 * X + T**5 * Y)
        prod = u * v
        return prod == r.one, {"product": str(prod)}

    def conclusions():
        images = {
            "z": D.apply(r.z),
            "T^2": D.apply(r.elem(A)),
            "T^3": D.apply(r.elem(B)),
            "T^2*X + T^3*Y": D.apply(r.elem(A * X + B * Y)),
        }
        return all(x.is_zero() for x in images.values()), {
            k: str(v) for k, v in images.items()
        }

    return [
        _run("unit.identity", "(z - T^4*X - T^5*Y)*(z + T^4*X + T^5*Y) = 1 in B", unit_identity),
        _run(
            "unit.kernel-conclusions",
            "D annihilates z, a = T^2, b = T^3 and a*X + b*Y",
            conclusions,
        ),
    ]


def verify_lemma_extra_instances(
    inst: PaperInstance, seed: int = 0, samples: int = 100, max_iter: int = 10
) -> list[CheckResult]:
    if samples < 1:
        raise ValueError("samples must be at least 1")
    r, D = inst.ring, inst.D

    def units():
        rng = _rng(seed, "extra.units")
        u, v = sampling.kernel_unit(r, -1), sampling.kernel_unit(r, +1)
        bad = []
        for _ in range(samples):
            i, j = rng.randint(0, 3), rng.randint(0, 3)
            c = sampling.random_rat(rng)
            w = u**i * v**j * c
            w_inv = v**i * u**j * (1 / c)
            if w * w_inv != r.one or not D.in_kernel(w):
                bad.append(f"c={c}, i={i}, j={j}")
        base = D.apply(u)
        return not bad and base.is_zero(), {
            "D(z - T^4*P)": str(base),
            "samples": samples,
            "failures": bad[:5],
        }

    def products():
        rng = _rng(seed, "extra.products")
        bad = []
        for _ in range(samples):
            a = sampling.random_kernel_element(rng, r)
            b = sampling.random_nonzero_element(rng, r)
            while D.in_kernel(b):
                b = sampling.random_nonzero_element(rng, r)
            dab = D.apply(a * b)
            if dab != a * D.apply(b) or dab.is_zero():
                bad.append(str(a))
        example = D.apply(r.elem(T**2 * X))
        return not bad and example == r.elem(T**5), {
            "D(T^2*X)": str(example),
            "samples": samples,
            "failures": bad[:5],
        }

    def scaled():
        rng = _rng(seed, "extra.scaled-lnd")
        gens = inst.generators
        bad_kernel, bad_other = [], []
        for _ in range(samples):
            f = sampling.random_kernel_element(rng, r)
            # iterating f*D for f outside ker D blows up; test membership first
            if not D.in_kernel(f) or not D.scaled(f).is_lnd(gens, max_iter):
                bad_kernel.append(str(f))
        for _ in range(samples):
            exps = {"T": rng.randint(0, 2), "X": rng.randint(0, 2), "Y": rng.randint(0, 2)}
            if exps["X"] + exps["Y"] == 0:
                exps["X"] = 1
            f = r.elem(Poly.monomial(sampling.random_rat(rng), **exps))
            if D.in_kernel(f) or D.scaled(f).is_lnd(gens, max_iter):
                bad_other.append(str(f))
        xd = D.scaled(r.elem(X))
        report = xd.nilpotency_index(r.elem(Y), max_iter)
        expected = [r.elem(-(T ** (2 + 3 * n)) * X) for n in range(max_iter)]
        chain_ok = report.exceeded and list(report.iterates[1:]) == expected
        ok = chain_ok and not bad_kernel and not bad_other
        return ok, {
            "X*D on Y": report.to_dict(),
            "kernel_multipliers_lnd": samples - len(bad_kernel),
            "non_kernel_multipliers_exceeded": samples - len(bad_other),
            "failures": (bad_kernel + bad_other)[:5],
        }

    return [
        _run("extra.units", "D kills units: z - T^4*P and its powers and multiples", units),
        _run(
            "extra.products",
            "for D(a) = 0 and D(b) != 0 with a != 0: D(a*b) = a*D(b) != 0",
            products,
        ),
        _run(
            "extra.scaled-lnd",
            "f*D is locally nilpotent for kernel f and exceeds the budget for f = X",
            scaled,
        ),
    ]


def run_full_verification(
    seed: int = 0,
    *,
    instance: PaperInstance | None = None,
    modulus: int = 4,
    obstruction_ds: tuple[int, ...] = (1, 2, 3),
    max_iter: int = 10,
    equivalence_samples: int = 1000,
    property_samples: int = 100,
    gap_samples: int = 500,
    claim_samples: int = 200,
    basis_bounds: tuple[int, int] = (6, 8),
    oracle_bounds: tuple[int, int] = (3, 5),
) -> VerificationReport:
    inst = instance or make_instance()
    r, sub, D, gens = inst.ring, inst.sub, inst.D, inst.generators
    results: list[CheckResult] = []

    def relation():
        expected = T**8 * P_EXPANDED**2 + 1
        return r.q == expected and A**3 == B**2, {
            "q": str(r.q),
            "a^3": str(A**3),
            "b^2": str(B**2),
        }

    results.append(
        _run("construction.relation", "z^2 = T^8*(X + T*Y)^2 + 1 and a^3 = b^2", relation)
    )
    results.append(
        _run(
            "construction.well-defined",
            "2*z*D(z) = D(q), so D descends to B",
            lambda: (D.check_well_defined(), {"D(q)": str(D.apply(r.elem(r.q)))}),
        )
    )

    def preserves():
        images = {str(g): D.apply(g) for g in gens}
        return D.check_preserves_subring(sub, gens), {
            k: {"image": str(v), "in_S": sub.contains(v)} for k, v in images.items()
        }

    results.append(
        _run("construction.preserves-subring", "D maps a, b, X, Y, z into S", preserves)
    )

    def lnd_table():
        check = D.is_lnd(gens, max_iter)
        return bool(check) and check.indices == EXPECTED_LND_INDICES, {
            "indices": ["exceeded" if i is None else i for i in check.indices],
            "reports": [rep.to_dict() for rep in check.reports],
        }

    results.append(
        _run("lnd.table", "D is locally nilpotent on a, b, X, Y, z with indices 1,1,2,2,1", lnd_table)
    )
    results.extend(verify_lemma_unit(inst))

    def valuation_gap():
        rng = _rng(seed, "valuation.gap")
        seen = {}
        for _ in range(gap_samples):
            v = sub.valuation_refine(sampling.random_subring_element(rng, r, sub))
            seen[v] = seen.get(v, 0) + 1
        return 1 not in seen, {"samples": gap_samples, "valuations": {str(k): n for k, n in sorted(seen.items())}}

    results.append(
        _run("valuation.gap", "no nonzero element of S has T-valuation 1", valuation_gap)
    )

    def divisibility():
        dx, dy = D.apply(r.elem(X)), D.apply(r.elem(Y))
        dp = D.apply(r.elem(P_EXPANDED))
        ok = dx.valuation() >= 3 and dy.valuation() >= 2 and dx == -(r.elem(T) * dy) and dp.is_zero()
        return ok, {
            "D(X)": str(dx),
            "D(Y)": str(dy),
            "D(X + T*Y)": str(dp),
            "T-valuation D(X)": str(dx.valuation()),
            "T-valuation D(Y)": str(dy.valuation()),
        }

    results.append(
        _run(
            "valuation.divisibility",
            "D(X) = -T*D(Y), T^3 | D(X), T^2 | D(Y) and D(X + T*Y) = 0",
            divisibility,
        )
    )

    def equivalence():
        rng = _rng(seed, "kernel.equivalence")
        mismatches = []
        in_kernel = 0
        for _ in range(equivalence_samples):
            x = sampling.random_equivalence_sample(rng, r)
            a = D.in_kernel(x)
            b = kernel_membership_via_coordinates(x)
            in_kernel += a
            if a != b:
                mismatches.append(str(x))
        return not mismatches, {
            "samples": equivalence_samples,
            "in_kernel": in_kernel,
            "mismatches": len(mismatches),
            "first_mismatches": mismatches[:3],
        }

    results.append(
        _run(
            "kernel.equivalence",
            "D(x) = 0 exactly when x lies in Q[T, z, X + T*Y] (sampled)",
            equivalence,
        )
    )

    def basis_check():
        big = kernel_basis(sub, *basis_bounds, D)
        d_xy, d_t = oracle_bounds
        small = kernel_basis(sub, d_xy, d_t, D)
        in_box = [m for m in small.monomials if m.m + m.k <= d_t]
        oracle = kernel_span_oracle(D, sub, d_t, d_xy)
        elems = [m.expand(r) for m in in_box]
        ok = same_span(oracle, elems)
        return ok, {
            "basis_bounds": list(basis_bounds),
            "basis_size": len(big.monomials),
            "oracle_bounds": {"t_exponent": d_t, "xy_degree": d_xy},
            "oracle_dimension": len(oracle),
            "basis_in_box": len(in_box),
            "joint_rank": span_rank(oracle + elems),
        }

    results.append(
        _run(
            "kernel.basis",
            "kernel monomials T^m*P^k*z^e in S span the brute-force kernel of D on S",
            basis_check,
        )
    )

    def claim_sweep():
        basis = kernel_basis(sub, *basis_bounds, D)
        elems = basis.elements(r)
        bad = [str(m) for m, x in zip(basis.monomials, elems) if not claim_check(x, D, sub)]
        rng = _rng(seed, "claim.sweep")
        for _ in range(claim_samples):
            x = sampling.random_subring_kernel_element(rng, r, elems)
            if not claim_check(x, D, sub):
                bad.append(str(x))
        return not bad, {
            "basis_elements": len(elems),
            "random_combinations": claim_samples,
            "counterexamples": bad[:5],
        }

    results.append(
        _run(
            "claim.sweep",
            "kernel elements of S outside Q[T, z] lie in (T^2, T^3)S",
            claim_sweep,
        )
    )

    for d in obstruction_ds:
        def obstruct(d=d):
            cert = obstruction_certificate(d, modulus, D=D, sub=sub)
            ok = cert.verdict == "infeasible" and cert.validate()
            support = [
                cert.row_labels[i] for i, v in enumerate(cert.witness or ()) if v
            ]
            return ok, {
                "target": str(cert.target),
                "verdict": cert.verdict,
                "rows": len(cert.row_labels),
                "cols": len(cert.col_labels),
                "rank": cert.result.rank,
                "witness_support": support,
            }

        results.append(
            _run(
                f"obstruction.d{d}",
                f"T^2*{_p_power(d + 1)} is not generated mod T^{modulus} by kernel elements of X,Y-degree <= {d}",
                obstruct,
            )
        )

        def control(d=d):
            target = r.elem(T**2 * P_EXPANDED**d)
            cert = obstruction_certificate(d, modulus, target=target, D=D, sub=sub)
            sol = cert.solution or ()
            used = [cert.col_labels[j] for j, v in enumerate(sol) if v]
            return cert.verdict == "feasible" and cert.validate(), {
                "target": str(target),
                "verdict": cert.verdict,
                "solution_support": used,
            }

        results.append(
            _run(
                f"obstruction.control.d{d}",
                f"positive control: T^2*{_p_power(d)} is reachable once it is a generator",
                control,
            )
        )

    results.extend(verify_lemma_extra_instances(inst, seed, property_samples, max_iter))

    def exp_check():
        rng = _rng(seed, "exp.automorphism")
        neg = -D
        bad = []
        for _ in range(property_samples):
            x = sampling.random_element(rng, r)
            y = sampling.random_element(rng, r)
            if D.exp(x * y) != D.exp(x) * D.exp(y):
                bad.append(f"multiplicativity at {x}")
            if neg.exp(D.exp(x)) != x:
                bad.append(f"inverse at {x}")
        ex, ey = D.exp(r.elem(X)), D.exp(r.elem(Y))
        ok = not bad and ex == r.elem(X + T**3) and ey == r.elem(Y - T**2)
        return ok, {"exp(D)(X)": str(ex), "exp(D)(Y)": str(ey), "samples": property_samples, "failures": bad[:3]}

    results.append(
        _run(
            "exp.automorphism",
            "exp(D) is multiplicative with inverse exp(-D)",
            exp_check,
        )
    )

    params = {
        "modulus": modulus,
        "obstruction_ds": list(obstruction_ds),
        "max_iter": max_iter,
        "equivalence_samples": equivalence_samples,
        "property_samples": property_samples,
        "gap_samples": gap_samples,
        "claim_samples": claim_samples,
        "basis_bounds": list(basis_bounds),
        "oracle_bounds": list(oracle_bounds),
    }
    instance_desc = {
        "q": str(r.q),
        "derivation": {v: str(D.image(v)) for v in (*r.base_vars, "z")},
        "subring": {"gap_var": sub.gap_var, "generators": list(sub.generators)},
    }
    results.sort(key=lambda c: c.id)
    return VerificationReport(tuple(results), seed, params, instance_desc)
