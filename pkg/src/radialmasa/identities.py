"""Exact verification of the sandwich-component identities.

Three families of checks, each comparing a brute-force group-algebra
computation against a closed form, with exact rational equality:

* ``sandwich_inner``: the inner product of two projected sandwich
  components v_{n,m} = q_{n+m+1}(chi_n v chi_m) collapses to a single
  scaled copy of <v, v'>.
* ``sandwich_expansion``: chi_n v chi_m expands as a signed sum of
  sandwich components.
* ``pairing_cases``: <chi_n v chi_m, v> is given by a six-case formula.

The brute force side is always the oracle; the closed forms never feed
back into it.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from numbers import Rational

from .algebra import (
    GroupAlgebraElement,
    InversionEigenvector,
    chi,
    inner_product,
    multiply,
)


def fraction_str(value: Rational) -> str:
    """Render an exact rational as ``p/q``."""
    frac = Fraction(value)
    return f"{frac.numerator}/{frac.denominator}"


@dataclass
class CheckReport:
    """Outcome of one exact identity check."""

    lemma: str
    params: dict
    lhs: str
    rhs: str
    passed: bool
    elapsed_ms: float = 0.0

    def to_json_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "params": self.params,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "pass": self.passed,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


def _element_digest(x: GroupAlgebraElement) -> str:
    # Stable summary for element-valued sides; equal elements get equal digests.
    return f"{len(x)} terms, norm_sq={fraction_str(x.norm_sq())}"


def standard_test_vectors(rank: int) -> dict[int, list[InversionEigenvector]]:
    """Canonical test vectors per sign.

    For sign -1 the antisymmetric space has dimension ``rank`` and we take
    two generator differences.  For sign +1 the symmetric mean-zero space
    has dimension ``rank - 1``, so rank 2 admits only one vector up to
    scaling.
    """
    minus = [
        InversionEigenvector.from_letter_coeffs(rank, {1: 1, -1: -1}, -1),
        InversionEigenvector.from_letter_coeffs(rank, {2: 1, -2: -1}, -1),
    ]
    plus = [
        InversionEigenvector.from_letter_coeffs(rank, {1: 1, -1: 1, 2: -1, -2: -1}, 1),
    ]
    if rank >= 3:
        plus.append(
            InversionEigenvector.from_letter_coeffs(rank, {2: 1, -2: 1, 3: -1, -3: -1}, 1)
        )
    return {-1: minus, 1: plus}


# ----------------------------------------------------------------------
# closed forms
# ----------------------------------------------------------------------


def sandwich_inner_closed(
    v: InversionEigenvector,
    v2: InversionEigenvector,
    n: int,
    m: int,
    n2: int,
    m2: int,
) -> Fraction:
    """Closed form for <v_{n,m}, v'_{n2,m2}>: nonzero only for matching sign
    and matching total degree, with a geometric factor in |n - n2|."""
    rank = v.element.rank
    if v.sign != v2.sign or n + m != n2 + m2:
        return Fraction(0)
    b = 2 * rank - 1
    base = Fraction(inner_product(v.element, v2.element))
    return Fraction(b) ** (n + m) * Fraction(1, -v.sign * b) ** abs(n - n2) * base


def pairing_closed(sign: int, n: int, m: int, norm_sq: Rational) -> Fraction:
    """The six-case closed form for <chi_n v chi_m, v>."""
    norm_sq = Fraction(norm_sq)
    if n + m > 2 and abs(n - m) == 2:
        return Fraction(-sign) ** ((n + m) // 2) * sign * norm_sq
    if n + m > 2 and n == m:
        return 2 * Fraction(-sign) ** n * norm_sq
    if n + m == 2 and (n, m) != (1, 1):
        return -norm_sq
    if (n, m) == (1, 1):
        return -sign * norm_sq
    if (n, m) == (0, 0):
        return norm_sq
    return Fraction(0)


def sandwich_expansion_indices(sign: int, n: int, m: int) -> list[tuple[int, int, int]]:
    """Coefficient/index triples (coeff, r, s) expanding chi_n v chi_m over v_{r,s}.

    Components with a negative index are dropped (they are zero by
    convention).
    """
    out: list[tuple[int, int, int]] = [(1, n, m)]
    for coeff, r, s in ((-1, n - 2, m), (-1, n, m - 2), (-sign, n - 1, m - 1)):
        if r >= 0 and s >= 0:
            out.append((coeff, r, s))
    for k in range(2, max(n, m) + 2):
        outer = (-sign) ** k
        for coeff, r, s in (
            (sign, n - k - 1, m - k + 1),
            (sign, n - k + 1, m - k - 1),
            (2, n - k, m - k),
        ):
            if r >= 0 and s >= 0:
                out.append((outer * coeff, r, s))
    return out


# ----------------------------------------------------------------------
# brute-force verification
# ----------------------------------------------------------------------


class _SandwichCache:
    """Caches chi_n and sandwich components for the sweeps."""

    def __init__(self, rank: int, cap: int | None = None):
        self.rank = rank
        self.cap = cap
        self._chi: dict[int, GroupAlgebraElement] = {}
        self._components: dict[tuple[int, int, int], GroupAlgebraElement] = {}

    def chi(self, n: int) -> GroupAlgebraElement:
        if n not in self._chi:
            self._chi[n] = chi(n, self.rank, self.cap)
        return self._chi[n]

    def component(self, v: InversionEigenvector, key: int, r: int, s: int) -> GroupAlgebraElement:
        if r < 0 or s < 0:
            return GroupAlgebraElement.zero(self.rank)
        k = (key, r, s)
        if k not in self._components:
            left = multiply(self.chi(r), v.element, self.cap)
            full = multiply(left, self.chi(s), self.cap)
            self._components[k] = full.project_length(r + s + 1)
        return self._components[k]

    def triple_product(self, v: InversionEigenvector, n: int, m: int) -> GroupAlgebraElement:
        left = multiply(self.chi(n), v.element, self.cap)
        return multiply(left, self.chi(m), self.cap)


def verify_sandwich_inner(
    v: InversionEigenvector,
    v2: InversionEigenvector,
    n: int,
    m: int,
    n2: int,
    m2: int,
    cap: int | None = None,
    _cache: _SandwichCache | None = None,
) -> CheckReport:
    """Brute-force <v_{n,m}, v'_{n2,m2}> against its closed form."""
    t0 = time.perf_counter()
    cache = _cache or _SandwichCache(v.element.rank, cap)
    lhs = inner_product(cache.component(v, 0, n, m), cache.component(v2, 1, n2, m2))
    rhs = sandwich_inner_closed(v, v2, n, m, n2, m2)
    return CheckReport(
        lemma="sandwich_inner",
        params={"rank": v.element.rank, "sign": v.sign, "sign2": v2.sign,
                "n": n, "m": m, "n2": n2, "m2": m2},
        lhs=fraction_str(lhs),
        rhs=fraction_str(rhs),
        passed=lhs == rhs,
        elapsed_ms=(time.perf_counter() - t0) * 1000.0,
    )


def verify_sandwich_expansion(
    v: InversionEigenvector,
    n: int,
    m: int,
    cap: int | None = None,
    _cache: _SandwichCache | None = None,
) -> CheckReport:
    """Brute-force chi_n v chi_m against its expansion over sandwich components."""
    t0 = time.perf_counter()
    rank = v.element.rank
    cache = _cache or _SandwichCache(rank, cap)
    lhs = cache.triple_product(v, n, m)
    rhs = GroupAlgebraElement.zero(rank)
    for coeff, r, s in sandwich_expansion_indices(v.sign, n, m):
        rhs = rhs + cache.component(v, 0, r, s).scale(coeff)
    return CheckReport(
        lemma="sandwich_expansion",
        params={"rank": rank, "sign": v.sign, "n": n, "m": m},
        lhs=_element_digest(lhs),
        rhs=_element_digest(rhs),
        passed=lhs == rhs,
        elapsed_ms=(time.perf_counter() - t0) * 1000.0,
    )


def verify_pairing_cases(
    v: InversionEigenvector,
    n: int,
    m: int,
    cap: int | None = None,
    _cache: _SandwichCache | None = None,
) -> CheckReport:
    """Brute-force <chi_n v chi_m, v> against the six-case closed form."""
    t0 = time.perf_counter()
    cache = _cache or _SandwichCache(v.element.rank, cap)
    lhs = inner_product(cache.triple_product(v, n, m), v.element)
    rhs = pairing_closed(v.sign, n, m, v.norm_sq())
    return CheckReport(
        lemma="pairing_cases",
        params={"rank": v.element.rank, "sign": v.sign, "n": n, "m": m},
        lhs=fraction_str(lhs),
        rhs=fraction_str(rhs),
        passed=lhs == rhs,
        elapsed_ms=(time.perf_counter() - t0) * 1000.0,
    )


# ----------------------------------------------------------------------
# sweeps
# ----------------------------------------------------------------------


def degree_pairs(max_total: int) -> list[tuple[int, int]]:
    """All (n, m) with n, m >= 0 and n + m <= max_total."""
    return [(n, m) for total in range(max_total + 1) for n in range(total + 1)
            for m in (total - n,)]


def all_test_vectors(rank: int) -> list[InversionEigenvector]:
    return [v for vs in standard_test_vectors(rank).values() for v in vs]


def inner_block(
    rank: int,
    max_total: int,
    vec_i: int,
    vec_j: int,
    cap: int | None = None,
    _cache: _SandwichCache | None = None,
) -> list[CheckReport]:
    """Inner-product checks for one ordered pair of test vectors; an
    independent unit of work for the sweep."""
    cache = _cache or _SandwichCache(rank, cap)
    vectors = all_test_vectors(rank)
    v, v2 = vectors[vec_i], vectors[vec_j]
    pairs = degree_pairs(max_total)
    reports = []
    for (n, m), (n2, m2) in product(pairs, repeat=2):
        t0 = time.perf_counter()
        lhs = inner_product(cache.component(v, vec_i, n, m), cache.component(v2, vec_j, n2, m2))
        rhs = sandwich_inner_closed(v, v2, n, m, n2, m2)
        reports.append(
            CheckReport(
                lemma="sandwich_inner",
                params={"rank": rank, "sign": v.sign, "sign2": v2.sign,
                        "vec": vec_i, "vec2": vec_j, "n": n, "m": m, "n2": n2, "m2": m2},
                lhs=fraction_str(lhs),
                rhs=fraction_str(rhs),
                passed=lhs == rhs,
                elapsed_ms=(time.perf_counter() - t0) * 1000.0,
            )
        )
    return reports


def expansion_block(
    rank: int,
    max_total: int,
    vec_i: int,
    cap: int | None = None,
    _cache: _SandwichCache | None = None,
) -> list[CheckReport]:
    """Expansion checks for one test vector."""
    cache = _cache or _SandwichCache(rank, cap)
    v = all_test_vectors(rank)[vec_i]
    reports = []
    for n, m in degree_pairs(max_total):
        t0 = time.perf_counter()
        lhs = cache.triple_product(v, n, m)
        rhs = GroupAlgebraElement.zero(rank)
        for coeff, r, s in sandwich_expansion_indices(v.sign, n, m):
            rhs = rhs + cache.component(v, vec_i, r, s).scale(coeff)
        reports.append(
            CheckReport(
                lemma="sandwich_expansion",
                params={"rank": rank, "sign": v.sign, "vec": vec_i, "n": n, "m": m},
                lhs=_element_digest(lhs),
                rhs=_element_digest(rhs),
                passed=lhs == rhs,
                elapsed_ms=(time.perf_counter() - t0) * 1000.0,
            )
        )
    return reports


def pairing_block(
    rank: int,
    max_total: int,
    vec_i: int,
    cap: int | None = None,
    _cache: _SandwichCache | None = None,
) -> list[CheckReport]:
    """Six-case pairing checks for one test vector."""
    cache = _cache or _SandwichCache(rank, cap)
    v = all_test_vectors(rank)[vec_i]
    reports = []
    for n, m in degree_pairs(max_total):
        t0 = time.perf_counter()
        lhs = inner_product(cache.triple_product(v, n, m), v.element)
        rhs = pairing_closed(v.sign, n, m, v.norm_sq())
        reports.append(
            CheckReport(
                lemma="pairing_cases",
                params={"rank": rank, "sign": v.sign, "vec": vec_i, "n": n, "m": m},
                lhs=fraction_str(lhs),
                rhs=fraction_str(rhs),
                passed=lhs == rhs,
                elapsed_ms=(time.perf_counter() - t0) * 1000.0,
            )
        )
    return reports


def sweep_tasks(rank: int, max_total: int = 6, families: tuple[str, ...] = (
        "sandwich_inner", "sandwich_expansion", "pairing_cases")) -> list[tuple]:
    """Independent task descriptors covering a full sweep; each one is a
    pure function call suitable for a worker pool."""
    n_vec = len(all_test_vectors(rank))
    tasks: list[tuple] = []
    if "sandwich_inner" in families:
        for i in range(n_vec):
            for j in range(n_vec):
                tasks.append(("sandwich_inner", rank, max_total, i, j))
    if "sandwich_expansion" in families:
        for i in range(n_vec):
            tasks.append(("sandwich_expansion", rank, max_total, i))
    if "pairing_cases" in families:
        for i in range(n_vec):
            tasks.append(("pairing_cases", rank, max_total, i))
    return tasks


def run_sweep_task(task: tuple, cap: int | None = None,
                   _cache: _SandwichCache | None = None) -> list[CheckReport]:
    kind = task[0]
    if kind == "sandwich_inner":
        _, rank, max_total, i, j = task
        return inner_block(rank, max_total, i, j, cap, _cache)
    if kind == "sandwich_expansion":
        _, rank, max_total, i = task
        return expansion_block(rank, max_total, i, cap, _cache)
    if kind == "pairing_cases":
        _, rank, max_total, i = task
        return pairing_block(rank, max_total, i, cap, _cache)
    raise ValueError(f"unknown task kind {kind!r}")


def sweep_sandwich_inner(
    rank: int, max_total: int = 6, cap: int | None = None
) -> list[CheckReport]:
    """All inner-product checks over vector pairs and degree pairs."""
    cache = _SandwichCache(rank, cap)
    n_vec = len(all_test_vectors(rank))
    reports = []
    for i in range(n_vec):
        for j in range(n_vec):
            reports.extend(inner_block(rank, max_total, i, j, cap, _cache=cache))
    return reports


def sweep_sandwich_expansion(
    rank: int, max_total: int = 6, cap: int | None = None
) -> list[CheckReport]:
    cache = _SandwichCache(rank, cap)
    reports = []
    for i in range(len(all_test_vectors(rank))):
        reports.extend(expansion_block(rank, max_total, i, cap, _cache=cache))
    return reports


def sweep_pairing_cases(
    rank: int, max_total: int = 6, cap: int | None = None
) -> list[CheckReport]:
    cache = _SandwichCache(rank, cap)
    reports = []
    for i in range(len(all_test_vectors(rank))):
        reports.extend(pairing_block(rank, max_total, i, cap, _cache=cache))
    return reports


def run_identity_sweep(
    rank: int,
    max_total: int = 6,
    cap: int | None = None,
    families: tuple[str, ...] = ("sandwich_inner", "sandwich_expansion", "pairing_cases"),
    perturb: bool = False,
) -> list[CheckReport]:
    """Run the requested check families; ``perturb`` flips one expected value
    so harnesses can prove they detect failures."""
    reports: list[CheckReport] = []
    if "sandwich_inner" in families:
        reports.extend(sweep_sandwich_inner(rank, max_total, cap))
    if "sandwich_expansion" in families:
        reports.extend(sweep_sandwich_expansion(rank, max_total, cap))
    if "pairing_cases" in families:
        reports.extend(sweep_pairing_cases(rank, max_total, cap))
    if perturb and reports:
        victim = reports[0]
        victim.rhs = victim.rhs + " (perturbed)"
        victim.passed = False
    return reports
