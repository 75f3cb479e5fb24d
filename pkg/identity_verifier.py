#!/usr/bin/env python3
# identity_verifier.py
import logging
from collections import Counter
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from arith import LamrootError, factorize, lambda_root_density
from chargroup import (
    CharSubgroupG,
    cyclic_coefficient,
    enumerate_G,
    gamma_values_by_characters,
    induced_periodicity_check,
    order_census_expected,
)
from events import emitter, EVENT_SUITE_START, EVENT_SUITE_END, EVENT_VIOLATION
from lambda_roots import count_lambda_roots, gamma_direct

logger = logging.getLogger("lamroot.verify")

SUITES = (
    "decomposition",
    "count",
    "coefficient_sums",
    "order_census",
    "induced_periodicity",
    "cyclic_specialization",
    "structural_c0",
    "basis_independence",
)

# moduli above these caps are skipped by the suites that render every residue
DECOMPOSITION_QMAX = 500
INDUCED_QMAX = 1000
BASIS_QMAX = 500
CAPPED_SUITES = {"decomposition": DECOMPOSITION_QMAX, "induced_periodicity": INDUCED_QMAX, "basis_independence": BASIS_QMAX}

CoefficientHook = Callable[[CharSubgroupG], Sequence[Fraction]]


class Violation(BaseModel):
    suite: str
    q: int
    witness: str


class VerificationReport(BaseModel):
    """Per-identity pass counts for all q <= qmax and the first failure seen."""
    qmax: int
    passed: Dict[str, int] = Field(default_factory=dict)
    failed: Dict[str, int] = Field(default_factory=dict)
    first_failure: Optional[Violation] = None
    errors: List[str] = Field(default_factory=list)
    warnings: List[str] = Field(default_factory=list)

    @property
    def success(self) -> bool:
        return not self.errors

    def render(self) -> str:
        lines = [f"Identity verification for 3 <= q <= {self.qmax}"]
        for suite in self.passed:
            checked = self.passed[suite] + self.failed.get(suite, 0)
            lines.append(f"  {suite:<22} {self.passed[suite]}/{checked} passed")
        if self.first_failure is not None:
            f = self.first_failure
            lines.append(f"FIRST FAILURE: q={f.q} identity={f.suite} witness={f.witness}")
        lines.append("RESULT: " + ("PASS" if self.success else "FAIL"))
        return "\n".join(lines)


class IdentityVerifier:
    def __init__(
        self,
        qmax: int,
        suites: Optional[Iterable[str]] = None,
        coefficient_hook: Optional[CoefficientHook] = None,
        sample_size: int = 100,
        seed: int = 0,
    ):
        """Initialize the verifier.

        Args:
            qmax: Largest modulus checked; every q in [3, qmax] is visited
            suites: Subset of SUITES to run (all when None)
            coefficient_hook: Replaces the c_chi of G before the identities
                that use them are checked; for fault injection
            sample_size: Congruent pairs per modulus in the periodicity suite
            seed: Seed of the periodicity sampler
        """
        if qmax < 3:
            raise ValueError(f"qmax must be at least 3, got {qmax}")
        self.qmax = qmax
        self.suites = tuple(suites) if suites is not None else SUITES
        unknown = set(self.suites) - set(SUITES)
        if unknown:
            raise ValueError(f"Unknown identity suites: {sorted(unknown)}")
        self.coefficient_hook = coefficient_hook
        self.sample_size = sample_size
        self.seed = seed
        self.validation_errors: List[str] = []
        self.validation_warnings: List[str] = []
        self.report = VerificationReport(qmax=qmax)

    def add_error(self, message: str):
        """Add a verification error message."""
        self.validation_errors.append(message)
        logger.error(f"Verification error: {message}")

    def add_warning(self, message: str):
        """Add a verification warning message."""
        self.validation_warnings.append(message)
        logger.warning(f"Verification warning: {message}")

    def _coefficients(self, G: CharSubgroupG) -> Tuple[Fraction, ...]:
        if self.coefficient_hook is None:
            return G.coefficients
        return tuple(self.coefficient_hook(G))

    @staticmethod
    def _c0(G: CharSubgroupG, coeffs) -> Fraction:
        return coeffs[G.characters.index(G.principal)]

    @staticmethod
    def _applies(suite: str, q: int, G: CharSubgroupG) -> bool:
        if suite == "decomposition":
            return q <= DECOMPOSITION_QMAX
        if suite == "induced_periodicity":
            return q <= INDUCED_QMAX
        if suite == "cyclic_specialization":
            return G.modulus.is_cyclic
        if suite == "basis_independence":
            return q % 8 == 0 and q <= BASIS_QMAX
        return True

    # Each check returns None when the identity holds, else a witness.

    def check_decomposition(self, q: int, G: CharSubgroupG, coeffs) -> Optional[str]:
        bits = gamma_values_by_characters(q, range(q), coefficients=coeffs)
        for n in range(q):
            direct = gamma_direct(n, q)
            if bits[n] != direct:
                return f"n={n}: characters give {int(bits[n])}, direct test gives {direct}"
        return None

    def check_count(self, q: int, G: CharSubgroupG, coeffs) -> Optional[str]:
        count = count_lambda_roots(q)
        expected = self._c0(G, coeffs) * G.modulus.phi
        if count != expected:
            return f"#lambda-roots in [1, q] = {count}, c0*phi(q) = {expected}"
        return None

    def check_coefficient_sums(self, q: int, G: CharSubgroupG, coeffs) -> Optional[str]:
        total = sum((abs(c) for c in coeffs), Fraction(0))
        target = 2 ** factorize(G.modulus.phi).omega * self._c0(G, coeffs)
        if total != target:
            return f"sum |c_chi| = {total}, 2^omega(phi) c0 = {target}"
        signed = sum(coeffs, Fraction(0))
        if signed != 0:
            return f"sum c_chi = {signed}"
        return None

    def check_order_census(self, q: int, G: CharSubgroupG, coeffs) -> Optional[str]:
        expected = order_census_expected(G)
        if G.census != expected:
            return f"orders {G.census}, expected {expected}"
        if G.exponent != G.modulus.bigS:
            return f"exponent of G is {G.exponent}, S(q) = {G.modulus.bigS}"
        if len(G) != G.expected_order:
            return f"|G| = {len(G)}, expected {G.expected_order}"
        return None

    def check_induced_periodicity(self, q: int, G: CharSubgroupG, coeffs) -> Optional[str]:
        report = induced_periodicity_check(q, self.sample_size, self.seed)
        if report.violation_count:
            exponents, m, n = report.violations[0]
            return f"chi{exponents}({m}) != chi{exponents}({n}) with m = n mod {report.qtilde}"
        return None

    def check_cyclic_specialization(self, q: int, G: CharSubgroupG, coeffs) -> Optional[str]:
        for chi, c in zip(G.characters, coeffs):
            expected = cyclic_coefficient(chi, G)
            if c != expected:
                return f"chi{chi.exponents}: c = {c}, cyclic formula gives {expected}"
        return None

    def check_structural_c0(self, q: int, G: CharSubgroupG, coeffs) -> Optional[str]:
        structural = lambda_root_density(q)
        c0 = self._c0(G, coeffs)
        if structural != c0:
            return f"structural c0 = {structural}, enumerated c0 = {c0}"
        return None

    def check_basis_independence(self, q: int, G: CharSubgroupG, coeffs) -> Optional[str]:
        other = enumerate_G(q, two_power_generator=3)
        mine = Counter(zip((chi.order for chi in G.characters), coeffs))
        theirs = Counter(zip((chi.order for chi in other.characters), other.coefficients))
        if mine != theirs:
            return "(order, c_chi) multisets differ between generators 5 and 3"
        if list(gamma_values_by_characters(q, range(q), 3)) != list(gamma_values_by_characters(q, range(q), 5, coeffs)):
            return "gamma rendered differently under generators 5 and 3"
        return None

    def _record(self, suite: str, q: int, witness: Optional[str]):
        report = self.report
        if witness is None:
            report.passed[suite] = report.passed.get(suite, 0) + 1
            return
        report.passed.setdefault(suite, 0)
        report.failed[suite] = report.failed.get(suite, 0) + 1
        if report.first_failure is None:
            report.first_failure = Violation(suite=suite, q=q, witness=witness)
        self.add_error(f"q={q} {suite}: {witness}")
        emitter.emit_sync(EVENT_VIOLATION, suite=suite, q=q, witness=witness)

    def verify(self) -> Tuple[bool, VerificationReport]:
        """Run the selected suites for every q in [3, qmax].

        Returns:
            tuple: (success, report)
        """
        self.validation_errors = []
        self.validation_warnings = []
        self.report = VerificationReport(qmax=self.qmax, passed={s: 0 for s in self.suites})
        for suite in self.suites:
            emitter.emit_sync(EVENT_SUITE_START, suite=suite, qmax=self.qmax)
        for suite, cap in CAPPED_SUITES.items():
            if suite in self.suites and self.qmax > cap:
                self.add_warning(f"{suite} is checked for q <= {cap} only")

        for q in range(3, self.qmax + 1):
            try:
                G = enumerate_G(q)
                coeffs = self._coefficients(G)
            except LamrootError as e:
                for suite in self.suites:
                    self._record(suite, q, f"building G failed: {e}")
                continue
            for suite in self.suites:
                if not self._applies(suite, q, G):
                    continue
                check = getattr(self, f"check_{suite}")
                try:
                    witness = check(q, G, coeffs)
                except LamrootError as e:
                    witness = f"{type(e).__name__}: {e}"
                self._record(suite, q, witness)

        for suite in self.suites:
            emitter.emit_sync(
                EVENT_SUITE_END,
                suite=suite,
                passed=self.report.passed.get(suite, 0),
                failed=self.report.failed.get(suite, 0),
            )
        self.report.errors = list(self.validation_errors)
        self.report.warnings = list(self.validation_warnings)
        return self.report.success, self.report


def verify_identities(qmax: int, suites: Optional[Iterable[str]] = None, coefficient_hook: Optional[CoefficientHook] = None) -> Tuple[bool, VerificationReport]:
    """Verify the exact identities for all q <= qmax.

    Returns:
        tuple: (success, report)
    """
    verifier = IdentityVerifier(qmax, suites=suites, coefficient_hook=coefficient_hook)
    return verifier.verify()
