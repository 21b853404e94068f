"""Free resolution over the quotient by the sequence, assembled step by step.

Homological degree n is spanned by pairs (u, S): a divided-power multi-index
u over the sequence and a subset label S, with |S| + 2|u| = n.  The summand
(u, S) sits in internal degree deg lcm(S) + sum_j u_j * deg a_j.  The
differential applies the Taylor differential to S (keeping u) and, for every
j with u_j >= 1, the homotopy sigma_j (lowering u_j by one); no extra signs.

Composing two consecutive differentials gives sum_j a_j * shift_j on the
nose, where shift_j lowers u_j; over the quotient ring the a_j vanish, so
the assembled maps square to zero there.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .matrix import LabeledGradedMatrix
from .poly import Polynomial
from .report import Report
from .taylor import SubsetLabel


class NoStableTail(RuntimeError):
    """No shift-stable tail was found in the computed window."""


@dataclass(frozen=True)
class DPIndex:
    """Divided-power multi-index t^u = y_1^(u_1) ... y_c^(u_c)."""

    exponents: tuple[int, ...]

    @property
    def weight(self):
        return sum(self.exponents)

    def lower(self, j):
        """u - e_j, 1-based; requires u_j >= 1."""
        if self.exponents[j - 1] < 1:
            raise ValueError(f"index {j} already zero in {self.exponents}")
        return DPIndex(
            tuple(e - 1 if i == j - 1 else e for i, e in enumerate(self.exponents))
        )

    def raised(self, j):
        """u + e_j, 1-based."""
        return DPIndex(
            tuple(e + 1 if i == j - 1 else e for i, e in enumerate(self.exponents))
        )

    def __str__(self):
        return "(" + ",".join(str(e) for e in self.exponents) + ")"


@dataclass(frozen=True)
class ShamashBasisElement:
    """Pair (u, S) with cached homological degree and twist."""

    u: DPIndex
    label: SubsetLabel
    hdeg: int
    twist: int

    def compact(self):
        s = self.label.compact()
        if self.u.weight == 0 or len(self.u.exponents) == 1:
            return s
        return f"y{self.u}*{s}"

    def __str__(self):
        return self.compact()


def _dp_exponents(total, length):
    """All length-tuples of nonnegative ints summing to total, lex ascending."""
    if length == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _dp_exponents(total - first, length - 1):
            yield (first, *rest)


def shamash_basis(system, n):
    """Basis of step n: |S| ascending, then S lexicographic, then u lexicographic."""
    if n < 0:
        return []
    c = system.ci.codim
    degrees = system.ci.degrees
    out = []
    for k in range(n % 2, min(n, system.ideal.ngens) + 1, 2):
        q = (n - k) // 2
        for label in system.complex.basis(k):
            for exps in _dp_exponents(q, c):
                twist = label.degree + sum(u * d for u, d in zip(exps, degrees))
                out.append(ShamashBasisElement(DPIndex(exps), label, n, twist))
    return out


def _by_column(matrix):
    out = {}
    for (i, j), p in matrix.entries.items():
        out.setdefault(j, []).append((i, p))
    return out


def _u_dividers(basis):
    return tuple(
        i for i in range(1, len(basis)) if basis[i].u != basis[i - 1].u
    )


def shamash_differential(system, n):
    """The assembled map F_n -> F_{n-1}, n >= 1."""
    if n < 1:
        raise ValueError(f"no differential at step {n}")
    rows = shamash_basis(system, n - 1)
    cols = shamash_basis(system, n)
    row_index = {(b.u, b.label.indices): i for i, b in enumerate(rows)}

    taylor_pos = {}
    tau_cols = {}
    sigma_cols = {}
    for k in {b.label.size for b in cols}:
        taylor_pos[k] = {
            lab.indices: j for j, lab in enumerate(system.complex.basis(k))
        }
        if k >= 1:
            tau_cols[k] = _by_column(system.sigma_zero(k))
        for i in range(1, system.ci.codim + 1):
            sigma_cols[(i, k)] = _by_column(system.sigma_e(i, k))

    entries = {}

    def add(ri, j, poly):
        prev = entries.get((ri, j))
        entries[(ri, j)] = poly if prev is None else prev + poly

    for j, b in enumerate(cols):
        k = b.label.size
        pos = taylor_pos[k][b.label.indices]
        if k >= 1:
            lower = system.complex.basis(k - 1)
            for i_row, p in tau_cols[k].get(pos, ()):
                add(row_index[(b.u, lower[i_row].indices)], j, p)
        for i in range(1, system.ci.codim + 1):
            if b.u.exponents[i - 1] < 1:
                continue
            upper = system.complex.basis(k + 1)
            for i_row, p in sigma_cols[(i, k)].get(pos, ()):
                add(row_index[(b.u.lower(i), upper[i_row].indices)], j, p)

    return LabeledGradedMatrix(
        system.ring, rows, cols, entries, _u_dividers(rows), _u_dividers(cols)
    )


@dataclass(frozen=True)
class MinimalityReport:
    minimal: bool
    unit_taylor_entries: tuple
    constant_lift_entries: tuple

    def describe(self):
        lines = []
        for k, row, col, entry in self.unit_taylor_entries:
            lines.append(f"tau_{k} entry ({row} <- {col}) = {entry} is a unit")
        for i, t, coeff in self.constant_lift_entries:
            lines.append(f"lift entry f[{i},{t}] has constant term {coeff}")
        if not lines:
            lines.append("all differential entries lie in the maximal ideal")
        return lines


@dataclass(frozen=True)
class PeriodicityInfo:
    status: str  # "periodic" | "none" | "not-applicable"
    start: int | None = None


@dataclass(frozen=True)
class ShamashResolution:
    system: object
    max_step: int
    bases: tuple
    differentials: tuple
    minimality: MinimalityReport
    periodicity: PeriodicityInfo

    def basis(self, n):
        return self.bases[n]

    def differential(self, n):
        """phi_n: F_n -> F_{n-1}, 1-based."""
        return self.differentials[n - 1]

    def rank(self, n):
        return len(self.bases[n])


def _minimality(system):
    units = []
    r = system.ideal.ngens
    for k in range(1, r + 1):
        tau = system.sigma_zero(k)
        for (i, j), p in sorted(tau.entries.items()):
            if p.total_degree() == 0:
                units.append((k, tau.rows[i], tau.cols[j], p))
    constants = []
    for i, row in enumerate(system.lift.rows, start=1):
        for t, f in enumerate(row, start=1):
            const = f.constant_term()
            if const:
                constants.append((i, t, const))
    return MinimalityReport(not units and not constants, tuple(units), tuple(constants))


def minimality_check(resolution):
    """Minimal iff no Taylor entry is a unit and no lift entry has a constant term."""
    return _minimality(resolution.system)


def _shifted(element, degree):
    return ShamashBasisElement(
        element.u.raised(1), element.label, element.hdeg + 2, element.twist + degree
    )


def _shift_matches(differentials, degree, n):
    a, b = differentials[n - 1], differentials[n + 1]
    if len(a.rows) != len(b.rows) or len(a.cols) != len(b.cols):
        return False
    if any(_shifted(x, degree) != y for x, y in zip(a.rows, b.rows)):
        return False
    if any(_shifted(x, degree) != y for x, y in zip(a.cols, b.cols)):
        return False
    return a.entries == b.entries


def _periodicity(system, differentials, max_step):
    if system.ci.codim != 1:
        return PeriodicityInfo("not-applicable")
    degree = system.ci.degrees[0]
    stable_from = None
    for n in range(max_step - 2, 0, -1):
        if _shift_matches(differentials, degree, n):
            stable_from = n
        else:
            break
    if stable_from is None:
        return PeriodicityInfo("none")
    return PeriodicityInfo("periodic", stable_from)


def tail_periodicity(resolution):
    """Smallest n0 with phi_{n+2} = phi_n under (u,S) -> (u+1,S) through the window."""
    return _periodicity(
        resolution.system, resolution.differentials, resolution.max_step
    )


def shamash_resolution(system, max_step):
    """Assemble F_0..F_N with differentials phi_1..phi_N."""
    if max_step < 0:
        raise ValueError("max_step must be >= 0")
    bases = tuple(tuple(shamash_basis(system, n)) for n in range(max_step + 1))
    diffs = tuple(shamash_differential(system, n) for n in range(1, max_step + 1))
    return ShamashResolution(
        system,
        max_step,
        bases,
        diffs,
        _minimality(system),
        _periodicity(system, diffs, max_step),
    )


def lower_shift_matrix(resolution, n, j):
    """F_{n+1} -> F_{n-1} sending (u, S) to (u - e_j, S) when u_j >= 1."""
    rows = resolution.basis(n - 1)
    cols = resolution.basis(n + 1)
    ring = resolution.system.ring
    row_index = {(b.u, b.label.indices): i for i, b in enumerate(rows)}
    entries = {}
    for jj, b in enumerate(cols):
        if b.u.exponents[j - 1] >= 1:
            entries[(row_index[(b.u.lower(j), b.label.indices)], jj)] = ring.one
    return LabeledGradedMatrix(ring, rows, cols, entries)


def phi_squared_check(resolution):
    """phi_n . phi_{n+1} = sum_j a_j * shift_j, exactly, for every window step."""
    report = Report("phi.phi identity")
    system = resolution.system
    for n in range(1, resolution.max_step):
        lhs = resolution.differential(n).compose(resolution.differential(n + 1))
        rhs = None
        for j, a in enumerate(system.ci.sequence, start=1):
            part = lower_shift_matrix(resolution, n, j).scale(a)
            rhs = part if rhs is None else rhs + part
        defect = lhs - rhs
        if defect.is_zero():
            report.note(f"phi_{n}.phi_{n + 1} = sum a_j shift_j")
        else:
            row, col, entry = defect.first_failure()
            report.fail(f"phi_{n}.phi_{n + 1} defect at ({row}, {col}): {entry}")
    if resolution.max_step < 2:
        report.note("window too short for composites, vacuous")
    return report


def rank_formula(r, c, n):
    """Closed-form rank of F_n: sum over |S| = n - 2q of C(r,|S|) * #(u of weight q)."""
    if n < 0:
        return 0
    m, parity = divmod(n, 2)
    total = 0
    for j in range(m + 1):
        k = 2 * j + parity
        total += comb(r, k) * comb(c + (m - j) - 1, c - 1)
    return total


def betti_bound(r, c, m, parity=0):
    """Upper bound for the Betti number in homological degree 2m + parity."""
    return rank_formula(r, c, 2 * m + parity)


def matrix_factorization(resolution):
    """The stable pair (A, B) = (phi_n0, phi_n0+1); asserts AB = BA = a * id.

    Only defined for a length-one sequence with a periodic tail inside the
    computed window.
    """
    system = resolution.system
    if system.ci.codim != 1:
        raise NoStableTail("matrix factorizations need a length-one sequence")
    info = resolution.periodicity
    if info.status != "periodic":
        raise NoStableTail(f"no shift-stable tail through step {resolution.max_step}")
    n0 = info.start
    a = system.ci.sequence[0]
    for n in (n0, n0 + 1):
        product = resolution.differential(n).compose(resolution.differential(n + 1))
        expected = lower_shift_matrix(resolution, n, 1).scale(a)
        if product != expected:
            raise AssertionError(f"factorization identity fails at step {n}")
    return resolution.differential(n0), resolution.differential(n0 + 1)
