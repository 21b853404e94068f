"""Taylor complex of a monomial ideal.

Free summands in homological degree k are labelled by size-k subsets S of the
generator index set {1..r}; the summand sits in internal degree deg lcm(S).
The differential sends the basis element of S = {s_1 < ... < s_k} to

    sum_i (-1)^(k-i) * (lcm(S)/lcm(S - s_i)) * e_{S - s_i},

with i the 1-based position of s_i inside S.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations

from .matrix import LabeledGradedMatrix
from .poly import Monomial, mono_divide, mono_lcm
from .report import Report


@dataclass(frozen=True)
class SubsetLabel:
    """Subset of generator indices (1-based, strictly increasing) with its lcm."""

    indices: tuple[int, ...]
    lcm: Monomial
    degree: int

    @property
    def twist(self):
        return self.degree

    @property
    def size(self):
        return len(self.indices)

    def compact(self):
        if not self.indices:
            return "{}"
        if self.indices[-1] < 10:
            return "".join(str(i) for i in self.indices)
        return "{" + ",".join(str(i) for i in self.indices) + "}"

    def __str__(self):
        return self.compact()


@dataclass(frozen=True)
class MonomialIdeal:
    ring: object
    generators: tuple[Monomial, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("ideal needs at least one generator")
        n = self.ring.nvars
        for m in self.generators:
            if len(m.exponents) != n:
                raise ValueError("generator does not live in the ring")
        if len(set(self.generators)) != len(self.generators):
            warnings.warn("duplicate generators make every resolution here nonminimal")

    @property
    def ngens(self):
        return len(self.generators)

    def generator(self, i):
        """1-based access, matching subset labels."""
        return self.generators[i - 1]

    def subset(self, indices):
        indices = tuple(indices)
        lcm = Monomial((0,) * self.ring.nvars)
        for i in indices:
            lcm = mono_lcm(lcm, self.generators[i - 1])
        return SubsetLabel(indices, lcm, lcm.degree)

    def generator_polys(self):
        return [self.ring.from_monomial(m) for m in self.generators]


def monomial_ideal(ring, generators):
    """Build an ideal from Monomials, exponent tuples, or generator strings."""
    gens = []
    for g in generators:
        if isinstance(g, Monomial):
            gens.append(ring.monomial(g.exponents))
        elif isinstance(g, str):
            p = ring.parse(g)
            if len(p.terms) != 1:
                raise ValueError(f"{g!r} is not a monomial")
            (e, c), = p.terms.items()
            if c != ring.field.one:
                raise ValueError(f"{g!r} has a coefficient; generators must be monic")
            gens.append(ring.monomial(e))
        else:
            gens.append(ring.monomial(g))
    return MonomialIdeal(ring, tuple(gens))


def taylor_basis(ideal, k):
    """Size-k subset labels in lexicographic order."""
    if k < 0 or k > ideal.ngens:
        return []
    return [ideal.subset(c) for c in combinations(range(1, ideal.ngens + 1), k)]


def taylor_differential(ideal, k):
    """The map T_k -> T_{k-1}, 1 <= k <= r."""
    if not 1 <= k <= ideal.ngens:
        raise ValueError(f"no differential at step {k}")
    rows = taylor_basis(ideal, k - 1)
    cols = taylor_basis(ideal, k)
    row_index = {lab.indices: i for i, lab in enumerate(rows)}
    entries = {}
    for j, col in enumerate(cols):
        for pos, s in enumerate(col.indices, start=1):
            face = tuple(t for t in col.indices if t != s)
            target = rows[row_index[face]]
            quot = mono_divide(col.lcm, target.lcm)
            sign = 1 if (k - pos) % 2 == 0 else -1
            entries[(row_index[face], j)] = ideal.ring.from_monomial(quot, sign)
    return LabeledGradedMatrix(ideal.ring, rows, cols, entries)


@dataclass(frozen=True)
class TaylorComplex:
    ideal: MonomialIdeal
    bases: tuple[tuple[SubsetLabel, ...], ...]
    differentials: tuple[LabeledGradedMatrix, ...]

    def basis(self, k):
        if 0 <= k < len(self.bases):
            return self.bases[k]
        return ()

    def differential(self, k):
        """tau_k: T_k -> T_{k-1}."""
        return self.differentials[k - 1]


def taylor_complex(ideal):
    r = ideal.ngens
    bases = tuple(tuple(taylor_basis(ideal, k)) for k in range(r + 1))
    diffs = tuple(taylor_differential(ideal, k) for k in range(1, r + 1))
    return TaylorComplex(ideal, bases, diffs)


def verify_taylor(ideal):
    """Check tau_k . tau_{k+1} = 0 for every k and entry homogeneity."""
    cx = taylor_complex(ideal)
    report = Report("taylor complex")
    r = ideal.ngens
    for k in range(1, r):
        square = cx.differential(k).compose(cx.differential(k + 1))
        if square.is_zero():
            report.note(f"tau_{k}.tau_{k + 1} = 0")
        else:
            row, col, entry = square.first_failure()
            report.fail(f"tau_{k}.tau_{k + 1} nonzero at ({row}, {col}): {entry}")
    if r == 1:
        report.note("single generator, d^2 vacuous")
    for k in range(1, r + 1):
        bad = cx.differential(k).homogeneity_violations()
        if bad:
            row, col, entry = bad[0]
            report.fail(f"tau_{k} entry ({row}, {col}) = {entry} is not homogeneous")
    return report
