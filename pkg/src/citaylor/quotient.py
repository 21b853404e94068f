"""Groebner bases for the sequence ideal and graded exactness checks.

The exactness check works one internal degree at a time over GF(p): each
graded piece of the quotient ring has the standard monomials as a basis, so
the assembled maps become finite matrices and homology vanishing is a rank
condition.
"""
from __future__ import annotations

from dataclasses import dataclass

from .poly import Monomial, Polynomial, PolyRing, PrimeField, is_prime, monomial_key
from .report import Report


class CapExceeded(RuntimeError):
    """A Buchberger cap (pair count or lcm degree) was hit."""


class BadPrime(ValueError):
    """The chosen prime is composite or divides a coefficient denominator."""


@dataclass(frozen=True)
class GroebnerBasis:
    ring: PolyRing
    order: str
    polys: tuple[Polynomial, ...]

    @property
    def leading_exponents(self):
        key = monomial_key(self.order)
        return tuple(p.leading(key)[0] for p in self.polys)


def _reduce_full(terms, divisors, key, field):
    """Remainder of the full division algorithm; divisors are preprocessed."""
    work = dict(terms)
    remainder = {}
    while work:
        e = max(work, key=key)
        c = work.pop(e)
        for le, lc, gterms in divisors:
            if all(a >= b for a, b in zip(e, le)):
                shift = tuple(a - b for a, b in zip(e, le))
                factor = c / lc
                for ge, gc in gterms.items():
                    if ge == le:
                        continue
                    ee = tuple(a + b for a, b in zip(ge, shift))
                    prev = work.get(ee)
                    value = -factor * gc if prev is None else prev - factor * gc
                    if value:
                        work[ee] = value
                    elif prev is not None:
                        del work[ee]
                break
        else:
            remainder[e] = c
    return remainder


def _prepared(polys, key):
    out = []
    for g in polys:
        le, lc = g.leading(key)
        out.append((le, lc, g.terms))
    return out


def buchberger(generators, order="grevlex", max_pairs=10000, max_degree=40):
    """Reduced Groebner basis with normal pair selection (lowest lcm degree first).

    Deterministic given the caps; raises CapExceeded when a cap is hit.
    """
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        raise ValueError("need at least one nonzero generator")
    ring = gens[0].ring
    key = monomial_key(order)

    basis = []
    for g in gens:
        _, lc = g.leading(key)
        basis.append(g if lc == ring.field.one else g * (ring.field.one / lc))

    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    processed = 0

    def lead(i):
        return basis[i].leading(key)[0]

    while pairs:
        def pair_key(idx):
            i, j = idx
            lcm = tuple(max(a, b) for a, b in zip(lead(i), lead(j)))
            return (sum(lcm), key(lcm), i, j)

        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        li, lj = lead(i), lead(j)
        lcm = tuple(max(a, b) for a, b in zip(li, lj))
        if tuple(a + b for a, b in zip(li, lj)) == lcm:
            continue  # coprime leading terms: S-polynomial reduces to zero
        if sum(lcm) > max_degree:
            raise CapExceeded(
                f"S-pair lcm degree {sum(lcm)} exceeds max_degree={max_degree}"
            )
        processed += 1
        if processed > max_pairs:
            raise CapExceeded(f"more than max_pairs={max_pairs} S-pairs processed")

        fi, fj = basis[i], basis[j]
        spoly = fi.mul_term(tuple(a - b for a, b in zip(lcm, li))) - fj.mul_term(
            tuple(a - b for a, b in zip(lcm, lj))
        )
        rem = _reduce_full(spoly.terms, _prepared(basis, key), key, ring.field)
        if rem:
            g = Polynomial(ring, rem)
            _, lc = g.leading(key)
            if lc != ring.field.one:
                g = g * (ring.field.one / lc)
            basis.append(g)
            new = len(basis) - 1
            pairs.update((t, new) for t in range(new))

    # minimalize: keep ascending by leading term, drop anything an earlier
    # member's leading term divides (a proper divisor is always smaller)
    keep = []
    for i in sorted(range(len(basis)), key=lambda t: key(lead(t))):
        li = lead(i)
        if not any(all(a >= b for a, b in zip(li, lead(j))) for j in keep):
            keep.append(i)
    minimal = [basis[i] for i in keep]

    # inter-reduce tails
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        rem = _reduce_full(g.terms, _prepared(others, key), key, ring.field)
        reduced.append(Polynomial(ring, rem))

    reduced.sort(key=lambda g: key(g.leading(key)[0]))
    return GroebnerBasis(ring, order, tuple(reduced))


def normal_form(poly, gb):
    """The unique remainder of poly modulo the reduced basis."""
    key = monomial_key(gb.order)
    rem = _reduce_full(poly.terms, _prepared(gb.polys, key), key, gb.ring.field)
    return Polynomial(gb.ring, rem)


def _exponents_of_degree(nvars, degree):
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in _exponents_of_degree(nvars - 1, degree - first):
            yield (first, *rest)


@dataclass(frozen=True)
class GradedPieceBasis:
    degree: int
    monomials: tuple[Monomial, ...]

    @property
    def dimension(self):
        return len(self.monomials)


def graded_piece_basis(gb, degree):
    """Standard monomials of the given degree (not divisible by any leading term)."""
    if degree < 0:
        return GradedPieceBasis(degree, ())
    leads = gb.leading_exponents
    out = []
    for e in _exponents_of_degree(gb.ring.nvars, degree):
        if not any(all(a >= b for a, b in zip(e, le)) for le in leads):
            out.append(Monomial(e))
    return GradedPieceBasis(degree, tuple(out))


def rank_mod_p(rows, p):
    """Rank of an integer matrix over GF(p); consumes a copy."""
    if not rows:
        return 0
    mat = [row[:] for row in rows]
    ncols = len(mat[0])
    rank = 0
    pivot = 0
    for col in range(ncols):
        found = None
        for r in range(pivot, len(mat)):
            if mat[r][col] % p:
                found = r
                break
        if found is None:
            continue
        mat[pivot], mat[found] = mat[found], mat[pivot]
        inv = pow(mat[pivot][col], -1, p)
        prow = mat[pivot]
        for r in range(pivot + 1, len(mat)):
            factor = mat[r][col] * inv % p
            if factor:
                row = mat[r]
                for cc in range(col, ncols):
                    row[cc] = (row[cc] - factor * prow[cc]) % p
        pivot += 1
        rank += 1
        if pivot == len(mat):
            break
    return rank


def change_ring(poly, ring):
    return Polynomial(
        ring, {e: ring.field.coerce(c) for e, c in poly.terms.items()}
    )


def _graded_map(matrix_p, row_basis, col_basis, gb, degree, std_cache):
    """Matrix of one assembled map on the degree-d piece, over GF(p)."""

    def std(d):
        if d not in std_cache:
            std_cache[d] = graded_piece_basis(gb, d)
        return std_cache[d]

    col_pieces = [(j, w) for j, b in enumerate(col_basis) for w in std(degree - b.twist).monomials]
    row_pos = {}
    row_pieces = []
    for i, b in enumerate(row_basis):
        for w in std(degree - b.twist).monomials:
            row_pos[(i, w.exponents)] = len(row_pieces)
            row_pieces.append((i, w))

    by_col = {}
    for (i, j), poly in matrix_p.entries.items():
        by_col.setdefault(j, []).append((i, poly))

    rows = [[0] * len(col_pieces) for _ in range(len(row_pieces))]
    for cidx, (j, w) in enumerate(col_pieces):
        for i, poly in by_col.get(j, ()):
            image = normal_form(poly.mul_term(w.exponents), gb)
            for e, coeff in image.terms.items():
                rows[row_pos[(i, e)]][cidx] = coeff.value
    return rows, len(col_pieces), len(row_pieces)


def check_exactness(resolution, n, max_internal_degree, p=32003):
    """Verify zero homology at F_n in all internal degrees <= the cap, over GF(p).

    For each degree d the check is
    dim (F_n)_d - rank (phi_n)_d == rank (phi_{n+1})_d.
    """
    if not is_prime(p):
        raise BadPrime(f"{p} is not prime")
    system = resolution.system
    if system.ci.codim < 1:
        raise ValueError("exactness check needs a nonempty sequence")
    if not 1 <= n <= resolution.max_step - 1:
        raise ValueError(
            f"need 1 <= n <= {resolution.max_step - 1} so that phi_{n + 1} exists"
        )

    field = PrimeField(p)
    ring_p = PolyRing(system.ring.variables, field, system.ring.order)
    try:
        sequence_p = [change_ring(a, ring_p) for a in system.ci.sequence]
        phi_n = _matrix_change_ring(resolution.differential(n), ring_p)
        phi_next = _matrix_change_ring(resolution.differential(n + 1), ring_p)
    except ZeroDivisionError as exc:
        raise BadPrime(f"{p} divides a denominator: {exc}") from None

    gb = buchberger(sequence_p, "grevlex")
    report = Report(f"exactness at step {n} over GF({p})")
    std_cache = {}
    for d in range(max_internal_degree + 1):
        m_n, dim_n, _ = _graded_map(
            phi_n, resolution.basis(n - 1), resolution.basis(n), gb, d, std_cache
        )
        m_next, _, _ = _graded_map(
            phi_next, resolution.basis(n), resolution.basis(n + 1), gb, d, std_cache
        )
        rank_n = rank_mod_p(m_n, p)
        rank_next = rank_mod_p(m_next, p)
        kernel = dim_n - rank_n
        if kernel == rank_next:
            report.note(
                f"degree {d}: dim {dim_n}, rank phi_{n} = {rank_n}, "
                f"rank phi_{n + 1} = {rank_next}, homology 0"
            )
        else:
            report.fail(
                f"degree {d}: kernel {kernel} != image {rank_next} "
                f"(dim {dim_n}, rank phi_{n} = {rank_n})"
            )
    return report


def _matrix_change_ring(matrix, ring_p):
    from .matrix import LabeledGradedMatrix

    return LabeledGradedMatrix(
        ring_p,
        matrix.rows,
        matrix.cols,
        {k: change_ring(pp, ring_p) for k, pp in matrix.entries.items()},
        matrix.row_dividers,
        matrix.col_dividers,
    )
