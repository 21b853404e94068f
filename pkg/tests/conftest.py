"""Shared builders for the worked examples used across the test modules."""
import pytest

from citaylor import (
    GF,
    QQ,
    PolyRing,
    complete_intersection,
    homotopy_system,
    lift_matrix,
    monomial_ideal,
    shamash_resolution,
    taylor_complex,
)


def grid(mat):
    """Matrix entries as strings, row-major, zeros included."""
    nrows, ncols = mat.shape
    return [[str(mat.entry(i, j)) for j in range(ncols)] for i in range(nrows)]


def ring(names, field=QQ, order="grevlex"):
    return PolyRing(tuple(names.split(",")), field, order)


# ---- the worked examples -------------------------------------------------


def build_three_squares(max_step=6):
    """k[x,y,z], I = <x^2,y^2,z^2>, a = x^2*z + x*y^2, lift (z, x, 0)."""
    R = ring("x,y,z")
    I = monomial_ideal(R, ["x^2", "y^2", "z^2"])
    ci = complete_intersection(I, ["x^2*z + x*y^2"])
    return shamash_resolution(homotopy_system(ci, strategy="first"), max_step)


def build_squarefree_taylor():
    """The <xy, xz, yz> Taylor complex."""
    R = ring("x,y,z")
    return taylor_complex(monomial_ideal(R, ["x*y", "x*z", "y*z"]))


def build_monomial_c1(gen=1, max_step=6):
    """I = <xy,xz,yz>, a = xyz routed entirely through generator ``gen``."""
    R = ring("x,y,z")
    I = monomial_ideal(R, ["x*y", "x*z", "y*z"])
    ci = complete_intersection(I, ["x*y*z"])
    exps = (1, 1, 1)
    lift = lift_matrix(ci, "fixed-assignment", [{exps: gen}])
    return shamash_resolution(homotopy_system(ci, lift=lift), max_step)


def build_poly_c1(max_step=6):
    """k[x,y], I = <x^2,y^2>, a = x^2*y + x*y^2, lift (y, x)."""
    R = ring("x,y")
    I = monomial_ideal(R, ["x^2", "y^2"])
    ci = complete_intersection(I, ["x^2*y + x*y^2"])
    return shamash_resolution(homotopy_system(ci, strategy="first"), max_step)


def build_codim2(max_step=5):
    """k[x,y,z,w], I = squares, a = (x^3 + y^3, z^3 + w^3)."""
    R = ring("x,y,z,w")
    I = monomial_ideal(R, ["x^2", "y^2", "z^2", "w^2"])
    ci = complete_intersection(I, ["x^3 + y^3", "z^3 + w^3"])
    return shamash_resolution(homotopy_system(ci, strategy="first"), max_step)


def build_hypersurface(max_step=5):
    """k[x1,x2], I = <x1^2,x2^2>, a = x1^5."""
    R = ring("x1,x2")
    I = monomial_ideal(R, ["x1^2", "x2^2"])
    ci = complete_intersection(I, ["x1^5"])
    return shamash_resolution(homotopy_system(ci, strategy="first"), max_step)


def build_tate(max_step=6):
    """I = <x,y,z>, a = x^2 + y^2 + z^2: the Koszul complex as Taylor complex."""
    R = ring("x,y,z")
    I = monomial_ideal(R, ["x", "y", "z"])
    ci = complete_intersection(I, ["x^2 + y^2 + z^2"])
    return shamash_resolution(homotopy_system(ci, strategy="first"), max_step)


@pytest.fixture(scope="session")
def three_squares():
    return build_three_squares()


@pytest.fixture(scope="session")
def poly_c1():
    return build_poly_c1()


@pytest.fixture(scope="session")
def codim2():
    return build_codim2()


@pytest.fixture(scope="session")
def ring_xyz():
    return ring("x,y,z")
