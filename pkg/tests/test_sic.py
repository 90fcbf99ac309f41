import numpy as np
import pytest

from extclifford.clifford import SympMatrix
from extclifford.gf import make_field
from extclifford.sic import (
    TABLE3,
    SicError,
    cube_root_symplectic_G,
    gamma_identities,
    sic_subspace_bases,
    type1_sic_basis,
    verify_table3,
)


@pytest.mark.parametrize("d", [7, 13, 19])
def test_type1_basis(d):
    rep = type1_sic_basis(d)
    m = (d - 1) // 6
    assert rep.ok, rep.checks
    assert rep.subspace_dims[0] == 2 * m + 1
    assert sum(rep.subspace_dims) == d
    vecs = np.array([v for _, v in rep.eigenvectors])
    assert np.allclose(vecs.conj() @ vecs.T, np.eye(d))


def test_type1_zauner_power():
    rep = type1_sic_basis(13)
    assert rep.G ** 4 == rep.F
    assert rep.F.trace == (rep.F.field.neg(1))


@pytest.mark.parametrize("d", [5, 11, 47, 149])
def test_table_entries(d):
    (entry,) = [e for e in verify_table3() if e.d == d]
    assert entry.ok
    f = make_field(d)
    G = SympMatrix.from_ints(f, [e % d for e in TABLE3[d]])
    m = (d + 1) // 6
    # independent of the stored check: G^(3m) = -I and G^(2m) is the Zauner matrix
    assert G ** (3 * m) == SympMatrix.from_ints(f, [-1, 0, 0, -1])
    assert G ** (2 * m) == SympMatrix.from_ints(f, [0, -1, 1, -1])


def test_whole_table():
    entries = verify_table3()
    assert len(entries) == 18
    assert all(e.ok for e in entries)


@pytest.mark.parametrize("d", [5, 11, 17, 23, 29])
def test_constructed_G(d):
    G = cube_root_symplectic_G(d)
    m = (d + 1) // 6
    assert G.det == 1
    assert G ** (2 * m) == SympMatrix.zauner(G.field)
    assert G ** (6 * m) == SympMatrix.identity(G.field)


@pytest.mark.parametrize("d, dims", [(5, (1, 2, 2)), (11, (3, 4, 4))])
def test_subspace_dims(d, dims):
    rep = sic_subspace_bases(d)
    assert rep.ok, rep.checks
    assert rep.subspace_dims == dims
    assert rep.per_r_dims.count(0) == 1


@pytest.mark.parametrize("d", [5, 11, 17])
def test_gamma_identities(d):
    assert all(gamma_identities(d).values())


@pytest.mark.parametrize("bad", [5, 9, 11, 15])
def test_type1_rejects(bad):
    with pytest.raises(SicError):
        type1_sic_basis(bad)


@pytest.mark.parametrize("bad", [7, 13, 25, 35])
def test_type2_rejects(bad):
    with pytest.raises(SicError):
        sic_subspace_bases(bad)
    with pytest.raises(SicError):
        cube_root_symplectic_G(bad)
