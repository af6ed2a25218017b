import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dcx.algebra import RingMat
from dcx.corpus import build_ring, external_tensor
from dcx.errors import NotModule, ValidationError
from dcx.exact import Mat, rank
from dcx.fgmod import (
    FgModule,
    _betti_prefix,
    canonical_module,
    direct_sum,
    free_map_from_images,
    free_module,
    hom_module,
    is_isomorphic,
    k_dual,
    minimal_cover,
    presented_module,
    quotient_module,
    residue_field_module,
    submodule,
    syzygy_presentation,
    tensor_module,
    zero_module,
)

FAT = build_ring("fat")
CI2 = build_ring("ci2")
D2 = build_ring("d2")
D4 = build_ring("d4")


def test_residue_field_invariants():
    k = residue_field_module(FAT)
    assert k.invariants_key() == (1, 1, 1, 2)  # ann(k) = m has dimension 2
    assert k.is_semisimple
    assert not k.is_free


def test_free_module_invariants():
    R = free_module(FAT, 1)
    assert R.invariants_key() == (3, 1, 2, 0)
    assert R.is_free
    assert not R.is_cofree  # fat point is not Gorenstein
    R2 = free_module(FAT, 2)
    assert R2.invariants_key() == (6, 2, 4, 0)


def test_canonical_module_invariants():
    w = canonical_module(FAT)
    assert w.invariants_key() == (3, 2, 1, 0)
    assert w.is_cofree
    assert not w.is_free
    # over a Gorenstein ring the canonical module is free
    wg = canonical_module(CI2)
    assert wg.is_free and wg.is_cofree


def test_k_dual_swaps_generators_and_socle():
    w = canonical_module(FAT)
    assert k_dual(w).digest() == free_module(FAT, 1).digest()
    k = residue_field_module(FAT)
    assert k_dual(k).invariants_key() == k.invariants_key()


def test_minimal_cover_laws():
    w = canonical_module(FAT)
    cov = minimal_cover(w)
    assert cov.g == 2
    assert rank(cov.eps) == w.dim
    assert (cov.eps @ cov.section) == Mat.identity(FAT.field, w.dim)


def test_syzygy_presentation_of_residue_field():
    k = residue_field_module(FAT)
    pres = syzygy_presentation(k)
    assert pres.cover.g == 1
    assert pres.d1.cols == 2
    assert pres.d1.is_minimal()
    # relations actually kill the generator: eps after d1 is zero
    composed = pres.cover.eps @ pres.d1.k_matrix(FAT.regular_action())
    assert composed.is_zero()


def test_betti_prefix_frozen_values():
    assert _betti_prefix(residue_field_module(FAT)) == (1, 2, 4)
    assert _betti_prefix(residue_field_module(D2)) == (1, 1, 1)
    assert _betti_prefix(residue_field_module(CI2)) == (1, 2, 3)
    assert _betti_prefix(free_module(FAT, 2)) == (2, 0, 0)


def test_hom_module_dimensions():
    k = residue_field_module(FAT)
    R = free_module(FAT, 1)
    w = canonical_module(FAT)
    assert hom_module(k, R).dim == 2  # socle of the ring
    assert hom_module(k, k).dim == 1
    assert hom_module(R, w).dim == 3
    assert hom_module(w, w).dim == 3  # semidualizing: endomorphisms = ring


def test_hom_matrices_are_module_maps():
    w = canonical_module(FAT)
    k = residue_field_module(FAT)
    hd = hom_module(w, k)
    for j in range(hd.dim):
        phi = hd.basis_matrix(j)
        for i in range(FAT.dim):
            assert phi @ w.action_of_basis(i) == k.action_of_basis(i) @ phi
    # roundtrip through coordinates
    phi = hd.basis_matrix(0)
    coords = hd.from_matrix(phi)
    assert coords is not None
    assert hd.to_matrix(coords) == phi


def test_tensor_module_dimensions():
    k = residue_field_module(FAT)
    R = free_module(FAT, 1)
    w = canonical_module(FAT)
    assert tensor_module(k, w).module.dim == 2  # w/mw
    assert tensor_module(R, w).module.dim == 3
    assert tensor_module(k, k).module.dim == 1


def test_tensor_pure_elements():
    w = canonical_module(FAT)
    k = residue_field_module(FAT)
    td = tensor_module(k, w)
    one = Mat.from_rows(FAT.field, [[1]])
    for j in range(w.dim):
        v = Mat.zeros(FAT.field, w.dim, 1)
        v.a[j, 0] = 1
        assert td.pure(one, v).shape == (td.module.dim, 1)


def test_submodule_and_quotient():
    R = free_module(FAT, 1)
    soc = FAT.local.socle
    S, incl = submodule(R, soc)
    assert S.dim == 2 and S.is_semisimple
    Q, proj, _ = quotient_module(R, soc)
    assert Q.dim == 1
    assert Q.invariants_key() == residue_field_module(FAT).invariants_key()
    with pytest.raises(ValidationError):
        # the line through 1 is not a submodule
        submodule(R, R.alg.unit)


def test_presented_module():
    B = RingMat.from_entries(D4, [["x^2"]])
    M, _ = presented_module(D4, B)
    assert M.invariants_key() == (2, 1, 1, 2)


def test_free_map_from_images():
    R = free_module(D2, 1)
    x = D2.element("x")
    f = free_map_from_images(R, x)
    assert f == D2.mult_matrix(x)


def test_validation_rejects_bad_action():
    bad = [[[1, 0], [0, 1]], [[0, 0], [0, 0]]]
    FgModule(D2, bad)  # x acting by zero on R^... a valid rank-2 action? no:
    # unit acts as identity and x acts by zero: that is k^2, actually valid.
    with pytest.raises(NotModule):
        # x * x should act by zero but this action squares to identity
        FgModule(D2, [[[1, 0], [0, 1]], [[0, 1], [1, 0]]])


def test_is_isomorphic_certified_no():
    w = canonical_module(FAT)
    R = free_module(FAT, 1)
    verdict, reason = is_isomorphic(w, R)
    assert verdict is False
    assert "invariants differ" in reason


def test_is_isomorphic_gorenstein_canonical():
    w = canonical_module(CI2)
    R = free_module(CI2, 1)
    verdict, reason = is_isomorphic(w, R)
    assert verdict is True


def test_is_isomorphic_direct_sum_shuffle():
    k = residue_field_module(FAT)
    R = free_module(FAT, 1)
    verdict, _ = is_isomorphic(direct_sum([k, R]), direct_sum([R, k]))
    assert verdict is True


def test_is_isomorphic_distinguishes_k_powers():
    k = residue_field_module(FAT)
    two = direct_sum([k, k])
    verdict, _ = is_isomorphic(two, free_module(FAT, 1))
    assert verdict is False


def test_zero_module():
    z = zero_module(FAT)
    assert z.dim == 0
    assert z.min_gens == 0
    assert z.is_free
    v, _ = is_isomorphic(z, zero_module(FAT))
    assert v is True


def test_external_tensor_mixed_module():
    prod = build_ring("prod")
    f = build_ring("fat")
    w = canonical_module(f)
    R = free_module(f, 1)
    mixed = external_tensor(w, R, prod)
    assert mixed.dim == 9
    assert mixed.min_gens == 2
    assert mixed.socle_dim == 2
    full = external_tensor(w, w, prod)
    assert full.digest() == canonical_module(prod).digest()


# -- randomized law checks ------------------------------------------------------


@st.composite
def _presented(draw, alg=FAT):
    rows = draw(st.integers(1, 2))
    cols = draw(st.integers(0, 3))
    coords = st.lists(
        st.integers(0, 100), min_size=alg.dim, max_size=alg.dim
    )
    entries = [[draw(coords) for _ in range(cols)] for _ in range(rows)]
    if cols == 0:
        B = RingMat.zeros(alg, rows, 0)
    else:
        B = RingMat.from_entries(alg, entries)
    M, _ = presented_module(alg, B)
    return M


@settings(max_examples=25, deadline=None)
@given(_presented())
def test_generator_count_two_routes(M):
    # minimal generators counted by radical quotient and by k-tensor agree
    k = residue_field_module(FAT)
    assert M.min_gens == tensor_module(k, M).module.dim
    assert M.min_gens == hom_module(M, k).dim


@settings(max_examples=25, deadline=None)
@given(_presented())
def test_socle_two_routes(M):
    k = residue_field_module(FAT)
    assert M.socle_dim == hom_module(k, M).dim


@settings(max_examples=25, deadline=None)
@given(_presented())
def test_duality_swaps_invariants(M):
    D = k_dual(M)
    assert D.length == M.length
    assert D.min_gens == M.socle_dim
    assert D.socle_dim == M.min_gens
    assert k_dual(D).digest() == M.digest()


@settings(max_examples=15, deadline=None)
@given(_presented(), _presented())
def test_hom_tensor_adjunction_dimension(M, N):
    lhs = hom_module(M, k_dual(N)).dim
    rhs = tensor_module(M, N).module.dim
    assert lhs == rhs


@settings(max_examples=15, deadline=None)
@given(_presented(), _presented())
def test_direct_sum_additivity(M, N):
    S = direct_sum([M, N])
    assert S.length == M.length + N.length
    assert S.min_gens == M.min_gens + N.min_gens
    assert S.socle_dim == M.socle_dim + N.socle_dim
