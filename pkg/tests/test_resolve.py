"""Minimal resolutions of modules and semi-free resolutions of complexes.

Frozen Betti oracles, each derived independently before being written
down here:
  * k[x]/(x^d): all Betti numbers of k equal 1, and the syzygies repeat
    with period 2 (period 1 when d = 2) because the differentials
    alternate between x and x^(d-1).
  * k[x,y]/(x^2,y^2): Betti numbers of k are 1, 2, 3, ... (Koszul-type
    growth for a codimension-two complete intersection).
  * (1,2)-algebra with square-zero maximal ideal: the first syzygy of k
    is m = k^2, so Betti numbers double: 2^i.
  * tensor square of the (1,2)-algebra: Kunneth gives
    beta_i = sum_j 2^j * 2^(i-j) = (i+1) 2^i.
  * trivial extension by the dual of the (1,2)-algebra: the recurrence
    beta_{i+1} = 4 beta_i - beta_{i-1} gives 1, 4, 15, 56, 209.
"""

from hypothesis import given, settings
from hypothesis import strategies as st
import numpy as np
import pytest

from dcx.algebra import RingMat
from dcx.corpus import build_ring
from dcx.cplx import ChainMap, FreeComplex, complex_from_module
from dcx.errors import WindowExceeded
from dcx.exact import Mat
from dcx.fgmod import (
    canonical_module,
    free_module,
    presented_module,
    residue_field_module,
    syzygy_presentation,
    zero_module,
)
from dcx.resolve import ModuleResolution, resolve_complex, resolve_module

D2 = build_ring("d2")
D3 = build_ring("d3")
D4 = build_ring("d4")
CI2 = build_ring("ci2")
FAT = build_ring("fat")
FAT3 = build_ring("fat3")
PROD = build_ring("prod")
TRIV = build_ring("triv")
PT = build_ring("pt")


def _betti_list(alg, top):
    res = resolve_module(residue_field_module(alg), top)
    return [res.betti(v) for v in range(top + 1)]


def test_residue_field_betti_tables():
    assert _betti_list(D2, 6) == [1] * 7
    assert _betti_list(D3, 5) == [1] * 6
    assert _betti_list(CI2, 6) == [1, 2, 3, 4, 5, 6, 7]
    assert _betti_list(FAT, 6) == [1, 2, 4, 8, 16, 32, 64]
    assert _betti_list(FAT3, 4) == [1, 3, 9, 27, 81]
    assert _betti_list(PROD, 4) == [1, 4, 12, 32, 80]
    assert _betti_list(TRIV, 4) == [1, 4, 15, 56, 209]


def test_residue_field_over_field_has_pd_zero():
    res = resolve_module(residue_field_module(PT), 3)
    assert res.finite_pd == 0
    assert res.betti(0) == 1
    assert res.betti(99) == 0
    assert res.syzygy(1).dim == 0


def test_free_module_resolves_instantly():
    res = resolve_module(free_module(FAT, 2), 3)
    assert res.finite_pd == 0
    assert res.betti(0) == 2 and res.betti(1) == 0


def test_zero_module_resolution():
    res = resolve_module(zero_module(FAT), 3)
    assert res.finite_pd == -1
    assert res.betti(0) == 0 and res.betti(7) == 0


def test_hypersurface_periodicity_certificates():
    r2 = resolve_module(residue_field_module(D2), 4)
    assert r2.periodicity_cert() == (0, 1)
    r3 = resolve_module(residue_field_module(D3), 4)
    assert r3.periodicity_cert() == (0, 2)
    r4 = resolve_module(residue_field_module(D4), 4)
    assert r4.periodicity_cert() == (0, 2)


def test_semisimple_syzygy_certificates():
    assert resolve_module(residue_field_module(FAT), 3).semisimple_cert() == (1, 2)
    assert resolve_module(residue_field_module(FAT3), 3).semisimple_cert() == (1, 3)
    assert resolve_module(residue_field_module(D3), 3).semisimple_cert() == (2, 1)
    assert resolve_module(residue_field_module(CI2), 4).semisimple_cert() is None
    assert resolve_module(residue_field_module(CI2), 4).periodicity_cert() is None


def test_syzygy_dimensions_over_hypersurface():
    res = resolve_module(residue_field_module(D3), 3)
    assert [res.syzygy(s).dim for s in (1, 2, 3)] == [2, 1, 2]


def test_resolution_is_minimal_and_exact():
    res = resolve_module(residue_field_module(FAT), 3)
    F = res.free()
    assert F.is_minimal()
    FreeComplex(FAT, 0, F.hi, F.ranks, F.rdiffs, validate=True)
    aug = res.augmentation()
    aug.check_squares()
    cone = aug.cone()
    for v in range(0, res.top + 1):
        assert cone.homology_dim(v) == 0
    assert cone.homology_dim(res.top + 1) != 0


def test_rank_budget_partial_result():
    k = residue_field_module(TRIV)
    res = ModuleResolution(k, rank_budget=25)
    res.ensure(4)
    assert res.budget_exceeded
    assert res.top == 2
    assert [res.betti(v) for v in range(3)] == [1, 4, 15]
    with pytest.raises(WindowExceeded):
        res.betti(3)
    # raising the budget clears the flag and the resolution continues
    res.ensure(3, rank_budget=100)
    assert not res.budget_exceeded
    assert res.betti(3) == 56


def test_resolution_cache_extends():
    k = residue_field_module(FAT)
    r1 = resolve_module(k, 2)
    r2 = resolve_module(k, 5)
    assert r1 is r2
    assert r2.betti(5) == 32


def test_resolve_complex_of_module_matches_module_route():
    k = residue_field_module(FAT)
    res = resolve_complex(complex_from_module(k), 4)
    assert res.free.betti_ranks() == {0: 1, 1: 2, 2: 4, 3: 8, 4: 16}
    phi = res.phi()
    phi.check_squares()
    cone = phi.cone()
    for v in range(0, res.top + 1):
        assert cone.homology_dim(v) == 0


def test_resolve_complex_two_term_closes_up():
    d = RingMat.from_entries(D2, [["x"]])
    X = FreeComplex(D2, 0, 1, {0: 1, 1: 1}, {1: d}).to_complex()
    res = resolve_complex(X, 6)
    assert res.finished
    assert res.free.betti_ranks() == {0: 1, 1: 1}
    assert res.phi().is_quasi_iso()


def test_resolve_complex_of_exact_complex_is_empty():
    d = RingMat.from_entries(D2, [["x"]])
    X = FreeComplex(D2, 0, 1, {0: 1, 1: 1}, {1: d}).to_complex()
    ident = {v: Mat.identity(D2.field, 2) for v in (0, 1)}
    E = ChainMap(X, X, ident, validate=False).cone()
    res = resolve_complex(E, 5)
    assert res.finished
    assert res.free.total_rank() == 0


def test_resolve_complex_with_exact_summand_keeps_homology():
    d = RingMat.from_entries(D2, [["x"]])
    F = FreeComplex(D2, 0, 1, {0: 1, 1: 1}, {1: d})
    X = F.to_complex()
    T, _ = F.tensor_with(X)  # dims (2, 4, 2), homology (1, 2, 1)
    res = resolve_complex(T, 5)
    phi = res.phi()
    cone = phi.cone()
    for v in range(0, res.top + 1):
        assert cone.homology_dim(v) == 0
    G = res.free.to_complex()
    for v in range(0, res.top):
        assert G.homology_dim(v) == T.homology_dim(v)


def test_resolve_complex_of_shifted_module():
    k = residue_field_module(FAT)
    X = complex_from_module(k).shift(2)
    res = resolve_complex(X, 4)
    assert res.free.lo == 2
    assert res.free.betti_ranks() == {2: 1, 3: 2, 4: 4}


def test_resolve_complex_budget():
    k = residue_field_module(TRIV)
    res = resolve_complex(complex_from_module(k), 4, rank_budget=20)
    assert res.budget_exceeded
    assert res.top < 4
    assert res.free.rank(0) == 1 and res.free.rank(1) == 4


def test_canonical_module_resolution_starts_at_type():
    # the canonical module needs exactly socle-many generators
    w = canonical_module(FAT)
    res = resolve_module(w, 2)
    assert res.betti(0) == FAT.socle_dim


@st.composite
def _presented(draw):
    rows = draw(st.integers(min_value=1, max_value=2))
    cols = draw(st.integers(min_value=1, max_value=2))
    m = RingMat.zeros(FAT, rows, cols)
    for i in range(rows):
        for j in range(cols):
            vec = [draw(st.integers(min_value=0, max_value=100)) for _ in range(FAT.dim)]
            m.arr[i, j] = np.asarray(vec, dtype=np.int64)
    M, _ = presented_module(FAT, m)
    return M


@settings(max_examples=10, deadline=None)
@given(_presented())
def test_resolution_laws(M):
    res = resolve_module(M, 2)
    if M.dim == 0:
        assert res.finite_pd == -1
        return
    assert res.betti(0) == M.min_gens
    P = syzygy_presentation(M)
    assert res.betti(1) == P.d1.cols
    assert res.free().is_minimal()
    # over an Artinian non-regular local ring, finite pd forces free
    if res.finite_pd is not None:
        assert res.finite_pd == 0 and M.is_free
    crx = resolve_complex(complex_from_module(M), 2)
    assert crx.free.rank(0) == res.betti(0)
    assert crx.free.rank(1) == res.betti(1)
    assert crx.free.rank(2) == res.betti(2)
