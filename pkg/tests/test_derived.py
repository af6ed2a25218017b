"""Certified Ext/Tor windows, Bass and Betti sequences, derived complexes.

Frozen oracles, each derived by hand before being written down:
  * k[x]/(x^2): the minimal resolution of k has every differential x, so
    Ext^j(k,k) = 1 for all j; Hom(-, R) of that resolution alternates a
    rank-one multiplication, so Ext^0(k,R) = 1 (the socle) and
    Ext^j(k,R) = 2 - 1 - 1 = 0 for j >= 1 (the ring is self-injective).
  * k[x]/(x^3): differentials alternate x, x^2 with ranks 2, 1 on R, so
    Ext^j(k,R) = 3 - 2 - 1 = 0 for j >= 1 while Ext^j(k,k) = 1.
  * square-zero (1,2) point: beta_j(k) = 2^j and the coefficients die on
    k, so Ext^j(k,k) = 2^j.  Bass numbers of R by direct kernel counts:
    Hom(R,R) -> Hom(R^2,R) -> Hom(R^4,R) has image dims 1, 2 and kernel
    dims 2 (socle), 4, 8, giving mu = 2, 3, 6, then doubling (the first
    syzygy of the dual module is k^3, so beta_j(dual R) = 3 * 2^(j-1)).
  * square-zero (1,3) point: same method gives mu = 3, then
    ker(R^3 -> R^9) = 9 minus image 1 = 8, then tripling: 24, 72.
  * tensor square of the (1,2) point: Bass numbers convolve,
    mu_j = sum mu_a * mu_b over a + b = j: 4, 12, 33, 84.
  * Gorenstein corpus rings (x^d truncations, the two-variable complete
    intersection, the trivial extension): R is cofree, so the Bass
    sequence is 1, 0, 0, ... exactly.
  * codim-two complete intersection: Ext^j(k,k) = j + 1, and no syzygy
    of k repeats or becomes semisimple, so the tail stays window-graded.
"""

from hypothesis import given, settings
from hypothesis import strategies as st
import numpy as np
import pytest

from dcx.algebra import RingMat
from dcx.corpus import build_ring
from dcx.cplx import ChainMap, FreeComplex, complex_from_module
from dcx.derived import (
    Certificate,
    DimSeq,
    _Tail,
    amplitude_of,
    bass_positive_forever,
    bass_sequence,
    betti_positive_forever,
    betti_sequence,
    depth_of,
    dtensor,
    ext_dims,
    injective_dimension,
    is_cohen_macaulay,
    krull_dim_of,
    min_gens_betti_check,
    projective_dimension,
    rhom,
    socle_bass_check,
    tor_dims,
    type_of,
)
from dcx.errors import EngineInconsistency, WindowExceeded, ZeroComplex
from dcx.exact import Mat
from dcx.fgmod import (
    canonical_module,
    free_module,
    presented_module,
    residue_field_module,
    zero_module,
)

PT = build_ring("pt")
D2 = build_ring("d2")
D3 = build_ring("d3")
D4 = build_ring("d4")
CI2 = build_ring("ci2")
FAT = build_ring("fat")
FAT3 = build_ring("fat3")
PROD = build_ring("prod")
TRIV = build_ring("triv")


def _k(alg):
    return residue_field_module(alg)


# -- certificates and dimension sequences ----------------------------------------


def test_certificate_ordering_and_json():
    e = Certificate.exact(rule="free")
    p = Certificate.periodic(start=1, period=2)
    w = Certificate.window(5)
    assert e.rank > p.rank > w.rank
    assert e.is_certain and p.is_certain and not w.is_certain
    assert Certificate.weakest([e, p, w]) == w
    assert Certificate.weakest([e, p]) == p
    blob = p.to_json()
    assert blob["kind"] == "periodic" and blob["start"] == 1


def test_dimseq_extends_through_certified_tails():
    per = DimSeq([1, 1, 1, 1], _Tail("periodic", start=1, period=1))
    assert per.dim(40) == 1
    geo = DimSeq([1, 2, 4, 8], _Tail("geometric", start=1, ratio=2))
    assert geo.dim(10) == 2**10
    unk = DimSeq([1, 2, 3], _Tail("unknown"))
    assert unk.dim(2) == 3
    with pytest.raises(WindowExceeded):
        unk.dim(3)
    assert unk.known(3) is None
    assert per.values(5) == [1] * 6


def test_dimseq_rejects_window_values_that_break_the_tail():
    with pytest.raises(EngineInconsistency):
        DimSeq([1, 2, 1], _Tail("periodic", start=0, period=1))
    with pytest.raises(EngineInconsistency):
        DimSeq([1, 2, 5], _Tail("geometric", start=0, ratio=2))
    with pytest.raises(EngineInconsistency):
        DimSeq([0, 0, 3], _Tail("zero", start=0))
    # a periodic claim whose period does not fit the window is unverifiable
    with pytest.raises(EngineInconsistency):
        DimSeq([1, 1], _Tail("periodic", start=1, period=3))


def test_eventually_zero_sees_past_the_window_edge():
    seq = DimSeq([1, 0, 1, 0, 1, 0], _Tail("periodic", start=0, period=2))
    verdict, cert = seq.eventually_zero(5)
    # the window part from degree 5 is zero, but the certified tail revives
    assert verdict is False
    assert cert.kind == "exact"
    assert cert.params["witness_degree"] == 6 and cert.params["value"] == 1


def test_support_top_three_outcomes():
    dead = DimSeq([2, 1, 0, 0], _Tail("zero", start=2))
    kind, j, cert = dead.support_top()
    assert (kind, j) == ("finite", 1) and cert.is_certain
    alive = DimSeq([1, 2, 4], _Tail("geometric", start=1, ratio=2))
    kind, j, _ = alive.support_top()
    assert (kind, j) == ("unbounded", None)
    nothing = DimSeq([0, 0, 0], _Tail("zero", start=0))
    assert nothing.support_top()[0] == "zero"
    murky = DimSeq([1, 1, 1], _Tail("unknown"))
    with pytest.raises(WindowExceeded):
        murky.support_top()


# -- Ext and Tor against the corpus oracles --------------------------------------


def test_ext_of_k_with_itself_hypersurfaces():
    s2 = ext_dims(_k(D2), _k(D2), window=6)
    assert s2.values(6) == [1] * 7
    assert s2.certificate().kind == "periodic"
    assert s2.dim(50) == 1
    s3 = ext_dims(_k(D3), _k(D3), window=6)
    assert s3.values(6) == [1] * 7
    assert s3.tail.period == 2
    assert s3.dim(51) == 1


def test_ext_of_k_into_ring_vanishes_for_self_injective_rings():
    for alg in (D2, D3):
        seq = ext_dims(_k(alg), free_module(alg, 1), window=6)
        assert seq.values(6) == [1, 0, 0, 0, 0, 0, 0]
        verdict, cert = seq.eventually_zero(1)
        assert verdict is True and cert.is_certain


def test_ext_of_k_doubles_over_the_square_zero_point():
    seq = ext_dims(_k(FAT), _k(FAT), window=5)
    assert seq.values(5) == [1, 2, 4, 8, 16, 32]
    cert = seq.certificate()
    assert cert.kind == "periodic" and cert.params["ratio"] == 2
    assert seq.dim(12) == 2**12
    kind, _, _ = seq.support_top()
    assert kind == "unbounded"


def test_ext_over_complete_intersection_stays_window_graded():
    kk = ext_dims(_k(CI2), _k(CI2), window=4)
    assert kk.values(4) == [1, 2, 3, 4, 5]
    assert kk.certificate().kind == "window"
    with pytest.raises(WindowExceeded):
        kk.dim(5)
    with pytest.raises(WindowExceeded):
        kk.support_top()
    kr = ext_dims(_k(CI2), free_module(CI2, 1), window=4)
    assert kr.values(4) == [1, 0, 0, 0, 0]
    # the resolution route alone cannot certify the vanishing tail here
    verdict, cert = kr.eventually_zero(1)
    assert verdict is None and cert.kind == "window"


def test_tor_of_k_with_flat_and_with_itself():
    flat = tor_dims(_k(D3), free_module(D3, 1), window=5)
    assert flat.values(5) == [1, 0, 0, 0, 0, 0]
    assert flat.eventually_zero(1)[0] is True
    kk = tor_dims(_k(FAT), _k(FAT), window=4)
    assert kk.values(4) == [1, 2, 4, 8, 16]
    assert kk.dim(9) == 2**9


def test_ext_and_tor_agree_with_direct_degree_zero_routes():
    omega = canonical_module(FAT)
    ext_dims(omega, _k(FAT), window=3, cross_check=True)
    tor_dims(omega, _k(FAT), window=3, cross_check=True)
    ext_dims(_k(CI2), free_module(CI2, 1), window=3, cross_check=True)
    tor_dims(_k(TRIV), _k(TRIV), window=2, cross_check=True)


def test_zero_arguments_short_circuit():
    z = zero_module(FAT)
    seq = ext_dims(z, _k(FAT), window=4)
    assert seq.values(4) == [0] * 5
    assert seq.support_top()[0] == "zero"
    assert tor_dims(_k(FAT), z, window=4).dim(99) == 0


# -- Betti and Bass sequences -----------------------------------------------------


def test_betti_sequence_matches_resolution_and_extends():
    b = betti_sequence(_k(FAT), window=5)
    assert b.values(5) == [1, 2, 4, 8, 16, 32]
    assert b.dim(20) == 2**20
    t = betti_sequence(_k(TRIV), window=3)
    assert b.certificate().is_certain
    assert t.values(3) == [1, 4, 15, 56]
    assert t.certificate().kind == "window"
    with pytest.raises(WindowExceeded):
        t.dim(4)


def test_betti_cross_check_through_the_symmetric_tor_route():
    betti_sequence(canonical_module(FAT), window=3, cross_check=True)
    betti_sequence(_k(D3), window=4, cross_check=True)


def test_bass_sequence_of_gorenstein_rings_is_a_spike():
    for alg in (D2, D3, D4, CI2, TRIV):
        mu = bass_sequence(free_module(alg, 1, name="ring"), window=4)
        assert mu.values(4) == [1, 0, 0, 0, 0]
        verdict, cert = mu.eventually_zero(1)
        assert verdict is True and cert.kind == "exact"
        assert mu.support_top() == ("finite", 0, mu.certificate())


def test_bass_sequence_of_the_square_zero_points():
    mu = bass_sequence(free_module(FAT, 1), window=5)
    assert mu.values(5) == [2, 3, 6, 12, 24, 48]
    assert mu.certificate().is_certain
    assert mu.dim(8) == 3 * 2**7
    mu3 = bass_sequence(free_module(FAT3, 1), window=3)
    assert mu3.values(3) == [3, 8, 24, 72]
    assert mu3.dim(5) == 8 * 3**4


def test_bass_sequence_convolves_over_the_tensor_square():
    mu = bass_sequence(free_module(PROD, 1), window=3, cross_check=True)
    assert mu.values(3) == [4, 12, 33, 84]
    assert mu.certificate().kind == "window"


def test_bass_cross_check_through_matlis_duality():
    bass_sequence(free_module(FAT, 1), window=3, cross_check=True)
    bass_sequence(_k(FAT), window=3, cross_check=True)


def test_bass_of_canonical_module_is_exact_socle_spike():
    for alg in (FAT, FAT3, PROD, TRIV):
        omega = canonical_module(alg)
        mu = bass_sequence(omega, window=4)
        assert mu.values(4) == [1, 0, 0, 0, 0]
        assert mu.certificate().kind == "exact"


def test_socle_and_min_gens_checks_agree_on_corpus_modules():
    assert socle_bass_check(free_module(FAT, 1)) == 2
    assert socle_bass_check(canonical_module(FAT3)) == 1
    assert socle_bass_check(_k(PROD)) == 1
    assert min_gens_betti_check(canonical_module(FAT)) == 2
    assert min_gens_betti_check(_k(TRIV)) == 1
    assert min_gens_betti_check(free_module(D4, 3)) == 3


# -- projective and injective dimension -------------------------------------------


def test_projective_dimension_dichotomy():
    pd, cert = projective_dimension(free_module(FAT, 2))
    assert pd == 0 and cert.kind == "exact"
    pd, cert = projective_dimension(_k(FAT))
    assert pd is None and cert.kind == "exact"
    assert projective_dimension(zero_module(FAT))[0] == -1
    assert projective_dimension(_k(PT))[0] == 0
    omega = canonical_module(TRIV)
    assert projective_dimension(omega)[0] == 0


def test_injective_dimension_dichotomy():
    idim, cert = injective_dimension(canonical_module(FAT))
    assert idim == 0 and cert.kind == "exact"
    idim, _ = injective_dimension(_k(FAT))
    assert idim is None
    assert injective_dimension(free_module(D2, 1))[0] == 0
    assert injective_dimension(free_module(FAT, 1))[0] is None
    assert injective_dimension(zero_module(FAT))[0] == -1


def test_positivity_forever_flags():
    assert betti_positive_forever(_k(FAT)) == (
        True,
        Certificate.exact(rule="nonfree-over-artinian"),
    )
    assert betti_positive_forever(free_module(FAT, 1))[0] is False
    assert bass_positive_forever(_k(FAT))[0] is True
    assert bass_positive_forever(canonical_module(FAT))[0] is False
    assert bass_positive_forever(free_module(D3, 2))[0] is False


# -- derived complexes -------------------------------------------------------------


def test_rhom_window_matches_ext_and_guards_below():
    D = rhom(_k(FAT), free_module(FAT, 1), window=5)
    mu = bass_sequence(free_module(FAT, 1), window=4)
    for j in range(5):
        assert D.homology_dim(-j) == mu.dim(j)
    # a shared resolution may already be deeper than the requested window
    assert D.honest_lo <= -4
    with pytest.raises(WindowExceeded):
        D.homology_dim(D.honest_lo - 1)
    assert D.sup_h() == 0
    with pytest.raises(WindowExceeded):
        D.inf_h()


def test_rhom_honest_range_is_exact_on_a_fresh_ring():
    alg = build_ring("fat")
    D = rhom(_k(alg), free_module(alg, 1), window=5)
    assert D.honest_lo == -4
    with pytest.raises(WindowExceeded):
        D.homology_dim(-5)


def test_rhom_of_free_argument_is_fully_honest():
    D = rhom(free_module(FAT, 2), _k(FAT), window=3)
    assert D.honest_lo is None and D.honest_hi is None
    assert D.homology_dim(0) == 2
    assert D.sup_h() == 0 and D.inf_h() == 0
    assert D.amplitude() == 0


def test_rhom_homology_module_carries_the_socle():
    D = rhom(_k(D2), free_module(D2, 1), window=4)
    H0 = D.homology_module(0)
    assert H0.dim == 1 and H0.socle_dim == 1


def test_dtensor_window_matches_tor_and_guards_above():
    T = dtensor(_k(FAT), _k(FAT), window=3)
    assert T.honest_hi >= 2
    assert [T.homology_dim(j) for j in range(3)] == [1, 2, 4]
    with pytest.raises(WindowExceeded):
        T.homology_dim(T.honest_hi + 1)
    assert T.inf_h() == 0
    fresh = build_ring("fat")
    Tf = dtensor(_k(fresh), _k(fresh), window=3)
    assert Tf.honest_hi == 2
    with pytest.raises(WindowExceeded):
        Tf.homology_dim(3)


def test_dtensor_with_flat_argument_closes_up():
    T = dtensor(free_module(D3, 1), _k(D3), window=4)
    assert T.honest_hi is None
    assert T.homology_dim(0) == 1
    assert T.sup_h() == 0


def test_rhom_accepts_free_complexes_without_resolving():
    F = FreeComplex(D2, 0, 1, {0: 1, 1: 1}, {1: RingMat.from_entries(D2, [["x"]])})
    D = rhom(F, free_module(D2, 1), window=2)
    assert D.honest_lo is None
    # Hom(F, R) has homology k at degree -1 and socle at 0
    assert D.homology_dim(-1) == 1
    assert D.homology_dim(0) == 1


# -- invariants of complexes --------------------------------------------------------


def test_module_invariants_through_the_complex_interface():
    omega = canonical_module(FAT)
    assert depth_of(omega) == 0
    assert krull_dim_of(omega) == 0
    assert amplitude_of(omega) == 0
    assert is_cohen_macaulay(omega)
    assert type_of(omega) == 1
    assert type_of(free_module(FAT, 1)) == 2
    assert type_of(free_module(FAT3, 1)) == 3
    assert type_of(free_module(PROD, 1)) == 4
    assert type_of(free_module(TRIV, 1)) == 1


def test_two_term_complex_invariants():
    F = FreeComplex(D2, 0, 1, {0: 1, 1: 1}, {1: RingMat.from_entries(D2, [["x"]])})
    X = F.to_complex()
    assert depth_of(X) == -1
    assert krull_dim_of(X) == 0
    assert amplitude_of(X) == 1
    assert not is_cohen_macaulay(X)
    assert type_of(X) == 1


def test_shifted_module_slides_invariants():
    X = complex_from_module(canonical_module(FAT)).shift(3)
    assert depth_of(X) == -3
    assert krull_dim_of(X) == -3
    assert is_cohen_macaulay(X)


def test_exact_complex_has_no_invariants():
    F = FreeComplex(D2, 0, 1, {0: 1, 1: 1}, {1: RingMat.from_entries(D2, [["x"]])})
    X = F.to_complex()
    idm = ChainMap(
        X, X, {v: Mat.identity(D2.field, X.term_dim(v)) for v in X.degrees()}
    )
    C = idm.cone()
    with pytest.raises(ZeroComplex):
        depth_of(C)
    with pytest.raises(ZeroComplex):
        type_of(C)


# -- randomized laws ----------------------------------------------------------------


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
def test_random_module_dimension_laws(M):
    if M.dim == 0:
        return
    # two independent routes to the extreme Bass and Betti numbers
    assert socle_bass_check(M) == M.socle_dim
    assert min_gens_betti_check(M) == M.min_gens
    # the canonical module is injective: higher Ext into it vanishes
    omega = canonical_module(FAT)
    assert ext_dims(M, omega, window=3).values(3)[1:] == [0, 0, 0]
    # the ring is flat: higher Tor against it vanishes
    assert tor_dims(M, free_module(FAT, 1), window=3).values(3)[1:] == [0, 0, 0]
    # degree-zero cross checks hold on arbitrary modules
    ext_dims(M, _k(FAT), window=2, cross_check=True)
    tor_dims(M, M, window=2, cross_check=True)
