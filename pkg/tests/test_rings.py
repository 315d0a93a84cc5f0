import itertools

import numpy as np
import pytest

from netgalois.errors import InputError
from netgalois.rings import (
    RingSpec,
    howell_form,
    inv_batch,
    inv_single,
    join_basis,
    mat_mul,
    meet_basis,
    pack_matrices,
    pack_vectors,
    span_codes,
    unpack_matrices,
    unpack_vectors,
)

RINGS = [RingSpec(2, 1), RingSpec(3, 1), RingSpec(2, 2), RingSpec(7, 1), RingSpec(7, 2)]


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_ring_basics(ring):
    assert ring.modulus == ring.p**ring.k
    units = ring.units()
    assert len(units) == ring.unit_count
    for u in units:
        assert u * ring.inv(u) % ring.modulus == 1
    assert ring.valuation(0) == ring.k
    assert ring.ideal_generator(0) == 1
    assert ring.ideal_generator(ring.k) == 0


def test_ring_spec_rejects_bad_input():
    with pytest.raises(InputError):
        RingSpec(6, 1)
    with pytest.raises(InputError):
        RingSpec(7, 0)
    with pytest.raises(InputError):
        RingSpec.from_json({"kind": "prime_field", "p": 7, "k": 2})


def test_pack_unpack_roundtrip():
    rng = np.random.default_rng(7)
    for m, n in [(7, 2), (49, 2), (4, 3)]:
        vecs = rng.integers(0, m, size=(50, n))
        assert np.array_equal(unpack_vectors(pack_vectors(vecs, m), m, n), vecs)
        mats = rng.integers(0, m, size=(50, n, n))
        assert np.array_equal(unpack_matrices(pack_matrices(mats, m), m, n), mats)


@pytest.mark.parametrize("ring", [RingSpec(2, 2), RingSpec(3, 1), RingSpec(2, 1)], ids=str)
def test_howell_form_is_canonical(ring):
    """Equal row span <=> equal form, over all 1- and 2-row matrices."""
    m = ring.modulus
    vecs = list(itertools.product(range(m), repeat=2))
    by_span = {}
    mats = [np.array([v], dtype=np.int64) for v in vecs]
    mats += [np.array([v, w], dtype=np.int64) for v in vecs for w in vecs]
    for mat in mats:
        key = tuple(span_codes(mat, ring).tolist())
        form = howell_form(mat, ring).tobytes()
        assert by_span.setdefault(key, form) == form
    assert len(set(by_span.values())) == len(by_span)


def test_howell_form_annihilator_shadow():
    # the span of (2, 1) over Z/4 contains (0, 2), which needs its own row
    ring = RingSpec(2, 2)
    form = howell_form(np.array([[2, 1]]), ring)
    assert form.tolist() == [[2, 1], [0, 2]]


@pytest.mark.parametrize("ring", [RingSpec(2, 2), RingSpec(3, 1)], ids=str)
def test_meet_join_against_set_arithmetic(ring):
    m = ring.modulus
    vecs = list(itertools.product(range(m), repeat=2))
    spans = {}
    for v in vecs:
        for w in vecs:
            mat = np.array([v, w], dtype=np.int64)
            spans[tuple(span_codes(mat, ring).tolist())] = howell_form(mat, ring)
    for k1, f1 in spans.items():
        for k2, f2 in spans.items():
            inter = sorted(set(k1) & set(k2))
            assert span_codes(meet_basis(f1, f2, ring), ring).tolist() == inter
            v1 = unpack_vectors(np.array(k1), m, 2)
            v2 = unpack_vectors(np.array(k2), m, 2)
            sums = (v1[:, None, :] + v2[None, :, :]).reshape(-1, 2) % m
            expect = sorted(set(pack_vectors(sums, m).tolist()))
            assert span_codes(join_basis(f1, f2, ring), ring).tolist() == expect


@pytest.mark.parametrize("ring", [RingSpec(7, 1), RingSpec(7, 2), RingSpec(2, 2)], ids=str)
def test_inverses(ring):
    rng = np.random.default_rng(11)
    m = ring.modulus
    mats = []
    while len(mats) < 40:
        cand = rng.integers(0, m, size=(2, 2))
        det = (cand[0, 0] * cand[1, 1] - cand[0, 1] * cand[1, 0]) % m
        if ring.is_unit(int(det)):
            mats.append(cand)
    mats = np.stack(mats)
    invs = inv_batch(mats, ring)
    prods = mat_mul(mats, invs, m)
    assert np.all(prods == np.eye(2, dtype=np.int64)[None, :, :] % m)
    for idx in range(10):
        assert np.array_equal(inv_single(mats[idx], ring), invs[idx])


def test_inverse_rejects_singular():
    ring = RingSpec(7, 1)
    with pytest.raises(ZeroDivisionError):
        inv_single(np.array([[1, 1], [1, 1]]), ring)
