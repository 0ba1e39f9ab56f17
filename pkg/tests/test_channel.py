import numpy as np
import pytest

from corrlab import ParameterError, UraGeometry
from corrlab.channel import ChannelDims, correlated_channel, iid_channel, realize, trial_seed
from corrlab.correlation import transmit_correlation
from corrlab.errors import NotPSDError, SizeError
from corrlab.numkit import psd_sqrt


def test_dims_validation():
    assert ChannelDims(100, 10).ratio == 10
    for m, k in [(5, 10), (4, 0)]:
        with pytest.raises(ParameterError):
            ChannelDims(m, k)


def test_iid_statistics():
    h = iid_channel(ChannelDims(400, 250), seed=3)
    n = h.size
    assert abs(h.mean()) < 4 / np.sqrt(n)
    assert np.mean(np.abs(h) ** 2) == pytest.approx(1.0, abs=4 / np.sqrt(n))
    assert np.var(h.real) == pytest.approx(0.5, abs=0.02)
    assert abs(np.mean(h.real * h.imag)) < 0.01


def test_seeded_determinism():
    dims = ChannelDims(8, 4)
    a = iid_channel(dims, trial_seed(1, 8, 4, 17))
    b = iid_channel(dims, trial_seed(1, 8, 4, 17))
    c = iid_channel(dims, trial_seed(1, 8, 4, 18))
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, c)


def test_trial_seed_independent_of_order():
    seeds = [trial_seed(5, 10, 2, t).generate_state(2).tolist() for t in range(4)]
    again = [trial_seed(5, 10, 2, t).generate_state(2).tolist() for t in reversed(range(4))]
    assert seeds == list(reversed(again))


def test_identity_correlation_is_noop(rng):
    h = iid_channel(ChannelDims(6, 3), rng)
    np.testing.assert_allclose(correlated_channel(np.eye(6), h), h, atol=1e-14)


def test_rank_one_correlation():
    # full correlation makes every row equal
    h = iid_channel(ChannelDims(5, 3), seed=1)
    out = correlated_channel(np.ones((5, 5)), h)
    np.testing.assert_allclose(out, np.broadcast_to(out[0], out.shape), atol=1e-12)
    np.testing.assert_allclose(out[0], h.sum(axis=0) / np.sqrt(5), atol=1e-12)


def test_covariance_converges(ref_cluster):
    r_t = transmit_correlation(UraGeometry(2, 3), ref_cluster).r_t
    root = psd_sqrt(r_t)
    n = 10**4
    rng = np.random.default_rng(11)
    h_iid = (rng.standard_normal((6, n)) + 1j * rng.standard_normal((6, n))) * np.sqrt(0.5)
    h = correlated_channel(None, h_iid, r_t_sqrt=root)
    emp = h @ h.conj().T / n
    assert np.max(np.abs(emp - r_t)) < 0.05


def test_rejects_not_psd_and_shape():
    bad = np.array([[1.0, 2.0], [2.0, 1.0]])
    h = iid_channel(ChannelDims(2, 1), seed=0)
    with pytest.raises(NotPSDError) as info:
        correlated_channel(bad, h)
    assert info.value.min_eigenvalue == pytest.approx(-1.0)
    with pytest.raises(SizeError):
        correlated_channel(np.eye(3), h)


def test_realize_iid_and_correlated():
    dims = ChannelDims(4, 2)
    plain = realize(dims, seed=9)
    np.testing.assert_array_equal(plain.h, plain.h_iid)
    root = psd_sqrt(0.5 * (np.eye(4) + np.ones((4, 4)) / 4))
    corr = realize(dims, seed=9, r_t_sqrt=root)
    np.testing.assert_array_equal(corr.h_iid, plain.h_iid)
    np.testing.assert_allclose(corr.h, root @ plain.h_iid)
