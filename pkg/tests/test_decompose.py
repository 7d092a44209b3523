import numpy as np

from quivercm.algebra import build_algebra_table, build_lambda_k
from quivercm.decompose import decompose, end_over_rad_dim, is_isomorphic
from quivercm.quiver import load_fixture
from quivercm import rep as R

from test_modules import L2, random_l2_module

KA2 = build_algebra_table(load_fixture("ka2"))


def test_indecomposable_projective():
    p1 = R.projective_module(KA2, "1")
    out = decompose(p1)
    assert len(out) == 1
    assert out[0].multiplicity == 1
    assert out[0].end_over_rad_dim == 1


def test_regular_module_splits_into_projectives():
    reg = R.regular_representation(KA2)
    out = decompose(reg)
    dims = sorted(s.rep.dim_vector() for s in out)
    assert dims == [(0, 1), (1, 1)]
    assert all(s.multiplicity == 1 for s in out)


def test_multiplicity_counted():
    s1 = R.simple_module(KA2, "1")
    m, _, _ = R.direct_sum([s1, s1])
    out = decompose(m)
    assert len(out) == 1
    assert out[0].multiplicity == 2
    assert out[0].rep.dim_vector() == (1, 0)


def test_mixed_sum_over_l2():
    rng = np.random.default_rng(31)
    p1 = R.projective_module(L2, "1")
    s2 = R.simple_module(L2, "2")
    m, _, _ = R.direct_sum([p1, s2, s2, p1, p1])
    out = decompose(m, rng)
    mult = {s.rep.dim_vector(): s.multiplicity for s in out}
    assert mult == {(2, 2): 3, (0, 1): 2}


def test_is_isomorphic_identity_and_dim_filter():
    rng = np.random.default_rng(1)
    m = random_l2_module(rng)
    ok, cert = is_isomorphic(m, m, rng)
    assert ok and cert.is_isomorphism()
    s1, s2 = R.simple_module(L2, "1"), R.simple_module(L2, "2")
    assert is_isomorphic(s1, s2, rng) == (False, None)


def test_is_isomorphic_base_change_certificate():
    # the same module written in a random new basis: certified isomorphic
    rng = np.random.default_rng(7)
    from quivercm.linalg import inverse

    m = R.projective_module(L2, "1")
    fld = m.field
    g = {}
    for v in L2.vertices:
        while True:
            cand = fld.rand(rng, m.dims[v], m.dims[v])
            if inverse(fld, cand) is not None:
                g[v] = cand
                break
    mats = {}
    for a in L2.arrows:
        gi = inverse(fld, g[a.source])
        mats[a.label] = fld.matmul(g[a.target], fld.matmul(m.mats[a.label], gi))
    n = R.Representation(L2, dict(m.dims), mats)
    ok, cert = is_isomorphic(m, n, rng)
    assert ok
    assert cert is not None and cert.is_isomorphism() and cert.is_intertwiner()


def test_non_isomorphic_same_dim_vector():
    # over KA_2: P(1) vs S_1 (+) S_2 share the dim vector (1,1)
    rng = np.random.default_rng(3)
    p1 = R.projective_module(KA2, "1")
    s12, _, _ = R.direct_sum([R.simple_module(KA2, "1"), R.simple_module(KA2, "2")])
    ok, cert = is_isomorphic(p1, s12, rng)
    assert not ok and cert is None


def test_end_over_rad_records_one_for_tree_modules():
    rng = np.random.default_rng(11)
    for _ in range(5):
        m = random_l2_module(rng)
        for s in decompose(m, rng):
            assert s.end_over_rad_dim == 1  # tree-shaped fixtures: absolutely indec


def test_decompose_roundtrip_random():
    rng = np.random.default_rng(23)
    for _ in range(6):
        m = random_l2_module(rng)
        out = decompose(m, rng)
        reps = [s.rep for s in out for _ in range(s.multiplicity)]
        total, _, _ = R.direct_sum(reps)
        ok, _ = is_isomorphic(total, m, rng)
        assert ok
