from poisson_inv.spaces import inv_space
from poisson_inv.vanishing import certify_vanishing, equivariance_groups


def test_groups_cover_every_irreducible():
    assert len(equivariance_groups(1)) == 1
    # trivial and sign of the full group cover the two one-dimensional irreducibles
    groups = equivariance_groups(4)
    assert ((4, False),) in groups and ((4, True),) in groups


def test_certificates_agree_with_direct_computation():
    for n in range(2, 6):
        for m in range(2, 8):
            if certify_vanishing(n, m):
                assert inv_space(n, 1, m, "graph").dim == 0


def test_known_zero_tails_are_certified():
    assert certify_vanishing(3, 3)
    assert certify_vanishing(4, 5)
    assert certify_vanishing(5, 6)


def test_nonzero_pieces_are_not_certified():
    assert not certify_vanishing(4, 4)
    assert not certify_vanishing(5, 5)
    assert not certify_vanishing(3, 1)
