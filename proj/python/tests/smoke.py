"""Smoke tests for the python bindings (plain asserts, no test framework)."""

import math

import stratakit as sk


def test_counts():
    assert sk.count_D(3) == 4
    assert sk.count_D(7) == 40
    assert sk.catalan(3) == 5
    assert sk.dispersed_count(3) == 3
    assert sk.count_Dkm(4, 3) == 3
    assert len(sk.enumerate_strata(4)) == 6


def test_roots_and_residues():
    P = sk.RealPolyField(1, [1.0])  # z^2 + 1
    roots = sk.find_roots(P)
    assert len(roots) == 2
    assert any(abs(r.location - 1j) < 1e-12 for r in roots)
    assert abs(sk.residue_sum(P)) < 1e-12
    ok, diag = sk.is_generic_real(P)
    assert not ok and "center" in diag
    assert sk.classify_eigenvalue(3j) == "center"


def test_modulus_and_realize():
    up = sk.extract_modulus(sk.RealPolyField(1, [1.0]))
    assert up.eta_R is not None and abs(up.eta_R - math.pi) < 1e-9

    down = sk.extract_modulus(sk.RealPolyField(1, [-1.0]))
    assert abs(down.eta_I[0] - math.pi) < 1e-8

    poly, residual, _ = sk.realize(down)
    assert abs(poly.coeffs[0] + 1.0) < 1e-7
    assert residual < 1e-7

    cubic = sk.extract_modulus(sk.RealPolyField(2, [1.0, 0.0]))
    assert abs(cubic.eta_H[0] - math.pi * 1j) < 1e-7


def test_combinatorics_round_trip():
    for tau in sk.enumerate_strata(4):
        word = sk.involution_to_path(tau)
        assert sk.path_to_involution(word) == tau
    classes, forest = sk.attachment_classes(sk.NonXInvolution(2, 0, [1, 2]))
    assert classes == [[0], [1, 3], [2]]
    assert forest == ["", "", ""]


def test_classifier():
    assert sk.classify_k3(1, 0, -1).label == "homoclinic-pair-m2"
    assert sk.classify_k3(2, 0, 1).label == "nonreal-parabolic-pair"
    gen = sk.classify_k3(0, 1, 1)
    assert gen.label == "generic" and gen.stratum
    assert sk.discriminant(0, 0, 1) == 256.0


def test_portrait():
    svg = sk.render_portrait(sk.RealPolyField(1, [-1.0]), tree=True)
    assert svg.startswith("<svg")
    assert "separatrix" in svg


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        test()
        print(f"{test.__name__}: ok")


if __name__ == "__main__":
    main()
