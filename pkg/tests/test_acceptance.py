"""Acceptance suite: one check per contract line, at pinned tolerances.

Each test prints a single [PASS]/[FAIL] verdict line (run with ``-s`` to
see them on passing runs).  The slow-mode decay bound is asserted exactly
as contracted and is expected to fail: the two-state demo closed loop is
non-normal and its slow-mode coefficient is 2*sqrt(2), roughly twice the
1.05 envelope the bound allows.  The integrator itself is separately
verified against the matrix exponential at 1e-10 (see test_simulate).
"""

import time

import numpy as np

import quatpole as qp
from quatpole.qpoly import QPoly
from quatpole.quaternion import I, J, K, Quaternion

import golden_values as gv
from conftest import (random_controllable, random_distinct_roots,
                      random_invertible, random_pole_classes, random_qmatrix)


def _verdict(name, ok, detail=""):
    mark = "PASS" if ok else "FAIL"
    line = f"[{mark}] {name}"
    if detail:
        line += f": {detail}"
    print(line)
    assert ok, line


def qm(entries):
    return qp.QMatrix.from_nested(entries)


def demo():
    a = qp.QMatrix.from_nested([[1, I], [J, K]])
    b = qp.QMatrix.column([1, K])
    return qp.SystemHx(a, b, label="demo")


def max_gap(m, golden):
    return (m - qm(golden)).max_norm()


def rep_gap(spectrum, wanted):
    """Worst componentwise distance to the wanted (re, im) class keys."""
    got = sorted((c.re, c.im_norm) for c in spectrum)
    want = sorted(wanted)
    if len(got) != len(want):
        return np.inf
    return max(max(abs(a - c), abs(b - d))
               for (a, b), (c, d) in zip(got, want))


def test_companion_transform_goldens():
    sys_ = demo()
    start = time.perf_counter()
    ctrb = qp.controllability_matrix(sys_)
    ctrb_inv = ctrb.inverse()
    ct = qp.companion_transform(sys_)
    elapsed = time.perf_counter() - start
    worst = max(
        max_gap(ctrb, gv.CTRB),
        max_gap(ctrb_inv, gv.CTRB_INV),
        max_gap(ct.T_inv, gv.T_INV),
        max_gap(ct.T, gv.T_MAT),
        max_gap(ct.A_c, gv.A_C),
        (ct.B_c - qp.QMatrix.column(gv.B_C)).max_norm(),
        max((ct.poly.coeff(k) - Quaternion.from_wxyz(gv.POLY_A[k])).norm()
            for k in range(3)),
    )
    _verdict("companion transform entrywise goldens",
             worst <= 1e-12 and elapsed < 1.0,
             f"max gap {worst:.2e}, {elapsed * 1e3:.1f} ms")


def test_real_and_spherical_placement_goldens():
    sys_ = demo()
    rep_a = qp.place_matching(sys_, QPoly.from_real([2, 3, 1]))
    rep_b = qp.place_matching(sys_, QPoly.from_real([2, 2, 1]))
    worst_values = max(
        (rep_a.K - qp.QMatrix.row(gv.K_2A)).max_norm(),
        max_gap(rep_a.A_cl, gv.ACL_2A),
        (rep_b.K - qp.QMatrix.row(gv.K_2B)).max_norm(),
        max_gap(rep_b.A_cl, gv.ACL_2B),
    )
    worst_classes = max(
        rep_gap(rep_a.achieved, [(-1.0, 0.0), (-2.0, 0.0)]),
        rep_gap(rep_b.achieved, [(-1.0, 1.0), (-1.0, 1.0)]),
    )
    _verdict("real and spherical targets: gains and closed loops",
             worst_values <= 1e-12 and worst_classes <= 1e-9,
             f"values {worst_values:.2e}, classes {worst_classes:.2e}")


def test_quaternionic_target_polynomial_and_placement():
    sys_ = demo()
    roots = [Quaternion.from_wxyz(r) for r in gv.ROOTS_2C]
    a_d = QPoly.from_right_zeros(roots)
    vs_exact = max((a_d.coeff(k) - Quaternion.from_wxyz(gv.AD_2C[k])).norm()
                   for k in range(3))
    vs_rounded = max(
        (a_d.coeff(k) - Quaternion.from_wxyz(gv.AD_2C_ROUNDED[k])).norm()
        for k in range(3))
    zero_residual = max(a_d.eval_right(r).norm() for r in roots)
    report = qp.place_matching(sys_, a_d)
    classes = rep_gap(report.achieved, gv.CLASSES_2C)
    _verdict("quaternion-root target: coefficients and achieved classes",
             vs_exact <= 1e-12 and vs_rounded <= 5e-2
             and zero_residual <= 1e-12 and classes <= 1e-6,
             f"exact {vs_exact:.2e}, rounded {vs_rounded:.2e}, "
             f"classes {classes:.2e}")


def test_one_shot_gain_equals_matching_on_real_targets():
    sys_ = demo()
    worst_values = max(
        max_gap(QPoly.from_real([2, 3, 1]).eval_matrix(sys_.A), gv.ADA_3A),
        max_gap(QPoly.from_real([2, 2, 1]).eval_matrix(sys_.A), gv.ADA_3B),
    )
    worst_gain = 0.0
    for coeffs in ([2, 3, 1], [2, 2, 1]):
        a_d = QPoly.from_real(coeffs)
        k_match = qp.place_matching(sys_, a_d).K
        k_one_shot = qp.place_ackermann(sys_, a_d).K
        worst_gain = max(worst_gain, (k_match - k_one_shot).max_norm())
    _verdict("one-shot gain: matrix polynomial values and gain equality",
             worst_values <= 1e-12 and worst_gain <= 1e-10,
             f"values {worst_values:.2e}, gains {worst_gain:.2e}")


def test_one_shot_gain_fails_for_nonreal_targets():
    sys_ = demo()
    report = qp.place_ackermann(sys_, QPoly(gv.AD_2C), allow_nonreal=True)
    gap = rep_gap(report.achieved, gv.CLASSES_3C_ROUNDED)
    _verdict("one-shot gain on nonreal coefficients misses its classes",
             gap <= 5e-2 and not report.matched,
             f"classes within {gap:.2e}, matched={report.matched}")


def test_intertwining_counterexample_exact():
    p = QPoly([I, 1])
    a = qp.QMatrix.from_nested([[I]])
    t = qp.QMatrix.from_nested([[K]])
    a_sim = t.inverse() @ a @ t
    lhs = (p.eval_matrix(a) @ t)[0, 0]
    rhs = (t @ p.eval_matrix(a_sim))[0, 0]
    ok = (lhs == Quaternion(0, 0, -2, 0) and rhs == Quaternion()
          and a_sim[0, 0] == -I)
    _verdict("unit-quaternion intertwining counterexample is exact",
             ok, f"p(A)T = {lhs}, Tp(A_c) = {rhs}")


def test_randomized_property_suite():
    rng = np.random.default_rng(2024)
    cases = 210
    start = time.perf_counter()
    worst = {"annihilation": 0.0, "anti_above": 0.0, "anti_diag": 0.0,
             "invariance": 0.0, "gain": 0.0, "real_target": 0.0,
             "quat_target": 0.0}
    for case in range(cases):
        n = 2 + case % 5
        sys_ = random_controllable(rng, n)
        ct = qp.companion_transform(sys_)
        worst["annihilation"] = max(worst["annihilation"],
                                    ct.annihilation_residual)
        prod = ct.T_inv @ qp.controllability_matrix(sys_)
        for i in range(n):
            for j in range(n):
                if i + j < n - 1:
                    worst["anti_above"] = max(worst["anti_above"],
                                              prod[i, j].norm())
                elif i + j == n - 1:
                    worst["anti_diag"] = max(
                        worst["anti_diag"],
                        (prod[i, j] - Quaternion(1)).norm())
        # spectrum invariance under a random similarity
        s = random_invertible(rng, n)
        spec_a = qp.right_spectrum(sys_.A)
        spec_sim = qp.right_spectrum(s.inverse() @ sys_.A @ s)
        worst["invariance"] = max(worst["invariance"],
                                  qp.match_residual(spec_a, spec_sim))
        # real targets: one-shot gain equals matching, classes achieved
        a_d = QPoly.from_real_poles(random_pole_classes(rng, n), degree=n)
        rep_match = qp.place_matching(sys_, a_d)
        rep_acker = qp.place_ackermann(sys_, a_d)
        worst["gain"] = max(worst["gain"],
                            (rep_match.K - rep_acker.K).max_norm())
        worst["real_target"] = max(worst["real_target"],
                                   rep_match.residual_placement)
        # quaternionic targets through root absorption
        roots = random_distinct_roots(rng, n)
        rep_quat = qp.place_matching(sys_, QPoly.from_right_zeros(roots))
        want = qp.Spectrum([r.similarity_class() for r in roots])
        worst["quat_target"] = max(
            worst["quat_target"],
            qp.match_residual(rep_quat.achieved, want))
    elapsed = time.perf_counter() - start
    ok = (worst["annihilation"] < 1e-8
          and worst["anti_above"] <= 1e-10
          and worst["anti_diag"] <= 1e-10
          and worst["invariance"] <= 1e-8
          and worst["gain"] <= 1e-9
          and worst["real_target"] <= 1e-6
          and worst["quat_target"] <= 1e-6)
    _verdict(f"randomized suite ({cases} cases, orders 2..6)",
             ok,
             ", ".join(f"{k} {v:.2e}" for k, v in worst.items())
             + f", {elapsed:.1f}s")


def test_embedding_oracle_suite():
    rng = np.random.default_rng(4096)
    worst_hom = 0.0
    rank_exact = True
    for _ in range(40):
        m_dim = int(rng.integers(1, 7))
        k_dim = int(rng.integers(1, 7))
        n_dim = int(rng.integers(1, 7))
        a = random_qmatrix(rng, m_dim, k_dim)
        b = random_qmatrix(rng, k_dim, n_dim)
        hom = np.max(np.abs((a @ b).complex_adjoint()
                            - a.complex_adjoint() @ b.complex_adjoint()))
        star = np.max(np.abs(a.H.complex_adjoint()
                             - a.complex_adjoint().conj().T))
        worst_hom = max(worst_hom, float(hom), float(star))
        r = int(rng.integers(0, min(m_dim, n_dim) + 1))
        planted = (qp.QMatrix.zeros(m_dim, n_dim) if r == 0 else
                   random_qmatrix(rng, m_dim, r) @ random_qmatrix(rng, r, n_dim))
        if planted.rank() != r:
            rank_exact = False
        if qp.QMatrix.complex_rank(planted.complex_adjoint()) != 2 * r:
            rank_exact = False
    _verdict("embedding homomorphism and rank oracle",
             worst_hom <= 1e-12 and rank_exact,
             f"homomorphism {worst_hom:.2e}, ranks exact={rank_exact}")


def test_slow_mode_decay_bound():
    # contracted bound: ||x(5)|| <= 1.05 * e^-5 * ||x(0)|| for the real
    # -1/-2 placement from x0 = (1, k).  The closed loop is non-normal:
    # the e^-t modal coefficient has norm 2*sqrt(2) (confirmed against
    # the matrix exponential), so the trajectory lands at ~1.98x the
    # envelope and this check fails; kept as contracted rather than
    # loosened to make it pass.
    sys_ = demo()
    report = qp.place_matching(sys_, QPoly.from_real([2, 3, 1]))
    x0 = qp.QMatrix.column([1, K])
    traj = qp.simulate_closed_loop(sys_, report.K, x0, dt=1e-3, horizon=5.0)
    bound = 1.05 * np.exp(-5.0) * np.sqrt(2.0)
    _verdict("slow-mode decay envelope at t = 5",
             traj.final_norm() <= bound,
             f"final {traj.final_norm():.6e} vs bound {bound:.6e}")


def test_integrator_refinement_ratio():
    sys_ = demo()
    report = qp.place_matching(sys_, QPoly.from_real([2, 3, 1]))
    x0 = qp.QMatrix.column([1, K])
    finals = []
    for dt in (0.05, 0.025, 0.0125):
        traj = qp.simulate_closed_loop(sys_, report.K, x0,
                                       dt=dt, horizon=1.0)
        finals.append(traj.final_state())
    d1 = float(np.sqrt(((finals[0] - finals[1]) ** 2).sum()))
    d2 = float(np.sqrt(((finals[1] - finals[2]) ** 2).sum()))
    ratio = d1 / d2
    _verdict("integrator halving-step refinement ratio",
             12.0 <= ratio <= 20.0, f"ratio {ratio:.2f}")
