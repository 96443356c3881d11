import random
from collections import Counter

import pytest
from hypothesis import assume, given, settings, strategies as st

from mmdc.model import InfeasibleInstanceError, MmdcInstance, NormalizedInstance, normalize, validate
from mmdc.oracle import brute_force_mmdc, random_instance, verify_solution
from mmdc.reduction import (Role, build_gadget, edge_census, extract_solution, gadget_size,
                            nonmain_closed_form, nonmain_weight, solve_gadget, solve_mmdc)


def inst(alpha, alpha_cap, beta, beta_cap, cost):
    return MmdcInstance(tuple(alpha), tuple(alpha_cap), tuple(beta), tuple(beta_cap),
                        tuple(tuple(r) for r in cost))


TRIVIAL = inst([1], [1], [1], [1], [[5]])
TWO_BY_THREE = inst([1, 1], [3, 3], [1, 1, 1], [2, 2, 2], [[1, 2, 3], [4, 5, 6]])


class TestBuildGadget:
    def test_size_formula(self):
        x = inst([1, 1], [2, 2], [1, 1], [2, 2], [[0, 0], [0, 0]])
        g = build_gadget(normalize(x))
        # s*t + sum(alpha_cap) - sum(beta) = 4 + 4 - 2
        assert g.size == 6 == gadget_size(x)

    def test_trivial(self):
        g = build_gadget(normalize(TRIVIAL))
        assert g.size == 1
        assert g.rows == (Role("A", 0, 0),) and g.cols == (Role("B", 0, 0),)
        assert g.cost.tolist() == [[5]]

    def test_penalty_weights(self):
        x = inst([1], [1], [1], [1], [[9]])
        g = build_gadget(normalize(x))
        assert (g.gamma, g.gamma_prime, g.gamma_double_prime) == (9, 10, 20)
        assert g.forbidden == 20 * g.size + 1

    def test_override_gamma_double_prime(self):
        g = build_gadget(normalize(TWO_BY_THREE), gamma_double_prime=21)
        assert g.gamma_double_prime == 21
        with pytest.raises(ValueError):
            build_gadget(normalize(TWO_BY_THREE), gamma_double_prime=7)

    def test_layout_order(self):
        g = build_gadget(normalize(TWO_BY_THREE))
        kinds = [r.kind for r in g.rows]
        assert kinds == sorted(kinds, key=["A", "A'", "X", "W"].index)
        assert [c for c in g.cols if c.kind == "B"] == [
            Role("B", j, i) for i in range(2) for j in range(3)]
        counts = Counter(kinds)
        assert counts == {"A": 2, "A'": 4, "X": 3}
        assert sum(c.kind == "Y" for c in g.cols) == 6 - 3

    def test_weights_follow_roles(self):
        g = build_gadget(normalize(TWO_BY_THREE))
        c = TWO_BY_THREE.cost
        for a, r in enumerate(g.rows):
            for b, col in enumerate(g.cols):
                w = g.cost[a, b]
                if r.kind in ("A", "A'") and col.kind == "B" and col.copy == r.index:
                    assert w == c[r.index][col.index]
                elif r.kind == "A'" and col.kind == "Y":
                    assert w == g.gamma_prime
                elif r.kind == "X" and col.kind == "B" and col.index == r.index:
                    assert w == g.gamma_prime
                elif r.kind == "X" and col.kind == "Y":
                    assert w == g.gamma_double_prime
                elif r.kind == "W" and col.kind == "B" and col.index == r.index:
                    assert w == 0
                else:
                    assert w == g.forbidden

    def test_empty_dummy_blocks(self):
        # alpha == alpha_cap, beta == beta_cap == s and sum(alpha_cap) == sum(beta)
        x = inst([2, 2], [2, 2], [2, 2], [2, 2], [[1, 2], [3, 4]])
        g = build_gadget(normalize(x))
        assert Counter(r.kind for r in g.rows) == {"A": 4}
        assert all(c.kind == "B" for c in g.cols)
        sol = solve_mmdc(x, debug=True)
        assert sol.pairs == ((0, 0), (0, 1), (1, 0), (1, 1))
        assert sol.cost == 10

    def test_zero_demands(self):
        x = inst([0, 0], [1, 1], [0, 0], [1, 1], [[3, 3], [3, 3]])
        sol = solve_mmdc(x, debug=True)
        assert sol.pairs == () and sol.cost == 0

    def test_rejects_unnormalized(self):
        x = inst([1], [5], [1, 1], [1, 1], [[1, 1]])
        with pytest.raises(ValueError):
            build_gadget(NormalizedInstance(x))

    def test_float_costs(self):
        x = inst([1], [1], [1], [1], [[2.5]])
        g = build_gadget(normalize(x))
        assert g.gamma_prime == 3.5 and g.gamma_double_prime == 7.0

    @settings(max_examples=100, deadline=None)
    @given(st.randoms(use_true_random=False))
    def test_side_balance(self, rng):
        x = random_instance(rng, 4, 4, 4)
        assume(validate(x).feasible)
        g = build_gadget(normalize(x))
        n = normalize(x).instance
        assert len(g.rows) == len(g.cols) == n.s * n.t + sum(n.alpha_cap) - sum(n.beta)


class TestExtract:
    def test_trivial(self):
        g, m = solve_gadget(TRIVIAL)
        sol = extract_solution(g, m)
        assert sol.pairs == ((0, 0),) and sol.cost == 5
        assert sol.certificate.main_weight == 5 and sol.certificate.nonmain_weight == 0

    def test_two_by_three(self):
        # full subset enumeration gives 9, e.g. a0 -> {b0, b1}, a1 -> {b2}
        assert brute_force_mmdc(TWO_BY_THREE) == (9, ((0, 0), (0, 1), (1, 2)))
        sol = solve_mmdc(TWO_BY_THREE, debug=True)
        assert sol.cost == 9
        assert verify_solution(TWO_BY_THREE, sol).passed

    def test_certificate_adds_up(self):
        sol = solve_mmdc(TWO_BY_THREE)
        c = sol.certificate
        assert c.matching_weight == c.main_weight + c.nonmain_weight
        assert c.main_weight == sol.cost
        assert c.gadget_size == 2 * 3 + 6 - 3


class TestNonmainWeight:
    def test_trivial(self):
        g, m = solve_gadget(TRIVIAL)
        assert nonmain_weight(g, m) == 0 == nonmain_closed_form(g, 1)

    def test_collapsed_formula(self):
        # sum(beta_cap) == sum(alpha_cap) == |L| leaves only the X-Y term
        x = inst([2], [2], [0, 1], [1, 1], [[1, 1]])
        g, m = solve_gadget(x)
        L = len(extract_solution(g, m).pairs)
        assert L == 2
        assert nonmain_weight(g, m) == (L - 1) * g.gamma_double_prime

    def test_constant_under_balanced_penalties(self):
        # with gamma'' = 2 gamma' the closed form no longer depends on |L|
        g = build_gadget(normalize(TWO_BY_THREE))
        values = {nonmain_closed_form(g, L) for L in range(0, 7)}
        assert len(values) == 1

    def test_matches_edge_sum(self):
        rng = random.Random(21)
        seen = 0
        while seen < 300:
            x = random_instance(rng)
            if not validate(x).feasible:
                continue
            g, m = solve_gadget(x)
            L = len(extract_solution(g, m).pairs)
            assert nonmain_weight(g, m) == nonmain_closed_form(g, L)
            seen += 1


class TestSolveMmdc:
    def test_trivial(self):
        sol = solve_mmdc(TRIVIAL)
        assert sol.pairs == ((0, 0),) and sol.cost == 5

    def test_perfect_two_by_two(self):
        x = inst([1, 1], [1, 1], [1, 1], [1, 1], [[1, 9], [9, 1]])
        assert brute_force_mmdc(x)[0] == 2
        sol = solve_mmdc(x, debug=True)
        assert sol.pairs == ((0, 0), (1, 1)) and sol.cost == 2

    def test_infeasible(self):
        with pytest.raises(InfeasibleInstanceError):
            solve_mmdc(inst([2, 2], [2, 2], [0, 0], [1, 1], [[0, 0], [0, 0]]))

    def test_extra_pairs_can_be_cheaper(self):
        # The optimum uses two pairs of cost 0; the single pair (1, 1) costs 1.
        # An extra unit penalty per pair (gamma'' = 2 gamma' + 1) makes the two
        # answers tie at gadget level and the solver returns the costlier one.
        x = inst([0, 1], [1, 1], [0, 1], [1, 1], [[0, 0], [0, 1]])
        assert brute_force_mmdc(x) == (0, ((0, 1), (1, 0)))
        assert solve_mmdc(x).cost == 0
        g1 = max(max(r) for r in x.cost) + 1
        assert solve_mmdc(x, gamma_double_prime=2 * g1 + 1).cost == 1

    def test_weak_penalty_is_not_enough(self):
        # gamma'' only slightly above gamma' rewards extra pairs
        x = inst([0], [2], [0, 0], [1, 1], [[1, 1]])
        assert brute_force_mmdc(x)[0] == 0
        assert solve_mmdc(x).cost == 0
        assert solve_mmdc(x, gamma_double_prime=3).cost > 0

    def test_census_identity(self):
        rng = random.Random(8)
        seen = 0
        while seen < 200:
            x = random_instance(rng)
            if not validate(x).feasible:
                continue
            g, m = solve_gadget(x)
            sol = extract_solution(g, m)
            census = edge_census(g, m)
            n = normalize(x).instance
            assert len(sol.pairs) - sum(n.beta) == census[("X", "Y")]
            assert census[("A'", "Y")] == sum(n.alpha_cap) - len(sol.pairs)
            seen += 1

    @settings(max_examples=100, deadline=None)
    @given(st.randoms(use_true_random=False), st.integers(2, 5))
    def test_cost_scaling(self, rng, k):
        x = random_instance(rng)
        assume(validate(x).feasible)
        scaled = MmdcInstance(x.alpha, x.alpha_cap, x.beta, x.beta_cap,
                              tuple(tuple(k * c for c in row) for row in x.cost))
        assert solve_mmdc(scaled).cost == k * solve_mmdc(x).cost

    def test_float_instance(self):
        x = inst([1, 0], [2, 2], [1, 1], [1, 2], [[0.5, 1.25], [0.75, 0.1]])
        ref = brute_force_mmdc(x)
        sol = solve_mmdc(x, debug=True)
        assert sol.cost == pytest.approx(ref[0], rel=1e-9)

    def test_no_sentinel_in_matching(self):
        rng = random.Random(13)
        seen = 0
        while seen < 100:
            x = random_instance(rng)
            if not validate(x).feasible:
                continue
            g, m = solve_gadget(x)
            assert all(g.cost[r, c] != g.forbidden for r, c in m.pairs())
            seen += 1
