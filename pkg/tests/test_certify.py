"""Certification pipelines: star reduction, case analyses, density gain, profiles."""

import itertools
import random
from fractions import Fraction as F

import pytest

from hyperlag.certify import (
    certify_theorem1,
    certify_theorem3,
    check_blowup_density_gain,
    enumerate_profiles_and_bound,
    reduce_star,
)
from hyperlag.closedform import Surd, alpha_k
from hyperlag.hypercore import UniformHypergraph
from hyperlag.optimize import OptimizerConfig, maximize_lagrangian


# ---------------------------------------------------------------------------
# star reduction
# ---------------------------------------------------------------------------

def test_reduce_star_replaces_internal_edges():
    M = UniformHypergraph(3, 6, [(1, 2, 3), (2, 3, 4), (3, 4, 5), (1, 2, 6)])
    N = reduce_star(M, [1, 2, 3, 4, 5])
    assert N.edges == ((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6))


def test_reduce_star_adds_star_even_when_part_was_empty():
    M = UniformHypergraph(3, 5, [(1, 4, 5)])
    N = reduce_star(M, [1, 2, 3])
    assert N.edges == ((1, 2, 3), (1, 4, 5))


def test_reduce_star_small_part_is_identity():
    M = UniformHypergraph(3, 5, [(1, 2, 3)])
    assert reduce_star(M, [4, 5]) == M
    with pytest.raises(ValueError):
        reduce_star(M, [4, 9])


def test_reduce_star_never_decreases_optimum_under_sparsity_cap():
    """Operational form of the reduction claim: when the part's internal
    edges respect the |part| - 2 cap, star replacement cannot lower the
    optimized Lagrangian."""
    rng = random.Random(19)
    cfg = OptimizerConfig(restarts=8, max_iters=300, seed=9)
    for _ in range(8):
        s1 = rng.randint(3, 5)
        part = list(range(1, s1 + 1))
        outside = list(range(s1 + 1, s1 + 4))
        pool_in = list(itertools.combinations(part, 3))
        internal = rng.sample(pool_in, min(rng.randint(0, s1 - 2), len(pool_in)))
        cross = [(part[0], outside[0], outside[1]), (part[1], outside[1], outside[2])]
        M = UniformHypergraph(3, s1 + 3, internal + cross)
        N = reduce_star(M, part)
        vm = maximize_lagrangian(M, cfg).value
        vn = maximize_lagrangian(N, cfg).value
        assert vn >= vm - 1e-9


# ---------------------------------------------------------------------------
# the 2/25 certificate
# ---------------------------------------------------------------------------

def test_certify_theorem1_quick():
    rep = certify_theorem1(grid_resolution=60, refine_iters=200, tol=1e-9, top=40)
    assert rep.overall
    names = [c.case_name for c in rep.cases]
    assert names == ["c=0", "a=0", "b=0", "d=0", "interior", "global"]
    by_name = {c.case_name: c for c in rep.cases}
    assert by_name["global"].bound_found == pytest.approx(0.08, abs=1e-9)
    assert by_name["c=0"].bound_found == pytest.approx(1 / 27)
    assert by_name["d=0"].bound_found < 0.076
    assert by_name["b=0"].bound_found < 0.08 - 1e-3
    blob = rep.to_json()
    assert blob["overall"] and blob["theorem"] == "t1"


def test_certify_theorem1_coarse_grid_fails():
    rep = certify_theorem1(grid_resolution=2, refine_iters=0, tol=1e-9, top=5)
    by_name = {c.case_name: c for c in rep.cases}
    assert not by_name["global"].passed
    assert not rep.overall


# ---------------------------------------------------------------------------
# the alpha_k/6 certificate
# ---------------------------------------------------------------------------

def test_certify_theorem3_k2_quick():
    rep = certify_theorem3(2, grid_resolution=80, tol=1e-8, refine_iters=200, top=40)
    assert rep.overall
    by_name = {c.case_name: c for c in rep.cases}
    target = float(alpha_k(2)) / 6
    assert by_name["global"].bound_found <= target + 1e-8
    assert by_name["global"].bound_found == pytest.approx(target, abs=1e-6)
    assert by_name["monotone-chain"].passed and by_name["early-collapse"].passed


def test_certify_theorem3_rejects_small_k():
    with pytest.raises(ValueError):
        certify_theorem3(1)


# ---------------------------------------------------------------------------
# density gain
# ---------------------------------------------------------------------------

def test_density_gain_t1_exact_values():
    rep = check_blowup_density_gain("t1", 25, s=3, c=1.0, seed=0)
    assert rep.adder_edges == 100 == rep.recipe_adder_edges
    assert rep.bound == F(1275, 15625) == F(2, 25) + F(1, 625)
    assert rep.margin == F(1, 625)
    assert rep.deficit_achieved == rep.deficit_ideal == F(3 * 625, 25)
    assert rep.passed
    blob = rep.to_json()
    assert blob["pass"] and blob["bound"]["p"] == "51/625"


def test_density_gain_t3_small():
    rep = check_blowup_density_gain("t3", 60, s=3, c=2.0, seed=3, k=2)
    assert isinstance(rep.margin, Surd)
    assert rep.passed == (rep.margin.sign() > 0)
    assert rep.adder_edges >= rep.recipe_adder_edges
    assert rep.passed
    # achieved shortfall is what the adder must clear
    assert (F(rep.base_edges + rep.adder_edges, 60**3) - rep.target).sign() > 0


def test_density_gain_t3_recipe_scale():
    # at t = 200 the apex part has 96 vertices, so the recipe asks for
    # k * 96^2 = 18432 adder edges; meeting it pushes the bound past alpha_2/6
    rep = check_blowup_density_gain("t3", 200, s=3, c=2.0, seed=3, k=2)
    assert rep.recipe_adder_edges == 2 * 96**2
    assert rep.adder_edges >= rep.recipe_adder_edges
    assert rep.passed and rep.margin.sign() > 0
    assert (rep.deficit_achieved - F(0)).sign() > 0


def test_density_gain_rejects_bad_kind():
    with pytest.raises(ValueError):
        check_blowup_density_gain("t2", 25)
    with pytest.raises(ValueError):
        check_blowup_density_gain("t3", 60)   # missing k


# ---------------------------------------------------------------------------
# profile enumeration
# ---------------------------------------------------------------------------

def test_profiles_t1():
    rep = enumerate_profiles_and_bound("t1", 5)
    assert rep.passed and rep.profiles_checked == 55
    assert rep.worst_value <= 2 / 25 + 1e-7
    # the pure-part profile peaks at the star value 1/27
    star_only = enumerate_profiles_and_bound(
        "t1", 5, cfg=OptimizerConfig(restarts=4, max_iters=300, seed=2))
    assert star_only.worst_value <= 2 / 25 + 1e-7


def test_profiles_t1_star_value():
    # profile (s, 0, 0) reduces to the star, whose optimum is 1/27
    from hyperlag.certify import _t1_profile_graph
    star = _t1_profile_graph((5, 0, 0))
    value = maximize_lagrangian(star, OptimizerConfig(restarts=6, max_iters=400, seed=3)).value
    assert value == pytest.approx(1 / 27, abs=1e-8)


def test_profiles_t3_k2():
    rep = enumerate_profiles_and_bound("t3", 5, k=2,
                                       cfg=OptimizerConfig(restarts=4, max_iters=250, seed=2))
    assert rep.passed
    assert rep.worst_value <= float(alpha_k(2)) / 6 + 1e-7


def test_profiles_t3_all_singletons():
    # five singleton parts give a complete pattern slice on 5 vertices
    from hyperlag.certify import _t3_profile_graph
    G = _t3_profile_graph(2, (1, 1, 1, 1, 1))
    value = maximize_lagrangian(G, OptimizerConfig(restarts=6, max_iters=400, seed=3)).value
    assert value <= float(alpha_k(2)) / 6 + 1e-7


def test_grid_search_unaffected_by_chunking():
    from hyperlag.certify import _grid_refine_max, _t1_bound_np, _t1_grad_np

    whole = _grid_refine_max(_t1_bound_np, _t1_grad_np, 4, 24, 50, 20)
    chunked = _grid_refine_max(_t1_bound_np, _t1_grad_np, 4, 24, 50, 20, cap=500)
    assert whole[0] == pytest.approx(chunked[0], abs=1e-12)
