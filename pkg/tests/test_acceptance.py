"""Acceptance criteria 1-10, one check per criterion.

Each ``check_N`` returns ``(ok, detail)``. Under pytest every result is
logged and printed in the terminal summary; run this file directly to get
the same lines without pytest.
"""

from __future__ import annotations

import itertools
import math
import os
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from acceptance_log import RESULTS  # noqa: E402
from calibration import EXPANDER_SEED, HYPERBOLIC_LOG_CONSTANT  # noqa: E402
from oracles import random_graph  # noqa: E402
from qldpc_bounds import (  # noqa: E402
    PowerLaw,
    RecurrenceParams,
    TreeDecomposition,
    brute_distance,
    build_connectivity,
    closed_form_check,
    dimension_bound,
    distance_bound,
    dz_correctable,
    eval_S_d,
    exact_treewidth,
    heuristic_treewidth_upper,
    heuristic_separator,
    is_correctable_oracle,
    make_family,
    transversal_level_empirical,
    transversal_level_formula,
    validate_tree_decomposition,
)
from qldpc_bounds.cli import main  # noqa: E402
from qldpc_bounds.codes import format_code, surface_layout  # noqa: E402
from qldpc_bounds.generators import geometric_cut_separator, make_grid, make_hyperbolic_patch, make_random_regular  # noqa: E402
from qldpc_bounds.graph import Graph  # noqa: E402
from qldpc_bounds.profile import fit_exponent  # noqa: E402
from qldpc_bounds.spectral import cheeger_estimate  # noqa: E402

CODE_SET = [("repetition", 3), ("five_qubit", None), ("steane", None), ("surface", 2), ("surface", 3), ("toric", 2)]


def _label(fam, size):
    return fam if size is None else f"{fam}-{size}"


def check_1():
    t0 = time.perf_counter()
    mismatches, total = [], 0
    for fam, size in [("repetition", 3), ("five_qubit", None), ("steane", None)]:
        code = make_family(fam, size)
        for mask in range(1 << code.n):
            region = [q for q in range(code.n) if mask >> q & 1]
            total += 1
            if dz_correctable(code, region) != is_correctable_oracle(code, region):
                mismatches.append((fam, region))
    dt = time.perf_counter() - t0
    return not mismatches and dt < 10, f"{total - len(mismatches)}/{total} regions agree in {dt:.2f}s"


def _treewidth_upper(g):
    if g.n <= 20:
        return exact_treewidth(g)[0]
    return heuristic_treewidth_upper(g, "min_fill")[0]


def check_2():
    t0 = time.perf_counter()
    parts = []
    ok = True
    for fam, size in CODE_SET:
        code = make_family(fam, size)
        g = build_connectivity(code)
        d = brute_distance(code)
        bound = distance_bound(_treewidth_upper(g), g.max_degree)
        ok &= d <= bound
        parts.append(f"{_label(fam, size)} {d}<={bound}")
    dt = time.perf_counter() - t0
    return ok and dt < 120, ", ".join(parts) + f" ({dt:.1f}s)"


def check_3():
    parts = []
    ok = True
    for fam, size in CODE_SET:
        code = make_family(fam, size)
        g = build_connectivity(code)
        d = brute_distance(code)
        res = dimension_bound(g, code, d, exact_sep_max=16)
        blocks = res.first.blocks + res.second.blocks
        good = res.k_upper >= code.k and all(dz_correctable(code, b) for b in blocks)
        ok &= good
        parts.append(f"{_label(fam, size)} k={code.k}<={res.k_upper}")
    return ok, ", ".join(parts)


def check_4():
    t0 = time.perf_counter()
    want = {("surface", 2): 2, ("surface", 3): 3, ("steane", None): 3, ("five_qubit", None): 3, ("repetition", 3): 1}
    got = {key: brute_distance(make_family(*key)) for key in want}
    dt = time.perf_counter() - t0
    detail = ", ".join(f"{_label(*k)}={got[k]}" for k in want)
    return got == want and dt < 60, f"{detail} ({dt:.2f}s)"


def check_5():
    parts = []
    ok = True
    for c in (0.5, 0.8):
        for d in (16, 64):
            ns = [d * 2**j for j in range(21)]
            rep = closed_form_check(RecurrenceParams(PowerLaw(1.0, c)), d, ns)
            ok &= rep.max_ratio <= 8
            parts.append(f"c={c} d={d} max={rep.max_ratio:.2f}")
    anchor = eval_S_d(RecurrenceParams(PowerLaw(1.0, 0.5, integer=True)), 4, 16)
    ok &= anchor == 18
    return ok, ", ".join(parts) + f", S(16)={anchor}"


def binary_tree_decomposition():
    g = Graph.from_edges(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
    bags = {i: frozenset(e) for i, e in enumerate(g.edges)}
    node = {e: i for i, e in enumerate(g.edges)}
    tree = [(node[(0, 1)], node[(0, 2)])]
    tree += [(node[(0, p)], node[(p, c)]) for p, c in [(1, 3), (1, 4), (2, 5), (2, 6)]]
    return g, TreeDecomposition(bags, tuple(tree))


def surface_diagonal_decomposition(L):
    """Path of bags, each the union of two neighbouring anti-diagonals of sites."""
    g = build_connectivity(make_family("surface", L))
    diag: dict[int, set[int]] = {}
    for (r, c), q in surface_layout(L).items():
        diag.setdefault((r + c) // 2, set()).add(q)
    bags = {i: frozenset(diag[i] | diag[i + 1]) for i in range(len(diag) - 1)}
    return g, TreeDecomposition(bags, tuple((i, i + 1) for i in range(len(bags) - 1)))


def _holders(td, v):
    return [i for i, b in td.bags.items() if v in b]


def mutate(g, td, kind, rng):
    """One random corruption of ``td`` that breaks exactly ``kind``."""
    bags = dict(td.bags)
    if kind == "vertex_coverage":
        v = int(rng.integers(g.n))
        bags = {i: b - {v} for i, b in bags.items()}
    elif kind == "edge_coverage":
        choices = []
        for u, v in g.edges:
            held = [i for i, b in bags.items() if u in b and v in b]
            if len(held) == 1:
                choices += [(held[0], x) for x in (u, v) if len(_holders(td, x)) > 1]
        node, x = choices[int(rng.integers(len(choices)))]
        bags[node] = bags[node] - {x}
    else:
        nbrs = {i: set() for i in bags}
        for i, j in td.tree_edges:
            nbrs[i].add(j)
            nbrs[j].add(i)
        choices = []
        for v in range(g.n):
            near = set(_holders(td, v))
            near |= {j for i in list(near) for j in nbrs[i]}
            choices += [(i, v) for i in bags if i not in near]
        node, v = choices[int(rng.integers(len(choices)))]
        bags[node] = bags[node] | {v}
    return TreeDecomposition(bags, td.tree_edges)


KINDS = ("vertex_coverage", "edge_coverage", "running_intersection")


def check_6():
    rng = np.random.default_rng(6)
    parts = []
    ok = True
    for name, (g, td) in [("binary tree", binary_tree_decomposition()), ("surface-3", surface_diagonal_decomposition(3))]:
        accepted = validate_tree_decomposition(g, td) is None
        right = 0
        for t in range(20):
            kind = KINDS[t % 3] if t < 3 else KINDS[int(rng.integers(3))]
            bad = validate_tree_decomposition(g, mutate(g, td, kind, rng))
            right += bad is not None and bad.prop == kind
        ok &= accepted and right == 20
        parts.append(f"{name}: accepted={accepted} width={td.width}, {right}/20 mutations named")
    return ok, "; ".join(parts)


def check_7():
    tree = Graph.from_edges(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
    c6 = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    anchors = [exact_treewidth(x)[0] for x in (tree, c6, make_grid(2, 3).graph)]
    rng = np.random.default_rng(7)
    bad = 0
    for _ in range(200):
        g = random_graph(rng, int(rng.integers(1, 15)), float(rng.uniform(0.1, 0.6)))
        exact = exact_treewidth(g)[0]
        bad += any(heuristic_treewidth_upper(g, s)[0] < exact for s in ("min_degree", "min_fill"))
    return anchors == [1, 2, 3] and bad == 0, f"anchors {anchors}, heuristic below exact on {bad}/200 graphs"


def check_8():
    t0 = time.perf_counter()
    sides = [16, 24, 32, 48, 64]
    ns, seps = [], []
    for side in sides:
        g = make_grid(2, side).graph
        sep = heuristic_separator(g, 0.5, "bfs_layering")
        ns.append(g.n)
        seps.append(sep.size)
    slope = fit_exponent(ns, seps).c
    ok_a = all(s <= 2 * math.sqrt(n) for n, s in zip(ns, seps)) and 0.35 <= slope <= 0.65

    hyp = []
    for rings in range(1, 8):
        eg = make_hyperbolic_patch(7, 3, rings)
        hyp.append((eg.graph.n, geometric_cut_separator(eg).size))
    ok_b = all(s <= HYPERBOLIC_LOG_CONSTANT * math.log(n) for n, s in hyp)

    expander = make_random_regular(3, 512, EXPANDER_SEED)
    exp_sep = heuristic_separator(expander, 0.5, "bfs_layering").size
    grid_sep = heuristic_separator(make_grid(2, 23).graph, 0.5, "bfs_layering").size
    h_lower = cheeger_estimate(expander)[1]
    ok_c = exp_sep >= 10 * grid_sep and h_lower > 0.05
    dt = time.perf_counter() - t0
    detail = (
        f"(a) grid seps {seps} slope {slope:.2f} ok={ok_a}; "
        f"(b) {{7,3}} max s/ln n {max(s / math.log(n) for n, s in hyp):.2f} <= {HYPERBOLIC_LOG_CONSTANT} ok={ok_b}; "
        f"(c) expander {exp_sep} vs grid {grid_sep} (ratio {exp_sep / grid_sep:.1f}, need 10), "
        f"h_lower {h_lower:.4f} ok={ok_c}; {dt:.0f}s"
    )
    return ok_a and ok_b and ok_c and dt < 300, detail


def check_9():
    anchors = (transversal_level_formula(0.5, 0.5), transversal_level_formula(0.5, 1 / 3))
    code = make_family("surface", 3)
    g = build_connectivity(code)
    d = brute_distance(code)
    level = transversal_level_empirical(g, code, d, exact_sep_max=16)
    regions_ok = len(level.regions) == level.R + 1 and all(dz_correctable(code, r) for r in level.regions)
    rec = math.inf if level.R_recurrence is None else level.R_recurrence
    ok = anchors == (2, 4) and regions_ok and level.R <= rec
    return ok, f"formula {anchors}, surface-3 R={level.R} over {len(level.regions)} correctable regions, recurrence {rec}"


def check_10(tmp_dir: Path):
    src = tmp_dir / "steane.qecc"
    src.write_text(format_code(make_family("steane")))
    outputs = []
    saved = os.environ.get("QLDPC_BOUNDS_THREADS")
    try:
        for threads in ("1", "1", "8"):
            os.environ["QLDPC_BOUNDS_THREADS"] = threads
            out = tmp_dir / f"report-{len(outputs)}.json"
            if main(["analyze", str(src), "--seed", "7", "--out", str(out)]) != 0:
                return False, "analyze exited non-zero"
            outputs.append(out.read_bytes())
    finally:
        if saved is None:
            os.environ.pop("QLDPC_BOUNDS_THREADS", None)
        else:
            os.environ["QLDPC_BOUNDS_THREADS"] = saved
    same_runs = outputs[0] == outputs[1]
    same_threads = outputs[0] == outputs[2]
    return same_runs and same_threads, f"repeat identical={same_runs}, threads 1 vs 8 identical={same_threads}"


def _record(n, result):
    ok, detail = result
    line = f"ACCEPTANCE {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    RESULTS.append(line)
    print(line)
    return ok, line


CHECKS = {1: check_1, 2: check_2, 3: check_3, 4: check_4, 5: check_5, 6: check_6, 7: check_7, 8: check_8, 9: check_9}


@pytest.mark.parametrize("n", sorted(CHECKS))
def test_criterion(n):
    ok, line = _record(n, CHECKS[n]())
    assert ok, line


def test_criterion_10(tmp_path):
    ok, line = _record(10, check_10(tmp_path))
    assert ok, line


if __name__ == "__main__":
    import tempfile

    for n in sorted(CHECKS):
        _record(n, CHECKS[n]())
    with tempfile.TemporaryDirectory() as tmp:
        _record(10, check_10(Path(tmp)))
