"""Acceptance suite: every criterion runs at its stated tolerance and prints
one PASS/FAIL line. Budgets come from the criteria, not from calibration."""

import itertools
import random
import sys
import time
from functools import wraps

from transvect.field import FieldVector, FieldMatrix, solve_affine
from transvect.game import space_from_graph
from transvect.graphs import (
    FormGraph,
    Multigraph,
    build_form_graph,
    classify_graph,
    connected_graph_classes,
    contains_induced_e6,
    e6_graph,
    enumerate_root_multigraphs,
    graph_from_code,
    is_tree,
    line_graph,
    recognize_root_multigraph,
    root_graph_maps,
    t_equivalence_closure,
)
from transvect.oracle import (
    enumerate_affine_orbits,
    enumerate_dual_orbits,
    enumerate_vector_orbits,
)
from transvect.orbits import (
    DualProblem,
    min_summand_count,
    decide_dual,
    decide_linegraph,
    decide_nondual,
    find_witness,
    replay_witness,
)
from transvect.symplectic import (
    Functional,
    QuadraticForm,
    SymplecticSpace,
    affine_transvection_apply,
    omega_map,
    quadratic_eval,
    transvection_apply,
)

from conftest import random_spanning_space, random_vector


def criterion(name):
    def deco(fn):
        @wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"[ACCEPTANCE] {name}: FAIL", file=sys.stderr)
                raise
            print(f"[ACCEPTANCE] {name}: PASS", file=sys.stderr)

        return wrapper

    return deco


def all_functionals(p, dim):
    return [Functional(FieldVector.from_code(p, dim, c)) for c in range(p**dim)]


def random_connected_multigraph(rng, max_v=8, max_e=12) -> Multigraph:
    nv = rng.randint(2, max_v)
    ne = rng.randint(nv - 1, max_e)
    order = list(range(nv))
    rng.shuffle(order)
    edges = []
    for i in range(1, nv):
        u, v = order[i], order[rng.randrange(i)]
        edges.append((min(u, v), max(u, v)))
    while len(edges) < ne:
        u, v = rng.randrange(nv), rng.randrange(nv)
        if u != v:
            edges.append((min(u, v), max(u, v)))
    return Multigraph.make(nv, edges)


@criterion("E6 t-closure has exactly 32 classes in < 60 s")
def test_e6_closure():
    start = time.monotonic()
    closure = t_equivalence_closure(e6_graph(), max_states=10_000)
    elapsed = time.monotonic() - start
    assert closure.complete
    assert len(closure.classes) == 32
    assert elapsed < 60.0, f"closure took {elapsed:.1f}s"


@criterion("dual decider == oracle on every connected graph with 1-6 vertices")
def test_dual_oracle_equivalence_exhaustive():
    start = time.monotonic()
    mismatches = 0
    graphs = 0
    for n in range(1, 7):
        for code in connected_graph_classes(n):
            graphs += 1
            sp = space_from_graph(graph_from_code(n, code))
            part = enumerate_dual_orbits(sp)
            fs = all_functionals(2, n)
            for ac, alpha in enumerate(fs):
                for bc, beta in enumerate(fs):
                    decision = decide_dual(DualProblem(sp, alpha, beta))
                    if decision.same != part.same_block(ac, bc):
                        mismatches += 1
    elapsed = time.monotonic() - start
    assert graphs == 1 + 1 + 2 + 6 + 21 + 112
    assert mismatches == 0
    assert elapsed < 600.0, f"sweep took {elapsed:.1f}s"


@criterion("dual decider == oracle on 200 random disconnected/non-basis GF(2) spaces")
def test_disconnected_nonbasis_sweep():
    rng = random.Random(20_240_001)
    mismatches = 0
    for _ in range(200):
        dim = rng.randint(1, 6)
        sp = random_spanning_space(rng, 2, dim, rng.randint(dim, 8))
        part = enumerate_dual_orbits(sp)
        n_states = 1 << dim
        for _ in range(100):
            ac, bc = rng.randrange(n_states), rng.randrange(n_states)
            alpha = Functional(FieldVector.from_code(2, dim, ac))
            beta = Functional(FieldVector.from_code(2, dim, bc))
            if decide_dual(DualProblem(sp, alpha, beta)).same != part.same_block(ac, bc):
                mismatches += 1
    assert mismatches == 0


def _gf35_spaces(seed, want_connected, want_disconnected):
    rng = random.Random(seed)
    connected, disconnected = [], []
    while len(connected) < want_connected or len(disconnected) < want_disconnected:
        p = rng.choice([3, 5])
        dim = rng.randint(1, 3)
        sp = random_spanning_space(rng, p, dim, rng.randint(dim, dim + 2))
        bucket = connected if build_form_graph(sp).is_connected() else disconnected
        want = want_connected if bucket is connected else want_disconnected
        if len(bucket) < want:
            bucket.append(sp)
    return connected, disconnected, rng


@criterion("GF(3)/GF(5): dual decider == oracle exhaustively; affine orbits have <= 1 non-singleton block")
def test_general_field_sweep():
    connected, disconnected, rng = _gf35_spaces(20_240_002, 15, 15)
    mismatches = 0
    for sp in connected + disconnected:
        part = enumerate_dual_orbits(sp)
        fs = all_functionals(sp.p, sp.dim)
        for ac, alpha in enumerate(fs):
            for bc, beta in enumerate(fs):
                if decide_dual(DualProblem(sp, alpha, beta)).same != part.same_block(ac, bc):
                    mismatches += 1
    assert mismatches == 0
    for sp in connected:
        alpha = Functional(random_vector(rng, sp.p, sp.dim))
        part = enumerate_affine_orbits(sp, alpha)
        assert sum(1 for b in part.blocks if len(b) > 1) <= 1


@criterion("non-dual: Th 1.1/components criterion, Q_S split (n<=7), d-function split (n<=5)")
def test_nondual_criteria():
    # GF(3)/GF(5) sweep against the vector oracle
    connected, disconnected, rng = _gf35_spaces(20_240_003, 10, 10)
    mismatches = 0
    for sp in connected + disconnected:
        part = enumerate_vector_orbits(sp)
        n_states = sp.p**sp.dim
        codes = (
            range(n_states)
            if n_states <= 81
            else [rng.randrange(n_states) for _ in range(60)]
        )
        for xc in codes:
            for yc in codes:
                x = FieldVector.from_code(sp.p, sp.dim, xc)
                y = FieldVector.from_code(sp.p, sp.dim, yc)
                if decide_nondual(sp, x, y).same != part.same_block(xc, yc):
                    mismatches += 1
        if build_form_graph(sp).is_connected():
            # Th 1.1 shape: kernel states are singletons, the rest one orbit
            kernel = {
                c
                for c in range(n_states)
                if omega_map(sp, FieldVector.from_code(sp.p, sp.dim, c)).is_zero
            }
            non_kernel_blocks = [b for b in part.blocks if not b <= kernel]
            assert all(len(part.blocks[part.block_of(c)]) == 1 for c in kernel)
            if n_states > len(kernel):
                assert len(non_kernel_blocks) == 1
    assert mismatches == 0

    # Th 1.2: every orthogonal-type connected basis with n <= 7
    orthogonal_count = 0
    for n in (6, 7):
        for code in connected_graph_classes(n):
            g = graph_from_code(n, code)
            if classify_graph(g).tag != "orthogonal":
                continue
            orthogonal_count += 1
            sp = space_from_graph(g)
            q = QuadraticForm.from_gram(sp.gram)
            part = enumerate_vector_orbits(sp)
            by_q = {0: set(), 1: set()}
            kernel_states = set()
            for xc in range(1, 1 << n):
                x = FieldVector.from_code(2, n, xc)
                if omega_map(sp, x).is_zero:
                    kernel_states.add(xc)
                else:
                    by_q[quadratic_eval(q, x)].add(xc)
            expected = {frozenset(s) for s in by_q.values() if s}
            actual = {
                frozenset(b)
                for b in part.blocks
                if not (len(b) == 1 and (min(b) == 0 or min(b) in kernel_states))
            }
            assert expected == actual, f"Q_S split failed on n={n} code={code}"
    assert orthogonal_count == 32 + 558

    # Th 1.3: every (non-orthogonal) connected basis with n <= 5
    for n in range(1, 6):
        for code in connected_graph_classes(n):
            g = graph_from_code(n, code)
            assert classify_graph(g).tag == "line_graph"
            sp = space_from_graph(g)
            part = enumerate_vector_orbits(sp)
            states = [
                xc
                for xc in range(1, 1 << n)
                if not omega_map(sp, FieldVector.from_code(2, n, xc)).is_zero
            ]
            dv = {xc: min_summand_count(sp, FieldVector.from_code(2, n, xc)) for xc in states}
            for xc, yc in itertools.product(states, states):
                assert (dv[xc] == dv[yc]) == part.same_block(xc, yc)


@criterion("structural identities hold on 1000 randomized trials each")
def test_structural_identities():
    rng = random.Random(20_240_004)

    def rand_space(p, dim):
        rows = [[0] * dim for _ in range(dim)]
        for i in range(dim):
            for j in range(i + 1, dim):
                v = rng.randrange(p)
                rows[i][j] = v
                rows[j][i] = (-v) % p
        return SymplecticSpace.create(p, rows)

    # transvection inverse
    for _ in range(1000):
        p = rng.choice([2, 3, 5, 7])
        sp = rand_space(p, rng.randint(1, 6))
        s, x = random_vector(rng, p, sp.dim), random_vector(rng, p, sp.dim)
        k = rng.randint(1, p - 1)
        assert transvection_apply(sp, s, p - k, transvection_apply(sp, s, k, x)) == x

    # affine inverse
    for _ in range(1000):
        p = rng.choice([2, 3, 5, 7])
        sp = rand_space(p, rng.randint(1, 6))
        s, x = random_vector(rng, p, sp.dim), random_vector(rng, p, sp.dim)
        k, a = rng.randint(1, p - 1), rng.randrange(p)
        y = affine_transvection_apply(sp, s, k, a, x)
        assert affine_transvection_apply(sp, s, p - k, a, y) == x

    # triple identity over GF(2)
    done = 0
    while done < 1000:
        sp = rand_space(2, rng.randint(2, 6))
        s, t = random_vector(rng, 2, sp.dim), random_vector(rng, 2, sp.dim)
        if sp.omega(s, t) != 1:
            continue
        a, b = rng.randrange(2), rng.randrange(2)
        x = random_vector(rng, 2, sp.dim)
        lhs = affine_transvection_apply(
            sp, s, 1, a,
            affine_transvection_apply(sp, t, 1, b, affine_transvection_apply(sp, s, 1, a, x)),
        )
        rhs = affine_transvection_apply(sp, s + t, 1, (a + b) % 2, x)
        assert lhs == rhs
        done += 1

    # Q_S + alpha invariance under the affine generators
    for _ in range(1000):
        sp = rand_space(2, rng.randint(1, 6))
        q = QuadraticForm.from_gram(sp.gram)
        alpha = Functional(random_vector(rng, 2, sp.dim))
        x = random_vector(rng, 2, sp.dim)
        s = FieldVector.basis(2, sp.dim, rng.randrange(sp.dim))
        y = affine_transvection_apply(sp, s, 1, alpha(s), x)
        assert (quadratic_eval(q, x) + alpha(x)) % 2 == (quadratic_eval(q, y) + alpha(y)) % 2

    # root-graph identities
    for _ in range(1000):
        m = random_connected_multigraph(rng, max_v=7, max_e=10)
        maps = root_graph_maps(m)
        lg = line_graph(m)
        ne, nv = len(m.edges), m.num_vertices
        prod = maps.coboundary.matmul(maps.boundary)
        adj = FieldMatrix.make(
            2, [[1 if lg.has_edge(i, j) else 0 for j in range(ne)] for i in range(ne)]
        )
        assert prod.rows == adj.rows  # delta o partial = omega
        sol = solve_affine(maps.coboundary, FieldVector.zero(2, ne))
        assert len(sol.kernel_basis) == 1
        assert sol.kernel_basis[0] == FieldVector.make(2, [1] * nv)  # ker delta = {0, 1}
        ann = [FieldVector.basis(2, ne, e) for e in range(ne) if e not in maps.spanning_tree_edges]
        rank_delta = maps.coboundary.rank()
        assert rank_delta + len(ann) == ne  # dimensions add up
        cols = [maps.coboundary.column(j) for j in range(nv)]
        assert FieldMatrix.from_columns(2, cols + ann).rank() == ne  # trivial intersection


@criterion("line-graph recognition sound on 500 multigraphs; fails on E6-closure trees; root-choice invariant")
def test_linegraph_recognition_soundness():
    rng = random.Random(20_240_005)
    produced = 0
    while produced < 500:
        m = random_connected_multigraph(rng)
        g = line_graph(m)
        if not g.is_connected():
            continue
        produced += 1
        root = recognize_root_multigraph(g)
        assert root is not None, f"failed on line graph of {m}"
        assert line_graph(root).adj == g.adj

    assert recognize_root_multigraph(e6_graph()) is None
    closure = t_equivalence_closure(e6_graph(), max_states=10_000)
    tree_members = 0
    for code in closure.classes:
        h = graph_from_code(6, code)
        if is_tree(h) and contains_induced_e6(h):
            tree_members += 1
            assert recognize_root_multigraph(h) is None
    assert tree_members >= 1

    # root-choice invariance: K3 plus 50 ambiguous line graphs
    def invariance(g) -> bool:
        roots = enumerate_root_multigraphs(g, limit=6)
        shapes = {(r.num_vertices, tuple(sorted(r.edges))) for r in roots}
        if len(shapes) < 2:
            return False
        sp = space_from_graph(g)
        for _ in range(20):
            alpha = Functional(random_vector(rng, 2, g.n))
            beta = Functional(random_vector(rng, 2, g.n))
            if alpha.is_zero or beta.is_zero:
                continue
            verdicts = {decide_linegraph(sp, alpha, beta, r).same for r in roots}
            assert len(verdicts) == 1, f"roots disagree on {g}"
        return True

    k3 = FormGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert invariance(k3)
    ambiguous = 0
    while ambiguous < 50:
        m = random_connected_multigraph(rng, max_v=6, max_e=9)
        g = line_graph(m)
        if not g.is_connected() or g.n > 9:
            continue
        if invariance(g):
            ambiguous += 1


@criterion("every found witness replays exactly to the target")
def test_witness_replay():
    rng = random.Random(20_240_006)
    found = 0
    # connected GF(2) graphs
    for n in range(2, 6):
        codes = connected_graph_classes(n)
        for code in (codes[0], codes[-1]):
            sp = space_from_graph(graph_from_code(n, code))
            part = enumerate_dual_orbits(sp)
            for block in part.blocks:
                if len(block) < 2:
                    continue
                states = sorted(block)
                for ac, bc in [(states[0], states[-1]), (states[-1], states[0])]:
                    alpha = Functional(FieldVector.from_code(2, n, ac))
                    beta = Functional(FieldVector.from_code(2, n, bc))
                    prob = DualProblem(sp, alpha, beta)
                    witness = find_witness(prob)
                    assert witness is not None
                    assert replay_witness(prob, witness) == beta
                    found += 1
    # GF(3)/GF(5) and non-basis GF(2) problems
    attempts = 0
    while found < 120 and attempts < 4000:
        attempts += 1
        p = rng.choice([2, 3, 5])
        dim = rng.randint(1, 3)
        sp = random_spanning_space(rng, p, dim, rng.randint(dim, dim + 2))
        alpha = Functional(random_vector(rng, p, dim))
        beta = Functional(random_vector(rng, p, dim))
        prob = DualProblem(sp, alpha, beta)
        if not decide_dual(prob).same:
            continue
        witness = find_witness(prob)
        assert witness is not None
        assert replay_witness(prob, witness) == beta
        found += 1
    assert found >= 120


@criterion("[secondary] recorded protocol transcripts replay byte-identically; no play targets an unlit vertex")
def test_protocol_transcripts_secondary():
    import json
    from pathlib import Path

    from transvect.protocol import SessionStore, dumps, handle_line

    fixture_dir = Path(__file__).resolve().parent.parent / "frontend" / "fixtures" / "transcripts"
    paths = sorted(fixture_dir.glob("*.json"))
    assert len(paths) == 5
    for path in paths:
        with open(path, "r", encoding="utf-8") as fh:
            transcript = json.load(fh)
        store = SessionStore()
        lamps = None
        for step in transcript["steps"]:
            request = step["request"]
            if request["op"] == "play":
                assert lamps is not None and lamps[request["vertex"]] == 1
            got = handle_line(store, dumps(request))
            assert got == dumps(step["response"])
            if "state" in step["response"]:
                lamps = step["response"]["state"]["lamps"]
