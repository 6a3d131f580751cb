import random

import pytest

from transvect.errors import InvalidInput, Unsupported
from transvect.field import FieldMatrix, FieldVector, solve_affine
from transvect.graphs import (
    FormGraph,
    Multigraph,
    all_graph_classes,
    build_form_graph,
    canonical_form,
    classify_graph,
    connected_components,
    connected_graph_classes,
    contains_induced_e6,
    e6_graph,
    graph_from_code,
    is_tree,
    line_graph,
    recognize_root_multigraph,
    root_graph_maps,
    t_equivalence_closure,
    t_move,
    t_move_graph,
    orthogonal_type_by_closure,
)
from transvect.symplectic import QuadraticForm, SymplecticSpace, quadratic_eval

from conftest import random_space


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


def test_build_form_graph_examples():
    pair = SymplecticSpace.create(2, [[0, 1], [1, 0]])
    assert build_form_graph(pair).edges() == [(0, 1)]
    zero = SymplecticSpace.create(2, [[0, 0], [0, 0]])
    assert build_form_graph(zero).edges() == []
    e6 = e6_graph()
    sp = SymplecticSpace.create(2, [[1 if e6.has_edge(i, j) else 0 for j in range(6)] for i in range(6)])
    assert build_form_graph(sp).adj == e6.adj


def test_components_examples():
    assert connected_components(FormGraph(3, (0, 0, 0))) == [(0,), (1,), (2,)]
    g = FormGraph.from_edges(4, [(0, 1), (2, 3)])
    assert connected_components(g) == [(0, 1), (2, 3)]


def _union_find_components(g: FormGraph):
    parent = list(range(g.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in g.edges():
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    groups = {}
    for v in range(g.n):
        groups.setdefault(find(v), []).append(v)
    return sorted(tuple(sorted(vs)) for vs in groups.values())


def test_components_match_union_find():
    rng = random.Random(0)
    for _ in range(100):
        n = rng.randint(1, 9)
        edges = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if rng.random() < 0.25
        ]
        g = FormGraph.from_edges(n, edges)
        assert sorted(connected_components(g)) == _union_find_components(g)


def test_t_move_k2():
    sp = SymplecticSpace.create(2, [[0, 1], [1, 0]])
    basis = [FieldVector.make(2, [1, 0]), FieldVector.make(2, [0, 1])]
    moved = t_move(sp, basis, 0, 1)
    assert moved[1] == FieldVector.make(2, [1, 1])
    sp2 = SymplecticSpace(2, 2, sp.gram, tuple(moved))
    assert build_form_graph(sp2).edges() == [(0, 1)]
    # involution
    assert t_move(sp, moved, 0, 1) == basis


def test_t_move_requires_adjacency():
    sp = SymplecticSpace.create(2, [[0, 0], [0, 0]])
    basis = [FieldVector.make(2, [1, 0]), FieldVector.make(2, [0, 1])]
    with pytest.raises(InvalidInput):
        t_move(sp, basis, 0, 1)


def test_t_move_preserves_quadratic_form():
    rng = random.Random(1)
    done = 0
    while done < 50:
        dim = rng.randint(2, 6)
        sp = random_space(rng, 2, dim)
        basis = [FieldVector.basis(2, dim, i) for i in range(dim)]
        pairs = [
            (i, j)
            for i in range(dim)
            for j in range(dim)
            if i != j and sp.omega(basis[i], basis[j]) == 1
        ]
        if not pairs:
            continue
        i, j = rng.choice(pairs)
        moved = t_move(sp, basis, i, j)
        q_s = QuadraticForm.from_gram(sp.gram)
        moved_gram = FieldMatrix.make(2, [[sp.omega(u, v) for v in moved] for u in moved])
        q_moved = QuadraticForm.from_gram(moved_gram)
        m = FieldMatrix.from_columns(2, moved)
        for code in range(1 << dim):
            x = FieldVector.from_code(2, dim, code)
            coords = solve_affine(m, x).particular
            assert quadratic_eval(q_s, x) == quadratic_eval(q_moved, coords)
        done += 1


def test_t_move_graph_matches_basis_move():
    rng = random.Random(2)
    done = 0
    while done < 100:
        dim = rng.randint(2, 6)
        sp = random_space(rng, 2, dim)
        g = build_form_graph(sp)
        edges = g.edges()
        if not edges:
            continue
        u, v = rng.choice(edges)
        basis = [FieldVector.basis(2, dim, i) for i in range(dim)]
        moved = t_move(sp, basis, u, v)
        sp2 = SymplecticSpace(2, dim, sp.gram, tuple(moved))
        assert build_form_graph(sp2).adj == t_move_graph(g, u, v).adj
        done += 1


def test_canonical_form_permutation_invariance():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(1, 7)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4]
        g = FormGraph.from_edges(n, edges)
        perm = list(range(n))
        rng.shuffle(perm)
        h = FormGraph.from_edges(n, [(perm[u], perm[v]) for u, v in edges])
        assert canonical_form(g) == canonical_form(h)


def test_canonical_form_separates():
    k3 = FormGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    p3 = FormGraph.from_edges(3, [(0, 1), (1, 2)])
    assert canonical_form(k3) != canonical_form(p3)


def test_canonical_form_rejects_large():
    with pytest.raises(Unsupported):
        canonical_form(FormGraph(11, (0,) * 11))


def test_canonical_roundtrip():
    rng = random.Random(4)
    for _ in range(50):
        n = rng.randint(2, 7)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4]
        g = FormGraph.from_edges(n, edges)
        code = canonical_form(g)
        assert canonical_form(graph_from_code(n, code)) == code


def test_closure_k2():
    g = FormGraph.from_edges(2, [(0, 1)])
    closure = t_equivalence_closure(g)
    assert closure.complete
    assert closure.classes == frozenset({canonical_form(g)})


def test_closure_e6_has_32_classes():
    closure = t_equivalence_closure(e6_graph(), max_states=10_000)
    assert closure.complete
    assert len(closure.classes) == 32
    for code in closure.classes:
        h = graph_from_code(6, code)
        assert h.n == 6
        assert h.is_connected()


def test_closure_budget_flag():
    closure = t_equivalence_closure(e6_graph(), max_states=5)
    assert not closure.complete
    assert len(closure.classes) == 5


def test_line_graph_examples():
    double = Multigraph.make(2, [(0, 1), (0, 1)])
    assert line_graph(double).edges() == []
    star3 = Multigraph.make(4, [(0, 1), (0, 2), (0, 3)])
    assert line_graph(star3).edges() == [(0, 1), (0, 2), (1, 2)]
    p4 = Multigraph.make(4, [(0, 1), (1, 2), (2, 3)])
    assert line_graph(p4).edges() == [(0, 1), (1, 2)]


def test_recognize_k2():
    g = FormGraph.from_edges(2, [(0, 1)])
    root = recognize_root_multigraph(g)
    assert root is not None
    assert root.num_vertices == 3 and len(root.edges) == 2
    assert line_graph(root).adj == g.adj


def test_recognize_k3_and_single_vertex():
    k3 = FormGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    root = recognize_root_multigraph(k3)
    assert root is not None
    assert line_graph(root).adj == k3.adj
    single = FormGraph(1, (0,))
    root1 = recognize_root_multigraph(single)
    assert root1 is not None and len(root1.edges) == 1
    assert classify_graph(single).tag == "line_graph"


def test_recognize_e6_fails():
    assert recognize_root_multigraph(e6_graph()) is None
    assert classify_graph(e6_graph()).tag == "orthogonal"


def test_recognition_roundtrip_random():
    rng = random.Random(5)
    for _ in range(200):
        m = random_connected_multigraph(rng, max_v=7, max_e=10)
        g = line_graph(m)
        if not g.is_connected():
            continue
        root = recognize_root_multigraph(g)
        assert root is not None
        assert line_graph(root).adj == g.adj


def test_root_maps_single_edge():
    m = Multigraph.make(2, [(0, 1)])
    maps = root_graph_maps(m)
    assert maps.boundary.rows == ((1,), (1,))
    assert maps.spanning_tree_edges == frozenset({0})


def test_root_maps_identities():
    rng = random.Random(6)
    for _ in range(100):
        m = random_connected_multigraph(rng)
        maps = root_graph_maps(m)
        lg = line_graph(m)
        ne, nv = len(m.edges), m.num_vertices
        # coboundary is the transpose of boundary
        assert maps.coboundary.rows == maps.boundary.transpose().rows
        # delta . partial equals the line-graph adjacency matrix (= omega)
        prod = maps.coboundary.matmul(maps.boundary)
        adj = FieldMatrix.make(
            2, [[1 if lg.has_edge(i, j) else 0 for j in range(ne)] for i in range(ne)]
        )
        assert prod.rows == adj.rows
        # ker delta = {0, all-ones}
        sol = solve_affine(maps.coboundary, FieldVector.zero(2, ne))
        assert len(sol.kernel_basis) == 1
        assert sol.kernel_basis[0] == FieldVector.make(2, [1] * nv)
        # X* = im delta (+) annihilator of the spanning tree
        rank_delta = maps.coboundary.rank()
        ann = [FieldVector.basis(2, ne, e) for e in range(ne) if e not in maps.spanning_tree_edges]
        assert rank_delta + len(ann) == ne
        cols = [maps.coboundary.column(j) for j in range(nv)]
        assert FieldMatrix.from_columns(2, cols + ann).rank() == ne


def test_root_maps_rejects_disconnected():
    with pytest.raises(InvalidInput):
        root_graph_maps(Multigraph.make(4, [(0, 1), (2, 3)]))


def test_graph_class_counts():
    assert [len(all_graph_classes(n)) for n in range(1, 7)] == [1, 2, 4, 11, 34, 156]
    assert [len(connected_graph_classes(n)) for n in range(1, 7)] == [1, 1, 2, 6, 21, 112]


def test_contains_induced_e6():
    assert contains_induced_e6(e6_graph())
    assert not contains_induced_e6(FormGraph.from_edges(6, [(i, i + 1) for i in range(5)]))
    bigger = FormGraph.from_edges(
        7, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (4, 6)]
    )
    assert contains_induced_e6(bigger)


def test_orthogonal_equals_no_root_n6():
    closure = t_equivalence_closure(e6_graph(), max_states=10_000).classes
    for code in connected_graph_classes(6):
        g = graph_from_code(6, code)
        assert (classify_graph(g).tag == "orthogonal") == (code in closure)


def test_orthogonal_by_closure_matches_recognition_n7():
    # one-step t-move relation is symmetric, so closures are the connected
    # components of the move graph on isomorphism classes
    codes = connected_graph_classes(7)
    idx = {c: i for i, c in enumerate(codes)}
    parent = list(range(len(codes)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for c in codes:
        g = graph_from_code(7, c)
        for u, v in g.edges():
            for i, j in ((u, v), (v, u)):
                nc = canonical_form(t_move_graph(g, i, j))
                ri, rj = find(idx[c]), find(idx[nc])
                if ri != rj:
                    parent[ri] = rj
    tree_roots = {
        find(idx[c])
        for c in codes
        if is_tree(graph_from_code(7, c)) and contains_induced_e6(graph_from_code(7, c))
    }
    for c in codes:
        by_closure = find(idx[c]) in tree_roots
        by_recognition = classify_graph(graph_from_code(7, c)).tag == "orthogonal"
        assert by_closure == by_recognition


def test_orthogonal_type_by_closure_direct():
    assert orthogonal_type_by_closure(e6_graph()) == (True, True)
    k2 = FormGraph.from_edges(2, [(0, 1)])
    assert orthogonal_type_by_closure(k2) == (False, True)
