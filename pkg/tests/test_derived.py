import random


from quiveralg.derived import (ComplexOfModules, SerreContext, amiot_endomorphism_algebra,
                               amiot_hom, hom_d, inj_resolve_complex,
                               module_complex, nakayama, nakayama_inv,
                               proj_resolve_complex, serre_n_power,
                               to_symbolic, u_window)
from quiveralg.exactla import GF
from quiveralg.homology import ext, tau_n, tau_n_inv
from quiveralg.modules import (coregular, injective, is_isomorphic,
                               projective, random_module, regular, simple)
from quiveralg.quivers import Path, PathElement, Quiver, complete_basis

F = GF(32003)


def a2():
    return complete_basis(Quiver(["1", "2"], [("a", "1", "2")]), F, [])


def nak_a3():
    q = Quiver(["1", "2", "3"], [("a1", "1", "2"), ("a2", "2", "3")])
    return complete_basis(q, F, [PathElement(q, {Path(0, (0, 1)): 1})])


def test_resolve_single_projective_is_itself():
    A = a2()
    X = module_complex(projective(A, 0))
    P, eps = proj_resolve_complex(X)
    assert P.terms[0].summands == (0,)
    assert len(P.terms) == 1


def test_resolve_module_matches_minimal_resolution():
    A = nak_a3()
    X = module_complex(simple(A, 0))
    P, eps = proj_resolve_complex(X)
    assert sorted(P.terms) == [-2, -1, 0]
    assert [P.terms[i].summands for i in (-2, -1, 0)] == [(2,), (1,), (0,)]
    assert eps.is_chain_map()
    assert eps.induces_cohomology_iso()


def test_resolve_two_term_complex():
    A = nak_a3()
    s1, s2 = simple(A, 0), simple(A, 1)
    # the zero map s1 -> s2 as a two-term complex in degrees 0, 1
    f = A.field
    from quiveralg.modules import ModuleMap
    zero = ModuleMap(s1, s2, [f.zeros(s2.dims[v], s1.dims[v])
                              for v in range(3)])
    X = ComplexOfModules(A, {0: s1, 1: s2}, {0: zero})
    P, eps = proj_resolve_complex(X)
    assert eps.induces_cohomology_iso()
    assert X.cohomology_dims() == {0: 1, 1: 1}
    assert P.cohomology_dims() == {0: 1, 1: 1}


def test_inj_resolve():
    A = nak_a3()
    X = module_complex(simple(A, 0))
    I, eta = inj_resolve_complex(X)
    assert eta.induces_cohomology_iso()
    for t in I.terms.values():
        assert t.tag_kind == "I"


def test_hom_d_equals_ext():
    A = nak_a3()
    rng = random.Random(21)
    for _ in range(6):
        m, n_ = random_module(A, rng), random_module(A, rng)
        for j in range(0, 3):
            assert hom_d(module_complex(m), module_complex(n_), j) == \
                ext(m, n_, j)


def test_hom_d_yoneda():
    A = nak_a3()
    rng = random.Random(22)
    lam = module_complex(regular(A))
    for _ in range(5):
        m = random_module(A, rng)
        assert hom_d(lam, module_complex(m), 0) == m.total_dim


def test_hom_d_negative_vanishes_for_modules():
    A = nak_a3()
    rng = random.Random(23)
    for _ in range(5):
        m, n_ = random_module(A, rng), random_module(A, rng)
        assert hom_d(module_complex(m), module_complex(n_), -1) == 0


def test_nakayama_sends_projective_to_injective():
    A = nak_a3()
    for v in range(3):
        X = module_complex(projective(A, v))
        N = nakayama(X)
        assert is_isomorphic(N.terms[0], injective(A, v))


def test_nakayama_functorial_on_a2():
    A = a2()
    X = module_complex(simple(A, 0))
    P, _ = proj_resolve_complex(X)
    N = nakayama(P)
    # nu(P2 -> P1) = (I2 -> I1) with the nonzero induced map: surjective in
    # degree 0, kernel tau(S1) = S2 in degree -1
    assert N.cohomology_dims() == {-1: 1}
    assert is_isomorphic(N.cohomology(-1), simple(A, 1))
    Pback = nakayama_inv(N)
    assert Pback.cohomology_dims() == P.cohomology_dims()


def test_serre_power_zero_is_identity():
    A = a2()
    X = module_complex(simple(A, 0))
    Y = serre_n_power(A, 1, X, 0)
    assert Y is X


def test_serre_of_regular_is_shifted_dual():
    for A, n in [(a2(), 1), (nak_a3(), 2)]:
        X = module_complex(regular(A))
        S = serre_n_power(A, n, X, 1)
        dims = S.cohomology_dims()
        assert list(dims) == [n]
        assert dims[n] == A.dim
        assert is_isomorphic(S.cohomology(n), coregular(A))


def test_h0_of_serre_inverse_is_tau_n_inv():
    A = nak_a3()
    S = serre_n_power(A, 2, module_complex(projective(A, 2)), -1)
    h0 = S.cohomology(0)
    assert is_isomorphic(h0, simple(A, 0))  # tau_2^- P3 = S1


def test_h0_serre_vs_translate_random():
    A = nak_a3()
    rng = random.Random(31)
    for _ in range(6):
        m = random_module(A, rng)
        sp = serre_n_power(A, 2, module_complex(m), 1)
        sm = serre_n_power(A, 2, module_complex(m), -1)
        tp, tm = tau_n(m, 2), tau_n_inv(m, 2)
        h0p = sp.cohomology(0)
        h0m = sm.cohomology(0)
        assert h0p.total_dim == tp.total_dim and (
            tp.is_zero() or is_isomorphic(h0p, tp))
        assert h0m.total_dim == tm.total_dim and (
            tm.is_zero() or is_isomorphic(h0m, tm))


def test_serre_duality_dims():
    A = nak_a3()
    rng = random.Random(32)
    for _ in range(5):
        m, n_ = random_module(A, rng), random_module(A, rng)
        X, Y = module_complex(m), module_complex(n_)
        SX = serre_n_power(A, 0, X, 1)  # the full Serre functor
        assert hom_d(X, Y, 0) == hom_d(Y, SX, 0)


def test_u_window_a2():
    A = a2()
    objs = u_window(A, 1, -2, 0)
    # window [0,0]: the two indecomposable projectives
    zero_win = [(i, v, c) for (i, v, c) in objs if i == 0]
    assert len(zero_win) == 2
    # S_1^{-1} P2 ~ S1 in degree 0
    neg = {(i, v): c for (i, v, c) in objs if i < 0}
    c = neg[(-1, 1)]
    assert c.cohomology_dims() == {0: 1}
    assert is_isomorphic(c.cohomology(0), simple(A, 0))


def test_amiot_hom_a2():
    A = a2()
    lam = module_complex(regular(A))
    gh = amiot_hom(A, 1, lam, lam)
    assert gh.pieces == {0: 3, 1: 1}
    assert gh.total == 4


def test_amiot_hom_nak_a3():
    A = nak_a3()
    lam = module_complex(regular(A))
    gh = amiot_hom(A, 2, lam, lam)
    assert gh.total == 6
    assert gh.pieces == {0: 5, 1: 1}


def test_amiot_hom_zero_object():
    A = a2()
    Z = ComplexOfModules(A, {}, {})
    gh = amiot_hom(A, 1, Z, module_complex(regular(A)))
    assert gh.total == 0


def test_amiot_endo_algebra_a2():
    A = a2()
    B = amiot_endomorphism_algebra(A, 1)
    assert B.dim == 4
    assert sorted(B.grading) == [0, 0, 0, 1]
    assert B.check_associativity()
    from quiveralg.findim import quiver_presentation
    P = quiver_presentation(B)
    assert P.quiver.n_vertices == 2
    assert P.quiver.n_arrows == 2
    assert P.dim == 4


def test_minimize_strips_contractible():
    A = a2()
    # build P1 -> P1 identity complex plus a lone P2: minimization should
    # kill the identity pair
    f = A.field
    from quiveralg.modules import projectives_sum, ModuleMap
    src = projectives_sum(A, [0, 1])
    tgt = projectives_sum(A, [0])
    blocks = []
    for v in range(2):
        m = f.zeros(tgt.dims[v], src.dims[v])
        for r in range(tgt.dims[v]):
            m[r, r] = f.one  # identity onto the P1 part
        blocks.append(m)
    d = ModuleMap(src, tgt, blocks)
    X = ComplexOfModules(A, {0: src, 1: tgt}, {0: d})
    sym = to_symbolic(X, "P")
    m = sym.minimize()
    assert m.terms == {0: (1,)}


def test_lemma_32_monotonicity_on_window():
    # S_n X keeps cohomology in degrees >= 0 for X a module iterate
    A = nak_a3()
    for (i, v, c) in u_window(A, 2, -2, 2):
        b = c.support_bounds()
        if b is None:
            continue
        if i >= 0:
            assert b[0] >= 0
        else:
            assert b[1] <= 0


def test_u_window_module_members_are_tilde_summands():
    # module-concentrated window members coincide with the indecomposable
    # summands of the cluster-tilting module
    from quiveralg.preprojective import preprojective_module
    A = nak_a3()
    split = preprojective_module(A, 2)
    members = []
    for (i, v, c) in u_window(A, 2, -2, 2):
        dims = c.cohomology_dims()
        if list(dims) == [0]:
            members.append(c.cohomology(0))
    matched = 0
    for rep in split.summand_reps:
        if any(m.dims == rep.dims and is_isomorphic(m, rep)
               for m in members):
            matched += 1
    assert matched == len(split.summand_reps) == 4


def test_hom_d_vanishes_on_acyclic_complex():
    from quiveralg.modules import ModuleMap
    A = nak_a3()
    f = A.field
    p1 = projective(A, 0)
    p1b = projective(A, 0)
    ident = ModuleMap(p1, p1b, [f.eye(d) for d in p1.dims])
    X = ComplexOfModules(A, {0: p1, 1: p1b}, {0: ident})
    assert X.cohomology_dims() == {}
    lam = module_complex(regular(A))
    for j in range(-2, 3):
        assert hom_d(lam, X, j) == 0
