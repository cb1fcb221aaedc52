use std::collections::HashSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::fixtures::BOOLEAN_SQUARE;
use crate::renner::rook::{compose, transpose};

/// Every partial injection of `{1..n}`, by brute force over `{0..n}^n`.
fn partial_injections(n: usize) -> Vec<Vec<usize>> {
    let total = (n + 1).pow(n as u32);
    (0..total)
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let d = code % (n + 1);
                    code /= n + 1;
                    d
                })
                .collect::<Vec<_>>()
        })
        .filter(|v| rook::is_partial_injection(v))
        .collect()
}

fn r3() -> RennerSystem {
    rook_system(3).unwrap()
}

fn vec_of(sys: &RennerSystem, r: &RennerElement) -> Vec<usize> {
    sys.rook_vector(r).unwrap()
}

fn parse(sys: &RennerSystem, v: &str) -> RennerElement {
    sys.parse_element(v).unwrap()
}

#[test]
fn rook_cardinalities() {
    for (n, expected) in [(1, 2), (2, 7), (3, 34), (4, 209)] {
        let sys = rook_system(n).unwrap();
        let elems = sys.enumerate().unwrap();
        assert_eq!(elems.len(), expected);
        assert_eq!(partial_injections(n).len(), expected);
        let vecs: HashSet<Vec<usize>> = elems.iter().map(|r| vec_of(&sys, r)).collect();
        assert_eq!(vecs, partial_injections(n).into_iter().collect());
    }
}

#[test]
fn rook_zero_rank_rejected() {
    assert!(rook_system(0).is_err());
}

#[test]
fn rook_vector_round_trip() {
    let sys = r3();
    for v in partial_injections(3) {
        let r = sys.from_rook_vector(&v).unwrap();
        assert_eq!(vec_of(&sys, &r), v);
        assert_eq!(sys.parse_element(&sys.format_element(&r)).unwrap(), r);
    }
    assert!(sys.from_rook_vector(&[1, 1, 0]).is_err());
    assert!(sys.from_rook_vector(&[1, 2]).is_err());
    assert!(sys.parse_element("1,2,x").is_err());
}

#[test]
fn left_form_is_the_unique_factorization() {
    // Brute force over (x, e, y) with the coset constraints, multiplying as
    // partial injections.
    let sys = r3();
    let g = sys.group();
    let all = g.enumerate().unwrap();
    let lat = sys.lattice();
    for v in partial_injections(3) {
        let mut found = Vec::new();
        for e in lat.ids() {
            let pe = sys.rook_idempotent_vector(e).unwrap();
            for x in all.iter().filter(|x| g.right_descents(x).is_disjoint(lat.lower(e))) {
                for y in all.iter().filter(|y| g.left_descents(y).is_disjoint(lat.lambda(e))) {
                    let prod = compose(&g.one_line(x).unwrap(), &compose(&pe, &g.one_line(y).unwrap()));
                    if prod == v {
                        found.push((x.clone(), e, y.clone()));
                    }
                }
            }
        }
        assert_eq!(found.len(), 1, "{v:?}");
        let r = sys.from_rook_vector(&v).unwrap();
        assert_eq!((r.x().clone(), r.e(), r.y().clone()), found[0]);
    }
}

#[test]
fn worked_values() {
    let sys = r3();
    let g = sys.group();
    let r = parse(&sys, "3,2,0");
    let s = parse(&sys, "3,2,1");
    assert_eq!(r.x(), g.longest_element());
    assert_eq!(sys.lattice().name(r.e()), "e2");
    assert!(g.is_identity(r.y()));
    assert_eq!(vec_of(&sys, &sys.multiply(&r, &s).unwrap()), vec![0, 2, 3]);
    assert_eq!(vec_of(&sys, &sys.star(&r).unwrap()), vec![0, 2, 1]);
    let e2 = sys.lattice().find("e2").unwrap();
    let e1 = sys.lattice().find("e1").unwrap();
    let s2 = g.generator(1).clone();
    assert!(!sys.lattice().lambda(e2).contains(1));
    assert_eq!(sys.godelle_meet(e2, &s2, e2).unwrap(), e1);
}

#[test]
fn multiplication_matches_composition_r3() {
    let sys = r3();
    let elems = sys.enumerate().unwrap();
    for a in &elems {
        for b in &elems {
            let p = sys.multiply(a, b).unwrap();
            assert_eq!(vec_of(&sys, &p), compose(&vec_of(&sys, a), &vec_of(&sys, b)));
        }
    }
}

#[test]
fn trailing_orientation_also_multiplies_correctly() {
    let sys = rook_system_with(3, Orientation::TrailingOnes).unwrap();
    assert!(validate_system(&sys).is_empty());
    let elems = sys.enumerate().unwrap();
    assert_eq!(elems.len(), 34);
    for a in &elems {
        for b in &elems {
            let p = sys.multiply(a, b).unwrap();
            assert_eq!(vec_of(&sys, &p), compose(&vec_of(&sys, a), &vec_of(&sys, b)));
        }
    }
}

#[test]
fn associativity() {
    let r2 = rook_system(2).unwrap();
    let e2 = r2.enumerate().unwrap();
    for a in &e2 {
        for b in &e2 {
            for c in &e2 {
                let left = r2.multiply(&r2.multiply(a, b).unwrap(), c).unwrap();
                let right = r2.multiply(a, &r2.multiply(b, c).unwrap()).unwrap();
                assert_eq!(left, right);
            }
        }
    }
    let sys = r3();
    let elems = sys.enumerate().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10_000 {
        let (a, b, c) = (
            &elems[rng.gen_range(0..elems.len())],
            &elems[rng.gen_range(0..elems.len())],
            &elems[rng.gen_range(0..elems.len())],
        );
        let left = sys.multiply(&sys.multiply(a, b).unwrap(), c).unwrap();
        let right = sys.multiply(a, &sys.multiply(b, c).unwrap()).unwrap();
        assert_eq!(left, right);
    }
}

#[test]
fn inverse_monoid_laws() {
    let sys = r3();
    for r in sys.enumerate().unwrap() {
        let s = sys.star(&r).unwrap();
        assert_eq!(sys.star(&s).unwrap(), r);
        let rsr = sys.multiply(&sys.multiply(&r, &s).unwrap(), &r).unwrap();
        let srs = sys.multiply(&sys.multiply(&s, &r).unwrap(), &s).unwrap();
        assert_eq!(rsr, r);
        assert_eq!(srs, s);
        assert_eq!(vec_of(&sys, &s), transpose(&vec_of(&sys, &r)));
    }
}

#[test]
fn star_of_idempotents_and_units() {
    let sys = r3();
    let g = sys.group();
    for e in sys.lattice().ids() {
        let r = sys.idempotent(e);
        assert_eq!(sys.star(&r).unwrap(), r);
        assert!(sys.is_idempotent(&r).unwrap());
    }
    for w in g.enumerate().unwrap() {
        let u = sys.unit(w).unwrap();
        assert_eq!(sys.star(&u).unwrap(), sys.unit(&g.inverse(w)).unwrap());
        let lf = sys.left_standard_form(&u);
        assert_eq!(&lf.x, w);
        assert_eq!(Some(lf.e), sys.unit_idempotent());
        assert!(g.is_identity(&lf.y));
    }
}

#[test]
fn godelle_meet_is_the_product() {
    let sys = r3();
    let g = sys.group();
    let lat = sys.lattice();
    let all = g.enumerate().unwrap();
    for e in lat.ids() {
        for f in lat.ids() {
            assert_eq!(sys.godelle_meet(e, &g.identity(), f).unwrap(), lat.meet(e, f));
            for w in all.iter().filter(|w| g.is_min_double_coset_rep(w, lat.lambda(e), lat.lambda(f))) {
                let meet = sys.godelle_meet(e, w, f).unwrap();
                let ew = sys.unit_mul_right(&sys.idempotent(e), w).unwrap();
                let ewf = sys.multiply(&ew, &sys.idempotent(f)).unwrap();
                let fw = sys.unit_mul_right(&sys.idempotent(f), &g.inverse(w)).unwrap();
                let fwe = sys.multiply(&fw, &sys.idempotent(e)).unwrap();
                assert_eq!(ewf, sys.idempotent(meet));
                assert_eq!(fwe, sys.idempotent(meet));
                // Oracle: the product as partial injections.
                let pe = sys.rook_idempotent_vector(e).unwrap();
                let pf = sys.rook_idempotent_vector(f).unwrap();
                let v = compose(&pe, &compose(&g.one_line(w).unwrap(), &pf));
                assert_eq!(v, sys.rook_idempotent_vector(meet).unwrap());
            }
        }
    }
    let e = lat.find("e2").unwrap();
    assert!(matches!(
        sys.godelle_meet(e, g.generator(0), e),
        Err(RennerError::NotMinimalDoubleCosetRep { .. })
    ));
}

#[test]
fn idempotent_products_are_meets() {
    let sys = r3();
    let lat = sys.lattice();
    for e in lat.ids() {
        for f in lat.ids() {
            assert_eq!(sys.multiply(&sys.idempotent(e), &sys.idempotent(f)).unwrap(), sys.idempotent(lat.meet(e, f)));
        }
    }
}

#[test]
fn lower_parabolic_is_normal() {
    for n in [3, 4] {
        let sys = rook_system(n).unwrap();
        let g = sys.group();
        for e in sys.lattice().ids() {
            let lam = g.parabolic_elements(sys.lattice().lambda(e)).unwrap();
            let low = sys.lower_parabolic(e);
            for v in &lam {
                for u in low {
                    let c = g.multiply(&g.multiply(v, u), &g.inverse(v));
                    assert!(g.in_parabolic(&c, sys.lattice().lower(e)));
                }
            }
        }
    }
}

#[test]
fn centralizer_factors_uniquely() {
    let sys = rook_system(4).unwrap();
    let g = sys.group();
    for e in sys.lattice().ids() {
        let lam = g.parabolic_elements(sys.lattice().lambda(e)).unwrap();
        for w in &lam {
            let mut count = 0;
            for a in sys.upper_parabolic(e) {
                for b in sys.lower_parabolic(e) {
                    if g.multiply(a, b) == *w {
                        count += 1;
                    }
                }
            }
            assert_eq!(count, 1);
        }
    }
}

#[test]
fn hybrid_and_right_forms() {
    let sys = r3();
    let g = sys.group();
    let lat = sys.lattice();
    for r in sys.enumerate().unwrap() {
        let h = sys.hybrid_standard_form(&r);
        let lf = sys.left_standard_form(&r);
        let rf = sys.right_standard_form(&r);
        assert!(g.right_descents(&h.x).is_disjoint(lat.lambda(h.e)));
        assert!(g.in_parabolic(&h.y, lat.upper(h.e)));
        assert_eq!(g.multiply(&h.x, &h.y), lf.x);
        assert_eq!(h.z, lf.y);
        // x e (y z) is the right form.
        assert_eq!(rf.y, h.x);
        assert_eq!(rf.x, g.multiply(&h.y, &h.z));
        assert_eq!(sys.from_right_form(&rf).unwrap(), r);
        assert_eq!(sys.from_left_form(&lf).unwrap(), r);
        // Oracle: the right form multiplies back to r.
        let pe = sys.rook_idempotent_vector(rf.e).unwrap();
        let v = compose(&g.one_line(&rf.y).unwrap(), &compose(&pe, &g.one_line(&rf.x).unwrap()));
        assert_eq!(v, vec_of(&sys, &r));
    }
    let e2 = lat.find("e2").unwrap();
    let bad = LeftForm { x: g.identity(), e: e2, y: g.generator(0).clone() };
    assert!(sys.from_left_form(&bad).is_err());
}

#[test]
fn rook_systems_validate() {
    for n in 1..=4 {
        for o in [Orientation::LeadingOnes, Orientation::TrailingOnes] {
            let sys = rook_system_with(n, o).unwrap();
            assert!(validate_system(&sys).is_empty(), "{n} {o:?}: {:?}", validate_system(&sys));
            assert!(validate_system(&sys.opposite_system()).is_empty());
        }
    }
}

#[test]
fn opposite_rook_lattice_is_reversed() {
    let sys = r3();
    let opp = sys.opposite_system();
    let e2 = opp.lattice().find("e2").unwrap();
    assert_eq!(opp.rook_idempotent_vector(e2).unwrap(), vec![0, 2, 3]);
    for r in sys.enumerate().unwrap() {
        let c = opp.convert(&r).unwrap();
        assert_eq!(opp.rook_vector(&c), sys.rook_vector(&r));
        assert_eq!(sys.convert(&c).unwrap(), r);
    }
    let other = r3();
    assert!(matches!(opp.convert(&other.idempotent(e2)), Err(RennerError::SystemMismatch)));
    assert!(matches!(sys.multiply(&other.idempotent(e2), &sys.idempotent(e2)), Err(RennerError::SystemMismatch)));
}

fn lattice_chain(rank_ups: &[(&str, &str)], rank: usize) -> RennerSystem {
    let n = rank_ups.len();
    let names = (0..n).map(|i| format!("e{i}")).collect();
    let meet = (0..n).map(|i| (0..n).map(|j| IdemId(i.min(j) as u16)).collect()).collect();
    let upper = rank_ups.iter().map(|(u, _)| GeneratorSubset::parse(u, rank).unwrap()).collect();
    let lower = rank_ups.iter().map(|(_, l)| GeneratorSubset::parse(l, rank).unwrap()).collect();
    let lattice = CrossSectionLattice::new(names, meet, upper, lower).unwrap();
    let group = CoxeterGroup::new(crate::coxeter::CoxeterMatrix::type_a(rank).unwrap()).unwrap();
    RennerSystem::from_lattice(Arc::new(group), lattice).unwrap()
}

#[test]
fn constructed_violations_are_reported() {
    // e0 ≤ e1 but λ*(e0) = {s1} ⊄ λ*(e1) = ∅.
    let sys = lattice_chain(&[("1", "-"), ("-", "-")], 2);
    let v = validate_system(&sys);
    assert!(v.iter().any(|v| v.kind == ViolationKind::AxiomV), "{v:?}");
    // s1 and s2 do not commute.
    let sys = lattice_chain(&[("1", "2")], 2);
    let v = validate_system(&sys);
    assert!(v.iter().any(|v| v.kind == ViolationKind::Normality), "{v:?}");
    let sys = lattice_chain(&[("1", "1")], 2);
    assert!(validate_system(&sys).iter().any(|v| v.kind == ViolationKind::TypeMaps));
}

#[test]
fn boolean_square_system() {
    let sys = parse_system(BOOLEAN_SQUARE).unwrap();
    assert_eq!(sys.enumerate().unwrap().len(), 9);
    assert!(sys.contains_unit_idem());
    let opp = sys.opposite_system();
    for e in sys.lattice().ids() {
        assert_eq!(opp.lattice().upper(e), sys.lattice().upper(e));
        assert_eq!(opp.lattice().lower(e), sys.lattice().lower(e));
    }
    let elems = sys.enumerate().unwrap();
    for a in &elems {
        assert_eq!(sys.parse_element(&sys.format_element(a)).unwrap(), *a);
        for b in &elems {
            for c in &elems {
                let l = sys.multiply(&sys.multiply(a, b).unwrap(), c).unwrap();
                let r = sys.multiply(a, &sys.multiply(b, c).unwrap()).unwrap();
                assert_eq!(l, r);
            }
        }
    }
}

#[test]
fn generic_file_errors() {
    let missing_meet = BOOLEAN_SQUARE.replace("meet 10 01 00\n", "");
    assert!(matches!(parse_system(&missing_meet), Err(RennerError::Parse { .. })));
    let unknown = format!("{BOOLEAN_SQUARE}upper zz 1\n");
    assert!(matches!(parse_system(&unknown), Err(RennerError::Parse { .. })));
    let bad_line = format!("{BOOLEAN_SQUARE}frobnicate\n");
    assert!(parse_system(&bad_line).is_err());
    // Dropping λ_*(10) leaves s2 outside λ(10) although the action table fixes 10.
    let wrong = BOOLEAN_SQUARE.replace("lower 10 2\n", "");
    match parse_system(&wrong) {
        Err(RennerError::InvalidSystem(v)) => assert!(v.iter().any(|v| v.kind == ViolationKind::Centralizer)),
        other => panic!("expected a centralizer violation, got {other:?}"),
    }
}

#[test]
fn generic_rook_r2_via_action_table() {
    // R_2 with Λ = {1, diag(1,0), 0}; diag(0,1) is the other rank-one idempotent.
    let text = "\
rank 1
idempotent one
idempotent a
idempotent zero
other b
meet one a a
meet one zero zero
meet a zero zero
upper one 1
lower zero 1
act 1 a b
";
    let sys = parse_system(text).unwrap();
    assert_eq!(sys.enumerate().unwrap().len(), 7);
    let r2 = rook_system(2).unwrap();
    // Λ is listed from the top here and from the bottom in the rook system.
    let to_rook = |r: &RennerElement| r2.element(r.x(), IdemId(2 - r.e().0), r.y());
    let elems = sys.enumerate().unwrap();
    for a in &elems {
        for b in &elems {
            let p = sys.multiply(a, b).unwrap();
            assert_eq!(to_rook(&p), r2.multiply(&to_rook(a), &to_rook(b)).unwrap());
        }
    }
    // Putting both rank-one idempotents in Λ breaks the transversal.
    let two = text.replace("other b", "idempotent b").replace("meet a zero zero", "meet a zero zero\nmeet b zero zero\nmeet one b b\nmeet a b zero");
    match parse_system(&two) {
        Err(RennerError::InvalidSystem(v)) => assert!(v.iter().any(|v| v.kind == ViolationKind::Transversal)),
        other => panic!("expected a transversal violation, got {other:?}"),
    }
}

proptest! {
    #[test]
    fn r4_products_match_composition(a in 0usize..209, b in 0usize..209) {
        thread_local! {
            static SYS: (RennerSystem, Vec<RennerElement>) = {
                let s = rook_system(4).unwrap();
                let e = s.enumerate().unwrap();
                (s, e)
            };
        }
        SYS.with(|(sys, elems)| {
            let p = sys.multiply(&elems[a], &elems[b]).unwrap();
            prop_assert_eq!(vec_of(sys, &p), compose(&vec_of(sys, &elems[a]), &vec_of(sys, &elems[b])));
            let s = sys.star(&p).unwrap();
            prop_assert_eq!(sys.star(&s).unwrap(), p);
            Ok(())
        })?;
    }
}

#[test]
fn budget_limits_enumeration() {
    let sys = rook_system(3).unwrap().with_budget(20);
    assert_eq!(sys.enumerate(), Err(RennerError::BudgetExceeded(20)));
    assert_eq!(rook_system(3).unwrap().with_budget(34).enumerate().unwrap().len(), 34);
}
