use std::collections::HashSet;

use proptest::prelude::*;

use super::*;

fn group(m: CoxeterMatrix) -> CoxeterGroup {
    CoxeterGroup::new(m).unwrap()
}

fn a(n: usize) -> CoxeterGroup {
    group(CoxeterMatrix::type_a(n).unwrap())
}

fn b(n: usize) -> CoxeterGroup {
    group(CoxeterMatrix::type_b(n).unwrap())
}

// Oracle: BFS order from the Cayley graph.
fn cayley_size(g: &CoxeterGroup) -> usize {
    let mut seen = HashSet::from([g.identity()]);
    let mut frontier = vec![g.identity()];
    while let Some(w) = frontier.pop() {
        for s in g.generators() {
            let n = g.multiply(s, &w);
            if seen.insert(n.clone()) {
                frontier.push(n);
            }
        }
    }
    seen.len()
}

// Oracle: all elements reachable as subwords of a fixed reduced word.
fn subword_set(g: &CoxeterGroup, word: &[usize]) -> HashSet<CoxeterElement> {
    let mut out = HashSet::new();
    for mask in 0u32..1 << word.len() {
        let sub: Vec<usize> = (0..word.len()).filter(|&i| mask & (1 << i) != 0).map(|i| word[i]).collect();
        out.insert(g.from_word(&sub));
    }
    out
}

fn inversions(v: &[usize]) -> u32 {
    let mut n = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                n += 1;
            }
        }
    }
    n
}

#[test]
fn constructor_examples() {
    assert_eq!(group(CoxeterMatrix::new(vec![vec![1]]).unwrap()).order(), 2);
    assert_eq!(cayley_size(&a(2)), 6);
    assert_eq!(cayley_size(&b(2)), 8);
    assert_eq!(a(3).enumerate().unwrap().len(), 24);
    assert_eq!(b(2).enumerate().unwrap().len(), 8);
    assert_eq!(a(1).enumerate().unwrap().len(), 2);
}

#[test]
fn constructor_rejections() {
    assert!(matches!(
        CoxeterMatrix::new(vec![vec![1, 3], vec![4, 1]]),
        Err(CoxeterError::Asymmetric { .. })
    ));
    assert!(matches!(CoxeterMatrix::new(vec![vec![2]]), Err(CoxeterError::Diagonal { .. })));
    assert!(matches!(
        CoxeterMatrix::new(vec![vec![1, INFINITY], vec![INFINITY, 1]]),
        Err(CoxeterError::Infinite { .. })
    ));
    // D4: branched diagram.
    let d4 = CoxeterMatrix::from_bonds(4, &[(0, 1, 3), (1, 2, 3), (1, 3, 3)]).unwrap();
    assert!(matches!(CoxeterGroup::new(d4), Err(CoxeterError::Unsupported(_))));
    // H3 and F4.
    let h3 = CoxeterMatrix::from_bonds(3, &[(0, 1, 5), (1, 2, 3)]).unwrap();
    assert!(CoxeterGroup::new(h3).is_err());
    let f4 = CoxeterMatrix::from_bonds(4, &[(0, 1, 3), (1, 2, 4), (2, 3, 3)]).unwrap();
    assert!(CoxeterGroup::new(f4).is_err());
    // Affine A2 (triangle).
    let a2t = CoxeterMatrix::from_bonds(3, &[(0, 1, 3), (1, 2, 3), (0, 2, 3)]).unwrap();
    assert!(CoxeterGroup::new(a2t).is_err());
}

#[test]
fn matrix_text_round_trip() {
    let text = "# B3\nrank 3\n1 2 4\n2 3 3\n";
    let m = CoxeterMatrix::parse(text).unwrap();
    assert_eq!(m, CoxeterMatrix::type_b(3).unwrap());
    assert_eq!(CoxeterMatrix::parse(&m.to_text()).unwrap(), m);
    assert!(matches!(CoxeterMatrix::parse("rank 2\n1 2 3\n2 1 4\n"), Err(CoxeterError::Asymmetric { .. })));
    assert!(matches!(CoxeterMatrix::parse("rank 2\n1 2 inf\n"), Err(CoxeterError::Infinite { .. })));
    assert!(matches!(CoxeterMatrix::parse("rank 2\n1 3 3\n"), Err(CoxeterError::GeneratorOutOfRange { .. })));
    assert!(matches!(CoxeterMatrix::parse("rank x\n"), Err(CoxeterError::Parse { .. })));
}

#[test]
fn products_and_direct_products() {
    let g = a(2);
    let u = g.from_one_line(&[2, 1, 3]).unwrap();
    let v = g.from_one_line(&[1, 3, 2]).unwrap();
    assert_eq!(g.one_line(&g.multiply(&u, &v)).unwrap(), vec![2, 3, 1]);
    assert_eq!(g.multiply(&u, &g.identity()), u);
    let s1 = g.generator(0).clone();
    assert!(g.is_identity(&g.multiply(&s1, &s1)));

    let prod = group(CoxeterMatrix::from_bonds(4, &[(0, 1, 4), (2, 3, 5)]).unwrap());
    assert_eq!(prod.type_name(), "B2 x I2(5)");
    assert_eq!(prod.order(), 80);
    assert_eq!(prod.enumerate().unwrap().len(), 80);
    assert_eq!(prod.length(prod.longest_element()), 4 + 5);
}

#[test]
fn length_and_words() {
    let g = a(2);
    let w0 = g.from_one_line(&[3, 2, 1]).unwrap();
    assert_eq!(g.length(&g.identity()), 0);
    for s in g.generators() {
        assert_eq!(g.length(s), 1);
    }
    assert_eq!(g.length(&w0), 3);
    assert_eq!(g.reduced_word(&g.identity()), Vec::<usize>::new());
    assert_eq!(g.reduced_word(g.generator(1)), vec![1]);
    assert_eq!(g.reduced_word(&w0), vec![0, 1, 0]);
    assert_eq!(g.left_descents(&g.identity()), GeneratorSubset::empty());
    assert_eq!(g.left_descents(g.generator(0)), GeneratorSubset::singleton(0));
    assert_eq!(g.left_descents(&w0), GeneratorSubset::full(2));
    assert_eq!(*g.longest_element(), w0);
    assert_eq!(*a(1).longest_element(), a(1).generator(0).clone());
    assert!(g.is_identity(&g.multiply(&w0, &w0)));
}

#[test]
fn type_a_length_matches_inversions() {
    let g = a(3);
    for w in g.enumerate().unwrap() {
        assert_eq!(g.length(w), inversions(&g.one_line(w).unwrap()));
    }
}

#[test]
fn enumeration_sorted_and_matches_bfs() {
    for g in [a(3), b(2), b(3), group(CoxeterMatrix::dihedral(7).unwrap())] {
        let els = g.enumerate().unwrap();
        assert_eq!(els.len() as u128, g.order());
        assert_eq!(els.len(), cayley_size(&g));
        let set: HashSet<_> = els.iter().cloned().collect();
        assert_eq!(set.len(), els.len());
        for w in els {
            for s in g.generators() {
                assert!(set.contains(&g.multiply(w, s)));
            }
        }
        for pair in els.windows(2) {
            let k0 = (g.length(&pair[0]), g.reduced_word(&pair[0]));
            let k1 = (g.length(&pair[1]), g.reduced_word(&pair[1]));
            assert!(k0 < k1);
        }
    }
}

#[test]
fn budget_is_enforced() {
    let g = a(4).with_budget(100);
    assert_eq!(g.enumerate(), Err(CoxeterError::BudgetExceeded(100)));
    assert!(a(4).with_budget(120).enumerate().is_ok());
}

#[test]
fn length_identities_exhaustive() {
    for g in [a(2), a(3), b(2), b(3), group(CoxeterMatrix::dihedral(6).unwrap())] {
        let w0 = g.longest_element().clone();
        let l0 = g.length(&w0);
        for w in g.enumerate().unwrap() {
            let lw = g.length(w);
            assert_eq!(g.length(&g.inverse(w)), lw);
            assert_eq!(g.length(&g.multiply(&w0, w)), l0 - lw);
            assert_eq!(g.length(&g.multiply(w, &w0)), l0 - lw);
            assert_eq!(g.reduced_word(w).len() as u32, lw);
            assert_eq!(g.from_word(&g.reduced_word(w)), *w);
            for (i, s) in g.generators().iter().enumerate() {
                let ls = g.length(&g.multiply(s, w));
                assert!(ls == lw + 1 || ls + 1 == lw);
                assert_eq!(g.left_descents(w).contains(i), ls < lw);
                assert_eq!(g.right_descents(w).contains(i), g.length(&g.multiply(w, s)) < lw);
            }
        }
    }
}

#[test]
fn bruhat_matches_subword_oracle() {
    for g in [a(3), b(2), b(3), group(CoxeterMatrix::dihedral(5).unwrap())] {
        let els = g.enumerate().unwrap();
        for v in els {
            let below = subword_set(&g, &g.reduced_word(v));
            for u in els {
                assert_eq!(g.bruhat_leq(u, v), below.contains(u), "{u:?} {v:?}");
            }
        }
    }
}

#[test]
fn bruhat_order_properties_s4() {
    let g = a(3);
    let els = g.enumerate().unwrap();
    let w0 = g.longest_element().clone();
    let n = els.len();
    let leq: Vec<Vec<bool>> = els.iter().map(|u| els.iter().map(|v| g.bruhat_leq(u, v)).collect()).collect();
    for i in 0..n {
        assert!(leq[i][i]);
        assert!(leq[i][n - 1], "everything lies below w0");
        for j in 0..n {
            if i != j && leq[i][j] {
                assert!(!leq[j][i]);
                assert!(g.length(&els[i]) < g.length(&els[j]));
                assert!(g.bruhat_leq(&g.inverse(&els[i]), &g.inverse(&els[j])));
            }
            let flipped = g.bruhat_leq(&g.multiply(&w0, &els[j]), &g.multiply(&w0, &els[i]));
            assert_eq!(leq[i][j], flipped);
            for k in 0..n {
                if leq[i][j] && leq[j][k] {
                    assert!(leq[i][k]);
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if leq[i][j] {
                let size = (0..n).filter(|&k| leq[i][k] && leq[k][j]).count();
                let span = g.length(&els[j]) - g.length(&els[i]);
                assert!(size <= 1 << g.length(&els[j]));
                assert!(size > span as usize);
            }
        }
    }
}

#[test]
fn weak_order_examples_and_properties() {
    let g = a(2);
    let s1 = g.from_word(&[0]);
    assert!(g.weak_leq_left(&g.identity(), &s1));
    assert!(g.weak_leq_left(&s1, &g.from_word(&[1, 0])));
    assert!(!g.weak_leq_left(&s1, &g.from_word(&[0, 1])));
    let g = a(3);
    let w0 = g.longest_element().clone();
    for u in g.enumerate().unwrap() {
        assert!(g.weak_leq_left(u, &w0));
        assert!(g.weak_leq_right(u, &w0));
        for v in g.enumerate().unwrap() {
            if g.weak_leq_left(u, v) || g.weak_leq_right(u, v) {
                assert!(g.bruhat_leq(u, v));
            }
            // Suffix oracle: u ≤_L v iff some reduced word of v ends with one of u.
            let vu = g.multiply(v, &g.inverse(u));
            let suffix = g.reduced_word(&vu).len() + g.reduced_word(u).len() == g.reduced_word(v).len();
            assert_eq!(g.weak_leq_left(u, v), suffix);
        }
    }
}

#[test]
fn left_weak_minimal_reps_below_double_coset() {
    // For u ∈ W^I and v ∈ W_{w0 I w0} w0 W_I we have u ≤_L v.
    let g = a(2);
    let w0 = g.longest_element().clone();
    for set in GeneratorSubset::all_subsets(2) {
        let conj = g.w0_conjugate_subset(set);
        let left = g.parabolic_elements(conj).unwrap();
        let right = g.parabolic_elements(set).unwrap();
        for u in g.enumerate().unwrap() {
            if !g.right_descents(u).is_disjoint(set) {
                continue;
            }
            for p in &left {
                for q in &right {
                    let v = g.multiply(&g.multiply(p, &w0), q);
                    assert!(g.weak_leq_left(u, &v));
                }
            }
        }
    }
}

#[test]
fn type_b_and_dihedral_displays() {
    let g = b(2);
    assert_eq!(g.display(g.longest_element()), "[-1,-2]");
    assert_eq!(g.length(g.longest_element()), 4);
    let d = group(CoxeterMatrix::dihedral(5).unwrap());
    assert_eq!(d.length(d.longest_element()), 5);
    assert_eq!(d.display(&d.identity()), "(r0,1)");
}

#[test]
fn w0_conjugation_on_generators() {
    let g = a(3);
    assert_eq!((0..3).map(|i| g.w0_conjugate_generator(i)).collect::<Vec<_>>(), vec![2, 1, 0]);
    let g = b(3);
    assert_eq!((0..3).map(|i| g.w0_conjugate_generator(i)).collect::<Vec<_>>(), vec![0, 1, 2]);
}

fn word_strategy(rank: usize, max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..rank, 0..max)
}

proptest! {
    #[test]
    fn random_words_in_b4(word in word_strategy(4, 30), other in word_strategy(4, 30)) {
        let g = b(4);
        let w = g.from_word(&word);
        let v = g.from_word(&other);
        prop_assert_eq!(g.length(&g.inverse(&w)), g.length(&w));
        prop_assert_eq!(g.from_word(&g.reduced_word(&w)), w.clone());
        prop_assert!(g.length(&w) as usize <= word.len());
        prop_assert!(g.length(&g.multiply(&w, &v)) <= g.length(&w) + g.length(&v));
        prop_assert!(g.bruhat_leq(&w, g.longest_element()));
        let w0 = g.longest_element();
        prop_assert_eq!(g.bruhat_leq(&w, &v), g.bruhat_leq(&g.multiply(w0, &v), &g.multiply(w0, &w)));
    }

    #[test]
    fn random_words_in_a5(word in word_strategy(5, 40)) {
        let g = a(5);
        let w = g.from_word(&word);
        let inv = inversions(&g.one_line(&w).unwrap());
        prop_assert_eq!(g.length(&w), inv);
        let (min, par) = g.project_right(&w, GeneratorSubset::parse("1,3", 5).unwrap());
        prop_assert_eq!(g.multiply(&min, &par), w.clone());
        prop_assert_eq!(g.length(&min) + g.length(&par), g.length(&w));
    }
}
