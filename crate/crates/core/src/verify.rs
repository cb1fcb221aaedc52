//! Exhaustive property suites over a finite system.
//!
//! Each suite checks one family of identities against brute-force data: the
//! full order matrices, class scans and products of all pairs. Results are
//! reported as data so callers decide what a failure means.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::adherence::{
    from_vanilla, in_sigma_zero_set, in_sigma_zero_set_alt, is_vanilla, leq, leq_fast_in_class, leq_plus_vanilla,
    sandwich, vanilla_form, Epsilon, VanillaForm,
};
use crate::coxeter::{CoxeterElement, CoxeterGroup};
use crate::greens::{class_leq, class_leq_min, extremum, related, special_submonoid, Extremum, GreensRelation, Submonoid};
use crate::renner::{LeftForm, RennerElement, RennerError, RennerSystem, RightForm};

const EPS: [Epsilon; 2] = [Epsilon::Plus, Epsilon::Minus];
const RELS: [GreensRelation; 4] = GreensRelation::ALL;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub checked: usize,
    pub failure: Option<String>,
    /// Informative remarks that are not failures.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Default)]
struct Tally {
    checked: usize,
    failure: Option<String>,
    note: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(detail());
        }
    }

    fn merge(&mut self, other: Tally) {
        self.checked += other.checked;
        if self.failure.is_none() {
            self.failure = other.failure;
        }
    }

    fn finish(self, name: &str) -> PropertyResult {
        PropertyResult { name: name.to_string(), checked: self.checked, failure: self.failure, note: self.note }
    }
}

pub type OrderMatrix = Vec<Vec<bool>>;

/// `m[i][j] = elements[i] ≤^ε elements[j]`, rows computed in parallel.
pub fn order_matrix(sys: &RennerSystem, elements: &[RennerElement], eps: Epsilon) -> Result<OrderMatrix, RennerError> {
    elements
        .par_iter()
        .map(|r| elements.iter().map(|s| leq(sys, r, s, eps)).collect::<Result<Vec<_>, _>>())
        .collect()
}

/// Every element obtained by deleting letters from `word`.
pub fn subword_closure(g: &CoxeterGroup, word: &[usize]) -> HashSet<CoxeterElement> {
    let mut out = HashSet::from([g.identity()]);
    for &s in word {
        let next: Vec<CoxeterElement> = out.iter().map(|w| g.mul_generator_right(w, s)).collect();
        out.extend(next);
    }
    out
}

/// The whole monoid with its order matrices and class labels.
pub struct Universe<'a> {
    pub sys: &'a RennerSystem,
    pub elements: Vec<RennerElement>,
    index: HashMap<RennerElement, usize>,
    plus: OrderMatrix,
    minus: OrderMatrix,
    /// `classes[rel][i]`: smallest index related to `i`.
    classes: Vec<Vec<usize>>,
}

impl<'a> Universe<'a> {
    pub fn new(sys: &'a RennerSystem) -> Result<Self, RennerError> {
        let elements = sys.enumerate()?;
        let index = elements.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let plus = order_matrix(sys, &elements, Epsilon::Plus)?;
        let minus = order_matrix(sys, &elements, Epsilon::Minus)?;
        let mut classes = Vec::new();
        for rel in RELS {
            let labels = elements
                .par_iter()
                .map(|r| -> Result<usize, RennerError> {
                    for (j, s) in elements.iter().enumerate() {
                        if related(sys, r, s, rel)? {
                            return Ok(j);
                        }
                    }
                    Err(RennerError::Precondition("related is not reflexive".into()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            classes.push(labels);
        }
        Ok(Universe { sys, elements, index, plus, minus, classes })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn order(&self, eps: Epsilon) -> &OrderMatrix {
        match eps {
            Epsilon::Plus => &self.plus,
            Epsilon::Minus => &self.minus,
        }
    }

    pub fn index_of(&self, r: &RennerElement) -> usize {
        self.index[r]
    }

    pub fn class(&self, rel: GreensRelation, i: usize) -> usize {
        self.classes[rel as usize][i]
    }

    fn same(&self, rel: GreensRelation, i: usize, j: usize) -> bool {
        self.class(rel, i) == self.class(rel, j)
    }

    fn show(&self, i: usize) -> String {
        self.sys.format_element(&self.elements[i])
    }

    fn idx(&self, r: &RennerElement) -> Result<usize, RennerError> {
        self.index.get(r).copied().ok_or(RennerError::SystemMismatch)
    }

    fn set(&self, xs: &[RennerElement]) -> Result<HashSet<usize>, RennerError> {
        xs.iter().map(|r| self.idx(r)).collect()
    }
}

type Suite = fn(&Universe) -> Result<Tally, RennerError>;

const SUITES: &[(&str, Suite)] = &[
    ("partial order", partial_order),
    ("restriction to units", restriction_units),
    ("restriction to idempotents", restriction_idempotents),
    ("six-way equivalence", six_way),
    ("vanilla form", vanilla),
    ("vanilla criterion", vanilla_criterion),
    ("comparisons within a class", within_class),
    ("sandwich", sandwich_suite),
    ("Green's relations", greens_relations),
    ("extrema bound their classes", extrema_bound),
    ("extrema vanilla components", extrema_components),
    ("special submonoids", submonoids),
    ("maxima as translates", maxima_translates),
    ("L-class minima are monotone", minima_monotone),
    ("nested classes", nested_classes),
    ("chains stay in classes", chains),
    ("w0 reverses comparable classmates", w0_flip),
    ("class order criteria", class_order),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

/// Runs every suite in a fixed order.
pub fn run_all(sys: &RennerSystem) -> Result<Vec<PropertyResult>, RennerError> {
    let u = Universe::new(sys)?;
    SUITES.iter().map(|(name, f)| Ok(f(&u)?.finish(name))).collect()
}

/// Runs the named suite.
pub fn run_suite(u: &Universe, name: &str) -> Result<PropertyResult, RennerError> {
    let (name, f) = SUITES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| RennerError::Precondition(format!("no suite named `{name}`")))?;
    Ok(f(u)?.finish(name))
}

fn partial_order(u: &Universe) -> Result<Tally, RennerError> {
    let n = u.len();
    let mut t = Tally::default();
    for eps in EPS {
        let m = u.order(eps);
        for i in 0..n {
            t.check(m[i][i], || format!("{} ≰{eps} itself", u.show(i)));
            for j in 0..n {
                if i != j {
                    t.check(!(m[i][j] && m[j][i]), || format!("{} and {} are ≤{eps} both ways", u.show(i), u.show(j)));
                }
                if !m[i][j] {
                    continue;
                }
                for k in 0..n {
                    if m[j][k] {
                        t.check(m[i][k], || format!("≤{eps} not transitive at {}, {}, {}", u.show(i), u.show(j), u.show(k)));
                    }
                }
            }
        }
    }
    Ok(t)
}

fn restriction_units(u: &Universe) -> Result<Tally, RennerError> {
    let mut t = Tally::default();
    let Some(one) = u.sys.unit_idempotent() else { return Ok(t) };
    let g = u.sys.group();
    let units: Vec<usize> = (0..u.len()).filter(|&i| u.elements[i].e() == one).collect();
    for &j in &units {
        let v = u.elements[j].x();
        let below = subword_closure(g, &g.reduced_word(v));
        for &i in &units {
            let w = u.elements[i].x();
            let bruhat = below.contains(w);
            t.check(g.bruhat_leq(w, v) == bruhat, || format!("Bruhat order disagrees with subwords at {}, {}", u.show(i), u.show(j)));
            for eps in EPS {
                t.check(u.order(eps)[i][j] == bruhat, || format!("≤{eps} is not Bruhat on units {}, {}", u.show(i), u.show(j)));
            }
        }
    }
    Ok(t)
}

fn restriction_idempotents(u: &Universe) -> Result<Tally, RennerError> {
    let sys = u.sys;
    let mut t = Tally::default();
    let mut idems = Vec::new();
    for (i, r) in u.elements.iter().enumerate() {
        if sys.is_idempotent(r)? {
            idems.push(i);
        }
    }
    for e in sys.lattice().ids() {
        let i = u.idx(&sys.idempotent(e))?;
        t.check(idems.contains(&i), || format!("{} is not idempotent", u.show(i)));
    }
    for &i in &idems {
        for &j in &idems {
            let (e, f) = (&u.elements[i], &u.elements[j]);
            let below = sys.multiply(e, f)? == *e && sys.multiply(f, e)? == *e;
            for eps in EPS {
                t.check(u.order(eps)[i][j] == below, || format!("≤{eps} differs from ef = fe = e at {}, {}", u.show(i), u.show(j)));
            }
        }
    }
    Ok(t)
}

fn six_way(u: &Universe) -> Result<Tally, RennerError> {
    let sys = u.sys;
    let opp = sys.opposite();
    let conv: Vec<RennerElement> = u.elements.iter().map(|r| opp.convert(r)).collect::<Result<_, _>>()?;
    let opp_plus = order_matrix(opp, &conv, Epsilon::Plus)?;
    let opp_minus = order_matrix(opp, &conv, Epsilon::Minus)?;
    let star: Vec<usize> = u.elements.iter().map(|r| u.idx(&sys.star(r)?)).collect::<Result<_, _>>()?;
    let conj: Vec<usize> = u.elements.iter().map(|r| u.idx(&sys.conjugate_w0(r)?)).collect::<Result<_, _>>()?;
    let (p, m) = (u.order(Epsilon::Plus), u.order(Epsilon::Minus));
    let mut t = Tally::default();
    for i in 0..u.len() {
        for j in 0..u.len() {
            let (si, sj, ci, cj) = (star[i], star[j], conj[i], conj[j]);
            let six = [p[i][j], m[si][sj], opp_plus[ci][cj], opp_minus[i][j], opp_plus[si][sj], m[ci][cj]];
            t.check(six.iter().all(|&b| b == six[0]), || format!("{} vs {}: {six:?}", u.show(i), u.show(j)));
        }
    }
    Ok(t)
}

fn vanilla(u: &Universe) -> Result<Tally, RennerError> {
    let sys = u.sys;
    let g = sys.group();
    let opp = sys.opposite();
    let lat = sys.lattice();
    let mut t = Tally::default();
    for (i, r) in u.elements.iter().enumerate() {
        let v = vanilla_form(sys, r)?;
        t.check(is_vanilla(sys, &v), || format!("vanilla form of {} fails its conditions", u.show(i)));
        t.check(from_vanilla(sys, &v) == *r, || format!("vanilla form of {} does not multiply back", u.show(i)));
        t.check(in_sigma_zero_set_alt(sys, v.e_minus, v.e_plus, &v.sigma_zero), || {
            format!("σ₀ of {} is outside the second description", u.show(i))
        });
        let left = LeftForm { x: g.multiply(&v.sigma_minus, &v.sigma_zero), e: v.e_plus, y: v.sigma_plus.clone() };
        t.check(sys.from_left_form(&left).ok().as_ref() == Some(r), || {
            format!("(σ₋σ₀) e₊ σ₊ is not the left form of {}", u.show(i))
        });
        let right = RightForm { y: v.sigma_minus.clone(), e: v.e_minus, x: g.multiply(&v.sigma_zero, &v.sigma_plus) };
        let back = opp.from_right_form(&right).and_then(|s| sys.convert(&s));
        t.check(back.ok().as_ref() == Some(r), || format!("σ₋ e₋ (σ₀σ₊) is not a right form of {} over Λ⁻", u.show(i)));
    }
    // Every quintuple satisfying the conditions, counted per element.
    let all = g.enumerate()?;
    let mut hits = vec![0usize; u.len()];
    for e in lat.ids() {
        let minus: Vec<_> = all.iter().filter(|w| g.right_descents(w).is_disjoint(opp.lattice().lambda(e))).collect();
        let plus: Vec<_> = all.iter().filter(|w| g.left_descents(w).is_disjoint(lat.lambda(e))).collect();
        let zero: Vec<_> = all.iter().filter(|w| in_sigma_zero_set(sys, e, e, w)).collect();
        for a in &minus {
            for b in &zero {
                for c in &plus {
                    let v = VanillaForm {
                        sigma_minus: (*a).clone(),
                        e_minus: e,
                        sigma_zero: (*b).clone(),
                        e_plus: e,
                        sigma_plus: (*c).clone(),
                    };
                    hits[u.idx(&from_vanilla(sys, &v))?] += 1;
                }
            }
        }
    }
    for (i, &h) in hits.iter().enumerate() {
        t.check(h == 1, || format!("{} has {h} vanilla forms", u.show(i)));
    }
    Ok(t)
}

fn vanilla_criterion(u: &Universe) -> Result<Tally, RennerError> {
    let rows: Vec<Tally> = (0..u.len())
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::default();
            for j in 0..u.len() {
                let v = leq_plus_vanilla(u.sys, &u.elements[i], &u.elements[j])?;
                t.check(v == u.plus[i][j], || format!("vanilla criterion wrong at {}, {}", u.show(i), u.show(j)));
            }
            Ok(t)
        })
        .collect::<Result<_, RennerError>>()?;
    Ok(rows.into_iter().fold(Tally::default(), |mut a, b| {
        a.merge(b);
        a
    }))
}

fn within_class(u: &Universe) -> Result<Tally, RennerError> {
    let mut t = Tally::default();
    for rel in RELS {
        for eps in EPS {
            for i in 0..u.len() {
                for j in 0..u.len() {
                    if !u.same(rel, i, j) {
                        continue;
                    }
                    let fast = leq_fast_in_class(u.sys, &u.elements[i], &u.elements[j], rel, eps)?;
                    t.check(fast == u.order(eps)[i][j], || {
                        format!("{rel}-class test for ≤{eps} wrong at {}, {}", u.show(i), u.show(j))
                    });
                }
            }
        }
    }
    Ok(t)
}

fn sandwich_suite(u: &Universe) -> Result<Tally, RennerError> {
    use GreensRelation::{J, L, R};
    let mut t = Tally::default();
    for i in 0..u.len() {
        for j in 0..u.len() {
            if !u.same(J, i, j) {
                continue;
            }
            let found = sandwich(u.sys, &u.elements[i], &u.elements[j])?;
            let Some((a, b)) = found else {
                t.check(!u.plus[i][j], || format!("no sandwich for {} ≤⁺ {}", u.show(i), u.show(j)));
                continue;
            };
            let (a, b) = (u.idx(&a)?, u.idx(&b)?);
            let p = &u.plus;
            let ok = p[i][j]
                && u.same(R, i, a)
                && u.same(L, a, j)
                && u.same(L, i, b)
                && u.same(R, b, j)
                && p[i][a]
                && p[a][j]
                && p[i][b]
                && p[b][j];
            t.check(ok, || format!("bad sandwich {}, {} for {}, {}", u.show(a), u.show(b), u.show(i), u.show(j)));
        }
    }
    Ok(t)
}

fn greens_relations(u: &Universe) -> Result<Tally, RennerError> {
    use GreensRelation::*;
    let mut t = Tally::default();
    let n = u.len();
    for i in 0..n {
        for j in 0..n {
            let s = |rel| u.same(rel, i, j);
            t.check(!s(H) || (s(L) && s(R)), || format!("H ⊄ L ∩ R at {}, {}", u.show(i), u.show(j)));
            t.check(!(s(L) || s(R)) || s(J), || format!("L or R ⊄ J at {}, {}", u.show(i), u.show(j)));
            let composite = (0..n).any(|k| u.same(L, i, k) && u.same(R, k, j));
            t.check(s(J) == composite, || format!("J ≠ L∘R at {}, {}", u.show(i), u.show(j)));
        }
    }
    Ok(t)
}

fn class_members<'u>(u: &'u Universe, rel: GreensRelation, i: usize) -> impl Iterator<Item = usize> + 'u {
    let c = u.class(rel, i);
    (0..u.len()).filter(move |&k| u.class(rel, k) == c)
}

fn extrema_bound(u: &Universe) -> Result<Tally, RennerError> {
    let rows: Vec<Tally> = (0..u.len())
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::default();
            for rel in RELS {
                for eps in EPS {
                    let lo = u.idx(&extremum(u.sys, &u.elements[i], rel, eps, Extremum::Min)?)?;
                    let hi = u.idx(&extremum(u.sys, &u.elements[i], rel, eps, Extremum::Max)?)?;
                    t.check(u.same(rel, i, lo) && u.same(rel, i, hi), || {
                        format!("extrema of the {rel}-class of {} leave the class", u.show(i))
                    });
                    let m = u.order(eps);
                    for k in class_members(u, rel, i) {
                        t.check(m[lo][k] && m[k][hi], || {
                            format!("{} is outside [min, max]{eps} of its {rel}-class", u.show(k))
                        });
                    }
                }
            }
            Ok(t)
        })
        .collect::<Result<_, RennerError>>()?;
    Ok(rows.into_iter().fold(Tally::default(), |mut a, b| {
        a.merge(b);
        a
    }))
}

/// The quintuple the extremum should have, from the vanilla form of `r`.
fn prescribed(sys: &RennerSystem, v: &VanillaForm, rel: GreensRelation, which: Extremum) -> VanillaForm {
    use GreensRelation::*;
    let g = sys.group();
    let w0 = g.longest_element();
    let (lat, opp) = (sys.lattice(), sys.opposite().lattice());
    let e = v.e_plus;
    let mut out = v.clone();
    let (zero, outer) = match which {
        Extremum::Min => (
            g.project_double(opp.lambda(e), w0, lat.lambda(e)),
            g.project_double(lat.lambda(e), w0, opp.lambda(e)),
        ),
        Extremum::Max => (g.project_double(opp.lower(e), w0, lat.lower(e)), g.identity()),
    };
    out.sigma_zero = zero;
    if matches!(rel, L | J) {
        out.sigma_minus = outer.clone();
    }
    if matches!(rel, R | J) {
        out.sigma_plus = outer;
    }
    out
}

fn extrema_components(u: &Universe) -> Result<Tally, RennerError> {
    let mut t = Tally::default();
    for sys in [u.sys, u.sys.opposite()] {
        for r in &u.elements {
            let r = sys.convert(r)?;
            let v = vanilla_form(sys, &r)?;
            for rel in RELS {
                for which in [Extremum::Min, Extremum::Max] {
                    let m = extremum(sys, &r, rel, Epsilon::Plus, which)?;
                    let want = prescribed(sys, &v, rel, which);
                    t.check(vanilla_form(sys, &m)? == want, || {
                        format!("{which:?} of the {rel}-class of {} has the wrong vanilla form", sys.format_element(&r))
                    });
                }
            }
        }
    }
    Ok(t)
}

fn submonoids(u: &Universe) -> Result<Tally, RennerError> {
    let sys = u.sys;
    let g = sys.group();
    let mut t = Tally::default();
    let mut sets: HashMap<(Submonoid, Epsilon), HashSet<usize>> = HashMap::new();
    for which in Submonoid::ALL {
        for eps in EPS {
            let set = u.set(&special_submonoid(sys, which, eps)?)?;
            // Λ consists of its own left and right forms; Λ⁻ likewise over Λ⁻.
            let (lam, lam_minus) = match (which, eps) {
                (Submonoid::GJ, Epsilon::Plus) | (Submonoid::JG, Epsilon::Minus) => (true, false),
                (Submonoid::GJ, Epsilon::Minus) | (Submonoid::JG, Epsilon::Plus) => (false, true),
                (Submonoid::O, _) => (true, true),
                (Submonoid::N, _) => (false, false),
            };
            for e in sys.lattice().ids() {
                if lam {
                    t.check(set.contains(&u.idx(&sys.idempotent(e))?), || format!("Λ ⊄ {which}{eps}"));
                }
                if lam_minus {
                    let f = sys.convert(&sys.opposite().idempotent(e))?;
                    t.check(set.contains(&u.idx(&f)?), || format!("Λ⁻ ⊄ {which}{eps}"));
                }
            }
            for &a in &set {
                for &b in &set {
                    let ab = u.idx(&sys.multiply(&u.elements[a], &u.elements[b])?)?;
                    t.check(set.contains(&ab), || format!("{which}{eps} is not closed: {} · {}", u.show(a), u.show(b)));
                }
            }
            let rel = which.relation();
            for i in 0..u.len() {
                let hits = class_members(u, rel, i).filter(|k| set.contains(k)).count();
                t.check(hits == 1, || format!("the {rel}-class of {} meets {which}{eps} {hits} times", u.show(i)));
            }
            sets.insert((which, eps), set);
        }
    }
    let get = |w, e| &sets[&(w, e)];
    let (p, m) = (Epsilon::Plus, Epsilon::Minus);
    t.check(get(Submonoid::O, p) == get(Submonoid::O, m), || "O depends on ε".into());
    for eps in EPS {
        let both: HashSet<usize> = get(Submonoid::GJ, eps).intersection(get(Submonoid::JG, eps)).copied().collect();
        t.check(*get(Submonoid::N, eps) == both, || format!("N{eps} ≠ GJ{eps} ∩ JG{eps}"));
    }
    let star = |set: &HashSet<usize>| -> Result<HashSet<usize>, RennerError> {
        set.iter().map(|&i| u.idx(&sys.star(&u.elements[i])?)).collect()
    };
    t.check(star(get(Submonoid::O, p))? == *get(Submonoid::O, p), || "O ≠ O*".into());
    t.check(star(get(Submonoid::JG, m))? == *get(Submonoid::GJ, p), || "GJ⁺ ≠ (JG⁻)*".into());
    t.check(star(get(Submonoid::GJ, m))? == *get(Submonoid::JG, p), || "JG⁺ ≠ (GJ⁻)*".into());
    // The standard-form descriptions.
    for (i, r) in u.elements.iter().enumerate() {
        let gj = g.is_identity(r.x());
        let jg = g.is_identity(&sys.right_standard_form(r).x);
        let o = g.is_identity(&sys.hybrid_standard_form(r).y);
        t.check(gj == get(Submonoid::GJ, p).contains(&i), || format!("GJ⁺ membership of {} disagrees with x = 1", u.show(i)));
        t.check(jg == get(Submonoid::JG, m).contains(&i), || format!("JG⁻ membership of {} disagrees with x = 1", u.show(i)));
        t.check(o == get(Submonoid::O, p).contains(&i), || format!("O membership of {} disagrees with b = 1", u.show(i)));
        if sys.is_idempotent(r)? {
            t.check(o, || format!("idempotent {} is not in O", u.show(i)));
        }
    }
    Ok(t)
}

fn maxima_translates(u: &Universe) -> Result<Tally, RennerError> {
    use GreensRelation::*;
    let sys = u.sys;
    let opp = sys.opposite();
    let w0 = sys.w0();
    let mut t = Tally::default();
    let maxima = |rel, eps| -> Result<HashSet<usize>, RennerError> {
        let mut out = HashSet::new();
        for (i, r) in u.elements.iter().enumerate() {
            if extremum(sys, r, rel, eps, Extremum::Max)? == *r {
                out.insert(i);
            }
        }
        Ok(out)
    };
    let left = |xs: &[RennerElement]| -> Result<HashSet<usize>, RennerError> {
        xs.iter().map(|r| u.idx(&sys.unit_mul_left(w0, r)?)).collect()
    };
    let right = |xs: &[RennerElement]| -> Result<HashSet<usize>, RennerError> {
        xs.iter().map(|r| u.idx(&sys.unit_mul_right(r, w0)?)).collect()
    };
    for eps in EPS {
        let gj = special_submonoid(sys, Submonoid::GJ, eps)?;
        let jg = special_submonoid(sys, Submonoid::JG, eps)?;
        let o = special_submonoid(sys, Submonoid::O, eps)?;
        t.check(left(&gj)? == maxima(L, eps)?, || format!("w0·GJ{eps} ≠ L-class maxima"));
        t.check(right(&jg)? == maxima(R, eps)?, || format!("JG{eps}·w0 ≠ R-class maxima"));
        let h = maxima(H, eps)?;
        t.check(left(&o)? == h && right(&o)? == h, || format!("w0·O, O·w0 and the H-class maxima for ≤{eps} differ"));
    }
    let lam: Vec<RennerElement> = sys.lattice().ids().map(|e| sys.idempotent(e)).collect();
    let lam_minus: Vec<RennerElement> =
        sys.lattice().ids().map(|e| sys.convert(&opp.idempotent(e))).collect::<Result<_, _>>()?;
    let plus = maxima(J, Epsilon::Plus)?;
    let minus = maxima(J, Epsilon::Minus)?;
    t.check(left(&lam)? == plus && right(&lam_minus)? == plus, || "w0Λ, Λ⁻w0 and the J-class maxima for ≤⁺ differ".into());
    t.check(left(&lam_minus)? == minus && right(&lam)? == minus, || "w0Λ⁻, Λw0 and the J-class maxima for ≤⁻ differ".into());
    Ok(t)
}

/// `r ≤⁺ s` moves the `L`-class minima up, and dually for `R` and `≤⁻`.
fn minima_monotone(u: &Universe) -> Result<Tally, RennerError> {
    let mut t = Tally::default();
    for (eps, rel) in [(Epsilon::Plus, GreensRelation::L), (Epsilon::Minus, GreensRelation::R)] {
        let mins: Vec<usize> = u
            .elements
            .iter()
            .map(|r| u.idx(&extremum(u.sys, r, rel, eps, Extremum::Min)?))
            .collect::<Result<_, _>>()?;
        let m = u.order(eps);
        for i in 0..u.len() {
            for j in 0..u.len() {
                if m[i][j] {
                    t.check(m[mins[i]][mins[j]], || {
                        format!("{} ≤{eps} {} but their {rel}-class minima are not", u.show(i), u.show(j))
                    });
                }
            }
        }
    }
    Ok(t)
}

/// For `T ⊆ U`: `max T_r ≤ max U_r` and `min U_r ≤ min T_r`.
fn nested_classes(u: &Universe) -> Result<Tally, RennerError> {
    use GreensRelation::*;
    let mut t = Tally::default();
    for (small, big) in [(H, L), (H, R), (L, J), (R, J), (H, J)] {
        for eps in EPS {
            let m = u.order(eps);
            for r in &u.elements {
                let ext = |rel, w| -> Result<usize, RennerError> { u.idx(&extremum(u.sys, r, rel, eps, w)?) };
                let ok = m[ext(small, Extremum::Max)?][ext(big, Extremum::Max)?]
                    && m[ext(big, Extremum::Min)?][ext(small, Extremum::Min)?];
                t.check(ok, || format!("{small} ⊆ {big} extrema out of order for {}", u.sys.format_element(r)));
            }
        }
    }
    Ok(t)
}

/// Chains of any length reduce to intervals: `k` lies on a chain from `i`
/// to `j` exactly when `i ≤ k ≤ j`.
fn chains(u: &Universe) -> Result<Tally, RennerError> {
    let mut t = Tally::default();
    for rel in RELS {
        for eps in EPS {
            let m = u.order(eps);
            for i in 0..u.len() {
                for j in 0..u.len() {
                    if !m[i][j] || !u.same(rel, i, j) {
                        continue;
                    }
                    for k in 0..u.len() {
                        if m[i][k] && m[k][j] {
                            t.check(u.same(rel, i, k), || {
                                format!("{} ≤{eps} {} ≤{eps} {} leaves the {rel}-class", u.show(i), u.show(k), u.show(j))
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(t)
}

fn w0_flip(u: &Universe) -> Result<Tally, RennerError> {
    use GreensRelation::{L, R};
    let sys = u.sys;
    let w0 = sys.w0();
    let left: Vec<usize> = u.elements.iter().map(|r| u.idx(&sys.unit_mul_left(w0, r)?)).collect::<Result<_, _>>()?;
    let right: Vec<usize> = u.elements.iter().map(|r| u.idx(&sys.unit_mul_right(r, w0)?)).collect::<Result<_, _>>()?;
    let mut t = Tally::default();
    for eps in EPS {
        let m = u.order(eps);
        for i in 0..u.len() {
            for j in 0..u.len() {
                if !m[i][j] {
                    continue;
                }
                if u.same(L, i, j) {
                    let (a, b) = (left[i], left[j]);
                    t.check(u.same(L, a, b) && m[b][a], || format!("w0 does not reverse {} ≤{eps} {}", u.show(i), u.show(j)));
                }
                if u.same(R, i, j) {
                    let (a, b) = (right[i], right[j]);
                    t.check(u.same(R, a, b) && m[b][a], || format!("·w0 does not reverse {} ≤{eps} {}", u.show(i), u.show(j)));
                }
            }
        }
    }
    Ok(t)
}

/// Maxima decide the class order for every relation, minima for all but `H`.
/// Failures of the minimum criterion on `H` are counted in the note.
fn class_order(u: &Universe) -> Result<Tally, RennerError> {
    let mut t = Tally::default();
    let mut h_failures = Vec::new();
    for rel in RELS {
        let reps: Vec<usize> = (0..u.len()).filter(|&i| u.class(rel, i) == i).collect();
        for eps in EPS {
            let m = u.order(eps);
            for &a in &reps {
                for &b in &reps {
                    let exists = class_members(u, rel, a).any(|x| class_members(u, rel, b).any(|y| m[x][y]));
                    let (ra, rb) = (&u.elements[a], &u.elements[b]);
                    let by_max = class_leq(u.sys, ra, rb, rel, eps)?;
                    t.check(by_max == exists, || {
                        format!("maximum criterion fails for the {rel}-classes of {}, {} (≤{eps})", u.show(a), u.show(b))
                    });
                    let by_min = match class_leq_min(u.sys, ra, rb, rel, eps) {
                        Ok(v) => v,
                        Err(RennerError::Precondition(_)) => {
                            let lo = |r| extremum(u.sys, r, rel, eps, Extremum::Min);
                            let v = leq(u.sys, &lo(ra)?, &lo(rb)?, eps)?;
                            if v != exists {
                                h_failures.push(format!("{}, {} (≤{eps})", u.show(a), u.show(b)));
                            }
                            continue;
                        }
                        Err(e) => return Err(e),
                    };
                    t.check(by_min == exists, || {
                        format!("minimum criterion fails for the {rel}-classes of {}, {} (≤{eps})", u.show(a), u.show(b))
                    });
                }
            }
        }
    }
    if !h_failures.is_empty() {
        t.note = Some(format!(
            "minimum criterion fails on {} H-class pairs, first {}",
            h_failures.len(),
            h_failures[0]
        ));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::renner::rook_system;

    #[test]
    fn every_suite_passes_on_small_rook_monoids() {
        for n in 1..=3 {
            let sys = rook_system(n).unwrap();
            for r in run_all(&sys).unwrap() {
                assert!(r.passed(), "R{n} {}: {}", r.name, r.failure.unwrap());
                assert!(r.checked > 0 || r.name == "restriction to units", "R{n} {} checked nothing", r.name);
            }
        }
    }

    #[test]
    fn h_minimum_failure_is_noted_on_r3() {
        let sys = rook_system(3).unwrap();
        let u = Universe::new(&sys).unwrap();
        let r = run_suite(&u, "class order criteria").unwrap();
        assert!(r.passed());
        assert!(r.note.unwrap().contains("H-class pairs"));
    }

    #[test]
    fn subword_closure_of_longest_word_is_everything() {
        let sys = rook_system(3).unwrap();
        let g = sys.group();
        let all = subword_closure(g, &g.reduced_word(g.longest_element()));
        assert_eq!(all.len(), 6);
    }

    #[test]
    fn unknown_suite_is_an_error() {
        let sys = rook_system(2).unwrap();
        let u = Universe::new(&sys).unwrap();
        assert!(matches!(run_suite(&u, "nope"), Err(RennerError::Precondition(_))));
    }
}
