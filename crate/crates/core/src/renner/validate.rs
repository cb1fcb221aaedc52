//! Axiom checks for finite systems. Violations are data, not errors.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use super::{rook, Model, RennerElement, RennerSystem};
use crate::coxeter::CoxeterElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ViolationKind {
    Semilattice,
    /// `λ*(e) ∩ λ_*(e) ≠ ∅`.
    TypeMaps,
    /// `λ*(e)` and `λ_*(e)` do not commute, so `W_{λ_*(e)}` is not normal in `W_{λ(e)}`.
    Normality,
    /// `e ≤ f` but `λ*(e) ⊄ λ*(f)`.
    AxiomV,
    /// `e ≤ f` but `λ_*(f) ⊄ λ_*(e)`.
    LowerTypeMap,
    GodelleMeet,
    /// Type maps disagree with the centralizer of the concrete action.
    Centralizer,
    /// Type maps disagree with the stabilizer of the concrete action.
    Stabilizer,
    /// `Λ` does not meet every `W`-orbit of idempotents exactly once.
    Transversal,
    /// The action table and the abstract product disagree on `w e w⁻¹`.
    Conjugation,
    AxiomIV,
    Budget,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ViolationKind::Semilattice => "semilattice",
            ViolationKind::TypeMaps => "type maps",
            ViolationKind::Normality => "normality",
            ViolationKind::AxiomV => "axiom (v)",
            ViolationKind::LowerTypeMap => "lower type map",
            ViolationKind::GodelleMeet => "Godelle meet",
            ViolationKind::Centralizer => "centralizer",
            ViolationKind::Stabilizer => "stabilizer",
            ViolationKind::Transversal => "transversal",
            ViolationKind::Conjugation => "conjugation",
            ViolationKind::AxiomIV => "axiom (iv)",
            ViolationKind::Budget => "budget",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.detail)
    }
}

struct Report(Vec<Violation>);

impl Report {
    fn push(&mut self, kind: ViolationKind, detail: String) {
        self.0.push(Violation { kind, detail });
    }
}

/// Checks the axioms that finite data can certify. An empty list means valid.
pub fn validate_system(system: &RennerSystem) -> Vec<Violation> {
    use ViolationKind::*;
    let lat = system.lattice();
    let g = system.group();
    let ids: Vec<_> = lat.ids().collect();
    let name = |e| lat.name(e).to_string();
    let mut out = Report(Vec::new());

    for &a in &ids {
        if lat.meet(a, a) != a {
            out.push(Semilattice, format!("{} ∧ {} ≠ {}", name(a), name(a), name(a)));
        }
        for &b in &ids {
            if lat.meet(a, b) != lat.meet(b, a) {
                out.push(Semilattice, format!("meet of {} and {} is not commutative", name(a), name(b)));
            }
            for &c in &ids {
                if lat.meet(lat.meet(a, b), c) != lat.meet(a, lat.meet(b, c)) {
                    out.push(Semilattice, format!("meet of {}, {}, {} is not associative", name(a), name(b), name(c)));
                }
            }
        }
    }

    for &e in &ids {
        let (up, low) = (lat.upper(e), lat.lower(e));
        if !up.is_disjoint(low) {
            out.push(TypeMaps, format!("λ*({0}) and λ_*({0}) share {1}", name(e), up.intersection(low)));
        } else if !g.parabolics_commute(up, low).unwrap_or(false) {
            out.push(Normality, format!("λ*({0}) = {{{1}}} and λ_*({0}) = {{{2}}} do not commute", name(e), up, low));
        }
    }
    for &e in &ids {
        for &f in &ids {
            if e == f || !lat.leq(e, f) {
                continue;
            }
            if !lat.upper(e).is_subset(lat.upper(f)) {
                out.push(AxiomV, format!("{} ≤ {} but λ*({}) ⊄ λ*({})", name(e), name(f), name(e), name(f)));
            }
            if !lat.lower(f).is_subset(lat.lower(e)) {
                out.push(LowerTypeMap, format!("{} ≤ {} but λ_*({}) ⊄ λ_*({})", name(e), name(f), name(f), name(e)));
            }
        }
    }

    let all = match g.enumerate() {
        Ok(all) => all,
        Err(err) => {
            out.push(Budget, err.to_string());
            return out.0;
        }
    };

    for &e in &ids {
        for &f in &ids {
            let bad = all
                .iter()
                .filter(|w| g.is_min_double_coset_rep(w, lat.lambda(e), lat.lambda(f)))
                .find_map(|w| system.godelle_meet(e, w, f).err().map(|err| (w, err)));
            if let Some((w, err)) = bad {
                out.push(GodelleMeet, format!("{} ∧_w {} with w = [{}]: {err}", name(e), name(f), word(system, w)));
            }
        }
    }

    match system.model() {
        Model::Rook(m) => {
            for &e in &ids {
                let pe = m.partial_identity(e);
                for w in all {
                    let wv: Vec<usize> = g.one_line(w).expect("rook unit groups are of type A");
                    let we = rook::compose(&wv, &pe);
                    let commutes = we == rook::compose(&pe, &wv);
                    let fixes = commutes && we == pe;
                    if commutes != g.in_parabolic(w, lat.lambda(e)) {
                        out.push(Centralizer, format!("w = [{}] and {}", word(system, w), name(e)));
                    }
                    if fixes != g.in_parabolic(w, lat.lower(e)) {
                        out.push(Stabilizer, format!("w = [{}] and {}", word(system, w), name(e)));
                    }
                }
            }
        }
        Model::Table(t) => {
            for &e in &ids {
                let a = t.lattice_index[e.index()];
                for s in 0..g.rank() {
                    if (t.act[s][a] == a) != lat.lambda(e).contains(s) {
                        out.push(Centralizer, format!("s{} and {}", s + 1, name(e)));
                    }
                }
            }
            // Orbits of the generator action on named idempotents.
            let mut orbit = vec![usize::MAX; t.names.len()];
            for start in 0..t.names.len() {
                if orbit[start] != usize::MAX {
                    continue;
                }
                orbit[start] = start;
                let mut queue = VecDeque::from([start]);
                while let Some(a) = queue.pop_front() {
                    for row in &t.act {
                        if orbit[row[a]] == usize::MAX {
                            orbit[row[a]] = start;
                            queue.push_back(row[a]);
                        }
                    }
                }
            }
            let mut hits: HashMap<usize, Vec<&str>> = HashMap::new();
            for &e in &ids {
                hits.entry(orbit[t.lattice_index[e.index()]]).or_default().push(lat.name(e));
            }
            for (a, &o) in orbit.iter().enumerate() {
                if o == a {
                    match hits.get(&o).map(Vec::len).unwrap_or(0) {
                        1 => {}
                        0 => out.push(Transversal, format!("the orbit of `{}` misses Λ", t.names[a])),
                        _ => out.push(Transversal, format!("{} lie in one orbit", hits[&o].join(", "))),
                    }
                }
            }
            let mut by_name: HashMap<usize, RennerElement> = HashMap::new();
            let mut by_elem: HashMap<RennerElement, usize> = HashMap::new();
            'outer: for &e in &ids {
                for w in all {
                    let a = t.conjugate(g, w, t.lattice_index[e.index()]);
                    let r = system.element(w, e, &g.inverse(w));
                    let clash = by_name.get(&a).is_some_and(|s| *s != r) || by_elem.get(&r).is_some_and(|&b| b != a);
                    if clash {
                        out.push(Conjugation, format!("w {} w⁻¹ with w = [{}]", name(e), word(system, w)));
                        break 'outer;
                    }
                    by_name.insert(a, r.clone());
                    by_elem.insert(r, a);
                }
            }
        }
        Model::Abstract => {}
    }

    if out.0.is_empty() {
        if let Some(v) = axiom_iv(system, all) {
            out.0.push(v);
        }
    }
    out.0
}

/// Every comparable pair of idempotents is conjugate to a comparable pair in `Λ`.
fn axiom_iv(system: &RennerSystem, all: &[CoxeterElement]) -> Option<Violation> {
    let g = system.group();
    let lat = system.lattice();
    let mut seen = HashSet::new();
    let mut idems = Vec::new();
    for e in lat.ids() {
        for w in all {
            let r = system.element(w, e, &g.inverse(w));
            if seen.insert(r.clone()) {
                idems.push(r);
            }
        }
    }
    let conj = |w: &CoxeterElement, r: &RennerElement| system.element(&g.multiply(w, &r.x), r.e, &g.multiply(&r.y, &g.inverse(w)));
    let in_lambda = |r: &RennerElement| g.is_identity(&r.x) && g.is_identity(&r.y);
    for a in &idems {
        for b in &idems {
            let ab = system.multiply(a, b).ok()?;
            let ba = system.multiply(b, a).ok()?;
            if ab != *a || ba != *a {
                continue;
            }
            let ok = all.iter().any(|w| {
                let (f, f2) = (conj(w, a), conj(w, b));
                in_lambda(&f) && in_lambda(&f2) && lat.leq(f.e, f2.e)
            });
            if !ok {
                return Some(Violation {
                    kind: ViolationKind::AxiomIV,
                    detail: format!("{} ≤ {} is not conjugate into Λ", system.format_element(a), system.format_element(b)),
                });
            }
        }
    }
    None
}

fn word(system: &RennerSystem, w: &CoxeterElement) -> String {
    crate::coxeter::CoxeterGroup::format_word(&system.group().reduced_word(w))
}
