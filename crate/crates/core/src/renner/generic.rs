//! Text format for user-supplied finite systems.
//!
//! ```text
//! rank 2
//! coxeter 1 2 3          # bonds m(s_i,s_j) != 2, as in a matrix file
//! idempotent one         # members of Λ
//! idempotent zero
//! other f                # further idempotents, only named by `act`
//! meet one zero zero     # e ∧ f; the mirror entry and e ∧ e = e are implied
//! upper one 1,2          # λ*(e), default ∅
//! lower zero 1,2         # λ_*(e), default ∅
//! act 1 a b              # s_1 a s_1 = b; unlisted pairs are fixed
//! ```

use std::path::Path;
use std::sync::Arc;

use super::{validate_system, CrossSectionLattice, IdemId, Model, RennerError, RennerSystem, SystemTag};
use crate::coxeter::matrix::{parse_rank_line, strip_comment, BondTable};
use crate::coxeter::{CoxeterElement, CoxeterGroup};
use crate::parabolic::GeneratorSubset;

/// Conjugation action of the generators on named idempotents.
#[derive(Debug, Clone)]
pub(crate) struct ActionTable {
    pub names: Vec<String>,
    /// Name index of each member of the lattice, by `IdemId`.
    pub lattice_index: Vec<usize>,
    /// `act[g][a]`: name index of `s_g a s_g`.
    pub act: Vec<Vec<usize>>,
}

impl ActionTable {
    /// Name index of `w a w⁻¹`.
    pub(crate) fn conjugate(&self, group: &CoxeterGroup, w: &CoxeterElement, a: usize) -> usize {
        group.reduced_word(w).iter().rev().fold(a, |a, &g| self.act[g][a])
    }

    pub(crate) fn opposite(&self, group: &CoxeterGroup) -> Self {
        let w0 = group.longest_element();
        ActionTable {
            names: self.names.clone(),
            lattice_index: self.lattice_index.iter().map(|&a| self.conjugate(group, w0, a)).collect(),
            act: self.act.clone(),
        }
    }
}

fn err(line: usize, message: impl Into<String>) -> RennerError {
    RennerError::Parse { line, message: message.into() }
}

/// Reads and validates a system file.
pub fn load_system(path: impl AsRef<Path>) -> Result<RennerSystem, RennerError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| err(0, format!("cannot read {}: {e}", path.display())))?;
    parse_system(&text)
}

/// Parses a system description and runs [`validate_system`] on it.
pub fn parse_system(text: &str) -> Result<RennerSystem, RennerError> {
    let system = parse_unvalidated(text)?;
    let violations = validate_system(&system);
    if violations.is_empty() {
        Ok(system)
    } else {
        Err(RennerError::InvalidSystem(violations))
    }
}

pub(crate) fn parse_unvalidated(text: &str) -> Result<RennerSystem, RennerError> {
    let mut lines = text.lines().enumerate().map(|(n, l)| (n + 1, strip_comment(l))).filter(|(_, l)| !l.is_empty());
    let (first_no, first) = lines.next().ok_or_else(|| err(1, "empty system file"))?;
    let rank = parse_rank_line(first_no, first)?;
    let mut bonds = BondTable::new(rank)?;
    let mut lambda_names: Vec<String> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    let mut meets: Vec<(usize, String, String, String)> = Vec::new();
    let mut uppers: Vec<(usize, String, String)> = Vec::new();
    let mut lowers: Vec<(usize, String, String)> = Vec::new();
    let mut acts: Vec<(usize, String, String, String)> = Vec::new();
    for (no, line) in lines {
        let f: Vec<&str> = line.split_whitespace().collect();
        match f.as_slice() {
            ["coxeter", i, j, m] => bonds.set_bond(no, i, j, m)?,
            ["idempotent", a] | ["other", a] => {
                if names.iter().any(|n| n == a) {
                    return Err(err(no, format!("idempotent `{a}` declared twice")));
                }
                names.push(a.to_string());
                if f[0] == "idempotent" {
                    lambda_names.push(a.to_string());
                }
            }
            ["meet", a, b, c] => meets.push((no, a.to_string(), b.to_string(), c.to_string())),
            ["upper", a, set] => uppers.push((no, a.to_string(), set.to_string())),
            ["upper", a] => uppers.push((no, a.to_string(), String::new())),
            ["lower", a, set] => lowers.push((no, a.to_string(), set.to_string())),
            ["lower", a] => lowers.push((no, a.to_string(), String::new())),
            ["act", g, a, b] => acts.push((no, g.to_string(), a.to_string(), b.to_string())),
            _ => return Err(err(no, format!("unrecognised line `{line}`"))),
        }
    }
    if lambda_names.is_empty() {
        return Err(err(first_no, "no `idempotent` lines"));
    }
    let group = CoxeterGroup::new(bonds.finish()?)?;

    let n = lambda_names.len();
    let lam = |no: usize, a: &str| -> Result<usize, RennerError> {
        lambda_names.iter().position(|x| x == a).ok_or_else(|| err(no, format!("`{a}` is not in the lattice")))
    };
    let mut meet: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
    for (i, row) in meet.iter_mut().enumerate() {
        row[i] = Some(i);
    }
    for (no, a, b, c) in &meets {
        let (a, b, c) = (lam(*no, a)?, lam(*no, b)?, lam(*no, c)?);
        for (p, q) in [(a, b), (b, a)] {
            match meet[p][q] {
                Some(old) if old != c => {
                    return Err(err(*no, format!("conflicting meet of `{}` and `{}`", lambda_names[a], lambda_names[b])))
                }
                _ => meet[p][q] = Some(c),
            }
        }
    }
    let mut table = Vec::with_capacity(n);
    for (a, row) in meet.iter().enumerate() {
        let mut out = Vec::with_capacity(n);
        for (b, m) in row.iter().enumerate() {
            let m = m.ok_or_else(|| {
                err(0, format!("meet of `{}` and `{}` is not given", lambda_names[a], lambda_names[b]))
            })?;
            out.push(IdemId(m as u16));
        }
        table.push(out);
    }
    let mut upper = vec![GeneratorSubset::empty(); n];
    let mut lower = vec![GeneratorSubset::empty(); n];
    for (target, list) in [(&mut upper, &uppers), (&mut lower, &lowers)] {
        for (no, a, set) in list {
            let a = lam(*no, a)?;
            target[a] = GeneratorSubset::parse(set, rank).map_err(|e| err(*no, e.to_string()))?;
        }
    }

    let mut act: Vec<Vec<usize>> = vec![(0..names.len()).collect(); rank];
    let mut given = vec![vec![false; names.len()]; rank];
    let find = |no: usize, a: &str| -> Result<usize, RennerError> {
        names.iter().position(|x| x == a).ok_or_else(|| err(no, format!("unknown idempotent `{a}`")))
    };
    for (no, g, a, b) in &acts {
        let gi: usize = g.parse().map_err(|_| err(*no, format!("invalid generator `{g}`")))?;
        if gi == 0 || gi > rank {
            return Err(err(*no, format!("generator {gi} out of range 1..={rank}")));
        }
        let (a, b) = (find(*no, a)?, find(*no, b)?);
        let g = gi - 1;
        for (p, q) in [(a, b), (b, a)] {
            if given[g][p] && act[g][p] != q {
                return Err(err(*no, format!("conflicting action of s{gi} on `{}`", names[p])));
            }
            act[g][p] = q;
            given[g][p] = true;
        }
    }
    let lattice_index = lambda_names.iter().map(|a| names.iter().position(|x| x == a).expect("declared")).collect();
    let lattice = CrossSectionLattice::new(lambda_names, table, upper, lower)?;
    let model = Model::Table(ActionTable { names, lattice_index, act });
    RennerSystem::assemble(SystemTag::fresh(), Arc::new(group), lattice, model)
}
